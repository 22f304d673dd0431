use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinor_forge::catalog;
use spinor_forge::eta::spin_two_form_action;
use spinor_forge::rotation::{random_rotation, random_unit_vector};
use spinor_forge::sample::{random_gaussian, random_spinor, random_vector};
use spinor_forge::spin::vector_action;
use spinor_forge::*;

type G = GaussianRational;

/// ψ ⊗ v₁ ⊗ ⋯ ⊗ v_m with scale2 = 1, built coefficient by coefficient.
fn tensor(shape: Shape, psi: &SpinorVector, twists: &[SpinorVector]) -> ScaledSpinor {
    let mut out = ScaledSpinor::zero(shape);
    let mut partial: Vec<(Vec<Vec<i8>>, G)> = vec![(vec![], G::one())];
    for v in twists {
        let mut next = Vec::new();
        for (idx, c) in &partial {
            for (e, x) in v.iter() {
                let mut idx = idx.clone();
                idx.push(e.0.clone());
                next.push((idx, c * x));
            }
        }
        partial = next;
    }
    for (s, a) in psi.iter() {
        for (tw, c) in &partial {
            let tw: Vec<&[i8]> = tw.iter().map(|t| t.as_slice()).collect();
            out.add_at(&TwistedIndex::new(&s.0, &tw).unwrap(), a * c).unwrap();
        }
    }
    out
}

fn random_untwisted(n: usize, rng: &mut ChaCha8Rng) -> SpinorVector {
    let mut psi = SpinorVector::zero(n);
    for e in BasisIndex::all(n / 2) {
        psi.set(&e, random_gaussian(rng)).unwrap();
    }
    psi
}

fn norm2(x: &[Rational]) -> Rational {
    x.iter().fold(Rational::zero(), |a, c| a + c * c)
}

#[test]
fn tangent_action_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let shape = Shape::new(5, 3, 2).unwrap();
    let phi = random_spinor(shape, &mut rng);
    assert!(tangent_action(&vec![rint(0); 5], &phi).unwrap().is_zero());
    for _ in 0..5 {
        let x = random_vector(5, &mut rng);
        let xx = tangent_action(&x, &tangent_action(&x, &phi).unwrap()).unwrap();
        assert_eq!(xx, phi.scale_coeffs(&G::real(-norm2(&x))));
        if !norm2(&x).is_zero() {
            assert!(!tangent_action(&x, &phi).unwrap().is_zero());
        }
    }
}

#[test]
fn twist_bivector_examples() {
    // κ(f₁f₂) = g₁g₂ = [[0,−1],[1,0]] fixes u₊ up to the factor i
    let shape = Shape::new(1, 3, 1).unwrap();
    let mut phi = ScaledSpinor::zero(shape);
    phi.set(&TwistedIndex::new(&[], &[&[1]]).unwrap(), G::one()).unwrap();
    assert_eq!(twist_bivector_action(1, 2, &phi).unwrap(), phi.scale_coeffs(&G::i()));

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let shape = Shape::new(2, 4, 2).unwrap();
    let psi = random_untwisted(2, &mut rng);
    let v = random_untwisted(4, &mut rng);
    let vv = tensor(shape, &psi, &[v.clone(), v.clone()]);
    for (k, l) in [(1, 2), (1, 4), (2, 3)] {
        let fv = clifford_action(4, &[FormTerm::new(vec![k, l], rint(1))], &v).unwrap();
        let want = tensor(shape, &psi, &[fv.clone(), v.clone()]).add(&tensor(shape, &psi, &[v.clone(), fv])).unwrap();
        assert_eq!(twist_bivector_action(k, l, &vv).unwrap(), want);
        let swapped = twist_bivector_action(l, k, &vv).unwrap();
        assert_eq!(swapped, want.scale_coeffs(&G::real(rint(-1))));
        let single = mu_slot(1, &[FormTerm::new(vec![k, l], rint(1))], &vv).unwrap();
        let other = mu_slot(2, &[FormTerm::new(vec![k, l], rint(1))], &vv).unwrap();
        assert_eq!(single.add(&other).unwrap(), want);
    }
}

#[test]
fn mu_slot_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let phi = random_spinor(Shape::new(3, 3, 1).unwrap(), &mut rng);
    let f12 = [FormTerm::new(vec![1, 2], rint(1))];
    assert_eq!(mu_slot(1, &f12, &phi).unwrap(), twist_bivector_action(1, 2, &phi).unwrap());
    assert_eq!(mu_slot(1, &[FormTerm::scalar(rint(1))], &phi).unwrap(), phi);
    assert_eq!(mu_slot(2, &f12, &phi).unwrap_err(), Error::IndexOutOfRange { index: 2, max: 1 });

    let phi = random_spinor(Shape::new(3, 3, 2).unwrap(), &mut rng);
    let a = mu_slot(2, &f12, &mu_slot(1, &f12, &phi).unwrap()).unwrap();
    let b = mu_slot(1, &f12, &mu_slot(2, &f12, &phi).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn group_action_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for m in 1..=2 {
        let phi = random_spinor(Shape::new(4, 3, m).unwrap(), &mut rng);
        let x = random_unit_vector(4, &mut rng);
        let y = random_unit_vector(3, &mut rng);
        let out = twisted_group_action(&[x.clone(), x.clone()], &[y.clone(), y], &phi).unwrap();
        let sign = if (1 + m) % 2 == 0 { 1 } else { -1 };
        assert_eq!(out, phi.scale_coeffs(&G::from_ints(sign, 0)));
    }
    // h empty: plain spin action on the Δ_n slot
    let psi = random_untwisted(4, &mut rng);
    let gv: Vec<_> = (0..2).map(|_| random_unit_vector(4, &mut rng)).collect();
    let lhs = twisted_group_action(&gv, &[], &ScaledSpinor::from_untwisted(&psi)).unwrap();
    let rhs = ScaledSpinor::from_untwisted(&spin_action_on_spinor(4, &gv, &psi).unwrap());
    assert_eq!(lhs, rhs);
}

#[test]
fn hermitian_examples() {
    let phi2 = catalog::build_spin7_reducing().spinor;
    assert_eq!(twisted_hermitian(&phi2, &phi2).unwrap(), G::one());
    let zero = ScaledSpinor::zero(phi2.shape).with_scale2(phi2.scale2.clone());
    assert_eq!(twisted_hermitian(&phi2, &zero).unwrap(), G::zero());
    let other = phi2.clone().with_scale2(rint(1));
    assert!(matches!(twisted_hermitian(&phi2, &other), Err(Error::ScaleMismatch(..))));
}

#[test]
fn eta_examples() {
    let phi2 = catalog::build_spin7_reducing().spinor;
    for k in 1..=7 {
        assert!(eta(&phi2, k, k).unwrap().is_zero());
        for l in k + 1..=7 {
            assert_eq!(eta(&phi2, k, l).unwrap(), TwoForm::basic(8, k, l).unwrap());
        }
    }
    let phi1 = catalog::build_spin7_pure().spinor;
    let e12 = eta(&phi1, 1, 2).unwrap();
    assert_eq!(e12, TwoForm::from_int_terms(8, &[(1, 2, 1), (3, 4, -1), (5, 6, 1), (7, 8, 1)]).unwrap());
    assert_eq!(e12.render_text(), "e1^e2 - e3^e4 + e5^e6 + e7^e8");
    assert!(eta_hat(&e12).squares_to_minus_identity());
    assert!(matches!(eta(&phi1, 0, 2), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn eta_hat_examples() {
    let w = TwoForm::basic(2, 1, 2).unwrap();
    assert!(eta_hat(&w).squares_to_minus_identity());
    // η̂(e₁) = ω(e₁,e₂) e₂
    assert_eq!(eta_hat(&w).mat[(1, 0)], rint(1));
    assert!(eta_hat(&TwoForm::zero(5)).is_zero());
}

#[test]
fn phi_extend_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let phi = random_spinor(Shape::new(4, 3, 1).unwrap(), &mut rng);
    assert_eq!(phi_extend(&phi, &[(1, 2, rint(1))]).unwrap(), eta(&phi, 1, 2).unwrap());
    assert!(phi_extend(&phi, &[(1, 2, rint(1)), (2, 1, rint(1))]).unwrap().is_zero());
    // rotated frame: Φ(f'_kl) = Σ_{s<t} (a_ks a_lt − a_kt a_ls) Φ(f_st)
    let a = random_rotation(3, &mut rng);
    for k in 0..3 {
        for l in k + 1..3 {
            // f'_k = Σ_s a_ks f_s, so f'_k∧f'_l = Σ_{s,t} a_ks a_lt f_s∧f_t
            let mut beta = Vec::new();
            for s in 0..3 {
                for t in 0..3 {
                    beta.push((s + 1, t + 1, &a[(k, s)] * &a[(l, t)]));
                }
            }
            let mut want = TwoForm::zero(4);
            for s in 0..3 {
                for t in s + 1..3 {
                    let c = &a[(k, s)] * &a[(l, t)] - &a[(k, t)] * &a[(l, s)];
                    want = want.add(&eta(&phi, s + 1, t + 1).unwrap().scale(&c)).unwrap();
                }
            }
            assert_eq!(phi_extend(&phi, &beta).unwrap(), want);
        }
    }
}

#[test]
fn spinc_prototype() {
    for half in [2usize, 3] {
        let n = 2 * half;
        let psi = SpinorVector::basis(n, &vec![1; half]).unwrap();
        let form = spinc_form_untwisted(&psi).unwrap();
        let terms: Vec<_> = (1..=half).map(|a| (2 * a - 1, 2 * a, -1)).collect();
        assert_eq!(form, TwoForm::from_int_terms(n, &terms).unwrap());
        // (η + n·i)·ψ = 0 with n = ⌊dim/2⌋
        let phi = ScaledSpinor::from_untwisted(&psi);
        let lhs = spin_two_form_action(&form, &phi)
            .unwrap()
            .add(&phi.scale_coeffs(&G::from_ints(0, half as i64)))
            .unwrap();
        assert!(lhs.is_zero());
        assert!(check_spinc_pure(&psi).unwrap());
    }
    let phi = catalog::build_spin7_pure().spinor;
    assert_eq!(spinc_form(&phi).unwrap_err(), Error::WrongRank { expected: 2, got: 7 });
}

#[test]
fn serde_round_trips() {
    let phi = catalog::build_qk_pure(2).unwrap().spinor;
    let js = serde_json::to_string(&phi).unwrap();
    let back: ScaledSpinor = serde_json::from_str(&js).unwrap();
    assert_eq!(back, phi);
    let w = TwoForm::from_terms(4, &[(1, 2, rat(1, 2)), (3, 4, rint(-1))]).unwrap();
    let back: TwoForm = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
    assert_eq!(back, w);
    assert_eq!(w.render_text(), "1/2 * e1^e2 - e3^e4");
    assert_eq!(TwoForm::zero(3).render_text(), "0");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn eta_is_antisymmetric_and_phase_invariant(
        (n, r, m) in prop_oneof![Just((3usize, 3usize, 1usize)), Just((4, 3, 2)), Just((5, 4, 1)), Just((6, 3, 1))],
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_spinor(Shape::new(n, r, m).unwrap(), &mut rng);
        for k in 1..=r {
            for l in 1..=r {
                let e = eta(&phi, k, l).unwrap();
                prop_assert!(e.matrix().is_antisymmetric());
                prop_assert_eq!(e.neg(), eta(&phi, l, k).unwrap());
                for c in [G::i(), G::from_ints(-1, 0), G::from_ints(0, -1)] {
                    prop_assert_eq!(eta(&phi.scale_coeffs(&c), k, l).unwrap(), e.clone());
                }
            }
        }
    }

    #[test]
    fn twist_bivectors_are_skew_hermitian(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_spinor(Shape::new(4, 4, 2).unwrap(), &mut rng);
        for k in 1..=4 {
            for l in k + 1..=4 {
                let z = twisted_hermitian(&twist_bivector_action(k, l, &phi).unwrap(), &phi).unwrap();
                prop_assert!(z.re.is_zero());
            }
        }
    }

    #[test]
    fn reality_identities_hold(
        (n, r, m) in prop_oneof![Just((2usize, 3usize, 1usize)), Just((4, 4, 1)), Just((5, 3, 2)), Just((6, 2, 2))],
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_spinor(Shape::new(n, r, m).unwrap(), &mut rng);
        let x = random_vector(n, &mut rng);
        let y = random_vector(n, &mut rng);
        let rep = spinor_forge::structure::reality_identities(&phi, &x, &y).unwrap();
        prop_assert!(rep.all(), "{:?}", rep);
        let xp = tangent_action(&x, &phi).unwrap();
        let dot = x.iter().zip(&x).fold(Rational::zero(), |a, (p, q)| a + p * q);
        prop_assert_eq!(twisted_hermitian(&xp, &xp).unwrap(), G::real(dot * phi.norm2()));
    }

    #[test]
    fn twisted_group_action_is_unitary_and_equivariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_spinor(Shape::new(4, 3, 2).unwrap(), &mut rng);
        let g: Vec<_> = (0..2).map(|_| random_unit_vector(4, &mut rng)).collect();
        let h: Vec<_> = (0..2).map(|_| random_unit_vector(3, &mut rng)).collect();
        let moved = twisted_group_action(&g, &h, &phi).unwrap();
        prop_assert_eq!(moved.norm2(), phi.norm2());
        let x = random_vector(4, &mut rng);
        let gx = spin_action_on_vector(4, &g, &x).unwrap();
        let lhs = twisted_group_action(&g, &h, &tangent_action(&x, &phi).unwrap()).unwrap();
        prop_assert_eq!(lhs, tangent_action(&gx, &moved).unwrap());
    }
}

#[test]
fn untwisted_vector_action_agrees_with_tangent_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let psi = random_untwisted(5, &mut rng);
    let x = random_vector(5, &mut rng);
    assert_eq!(
        tangent_action(&x, &ScaledSpinor::from_untwisted(&psi)).unwrap(),
        ScaledSpinor::from_untwisted(&vector_action(5, &x, &psi).unwrap())
    );
}
