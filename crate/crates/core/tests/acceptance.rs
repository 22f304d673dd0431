//! The twelve acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinor_forge::catalog::{self, beta_forms, g2_generators};
use spinor_forge::rotation::{random_rotation, random_unit_vector};
use spinor_forge::sample::{random_spinor, random_vector};
use spinor_forge::structure::{commutator_relations, reality_identities};
use spinor_forge::*;

fn verdict(n: usize, pass: bool, detail: &str) {
    println!("criterion {n}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

/// Parses "e1e2 - e3e4 + …" in ℝ⁸.
fn parse_form(s: &str) -> TwoForm {
    let mut terms = Vec::new();
    let mut sign = 1;
    for tok in s.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            t => {
                let (neg, body) = t.strip_prefix('-').map_or((false, t), |b| (true, b));
                let d: Vec<usize> = body.split('e').filter(|x| !x.is_empty()).map(|x| x.parse().unwrap()).collect();
                terms.push((d[0], d[1], if neg { -sign } else { sign }));
                sign = 1;
            }
        }
    }
    TwoForm::from_int_terms(8, &terms).unwrap()
}

const PRINTED_ETA: [(&str, &str); 21] = [
    ("12", "e1e2 - e3e4 + e5e6 + e7e8"),
    ("13", "e1e3 + e2e4 + e5e7 - e6e8"),
    ("14", "e1e4 - e2e3 + e5e8 + e6e7"),
    ("15", "e1e5 - e2e6 - e3e7 - e4e8"),
    ("16", "e1e6 + e2e5 + e3e8 - e4e7"),
    ("17", "e1e7 - e2e8 + e3e5 + e4e6"),
    ("23", "-e1e4 + e2e3 + e5e8 + e6e7"),
    ("24", "e1e3 + e2e4 - e5e7 + e6e8"),
    ("25", "e1e6 + e2e5 - e3e8 + e4e7"),
    ("26", "-e1e5 + e2e6 - e3e7 - e4e8"),
    ("27", "e1e8 + e2e7 + e3e6 - e4e5"),
    ("34", "-e1e2 + e3e4 + e5e6 + e7e8"),
    ("35", "e1e7 + e2e8 + e3e5 - e4e6"),
    ("36", "-e1e8 + e2e7 + e3e6 + e4e5"),
    ("37", "-e1e5 - e2e6 + e3e7 - e4e8"),
    ("45", "e1e8 - e2e7 + e3e6 + e4e5"),
    ("46", "e1e7 + e2e8 - e3e5 + e4e6"),
    ("47", "-e1e6 + e2e5 + e3e8 + e4e7"),
    ("56", "e1e2 + e3e4 + e5e6 - e7e8"),
    ("57", "e1e3 - e2e4 + e5e7 + e6e8"),
    ("67", "e1e4 + e2e3 - e5e8 + e6e7"),
];

#[test]
fn criterion_01_spin7_eta_table() {
    let t = Instant::now();
    let phi1 = catalog::build_spin7_pure().spinor;
    let mut equal = 0;
    for (pair, rhs) in PRINTED_ETA {
        let k = (pair.as_bytes()[0] - b'0') as usize;
        let l = (pair.as_bytes()[1] - b'0') as usize;
        if eta(&phi1, k, l).unwrap() == parse_form(rhs) {
            equal += 1;
        }
    }
    let el = t.elapsed();
    verdict(1, equal == 21 && el < Duration::from_secs(5), &format!("{equal}/21 rows equal in {el:.2?}"));
}

#[test]
fn criterion_02_purity_certificates() {
    let t = Instant::now();
    let mut ok = check_pure(&catalog::build_spin7_pure().spinor).unwrap().is_pure;
    for m in 1..=3 {
        ok &= check_pure(&catalog::build_qk_pure(m).unwrap().spinor).unwrap().is_pure;
    }
    ok &= check_reducing(&catalog::build_spin7_reducing().spinor).unwrap().is_reducing;
    for n in 2..=8 {
        ok &= check_reducing(&catalog::build_generic_reducing(n).unwrap().spinor).unwrap().is_reducing;
    }
    let el = t.elapsed();
    verdict(2, ok && el < Duration::from_secs(60), &format!("all certificates true: {ok}, {el:.2?}"));
}

#[test]
fn criterion_03_g2_recovery() {
    let t = Instant::now();
    let phi1 = catalog::build_spin7_pure().spinor;
    let phi2 = catalog::build_spin7_reducing().spinor;
    let alg = annihilator(&[phi1, phi2]).unwrap();
    let gens = g2_generators();
    let span = alg.same_span(&gens);
    let el = t.elapsed();
    let ok = alg.dim == 14 && alg.closed && span && el < Duration::from_secs(30);
    verdict(3, ok, &format!("dim={} closed={} span equals listed generators: {span}, {el:.2?}", alg.dim, alg.closed));
}

#[test]
fn criterion_04_spin7_and_so7_annihilators() {
    let a1 = annihilator(&[catalog::build_spin7_pure().spinor]).unwrap();
    let a2 = annihilator(&[catalog::build_spin7_reducing().spinor]).unwrap();
    let ok = a1.dim == 21 && a1.closed && a2.dim == 21 && a2.closed;
    verdict(4, ok, &format!("phi1: {} closed={}; phi2: {} closed={}", a1.dim, a1.closed, a2.dim, a2.closed));
}

#[test]
fn criterion_05_qk_stabilizer_algebra() {
    let mut ok = true;
    let mut detail = Vec::new();
    for m in 1..=3 {
        let phi = catalog::build_qk_pure(m).unwrap().spinor;
        let alg = annihilator(&[phi.clone()]).unwrap();
        let eta_in = eta_all(&phi)
            .unwrap()
            .iter()
            .all(|(&(k, l), w)| alg.contains(&AmbientElement::from_two_form(w, 3, &[(k, l, rint(2))]).unwrap()));
        let betas = beta_forms(m);
        let beta_in = betas.iter().filter(|b| alg.contains(&AmbientElement::from_two_form(&b.form, 3, &[]).unwrap())).count();
        ok &= alg.dim == m * (2 * m + 1) + 3 && alg.closed && eta_in && beta_in == betas.len();
        detail.push(format!("m={m}: dim {} closed={} eta+2f in={eta_in} beta in {beta_in}/{}", alg.dim, alg.closed, betas.len()));
    }
    verdict(5, ok, &detail.join("; "));
}

#[test]
fn criterion_06_generic_reducing_spinor() {
    let mut ok = true;
    for n in 2..=8 {
        let phi = catalog::build_generic_reducing(n).unwrap().spinor;
        let raw = phi.clone().with_scale2(rint(1));
        let factor = rint(1 << (n / 2));
        for p in 1..=n {
            for q in p + 1..=n {
                ok &= eta(&raw, p, q).unwrap() == TwoForm::basic(n, p, q).unwrap().scale(&factor);
                let x = AmbientElement::from_int_terms(n, n, &[(p, q, 1)], &[(p, q, 1)]).unwrap();
                ok &= x.act(&phi).unwrap().is_zero();
            }
        }
    }
    verdict(6, ok, "n=2..8, all pairs");
}

#[test]
fn criterion_07_reality_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut count = 0;
    let mut failures = 0;
    for (n, r, m) in [(4, 3, 1), (8, 3, 2), (8, 7, 1), (6, 3, 1)] {
        let shape = Shape::new(n, r, m).unwrap();
        for _ in 0..50 {
            let phi = random_spinor(shape, &mut rng);
            let x = random_vector(n, &mut rng);
            let y = random_vector(n, &mut rng);
            if !reality_identities(&phi, &x, &y).unwrap().all() {
                failures += 1;
            }
            count += 1;
        }
    }
    verdict(7, count >= 200 && failures == 0, &format!("{count} spinors, {failures} failures"));
}

fn relations_hold(phi: &ScaledSpinor) -> bool {
    let hats = eta_hats(&eta_all(phi).unwrap());
    even_clifford_verify(&hats).unwrap().holds() && commutator_relations(&hats).unwrap().holds()
}

#[test]
fn criterion_08_even_clifford_relations() {
    let mut ok = relations_hold(&catalog::build_spin7_pure().spinor);
    for m in 1..=2 {
        ok &= relations_hold(&catalog::build_qk_pure(m).unwrap().spinor);
    }
    verdict(8, ok, "phi1, qk m=1,2");
}

#[test]
fn criterion_09_frame_independence_and_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let spinors = [catalog::build_spin7_pure().spinor, catalog::build_qk_pure(2).unwrap().spinor];
    let mut ok = true;
    for i in 0..20 {
        let phi = &spinors[i % 2];
        ok &= frame_rotation_check(phi, &random_rotation(phi.shape.r, &mut rng), Certificate::Pure).unwrap();
    }
    for i in 0..10 {
        let phi = &spinors[i % 2];
        let g: Vec<_> = (0..2).map(|_| random_unit_vector(phi.shape.n, &mut rng)).collect();
        let h: Vec<_> = (0..2).map(|_| random_unit_vector(phi.shape.r, &mut rng)).collect();
        ok &= equivariance_check(phi, &g, &h, Certificate::Pure).unwrap();
    }
    verdict(9, ok, "20 rotations, 10 group elements");
}

#[test]
fn criterion_10_spinc_special_case() {
    let mut ok = true;
    for half in [2usize, 3] {
        let n = 2 * half;
        let psi = SpinorVector::basis(n, &vec![1; half]).unwrap();
        let form = spinc_form_untwisted(&psi).unwrap();
        // (η + n·i)·ψ = 0
        let phi = ScaledSpinor::from_untwisted(&psi);
        let acted = spinor_forge::eta::spin_two_form_action(&form, &phi).unwrap();
        ok &= acted.add(&phi.scale_coeffs(&GaussianRational::from_ints(0, half as i64))).unwrap().is_zero();
        // η̂ = −J₀ with J₀ e_{2a−1} = e_{2a}
        let hat = eta_hat(&form);
        for a in 1..=half {
            for row in 0..n {
                let want_odd = if row == 2 * a - 1 { rint(-1) } else { rint(0) };
                let want_even = if row == 2 * a - 2 { rint(1) } else { rint(0) };
                ok &= hat.mat[(row, 2 * a - 2)] == want_odd && hat.mat[(row, 2 * a - 1)] == want_even;
            }
        }
        ok &= check_spinc_pure(&psi).unwrap();
    }
    verdict(10, ok, "n=2,3");
}

#[test]
fn criterion_11_representation_constants() {
    // r: (d_r, v_r) as tabulated for r = 1..8
    let table = [(1, 1, 1), (2, 2, 1), (3, 4, 1), (4, 4, 2), (5, 8, 1), (6, 8, 1), (7, 8, 1), (8, 8, 2)];
    let rows = table.iter().filter(|&&(r, d, v)| {
        let c = cl_dims(r).unwrap();
        c.d_r == d && c.v_r == v
    });
    let rows_ok = rows.count() == table.len();
    let hats = |phi: &ScaledSpinor| eta_hats(&eta_all(phi).unwrap()).into_values().collect::<Vec<_>>();
    let c1 = commutant(&hats(&catalog::build_spin7_pure().spinor), true).unwrap().dim;
    let c2 = commutant(&hats(&catalog::build_qk_pure(1).unwrap().spinor), true).unwrap().dim;
    verdict(11, rows_ok && c1 == 0 && c2 == 3, &format!("table rows ok: {rows_ok}; commutants {c1}, {c2}"));
}

#[test]
fn criterion_12_eta13_recursion() {
    let res: BTreeMap<usize, bool> = (1..=3).map(|m| (m, catalog::eta13_recursion_check(m).unwrap())).collect();
    verdict(12, res.values().all(|&b| b), &format!("{res:?}"));
}
