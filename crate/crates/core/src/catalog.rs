//! Explicit spinors and reference data: the quaternion-Kähler family, the Spin(7) pair,
//! the generic reducing spinor, the g2 generators and the sp(m) forms.
//!
//! Index typo policy: the printed twist index `v_(1,1-,1)` is read as `v_(1,1,-1)`, the
//! only completion that makes the eight index pairs a consistent pattern.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eta::{eta, TwoForm};
use crate::numeric::{rat, rint, GaussianRational, Rational};
use crate::ops::SparseVec;
use crate::spin::{gamma_sparse, BasisIndex, SpinorVector};
use crate::structure::AmbientElement;
use crate::twisted::{twist_bivector_action, ScaledSpinor, Shape, TwistedIndex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub spinor: ScaledSpinor,
    pub expected_etas: Option<BTreeMap<(usize, usize), TwoForm>>,
    pub expected_annihilator_dim: Option<usize>,
    /// Factor by which the η forms of the unnormalized spinor exceed `expected_etas`.
    pub unnormalized_eta_factor: Option<Rational>,
}

pub const NAMES: &[&str] = &["qk:<m>", "spin7_pure", "spin7_reducing", "generic:<n>", "spinc:<h>"];

/// Looks up `qk:<m>`, `spin7_pure`, `spin7_reducing`, `generic:<n>` or `spinc:<h>`.
pub fn by_name(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalog(name.to_string());
    match name {
        "spin7_pure" => Ok(build_spin7_pure()),
        "spin7_reducing" => Ok(build_spin7_reducing()),
        _ => {
            let (kind, arg) = name.split_once(':').ok_or_else(unknown)?;
            let v: usize = arg.parse().map_err(|_| unknown())?;
            match kind {
                "qk" => build_qk_pure(v),
                "generic" => build_generic_reducing(v),
                "spinc" => build_spinc_prototype(v),
                _ => Err(unknown()),
            }
        }
    }
}

/// `G(ε) = (ε_1, ε_1, …, ε_m, ε_m)` and `H(ε)` = number of −1 entries.
pub fn maps_g_h(eps: &[i8]) -> (Vec<i8>, usize) {
    let g = eps.iter().flat_map(|&e| [e, e]).collect();
    let h = eps.iter().filter(|&&e| e == -1).count();
    (g, h)
}

fn all_eps(m: usize) -> impl Iterator<Item = Vec<i8>> {
    BasisIndex::all(m).map(|b| b.0)
}

fn binom(m: usize, j: usize) -> BigInt {
    binomial(BigInt::from(m), BigInt::from(j))
}

/// ψ_j = Σ_{H(ε)=j} u_{G(ε)} ∈ Δ_{4m}.
pub fn qk_psi(m: usize, j: usize) -> SpinorVector {
    let mut s = SpinorVector::zero(4 * m);
    for e in all_eps(m) {
        let (g, h) = maps_g_h(&e);
        if h == j {
            s.set(&BasisIndex(g), GaussianRational::one()).expect("length 2m");
        }
    }
    s
}

pub fn build_qk_pure(m: usize) -> Result<CatalogEntry> {
    if m == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let shape = Shape::new(4 * m, 3, m)?;
    let mut phi = ScaledSpinor::zero(shape);
    for e in all_eps(m) {
        let (g, j) = maps_g_h(&e);
        let c = GaussianRational::real(Rational::new(BigInt::one(), binom(m, j)));
        for d in all_eps(m) {
            if maps_g_h(&d).1 != m - j {
                continue;
            }
            let idx = TwistedIndex {
                spin: BasisIndex(g.clone()),
                twist: d.iter().map(|&x| BasisIndex(vec![x])).collect(),
            };
            phi.set(&idx, c.clone())?;
        }
    }
    let phi = phi.with_scale2(rat(3, ((m + 2) * (m + 1)) as i64));
    let n = 4 * m;
    let mut t12 = Vec::new();
    let mut t13 = Vec::new();
    let mut t23 = Vec::new();
    for j in 1..=m {
        let b = 4 * j;
        t12.extend([(b - 3, b - 2, 1), (b - 1, b, 1)]);
        t13.extend([(b - 3, b - 1, -1), (b - 2, b, 1)]);
        t23.extend([(b - 3, b, -1), (b - 2, b - 1, -1)]);
    }
    let mut etas = BTreeMap::new();
    etas.insert((1, 2), TwoForm::from_int_terms(n, &t12)?);
    etas.insert((1, 3), TwoForm::from_int_terms(n, &t13)?);
    etas.insert((2, 3), TwoForm::from_int_terms(n, &t23)?);
    Ok(CatalogEntry {
        name: format!("qk:{m}"),
        spinor: phi,
        expected_etas: Some(etas),
        expected_annihilator_dim: Some(m * (2 * m + 1) + 3),
        unnormalized_eta_factor: None,
    })
}

type SevenTerm = (i64, [i8; 4], [i8; 3]);

const SPIN7_PURE_TERMS: [SevenTerm; 8] = [
    (1, [-1, -1, -1, -1], [1, 1, 1]),
    (-1, [1, -1, -1, 1], [1, 1, -1]),
    (1, [1, -1, 1, -1], [1, -1, 1]),
    (-1, [1, 1, -1, -1], [1, -1, -1]),
    (-1, [-1, -1, 1, 1], [-1, 1, 1]),
    (1, [-1, 1, -1, 1], [-1, 1, -1]),
    (-1, [-1, 1, 1, -1], [-1, -1, 1]),
    (1, [1, 1, 1, 1], [-1, -1, -1]),
];

const SPIN7_REDUCING_TERMS: [SevenTerm; 8] = [
    (1, [-1, -1, -1, -1], [1, 1, 1]),
    (-1, [1, -1, -1, 1], [1, 1, -1]),
    (1, [1, -1, 1, -1], [1, -1, 1]),
    (-1, [-1, -1, 1, 1], [1, -1, -1]),
    (-1, [1, 1, -1, -1], [-1, 1, 1]),
    (1, [-1, 1, -1, 1], [-1, 1, -1]),
    (-1, [-1, 1, 1, -1], [-1, -1, 1]),
    (1, [1, 1, 1, 1], [-1, -1, -1]),
];

/// The printed η table of the Spin(7) pure spinor, (k, l, terms).
pub const SPIN7_ETA_TABLE: [(usize, usize, [(usize, usize, i64); 4]); 21] = [
    (1, 2, [(1, 2, 1), (3, 4, -1), (5, 6, 1), (7, 8, 1)]),
    (1, 3, [(1, 3, 1), (2, 4, 1), (5, 7, 1), (6, 8, -1)]),
    (1, 4, [(1, 4, 1), (2, 3, -1), (5, 8, 1), (6, 7, 1)]),
    (1, 5, [(1, 5, 1), (2, 6, -1), (3, 7, -1), (4, 8, -1)]),
    (1, 6, [(1, 6, 1), (2, 5, 1), (3, 8, 1), (4, 7, -1)]),
    (1, 7, [(1, 7, 1), (2, 8, -1), (3, 5, 1), (4, 6, 1)]),
    (2, 3, [(1, 4, -1), (2, 3, 1), (5, 8, 1), (6, 7, 1)]),
    (2, 4, [(1, 3, 1), (2, 4, 1), (5, 7, -1), (6, 8, 1)]),
    (2, 5, [(1, 6, 1), (2, 5, 1), (3, 8, -1), (4, 7, 1)]),
    (2, 6, [(1, 5, -1), (2, 6, 1), (3, 7, -1), (4, 8, -1)]),
    (2, 7, [(1, 8, 1), (2, 7, 1), (3, 6, 1), (4, 5, -1)]),
    (3, 4, [(1, 2, -1), (3, 4, 1), (5, 6, 1), (7, 8, 1)]),
    (3, 5, [(1, 7, 1), (2, 8, 1), (3, 5, 1), (4, 6, -1)]),
    (3, 6, [(1, 8, -1), (2, 7, 1), (3, 6, 1), (4, 5, 1)]),
    (3, 7, [(1, 5, -1), (2, 6, -1), (3, 7, 1), (4, 8, -1)]),
    (4, 5, [(1, 8, 1), (2, 7, -1), (3, 6, 1), (4, 5, 1)]),
    (4, 6, [(1, 7, 1), (2, 8, 1), (3, 5, -1), (4, 6, 1)]),
    (4, 7, [(1, 6, -1), (2, 5, 1), (3, 8, 1), (4, 7, 1)]),
    (5, 6, [(1, 2, 1), (3, 4, 1), (5, 6, 1), (7, 8, -1)]),
    (5, 7, [(1, 3, 1), (2, 4, -1), (5, 7, 1), (6, 8, 1)]),
    (6, 7, [(1, 4, 1), (2, 3, 1), (5, 8, -1), (6, 7, 1)]),
];

fn seven_spinor(terms: &[SevenTerm], scale2: Rational) -> ScaledSpinor {
    let shape = Shape { n: 8, r: 7, m: 1 };
    let mut phi = ScaledSpinor::zero(shape);
    for (c, u, v) in terms {
        let idx = TwistedIndex { spin: BasisIndex(u.to_vec()), twist: vec![BasisIndex(v.to_vec())] };
        phi.set(&idx, GaussianRational::from_ints(*c, 0)).expect("fixed shape");
    }
    phi.with_scale2(scale2)
}

pub fn spin7_eta_table() -> BTreeMap<(usize, usize), TwoForm> {
    SPIN7_ETA_TABLE
        .iter()
        .map(|(k, l, t)| ((*k, *l), TwoForm::from_int_terms(8, t).expect("indices in 1..=8")))
        .collect()
}

/// Coefficients ±1 with scale2 = 1/4, i.e. the printed ±1/2.
pub fn build_spin7_pure() -> CatalogEntry {
    CatalogEntry {
        name: "spin7_pure".into(),
        spinor: seven_spinor(&SPIN7_PURE_TERMS, rat(1, 4)),
        expected_etas: Some(spin7_eta_table()),
        expected_annihilator_dim: Some(21),
        unnormalized_eta_factor: None,
    }
}

fn basic_forms(n: usize, r: usize) -> BTreeMap<(usize, usize), TwoForm> {
    let mut out = BTreeMap::new();
    for k in 1..=r {
        for l in k + 1..=r {
            out.insert((k, l), TwoForm::basic(n, k, l).expect("k < l ≤ n"));
        }
    }
    out
}

/// Coefficients ±1 with scale2 = 1/8.
pub fn build_spin7_reducing() -> CatalogEntry {
    CatalogEntry {
        name: "spin7_reducing".into(),
        spinor: seven_spinor(&SPIN7_REDUCING_TERMS, rat(1, 8)),
        expected_etas: Some(basic_forms(8, 7)),
        expected_annihilator_dim: Some(21),
        unnormalized_eta_factor: None,
    }
}

/// φ₀ = Σ_ψ ψ ⊗ γ_n(ψ) over the u basis, stored with scale2 = 2^{-⌊n/2⌋}.
pub fn build_generic_reducing(n: usize) -> Result<CatalogEntry> {
    if !(2..=12).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let k = (n / 2) as u32;
    let shape = Shape::new(n, n, 1)?;
    // Σ ψ⊗γ(ψ) agrees with the printed coefficient table up to a global unit,
    // which is −i for n ≡ 4..7 (mod 8); use the printed normalization
    let phase = if n % 8 >= 4 { 3 } else { 0 };
    let mut v = SparseVec::new();
    for idx in 0..1u64 << k {
        let g = gamma_sparse(k, &SparseVec::basis(idx));
        for (&t, c) in &g.0 {
            v.add_at((idx << shape.spin_offset()) | t, c.mul_i_pow(phase));
        }
    }
    let factor = rint(1i64 << k);
    Ok(CatalogEntry {
        name: format!("generic:{n}"),
        spinor: ScaledSpinor::from_sparse(shape, v, Rational::one() / &factor),
        expected_etas: Some(basic_forms(n, n)),
        expected_annihilator_dim: None,
        unnormalized_eta_factor: Some(factor),
    })
}

/// u_(1,…,1) ∈ Δ_{2h}, untwisted; its Spin^c form is −Σ e_{2a−1}∧e_{2a}, stored under (1, 2).
pub fn build_spinc_prototype(h: usize) -> Result<CatalogEntry> {
    if !(1..=6).contains(&h) {
        return Err(Error::UnsupportedDimension(h));
    }
    let n = 2 * h;
    let psi = SpinorVector::basis(n, &vec![1; h])?;
    let terms: Vec<_> = (1..=h).map(|a| (2 * a - 1, 2 * a, -1)).collect();
    Ok(CatalogEntry {
        name: format!("spinc:{h}"),
        spinor: ScaledSpinor::from_untwisted(&psi),
        expected_etas: Some(BTreeMap::from([((1, 2), TwoForm::from_int_terms(n, &terms)?)])),
        expected_annihilator_dim: None,
        unnormalized_eta_factor: None,
    })
}

/// The 14 printed generators of the common annihilator of the Spin(7) pair, verbatim.
pub fn g2_generators() -> Vec<AmbientElement> {
    const G2: [[(usize, usize, i64); 2]; 14] = [
        [(1, 2, 1), (3, 4, -1)],
        [(1, 2, 1), (5, 6, 1)],
        [(1, 3, 1), (2, 4, 1)],
        [(1, 4, 1), (2, 3, -1)],
        [(1, 4, 1), (6, 7, 1)],
        [(2, 4, 1), (5, 7, -1)],
        [(1, 5, 1), (3, 7, -1)],
        [(1, 5, 1), (2, 6, 1)],
        [(2, 5, 1), (4, 7, 1)],
        [(1, 6, 1), (2, 5, 1)],
        [(1, 7, 1), (3, 5, 1)],
        [(2, 7, 1), (4, 5, -1)],
        [(2, 7, 1), (3, 6, 1)],
        [(1, 5, 1), (2, 6, -1)],
    ];
    G2.iter()
        .map(|t| AmbientElement::from_int_terms(8, 7, t, t).expect("indices in range"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaForm {
    pub i: usize,
    pub j: usize,
    pub s: usize,
    pub form: TwoForm,
}

fn beta_terms(i: usize, j: usize, s: usize) -> Vec<(usize, usize, i64)> {
    let (a, b) = (4 * i, 4 * j);
    match s {
        1 => vec![(a - 3, b - 3, 1), (a - 2, b - 2, 1), (a - 1, b - 1, 1), (a, b, 1)],
        2 => vec![(a - 3, b - 2, 1), (a - 1, b, -1)],
        3 => vec![(a - 3, b - 1, 1), (a - 2, b, 1)],
        _ => vec![(a - 3, b, 1), (a - 2, b - 1, -1)],
    }
}

fn collect_betas(m: usize, terms: impl Fn(usize, usize, usize) -> Vec<(usize, usize, i64)>) -> Vec<BetaForm> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i..=m {
            for s in 1..=4 {
                let form = TwoForm::from_int_terms(4 * m, &terms(i, j, s)).expect("indices in range");
                out.push(BetaForm { i, j, s, form });
            }
        }
    }
    out
}

/// β_ij^s for 1 ≤ i ≤ j ≤ m, s = 1..4, exactly as printed (β_ii^1 is the zero form).
pub fn beta_forms(m: usize) -> Vec<BetaForm> {
    collect_betas(m, beta_terms)
}

/// β_ij^s with the block-swapped terms added for i < j and s = 2, 3, 4: each printed
/// term `c·e_a e_b` gains `-c·e_{b'} e_{a'}` where a', b' are a, b moved to the other block.
/// These commute with the quaternionic structure; the printed two-term forms do not.
pub fn beta_forms_completed(m: usize) -> Vec<BetaForm> {
    collect_betas(m, |i, j, s| {
        let mut t = beta_terms(i, j, s);
        if i < j && s > 1 {
            let d = 4 * (j - i);
            let swapped: Vec<_> = t.iter().map(|&(a, b, c)| (b - d, a + d, -c)).collect();
            t.extend(swapped);
        }
        t
    })
}

/// Checks η₁₃·ψ_j = −2[(j+1)ψ_{j+1} + (j−1−m)ψ_{j−1}] for 0 ≤ j ≤ m.
pub fn eta13_recursion_check(m: usize) -> Result<bool> {
    if m == 0 || m > 4 {
        return Err(Error::UnsupportedDimension(m));
    }
    let entry = build_qk_pure(m)?;
    let e13 = eta(&entry.spinor, 1, 3)?;
    let n = 4 * m;
    let psi = |j: i64| -> SpinorVector {
        if j < 0 || j > m as i64 {
            SpinorVector::zero(n)
        } else {
            qk_psi(m, j as usize)
        }
    };
    for j in 0..=m as i64 {
        let lhs = crate::eta::spin_two_form_action(&e13, &ScaledSpinor::from_untwisted(&psi(j)))?;
        let rhs = psi(j + 1)
            .scale(&GaussianRational::from_ints(-2 * (j + 1), 0))
            .add(&psi(j - 1).scale(&GaussianRational::from_ints(-2 * (j - 1 - m as i64), 0)));
        if lhs.sparse() != rhs.sparse() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// φ_i = Σ_{H(δ)=i} v_δ ∈ Δ_3^{⊗m}, carried on a trivial Δ_1 slot.
pub fn qk_twist_sum(m: usize, i: usize) -> ScaledSpinor {
    let shape = Shape { n: 1, r: 3, m };
    let mut s = ScaledSpinor::zero(shape);
    for d in all_eps(m) {
        if maps_g_h(&d).1 == i {
            let idx = TwistedIndex { spin: BasisIndex(vec![]), twist: d.iter().map(|&x| BasisIndex(vec![x])).collect() };
            s.set(&idx, GaussianRational::one()).expect("shape fits");
        }
    }
    s
}

/// Checks κ(f₁₃)·φ_i = (i+1)φ_{i+1} − (m−i+1)φ_{i−1} for 0 ≤ i ≤ m.
pub fn qk_slot_expansion_check(m: usize) -> Result<bool> {
    let shape = Shape { n: 1, r: 3, m };
    let phi = |i: i64| {
        if i < 0 || i > m as i64 {
            ScaledSpinor::zero(shape)
        } else {
            qk_twist_sum(m, i as usize)
        }
    };
    for i in 0..=m as i64 {
        let lhs = twist_bivector_action(1, 3, &phi(i))?;
        let mut rhs = phi(i + 1).sparse().scale_real(&rint(i + 1));
        rhs.add_assign(&phi(i - 1).sparse().scale_real(&rint(-(m as i64 - i + 1))));
        if *lhs.sparse() != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

impl CatalogEntry {
    pub fn is_zero(&self) -> bool {
        self.spinor.is_zero()
    }

    pub fn scale2(&self) -> &Rational {
        &self.spinor.scale2
    }
}
