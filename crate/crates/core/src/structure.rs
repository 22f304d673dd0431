//! Certification: pure and reducing spinors, even Clifford relations, annihilator and
//! commutant algebras, frame and group invariance, and the Cl_r^0 module constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::eta::{eta_all, eta_hat, spinc_form_untwisted, Endo, TwoForm};
use crate::linalg::{independent_subset, nullspace, RatMatrix, SpanSolver};
use crate::numeric::{parse_rational, rint, GaussianRational, Rational};
use crate::ops::{IntVec, OpSum, SparseVec};
use crate::rotation::is_special_orthogonal;
use crate::spin::SpinorVector;
use crate::twisted::{twisted_group_action, ScaledSpinor, Shape};

/// Coefficients on `e_i e_j` (i < j) for a bivector in ℝ^d.
pub type Bivector = BTreeMap<(usize, usize), Rational>;

fn bivector_add(x: &mut Bivector, p: usize, q: usize, c: Rational) {
    if c.is_zero() || p == q {
        return;
    }
    let (key, c) = if p < q { ((p, q), c) } else { ((q, p), -c) };
    let e = x.entry(key).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        x.remove(&key);
    }
}

/// Clifford commutator of two bivectors:
/// `[e_i e_j, e_k e_l] = 2(-δ_jk e_i e_l + δ_ik e_j e_l + δ_jl e_i e_k - δ_il e_j e_k)`.
pub fn bivector_bracket(x: &Bivector, y: &Bivector) -> Bivector {
    let mut out = Bivector::new();
    for (&(i, j), c) in x {
        for (&(k, l), d) in y {
            if (i, j) == (k, l) {
                continue;
            }
            let cd = c * d * rint(2);
            if j == k {
                bivector_add(&mut out, i, l, -cd.clone());
            }
            if i == k {
                bivector_add(&mut out, j, l, cd.clone());
            }
            if j == l {
                bivector_add(&mut out, i, k, cd.clone());
            }
            if i == l {
                bivector_add(&mut out, j, k, -cd);
            }
        }
    }
    out
}

/// An element `Σ a_ij e_i e_j + Σ b_kl f_k f_l` of spin(n) ⊕ spin(r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientElement {
    pub n: usize,
    pub r: usize,
    pub a: Bivector,
    pub b: Bivector,
}

impl AmbientElement {
    pub fn zero(n: usize, r: usize) -> Self {
        AmbientElement { n, r, a: Bivector::new(), b: Bivector::new() }
    }

    /// Terms may use either index order; `(j, i)` counts as `-e_i e_j`.
    pub fn from_terms(
        n: usize,
        r: usize,
        a: &[(usize, usize, Rational)],
        b: &[(usize, usize, Rational)],
    ) -> Result<Self> {
        let mut el = Self::zero(n, r);
        for (i, j, c) in a {
            check_idx(*i, n)?;
            check_idx(*j, n)?;
            bivector_add(&mut el.a, *i, *j, c.clone());
        }
        for (k, l, c) in b {
            check_idx(*k, r)?;
            check_idx(*l, r)?;
            bivector_add(&mut el.b, *k, *l, c.clone());
        }
        Ok(el)
    }

    pub fn from_int_terms(
        n: usize,
        r: usize,
        a: &[(usize, usize, i64)],
        b: &[(usize, usize, i64)],
    ) -> Result<Self> {
        let conv = |v: &[(usize, usize, i64)]| -> Vec<(usize, usize, Rational)> {
            v.iter().map(|&(i, j, c)| (i, j, rint(c))).collect()
        };
        Self::from_terms(n, r, &conv(a), &conv(b))
    }

    /// `ω + Σ c_kl f_k f_l` with ω a 2-form read as the bivector Σ ω(a,b) e_a e_b.
    pub fn from_two_form(omega: &TwoForm, r: usize, b: &[(usize, usize, Rational)]) -> Result<Self> {
        let a: Vec<_> = omega.terms();
        Self::from_terms(omega.n, r, &a, b)
    }

    pub fn dim_a(&self) -> usize {
        self.n * (self.n.saturating_sub(1)) / 2
    }

    pub fn dim_b(&self) -> usize {
        self.r * (self.r.saturating_sub(1)) / 2
    }

    /// Coordinates: a-part then b-part, pairs in lexicographic order.
    pub fn to_vector(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.dim_a() + self.dim_b());
        for (d, part) in [(self.n, &self.a), (self.r, &self.b)] {
            for i in 1..=d {
                for j in i + 1..=d {
                    v.push(part.get(&(i, j)).cloned().unwrap_or_else(Rational::zero));
                }
            }
        }
        v
    }

    pub fn from_vector(n: usize, r: usize, v: &[Rational]) -> Self {
        let mut el = Self::zero(n, r);
        let mut it = v.iter();
        for (d, part) in [(n, &mut el.a), (r, &mut el.b)] {
            for i in 1..=d {
                for j in i + 1..=d {
                    let c = it.next().expect("vector length");
                    if !c.is_zero() {
                        part.insert((i, j), c.clone());
                    }
                }
            }
        }
        el
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }

    pub fn bracket(&self, o: &AmbientElement) -> AmbientElement {
        AmbientElement {
            n: self.n,
            r: self.r,
            a: bivector_bracket(&self.a, &o.a),
            b: bivector_bracket(&self.b, &o.b),
        }
    }

    /// The operator `Σ a_ij e_i e_j + Σ b_kl κ_{r*}^m(f_k f_l)` on Δ_n ⊗ Δ_r^{⊗m}.
    pub fn ops(&self, shape: &Shape) -> Result<OpSum> {
        if shape.n != self.n || shape.r != self.r {
            return Err(Error::ShapeMismatch(format!(
                "element of spin({})⊕spin({}) on shape {shape:?}",
                self.n, self.r
            )));
        }
        let mut ops = Vec::new();
        for (&(i, j), c) in &self.a {
            ops.push((c.clone(), shape.spin_pair(i, j)?));
        }
        for (&(k, l), c) in &self.b {
            for (one, op) in shape.twist_bivector_ops(k, l)? {
                ops.push((c * one, op));
            }
        }
        Ok(ops)
    }

    pub fn act(&self, phi: &ScaledSpinor) -> Result<ScaledSpinor> {
        Ok(phi.apply_ops(&self.ops(&phi.shape)?))
    }
}

impl fmt::Display for AmbientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (sym, part) in [("e", &self.a), ("f", &self.b)] {
            for (&(i, j), c) in part {
                let neg = c < &Rational::zero();
                let mag = if neg { -c } else { c.clone() };
                let sign = match (first, neg) {
                    (true, false) => "",
                    (true, true) => "- ",
                    (false, false) => " + ",
                    (false, true) => " - ",
                };
                first = false;
                write!(f, "{sign}")?;
                if !mag.is_one() {
                    write!(f, "{mag} * ")?;
                }
                write!(f, "{sym}{i}{sym}{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn check_idx(i: usize, max: usize) -> Result<()> {
    if i == 0 || i > max {
        return Err(Error::IndexOutOfRange { index: i, max });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSubalgebra {
    pub n: usize,
    pub r: usize,
    pub basis: Vec<AmbientElement>,
    pub dim: usize,
    pub closed: bool,
    /// `c[i][j][k]`: coefficient of basis k in `[x_i, x_j]`; present when closed.
    pub structure_constants: Option<Vec<Vec<Vec<Rational>>>>,
}

impl LieSubalgebra {
    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|e| e.to_vector()).collect()
    }

    pub fn contains(&self, x: &AmbientElement) -> bool {
        let mut all = self.vectors();
        let before = crate::linalg::rank(&all);
        all.push(x.to_vector());
        crate::linalg::rank(&all) == before
    }

    pub fn same_span(&self, others: &[AmbientElement]) -> bool {
        let o: Vec<Vec<Rational>> = others.iter().map(|e| e.to_vector()).collect();
        crate::linalg::same_span(&self.vectors(), &o)
    }
}

pub fn lie_closure_report(basis: &[AmbientElement]) -> Result<LieSubalgebra> {
    let first = basis.first().ok_or(Error::EmptyInput)?;
    let (n, r) = (first.n, first.r);
    if basis.iter().any(|e| e.n != n || e.r != r) {
        return Err(Error::ShapeMismatch("basis elements of different shapes".into()));
    }
    let vecs: Vec<Vec<Rational>> = basis.iter().map(|e| e.to_vector()).collect();
    let keep = independent_subset(&vecs);
    let basis: Vec<AmbientElement> = keep.iter().map(|&i| basis[i].clone()).collect();
    let dim = basis.len();
    if dim == 0 {
        return Ok(LieSubalgebra { n, r, basis, dim, closed: true, structure_constants: Some(vec![]) });
    }
    let vecs: Vec<Vec<Rational>> = keep.iter().map(|&i| vecs[i].clone()).collect();
    let solver = SpanSolver::new(&vecs)?;
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
    let solved: Vec<Option<Vec<Rational>>> = pairs
        .par_iter()
        .map(|&(i, j)| solver.solve(&basis[i].bracket(&basis[j]).to_vector()))
        .collect();
    let closed = solved.iter().all(|s| s.is_some());
    let structure_constants = closed.then(|| {
        let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (&(i, j), s) in pairs.iter().zip(&solved) {
            let s = s.as_ref().expect("closed");
            for k in 0..dim {
                c[i][j][k] = s[k].clone();
                c[j][i][k] = -&s[k];
            }
        }
        c
    });
    Ok(LieSubalgebra { n, r, basis, dim, closed, structure_constants })
}

/// The subalgebra of spin(n) ⊕ spin(r) killing every spinor in the list.
pub fn annihilator(spinors: &[ScaledSpinor]) -> Result<LieSubalgebra> {
    let first = spinors.first().ok_or(Error::EmptyInput)?;
    let shape = first.shape;
    if spinors.iter().any(|s| s.shape != shape) {
        return Err(Error::ShapeMismatch("spinors of different shapes".into()));
    }
    let (n, r) = (shape.n, shape.r);
    let unknowns: Vec<AmbientElement> = (0..n * (n - 1) / 2 + r * r.saturating_sub(1) / 2)
        .map(|u| {
            let mut v = vec![Rational::zero(); n * (n - 1) / 2 + r * r.saturating_sub(1) / 2];
            v[u] = Rational::one();
            AmbientElement::from_vector(n, r, &v)
        })
        .collect();
    let columns: Vec<Vec<SparseVec>> = unknowns
        .par_iter()
        .map(|x| {
            let ops = x.ops(&shape)?;
            Ok(spinors.iter().map(|phi| phi.sparse().apply_sum(&ops)).collect())
        })
        .collect::<Result<_>>()?;
    let mut keys: BTreeSet<(usize, u64)> = BTreeSet::new();
    for col in &columns {
        for (s, v) in col.iter().enumerate() {
            keys.extend(v.0.keys().map(|&i| (s, i)));
        }
    }
    let mut rows = Vec::with_capacity(2 * keys.len());
    for &(s, i) in &keys {
        let vals: Vec<GaussianRational> = columns.iter().map(|c| c[s].get(i)).collect();
        rows.push(vals.iter().map(|z| z.re.clone()).collect::<Vec<_>>());
        rows.push(vals.iter().map(|z| z.im.clone()).collect::<Vec<_>>());
    }
    let ns = nullspace(&rows, unknowns.len());
    let basis: Vec<AmbientElement> = ns.iter().map(|v| AmbientElement::from_vector(n, r, v)).collect();
    if basis.is_empty() {
        return Ok(LieSubalgebra { n, r, basis, dim: 0, closed: true, structure_constants: Some(vec![]) });
    }
    lie_closure_report(&basis)
}

fn serialize_pairs<S: Serializer, T: Serialize>(
    m: &BTreeMap<(usize, usize), T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a, T> {
        k: usize,
        l: usize,
        #[serde(flatten)]
        value: &'a T,
    }
    s.collect_seq(m.iter().map(|(&(k, l), value)| Entry { k, l, value }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PurePair {
    #[serde(serialize_with = "crate::numeric::rational_str::serialize")]
    pub defect_norm2: Rational,
    pub square_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PurityReport {
    pub is_pure: bool,
    #[serde(serialize_with = "serialize_pairs")]
    pub per_pair: BTreeMap<(usize, usize), PurePair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducingPair {
    #[serde(serialize_with = "crate::numeric::rational_str::serialize")]
    pub defect_norm2: Rational,
    pub eta_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducingReport {
    pub is_reducing: bool,
    #[serde(serialize_with = "serialize_pairs")]
    pub per_pair: BTreeMap<(usize, usize), ReducingPair>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certificate {
    Pure,
    Reducing,
}

/// |(η + c·κ)φ|², scale included.
fn defect_norm2(phi: &ScaledSpinor, eta: &TwoForm, kappa: &OpSum, c: i64) -> Result<Rational> {
    let mut ops = eta.spin_ops(&phi.shape)?;
    ops.extend(kappa.iter().map(|(x, op)| (x * rint(c), *op)));
    Ok(IntVec::new(phi.sparse()).apply_sum_norm2(&ops) * &phi.scale2)
}

fn kappas(shape: &Shape) -> Result<BTreeMap<(usize, usize), OpSum>> {
    let r = shape.r;
    let mut out = BTreeMap::new();
    for k in 1..=r {
        for l in k + 1..=r {
            out.insert((k, l), shape.twist_bivector_ops(k, l)?);
        }
    }
    Ok(out)
}

fn pure_from(
    phi: &ScaledSpinor,
    etas: &BTreeMap<(usize, usize), TwoForm>,
    kap: &BTreeMap<(usize, usize), OpSum>,
) -> Result<PurityReport> {
    let per_pair = etas
        .par_iter()
        .map(|(&p, e)| {
            let d = defect_norm2(phi, e, &kap[&p], 2)?;
            Ok((p, PurePair { defect_norm2: d, square_ok: eta_hat(e).squares_to_minus_identity() }))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let is_pure = per_pair.values().all(|x| x.defect_norm2.is_zero() && x.square_ok);
    Ok(PurityReport { is_pure, per_pair })
}

fn reducing_from(
    phi: &ScaledSpinor,
    etas: &BTreeMap<(usize, usize), TwoForm>,
    kap: &BTreeMap<(usize, usize), OpSum>,
) -> Result<ReducingReport> {
    let per_pair = etas
        .par_iter()
        .map(|(&p, e)| {
            let d = defect_norm2(phi, e, &kap[&p], 1)?;
            Ok((p, ReducingPair { defect_norm2: d, eta_nonzero: !e.is_zero() }))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let is_reducing = per_pair.values().all(|x| x.defect_norm2.is_zero() && x.eta_nonzero);
    Ok(ReducingReport { is_reducing, per_pair })
}

pub fn check_pure(phi: &ScaledSpinor) -> Result<PurityReport> {
    if phi.shape.r < 3 {
        return Err(Error::RankTooSmall(phi.shape.r));
    }
    if phi.is_zero() {
        return Err(Error::ZeroSpinor);
    }
    pure_from(phi, &eta_all(phi)?, &kappas(&phi.shape)?)
}

/// Also accepts r = 2 (the generic reducing spinor exists for every n ≥ 2).
pub fn check_reducing(phi: &ScaledSpinor) -> Result<ReducingReport> {
    if phi.shape.r < 2 {
        return Err(Error::RankTooSmall(phi.shape.r));
    }
    if phi.is_zero() {
        return Err(Error::ZeroSpinor);
    }
    reducing_from(phi, &eta_all(phi)?, &kappas(&phi.shape)?)
}

impl Certificate {
    pub fn verdict(&self, phi: &ScaledSpinor) -> Result<bool> {
        Ok(match self {
            Certificate::Pure => check_pure(phi)?.is_pure,
            Certificate::Reducing => check_reducing(phi)?.is_reducing,
        })
    }
}

/// True iff (η + (n/2)·i)·ψ = 0 and η̂² = −Id, with η the Spin^c form of ψ ∈ Δ_n.
pub fn check_spinc_pure(psi: &SpinorVector) -> Result<bool> {
    if psi.n % 2 == 1 {
        return Err(Error::ShapeMismatch(format!("Spin^c check needs even dimension, got {}", psi.n)));
    }
    if psi.is_zero() {
        return Err(Error::ZeroSpinor);
    }
    let form = spinc_form_untwisted(psi)?;
    let phi = ScaledSpinor::from_untwisted(psi);
    let mut out = phi.apply_ops(&form.spin_ops(&phi.shape)?).sparse().clone();
    out.add_scaled(psi.sparse(), &GaussianRational::from_ints(0, (psi.n / 2) as i64));
    Ok(out.is_zero() && eta_hat(&form).squares_to_minus_identity())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum Violation {
    /// η̂_kl² ≠ −Id
    Square { k: usize, l: usize },
    /// η̂_ij η̂_kl ≠ η̂_kl η̂_ij for disjoint pairs
    DisjointCommute { i: usize, j: usize, k: usize, l: usize },
    /// η̂_ij η̂_jk ≠ −η̂_ik, or the two fail to anticommute
    Overlap { i: usize, j: usize, k: usize },
    /// the chain η̂_ij η̂_kl = −η̂_ik η̂_jl = … breaks
    SixProduct { i: usize, j: usize, k: usize, l: usize },
    /// [η̂_ij, η̂_jk] ≠ −2 η̂_ik
    Commutator { i: usize, j: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub violation: Option<Violation>,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

struct HatSet<'a> {
    map: &'a BTreeMap<(usize, usize), Endo>,
}

impl HatSet<'_> {
    fn get(&self, a: usize, b: usize) -> Endo {
        if a < b {
            self.map[&(a, b)].clone()
        } else {
            self.map[&(b, a)].neg()
        }
    }
}

fn hat_rank(etas: &BTreeMap<(usize, usize), Endo>) -> Result<(usize, usize)> {
    let r = etas.keys().map(|&(_, l)| l).max().ok_or(Error::EmptyInput)?;
    let n = etas.values().next().map(|e| e.n).unwrap_or(0);
    if etas.values().any(|e| e.n != n) {
        return Err(Error::ShapeMismatch("endomorphisms of different sizes".into()));
    }
    for k in 1..=r {
        for l in k + 1..=r {
            if !etas.contains_key(&(k, l)) {
                return Err(Error::MissingPair(k, l));
            }
        }
    }
    Ok((r, n))
}

fn distinct(ix: &[usize]) -> bool {
    ix.iter().enumerate().all(|(p, a)| ix[p + 1..].iter().all(|b| a != b))
}

/// Even Clifford relations among the η̂_kl; reports the first failure.
pub fn even_clifford_verify(etas: &BTreeMap<(usize, usize), Endo>) -> Result<RelationReport> {
    let (r, n) = hat_rank(etas)?;
    let h = HatSet { map: etas };
    let id = Endo::identity(n);
    let fail = |v| Ok(RelationReport { violation: Some(v) });
    for k in 1..=r {
        for l in k + 1..=r {
            if h.get(k, l).compose(&h.get(k, l)) != id.neg() {
                return fail(Violation::Square { k, l });
            }
        }
    }
    for i in 1..=r {
        for j in i + 1..=r {
            for k in 1..=r {
                for l in k + 1..=r {
                    if !distinct(&[i, j, k, l]) {
                        continue;
                    }
                    let (x, y) = (h.get(i, j), h.get(k, l));
                    if x.compose(&y) != y.compose(&x) {
                        return fail(Violation::DisjointCommute { i, j, k, l });
                    }
                }
            }
        }
    }
    for i in 1..=r {
        for j in 1..=r {
            for k in 1..=r {
                if !distinct(&[i, j, k]) {
                    continue;
                }
                let (x, y) = (h.get(i, j), h.get(j, k));
                let xy = x.compose(&y);
                if xy != h.get(i, k).neg() || xy != y.compose(&x).neg() {
                    return fail(Violation::Overlap { i, j, k });
                }
            }
        }
    }
    for i in 1..=r {
        for j in 1..=r {
            for k in 1..=r {
                for l in 1..=r {
                    if !distinct(&[i, j, k, l]) {
                        continue;
                    }
                    let lhs = h.get(i, j).compose(&h.get(k, l));
                    let chain = [
                        h.get(i, k).compose(&h.get(j, l)).neg(),
                        h.get(j, l).compose(&h.get(i, k)).neg(),
                        h.get(k, l).compose(&h.get(i, j)),
                        h.get(j, k).compose(&h.get(i, l)),
                        h.get(i, l).compose(&h.get(j, k)),
                    ];
                    if chain.iter().any(|c| *c != lhs) {
                        return fail(Violation::SixProduct { i, j, k, l });
                    }
                }
            }
        }
    }
    Ok(RelationReport { violation: None })
}

/// Commutator identities: [η̂_ij, η̂_jk] = −2η̂_ik and [η̂_ij, η̂_kl] = 0 for disjoint pairs.
pub fn commutator_relations(etas: &BTreeMap<(usize, usize), Endo>) -> Result<RelationReport> {
    let (r, _) = hat_rank(etas)?;
    let h = HatSet { map: etas };
    let comm = |x: &Endo, y: &Endo| x.compose(y).sub(&y.compose(x));
    for i in 1..=r {
        for j in 1..=r {
            for k in 1..=r {
                if distinct(&[i, j, k]) && comm(&h.get(i, j), &h.get(j, k)) != h.get(i, k).scale(&rint(-2)) {
                    return Ok(RelationReport { violation: Some(Violation::Commutator { i, j, k }) });
                }
                for l in 1..=r {
                    if distinct(&[i, j, k, l]) && !comm(&h.get(i, j), &h.get(k, l)).is_zero() {
                        return Ok(RelationReport {
                            violation: Some(Violation::DisjointCommute { i, j, k, l }),
                        });
                    }
                }
            }
        }
    }
    Ok(RelationReport { violation: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commutant {
    pub dim: usize,
    pub basis: Vec<RatMatrix>,
}

/// All X with [X, η̂] = 0 for every given η̂ (and X antisymmetric if `restrict_skew`).
pub fn commutant(etas: &[Endo], restrict_skew: bool) -> Result<Commutant> {
    let n = etas.first().ok_or(Error::EmptyInput)?.n;
    if etas.iter().any(|e| e.n != n) {
        return Err(Error::ShapeMismatch("endomorphisms of different sizes".into()));
    }
    let mut unknowns: Vec<RatMatrix> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if restrict_skew && j <= i {
                continue;
            }
            let mut m = RatMatrix::zeros(n, n);
            m[(i, j)] = Rational::one();
            if restrict_skew {
                m[(j, i)] = -Rational::one();
            }
            unknowns.push(m);
        }
    }
    let comms: Vec<Vec<RatMatrix>> = unknowns
        .par_iter()
        .map(|x| etas.iter().map(|h| x.commutator(&h.mat)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for e in 0..etas.len() {
        for p in 0..n {
            for q in 0..n {
                let row: Vec<Rational> = comms.iter().map(|c| c[e][(p, q)].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let ns = nullspace(&rows, unknowns.len());
    let basis = ns
        .iter()
        .map(|v| {
            v.iter().zip(&unknowns).fold(RatMatrix::zeros(n, n), |acc, (c, u)| {
                if c.is_zero() {
                    acc
                } else {
                    acc.add(&u.scale(c)).expect("same size")
                }
            })
        })
        .collect::<Vec<_>>();
    Ok(Commutant { dim: basis.len(), basis })
}

/// Recomputes the certificate in the frame `f'_k = Σ_s a_ks f_s` and compares verdicts.
pub fn frame_rotation_check(phi: &ScaledSpinor, a: &RatMatrix, cert: Certificate) -> Result<bool> {
    let r = phi.shape.r;
    if a.rows != r || !is_special_orthogonal(a) {
        return Err(Error::NotOrthogonal(format!("need an element of SO({r})")));
    }
    let before = cert.verdict(phi)?;
    let etas = eta_all(phi)?;
    let kap = kappas(&phi.shape)?;
    let mut r_etas = BTreeMap::new();
    let mut r_kap = BTreeMap::new();
    for k in 1..=r {
        for l in k + 1..=r {
            let mut e = TwoForm::zero(phi.shape.n);
            let mut ops: OpSum = Vec::new();
            for s in 1..=r {
                for t in s + 1..=r {
                    let c = &a[(k - 1, s - 1)] * &a[(l - 1, t - 1)] - &a[(k - 1, t - 1)] * &a[(l - 1, s - 1)];
                    if c.is_zero() {
                        continue;
                    }
                    e = e.add(&etas[&(s, t)].scale(&c))?;
                    ops.extend(kap[&(s, t)].iter().map(|(x, op)| (x * &c, *op)));
                }
            }
            r_etas.insert((k, l), e);
            r_kap.insert((k, l), ops);
        }
    }
    let after = match cert {
        Certificate::Pure => pure_from(phi, &r_etas, &r_kap)?.is_pure,
        Certificate::Reducing => reducing_from(phi, &r_etas, &r_kap)?.is_reducing,
    };
    Ok(before == after)
}

/// Compares the certificate verdict for φ and for [g, h]·φ.
pub fn equivariance_check(
    phi: &ScaledSpinor,
    g: &[Vec<Rational>],
    h: &[Vec<Rational>],
    cert: Certificate,
) -> Result<bool> {
    let moved = twisted_group_action(g, h, phi)?;
    Ok(cert.verdict(phi)? == cert.verdict(&moved)?)
}

/// Irreducible real Cl_r^0 modules: dimension `d_r` and number `v_r` of inequivalent ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClDims {
    pub r: usize,
    pub d_r: usize,
    pub v_r: usize,
}

pub fn cl_dims(r: usize) -> Result<ClDims> {
    if r == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let h = r / 2;
    let (d_r, v_r) = match r % 8 {
        1 | 7 => (1 << h, 1),
        2 | 6 => (1 << h, 1),
        3 | 5 => (1 << (h + 1), 1),
        4 => (1 << h, 2),
        _ => (1 << (h - 1), 2),
    };
    Ok(ClDims { r, d_r, v_r })
}

#[derive(Serialize, Deserialize)]
struct ACoef {
    i: usize,
    j: usize,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct BCoef {
    k: usize,
    l: usize,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    a: Vec<ACoef>,
    b: Vec<BCoef>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    n: usize,
    r: usize,
    dim: usize,
    closed: bool,
    basis: Vec<ElementRepr>,
}

impl Serialize for LieSubalgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let basis = self
            .basis
            .iter()
            .map(|e| ElementRepr {
                a: e.a.iter().map(|(&(i, j), c)| ACoef { i, j, coeff: c.to_string() }).collect(),
                b: e.b.iter().map(|(&(k, l), c)| BCoef { k, l, coeff: c.to_string() }).collect(),
            })
            .collect();
        AlgebraRepr { n: self.n, r: self.r, dim: self.dim, closed: self.closed, basis }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieSubalgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rep = AlgebraRepr::deserialize(d)?;
        let mut basis = Vec::new();
        for e in rep.basis {
            let parse = |c: &str| parse_rational(c).map_err(D::Error::custom);
            let a = e.a.iter().map(|t| Ok((t.i, t.j, parse(&t.coeff)?))).collect::<std::result::Result<Vec<_>, D::Error>>()?;
            let b = e.b.iter().map(|t| Ok((t.k, t.l, parse(&t.coeff)?))).collect::<std::result::Result<Vec<_>, D::Error>>()?;
            basis.push(AmbientElement::from_terms(rep.n, rep.r, &a, &b).map_err(D::Error::custom)?);
        }
        Ok(LieSubalgebra {
            n: rep.n,
            r: rep.r,
            basis,
            dim: rep.dim,
            closed: rep.closed,
            structure_constants: None,
        })
    }
}

/// Outcome of the five reality identities for one spinor and one pair X, Y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RealityReport {
    /// Re⟨κ(f_kl)φ, φ⟩ = 0 for k ≠ l
    pub twist_skew: bool,
    /// Re⟨X∧Y·φ, φ⟩ = 0
    pub wedge_skew: bool,
    /// Im⟨X∧Y·κ(f_kl)φ, φ⟩ = 0 for k ≠ l
    pub wedge_twist_real: bool,
    /// Re⟨X·φ, Y·φ⟩ = ⟨X, Y⟩|φ|²
    pub metric: bool,
    /// Re⟨e_abcd·κ(f_kl)φ, φ⟩ = 0 for a<b<c<d, k ≠ l
    pub four_form: bool,
}

impl RealityReport {
    pub fn all(&self) -> bool {
        self.twist_skew && self.wedge_skew && self.wedge_twist_real && self.metric && self.four_form
    }
}

pub fn reality_identities(phi: &ScaledSpinor, x: &[Rational], y: &[Rational]) -> Result<RealityReport> {

    use crate::twisted::{tangent_action, twisted_hermitian};
    let shape = phi.shape;
    let n = shape.n;
    let dot = x.iter().zip(y).fold(Rational::zero(), |a, (p, q)| a + p * q);
    // X∧Y·φ = X·(Y·φ) + ⟨X,Y⟩φ
    let wedge = |psi: &ScaledSpinor| -> Result<ScaledSpinor> {
        let xy = tangent_action(x, &tangent_action(y, psi)?)?;
        xy.add(&psi.scale_coeffs(&GaussianRational::real(dot.clone())))
    };
    let wedge_skew = twisted_hermitian(&wedge(phi)?, phi)?.re.is_zero();
    let xp = tangent_action(x, phi)?;
    let yp = tangent_action(y, phi)?;
    let metric = twisted_hermitian(&xp, &yp)?.re == &dot * phi.norm2();
    let mut twist_skew = true;
    let mut wedge_twist_real = true;
    let mut four_form = true;
    let quads: Vec<[usize; 4]> = (1..=n)
        .flat_map(|a| (a + 1..=n).flat_map(move |b| (b + 1..=n).flat_map(move |c| (c + 1..=n).map(move |d| [a, b, c, d]))))
        .collect();
    for k in 1..=shape.r {
        // κ(f_l f_k) = −κ(f_k f_l), so unordered pairs suffice
        for l in k + 1..=shape.r {
            let kp = phi.apply_ops(&shape.twist_bivector_ops(k, l)?);
            let (kp_int, phi_int) = (IntVec::new(kp.sparse()), IntVec::new(phi.sparse()));
            twist_skew &= twisted_hermitian(&kp, phi)?.re.is_zero();
            wedge_twist_real &= twisted_hermitian(&wedge(&kp)?, phi)?.im.is_zero();
            for q in &quads {
                let op = shape.spin_pair(q[0], q[1])?.compose(&shape.spin_pair(q[2], q[3])?);
                four_form &= kp_int.hermitian_op(&op, &phi_int).re.is_zero();
            }
        }
    }
    Ok(RealityReport { twist_skew, wedge_skew, wedge_twist_real, metric, four_form })
}
