//! The complex spin representation Δ_n = (ℂ²)^{⊗⌊n/2⌋}.
//!
//! Basis vectors `u_ε` are stored by bit pattern: entry `ε_p = -1` sets a bit, and the
//! leftmost tuple entry (leftmost Kronecker factor) is the most significant bit. With
//! `k = ⌊n/2⌋`, `e_{2j-1}` and `e_{2j}` therefore flip bit `j-1` and pick up signs from
//! bits `0..j-1`, while `e_n` (n odd) is diagonal.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{GaussianRational, Rational};
use crate::ops::{OpSum, PauliOp, SparseVec};

pub const MAX_BITS: u32 = 63;

pub fn half(n: usize) -> u32 {
    (n / 2) as u32
}

fn low_mask(bits: u32) -> u64 {
    if bits == 0 {
        0
    } else {
        u64::MAX >> (64 - bits)
    }
}

/// κ(e_i) on Δ_n as a bit operator.
pub fn generator(n: usize, i: usize) -> Result<PauliOp> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let k = half(n);
    if n % 2 == 1 && i == n {
        // i·T⊗…⊗T; T·u_ε = -ε u_ε
        return Ok(PauliOp { flip: 0, signs: low_mask(k), phase: (1 + 2 * (k as u8 & 1)) & 3 });
    }
    let j = i.div_ceil(2) as u32;
    let t_signs = low_mask(j - 1);
    let sign_phase = (2 * ((j - 1) & 1)) as u8;
    let bit = 1u64 << (j - 1);
    Ok(if i % 2 == 1 {
        // g1·u_ε = i u_{-ε}
        PauliOp { flip: bit, signs: t_signs, phase: (1 + sign_phase) & 3 }
    } else {
        // g2·u_ε = ε u_{-ε}
        PauliOp { flip: bit, signs: t_signs | bit, phase: sign_phase }
    })
}

/// Product `e_{i_1}⋯e_{i_s}` as a single operator (`e_{i_s}` acts first).
pub fn product_op(n: usize, factors: &[usize]) -> Result<PauliOp> {
    let mut op = PauliOp::IDENTITY;
    for &i in factors {
        op = op.compose(&generator(n, i)?);
    }
    Ok(op)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisIndex(pub Vec<i8>);

impl BasisIndex {
    pub fn new(eps: Vec<i8>) -> Result<Self> {
        if eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::Parse(format!("basis entries must be ±1, got {eps:?}")));
        }
        Ok(BasisIndex(eps))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_bits(&self) -> u64 {
        let k = self.0.len();
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == -1)
            .fold(0u64, |acc, (p, _)| acc | (1u64 << (k - 1 - p)))
    }

    pub fn from_bits(bits: u64, k: usize) -> Self {
        BasisIndex((0..k).map(|p| if bits >> (k - 1 - p) & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn negated(&self) -> Self {
        BasisIndex(self.0.iter().map(|e| -e).collect())
    }

    /// All 2^k indices in bit order.
    pub fn all(k: usize) -> impl Iterator<Item = BasisIndex> {
        (0..1u64 << k).map(move |b| BasisIndex::from_bits(b, k))
    }
}

/// An element of Δ_n with exact sparse coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorVector {
    pub n: usize,
    pub(crate) v: SparseVec,
}

impl SpinorVector {
    pub fn zero(n: usize) -> Self {
        SpinorVector { n, v: SparseVec::new() }
    }

    pub fn basis(n: usize, eps: &[i8]) -> Result<Self> {
        let mut s = Self::zero(n);
        s.set(&BasisIndex::new(eps.to_vec())?, GaussianRational::one())?;
        Ok(s)
    }

    pub fn from_sparse(n: usize, v: SparseVec) -> Self {
        SpinorVector { n, v }
    }

    pub fn sparse(&self) -> &SparseVec {
        &self.v
    }

    pub fn k(&self) -> usize {
        self.n / 2
    }

    fn check_index(&self, idx: &BasisIndex) -> Result<()> {
        if idx.len() != self.k() {
            return Err(Error::ShapeMismatch(format!(
                "index of length {} in Δ_{} (expected {})",
                idx.len(),
                self.n,
                self.k()
            )));
        }
        Ok(())
    }

    pub fn set(&mut self, idx: &BasisIndex, c: GaussianRational) -> Result<()> {
        self.check_index(idx)?;
        let b = idx.to_bits();
        self.v.0.remove(&b);
        self.v.add_at(b, c);
        Ok(())
    }

    pub fn get(&self, idx: &BasisIndex) -> GaussianRational {
        self.v.get(idx.to_bits())
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisIndex, &GaussianRational)> {
        let k = self.k();
        self.v.0.iter().map(move |(&b, c)| (BasisIndex::from_bits(b, k), c))
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn norm2(&self) -> Rational {
        self.v.norm2()
    }

    pub fn add(&self, o: &SpinorVector) -> SpinorVector {
        SpinorVector { n: self.n, v: self.v.add(&o.v) }
    }

    pub fn scale(&self, c: &GaussianRational) -> SpinorVector {
        SpinorVector { n: self.n, v: self.v.scale(c) }
    }
}

/// One Clifford monomial `coeff · e_{i_1}⋯e_{i_s}`; the product is taken left to right,
/// so `e_{i_s}` acts first. Factors may repeat or appear in any order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTerm {
    pub factors: Vec<usize>,
    pub coeff: Rational,
}

impl FormTerm {
    pub fn new(factors: Vec<usize>, coeff: Rational) -> Self {
        FormTerm { factors, coeff }
    }

    pub fn scalar(coeff: Rational) -> Self {
        FormTerm { factors: vec![], coeff }
    }
}

/// Operator form of a Clifford element, with generators placed by `gen`.
pub(crate) fn form_ops(
    terms: &[FormTerm],
    mut gen: impl FnMut(usize) -> Result<PauliOp>,
) -> Result<OpSum> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let mut op = PauliOp::IDENTITY;
        for &i in &t.factors {
            op = op.compose(&gen(i)?);
        }
        out.push((t.coeff.clone(), op));
    }
    Ok(out)
}

fn check_n(n: usize, psi: &SpinorVector) -> Result<()> {
    if psi.n != n {
        return Err(Error::ShapeMismatch(format!("spinor in Δ_{} used as Δ_{n}", psi.n)));
    }
    Ok(())
}

pub fn kappa_generator(n: usize, i: usize, psi: &SpinorVector) -> Result<SpinorVector> {
    check_n(n, psi)?;
    let op = generator(n, i)?;
    Ok(SpinorVector { n, v: psi.v.apply(&op) })
}

pub fn clifford_action(n: usize, omega: &[FormTerm], psi: &SpinorVector) -> Result<SpinorVector> {
    check_n(n, psi)?;
    let ops = form_ops(omega, |i| generator(n, i))?;
    Ok(SpinorVector { n, v: psi.v.apply_sum(&ops) })
}

/// Clifford multiplication by the vector `Σ x_i e_i`.
pub fn vector_action(n: usize, x: &[Rational], psi: &SpinorVector) -> Result<SpinorVector> {
    check_n(n, psi)?;
    Ok(SpinorVector { n, v: psi.v.apply_sum(&vector_ops(n, x, 0)?) })
}

pub(crate) fn vector_ops(n: usize, x: &[Rational], offset: u32) -> Result<OpSum> {
    if x.len() != n {
        return Err(Error::ShapeMismatch(format!("vector of length {} in ℝ^{n}", x.len())));
    }
    let mut ops = Vec::new();
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            ops.push((c.clone(), generator(n, i + 1)?.shifted(offset)));
        }
    }
    Ok(ops)
}

pub fn hermitian(a: &SpinorVector, b: &SpinorVector) -> Result<GaussianRational> {
    if a.n != b.n {
        return Err(Error::ShapeMismatch(format!("Δ_{} vs Δ_{}", a.n, b.n)));
    }
    Ok(a.v.hermitian(&b.v))
}

/// γ_n: tensor product of α and β factors alternating from the left, starting with α.
/// On the u basis α(c·u_ε) = c̄·(-iε)·u_{-ε} and β(c·u_ε) = c̄·u_{-ε}.
pub(crate) fn gamma_sparse(k: u32, v: &SparseVec) -> SparseVec {
    let all = low_mask(k);
    let alpha: u64 = (0..k).step_by(2).map(|p| 1u64 << (k - 1 - p)).fold(0, |a, b| a | b);
    let n_alpha = k.div_ceil(2);
    // (-i)^{n_alpha} = i^{3 n_alpha}
    let base = ((3 * n_alpha) & 3) as u8;
    let mut out = SparseVec::new();
    for (&idx, c) in &v.0 {
        // ε = -1 ↔ bit set, so Π ε over α positions = (-1)^{popcount}
        let s = ((idx & alpha).count_ones() & 1) as u8;
        out.add_at(idx ^ all, c.conj().mul_i_pow(base + 2 * s));
    }
    out
}

pub fn gamma_apply(n: usize, psi: &SpinorVector) -> SpinorVector {
    SpinorVector { n, v: gamma_sparse(half(n), &psi.v) }
}

/// Validates a list of unit vectors for a group element.
pub(crate) fn check_unit_vectors(n: usize, vectors: &[Vec<Rational>]) -> Result<()> {
    if vectors.len() % 2 == 1 {
        return Err(Error::OddLength(vectors.len()));
    }
    for x in vectors {
        if x.len() != n {
            return Err(Error::ShapeMismatch(format!("vector of length {} in ℝ^{n}", x.len())));
        }
        let s = x.iter().fold(Rational::zero(), |a, c| a + c * c);
        if !s.is_one() {
            return Err(Error::NotUnitVector(format!("|x|² = {s}")));
        }
    }
    Ok(())
}

/// κ_n(x_1⋯x_{2l}) applied to `psi`; the rightmost vector acts first.
pub fn spin_action_on_spinor(
    n: usize,
    vectors: &[Vec<Rational>],
    psi: &SpinorVector,
) -> Result<SpinorVector> {
    check_n(n, psi)?;
    check_unit_vectors(n, vectors)?;
    let mut v = psi.v.clone();
    for x in vectors.iter().rev() {
        v = v.apply_sum(&vector_ops(n, x, 0)?);
    }
    Ok(SpinorVector { n, v })
}

pub(crate) fn reflect(x: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let d = v.iter().zip(x).fold(Rational::zero(), |a, (p, q)| a + p * q);
    let two_d = &d + &d;
    v.iter().zip(x).map(|(p, q)| p - &two_d * q).collect()
}

/// λ_n(x_1⋯x_{2l}) = R_{x_1}∘⋯∘R_{x_{2l}}.
pub fn spin_action_on_vector(
    n: usize,
    vectors: &[Vec<Rational>],
    v: &[Rational],
) -> Result<Vec<Rational>> {
    check_unit_vectors(n, vectors)?;
    if v.len() != n {
        return Err(Error::ShapeMismatch(format!("vector of length {} in ℝ^{n}", v.len())));
    }
    let mut out = v.to_vec();
    for x in vectors.iter().rev() {
        out = reflect(x, &out);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct CoeffRepr {
    eps: Vec<i8>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct SpinorRepr {
    n: usize,
    coeffs: Vec<CoeffRepr>,
}

impl Serialize for SpinorVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .iter()
            .map(|(idx, c)| CoeffRepr { eps: idx.0, re: c.re.to_string(), im: c.im.to_string() })
            .collect();
        SpinorRepr { n: self.n, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpinorVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use crate::numeric::parse_rational;
        use serde::de::Error as _;
        let r = SpinorRepr::deserialize(d)?;
        let mut out = SpinorVector::zero(r.n);
        let mut seen = BTreeMap::new();
        for c in r.coeffs {
            let idx = BasisIndex::new(c.eps).map_err(D::Error::custom)?;
            let z = GaussianRational::new(
                parse_rational(&c.re).map_err(D::Error::custom)?,
                parse_rational(&c.im).map_err(D::Error::custom)?,
            );
            if seen.insert(idx.clone(), ()).is_some() {
                return Err(D::Error::custom(format!("duplicate index {:?}", idx.0)));
            }
            out.set(&idx, z).map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}
