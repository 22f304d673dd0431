//! Twisted spinors in Δ_n ⊗ Δ_r^{⊗m}.
//!
//! A twisted basis index packs into one `u64`: the Δ_n slot occupies the top `⌊n/2⌋`
//! bits and twist slot `a` (1-based) sits at bit offset `(m - a)·⌊r/2⌋`, so slot 1 is
//! leftmost after the spin slot.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{parse_rational, GaussianRational, Rational};
use crate::ops::{OpSum, PauliOp, SparseVec};
use crate::spin::{self, check_unit_vectors, form_ops, half, BasisIndex, FormTerm, SpinorVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub n: usize,
    pub r: usize,
    pub m: usize,
}

impl Shape {
    pub fn new(n: usize, r: usize, m: usize) -> Result<Shape> {
        let s = Shape { n, r, m };
        if n == 0 {
            return Err(Error::UnsupportedDimension(0));
        }
        if s.bits() > spin::MAX_BITS {
            return Err(Error::ShapeMismatch(format!("Δ_{n}⊗Δ_{r}^{m} is too large")));
        }
        Ok(s)
    }

    pub fn kn(&self) -> u32 {
        half(self.n)
    }

    pub fn kr(&self) -> u32 {
        half(self.r)
    }

    pub fn bits(&self) -> u32 {
        self.kn() + self.m as u32 * self.kr()
    }

    pub fn spin_offset(&self) -> u32 {
        self.m as u32 * self.kr()
    }

    pub fn slot_offset(&self, a: usize) -> u32 {
        (self.m - a) as u32 * self.kr()
    }

    /// κ(e_i) acting on the Δ_n slot.
    pub fn spin_generator(&self, i: usize) -> Result<PauliOp> {
        Ok(spin::generator(self.n, i)?.shifted(self.spin_offset()))
    }

    /// κ(f_k) acting on twist slot `a`.
    pub fn twist_generator(&self, a: usize, k: usize) -> Result<PauliOp> {
        if a == 0 || a > self.m {
            return Err(Error::IndexOutOfRange { index: a, max: self.m });
        }
        Ok(spin::generator(self.r, k)?.shifted(self.slot_offset(a)))
    }

    /// `e_a e_b` on the spin slot.
    pub fn spin_pair(&self, a: usize, b: usize) -> Result<PauliOp> {
        Ok(self.spin_generator(a)?.compose(&self.spin_generator(b)?))
    }

    /// κ_{r*}^m(f_k f_l) = Σ_a μ_r^a(f_k f_l).
    pub fn twist_bivector_ops(&self, k: usize, l: usize) -> Result<OpSum> {
        for &i in &[k, l] {
            if i == 0 || i > self.r {
                return Err(Error::IndexOutOfRange { index: i, max: self.r });
            }
        }
        (1..=self.m)
            .map(|a| {
                let op = self.twist_generator(a, k)?.compose(&self.twist_generator(a, l)?);
                Ok((Rational::one(), op))
            })
            .collect()
    }

    pub fn index_bits(&self, idx: &TwistedIndex) -> Result<u64> {
        if idx.spin.len() != self.kn() as usize
            || idx.twist.len() != self.m
            || idx.twist.iter().any(|t| t.len() != self.kr() as usize)
        {
            return Err(Error::ShapeMismatch(format!("index does not fit shape {self:?}")));
        }
        let mut bits = idx.spin.to_bits() << self.spin_offset();
        for (a, t) in idx.twist.iter().enumerate() {
            bits |= t.to_bits() << self.slot_offset(a + 1);
        }
        Ok(bits)
    }

    pub fn index_from_bits(&self, bits: u64) -> TwistedIndex {
        let kr = self.kr() as usize;
        let mask_r = if kr == 0 { 0 } else { (1u64 << kr) - 1 };
        TwistedIndex {
            spin: BasisIndex::from_bits(bits >> self.spin_offset(), self.kn() as usize),
            twist: (1..=self.m)
                .map(|a| BasisIndex::from_bits((bits >> self.slot_offset(a)) & mask_r, kr))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistedIndex {
    pub spin: BasisIndex,
    pub twist: Vec<BasisIndex>,
}

impl TwistedIndex {
    pub fn new(spin: &[i8], twist: &[&[i8]]) -> Result<Self> {
        Ok(TwistedIndex {
            spin: BasisIndex::new(spin.to_vec())?,
            twist: twist.iter().map(|t| BasisIndex::new(t.to_vec())).collect::<Result<_>>()?,
        })
    }
}

/// The spinor `√scale2 · v` where `v` has Gaussian rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSpinor {
    pub shape: Shape,
    pub(crate) v: SparseVec,
    pub scale2: Rational,
}

impl ScaledSpinor {
    pub fn zero(shape: Shape) -> Self {
        ScaledSpinor { shape, v: SparseVec::new(), scale2: Rational::one() }
    }

    pub fn from_sparse(shape: Shape, v: SparseVec, scale2: Rational) -> Self {
        ScaledSpinor { shape, v, scale2 }
    }

    /// ψ ∈ Δ_n seen as a twisted spinor with m = 0.
    pub fn from_untwisted(psi: &SpinorVector) -> Self {
        ScaledSpinor {
            shape: Shape { n: psi.n, r: 0, m: 0 },
            v: psi.v.clone(),
            scale2: Rational::one(),
        }
    }

    pub fn with_scale2(mut self, s: Rational) -> Self {
        self.scale2 = s;
        self
    }

    /// The inverse of `from_untwisted`: needs m = 0 and scale2 = 1.
    pub fn to_untwisted(&self) -> Result<SpinorVector> {
        if self.shape.m != 0 || !self.scale2.is_one() {
            return Err(Error::ShapeMismatch(format!(
                "expected an untwisted spinor with scale2 = 1, got m = {} and scale2 = {}",
                self.shape.m, self.scale2
            )));
        }
        Ok(SpinorVector::from_sparse(self.shape.n, self.v.clone()))
    }

    pub fn sparse(&self) -> &SparseVec {
        &self.v
    }

    pub fn set(&mut self, idx: &TwistedIndex, c: GaussianRational) -> Result<()> {
        let b = self.shape.index_bits(idx)?;
        self.v.0.remove(&b);
        self.v.add_at(b, c);
        Ok(())
    }

    pub fn add_at(&mut self, idx: &TwistedIndex, c: GaussianRational) -> Result<()> {
        let b = self.shape.index_bits(idx)?;
        self.v.add_at(b, c);
        Ok(())
    }

    pub fn get(&self, idx: &TwistedIndex) -> Result<GaussianRational> {
        Ok(self.v.get(self.shape.index_bits(idx)?))
    }

    pub fn iter(&self) -> impl Iterator<Item = (TwistedIndex, &GaussianRational)> + '_ {
        self.v.0.iter().map(|(&b, c)| (self.shape.index_from_bits(b), c))
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    /// |φ|² including the scale factor.
    pub fn norm2(&self) -> Rational {
        self.v.norm2() * &self.scale2
    }

    /// Same scale, coefficients multiplied by `c`.
    pub fn scale_coeffs(&self, c: &GaussianRational) -> Self {
        ScaledSpinor { shape: self.shape, v: self.v.scale(c), scale2: self.scale2.clone() }
    }

    pub(crate) fn map(&self, v: SparseVec) -> Self {
        ScaledSpinor { shape: self.shape, v, scale2: self.scale2.clone() }
    }

    pub fn add(&self, o: &ScaledSpinor) -> Result<ScaledSpinor> {
        same_shape(self, o)?;
        if self.scale2 != o.scale2 {
            return Err(Error::ScaleMismatch(self.scale2.to_string(), o.scale2.to_string()));
        }
        Ok(self.map(self.v.add(&o.v)))
    }

    pub fn apply_ops(&self, ops: &[(Rational, PauliOp)]) -> ScaledSpinor {
        self.map(self.v.apply_sum(ops))
    }
}

fn same_shape(a: &ScaledSpinor, b: &ScaledSpinor) -> Result<()> {
    if a.shape != b.shape {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", a.shape, b.shape)));
    }
    Ok(())
}

pub fn tangent_action(x: &[Rational], phi: &ScaledSpinor) -> Result<ScaledSpinor> {
    let ops = spin::vector_ops(phi.shape.n, x, phi.shape.spin_offset())?;
    Ok(phi.apply_ops(&ops))
}

pub fn twist_bivector_action(k: usize, l: usize, phi: &ScaledSpinor) -> Result<ScaledSpinor> {
    Ok(phi.apply_ops(&phi.shape.twist_bivector_ops(k, l)?))
}

/// Clifford multiplication by `omega` (over ℝ^r) in twist slot `a` only.
pub fn mu_slot(a: usize, omega: &[FormTerm], phi: &ScaledSpinor) -> Result<ScaledSpinor> {
    let shape = phi.shape;
    if a == 0 || a > shape.m {
        return Err(Error::IndexOutOfRange { index: a, max: shape.m });
    }
    let ops = form_ops(omega, |k| shape.twist_generator(a, k))?;
    Ok(phi.apply_ops(&ops))
}

/// Clifford element acting on the Δ_n slot.
pub fn spin_slot_action(omega: &[FormTerm], phi: &ScaledSpinor) -> Result<ScaledSpinor> {
    let shape = phi.shape;
    let ops = form_ops(omega, |i| shape.spin_generator(i))?;
    Ok(phi.apply_ops(&ops))
}

/// κ_n(g) ⊗ κ_r(h)^{⊗m}.
pub fn twisted_group_action(
    g: &[Vec<Rational>],
    h: &[Vec<Rational>],
    phi: &ScaledSpinor,
) -> Result<ScaledSpinor> {
    let shape = phi.shape;
    check_unit_vectors(shape.n, g)?;
    check_unit_vectors(shape.r, h)?;
    let mut v = phi.v.clone();
    for x in g.iter().rev() {
        v = v.apply_sum(&spin::vector_ops(shape.n, x, shape.spin_offset())?);
    }
    for a in 1..=shape.m {
        for y in h.iter().rev() {
            v = v.apply_sum(&spin::vector_ops(shape.r, y, shape.slot_offset(a))?);
        }
    }
    Ok(phi.map(v))
}

pub fn twisted_hermitian(a: &ScaledSpinor, b: &ScaledSpinor) -> Result<GaussianRational> {
    same_shape(a, b)?;
    if a.scale2 != b.scale2 {
        return Err(Error::ScaleMismatch(a.scale2.to_string(), b.scale2.to_string()));
    }
    Ok(a.v.hermitian(&b.v).scale(&a.scale2))
}

#[derive(Serialize, Deserialize)]
struct TwistedCoeffRepr {
    spin: Vec<i8>,
    twist: Vec<Vec<i8>>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct ScaledRepr {
    n: usize,
    r: usize,
    m: usize,
    scale2: String,
    coeffs: Vec<TwistedCoeffRepr>,
}

impl Serialize for ScaledSpinor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .iter()
            .map(|(idx, c)| TwistedCoeffRepr {
                spin: idx.spin.0,
                twist: idx.twist.into_iter().map(|t| t.0).collect(),
                re: c.re.to_string(),
                im: c.im.to_string(),
            })
            .collect();
        ScaledRepr {
            n: self.shape.n,
            r: self.shape.r,
            m: self.shape.m,
            scale2: self.scale2.to_string(),
            coeffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ScaledSpinor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ScaledRepr::deserialize(d)?;
        let shape = Shape::new(r.n, r.r, r.m).map_err(D::Error::custom)?;
        let scale2 = parse_rational(&r.scale2).map_err(D::Error::custom)?;
        if scale2 <= Rational::zero() {
            return Err(D::Error::custom("scale2 must be positive"));
        }
        let mut out = ScaledSpinor::zero(shape).with_scale2(scale2);
        let mut seen = BTreeSet::new();
        for c in r.coeffs {
            let idx = TwistedIndex {
                spin: BasisIndex::new(c.spin).map_err(D::Error::custom)?,
                twist: c
                    .twist
                    .into_iter()
                    .map(BasisIndex::new)
                    .collect::<Result<_>>()
                    .map_err(D::Error::custom)?,
            };
            let z = GaussianRational::new(
                parse_rational(&c.re).map_err(D::Error::custom)?,
                parse_rational(&c.im).map_err(D::Error::custom)?,
            );
            let bits = shape.index_bits(&idx).map_err(D::Error::custom)?;
            if !seen.insert(bits) {
                return Err(D::Error::custom("duplicate twisted index"));
            }
            out.v.add_at(bits, z);
        }
        Ok(out)
    }
}
