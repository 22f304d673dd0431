//! Signed-permutation operators on bit-indexed basis vectors, and sparse exact vectors.
//!
//! Every Clifford generator in the Kronecker construction maps a basis vector to a
//! phase times another basis vector, so the whole kernel works with [`PauliOp`]s
//! acting lazily on sparse coefficient maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::numeric::{GaussianRational, Rational};

/// `idx ↦ i^phase · (-1)^{popcount(idx & signs)} · (idx ^ flip)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliOp {
    pub flip: u64,
    pub signs: u64,
    pub phase: u8,
}

impl PauliOp {
    pub const IDENTITY: PauliOp = PauliOp { flip: 0, signs: 0, phase: 0 };

    pub fn scalar(phase: u8) -> PauliOp {
        PauliOp { flip: 0, signs: 0, phase: phase & 3 }
    }

    /// Target index and `i`-power picked up by basis vector `idx`.
    #[inline]
    pub fn apply_index(&self, idx: u64) -> (u64, u8) {
        let s = ((idx & self.signs).count_ones() & 1) as u8;
        (idx ^ self.flip, (self.phase + 2 * s) & 3)
    }

    /// `self ∘ other` (other applied first).
    pub fn compose(&self, other: &PauliOp) -> PauliOp {
        let s = ((other.flip & self.signs).count_ones() & 1) as u8;
        PauliOp {
            flip: self.flip ^ other.flip,
            signs: self.signs ^ other.signs,
            phase: (self.phase + other.phase + 2 * s) & 3,
        }
    }

    pub fn shifted(&self, offset: u32) -> PauliOp {
        PauliOp { flip: self.flip << offset, signs: self.signs << offset, phase: self.phase }
    }
}

/// A real linear combination of [`PauliOp`]s.
pub type OpSum = Vec<(Rational, PauliOp)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec(pub BTreeMap<u64, GaussianRational>);

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(idx: u64) -> Self {
        let mut v = Self::new();
        v.0.insert(idx, GaussianRational::one());
        v
    }

    pub fn get(&self, idx: u64) -> GaussianRational {
        self.0.get(&idx).cloned().unwrap_or_default()
    }

    pub fn add_at(&mut self, idx: u64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&idx) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.0.remove(&idx);
                }
            }
            None => {
                self.0.insert(idx, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, op: &PauliOp) -> SparseVec {
        let mut out = BTreeMap::new();
        for (&idx, c) in &self.0 {
            let (t, q) = op.apply_index(idx);
            out.insert(t, c.mul_i_pow(q));
        }
        SparseVec(out)
    }

    pub fn apply_sum(&self, ops: &[(Rational, PauliOp)]) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, op) in ops {
            if c.is_zero() {
                continue;
            }
            for (&idx, x) in &self.0 {
                let (t, q) = op.apply_index(idx);
                out.add_at(t, x.mul_i_pow(q).scale(c));
            }
        }
        out
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &SparseVec) {
        for (&i, c) in &other.0 {
            self.add_at(i, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &SparseVec, s: &GaussianRational) {
        for (&i, c) in &other.0 {
            self.add_at(i, c * s);
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> SparseVec {
        let mut out = SparseVec::new();
        out.add_scaled(self, s);
        out
    }

    pub fn scale_real(&self, s: &Rational) -> SparseVec {
        if s.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(&i, c)| (i, c.scale(s))).collect())
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec(self.0.iter().map(|(&i, c)| (i, -c)).collect())
    }

    /// `Σ self[i] · conj(other[i])`
    pub fn hermitian(&self, other: &SparseVec) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (i, a) in &self.0 {
            if let Some(b) = other.0.get(i) {
                acc += a * &b.conj();
            }
        }
        acc
    }

    /// `⟨op·self, other⟩` without materializing `op·self`.
    pub fn hermitian_op(&self, op: &PauliOp, other: &SparseVec) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (&i, a) in &self.0 {
            let (t, q) = op.apply_index(i);
            if let Some(b) = other.0.get(&t) {
                acc += &a.mul_i_pow(q) * &b.conj();
            }
        }
        acc
    }

    pub fn norm2(&self) -> Rational {
        self.0.values().fold(Rational::zero(), |acc, c| acc + c.norm2())
    }
}

/// A sparse vector cleared to a common denominator, for repeated inner products
/// without per-term gcd normalization.
pub(crate) struct IntVec {
    den: BigInt,
    v: BTreeMap<u64, (BigInt, BigInt)>,
}

impl IntVec {
    pub fn new(x: &SparseVec) -> Self {
        let den = x
            .0
            .values()
            .fold(BigInt::one(), |d, c| d.lcm(c.re.denom()).lcm(c.im.denom()));
        let clear = |r: &Rational| r.numer() * (&den / r.denom());
        let v = x.0.iter().map(|(&i, c)| (i, (clear(&c.re), clear(&c.im)))).collect();
        IntVec { den, v }
    }

    /// `‖Σ c·op(self)‖²`.
    pub fn apply_sum_norm2(&self, ops: &[(Rational, PauliOp)]) -> Rational {
        let cden = ops.iter().fold(BigInt::one(), |d, (c, _)| d.lcm(c.denom()));
        let mut out: BTreeMap<u64, (BigInt, BigInt)> = BTreeMap::new();
        for (c, op) in ops {
            if c.is_zero() {
                continue;
            }
            let k = c.numer() * (&cden / c.denom());
            for (&i, (re, im)) in &self.v {
                let (t, q) = op.apply_index(i);
                let (re, im) = match q & 3 {
                    0 => (re * &k, im * &k),
                    1 => (-(im * &k), re * &k),
                    2 => (-(re * &k), -(im * &k)),
                    _ => (im * &k, -(re * &k)),
                };
                let e = out.entry(t).or_default();
                e.0 += re;
                e.1 += im;
            }
        }
        let total = out.values().fold(BigInt::zero(), |acc, (re, im)| acc + re * re + im * im);
        let d = &self.den * &cden;
        Rational::new(total, &d * &d)
    }

    /// `⟨op·self, other⟩`.
    pub fn hermitian_op(&self, op: &PauliOp, other: &IntVec) -> GaussianRational {
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (&i, (ar, ai)) in &self.v {
            let (t, q) = op.apply_index(i);
            let Some((br, bi)) = other.v.get(&t) else { continue };
            // a·conj(b) = (ar·br + ai·bi) + i(ai·br − ar·bi), then rotate by i^q
            let x = ar * br + ai * bi;
            let y = ai * br - ar * bi;
            match q & 3 {
                0 => {
                    re += x;
                    im += y;
                }
                1 => {
                    re -= y;
                    im += x;
                }
                2 => {
                    re -= x;
                    im -= y;
                }
                _ => {
                    re += y;
                    im -= x;
                }
            }
        }
        let d = &self.den * &other.den;
        GaussianRational::new(Rational::new(re, d.clone()), Rational::new(im, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rint;

    #[test]
    fn compose_matches_sequential_application() {
        let a = PauliOp { flip: 0b101, signs: 0b011, phase: 1 };
        let b = PauliOp { flip: 0b110, signs: 0b100, phase: 3 };
        let ab = a.compose(&b);
        for idx in 0..8u64 {
            let (t1, q1) = b.apply_index(idx);
            let (t2, q2) = a.apply_index(t1);
            assert_eq!(ab.apply_index(idx), (t2, (q1 + q2) & 3));
        }
    }

    #[test]
    fn apply_sum_cancels() {
        let v = SparseVec::basis(3);
        let op = PauliOp { flip: 1, signs: 0, phase: 0 };
        let w = v.apply_sum(&[(rint(1), op), (rint(-1), op)]);
        assert!(w.is_zero());
        assert_eq!(v.hermitian_op(&op, &v.apply(&op)), GaussianRational::one());
    }

    #[test]
    fn int_vec_matches_rational_inner_product() {
        use crate::numeric::rat;
        let mut a = SparseVec::new();
        a.add_at(0, GaussianRational::new(rat(1, 3), rat(-2, 5)));
        a.add_at(3, GaussianRational::new(rat(7, 2), rat(0, 1)));
        let mut b = SparseVec::new();
        b.add_at(1, GaussianRational::new(rat(-1, 6), rat(4, 1)));
        b.add_at(2, GaussianRational::new(rat(5, 7), rat(1, 9)));
        for flip in 0..4u64 {
            for signs in 0..4u64 {
                for phase in 0..4u8 {
                    let op = PauliOp { flip, signs, phase };
                    assert_eq!(IntVec::new(&a).hermitian_op(&op, &IntVec::new(&b)), a.hermitian_op(&op, &b));
                    let ops = vec![(rat(2, 3), op), (rat(-1, 4), PauliOp { flip: 1, signs: 2, phase: 1 })];
                    assert_eq!(IntVec::new(&a).apply_sum_norm2(&ops), a.apply_sum(&ops).norm2());
                }
            }
        }
    }
}
