//! Random exact inputs for property checks.

use rand::Rng;

use crate::numeric::{rat, GaussianRational, Rational};
use crate::ops::SparseVec;
use crate::twisted::{ScaledSpinor, Shape};

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn random_gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    GaussianRational::new(random_rational(rng), random_rational(rng))
}

pub fn random_vector<R: Rng>(n: usize, rng: &mut R) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng)).collect()
}

/// A nonzero spinor with roughly half of the basis coefficients populated.
pub fn random_spinor<R: Rng>(shape: Shape, rng: &mut R) -> ScaledSpinor {
    let dim = 1u64 << shape.bits();
    let mut v = SparseVec::new();
    while v.is_zero() {
        for idx in 0..dim {
            if rng.gen_bool(0.5) {
                v.add_at(idx, random_gaussian(rng));
            }
        }
    }
    ScaledSpinor::from_sparse(shape, v, Rational::from_integer(1.into()))
}
