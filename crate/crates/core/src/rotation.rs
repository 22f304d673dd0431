//! Exact rational rotations and unit vectors for group-level tests.

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::numeric::{rint, Rational};

/// (I − S)(I + S)^{-1} for antisymmetric `s`; always in SO(r).
pub fn cayley(s: &RatMatrix) -> Result<RatMatrix> {
    if !s.is_antisymmetric() {
        return Err(Error::ShapeMismatch("Cayley transform needs an antisymmetric matrix".into()));
    }
    let id = RatMatrix::identity(s.rows);
    id.sub(s)?.mul(&id.add(s)?.inverse()?)
}

/// Rotation by (c, s) with c² + s² = 1 in the (p, q) plane (1-based).
pub fn givens(r: usize, p: usize, q: usize, c: &Rational, s: &Rational) -> Result<RatMatrix> {
    if p == 0 || q == 0 || p > r || q > r || p == q {
        return Err(Error::IndexOutOfRange { index: p.max(q), max: r });
    }
    if !(c * c + s * s).is_one() {
        return Err(Error::NotOrthogonal(format!("c² + s² = {}", c * c + s * s)));
    }
    let mut g = RatMatrix::identity(r);
    g[(p - 1, p - 1)] = c.clone();
    g[(q - 1, q - 1)] = c.clone();
    g[(p - 1, q - 1)] = -s;
    g[(q - 1, p - 1)] = s.clone();
    Ok(g)
}

pub fn random_skew<R: Rng>(r: usize, rng: &mut R) -> RatMatrix {
    let mut s = RatMatrix::zeros(r, r);
    for i in 0..r {
        for j in i + 1..r {
            let x = rint(rng.gen_range(-2..=2));
            s[(i, j)] = x.clone();
            s[(j, i)] = -x;
        }
    }
    s
}

pub fn random_rotation<R: Rng>(r: usize, rng: &mut R) -> RatMatrix {
    cayley(&random_skew(r, rng)).expect("I + S is invertible for antisymmetric S")
}

/// Inverse stereographic projection of a random rational point: `(2t, |t|²−1)/(|t|²+1)`.
pub fn random_unit_vector<R: Rng>(n: usize, rng: &mut R) -> Vec<Rational> {
    if n == 1 {
        return vec![if rng.gen_bool(0.5) { Rational::one() } else { -Rational::one() }];
    }
    let t: Vec<Rational> =
        (0..n - 1).map(|_| rint(rng.gen_range(-3..=3))).collect();
    let t2 = t.iter().fold(Rational::zero(), |a, x| a + x * x);
    let den = &t2 + Rational::one();
    let mut x: Vec<Rational> = t.iter().map(|ti| (ti + ti) / &den).collect();
    x.push((&t2 - Rational::one()) / &den);
    x
}

pub fn basis_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i - 1] = Rational::one();
    v
}

pub fn is_special_orthogonal(a: &RatMatrix) -> bool {
    a.is_square()
        && a.transpose().mul(a).map(|p| p == RatMatrix::identity(a.rows)).unwrap_or(false)
        && a.det().map(|d| d.is_one()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cayley_and_givens_are_rotations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for r in 2..6 {
            assert!(is_special_orthogonal(&random_rotation(r, &mut rng)));
        }
        let g = givens(3, 1, 2, &rat(3, 5), &rat(4, 5)).unwrap();
        assert!(is_special_orthogonal(&g));
        assert!(givens(3, 1, 2, &rat(1, 2), &rat(1, 2)).is_err());
        let refl = RatMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert!(!is_special_orthogonal(&refl));
    }

    #[test]
    fn unit_vectors_are_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..9 {
            let x = random_unit_vector(n, &mut rng);
            assert!(x.iter().fold(Rational::zero(), |a, c| a + c * c).is_one());
        }
    }
}
