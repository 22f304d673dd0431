//! Dense rational matrices and exact nullspaces.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| crate::numeric::rint(x)).collect());
        Self::from_rows(rows.collect()).expect("rectangular")
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, o: &RatMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<RatMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::ShapeMismatch("matrix sizes differ".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &RatMatrix) -> Result<RatMatrix> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &RatMatrix) -> Result<RatMatrix> {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    /// `self·o − o·self`
    pub fn commutator(&self, o: &RatMatrix) -> Result<RatMatrix> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    pub fn rank(&self) -> usize {
        rank(&self.to_rows())
    }

    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("det of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &piv;
                for j in c..n {
                    let t = &f * &a[(c, j)];
                    a[(r, j)] -= t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero()).ok_or(Error::DivisionByZero)?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let piv = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] /= &piv;
                inv[(c, j)] /= &piv;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let t = &f * &a[(c, j)];
                    a[(r, j)] -= t;
                    let t = &f * &inv[(c, j)];
                    inv[(r, j)] -= t;
                }
            }
        }
        Ok(inv)
    }
}

/// Clears denominators and divides out the content; zero rows become empty.
fn integerize(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive(ints)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Fraction-free Gauss–Jordan on integer rows. Returns reduced rows with their pivot
/// columns; each pivot column is zero in every other returned row.
fn reduce(rows: &[Vec<Rational>], cols: usize) -> Vec<(usize, Vec<BigInt>)> {
    let mut pivots: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for row in rows {
        let mut r = integerize(row);
        if r.len() != cols {
            r.resize(cols, BigInt::zero());
        }
        for (pc, p) in &pivots {
            if r[*pc].is_zero() {
                continue;
            }
            let a = &p[*pc];
            let b = r[*pc].clone();
            for j in 0..cols {
                if p[j].is_zero() && r[j].is_zero() {
                    continue;
                }
                r[j] = a * &r[j] - &b * &p[j];
            }
            r = primitive(r);
        }
        let Some(c) = r.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if r[c].is_negative() {
            r.iter_mut().for_each(|x| *x = -&*x);
        }
        // eliminate the new pivot from earlier rows to keep the reduced form
        for (_, p) in pivots.iter_mut() {
            if p[c].is_zero() {
                continue;
            }
            let a = r[c].clone();
            let b = p[c].clone();
            for j in 0..cols {
                if p[j].is_zero() && r[j].is_zero() {
                    continue;
                }
                p[j] = &a * &p[j] - &b * &r[j];
            }
            *p = primitive(std::mem::take(p));
        }
        pivots.push((c, r));
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    reduce(rows, cols).len()
}

/// Basis of `{x : A x = 0}` with primitive integer entries (as rationals).
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let piv = reduce(rows, cols);
    let is_pivot: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (i, (c, _)) in piv.iter().enumerate() {
            v[*c] = Some(i);
        }
        v
    };
    let mut out = Vec::new();
    for f in (0..cols).filter(|&c| is_pivot[c].is_none()) {
        let l = piv
            .iter()
            .filter(|(_, p)| !p[f].is_zero())
            .fold(BigInt::one(), |acc, (c, p)| acc.lcm(&p[*c]));
        let mut x = vec![BigInt::zero(); cols];
        x[f] = l.clone();
        for (c, p) in &piv {
            if !p[f].is_zero() {
                x[*c] = -(&l / &p[*c]) * &p[f];
            }
        }
        out.push(primitive(x).into_iter().map(Rational::from_integer).collect());
    }
    out
}

/// Coordinates of `v` in the span of `basis` (independent vectors), if it lies there.
pub fn solve_in_span(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let d = v.len();
    // columns = basis vectors, augmented with -v; look for a null vector with last entry ≠ 0
    let rows: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut r: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(-&v[i]);
            r
        })
        .collect();
    let ns = nullspace(&rows, k + 1);
    let sol = ns.into_iter().find(|x| !x[k].is_zero())?;
    let t = sol[k].clone();
    Some(sol[..k].iter().map(|x| x / &t).collect())
}

/// Solves `Σ x_i b_i = v` repeatedly against a fixed independent basis.
pub struct SpanSolver {
    basis: Vec<Vec<Rational>>,
    rows: Vec<usize>,
    inv: RatMatrix,
}

impl SpanSolver {
    pub fn new(basis: &[Vec<Rational>]) -> Result<Self> {
        let k = basis.len();
        let d = basis.first().map_or(0, |b| b.len());
        let piv = reduce(basis, d);
        if piv.len() != k {
            return Err(Error::ShapeMismatch("span basis is not independent".into()));
        }
        let rows: Vec<usize> = piv.iter().map(|(c, _)| *c).collect();
        // square block B[rows, :] with B having the basis vectors as columns
        let block: Vec<Vec<Rational>> =
            rows.iter().map(|&r| basis.iter().map(|b| b[r].clone()).collect()).collect();
        let inv = RatMatrix::from_rows(block)?.inverse()?;
        Ok(SpanSolver { basis: basis.to_vec(), rows, inv })
    }

    pub fn solve(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let k = self.basis.len();
        let x: Vec<Rational> = (0..k)
            .map(|i| {
                self.rows
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (j, &r)| acc + &self.inv[(i, j)] * &v[r])
            })
            .collect();
        let ok = (0..v.len()).all(|r| {
            let s = self.basis.iter().zip(&x).fold(Rational::zero(), |acc, (b, c)| acc + &b[r] * c);
            s == v[r]
        });
        ok.then_some(x)
    }
}

/// Greedy maximal independent subset (indices into `vecs`).
pub fn independent_subset(vecs: &[Vec<Rational>]) -> Vec<usize> {
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    let mut idx = Vec::new();
    for (i, v) in vecs.iter().enumerate() {
        kept.push(v.clone());
        if rank(&kept) == kept.len() {
            idx.push(i);
        } else {
            kept.pop();
        }
    }
    idx
}

pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let all: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&all) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rint};
    use proptest::prelude::*;

    fn dot(a: &[Rational], b: &[Rational]) -> Rational {
        a.iter().zip(b).fold(Rational::zero(), |s, (x, y)| s + x * y)
    }

    #[test]
    fn small_nullspace() {
        let rows = vec![vec![rint(1), rint(2), rint(3)], vec![rint(2), rint(4), rint(6)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!(dot(&rows[0], x).is_zero());
        }
    }

    #[test]
    fn inverse_and_det() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det().unwrap(), rint(1));
        assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), RatMatrix::identity(2));
        let s = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det().unwrap(), rint(0));
        assert!(s.inverse().is_err());
    }

    #[test]
    fn span_helpers() {
        let b = vec![vec![rint(1), rint(0), rint(1)], vec![rint(0), rint(1), rint(1)]];
        let c = solve_in_span(&b, &[rat(1, 2), rint(3), rat(7, 2)]).unwrap();
        assert_eq!(c, vec![rat(1, 2), rint(3)]);
        assert!(solve_in_span(&b, &[rint(1), rint(0), rint(0)]).is_none());
        let b2 = vec![vec![rint(1), rint(1), rint(2)], vec![rint(1), rint(-1), rint(0)]];
        assert!(same_span(&b, &b2));
        assert_eq!(independent_subset(&[b[0].clone(), b[0].clone(), b[1].clone()]), vec![0, 2]);
        let s = SpanSolver::new(&b).unwrap();
        assert_eq!(s.solve(&[rat(1, 2), rint(3), rat(7, 2)]), Some(vec![rat(1, 2), rint(3)]));
        assert_eq!(s.solve(&[rint(1), rint(0), rint(0)]), None);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 20)) {
            let rows: Vec<Vec<Rational>> = entries.chunks(5).map(|c| c.iter().map(|&x| rint(x)).collect()).collect();
            let ns = nullspace(&rows, 5);
            prop_assert_eq!(ns.len() + rank(&rows), 5);
            for x in &ns {
                for r in &rows {
                    prop_assert!(dot(r, x).is_zero());
                }
            }
            prop_assert_eq!(rank(&ns), ns.len());
        }
    }
}
