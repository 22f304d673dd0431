//! The real 2-forms η_kl a twisted spinor induces on ℝ^n, and their endomorphisms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::numeric::{parse_rational, Rational};
use crate::ops::{IntVec, OpSum};
use crate::spin::{self, SpinorVector};
use crate::twisted::ScaledSpinor;

/// Antisymmetric n×n rational matrix; `mat[(a-1, b-1)]` is the coefficient of `e_a∧e_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoForm {
    pub n: usize,
    mat: RatMatrix,
}

/// A general endomorphism of ℝ^n; column `a` is the image of `e_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endo {
    pub n: usize,
    pub mat: RatMatrix,
}

impl TwoForm {
    pub fn zero(n: usize) -> Self {
        TwoForm { n, mat: RatMatrix::zeros(n, n) }
    }

    /// Builds `Σ c · e_a∧e_b` (1-based, any order of a and b; repeated pairs add up).
    pub fn from_terms(n: usize, terms: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut f = Self::zero(n);
        for (a, b, c) in terms {
            f.add_term(*a, *b, c)?;
        }
        Ok(f)
    }

    pub fn from_int_terms(n: usize, terms: &[(usize, usize, i64)]) -> Result<Self> {
        let t: Vec<_> = terms.iter().map(|&(a, b, c)| (a, b, crate::numeric::rint(c))).collect();
        Self::from_terms(n, &t)
    }

    pub fn basic(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::from_terms(n, &[(a, b, Rational::one())])
    }

    pub fn from_matrix(mat: RatMatrix) -> Result<Self> {
        if !mat.is_antisymmetric() {
            return Err(Error::ShapeMismatch("2-form matrix must be antisymmetric".into()));
        }
        Ok(TwoForm { n: mat.rows, mat })
    }

    pub fn add_term(&mut self, a: usize, b: usize, c: &Rational) -> Result<()> {
        for &i in &[a, b] {
            if i == 0 || i > self.n {
                return Err(Error::IndexOutOfRange { index: i, max: self.n });
            }
        }
        if a == b {
            return Ok(());
        }
        self.mat[(a - 1, b - 1)] += c;
        self.mat[(b - 1, a - 1)] -= c;
        Ok(())
    }

    /// ω(e_a, e_b), 1-based.
    pub fn get(&self, a: usize, b: usize) -> &Rational {
        &self.mat[(a - 1, b - 1)]
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.mat
    }

    /// Nonzero `(a, b, coeff)` with a < b, ascending.
    pub fn terms(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                let c = self.get(a, b);
                if !c.is_zero() {
                    out.push((a, b, c.clone()));
                }
            }
        }
        out
    }

    /// Coefficients on `e_a∧e_b` for a < b in lexicographic order.
    pub fn to_vector(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                out.push(self.get(a, b).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn add(&self, o: &TwoForm) -> Result<TwoForm> {
        Ok(TwoForm { n: self.n, mat: self.mat.add(&o.mat)? })
    }

    pub fn scale(&self, c: &Rational) -> TwoForm {
        TwoForm { n: self.n, mat: self.mat.scale(c) }
    }

    pub fn neg(&self) -> TwoForm {
        TwoForm { n: self.n, mat: self.mat.neg() }
    }

    /// `Σ_{a<b} ω(a,b) e_a e_b` as an operator on the spin slot of `shape`.
    pub(crate) fn spin_ops(&self, shape: &crate::twisted::Shape) -> Result<OpSum> {
        self.terms().into_iter().map(|(a, b, c)| Ok((c, shape.spin_pair(a, b)?))).collect()
    }

    /// Human-readable rendering: `e1^e2 - e3^e4 + 1/2 * e5^e6`.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for (i, (a, b, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            let sign = match (i, neg) {
                (0, false) => "",
                (0, true) => "- ",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            s.push_str(sign);
            if !mag.is_one() {
                s.push_str(&format!("{mag} * "));
            }
            s.push_str(&format!("e{a}^e{b}"));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    a: usize,
    b: usize,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct TwoFormRepr {
    n: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for TwoForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .into_iter()
            .map(|(a, b, c)| TermRepr { a, b, coeff: c.to_string() })
            .collect();
        TwoFormRepr { n: self.n, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwoForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = TwoFormRepr::deserialize(d)?;
        let mut f = TwoForm::zero(r.n);
        for t in r.terms {
            let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            f.add_term(t.a, t.b, &c).map_err(D::Error::custom)?;
        }
        Ok(f)
    }
}

impl Endo {
    pub fn new(mat: RatMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::ShapeMismatch("endomorphism must be square".into()));
        }
        Ok(Endo { n: mat.rows, mat })
    }

    pub fn identity(n: usize) -> Self {
        Endo { n, mat: RatMatrix::identity(n) }
    }

    pub fn compose(&self, o: &Endo) -> Endo {
        Endo { n: self.n, mat: self.mat.mul(&o.mat).expect("same size") }
    }

    pub fn add(&self, o: &Endo) -> Endo {
        Endo { n: self.n, mat: self.mat.add(&o.mat).expect("same size") }
    }

    pub fn sub(&self, o: &Endo) -> Endo {
        Endo { n: self.n, mat: self.mat.sub(&o.mat).expect("same size") }
    }

    pub fn neg(&self) -> Endo {
        Endo { n: self.n, mat: self.mat.neg() }
    }

    pub fn scale(&self, c: &Rational) -> Endo {
        Endo { n: self.n, mat: self.mat.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn squares_to_minus_identity(&self) -> bool {
        self.compose(self) == Endo::identity(self.n).neg()
    }
}

/// X ↦ (X⌟ω)^♯, i.e. η̂(e_a) = Σ_b ω(e_a, e_b) e_b.
pub fn eta_hat(omega: &TwoForm) -> Endo {
    Endo { n: omega.n, mat: omega.mat.transpose() }
}

fn check_pair(phi: &ScaledSpinor, k: usize, l: usize) -> Result<()> {
    let r = phi.shape.r;
    for &i in &[k, l] {
        if i == 0 || i > r {
            return Err(Error::IndexOutOfRange { index: i, max: r });
        }
    }
    Ok(())
}

/// η_kl(e_a, e_b) = scale2 · Re⟨e_a e_b · κ_{r*}^m(f_k f_l)·v, v⟩.
pub fn eta(phi: &ScaledSpinor, k: usize, l: usize) -> Result<TwoForm> {
    check_pair(phi, k, l)?;
    let n = phi.shape.n;
    if k == l {
        return Ok(TwoForm::zero(n));
    }
    let w = IntVec::new(&phi.v.apply_sum(&phi.shape.twist_bivector_ops(k, l)?));
    let v = IntVec::new(&phi.v);
    let mut form = TwoForm::zero(n);
    for a in 1..=n {
        for b in a + 1..=n {
            let op = phi.shape.spin_pair(a, b)?;
            let z = w.hermitian_op(&op, &v);
            if !z.re.is_zero() {
                let c = &z.re * &phi.scale2;
                form.mat[(a - 1, b - 1)] = c.clone();
                form.mat[(b - 1, a - 1)] = -c;
            }
        }
    }
    Ok(form)
}

/// All η_kl for 1 ≤ k < l ≤ r, computed in parallel.
pub fn eta_all(phi: &ScaledSpinor) -> Result<BTreeMap<(usize, usize), TwoForm>> {
    let r = phi.shape.r;
    let pairs: Vec<(usize, usize)> =
        (1..=r).flat_map(|k| (k + 1..=r).map(move |l| (k, l))).collect();
    pairs
        .par_iter()
        .map(|&(k, l)| Ok(((k, l), eta(phi, k, l)?)))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().collect())
}

pub fn eta_hats(etas: &BTreeMap<(usize, usize), TwoForm>) -> BTreeMap<(usize, usize), Endo> {
    etas.iter().map(|(&p, f)| (p, eta_hat(f))).collect()
}

/// Φ^φ(Σ c_kl f_k∧f_l) = Σ c_kl η_kl.
pub fn phi_extend(phi: &ScaledSpinor, beta: &[(usize, usize, Rational)]) -> Result<TwoForm> {
    let mut acc = TwoForm::zero(phi.shape.n);
    for (k, l, c) in beta {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&eta(phi, *k, *l)?.scale(c))?;
    }
    Ok(acc)
}

/// `Σ_{a<b} ω(a,b) e_a e_b · φ` on the Δ_n slot.
pub fn spin_two_form_action(omega: &TwoForm, phi: &ScaledSpinor) -> Result<ScaledSpinor> {
    if omega.n != phi.shape.n {
        return Err(Error::ShapeMismatch(format!("2-form on ℝ^{} vs n = {}", omega.n, phi.shape.n)));
    }
    Ok(phi.apply_ops(&omega.spin_ops(&phi.shape)?))
}

/// The Spin^c form of a twisted spinor with r = 2, m = 1: η_12.
pub fn spinc_form(phi: &ScaledSpinor) -> Result<TwoForm> {
    if phi.shape.r != 2 {
        return Err(Error::WrongRank { expected: 2, got: phi.shape.r });
    }
    if phi.shape.m != 1 {
        return Err(Error::ShapeMismatch(format!("Spin^c form needs m = 1, got {}", phi.shape.m)));
    }
    eta(phi, 1, 2)
}

/// Σ_{a<b} Re(i⟨e_a e_b ψ, ψ⟩) e_a∧e_b for an untwisted spinor.
pub fn spinc_form_untwisted(psi: &SpinorVector) -> Result<TwoForm> {
    let n = psi.n;
    let mut form = TwoForm::zero(n);
    for a in 1..=n {
        for b in a + 1..=n {
            let op = spin::product_op(n, &[a, b])?;
            let z = psi.sparse().hermitian_op(&op, psi.sparse());
            // Re(i z) = -Im z
            let c = -z.im;
            if !c.is_zero() {
                form.mat[(a - 1, b - 1)] = c.clone();
                form.mat[(b - 1, a - 1)] = -c;
            }
        }
    }
    Ok(form)
}
