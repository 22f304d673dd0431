//! Regression summary over the catalog: one row per checked claim.

use std::collections::BTreeMap;

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, beta_forms, g2_generators, CatalogEntry};
use crate::error::Result;
use crate::eta::{eta_all, eta_hat, eta_hats, spinc_form, spinc_form_untwisted, Endo, TwoForm};
use crate::numeric::{rint, Rational};
use crate::rotation::{random_rotation, random_unit_vector};
use crate::sample::{random_spinor, random_vector};
use crate::spin::SpinorVector;
use crate::structure::{
    annihilator, check_pure, check_reducing, check_spinc_pure, cl_dims, commutant, commutator_relations,
    equivariance_check, even_clifford_verify, frame_rotation_check, reality_identities, AmbientElement,
    Certificate,
};
use crate::twisted::{ScaledSpinor, Shape, TwistedIndex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionRow {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// The catalog entries the report runs on; replaceable for mutation tests.
#[derive(Clone, Debug)]
pub struct ReportInputs {
    pub spin7_pure: CatalogEntry,
    pub spin7_reducing: CatalogEntry,
    /// m = 1, 2, 3
    pub qk: Vec<CatalogEntry>,
    /// n = 2..=8
    pub generic: Vec<CatalogEntry>,
    pub seed: u64,
}

impl ReportInputs {
    pub fn standard() -> Result<Self> {
        Ok(ReportInputs {
            spin7_pure: catalog::build_spin7_pure(),
            spin7_reducing: catalog::build_spin7_reducing(),
            qk: (1..=3).map(catalog::build_qk_pure).collect::<Result<_>>()?,
            generic: (2..=8).map(catalog::build_generic_reducing).collect::<Result<_>>()?,
            seed: 2024,
        })
    }
}

pub fn report_all() -> Vec<CriterionRow> {
    report_with(&ReportInputs::standard().expect("catalog builds"))
}

type Check = fn(&ReportInputs) -> Result<CriterionRow>;

pub fn report_with(inputs: &ReportInputs) -> Vec<CriterionRow> {
    let checks: [(&str, Check); 12] = [
        ("1 spin7 eta table", c1_eta_table),
        ("2 purity certificates", c2_certificates),
        ("3 g2 recovery", c3_g2),
        ("4 spin7 and so7 annihilators", c4_annihilators),
        ("5 qk stabilizer algebra", c5_qk_algebra),
        ("6 generic reducing spinor", c6_generic),
        ("7 reality identities", c7_reality),
        ("8 even clifford relations", c8_relations),
        ("9 frame independence and equivariance", c9_invariance),
        ("10 spin^c special case", c10_spinc),
        ("11 representation constants", c11_constants),
        ("12 eta13 recursion", c12_recursion),
    ];
    checks
        .par_iter()
        .map(|(name, f)| {
            f(inputs).unwrap_or_else(|e| row(name, "no error", &format!("error: {e}"), false))
        })
        .collect()
}

fn row(name: &str, expected: &str, computed: &str, pass: bool) -> CriterionRow {
    CriterionRow { name: name.into(), expected: expected.into(), computed: computed.into(), pass }
}

fn c1_eta_table(inp: &ReportInputs) -> Result<CriterionRow> {
    let got = eta_all(&inp.spin7_pure.spinor)?;
    let want = catalog::spin7_eta_table();
    let matching = want.iter().filter(|(p, f)| got.get(p) == Some(f)).count();
    Ok(row("1 spin7 eta table", "21/21 rows equal", &format!("{matching}/21 rows equal"), matching == 21))
}

fn c2_certificates(inp: &ReportInputs) -> Result<CriterionRow> {
    let mut parts = Vec::new();
    let mut ok = true;
    let p1 = check_pure(&inp.spin7_pure.spinor)?.is_pure;
    parts.push(format!("pure(spin7)={p1}"));
    ok &= p1;
    for e in &inp.qk {
        let v = check_pure(&e.spinor)?.is_pure;
        parts.push(format!("pure({})={v}", e.name));
        ok &= v;
    }
    let r2 = check_reducing(&inp.spin7_reducing.spinor)?.is_reducing;
    parts.push(format!("reducing(spin7_reducing)={r2}"));
    ok &= r2;
    for e in &inp.generic {
        let v = check_reducing(&e.spinor)?.is_reducing;
        parts.push(format!("reducing({})={v}", e.name));
        ok &= v;
    }
    Ok(row("2 purity certificates", "all true", &parts.join(" "), ok))
}

fn c3_g2(inp: &ReportInputs) -> Result<CriterionRow> {
    let alg = annihilator(&[inp.spin7_pure.spinor.clone(), inp.spin7_reducing.spinor.clone()])?;
    let gens = g2_generators();
    let span = alg.same_span(&gens);
    let outside: Vec<String> =
        gens.iter().enumerate().filter(|(_, g)| !alg.contains(g)).map(|(i, _)| format!("#{}", i + 1)).collect();
    let computed = format!(
        "dim={} closed={} span_equal={} listed_outside=[{}]",
        alg.dim,
        alg.closed,
        span,
        outside.join(",")
    );
    Ok(row("3 g2 recovery", "dim=14 closed=true span_equal=true", &computed, alg.dim == 14 && alg.closed && span))
}

fn c4_annihilators(inp: &ReportInputs) -> Result<CriterionRow> {
    let a1 = annihilator(&[inp.spin7_pure.spinor.clone()])?;
    let a2 = annihilator(&[inp.spin7_reducing.spinor.clone()])?;
    let computed = format!("pure: dim={} closed={}; reducing: dim={} closed={}", a1.dim, a1.closed, a2.dim, a2.closed);
    let ok = a1.dim == 21 && a1.closed && a2.dim == 21 && a2.closed;
    Ok(row("4 spin7 and so7 annihilators", "dim=21 closed=true for both", &computed, ok))
}

fn c5_qk_algebra(inp: &ReportInputs) -> Result<CriterionRow> {
    let mut parts = Vec::new();
    let mut ok = true;
    for e in &inp.qk {
        let m = e.spinor.shape.m;
        let alg = annihilator(&[e.spinor.clone()])?;
        let want = m * (2 * m + 1) + 3;
        let etas = eta_all(&e.spinor)?;
        let eta_in = etas.iter().all(|(&(k, l), f)| {
            AmbientElement::from_two_form(f, 3, &[(k, l, rint(2))]).map(|x| alg.contains(&x)).unwrap_or(false)
        });
        let betas = beta_forms(m);
        let missing = betas
            .iter()
            .filter(|b| !AmbientElement::from_two_form(&b.form, 3, &[]).map(|x| alg.contains(&x)).unwrap_or(false))
            .count();
        ok &= alg.dim == want && alg.closed && eta_in && missing == 0;
        parts.push(format!(
            "m={m}: dim={} (want {want}) eta+2f={} beta_missing={missing}/{}",
            alg.dim,
            eta_in,
            betas.len()
        ));
    }
    Ok(row("5 qk stabilizer algebra", "dims 6,13,24; contains all beta and eta+2f", &parts.join("; "), ok))
}

fn c6_generic(inp: &ReportInputs) -> Result<CriterionRow> {
    let mut bad = Vec::new();
    for e in &inp.generic {
        let phi = &e.spinor;
        let n = phi.shape.n;
        let unnorm = phi.clone().with_scale2(Rational::one());
        let factor = rint(1i64 << (n / 2));
        let etas = eta_all(&unnorm)?;
        let forms_ok = etas.iter().all(|(&(p, q), f)| TwoForm::basic(n, p, q).map(|b| b.scale(&factor) == *f).unwrap_or(false));
        let mut eq_ok = true;
        for p in 1..=n {
            for q in p + 1..=n {
                let x = AmbientElement::from_terms(n, n, &[(p, q, rint(1))], &[(p, q, rint(1))])?;
                eq_ok &= x.act(phi)?.is_zero();
            }
        }
        if !(forms_ok && eq_ok) {
            bad.push(e.name.clone());
        }
    }
    let computed = if bad.is_empty() { "n=2..8 all hold".to_string() } else { format!("failing: {}", bad.join(",")) };
    Ok(row("6 generic reducing spinor", "n=2..8 all hold", &computed, bad.is_empty()))
}

fn c7_reality(inp: &ReportInputs) -> Result<CriterionRow> {
    let shapes = [(4, 3, 1), (8, 3, 2), (8, 7, 1), (6, 3, 1)];
    let per_shape = 50;
    let results: Vec<bool> = shapes
        .par_iter()
        .enumerate()
        .map(|(i, &(n, r, m))| -> Result<bool> {
            let mut rng = ChaCha8Rng::seed_from_u64(inp.seed + i as u64);
            let shape = Shape::new(n, r, m)?;
            let mut ok = true;
            for _ in 0..per_shape {
                let phi = random_spinor(shape, &mut rng);
                let x = random_vector(n, &mut rng);
                let y = random_vector(n, &mut rng);
                ok &= reality_identities(&phi, &x, &y)?.all();
            }
            Ok(ok)
        })
        .collect::<Result<_>>()?;
    let ok = results.iter().all(|&b| b);
    let computed = format!("{} spinors, all identities hold: {ok}", per_shape * shapes.len());
    Ok(row("7 reality identities", "200 spinors, all identities hold: true", &computed, ok))
}

fn relations_hold(etas: &BTreeMap<(usize, usize), Endo>) -> Result<bool> {
    Ok(even_clifford_verify(etas)?.holds() && commutator_relations(etas)?.holds())
}

fn c8_relations(inp: &ReportInputs) -> Result<CriterionRow> {
    let mut parts = Vec::new();
    let mut ok = true;
    for e in std::iter::once(&inp.spin7_pure).chain(inp.qk.iter().take(2)) {
        let v = relations_hold(&eta_hats(&eta_all(&e.spinor)?))?;
        parts.push(format!("{}={v}", e.name));
        ok &= v;
    }
    Ok(row("8 even clifford relations", "all hold", &parts.join(" "), ok))
}

fn c9_invariance(inp: &ReportInputs) -> Result<CriterionRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(inp.seed);
    let mut frames = 0;
    let mut groups = 0;
    let mut ok = true;
    for e in [&inp.spin7_pure, &inp.qk[1]] {
        let phi = &e.spinor;
        for _ in 0..20 {
            ok &= frame_rotation_check(phi, &random_rotation(phi.shape.r, &mut rng), Certificate::Pure)?;
            frames += 1;
        }
        for _ in 0..10 {
            let g: Vec<_> = (0..2).map(|_| random_unit_vector(phi.shape.n, &mut rng)).collect();
            let h: Vec<_> = (0..2).map(|_| random_unit_vector(phi.shape.r, &mut rng)).collect();
            ok &= equivariance_check(phi, &g, &h, Certificate::Pure)?;
            groups += 1;
        }
    }
    let computed = format!("{frames} rotations, {groups} group elements, verdicts invariant: {ok}");
    Ok(row("9 frame independence and equivariance", "verdicts invariant: true", &computed, ok))
}

fn j0(n: usize) -> Result<Endo> {
    let terms: Vec<_> = (1..=n / 2).map(|a| (2 * a - 1, 2 * a, rint(1))).collect();
    Ok(eta_hat(&TwoForm::from_terms(n, &terms)?))
}

fn c10_spinc(_: &ReportInputs) -> Result<CriterionRow> {
    let mut parts = Vec::new();
    let mut ok = true;
    for half in [2usize, 3] {
        let n = 2 * half;
        let psi = SpinorVector::basis(n, &vec![1; half])?;
        let pure = check_spinc_pure(&psi)?;
        let form = spinc_form_untwisted(&psi)?;
        let hat_ok = eta_hat(&form) == j0(n)?.neg();
        let mut twisted = ScaledSpinor::zero(Shape::new(n, 2, 1)?);
        twisted.set(&TwistedIndex::new(&vec![1; half], &[&[1]])?, crate::numeric::GaussianRational::one())?;
        let routes_agree = spinc_form(&twisted)? == form;
        parts.push(format!("n={half}: pure={pure} hat=-J0:{hat_ok} twisted_route={routes_agree}"));
        ok &= pure && hat_ok && routes_agree;
    }
    Ok(row("10 spin^c special case", "all true", &parts.join("; "), ok))
}

fn c11_constants(inp: &ReportInputs) -> Result<CriterionRow> {
    let table: [(usize, usize, usize); 8] =
        [(1, 1, 1), (2, 2, 1), (3, 4, 1), (4, 4, 2), (5, 8, 1), (6, 8, 1), (7, 8, 1), (8, 8, 2)];
    let dims_ok = table.iter().all(|&(r, d, v)| cl_dims(r).map(|c| c.d_r == d && c.v_r == v).unwrap_or(false));
    let hats = |e: &CatalogEntry| -> Result<Vec<Endo>> { Ok(eta_hats(&eta_all(&e.spinor)?).into_values().collect()) };
    let c_spin7 = commutant(&hats(&inp.spin7_pure)?, true)?.dim;
    let c_qk = commutant(&hats(&inp.qk[0])?, true)?.dim;
    let computed = format!("cl_dims rows match: {dims_ok}; commutant dims: spin7={c_spin7} qk:1={c_qk}");
    let ok = dims_ok && c_spin7 == 0 && c_qk == 3;
    Ok(row("11 representation constants", "cl_dims rows match: true; commutant dims: spin7=0 qk:1=3", &computed, ok))
}

fn c12_recursion(_: &ReportInputs) -> Result<CriterionRow> {
    let res: Vec<bool> = (1..=3).map(catalog::eta13_recursion_check).collect::<Result<_>>()?;
    let ok = res.iter().all(|&b| b);
    Ok(row("12 eta13 recursion", "m=1,2,3 hold", &format!("m=1,2,3: {res:?}"), ok))
}
