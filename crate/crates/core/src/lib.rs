//! Exact twisted spin representations Δ_n ⊗ Δ_r^{⊗m}.
//!
//! Computes the real 2-forms η_kl a twisted spinor induces on ℝ^n, certifies pure and
//! reducing spinors, and finds annihilator and commutant Lie algebras by exact rational
//! linear algebra. No floating point anywhere: scalars are Gaussian rationals, and
//! irrational normalizations live in a separate squared scale factor.

pub mod catalog;
pub mod error;
pub mod eta;
pub mod linalg;
pub mod numeric;
pub mod ops;
pub mod report;
pub mod rotation;
pub mod sample;
pub mod spin;
pub mod structure;
pub mod twisted;

pub use error::{Error, Result};
pub use eta::{eta, eta_all, eta_hat, eta_hats, phi_extend, spinc_form, spinc_form_untwisted, Endo, TwoForm};
pub use numeric::{gr_arith, gr_conj, rat, rint, ArithOp, GaussianRational, Rational};
pub use spin::{
    clifford_action, gamma_apply, hermitian, kappa_generator, spin_action_on_spinor, spin_action_on_vector,
    BasisIndex, FormTerm, SpinorVector,
};
pub use structure::{
    annihilator, check_pure, check_reducing, check_spinc_pure, cl_dims, commutant, equivariance_check,
    even_clifford_verify, frame_rotation_check, lie_closure_report, AmbientElement, Certificate, ClDims,
    LieSubalgebra, PurityReport, ReducingReport,
};
pub use twisted::{
    mu_slot, tangent_action, twist_bivector_action, twisted_group_action, twisted_hermitian, ScaledSpinor,
    Shape, TwistedIndex,
};
