//! Exact-arithmetic toolkit for Carnot (graded nilpotent) Lie groups.
//!
//! The crate builds the jet groups J^m(R^k) and their graded Lie algebras,
//! computes Lie-algebra cohomology over the rationals, and certifies upper
//! and lower bounds on higher-order filling-function exponents, with every
//! number an exact rational and every certificate carrying re-checkable
//! evidence.
//!
//! Module map:
//! - [`scalar`]: arbitrary-precision rationals and the coefficient-ring trait
//! - [`linalg`]: exact Gaussian elimination, solving, interpolation
//! - [`poly`]: sparse multivariate polynomials over any coefficient ring
//! - [`algebra`]: graded Lie algebras, brackets, validation, subalgebras
//! - [`bch`]: Baker–Campbell–Hausdorff multiplication, truncated exactly
//! - [`plane`]: volume-scaling exponents of tangent planes under dilations
//! - [`jet`]: jet groups, the polynomial group law, prolongations
//! - [`cohomology`]: Chevalley–Eilenberg complex with the weight grading
//! - [`filling`]: horizontality ledgers and filling-exponent certificates
//! - [`formats`]: JSON schemas for algebra files, jet points, and reports

pub mod algebra;
pub mod bch;
pub mod cohomology;
pub mod error;
pub mod filling;
pub mod formats;
pub mod jet;
pub mod linalg;
pub mod plane;
pub mod poly;
pub mod scalar;

pub use algebra::{
    bracket, scale_element, scale_is_automorphism_check, subalgebra_from_span, AlgebraElement,
    BracketTable, GradedLieAlgebra, Subalgebra, ValidationReport,
};
pub use bch::bch;
pub use cohomology::{
    betti_numbers, cochain_weight, differential, nonzero_in_cohomology, weight_decompose, wedge,
    Cochain, DEFAULT_BUDGET_CELLS,
};
pub use error::{Error, Result};
pub use filling::{
    certify_jet_group, certify_user_algebra, euclidean_upper, extend_ledger, generic_upper,
    lower_bound_certificate, upper_from_ledger, verify_certificate, CertificationRun,
    ExponentCertificate, HorizontalityLedger, LedgerEntry,
};
pub use jet::{
    algebra_from_group_law, jet_inverse, jet_multiply, jet_of_polynomial, jet_scaling,
    lattice_generators, make_jet_algebra, poly_of_jet, prolongation_horizontality_check, JetPoint,
};
pub use plane::{filtration_exponents, gram_determinant_poly, plane_scaling_exponents, ScalingExponentPair};
pub use poly::{Poly, QPoly};
pub use scalar::{parse_rational, format_rational, Rational, Ring};
