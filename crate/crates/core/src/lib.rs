//! Exact symbolic algebra for constrained FNR flows on the sl(2) loop algebra.

pub mod diffpoly;
pub mod error;
pub mod fnr;
pub mod latex;
pub mod loopalg;
pub mod poisson;
pub mod report;
pub mod zerocurv;

pub use diffpoly::{int, rat, DiffPoly, FieldKind, FieldVar, Monomial, Rational};
pub use error::{Error, Result};
pub use fnr::{build_psi, lax_matrix, PsiTable};
pub use loopalg::{Gl2, LaurentMatrix, Projection, Sl2Poly};
pub use poisson::{
    field_bracket_table, hamiltonian_density, sklyanin_check, wz_expand, BracketTable, WZExpansion,
};
pub use report::{CheckEntry, CheckReport};
pub use zerocurv::{dual_equivalence, strong_zc_check, zero_curvature, PdeRule, PdeSystem};
