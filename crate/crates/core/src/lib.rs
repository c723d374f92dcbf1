//! Exact arithmetic for skew PBW extensions, their differential calculi and
//! the checks that certify differential smoothness.

pub mod algebra;
pub mod audit;
pub mod calculus;
pub mod coeff;
pub mod error;
pub mod exponents;
pub mod extended;
pub mod gkdim;
pub mod linalg;
pub mod ore;
pub mod sample;
pub mod scalar;

pub use algebra::{Algebra, Monomial, Presentation, Relation, SkewPoly};
pub use audit::{AuditRecord, Status};
pub use coeff::{CoeffEndo, CoeffPoly, CoeffSigmaDerivation, Symbols};
pub use error::{Result, SpbwError};
pub use extended::{AlgebraEndo, ExtendedDerivation};
pub use scalar::{ParamPoly, Scalar};
pub use calculus::{build_calculus, Calculus, CalculusSpec, DiffForm, Mode};
pub use gkdim::{SmoothnessReport, Verdict};
