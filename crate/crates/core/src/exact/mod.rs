//! Exact arithmetic over ℚ and the controlled-precision numerical layer.
//!
//! Every value here is immutable once built and every operation is a pure
//! function, so the types are freely shared across threads.

mod bipoly;
mod curve;
mod float;
mod parse;
mod poly;
mod ratfunc;
mod roots;

use thiserror::Error;

pub use bipoly::{BiPoly, BiRational};
pub use curve::{discriminant_cubic, j_invariant, j_invariant_rational};
pub use float::{rational_to_f64, ComplexRational, ComplexValue, Cx, MpFloat, Real, C64};
pub use parse::{parse_bipoly, parse_birational, parse_polynomial, parse_rational_function, ParseError};
pub use poly::{determinant, discriminant, interpolate, rat, ratio, resultant, sylvester_resultant, Polynomial, Rational};
pub use ratfunc::RationalFunction;
pub use roots::{
    aberth, certified_roots, disks_disjoint, eval_poly_complex, eval_with_error, inclusion_radii, isolate,
    min_separation, newton_polish, residual_at, roots_at, roots_numeric, CertifiedRoot,
};

/// Default working precision for root isolation and tracking, in bits.
pub const DEFAULT_PRECISION: u32 = 128;
/// Cap for adaptive precision doubling, in bits.
pub const DEFAULT_MAX_PRECISION: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("resultant of two zero polynomials")]
    BothZero,
    #[error("degenerate curve: 4p^3 + 27q^2 vanishes identically")]
    DegenerateCurve,
    #[error("root certification failed at the maximum precision of {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
}
