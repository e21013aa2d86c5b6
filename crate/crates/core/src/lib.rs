//! Construction of spline-type orthogonal scaling functions.
//!
//! The pipeline runs from exact symbols to numerics:
//!
//! * [`poly`]: exact rational polynomials and the Chebyshev bridge to cosine series.
//! * [`symbol`]: the B-spline mask `((1+z)/2)^n`, the Lorentz polynomial `Q_n`
//!   and an independent extended-Euclid construction of the same polynomial.
//! * [`factor`]: spectral factorization of `Q_n(cos(ξ/2))` into `|S_n(z)|²`.
//! * [`scaling`]: refinement coefficients and the cascade iteration for `φ_n`.
//! * [`filterbank`]: orthonormal filter pairs and periodic transforms.
//! * [`report`]: the aggregated verification report.

pub mod dd;
pub mod error;
pub mod factor;
pub mod filterbank;
pub mod poly;
pub mod report;
pub mod roots;
pub mod scaling;
pub mod symbol;

pub use error::{Error, Result};
pub use factor::{
    enumerate_solutions, enumerate_system_solutions, laurent_symbol, spectral_factor, symbol_roots,
    Branch, FactorSolution, LaurentSymbol, RootSet,
};
pub use filterbank::{dwt_periodic, idwt_periodic, make_filter_pair, OrthFilterPair, Pyramid};
pub use poly::{CosineSeries, Rational, RationalPoly};
pub use report::{verify, Check, VerificationReport};
pub use scaling::{
    cascade, mask_symbol_eval, refinement_mask, shifted_inner_products, RefinementMask,
    ScalingTable,
};
pub use symbol::{bezout_residual, bspline_mask, eea_q, lorentz_q, BsplineMask, QPolynomial};

/// Largest spline order accepted by the constructors.
pub const MAX_ORDER: usize = 64;

/// Largest order for which double-precision factorization is documented as reliable.
pub const RELIABLE_ORDER: usize = 16;
