//! Exact polynomial algebra: univariate and multivariate polynomials over Q,
//! Sylvester resultants, and integer-polynomial irreducibility certification.

pub mod factor;
pub mod multipoly;
pub mod upoly;

pub use multipoly::{det_bareiss, det_cofactor, resultant, MultiPoly};
pub use upoly::UPoly;
