//! Invariants of complex curve and hypersurface germs at the origin:
//! multiplicity, tangent cone, relative multiplicities, Puiseux branches,
//! and blow-spherical equivalence of plane curve germs.

pub mod acceptance;
pub mod classify;
pub mod corpus;
pub mod ddouble;
pub mod dschecks;
pub mod error;
pub mod gaussian;
pub mod germ;
pub mod oracle;
pub mod param;
pub mod polycore;
pub mod puiseux;
pub mod roots;
pub mod scalar;
pub mod tangentcone;

pub use ddouble::DoubleF64;
pub use error::{Error, Result};
pub use gaussian::GaussianRational;
pub use polycore::{parse, Polynomial, Variables};

/// Polynomials with exact Gaussian-rational coefficients.
pub type Poly = Polynomial<GaussianRational>;
