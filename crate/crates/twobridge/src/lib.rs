//! Parabolic SL(2,C) representations of 2-bridge knots and links.
//!
//! Exact rep-polynomials come from symplectic quandle colorings of Conway
//! diagrams; Riley polynomials from the matrix word. The numeric layer is
//! generic over [`scalar::Real`] and is usually run at [`Real256`] or [`Real512`].

pub mod coloring;
pub mod conway;
pub mod epi;
mod error;
pub mod geometry;
pub mod polycore;
pub mod riley;
pub mod scalar;

pub use error::{Error, Result};
pub use polycore::{GPoly, GaussInt, PolyMatrix2};
pub use scalar::{MpFloat, Real, Real1024, Real128, Real256, Real512};

/// Complex scalar at the default 256-bit precision.
pub type Complex256 = num_complex::Complex<Real256>;
/// Complex scalar at 512-bit precision.
pub type Complex512 = num_complex::Complex<Real512>;
