//! Exact polynomial arithmetic over the Gaussian integers and the Chebyshev family.

mod cheb;
mod gauss;
mod intpoly;
mod matrix;
mod poly;

pub use cheb::{cheb, cheb_f_at, cheb_p_at, cheb_p_pair_at, cheb_v_at, ChebKind};
pub use gauss::GaussInt;
pub use intpoly::{content, gcd_integer, is_squarefree, primitive_part, squarefree_decomposition};
pub use matrix::{cheb_p_pair_numeric, CMat2, PolyMatrix2};
pub use poly::{horner, GPoly};
