//! Special functions and quadrature.

pub mod bessel;
pub mod gamma;
pub mod quad;
pub mod zeta;

pub use bessel::bessel_k;
pub use gamma::gamma_complex;
pub use quad::{integrate, Domain, Estimate, QuadratureSpec, Scheme};
pub use zeta::{l_factor, rs_l_factor, zeta_f};
