//! Homogeneous harmonic polynomials, zonal harmonics and Haar sampling.

pub mod dims;
pub mod haar;
pub mod kernel;
pub mod poly;
pub mod zonal;

pub use dims::{dim_harmonics, Degrees};
pub use haar::{haar_sample, CompactGroupElement};
pub use kernel::{hecke_residual, reproducing_residual, Residual};
pub use poly::{NumPoly, Poly};
pub use zonal::{harmonic_basis, zonal, zonal_product};

use num_complex::Complex64;

use crate::error::Result;

/// Evaluate `p` at `point` (conjugate variables are derived from the point).
pub fn eval_poly(p: &Poly, point: &[Complex64]) -> Result<Complex64> {
    p.eval(point)
}

/// Symbolic Laplacian.
pub fn laplacian(p: &Poly) -> Poly {
    p.laplacian()
}
