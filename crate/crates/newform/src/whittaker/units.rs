//! Integration over `F^x` against `d^x x`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::conventions::Conventions;
use crate::error::Result;
use crate::repcore::LocalField;
use crate::special::quad::{integrate, Domain, Estimate, QuadratureSpec};

/// Trapezoid points on the unit circle; exact for trigonometric
/// polynomials of degree below this.
pub const ANGLES: usize = 32;

/// `int_{F^x} f(x) d^x x`, in the logarithmic radial variable. Over `C`
/// the angle uses [`ANGLES`] trapezoid points.
pub fn integrate_units<F>(field: LocalField, f: F, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(Complex64) -> Complex64,
{
    match field {
        LocalField::Real => integrate(
            |v| {
                let r = v.exp();
                f(Complex64::new(r, 0.0)) + f(Complex64::new(-r, 0.0))
            },
            Domain::Line,
            spec,
        ),
        LocalField::Complex => {
            let c = Conventions::new(field).zeta_one() * 2.0 * 2.0 * PI / ANGLES as f64;
            let e = integrate(
                |v| {
                    let r = v.exp();
                    (0..ANGLES).map(|j| f(Complex64::from_polar(r, 2.0 * PI * j as f64 / ANGLES as f64))).sum()
                },
                Domain::Line,
                spec,
            )?;
            Ok(e.scale(Complex64::new(c, 0.0)))
        }
    }
}

/// `int_{F^x} phi(|x|) d^x x` for radial `phi`, given as a function of the
/// ordinary modulus.
pub fn integrate_radial<F>(field: LocalField, phi: F, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    let c = Conventions::new(field).radial_multiplier();
    let e = integrate(|v| phi(v.exp()), Domain::Line, spec)?;
    Ok(e.scale(Complex64::new(c, 0.0)))
}
