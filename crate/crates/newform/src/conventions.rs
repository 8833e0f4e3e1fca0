//! Measure and character normalisations shared by every integral.
//!
//! * `psi_R(x) = e^{2 pi i x}`, `psi_C(z) = e^{2 pi i (z + conj z)}`.
//! * `dx` is self-dual for `psi`: Lebesgue on `R`, twice Lebesgue on `C`.
//! * `d^x x = zeta_F(1) |x|_F^{-1} dx`, with `|z|_C = z conj z`.
//! * Compact groups have volume 1; `O(1) = {+-1}` gets half counting measure.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::repcore::LocalField;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conventions {
    pub field: LocalField,
}

impl Conventions {
    pub const fn new(field: LocalField) -> Self {
        Self { field }
    }

    /// `d_F`.
    pub fn d(self) -> f64 {
        f64::from(self.field.degree())
    }

    /// `zeta_F(1)`.
    pub fn zeta_one(self) -> f64 {
        match self.field {
            LocalField::Real => 1.0,
            LocalField::Complex => 1.0 / PI,
        }
    }

    /// Density of the self-dual `dx` against Lebesgue measure.
    pub fn additive_density(self) -> f64 {
        self.d()
    }

    /// Normalised absolute value.
    pub fn abs(self, z: Complex64) -> f64 {
        match self.field {
            LocalField::Real => z.re.abs(),
            LocalField::Complex => z.norm_sqr(),
        }
    }

    /// `c` with `int_{F^x} phi(|x|) d^x x = c int_0^inf phi(rho) d rho / rho`,
    /// where `rho` is the ordinary modulus.
    pub fn radial_multiplier(self) -> f64 {
        match self.field {
            LocalField::Real => 2.0,
            LocalField::Complex => 4.0,
        }
    }

    /// `conj psi(z)`, i.e. `e^{-2 pi i d_F Re z}` for `z` in `F`.
    pub fn psi_bar(self, z: Complex64) -> Complex64 {
        let x = match self.field {
            LocalField::Real => z.re,
            LocalField::Complex => 2.0 * z.re,
        };
        Complex64::from_polar(1.0, -2.0 * PI * x)
    }

    /// `exp(-d_F pi |x|^2)` for a vector of field entries.
    pub fn gaussian(self, x: &[Complex64]) -> f64 {
        (-self.d() * PI * x.iter().map(|z| z.norm_sqr()).sum::<f64>()).exp()
    }
}

/// `chi^kappa(x)` for `x` in `F^x`: `sgn(x)^kappa` over `R`,
/// `(x / |x|)^kappa` over `C`.
pub fn chi_power(field: LocalField, kappa: i64, x: Complex64) -> Complex64 {
    match field {
        LocalField::Real => {
            if kappa.rem_euclid(2) == 1 && x.re < 0.0 {
                Complex64::new(-1.0, 0.0)
            } else {
                Complex64::new(1.0, 0.0)
            }
        }
        LocalField::Complex => {
            let u = x / x.norm();
            if kappa >= 0 {
                u.powi(kappa as i32)
            } else {
                u.conj().powi((-kappa) as i32)
            }
        }
    }
}

/// `x^{[kappa]}`: `x^kappa` for `kappa >= 0`, `conj(x)^{|kappa|}` otherwise.
pub fn signed_power(x: Complex64, kappa: i64) -> Complex64 {
    if kappa >= 0 {
        x.powi(kappa as i32)
    } else {
        x.conj().powi((-kappa) as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::zeta::zeta_f;

    #[test]
    fn zeta_one_matches_zeta() {
        for f in [LocalField::Real, LocalField::Complex] {
            let z = zeta_f(f, Complex64::new(1.0, 0.0)).unwrap();
            assert!((z.re - Conventions::new(f).zeta_one()).abs() < 1e-14);
        }
    }

    #[test]
    fn chi_examples() {
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(chi_power(LocalField::Real, 1, Complex64::new(-2.0, 0.0)).re, -1.0);
        assert!((chi_power(LocalField::Complex, 1, i * 3.0) - i).norm() < 1e-15);
        assert!((chi_power(LocalField::Complex, -1, i * 3.0) + i).norm() < 1e-15);
    }
}
