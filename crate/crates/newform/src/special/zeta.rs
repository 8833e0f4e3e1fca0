//! `zeta_F` and archimedean L-factors.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::repcore::{Component, ComponentKind, LocalField, Repr};
use crate::special::gamma::gamma_complex;

/// `zeta_R(s) = pi^{-s/2} Gamma(s/2)`, `zeta_C(s) = 2 (2 pi)^{-s} Gamma(s)`.
pub fn zeta_f(field: LocalField, s: Complex64) -> Result<Complex64> {
    match field {
        LocalField::Real => {
            let g = gamma_complex(s / 2.0).map_err(|_| Error::Pole { z: s })?;
            Ok(Complex64::new(PI, 0.0).powc(-s / 2.0) * g)
        }
        LocalField::Complex => {
            let g = gamma_complex(s).map_err(|_| Error::Pole { z: s })?;
            Ok(2.0 * Complex64::new(2.0 * PI, 0.0).powc(-s) * g)
        }
    }
}

/// `L(s, pi_j)` of one component.
pub fn component_l_factor(c: &Component, s: Complex64) -> Result<Complex64> {
    let z = s + c.t();
    match (c.field(), c.kind()) {
        (LocalField::Complex, _) => zeta_f(LocalField::Complex, z + c.kappa().abs() as f64 / 2.0),
        (LocalField::Real, ComponentKind::Character) => zeta_f(LocalField::Real, z + c.kappa() as f64),
        (LocalField::Real, ComponentKind::DiscreteSeries) => {
            zeta_f(LocalField::Complex, z + (c.kappa() - 1) as f64 / 2.0)
        }
    }
}

/// `L(s, pi) = prod_j L(s, pi_j)`.
pub fn l_factor(rep: &Repr, s: Complex64) -> Result<Complex64> {
    let mut out = Complex64::new(1.0, 0.0);
    for (index, c) in rep.components().iter().enumerate() {
        out *= component_l_factor(c, s).map_err(|_| Error::ComponentPole { index, s })?;
    }
    Ok(out)
}

/// `L(s, pi x pi')` for spherical `pi' = |.|^{t'_1} [+] ... [+] |.|^{t'_m}`.
pub fn rs_l_factor(rep: &Repr, sph: &Repr, s: Complex64) -> Result<Complex64> {
    if rep.field() != sph.field() {
        return Err(Error::Mismatch("Rankin-Selberg factor over different fields".into()));
    }
    if !sph.is_spherical() {
        return Err(Error::UnsupportedShape(
            "the second representation of a Rankin-Selberg factor must be spherical".into(),
        ));
    }
    let mut out = Complex64::new(1.0, 0.0);
    for c in sph.components() {
        out *= l_factor(rep, s + c.t())?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeta_at_one() {
        assert!((zeta_f(LocalField::Real, c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((zeta_f(LocalField::Complex, c(1.0, 0.0)).unwrap() - 1.0 / PI).norm() < 1e-14);
    }

    #[test]
    fn zeta_poles() {
        assert!(zeta_f(LocalField::Real, c(-2.0, 0.0)).is_err());
        assert!(zeta_f(LocalField::Real, c(-1.0, 0.0)).is_ok());
        assert!(zeta_f(LocalField::Complex, c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn pole_reports_component() {
        let rep: Repr = "R: chi^1 t=0 ; chi^0 t=0".parse().unwrap();
        match l_factor(&rep, c(0.0, 0.0)) {
            Err(Error::ComponentPole { index, .. }) => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn twist_rules() {
        let rep: Repr = "R: chi^1 t=0.1".parse().unwrap();
        let triv: Repr = "R: chi^0 t=0".parse().unwrap();
        let s = c(1.3, 0.4);
        assert_eq!(rs_l_factor(&rep, &triv, s).unwrap(), l_factor(&rep, s).unwrap());
        let bad: Repr = "R: chi^1 t=0".parse().unwrap();
        assert!(matches!(rs_l_factor(&rep, &bad, s), Err(Error::UnsupportedShape(_))));
    }
}
