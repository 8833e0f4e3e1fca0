//! Local zeta integrals at `n <= 3`: Tate, Godement-Jacquet at `n = 1`,
//! Rankin-Selberg `GL_2 x GL_1`, `GL_2 x GL_2`, `GL_3 x GL_2`, and the
//! Fourier check behind the epsilon factor.

pub mod verify;

pub use verify::{
    run_check, verify_suite, Identity, Profile, ReportPoint, Tolerance, Verdict, VerificationReport, VerifyCheck,
    VerifyConfig,
};

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::harmonics::{zonal, zonal_product, Degrees};
use crate::invariants::{conductor_exponent, newform_dim};
use crate::repcore::{ComponentKind, LocalField, Repr};
use crate::special::quad::{fixed_rule, integrate, Domain, Estimate, QuadratureSpec};
use crate::special::zeta::rs_l_factor;
use crate::whittaker::gl2::{whittaker_dual_spherical, whittaker_gl2, whittaker_gl2_closed};
use crate::whittaker::propagate::{split_leading, Propagate3};
use crate::whittaker::units::{integrate_radial, integrate_units};
use crate::whittaker::{whittaker_gl1, GroupPoint};

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Options for the multi-dimensional integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaOptions {
    pub spec: QuadratureSpec,
    /// Level of fixed rules; errors are differences to `level - 1`.
    pub level: u32,
    /// Level of the inner `GL_3` propagation rule in the direct
    /// `GL_3 x GL_2` path.
    pub inner_level: u32,
    /// Node budget for the fixed-rule integrals.
    pub budget: u64,
}

impl Default for ZetaOptions {
    fn default() -> Self {
        Self { spec: QuadratureSpec::de(1e-11), level: 3, inner_level: 4, budget: 50_000_000 }
    }
}

/// `Re` of the argument of each component L-factor must be positive.
fn check_region(rep: &Repr, shift: Complex64, s: Complex64) -> Result<()> {
    for c in rep.components() {
        let norm = match (rep.field(), c.kind()) {
            (LocalField::Real, ComponentKind::Character) => c.kappa() as f64,
            (LocalField::Complex, _) => c.kappa().abs() as f64 / 2.0,
            (LocalField::Real, ComponentKind::DiscreteSeries) => (c.kappa() - 1) as f64 / 2.0,
        };
        if (s + shift + c.t()).re + norm <= 0.0 {
            return Err(Error::Convergence(format!("s = {s} is left of the convergence region")));
        }
    }
    Ok(())
}

fn spherical_shifts(sph: &Repr) -> Vec<Complex64> {
    sph.components().iter().map(|c| c.t()).collect()
}

fn check_pair(rep: &Repr, n: usize, sph: &Repr, m: usize) -> Result<()> {
    if rep.field() != sph.field() {
        return Err(Error::Mismatch("representations over different fields".into()));
    }
    if rep.rank() != n || sph.rank() != m {
        return Err(Error::UnsupportedRank(format!("expected ranks ({n}, {m}), got ({}, {})", rep.rank(), sph.rank())));
    }
    if !sph.is_spherical() {
        return Err(Error::UnsupportedShape("the second representation must be spherical".into()));
    }
    Ok(())
}

/// `int_{F^x} W°(x) W'°(x) Phi°(x) |x|^s d^x x` with
/// `Phi°(x) = conj(P°(x)) exp(-d pi |x|^2)`.
pub fn tate_integral(rep: &Repr, sph: &Repr, s: Complex64, spec: &QuadratureSpec) -> Result<Estimate> {
    check_pair(rep, 1, sph, 1)?;
    for t in spherical_shifts(sph) {
        check_region(rep, t, s)?;
    }
    let conv = Conventions::new(rep.field());
    let p = zonal_product(rep).compile();
    integrate_units(
        rep.field(),
        |x| {
            let w = whittaker_gl1(rep, x).unwrap_or(c64(f64::NAN));
            let w2 = whittaker_gl1(sph, x).unwrap_or(c64(f64::NAN));
            w * w2 * p.eval_unchecked(&[x]).conj() * conv.gaussian(&[x]) * c64(conv.abs(x)).powc(s)
        },
        spec,
    )
}

/// `Z(s, beta, Phi) = int_{F^x} beta(g) Phi(g) |g|^s d^x g` for
/// `beta = chi^kappa |.|^t` and `Phi(x) = conj(P°(x)) exp(-d pi |x|^2)`.
pub fn gj_integral(rep: &Repr, s: Complex64, spec: &QuadratureSpec) -> Result<Estimate> {
    if rep.rank() != 1 {
        return Err(Error::UnsupportedRank("Godement-Jacquet integrals are evaluated at n = 1".into()));
    }
    check_region(rep, c64(0.0), s)?;
    let conv = Conventions::new(rep.field());
    let p = zonal_product(rep).compile();
    let c = &rep.components()[0];
    integrate_units(
        rep.field(),
        |g| {
            let beta = crate::conventions::chi_power(rep.field(), c.kappa(), g) * c64(conv.abs(g)).powc(c.t());
            beta * p.eval_unchecked(&[g]).conj() * conv.gaussian(&[g]) * c64(conv.abs(g)).powc(s)
        },
        spec,
    )
}

/// `int_{F^x} W°(diag(g, 1)) W'°(g) |g|^{s - 1/2} d^x g`; `W°(diag(g,1))`
/// depends only on `|g|`, so the integral is radial.
pub fn rs_21(rep: &Repr, sph: &Repr, s: Complex64, spec: &QuadratureSpec) -> Result<Estimate> {
    check_pair(rep, 2, sph, 1)?;
    let tp = sph.components()[0].t();
    check_region(rep, tp, s)?;
    let conv = Conventions::new(rep.field());
    integrate_radial(
        rep.field(),
        |r| {
            let x = c64(r);
            let w = whittaker_gl2_closed(rep, x).unwrap_or(c64(f64::NAN));
            w * c64(conv.abs(x)).powc(tp + s - 0.5)
        },
        spec,
    )
}

/// `Phi° = dim(tau°) conj(P°) exp(-d pi |x|^2)` data for `n = 2` over `R`.
fn phi_data(rep: &Repr) -> Result<(f64, crate::harmonics::NumPoly, u32)> {
    let c = conductor_exponent(rep) as u32;
    let p = zonal(rep.field(), rep.rank(), Degrees::Real(c))?.compile();
    let dim = newform_dim(rep).to_f64().unwrap_or(f64::INFINITY);
    Ok((dim, p, c))
}

/// `int_{N \ GL_2} W°(g) W'°(g) Phi°(e_2 g) |det g|^s dg` over `R`.
///
/// With `g = a k`, `a = diag(y a_2, a_2)`, the `a_2` dependence is a power
/// times a Gaussian (central characters and homogeneity of `P°`), so
/// `a_2` is integrated on its own and the remaining `(y, k)` integral uses
/// a fixed rule in `y` and the exact trapezoid on `O(2)`.
pub fn rs_22(rep: &Repr, sph: &Repr, s: Complex64, opts: &ZetaOptions) -> Result<Estimate> {
    check_pair(rep, 2, sph, 2)?;
    if rep.field() != LocalField::Real {
        return Err(Error::UnsupportedShape("GL_2 x GL_2 integrals are evaluated over R only".into()));
    }
    for t in spherical_shifts(sph) {
        check_region(rep, t, s)?;
    }
    let (dim, p, c) = phi_data(rep)?;
    // trig-polynomial degree in theta is 2c; the trapezoid is exact above it
    let m = if rep.is_spherical() { 1 } else { 4 * c as usize + 4 };
    let y_rule = fixed_rule(Domain::HalfLine(0.0), opts.level);
    let needed = (y_rule.len() * 2 * m) as u64 * if rep.is_spherical() { 1 } else { 300 };
    if needed > opts.budget {
        return Err(Error::Budget { needed, budget: opts.budget });
    }
    let tsum: Complex64 = rep.components().iter().map(|c| c.t() * c.block_size() as f64).sum::<Complex64>()
        + sph.components().iter().map(|c| c.t()).sum::<Complex64>();
    // int_0^inf a^{T + 2s + c} exp(-pi a^2) d^x a; the four sign patterns
    // of a are folded into k
    let a2 = integrate(
        |v| {
            let a = v.exp();
            c64(a).powc(tsum + 2.0 * s + c as f64) * (-PI * a * a).exp()
        },
        Domain::Line,
        &opts.spec,
    )?;
    // W° values below 1e-13 do not affect the sum at the accuracy reached
    let spec = opts.spec.with_abs_tol(1e-13);
    let body = |level: u32| -> Result<Complex64> {
        let rule = fixed_rule(Domain::HalfLine(0.0), level);
        let mut total = c64(0.0);
        for &(y, wy) in &rule {
            // Below 1e-8 the integrand is O(y^{Re s - 1/2}) and the Jacquet
            // integral loses its digits to cancellation; above 1e3 W'° underflows.
            if !(1e-8..1e3).contains(&y) {
                continue;
            }
            let wp = whittaker_dual_spherical(sph, &GroupPoint::from_real(&[&[y, 0.0], &[0.0, 1.0]])?)?;
            if wp.norm() == 0.0 {
                continue;
            }
            let mut kint = c64(0.0);
            for refl in [1.0, -1.0] {
                for j in 0..m {
                    let th = 2.0 * PI * j as f64 / m as f64;
                    let (sn, cs) = th.sin_cos();
                    // k = r_theta diag(1, refl)
                    let k = [[cs, -sn * refl], [sn, cs * refl]];
                    let g = GroupPoint::from_real(&[&[y * k[0][0], y * k[0][1]], &[k[1][0], k[1][1]]])?;
                    let w = whittaker_gl2(rep, &g, &spec)?.value;
                    let phi = p.eval_real(&[k[1][0], k[1][1]]).conj();
                    kint += w * phi;
                }
            }
            kint /= (2 * m) as f64;
            // delta^{-1}(a) = 1 / y, d^x a_1 d^x a_2 = d^x y d^x a_2
            total += wy / y * kint * wp * c64(y).powc(s) / y;
        }
        Ok(total)
    };
    let fine = body(opts.level)?;
    let coarse = body(opts.level.saturating_sub(1))?;
    let scale = 4.0 * dim * a2.value;
    Ok(Estimate::new(fine * scale, (fine - coarse).norm() * scale.norm() + (fine * 4.0 * dim).norm() * a2.error))
}

/// Both evaluations of the `GL_3 x GL_2` integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rs32Outcome {
    /// `rs_22(pi_0, pi', s) L(s, pi_1 x pi')`.
    pub reduction: Estimate,
    /// Outer torus integral of propagated `GL_3` values, when requested.
    pub direct: Option<Estimate>,
}

/// `int_{N_2 \ GL_2} W°(diag(g, 1)) W'°(g) |det g|^{s - 1/2} dg` over `R`
/// for `pi = chi^kappa |.|^t [+] pi_0` with `pi_0` spherical.
pub fn rs_32(rep: &Repr, sph: &Repr, s: Complex64, opts: &ZetaOptions, direct: bool) -> Result<Rs32Outcome> {
    check_pair(rep, 3, sph, 2)?;
    if rep.field() != LocalField::Real {
        return Err(Error::UnsupportedShape("GL_3 x GL_2 integrals are evaluated over R only".into()));
    }
    let first = &rep.components()[0];
    if first.kind() != ComponentKind::Character {
        return Err(Error::UnsupportedShape("GL_3 x GL_2 needs a leading character".into()));
    }
    let rep0 = rep.tail().ok_or_else(|| Error::UnsupportedRank("missing GL_2 part".into()))?;
    if !rep0.is_spherical() {
        return Err(Error::UnsupportedShape("GL_3 x GL_2 needs a spherical GL_2 part".into()));
    }
    let pi1 = Repr::new(rep.field(), vec![*first])?;
    let reduction = rs_22(&rep0, sph, s, opts)?.scale(rs_l_factor(&pi1, sph, s)?);
    let direct = if direct { Some(rs_32_direct(rep, sph, s, opts)?) } else { None };
    Ok(Rs32Outcome { reduction, direct })
}

/// `4 int_{a > 0} W°(diag(a_1, a_2, 1)) W'°(a) (a_1 a_2)^{s - 1/2} delta^{-1}(a) d^x a`.
fn rs_32_direct(rep: &Repr, sph: &Repr, s: Complex64, opts: &ZetaOptions) -> Result<Estimate> {
    for t in spherical_shifts(sph) {
        check_region(rep, t, s)?;
    }
    let (e, rep0) = split_leading(rep)?;
    let outer = fixed_rule(Domain::HalfLine(0.0), opts.level);
    let inner_nodes = fixed_rule(Domain::HalfLine(0.0), opts.inner_level).len() as u64;
    let needed = (outer.len() as u64).pow(2) * inner_nodes * inner_nodes;
    if needed > opts.budget * 1000 {
        return Err(Error::Budget { needed, budget: opts.budget * 1000 });
    }
    let prop = Propagate3::new(&rep0, e, opts.inner_level)?;
    let prop_coarse = Propagate3::new(&rep0, e, opts.inner_level - 1)?;
    let tsph: Complex64 = sph.components().iter().map(|c| c.t()).sum();
    let body = |level: u32, prop: &Propagate3| -> Result<Complex64> {
        let rule = fixed_rule(Domain::HalfLine(0.0), level);
        let mut total = c64(0.0);
        for &(a1, w1) in &rule {
            for &(a2, w2) in &rule {
                let y = a1 / a2;
                // W'°(a) = a_2^{t'_1 + t'_2} W'°(diag(y, 1)); both factors
                // decay exponentially in y and in 1/a_2, a_2.
                if !(1e-8..1e8).contains(&y) || !(1e-4..1e4).contains(&a2) {
                    continue;
                }
                let wp = c64(a2).powc(tsph) * whittaker_gl2_closed(sph, c64(y))?;
                if wp.norm() < 1e-300 {
                    continue;
                }
                let g = GroupPoint::from_real(&[&[a1, 0.0], &[0.0, a2]])?;
                let w = prop.eval(&g);
                total += w1 / a1 * w2 / a2 * w * wp * c64(a1 * a2).powc(s - 0.5) * (a2 / a1);
            }
        }
        Ok(4.0 * total)
    };
    let fine = body(opts.level, &prop)?;
    let coarse_outer = body(opts.level - 1, &prop)?;
    let coarse_inner = body(opts.level, &prop_coarse)?;
    Ok(Estimate::new(fine, (fine - coarse_outer).norm() + (fine - coarse_inner).norm()))
}

/// `i^{c(pi)} Phi^(y)` against `Phi~(y)` at `n = 1`, where
/// `Phi^(y) = int_F Phi(x) conj(psi(x y)) dx` and
/// `Phi~(y) = conj(P°(conj y)) exp(-d pi |y|^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierCheck {
    pub lhs: Estimate,
    pub rhs: Complex64,
    pub residual: f64,
}

pub fn epsilon_fourier_check(rep: &Repr, y: Complex64, spec: &QuadratureSpec) -> Result<FourierCheck> {
    if rep.rank() != 1 {
        return Err(Error::UnsupportedRank("the Fourier check is implemented at n = 1".into()));
    }
    let field = rep.field();
    let conv = Conventions::new(field);
    let p = zonal_product(rep).compile();
    let phi = |x: Complex64| p.eval_unchecked(&[x]).conj() * conv.gaussian(&[x]);
    let hat = match field {
        LocalField::Real => integrate(|x| phi(c64(x)) * conv.psi_bar(c64(x) * y), Domain::Line, spec)?,
        LocalField::Complex => {
            // dx = 2 dx_1 dx_2, and the Gaussian makes each slice entire
            let failure = std::cell::RefCell::new(None);
            let outer = integrate(
                |b| match integrate(
                    |a| {
                        let x = Complex64::new(a, b);
                        phi(x) * conv.psi_bar(x * y)
                    },
                    Domain::Line,
                    &QuadratureSpec { abs_tol: 1e-16, ..*spec },
                ) {
                    Ok(e) => e.value,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        c64(f64::NAN)
                    }
                },
                Domain::Line,
                &QuadratureSpec { abs_tol: 1e-15, ..*spec },
            );
            if let Some(e) = failure.into_inner() {
                return Err(e);
            }
            outer?.scale(c64(2.0))
        }
    };
    let c = conductor_exponent(rep);
    let ic = [c64(1.0), Complex64::new(0.0, 1.0), c64(-1.0), Complex64::new(0.0, -1.0)][(c % 4) as usize];
    let lhs = hat.scale(ic);
    let rhs = p.eval_unchecked(&[y.conj()]).conj() * conv.gaussian(&[y]);
    Ok(FourierCheck { lhs, rhs, residual: (lhs.value - rhs).norm() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::zeta::{l_factor, zeta_f};

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn tate_and_gj() {
        let spec = QuadratureSpec::de(1e-12);
        let triv_r: Repr = "R: chi^0 t=0".parse().unwrap();
        let v = tate_integral(&triv_r, &triv_r, c64(1.0), &spec).unwrap().value;
        assert!((v - 1.0).norm() < 1e-10);
        let rep: Repr = "C: chi^3 t=0".parse().unwrap();
        let triv_c: Repr = "C: chi^0 t=0".parse().unwrap();
        let v = tate_integral(&rep, &triv_c, c64(2.0), &spec).unwrap().value;
        assert!(rel(v, zeta_f(LocalField::Complex, c64(3.5)).unwrap()) < 1e-8);
        let rep: Repr = "C: chi^-2 t=0".parse().unwrap();
        let v = gj_integral(&rep, c64(1.5), &spec).unwrap().value;
        assert!(rel(v, l_factor(&rep, c64(1.5)).unwrap()) < 1e-8);
    }

    #[test]
    fn rs_21_examples() {
        let spec = QuadratureSpec::de(1e-11);
        for (d, sph) in [
            ("R: chi^0 t=0.3 ; chi^0 t=-0.2", "R: chi^0 t=0"),
            ("R: D^3 t=0.1", "R: chi^0 t=0.2"),
            ("C: chi^1 t=0.2 ; chi^-1 t=-0.1", "C: chi^0 t=0"),
        ] {
            let rep: Repr = d.parse().unwrap();
            let sph: Repr = sph.parse().unwrap();
            let s = c64(1.3);
            let v = rs_21(&rep, &sph, s, &spec).unwrap().value;
            assert!(rel(v, rs_l_factor(&rep, &sph, s).unwrap()) < 1e-8, "{d}");
        }
    }

    #[test]
    fn fourier_check() {
        let spec = QuadratureSpec::de(1e-10);
        for (d, y) in [
            ("R: chi^1 t=0", c64(0.7)),
            ("R: chi^0 t=0.3", c64(-0.4)),
            ("C: chi^2 t=0", Complex64::new(0.3, -0.5)),
            ("C: chi^-1 t=0.1", Complex64::new(-0.6, 0.2)),
        ] {
            let rep: Repr = d.parse().unwrap();
            let out = epsilon_fourier_check(&rep, y, &spec).unwrap();
            assert!(out.residual < 1e-8, "{d}: {out:?}");
        }
    }

    #[test]
    fn rs_22_and_reduction() {
        let opts = ZetaOptions { level: 2, ..ZetaOptions::default() };
        let s = c64(1.5);
        let sph: Repr = "R: chi^0 t=0.1 ; chi^0 t=-0.2".parse().unwrap();
        for d in ["R: chi^0 t=0.3 ; chi^0 t=-0.1", "R: D^3 t=0"] {
            let rep: Repr = d.parse().unwrap();
            let v = rs_22(&rep, &sph, s, &opts).unwrap().value;
            assert!(rel(v, rs_l_factor(&rep, &sph, s).unwrap()) < 1e-6, "{d}");
        }
        let rep: Repr = "R: chi^1 t=0.2 ; chi^0 t=0.1 ; chi^0 t=-0.1".parse().unwrap();
        let out = rs_32(&rep, &sph, s, &opts, false).unwrap();
        assert!(rel(out.reduction.value, rs_l_factor(&rep, &sph, s).unwrap()) < 1e-6);
        let rep: Repr = "R: D^2 t=0 ; chi^0 t=0".parse().unwrap();
        assert!(matches!(rs_32(&rep, &sph, s, &opts, false), Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn region_guard() {
        let rep: Repr = "R: chi^0 t=0".parse().unwrap();
        assert!(matches!(tate_integral(&rep, &rep, c64(-0.1), &QuadratureSpec::default()), Err(Error::Convergence(_))));
    }
}
