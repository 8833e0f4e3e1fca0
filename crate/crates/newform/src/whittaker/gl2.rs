//! `GL_2` Whittaker newforms: closed forms and the Jacquet integral.
//!
//! In the Jacquet integral `W(g) = int_F f°(w u(x) g) conj(psi(x)) dx`
//! the bottom row of `M = w u(x) g` is `b = (g11 + x g21, g12 + x g22)`
//! and the Iwasawa factors of `M` are explicit: `a_2 = |b|`,
//! `a_1 = |det g| / |b|`, and the last column of `k` is
//! `(-zeta conj(b_1), b_2) / |b|` with `zeta = det M / |det M|`. The
//! integrand is then a polynomial in `b`, `conj b` times
//! `q^{-sigma}`, `q = |b|^2`, which continues analytically in `x` once
//! `conj b` is read as the conjugate-linear function of `x` it is on the
//! real line. The tails are moved below the real axis, where `conj psi`
//! decays exponentially.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::conventions::{chi_power, Conventions};
use crate::error::{Error, Result};
use crate::harmonics::{zonal, Degrees, NumPoly};
use crate::repcore::{Component, ComponentKind, LocalField, Repr};
use crate::special::bessel::bessel_k;
use crate::special::quad::{contour_line, integrate, Domain, Estimate, QuadratureSpec};
use crate::special::zeta::{component_l_factor, zeta_f};
use crate::whittaker::GroupPoint;

fn i_power(k: u64) -> Complex64 {
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)]
        [(k % 4) as usize]
}

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `c_j°`: 1 for a character, `i^kappa zeta_R(kappa) zeta_R(kappa + 1)`
/// for `D_kappa`.
pub fn block_constant(c: &Component) -> Result<Complex64> {
    match c.kind() {
        ComponentKind::Character => Ok(c64(1.0)),
        ComponentKind::DiscreteSeries => {
            let k = c.kappa() as f64;
            Ok(i_power(c.kappa() as u64) * zeta_f(LocalField::Real, c64(k))? * zeta_f(LocalField::Real, c64(k + 1.0))?)
        }
    }
}

/// `c° = prod_{j < l} i^{c(pi_l)} L(1 + t_j + ||kappa_j|| / d_F, contragredient pi_l)`,
/// with the two shifts `(kappa_j -+ 1) / 2` for a discrete-series `pi_j`.
pub fn canonical_constant(rep: &Repr) -> Result<Complex64> {
    let comps = rep.components();
    let mut out = c64(1.0);
    for (j, cj) in comps.iter().enumerate() {
        let shifts: Vec<Complex64> = match (cj.field(), cj.kind()) {
            (LocalField::Real, ComponentKind::Character) => vec![cj.t() + cj.kappa() as f64],
            (LocalField::Complex, _) => vec![cj.t() + cj.kappa().abs() as f64 / 2.0],
            (LocalField::Real, ComponentKind::DiscreteSeries) => {
                let h = (cj.kappa() - 1) as f64 / 2.0;
                vec![cj.t() + h, cj.t() + h + 1.0]
            }
        };
        for cl in &comps[j + 1..] {
            let dual = cl.contragredient();
            out *= i_power(cl.conductor());
            for s in &shifts {
                out *= component_l_factor(&dual, 1.0 + s)?;
            }
        }
    }
    Ok(out)
}

/// Central character on positive scalars `z`.
fn central_positive(rep: &Repr, z: f64) -> Complex64 {
    let abs = Conventions::new(rep.field()).abs(c64(z));
    rep.components().iter().map(|c| c64(abs).powc(c.t() * c.block_size() as f64)).product()
}

/// `omega_pi(z)` for `z` in `F^x`.
pub fn central_character(rep: &Repr, z: Complex64) -> Complex64 {
    let abs = Conventions::new(rep.field()).abs(z);
    rep.components()
        .iter()
        .map(|c| chi_power(rep.field(), c.kappa(), z) * c64(abs).powc(c.t() * c.block_size() as f64))
        .product()
}

fn check_rank2(rep: &Repr) -> Result<()> {
    if rep.rank() != 2 {
        return Err(Error::UnsupportedRank(format!("GL_2 Whittaker function needs n = 2, got {}", rep.rank())));
    }
    Ok(())
}

/// `W°(diag(y, 1))` from the K-Bessel and exponential closed forms.
pub fn whittaker_gl2_closed(rep: &Repr, y: Complex64) -> Result<Complex64> {
    check_rank2(rep)?;
    if y.norm() == 0.0 {
        return Err(Error::Domain("y must be nonzero".into()));
    }
    let comps = rep.components();
    match (rep.field(), comps.len()) {
        (LocalField::Real, 1) => {
            let c = &comps[0];
            let r = y.norm();
            Ok(c64(r).powc(c.t() + c.kappa() as f64 / 2.0) * (-2.0 * PI * r).exp())
        }
        (LocalField::Real, _) => {
            let (a, b) = (&comps[0], &comps[1]);
            let (k1, k2) = (a.kappa() as f64, b.kappa() as f64);
            let r = y.norm();
            let e = (a.t() + b.t() + 1.0 + k1 + k2) / 2.0;
            let nu = (a.t() - b.t() + k1 - k2) / 2.0;
            Ok(2.0 * c64(r).powc(e) * bessel_k(nu, 2.0 * PI * r)?)
        }
        (LocalField::Complex, _) => {
            let (a, b) = (&comps[0], &comps[1]);
            let (k1, k2) = (a.kappa().abs() as f64, b.kappa().abs() as f64);
            let abs = y.norm_sqr();
            let e = (a.t() + b.t() + 1.0) / 2.0 + (k1 + k2) / 4.0;
            let nu = a.t() - b.t() + (k1 - k2) / 2.0;
            Ok(4.0 * c64(abs).powc(e) * bessel_k(nu, 4.0 * PI * y.norm())?)
        }
    }
}

/// `W°(diag(a_1, a_2)) = omega(a_2) W°(diag(a_1 / a_2, 1))`.
pub fn whittaker_gl2_on_torus(rep: &Repr, a1: Complex64, a2: Complex64) -> Result<Complex64> {
    if a2.norm() == 0.0 {
        return Err(Error::Domain("torus entries must be nonzero".into()));
    }
    Ok(central_character(rep, a2) * whittaker_gl2_closed(rep, a1 / a2)?)
}

/// `W°(g)` for any `g`: Iwasawa plus closed form when `pi` is spherical,
/// the Jacquet integral otherwise.
pub fn whittaker_gl2(rep: &Repr, g: &GroupPoint, spec: &QuadratureSpec) -> Result<Estimate> {
    check_rank2(rep)?;
    if g.n() != 2 || g.field != rep.field() {
        return Err(Error::Mismatch("group point does not match the representation".into()));
    }
    if rep.is_spherical() {
        let iw = g.iwasawa();
        let psi = Conventions::new(rep.field()).psi_bar(iw.u[(0, 1)]).conj();
        let w = whittaker_gl2_closed(rep, c64(iw.a[0] / iw.a[1]))?;
        return Ok(Estimate::exact(psi * central_positive(rep, iw.a[1]) * w));
    }
    whittaker_gl2_jacquet(rep, g, spec)
}

/// The spherical `GL_2` Whittaker function in the `conj(psi)` model,
/// `W'(g) = W°(diag(-1, 1) g)`.
pub fn whittaker_dual_spherical(sph: &Repr, g: &GroupPoint) -> Result<Complex64> {
    if !sph.is_spherical() {
        return Err(Error::UnsupportedShape("dual Whittaker function needs a spherical representation".into()));
    }
    let eps = GroupPoint::diag(sph.field(), &[c64(-1.0), c64(1.0)])?;
    Ok(whittaker_gl2(sph, &eps.mul(g), &QuadratureSpec::default())?.value)
}

enum Shape {
    Characters { k1: i64, k2: i64 },
    Discrete { p: NumPoly },
}

struct JacquetIntegrand {
    field: LocalField,
    g: [Complex64; 4],
    prefactor: Complex64,
    sigma: Complex64,
    shape: Shape,
}

impl JacquetIntegrand {
    fn new(rep: &Repr, g: &GroupPoint) -> Result<Self> {
        let field = rep.field();
        let m = &g.matrix;
        let gm = [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]];
        let delta = -g.det();
        let abs_delta = Conventions::new(field).abs(delta);
        let comps = rep.components();
        let d = f64::from(field.degree());
        let (prefactor, sigma, shape) = if comps.len() == 1 {
            let c = &comps[0];
            let k = c.kappa();
            let p = zonal(LocalField::Real, 2, Degrees::Real(k as u32))?.compile();
            let pre = block_constant(c)? * c64(abs_delta).powc(c.t() + k as f64 / 2.0);
            (pre, c64(k as f64), Shape::Discrete { p })
        } else {
            let (a, b) = (&comps[0], &comps[1]);
            if a.t().re <= b.t().re {
                return Err(Error::Convergence(format!(
                    "Jacquet integral needs Re t_1 > Re t_2, got {} and {}",
                    a.t(),
                    b.t()
                )));
            }
            let (k1, k2) = (a.kappa(), b.kappa());
            let pre = canonical_constant(rep)? * chi_power(field, k1, delta) * c64(abs_delta).powc(0.5 + a.t());
            let sigma = d * (1.0 + a.t() - b.t()) / 2.0 + (k1.abs() + k2.abs()) as f64 / 2.0;
            (pre, sigma, Shape::Characters { k1, k2 })
        };
        Ok(Self { field, g: gm, prefactor, sigma, shape })
    }

    /// `f°(w u(x) g)` with `xc` standing for `conj x`.
    fn f(&self, x: Complex64, xc: Complex64) -> Complex64 {
        let [g11, g12, g21, g22] = self.g;
        let b1 = g11 + x * g21;
        let b2 = g12 + x * g22;
        let (b1c, b2c) = match self.field {
            LocalField::Real => (b1, b2),
            LocalField::Complex => (g11.conj() + xc * g21.conj(), g12.conj() + xc * g22.conj()),
        };
        let q = b1 * b1c + b2 * b2c;
        let body = match &self.shape {
            Shape::Characters { k1, k2 } => {
                let p1 = if *k1 >= 0 { (-b1c).powi(*k1 as i32) } else { (-b1).powi((-k1) as i32) };
                let p2 = if *k2 >= 0 { b2.powi(*k2 as i32) } else { b2c.powi((-k2) as i32) };
                p1 * p2 * q.powc(-self.sigma)
            }
            Shape::Discrete { p } => p.eval_unchecked(&[-b1, b2]) * q.powi(-(self.sigma.re as i32)),
        };
        self.prefactor * body
    }

    /// Centre of `q` as a quadratic in the real part of `x`, and the depth
    /// of its zeros. The cut of `q^{-sigma}` runs from `alpha - i beta`
    /// straight down.
    ///
    /// `q = |U + a V|^2` with `U = (g11, g12) + i im (g21, g22)` and
    /// `V = (g21, g22)`, so `q = A (a - alpha)^2 + A beta^2` where
    /// `A^2 beta^2 = |u_1 v_2 - u_2 v_1|^2 + Im(<U, V>)^2`.
    fn centre(&self, im: f64) -> (f64, f64) {
        let [g11, g12, g21, g22] = self.g;
        let i = Complex64::new(0.0, im);
        let (u1, u2) = (g11 + i * g21, g12 + i * g22);
        let a = g21.norm_sqr() + g22.norm_sqr();
        let inner = u1.conj() * g21 + u2.conj() * g22;
        let alpha = -inner.re / a;
        let beta = ((u1 * g22 - u2 * g21).norm_sqr() + inner.im * inner.im).sqrt() / a;
        (alpha, beta)
    }
}

/// Contour data `(shift, r)` for a cut at depth `beta`: the path runs at
/// depth `shift` between vertical rays at `+-r`. Staying within 1/2 of
/// the branch point picks up all but `e^{-pi d}` of the decay of the
/// character, so the pieces of the path do not cancel.
fn contour(beta: f64) -> (f64, f64) {
    let shift = (beta - 0.5).max(0.0);
    (shift, (beta - shift).max(1e-12))
}

/// The Jacquet integral of the canonically normalised induced newform.
pub fn whittaker_gl2_jacquet(rep: &Repr, g: &GroupPoint, spec: &QuadratureSpec) -> Result<Estimate> {
    check_rank2(rep)?;
    if g.n() != 2 || g.field != rep.field() {
        return Err(Error::Mismatch("group point does not match the representation".into()));
    }
    let f = JacquetIntegrand::new(rep, g)?;
    match rep.field() {
        LocalField::Real => {
            let (alpha, beta) = f.centre(0.0);
            let (shift, r) = contour(beta);
            contour_line(
                |w| {
                    let x = alpha + w - Complex64::new(0.0, shift);
                    f.f(x, x) * (Complex64::new(0.0, -2.0 * PI) * x).exp()
                },
                r,
                spec,
            )
        }
        LocalField::Complex => {
            let inner = |im: f64, spec: &QuadratureSpec| {
                let (alpha, beta) = f.centre(im);
                let (shift, r) = contour(beta);
                contour_line(
                    |w| {
                        let a = alpha + w - Complex64::new(0.0, shift);
                        let x = a + Complex64::new(0.0, im);
                        let xc = a - Complex64::new(0.0, im);
                        f.f(x, xc) * (Complex64::new(0.0, -4.0 * PI) * a).exp()
                    },
                    r,
                    spec,
                )
            };
            // Pieces far from the centre are tiny, so tolerances get an
            // absolute floor at the scale of the central slice.
            let scale = inner(0.0, &QuadratureSpec::de(1e-6).with_abs_tol(1e-300))
                .map(|e| e.value.norm())
                .unwrap_or(0.0)
                .max(1e-300);
            let inner_spec =
                QuadratureSpec { rel_tol: spec.rel_tol * 0.1, abs_tol: spec.rel_tol * 0.1 * scale, ..*spec };
            let spec = &QuadratureSpec { abs_tol: spec.abs_tol.max(spec.rel_tol * 0.1 * scale), ..*spec };
            let failure = std::cell::RefCell::new(None);
            let inner_err = std::cell::Cell::new(0.0f64);
            // the outer integrand varies on the scale of the central depth
            let width = f.centre(0.0).1.clamp(1e-6, 1.0);
            let outer = integrate(
                |v| {
                    let r = inner(width * v, &inner_spec);
                    match r {
                        Ok(e) => {
                            inner_err.set(inner_err.get().max(e.error));
                            e.value
                        }
                        Err(e) => {
                            failure.borrow_mut().get_or_insert(e);
                            Complex64::new(f64::NAN, 0.0)
                        }
                    }
                },
                Domain::Line,
                spec,
            );
            if let Some(e) = failure.into_inner() {
                return Err(e);
            }
            let outer = outer?;
            Ok(Estimate::new(2.0 * width * outer.value, 2.0 * width * outer.error))
        }
    }
}
