//! `int W°(h g) Phi(g) |det g|^{s + (n-1)/2} dg = L(s, pi) W°(h)` with
//! `Phi(x) = dim(tau°) conj(P°(e_n x)) exp(-d pi Tr x conj(x)^t)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::harmonics::zonal_product;
use crate::repcore::{LocalField, Repr};
use crate::special::quad::{fixed_rule, integrate_lenient, Domain, Estimate, QuadratureSpec};
use crate::special::zeta::l_factor;
use crate::whittaker::gl2::whittaker_gl2;
use crate::whittaker::units::integrate_units;
use crate::whittaker::{whittaker_gl1, GroupPoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PieriOutcome {
    pub lhs: Estimate,
    pub rhs: Complex64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PieriOptions {
    pub spec: QuadratureSpec,
    /// Fixed-rule level for `n = 2`.
    pub level: u32,
    /// Largest number of integrand evaluations allowed.
    pub budget: u64,
}

impl Default for PieriOptions {
    fn default() -> Self {
        Self { spec: QuadratureSpec::de(1e-12), level: 2, budget: 20_000_000 }
    }
}

fn check_region(rep: &Repr, s: Complex64) -> Result<()> {
    for c in rep.components() {
        if (s + c.t()).re <= 0.0 {
            return Err(Error::Convergence(format!("needs Re(s) > -Re(t_j); s = {s}, t_j = {}", c.t())));
        }
    }
    Ok(())
}

pub fn pieri_residual(rep: &Repr, s: Complex64, h: &GroupPoint, opts: &PieriOptions) -> Result<PieriOutcome> {
    if h.field != rep.field() || h.n() != rep.rank() {
        return Err(Error::Mismatch("h must lie in GL_n over the field of the representation".into()));
    }
    check_region(rep, s)?;
    let (lhs, w_h) = match rep.rank() {
        1 => pieri_1(rep, s, h.matrix[(0, 0)], &opts.spec)?,
        2 => pieri_2(rep, s, h, opts)?,
        n => return Err(Error::TooLarge(format!("convolution sections are integrated for n <= 2, got {n}"))),
    };
    let rhs = l_factor(rep, s)? * w_h;
    Ok(PieriOutcome { lhs, rhs, residual: (lhs.value - rhs).norm() })
}

fn pieri_1(rep: &Repr, s: Complex64, h: Complex64, spec: &QuadratureSpec) -> Result<(Estimate, Complex64)> {
    let conv = Conventions::new(rep.field());
    let p = zonal_product(rep).compile();
    let lhs = integrate_units(
        rep.field(),
        |g| {
            let w = whittaker_gl1(rep, h * g).unwrap_or(Complex64::new(f64::NAN, 0.0));
            let phi = p.eval_unchecked(&[g]).conj() * conv.gaussian(&[g]);
            w * phi * Complex64::new(conv.abs(g), 0.0).powc(s)
        },
        spec,
    )?;
    Ok((lhs, whittaker_gl1(rep, h)?))
}

/// `g = u a k` with `a > 0`; the four sign patterns of `a` fold into `k`,
/// and for spherical `pi` both `W°(h u a k)` and `Phi(u a k)` are
/// independent of `k`.
fn pieri_2(rep: &Repr, s: Complex64, h: &GroupPoint, opts: &PieriOptions) -> Result<(Estimate, Complex64)> {
    if rep.field() != LocalField::Real || !rep.is_spherical() {
        return Err(Error::TooLarge(
            "n = 2 convolution sections are integrated for spherical representations over R only".into(),
        ));
    }
    let a_rule = fixed_rule(Domain::HalfLine(0.0), opts.level);
    let needed = (a_rule.len() * a_rule.len()) as u64 * 200;
    if needed > opts.budget {
        return Err(Error::Budget { needed, budget: opts.budget });
    }
    let spec = QuadratureSpec::default();
    let inner_spec = QuadratureSpec::de(1e-9).with_abs_tol(1e-16).with_max_level(7);
    // The u integral is adaptive in v = u a_2, where Phi is exp(-pi v^2).
    let eval = |level: u32| -> Result<Complex64> {
        let a_rule = fixed_rule(Domain::HalfLine(0.0), level);
        let mut total = Complex64::new(0.0, 0.0);
        for &(a1, w1) in &a_rule {
            for &(a2, w2) in &a_rule {
                let gauss = (-PI * (a1 * a1 + a2 * a2)).exp();
                // Tail nodes. Below 1e-10 the integrand is a positive power of
                // a (inside the convergence region) and det(h u a) is lost to
                // cancellation.
                if !(gauss > 0.0) || a1.min(a2) < 1e-10 {
                    continue;
                }
                let failure = std::cell::RefCell::new(None);
                let u = integrate_lenient(
                    |v| {
                        if v.abs() > 30.0 {
                            return Complex64::new(0.0, 0.0);
                        }
                        let g = GroupPoint::from_real(&[&[a1, v], &[0.0, a2]]);
                        match g.and_then(|g| whittaker_gl2(rep, &h.mul(&g), &spec)) {
                            Ok(w) => w.value * (-PI * v * v).exp(),
                            Err(e) => {
                                failure.borrow_mut().get_or_insert(e);
                                Complex64::new(0.0, 0.0)
                            }
                        }
                    },
                    Domain::Line,
                    &inner_spec,
                )?;
                if let Some(e) = failure.into_inner() {
                    return Err(e);
                }
                let det = Complex64::new(a1 * a2, 0.0).powc(s + 0.5);
                // du = dv / a_2, delta^{-1}(a) d^x a_1 d^x a_2
                total += w1 * w2 * u.value / a2 * gauss * det * (a2 / a1) / (a1 * a2);
            }
        }
        Ok(4.0 * total)
    };
    let fine = eval(opts.level)?;
    let coarse = eval(opts.level.saturating_sub(1))?;
    Ok((Estimate::new(fine, (fine - coarse).norm()), whittaker_gl2(rep, h, &spec)?.value))
}
