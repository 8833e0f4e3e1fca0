//! `W°(diag(g, 1))` from a Whittaker function of `GL_{n-1}`:
//!
//! `W°(diag(g,1)) = |det g|^{e + (n-1)/2} int_{GL_{n-1}} W_0(h) Phi_1(h^{-1} g)
//! Phi_0(e_{n-1} h) |det h|^{-e - n/2 + 1} dh`
//!
//! with `Phi_1 = exp(-d pi Tr x conj(x)^t)` and
//! `Phi_0 = dim(tau_0°) conj(P_0°(x)) exp(-d pi |x|^2)`. For a leading
//! character `chi^kappa |.|^t`, `e = t + ||kappa|| / d` and `W_0` is the
//! newform of the tail; for a leading `D_kappa (x) |det|^t`,
//! `e = t + (kappa - 1) / 2` and `W_0` is the newform of
//! `|.|^{t + (kappa + 1)/2} [+] tail`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::harmonics::zonal_product;
use crate::repcore::{Component, ComponentKind, LocalField, Repr};
use crate::special::quad::{fixed_rule, gauss_legendre, Domain, Estimate, QuadratureSpec};
use crate::whittaker::gl2::whittaker_gl2_closed;
use crate::whittaker::units::integrate_units;
use crate::whittaker::{whittaker_gl1, GroupPoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagateOptions {
    /// Adaptive rule for the one-variable integral at `n = 2`.
    pub spec: QuadratureSpec,
    /// Level of the fixed tensor rule at `n = 3`; the error estimate is the
    /// difference to `level - 1`.
    pub level: u32,
}

impl Default for PropagateOptions {
    fn default() -> Self {
        Self { spec: QuadratureSpec::de(1e-10), level: 4 }
    }
}

/// The exponent `e` and the auxiliary `GL_{n-1}` representation.
pub fn split_leading(rep: &Repr) -> Result<(Complex64, Repr)> {
    let comps = rep.components();
    let field = rep.field();
    let first = &comps[0];
    let rest: Vec<Component> = comps[1..].to_vec();
    match first.kind() {
        ComponentKind::Character => {
            let norm = match field {
                LocalField::Real => first.kappa() as f64,
                LocalField::Complex => first.kappa().abs() as f64 / 2.0,
            };
            if rest.is_empty() {
                return Err(Error::UnsupportedRank("propagation needs n >= 2".into()));
            }
            Ok((first.t() + norm, Repr::new(field, rest)?))
        }
        ComponentKind::DiscreteSeries => {
            let k = first.kappa() as f64;
            let star = Component::character(field, 0, first.t() + (k + 1.0) / 2.0)?;
            let mut comps0 = vec![star];
            comps0.extend(rest);
            Ok((first.t() + (k - 1.0) / 2.0, Repr::new(field, comps0)?))
        }
    }
}

pub fn whittaker_propagate(rep: &Repr, g: &GroupPoint, opts: &PropagateOptions) -> Result<Estimate> {
    let n = rep.rank();
    if g.field != rep.field() || g.n() + 1 != n {
        return Err(Error::Mismatch("propagation needs g in GL_{n-1} over the same field".into()));
    }
    match n {
        2 => propagate_2(rep, g.matrix[(0, 0)], &opts.spec),
        3 => propagate_3(rep, g, opts.level),
        _ => Err(Error::UnsupportedRank(format!("propagation is implemented for n = 2, 3, got {n}"))),
    }
}

fn propagate_2(rep: &Repr, g: Complex64, spec: &QuadratureSpec) -> Result<Estimate> {
    let field = rep.field();
    let conv = Conventions::new(field);
    let (e, rep0) = split_leading(rep)?;
    let p0 = zonal_product(&rep0).compile();
    let d = conv.d();
    let integral = integrate_units(
        field,
        |h| {
            let w0 = whittaker_gl1(&rep0, h).unwrap_or(Complex64::new(f64::NAN, 0.0));
            let phi1 = (-d * PI * (g / h).norm_sqr()).exp();
            let phi0 = p0.eval_unchecked(&[h]).conj() * (-d * PI * h.norm_sqr()).exp();
            w0 * phi1 * phi0 * Complex64::new(conv.abs(h), 0.0).powc(-e)
        },
        spec,
    )?;
    let pre = Complex64::new(conv.abs(g), 0.0).powc(e + 0.5);
    Ok(integral.scale(pre))
}

/// `n = 3` over `R` with `W_0` spherical, so `W_0(u a k) = psi(u) W_0(a)`
/// and the `K_2` integral drops out. Writing `h = u a k` with `a > 0` (the
/// signs of `a` are absorbed into `k`),
///
/// `int = 4 int_{a > 0} W_0(a) (a_1 a_2)^{-e-1/2} (a_2 / a_1) exp(-pi a_2^2)
///   exp(-pi |g_2|^2 / a_2^2) int_R psi(u) exp(-pi |g_1 - u g_2|^2 / a_1^2) du d^x a`
///
/// where `g_1`, `g_2` are the rows of `g`.
fn propagate_3(rep: &Repr, g: &GroupPoint, level: u32) -> Result<Estimate> {
    if rep.field() != LocalField::Real {
        return Err(Error::UnsupportedShape("n = 3 propagation is implemented over R only".into()));
    }
    let (e, rep0) = split_leading(rep)?;
    if !rep0.is_spherical() {
        return Err(Error::UnsupportedShape(
            "n = 3 propagation needs a spherical GL_2 part (after the discrete-series shift)".into(),
        ));
    }
    let fine = Propagate3::new(&rep0, e, level)?.eval(g);
    let coarse = Propagate3::new(&rep0, e, level.saturating_sub(1))?.eval(g);
    Ok(Estimate::new(fine, (fine - coarse).norm()))
}

/// Fixed-rule data for `n = 3`, reusable across many `g`.
pub struct Propagate3 {
    e: Complex64,
    nodes: Vec<(f64, f64)>,
    /// `w_j W_0(diag(a_i, a_j)) (a_i a_j)^{-e-1/2} / a_i^2` on the node grid.
    w0: Vec<Complex64>,
    gauss: std::sync::Arc<(Vec<f64>, Vec<f64>)>,
}

/// Half-width of the Gaussian window in the `u` integral.
const U_WINDOW: f64 = 7.0;

impl Propagate3 {
    pub fn new(rep0: &Repr, e: Complex64, level: u32) -> Result<Self> {
        let nodes = fixed_rule(Domain::HalfLine(0.0), level);
        let mut w0 = Vec::with_capacity(nodes.len() * nodes.len());
        let t: Complex64 = rep0.components().iter().map(|c| c.t()).sum();
        for &(a1, _) in &nodes {
            for &(a2, w2) in &nodes {
                let w = whittaker_gl2_closed(rep0, Complex64::new(a1 / a2, 0.0))?;
                let det = Complex64::new(a1 * a2, 0.0).powc(-e - 0.5);
                let v = w2 / (a1 * a1) * Complex64::new(a2, 0.0).powc(t) * w * det;
                // extreme nodes, where the weights underflow
                w0.push(if v.is_finite() { v } else { Complex64::new(0.0, 0.0) });
            }
        }
        Ok(Self { e, nodes, w0, gauss: gauss_legendre(16 << level) })
    }

    /// `int_R psi(u) exp(-pi |g_1 - u g_2|^2 / a_1^2) du`.
    fn u_integral(&self, g1: [f64; 2], g2: [f64; 2], a1: f64) -> Complex64 {
        let n2 = g2[0] * g2[0] + g2[1] * g2[1];
        let c = (g1[0] * g2[0] + g1[1] * g2[1]) / n2;
        let m = (g1[0] - c * g2[0]).powi(2) + (g1[1] - c * g2[1]).powi(2);
        let omega = a1 / n2.sqrt();
        // The transform is below e^{-pi omega^2}; beyond the rule's resolution
        // it is dropped.
        if omega > 6.0 {
            return Complex64::new(0.0, 0.0);
        }
        let (x, w) = (&self.gauss.0, &self.gauss.1);
        let mut s = Complex64::new(0.0, 0.0);
        for (xi, wi) in x.iter().zip(w) {
            let v = U_WINDOW * xi;
            s += wi * (-PI * v * v).exp() * Complex64::from_polar(1.0, 2.0 * PI * (c + omega * v));
        }
        s * U_WINDOW * omega * (-PI * m / (a1 * a1)).exp()
    }

    pub fn eval(&self, g: &GroupPoint) -> Complex64 {
        let m = &g.matrix;
        let g1 = [m[(0, 0)].re, m[(0, 1)].re];
        let g2 = [m[(1, 0)].re, m[(1, 1)].re];
        let g2sq = g2[0] * g2[0] + g2[1] * g2[1];
        let k = self.nodes.len();
        let mut total = Complex64::new(0.0, 0.0);
        for (i, &(a1, w1)) in self.nodes.iter().enumerate() {
            let u = self.u_integral(g1, g2, a1);
            if u.norm() == 0.0 {
                continue;
            }
            let mut row = Complex64::new(0.0, 0.0);
            for (j, &(a2, _)) in self.nodes.iter().enumerate() {
                let gauss = (-PI * (a2 * a2 + g2sq / (a2 * a2))).exp();
                if gauss == 0.0 {
                    continue;
                }
                row += self.w0[i * k + j] * gauss;
            }
            total += w1 * u * row;
        }
        let det_g = g.det().re.abs();
        4.0 * Complex64::new(det_g, 0.0).powc(self.e + 1.0) * total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whittaker::gl2::whittaker_gl2_closed;

    fn c64(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn n2_matches_closed_forms() {
        let opts = PropagateOptions::default();
        for d in [
            "R: chi^0 t=0.4 ; chi^0 t=-0.4",
            "R: chi^1 t=0.3 ; chi^0 t=-0.1",
            "R: chi^0 t=0.2 ; chi^1 t=0.1",
            "R: D^3 t=0.1",
            "R: D^2 t=0",
            "C: chi^1 t=0.25 ; chi^-1 t=-0.25",
            "C: chi^2 t=0.1 ; chi^0 t=0",
        ] {
            let rep: Repr = d.parse().unwrap();
            for y in [0.4, 1.0, -2.1] {
                let g = GroupPoint::diag(rep.field(), &[c64(y)]).unwrap();
                let p = whittaker_propagate(&rep, &g, &opts).unwrap().value;
                let c = whittaker_gl2_closed(&rep, c64(y)).unwrap();
                assert!((p - c).norm() < 1e-8 * c.norm(), "{d} y={y}: {p} vs {c}");
            }
        }
    }

    #[test]
    fn n3_levels_agree() {
        let rep: Repr = "R: chi^0 t=0.3 ; chi^0 t=0.1 ; chi^0 t=-0.2".parse().unwrap();
        let g = GroupPoint::from_real(&[&[0.8, 0.3], &[-0.2, 1.1]]).unwrap();
        let w = whittaker_propagate(&rep, &g, &PropagateOptions::default()).unwrap();
        assert!(w.error < 1e-6 * w.value.norm(), "{w:?}");
    }

    #[test]
    fn n3_rejects_ramified_inner() {
        let rep: Repr = "R: chi^0 t=0.3 ; chi^1 t=0.1 ; chi^0 t=-0.2".parse().unwrap();
        let g = GroupPoint::identity(LocalField::Real, 2);
        assert!(matches!(whittaker_propagate(&rep, &g, &PropagateOptions::default()), Err(Error::UnsupportedShape(_))));
    }
}
