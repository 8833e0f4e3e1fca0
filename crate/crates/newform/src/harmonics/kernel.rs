//! Numerical checks of the reproducing-kernel property of `P°` and of
//! Hecke's identity.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::dims::{dim_harmonics, Degrees};
use crate::harmonics::haar::{haar_sample, CompactGroupElement};
use crate::harmonics::poly::Poly;
use crate::harmonics::zonal::zonal;
use crate::repcore::{GroupKind, LocalField};
use crate::special::quad::{gauss_legendre, integrate, Domain, QuadratureSpec};

/// A residual with the accuracy of the numerical integral behind it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub residual: f64,
    /// Quadrature error estimate, or one standard error for Monte-Carlo.
    pub error: f64,
    pub monte_carlo: bool,
}

fn check_space(field: LocalField, n: usize, degrees: Degrees, p: &Poly) -> Result<()> {
    if p.field() != field || p.n() != n {
        return Err(Error::Mismatch("polynomial lives on a different space".into()));
    }
    if !p.is_zero() && p.degrees() != Some(degrees) {
        return Err(Error::Domain("polynomial is not homogeneous of the given degree".into()));
    }
    if !p.is_harmonic() {
        return Err(Error::Domain("polynomial is not harmonic".into()));
    }
    Ok(())
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Exact quadrature over `K` for `O(1)`, `U(1)`, `O(2)` and `U(2)`:
/// a list of `(k, weight)` with weights summing to 1.
fn exact_rule(group: GroupKind, n: usize, degree: usize) -> Option<Vec<(CompactGroupElement, f64)>> {
    let m = 2 * degree + 2;
    let angles: Vec<f64> = (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect();
    let mk = |rows: Vec<Vec<Complex64>>| CompactGroupElement {
        group,
        matrix: nalgebra::DMatrix::from_fn(rows.len(), rows.len(), |i, j| rows[i][j]),
    };
    match (group, n) {
        (GroupKind::Orthogonal, 1) => Some(vec![(mk(vec![vec![c(1.0)]]), 0.5), (mk(vec![vec![c(-1.0)]]), 0.5)]),
        (GroupKind::Unitary, 1) => {
            Some(angles.iter().map(|&t| (mk(vec![vec![Complex64::from_polar(1.0, t)]]), 1.0 / m as f64)).collect())
        }
        (GroupKind::Orthogonal, 2) => {
            let mut out = Vec::new();
            for &t in &angles {
                let (s, co) = t.sin_cos();
                let w = 0.5 / m as f64;
                out.push((mk(vec![vec![c(co), c(s)], vec![c(-s), c(co)]]), w));
                out.push((mk(vec![vec![c(co), c(-s)], vec![c(-s), c(-co)]]), w));
            }
            Some(out)
        }
        (GroupKind::Unitary, 2) => {
            let gl = gauss_legendre(degree + 2);
            let mut out = Vec::new();
            for (&x, &wt) in gl.0.iter().zip(&gl.1) {
                let t = 0.5 * (x + 1.0);
                let (ct, st) = ((1.0 - t).sqrt(), t.sqrt());
                for &phi in &angles {
                    for &x1 in &angles {
                        for &x2 in &angles {
                            let e = Complex64::from_polar(1.0, phi);
                            let a = Complex64::from_polar(ct, x1);
                            let b = Complex64::from_polar(st, x2);
                            let w = 0.5 * wt / (m * m * m) as f64;
                            out.push((mk(vec![vec![e * a, e * b], vec![-e * b.conj(), e * a.conj()]]), w));
                        }
                    }
                }
            }
            Some(out)
        }
        _ => None,
    }
}

/// `|P(z) - dim tau int_K P(e_n k^{-1}) P°(z k) dk|`.
///
/// The `K` integral is exact for `O(1)`, `U(1)`, `O(2)`, `U(2)` and
/// Monte-Carlo with `samples` Haar points (seeded) otherwise.
pub fn reproducing_residual(
    field: LocalField,
    n: usize,
    degrees: Degrees,
    p: &Poly,
    point: &[Complex64],
    samples: usize,
    seed: u64,
) -> Result<Residual> {
    check_space(field, n, degrees, p)?;
    if point.len() != n {
        return Err(Error::Domain("point dimension does not match n".into()));
    }
    let pnum = p.compile();
    let zon = zonal(field, n, degrees)?.compile();
    let dim = dim_harmonics(field, n, degrees)?.to_f64().unwrap();
    let lhs = pnum.eval_unchecked(point);
    let group = field.group();
    let integrand = |k: &CompactGroupElement| -> Complex64 {
        pnum.eval_unchecked(&k.last_row_of_inverse()) * zon.eval_unchecked(&k.act_row(point))
    };
    if degrees.total() == 0 {
        let v = pnum.eval_unchecked(point);
        let rhs = dim * v;
        return Ok(Residual { residual: (lhs - rhs).norm(), error: 0.0, monte_carlo: false });
    }
    if let Some(rule) = exact_rule(group, n, degrees.total() as usize) {
        let integral: Complex64 = rule.iter().map(|(k, w)| integrand(k) * *w).sum();
        let rhs = dim * integral;
        let scale = lhs.norm().max(1.0);
        return Ok(Residual { residual: (lhs - rhs).norm(), error: 1e-13 * scale, monte_carlo: false });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sq = 0.0;
    for _ in 0..samples {
        let k = haar_sample(group, n, &mut rng);
        let v = integrand(&k) * dim;
        sum += v;
        sq += v.norm_sqr();
    }
    let ns = samples as f64;
    let mean = sum / ns;
    let var = (sq / ns - mean.norm_sqr()).max(0.0);
    Ok(Residual { residual: (lhs - mean).norm(), error: (var / ns).sqrt(), monte_carlo: true })
}

/// `int_R x^a e^{-s pi x^2} e^{-2 pi i lambda x} dx` for `a = 0..=max`.
fn gaussian_moments(max: u32, s: f64, lambda: f64) -> Result<(Vec<Complex64>, f64)> {
    let spec = QuadratureSpec::de(1e-14).with_abs_tol(1e-16);
    let cutoff = (40.0 / (s * PI)).sqrt() + 1.0;
    let mut out = Vec::new();
    let mut err = 0.0;
    for a in 0..=max {
        let e = integrate(
            |x| Complex64::from_polar(x.powi(a as i32) * (-s * PI * x * x).exp(), -2.0 * PI * lambda * x),
            Domain::Finite(-cutoff, cutoff),
            &spec,
        )?;
        out.push(e.value);
        err += e.error;
    }
    Ok((out, err))
}

fn binom_f(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `|LHS - i^{-deg} P(w) exp(-d_F pi |w|^2)|` where
/// `LHS = int P(x) exp(-d_F pi |x|^2) conj psi(x w^*) dx`.
///
/// The integral is a tensor product of one-dimensional rules; because the
/// Gaussian and the character factor over coordinates it is assembled from
/// one-dimensional moment tables.
pub fn hecke_residual(field: LocalField, n: usize, p: &Poly, w: &[Complex64]) -> Result<Residual> {
    let d = field.degree() as usize;
    if n * d > 6 {
        return Err(Error::TooLarge(format!("{} real dimensions exceed the tensor-product limit of 6", n * d)));
    }
    if p.field() != field || p.n() != n || w.len() != n {
        return Err(Error::Mismatch("polynomial, field and point are inconsistent".into()));
    }
    let deg = match p.degrees() {
        Some(dg) => dg.total(),
        None if p.is_zero() => 0,
        None => return Err(Error::Domain("polynomial is not homogeneous".into())),
    };
    if field == LocalField::Real && w.iter().any(|z| z.im != 0.0) {
        return Err(Error::Domain("over R the point must be real".into()));
    }
    let max = p.terms().keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0) * 2;
    let i = Complex64::new(0.0, 1.0);
    let mut quad_err = 0.0;
    let lhs = match field {
        LocalField::Real => {
            let mut tables = Vec::new();
            for z in w {
                let (m, e) = gaussian_moments(max, 1.0, z.re)?;
                quad_err += e;
                tables.push(m);
            }
            p.terms()
                .iter()
                .map(|(e, cf)| {
                    let cf = Complex64::new(cf.re.to_f64().unwrap(), cf.im.to_f64().unwrap());
                    cf * e.iter().enumerate().map(|(j, &a)| tables[j][a as usize]).product::<Complex64>()
                })
                .sum::<Complex64>()
        }
        LocalField::Complex => {
            // z = x + i y, w = u + i v: conj psi(z conj w) = e^{-4 pi i (x u + y v)},
            // dz = 2 dx dy.
            let mut tx = Vec::new();
            let mut ty = Vec::new();
            for z in w {
                let (mx, ex) = gaussian_moments(max, 2.0, 2.0 * z.re)?;
                let (my, ey) = gaussian_moments(max, 2.0, 2.0 * z.im)?;
                quad_err += ex + ey;
                tx.push(mx);
                ty.push(my);
            }
            let mut total = Complex64::new(0.0, 0.0);
            for (e, cf) in p.terms() {
                let cf = Complex64::new(cf.re.to_f64().unwrap(), cf.im.to_f64().unwrap());
                let mut prod = cf;
                for j in 0..n {
                    let (a, b) = (e[j], e[n + j]);
                    // (x + i y)^a (x - i y)^b expanded in x^r y^s.
                    let mut acc = Complex64::new(0.0, 0.0);
                    for r1 in 0..=a {
                        for r2 in 0..=b {
                            let coef = binom_f(a, r1) * binom_f(b, r2);
                            let ipow = i.powu(a - r1) * (-i).powu(b - r2);
                            let xr = (r1 + r2) as usize;
                            let ys = (a - r1 + b - r2) as usize;
                            acc += coef * ipow * tx[j][xr] * ty[j][ys];
                        }
                    }
                    prod *= 2.0 * acc;
                }
                total += prod;
            }
            total
        }
    };
    let pw: Complex64 = p.compile().eval_unchecked(w);
    let norm2: f64 = w.iter().map(|z| z.norm_sqr()).sum();
    let rhs = (-i).powu(deg) * pw * (-(d as f64) * PI * norm2).exp();
    Ok(Residual { residual: (lhs - rhs).norm(), error: quad_err * 10.0, monte_carlo: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::poly::coeff_int;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zonal_reproduces_itself_at_e_n() {
        for (field, n, d) in [
            (LocalField::Real, 2, Degrees::Real(3)),
            (LocalField::Complex, 1, Degrees::Complex(2, 0)),
            (LocalField::Complex, 2, Degrees::Complex(1, 2)),
        ] {
            let z = zonal(field, n, d).unwrap();
            let mut e = vec![cx(0.0, 0.0); n];
            e[n - 1] = cx(1.0, 0.0);
            let r = reproducing_residual(field, n, d, &z, &e, 0, 0).unwrap();
            assert!(r.residual < 1e-8, "{field:?} {n} {d:?}: {r:?}");
        }
    }

    #[test]
    fn o2_angle_quadrature() {
        let x1x2 = Poly::var(LocalField::Real, 2, 0).mul(&Poly::var(LocalField::Real, 2, 1));
        let r =
            reproducing_residual(LocalField::Real, 2, Degrees::Real(2), &x1x2, &[cx(0.3, 0.0), cx(-1.7, 0.0)], 0, 0)
                .unwrap();
        assert!(r.residual < 1e-8);
    }

    #[test]
    fn hecke_small_cases() {
        let one = Poly::one(LocalField::Real, 1);
        assert!(hecke_residual(LocalField::Real, 1, &one, &[cx(0.0, 0.0)]).unwrap().residual < 1e-10);
        let x = Poly::var(LocalField::Real, 1, 0);
        assert!(hecke_residual(LocalField::Real, 1, &x, &[cx(0.7, 0.0)]).unwrap().residual < 1e-8);
        let z = Poly::var(LocalField::Complex, 1, 0);
        assert!(hecke_residual(LocalField::Complex, 1, &z, &[cx(1.0, 0.0)]).unwrap().residual < 1e-7);
        let big = Poly::constant(LocalField::Complex, 4, coeff_int(1));
        assert!(matches!(hecke_residual(LocalField::Complex, 4, &big, &[cx(0.0, 0.0); 4]), Err(Error::TooLarge(_))));
    }
}
