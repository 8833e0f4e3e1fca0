//! Quadrature: double-exponential rules (tanh-sinh, exp-sinh, sinh-sinh),
//! Gauss-Legendre, tensor products and Monte-Carlo, all for complex-valued
//! integrands. Every result carries an a-posteriori error estimate.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Value plus an error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: Complex64, error: f64) -> Self {
        Self { value, error }
    }

    pub fn exact(value: Complex64) -> Self {
        Self { value, error: 0.0 }
    }

    /// Product with first-order error propagation.
    pub fn mul(self, other: Estimate) -> Estimate {
        Estimate {
            value: self.value * other.value,
            error: self.error * other.value.norm() + other.error * self.value.norm() + self.error * other.error,
        }
    }

    pub fn scale(self, c: Complex64) -> Estimate {
        Estimate { value: self.value * c, error: self.error * c.norm() }
    }
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate { value: self.value + rhs.value, error: self.error + rhs.error }
    }
}

impl std::iter::Sum for Estimate {
    fn sum<I: Iterator<Item = Estimate>>(iter: I) -> Estimate {
        iter.fold(Estimate::exact(Complex64::new(0.0, 0.0)), |a, b| a + b)
    }
}

/// One-dimensional integration domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Domain {
    /// `[a, b]`.
    Finite(f64, f64),
    /// `[a, infinity)`.
    HalfLine(f64),
    /// `(-infinity, infinity)`.
    Line,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Scheme {
    /// `points`-node rule, error from comparison with the `2 points` rule.
    GaussLegendre { points: usize },
    /// Level-doubling double-exponential rule.
    DoubleExponential { max_level: u32 },
    /// Gauss-Legendre in each coordinate of a finite box.
    TensorProduct { points: usize },
    /// Uniform sampling of a finite box; error is one standard error.
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::de(1e-12)
    }
}

impl QuadratureSpec {
    /// Double-exponential rule with a relative tolerance.
    pub fn de(rel_tol: f64) -> Self {
        Self { scheme: Scheme::DoubleExponential { max_level: 8 }, abs_tol: 1e-300, rel_tol }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_level(mut self, level: u32) -> Self {
        if let Scheme::DoubleExponential { max_level } = &mut self.scheme {
            *max_level = level;
        }
        self
    }

    fn accepts(&self, value: Complex64, error: f64) -> bool {
        error <= self.abs_tol.max(self.rel_tol * value.norm())
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, cached per size.
pub fn gauss_legendre(n: usize) -> std::sync::Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, std::sync::Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return r.clone();
    }
    let rule = std::sync::Arc::new(legendre_rule(n));
    cache.lock().unwrap().insert(n, rule.clone());
    rule
}

fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                z
            } else {
                p1
            };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn gl_finite<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, a: f64, b: f64, n: usize) -> Complex64 {
    let rule = gauss_legendre(n);
    let (c, d) = ((a + b) / 2.0, (b - a) / 2.0);
    rule.0.iter().zip(&rule.1).map(|(&x, &w)| f(c + d * x) * (w * d)).sum()
}

const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;

/// Nodes and weights of a DE rule at abscissa `t`.
fn de_node(domain: Domain, t: f64) -> Option<(f64, f64)> {
    match domain {
        Domain::Finite(a, b) => {
            let (c, d) = ((a + b) / 2.0, (b - a) / 2.0);
            let u = HALF_PI * t.sinh();
            let ch = u.cosh();
            let x = c + d * u.tanh();
            let w = d * HALF_PI * t.cosh() / (ch * ch);
            (w.is_finite() && x > a && x < b).then_some((x, w))
        }
        Domain::HalfLine(a) => {
            let e = (HALF_PI * t.sinh()).exp();
            let x = a + e;
            let w = HALF_PI * t.cosh() * e;
            (x.is_finite() && w.is_finite() && x > a).then_some((x, w))
        }
        Domain::Line => {
            let u = HALF_PI * t.sinh();
            let x = u.sinh();
            let w = HALF_PI * t.cosh() * u.cosh();
            (x.is_finite() && w.is_finite()).then_some((x, w))
        }
    }
}

/// Sum of `f` over DE nodes `t = k h` for odd `k` (or all `k` when `all`).
fn de_sum<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, domain: Domain, h: f64, all: bool) -> Complex64 {
    let step = if all { 1 } else { 2 };
    let start = if all { 0 } else { 1 };
    let mut total = Complex64::new(0.0, 0.0);
    if all {
        if let Some((x, w)) = de_node(domain, 0.0) {
            total += f(x) * w;
        }
    }
    for sign in [1.0, -1.0] {
        let mut k = if all { 1 } else { start };
        let mut small = 0;
        loop {
            let t = sign * k as f64 * h;
            if t.abs() > 6.5 {
                break;
            }
            match de_node(domain, t) {
                Some((x, w)) => {
                    let term = f(x) * w;
                    if term.re.is_finite() && term.im.is_finite() {
                        total += term;
                        if t.abs() > 1.0 && term.norm() <= 1e-18 * total.norm() {
                            small += 1;
                            if small >= 3 {
                                break;
                            }
                        } else {
                            small = 0;
                        }
                    }
                }
                None => break,
            }
            k += step;
        }
    }
    total
}

fn de_integrate<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    domain: Domain,
    max_level: u32,
    spec: &QuadratureSpec,
) -> (Estimate, bool) {
    let mut h = 0.5;
    let mut sum = de_sum(f, domain, h, true);
    let mut prev = sum * h;
    let mut last_err = f64::INFINITY;
    for _ in 0..max_level {
        h /= 2.0;
        sum += de_sum(f, domain, h, false);
        let cur = sum * h;
        let err = (cur - prev).norm();
        last_err = err;
        if spec.accepts(cur, err) {
            return (Estimate::new(cur, err), true);
        }
        prev = cur;
    }
    (Estimate::new(prev, last_err), false)
}

/// Integrate `f` over a one-dimensional domain.
pub fn integrate<F>(f: F, domain: Domain, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    let (est, ok) = integrate_raw(&f, domain, spec)?;
    if ok {
        Ok(est)
    } else {
        Err(Error::NonConvergence { estimate: est.error, tolerance: spec.abs_tol.max(spec.rel_tol * est.value.norm()) })
    }
}

/// Like [`integrate`], but returns the best estimate even when the tolerance
/// was not met.
pub fn integrate_lenient<F>(f: F, domain: Domain, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    Ok(integrate_raw(&f, domain, spec)?.0)
}

fn integrate_raw<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    domain: Domain,
    spec: &QuadratureSpec,
) -> Result<(Estimate, bool)> {
    match spec.scheme {
        Scheme::DoubleExponential { max_level } => Ok(de_integrate(f, domain, max_level, spec)),
        Scheme::GaussLegendre { points } | Scheme::TensorProduct { points } => {
            let Domain::Finite(a, b) = domain else {
                return Err(Error::Domain("Gauss-Legendre needs a finite interval".into()));
            };
            let coarse = gl_finite(f, a, b, points);
            let fine = gl_finite(f, a, b, 2 * points);
            let err = (fine - coarse).norm();
            Ok((Estimate::new(fine, err), spec.accepts(fine, err)))
        }
        Scheme::MonteCarlo { samples, seed } => {
            let Domain::Finite(a, b) = domain else {
                return Err(Error::Domain("Monte-Carlo needs a finite interval".into()));
            };
            let est = monte_carlo(|x: &[f64]| f(x[0]), &[(a, b)], samples, seed);
            Ok((est, spec.accepts(est.value, est.error)))
        }
    }
}

/// Integrate over a product of one-dimensional domains.
///
/// Finite boxes with `TensorProduct` or `MonteCarlo` use those rules; in
/// every other case the integral is evaluated as nested one-dimensional
/// integrals with the outermost coordinate first.
pub fn integrate_nd<F>(f: F, domains: &[Domain], spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    spec.validate()?;
    if domains.is_empty() {
        return Ok(Estimate::exact(f(&[])));
    }
    let finite: Option<Vec<(f64, f64)>> = domains
        .iter()
        .map(|d| match *d {
            Domain::Finite(a, b) => Some((a, b)),
            _ => None,
        })
        .collect();
    match (spec.scheme, finite) {
        (Scheme::TensorProduct { points }, Some(bx)) => {
            let coarse = tensor_gl(&f, &bx, points);
            let fine = tensor_gl(&f, &bx, 2 * points);
            let err = (fine - coarse).norm();
            check(Estimate::new(fine, err), spec)
        }
        (Scheme::MonteCarlo { samples, seed }, Some(bx)) => check(monte_carlo(&f, &bx, samples, seed), spec),
        _ => {
            let mut point = vec![0.0; domains.len()];
            let est = nested(&f, domains, spec, &mut point, 0)?;
            Ok(est)
        }
    }
}

fn check(est: Estimate, spec: &QuadratureSpec) -> Result<Estimate> {
    if spec.accepts(est.value, est.error) {
        Ok(est)
    } else {
        Err(Error::NonConvergence { estimate: est.error, tolerance: spec.abs_tol.max(spec.rel_tol * est.value.norm()) })
    }
}

fn nested<F>(f: &F, domains: &[Domain], spec: &QuadratureSpec, point: &mut Vec<f64>, depth: usize) -> Result<Estimate>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    if depth + 1 == domains.len() {
        let p = std::cell::RefCell::new(point.clone());
        return integrate(
            |x| {
                let mut q = p.borrow_mut();
                q[depth] = x;
                f(&q)
            },
            domains[depth],
            spec,
        );
    }
    let failure = Mutex::new(None);
    let g = |x: f64| {
        let mut p = point.clone();
        p[depth] = x;
        match nested(f, domains, spec, &mut p, depth + 1) {
            Ok(e) => e.value,
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let outer = integrate(g, domains[depth], spec)?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(outer)
}

fn tensor_gl<F: Fn(&[f64]) -> Complex64 + Sync>(f: &F, bx: &[(f64, f64)], n: usize) -> Complex64 {
    let rule = gauss_legendre(n);
    let dim = bx.len();
    let total = n.pow(dim as u32);
    (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut p = vec![0.0; dim];
            let mut w = 1.0;
            for (j, &(a, b)) in bx.iter().enumerate() {
                let i = idx % n;
                idx /= n;
                let (c, d) = ((a + b) / 2.0, (b - a) / 2.0);
                p[j] = c + d * rule.0[i];
                w *= d * rule.1[i];
            }
            f(&p) * w
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

/// Plain Monte-Carlo over a box; deterministic for a fixed seed.
pub fn monte_carlo<F: Fn(&[f64]) -> Complex64>(f: F, bx: &[(f64, f64)], samples: usize, seed: u64) -> Estimate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vol: f64 = bx.iter().map(|(a, b)| b - a).product();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sq = 0.0;
    let mut p = vec![0.0; bx.len()];
    for _ in 0..samples {
        for (x, &(a, b)) in p.iter_mut().zip(bx) {
            *x = rng.random_range(a..b);
        }
        let v = f(&p);
        sum += v;
        sq += v.norm_sqr();
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sq / n - mean.norm_sqr()).max(0.0);
    Estimate::new(mean * vol, vol * (var / n).sqrt())
}

/// Nodes and weights of a non-adaptive rule: Gauss-Legendre with
/// `8 * 2^level` points on finite intervals, a truncated DE trapezoid with
/// step `2^-(level+1)` otherwise. Used for integrands too expensive for
/// adaptive nesting.
pub fn fixed_rule(domain: Domain, level: u32) -> Vec<(f64, f64)> {
    match domain {
        Domain::Finite(a, b) => {
            let n = 8usize << level;
            let rule = gauss_legendre(n);
            let (c, d) = ((a + b) / 2.0, (b - a) / 2.0);
            rule.0.iter().zip(&rule.1).map(|(&x, &w)| (c + d * x, d * w)).collect()
        }
        _ => {
            let h = 0.5f64.powi(level as i32 + 1);
            let mut out = Vec::new();
            let kmax = (4.0 / h) as i64;
            for k in -kmax..=kmax {
                if let Some((x, w)) = de_node(domain, k as f64 * h) {
                    out.push((x, w * h));
                }
            }
            out
        }
    }
}

/// Tensor-product of [`fixed_rule`]s, summed in parallel with a
/// deterministic reduction order.
pub fn fixed_tensor<F>(f: F, domains: &[Domain], level: u32) -> Complex64
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let rules: Vec<Vec<(f64, f64)>> = domains.iter().map(|&d| fixed_rule(d, level)).collect();
    if rules.is_empty() {
        return f(&[]);
    }
    let first = &rules[0];
    let partial: Vec<Complex64> = first
        .par_iter()
        .map(|&(x0, w0)| {
            let mut p = vec![0.0; rules.len()];
            p[0] = x0;
            w0 * tensor_rest(&f, &rules, &mut p, 1)
        })
        .collect();
    partial.into_iter().sum()
}

fn tensor_rest<F: Fn(&[f64]) -> Complex64>(f: &F, rules: &[Vec<(f64, f64)>], p: &mut [f64], depth: usize) -> Complex64 {
    if depth == rules.len() {
        return f(p);
    }
    let mut s = Complex64::new(0.0, 0.0);
    for &(x, w) in &rules[depth] {
        p[depth] = x;
        s += w * tensor_rest(f, rules, p, depth + 1);
    }
    s
}

/// [`fixed_tensor`] at `level` with the difference to `level - 1` as the
/// error estimate.
pub fn fixed_tensor_estimate<F>(f: F, domains: &[Domain], level: u32) -> Estimate
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let fine = fixed_tensor(&f, domains, level);
    let coarse = fixed_tensor(&f, domains, level.saturating_sub(1));
    Estimate::new(fine, (fine - coarse).norm())
}

/// `int_R h(x) dx` for `h` entire and decaying along `Im x < 0`, by
/// moving the tails onto vertical rays at `x = +-r`.
///
/// Suited to integrands `g(x) e^{-2 pi i lambda x}` with `lambda > 0`
/// and `g` of algebraic decay.
pub fn contour_line<F>(h: F, r: f64, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(Complex64) -> Complex64,
{
    let centre = integrate(|x| h(Complex64::new(x, 0.0)), Domain::Finite(-r, r), spec)?;
    let right = integrate(|tau| h(Complex64::new(r, -tau)), Domain::HalfLine(0.0), spec)?;
    let left = integrate(|tau| h(Complex64::new(-r, -tau)), Domain::HalfLine(0.0), spec)?;
    let i = Complex64::new(0.0, 1.0);
    Ok(Estimate::new(centre.value - i * right.value + i * left.value, centre.error + right.error + left.error))
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gaussian_half_line() {
        let e = integrate(|x| c((-PI * x * x).exp()), Domain::HalfLine(0.0), &QuadratureSpec::de(1e-13)).unwrap();
        assert!((e.value.re - 0.5).abs() < 1e-12, "{e:?}");
    }

    #[test]
    fn gaussian_plane() {
        let e = integrate_nd(
            |p| c((-PI * (p[0] * p[0] + p[1] * p[1])).exp()),
            &[Domain::Line, Domain::Line],
            &QuadratureSpec::de(1e-13),
        )
        .unwrap();
        assert!((e.value.re - 1.0).abs() < 1e-12, "{e:?}");
    }

    #[test]
    fn gauss_legendre_polynomials_exact() {
        let spec = QuadratureSpec { scheme: Scheme::GaussLegendre { points: 5 }, abs_tol: 1e-14, rel_tol: 1e-14 };
        let e = integrate(|x| c(x.powi(9) + x.powi(8)), Domain::Finite(-1.0, 1.0), &spec).unwrap();
        assert!((e.value.re - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_singularity() {
        let e = integrate(|x| c(x.ln()), Domain::Finite(0.0, 1.0), &QuadratureSpec::de(1e-12)).unwrap();
        assert!((e.value.re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn contour_fourier_of_cauchy() {
        // int 1/(1+x^2) e^{-2 pi i x} dx = pi e^{-2 pi}
        let i = Complex64::new(0.0, 1.0);
        let e = contour_line(|z| (-2.0 * PI * i * z).exp() / (1.0 + z * z), 2.0, &QuadratureSpec::de(1e-12)).unwrap();
        assert!((e.value - c(PI * (-2.0 * PI).exp())).norm() < 1e-12, "{e:?}");
    }

    #[test]
    fn non_convergence_is_reported() {
        let spec = QuadratureSpec::de(1e-15).with_max_level(1);
        let r = integrate(|x| c((50.0 * x).sin()), Domain::Finite(0.0, 3.0), &spec);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let a = monte_carlo(|p| c(p[0] * p[1]), &[(0.0, 1.0), (0.0, 1.0)], 1000, 7);
        let b = monte_carlo(|p| c(p[0] * p[1]), &[(0.0, 1.0), (0.0, 1.0)], 1000, 7);
        assert_eq!(a, b);
        assert!((a.value.re - 0.25).abs() < 4.0 * a.error);
    }
}
