//! Verification reports and the check suite behind `newform verify`.

use std::time::Instant;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branching::{mult_chain, spherical_ktypes_of_degree};
use crate::error::{Error, Result};
use crate::harmonics::{harmonic_basis, hecke_residual, reproducing_residual, Degrees};
use crate::invariants::{conductor_exponent, oldform_dim_any};
use crate::repcore::{LocalField, Repr};
use crate::special::quad::QuadratureSpec;
use crate::special::zeta::{l_factor, rs_l_factor};
use crate::whittaker::gl2::{whittaker_gl2_closed, whittaker_gl2_jacquet};
use crate::whittaker::pieri::{pieri_residual, PieriOptions};
use crate::whittaker::propagate::{whittaker_propagate, PropagateOptions};
use crate::whittaker::GroupPoint;

use super::{epsilon_fourier_check, gj_integral, rs_21, rs_22, rs_32, tate_integral, ZetaOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// Convolution sections reproduce `L(s, pi) W°(h)`.
    Pieri,
    /// Gaussian Fourier transform of harmonic polynomials.
    Hecke,
    /// Zonal reproducing kernel.
    Reproducing,
    Tate,
    GodementJacquet,
    Rs21,
    Rs22,
    /// `GL_3 x GL_2` by reduction to `GL_2 x GL_2`.
    Rs32,
    /// `GL_3 x GL_2` by direct integration of propagated values, against
    /// the reduction.
    Rs32Direct,
    /// Oldform dimensions against branching multiplicities.
    Branching,
    /// A unique minimal K-type with a `K_{n-1}`-fixed vector, of
    /// multiplicity one.
    MultiplicityOne,
    /// Fourier transform of `Phi` against `Phi~` at `n = 1`.
    Epsilon,
    /// Jacquet integral against closed forms on the torus.
    Whittaker,
    /// `n = 2` propagation against closed forms.
    Propagation,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::Pieri => "pieri",
            Identity::Hecke => "hecke",
            Identity::Reproducing => "reproducing",
            Identity::Tate => "tate",
            Identity::GodementJacquet => "godement_jacquet",
            Identity::Rs21 => "rs_21",
            Identity::Rs22 => "rs_22",
            Identity::Rs32 => "rs_32",
            Identity::Rs32Direct => "rs_32_direct",
            Identity::Branching => "branching",
            Identity::MultiplicityOne => "multiplicity_one",
            Identity::Epsilon => "epsilon",
            Identity::Whittaker => "whittaker",
            Identity::Propagation => "propagation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToleranceKind {
    Absolute,
    /// Scaled by `|rhs|`.
    Relative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub value: f64,
    pub kind: ToleranceKind,
}

impl Tolerance {
    pub fn absolute(value: f64) -> Self {
        Self { value, kind: ToleranceKind::Absolute }
    }

    pub fn relative(value: f64) -> Self {
        Self { value, kind: ToleranceKind::Relative }
    }

    fn bound(self, rhs: Option<Complex64>) -> f64 {
        match (self.kind, rhs) {
            (ToleranceKind::Relative, Some(r)) => self.value * r.norm(),
            _ => self.value,
        }
    }
}

/// One configured check. `s` is the grid of zeta-integral arguments and
/// `at` the grid of real evaluation points (torus coordinates, Fourier
/// variables or K-type degrees), depending on the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyCheck {
    pub identity: Identity,
    /// A representation descriptor, or `"F n p"` / `"F n p,q"` for the
    /// harmonic-polynomial checks.
    pub descriptor: String,
    /// The spherical second representation of a Rankin-Selberg pair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<String>,
    #[serde(default)]
    pub s: Vec<Complex64>,
    #[serde(default)]
    pub at: Vec<f64>,
    pub tolerance: Tolerance,
    /// Fixed-rule level for the multi-dimensional integrals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
}

impl VerifyCheck {
    pub fn new(identity: Identity, descriptor: &str, tolerance: Tolerance) -> Self {
        Self {
            identity,
            descriptor: descriptor.to_string(),
            partner: None,
            s: Vec::new(),
            at: Vec::new(),
            tolerance,
            level: None,
        }
    }

    pub fn partner(mut self, partner: &str) -> Self {
        self.partner = Some(partner.to_string());
        self
    }

    pub fn s(mut self, s: Vec<Complex64>) -> Self {
        self.s = s;
        self
    }

    pub fn at(mut self, at: Vec<f64>) -> Self {
        self.at = at;
        self
    }

    pub fn level(mut self, level: u32) -> Self {
        self.level = Some(level);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Fast,
    Slow,
}

impl std::str::FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Profile::Fast),
            "slow" => Ok(Profile::Slow),
            other => Err(Error::Syntax { pos: 0, msg: format!("unknown profile {other:?}; expected fast or slow") }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub checks: Vec<VerifyCheck>,
    /// Seed for the Monte-Carlo integrals.
    #[serde(default)]
    pub seed: u64,
    /// Node budget for the multi-dimensional integrals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Monte-Carlo sample count.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Record wall time in each report. Off by default, so that reports
    /// are reproducible byte for byte.
    #[serde(default)]
    pub timings: bool,
}

fn default_samples() -> usize {
    20_000
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { checks: Vec::new(), seed: 0, budget: None, samples: default_samples(), timings: false }
    }
}

/// Eight points with `Re s` in `[1, 3]`.
pub fn default_s_grid() -> Vec<Complex64> {
    let im = [0.0, 0.5, -0.3, 0.0, 1.0, -1.0, 0.2, 0.0];
    (0..8).map(|j| Complex64::new(1.0 + 2.0 * j as f64 / 7.0, im[j])).collect()
}

/// Twenty torus coordinates in `[0.05, 3]`, both signs.
pub fn default_torus_grid() -> Vec<f64> {
    (0..20)
        .map(|j| {
            let y = 0.05 * (60f64).powf(j as f64 / 19.0);
            if j % 3 == 1 {
                -y
            } else {
                y
            }
        })
        .collect()
}

impl VerifyConfig {
    pub fn profile(profile: Profile) -> Self {
        use Identity::*;
        let grid = default_s_grid();
        let torus = default_torus_grid();
        let abs = Tolerance::absolute;
        let rel = Tolerance::relative;
        let mut checks = vec![
            VerifyCheck::new(Branching, "R: chi^1 t=0 ; D^3 t=0.2", abs(0.0)).at((0..12).map(f64::from).collect()),
            VerifyCheck::new(Branching, "C: chi^2 t=0 ; chi^-1 t=0 ; chi^0 t=0", abs(0.0))
                .at((0..10).map(f64::from).collect()),
            VerifyCheck::new(MultiplicityOne, "R: D^4 t=0 ; chi^1 t=0", abs(0.0)),
            VerifyCheck::new(MultiplicityOne, "C: chi^3 t=0 ; chi^-2 t=0", abs(0.0)),
            VerifyCheck::new(Hecke, "R 2 3", abs(1e-6)),
            VerifyCheck::new(Hecke, "C 2 1,2", abs(1e-6)),
            VerifyCheck::new(Reproducing, "R 2 3", abs(1e-8)),
            VerifyCheck::new(Reproducing, "C 2 1,1", abs(1e-8)),
            VerifyCheck::new(Reproducing, "R 3 2", abs(0.0)),
            VerifyCheck::new(Tate, "R: chi^1 t=0.2", rel(1e-8)).partner("R: chi^0 t=-0.1").s(grid.clone()),
            VerifyCheck::new(Tate, "C: chi^-3 t=0.1", rel(1e-8)).partner("C: chi^0 t=0.2").s(grid.clone()),
            VerifyCheck::new(GodementJacquet, "R: chi^0 t=0.3", rel(1e-8)).s(grid.clone()),
            VerifyCheck::new(GodementJacquet, "C: chi^2 t=-0.2", rel(1e-8)).s(grid.clone()),
            VerifyCheck::new(Epsilon, "R: chi^1 t=0", abs(1e-6)).at(vec![-1.1, -0.3, 0.4, 0.9]),
            VerifyCheck::new(Epsilon, "C: chi^-2 t=0.1", abs(1e-6)).at(vec![0.2, 0.5, 0.9]),
            VerifyCheck::new(Whittaker, "R: chi^0 t=0.3 ; chi^0 t=-0.2", rel(1e-6)).at(torus.clone()),
            VerifyCheck::new(Whittaker, "R: chi^1 t=0.2 ; chi^0 t=0", rel(1e-6)).at(torus.clone()),
            VerifyCheck::new(Whittaker, "R: D^3 t=0", rel(1e-6)).at(torus.clone()),
            VerifyCheck::new(Whittaker, "C: chi^1 t=0.2 ; chi^-1 t=0", rel(1e-6)).at(torus.clone()),
            VerifyCheck::new(Propagation, "R: chi^1 t=0.2 ; chi^0 t=-0.1", rel(1e-6)).at(vec![-1.3, 0.2, 0.8]),
            VerifyCheck::new(Propagation, "R: D^3 t=0.1", rel(1e-6)).at(vec![0.3, 1.1, -2.0]),
            VerifyCheck::new(Propagation, "C: chi^1 t=0.2 ; chi^-1 t=0", rel(1e-6)).at(vec![0.4, 1.5]),
            VerifyCheck::new(Pieri, "C: chi^2 t=0.1", rel(1e-8)).s(grid[..4].to_vec()),
            VerifyCheck::new(Pieri, "R: chi^0 t=0.1 ; chi^0 t=-0.1", rel(1e-4)).s(vec![Complex64::new(1.5, 0.0)]),
        ];
        for (d, p) in [
            ("R: chi^0 t=0.3 ; chi^0 t=-0.2", "R: chi^0 t=0.1"),
            ("R: chi^1 t=0.2 ; chi^0 t=0", "R: chi^0 t=0"),
            ("R: D^3 t=0", "R: chi^0 t=0.1"),
            ("C: chi^1 t=0.1 ; chi^-1 t=0", "C: chi^0 t=0"),
        ] {
            checks.push(VerifyCheck::new(Rs21, d, rel(1e-5)).partner(p).s(grid.clone()));
        }
        let sph2 = "R: chi^0 t=0.1 ; chi^0 t=-0.2";
        let s2 = vec![Complex64::new(1.5, 0.0), Complex64::new(2.0, 0.5)];
        checks.push(VerifyCheck::new(Rs22, "R: chi^0 t=0.3 ; chi^0 t=-0.1", rel(1e-3)).partner(sph2).s(s2.clone()));
        checks.push(
            VerifyCheck::new(Rs32, "R: chi^0 t=0.2 ; chi^0 t=0.1 ; chi^0 t=-0.1", rel(1e-3))
                .partner(sph2)
                .s(s2.clone()),
        );
        if profile == Profile::Slow {
            checks.push(VerifyCheck::new(Rs22, "R: chi^1 t=0.2 ; chi^0 t=0", rel(1e-3)).partner(sph2).s(s2.clone()));
            checks.push(VerifyCheck::new(Rs22, "R: D^3 t=0", rel(1e-3)).partner(sph2).s(s2.clone()));
            checks.push(
                VerifyCheck::new(Rs32, "R: chi^1 t=0.2 ; chi^0 t=0.1 ; chi^0 t=-0.1", rel(1e-3))
                    .partner(sph2)
                    .s(s2.clone()),
            );
            checks.push(
                VerifyCheck::new(Rs32Direct, "R: chi^0 t=0.2 ; chi^0 t=0.1 ; chi^0 t=-0.1", rel(1e-2))
                    .partner(sph2)
                    .s(vec![Complex64::new(1.5, 0.0)]),
            );
        }
        Self { checks, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportPoint {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
    pub lhs: Option<Complex64>,
    pub rhs: Option<Complex64>,
    pub abs_residual: f64,
    pub quad_err: f64,
}

impl ReportPoint {
    fn pair(s: Option<Complex64>, at: Option<String>, lhs: Complex64, rhs: Complex64, quad_err: f64) -> Self {
        Self { s, at, lhs: Some(lhs), rhs: Some(rhs), abs_residual: (lhs - rhs).norm(), quad_err }
    }

    fn residual(at: String, residual: f64, quad_err: f64) -> Self {
        Self { s: None, at: Some(at), lhs: None, rhs: None, abs_residual: residual, quad_err }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The check could not be evaluated; see the report's `error`.
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: Identity,
    pub descriptor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<String>,
    pub points: Vec<ReportPoint>,
    pub tolerance: Tolerance,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub seconds: Option<f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Largest `abs_residual / (tolerance + quad_err)`; at most 1 on a pass.
    pub fn worst_ratio(&self) -> f64 {
        self.points.iter().map(|p| p.abs_residual / (self.tolerance.bound(p.rhs) + p.quad_err)).fold(0.0, f64::max)
    }
}

/// Runs the configured checks in parallel; reports come back in
/// configuration order.
pub fn verify_suite(config: &VerifyConfig) -> Vec<VerificationReport> {
    config.checks.par_iter().map(|c| run_check(c, config)).collect()
}

pub fn run_check(check: &VerifyCheck, config: &VerifyConfig) -> VerificationReport {
    let start = Instant::now();
    let mut points = Vec::new();
    let outcome = evaluate(check, config, &mut points);
    let verdict = match &outcome {
        Err(_) => Verdict::Error,
        Ok(()) => {
            let ok = points
                .iter()
                .all(|p| p.abs_residual.is_finite() && p.abs_residual <= check.tolerance.bound(p.rhs) + p.quad_err);
            if ok {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
    };
    VerificationReport {
        identity: check.identity,
        descriptor: check.descriptor.clone(),
        partner: check.partner.clone(),
        points,
        tolerance: check.tolerance,
        verdict,
        error: outcome.err().map(|e| e.to_string()),
        seconds: config.timings.then(|| start.elapsed().as_secs_f64()),
    }
}

fn parse_rep(text: &str) -> Result<Repr> {
    text.parse()
}

fn partner(check: &VerifyCheck) -> Result<Repr> {
    let p =
        check.partner.as_deref().ok_or_else(|| Error::Domain("this check needs a partner representation".into()))?;
    parse_rep(p)
}

/// `"R 3 2"` or `"C 2 1,2"`.
pub fn parse_space(text: &str) -> Result<(LocalField, usize, Degrees)> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    let bad = || Error::Syntax { pos: 0, msg: format!("expected \"F n p\" or \"F n p,q\", got {text:?}") };
    if parts.len() != 3 {
        return Err(bad());
    }
    let field = match parts[0] {
        "R" => LocalField::Real,
        "C" => LocalField::Complex,
        _ => return Err(bad()),
    };
    let n: usize = parts[1].parse().map_err(|_| bad())?;
    let degs: Vec<u32> = parts[2].split(',').map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?;
    let degrees = match (field, degs.as_slice()) {
        (LocalField::Real, [p]) => Degrees::Real(*p),
        (LocalField::Complex, [p, q]) => Degrees::Complex(*p, *q),
        _ => return Err(bad()),
    };
    Ok((field, n, degrees))
}

fn sample_point(field: LocalField, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            let re = 0.4 + 0.3 * j as f64 - 0.5 * (j % 2) as f64;
            match field {
                LocalField::Real => Complex64::new(re, 0.0),
                LocalField::Complex => Complex64::new(re, 0.2 - 0.35 * j as f64),
            }
        })
        .collect()
}

fn pieri_point(rep: &Repr) -> Result<GroupPoint> {
    match (rep.field(), rep.rank()) {
        (LocalField::Real, 1) => GroupPoint::from_real(&[&[-0.7]]),
        (LocalField::Complex, 1) => GroupPoint::diag(LocalField::Complex, &[Complex64::new(0.3, 0.9)]),
        (LocalField::Real, 2) => GroupPoint::from_real(&[&[0.9, 0.3], &[-0.2, 1.1]]),
        (_, n) => Err(Error::TooLarge(format!("no convolution-section check at n = {n} over this field"))),
    }
}

fn evaluate(check: &VerifyCheck, config: &VerifyConfig, points: &mut Vec<ReportPoint>) -> Result<()> {
    use Identity::*;
    let spec = QuadratureSpec::de(1e-12);
    let mut zeta_opts = ZetaOptions::default();
    if let Some(l) = check.level {
        zeta_opts.level = l;
    }
    if let Some(b) = config.budget {
        zeta_opts.budget = b;
    }
    match check.identity {
        Tate | GodementJacquet | Rs21 | Rs22 | Rs32 | Rs32Direct | Pieri => {
            let rep = parse_rep(&check.descriptor)?;
            for &s in &check.s {
                let point = match check.identity {
                    Tate => {
                        let sph = partner(check)?;
                        let lhs = tate_integral(&rep, &sph, s, &spec)?;
                        ReportPoint::pair(Some(s), None, lhs.value, rs_l_factor(&rep, &sph, s)?, lhs.error)
                    }
                    GodementJacquet => {
                        let lhs = gj_integral(&rep, s, &spec)?;
                        ReportPoint::pair(Some(s), None, lhs.value, l_factor(&rep, s)?, lhs.error)
                    }
                    Rs21 => {
                        let sph = partner(check)?;
                        let lhs = rs_21(&rep, &sph, s, &QuadratureSpec::de(1e-11))?;
                        ReportPoint::pair(Some(s), None, lhs.value, rs_l_factor(&rep, &sph, s)?, lhs.error)
                    }
                    Rs22 => {
                        let sph = partner(check)?;
                        let lhs = rs_22(&rep, &sph, s, &zeta_opts)?;
                        ReportPoint::pair(Some(s), None, lhs.value, rs_l_factor(&rep, &sph, s)?, lhs.error)
                    }
                    Rs32 => {
                        let sph = partner(check)?;
                        let lhs = rs_32(&rep, &sph, s, &zeta_opts, false)?.reduction;
                        ReportPoint::pair(Some(s), None, lhs.value, rs_l_factor(&rep, &sph, s)?, lhs.error)
                    }
                    Rs32Direct => {
                        let sph = partner(check)?;
                        let out = rs_32(&rep, &sph, s, &zeta_opts, true)?;
                        let direct = out.direct.expect("requested");
                        ReportPoint::pair(
                            Some(s),
                            None,
                            direct.value,
                            out.reduction.value,
                            direct.error + out.reduction.error,
                        )
                    }
                    _ => {
                        let mut opts = PieriOptions::default();
                        if let Some(l) = check.level {
                            opts.level = l;
                        }
                        if let Some(b) = config.budget {
                            opts.budget = b;
                        }
                        let out = pieri_residual(&rep, s, &pieri_point(&rep)?, &opts)?;
                        ReportPoint::pair(Some(s), None, out.lhs.value, out.rhs, out.lhs.error)
                    }
                };
                points.push(point);
            }
        }
        Hecke | Reproducing => {
            let (field, n, degrees) = parse_space(&check.descriptor)?;
            let w = sample_point(field, n);
            for (j, p) in harmonic_basis(field, n, degrees)?.iter().enumerate() {
                let r = if check.identity == Hecke {
                    hecke_residual(field, n, p, &w)?
                } else {
                    reproducing_residual(field, n, degrees, p, &w, config.samples, config.seed)?
                };
                // three standard errors for Monte-Carlo estimates
                let err = if r.monte_carlo { 3.0 * r.error } else { r.error };
                points.push(ReportPoint::residual(format!("basis[{j}]"), r.residual, err));
            }
        }
        Branching => {
            let rep = parse_rep(&check.descriptor)?;
            for &m in &check.at {
                let m = m.to_u64().ok_or_else(|| Error::Domain(format!("degree {m} is not a natural number")))?;
                let old = oldform_dim_any(&rep, m).to_f64().unwrap_or(f64::INFINITY);
                let mut sum = 0u64;
                for tau in spherical_ktypes_of_degree(rep.field(), rep.rank(), m) {
                    sum += mult_chain(&rep, &tau)?;
                }
                points.push(ReportPoint::pair(
                    None,
                    Some(format!("m={m}")),
                    Complex64::new(old, 0.0),
                    Complex64::new(sum as f64, 0.0),
                    0.0,
                ));
            }
        }
        MultiplicityOne => {
            let rep = parse_rep(&check.descriptor)?;
            let c = conductor_exponent(&rep);
            let mut first = None;
            for m in 0..=c {
                let hits: Vec<u64> = spherical_ktypes_of_degree(rep.field(), rep.rank(), m)
                    .iter()
                    .map(|tau| mult_chain(&rep, tau))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .filter(|&k| k > 0)
                    .collect();
                if !hits.is_empty() {
                    first = Some((m, hits));
                    break;
                }
            }
            let (m, hits) = first.ok_or_else(|| Error::Domain("no K_{n-1}-spherical K-type up to c(pi)".into()))?;
            let re = |x: f64| Complex64::new(x, 0.0);
            for (label, found, want) in [
                ("minimal degree", m as f64, c as f64),
                ("K-types", hits.len() as f64, 1.0),
                ("multiplicity", hits.iter().sum::<u64>() as f64, 1.0),
            ] {
                points.push(ReportPoint::pair(None, Some(label.to_string()), re(found), re(want), 0.0));
            }
        }
        Epsilon => {
            let rep = parse_rep(&check.descriptor)?;
            for &y in &check.at {
                let yc = match rep.field() {
                    LocalField::Real => Complex64::new(y, 0.0),
                    LocalField::Complex => Complex64::from_polar(y, 0.7),
                };
                let out = epsilon_fourier_check(&rep, yc, &QuadratureSpec::de(1e-10))?;
                points.push(ReportPoint::pair(None, Some(format!("y={yc}")), out.lhs.value, out.rhs, out.lhs.error));
            }
        }
        Whittaker => {
            let rep = parse_rep(&check.descriptor)?;
            for &y in &check.at {
                let g = GroupPoint::diag(rep.field(), &[Complex64::new(y, 0.0), Complex64::new(1.0, 0.0)])?;
                let lhs = whittaker_gl2_jacquet(&rep, &g, &QuadratureSpec::de(1e-10))?;
                let rhs = whittaker_gl2_closed(&rep, Complex64::new(y, 0.0))?;
                points.push(ReportPoint::pair(None, Some(format!("y={y}")), lhs.value, rhs, lhs.error));
            }
        }
        Propagation => {
            let rep = parse_rep(&check.descriptor)?;
            let opts = PropagateOptions::default();
            for &y in &check.at {
                let g = GroupPoint::diag(rep.field(), &[Complex64::new(y, 0.0)])?;
                let lhs = whittaker_propagate(&rep, &g, &opts)?;
                let rhs = whittaker_gl2_closed(&rep, Complex64::new(y, 0.0))?;
                points.push(ReportPoint::pair(None, Some(format!("y={y}")), lhs.value, rhs, lhs.error));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config() {
        assert!(verify_suite(&VerifyConfig::default()).is_empty());
    }

    #[test]
    fn errors_are_embedded() {
        let config = VerifyConfig {
            checks: vec![
                VerifyCheck::new(Identity::Tate, "R: chi^0 t=0", Tolerance::relative(1e-8))
                    .s(vec![Complex64::new(1.0, 0.0)]),
                VerifyCheck::new(Identity::Tate, "R: chi^0 t=0", Tolerance::relative(1e-8))
                    .partner("R: chi^0 t=0")
                    .s(vec![Complex64::new(1.0, 0.0)]),
                VerifyCheck::new(Identity::Hecke, "Q 2 2", Tolerance::absolute(1e-6)),
            ],
            ..VerifyConfig::default()
        };
        let out = verify_suite(&config);
        assert_eq!(out[0].verdict, Verdict::Error);
        assert_eq!(out[1].verdict, Verdict::Pass);
        assert_eq!(out[2].verdict, Verdict::Error);
        assert!(out.iter().all(|r| r.seconds.is_none()));
    }

    #[test]
    fn space_syntax() {
        assert_eq!(parse_space("R 3 2").unwrap(), (LocalField::Real, 3, Degrees::Real(2)));
        assert_eq!(parse_space("C 2 1,0").unwrap(), (LocalField::Complex, 2, Degrees::Complex(1, 0)));
        assert!(parse_space("R 2 1,1").is_err());
    }
}
