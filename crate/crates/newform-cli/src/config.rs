//! Configuration files for `newform verify --config FILE`.
//!
//! ```json
//! {
//!   "profile": "fast",
//!   "tolerances": { "rs_21": 1e-6 },
//!   "budget": 20000000,
//!   "seed": 7
//! }
//! ```
//!
//! `checks` replaces the profile's check list; `tolerances` overrides the
//! tolerance value of every check of an identity.

use std::collections::BTreeMap;

use serde::Deserialize;

use newform::zetaintegrals::{Identity, Profile, VerifyCheck, VerifyConfig};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliConfig {
    pub profile: Option<String>,
    pub checks: Option<Vec<VerifyCheck>>,
    #[serde(default)]
    pub tolerances: BTreeMap<Identity, f64>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

impl CliConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        let cfg: CliConfig = serde_json::from_str(text).map_err(|e| format!("config: {e}"))?;
        let checks = cfg.checks.iter().flatten().map(|c| c.tolerance.value);
        for t in cfg.tolerances.values().copied().chain(checks) {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(format!("config: tolerance {t} must be finite and nonnegative"));
            }
        }
        Ok(cfg)
    }

    /// The suite: explicit checks if given, else the profile's.
    pub fn build(&self, profile: Option<Profile>) -> VerifyConfig {
        let mut suite = match (&self.checks, profile) {
            (Some(checks), _) => VerifyConfig { checks: checks.clone(), ..VerifyConfig::default() },
            (None, Some(p)) => VerifyConfig::profile(p),
            (None, None) => VerifyConfig::default(),
        };
        for check in &mut suite.checks {
            if let Some(&t) = self.tolerances.get(&check.identity) {
                check.tolerance.value = t;
            }
        }
        if let Some(seed) = self.seed {
            suite.seed = seed;
        }
        if let Some(budget) = self.budget {
            suite.budget = Some(budget);
        }
        if let Some(samples) = self.samples {
            suite.samples = samples;
        }
        suite
    }
}
