use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::routing::{AdaptiveMode, Algorithm, Router, RouterConfig};
use crate::topology::max_proper_s2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HopLimit {
    /// `factor · n` hops per route.
    PerNode(usize),
    Fixed(usize),
}

impl HopLimit {
    pub fn for_n(&self, n: usize) -> usize {
        match *self {
            HopLimit::PerNode(f) => f * n,
            HopLimit::Fixed(h) => h,
        }
    }
}

impl Default for HopLimit {
    fn default() -> Self {
        HopLimit::PerNode(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub hop_limit: HopLimit,
    pub mode: AdaptiveMode,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            trials: 10_000,
            n_min: 5,
            n_max: 300,
            hop_limit: HopLimit::default(),
            mode: AdaptiveMode::default(),
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("fuzzing needs at least one trial"));
        }
        if self.n_min < 5 || self.n_min > self.n_max {
            return Err(Error::invalid(format!(
                "fuzz n range must satisfy 5 <= n_min <= n_max, got [{}, {}]",
                self.n_min, self.n_max
            )));
        }
        Ok(())
    }
}

/// Everything needed to replay one failing route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub trial: usize,
    pub algorithm: Algorithm,
    pub n: usize,
    pub s2: usize,
    pub src: usize,
    pub dst: usize,
    pub hop_limit: usize,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    /// Trials per algorithm, in `Algorithm::ALL` order.
    pub trials_per_algorithm: [usize; 3],
    pub total_hops: u64,
    pub max_hops: usize,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Routes random `(n, s2, src, dst, algorithm)` tuples drawn from a ChaCha8
/// stream seeded with `config.seed` and records every route that overruns
/// its hop budget.
pub fn fuzz_termination(config: &FuzzConfig) -> Result<FuzzReport> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = FuzzReport {
        config: *config,
        trials_per_algorithm: [0; 3],
        total_hops: 0,
        max_hops: 0,
        failures: Vec::new(),
    };
    for trial in 0..config.trials {
        let n = rng.gen_range(config.n_min..=config.n_max);
        let s2 = rng.gen_range(2..=max_proper_s2(n));
        let src = rng.gen_range(0..n);
        let dst = rng.gen_range(0..n);
        let slot = rng.gen_range(0..Algorithm::ALL.len());
        let algorithm = Algorithm::ALL[slot];
        report.trials_per_algorithm[slot] += 1;

        let cfg = RouterConfig::new(n, s2)?;
        let limit = config.hop_limit.for_n(n);
        match Router::new(algorithm, cfg, config.mode).hop_count(src, dst, limit) {
            Ok(h) => {
                report.total_hops += h as u64;
                report.max_hops = report.max_hops.max(h);
            }
            Err(e @ Error::Livelock { .. }) => report.failures.push(FuzzFailure {
                trial,
                algorithm,
                n,
                s2,
                src,
                dst,
                hop_limit: limit,
                error: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_trial() {
        let cfg = FuzzConfig { trials: 1, ..FuzzConfig::default() };
        let r = fuzz_termination(&cfg).unwrap();
        assert_eq!(r.trials_per_algorithm.iter().sum::<usize>(), 1);
    }

    #[test]
    fn reproducible() {
        let cfg = FuzzConfig { trials: 300, n_max: 60, ..FuzzConfig::default() };
        let a = fuzz_termination(&cfg).unwrap().to_json().unwrap();
        let b = fuzz_termination(&cfg).unwrap().to_json().unwrap();
        assert_eq!(a, b);
        let other = fuzz_termination(&FuzzConfig { seed: 2, ..cfg }).unwrap().to_json().unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn tight_limit_reports_failures() {
        let cfg = FuzzConfig { trials: 200, n_max: 80, hop_limit: HopLimit::Fixed(1), ..FuzzConfig::default() };
        let r = fuzz_termination(&cfg).unwrap();
        assert!(!r.passed());
        assert!(r.failures.iter().all(|f| f.hop_limit == 1));
    }

    #[test]
    fn rejects_bad_config() {
        assert!(fuzz_termination(&FuzzConfig { trials: 0, ..FuzzConfig::default() }).is_err());
        assert!(fuzz_termination(&FuzzConfig { n_min: 4, ..FuzzConfig::default() }).is_err());
        assert!(fuzz_termination(&FuzzConfig { n_min: 50, n_max: 40, ..FuzzConfig::default() }).is_err());
    }
}
