//! Engine-against-oracle agreement over a matrix of tower configurations.
//!
//! For every prime, canonical start, and stage, the bar-homology tower and
//! the closed-form prediction must give identical Poincaré series
//! degreewise. The first divergence, in deterministic scan order (primes
//! as given, starts in canonical order, stages ascending, degrees
//! ascending), is reported with its stage and degree.

use crate::bar::Limits;
use crate::error::Result;
use crate::oracle::{predict_series_with_fault, OracleFault};
use crate::tower::{tower_series, TowerSpec, TowerStart};

/// The canonical starts exercised for a prime: the two polynomial
/// generators the series of Z is assembled from, and the two exterior
/// generators that drive the ramified and unramified local answers.
pub fn default_starts(p: u32) -> Vec<TowerStart> {
    let mut starts = vec![TowerStart::Polynomial { degree: 2 * p }];
    if 2 * p - 2 >= 2 {
        starts.push(TowerStart::Polynomial { degree: 2 * p - 2 });
    }
    starts.push(TowerStart::Exterior { degree: 1 });
    starts.push(TowerStart::Exterior { degree: 2 * p - 1 });
    starts
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub primes: Vec<u32>,
    pub iterations: usize,
    pub cap: usize,
    pub limits: Limits,
    /// Deliberate oracle corruption for negative controls.
    pub fault: Option<OracleFault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            primes: vec![2, 3],
            iterations: 3,
            cap: 24,
            limits: Limits::default(),
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub spec: TowerSpec,
    /// 1-based tower stage.
    pub stage: usize,
    pub degree: usize,
    pub engine: u64,
    pub oracle: u64,
}

impl std::fmt::Display for Divergence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "divergence at (stage {}, degree {}) for p={} start={} cap={}: \
             engine {} vs oracle {}",
            self.stage, self.degree, self.spec.p, self.spec.start, self.spec.cap,
            self.engine, self.oracle
        )
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// (spec, stage, degree) triples compared.
    pub comparisons: u64,
    pub towers: u64,
    pub divergence: Option<Divergence>,
}

/// Run the matrix; stops at the first divergence.
pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut comparisons = 0u64;
    let mut towers = 0u64;
    for &p in &config.primes {
        for start in default_starts(p) {
            let spec =
                TowerSpec { p, start, iterations: config.iterations, cap: config.cap };
            let engine = tower_series(&spec, config.limits)?;
            let oracle = predict_series_with_fault(&spec, config.fault)?;
            towers += 1;
            for (k, (e, o)) in engine.iter().zip(&oracle).enumerate() {
                for degree in 0..=config.cap {
                    comparisons += 1;
                    if e.get(degree) != o.get(degree) {
                        return Ok(VerifyReport {
                            comparisons,
                            towers,
                            divergence: Some(Divergence {
                                spec,
                                stage: k + 1,
                                degree,
                                engine: e.get(degree),
                                oracle: o.get(degree),
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(VerifyReport { comparisons, towers, divergence: None })
}
