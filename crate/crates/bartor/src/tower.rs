//! Iterated Tor towers: start from a polynomial or exterior algebra on one
//! generator and repeatedly take Tor of the ground field over the previous
//! stage.
//!
//! `run_tower` with `iterations` = n returns n+1 algebras; element i is
//! stage i+1 of the tower (iterations 0 means just the starting algebra).

use serde::{Deserialize, Serialize};

use crate::algebra::{self, GradedAlgebra};
use crate::bar::Limits;
use crate::error::{Error, Result};
use crate::gfp::check_prime;
use crate::series::PoincareSeries;
use crate::tor::{tor, TorAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TowerStart {
    /// F_p[x] on an even degree >= 2.
    Polynomial { degree: u32 },
    /// Lambda(x) on an odd degree (any positive degree when p = 2).
    Exterior { degree: u32 },
}

impl TowerStart {
    pub fn degree(self) -> u32 {
        match self {
            TowerStart::Polynomial { degree } | TowerStart::Exterior { degree } => degree,
        }
    }

    pub fn build(self, p: u32, cap: usize) -> Result<GradedAlgebra> {
        match self {
            TowerStart::Polynomial { degree } => algebra::polynomial(p, degree, cap),
            TowerStart::Exterior { degree } => algebra::exterior(p, degree, cap),
        }
    }
}

impl std::fmt::Display for TowerStart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TowerStart::Polynomial { degree } => write!(f, "poly:{degree}"),
            TowerStart::Exterior { degree } => write!(f, "ext:{degree}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TowerSpec {
    pub p: u32,
    pub start: TowerStart,
    pub iterations: usize,
    pub cap: usize,
}

impl TowerSpec {
    pub fn validate(&self) -> Result<()> {
        check_prime(self.p)?;
        // Surface degree errors before any homology runs.
        self.start.build(self.p, self.cap).map(|_| ())
    }
}

/// A fully-run tower: the stages, plus the Tor data (bidegrees and
/// representatives) of each stage after the first.
pub struct TowerRun {
    pub spec: TowerSpec,
    pub stages: Vec<GradedAlgebra>,
    /// tors[k] produced stages[k + 1].
    pub tors: Vec<TorAlgebra>,
}

impl TowerRun {
    pub fn series(&self) -> Vec<PoincareSeries> {
        self.stages.iter().map(|a| a.poincare()).collect()
    }
}

/// Run the tower, retaining per-stage Tor data.
pub fn run_tower_detailed(spec: &TowerSpec, limits: Limits) -> Result<TowerRun> {
    spec.validate()?;
    let mut stages = vec![spec.start.build(spec.p, spec.cap)?];
    let mut tors = Vec::new();
    for k in 0..spec.iterations {
        let next = tor(stages.last().unwrap(), spec.cap, limits).map_err(|e| match e {
            // Stage numbering is 1-based; stage k+2 is the one being built.
            Error::ResourceLimit { stage: None, s, t, needed, limit } => {
                Error::ResourceLimit { stage: Some(k + 2), s, t, needed, limit }
            }
            other => other,
        })?;
        stages.push(next.as_algebra().clone());
        tors.push(next);
    }
    Ok(TowerRun { spec: *spec, stages, tors })
}

/// Run the tower; element i of the result is stage i+1.
pub fn run_tower(spec: &TowerSpec, limits: Limits) -> Result<Vec<GradedAlgebra>> {
    Ok(run_tower_detailed(spec, limits)?.stages)
}

/// Poincaré series of every stage.
pub fn tower_series(spec: &TowerSpec, limits: Limits) -> Result<Vec<PoincareSeries>> {
    Ok(run_tower(spec, limits)?.iter().map(|a| a.poincare()).collect())
}
