//! Higher topological Hochschild homology with residue-field coefficients,
//! assembled out of iterated Tor towers, together with a mod-p ramification
//! detector for monogenic orders.
//!
//! The series for Z are built from two towers:
//!
//!   thh^[n](Z; F_p) = B^n(x_{2p}) ⊗ B^(n+1)(y_{2p-2})
//!
//! where B^1(x_d) is polynomial on a degree-d generator and B^(k+1) is the
//! Tor algebra of B^k. For a p-completed number ring the answer depends only
//! on whether the prime ramifies: the unramified series equals the series
//! for Z (coefficients in F_q change nothing but the label), while in the
//! ramified case
//!
//!   thh^[n](O; F_q) = B^n(x_2) ⊗ B^n(e_1).

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra::GradedAlgebra;
use crate::bar::Limits;
use crate::error::{Error, Result};
use crate::gfp::check_prime;
use crate::polyfp::{self, FpPoly};
use crate::series::PoincareSeries;
use crate::tower::{run_tower, TowerSpec, TowerStart};

/// Which local behaviour to model for a p-completed number ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalKind {
    Ramified,
    Unramified,
}

/// One computed series together with the two tower stages it came from.
#[derive(Debug, Clone)]
pub struct ThhAnswer {
    pub n: u32,
    pub p: u32,
    /// Residue field size, a power of p.
    pub q: u64,
    pub cap: usize,
    pub series: PoincareSeries,
    pub x_series: PoincareSeries,
    pub y_series: PoincareSeries,
    /// Self-describing formula for how the series was assembled.
    pub citation: String,
}

/// Caches tower runs so repeated queries share the expensive homology work.
pub struct Session {
    limits: Limits,
    cache: RwLock<HashMap<TowerSpec, Arc<Vec<GradedAlgebra>>>>,
}

impl Default for Session {
    fn default() -> Self {
        Session::new(Limits::default())
    }
}

impl Session {
    pub fn new(limits: Limits) -> Self {
        Session { limits, cache: RwLock::new(HashMap::new()) }
    }

    pub(crate) fn stages(&self, spec: TowerSpec) -> Result<Arc<Vec<GradedAlgebra>>> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(&spec) {
            return Ok(Arc::clone(hit));
        }
        let run = Arc::new(run_tower(&spec, self.limits)?);
        let mut cache = self.cache.write().expect("cache lock");
        Ok(Arc::clone(cache.entry(spec).or_insert(run)))
    }

    /// thh^[n](Z; F_p) through total degree `cap`.
    pub fn thh_z(&self, n: u32, p: u32, cap: usize) -> Result<ThhAnswer> {
        check_prime(p)?;
        if n == 0 {
            return Err(Error::InvalidInput(
                "the tower starts at n = 1; degree 0 is the ground field".into(),
            ));
        }
        let x_spec = TowerSpec {
            p,
            start: TowerStart::Polynomial { degree: 2 * p },
            iterations: (n - 1) as usize,
            cap,
        };
        let y_spec = TowerSpec {
            p,
            start: TowerStart::Polynomial { degree: 2 * p - 2 },
            iterations: n as usize,
            cap,
        };
        let x_series = self.stages(x_spec)?[(n - 1) as usize].poincare();
        let y_series = self.stages(y_spec)?[n as usize].poincare();
        let series = x_series.convolve(&y_series)?;
        Ok(ThhAnswer {
            n,
            p,
            q: p as u64,
            cap,
            series,
            x_series,
            y_series,
            citation: format!(
                "thh^[{n}](Z; F_{p}) = B^{n}(x_{}) ⊗ B^{}(y_{})",
                2 * p,
                n + 1,
                2 * p - 2
            ),
        })
    }

    /// thh^[n] of a p-completed number ring with coefficients in its residue
    /// field F_q. The series depends only on the characteristic and on
    /// whether the prime ramifies.
    pub fn thh_local(
        &self,
        n: u32,
        kind: LocalKind,
        p: u32,
        q: u64,
        cap: usize,
    ) -> Result<ThhAnswer> {
        check_prime(p)?;
        check_prime_power(p, q)?;
        match kind {
            LocalKind::Unramified => {
                let mut answer = self.thh_z(n, p, cap)?;
                answer.q = q;
                answer.citation = format!(
                    "thh^[{n}](O; F_{q}) = B^{n}(x_{}) ⊗ B^{}(y_{}), unramified: \
                     the series equals the one for Z",
                    2 * p,
                    n + 1,
                    2 * p - 2
                );
                Ok(answer)
            }
            LocalKind::Ramified => {
                if n == 0 {
                    return Err(Error::InvalidInput(
                        "the tower starts at n = 1; degree 0 is the ground field".into(),
                    ));
                }
                let x_spec = TowerSpec {
                    p,
                    start: TowerStart::Polynomial { degree: 2 },
                    iterations: (n - 1) as usize,
                    cap,
                };
                let y_spec = TowerSpec {
                    p,
                    start: TowerStart::Exterior { degree: 1 },
                    iterations: (n - 1) as usize,
                    cap,
                };
                let x_series = self.stages(x_spec)?[(n - 1) as usize].poincare();
                let y_series = self.stages(y_spec)?[(n - 1) as usize].poincare();
                let series = x_series.convolve(&y_series)?;
                Ok(ThhAnswer {
                    n,
                    p,
                    q,
                    cap,
                    series,
                    x_series,
                    y_series,
                    citation: format!("thh^[{n}](O; F_{q}) = B^{n}(x_2) ⊗ B^{n}(e_1), ramified"),
                })
            }
        }
    }
}

fn check_prime_power(p: u32, q: u64) -> Result<()> {
    let mut m = q;
    while m > 1 && m % p as u64 == 0 {
        m /= p as u64;
    }
    if q < p as u64 || m != 1 {
        return Err(Error::InvalidInput(format!(
            "residue field size {q} is not a power of the characteristic {p}"
        )));
    }
    Ok(())
}

/// One irreducible factor of the reduction mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    /// Rendered factor, e.g. "x^2 + 1".
    pub polynomial: String,
    /// Ascending coefficients of the factor.
    pub coeffs: Vec<u32>,
    pub degree: usize,
    pub multiplicity: u32,
    /// The prime above p cut out by this factor ramifies exactly when the
    /// factor repeats.
    pub ramified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationReport {
    pub p: u32,
    /// The reduction of the input mod p.
    pub reduction: String,
    /// Irreducible factors sorted by degree, then by coefficient vector.
    pub factors: Vec<FactorReport>,
    /// True when any factor repeats.
    pub ramified: bool,
    pub caveat: &'static str,
}

pub const P_MAXIMALITY_CAVEAT: &str = "assumes Z[x]/(f) is maximal at p; when p divides \
     the index of Z[x]/(f) in the ring of integers, the factorization describes this \
     order rather than the maximal one";

/// Factor a monic integer polynomial mod p and report which primes above p
/// ramify. Coefficients ascend: `[c0, c1, ..., 1]`.
pub fn ramification(coeffs: &[i64], p: u32) -> Result<RamificationReport> {
    check_prime(p)?;
    if coeffs.len() < 2 {
        return Err(Error::InvalidInput(
            "the polynomial must be nonconstant".into(),
        ));
    }
    if *coeffs.last().unwrap() != 1 {
        return Err(Error::InvalidInput(
            "the polynomial must be monic over Z".into(),
        ));
    }
    let reduced = FpPoly::from_int(p, coeffs);
    let factors = polyfp::factor(&reduced)?;
    let ramified = factors.iter().any(|(_, e)| *e >= 2);
    // Independent view of the same fact: the reduction is squarefree exactly
    // when it is coprime to its derivative.
    let gcd_view = reduced.gcd(&reduced.derivative());
    let gcd_says_ramified = gcd_view.degree().unwrap_or(0) > 0;
    if gcd_says_ramified != ramified {
        return Err(Error::Internal(
            "factor multiplicities disagree with the squarefree test".into(),
        ));
    }
    let factors = factors
        .into_iter()
        .map(|(g, e)| FactorReport {
            polynomial: g.to_string(),
            degree: g.degree().unwrap_or(0),
            coeffs: g.coeffs().to_vec(),
            multiplicity: e,
            ramified: e >= 2,
        })
        .collect();
    Ok(RamificationReport {
        p,
        reduction: reduced.to_string(),
        factors,
        ramified,
        caveat: P_MAXIMALITY_CAVEAT,
    })
}

/// Dimension of HH_1 of the local piece cut out by one factor, with
/// coefficients in its residue field: 1 when that prime ramifies, else 0.
pub fn hh1_dimension(coeffs: &[i64], p: u32, factor_index: usize) -> Result<u64> {
    let report = ramification(coeffs, p)?;
    let factor = report.factors.get(factor_index).ok_or_else(|| {
        Error::InvalidInput(format!(
            "factor index {factor_index} out of range; the reduction has {} factors",
            report.factors.len()
        ))
    })?;
    Ok(if factor.ramified { 1 } else { 0 })
}
