//! Poincaré series truncated at a degree cap.
//!
//! A series records dimensions for degrees 0..=cap; degrees beyond the cap
//! are unknown, not zero. Operations therefore only combine series with
//! equal caps (and equal characteristic, so queries over different fields
//! are never mixed by accident).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSeries {
    pub p: u32,
    pub cap: usize,
    /// dims[t] for t = 0..=cap; length is always cap+1.
    pub dims: Vec<u64>,
}

impl PoincareSeries {
    pub fn new(p: u32, cap: usize, mut dims: Vec<u64>) -> Self {
        dims.resize(cap + 1, 0);
        PoincareSeries { p, cap, dims }
    }

    /// The series of the zero-dimensional unit algebra: 1, 0, 0, ...
    pub fn unit(p: u32, cap: usize) -> Self {
        let mut dims = vec![0; cap + 1];
        dims[0] = 1;
        PoincareSeries { p, cap, dims }
    }

    pub fn get(&self, t: usize) -> u64 {
        self.dims.get(t).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    /// Truncate to a smaller cap.
    pub fn prefix(&self, cap: usize) -> Result<PoincareSeries> {
        if cap > self.cap {
            return Err(Error::CapExceedsBase { requested: cap, base: self.cap });
        }
        Ok(PoincareSeries { p: self.p, cap, dims: self.dims[..=cap].to_vec() })
    }

    /// Degreewise product of graded vector spaces (Cauchy convolution).
    pub fn convolve(&self, other: &PoincareSeries) -> Result<PoincareSeries> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch { left: self.p, right: other.p });
        }
        if self.cap != other.cap {
            return Err(Error::CapMismatch { left: self.cap, right: other.cap });
        }
        let mut dims = vec![0u64; self.cap + 1];
        for (i, &a) in self.dims.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.dims.iter().enumerate() {
                if i + j > self.cap {
                    break;
                }
                dims[i + j] += a * b;
            }
        }
        Ok(PoincareSeries { p: self.p, cap: self.cap, dims })
    }

    /// Positions of the nonzero dimensions; handy in tests.
    pub fn support(&self) -> Vec<usize> {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(t, _)| t)
            .collect()
    }
}

/// Integer power series with signs, for Euler-characteristic bookkeeping.
/// Coefficients stay tiny in practice (alternating sums of word counts),
/// but i128 removes any doubt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedSeries {
    pub cap: usize,
    pub coeffs: Vec<i128>,
}

/// Multiplicative inverse of a series with constant term 1, to the same cap:
/// c_0 = 1 and c_t = -sum_{k=1..t} dims[k] * c_{t-k}.
pub fn series_inverse(s: &PoincareSeries) -> Result<SignedSeries> {
    if s.get(0) != 1 {
        return Err(Error::InvalidInput(format!(
            "series inverse needs constant term 1, found {}",
            s.get(0)
        )));
    }
    let mut coeffs = vec![0i128; s.cap + 1];
    coeffs[0] = 1;
    for t in 1..=s.cap {
        let mut acc: i128 = 0;
        for k in 1..=t {
            acc += s.dims[k] as i128 * coeffs[t - k];
        }
        coeffs[t] = -acc;
    }
    Ok(SignedSeries { cap: s.cap, coeffs })
}
