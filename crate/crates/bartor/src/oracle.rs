//! Closed-form predictions for the Tor towers, independent of the bar
//! engine.
//!
//! Every stage of a tower is a tensor product of four kinds of one- or
//! finite-dimensional "pieces", and Tor of the ground field over each kind
//! is again such a product:
//!
//!   Tor over F_p[x_d]        = Lambda(x_{d+1})
//!   Tor over Lambda(x_d)     = Gamma(x_{d+1})               (p odd)
//!   Tor over F_p[x_d]/(x^h)  = Lambda(x_{d+1}) (x) Gamma(x_{hd+2})
//!
//! At p = 2 an exterior piece is the same algebra as a height-2 truncated
//! piece, and is rewritten as one before the step so the divided-power
//! rule is never asked for an odd degree. Divided pieces are expanded
//! p-typically, Gamma(d) = tensor of F_p[x_{d p^i}]/(x^p) over i >= 0,
//! which is exact degreewise and terminates at the cap.
//!
//! Pieces whose generator degree exceeds the cap contribute nothing below
//! it, and every rule raises degrees, so dropping them is exact for the
//! reported window.

use crate::error::{Error, Result};
use crate::gfp::check_prime;
use crate::series::PoincareSeries;
use crate::tower::{TowerSpec, TowerStart};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    /// F_p[x], |x| = d, d even.
    Polynomial(u32),
    /// Lambda(x), |x| = d, odd unless p = 2.
    Exterior(u32),
    /// Gamma(x), |x| = d, d even.
    Divided(u32),
    /// F_p[x]/(x^h), |x| = d, d even unless p = 2; h >= 2.
    Truncated(u32, u32),
}

impl Piece {
    pub fn degree(self) -> u32 {
        match self {
            Piece::Polynomial(d) | Piece::Exterior(d) | Piece::Divided(d) => d,
            Piece::Truncated(d, _) => d,
        }
    }

    fn validate(self, p: u32) -> Result<()> {
        let bad = |requirement| {
            Err(Error::BadGeneratorDegree { degree: self.degree(), p, requirement })
        };
        match self {
            Piece::Polynomial(d) if d < 2 || d % 2 != 0 => bad("even and >= 2"),
            Piece::Exterior(0) => bad(">= 1"),
            Piece::Exterior(d) if p != 2 && d % 2 == 0 => bad("odd"),
            Piece::Divided(d) if d < 2 || d % 2 != 0 => bad("even and >= 2"),
            Piece::Truncated(_, h) if h < 2 => Err(Error::BadHeight(h)),
            Piece::Truncated(0, _) => bad(">= 1"),
            Piece::Truncated(d, _) if p != 2 && d % 2 != 0 => bad("even and >= 2"),
            _ => Ok(()),
        }
    }

    /// Dimensions contributed below the cap.
    fn series(self, p: u32, cap: usize) -> PoincareSeries {
        let mut dims = vec![0u64; cap + 1];
        match self {
            Piece::Polynomial(d) | Piece::Divided(d) => {
                let mut k = 0usize;
                while k <= cap {
                    dims[k] = 1;
                    k += d as usize;
                }
            }
            Piece::Exterior(d) => {
                dims[0] = 1;
                if (d as usize) <= cap {
                    dims[d as usize] = 1;
                }
            }
            Piece::Truncated(d, h) => {
                let mut k = 0usize;
                let mut pow = 0u32;
                while k <= cap && pow < h {
                    dims[k] = 1;
                    k += d as usize;
                    pow += 1;
                }
            }
        }
        PoincareSeries::new(p, cap, dims)
    }
}

impl std::fmt::Display for Piece {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Piece::Polynomial(d) => write!(f, "P({d})"),
            Piece::Exterior(d) => write!(f, "E({d})"),
            Piece::Divided(d) => write!(f, "G({d})"),
            Piece::Truncated(d, h) => write!(f, "T({d};{h})"),
        }
    }
}

/// A tensor product of pieces over F_p, tracked below a cap. Pieces are
/// kept sorted; the multiset is the identity of the expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceExpression {
    p: u32,
    cap: usize,
    pieces: Vec<Piece>,
}

impl PieceExpression {
    pub fn new(p: u32, cap: usize, pieces: Vec<Piece>) -> Result<Self> {
        check_prime(p)?;
        for piece in &pieces {
            piece.validate(p)?;
        }
        let mut kept: Vec<Piece> =
            pieces.into_iter().filter(|pc| pc.degree() as usize <= cap).collect();
        kept.sort_unstable();
        Ok(PieceExpression { p, cap, pieces: kept })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn series(&self) -> PoincareSeries {
        let mut acc = PoincareSeries::unit(self.p, self.cap);
        for piece in &self.pieces {
            acc = acc.convolve(&piece.series(self.p, self.cap)).expect("caps match");
        }
        acc
    }

    /// Gamma(d) as its p-typical truncated factors, degreewise exact.
    fn expand_divided(&self, d: u32, out: &mut Vec<Piece>) {
        let mut deg = d as u64;
        while deg <= self.cap as u64 {
            out.push(Piece::Truncated(deg as u32, self.p));
            deg *= self.p as u64;
        }
    }
}

impl std::fmt::Display for PieceExpression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "F_{}", self.p);
        }
        let parts: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" (x) "))
    }
}

/// A deliberately wrong rule, for negative-control tests: callers must see
/// the divergence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleFault {
    /// Suspend polynomial generators by 2 instead of 1.
    ShiftPolynomialSuspension,
}

/// One Cartan step: Tor of the ground field over the expression.
pub fn tor_step(expr: &PieceExpression) -> Result<PieceExpression> {
    tor_step_with_fault(expr, None)
}

pub fn tor_step_with_fault(
    expr: &PieceExpression,
    fault: Option<OracleFault>,
) -> Result<PieceExpression> {
    let p = expr.p;
    let mut out: Vec<Piece> = Vec::new();
    for &piece in &expr.pieces {
        // p = 2: a square-zero generator is a height-2 truncated one.
        let piece = match piece {
            Piece::Exterior(d) if p == 2 => Piece::Truncated(d, 2),
            other => other,
        };
        match piece {
            Piece::Polynomial(d) => {
                let shift = match fault {
                    Some(OracleFault::ShiftPolynomialSuspension) => 2,
                    None => 1,
                };
                out.push(Piece::Exterior(d + shift));
            }
            Piece::Exterior(d) => expr.expand_divided(d + 1, &mut out),
            Piece::Divided(d) => {
                // Expand first, then apply the truncated rule to each factor.
                let mut factors = Vec::new();
                expr.expand_divided(d, &mut factors);
                for f in factors {
                    let Piece::Truncated(fd, fh) = f else { unreachable!() };
                    out.push(Piece::Exterior(fd + 1));
                    expr.expand_divided(fh * fd + 2, &mut out);
                }
            }
            Piece::Truncated(d, h) => {
                out.push(Piece::Exterior(d + 1));
                expr.expand_divided(h * d + 2, &mut out);
            }
        }
    }
    PieceExpression::new(p, expr.cap, out)
}

/// Predicted Poincaré series of every tower stage; element i is stage i+1,
/// matching `run_tower`.
pub fn predict_series(spec: &TowerSpec) -> Result<Vec<PoincareSeries>> {
    predict_series_with_fault(spec, None)
}

pub fn predict_series_with_fault(
    spec: &TowerSpec,
    fault: Option<OracleFault>,
) -> Result<Vec<PoincareSeries>> {
    spec.validate()?;
    let start = match spec.start {
        TowerStart::Polynomial { degree } => Piece::Polynomial(degree),
        TowerStart::Exterior { degree } => Piece::Exterior(degree),
    };
    let mut expr = PieceExpression::new(spec.p, spec.cap, vec![start])?;
    let mut out = vec![expr.series()];
    for _ in 0..spec.iterations {
        expr = tor_step_with_fault(&expr, fault)?;
        out.push(expr.series());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra;
    use crate::bar::Limits;
    use crate::tor::tor;

    #[test]
    fn polynomial_step_is_a_suspension() {
        let e = PieceExpression::new(2, 12, vec![Piece::Polynomial(4)]).unwrap();
        let next = tor_step(&e).unwrap();
        assert_eq!(next.pieces(), &[Piece::Exterior(5)]);
        assert_eq!(next.series().support(), vec![0, 5]);
    }

    #[test]
    fn exterior_step_expands_divided_powers() {
        // p = 3, Lambda(5), cap 30: stage 2 is Gamma(6) = T(6;3) (x) T(18;3),
        // dims 1 at 0, 6, 12, 18, 24, 30.
        let e = PieceExpression::new(3, 30, vec![Piece::Exterior(5)]).unwrap();
        let next = tor_step(&e).unwrap();
        assert_eq!(next.pieces(), &[Piece::Truncated(6, 3), Piece::Truncated(18, 3)]);
        assert_eq!(next.series().support(), vec![0, 6, 12, 18, 24, 30]);
    }

    #[test]
    fn divided_expansion_is_series_exact() {
        for (p, d, cap) in [(2u32, 2u32, 16usize), (3, 2, 18), (5, 4, 40)] {
            let direct = PieceExpression::new(p, cap, vec![Piece::Divided(d)]).unwrap();
            let alg = algebra::divided_power(p, d, cap).unwrap();
            assert_eq!(direct.series().dims, alg.poincare().dims, "p={p} d={d}");
        }
    }

    #[test]
    fn p2_exterior_of_even_degree_is_legal() {
        // At p = 2 a square-zero class in even degree steps like a height-2
        // truncated piece; cross-check the series against the engine.
        let e = PieceExpression::new(2, 12, vec![Piece::Exterior(2)]).unwrap();
        let next = tor_step(&e).unwrap();
        let base = algebra::exterior(2, 2, 12).unwrap();
        let t = tor(&base, 12, Limits::default()).unwrap();
        assert_eq!(next.series().dims, t.total_series().dims);
    }

    #[test]
    fn truncated_step_matches_engine() {
        // F_3[u]/(u^3), |u| = 2: Tor = Lambda(3) (x) Gamma(8).
        let e = PieceExpression::new(3, 12, vec![Piece::Truncated(2, 3)]).unwrap();
        let next = tor_step(&e).unwrap();
        let base = algebra::truncated_polynomial(3, 2, 3, 12).unwrap();
        let t = tor(&base, 12, Limits::default()).unwrap();
        assert_eq!(next.series().dims, t.total_series().dims);
    }

    #[test]
    fn truncated_height_differing_from_p() {
        // Height 4 at p = 3: Tor = Lambda(3) (x) Gamma(10), engine-checked.
        let e = PieceExpression::new(3, 14, vec![Piece::Truncated(2, 4)]).unwrap();
        let next = tor_step(&e).unwrap();
        let base = algebra::truncated_polynomial(3, 2, 4, 14).unwrap();
        let t = tor(&base, 14, Limits::default()).unwrap();
        assert_eq!(next.series().dims, t.total_series().dims);
    }

    #[test]
    fn predicted_tower_matches_engine_tower() {
        use crate::tower::{tower_series, TowerSpec, TowerStart};
        let spec = TowerSpec {
            p: 2,
            start: TowerStart::Polynomial { degree: 4 },
            iterations: 3,
            cap: 14,
        };
        let engine = tower_series(&spec, Limits::default()).unwrap();
        let oracle = predict_series(&spec).unwrap();
        assert_eq!(engine.len(), oracle.len());
        for (k, (e, o)) in engine.iter().zip(&oracle).enumerate() {
            assert_eq!(e.dims, o.dims, "stage {}", k + 1);
        }
    }

    #[test]
    fn fault_shifts_the_prediction() {
        let spec = TowerSpec {
            p: 2,
            start: TowerStart::Polynomial { degree: 4 },
            iterations: 1,
            cap: 12,
        };
        let good = predict_series(&spec).unwrap();
        let bad =
            predict_series_with_fault(&spec, Some(OracleFault::ShiftPolynomialSuspension))
                .unwrap();
        assert_eq!(good[1].support(), vec![0, 5]);
        assert_eq!(bad[1].support(), vec![0, 6]);
    }

    #[test]
    fn dropped_pieces_are_exact() {
        // Generator beyond the cap: the expression is the unit below it.
        let e = PieceExpression::new(5, 8, vec![Piece::Polynomial(10)]).unwrap();
        assert!(e.pieces().is_empty());
        assert_eq!(e.series().support(), vec![0]);
    }

    #[test]
    fn parity_is_validated() {
        assert!(PieceExpression::new(3, 10, vec![Piece::Exterior(2)]).is_err());
        assert!(PieceExpression::new(3, 10, vec![Piece::Polynomial(3)]).is_err());
        assert!(PieceExpression::new(2, 10, vec![Piece::Divided(3)]).is_err());
        assert!(PieceExpression::new(2, 10, vec![Piece::Truncated(2, 1)]).is_err());
    }
}
