//! Tor of the ground field against itself over a connected graded algebra,
//! computed as homology of the reduced bar complex, with the algebra
//! structure induced by the shuffle product.
//!
//! Homology is taken bidegree by bidegree. Within one internal degree t the
//! differential only moves the homological degree s, and the guard row of
//! [`crate::bar`] guarantees the incoming boundaries of every reported
//! bidegree (s + t <= cap) are complete. Representatives are chosen
//! deterministically: the canonical kernel basis of the outgoing
//! differential, reduced against the boundary space first and earlier
//! representatives next, in order. Products are solved against the basis
//! [boundaries | representatives]; only the representative coordinates
//! survive, and those are unique because that family is independent.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::GradedAlgebra;
use crate::bar::{BarComplex, Limits};
use crate::error::{Error, Result};
use crate::gfp::{analyze_columns, Inserted, Reducer, SparseVec};
use crate::series::{series_inverse, PoincareSeries};

pub struct TorAlgebra {
    p: u32,
    cap: usize,
    /// Nonzero homology dimensions for s + t <= cap.
    bidims: BTreeMap<(u32, u32), u64>,
    /// Chosen cycle representatives, in the word coordinates of their
    /// bidegree.
    reps: BTreeMap<(u32, u32), Vec<SparseVec>>,
    /// The bigrading collapsed to total degree, with the induced product.
    total: GradedAlgebra,
}

impl TorAlgebra {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn bidim(&self, s: u32, t: u32) -> u64 {
        self.bidims.get(&(s, t)).copied().unwrap_or(0)
    }

    pub fn bidims(&self) -> &BTreeMap<(u32, u32), u64> {
        &self.bidims
    }

    pub fn representatives(&self, s: u32, t: u32) -> &[SparseVec] {
        self.reps.get(&(s, t)).map_or(&[], |v| v.as_slice())
    }

    pub fn as_algebra(&self) -> &GradedAlgebra {
        &self.total
    }

    pub fn into_algebra(self) -> GradedAlgebra {
        self.total
    }

    pub fn total_series(&self) -> PoincareSeries {
        self.total.poincare()
    }

    /// {"bidims": [[s, t, dim], ...], "series": {...}} with bidims sorted.
    pub fn to_json(&self) -> serde_json::Value {
        let bidims: Vec<serde_json::Value> = self
            .bidims
            .iter()
            .map(|(&(s, t), &d)| serde_json::json!([s, t, d]))
            .collect();
        serde_json::json!({
            "bidims": bidims,
            "series": serde_json::to_value(self.total_series()).unwrap(),
        })
    }

    /// Euler-characteristic identity against the base algebra's series:
    /// for every complete column t, sum over s of (-1)^s dim Tor_{s,t}
    /// equals the coefficient of z^t in the inverse Hilbert series. A
    /// column is complete when even the longest possible words stay under
    /// the cap, t + floor(t/dmin) <= cap.
    pub fn euler_check(&self, base: &GradedAlgebra) -> Result<()> {
        let inverse = series_inverse(&base.poincare())?;
        let dmin = base.min_positive_degree();
        for t in 0..=self.cap as u32 {
            let complete = match dmin {
                None => true,
                Some(d) => t as usize + (t / d) as usize <= self.cap,
            };
            if !complete {
                continue;
            }
            let mut sum: i128 = 0;
            for (&(s, tt), &dim) in &self.bidims {
                if tt == t {
                    sum += if s % 2 == 0 { dim as i128 } else { -(dim as i128) };
                }
            }
            if sum != inverse.coeffs[t as usize] {
                return Err(Error::Internal(format!(
                    "Euler characteristic mismatch at t = {t}: homology gives {sum}, \
                     inverse Hilbert series gives {}",
                    inverse.coeffs[t as usize]
                )));
            }
        }
        Ok(())
    }
}

/// Per-bidegree homology solver: the cycle space echeloned with
/// combination tracking over [boundary basis | kernel vectors]. Only the
/// kernel vectors that became pivots are representatives, so solve results
/// are translated through `rep_of_source`.
struct BidegreeSolver {
    reducer: Reducer,
    boundary_count: usize,
    rep_of_source: HashMap<u32, u32>,
}

/// Tor over `base`, reported for total degrees <= cap.
pub fn tor(base: &GradedAlgebra, cap: usize, limits: Limits) -> Result<TorAlgebra> {
    let bar = BarComplex::build(base, cap, limits)?;
    tor_of_bar(&bar)
}

/// Same, over an already-built bar complex (any word order).
pub fn tor_of_bar(bar: &BarComplex) -> Result<TorAlgebra> {
    let p = bar.p();
    let cap = bar.cap();

    let mut bidims: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    let mut reps: BTreeMap<(u32, u32), Vec<SparseVec>> = BTreeMap::new();
    let mut solvers: HashMap<(u32, u32), BidegreeSolver> = HashMap::new();

    // Group occupied bidegrees by internal degree.
    let mut columns: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (s, t) in bar.bidegree_list() {
        columns.entry(t).or_default().push(s);
    }

    for (&t, s_list) in &columns {
        // Differentials for the whole t-column, incoming ones included.
        let mut diff: HashMap<u32, Vec<SparseVec>> = HashMap::new();
        for &s in s_list {
            diff.insert(s, bar.differential_columns(s, t)?);
        }
        for &s in s_list {
            if s as usize + t as usize > cap {
                continue; // guard row: words exist only to feed boundaries
            }
            let nwords = bar.words(s, t).len();
            let below = bar.words(s.saturating_sub(1), t).len();
            let down = &diff[&s];
            let kernel = analyze_columns(p, below, down).kernel;

            let empty = Vec::new();
            let up = diff.get(&(s + 1)).unwrap_or(&empty);
            let mut probe = Reducer::new(p, nwords, false);
            let mut boundary_basis: Vec<&SparseVec> = Vec::new();
            for col in up {
                if let Inserted::Pivot(_) = probe.insert(col) {
                    boundary_basis.push(col);
                }
            }

            let mut solver = Reducer::new(p, nwords, true);
            for b in &boundary_basis {
                match solver.insert(b) {
                    Inserted::Pivot(_) => {}
                    Inserted::Dependent(_) => {
                        return Err(Error::Internal(format!(
                            "boundary basis degenerated at ({s}, {t})"
                        )));
                    }
                }
            }
            let mut chosen: Vec<SparseVec> = Vec::new();
            let mut rep_of_source: HashMap<u32, u32> = HashMap::new();
            for kv in &kernel {
                let source = solver.sources();
                if let Inserted::Pivot(_) = solver.insert(kv) {
                    rep_of_source.insert(source, chosen.len() as u32);
                    chosen.push(kv.clone());
                }
            }
            // Rank bookkeeping: if the boundaries were not all cycles this
            // count breaks, so it doubles as a d∘d = 0 audit.
            if chosen.len() + boundary_basis.len() != kernel.len() {
                return Err(Error::Internal(format!(
                    "boundaries escape the cycle space at ({s}, {t}): \
                     {} boundaries, {} kernel vectors, {} representatives",
                    boundary_basis.len(),
                    kernel.len(),
                    chosen.len()
                )));
            }
            if !chosen.is_empty() {
                bidims.insert((s, t), chosen.len() as u64);
                reps.insert((s, t), chosen);
            }
            solvers.insert(
                (s, t),
                BidegreeSolver {
                    reducer: solver,
                    boundary_count: boundary_basis.len(),
                    rep_of_source,
                },
            );
        }
    }

    // Global class ids: by total degree, then s, then representative index.
    // (0, 0) is the class of the empty word, the unit.
    let mut names_by_degree: Vec<Vec<String>> = vec![Vec::new(); cap + 2];
    names_by_degree[0].push("1".to_string());
    let mut id_of: HashMap<(u32, u32, u32), u32> = HashMap::new();
    let mut place: Vec<(u32, u32, u32)> = vec![(0, 0, 0)];
    {
        let mut ordered: Vec<(u32, u32, u64)> =
            bidims.iter().map(|(&(s, t), &d)| (s, t, d)).collect();
        ordered.sort_unstable_by_key(|&(s, t, _)| (s as usize + t as usize, s));
        for (s, t, d) in ordered {
            if (s, t) == (0, 0) {
                id_of.insert((0, 0, 0), 0);
                continue;
            }
            for i in 0..d as u32 {
                id_of.insert((s, t, i), place.len() as u32);
                place.push((s, t, i));
                names_by_degree[s as usize + t as usize].push(format!("h{s}.{t}.{i}"));
            }
        }
    }

    // Induced products: shuffle representatives, solve back to classes.
    let n = place.len() as u32;
    let mut mul: HashMap<(u32, u32), Vec<(u32, u32)>> = HashMap::new();
    for a in 1..n {
        let (s1, t1, i1) = place[a as usize];
        let u1 = (s1 + t1) as usize;
        for b in 1..n {
            let (s2, t2, i2) = place[b as usize];
            let u2 = (s2 + t2) as usize;
            if u1 + u2 > cap {
                continue;
            }
            let rep1 = &reps[&(s1, t1)][i1 as usize];
            let rep2 = &reps[&(s2, t2)][i2 as usize];
            let product = bar.shuffle((s1, t1), rep1, (s2, t2), rep2)?;
            let (s, t) = (s1 + s2, t1 + t2);
            let mut lin: Vec<(u32, u32)> = Vec::new();
            if !product.is_empty() {
                let solver = solvers.get_mut(&(s, t)).ok_or_else(|| {
                    Error::Internal(format!("no solver for product bidegree ({s}, {t})"))
                })?;
                let (rem, comb) = solver.reducer.reduce(&product);
                if !rem.is_empty() {
                    return Err(Error::Internal(format!(
                        "product of cycles is not in the cycle space at ({s}, {t})"
                    )));
                }
                for (src, c) in comb {
                    if (src as usize) < solver.boundary_count {
                        continue; // boundary component: zero in homology
                    }
                    let Some(&i) = solver.rep_of_source.get(&src) else {
                        return Err(Error::Internal(format!(
                            "solve at ({s}, {t}) referenced a dependent source"
                        )));
                    };
                    lin.push((id_of[&(s, t, i)], c));
                }
                lin.sort_unstable_by_key(|&(k, _)| k);
            }
            mul.insert((a, b), lin);
        }
    }

    let total = GradedAlgebra::assemble(p, cap, names_by_degree, mul)?;
    Ok(TorAlgebra { p, cap, bidims, reps, total })
}
