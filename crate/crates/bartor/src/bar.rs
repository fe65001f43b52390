//! The reduced two-sided bar complex B(k, A, k) of a connected graded
//! algebra, truncated by total degree.
//!
//! Words [a_1|...|a_s] have positive-degree basis letters, homological
//! degree s, internal degree t = sum |a_i|, total degree s + t. The
//! differential merges adjacent letters and preserves t:
//!
//!   d[a_1|...|a_s] = sum over i of (-1)^(e_i) [a_1|...|a_i a_{i+1}|...|a_s],
//!   e_i = sum_{j <= i} (|a_j| + 1).
//!
//! All signs in this file use the shifted degree `|a| + 1`; the same
//! convention drives the shuffle product, which is what makes the Leibniz
//! rule hold on the nose.
//!
//! Words are enumerated for s + t <= cap + 1, one total degree past the
//! cap. That guard row means every bidegree with s + t <= cap sees its
//! complete incoming boundary space, so homology reported under the cap is
//! exact and independent of the cap chosen (truncation stability).

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::gfp::{self, FpMatrix, SparseVec};

pub type Word = Box<[u32]>;

/// Hard resource guards; exceeding one is an error, not a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_words_per_bidegree: usize,
    pub max_total_words: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_words_per_bidegree: 200_000, max_total_words: 4_000_000 }
    }
}

/// Word enumeration order within a bidegree. Lexicographic is the
/// canonical order; the seeded shuffle exists so tests can confirm that
/// reported invariants do not depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordOrder {
    Lexicographic,
    Shuffled(u64),
}

struct WordSet {
    words: Vec<Word>,
    index: HashMap<Word, u32>,
}

impl WordSet {
    fn new() -> Self {
        WordSet { words: Vec::new(), index: HashMap::new() }
    }

    fn reindex(&mut self) {
        self.index =
            self.words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
    }
}

pub struct BarComplex<'a> {
    base: &'a GradedAlgebra,
    cap: usize,
    bidegrees: BTreeMap<(u32, u32), WordSet>,
}

impl<'a> BarComplex<'a> {
    pub fn build(base: &'a GradedAlgebra, cap: usize, limits: Limits) -> Result<Self> {
        Self::build_with_order(base, cap, limits, WordOrder::Lexicographic)
    }

    pub fn build_with_order(
        base: &'a GradedAlgebra,
        cap: usize,
        limits: Limits,
        order: WordOrder,
    ) -> Result<Self> {
        if cap > base.cap() {
            return Err(Error::CapExceedsBase { requested: cap, base: base.cap() });
        }
        let guard = cap + 1;
        let mut bidegrees: BTreeMap<(u32, u32), WordSet> = BTreeMap::new();
        let empty = WordSet {
            words: vec![Vec::new().into_boxed_slice()],
            index: HashMap::from([(Vec::new().into_boxed_slice(), 0u32)]),
        };
        bidegrees.insert((0, 0), empty);
        let mut total: usize = 1;

        // Level-by-level extension; a lex-ordered parent stream extended by
        // ascending letters stays lex-ordered, bucketed or not.
        let mut level: Vec<(Word, u32)> = vec![(Vec::new().into_boxed_slice(), 0)];
        let mut s: u32 = 1;
        while !level.is_empty() {
            let mut next: Vec<(Word, u32)> = Vec::new();
            for (w, t) in &level {
                for id in base.positive_basis() {
                    let d = base.degree(id);
                    let nt = t + d;
                    if s as usize + nt as usize > guard {
                        break; // ids come in ascending degree
                    }
                    let mut letters = Vec::with_capacity(w.len() + 1);
                    letters.extend_from_slice(w);
                    letters.push(id);
                    next.push((letters.into_boxed_slice(), nt));
                }
            }
            for (w, t) in &next {
                let set = bidegrees.entry((s, *t)).or_insert_with(WordSet::new);
                if set.words.len() + 1 > limits.max_words_per_bidegree {
                    return Err(Error::ResourceLimit {
                        stage: None,
                        s,
                        t: *t,
                        needed: set.words.len() + 1,
                        limit: limits.max_words_per_bidegree,
                    });
                }
                total += 1;
                if total > limits.max_total_words {
                    return Err(Error::ResourceLimit {
                        stage: None,
                        s,
                        t: *t,
                        needed: total,
                        limit: limits.max_total_words,
                    });
                }
                set.index.insert(w.clone(), set.words.len() as u32);
                set.words.push(w.clone());
            }
            level = next;
            s += 1;
        }

        if let WordOrder::Shuffled(seed) = order {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for set in bidegrees.values_mut() {
                set.words.shuffle(&mut rng);
                set.reindex();
            }
        }

        Ok(BarComplex { base, cap, bidegrees })
    }

    pub fn base(&self) -> &GradedAlgebra {
        &self.base
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Bidegrees holding at least one word, including the guard row
    /// s + t = cap + 1.
    pub fn bidegree_list(&self) -> Vec<(u32, u32)> {
        self.bidegrees.keys().copied().collect()
    }

    pub fn words(&self, s: u32, t: u32) -> &[Word] {
        self.bidegrees.get(&(s, t)).map_or(&[], |set| set.words.as_slice())
    }

    fn index_of(&self, s: u32, t: u32, w: &[u32]) -> Result<u32> {
        self.bidegrees
            .get(&(s, t))
            .and_then(|set| set.index.get(w))
            .copied()
            .ok_or_else(|| {
                Error::Internal(format!("word missing from bidegree ({s}, {t}): {w:?}"))
            })
    }

    fn shifted_parity(&self, id: u32) -> bool {
        (self.base.degree(id) + 1) % 2 == 1
    }

    /// Columns of the differential out of (s, t), each a sparse vector in
    /// the word coordinates of (s-1, t).
    pub fn differential_columns(&self, s: u32, t: u32) -> Result<Vec<SparseVec>> {
        let p = self.p();
        let words = self.words(s, t);
        let mut cols = Vec::with_capacity(words.len());
        for w in words {
            if s < 2 {
                cols.push(Vec::new());
                continue;
            }
            let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
            let mut prefix_parity = false;
            for k in 0..w.len() - 1 {
                prefix_parity ^= self.shifted_parity(w[k]);
                let prod = self.base.product_ref(w[k], w[k + 1]).map_err(|_| {
                    Error::Internal("untracked product inside a differential".into())
                })?;
                for &(target, c) in prod {
                    let mut merged = Vec::with_capacity(w.len() - 1);
                    merged.extend_from_slice(&w[..k]);
                    merged.push(target);
                    merged.extend_from_slice(&w[k + 2..]);
                    let idx = self.index_of(s - 1, t, &merged)?;
                    let signed = if prefix_parity { gfp::neg_mod(c, p) } else { c };
                    let e = acc.entry(idx).or_insert(0);
                    *e = gfp::add_mod(*e, signed, p);
                }
            }
            cols.push(acc.into_iter().filter(|&(_, c)| c != 0).collect());
        }
        Ok(cols)
    }

    /// Dense view of the same differential: rows indexed by (s-1, t) words,
    /// columns by (s, t) words.
    pub fn differential_matrix(&self, s: u32, t: u32) -> Result<FpMatrix> {
        let nrows = self.words(s.saturating_sub(1), t).len();
        let cols = self.differential_columns(s, t)?;
        let mut m = FpMatrix::zero(self.p(), nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for &(i, c) in col {
                m.set(i as usize, j, c);
            }
        }
        Ok(m)
    }

    /// All shuffles of two words with their Koszul signs (true = negative).
    /// The sign of an interleaving multiplies (-1)^(<a><b>) over every pair
    /// (a from u, b from v) that ends up inverted, <x> = |x| + 1.
    pub fn shuffle_words(&self, u: &[u32], v: &[u32]) -> Vec<(Word, bool)> {
        let mut suffix = vec![false; u.len() + 1];
        for i in (0..u.len()).rev() {
            suffix[i] = suffix[i + 1] ^ self.shifted_parity(u[i]);
        }
        let mut out = Vec::new();
        let mut acc: Vec<u32> = Vec::with_capacity(u.len() + v.len());
        self.shuffle_rec(u, v, &suffix, 0, 0, false, &mut acc, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn shuffle_rec(
        &self,
        u: &[u32],
        v: &[u32],
        suffix: &[bool],
        i: usize,
        j: usize,
        neg: bool,
        acc: &mut Vec<u32>,
        out: &mut Vec<(Word, bool)>,
    ) {
        if i == u.len() && j == v.len() {
            out.push((acc.clone().into_boxed_slice(), neg));
            return;
        }
        if i < u.len() {
            acc.push(u[i]);
            self.shuffle_rec(u, v, suffix, i + 1, j, neg, acc, out);
            acc.pop();
        }
        if j < v.len() {
            // v[j] crosses the remaining letters of u.
            let crossing = self.shifted_parity(v[j]) && suffix[i];
            acc.push(v[j]);
            self.shuffle_rec(u, v, suffix, i, j + 1, neg ^ crossing, acc, out);
            acc.pop();
        }
    }

    /// Shuffle product of linear combinations of words, landing in
    /// bidegree (s1+s2, t1+t2). The combined total degree must stay within
    /// the cap.
    pub fn shuffle(
        &self,
        (s1, t1): (u32, u32),
        v1: &SparseVec,
        (s2, t2): (u32, u32),
        v2: &SparseVec,
    ) -> Result<SparseVec> {
        let p = self.p();
        let (s, t) = (s1 + s2, t1 + t2);
        if s as usize + t as usize > self.cap {
            return Err(Error::Untracked {
                left_degree: s1 + t1,
                right_degree: s2 + t2,
                cap: self.cap,
            });
        }
        if v1.is_empty() || v2.is_empty() {
            return Ok(Vec::new());
        }
        let w1 = self.words(s1, t1);
        let w2 = self.words(s2, t2);
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for &(i1, c1) in v1 {
            for &(i2, c2) in v2 {
                let c = gfp::mul_mod(c1, c2, p);
                if c == 0 {
                    continue;
                }
                for (word, negative) in
                    self.shuffle_words(&w1[i1 as usize], &w2[i2 as usize])
                {
                    let idx = self.index_of(s, t, &word)?;
                    let signed = if negative { gfp::neg_mod(c, p) } else { c };
                    let e = acc.entry(idx).or_insert(0);
                    *e = gfp::add_mod(*e, signed, p);
                }
            }
        }
        Ok(acc.into_iter().filter(|&(_, c)| c != 0).collect())
    }

    /// Debug dump of one bidegree: the word list (letter names) and the
    /// outgoing differential as a triplet list.
    pub fn bidegree_json(&self, s: u32, t: u32) -> Result<serde_json::Value> {
        let words: Vec<Vec<&str>> = self
            .words(s, t)
            .iter()
            .map(|w| w.iter().map(|&id| self.base.name(id)).collect())
            .collect();
        let cols = self.differential_columns(s, t)?;
        let mut entries = Vec::new();
        for (j, col) in cols.iter().enumerate() {
            for &(i, c) in col {
                entries.push(serde_json::json!([i, j, c]));
            }
        }
        Ok(serde_json::json!({
            "s": s,
            "t": t,
            "words": words,
            "differential": {
                "rows": self.words(s.saturating_sub(1), t).len(),
                "cols": self.words(s, t).len(),
                "entries": entries,
            },
        }))
    }

    /// Total number of enumerated words, guard row included.
    pub fn total_words(&self) -> usize {
        self.bidegrees.values().map(|set| set.words.len()).sum()
    }
}
