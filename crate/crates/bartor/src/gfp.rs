//! Exact linear algebra over the prime field F_p.
//!
//! The modulus is a runtime value carried per matrix and per vector, never a
//! type parameter. Dense [`FpMatrix`] operations are the correctness
//! baseline: plain Gauss-Jordan with a fixed pivot rule (lowest column
//! index first, first nonzero row). [`Reducer`] is the sparse elimination
//! engine used on hot paths; it must produce byte-identical answers to the
//! dense ops, and the tests check that on random instances.
//!
//! Canonical form conventions, relied on across the crate:
//! * RREF pivot columns are the lexicographically earliest independent
//!   column set, so "image basis" and "first solution" are deterministic.
//! * The kernel basis has one vector per free column f, with entry 1 at f,
//!   0 at the other free columns, and forced entries at the pivot columns.

use crate::error::{Error, Result};

/// Trial division; the moduli in this crate are small.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + (p - b % p) as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a % p == 0 {
        0
    } else {
        p - a % p
    }
}

pub fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1u32 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse mod p. `a` must be nonzero mod p.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverse of 0 mod {p}");
    pow_mod(a, p as u64 - 2, p)
}

/// A scalar in F_p. The modulus rides along so mixed-modulus arithmetic is
/// caught at the point of use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub value: u32,
    pub p: u32,
}

impl Fp {
    pub fn new(value: u32, p: u32) -> Self {
        Fp { value: value % p, p }
    }

    pub fn zero(p: u32) -> Self {
        Fp { value: 0, p }
    }

    pub fn one(p: u32) -> Self {
        Fp { value: 1 % p, p }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same(self, other: Fp) {
        assert_eq!(self.p, other.p, "mixed moduli {} and {}", self.p, other.p);
    }

    pub fn add(self, other: Fp) -> Fp {
        self.same(other);
        Fp::new(add_mod(self.value, other.value, self.p), self.p)
    }

    pub fn sub(self, other: Fp) -> Fp {
        self.same(other);
        Fp::new(sub_mod(self.value, other.value, self.p), self.p)
    }

    pub fn mul(self, other: Fp) -> Fp {
        self.same(other);
        Fp::new(mul_mod(self.value, other.value, self.p), self.p)
    }

    pub fn neg(self) -> Fp {
        Fp::new(neg_mod(self.value, self.p), self.p)
    }

    /// Panics on zero.
    pub fn inv(self) -> Fp {
        assert!(self.value != 0, "inverse of 0 in F_{}", self.p);
        Fp::new(inv_mod(self.value, self.p), self.p)
    }
}

/// Dense vector over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpVector {
    pub p: u32,
    pub entries: Vec<u32>,
}

impl FpVector {
    pub fn new(p: u32, entries: Vec<u32>) -> Self {
        let entries = entries.into_iter().map(|e| e % p).collect();
        FpVector { p, entries }
    }

    pub fn zero(p: u32, len: usize) -> Self {
        FpVector { p, entries: vec![0; len] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// self += c * other
    pub fn add_scaled(&mut self, other: &FpVector, c: u32) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch { left: self.p, right: other.p });
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            *a = add_mod(*a, mul_mod(c, b, self.p), self.p);
        }
        Ok(())
    }

    /// Sparse view: (index, coeff) pairs for the nonzero entries.
    pub fn to_sparse(&self) -> SparseVec {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i as u32, e))
            .collect()
    }

    pub fn from_sparse(p: u32, len: usize, sparse: &[(u32, u32)]) -> Self {
        let mut entries = vec![0u32; len];
        for &(i, c) in sparse {
            entries[i as usize] = c % p;
        }
        FpVector { p, entries }
    }
}

/// Dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    nrows: usize,
    ncols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zero(p: u32, nrows: usize, ncols: usize) -> Self {
        FpMatrix { p, nrows, ncols, data: vec![0; nrows * ncols] }
    }

    pub fn from_rows(p: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::LengthMismatch { left: ncols, right: row.len() });
            }
            data.extend(row.iter().map(|&e| e % p));
        }
        Ok(FpMatrix { p, nrows, ncols, data })
    }

    /// Build from column vectors. An empty list yields a `nrows` x 0 matrix.
    pub fn from_columns(p: u32, nrows: usize, cols: &[FpVector]) -> Result<Self> {
        let mut m = FpMatrix::zero(p, nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.p != p {
                return Err(Error::ModulusMismatch { left: p, right: col.p });
            }
            if col.len() != nrows {
                return Err(Error::LengthMismatch { left: nrows, right: col.len() });
            }
            for (i, &e) in col.entries.iter().enumerate() {
                m.set(i, j, e);
            }
        }
        Ok(m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.ncols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.ncols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.ncols..(r + 1) * self.ncols]
    }

    pub fn column(&self, c: usize) -> FpVector {
        let entries = (0..self.nrows).map(|r| self.get(r, c)).collect();
        FpVector { p: self.p, entries }
    }

    /// Reduced row echelon form and the pivot columns, in ascending order.
    /// Pivot rule: scan columns left to right, take the first nonzero row.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.ncols {
            if r == m.nrows {
                break;
            }
            let Some(pr) = (r..m.nrows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..m.ncols {
                    let a = m.get(r, k);
                    let b = m.get(pr, k);
                    m.set(r, k, b);
                    m.set(pr, k, a);
                }
            }
            let inv = inv_mod(m.get(r, c), p);
            for k in 0..m.ncols {
                m.set(r, k, mul_mod(m.get(r, k), inv, p));
            }
            for i in 0..m.nrows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for k in 0..m.ncols {
                        let v = sub_mod(m.get(i, k), mul_mod(f, m.get(r, k), p), p);
                        m.set(i, k, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis: one vector per free column, unit there,
    /// zero at the other free columns.
    pub fn kernel_basis(&self) -> Vec<FpVector> {
        let (rref, pivots) = self.rref();
        let p = self.p;
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.ncols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for f in 0..self.ncols {
            if pivot_set[f] {
                continue;
            }
            let mut vec = vec![0u32; self.ncols];
            vec[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                vec[pc] = neg_mod(rref.get(i, f), p);
            }
            basis.push(FpVector { p, entries: vec });
        }
        basis
    }

    /// The original columns sitting at the pivot positions: a deterministic
    /// basis of the column space.
    pub fn image_basis(&self) -> Vec<FpVector> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &FpVector) -> Result<FpVector> {
        if v.p != self.p {
            return Err(Error::ModulusMismatch { left: self.p, right: v.p });
        }
        if v.len() != self.ncols {
            return Err(Error::LengthMismatch { left: self.ncols, right: v.len() });
        }
        let mut out = vec![0u32; self.nrows];
        for r in 0..self.nrows {
            let mut acc = 0u64;
            for c in 0..self.ncols {
                acc += self.get(r, c) as u64 * v.entries[c] as u64;
                if acc >= u64::MAX / 2 {
                    acc %= self.p as u64;
                }
            }
            out[r] = (acc % self.p as u64) as u32;
        }
        Ok(FpVector { p: self.p, entries: out })
    }
}

/// Express `target` in a spanning set, if possible.
///
/// Returns the unique solution supported on the lexicographically earliest
/// independent subset of `spanning` (free coefficients are 0), or `None`
/// when the target is outside the span. `Err` is reserved for malformed
/// input; "not in span" is not an error.
pub fn solve_in_span(target: &FpVector, spanning: &[FpVector]) -> Result<Option<Vec<Fp>>> {
    let p = target.p;
    let n = target.len();
    for v in spanning {
        if v.p != p {
            return Err(Error::ModulusMismatch { left: p, right: v.p });
        }
        if v.len() != n {
            return Err(Error::LengthMismatch { left: n, right: v.len() });
        }
    }
    let k = spanning.len();
    // Augmented matrix [spanning | target].
    let mut m = FpMatrix::zero(p, n, k + 1);
    for (j, v) in spanning.iter().enumerate() {
        for (i, &e) in v.entries.iter().enumerate() {
            m.set(i, j, e);
        }
    }
    for (i, &e) in target.entries.iter().enumerate() {
        m.set(i, k, e);
    }
    let (rref, pivots) = m.rref();
    if pivots.contains(&k) {
        return Ok(None);
    }
    let mut coeffs = vec![Fp::zero(p); k];
    for (i, &c) in pivots.iter().enumerate() {
        coeffs[c] = Fp::new(rref.get(i, k), p);
    }
    Ok(Some(coeffs))
}

/// Dense echelon scratch used by `quotient_representatives`: rows kept
/// normalized with distinct pivot columns, not fully reduced.
struct DenseEchelon {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    row_of_col: Vec<Option<usize>>,
}

impl DenseEchelon {
    fn new(p: u32, n: usize) -> Self {
        DenseEchelon { p, n, rows: Vec::new(), row_of_col: vec![None; n] }
    }

    /// Reduce `v` in place against the echelon; returns the pivot column of
    /// the remainder, if any.
    fn reduce(&self, v: &mut [u32]) -> Option<usize> {
        let p = self.p;
        let mut lead = None;
        for c in 0..self.n {
            if v[c] == 0 {
                continue;
            }
            match self.row_of_col[c] {
                Some(r) => {
                    let f = v[c];
                    let row = &self.rows[r];
                    for k in c..self.n {
                        if row[k] != 0 {
                            v[k] = sub_mod(v[k], mul_mod(f, row[k], p), p);
                        }
                    }
                }
                None => {
                    if lead.is_none() {
                        lead = Some(c);
                    }
                }
            }
        }
        lead
    }

    /// Returns false when v reduced to zero.
    fn insert(&mut self, v: &FpVector) -> bool {
        let mut w = v.entries.clone();
        let Some(lead) = self.reduce(&mut w) else {
            return false;
        };
        let inv = inv_mod(w[lead], self.p);
        for e in w.iter_mut() {
            *e = mul_mod(*e, inv, self.p);
        }
        self.row_of_col[lead] = Some(self.rows.len());
        self.rows.push(w);
        true
    }
}

/// Representatives of `space / span(sub)`, chosen greedily from `space` in
/// the given order; returned vectors are elements of `space` itself.
/// Every vector of `sub` must lie in the span of `space`.
pub fn quotient_representatives(space: &[FpVector], sub: &[FpVector]) -> Result<Vec<FpVector>> {
    if space.is_empty() {
        for (i, v) in sub.iter().enumerate() {
            if !v.is_zero() {
                return Err(Error::SubspaceNotContained { index: i });
            }
        }
        return Ok(Vec::new());
    }
    let p = space[0].p;
    let n = space[0].len();
    for v in space.iter().chain(sub) {
        if v.p != p {
            return Err(Error::ModulusMismatch { left: p, right: v.p });
        }
        if v.len() != n {
            return Err(Error::LengthMismatch { left: n, right: v.len() });
        }
    }
    let mut ambient = DenseEchelon::new(p, n);
    for v in space {
        ambient.insert(v);
    }
    let mut echelon = DenseEchelon::new(p, n);
    for (i, v) in sub.iter().enumerate() {
        let mut w = v.entries.clone();
        if ambient.reduce(&mut w).is_some() {
            return Err(Error::SubspaceNotContained { index: i });
        }
        echelon.insert(v);
    }
    let mut reps = Vec::new();
    for v in space {
        if echelon.insert(v) {
            reps.push(v.clone());
        }
    }
    Ok(reps)
}

/// Sparse vector: (index, coefficient) pairs, sorted by index, coefficients
/// in 1..p.
pub type SparseVec = Vec<(u32, u32)>;

/// Outcome of [`Reducer::insert`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inserted {
    /// The vector was independent; it became a new echelon row with this
    /// pivot column.
    Pivot(u32),
    /// The vector reduced to zero. The payload is the dependency over the
    /// source indices: sum(comb[i] * source_i) = 0, with coefficient 1 on
    /// the vector just inserted. Empty unless tracking is on.
    Dependent(SparseVec),
}

/// Incremental sparse echelon over F_p with optional combination tracking.
///
/// Rows are reduced against earlier rows only (echelon, not RREF), each
/// normalized to leading coefficient 1 at its pivot (lowest index). With
/// tracking on, each row remembers its expression in the inserted source
/// vectors, so reducing a vector also expresses it in the sources: the
/// uniqueness arguments in `tor` depend on pivots being the
/// lexicographically earliest independent columns, which this insertion
/// order guarantees.
pub struct Reducer {
    p: u32,
    ncols: usize,
    rows: Vec<SparseVec>,
    combs: Vec<SparseVec>,
    row_of_col: Vec<u32>,
    track: bool,
    nsources: u32,
    buf: Vec<u32>,
    comb_buf: Vec<u32>,
    comb_touched: Vec<u32>,
}

const NO_ROW: u32 = u32::MAX;

impl Reducer {
    pub fn new(p: u32, ncols: usize, track: bool) -> Self {
        Reducer {
            p,
            ncols,
            rows: Vec::new(),
            combs: Vec::new(),
            row_of_col: vec![NO_ROW; ncols],
            track,
            nsources: 0,
            buf: vec![0; ncols],
            comb_buf: Vec::new(),
            comb_touched: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn sources(&self) -> u32 {
        self.nsources
    }

    /// Reduce `v` against the echelon. Returns `(remainder, comb)` with
    /// v = sum(comb[i] * source_i) + remainder. `comb` is empty when
    /// tracking is off.
    pub fn reduce(&mut self, v: &[(u32, u32)]) -> (SparseVec, SparseVec) {
        let p = self.p;
        let mut min_col = self.ncols;
        for &(i, c) in v {
            let i = i as usize;
            debug_assert!(i < self.ncols && c % p != 0);
            self.buf[i] = add_mod(self.buf[i], c, p);
            if i < min_col {
                min_col = i;
            }
        }
        if self.track && self.comb_buf.len() < self.nsources as usize {
            self.comb_buf.resize(self.nsources as usize, 0);
        }
        let mut rem = Vec::new();
        let mut c = min_col;
        while c < self.ncols {
            let val = self.buf[c];
            if val != 0 {
                let r = self.row_of_col[c];
                if r != NO_ROW {
                    let r = r as usize;
                    // Row pivot coeff is 1, so `val` is the elimination factor.
                    for &(k, a) in &self.rows[r] {
                        let k = k as usize;
                        self.buf[k] = sub_mod(self.buf[k], mul_mod(val, a, p), p);
                    }
                    debug_assert_eq!(self.buf[c], 0);
                    if self.track {
                        for &(s, a) in &self.combs[r] {
                            let s = s as usize;
                            if self.comb_buf[s] == 0 {
                                self.comb_touched.push(s as u32);
                            }
                            self.comb_buf[s] = add_mod(self.comb_buf[s], mul_mod(val, a, p), p);
                        }
                    }
                } else {
                    rem.push((c as u32, val));
                    self.buf[c] = 0;
                }
            }
            c += 1;
        }
        let mut comb = Vec::new();
        if self.track {
            self.comb_touched.sort_unstable();
            for &s in &self.comb_touched {
                let v = self.comb_buf[s as usize];
                if v != 0 {
                    comb.push((s, v));
                }
                self.comb_buf[s as usize] = 0;
            }
            self.comb_touched.clear();
        }
        (rem, comb)
    }

    /// Present the next source vector. With tracking on, the `Dependent`
    /// payload is a kernel element of the source family.
    pub fn insert(&mut self, v: &[(u32, u32)]) -> Inserted {
        let p = self.p;
        let k = self.nsources;
        self.nsources += 1;
        if self.track {
            self.comb_buf.resize(self.nsources as usize, 0);
        }
        let (rem, comb) = self.reduce(v);
        if rem.is_empty() {
            if !self.track {
                return Inserted::Dependent(Vec::new());
            }
            // v = sum(comb * src) so e_k - comb is a kernel vector.
            let mut kernel: SparseVec =
                comb.into_iter().map(|(s, a)| (s, neg_mod(a, p))).collect();
            kernel.push((k, 1));
            kernel.sort_unstable_by_key(|&(s, _)| s);
            return Inserted::Dependent(kernel);
        }
        let lead_col = rem[0].0;
        let inv = inv_mod(rem[0].1, p);
        let row: SparseVec = rem.iter().map(|&(i, c)| (i, mul_mod(c, inv, p))).collect();
        if self.track {
            // row = inv * (v - sum(comb * src)) = inv*e_k - inv*comb.
            let mut rc: SparseVec = comb
                .into_iter()
                .map(|(s, a)| (s, neg_mod(mul_mod(a, inv, p), p)))
                .collect();
            rc.push((k, inv));
            rc.sort_unstable_by_key(|&(s, _)| s);
            self.combs.push(rc);
        } else {
            self.combs.push(Vec::new());
        }
        self.row_of_col[lead_col as usize] = self.rows.len() as u32;
        self.rows.push(row);
        Inserted::Pivot(lead_col)
    }
}

/// Rank, canonical kernel basis, and image column indices for a matrix
/// presented by sparse columns. The kernel vectors are in source (column)
/// coordinates, identical to `FpMatrix::kernel_basis` of the same matrix.
pub struct ColumnAnalysis {
    pub rank: usize,
    pub kernel: Vec<SparseVec>,
    pub pivot_columns: Vec<u32>,
}

pub fn analyze_columns(p: u32, nrows: usize, cols: &[SparseVec]) -> ColumnAnalysis {
    let mut red = Reducer::new(p, nrows, true);
    let mut kernel = Vec::new();
    let mut pivot_columns = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        match red.insert(col) {
            Inserted::Pivot(_) => pivot_columns.push(j as u32),
            Inserted::Dependent(comb) => kernel.push(comb),
        }
    }
    ColumnAnalysis { rank: pivot_columns.len(), kernel, pivot_columns }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(13));
        assert!(!is_prime(1));
        assert!(!is_prime(9));
        assert!(check_prime(6).is_err());
    }

    #[test]
    fn scalar_arithmetic() {
        let a = Fp::new(3, 5);
        let b = Fp::new(4, 5);
        assert_eq!(a.add(b).value, 2);
        assert_eq!(a.sub(b).value, 4);
        assert_eq!(a.mul(b).value, 2);
        assert_eq!(b.inv().value, 4); // 4*4 = 16 = 1 mod 5
        assert_eq!(a.neg().value, 2);
        assert_eq!(inv_mod(1, 2), 1);
    }

    #[test]
    fn rank_of_dependent_rows() {
        // [[1,2],[2,4]] over F_5: second row is twice the first.
        let m = FpMatrix::from_rows(5, vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_sum_functional() {
        // [[1,1]] over F_2 has kernel spanned by (1,1).
        let m = FpMatrix::from_rows(2, vec![vec![1, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].entries, vec![1, 1]);
    }

    #[test]
    fn solve_within_span() {
        // (1,0) = 1*(1,1) + 1*(0,1) over F_2.
        let target = FpVector::new(2, vec![1, 0]);
        let spanning = [FpVector::new(2, vec![1, 1]), FpVector::new(2, vec![0, 1])];
        let sol = solve_in_span(&target, &spanning).unwrap().unwrap();
        assert_eq!(sol[0].value, 1);
        assert_eq!(sol[1].value, 1);
    }

    #[test]
    fn solve_outside_span() {
        let target = FpVector::new(3, vec![0, 0, 1]);
        let spanning = [FpVector::new(3, vec![1, 0, 0])];
        assert_eq!(solve_in_span(&target, &spanning).unwrap(), None);
    }

    #[test]
    fn solve_unit_coefficient_on_spanning_vector() {
        let v0 = FpVector::new(5, vec![1, 2, 3]);
        let v1 = FpVector::new(5, vec![0, 1, 4]);
        let spanning = [v0.clone(), v1.clone()];
        let sol = solve_in_span(&v1, &spanning).unwrap().unwrap();
        assert_eq!((sol[0].value, sol[1].value), (0, 1));
        let sol = solve_in_span(&v0, &spanning).unwrap().unwrap();
        assert_eq!((sol[0].value, sol[1].value), (1, 0));
    }

    #[test]
    fn solve_modulus_mismatch_is_an_error() {
        let target = FpVector::new(2, vec![1]);
        let spanning = [FpVector::new(3, vec![1])];
        assert!(solve_in_span(&target, &spanning).is_err());
    }

    #[test]
    fn quotient_of_plane_by_diagonal() {
        // F_2^2 modulo span{(1,1)}: one representative, (1,0) first.
        let space = [FpVector::new(2, vec![1, 0]), FpVector::new(2, vec![0, 1])];
        let sub = [FpVector::new(2, vec![1, 1])];
        let reps = quotient_representatives(&space, &sub).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].entries, vec![1, 0]);
    }

    #[test]
    fn quotient_rejects_escaping_subspace() {
        let space = [FpVector::new(2, vec![1, 0])];
        let sub = [FpVector::new(2, vec![0, 1])];
        assert_eq!(
            quotient_representatives(&space, &sub),
            Err(Error::SubspaceNotContained { index: 0 })
        );
    }

    #[test]
    fn reducer_tracks_combinations() {
        // Over F_3: (1,1,0), (0,1,1) independent, their sum dependent.
        let mut red = Reducer::new(3, 3, true);
        assert_eq!(red.insert(&[(0, 1), (1, 1)]), Inserted::Pivot(0));
        assert_eq!(red.insert(&[(1, 1), (2, 1)]), Inserted::Pivot(1));
        let out = red.insert(&[(0, 1), (1, 2), (2, 1)]);
        // src2 = src0 + src1, so the kernel vector is -src0 - src1 + src2.
        assert_eq!(out, Inserted::Dependent(vec![(0, 2), (1, 2), (2, 1)]));
    }

    #[test]
    fn analyze_columns_matches_dense_on_fixture() {
        // Columns over F_2: c0=(1,1,0), c1=(0,1,1), c2=c0+c1, c3=(1,0,0).
        let cols: Vec<SparseVec> = vec![
            vec![(0, 1), (1, 1)],
            vec![(1, 1), (2, 1)],
            vec![(0, 1), (2, 1)],
            vec![(0, 1)],
        ];
        let a = analyze_columns(2, 3, &cols);
        assert_eq!(a.rank, 3);
        assert_eq!(a.pivot_columns, vec![0, 1, 3]);
        assert_eq!(a.kernel, vec![vec![(0, 1), (1, 1), (2, 1)]]);
    }

    fn arb_matrix() -> impl Strategy<Value = FpMatrix> {
        (prop::sample::select(vec![2u32, 3, 5, 7, 13]), 0usize..5, 0usize..5).prop_flat_map(
            |(p, nrows, ncols)| {
                prop::collection::vec(0u32..p, nrows * ncols).prop_map(move |data| FpMatrix {
                    p,
                    nrows,
                    ncols,
                    data,
                })
            },
        )
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), m.ncols());
            for v in &k {
                prop_assert!(m.apply(v).unwrap().is_zero());
            }
        }

        #[test]
        fn image_basis_spans_column_space(m in arb_matrix()) {
            let image = m.image_basis();
            prop_assert_eq!(image.len(), m.rank());
            let im = FpMatrix::from_columns(m.p(), m.nrows(), &image).unwrap();
            prop_assert_eq!(im.rank(), m.rank());
            for c in 0..m.ncols() {
                prop_assert!(solve_in_span(&m.column(c), &image).unwrap().is_some());
            }
        }

        #[test]
        fn solve_reconstructs_target(m in arb_matrix(), coeffs in prop::collection::vec(0u32..13, 0..5)) {
            let spanning: Vec<FpVector> = (0..m.ncols()).map(|c| m.column(c)).collect();
            let mut target = FpVector::zero(m.p(), m.nrows());
            for (v, &c) in spanning.iter().zip(&coeffs) {
                target.add_scaled(v, c % m.p()).unwrap();
            }
            let sol = solve_in_span(&target, &spanning).unwrap();
            prop_assert!(sol.is_some());
            let sol = sol.unwrap();
            let mut check = FpVector::zero(m.p(), m.nrows());
            for (v, c) in spanning.iter().zip(&sol) {
                check.add_scaled(v, c.value).unwrap();
            }
            prop_assert_eq!(check, target);
        }

        #[test]
        fn sparse_engine_matches_dense(m in arb_matrix()) {
            let cols: Vec<SparseVec> = (0..m.ncols()).map(|c| m.column(c).to_sparse()).collect();
            let a = analyze_columns(m.p(), m.nrows(), &cols);
            prop_assert_eq!(a.rank, m.rank());
            // Identical canonical kernels.
            let dense_kernel = m.kernel_basis();
            prop_assert_eq!(a.kernel.len(), dense_kernel.len());
            for (s, d) in a.kernel.iter().zip(&dense_kernel) {
                prop_assert_eq!(&FpVector::from_sparse(m.p(), m.ncols(), s), d);
            }
            // Identical pivot (image) columns.
            let (_, pivots) = m.rref();
            let pivots: Vec<u32> = pivots.iter().map(|&c| c as u32).collect();
            prop_assert_eq!(a.pivot_columns, pivots);
        }

        #[test]
        fn quotient_dimension(m in arb_matrix()) {
            // space = all columns, sub = image basis of a prefix.
            let space: Vec<FpVector> = (0..m.ncols()).map(|c| m.column(c)).collect();
            if space.is_empty() { return Ok(()); }
            let half = FpMatrix::from_columns(m.p(), m.nrows(), &space[..space.len()/2]).unwrap();
            let sub = half.image_basis();
            let reps = quotient_representatives(&space, &sub).unwrap();
            let all = FpMatrix::from_columns(m.p(), m.nrows(), &space).unwrap();
            prop_assert_eq!(reps.len(), all.rank() - half.rank());
        }
    }
}
