//! Univariate polynomial arithmetic over F_p, with deterministic
//! factorization: characteristic-p squarefree decomposition followed by
//! Berlekamp splitting. The Berlekamp subalgebra is found with the same
//! kernel routine the homology engine uses.

use crate::error::{Error, Result};
use crate::gfp::{self, check_prime, FpMatrix};

/// Coefficients ascending, no trailing zeros; the zero polynomial has an
/// empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl FpPoly {
    pub fn new(p: u32, coeffs: Vec<u32>) -> Self {
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    /// Reduce integer coefficients (ascending) mod p.
    pub fn from_int(p: u32, coeffs: &[i64]) -> Self {
        let pi = p as i64;
        FpPoly::new(p, coeffs.iter().map(|&c| (c.rem_euclid(pi)) as u32).collect())
    }

    pub fn zero(p: u32) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u32, c: u32) -> Self {
        FpPoly::new(p, vec![c])
    }

    pub fn x(p: u32) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u32; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = gfp::add_mod(a, b, self.p);
        }
        FpPoly::new(self.p, out)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u32; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = gfp::sub_mod(a, b, self.p);
        }
        FpPoly::new(self.p, out)
    }

    pub fn scale(&self, c: u32) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().map(|&a| gfp::mul_mod(a, c, self.p)).collect())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = gfp::add_mod(out[i + j], gfp::mul_mod(a, b, self.p), self.p);
            }
        }
        FpPoly::new(self.p, out)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divmod(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd && self.coeffs.len() < divisor.coeffs.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let lead_inv = gfp::inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len().saturating_sub(dd)];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = gfp::mul_mod(c, lead_inv, p);
            quot[i - dd] = q;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = gfp::sub_mod(rem[i - dd + j], gfp::mul_mod(q, b, p), p);
            }
        }
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.divmod(divisor).1
    }

    pub fn div_exact(&self, divisor: &FpPoly) -> FpPoly {
        let (q, r) = self.divmod(divisor);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(gfp::inv_mod(self.leading(), self.p))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| gfp::mul_mod(i as u32 % self.p, c, self.p))
            .collect();
        FpPoly::new(self.p, out)
    }

    /// For f with f' = 0 (so f = g(x^p)) return g; over the prime field the
    /// Frobenius fixes coefficients, so g is read off directly.
    pub fn pth_root(&self) -> Result<FpPoly> {
        let p = self.p as usize;
        let mut out = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(c);
            } else if c != 0 {
                return Err(Error::Internal(
                    "pth_root of a polynomial that is not a p-th power".into(),
                ));
            }
        }
        Ok(FpPoly::new(self.p, out))
    }

    pub fn eval(&self, x: u32) -> u32 {
        let mut acc = 0u32;
        for &c in self.coeffs.iter().rev() {
            acc = gfp::add_mod(gfp::mul_mod(acc, x, self.p), c, self.p);
        }
        acc
    }
}

impl std::fmt::Display for FpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Pairwise-coprime squarefree parts with their multiplicities:
/// f = prod part_i ^ mult_i up to the leading coefficient. Characteristic-p
/// aware: a vanishing derivative peels a p-th root.
pub fn squarefree_decomposition(f: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
    check_prime(f.p())?;
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out)?;
    out.sort_unstable_by(|a, b| {
        (a.0.degree(), a.0.coeffs(), a.1).cmp(&(b.0.degree(), b.0.coeffs(), b.1))
    });
    Ok(out)
}

fn sqf_rec(f: &FpPoly, scale: u32, out: &mut Vec<(FpPoly, u32)>) -> Result<()> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let fp = f.derivative();
    if fp.is_zero() {
        let root = f.pth_root()?;
        return sqf_rec(&root, scale * f.p(), out);
    }
    let mut c = f.gcd(&fp);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i * scale));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    // What is left of c collects the factors with multiplicity divisible
    // by p; it is a p-th power.
    if c.degree().unwrap_or(0) > 0 {
        sqf_rec(&c, scale, out)?;
    }
    Ok(())
}

/// Berlekamp factorization of a monic squarefree polynomial.
fn berlekamp_squarefree(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.p();
    let n = f.degree().expect("nonzero");
    if n <= 1 {
        return vec![f.clone()];
    }
    // Rows of Q: x^{ip} mod f in the basis 1, x, ..., x^{n-1}.
    let xp = {
        let mut m = vec![0u32; p as usize + 1];
        m[p as usize] = 1;
        FpPoly::new(p, m).rem(f)
    };
    let mut q_rows: Vec<FpPoly> = Vec::with_capacity(n);
    let mut cur = FpPoly::constant(p, 1);
    for _ in 0..n {
        q_rows.push(cur.clone());
        cur = cur.mul(&xp).rem(f);
    }
    // Kernel of (Q^T - I): vectors fixed by the Frobenius map.
    let mut m = FpMatrix::zero(p, n, n);
    for (i, row) in q_rows.iter().enumerate() {
        for j in 0..n {
            let mut v = row.coeffs().get(j).copied().unwrap_or(0);
            if i == j {
                v = gfp::sub_mod(v, 1, p);
            }
            m.set(j, i, v);
        }
    }
    let kernel = m.kernel_basis();
    if kernel.len() <= 1 {
        return vec![f.clone()];
    }
    let v = kernel
        .iter()
        .map(|k| FpPoly::new(p, k.entries.clone()))
        .find(|poly| poly.degree().unwrap_or(0) >= 1)
        .expect("a kernel of rank >= 2 contains a non-constant");
    let mut out = Vec::new();
    for c in 0..p {
        let g = f.gcd(&v.sub(&FpPoly::constant(p, c)));
        if g.degree().unwrap_or(0) > 0 {
            out.extend(berlekamp_squarefree(&g));
        }
    }
    out
}

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// by ascending coefficient vector. The input must be nonzero; constants
/// factor as the empty product.
pub fn factor(f: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
    check_prime(f.p())?;
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        for irreducible in berlekamp_squarefree(&part) {
            out.push((irreducible, mult));
        }
    }
    out.sort_unstable_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: u32, coeffs: &[u32]) -> FpPoly {
        FpPoly::new(p, coeffs.to_vec())
    }

    #[test]
    fn arithmetic_basics() {
        // (x+1)^2 = x^2 + 1 over F_2.
        let f = poly(2, &[1, 1]);
        assert_eq!(f.mul(&f), poly(2, &[1, 0, 1]));
        let (q, r) = poly(5, &[1, 0, 0, 1]).divmod(&poly(5, &[1, 1]));
        // x^3 + 1 = (x+1)(x^2 - x + 1).
        assert_eq!(q, poly(5, &[1, 4, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_of_shared_root() {
        // gcd(x^2 - 1, (x-1)^2) = x - 1 over F_5.
        let a = poly(5, &[4, 0, 1]);
        let b = poly(5, &[1, 3, 1]); // x^2 - 2x + 1
        assert_eq!(a.gcd(&b), poly(5, &[4, 1]));
    }

    #[test]
    fn derivative_can_vanish_in_char_p() {
        let f = poly(3, &[1, 0, 0, 1]); // x^3 + 1
        assert!(f.derivative().is_zero());
        assert_eq!(f.pth_root().unwrap(), poly(3, &[1, 1]));
    }

    #[test]
    fn squarefree_decomposition_examples() {
        // x^2 (x+1)^3 over F_5.
        let f = poly(5, &[0, 1]).mul(&poly(5, &[0, 1])).mul(
            &poly(5, &[1, 1]).mul(&poly(5, &[1, 1])).mul(&poly(5, &[1, 1])),
        );
        let parts = squarefree_decomposition(&f).unwrap();
        assert_eq!(parts, vec![(poly(5, &[0, 1]), 2), (poly(5, &[1, 1]), 3)]);
        // (x+1)^2 over F_2 has zero derivative.
        let g = poly(2, &[1, 0, 1]);
        assert_eq!(squarefree_decomposition(&g).unwrap(), vec![(poly(2, &[1, 1]), 2)]);
    }

    #[test]
    fn factor_splits_and_detects_irreducible() {
        // x^2 + 1 = (x+2)(x+3) over F_5.
        let f = poly(5, &[1, 0, 1]);
        assert_eq!(
            factor(&f).unwrap(),
            vec![(poly(5, &[2, 1]), 1), (poly(5, &[3, 1]), 1)]
        );
        // x^2 + 1 is irreducible over F_3.
        let g = poly(3, &[1, 0, 1]);
        assert_eq!(factor(&g).unwrap(), vec![(poly(3, &[1, 0, 1]), 1)]);
        // x^2 - 2 = x^2 over F_2.
        let h = poly(2, &[0, 0, 1]);
        assert_eq!(factor(&h).unwrap(), vec![(poly(2, &[0, 1]), 2)]);
        // x^4 + 1 = (x+1)^4 over F_2.
        let k = poly(2, &[1, 0, 0, 0, 1]);
        assert_eq!(factor(&k).unwrap(), vec![(poly(2, &[1, 1]), 4)]);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(poly(5, &[3, 0, 1]).to_string(), "x^2 + 3");
        assert_eq!(poly(2, &[0, 1]).to_string(), "x");
        assert_eq!(FpPoly::zero(7).to_string(), "0");
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(
            p in prop::sample::select(vec![2u32, 3, 5]),
            coeffs in prop::collection::vec(0u32..5, 1..8)
        ) {
            let f = FpPoly::new(p, coeffs);
            prop_assume!(f.degree().unwrap_or(0) >= 1);
            let factors = factor(&f).unwrap();
            let mut prod = FpPoly::constant(p, f.leading());
            for (g, e) in &factors {
                prop_assert!(g.is_monic());
                prop_assert!(*e >= 1);
                for _ in 0..*e {
                    prod = prod.mul(g);
                }
            }
            prop_assert_eq!(prod, f);
            // Distinct factors.
            for i in 1..factors.len() {
                prop_assert!(factors[i - 1].0 != factors[i].0);
            }
        }
    }
}
