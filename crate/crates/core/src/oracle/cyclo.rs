//! Exact arithmetic in `ℤ[ζ_L] = ℤ[x]/Φ_L(x)`.
//!
//! A formal integer combination of `L`-th roots of unity is stored as its
//! coefficient vector on `1, x, …, x^{L-1}` and brought to the canonical
//! basis `1, …, x^{φ(L)-1}` by division by the monic cyclotomic polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::value_algebra::RootOfUnity;

/// Integer polynomial coefficients, lowest degree first.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1, "monic divisor");
    if r.len() <= dn {
        return vec![0];
    }
    let mut quo = vec![0i64; r.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = r[i + dn];
        quo[i] = c;
        for (j, &d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0), "inexact division");
    quo
}

/// Coefficients of `Φ_n`.
pub fn cyclotomic(n: u64) -> Vec<i64> {
    let mut memo = BTreeMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u64, memo: &mut BTreeMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        let phi_d = cyclotomic_memo(d, memo);
        num = poly_div_exact(&num, &phi_d);
    }
    memo.insert(n, num.clone());
    num
}

/// The ring `ℤ[ζ_L]` with a fixed `L`.
#[derive(Clone, Debug)]
pub struct Cyclo {
    l: u64,
    phi: Vec<i64>,
}

/// An element of `ℤ[ζ_L]` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloElem(pub Vec<i64>);

impl CycloElem {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, c)| if k == 0 { format!("{c}") } else { format!("{c}z^{k}") })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// A formal sum `Σ c_k ζ_L^k` before reduction.
#[derive(Clone, Debug)]
pub struct FormalSum {
    coeffs: Vec<i64>,
}

impl Cyclo {
    pub fn new(l: u64) -> Self {
        Cyclo {
            l,
            phi: cyclotomic(l),
        }
    }

    pub fn order(&self) -> u64 {
        self.l
    }

    pub fn zero_sum(&self) -> FormalSum {
        FormalSum {
            coeffs: vec![0; self.l as usize],
        }
    }

    /// Exponent of a root of unity as a power of `ζ_L`.
    ///
    /// # Panics
    ///
    /// Panics if the order of `r` does not divide `L`.
    pub fn exponent(&self, r: &RootOfUnity) -> usize {
        r.to_exponent(self.l)
            .unwrap_or_else(|| panic!("{r} is not an {}-th root of unity", self.l)) as usize
    }

    pub fn add_root(&self, s: &mut FormalSum, coeff: i64, r: &RootOfUnity) {
        s.coeffs[self.exponent(r)] += coeff;
    }

    pub fn add_exp(&self, s: &mut FormalSum, coeff: i64, k: u64) {
        s.coeffs[(k % self.l) as usize] += coeff;
    }

    pub fn scale(&self, s: &FormalSum, c: i64) -> FormalSum {
        FormalSum {
            coeffs: s.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add_assign(&self, s: &mut FormalSum, t: &FormalSum) {
        for (a, b) in s.coeffs.iter_mut().zip(&t.coeffs) {
            *a += b;
        }
    }

    /// Canonical form modulo `Φ_L`.
    pub fn reduce(&self, s: &FormalSum) -> CycloElem {
        let deg = self.phi.len() - 1;
        let mut r = s.coeffs.clone();
        for i in (deg..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            for (j, &d) in self.phi.iter().enumerate() {
                r[i - deg + j] -= c * d;
            }
        }
        r.truncate(deg);
        CycloElem(r)
    }

    /// Exact division of every coordinate; `None` if not divisible.
    pub fn divide(&self, e: &CycloElem, d: i64) -> Option<CycloElem> {
        let mut out = Vec::with_capacity(e.0.len());
        for &c in &e.0 {
            let (qt, rem) = c.div_rem(&d);
            if rem != 0 {
                return None;
            }
            out.push(qt);
        }
        Some(CycloElem(out))
    }

    /// `a · conj(b)` reduced; conjugation inverts every root of unity.
    pub fn mul_conj(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        let l = self.l as usize;
        let mut s = self.zero_sum();
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                s.coeffs[(i + l - j) % l] += x * y;
            }
        }
        self.reduce(&s)
    }

    /// The rational integer an element equals, if it is one.
    pub fn as_integer(&self, e: &CycloElem) -> Option<i64> {
        if e.0.iter().skip(1).all(|&c| c == 0) {
            Some(e.0.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    pub fn sub(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic(24).len() - 1, 8);
    }

    #[test]
    fn roots_sum_to_zero() {
        let c = Cyclo::new(24);
        let mut s = c.zero_sum();
        for k in 0..24 {
            c.add_exp(&mut s, 1, k);
        }
        assert!(c.reduce(&s).is_zero());
        // -1 = ζ^{12}
        let mut t = c.zero_sum();
        c.add_exp(&mut t, 1, 12);
        c.add_exp(&mut t, 1, 0);
        assert!(c.reduce(&t).is_zero());
    }

    #[test]
    fn norms() {
        let c = Cyclo::new(8);
        let mut s = c.zero_sum();
        c.add_exp(&mut s, 1, 1);
        c.add_exp(&mut s, 1, 3);
        let e = c.reduce(&s);
        // |ζ + ζ³|² = 2 + ζ^{-2} + ζ^{2} = 2 for L = 8.
        assert_eq!(c.as_integer(&c.mul_conj(&e, &e)), Some(2));
    }
}
