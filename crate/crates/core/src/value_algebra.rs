//! Roots of unity as elements of ℚ/ℤ.
//!
//! A single abstract group stands for the roots of unity of both
//! characteristic zero and characteristic `p`: the class `a/n` means
//! `exp(2πi·a/n)` in the first reading and the corresponding element of a
//! compatible system of generators in `F̄_p` in the second. The reduction map
//! [`RootOfUnity::reduce_mod_p`] mediates between the two by discarding the
//! `p`-power part.
//!
//! ```
//! use quatmodp::RootOfUnity;
//!
//! let x: RootOfUnity = "1/6".parse().unwrap();
//! assert_eq!(x.reduce_mod_p(3).to_string(), "1/2");
//! assert_eq!(x.pow(6), RootOfUnity::one());
//! ```

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A root of unity, stored as the reduced fraction `num/den` with
/// `0 ≤ num < den`. The identity is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: BigUint,
    den: BigUint,
}

impl RootOfUnity {
    /// The identity `0/1`.
    pub fn one() -> Self {
        RootOfUnity {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    /// `-1`, i.e. `1/2`.
    pub fn minus_one() -> Self {
        Self::from_ratio(1, 2)
    }

    /// The class of `num/den` in ℚ/ℤ. Negative numerators are allowed.
    ///
    /// # Panics
    ///
    /// Panics if `den` is zero.
    pub fn from_ratio(num: i64, den: u64) -> Self {
        Self::from_big(BigInt::from(num), BigUint::from(den))
    }

    /// `ω^k` for a fixed generator `ω` of `μ_modulus`, i.e. `k/modulus`.
    pub fn from_exponent(k: u64, modulus: u64) -> Self {
        Self::from_ratio(k as i64, modulus)
    }

    fn from_big(num: BigInt, den: BigUint) -> Self {
        assert!(!den.is_zero(), "root of unity with zero denominator");
        let den_i = BigInt::from(den.clone());
        let num = num.mod_floor(&den_i).to_biguint().expect("non-negative residue");
        let g = num.gcd(&den);
        if num.is_zero() {
            return Self::one();
        }
        RootOfUnity {
            num: &num / &g,
            den: &den / &g,
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    /// Multiplicative order, which is the reduced denominator.
    pub fn order(&self) -> BigUint {
        self.den.clone()
    }

    pub fn is_identity(&self) -> bool {
        self.num.is_zero()
    }

    /// Group law: addition in ℚ/ℤ.
    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let den = self.den.lcm(&other.den);
        let a = &self.num * (&den / &self.den) + &other.num * (&den / &other.den);
        Self::from_big(BigInt::from(a), den)
    }

    /// `k`-th power, `k` any integer.
    pub fn pow(&self, k: i64) -> RootOfUnity {
        Self::from_big(BigInt::from(self.num.clone()) * k, self.den.clone())
    }

    pub fn pow_big(&self, k: &BigInt) -> RootOfUnity {
        Self::from_big(BigInt::from(self.num.clone()) * k, self.den.clone())
    }

    pub fn inv(&self) -> RootOfUnity {
        self.pow(-1)
    }

    /// The prime-to-`p` component in the decomposition
    /// `μ_n = μ_{n'} × μ_{p^k}`, `n = n'·p^k`.
    pub fn reduce_mod_p(&self, p: u64) -> RootOfUnity {
        let p_big = BigUint::from(p);
        let mut prime_to_p = self.den.clone();
        let mut p_power = BigUint::one();
        while (&prime_to_p % &p_big).is_zero() {
            prime_to_p /= &p_big;
            p_power *= &p_big;
        }
        if p_power.is_one() {
            return self.clone();
        }
        // x = a/n; the prime-to-p part is (a·e)/n where e ≡ 1 mod n' and
        // e ≡ 0 mod p^k; it is an element of (1/n')ℤ/ℤ.
        let e = crt_idempotent(&prime_to_p, &p_power);
        let num = BigInt::from(&self.num * e);
        Self::from_big(num, self.den.clone())
    }

    /// True when the order is prime to `p`.
    pub fn is_prime_to(&self, p: u64) -> bool {
        !(&self.den % BigUint::from(p)).is_zero() || self.den.is_one()
    }

    /// The exponent `k` with `self = k/modulus`, if `self` lies in `μ_modulus`.
    pub fn to_exponent(&self, modulus: u64) -> Option<u64> {
        let m = BigUint::from(modulus);
        if !(&m % &self.den).is_zero() {
            return None;
        }
        (&self.num * (&m / &self.den)).to_u64()
    }

    /// Every root of unity of order at most `n`, in increasing order.
    pub fn of_order_at_most(n: u64) -> Vec<RootOfUnity> {
        let mut out: Vec<RootOfUnity> = (1..=n)
            .flat_map(|d| (0..d).filter(move |k| k.gcd(&d) == 1).map(move |k| Self::from_exponent(k, d)))
            .collect();
        out.sort();
        out
    }

    /// All `y` with `y² = self`. There are always exactly two.
    pub fn square_roots(&self) -> [RootOfUnity; 2] {
        let den = &self.den * 2u32;
        let r = Self::from_big(BigInt::from(self.num.clone()), den);
        let s = r.mul(&Self::minus_one());
        [r, s]
    }

    /// The unique square root of odd order, when `self` has odd order.
    /// Squaring is a bijection on roots of unity of odd order.
    pub fn odd_square_root(&self) -> Option<RootOfUnity> {
        if self.den.is_even() {
            return None;
        }
        let half = (&self.den + 1u32) / 2u32;
        Some(self.pow_big(&BigInt::from(half)))
    }
}

/// `e` with `e ≡ 1 (mod a)` and `e ≡ 0 (mod b)` for coprime `a`, `b`.
fn crt_idempotent(a: &BigUint, b: &BigUint) -> BigUint {
    // e = b·(b^{-1} mod a)
    let a_i = BigInt::from(a.clone());
    let b_i = BigInt::from(b.clone());
    let ext = b_i.extended_gcd(&a_i);
    debug_assert!(ext.gcd.is_one());
    let inv = ext.x.mod_floor(&a_i);
    (b_i * inv).to_biguint().expect("non-negative")
}

impl Default for RootOfUnity {
    fn default() -> Self {
        Self::one()
    }
}

impl<'a> Mul<&'a RootOfUnity> for &'a RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: &RootOfUnity) -> RootOfUnity {
        RootOfUnity::mul(self, rhs)
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den)
            .cmp(&(&other.num * &self.den))
            .then_with(|| self.den.cmp(&other.den))
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("expected a root of unity `a/n`, got `{s}`"));
        let (a, n) = match s.trim().split_once('/') {
            Some((a, n)) => (a.trim(), n.trim()),
            None => (s.trim(), "1"),
        };
        let a: BigInt = a.parse().map_err(|_| bad())?;
        let n: BigUint = n.parse().map_err(|_| bad())?;
        if n.is_zero() {
            return Err(bad());
        }
        Ok(Self::from_big(a, n))
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RootOfUnity {
        s.parse().unwrap()
    }

    #[test]
    fn mul_examples() {
        assert_eq!(r("1/2").mul(&r("1/2")), r("0/1"));
        assert_eq!(r("1/3").mul(&r("1/6")), r("1/2"));
        assert_eq!(r("0/1").mul(&r("5/8")), r("5/8"));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(r("1/8").pow(4), r("1/2"));
        assert_eq!(r("1/8").pow(8), r("0/1"));
        assert_eq!(r("2/3").pow(-1), r("1/3"));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(r("1/6").reduce_mod_p(3), r("1/2"));
        assert_eq!(r("1/9").reduce_mod_p(3), r("0/1"));
        assert_eq!(r("3/8").reduce_mod_p(3), r("3/8"));
        // 1/12 = 1/4 + (-1/6)...: prime-to-2 part of order 3
        assert_eq!(r("1/12").reduce_mod_p(2).order(), BigUint::from(3u32));
    }

    #[test]
    fn stored_reduced() {
        let x = RootOfUnity::from_ratio(6, 8);
        assert_eq!(x.to_string(), "3/4");
        assert_eq!(RootOfUnity::from_ratio(-1, 4).to_string(), "3/4");
        assert_eq!(RootOfUnity::from_ratio(8, 8).to_string(), "0/1");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("x/2".parse::<RootOfUnity>().is_err());
        assert!("1/0".parse::<RootOfUnity>().is_err());
        assert_eq!(r("5"), RootOfUnity::one());
    }

    #[test]
    fn square_roots_square_back() {
        for s in ["0/1", "1/3", "3/8", "1/2"] {
            for y in r(s).square_roots() {
                assert_eq!(y.pow(2), r(s));
            }
        }
    }

    #[test]
    fn odd_roots() {
        assert_eq!(r("1/3").odd_square_root(), Some(r("2/3")));
        assert_eq!(r("0/1").odd_square_root(), Some(r("0/1")));
        assert_eq!(r("1/4").odd_square_root(), None);
    }

    #[test]
    fn exponents() {
        assert_eq!(r("1/4").to_exponent(8), Some(2));
        assert_eq!(r("1/3").to_exponent(8), None);
        assert_eq!(RootOfUnity::from_exponent(12, 8), r("1/2"));
    }

    #[test]
    fn json_as_string() {
        let s = serde_json::to_string(&r("3/8")).unwrap();
        assert_eq!(s, "\"3/8\"");
        let back: RootOfUnity = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r("3/8"));
    }
}
