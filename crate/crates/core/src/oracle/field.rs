//! The residue field `F_{q²}` as lookup tables.
//!
//! Elements are indices `0..q²`; index `i` is the polynomial whose base-`p`
//! digits are the coefficients. A primitive polynomial is found by brute
//! force, so `exp[k]` is the `k`-th power of a fixed generator `g` of
//! `F_{q²}^×`. That generator plays the role of `ζ_E`, and `g^{q+1}` the
//! role of `ζ_F`.

use crate::error::{precondition, Result};
use crate::tame_chars::FieldParams;

#[derive(Clone, Debug)]
pub struct Gf {
    p: u64,
    q: u64,
    size: usize,
    add: Vec<u8>,
    neg: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
    log: Vec<u32>,
    exp: Vec<u8>,
}

/// Largest `q²` the `u8` encoding supports.
const MAX_SIZE: u64 = 256;

fn digits(mut x: usize, p: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; d];
    for slot in out.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    out
}

fn undigits(v: &[usize], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiply by `x` modulo the monic polynomial `x^d + Σ m_i x^i`.
fn times_x(v: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let d = v.len();
    let top = v[d - 1];
    let mut out = vec![0; d];
    for i in (1..d).rev() {
        out[i] = v[i - 1];
    }
    for i in 0..d {
        out[i] = (out[i] + p * p - top * modulus[i] % p) % p;
    }
    out
}

impl Gf {
    pub fn new(field: FieldParams) -> Result<Self> {
        let p = field.p();
        let q = field.q();
        let size = q * q;
        if size > MAX_SIZE {
            return precondition(format!("the finite field model supports q² ≤ {MAX_SIZE}, got {size}"));
        }
        let (pu, size) = (p as usize, size as usize);
        let d = 2 * field.f() as usize;
        // Search monic polynomials of degree d for one with x of order size - 1.
        let mut exp_digits = None;
        for code in 0..size {
            let modulus = digits(code, pu, d);
            if modulus[0] == 0 {
                continue;
            }
            let mut powers = Vec::with_capacity(size - 1);
            let mut cur = digits(1, pu, d);
            let mut ok = true;
            for k in 0..size - 1 {
                if k > 0 && undigits(&cur, pu) == 1 {
                    ok = false;
                    break;
                }
                powers.push(undigits(&cur, pu));
                cur = times_x(&cur, &modulus, pu);
            }
            if ok && undigits(&cur, pu) == 1 {
                exp_digits = Some(powers);
                break;
            }
        }
        let exp_idx = exp_digits.expect("a primitive polynomial exists");
        let order = size - 1;
        let mut log = vec![u32::MAX; size];
        for (k, &e) in exp_idx.iter().enumerate() {
            log[e] = k as u32;
        }
        let exp: Vec<u8> = exp_idx.iter().map(|&e| e as u8).collect();
        let mut add = vec![0u8; size * size];
        let mut neg = vec![0u8; size];
        for a in 0..size {
            let da = digits(a, pu, d);
            let na: Vec<usize> = da.iter().map(|c| (pu - c) % pu).collect();
            neg[a] = undigits(&na, pu) as u8;
            for b in 0..size {
                let db = digits(b, pu, d);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % pu).collect();
                add[a * size + b] = undigits(&s, pu) as u8;
            }
        }
        let mut mul = vec![0u8; size * size];
        let mut inv = vec![0u8; size];
        let mut frob = vec![0u8; size];
        for a in 1..size {
            let la = log[a] as usize;
            inv[a] = exp[(order - la) % order];
            frob[a] = exp[(la * q as usize) % order];
            for b in 1..size {
                mul[a * size + b] = exp[(la + log[b] as usize) % order];
            }
        }
        Ok(Gf {
            p,
            q,
            size,
            add,
            neg,
            mul,
            inv,
            frob,
            log,
            exp,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q²`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// `q² - 1`.
    pub fn units(&self) -> usize {
        self.size - 1
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.size + b as usize]
    }

    /// Multiplicative inverse; zero maps to zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// `a ↦ a^q`.
    #[inline]
    pub fn frob(&self, a: u8) -> u8 {
        self.frob[a as usize]
    }

    /// `a ↦ a^{q^k}`.
    #[inline]
    pub fn frob_pow(&self, a: u8, k: u32) -> u8 {
        if k % 2 == 0 {
            a
        } else {
            self.frob(a)
        }
    }

    /// Discrete logarithm to base `g`, for nonzero `a`.
    #[inline]
    pub fn log(&self, a: u8) -> u32 {
        debug_assert!(a != 0);
        self.log[a as usize]
    }

    /// `g^k`.
    #[inline]
    pub fn exp(&self, k: u64) -> u8 {
        self.exp[(k % self.units() as u64) as usize]
    }

    /// Whether `a` lies in `F_q`.
    pub fn in_base(&self, a: u8) -> bool {
        self.frob(a) == a
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.size).map(|a| a as u8)
    }

    pub fn base_elements(&self) -> impl Iterator<Item = u8> + '_ {
        self.elements().filter(|&a| self.in_base(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (p, f) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)] {
            let gf = Gf::new(FieldParams::new(p, f).unwrap()).unwrap();
            let els: Vec<u8> = gf.elements().collect();
            for &a in &els {
                assert_eq!(gf.add(a, gf.neg(a)), 0);
                if a != 0 {
                    assert_eq!(gf.mul(a, gf.inv(a)), 1);
                }
                for &b in &els {
                    for &c in els.iter().step_by(3) {
                        let lhs = gf.mul(a, gf.add(b, c));
                        let rhs = gf.add(gf.mul(a, b), gf.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                    assert_eq!(gf.frob(gf.mul(a, b)), gf.mul(gf.frob(a), gf.frob(b)));
                    assert_eq!(gf.frob(gf.add(a, b)), gf.add(gf.frob(a), gf.frob(b)));
                }
            }
            assert_eq!(gf.base_elements().count() as u64, gf.q());
        }
    }

    #[test]
    fn generator_has_full_order() {
        let gf = Gf::new(FieldParams::new(3, 1).unwrap()).unwrap();
        let g = gf.exp(1);
        let mut x = g;
        for _ in 1..8 {
            assert_ne!(x, 1);
            x = gf.mul(x, g);
        }
        assert_eq!(x, 1);
    }
}
