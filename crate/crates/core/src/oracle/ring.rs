//! Truncated twisted power series `Σ a_i ϖ^i` over `F_{q²}` with
//! `ϖ a = a^q ϖ`, modelling `o_D / p_D^N`, and the finite group
//! `G̃ = units ⋊ ϖ^ℤ / ϖ^{2M}`.

use super::field::Gf;

/// Largest supported truncation depth.
pub const MAX_DEPTH: usize = 10;

pub type Coeffs = [u8; MAX_DEPTH];

/// A unit of `o_D / p_D^N` times `ϖ^v`, with `v` taken mod `2M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub u: Coeffs,
    pub v: u32,
}

/// The ring `o_D / p_D^N` and the group `G̃` built on it.
#[derive(Clone, Debug)]
pub struct TwistedRing<'a> {
    pub gf: &'a Gf,
    pub depth: usize,
    /// `ϖ^{2M}` is identified with 1.
    pub m: u32,
}

impl<'a> TwistedRing<'a> {
    pub fn new(gf: &'a Gf, depth: usize, m: u32) -> Self {
        assert!((1..=MAX_DEPTH).contains(&depth), "depth {depth} out of range");
        assert!(m >= 1);
        TwistedRing { gf, depth, m }
    }

    pub fn one(&self) -> Coeffs {
        let mut c = [0u8; MAX_DEPTH];
        c[0] = 1;
        c
    }

    pub fn constant(&self, a: u8) -> Coeffs {
        let mut c = [0u8; MAX_DEPTH];
        c[0] = a;
        c
    }

    /// `(ab)_k = Σ_{i+j=k} a_i · b_j^{q^i}`.
    pub fn mul(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        let gf = self.gf;
        let mut out = [0u8; MAX_DEPTH];
        for i in 0..self.depth {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.depth - i {
                if b[j] == 0 {
                    continue;
                }
                let t = gf.mul(a[i], gf.frob_pow(b[j], i as u32));
                out[i + j] = gf.add(out[i + j], t);
            }
        }
        out
    }

    /// Apply `x ↦ x^{q^k}` to every coefficient (conjugation by `ϖ^k`).
    pub fn frob_pow(&self, a: &Coeffs, k: u32) -> Coeffs {
        if k % 2 == 0 {
            return *a;
        }
        let mut out = *a;
        for c in out.iter_mut().take(self.depth) {
            *c = self.gf.frob(*c);
        }
        out
    }

    pub fn is_unit(&self, a: &Coeffs) -> bool {
        a[0] != 0
    }

    /// Inverse of a unit, solving `a·b = 1` one coefficient at a time.
    pub fn inv(&self, a: &Coeffs) -> Coeffs {
        assert!(self.is_unit(a), "not a unit");
        let gf = self.gf;
        let mut b = [0u8; MAX_DEPTH];
        // (ab)_k = a_0 b_k + Σ_{i≥1} a_i b_{k-i}^{q^i}.
        let a0_inv = gf.inv(a[0]);
        b[0] = a0_inv;
        for k in 1..self.depth {
            let mut s = 0u8;
            for i in 1..=k {
                s = gf.add(s, gf.mul(a[i], gf.frob_pow(b[k - i], i as u32)));
            }
            b[k] = gf.mul(a0_inv, gf.neg(s));
        }
        b
    }

    pub fn group_mul(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        GroupElem {
            u: self.mul(&x.u, &self.frob_pow(&y.u, x.v)),
            v: (x.v + y.v) % (2 * self.m),
        }
    }

    pub fn group_inv(&self, x: &GroupElem) -> GroupElem {
        // (u ϖ^v)^{-1} = ϖ^{-v} u^{-1} = frob^{-v}(u^{-1}) ϖ^{-v}.
        let ui = self.inv(&x.u);
        let v = (2 * self.m - x.v) % (2 * self.m);
        GroupElem {
            u: self.frob_pow(&ui, v),
            v,
        }
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem { u: self.one(), v: 0 }
    }

    /// `x^{-1} g x`.
    pub fn conjugate(&self, g: &GroupElem, x: &GroupElem) -> GroupElem {
        self.group_mul(&self.group_inv(x), &self.group_mul(g, x))
    }

    /// All elements `1 + a_1 ϖ + … + a_{N-1} ϖ^{N-1}`.
    pub fn one_units(&self) -> Vec<Coeffs> {
        self.series_from(1, |_| true)
    }

    /// All units with constant term `a_0` ranging over `F_{q²}^×`.
    pub fn units(&self) -> Vec<Coeffs> {
        let mut out = Vec::new();
        for a0 in 1..self.gf.size() as u8 {
            for mut u in self.one_units() {
                u[0] = a0;
                out.push(u);
            }
        }
        out
    }

    /// Series with constant term 1 whose coefficient at position `i ≥ start`
    /// is arbitrary when `free(i)` holds and zero otherwise.
    pub fn series_from(&self, start: usize, free: impl Fn(usize) -> bool) -> Vec<Coeffs> {
        let slots: Vec<usize> = (start..self.depth).filter(|&i| free(i)).collect();
        let size = self.gf.size();
        let total = size.pow(slots.len() as u32);
        let mut out = Vec::with_capacity(total);
        for code in 0..total {
            let mut c = self.one();
            let mut x = code;
            for &i in &slots {
                c[i] = (x % size) as u8;
                x /= size;
            }
            out.push(c);
        }
        out
    }

    /// Series with constant term 1 and coefficients from a given list at
    /// the listed positions.
    pub fn series_with(&self, slots: &[usize], values: &[u8]) -> Vec<Coeffs> {
        let total = values.len().pow(slots.len() as u32);
        let mut out = Vec::with_capacity(total);
        for code in 0..total {
            let mut c = self.one();
            let mut x = code;
            for &i in slots {
                c[i] = values[x % values.len()];
                x /= values.len();
            }
            out.push(c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tame_chars::FieldParams;

    #[test]
    fn ring_laws() {
        let gf = Gf::new(FieldParams::new(3, 1).unwrap()).unwrap();
        let r = TwistedRing::new(&gf, 4, 2);
        let us = r.units();
        assert_eq!(us.len() as u64, 8 * 3u64.pow(6));
        let sample: Vec<&Coeffs> = us.iter().step_by(97).collect();
        for a in &sample {
            let ai = r.inv(a);
            assert_eq!(r.mul(a, &ai), r.one());
            assert_eq!(r.mul(&ai, a), r.one());
            for b in sample.iter().step_by(5) {
                for c in sample.iter().step_by(7) {
                    assert_eq!(r.mul(&r.mul(a, b), c), r.mul(a, &r.mul(b, c)));
                }
            }
        }
        // ϖ a ϖ^{-1} = a^q on constants.
        let w = GroupElem { u: r.one(), v: 1 };
        for a in 1..9u8 {
            let g = GroupElem { u: r.constant(a), v: 0 };
            let c = r.conjugate(&g, &r.group_inv(&w));
            assert_eq!(c.u, r.constant(gf.frob(a)));
        }
    }

    #[test]
    fn group_inverse() {
        let gf = Gf::new(FieldParams::new(5, 1).unwrap()).unwrap();
        let r = TwistedRing::new(&gf, 3, 3);
        for (i, u) in r.units().iter().enumerate().step_by(211) {
            let x = GroupElem { u: *u, v: (i % 6) as u32 };
            assert_eq!(r.group_mul(&x, &r.group_inv(&x)), r.identity());
            assert_eq!(r.group_mul(&r.group_inv(&x), &x), r.identity());
        }
    }
}
