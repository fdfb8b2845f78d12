//! The coset space `U_D¹ / U_E¹ U_D^k`, `k = [(n+1)/2]`, and the orbits of
//! conjugation by `μ_E` (unramified `E`) or by `ϖ_E` (ramified `E`).
//!
//! Everything is computed modulo `ϖ^k` in the truncated ring. A coset is
//! named by the smallest coefficient array among its elements.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::field::Gf;
use super::ring::{Coeffs, TwistedRing};
use crate::error::{precondition, Result};
use crate::tame_chars::{ExtKind, FieldParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetReport {
    pub q: u64,
    pub ext: ExtKind,
    pub n: u32,
    pub cosets: u64,
    pub double_cosets: u64,
    pub expected_cosets: u64,
    pub expected_double_cosets: u64,
    /// Pairs (non-identity coset, acting element outside the trivially
    /// acting part) where the coset is fixed.
    pub fixed_nonidentity: u64,
}

impl CosetReport {
    pub fn counts_match(&self) -> bool {
        self.cosets == self.expected_cosets && self.double_cosets == self.expected_double_cosets
    }

    pub fn action_free(&self) -> bool {
        self.fixed_nonidentity == 0
    }

    pub fn passed(&self) -> bool {
        self.counts_match() && self.action_free()
    }
}

/// Closed forms `(#cosets, #double cosets)`.
pub fn expected_counts(q: u64, ext: ExtKind, n: u32) -> (u64, u64) {
    match ext {
        ExtKind::Unramified => {
            let c = q.pow(2 * (n / 4));
            (c, (c - 1) / (q + 1) + 1)
        }
        ExtKind::RamifiedTame => {
            let c = q.pow((n - 1) / 2);
            (c, (c - 1) / 2 + 1)
        }
    }
}

/// Enumerate the coset space and its orbits. Unramified `E` needs even
/// `n`, ramified `E` needs odd `n` and odd `p`.
pub fn enumerate_coset_space(field: FieldParams, ext: ExtKind, n: u32) -> Result<CosetReport> {
    if n == 0 {
        return precondition("the coset space is defined for n ≥ 1");
    }
    match ext {
        ExtKind::Unramified if n % 2 != 0 => {
            return precondition(format!("n = {n} is odd, which forces the ramified extension"))
        }
        ExtKind::RamifiedTame if n % 2 == 0 => {
            return precondition(format!("n = {n} is even, which forces the unramified extension"))
        }
        ExtKind::RamifiedTame if !field.odd() => {
            return precondition("the ramified coset space needs odd p")
        }
        _ => {}
    }
    let gf = Gf::new(field)?;
    let k = (n as usize + 1) / 2;
    let ring = TwistedRing::new(&gf, k.max(1), 1);
    let h: Vec<Coeffs> = match ext {
        ExtKind::Unramified => ring.series_from(1, |i| i % 2 == 0),
        ExtKind::RamifiedTame => {
            let base: Vec<u8> = gf.base_elements().collect();
            let slots: Vec<usize> = (1..ring.depth).collect();
            ring.series_with(&slots, &base)
        }
    };
    let key = |u: &Coeffs| -> Coeffs { h.iter().map(|x| ring.mul(u, x)).min().expect("H nonempty") };
    let mut index: BTreeMap<Coeffs, usize> = BTreeMap::new();
    let mut reps: Vec<Coeffs> = Vec::new();
    for u in ring.one_units() {
        let kk = key(&u);
        if !index.contains_key(&kk) {
            index.insert(kk, reps.len());
            reps.push(kk);
        }
    }
    let identity = index[&key(&ring.one())];
    // Acting elements: all of μ_E outside μ_F, or ϖ_E.
    let act: Box<dyn Fn(&Coeffs, u64) -> Coeffs> = match ext {
        ExtKind::Unramified => Box::new(|u: &Coeffs, i: u64| {
            let z = ring.constant(gf.exp(i));
            let zi = ring.inv(&z);
            ring.mul(&ring.mul(&z, u), &zi)
        }),
        ExtKind::RamifiedTame => Box::new(|u: &Coeffs, _| ring.frob_pow(u, 1)),
    };
    let actors: Vec<u64> = match ext {
        ExtKind::Unramified => (1..gf.units() as u64)
            .filter(|i| i % (field.q() + 1) != 0)
            .collect(),
        ExtKind::RamifiedTame => vec![1],
    };
    let image = |c: usize, i: u64| index[&key(&act(&reps[c], i))];
    let mut fixed = 0u64;
    for c in (0..reps.len()).filter(|&c| c != identity) {
        fixed += actors.iter().filter(|&&i| image(c, i) == c).count() as u64;
    }
    // Orbits under the cyclic group generated by ζ_E (or ϖ_E).
    let mut seen = BTreeSet::new();
    let mut orbits = 0u64;
    for start in 0..reps.len() {
        if seen.contains(&start) {
            continue;
        }
        orbits += 1;
        let mut c = start;
        while seen.insert(c) {
            c = image(c, 1);
        }
    }
    let (ec, ed) = expected_counts(field.q(), ext, n);
    Ok(CosetReport {
        q: field.q(),
        ext,
        n,
        cosets: reps.len() as u64,
        double_cosets: orbits,
        expected_cosets: ec,
        expected_double_cosets: ed,
        fixed_nonidentity: fixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(q: u64, ext: ExtKind, n: u32) -> CosetReport {
        enumerate_coset_space(FieldParams::from_q(q).unwrap(), ext, n).unwrap()
    }

    #[test]
    fn small_examples() {
        let r = run(3, ExtKind::Unramified, 4);
        assert_eq!((r.cosets, r.double_cosets), (9, 3));
        assert!(r.action_free());
        let r = run(3, ExtKind::RamifiedTame, 3);
        assert_eq!((r.cosets, r.double_cosets), (3, 2));
        let r = run(3, ExtKind::Unramified, 2);
        assert_eq!((r.cosets, r.double_cosets), (1, 1));
    }

    #[test]
    fn parity_is_enforced() {
        let k = FieldParams::from_q(3).unwrap();
        assert!(enumerate_coset_space(k, ExtKind::Unramified, 3).is_err());
        assert!(enumerate_coset_space(k, ExtKind::RamifiedTame, 2).is_err());
    }
}
