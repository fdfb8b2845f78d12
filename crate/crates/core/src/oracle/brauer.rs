//! Brauer characters of `Π̄_χ` computed by brute force in the finite group
//! `G̃ = (o_D / p_D^{n+1})^× ⋊ ϖ^ℤ / ϖ^{2M}` and compared with the values
//! predicted from the reduction multiset.
//!
//! `G̃` is the semidirect product of the normal `p`-group `U¹` (units with
//! constant term 1) and `T = μ_E × ϖ^ℤ/ϖ^{2M}`. For odd `p` and `M` prime
//! to `p`, `T` is a `p'`-group, so every `p`-regular element is conjugate
//! into `T` and Brauer characters are determined by their values on `T`.
//!
//! For `g ∈ T` and `x = t·u` (`t ∈ T`, `u ∈ U¹`) the projection of
//! `x^{-1} g x` to `T` is `t^{-1} g t`, so the induced character is
//!
//! `Ind(g) = (1/|J̃|) Σ_{t ∈ T} cnt(t^{-1} g t) · β(t^{-1} g t)`
//!
//! with `cnt(h) = #{u ∈ U¹ : u^{-1} h u ∈ J̃}` and `β` the Brauer character
//! of `Λ̄` on tame elements.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::cyclo::{Cyclo, CycloElem, FormalSum};
use super::field::Gf;
use super::ring::{Coeffs, GroupElem, TwistedRing};
use crate::error::{precondition, Error, Result};
use crate::modp_reps::{RepMultiset, Shape, Side};
use crate::reduction::reduce_pi;
use crate::tame_chars::{AdmissiblePair, CharGroup, ExtKind, FieldParams, TameChar};
use crate::value_algebra::RootOfUnity;

/// Default cap on `|G̃|`.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Values on the elements `ζ_E^j ϖ^v` of `T`, keyed by `(j, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: BTreeMap<(u64, u32), CycloElem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassDiff {
    pub j: u64,
    pub v: u32,
    pub induced: String,
    pub predicted: String,
}

impl ClassFunction {
    pub fn diff(&self, other: &ClassFunction) -> Vec<ClassDiff> {
        self.values
            .iter()
            .filter_map(|(key, a)| {
                let b = &other.values[key];
                (a != b).then(|| ClassDiff {
                    j: key.0,
                    v: key.1,
                    induced: a.to_string(),
                    predicted: b.to_string(),
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub q: u64,
    pub ext: ExtKind,
    pub n: u32,
    pub chi_bar: TameChar,
    pub group_order: u64,
    pub elements_checked: usize,
    pub passed: bool,
    pub diffs: Vec<ClassDiff>,
}

/// The finite group model for one `(q, E/F, n, M)`, with the conjugation
/// counts `cnt` precomputed.
#[derive(Clone, Debug)]
pub struct BrauerModel {
    field: FieldParams,
    ext: ExtKind,
    n: u32,
    m: u32,
    gf: Gf,
    j_order: u64,
    group_order: u64,
    /// `cnt[log a · 2M + v]`.
    cnt: Vec<u64>,
    cyclo: Cyclo,
}

/// `|G̃| = (q²-1) q^{2n} · 2M`.
pub fn group_order(field: FieldParams, n: u32, m: u32) -> u64 {
    let q = field.q();
    (q * q - 1)
        .saturating_mul(q.saturating_pow(2 * n))
        .saturating_mul(2 * m as u64)
}

impl BrauerModel {
    pub fn new(field: FieldParams, ext: ExtKind, n: u32, m: u32, budget: u64) -> Result<Self> {
        if !field.odd() {
            return precondition("the Brauer oracle needs odd p, so that the tame complement is a p'-group");
        }
        if m == 0 || m as u64 % field.p() == 0 {
            return precondition(format!("M = {m} must be positive and prime to p"));
        }
        match ext {
            ExtKind::Unramified if n % 2 != 0 => return precondition("unramified pairs have even n"),
            ExtKind::RamifiedTame if n % 2 == 0 => return precondition("ramified pairs have odd n"),
            _ => {}
        }
        let order = group_order(field, n, m);
        if order > budget {
            return Err(Error::Budget { order, budget });
        }
        let gf = Gf::new(field)?;
        let depth = n as usize + 1;
        let k = if n == 0 { 0 } else { (n as usize + 1) / 2 };
        let ring = TwistedRing::new(&gf, depth, m);
        let in_j = |u: &Coeffs, v: u32| -> bool {
            match ext {
                ExtKind::Unramified => v % 2 == 0 && (1..k).step_by(2).all(|i| u[i] == 0),
                ExtKind::RamifiedTame => (0..k).all(|i| gf.in_base(u[i])),
            }
        };
        let units_in_j = ring.units().iter().filter(|u| in_j(u, 0)).count() as u64;
        let v_count = match ext {
            ExtKind::Unramified => m as u64,
            ExtKind::RamifiedTame => 2 * m as u64,
        };
        let j_order = units_in_j * v_count;
        let u1 = ring.one_units();
        let u1_inv: Vec<Coeffs> = u1.iter().map(|u| ring.inv(u)).collect();
        let units = gf.units();
        let two_m = 2 * m;
        let cnt: Vec<u64> = (0..units * two_m as usize)
            .into_par_iter()
            .map(|idx| {
                let a = gf.exp((idx / two_m as usize) as u64);
                let v = (idx % two_m as usize) as u32;
                if ext == ExtKind::Unramified && v % 2 == 1 {
                    return 0;
                }
                let g = ring.constant(a);
                u1.iter()
                    .zip(&u1_inv)
                    .filter(|(u, ui)| {
                        let conj = ring.mul(&ring.mul(ui, &g), &ring.frob_pow(u, v));
                        in_j(&conj, v)
                    })
                    .count() as u64
            })
            .collect();
        let l = (units as u64).lcm(&(4 * m as u64));
        Ok(BrauerModel {
            field,
            ext,
            n,
            m,
            gf,
            j_order,
            group_order: order,
            cnt,
            cyclo: Cyclo::new(l),
        })
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// `|J̃|`.
    pub fn j_order(&self) -> u64 {
        self.j_order
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    fn units(&self) -> u64 {
        self.gf.units() as u64
    }

    fn cnt(&self, j: u64, v: u32) -> u64 {
        self.cnt[(j * 2 * self.m as u64 + v as u64) as usize]
    }

    fn keys(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        let two_m = 2 * self.m;
        (0..self.units()).flat_map(move |j| (0..two_m).map(move |v| (j, v)))
    }

    fn root(&self, r: &RootOfUnity) -> Result<()> {
        if r.to_exponent(self.cyclo.order()).is_none() {
            return precondition(format!(
                "value {r} is not trivial on ϖ_F^{}; choose a larger M",
                self.m
            ));
        }
        Ok(())
    }

    fn check_char(&self, chi_bar: &TameChar) -> Result<()> {
        let want = match self.ext {
            ExtKind::Unramified => CharGroup::Eunram,
            ExtKind::RamifiedTame => CharGroup::Eram,
        };
        if chi_bar.group() != want || chi_bar.field() != self.field || !chi_bar.is_modp() {
            return Err(Error::GroupMismatch(format!(
                "expected a mod p character of {want:?} over q = {}",
                self.field.q()
            )));
        }
        let at_wf = match self.ext {
            ExtKind::Unramified => chi_bar.unif_val().clone(),
            ExtKind::RamifiedTame => chi_bar.unif_val().pow(2),
        };
        if !at_wf.pow(self.m as i64).is_identity() {
            return precondition(format!(
                "χ̄(ϖ_F) = {at_wf} is not trivial on ϖ_F^{}",
                self.m
            ));
        }
        Ok(())
    }

    /// Brauer character of `Λ̄` at the tame element `(ζ^j, v)` of `J̃`,
    /// added to `acc` with weight `w`.
    fn add_beta(&self, acc: &mut FormalSum, weight: i64, chi_bar: &TameChar, j: u64, v: u32) {
        let units = self.units();
        let q = self.field.q();
        match self.ext {
            ExtKind::Unramified => {
                let r = RootOfUnity::from_exponent(chi_bar.residue_exp() * j % units, units)
                    .mul(&chi_bar.unif_val().pow(v as i64 / 2));
                let c = if self.n % 4 == 2 {
                    if j % (q + 1) == 0 {
                        q as i64
                    } else {
                        -1
                    }
                } else {
                    1
                };
                self.cyclo.add_root(acc, weight * c, &r);
            }
            ExtKind::RamifiedTame => {
                let r = RootOfUnity::from_exponent(chi_bar.residue_exp() * j % units, units)
                    .mul(&chi_bar.unif_val().pow(v as i64));
                self.cyclo.add_root(acc, weight, &r);
            }
        }
    }

    /// Brauer character of `Ind_{J̃}^{G̃} Λ̄` on `T`.
    pub fn induced(&self, chi_bar: &TameChar) -> Result<ClassFunction> {
        self.check_char(chi_bar)?;
        let units = self.units();
        let q = self.field.q();
        let keys: Vec<(u64, u32)> = self.keys().collect();
        let values = keys
            .par_iter()
            .map(|&(j, v)| {
                let mut acc = self.cyclo.zero_sum();
                // Conjugating ζ^j ϖ^v by ζ^i gives ζ^{j + i(q^v - 1)} ϖ^v.
                let shift = if v % 2 == 0 { 0 } else { q - 1 };
                for i in 0..units {
                    let ji = (j + i * shift) % units;
                    let c = self.cnt(ji, v);
                    if c == 0 {
                        continue;
                    }
                    let w = (c * self.m as u64) as i64;
                    self.add_beta(&mut acc, w, chi_bar, ji, v);
                    self.add_beta(&mut acc, w, chi_bar, ji * q % units, v);
                }
                let total = self.cyclo.reduce(&acc);
                let value = self.cyclo.divide(&total, self.j_order as i64).ok_or_else(|| {
                    Error::Precondition(format!(
                        "induced value {total} at ({j}, {v}) is not divisible by |J| = {}",
                        self.j_order
                    ))
                })?;
                Ok(((j, v), value))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(ClassFunction { values })
    }

    /// Brauer character of a multiset of irreducible representations of
    /// `D^×` on `T`.
    pub fn predicted(&self, ms: &RepMultiset) -> Result<ClassFunction> {
        if ms.side() != Side::D {
            return precondition("predicted characters are computed for representations of D^x");
        }
        let units = self.units();
        let q = self.field.q();
        let fq = self.field.f_order();
        let mut values = BTreeMap::new();
        for (j, v) in self.keys() {
            let mut acc = self.cyclo.zero_sum();
            for (label, mult) in ms.iter() {
                match label.shape() {
                    Shape::TwoDim { xi } => {
                        if v % 2 == 1 {
                            continue;
                        }
                        let w = xi.unif_val().pow(v as i64 / 2);
                        for jj in [j, j * q % units] {
                            let r = RootOfUnity::from_exponent(xi.residue_exp() * jj % units, units).mul(&w);
                            self.root(&r)?;
                            self.cyclo.add_root(&mut acc, mult as i64, &r);
                        }
                    }
                    Shape::OneDim { phi } => {
                        // Nrd(ζ_E^j) = ζ_F^j and Nrd(ϖ_D) = -ϖ_F.
                        let at_wd = phi.value_at_minus_one().mul(phi.unif_val());
                        let r = RootOfUnity::from_exponent(phi.residue_exp() * (j % fq) % fq, fq)
                            .mul(&at_wd.pow(v as i64));
                        self.root(&r)?;
                        self.cyclo.add_root(&mut acc, mult as i64, &r);
                    }
                }
            }
            values.insert((j, v), self.cyclo.reduce(&acc));
        }
        Ok(ClassFunction { values })
    }

    /// Compare the induced character of `χ̄` with the prediction from `ms`.
    pub fn verify(&self, chi_bar: &TameChar, ms: &RepMultiset) -> Result<OracleReport> {
        let induced = self.induced(chi_bar)?;
        let predicted = self.predicted(ms)?;
        let diffs = induced.diff(&predicted);
        Ok(OracleReport {
            q: self.field.q(),
            ext: self.ext,
            n: self.n,
            chi_bar: chi_bar.clone(),
            group_order: self.group_order,
            elements_checked: induced.values.len(),
            passed: diffs.is_empty(),
            diffs,
        })
    }

    /// Whether every `p`-regular element of `G̃` is conjugate into `T` by
    /// an element of `U¹`. Quadratic in `|G̃|`; meant for small models.
    pub fn p_regular_elements_meet_complement(&self) -> bool {
        let ring = TwistedRing::new(&self.gf, self.n as usize + 1, self.m);
        let u1 = ring.one_units();
        let p = self.field.p();
        let is_const = |u: &Coeffs| u[1..ring.depth].iter().all(|&c| c == 0);
        let elements: Vec<GroupElem> = ring
            .units()
            .into_iter()
            .flat_map(|u| (0..2 * self.m).map(move |v| GroupElem { u, v }))
            .collect();
        elements.par_iter().all(|g| {
            let mut x = *g;
            let mut order = 1u64;
            while x != ring.identity() {
                x = ring.group_mul(&x, g);
                order += 1;
            }
            if order % p == 0 {
                return true;
            }
            u1.iter().any(|u| {
                let c = ring.conjugate(g, &GroupElem { u: *u, v: 0 });
                is_const(&c.u)
            })
        })
    }
}

/// Order of `χ̄(ϖ_F)`.
pub fn central_uniformizer_order(chi_bar: &TameChar) -> u32 {
    let at_wf = match chi_bar.group() {
        CharGroup::Eram => chi_bar.unif_val().pow(2),
        _ => chi_bar.unif_val().clone(),
    };
    let o: u64 = num_traits::ToPrimitive::to_u64(&at_wf.order()).unwrap_or(u64::MAX);
    o.min(u32::MAX as u64) as u32
}

/// Check `reduce_pi` against the brute force Brauer character.
pub fn oracle_verify_reduction(pair: &AdmissiblePair, budget: u64) -> Result<OracleReport> {
    let chi_bar = pair.chi().reduce_char();
    let m = central_uniformizer_order(&chi_bar);
    let model = BrauerModel::new(pair.base(), pair.ext(), pair.n(), m, budget)?;
    let ms = reduce_pi(pair, None)?;
    model.verify(&chi_bar, &ms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp_reps::ModPIrrep;

    fn k(q: u64) -> FieldParams {
        FieldParams::from_q(q).unwrap()
    }

    fn r(s: &str) -> RootOfUnity {
        s.parse().unwrap()
    }

    #[test]
    fn level_zero_values() {
        let model = BrauerModel::new(k(3), ExtKind::Unramified, 0, 1, DEFAULT_BUDGET).unwrap();
        let chi = TameChar::modp(k(3), CharGroup::Eunram, 1, r("0/1"));
        let f = model.induced(&chi).unwrap();
        // At ζ_E: ω + ω³. At ϖ_D: 0.
        let mut s = model.cyclo.zero_sum();
        model.cyclo.add_exp(&mut s, 1, 1);
        model.cyclo.add_exp(&mut s, 1, 3);
        assert_eq!(f.values[&(1, 0)], model.cyclo.reduce(&s));
        assert!(f.values[&(1, 1)].is_zero());
        let mut s = model.cyclo.zero_sum();
        model.cyclo.add_exp(&mut s, 2, 4);
        assert_eq!(f.values[&(4, 0)], model.cyclo.reduce(&s));
    }

    #[test]
    fn small_reductions_match() {
        for (ext, n, a, w) in [
            (ExtKind::Unramified, 0, 1, "0/1"),
            (ExtKind::Unramified, 2, 1, "1/2"),
            (ExtKind::Unramified, 2, 4, "0/1"),
            (ExtKind::RamifiedTame, 1, 1, "1/4"),
            (ExtKind::RamifiedTame, 1, 0, "0/1"),
            (ExtKind::RamifiedTame, 3, 0, "1/2"),
        ] {
            let pair = AdmissiblePair::from_level(k(3), ext, n, a, r(w)).unwrap();
            let rep = oracle_verify_reduction(&pair, DEFAULT_BUDGET).unwrap();
            assert!(rep.passed, "{pair:?}: {:?}", rep.diffs);
        }
    }

    #[test]
    fn mutation_is_detected() {
        let pair = AdmissiblePair::from_level(k(3), ExtKind::Unramified, 2, 1, r("0/1")).unwrap();
        let model = BrauerModel::new(k(3), ExtKind::Unramified, 2, 1, DEFAULT_BUDGET).unwrap();
        let ms = reduce_pi(&pair, None).unwrap();
        let chi = pair.chi().reduce_char();
        for (label, _) in ms.iter() {
            let mut bad = ms.clone();
            bad.add(label.clone(), 1);
            assert!(!model.verify(&chi, &bad).unwrap().passed);
        }
        let mut extra = ms.clone();
        let phi = TameChar::modp(k(3), CharGroup::Fmult, 0, r("0/1"));
        extra.add(ModPIrrep::one_dim(Side::D, &phi).unwrap(), 1);
        assert!(!model.verify(&chi, &extra).unwrap().passed);
    }

    #[test]
    fn complement_meets_p_regular_classes() {
        let model = BrauerModel::new(k(3), ExtKind::Unramified, 2, 1, DEFAULT_BUDGET).unwrap();
        assert!(model.p_regular_elements_meet_complement());
        let model = BrauerModel::new(k(3), ExtKind::RamifiedTame, 1, 2, DEFAULT_BUDGET).unwrap();
        assert!(model.p_regular_elements_meet_complement());
    }

    #[test]
    fn budget_is_enforced() {
        let err = BrauerModel::new(k(3), ExtKind::Unramified, 4, 4, 1000).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }
}
