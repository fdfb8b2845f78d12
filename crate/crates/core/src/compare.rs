//! Comparison of the two reductions across the composite of the local
//! Langlands and Jacquet-Langlands correspondences, realized on tame data
//! as `R_χ ↦ Π_{Δ_χ⊗χ}`.
//!
//! At level zero both reductions are irreducible and the mod `p`
//! correspondence exchanges them. At positive level the reduction of `Π`
//! is spread over many factors; [`compare_higher`] computes both sides and
//! runs a battery of explicit checks on the computed multisets, and
//! [`selector`] picks out the factor that the image of `R̄` singles out.
//!
//! ```
//! use quatmodp::{check_level_zero, AdmissiblePair, ExtKind, FieldParams};
//!
//! let k = FieldParams::new(3, 1).unwrap();
//! let pair = AdmissiblePair::from_level(k, ExtKind::Unramified, 0, 1, "1/8".parse().unwrap()).unwrap();
//! let report = check_level_zero(&pair).unwrap();
//! assert!(report.passed());
//! assert_eq!(report.image_label.unwrap().to_string(), "pi(1:5/8)");
//! ```

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::modp_reps::{modp_correspondence, pi_xi, ModPIrrep, RepMultiset, Side};
use crate::reduction::{reduce_pi, reduce_r};
use crate::tame_chars::{
    delta, delta_chi, kappa, AdmissiblePair, CharGroup, ExtKind, FieldParams, TameChar,
};
use crate::value_algebra::RootOfUnity;

/// The pair with `χ` replaced by `Δ_χ⊗χ`.
pub fn jl_image(pair: &AdmissiblePair, ram_unif_choice: Option<&RootOfUnity>) -> Result<AdmissiblePair> {
    let d = delta_chi(pair, ram_unif_choice)?;
    Ok(pair.with_chi(pair.chi().tensor(&d)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "level0")]
    LevelZero,
    /// Even `n`, `χ̄` regular.
    #[serde(rename = "2a")]
    EvenRegular,
    /// Even `n`, `χ̄` irregular.
    #[serde(rename = "2b")]
    EvenIrregular,
    /// Odd `n`, `χ(-1) = -1`, `q ≡ 1 mod 4`.
    #[serde(rename = "3c")]
    OddOddSignQ1,
    /// Odd `n`, `χ(-1) = -1`, `q ≡ 3 mod 4`.
    #[serde(rename = "3d")]
    OddOddSignQ3,
    /// Odd `n`, `χ(-1) = 1`, `q ≡ 1 mod 4`.
    #[serde(rename = "3e")]
    OddEvenSignQ1,
    /// Odd `n`, `χ(-1) = 1`, `q ≡ 3 mod 4`.
    #[serde(rename = "3f")]
    OddEvenSignQ3,
    #[serde(rename = "wild")]
    Wild,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::LevelZero => "level0",
            CaseTag::EvenRegular => "2a",
            CaseTag::EvenIrregular => "2b",
            CaseTag::OddOddSignQ1 => "3c",
            CaseTag::OddOddSignQ3 => "3d",
            CaseTag::OddEvenSignQ1 => "3e",
            CaseTag::OddEvenSignQ3 => "3f",
            CaseTag::Wild => "wild",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One named check of a comparison report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryCheck {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub pair: AdmissiblePair,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_ram: Option<RootOfUnity>,
    pub case_tag: CaseTag,
    pub r_red: RepMultiset,
    pub pi_red: RepMultiset,
    pub image_label: Option<ModPIrrep>,
    pub occurs: bool,
    pub selector_result: Option<ModPIrrep>,
    pub selector_unique: bool,
    pub checks: Vec<BatteryCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BatteryCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// The same report with every label twisted by the reduction of `phi`.
    /// Both sides twist compatibly, so the checks carry over unchanged.
    pub fn twisted(&self, phi: &TameChar) -> Result<ComparisonReport> {
        let tw = |l: &Option<ModPIrrep>| -> Result<Option<ModPIrrep>> {
            l.as_ref().map(|l| l.twisted(phi)).transpose()
        };
        Ok(ComparisonReport {
            pair: self.pair.clone(),
            delta_ram: self.delta_ram.clone(),
            case_tag: self.case_tag,
            r_red: self.r_red.twisted(phi)?,
            pi_red: self.pi_red.twisted(phi)?,
            image_label: tw(&self.image_label)?,
            occurs: self.occurs,
            selector_result: tw(&self.selector_result)?,
            selector_unique: self.selector_unique,
            checks: self.checks.clone(),
            notes: self.notes.clone(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectorMode {
    /// The two-dimensional factor whose multiplicity differs from all
    /// others; `n` fixes the direction when only two factors exist.
    UnramPair { n: u32 },
    /// The two-dimensional `π_ν` with `ν(ζ)^{q-1} = -1`.
    RamPair,
    /// The two-dimensional `π_ν` with `ν(ζ)^{q-1}` a primitive cube root
    /// of unity.
    Wild,
}

/// Pick the factor of `pi_red` characterized by `mode`. Returns the label
/// and whether it is the only one with the property.
pub fn selector(pi_red: &RepMultiset, mode: SelectorMode) -> (Option<ModPIrrep>, bool) {
    let two: Vec<(&ModPIrrep, u64)> = pi_red.two_dim().collect();
    let Some((first, _)) = two.first() else {
        return (None, false);
    };
    let q = first.field().q();
    let exp_of = |l: &ModPIrrep| l.xi().expect("two-dimensional").residue_exp();
    let matches: Vec<(&ModPIrrep, u64)> = match mode {
        SelectorMode::UnramPair { n } => {
            if two.len() == 1 {
                return (Some((*first).clone()), true);
            }
            let distinct: Vec<(&ModPIrrep, u64)> = two
                .iter()
                .filter(|(l, m)| two.iter().all(|(l2, m2)| l2 == l || m2 != m))
                .cloned()
                .collect();
            if distinct.len() == 2 && two.len() == 2 {
                let pick = if n % 4 == 2 {
                    distinct.iter().min_by_key(|(_, m)| *m)
                } else {
                    distinct.iter().max_by_key(|(_, m)| *m)
                };
                return (pick.map(|(l, _)| (*l).clone()), true);
            }
            distinct
        }
        SelectorMode::RamPair => two
            .iter()
            .filter(|(l, _)| exp_of(l) % (q + 1) == (q + 1) / 2 && q % 2 == 1)
            .cloned()
            .collect(),
        SelectorMode::Wild => two
            .iter()
            .filter(|(l, _)| {
                let a = exp_of(l) % (q + 1);
                a != 0 && (3 * a) % (q + 1) == 0
            })
            .cloned()
            .collect(),
    };
    match matches.as_slice() {
        [] => (None, false),
        [(l, _)] => (Some((*l).clone()), true),
        [(l, _), ..] => (Some((*l).clone()), false),
    }
}

/// Whether all two-dimensional factors share one multiplicity. `None`
/// when there are fewer than two of them.
pub fn two_dim_uniform(pi_red: &RepMultiset) -> Option<bool> {
    let mults: Vec<u64> = pi_red.two_dim().map(|(_, m)| m).collect();
    if mults.len() < 2 {
        return None;
    }
    Some(mults.iter().all(|m| *m == mults[0]))
}

/// All irreducible mod `p` representations of `D^×` with central
/// character `central` (a mod `p` character of `F^×`).
pub fn irreps_with_central_character(central: &TameChar) -> BTreeSet<ModPIrrep> {
    let k = central.field();
    let mut out = BTreeSet::new();
    for a in 0..k.e_order() {
        let xi = TameChar::modp(k, CharGroup::Eunram, a, central.unif_val().clone());
        if xi.is_regular(ExtKind::Unramified).unwrap_or(false)
            && xi.restrict_to_f().map(|r| &r == central).unwrap_or(false)
        {
            out.insert(ModPIrrep::two_dim(Side::D, &xi).expect("regular"));
        }
    }
    for phi in square_roots_char(central) {
        out.insert(ModPIrrep::one_dim(Side::D, &phi).expect("F^x character"));
    }
    out
}

/// Mod `p` characters `φ` of `F^×` with `φ(ζ_F)` and `φ(ϖ_F)` squaring to
/// the values of `c`.
fn square_roots_char(c: &TameChar) -> BTreeSet<TameChar> {
    let k = c.field();
    let m = k.f_order();
    let mut out = BTreeSet::new();
    for e in (0..m).filter(|e| (2 * e) % m == c.residue_exp() % m) {
        for s in c.unif_val().square_roots() {
            out.insert(TameChar::modp(k, CharGroup::Fmult, e, s));
        }
    }
    out
}

fn fmult(k: FieldParams, c: u64, s: RootOfUnity) -> TameChar {
    TameChar::modp(k, CharGroup::Fmult, c % k.f_order(), s)
}

fn labels(ms: &RepMultiset, dim: u64) -> BTreeSet<ModPIrrep> {
    ms.labels().filter(|l| l.dim() == dim).cloned().collect()
}

fn one_dim_set(side: Side, chars: impl IntoIterator<Item = TameChar>) -> BTreeSet<ModPIrrep> {
    chars
        .into_iter()
        .map(|c| ModPIrrep::one_dim(side, &c).expect("F^x character"))
        .collect()
}

fn show(set: &BTreeSet<ModPIrrep>) -> String {
    let v: Vec<String> = set.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

#[derive(Default)]
struct Battery {
    checks: Vec<BatteryCheck>,
}

impl Battery {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(BatteryCheck {
            name: name.to_string(),
            passed,
            detail: if passed { String::new() } else { detail.into() },
        });
    }

    fn same(&mut self, name: &str, got: &BTreeSet<ModPIrrep>, want: &BTreeSet<ModPIrrep>) {
        self.check(
            name,
            got == want,
            format!("computed {} expected {}", show(got), show(want)),
        );
    }
}

/// Both reductions at level zero and their exchange under the mod `p`
/// correspondence.
pub fn check_level_zero(pair: &AdmissiblePair) -> Result<ComparisonReport> {
    if pair.n() != 0 {
        return precondition(format!("expected a level zero pair, got level {}", pair.level()));
    }
    let image_pair = jl_image(pair, None)?;
    let r_red = reduce_r(pair, None)?;
    let pi_red = reduce_pi(&image_pair, None)?;
    let mut b = Battery::default();
    b.check("r_irreducible", r_red.irreducible().is_some(), r_red.to_string());
    b.check("pi_irreducible", pi_red.irreducible().is_some(), pi_red.to_string());
    let image_label = r_red.irreducible().map(modp_correspondence).transpose()?;
    let occurs = image_label.as_ref().is_some_and(|l| pi_red.contains(l));
    b.check(
        "correspondence_exchanges",
        image_label.is_some() && pi_red.irreducible() == image_label.as_ref(),
        format!("image {image_label:?}, reduction {pi_red}"),
    );
    let (selector_result, selector_unique) = selector(&pi_red, SelectorMode::UnramPair { n: 0 });
    Ok(ComparisonReport {
        pair: pair.clone(),
        delta_ram: None,
        case_tag: CaseTag::LevelZero,
        r_red,
        pi_red,
        image_label,
        occurs,
        selector_result,
        selector_unique,
        checks: b.checks,
        notes: Vec::new(),
    })
}

/// Both reductions at positive level with every explicit check that
/// applies to the case, plus the selector.
pub fn compare_higher(
    pair: &AdmissiblePair,
    ram_unif_choice: Option<&RootOfUnity>,
) -> Result<ComparisonReport> {
    if pair.n() == 0 {
        return precondition("level zero pairs are handled by check_level_zero");
    }
    let image_pair = jl_image(pair, ram_unif_choice)?;
    let r_red = reduce_r(pair, None)?;
    let pi_red = reduce_pi(&image_pair, None)?;
    let image_label = r_red.irreducible().map(modp_correspondence).transpose()?;
    let occurs = image_label.as_ref().is_some_and(|l| pi_red.contains(l));
    let mut b = Battery::default();
    let mut notes = Vec::new();
    let (case_tag, mode) = match pair.ext() {
        ExtKind::Unramified => {
            let tag = even_battery(pair, &r_red, &pi_red, &image_label, &mut b, &mut notes)?;
            (tag, SelectorMode::UnramPair { n: pair.n() })
        }
        ExtKind::RamifiedTame => {
            let d = ram_unif_choice.expect("delta_chi checked the choice");
            let tag = odd_battery(pair, d, &r_red, &pi_red, &image_label, &mut b)?;
            (tag, SelectorMode::RamPair)
        }
    };
    let (selector_result, selector_unique) = selector(&pi_red, mode);
    selector_battery(pair, mode, &pi_red, &image_label, &selector_result, selector_unique, &mut b, &mut notes);
    Ok(ComparisonReport {
        pair: pair.clone(),
        delta_ram: ram_unif_choice.cloned(),
        case_tag,
        r_red,
        pi_red,
        image_label,
        occurs,
        selector_result,
        selector_unique,
        checks: b.checks,
        notes,
    })
}

fn even_battery(
    pair: &AdmissiblePair,
    r_red: &RepMultiset,
    pi_red: &RepMultiset,
    image_label: &Option<ModPIrrep>,
    b: &mut Battery,
    notes: &mut Vec<String>,
) -> Result<CaseTag> {
    let k = pair.base();
    let q = k.q();
    let n = pair.n();
    let chi_bar = pair.chi().reduce_char();
    let twisted_bar = chi_bar.tensor(&delta(k))?;
    let regular = chi_bar.is_regular(ExtKind::Unramified)?;
    b.check(
        "regularity_preserved_by_twist",
        twisted_bar.is_regular(ExtKind::Unramified)? == regular,
        "",
    );
    b.check(
        "regularity_criterion",
        regular == !chi_bar.value_at_zeta().pow(q as i64 - 1).is_identity(),
        "",
    );
    b.check(
        "r_irreducible_iff_regular",
        r_red.irreducible().is_some() == regular,
        r_red.to_string(),
    );
    let central = twisted_bar.restrict_to_f()?;
    let all = irreps_with_central_character(&central);
    let support: BTreeSet<ModPIrrep> = pi_red.labels().cloned().collect();
    let (want_two, want_one) = if !k.odd() {
        (q / 2, 1)
    } else if regular && !pair.chi().value_at_minus_one().is_identity() {
        ((q + 1) / 2, 0)
    } else {
        ((q - 1) / 2, 4)
    };
    let count_two = all.iter().filter(|l| l.dim() == 2).count() as u64;
    let count_one = all.len() as u64 - count_two;
    let one_less = n % 4 == 2;
    if regular {
        let image = image_label.clone().expect("regular reduces irreducibly");
        b.check(
            "image_is_delta_twist",
            image == ModPIrrep::two_dim(Side::D, &twisted_bar)?,
            image.to_string(),
        );
        b.check("image_occurs", pi_red.contains(&image), pi_red.to_string());
        let mi = pi_red.mult(&image);
        let bad: Vec<String> = pi_red
            .two_dim()
            .filter(|(l, _)| *l != &image)
            .filter(|(_, m)| if one_less { mi + 1 != *m } else { mi != m + 1 })
            .map(|(l, m)| format!("{l}^{m}"))
            .collect();
        b.check(
            "image_multiplicity_offset",
            bad.is_empty(),
            format!("image multiplicity {mi}, mismatched: {}", bad.join(", ")),
        );
        if n == 2 {
            notes.push(format!(
                "at n = 2 the image occurs with multiplicity {mi}; every other two-dimensional factor has multiplicity {}",
                mi + 1
            ));
        }
        b.same("saturation", &support, &all);
        b.check(
            "central_character_counts",
            (count_two, count_one) == (want_two, want_one),
            format!("{count_two} two-dimensional and {count_one} one-dimensional"),
        );
        Ok(CaseTag::EvenRegular)
    } else {
        let c = chi_bar.residue_exp() / (q + 1);
        let w = chi_bar.unif_val().clone();
        let minus = RootOfUnity::minus_one();
        let roots = |c: u64, x: &RootOfUnity| -> BTreeSet<TameChar> {
            x.square_roots().into_iter().map(|s| fmult(k, c, s)).collect()
        };
        let phi12 = one_dim_set(Side::W, roots(c, &w));
        b.same("r_characters", &r_red.labels().cloned().collect(), &phi12);
        let phi34 = one_dim_set(Side::D, roots(c, &w.mul(&minus)));
        b.same("image_twist_characters", &labels(&pi_xi(&twisted_bar)?, 1), &phi34);
        if k.odd() {
            let half = (q - 1) / 2;
            let tau = TameChar::modp(k, CharGroup::Eunram, k.e_order() / 2, RootOfUnity::one());
            let phi56 = one_dim_set(Side::D, roots(c + half, &w.mul(&minus)));
            b.same(
                "sign_twist_characters",
                &labels(&pi_xi(&twisted_bar.tensor(&tau)?)?, 1),
                &phi56,
            );
            let m5 = phi56.iter().map(|l| pi_red.mult(l)).max().unwrap_or(0);
            let off: Vec<String> = phi56
                .iter()
                .chain(phi34.iter())
                .map(|l| format!("{l}^{}", pi_red.mult(l)))
                .collect();
            let ok = phi34.iter().all(|l| {
                let m3 = pi_red.mult(l);
                if one_less {
                    m3 + 1 == m5
                } else {
                    m3 == m5 + 1
                }
            }) && phi56.iter().all(|l| pi_red.mult(l) == m5);
            b.check("character_multiplicity_offset", ok, off.join(", "));
        }
        if n != 2 {
            b.same("saturation", &support, &all);
            b.check(
                "central_character_counts",
                (count_two, count_one) == (want_two, want_one),
                format!("{count_two} two-dimensional and {count_one} one-dimensional"),
            );
        } else {
            b.check(
                "image_characters_absent",
                phi34.iter().all(|l| !pi_red.contains(l)),
                pi_red.to_string(),
            );
        }
        Ok(CaseTag::EvenIrregular)
    }
}

fn odd_battery(
    pair: &AdmissiblePair,
    d: &RootOfUnity,
    r_red: &RepMultiset,
    pi_red: &RepMultiset,
    image_label: &Option<ModPIrrep>,
    b: &mut Battery,
) -> Result<CaseTag> {
    let k = pair.base();
    let q = k.q();
    let n = pair.n();
    let chi_bar = pair.chi().reduce_char();
    let sign_odd = !pair.chi().value_at_minus_one().is_identity();
    let q1 = q % 4 == 1;
    let tag = match (sign_odd, q1) {
        (true, true) => CaseTag::OddOddSignQ1,
        (true, false) => CaseTag::OddOddSignQ3,
        (false, true) => CaseTag::OddEvenSignQ1,
        (false, false) => CaseTag::OddEvenSignQ3,
    };
    let regular = chi_bar.is_regular(ExtKind::RamifiedTame)?;
    b.check("regular_iff_odd_sign", regular == sign_odd, "");
    b.check(
        "r_irreducible_iff_regular",
        r_red.irreducible().is_some() == regular,
        r_red.to_string(),
    );
    let minus = RootOfUnity::minus_one();
    let n_e = k.e_order();
    let m_f = k.f_order();
    let bexp = chi_bar.residue_exp();
    // χ̄(ζ_F) as an exponent of ζ_{E₀}, and χ̄(ϖ_F) = χ̄(ϖ_E)².
    let chi_zf_e = ((q + 1) * bexp) % n_e;
    let chi_wf = chi_bar.unif_val().pow(2);
    let chi_we = chi_bar.unif_val().clone();
    let jacobi_minus = !q1;
    let i2_empty = jacobi_minus != sign_odd;
    b.check(
        "one_dim_empty_iff_sign",
        labels(pi_red, 1).is_empty() == i2_empty,
        pi_red.to_string(),
    );
    // Two-dimensional factors: ν^{q+1} = -χ̄(ζ_F), ν(ϖ_F) = ±χ̄(ϖ_F).
    let nu_unif = if q1 { chi_wf.clone() } else { chi_wf.mul(&minus) };
    let target = (chi_zf_e + n_e / 2) % n_e;
    let mut i1 = BTreeSet::new();
    for a in 0..n_e {
        let nu = TameChar::modp(k, CharGroup::Eunram, a, nu_unif.clone());
        if ((q + 1) * a) % n_e == target && nu.is_regular(ExtKind::Unramified)? {
            i1.insert(ModPIrrep::two_dim(Side::D, &nu)?);
        }
    }
    let two = labels(pi_red, 2);
    b.same("two_dim_factors", &two, &i1);
    let want_i1 = if i2_empty { (q + 1) / 2 } else { (q - 1) / 2 } as usize;
    b.check("two_dim_count", two.len() == want_i1, format!("{} factors", two.len()));
    let h = q.pow((n - 1) / 2);
    b.check(
        "two_dim_multiplicity",
        two.iter().all(|l| pi_red.mult(l) == h),
        pi_red.to_string(),
    );
    let central = TameChar::modp(k, CharGroup::Eram, (bexp + m_f / 2) % m_f, chi_we.mul(d)).restrict_to_f()?;
    let all = irreps_with_central_character(&central);
    let support: BTreeSet<ModPIrrep> = pi_red.labels().cloned().collect();
    if sign_odd {
        // ξ(ζ_{E₀})² = χ̄(ζ_F), ξ(ϖ_F) = ∓χ̄(ϖ_F).
        let xi_unif = if q1 { chi_wf.mul(&minus) } else { chi_wf.clone() };
        let mut xis = BTreeSet::new();
        for a in (0..n_e).filter(|a| (2 * a) % n_e == chi_zf_e) {
            let xi = TameChar::modp(k, CharGroup::Eunram, a, xi_unif.clone());
            if xi.is_regular(ExtKind::Unramified)? {
                xis.insert(ModPIrrep::two_dim(Side::W, &xi)?);
            }
        }
        let got: BTreeSet<ModPIrrep> = r_red.labels().cloned().collect();
        b.check(
            "r_label_solves_equations",
            got.len() == 1 && got.is_subset(&xis),
            format!("computed {} solutions {}", show(&got), show(&xis)),
        );
        let image = image_label.clone().expect("regular reduces irreducibly");
        b.check(
            "image_in_two_dim_part",
            i1.contains(&image) && pi_red.contains(&image),
            format!("image {image} not among {}", show(&two)),
        );
    } else {
        // φ₁(ζ_F)² = χ̄(ζ_F), φ₁(ϖ_F) = φ₁(ζ_F)^{(q-1)/2} χ̄(ϖ_E).
        let mut phi1 = BTreeSet::new();
        for c in (0..m_f).filter(|c| (2 * c) % m_f == bexp % m_f) {
            let sign = RootOfUnity::from_ratio(c as i64, 2);
            phi1.insert(fmult(k, c, sign.mul(&chi_we)));
        }
        let kap = kappa(ExtKind::RamifiedTame, k)?.reduce_char();
        let mut want = BTreeSet::new();
        for p in &phi1 {
            want.insert(p.clone());
            want.insert(p.tensor(&kap)?);
        }
        b.same("r_characters", &r_red.labels().cloned().collect(), &one_dim_set(Side::W, want));
        if q1 {
            // The alternative form χ̄(ζ_F)^{(q-1)/4} χ̄(ϖ_E) of the same value.
            let alt = RootOfUnity::from_exponent(bexp, m_f)
                .pow(((q - 1) / 4) as i64)
                .mul(&chi_we)
                .reduce_mod_p(k.p());
            b.check(
                "r_uniformizer_value",
                phi1.iter().all(|p| p.unif_val() == &alt),
                format!("expected {alt}"),
            );
        }
    }
    let one = labels(pi_red, 1);
    if !i2_empty {
        // Two characters φ∘Nrd with φ(ζ_F)² = -χ̄(ζ_F),
        // φ(ϖ_F) = φ(ζ_F)^{(q-1)/2} Δ̄(ϖ_E) χ̄(ϖ_E).
        let mut i2 = BTreeSet::new();
        let tgt = (bexp + m_f / 2) % m_f;
        for c in (0..m_f).filter(|c| (2 * c) % m_f == tgt) {
            let sign = RootOfUnity::from_ratio(c as i64, 2);
            let s = sign.mul(d).mul(&chi_we);
            i2.insert(ModPIrrep::one_dim(Side::D, &fmult(k, c, s))?);
        }
        b.check("one_dim_extension_count", i2.len() == 2, show(&i2));
        let iota = crate::tame_chars::iota_tilde(k)?;
        let twisted: BTreeSet<ModPIrrep> =
            i2.iter().map(|l| l.twisted(&iota)).collect::<Result<_>>()?;
        let main: BTreeSet<ModPIrrep> = one
            .iter()
            .filter(|l| pi_red.mult(l) == (h + 1) / 2 && i2.contains(l))
            .cloned()
            .collect();
        b.same("one_dim_extensions", &main, &i2);
        if n != 1 {
            b.same("saturation", &support, &all);
        } else {
            b.check(
                "iota_twists_absent",
                twisted.iter().all(|l| !pi_red.contains(l)),
                pi_red.to_string(),
            );
            let mut rest = all.clone();
            rest.retain(|l| !twisted.contains(l));
            b.same("support_without_iota_twists", &support, &rest);
        }
    } else {
        b.check("one_dim_absent", one.is_empty(), show(&one));
        b.same("saturation", &support, &all);
        b.check(
            "equal_multiplicities",
            pi_red.iter().all(|(_, m)| m == h),
            pi_red.to_string(),
        );
        b.check(
            "count",
            all.len() as u64 == (q + 1) / 2,
            format!("{} representations", all.len()),
        );
    }
    Ok(tag)
}

#[allow(clippy::too_many_arguments)]
fn selector_battery(
    pair: &AdmissiblePair,
    mode: SelectorMode,
    pi_red: &RepMultiset,
    image_label: &Option<ModPIrrep>,
    selected: &Option<ModPIrrep>,
    unique: bool,
    b: &mut Battery,
    notes: &mut Vec<String>,
) {
    let regular = pair
        .chi()
        .reduce_char()
        .is_regular(pair.ext())
        .expect("pair characters match their extension");
    if let Some(image) = image_label {
        b.check(
            "selector_returns_image",
            selected.as_ref() == Some(image) && unique,
            format!("selected {selected:?} (unique {unique}), image {image}"),
        );
    }
    match mode {
        SelectorMode::RamPair => {
            b.check(
                "selector_empty_iff_irregular",
                selected.is_none() == !regular,
                format!("selected {selected:?}"),
            );
        }
        SelectorMode::UnramPair { .. } => match two_dim_uniform(pi_red) {
            Some(uniform) => b.check(
                "uniform_iff_irregular",
                uniform == !regular,
                pi_red.to_string(),
            ),
            None => notes.push("fewer than two two-dimensional factors; uniformity is vacuous".into()),
        },
        SelectorMode::Wild => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64, f: u32) -> FieldParams {
        FieldParams::new(p, f).unwrap()
    }

    fn r(s: &str) -> RootOfUnity {
        s.parse().unwrap()
    }

    fn pair(k: FieldParams, ext: ExtKind, n: u32, a: u64, w: &str) -> AdmissiblePair {
        AdmissiblePair::from_level(k, ext, n, a, r(w)).unwrap()
    }

    fn assert_pass(rep: &ComparisonReport) {
        let bad: Vec<_> = rep.failures().collect();
        assert!(bad.is_empty(), "{:?}: {bad:#?}", rep.pair);
    }

    #[test]
    fn jl_image_twists_uniformizer() {
        let q3 = k(3, 1);
        let p = pair(q3, ExtKind::Unramified, 0, 1, "0/1");
        let j = jl_image(&p, None).unwrap();
        assert_eq!(j.chi().unif_val(), &r("1/2"));
        assert_eq!(j.level(), 0);
    }

    #[test]
    fn level_zero_examples() {
        let rep = check_level_zero(&pair(k(3, 1), ExtKind::Unramified, 0, 1, "1/8")).unwrap();
        assert_pass(&rep);
        let rep = check_level_zero(&pair(k(2, 1), ExtKind::Unramified, 0, 1, "0/1")).unwrap();
        assert_pass(&rep);
        assert!(check_level_zero(&pair(k(3, 1), ExtKind::Unramified, 2, 1, "0/1")).is_err());
    }

    #[test]
    fn even_cases() {
        let q3 = k(3, 1);
        for n in [2, 4, 6] {
            for a in 0..8 {
                let rep = compare_higher(&pair(q3, ExtKind::Unramified, n, a, "1/4"), None).unwrap();
                assert_pass(&rep);
            }
        }
        let rep = compare_higher(&pair(q3, ExtKind::Unramified, 2, 1, "0/1"), None).unwrap();
        assert_eq!(rep.case_tag, CaseTag::EvenRegular);
        assert!(rep.occurs);
    }

    #[test]
    fn odd_cases() {
        for (p, tag_odd) in [(3, CaseTag::OddOddSignQ3), (5, CaseTag::OddOddSignQ1)] {
            let kk = k(p, 1);
            for dv in crate::tame_chars::admissible_delta_values(kk).unwrap() {
                for n in [1, 3] {
                    for b in 0..kk.f_order() {
                        let rep =
                            compare_higher(&pair(kk, ExtKind::RamifiedTame, n, b, "1/4"), Some(&dv)).unwrap();
                        assert_pass(&rep);
                        if b % 2 == 1 {
                            assert_eq!(rep.case_tag, tag_odd);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ramified_needs_delta_value() {
        let p = pair(k(3, 1), ExtKind::RamifiedTame, 1, 1, "0/1");
        assert!(compare_higher(&p, None).is_err());
    }

    #[test]
    fn selector_modes() {
        let q3 = k(3, 1);
        let p = pair(q3, ExtKind::Unramified, 4, 1, "0/1");
        let ms = reduce_pi(&p, None).unwrap();
        let (l, u) = selector(&ms, SelectorMode::UnramPair { n: 4 });
        assert!(u);
        assert_eq!(l.unwrap().xi().unwrap().residue_exp(), 1);
        let q2 = k(2, 1);
        let mut ms = RepMultiset::new(Side::D);
        ms.add(ModPIrrep::two_dim(Side::D, &TameChar::modp(q2, CharGroup::Eunram, 2, r("0/1"))).unwrap(), 1);
        let (l, u) = selector(&ms, SelectorMode::Wild);
        assert!(u);
        assert_eq!(l.unwrap().xi().unwrap().residue_exp(), 1);
    }
}
