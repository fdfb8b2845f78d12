//! Field parameters, tame character data and admissible pairs.
//!
//! A tame character is recorded by two pieces of data: the exponent `a`
//! such that the fixed generator of the roots of unity of the relevant
//! residue field goes to `ω^a`, and the value at the distinguished
//! uniformizer. One generator `ω` of `μ_{q²-1}` anchors everything:
//! `ω_F = ω^{q+1}` generates `μ_{q-1}`, `ζ_F = ζ_E^{q+1}` and `ϖ_F = ϖ_E²`.
//!
//! ```
//! use quatmodp::{CharGroup, FieldParams, TameChar};
//!
//! let k = FieldParams::new(3, 1).unwrap();
//! let chi = TameChar::modp(k, CharGroup::Eunram, 1, "1/8".parse().unwrap());
//! let conj = chi.galois_conjugate().unwrap();
//! assert_eq!(conj.residue_exp(), 3);
//! assert_eq!(conj.restrict_to_f().unwrap(), chi.restrict_to_f().unwrap());
//! ```

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::value_algebra::RootOfUnity;

/// The residue field size `q = p^f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawField", into = "RawField")]
pub struct FieldParams {
    p: u64,
    f: u32,
    q: u64,
}

#[derive(Serialize, Deserialize)]
struct RawField {
    p: u64,
    f: u32,
}

impl TryFrom<RawField> for FieldParams {
    type Error = Error;
    fn try_from(r: RawField) -> Result<Self> {
        FieldParams::new(r.p, r.f)
    }
}

impl From<FieldParams> for RawField {
    fn from(k: FieldParams) -> Self {
        RawField { p: k.p, f: k.f }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl FieldParams {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return precondition(format!("p = {p} is not prime"));
        }
        if f == 0 {
            return precondition("f must be at least 1");
        }
        let q = p
            .checked_pow(f)
            .filter(|q| q.checked_mul(*q).is_some())
            .ok_or_else(|| Error::Precondition(format!("q = {p}^{f} is too large")))?;
        Ok(FieldParams { p, f, q })
    }

    /// Recover `(p, f)` from a prime power `q`.
    pub fn from_q(q: u64) -> Result<Self> {
        let p = (2..=q).find(|d| q % d == 0).filter(|_| q >= 2);
        let Some(p) = p else {
            return precondition(format!("q = {q} is not a prime power"));
        };
        let mut f = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            f += 1;
        }
        if r != 1 {
            return precondition(format!("q = {q} is not a prime power"));
        }
        FieldParams::new(p, f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q² - 1`, the order of `μ_{E₀}`.
    pub fn e_order(&self) -> u64 {
        self.q * self.q - 1
    }

    /// `q - 1`, the order of `μ_F`.
    pub fn f_order(&self) -> u64 {
        self.q - 1
    }

    pub fn odd(&self) -> bool {
        self.p != 2
    }
}

/// Which quadratic extension `E/F` an admissible pair lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExtKind {
    #[serde(rename = "unram")]
    Unramified,
    #[serde(rename = "ram")]
    RamifiedTame,
}

impl FromStr for ExtKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unram" | "unramified" => Ok(ExtKind::Unramified),
            "ram" | "ramified" => Ok(ExtKind::RamifiedTame),
            _ => Err(Error::Parse(format!("unknown extension kind `{s}` (expected unram or ram)"))),
        }
    }
}

impl fmt::Display for ExtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtKind::Unramified => "unram",
            ExtKind::RamifiedTame => "ram",
        })
    }
}

/// The group a tame character is defined on.
///
/// `Dmult` characters are stored through the reduced norm: the data are
/// those of the character `φ` of `F^×` with `φ∘Nrd` meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CharGroup {
    Eunram,
    Eram,
    Fmult,
    Dmult,
}

/// Characteristic of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharTag {
    Zero { level: u32 },
    #[serde(rename = "modp")]
    ModP,
}

/// A tame character given by its residue exponent and uniformizer value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawChar")]
pub struct TameChar {
    field: FieldParams,
    group: CharGroup,
    residue_exp: u64,
    unif_val: RootOfUnity,
    #[serde(rename = "char")]
    char_tag: CharTag,
}

#[derive(Deserialize)]
struct RawChar {
    field: FieldParams,
    group: CharGroup,
    residue_exp: u64,
    unif_val: RootOfUnity,
    #[serde(rename = "char")]
    char_tag: CharTag,
}

impl TryFrom<RawChar> for TameChar {
    type Error = Error;
    fn try_from(r: RawChar) -> Result<Self> {
        TameChar::new(r.field, r.group, r.residue_exp, r.unif_val, r.char_tag)
    }
}

impl fmt::Debug for TameChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({}:{})", self.group, self.residue_exp, self.unif_val)?;
        if let CharTag::Zero { level } = self.char_tag {
            write!(f, "[level {level}]")?;
        }
        Ok(())
    }
}

impl fmt::Display for TameChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.residue_exp, self.unif_val)
    }
}

impl TameChar {
    /// Validating constructor. The exponent is reduced modulo the order of
    /// the residue roots of unity of `group`.
    pub fn new(
        field: FieldParams,
        group: CharGroup,
        residue_exp: u64,
        unif_val: RootOfUnity,
        char_tag: CharTag,
    ) -> Result<Self> {
        if char_tag == CharTag::ModP && !unif_val.is_prime_to(field.p) {
            return precondition(format!(
                "mod {} character with uniformizer value {} of order divisible by p",
                field.p, unif_val
            ));
        }
        let modulus = exp_modulus(field, group);
        Ok(TameChar {
            field,
            group,
            residue_exp: residue_exp % modulus,
            unif_val,
            char_tag,
        })
    }

    /// A mod `p` character; the uniformizer value is projected to its
    /// prime-to-`p` part.
    pub fn modp(field: FieldParams, group: CharGroup, residue_exp: u64, unif_val: RootOfUnity) -> Self {
        let w = unif_val.reduce_mod_p(field.p);
        TameChar::new(field, group, residue_exp, w, CharTag::ModP).expect("reduced value")
    }

    /// A characteristic zero character of the given level.
    pub fn zero(
        field: FieldParams,
        group: CharGroup,
        residue_exp: u64,
        unif_val: RootOfUnity,
        level: u32,
    ) -> Self {
        TameChar::new(field, group, residue_exp, unif_val, CharTag::Zero { level })
            .expect("characteristic zero data are unconstrained")
    }

    /// Parse `exp:a/n`.
    pub fn parse_data(s: &str) -> Result<(u64, RootOfUnity)> {
        let bad = || Error::Parse(format!("expected a character `exp:a/n`, got `{s}`"));
        let (e, w) = s.split_once(':').ok_or_else(bad)?;
        let e: u64 = e.trim().parse().map_err(|_| bad())?;
        let w: RootOfUnity = w.parse()?;
        Ok((e, w))
    }

    pub fn field(&self) -> FieldParams {
        self.field
    }

    pub fn group(&self) -> CharGroup {
        self.group
    }

    pub fn residue_exp(&self) -> u64 {
        self.residue_exp
    }

    pub fn unif_val(&self) -> &RootOfUnity {
        &self.unif_val
    }

    pub fn char_tag(&self) -> CharTag {
        self.char_tag
    }

    pub fn is_modp(&self) -> bool {
        self.char_tag == CharTag::ModP
    }

    pub fn level(&self) -> Option<u32> {
        match self.char_tag {
            CharTag::Zero { level } => Some(level),
            CharTag::ModP => None,
        }
    }

    /// Modulus of the residue exponent.
    pub fn exp_modulus(&self) -> u64 {
        exp_modulus(self.field, self.group)
    }

    /// Value at the generator of the residue roots of unity.
    pub fn value_at_zeta(&self) -> RootOfUnity {
        RootOfUnity::from_exponent(self.residue_exp, self.exp_modulus())
    }

    /// Value at `-1`; the identity when `p = 2`.
    pub fn value_at_minus_one(&self) -> RootOfUnity {
        if !self.field.odd() {
            return RootOfUnity::one();
        }
        // -1 is the element of order two of μ, so its value is ω^{a·ord/2}.
        RootOfUnity::from_ratio(self.residue_exp as i64, 2)
    }

    /// Regularity: `χ ≠ χ^θ` on the extension named by `ext`.
    pub fn is_regular(&self, ext: ExtKind) -> Result<bool> {
        match (ext, self.group) {
            (ExtKind::Unramified, CharGroup::Eunram) => {
                Ok((self.field.f_order() * self.residue_exp) % self.field.e_order() != 0)
            }
            (ExtKind::RamifiedTame, CharGroup::Eram) => Ok(!self.value_at_minus_one().is_identity()),
            _ => Err(Error::GroupMismatch(format!(
                "{:?} character tested for regularity over the {ext} extension",
                self.group
            ))),
        }
    }

    /// The Galois conjugate `χ^θ`.
    pub fn galois_conjugate(&self) -> Result<TameChar> {
        let mut out = self.clone();
        match self.group {
            CharGroup::Eunram => {
                out.residue_exp = (self.residue_exp * self.field.q) % self.field.e_order();
            }
            CharGroup::Eram => {
                out.unif_val = self.unif_val.mul(&self.value_at_minus_one());
            }
            g => {
                return Err(Error::GroupMismatch(format!(
                    "{g:?} carries no nontrivial Galois action"
                )))
            }
        }
        Ok(out)
    }

    /// Restriction to `F^×`.
    pub fn restrict_to_f(&self) -> Result<TameChar> {
        let (exp, w) = match self.group {
            CharGroup::Eunram => (self.residue_exp % self.field.f_order(), self.unif_val.clone()),
            CharGroup::Eram => (self.residue_exp, self.unif_val.pow(2)),
            g => return Err(Error::GroupMismatch(format!("{g:?} is not a quadratic extension"))),
        };
        TameChar::new(self.field, CharGroup::Fmult, exp, w, self.char_tag)
    }

    /// Reduction modulo `p`; the identity on mod `p` characters.
    pub fn reduce_char(&self) -> TameChar {
        TameChar::modp(self.field, self.group, self.residue_exp, self.unif_val.clone())
    }

    /// The product character `χχ'` on a common group. `Dmult` and `Fmult`
    /// data are interchangeable here. The result is mod `p` as soon as one
    /// factor is.
    pub fn tensor(&self, other: &TameChar) -> Result<TameChar> {
        let compatible = self.group == other.group
            || matches!(
                (self.group, other.group),
                (CharGroup::Fmult, CharGroup::Dmult) | (CharGroup::Dmult, CharGroup::Fmult)
            );
        if !compatible || self.field != other.field {
            return Err(Error::GroupMismatch(format!(
                "cannot multiply {:?} by {:?}",
                self.group, other.group
            )));
        }
        let exp = (self.residue_exp + other.residue_exp) % self.exp_modulus();
        let w = self.unif_val.mul(&other.unif_val);
        Ok(match (self.char_tag, other.char_tag) {
            (CharTag::Zero { level: a }, CharTag::Zero { level: b }) => {
                TameChar::zero(self.field, self.group, exp, w, a.max(b))
            }
            _ => TameChar::modp(self.field, self.group, exp, w),
        })
    }

    /// `χ^k`.
    pub fn pow(&self, k: i64) -> TameChar {
        let m = self.exp_modulus() as i64;
        let exp = (self.residue_exp as i64 * k).mod_floor(&m) as u64;
        let mut out = self.clone();
        out.residue_exp = exp;
        out.unif_val = self.unif_val.pow(k);
        out
    }

    /// Same data read on another group with the same exponent modulus.
    pub fn with_group(&self, group: CharGroup) -> Result<TameChar> {
        if exp_modulus(self.field, group) != self.exp_modulus() {
            return Err(Error::GroupMismatch(format!(
                "{:?} data cannot be read on {group:?}",
                self.group
            )));
        }
        let mut out = self.clone();
        out.group = group;
        Ok(out)
    }

    pub fn is_trivial(&self) -> bool {
        self.residue_exp == 0 && self.unif_val.is_identity()
    }
}

fn exp_modulus(field: FieldParams, group: CharGroup) -> u64 {
    match group {
        CharGroup::Eunram => field.e_order(),
        _ => field.f_order(),
    }
}

/// The unramified mod `p` character sending a uniformizer to `-1`.
pub fn delta(field: FieldParams) -> TameChar {
    TameChar::modp(field, CharGroup::Eunram, 0, RootOfUnity::minus_one())
}

/// The quadratic character of `F^×` attached to the extension.
pub fn kappa(ext: ExtKind, field: FieldParams) -> Result<TameChar> {
    match ext {
        ExtKind::Unramified => Ok(TameChar::zero(
            field,
            CharGroup::Fmult,
            0,
            RootOfUnity::minus_one(),
            0,
        )),
        ExtKind::RamifiedTame => {
            if !field.odd() {
                return precondition("no tame ramified quadratic extension when p = 2");
            }
            // Trivial on norms: κ(ζ_F) = -1 and κ(-ϖ_F) = 1, so κ(ϖ_F) = κ(-1).
            let half = (field.q - 1) / 2;
            Ok(TameChar::zero(
                field,
                CharGroup::Fmult,
                half,
                RootOfUnity::from_ratio(half as i64, 2),
                0,
            ))
        }
    }
}

/// The character of `D^×` trivial on units and sending a uniformizer of
/// the ramified subfield to `-1`.
pub fn iota_tilde(field: FieldParams) -> Result<TameChar> {
    if !field.odd() {
        return precondition("the twisting character is defined for odd p only");
    }
    Ok(TameChar::modp(field, CharGroup::Dmult, 0, RootOfUnity::minus_one()))
}

/// Values `d` of the twisting character at `ϖ_E` allowed in the ramified
/// case: `d² = κ(ϖ_F)`.
pub fn admissible_delta_values(field: FieldParams) -> Result<Vec<RootOfUnity>> {
    let k = kappa(ExtKind::RamifiedTame, field)?;
    let mut roots = k.unif_val().square_roots().to_vec();
    roots.sort();
    Ok(roots)
}

/// The tame twisting character realizing the Langlands side, with the
/// caller-supplied value at `ϖ_E` in the ramified case.
pub fn delta_chi(pair: &AdmissiblePair, ram_unif_choice: Option<&RootOfUnity>) -> Result<TameChar> {
    let field = pair.base();
    match pair.ext() {
        ExtKind::Unramified => Ok(TameChar::zero(
            field,
            CharGroup::Eunram,
            0,
            RootOfUnity::minus_one(),
            0,
        )),
        ExtKind::RamifiedTame => {
            let Some(d) = ram_unif_choice else {
                return precondition("the ramified case needs the value at the uniformizer (--delta-ram)");
            };
            let allowed = admissible_delta_values(field)?;
            if !allowed.contains(d) {
                let want = if field.q % 4 == 3 { "order four" } else { "order two" };
                return precondition(format!(
                    "value {d} at the uniformizer is incompatible with the restriction to F^x; \
                     the character must have {want}, allowed values: {}",
                    allowed.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
                ));
            }
            Ok(TameChar::zero(
                field,
                CharGroup::Eram,
                (field.q - 1) / 2,
                d.clone(),
                0,
            ))
        }
    }
}

/// A tame admissible pair at the fidelity of its tame data. The wild part
/// of a positive level character is not stored; minimality is declared.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdmissiblePair {
    ext: ExtKind,
    chi: TameChar,
    minimal: bool,
}

impl AdmissiblePair {
    pub fn new(ext: ExtKind, chi: TameChar, minimal: bool) -> Result<Self> {
        let Some(m) = chi.level() else {
            return precondition("an admissible pair needs a characteristic zero character");
        };
        let expected = match ext {
            ExtKind::Unramified => CharGroup::Eunram,
            ExtKind::RamifiedTame => CharGroup::Eram,
        };
        if chi.group() != expected {
            return Err(Error::GroupMismatch(format!(
                "{ext} pair needs a character of {expected:?}, got {:?}",
                chi.group()
            )));
        }
        if ext == ExtKind::RamifiedTame {
            if !chi.field().odd() {
                return precondition("ramified quadratic extensions are wild when p = 2");
            }
            if m == 0 {
                return precondition("a level zero pair lives on the unramified extension");
            }
            if m % 2 == 0 {
                return precondition(format!(
                    "a minimal character over the ramified extension has odd level, got {m}"
                ));
            }
        }
        if m == 0 && !chi.is_regular(ext)? {
            return precondition(format!(
                "level zero character {chi} factors through the norm (not regular)"
            ));
        }
        Ok(AdmissiblePair { ext, chi, minimal })
    }

    /// Build a pair from the level `n` of the representation of `D^×`.
    pub fn from_level(
        field: FieldParams,
        ext: ExtKind,
        n: u32,
        exp: u64,
        unif: RootOfUnity,
    ) -> Result<Self> {
        let (group, m) = match ext {
            ExtKind::Unramified => {
                if n % 2 != 0 {
                    return precondition(format!(
                        "level {n} is odd, which forces the ramified extension"
                    ));
                }
                (CharGroup::Eunram, n / 2)
            }
            ExtKind::RamifiedTame => {
                if n % 2 == 0 {
                    return precondition(format!(
                        "level {n} is even, which forces the unramified extension"
                    ));
                }
                (CharGroup::Eram, n)
            }
        };
        let chi = TameChar::zero(field, group, exp, unif, m);
        AdmissiblePair::new(ext, chi, true)
    }

    pub fn ext(&self) -> ExtKind {
        self.ext
    }

    pub fn chi(&self) -> &TameChar {
        &self.chi
    }

    pub fn minimal(&self) -> bool {
        self.minimal
    }

    pub fn base(&self) -> FieldParams {
        self.chi.field()
    }

    /// Level `m` of the character.
    pub fn level(&self) -> u32 {
        self.chi.level().expect("pairs carry characteristic zero characters")
    }

    /// Level `n = 2m/e` of the representation of `D^×`.
    pub fn n(&self) -> u32 {
        match self.ext {
            ExtKind::Unramified => 2 * self.level(),
            ExtKind::RamifiedTame => self.level(),
        }
    }

    /// The same pair with the character replaced (tame data only).
    pub(crate) fn with_chi(&self, chi: TameChar) -> AdmissiblePair {
        AdmissiblePair {
            ext: self.ext,
            chi,
            minimal: self.minimal,
        }
    }
}
