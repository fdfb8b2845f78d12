//! Irreducible mod `p` representations of `D^×` and of the Weil group,
//! semisimplified multisets of them, and the mod `p` correspondence.
//!
//! A two-dimensional label is a regular character `ξ` of the unramified
//! quadratic extension up to Galois conjugacy; the stored exponent is
//! `min(a, qa mod q²-1)`. A one-dimensional label is a character `φ` of
//! `F^×`, read through the reduced norm on the `D` side and through the
//! Artin map on the Weil side.
//!
//! ```
//! use quatmodp::{pi_xi, CharGroup, FieldParams, TameChar};
//!
//! let k = FieldParams::new(3, 1).unwrap();
//! // ξ(ζ) = ω⁴ = -1 is Galois invariant, so π_ξ splits into two characters.
//! let xi = TameChar::modp(k, CharGroup::Eunram, 4, "0/1".parse().unwrap());
//! let ms = pi_xi(&xi).unwrap();
//! assert_eq!(ms.len(), 2);
//! assert!(ms.iter().all(|(label, mult)| label.dim() == 1 && mult == 1));
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::tame_chars::{delta, CharGroup, ExtKind, FieldParams, TameChar};
use crate::value_algebra::RootOfUnity;

/// Which group a mod `p` representation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// The multiplicative group of the quaternion algebra.
    #[serde(rename = "D")]
    D,
    /// The Weil group.
    #[serde(rename = "W")]
    W,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    OneDim { phi: TameChar },
    TwoDim { xi: TameChar },
}

/// An irreducible mod `p` representation in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawIrrep")]
pub struct ModPIrrep {
    side: Side,
    #[serde(flatten)]
    shape: Shape,
}

#[derive(Deserialize)]
struct RawIrrep {
    side: Side,
    #[serde(flatten)]
    shape: Shape,
}

impl TryFrom<RawIrrep> for ModPIrrep {
    type Error = Error;
    fn try_from(r: RawIrrep) -> Result<Self> {
        match r.shape {
            Shape::OneDim { phi } => ModPIrrep::one_dim(r.side, &phi),
            Shape::TwoDim { xi } => ModPIrrep::two_dim(r.side, &xi),
        }
    }
}

impl fmt::Debug for ModPIrrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ModPIrrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.shape, self.side) {
            (Shape::TwoDim { xi }, Side::D) => write!(f, "pi({xi})"),
            (Shape::TwoDim { xi }, Side::W) => write!(f, "rho({xi})"),
            (Shape::OneDim { phi }, Side::D) => write!(f, "({phi})oNrd"),
            (Shape::OneDim { phi }, Side::W) => write!(f, "({phi})oArt"),
        }
    }
}

fn canonical_exp(xi: &TameChar) -> u64 {
    let n = xi.field().e_order();
    let a = xi.residue_exp();
    a.min((a * xi.field().q()) % n)
}

impl ModPIrrep {
    /// The two-dimensional representation attached to a regular mod `p`
    /// character of the unramified extension, in canonical form.
    pub fn two_dim(side: Side, xi: &TameChar) -> Result<Self> {
        if xi.group() != CharGroup::Eunram {
            return Err(Error::GroupMismatch(format!(
                "two-dimensional labels are characters of the unramified extension, got {:?}",
                xi.group()
            )));
        }
        if !xi.is_modp() {
            return precondition("labels are mod p characters");
        }
        if !xi.is_regular(ExtKind::Unramified)? {
            return precondition(format!("{xi} is not regular; its induction is reducible"));
        }
        let canon = TameChar::modp(xi.field(), CharGroup::Eunram, canonical_exp(xi), xi.unif_val().clone());
        Ok(ModPIrrep {
            side,
            shape: Shape::TwoDim { xi: canon },
        })
    }

    /// The character `φ∘Nrd` (side `D`) or `φ∘a_F` (side `W`).
    pub fn one_dim(side: Side, phi: &TameChar) -> Result<Self> {
        let phi = match phi.group() {
            CharGroup::Fmult => phi.clone(),
            CharGroup::Dmult => phi.with_group(CharGroup::Fmult)?,
            g => {
                return Err(Error::GroupMismatch(format!(
                    "one-dimensional labels are characters of F^x, got {g:?}"
                )))
            }
        };
        if !phi.is_modp() {
            return precondition("labels are mod p characters");
        }
        Ok(ModPIrrep {
            side,
            shape: Shape::OneDim { phi },
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> u64 {
        match self.shape {
            Shape::OneDim { .. } => 1,
            Shape::TwoDim { .. } => 2,
        }
    }

    pub fn field(&self) -> FieldParams {
        self.character().field()
    }

    /// The underlying character (`ξ` or `φ`).
    pub fn character(&self) -> &TameChar {
        match &self.shape {
            Shape::OneDim { phi } => phi,
            Shape::TwoDim { xi } => xi,
        }
    }

    pub fn xi(&self) -> Option<&TameChar> {
        match &self.shape {
            Shape::TwoDim { xi } => Some(xi),
            Shape::OneDim { .. } => None,
        }
    }

    pub fn phi(&self) -> Option<&TameChar> {
        match &self.shape {
            Shape::OneDim { phi } => Some(phi),
            Shape::TwoDim { .. } => None,
        }
    }

    /// Central character of a representation of `D^×`: `ξ|_F` for `π_ξ`
    /// and `φ²` for `φ∘Nrd`.
    pub fn central_character(&self) -> TameChar {
        match &self.shape {
            Shape::TwoDim { xi } => xi.restrict_to_f().expect("unramified label"),
            Shape::OneDim { phi } => phi.pow(2),
        }
    }

    /// Twist by `Φ∘Nrd` (side `D`) or `Φ∘a_F` (side `W`) for a mod `p`
    /// character `Φ` of `F^×`.
    pub fn twisted(&self, phi_bar: &TameChar) -> Result<ModPIrrep> {
        let phi_bar = phi_bar.reduce_char();
        match &self.shape {
            Shape::TwoDim { xi } => {
                let k = xi.field();
                let through_norm = TameChar::modp(
                    k,
                    CharGroup::Eunram,
                    (k.q() + 1) * phi_bar.residue_exp(),
                    phi_bar.unif_val().pow(2),
                );
                ModPIrrep::two_dim(self.side, &xi.tensor(&through_norm)?)
            }
            Shape::OneDim { phi } => ModPIrrep::one_dim(self.side, &phi.tensor(&phi_bar)?),
        }
    }

    /// The same label read on the other side.
    pub fn with_side(&self, side: Side) -> ModPIrrep {
        ModPIrrep {
            side,
            shape: self.shape.clone(),
        }
    }
}

/// A semisimple representation as a multiset of irreducible labels.
///
/// The `nonsplit` annotation records labels that come from a non-split
/// self-extension; equality ignores it.
#[derive(Clone, Debug)]
pub struct RepMultiset {
    side: Side,
    entries: BTreeMap<ModPIrrep, u64>,
    nonsplit: BTreeSet<ModPIrrep>,
}

impl PartialEq for RepMultiset {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side && self.entries == other.entries
    }
}

impl Eq for RepMultiset {}

impl RepMultiset {
    pub fn new(side: Side) -> Self {
        RepMultiset {
            side,
            entries: BTreeMap::new(),
            nonsplit: BTreeSet::new(),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Add `mult` copies of `label`. Zero multiplicities are dropped.
    pub fn add(&mut self, label: ModPIrrep, mult: u64) {
        assert_eq!(label.side, self.side, "label side differs from multiset side");
        if mult > 0 {
            *self.entries.entry(label).or_insert(0) += mult;
        }
    }

    /// Add every entry of `other`, scaled by `factor`.
    pub fn add_scaled(&mut self, other: &RepMultiset, factor: u64) {
        for (label, m) in &other.entries {
            self.add(label.clone(), m * factor);
        }
        if factor > 0 {
            self.nonsplit.extend(other.nonsplit.iter().cloned());
        }
    }

    pub fn mark_nonsplit(&mut self, label: &ModPIrrep) {
        self.nonsplit.insert(label.clone());
    }

    pub fn is_nonsplit(&self, label: &ModPIrrep) -> bool {
        self.nonsplit.contains(label)
    }

    pub fn mult(&self, label: &ModPIrrep) -> u64 {
        self.entries.get(label).copied().unwrap_or(0)
    }

    pub fn contains(&self, label: &ModPIrrep) -> bool {
        self.entries.contains_key(label)
    }

    /// Number of distinct labels.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_dimension(&self) -> u64 {
        self.entries.iter().map(|(l, m)| l.dim() * m).sum()
    }

    /// Entries in the stable order: two-dimensional labels first is not
    /// promised; labels are sorted by shape, canonical exponent, then
    /// uniformizer value.
    pub fn iter(&self) -> impl Iterator<Item = (&ModPIrrep, u64)> {
        self.entries.iter().map(|(l, m)| (l, *m))
    }

    pub fn labels(&self) -> impl Iterator<Item = &ModPIrrep> {
        self.entries.keys()
    }

    pub fn two_dim(&self) -> impl Iterator<Item = (&ModPIrrep, u64)> {
        self.iter().filter(|(l, _)| l.dim() == 2)
    }

    pub fn one_dim(&self) -> impl Iterator<Item = (&ModPIrrep, u64)> {
        self.iter().filter(|(l, _)| l.dim() == 1)
    }

    /// The single label when the multiset is one irreducible with
    /// multiplicity one.
    pub fn irreducible(&self) -> Option<&ModPIrrep> {
        match self.entries.iter().next() {
            Some((l, 1)) if self.entries.len() == 1 => Some(l),
            _ => None,
        }
    }

    /// Twist every label by the mod `p` reduction of `phi`.
    pub fn twisted(&self, phi: &TameChar) -> Result<RepMultiset> {
        let mut out = RepMultiset::new(self.side);
        for (l, m) in self.iter() {
            let t = l.twisted(phi)?;
            if self.nonsplit.contains(l) {
                out.nonsplit.insert(t.clone());
            }
            out.add(t, m);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    label: ModPIrrep,
    mult: u64,
    dim: u64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    nonsplit: bool,
}

#[derive(Serialize, Deserialize)]
struct RawMultiset {
    side: Side,
    entries: Vec<RawEntry>,
}

impl Serialize for RepMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawMultiset {
            side: self.side,
            entries: self
                .iter()
                .map(|(l, m)| RawEntry {
                    label: l.clone(),
                    mult: m,
                    dim: l.dim(),
                    nonsplit: self.nonsplit.contains(l),
                })
                .collect(),
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RepMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawMultiset::deserialize(d)?;
        let mut ms = RepMultiset::new(raw.side);
        for e in raw.entries {
            if e.label.side != raw.side {
                return Err(D::Error::custom("label side differs from multiset side"));
            }
            if e.dim != e.label.dim() {
                return Err(D::Error::custom("recorded dimension does not match label"));
            }
            if e.nonsplit {
                ms.mark_nonsplit(&e.label);
            }
            ms.add(e.label, e.mult);
        }
        Ok(ms)
    }
}

impl fmt::Display for RepMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(l, m)| format!("{l}^{m}")).collect();
        write!(f, "{{{}}}", parts.join(" + "))
    }
}

fn require_modp_on(xi: &TameChar, group: CharGroup) -> Result<()> {
    if xi.group() != group {
        return Err(Error::GroupMismatch(format!(
            "expected a character of {group:?}, got {:?}",
            xi.group()
        )));
    }
    if !xi.is_modp() {
        return precondition("expected a mod p character");
    }
    Ok(())
}

/// Extensions `φ` of an irregular character of the unramified extension:
/// `φ(ζ_F) = ξ(ζ_E)` and `φ(ϖ_F)² = ξ(ϖ_F)`.
fn irregular_extensions(xi: &TameChar) -> Vec<TameChar> {
    let k = xi.field();
    let c = xi.residue_exp() / (k.q() + 1);
    if k.odd() {
        xi.unif_val()
            .square_roots()
            .into_iter()
            .map(|s| TameChar::modp(k, CharGroup::Fmult, c, s))
            .collect()
    } else {
        let s = xi.unif_val().odd_square_root().expect("mod 2 values have odd order");
        vec![TameChar::modp(k, CharGroup::Fmult, c, s)]
    }
}

fn induced_from_unramified(side: Side, xi: &TameChar) -> Result<RepMultiset> {
    require_modp_on(xi, CharGroup::Eunram)?;
    let mut ms = RepMultiset::new(side);
    if xi.is_regular(ExtKind::Unramified)? {
        ms.add(ModPIrrep::two_dim(side, xi)?, 1);
        return Ok(ms);
    }
    let phis = irregular_extensions(xi);
    if phis.len() == 1 {
        let l = ModPIrrep::one_dim(side, &phis[0])?;
        ms.mark_nonsplit(&l);
        ms.add(l, 2);
    } else {
        for phi in &phis {
            ms.add(ModPIrrep::one_dim(side, phi)?, 1);
        }
    }
    Ok(ms)
}

/// Semisimplification of `π_ξ`, the induction of `ξ` from `E^×U_D¹`.
pub fn pi_xi(xi: &TameChar) -> Result<RepMultiset> {
    induced_from_unramified(Side::D, xi)
}

/// Semisimplification of `ρ_ξ`, the induction of `ξ∘a_E` to the Weil group.
pub fn rho_xi(xi: &TameChar) -> Result<RepMultiset> {
    induced_from_unramified(Side::W, xi)
}

/// `ρ_ν` for a regular mod `p` character `ν` of the ramified extension,
/// rewritten as `ρ_ξ` with `ξ(ζ_{E₀})² = ν(ζ_F)` and
/// `ξ(ϖ_F) = ν(-1)^{(q+1)/2} ν(ϖ_F)`.
pub fn rho_from_ramified(nu: &TameChar) -> Result<ModPIrrep> {
    require_modp_on(nu, CharGroup::Eram)?;
    let k = nu.field();
    if !k.odd() {
        return precondition("characters of the ramified extension are irregular when p = 2");
    }
    if !nu.is_regular(ExtKind::RamifiedTame)? {
        return precondition(format!("{nu} is irregular"));
    }
    let n = k.e_order();
    let target = ((k.q() + 1) * nu.residue_exp()) % n;
    let a = (0..n)
        .find(|a| (2 * a) % n == target)
        .expect("ν(ζ_F) has a square root in μ_{q²-1}");
    let w = nu
        .value_at_minus_one()
        .pow(((k.q() + 1) / 2) as i64)
        .mul(&nu.unif_val().pow(2));
    let xi = TameChar::modp(k, CharGroup::Eunram, a, w);
    debug_assert!(xi.is_regular(ExtKind::Unramified).unwrap());
    ModPIrrep::two_dim(Side::W, &xi)
}

/// The decomposition of the induction of `ν‡` from `E^×U_D¹` for a
/// character `ν` of the ramified extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedDecomposition {
    /// Two-dimensional factors (regular extensions of `ν|_F` to `E₀^×`).
    pub i1: Vec<ModPIrrep>,
    /// One-dimensional factors (characters of `D^×` extending `ν‡`).
    pub i2: Vec<ModPIrrep>,
    pub multiset: RepMultiset,
}

/// Characters `φ` of `F^×` with `(φ∘Nrd)|_E = ν`.
pub(crate) fn extensions_of_ramified(nu: &TameChar) -> Vec<TameChar> {
    let k = nu.field();
    let m = k.f_order();
    let b = nu.residue_exp();
    let w = nu.unif_val();
    if k.odd() {
        // φ(ζ_F)² = ν(ζ_F) and φ(-1)φ(ϖ_F) = ν(ϖ_E).
        (0..m)
            .filter(|c| (2 * c) % m == b % m)
            .map(|c| {
                let minus_one = RootOfUnity::from_ratio(c as i64, 2);
                TameChar::modp(k, CharGroup::Fmult, c, w.mul(&minus_one.inv()))
            })
            .collect()
    } else {
        // φ² = ν|_F.
        let restricted = nu.restrict_to_f().expect("ramified character");
        let c = (0..m).find(|c| (2 * c) % m == b % m).expect("q - 1 is odd");
        let s = restricted
            .unif_val()
            .odd_square_root()
            .expect("mod 2 values have odd order");
        vec![TameChar::modp(k, CharGroup::Fmult, c, s)]
    }
}

/// Decompose `Ind_{E^×U_D¹}^{D^×} ν‡` for a mod `p` character `ν` of the
/// ramified quadratic extension.
pub fn induced_from_ramified(nu: &TameChar) -> Result<InducedDecomposition> {
    require_modp_on(nu, CharGroup::Eram)?;
    let k = nu.field();
    let n = k.e_order();
    let restricted = nu.restrict_to_f()?;
    let mut i1 = BTreeSet::new();
    for a in 0..n {
        let xi = TameChar::modp(k, CharGroup::Eunram, a, restricted.unif_val().clone());
        if xi.restrict_to_f()? == restricted && xi.is_regular(ExtKind::Unramified)? {
            i1.insert(ModPIrrep::two_dim(Side::D, &xi)?);
        }
    }
    let mut i2 = BTreeSet::new();
    for phi in extensions_of_ramified(nu) {
        i2.insert(ModPIrrep::one_dim(Side::D, &phi)?);
    }
    let mut multiset = RepMultiset::new(Side::D);
    for l in i1.iter().chain(i2.iter()) {
        multiset.add(l.clone(), 1);
    }
    Ok(InducedDecomposition {
        i1: i1.into_iter().collect(),
        i2: i2.into_iter().collect(),
        multiset,
    })
}

/// The expected sizes `(#I₁, #I₂)` for a character `ν` of the ramified
/// extension.
pub fn expected_induced_counts(nu: &TameChar) -> (usize, usize) {
    let q = nu.field().q() as usize;
    if !nu.field().odd() {
        (q / 2, 1)
    } else if !nu.value_at_minus_one().is_identity() {
        ((q + 1) / 2, 0)
    } else {
        ((q - 1) / 2, 2)
    }
}

/// The mod `p` correspondence `ρ_ξ ↦ π_{δ⊗ξ}`.
pub fn modp_correspondence(r: &ModPIrrep) -> Result<ModPIrrep> {
    if r.side() != Side::W {
        return precondition("the correspondence starts from the Weil side");
    }
    match r.shape() {
        Shape::TwoDim { xi } => ModPIrrep::two_dim(Side::D, &xi.tensor(&delta(xi.field()))?),
        Shape::OneDim { .. } => precondition(
            "the correspondence is defined on two-dimensional representations; \
             use correspond_character for characters",
        ),
    }
}

/// Characters correspond through `φ∘a_F ↦ φ∘Nrd`.
pub fn correspond_character(r: &ModPIrrep) -> Result<ModPIrrep> {
    match (r.side(), r.shape()) {
        (Side::W, Shape::OneDim { .. }) => Ok(r.with_side(Side::D)),
        _ => precondition("expected a character of the Weil group"),
    }
}
