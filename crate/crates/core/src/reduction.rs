//! Semisimplified reductions modulo `p` of the tame representations
//! `Π_χ` of `D^×` and `R_χ` of the Weil group, together with the wild
//! inputs available when `p = 2`.
//!
//! ```
//! use quatmodp::{dim_pi, reduce_pi, AdmissiblePair, ExtKind, FieldParams};
//!
//! let k = FieldParams::new(3, 1).unwrap();
//! let pair = AdmissiblePair::from_level(k, ExtKind::Unramified, 4, 1, "0/1".parse().unwrap()).unwrap();
//! let ms = reduce_pi(&pair, None).unwrap();
//! assert_eq!(ms.total_dimension(), dim_pi(&pair));
//! assert_eq!(dim_pi(&pair), 18);
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::modp_reps::{
    extensions_of_ramified, induced_from_ramified, pi_xi, rho_from_ramified, rho_xi, ModPIrrep,
    RepMultiset, Side,
};
use crate::tame_chars::{iota_tilde, AdmissiblePair, CharGroup, ExtKind, FieldParams, TameChar};

/// Dimension of `Π_χ`.
pub fn dim_pi(pair: &AdmissiblePair) -> u64 {
    let q = pair.base().q();
    let n = pair.n();
    match (pair.ext(), n) {
        (_, 0) => 2,
        (ExtKind::Unramified, n) => 2 * q.pow(n / 2),
        (ExtKind::RamifiedTame, n) => (q + 1) * q.pow((n - 1) / 2),
    }
}

/// Multiplicities `(c₀, c₁)` of `π_χ̄` and of each `π_{χ̄⊗τ}` at even level.
pub(crate) fn even_level_coefficients(q: u64, n: u32) -> (u64, u64) {
    if n == 0 {
        return (1, 0);
    }
    let h = q.pow(n / 2);
    if n % 4 == 0 {
        ((h + q) / (q + 1), (h - 1) / (q + 1))
    } else {
        ((h - q) / (q + 1), (h + 1) / (q + 1))
    }
}

/// The `q` nontrivial mod `p` characters of `E^×` trivial on `F^×U_E¹`.
pub(crate) fn tau_set(k: FieldParams) -> Vec<TameChar> {
    let q = k.q();
    let x: Vec<TameChar> = (1..=q)
        .map(|j| TameChar::modp(k, CharGroup::Eunram, j * (q - 1), crate::RootOfUnity::one()))
        .collect();
    debug_assert!(x.iter().all(|t| (t.residue_exp() * (q + 1)) % k.e_order() == 0));
    x
}

fn require_minimal(pair: &AdmissiblePair) -> Result<()> {
    if !pair.minimal() {
        return precondition(
            "the pair is not minimal; pass the minimal pair and the twisting character separately",
        );
    }
    Ok(())
}

fn check_twist(twist: Option<&TameChar>, k: FieldParams) -> Result<()> {
    if let Some(t) = twist {
        if t.group() != CharGroup::Fmult || t.field() != k {
            return Err(Error::GroupMismatch(format!(
                "the twist must be a character of F^x over the same field, got {:?}",
                t.group()
            )));
        }
    }
    Ok(())
}

fn apply_twist(ms: RepMultiset, twist: Option<&TameChar>) -> Result<RepMultiset> {
    match twist {
        Some(t) => ms.twisted(t),
        None => Ok(ms),
    }
}

/// `Π̄_χ^ss`, optionally twisted by `Φ̄∘Nrd`.
pub fn reduce_pi(pair: &AdmissiblePair, twist: Option<&TameChar>) -> Result<RepMultiset> {
    require_minimal(pair)?;
    let k = pair.base();
    check_twist(twist, k)?;
    let chi_bar = pair.chi().reduce_char();
    let n = pair.n();
    let mut ms = RepMultiset::new(Side::D);
    match pair.ext() {
        ExtKind::Unramified => {
            let (c0, c1) = even_level_coefficients(k.q(), n);
            ms.add_scaled(&pi_xi(&chi_bar)?, c0);
            if c1 > 0 {
                let x = tau_set(k);
                if x.len() as u64 != k.q() {
                    return Err(Error::Precondition(format!(
                        "expected {} twisting characters, found {}",
                        k.q(),
                        x.len()
                    )));
                }
                for tau in &x {
                    ms.add_scaled(&pi_xi(&chi_bar.tensor(tau)?)?, c1);
                }
            }
        }
        ExtKind::RamifiedTame => {
            let h = k.q().pow((n - 1) / 2);
            let d = induced_from_ramified(&chi_bar)?;
            let iota = iota_tilde(k)?;
            for l in &d.i1 {
                ms.add(l.clone(), h);
            }
            for l in &d.i2 {
                ms.add(l.clone(), (h + 1) / 2);
                ms.add(l.twisted(&iota)?, (h - 1) / 2);
            }
        }
    }
    apply_twist(ms, twist)
}

/// `R̄_χ^ss`, optionally twisted by `Φ̄∘a_F`.
pub fn reduce_r(pair: &AdmissiblePair, twist: Option<&TameChar>) -> Result<RepMultiset> {
    let k = pair.base();
    check_twist(twist, k)?;
    let chi_bar = pair.chi().reduce_char();
    let ms = match pair.ext() {
        ExtKind::Unramified => rho_xi(&chi_bar)?,
        ExtKind::RamifiedTame => {
            let mut ms = RepMultiset::new(Side::W);
            if chi_bar.is_regular(ExtKind::RamifiedTame)? {
                ms.add(rho_from_ramified(&chi_bar)?, 1);
            } else {
                for phi in extensions_of_ramified(&chi_bar) {
                    ms.add(ModPIrrep::one_dim(Side::W, &phi)?, 1);
                }
            }
            ms
        }
    };
    apply_twist(ms, twist)
}

/// Data of a wild positive level representation of `D^×` when `p = 2`:
/// the level `n` (odd) and the central character. The tame part of the
/// character of the ramified extension may be given for a consistency
/// check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WildQuaternionInput {
    pub base: FieldParams,
    pub n: u32,
    pub central: TameChar,
    #[serde(default)]
    pub chi_tame: Option<TameChar>,
}

fn require_even_char(k: FieldParams) -> Result<()> {
    if k.odd() {
        return precondition(format!("wild inputs need p = 2, got p = {}", k.p()));
    }
    Ok(())
}

/// The unique solution `c` of `2c ≡ b (mod m)` for odd `m`.
fn halve_mod_odd(b: u64, m: u64) -> u64 {
    (0..m).find(|c| (2 * c) % m == b % m).unwrap_or(0)
}

/// `Π̄^ss` for a wild representation: `q^{(n-1)/2}` copies of the
/// induction of `χ̄‡`, which only depends on the central character.
pub fn reduce_pi_wild(input: &WildQuaternionInput) -> Result<RepMultiset> {
    let k = input.base;
    require_even_char(k)?;
    if input.n % 2 == 0 {
        return precondition(format!("wild levels are odd, got {}", input.n));
    }
    if input.central.group() != CharGroup::Fmult || input.central.field() != k {
        return Err(Error::GroupMismatch("the central character lives on F^x".into()));
    }
    let central = input.central.reduce_char();
    if let Some(chi) = &input.chi_tame {
        if chi.restrict_to_f()?.reduce_char() != central {
            return precondition(format!(
                "{chi} restricts to {} on F^x, not to the central character {central}",
                chi.restrict_to_f()?.reduce_char()
            ));
        }
    }
    let w = central.unif_val().odd_square_root().expect("mod 2 values have odd order");
    let nu = TameChar::modp(k, CharGroup::Eram, central.residue_exp(), w);
    let d = induced_from_ramified(&nu)?;
    let mut ms = RepMultiset::new(Side::D);
    ms.add_scaled(&d.multiset, k.q().pow((input.n - 1) / 2));
    Ok(ms)
}

/// The projective image type of a two-dimensional Galois representation
/// with wild ramification when `p = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WildKind {
    Imprimitive,
    /// `eta` is an order three character of `F^×` (the cubic character of
    /// the relevant Galois group, pulled back).
    Tetrahedral { eta: TameChar },
    /// `eta_choice` in `{1, 2}` picks the exponent of the cubic character
    /// of the unramified quadratic extension.
    Octahedral { eta_choice: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WildGaloisInput {
    pub base: FieldParams,
    pub kind: WildKind,
    /// `Φ` with `det R = Φ∘a_F`.
    pub det_char: TameChar,
}

/// The odd order square root `φ` of `Φ̄`.
pub(crate) fn odd_root_char(phi_big: &TameChar) -> TameChar {
    let k = phi_big.field();
    let bar = phi_big.reduce_char();
    let c = halve_mod_odd(bar.residue_exp(), k.f_order());
    let s = bar.unif_val().odd_square_root().expect("mod 2 values have odd order");
    TameChar::modp(k, CharGroup::Fmult, c, s)
}

/// `R̄^ss` for a wild Galois representation when `p = 2`.
pub fn reduce_r_wild(input: &WildGaloisInput) -> Result<RepMultiset> {
    let k = input.base;
    require_even_char(k)?;
    if input.det_char.group() != CharGroup::Fmult || input.det_char.field() != k {
        return Err(Error::GroupMismatch("the determinant character lives on F^x".into()));
    }
    let phi = odd_root_char(&input.det_char);
    let mut ms = RepMultiset::new(Side::W);
    match &input.kind {
        WildKind::Imprimitive => ms.add(ModPIrrep::one_dim(Side::W, &phi)?, 2),
        WildKind::Tetrahedral { eta } => {
            let eta = eta.reduce_char();
            if eta.group() != CharGroup::Fmult || eta.is_trivial() || !eta.pow(3).is_trivial() {
                return precondition(format!("{eta} is not a character of F^x of order three"));
            }
            ms.add(ModPIrrep::one_dim(Side::W, &phi.tensor(&eta)?)?, 1);
            ms.add(ModPIrrep::one_dim(Side::W, &phi.tensor(&eta.pow(2))?)?, 1);
        }
        WildKind::Octahedral { eta_choice } => {
            let q = k.q();
            if q % 3 != 2 {
                return precondition(format!("octahedral image forces q = -1 mod 3, got q = {q}"));
            }
            if !matches!(eta_choice, 1 | 2) {
                return precondition("eta_choice is 1 or 2");
            }
            let n = k.e_order();
            let bar = input.det_char.reduce_char();
            // (ξ')² = Φ̄∘N: ξ'(ζ)² = Φ̄(ζ^{q+1}), ξ'(ϖ_F)² = Φ̄(ϖ_F)².
            let a_prime = halve_mod_odd(((q + 1) * bar.residue_exp()) % n, n);
            let xi_prime = TameChar::modp(k, CharGroup::Eunram, a_prime, bar.unif_val().clone());
            let eta = TameChar::modp(
                k,
                CharGroup::Eunram,
                n / 3 * u64::from(*eta_choice),
                crate::RootOfUnity::one(),
            );
            let xi = xi_prime.tensor(&eta)?;
            if !xi.is_regular(ExtKind::Unramified)? {
                return precondition(format!("{xi} is not regular"));
            }
            ms.add(ModPIrrep::two_dim(Side::W, &xi)?, 1);
        }
    }
    Ok(ms)
}
