//! Mod `p` representations of the multiplicative group of a quaternion
//! division algebra over a local field and of the Weil group, reductions
//! modulo `p` of the tame characteristic zero representations, the mod `p`
//! correspondence, and a brute force finite group oracle that checks the
//! reduction formulas independently.
//!
//! ```
//! use quatmodp::{FieldParams, TameChar, CharGroup, pi_xi};
//!
//! let k = FieldParams::new(3, 1).unwrap();
//! let xi = TameChar::modp(k, CharGroup::Eunram, 1, "0/1".parse().unwrap());
//! let ms = pi_xi(&xi).unwrap();
//! assert_eq!(ms.total_dimension(), 2);
//! assert_eq!(ms.len(), 1);
//! ```

pub mod cli;
pub mod compare;
pub mod error;
pub mod modp_reps;
pub mod oracle;
pub mod reduction;
pub mod tame_chars;
pub mod value_algebra;

pub use compare::{
    check_level_zero, compare_higher, jl_image, selector, BatteryCheck, CaseTag,
    ComparisonReport, SelectorMode,
};
pub use error::{Error, Result};
pub use modp_reps::{
    induced_from_ramified, modp_correspondence, pi_xi, rho_from_ramified, rho_xi,
    InducedDecomposition, ModPIrrep, RepMultiset, Shape, Side,
};
pub use reduction::{
    dim_pi, reduce_pi, reduce_pi_wild, reduce_r, reduce_r_wild, WildGaloisInput, WildKind,
    WildQuaternionInput,
};
pub use tame_chars::{
    delta, delta_chi, iota_tilde, kappa, AdmissiblePair, CharGroup, CharTag, ExtKind,
    FieldParams, TameChar,
};
pub use value_algebra::RootOfUnity;
