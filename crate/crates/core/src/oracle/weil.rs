//! Brauer characters of `Ind_{W_E}^{W_F} ξ` mod `p`, computed in the finite
//! quotient `G = μ_E ⋊ Frob^ℤ / Frob^{2s}`, with `s` the order of `ξ(ϖ_F)`.
//!
//! Elements are pairs `(j, v)` standing for `ζ_E^j Frob^v`, multiplied by
//! `(j, v)(j', v') = (j + q^v j', v + v')`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use super::brauer::{ClassDiff, ClassFunction};
use super::cyclo::{Cyclo, CycloElem};
use crate::error::{precondition, Result};
use crate::modp_reps::{rho_xi, RepMultiset, Shape, Side};
use crate::tame_chars::{CharGroup, TameChar};
use crate::value_algebra::RootOfUnity;

#[derive(Clone, Debug, Serialize)]
pub struct WeilReport {
    pub xi: TameChar,
    pub group_order: u64,
    pub p_regular_checked: usize,
    pub passed: bool,
    /// `⟨Ind, Ind⟩ = Σ mult²`, checked when `p ∤ |G|`.
    pub norm_check: Option<bool>,
    pub diffs: Vec<ClassDiff>,
}

struct WeilGroup {
    q: u64,
    units: u64,
    s: u32,
}

impl WeilGroup {
    fn mul(&self, a: (u64, u32), b: (u64, u32)) -> (u64, u32) {
        let qv = if a.1 % 2 == 0 { 1 } else { self.q };
        ((a.0 + qv * b.0) % self.units, (a.1 + b.1) % (2 * self.s))
    }

    fn inv(&self, a: (u64, u32)) -> (u64, u32) {
        let qv = if a.1 % 2 == 0 { 1 } else { self.q };
        let j = (self.units - qv * a.0 % self.units) % self.units;
        (j, (2 * self.s - a.1) % (2 * self.s))
    }

    fn order_of(&self, g: (u64, u32)) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != (0, 0) {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    fn elements(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        (0..self.units).flat_map(move |j| (0..2 * self.s).map(move |v| (j, v)))
    }
}

fn root_of_xi(xi: &TameChar, units: u64, j: u64, half_v: u32) -> RootOfUnity {
    RootOfUnity::from_exponent(xi.residue_exp() * j % units, units).mul(&xi.unif_val().pow(half_v as i64))
}

fn predicted(cy: &Cyclo, g: &WeilGroup, ms: &RepMultiset, j: u64, v: u32) -> Result<CycloElem> {
    let mut acc = cy.zero_sum();
    let fq = g.q - 1;
    for (label, mult) in ms.iter() {
        let r = match label.shape() {
            Shape::TwoDim { xi } => {
                if v % 2 == 1 {
                    continue;
                }
                for jj in [j, j * g.q % g.units] {
                    let r = root_of_xi(xi, g.units, jj, v / 2);
                    if r.to_exponent(cy.order()).is_none() {
                        return precondition(format!("value {r} outside the model"));
                    }
                    cy.add_root(&mut acc, mult as i64, &r);
                }
                continue;
            }
            // The norm of ζ_E^j is ζ_F^j; Frob maps to a uniformizer.
            Shape::OneDim { phi } => RootOfUnity::from_exponent(phi.residue_exp() * (j % fq) % fq, fq)
                .mul(&phi.unif_val().pow(v as i64)),
        };
        if r.to_exponent(cy.order()).is_none() {
            return precondition(format!("value {r} outside the model"));
        }
        cy.add_root(&mut acc, mult as i64, &r);
    }
    Ok(cy.reduce(&acc))
}

/// Compare `rho_xi(ξ)` with the brute force induced character on
/// `p`-regular elements.
pub fn weil_oracle_verify(xi: &TameChar) -> Result<WeilReport> {
    weil_oracle_check(xi, &rho_xi(xi)?)
}

/// Compare an arbitrary `W`-side multiset with the induced character of `ξ`.
pub fn weil_oracle_check(xi: &TameChar, ms: &RepMultiset) -> Result<WeilReport> {
    if xi.group() != CharGroup::Eunram || !xi.is_modp() {
        return precondition("the Weil oracle takes a mod p character of the unramified E^x");
    }
    if ms.side() != Side::W {
        return precondition("the Weil oracle compares representations of W_F");
    }
    let field = xi.field();
    let q = field.q();
    let units = q * q - 1;
    let s = num_traits::ToPrimitive::to_u32(&xi.unif_val().order())
        .filter(|&s| s <= 1024)
        .ok_or_else(|| crate::error::Error::Precondition("ξ(ϖ_F) has too large an order".into()))?;
    let g = WeilGroup { q, units, s };
    let order = units * 2 * s as u64;
    let l = units.lcm(&(4 * s as u64));
    let cy = Cyclo::new(l);
    let mut induced = BTreeMap::new();
    let mut expected = BTreeMap::new();
    let mut checked = 0;
    let h_order = (units * s as u64) as i64;
    let elements: Vec<(u64, u32)> = g.elements().collect();
    let mut full_induced = Vec::with_capacity(elements.len());
    for &el in &elements {
        let mut acc = cy.zero_sum();
        for &x in &elements {
            let c = g.mul(g.inv(x), g.mul(el, x));
            if c.1 % 2 == 0 {
                cy.add_root(&mut acc, 1, &root_of_xi(xi, units, c.0, c.1 / 2));
            }
        }
        let value = cy
            .divide(&cy.reduce(&acc), h_order)
            .ok_or_else(|| crate::error::Error::Precondition("induced value not integral".into()))?;
        full_induced.push(value.clone());
        if g.order_of(el) % field.p() != 0 {
            checked += 1;
            induced.insert(el, value);
            expected.insert(el, predicted(&cy, &g, ms, el.0, el.1)?);
        }
    }
    let induced = ClassFunction { values: induced };
    let expected = ClassFunction { values: expected };
    let diffs = induced.diff(&expected);
    let norm_check = (order % field.p() != 0).then(|| {
        let mut total = cy.reduce(&cy.zero_sum());
        for v in &full_induced {
            let n = cy.mul_conj(v, v);
            total = CycloElem(total.0.iter().zip(&n.0).map(|(a, b)| a + b).collect());
        }
        let want: u64 = ms.iter().map(|(_, m)| m * m).sum();
        cy.as_integer(&total) == Some(want as i64 * order as i64)
    });
    Ok(WeilReport {
        xi: xi.clone(),
        group_order: order,
        p_regular_checked: checked,
        passed: diffs.is_empty() && norm_check != Some(false),
        norm_check,
        diffs,
    })
}
