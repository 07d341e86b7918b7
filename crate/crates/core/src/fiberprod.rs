//! Genus of the smooth model of the fiber product `X1 ×_{P^1} X2` of two
//! double covers `y1^2 = R1(z)`, `y2^2 = R2(z)`.
//!
//! The function field `Q(z, √R1, √R2)` is a `(Z/2)^2` extension of `Q(z)`
//! whose three quadratic subfields are `√R1`, `√R2` and `√(R1·R2)`; the
//! last one is the double cover `y^2 = R1·R2`, generated by the product
//! `√R1 · √R2`. Two independent genus computations are made:
//!
//! * additivity: `g3 = g1 + g2 + g12`, from the three quotient genera;
//! * Riemann–Hurwitz for the degree-4 cover: every branch point has inertia
//!   of order 2, so `2·g3 - 2 = 4·(-2) + 2·B` with `B` the number of
//!   branch points.
//!
//! Finite branch points are the roots of `R1` and `R2` (distinct because the
//! inputs are coprime). Infinity ramifies in a quadratic quotient exactly
//! when that quotient's polynomial has odd degree:
//!
//! | deg R1 | deg R2 | √R1 | √R2 | √(R1R2) | ∞ branched |
//! |--------|--------|-----|-----|---------|------------|
//! | even   | even   | no  | no  | no      | no         |
//! | odd    | even   | yes | no  | yes     | yes        |
//! | even   | odd    | no  | yes | yes     | yes        |
//! | odd    | odd    | yes | yes | no      | yes        |

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{resultant, split_rational, Poly};

/// `⌊(deg R - 1)/2⌋` for squarefree `R` of degree at least one.
pub fn genus_of_even_model(r: &Poly) -> Result<u32> {
    let d = match r.degree() {
        None | Some(0) => return Err(Error::DegreeTooLow),
        Some(d) => d,
    };
    if !r.is_squarefree() {
        return Err(Error::RepeatedRoots);
    }
    Ok(((d - 1) / 2) as u32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPoints {
    pub finite_rational: usize,
    /// Counted through the degree of the part without rational roots.
    pub finite_nonrational: usize,
    pub infinity_in_r1: bool,
    pub infinity_in_r2: bool,
    pub infinity_in_product: bool,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberGenusReport {
    pub g1: u32,
    pub g2: u32,
    pub g12: u32,
    /// From the Riemann–Hurwitz branch count.
    pub g3: u32,
    /// From `g1 + g2 + g12`.
    pub g3_additive: u32,
    pub branch_points: BranchPoints,
    /// `Σ (e - 1)` over all points of the fiber product, i.e. `2·B`.
    pub ramification_total: usize,
    /// `R1·R2`: the quotient `y^2 = R1·R2` through `y = √R1·√R2`.
    pub quotient_model: Poly,
}

impl FiberGenusReport {
    pub fn routes_agree(&self) -> bool {
        self.g3 == self.g3_additive
    }
}

fn count_finite(r: &Poly) -> Result<(usize, usize)> {
    let split = split_rational(r)?;
    Ok((split.roots.len(), split.cofactor.deg()))
}

pub fn fiber_genus(r1: &Poly, r2: &Poly) -> Result<FiberGenusReport> {
    let g1 = genus_of_even_model(r1)?;
    let g2 = genus_of_even_model(r2)?;
    if resultant(r1, r2)?.is_zero() {
        return Err(Error::NotCoprime);
    }
    let product = r1 * r2;
    let g12 = genus_of_even_model(&product)?;

    let (rat1, non1) = count_finite(r1)?;
    let (rat2, non2) = count_finite(r2)?;
    let d1_odd = r1.deg() % 2 == 1;
    let d2_odd = r2.deg() % 2 == 1;
    let infinity_in_product = d1_odd != d2_odd;
    let infinity = d1_odd || d2_odd || infinity_in_product;
    let total = rat1 + rat2 + non1 + non2 + usize::from(infinity);

    // 2·g3 - 2 = -8 + 2·B
    let g3 = (total - 3) as u32;

    Ok(FiberGenusReport {
        g1,
        g2,
        g12,
        g3,
        g3_additive: g1 + g2 + g12,
        branch_points: BranchPoints {
            finite_rational: rat1 + rat2,
            finite_nonrational: non1 + non2,
            infinity_in_r1: d1_odd,
            infinity_in_r2: d2_odd,
            infinity_in_product,
            total,
        },
        ramification_total: 2 * total,
        quotient_model: product,
    })
}
