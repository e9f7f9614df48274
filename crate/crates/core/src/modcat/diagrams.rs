//! Horseshoe and comparison constructions for short exact sequences whose
//! middle terms are projective.

use super::{combine, solve_in_span, Module, ModuleError, ModuleHom, ShortExactSequence};
use crate::resolve;

/// The 3x3 diagram produced by [`baby_horseshoe`]: rows
/// `X ↪ P ↠ X₁`, `Y ↪ P⊕Q ↠ Y₁`, `Z ↪ Q ↠ Z₁` and columns
/// `X ↪ Y ↠ Z`, `P ↪ P⊕Q ↠ Q`, `X₁ ↪ Y₁ ↠ Z₁`.
#[derive(Clone, Debug)]
pub struct Horseshoe {
    pub top: ShortExactSequence,
    pub middle: ShortExactSequence,
    pub bottom: ShortExactSequence,
    pub left: ShortExactSequence,
    pub center: ShortExactSequence,
    pub right: ShortExactSequence,
}

impl Horseshoe {
    /// Whether all four squares commute.
    pub fn commutes(&self) -> bool {
        let sq1 = self.center.inclusion().compose_after(self.top.inclusion())
            == self.middle.inclusion().compose_after(self.left.inclusion());
        let sq2 = self.center.projection().compose_after(self.middle.inclusion())
            == self.bottom.inclusion().compose_after(self.left.projection());
        let sq3 = self.right.inclusion().compose_after(self.top.projection())
            == self.middle.projection().compose_after(self.center.inclusion());
        let sq4 = self.bottom.projection().compose_after(self.center.projection())
            == self.right.projection().compose_after(self.middle.projection());
        sq1 && sq2 && sq3 && sq4
    }
}

fn ext1_vanishes(m: &Module, n: &Module) -> Result<bool, ModuleError> {
    Ok(resolve::ext_dim(m, n, 1).map_err(Box::new)? == 0)
}

/// Given `X ↪ P ↠ X₁`, `Z ↪ Q ↠ Z₁` and `X ↪ Y ↠ Z` with
/// `Ext¹(Z, P) = 0`, builds the horseshoe with middle row
/// `Y ↪ P⊕Q ↠ Y₁` and an exact right column `X₁ ↪ Y₁ ↠ Z₁`.
pub fn baby_horseshoe(
    x_row: &ShortExactSequence,
    z_row: &ShortExactSequence,
    column: &ShortExactSequence,
) -> Result<Horseshoe, ModuleError> {
    if x_row.left() != column.left() || z_row.left() != column.right() {
        return Err(ModuleError::NotComposable);
    }
    let p = x_row.middle();
    let q = z_row.middle();
    if !ext1_vanishes(column.right(), p)? {
        return Err(ModuleError::ExtObstruction("Z, P".into()));
    }
    // α: Y → P extending X ↪ P along X ↪ Y
    let homs = column.middle().hom_basis(p)?;
    let restricted: Vec<ModuleHom> = homs.iter().map(|h| h.compose_after(column.inclusion())).collect();
    let coeffs =
        solve_in_span(&restricted, x_row.inclusion()).ok_or_else(|| ModuleError::ExtObstruction("Z, P".into()))?;
    let alpha = combine(&homs, &coeffs, column.middle(), p);
    let beta = z_row.inclusion().compose_after(column.projection());

    let ds = Module::direct_sum(&[p, q]);
    let phi = ds.inclusions[0].compose_after(&alpha).add(&ds.inclusions[1].compose_after(&beta));
    let (y1, pi) = phi.cokernel();
    let center = ShortExactSequence::new(ds.inclusions[0].clone(), ds.projections[1].clone())?;
    let middle = ShortExactSequence::new(phi, pi.clone())?;

    let from_p = pi.compose_after(&ds.inclusions[0]);
    let iota = x_row
        .projection()
        .factor_through_epi(&from_p)
        .ok_or_else(|| ModuleError::NotExact("P → Y₁ does not factor through X₁".into()))?;
    let to_z1 = z_row.projection().compose_after(&ds.projections[1]);
    let rho = pi
        .factor_through_epi(&to_z1)
        .ok_or_else(|| ModuleError::NotExact("P⊕Q → Z₁ does not factor through Y₁".into()))?;
    debug_assert_eq!(y1, *rho.source());
    let right = ShortExactSequence::new(iota, rho)?;
    Ok(Horseshoe { top: x_row.clone(), middle, bottom: z_row.clone(), left: column.clone(), center, right })
}

/// `0 → K → P → Q⊕Y₁ → Z₁ → 0`.
#[derive(Clone, Debug)]
pub struct FourTermSequence {
    pub maps: [ModuleHom; 3],
}

impl FourTermSequence {
    pub fn is_exact(&self) -> bool {
        let [a, b, c] = &self.maps;
        a.is_injective()
            && c.is_surjective()
            && b.compose_after(a).is_zero()
            && c.compose_after(b).is_zero()
            && a.rank() + b.rank() == b.source().total_dim()
            && b.rank() + c.rank() == c.source().total_dim()
    }
}

/// Output of [`baby_comparison`].
#[derive(Clone, Debug)]
pub struct Comparison {
    pub alpha: ModuleHom,
    pub beta: ModuleHom,
    pub gamma: ModuleHom,
    /// Present when `α` is surjective.
    pub four_term: Option<FourTermSequence>,
}

/// Given `Y ↪ P ↠ Y₁`, `Z ↪ Q ↠ Z₁` and `α: Y → Z` with `Ext¹(Y₁, Q) = 0`,
/// extends `α` to `β: P → Q` and induces `γ: Y₁ → Z₁`.
pub fn baby_comparison(
    y_row: &ShortExactSequence,
    z_row: &ShortExactSequence,
    alpha: &ModuleHom,
) -> Result<Comparison, ModuleError> {
    if alpha.source() != y_row.left() || alpha.target() != z_row.left() {
        return Err(ModuleError::NotComposable);
    }
    let p = y_row.middle();
    let q = z_row.middle();
    if !ext1_vanishes(y_row.right(), q)? {
        return Err(ModuleError::ExtObstruction("Y₁, Q".into()));
    }
    let homs = p.hom_basis(q)?;
    let restricted: Vec<ModuleHom> = homs.iter().map(|h| h.compose_after(y_row.inclusion())).collect();
    let wanted = z_row.inclusion().compose_after(alpha);
    let coeffs = solve_in_span(&restricted, &wanted).ok_or_else(|| ModuleError::ExtObstruction("Y₁, Q".into()))?;
    let beta = combine(&homs, &coeffs, p, q);
    let gamma = y_row
        .projection()
        .factor_through_epi(&z_row.projection().compose_after(&beta))
        .ok_or_else(|| ModuleError::NotExact("β does not descend to the cokernels".into()))?;

    let four_term = if alpha.is_surjective() {
        let (_, k_inc) = alpha.kernel();
        let first = y_row.inclusion().compose_after(&k_inc);
        let ds = Module::direct_sum(&[q, y_row.right()]);
        let second = ds.inclusions[0].compose_after(&beta).add(&ds.inclusions[1].compose_after(y_row.projection()));
        let third =
            z_row.projection().compose_after(&ds.projections[0]).add(&gamma.neg().compose_after(&ds.projections[1]));
        Some(FourTermSequence { maps: [first, second, third] })
    } else {
        None
    };
    Ok(Comparison { alpha: alpha.clone(), beta, gamma, four_term })
}
