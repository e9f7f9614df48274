//! Iwanaga–Gorenstein certification and the Gorenstein homological
//! machinery built on top of a certificate.
//!
//! Every operation past [`certify_ig`] takes a [`GorensteinCertificate`] and
//! refuses to run unless it is certified: the finite vanishing tests used
//! below are only valid when all projectives have finite injective dimension
//! bounded on both sides.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::modcat::{Module, ModuleError};
use crate::resolve::{self, DimValue, ResolveError};

mod approx;
mod complete;
mod duality;

pub use approx::{
    am_sequence_check, ge1_classes, gorenstein_ext, gorenstein_ext_direct, realize_ge1, special_approximation,
    AmReport, GpApproximation, RealizedExtension,
};
pub use complete::{
    complete_resolution, complete_resolution_from, tate_ext, tate_ext_in, CompleteResolution, ProjComplex,
    DEFAULT_WINDOW,
};
pub use duality::{dual_morphism, gp_coresolution, hom_to_regular, nakayama, unit_map, DualModule, GpCoresolution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GorensteinError {
    #[error("unavailable: algebra not certified IG within cap {cap}")]
    NotCertified { cap: usize },
    #[error("certificate belongs to a different algebra")]
    WrongAlgebra,
    #[error("module is not Gorenstein projective")]
    NotGorensteinProjective,
    #[error("cocycle is a coboundary: it factors through G_0")]
    Coboundary,
    #[error("window {window} too small: need at least {needed}")]
    WindowTooSmall { window: usize, needed: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

impl From<Box<ResolveError>> for GorensteinError {
    fn from(e: Box<ResolveError>) -> Self {
        GorensteinError::Resolve(*e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IgStatus {
    Certified(usize),
    /// Never produced: injective dimensions are either exact or unbounded so
    /// far, which cannot refute the property within a cap.
    RefutedWithinCap,
    Unknown,
}

/// Injective dimensions of all indecomposable projectives, on both sides.
#[derive(Clone, Debug)]
pub struct GorensteinCertificate {
    algebra: Arc<Algebra>,
    cap: usize,
    /// `id` of `A·e_v` for each vertex.
    pub left: Vec<DimValue>,
    /// `id` of `e_v·A` (projectives over the opposite algebra).
    pub right: Vec<DimValue>,
    pub status: IgStatus,
}

fn side_max(values: &[DimValue]) -> Option<usize> {
    values.iter().map(DimValue::exact).collect::<Option<Vec<_>>>().map(|v| v.into_iter().max().unwrap_or(0))
}

impl GorensteinCertificate {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }
    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn d_left(&self) -> Option<usize> {
        side_max(&self.left)
    }
    pub fn d_right(&self) -> Option<usize> {
        side_max(&self.right)
    }

    /// True when both sides are exact but disagree.
    pub fn sides_disagree(&self) -> bool {
        matches!((self.d_left(), self.d_right()), (Some(l), Some(r)) if l != r)
    }

    /// `id` of the regular module on the given side as reported under the cap.
    pub fn regular_id(&self, left: bool) -> String {
        let values = if left { &self.left } else { &self.right };
        match side_max(values) {
            Some(d) => d.to_string(),
            None => {
                let bound = values.iter().map(|v| v.capped_bound(self.cap)).max().unwrap_or(0);
                format!(">= {bound}")
            }
        }
    }

    /// The certified bound, or the typed refusal.
    pub fn d(&self) -> Result<usize, GorensteinError> {
        match self.status {
            IgStatus::Certified(d) => Ok(d),
            _ => Err(GorensteinError::NotCertified { cap: self.cap }),
        }
    }

    /// The certified bound for modules over `algebra`.
    pub fn require(&self, algebra: &Algebra) -> Result<usize, GorensteinError> {
        let d = self.d()?;
        if !self.algebra.same_as(algebra) {
            return Err(GorensteinError::WrongAlgebra);
        }
        Ok(d)
    }

    /// The same certificate read over the opposite algebra.
    pub fn opposite(&self) -> GorensteinCertificate {
        GorensteinCertificate {
            algebra: self.algebra.opposite(),
            cap: self.cap,
            left: self.right.clone(),
            right: self.left.clone(),
            status: self.status,
        }
    }
}

impl fmt::Display for GorensteinCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            IgStatus::Certified(d) => write!(f, "certified d={d}"),
            IgStatus::RefutedWithinCap => write!(f, "refuted within cap {}", self.cap),
            IgStatus::Unknown => {
                write!(f, "unknown (cap {}): id(A) {}", self.cap, self.regular_id(true))?;
                write!(f, ", id(A_A) {}", self.regular_id(false))?;
                if self.sides_disagree() {
                    write!(f, ", sides disagree")?;
                }
                Ok(())
            }
        }
    }
}

/// Computes `id` of every indecomposable projective on both sides.
pub fn certify_ig(algebra: &Arc<Algebra>, cap: usize) -> GorensteinCertificate {
    let op = algebra.opposite();
    let n = algebra.vertex_count();
    let jobs: Vec<(bool, usize)> = (0..n).map(|v| (true, v)).chain((0..n).map(|v| (false, v))).collect();
    let values: Vec<DimValue> = jobs
        .par_iter()
        .map(|&(left, v)| {
            let base = if left { algebra } else { &op };
            let p = Module::vertex_projective(base, v).expect("vertex exists");
            resolve::id(&p, cap)
        })
        .collect();
    let (left, right) = values.split_at(n);
    let (left, right) = (left.to_vec(), right.to_vec());
    let status = match (side_max(&left), side_max(&right)) {
        (Some(l), Some(r)) if l == r => IgStatus::Certified(l),
        _ => IgStatus::Unknown,
    };
    GorensteinCertificate { algebra: algebra.clone(), cap, left, right, status }
}

fn ext_against_projectives(m: &Module, j: usize) -> Result<usize, GorensteinError> {
    let alg = m.algebra();
    let mut total = 0;
    for v in 0..alg.vertex_count() {
        let p = Module::vertex_projective(alg, v)?;
        total += resolve::ext_dim(m, &p, j)?;
    }
    Ok(total)
}

/// Whether `Ext^j(M, A) = 0` for `1 ≤ j ≤ d`.
pub fn is_gp(m: &Module, cert: &GorensteinCertificate) -> Result<bool, GorensteinError> {
    let d = cert.require(m.algebra())?;
    for j in 1..=d {
        if ext_against_projectives(m, j)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `pd M` when it is finite. Under a certificate finite projective
/// dimensions are at most `d`, so a resolution of length `d + 1` decides.
pub fn finite_pd(m: &Module, cert: &GorensteinCertificate) -> Result<Option<usize>, GorensteinError> {
    let d = cert.require(m.algebra())?;
    let res = resolve::min_projective_resolution(m, d + 1);
    if !res.truncated() {
        return Ok(Some(res.len().saturating_sub(1)));
    }
    if res.guarded() {
        return Err(ResolveError::Truncated {
            reached: res.len(),
            needed: d + 1,
            size: res.syzygy(res.len()).total_dim(),
        }
        .into());
    }
    Ok(None)
}

/// Gorenstein dimension: the smallest `k` with `Ext^j(M, A) = 0` for
/// `k < j ≤ d`. Checked against `pd M` whenever that is finite.
pub fn gdim(m: &Module, cert: &GorensteinCertificate) -> Result<usize, GorensteinError> {
    let d = cert.require(m.algebra())?;
    let mut g = 0;
    for j in (1..=d).rev() {
        if ext_against_projectives(m, j)? != 0 {
            g = j;
            break;
        }
    }
    if let Some(p) = finite_pd(m, cert)? {
        if p != g {
            return Err(GorensteinError::Inconsistent(format!("Gd = {g} but pd = {p}")));
        }
    }
    Ok(g)
}

/// Outcome of [`findim_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FindimReport {
    pub checked: usize,
    pub finite: usize,
    pub max_finite_pd: usize,
    pub violations: Vec<String>,
}

/// Every corpus module of finite projective dimension has `pd ≤ d`.
pub fn findim_check(
    cert: &GorensteinCertificate,
    modules: &[(String, Module)],
) -> Result<FindimReport, GorensteinError> {
    let d = cert.d()?;
    let mut report = FindimReport::default();
    for (name, m) in modules {
        report.checked += 1;
        // resolve one step further than d so that a violation would show
        let res = resolve::min_projective_resolution(m, d + 2);
        if !res.truncated() {
            let p = res.len().saturating_sub(1);
            report.finite += 1;
            report.max_finite_pd = report.max_finite_pd.max(p);
            if p > d {
                report.violations.push(format!("{name}: pd = {p} > {d}"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
