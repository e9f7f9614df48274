//! Complete resolutions and Tate cohomology.

use super::{gdim, gp_coresolution, GorensteinCertificate, GorensteinError};
use crate::linalg::{cohomology_dim, Matrix};
use crate::modcat::{Module, ModuleHom, ProjectiveModule};
use crate::resolve::{self, pullback_matrix};

/// Default half-width of the index window.
pub const DEFAULT_WINDOW: usize = 16;

/// A bounded piece `T_hi → … → T_lo` of a complex of projectives.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    lo: isize,
    terms: Vec<ProjectiveModule>,
    /// `diffs[k] = d_{lo+k+1}: T_{lo+k+1} → T_{lo+k}`.
    diffs: Vec<ModuleHom>,
}

impl ProjComplex {
    pub fn new(lo: isize, terms: Vec<ProjectiveModule>, diffs: Vec<ModuleHom>) -> Self {
        assert_eq!(diffs.len() + 1, terms.len().max(1));
        ProjComplex { lo, terms, diffs }
    }

    pub fn empty() -> Self {
        ProjComplex { lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn lo(&self) -> isize {
        self.lo
    }
    pub fn hi(&self) -> isize {
        self.lo + self.terms.len() as isize - 1
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn term(&self, i: isize) -> &ProjectiveModule {
        &self.terms[(i - self.lo) as usize]
    }
    /// `d_i: T_i → T_{i-1}` for `lo < i ≤ hi`.
    pub fn differential(&self, i: isize) -> &ModuleHom {
        &self.diffs[(i - self.lo - 1) as usize]
    }

    /// Exactness of `T_{i+1} → T_i → T_{i-1}`, for `lo < i < hi`.
    pub fn is_exact_at(&self, i: isize) -> bool {
        let (din, dout) = (self.differential(i + 1), self.differential(i));
        dout.compose_after(din).is_zero() && din.rank() + dout.rank() == self.term(i).module().total_dim()
    }

    /// `dim H^i(Hom(T_•, N))` for `lo < i < hi`.
    pub fn hom_cohomology(&self, n: &Module, i: isize) -> usize {
        assert!(self.lo < i && i < self.hi(), "index {i} outside the open window");
        let out: Matrix = pullback_matrix(self.term(i), self.term(i + 1), self.differential(i + 1), n);
        let inc: Matrix = pullback_matrix(self.term(i - 1), self.term(i), self.differential(i), n);
        cohomology_dim(out.cols(), Some(&inc), Some(&out))
    }
}

/// A window `[−window, window]` of a complete resolution of `M`, spliced
/// from the minimal resolution of `Ω^base M` and a coresolution of it.
#[derive(Clone, Debug)]
pub struct CompleteResolution {
    /// `Ω^base` of the complex is `Ω^base M`.
    pub base: usize,
    pub window: usize,
    pub complex: ProjComplex,
    /// The module `Ω^base M` at which the two halves are spliced.
    pub splice: Module,
}

impl CompleteResolution {
    /// True for modules of finite projective dimension.
    pub fn is_zero(&self) -> bool {
        self.complex.is_empty()
    }

    /// Exactness and `Hom(−, A·e_v)`-exactness at every interior index.
    pub fn check_window(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let c = &self.complex;
        let alg = c.term(c.lo()).algebra().clone();
        let projectives: Vec<Module> =
            (0..alg.vertex_count()).map(|v| Module::vertex_projective(&alg, v).expect("vertex")).collect();
        ((c.lo() + 1)..c.hi()).all(|i| c.is_exact_at(i) && projectives.iter().all(|p| c.hom_cohomology(p, i) == 0))
    }
}

/// Complete resolution spliced at `Ω^{gdim M}`.
pub fn complete_resolution(
    m: &Module,
    cert: &GorensteinCertificate,
    window: usize,
) -> Result<CompleteResolution, GorensteinError> {
    let g = gdim(m, cert)?;
    complete_resolution_from(m, cert, window, g)
}

/// Complete resolution spliced at `Ω^base M`, for any `base ≥ gdim M`.
pub fn complete_resolution_from(
    m: &Module,
    cert: &GorensteinCertificate,
    window: usize,
    base: usize,
) -> Result<CompleteResolution, GorensteinError> {
    let d = cert.require(m.algebra())?;
    if window < d.max(2) || window < base {
        return Err(GorensteinError::WindowTooSmall { window, needed: d.max(2).max(base) });
    }
    let res = resolve::min_projective_resolution(m, window + 1);
    if !res.truncated() {
        return Ok(CompleteResolution {
            base,
            window,
            complex: ProjComplex::empty(),
            splice: Module::zero(m.algebra()),
        });
    }
    if res.len() < window + 1 {
        return Err(resolve::ResolveError::Truncated {
            reached: res.len(),
            needed: window + 1,
            size: res.syzygy(res.len()).total_dim(),
        }
        .into());
    }
    let g_mod = res.syzygy(base).clone();
    let lo = -(window as isize);
    let co = gp_coresolution(&g_mod, base + window, cert)?;
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for i in lo..=(window as isize) {
        let term = if i >= base as isize {
            res.term(i as usize).clone()
        } else {
            co.terms[(base as isize - 1 - i) as usize].clone()
        };
        if i > lo {
            let d = if i > base as isize {
                res.differential(i as usize)
            } else if i == base as isize {
                co.coaugmentation.compose_after(res.cover(base))
            } else {
                co.differentials[(base as isize - 1 - i) as usize].clone()
            };
            diffs.push(d);
        }
        terms.push(term);
    }
    let cr = CompleteResolution { base, window, complex: ProjComplex::new(lo, terms, diffs), splice: g_mod };
    if !cr.check_window() {
        return Err(GorensteinError::Inconsistent("complete resolution fails the window check".into()));
    }
    Ok(cr)
}

/// `dim Êxt^i(M, N)` for `|i| ≤ window − 2`.
pub fn tate_ext(
    m: &Module,
    n: &Module,
    i: isize,
    cert: &GorensteinCertificate,
    window: usize,
) -> Result<usize, GorensteinError> {
    let cr = complete_resolution(m, cert, window)?;
    tate_ext_in(&cr, m, n, i)
}

/// Tate cohomology read off an already built complete resolution.
pub fn tate_ext_in(cr: &CompleteResolution, m: &Module, n: &Module, i: isize) -> Result<usize, GorensteinError> {
    let needed = i.unsigned_abs() + 2;
    if needed > cr.window {
        return Err(GorensteinError::WindowTooSmall { window: cr.window, needed });
    }
    if cr.is_zero() {
        return Ok(0);
    }
    let dim = cr.complex.hom_cohomology(n, i);
    if i > cr.base as isize {
        let e = resolve::ext_dim(m, n, i as usize)?;
        if e != dim {
            return Err(GorensteinError::Inconsistent(format!("Tate Ext^{i} = {dim} but Ext^{i} = {e}")));
        }
    }
    Ok(dim)
}
