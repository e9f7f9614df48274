//! Minimal projective resolutions, projective and injective dimensions, Ext.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::linalg::{cohomology_dim, Matrix, Splitting};
use crate::modcat::{Module, ModuleError, ModuleHom, ProjectiveModule, SummandVerdict, DEFAULT_TRIALS};

/// Default resolution depth.
pub const DEFAULT_CAP: usize = 24;

/// Syzygies larger than this (total dimension) are not resolved further.
pub const SIZE_GUARD: usize = 768;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("resolution stopped at depth {reached} (syzygy dimension {size} exceeds the size guard); degree {needed} needs depth {needed}")]
    Truncated { reached: usize, needed: usize, size: usize },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// One step of a minimal resolution: `P_i ↠ Ω^i M ↪ P_{i-1}`.
#[derive(Clone, Debug)]
struct Step {
    term: ProjectiveModule,
    cover: ModuleHom,
    /// `Ω^{i+1} M ↪ P_i`.
    kernel: ModuleHom,
}

#[derive(Debug)]
struct State {
    steps: Vec<Step>,
    /// `Ω^0 = M, Ω^1, …` — always one more than `steps`.
    syzygies: Vec<Module>,
    guarded: bool,
}

impl State {
    fn new(m: &Module) -> Self {
        State { steps: Vec::new(), syzygies: vec![m.clone()], guarded: false }
    }

    fn terminated(&self) -> bool {
        self.syzygies.last().is_some_and(Module::is_zero)
    }

    /// Extends so that `P_0 … P_depth` exist, unless terminated or guarded.
    fn extend_to(&mut self, depth: usize) {
        while self.steps.len() <= depth && !self.terminated() && !self.guarded {
            let omega = self.syzygies.last().unwrap().clone();
            if omega.total_dim() > SIZE_GUARD {
                self.guarded = true;
                break;
            }
            let cover = omega.projective_cover();
            let (k, inc) = cover.epi.kernel();
            self.steps.push(Step { term: cover.projective, cover: cover.epi, kernel: inc });
            self.syzygies.push(k);
        }
    }
}

type Key = (u64, Vec<usize>, Vec<u32>);

fn cache() -> &'static Mutex<HashMap<Key, Arc<Mutex<State>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Mutex<State>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn slot(m: &Module) -> Arc<Mutex<State>> {
    let mut map = cache().lock().unwrap();
    map.entry(m.content_key()).or_insert_with(|| Arc::new(Mutex::new(State::new(m)))).clone()
}

/// Drops every cached resolution.
pub fn clear_cache() {
    cache().lock().unwrap().clear();
}

/// A minimal projective resolution `P_depth → … → P_0 ↠ M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: Module,
    steps: Vec<Step>,
    syzygies: Vec<Module>,
    truncated: bool,
    guarded: bool,
}

impl Resolution {
    pub fn module(&self) -> &Module {
        &self.module
    }
    /// Number of terms `P_0 … P_{len-1}` computed.
    pub fn len(&self) -> usize {
        self.steps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
    pub fn minimal(&self) -> bool {
        true
    }
    /// True when the resolution continues past the computed terms.
    pub fn truncated(&self) -> bool {
        self.truncated
    }
    /// True when the size guard, not the depth cap, stopped the computation.
    pub fn guarded(&self) -> bool {
        self.guarded
    }

    pub fn term(&self, i: usize) -> &ProjectiveModule {
        &self.steps[i].term
    }
    pub fn terms(&self) -> impl Iterator<Item = &ProjectiveModule> {
        self.steps.iter().map(|s| &s.term)
    }
    pub fn augmentation(&self) -> &ModuleHom {
        &self.steps[0].cover
    }
    /// `P_i ↠ Ω^i M`.
    pub fn cover(&self, i: usize) -> &ModuleHom {
        &self.steps[i].cover
    }
    /// `Ω^{i+1} M ↪ P_i`.
    pub fn kernel_inclusion(&self, i: usize) -> &ModuleHom {
        &self.steps[i].kernel
    }
    /// `Ω^i M` for `i ≤ len()`.
    pub fn syzygy(&self, i: usize) -> &Module {
        &self.syzygies[i]
    }

    /// `d_i: P_i → P_{i-1}` for `1 ≤ i < len()`.
    pub fn differential(&self, i: usize) -> ModuleHom {
        assert!(i >= 1);
        self.steps[i - 1].kernel.compose_after(&self.steps[i].cover)
    }

    /// Checks `d∘d = 0`, exactness and minimality.
    pub fn check(&self) -> bool {
        let n = self.len();
        for i in 1..n {
            let d = self.differential(i);
            let rad_spans = radical_splittings(self.term(i - 1).module());
            let minimal = d.blocks().iter().zip(&rad_spans).all(|(b, s)| s.projection.mul(b).is_zero());
            if !minimal {
                return false;
            }
            let prev = if i == 1 { self.augmentation().clone() } else { self.differential(i - 1) };
            if !prev.compose_after(&d).is_zero() {
                return false;
            }
            if d.rank() + prev.rank() != self.term(i - 1).module().total_dim() {
                return false;
            }
        }
        n == 0 || self.augmentation().is_surjective()
    }
}

fn radical_splittings(m: &Module) -> Vec<Splitting> {
    let (_, inc) = m.radical();
    inc.blocks().iter().map(Splitting::new).collect()
}

/// Minimal projective resolution with terms `P_0 … P_depth` (fewer if it
/// terminates). Cached per module content and extended lazily.
pub fn min_projective_resolution(m: &Module, depth: usize) -> Resolution {
    let slot = slot(m);
    let mut st = slot.lock().unwrap();
    st.extend_to(depth);
    let n = st.steps.len().min(depth + 1);
    let steps = st.steps[..n].to_vec();
    let syzygies = st.syzygies[..=n].to_vec();
    let truncated = !syzygies[n].is_zero();
    Resolution { module: m.clone(), steps, syzygies, truncated, guarded: st.guarded && n <= depth }
}

/// Evidence that a resolution never terminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unbounded {
    /// `Ω^j M ≅ Ω^k M ≠ 0`.
    Periodic { j: usize, k: usize },
    /// `Ω^j M ≠ 0` is a proper direct summand of `Ω^k M`, so the syzygies
    /// grow without bound.
    Summand { j: usize, k: usize },
}

/// A projective (or injective) dimension as far as it can be decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimValue {
    Exact(usize),
    /// Resolution still running at this depth (cap or size guard reached).
    AtLeast(usize),
    /// Infinite, with the witnessing pair of syzygies.
    Infinite(Unbounded),
}

impl DimValue {
    pub fn exact(&self) -> Option<usize> {
        match self {
            DimValue::Exact(n) => Some(*n),
            _ => None,
        }
    }
    pub fn is_infinite(&self) -> bool {
        matches!(self, DimValue::Infinite(_))
    }
    /// Lower bound as it is reported under a depth cap: infinite values
    /// report `cap + 1`.
    pub fn capped_bound(&self, cap: usize) -> usize {
        match self {
            DimValue::Exact(n) => *n,
            DimValue::AtLeast(n) => *n,
            DimValue::Infinite(_) => cap + 1,
        }
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Exact(n) => write!(f, "{n}"),
            DimValue::AtLeast(n) => write!(f, ">= {n}"),
            DimValue::Infinite(Unbounded::Periodic { j, k }) => write!(f, "infinity (period {j}->{k})"),
            DimValue::Infinite(Unbounded::Summand { j, k }) => {
                write!(f, "infinity (growth: syzygy {j} is a proper summand of syzygy {k})")
            }
        }
    }
}

fn iso_seed(j: usize, k: usize) -> u64 {
    0x9E37_79B9_7F4A_7C15 ^ ((j as u64) << 32 | k as u64)
}

/// Projective dimension, resolving up to `cap`.
///
/// Reports infinity only with an explicit isomorphism `Ω^j M ≅ Ω^k M`.
/// The zero module is given dimension 0.
pub fn pd(m: &Module, cap: usize) -> DimValue {
    let mut reached = 0;
    for depth in 0..=cap {
        let res = min_projective_resolution(m, depth);
        if !res.truncated() {
            return DimValue::Exact(res.len().saturating_sub(1));
        }
        if res.len() <= depth {
            break; // size guard
        }
        let k = res.len();
        reached = k;
        let zk = res.syzygy(k);
        for j in 0..k {
            let zj = res.syzygy(j);
            if zj.is_zero() || zj.dims().iter().zip(zk.dims()).any(|(a, b)| a > b) {
                continue;
            }
            let seed = iso_seed(j, k);
            if zj.dims() == zk.dims() {
                if zj.is_isomorphic(zk, DEFAULT_TRIALS, seed).is_yes() {
                    return DimValue::Infinite(Unbounded::Periodic { j, k });
                }
            } else if zj.is_summand_of(zk, DEFAULT_TRIALS, seed) == SummandVerdict::Yes {
                // Ω^{j+t(k-j)} contains Ω^j for every t
                return DimValue::Infinite(Unbounded::Summand { j, k });
            }
        }
    }
    DimValue::AtLeast(reached)
}

/// Injective dimension: projective dimension of the dual over the opposite
/// algebra.
pub fn id(m: &Module, cap: usize) -> DimValue {
    pd(&m.dualize(), cap)
}

/// `Ext^i(M, N)` with a basis of representing cocycles `P_i → N`.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub degree: usize,
    pub dimension: usize,
    pub cocycle_basis: Vec<ModuleHom>,
}

/// The cochain complex `Hom(P_•, N)` in generator coordinates.
pub struct HomComplex {
    /// `dims[i] = dim Hom(P_i, N)`.
    pub dims: Vec<usize>,
    /// `coboundary[i]: Hom(P_i, N) → Hom(P_{i+1}, N)`.
    pub coboundary: Vec<Matrix>,
    var_offsets: Vec<Vec<usize>>,
}

fn generator_offsets(p: &ProjectiveModule, n: &Module) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(p.rank());
    let mut acc = 0;
    for &v in p.generators() {
        off.push(acc);
        acc += n.dim_at(v);
    }
    (off, acc)
}

/// Matrix of `f ↦ f∘d` from `Hom(source, N)` to `Hom(next, N)`, in
/// generator-image coordinates, for `d: next → source`.
pub fn pullback_matrix(source: &ProjectiveModule, next: &ProjectiveModule, d: &ModuleHom, n: &Module) -> Matrix {
    let f = n.field();
    let (off, nvars) = generator_offsets(source, n);
    let rows: Vec<Matrix> = (0..next.rank())
        .map(|h| {
            let v = next.generators()[h];
            let x = d.block(v).col(next.generator_coordinate(h));
            source.evaluation_at(v, &x, n, &off, nvars)
        })
        .collect();
    let refs: Vec<&Matrix> = rows.iter().collect();
    Matrix::vstack(&refs, f, nvars)
}

impl HomComplex {
    /// `Hom(P_•, N)` for degrees `0 … top` (needs `P_{top+1}` for the last
    /// coboundary).
    pub fn new(res: &Resolution, n: &Module, top: usize) -> Self {
        let mut dims = Vec::new();
        let mut coboundary = Vec::new();
        let mut var_offsets = Vec::new();
        let f = n.field();
        let dim_of = |i: usize| if i < res.len() { generator_offsets(res.term(i), n).1 } else { 0 };
        for i in 0..=top {
            let nv = dim_of(i);
            dims.push(nv);
            if i >= res.len() {
                var_offsets.push(Vec::new());
                coboundary.push(Matrix::zeros(f, dim_of(i + 1), 0));
                continue;
            }
            let p = res.term(i);
            var_offsets.push(generator_offsets(p, n).0);
            let cob = if i + 1 < res.len() {
                pullback_matrix(p, res.term(i + 1), &res.differential(i + 1), n)
            } else {
                Matrix::zeros(f, 0, nv)
            };
            coboundary.push(cob);
        }
        HomComplex { dims, coboundary, var_offsets }
    }

    pub fn cohomology(&self, i: usize) -> usize {
        let incoming = if i == 0 { None } else { Some(&self.coboundary[i - 1]) };
        cohomology_dim(self.dims[i], incoming, Some(&self.coboundary[i]))
    }
}

fn check_algebras(m: &Module, n: &Module) -> Result<(), ResolveError> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(ResolveError::AlgebraMismatch);
    }
    Ok(())
}

fn resolution_for_degree(m: &Module, i: usize) -> Result<Resolution, ResolveError> {
    let res = min_projective_resolution(m, i + 1);
    if res.guarded() && res.len() < i + 2 {
        return Err(ResolveError::Truncated {
            reached: res.len(),
            needed: i + 1,
            size: res.syzygy(res.len()).total_dim(),
        });
    }
    Ok(res)
}

/// `dim Ext^i(M, N)`.
pub fn ext_dim(m: &Module, n: &Module, i: usize) -> Result<usize, ResolveError> {
    check_algebras(m, n)?;
    let res = resolution_for_degree(m, i)?;
    Ok(HomComplex::new(&res, n, i).cohomology(i))
}

/// `Ext^i(M, N)` with representing cocycles.
pub fn ext(m: &Module, n: &Module, i: usize) -> Result<ExtGroup, ResolveError> {
    check_algebras(m, n)?;
    let res = resolution_for_degree(m, i)?;
    let cx = HomComplex::new(&res, n, i);
    let dimension = cx.cohomology(i);
    let mut cocycle_basis = Vec::new();
    if dimension > 0 {
        let f = n.field();
        let cocycles = cx.coboundary[i].kernel();
        let boundaries = if i == 0 { Matrix::zeros(f, cx.dims[0], 0) } else { cx.coboundary[i - 1].clone() };
        // extend a basis of the boundaries to one of the cocycles
        let mut span = boundaries.column_space();
        let p = res.term(i);
        for c in cocycles.columns() {
            let with = Matrix::hstack(&[&span, &Matrix::column(f, &c)], f, cx.dims[i]);
            if with.rank() > span.cols() {
                span = with;
                let images: Vec<Vec<u32>> = p
                    .generators()
                    .iter()
                    .enumerate()
                    .map(|(g, &v)| c[cx.var_offsets[i][g]..cx.var_offsets[i][g] + n.dim_at(v)].to_vec())
                    .collect();
                cocycle_basis.push(p.hom_from_images(n, &images));
            }
        }
        debug_assert_eq!(cocycle_basis.len(), dimension);
    }
    Ok(ExtGroup { degree: i, dimension, cocycle_basis })
}

/// `dim Ext^i(M, N)` from `Hom(M, I^•)` for an injective coresolution of
/// `N` (the dual of a projective resolution of `DN` over the opposite
/// algebra). Independent of [`ext`].
pub fn ext_via_injectives(m: &Module, n: &Module, i: usize) -> Result<usize, ResolveError> {
    check_algebras(m, n)?;
    let dn = n.dualize();
    let res = resolution_for_degree(&dn, i)?;
    // I^j = D(P'_j); coboundary I^{j} → I^{j+1} is D(d'_{j+1})
    let term = |j: usize| -> Option<Module> { (j < res.len()).then(|| res.term(j).module().dualize()) };
    let hom_space = |j: usize| -> Result<Vec<ModuleHom>, ResolveError> {
        match term(j) {
            Some(ij) => Ok(m.hom_basis_intertwiner(&ij)?),
            None => Ok(Vec::new()),
        }
    };
    let f = n.field();
    let rank_of = |j: usize, basis: &[ModuleHom]| -> usize {
        // rank of Hom(M, I^j) → Hom(M, I^{j+1})
        if basis.is_empty() || j + 1 >= res.len() {
            return 0;
        }
        let cob = res.differential(j + 1).dualize();
        let cols: Vec<Vec<u32>> = basis.iter().map(|h| cob.compose_after(h).flatten()).collect();
        let len = cols[0].len();
        Matrix::from_columns(f, len, &cols).rank()
    };
    let here = hom_space(i)?;
    let out = rank_of(i, &here);
    let inc = if i == 0 { 0 } else { rank_of(i - 1, &hom_space(i - 1)?) };
    Ok(here.len() - out - inc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::linalg::PrimeField;

    fn field() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn projective_has_length_zero_resolution() {
        let a = builtin::e2(field());
        let p = Module::vertex_projective(&a, 0).unwrap();
        let res = min_projective_resolution(&p, 5);
        assert_eq!(res.len(), 1);
        assert!(!res.truncated());
        assert_eq!(pd(&p, 5), DimValue::Exact(0));
        assert_eq!(ext_dim(&p, &Module::simple(&a, 1), 1).unwrap(), 0);
    }

    #[test]
    fn simple_over_dual_numbers_is_periodic() {
        let a = builtin::e1(field());
        let s = Module::simple(&a, 0);
        let res = min_projective_resolution(&s, 5);
        assert_eq!(res.len(), 6);
        assert!(res.truncated());
        assert!(res.check());
        for i in 0..6 {
            assert_eq!(res.term(i).generators(), &[0]);
        }
        let x = a.basis_index("x").unwrap();
        for i in 1..6 {
            let d = res.differential(i);
            assert_eq!(d.block(0), &Module::regular(&a).full_action(x));
        }
        assert_eq!(pd(&s, 5), DimValue::Infinite(Unbounded::Periodic { j: 0, k: 1 }));
        for i in 0..=5 {
            assert_eq!(ext_dim(&s, &s, i).unwrap(), 1, "degree {i}");
        }
        assert_eq!(ext_via_injectives(&s, &s, 3).unwrap(), 1);
    }

    #[test]
    fn a2_simple_resolution() {
        let a = builtin::e2(field());
        let s1 = Module::simple(&a, 0);
        let s2 = Module::simple(&a, 1);
        let res = min_projective_resolution(&s1, 5);
        assert_eq!(res.len(), 2);
        assert!(!res.truncated());
        assert_eq!(res.term(0).generators(), &[0]);
        assert_eq!(res.term(1).generators(), &[1]);
        assert_eq!(pd(&s1, 24), DimValue::Exact(1));
        assert_eq!(ext_dim(&s1, &s2, 1).unwrap(), 1);
        assert_eq!(ext_via_injectives(&s1, &s2, 1).unwrap(), 1);
        let g = ext(&s1, &s2, 1).unwrap();
        assert_eq!(g.cocycle_basis.len(), 1);
    }

    #[test]
    fn injective_dimensions() {
        let a = builtin::e2(field());
        let p2 = Module::vertex_projective(&a, 1).unwrap();
        assert_eq!(id(&p2, 24), DimValue::Exact(1));
        let i1 = Module::vertex_injective(&a, 0).unwrap();
        assert_eq!(id(&i1, 24), DimValue::Exact(0));
    }

    #[test]
    fn radical_square_zero_two_loops_grows() {
        let a = builtin::e3(field());
        let v = id(&Module::regular(&a), 10);
        assert!(v.is_infinite());
        assert_eq!(v.capped_bound(10), 11);
        let s = pd(&Module::simple(&a, 0), 24);
        assert_eq!(s, DimValue::Infinite(Unbounded::Summand { j: 0, k: 1 }));
        assert!(s.to_string().starts_with("infinity (growth"));
    }
}
