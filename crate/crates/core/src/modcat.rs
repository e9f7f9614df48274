//! The abelian category of finite-dimensional left modules over an [`Algebra`].
//!
//! A module is a quiver representation: one vector space per vertex and one
//! matrix per arrow, `dims[target] x dims[source]`. Morphisms are families of
//! per-vertex matrices satisfying the intertwiner equations.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::linalg::{Coordinates, Matrix, PrimeField, Splitting};

mod diagrams;
mod projective;

pub use diagrams::{baby_comparison, baby_horseshoe, Comparison, FourTermSequence, Horseshoe};
pub use projective::{ProjectiveCover, ProjectiveModule};

/// Default number of random samples for probabilistic tests.
pub const DEFAULT_TRIALS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("expected {expected} vertex dimensions, got {got}")]
    DimensionCount { expected: usize, got: usize },
    #[error("arrow `{arrow}`: expected a {rows}x{cols} matrix")]
    ArrowShape { arrow: String, rows: usize, cols: usize },
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("action does not factor through the algebra: arrow `{arrow}` after basis path `{path}` (paths of length >= N must act as zero)")]
    NotAModule { arrow: String, path: String },
    #[error("vertex {vertex}: block has shape {got:?}, expected {expected:?}")]
    BlockShape { vertex: usize, expected: (usize, usize), got: (usize, usize) },
    #[error("intertwiner equation fails on arrow `{0}`")]
    NotAHomomorphism(String),
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("morphisms do not share a source")]
    SourceMismatch,
    #[error("sequence is not short exact: {0}")]
    NotExact(String),
    #[error("Ext^1({0}) does not vanish; the construction needs it to")]
    ExtObstruction(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("full action does not decompose along the vertex idempotents")]
    BadAction,
    #[error(transparent)]
    Resolve(#[from] Box<crate::resolve::ResolveError>),
}

struct ModuleData {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    action: Vec<Matrix>,
    path_actions: OnceLock<Vec<Matrix>>,
    presentation: OnceLock<Arc<Presentation>>,
}

/// A finite-dimensional representation. Cloning is cheap.
#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.0.dims)?;
        if f.alternate() {
            for (a, m) in self.0.action.iter().enumerate() {
                write!(f, "\n  {}: {:?}", self.0.algebra.quiver().arrows()[a].name, m)?;
            }
        }
        Ok(())
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.algebra.same_as(&other.0.algebra)
                && self.0.dims == other.0.dims
                && self.0.action == other.0.action)
    }
}
impl Eq for Module {}

/// Generators and relations: the minimal cover `P_0 ↠ M` and a spanning set
/// of its kernel, vertex by vertex.
struct Presentation {
    cover: ProjectiveCover,
    relations: Vec<Matrix>,
    sections: Vec<Matrix>,
}

impl Module {
    /// Validating constructor.
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self, ModuleError> {
        let m = Module::raw(algebra, dims, action);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn raw(algebra: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Self {
        Module(Arc::new(ModuleData {
            algebra,
            dims,
            action,
            path_actions: OnceLock::new(),
            presentation: OnceLock::new(),
        }))
    }

    /// Internal constructor for modules produced by trusted constructions;
    /// validity is still asserted in debug builds.
    pub(crate) fn built(algebra: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Self {
        let m = Module::raw(algebra, dims, action);
        debug_assert!(m.validate().is_ok(), "internal construction produced an invalid module");
        m
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        Module::with_zero_action(algebra, vec![0; algebra.vertex_count()])
    }

    /// The simple module at vertex `v`.
    pub fn simple(algebra: &Arc<Algebra>, v: usize) -> Self {
        let mut dims = vec![0; algebra.vertex_count()];
        dims[v] = 1;
        Module::with_zero_action(algebra, dims)
    }

    /// Semisimple module with the given dimension vector.
    pub fn with_zero_action(algebra: &Arc<Algebra>, dims: Vec<usize>) -> Self {
        let f = algebra.field();
        let action =
            algebra.quiver().arrows().iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
        Module::raw(algebra.clone(), dims, action)
    }

    /// The indecomposable projective `A·e_v`.
    pub fn vertex_projective(algebra: &Arc<Algebra>, v: usize) -> Result<Self, ModuleError> {
        if v >= algebra.vertex_count() {
            return Err(ModuleError::UnknownVertex(v));
        }
        Ok(ProjectiveModule::new(algebra, vec![v]).module().clone())
    }

    /// The indecomposable injective `D(e_v·A)`.
    pub fn vertex_injective(algebra: &Arc<Algebra>, v: usize) -> Result<Self, ModuleError> {
        let op = algebra.opposite();
        Ok(Module::vertex_projective(&op, v)?.dualize())
    }

    /// The regular module `A` as a left module over itself.
    pub fn regular(algebra: &Arc<Algebra>) -> Self {
        ProjectiveModule::new(algebra, (0..algebra.vertex_count()).collect()).module().clone()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }
    pub fn field(&self) -> PrimeField {
        self.0.algebra.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }
    pub fn dim_at(&self, v: usize) -> usize {
        self.0.dims[v]
    }
    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.0.action[arrow]
    }
    pub fn actions(&self) -> &[Matrix] {
        &self.0.action
    }

    /// Offset of each vertex block inside the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.0.dims.len());
        let mut acc = 0;
        for &d in &self.0.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    fn same_algebra(&self, other: &Module) -> bool {
        self.0.algebra.same_as(&other.0.algebra)
    }

    /// Action of a basis path: `dims[target] x dims[source]`.
    pub fn path_action(&self, b: usize) -> &Matrix {
        &self.path_actions()[b]
    }

    fn path_actions(&self) -> &Vec<Matrix> {
        self.0.path_actions.get_or_init(|| {
            let alg = &self.0.algebra;
            let f = alg.field();
            alg.basis()
                .iter()
                .map(|p| {
                    let mut m = Matrix::identity(f, self.0.dims[p.source]);
                    for &a in &p.arrows {
                        m = self.0.action[a].mul(&m);
                    }
                    m
                })
                .collect()
        })
    }

    /// Action of a basis element on the total space.
    pub fn full_action(&self, b: usize) -> Matrix {
        let n = self.total_dim();
        let off = self.offsets();
        let p = &self.0.algebra.basis()[b];
        let mut m = Matrix::zeros(self.field(), n, n);
        m.set_block(off[p.target], off[p.source], self.path_action(b));
        m
    }

    /// Action of an arbitrary algebra element on the total space.
    pub fn element_action(&self, x: &[u32]) -> Matrix {
        let n = self.total_dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for (b, &c) in x.iter().enumerate() {
            if c != 0 {
                m.add_scaled(&self.full_action(b), c);
            }
        }
        m
    }

    /// Checks shapes, relations (named on failure) and that the action
    /// factors through the compiled algebra.
    pub fn validate(&self) -> Result<(), ModuleError> {
        let alg = &self.0.algebra;
        let q = alg.quiver();
        if self.0.dims.len() != alg.vertex_count() {
            return Err(ModuleError::DimensionCount { expected: alg.vertex_count(), got: self.0.dims.len() });
        }
        if self.0.action.len() != q.arrows().len() {
            return Err(ModuleError::DimensionCount { expected: q.arrows().len(), got: self.0.action.len() });
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            let m = &self.0.action[a];
            let (r, c) = (self.0.dims[arrow.target], self.0.dims[arrow.source]);
            if (m.rows(), m.cols()) != (r, c) && !(r * c == 0 && m.data().is_empty()) {
                return Err(ModuleError::ArrowShape { arrow: arrow.name.clone(), rows: r, cols: c });
            }
        }
        let f = alg.field();
        for rel in alg.relations() {
            let (s, t) = (rel.terms[0].1.source, rel.terms[0].1.target);
            let mut acc = Matrix::zeros(f, self.0.dims[t], self.0.dims[s]);
            for (c, p) in &rel.terms {
                let mut m = Matrix::identity(f, self.0.dims[s]);
                for &a in &p.arrows {
                    m = self.arrow_matrix(a).mul(&m);
                }
                acc.add_scaled(&m, *c);
            }
            if !acc.is_zero() {
                return Err(ModuleError::RelationViolated(rel.label(q, f)));
            }
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            for (b, p) in alg.basis().iter().enumerate() {
                if p.target != arrow.source {
                    continue;
                }
                let lhs = self.arrow_matrix(a).mul(self.path_action(b));
                let prod = alg.multiply(alg.arrow_element(a), &alg.unit_vector(b));
                let mut rhs = Matrix::zeros(f, self.0.dims[arrow.target], self.0.dims[p.source]);
                for (k, &c) in prod.iter().enumerate() {
                    if c != 0 {
                        rhs.add_scaled(self.path_action(k), c);
                    }
                }
                if lhs != rhs {
                    return Err(ModuleError::NotAModule { arrow: arrow.name.clone(), path: alg.basis_label(b) });
                }
            }
        }
        Ok(())
    }

    /// Arrow matrix with the declared shape even when a dimension is zero.
    fn arrow_matrix(&self, a: usize) -> Matrix {
        let arrow = &self.0.algebra.quiver().arrows()[a];
        let m = &self.0.action[a];
        let (r, c) = (self.0.dims[arrow.target], self.0.dims[arrow.source]);
        if (m.rows(), m.cols()) == (r, c) {
            m.clone()
        } else {
            Matrix::zeros(self.field(), r, c)
        }
    }

    /// Builds a module from the action of every basis element on a vector
    /// space of dimension `n`. Returns the module and the change of basis
    /// sending a vector of `F^n` to module coordinates.
    pub fn from_full_action(algebra: &Arc<Algebra>, n: usize, ops: &[Matrix]) -> Result<(Module, Matrix), ModuleError> {
        let f = algebra.field();
        let vcount = algebra.vertex_count();
        let mut blocks = Vec::with_capacity(vcount);
        for v in 0..vcount {
            blocks.push(ops[algebra.idempotent(v)].column_space());
        }
        let dims: Vec<usize> = blocks.iter().map(Matrix::cols).collect();
        if dims.iter().sum::<usize>() != n {
            return Err(ModuleError::BadAction);
        }
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let basis = Matrix::hstack(&refs, f, n);
        let change = basis.inverse().ok_or(ModuleError::BadAction)?;
        let mut off = vec![0; vcount];
        for v in 1..vcount {
            off[v] = off[v - 1] + dims[v - 1];
        }
        let mut action = Vec::new();
        for (a, arrow) in algebra.quiver().arrows().iter().enumerate() {
            let mut t = Matrix::zeros(f, n, n);
            for (b, &c) in algebra.arrow_element(a).iter().enumerate() {
                if c != 0 {
                    t.add_scaled(&ops[b], c);
                }
            }
            let conj = change.mul(&t).mul(&basis);
            action.push(conj.block(off[arrow.target], off[arrow.source], dims[arrow.target], dims[arrow.source]));
        }
        let m = Module::raw(algebra.clone(), dims, action);
        m.validate()?;
        Ok((m, change))
    }

    /// k-linear dual, a module over the opposite algebra.
    pub fn dualize(&self) -> Module {
        let op = self.0.algebra.opposite();
        let action = self.0.action.iter().map(Matrix::transpose).collect();
        Module::raw(op, self.0.dims.clone(), action)
    }

    /// Direct sum with the canonical inclusions and projections.
    pub fn direct_sum(parts: &[&Module]) -> DirectSum {
        assert!(!parts.is_empty());
        let alg = parts[0].algebra().clone();
        let f = alg.field();
        let vcount = alg.vertex_count();
        let dims: Vec<usize> = (0..vcount).map(|v| parts.iter().map(|m| m.dim_at(v)).sum()).collect();
        let action = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, _)| {
                let mats: Vec<Matrix> = parts.iter().map(|m| m.arrow_matrix(a)).collect();
                let refs: Vec<&Matrix> = mats.iter().collect();
                Matrix::block_diag(&refs, f)
            })
            .collect();
        let sum = Module::raw(alg.clone(), dims.clone(), action);
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        let mut off = vec![0usize; vcount];
        for m in parts {
            let mut inc = Vec::new();
            let mut proj = Vec::new();
            for v in 0..vcount {
                let mut i = Matrix::zeros(f, dims[v], m.dim_at(v));
                let mut p = Matrix::zeros(f, m.dim_at(v), dims[v]);
                for k in 0..m.dim_at(v) {
                    i.set(off[v] + k, k, 1);
                    p.set(k, off[v] + k, 1);
                }
                inc.push(i);
                proj.push(p);
                off[v] += m.dim_at(v);
            }
            inclusions.push(ModuleHom::built((*m).clone(), sum.clone(), inc));
            projections.push(ModuleHom::built(sum.clone(), (*m).clone(), proj));
        }
        DirectSum { sum, inclusions, projections }
    }

    /// Submodule spanned vertexwise by the columns of `spans` (which must be
    /// invariant under the action).
    pub fn submodule(&self, spans: &[Matrix]) -> (Module, ModuleHom) {
        let f = self.field();
        let bases: Vec<Matrix> = spans.iter().map(Matrix::column_space).collect();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let coords: Vec<Coordinates> = bases.iter().map(Coordinates::new).collect();
        let action = self
            .0
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let img = self.arrow_matrix(a).mul(&bases[arrow.source]);
                let cols: Vec<Vec<u32>> = img
                    .columns()
                    .iter()
                    .map(|c| coords[arrow.target].coords(c).expect("subspace is not invariant"))
                    .collect();
                Matrix::from_columns(f, dims[arrow.target], &cols)
            })
            .collect();
        let sub = Module::built(self.0.algebra.clone(), dims, action);
        let inc = ModuleHom::built(sub.clone(), self.clone(), bases);
        (sub, inc)
    }

    /// Quotient by the invariant subspaces spanned by `spans`.
    pub fn quotient(&self, spans: &[Matrix]) -> (Module, ModuleHom) {
        let splits: Vec<Splitting> = spans.iter().map(Splitting::new).collect();
        self.quotient_by(&splits)
    }

    fn quotient_by(&self, splits: &[Splitting]) -> (Module, ModuleHom) {
        let dims: Vec<usize> = splits.iter().map(Splitting::quotient_dim).collect();
        let action = self
            .0
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                splits[arrow.target].projection.mul(&self.arrow_matrix(a)).mul(&splits[arrow.source].section())
            })
            .collect();
        let q = Module::built(self.0.algebra.clone(), dims, action);
        let proj = ModuleHom::built(self.clone(), q.clone(), splits.iter().map(|s| s.projection.clone()).collect());
        (q, proj)
    }

    /// Radical `J·M` as a submodule.
    pub fn radical(&self) -> (Module, ModuleHom) {
        let spans = self.radical_spans();
        self.submodule(&spans)
    }

    fn radical_spans(&self) -> Vec<Matrix> {
        let f = self.field();
        let q = self.0.algebra.quiver();
        (0..self.0.dims.len())
            .map(|v| {
                let imgs: Vec<Matrix> = q
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.target == v)
                    .map(|(ai, _)| self.arrow_matrix(ai))
                    .collect();
                let refs: Vec<&Matrix> = imgs.iter().collect();
                Matrix::hstack(&refs, f, self.0.dims[v])
            })
            .collect()
    }

    /// Top `M / J·M` with the quotient map.
    pub fn top(&self) -> (Module, ModuleHom) {
        let splits: Vec<Splitting> = self.radical_spans().iter().map(Splitting::new).collect();
        self.quotient_by(&splits)
    }

    /// Socle: vectors killed by every arrow.
    pub fn socle(&self) -> (Module, ModuleHom) {
        let f = self.field();
        let q = self.0.algebra.quiver();
        let spans: Vec<Matrix> = (0..self.0.dims.len())
            .map(|v| {
                let outs: Vec<Matrix> = q
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.source == v)
                    .map(|(ai, _)| self.arrow_matrix(ai))
                    .collect();
                if outs.is_empty() {
                    return Matrix::identity(f, self.0.dims[v]);
                }
                let refs: Vec<&Matrix> = outs.iter().collect();
                Matrix::vstack(&refs, f, self.0.dims[v]).kernel()
            })
            .collect();
        self.submodule(&spans)
    }

    /// Dimension vector of the top: multiplicities of the projective cover.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_spans().iter().zip(&self.0.dims).map(|(s, &d)| d - s.rank()).collect()
    }

    /// Minimal projective cover; generators are chosen by pivoting in the
    /// fixed basis order.
    pub fn projective_cover(&self) -> ProjectiveCover {
        self.presentation().cover.clone()
    }

    fn presentation(&self) -> &Arc<Presentation> {
        self.0.presentation.get_or_init(|| {
            let cover = projective::minimal_cover(self);
            let relations: Vec<Matrix> = cover.epi.blocks().iter().map(Matrix::kernel).collect();
            let sections = cover.epi.blocks().iter().map(|b| b.right_inverse().expect("cover is surjective")).collect();
            Arc::new(Presentation { cover, relations, sections })
        })
    }

    /// Kernel of the minimal projective cover.
    pub fn syzygy(&self) -> Module {
        self.syzygy_with_inclusion().0
    }

    pub fn syzygy_with_inclusion(&self) -> (Module, ModuleHom) {
        let cover = self.projective_cover();
        cover.epi.kernel()
    }

    pub fn is_projective(&self) -> bool {
        let cover = self.projective_cover();
        cover.projective.module().total_dim() == self.total_dim()
    }

    pub fn is_injective(&self) -> bool {
        self.dualize().is_projective()
    }

    /// Injective envelope via the dual of a projective cover over the
    /// opposite algebra.
    pub fn injective_envelope(&self) -> (Module, ModuleHom) {
        let dual = self.dualize();
        let cover = dual.projective_cover();
        let envelope = cover.projective.module().dualize();
        let blocks = cover.epi.blocks().iter().map(Matrix::transpose).collect();
        let mono = ModuleHom::built(self.clone(), envelope.clone(), blocks);
        (envelope, mono)
    }

    /// Basis of `Hom(self, other)`, computed from a presentation of `self`.
    pub fn hom_basis(&self, other: &Module) -> Result<Vec<ModuleHom>, ModuleError> {
        if !self.same_algebra(other) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let pres = self.presentation();
        let p0 = &pres.cover.projective;
        let f = self.field();
        // unknowns: images of generators
        let gens = p0.generators();
        let mut var_off = Vec::with_capacity(gens.len());
        let mut nvars = 0;
        for &v in gens {
            var_off.push(nvars);
            nvars += other.dim_at(v);
        }
        let mut eqs: Vec<Matrix> = Vec::new();
        for (w, rel) in pres.relations.iter().enumerate() {
            if other.dim_at(w) == 0 {
                continue;
            }
            for k in 0..rel.cols() {
                eqs.push(p0.evaluation_at(w, &rel.col(k), other, &var_off, nvars));
            }
        }
        let refs: Vec<&Matrix> = eqs.iter().collect();
        let sys = Matrix::vstack(&refs, f, nvars);
        let sols = sys.kernel();
        let mut out = Vec::with_capacity(sols.cols());
        for k in 0..sols.cols() {
            let y = sols.col(k);
            let images: Vec<Vec<u32>> =
                gens.iter().enumerate().map(|(g, &v)| y[var_off[g]..var_off[g] + other.dim_at(v)].to_vec()).collect();
            let h = p0.hom_from_images(other, &images);
            let blocks = h.blocks().iter().zip(&pres.sections).map(|(hb, s)| hb.mul(s)).collect();
            out.push(ModuleHom::built(self.clone(), other.clone(), blocks));
        }
        Ok(out)
    }

    /// Basis of `Hom(self, other)` by solving the intertwiner equations
    /// directly in all block entries.
    pub fn hom_basis_intertwiner(&self, other: &Module) -> Result<Vec<ModuleHom>, ModuleError> {
        if !self.same_algebra(other) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let f = self.field();
        let vc = self.0.dims.len();
        let mut off = vec![0; vc + 1];
        for v in 0..vc {
            off[v + 1] = off[v] + other.dim_at(v) * self.dim_at(v);
        }
        let nvars = off[vc];
        let mut eqs: Vec<Vec<u32>> = Vec::new();
        for (a, arrow) in self.0.algebra.quiver().arrows().iter().enumerate() {
            let (s, t) = (arrow.source, arrow.target);
            let ma = self.arrow_matrix(a);
            let na = other.arrow_matrix(a);
            // f_t * M(a) - N(a) * f_s = 0, entry (i, j)
            for i in 0..other.dim_at(t) {
                for j in 0..self.dim_at(s) {
                    let mut row = vec![0u32; nvars];
                    for k in 0..self.dim_at(t) {
                        let c = ma.get(k, j);
                        if c != 0 {
                            let idx = off[t] + i * self.dim_at(t) + k;
                            row[idx] = f.add(row[idx], c);
                        }
                    }
                    for k in 0..other.dim_at(s) {
                        let c = na.get(i, k);
                        if c != 0 {
                            let idx = off[s] + k * self.dim_at(s) + j;
                            row[idx] = f.sub(row[idx], c);
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        eqs.push(row);
                    }
                }
            }
        }
        let mut sys = Matrix::zeros(f, eqs.len(), nvars);
        for (r, row) in eqs.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                sys.set(r, c, x);
            }
        }
        let sols = sys.kernel();
        Ok((0..sols.cols()).map(|k| ModuleHom::from_flat(self.clone(), other.clone(), &sols.col(k))).collect())
    }

    pub fn hom_dim(&self, other: &Module) -> Result<usize, ModuleError> {
        Ok(self.hom_basis(other)?.len())
    }

    /// Three-valued isomorphism test.
    pub fn is_isomorphic(&self, other: &Module, trials: usize, seed: u64) -> IsoVerdict {
        if self.is_zero() && other.is_zero() {
            return IsoVerdict::Yes(ModuleHom::zero(self.clone(), other.clone()));
        }
        if !self.same_algebra(other) || self.dims() != other.dims() {
            return IsoVerdict::No;
        }
        if self.top_dims() != other.top_dims() || self.socle().0.dims() != other.socle().0.dims() {
            return IsoVerdict::No;
        }
        let (Ok(fwd), Ok(back)) = (self.hom_basis(other), other.hom_basis(self)) else {
            return IsoVerdict::No;
        };
        let end_self = self.hom_basis(self).map(|b| b.len()).unwrap_or(0);
        let end_other = other.hom_basis(other).map(|b| b.len()).unwrap_or(0);
        if fwd.len() != back.len() || fwd.len() != end_self || end_self != end_other {
            return IsoVerdict::No;
        }
        if fwd.is_empty() {
            return IsoVerdict::No;
        }
        if let Some(h) = fwd.iter().find(|h| h.is_isomorphism()) {
            return IsoVerdict::Yes(h.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let h = random_combination(&fwd, &mut rng);
            if h.is_isomorphism() {
                return IsoVerdict::Yes(h);
            }
        }
        IsoVerdict::Unknown
    }

    /// Three-valued test for `self` being a direct summand of `other`:
    /// success exhibits `f: self → other`, `g: other → self` with `g∘f`
    /// invertible.
    pub fn is_summand_of(&self, other: &Module, trials: usize, seed: u64) -> SummandVerdict {
        if self.is_zero() {
            return SummandVerdict::Yes;
        }
        if !self.same_algebra(other) || self.dims().iter().zip(other.dims()).any(|(a, b)| a > b) {
            return SummandVerdict::No;
        }
        let (Ok(fwd), Ok(back)) = (self.hom_basis(other), other.hom_basis(self)) else {
            return SummandVerdict::No;
        };
        if fwd.is_empty() || back.is_empty() {
            return SummandVerdict::No;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials.max(1) {
            let f = random_combination(&fwd, &mut rng);
            let g = random_combination(&back, &mut rng);
            if g.compose_after(&f).is_isomorphism() {
                return SummandVerdict::Yes;
            }
        }
        SummandVerdict::Unknown
    }

    /// Flattened content used as a cache key.
    pub(crate) fn content_key(&self) -> (u64, Vec<usize>, Vec<u32>) {
        let mut data = Vec::new();
        for m in &self.0.action {
            data.push(m.rows() as u32);
            data.push(m.cols() as u32);
            data.extend_from_slice(m.data());
        }
        (self.0.algebra.fingerprint(), self.0.dims.clone(), data)
    }
}

fn random_combination<R: Rng>(basis: &[ModuleHom], rng: &mut R) -> ModuleHom {
    let f = basis[0].source().field();
    let mut acc = ModuleHom::zero(basis[0].source().clone(), basis[0].target().clone());
    for h in basis {
        let c = rng.gen_range(0..f.p());
        acc = acc.add(&h.scale(c));
    }
    acc
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Module,
    pub inclusions: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Yes(ModuleHom),
    No,
    Unknown,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }
    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::No)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SummandVerdict {
    Yes,
    No,
    Unknown,
}

/// A module homomorphism, one block per vertex.
#[derive(Clone)]
pub struct ModuleHom {
    source: Module,
    target: Module,
    blocks: Vec<Matrix>,
}

impl fmt::Debug for ModuleHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleHom {:?} -> {:?} {:?}", self.source.dims(), self.target.dims(), self.blocks)
    }
}

impl PartialEq for ModuleHom {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.blocks_equal(other)
    }
}

impl ModuleHom {
    /// Validating constructor.
    pub fn new(source: Module, target: Module, blocks: Vec<Matrix>) -> Result<Self, ModuleError> {
        if !source.same_algebra(&target) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let f = source.field();
        let blocks: Vec<Matrix> = blocks
            .into_iter()
            .enumerate()
            .map(|(v, b)| {
                let want = (target.dim_at(v), source.dim_at(v));
                if (b.rows(), b.cols()) == want {
                    Ok(b)
                } else if want.0 * want.1 == 0 && b.data().is_empty() {
                    Ok(Matrix::zeros(f, want.0, want.1))
                } else {
                    Err(ModuleError::BlockShape { vertex: v, expected: want, got: (b.rows(), b.cols()) })
                }
            })
            .collect::<Result<_, _>>()?;
        if blocks.len() != source.dims().len() {
            return Err(ModuleError::DimensionCount { expected: source.dims().len(), got: blocks.len() });
        }
        let h = ModuleHom { source, target, blocks };
        h.check_intertwiner()?;
        Ok(h)
    }

    /// Constructor for internal results; the intertwiner equations are
    /// always asserted.
    pub(crate) fn built(source: Module, target: Module, blocks: Vec<Matrix>) -> Self {
        let h = ModuleHom { source, target, blocks };
        if let Err(e) = h.check_intertwiner() {
            panic!("internal construction produced an invalid morphism: {e}");
        }
        h
    }

    fn check_intertwiner(&self) -> Result<(), ModuleError> {
        for (a, arrow) in self.source.algebra().quiver().arrows().iter().enumerate() {
            let lhs = self.blocks[arrow.target].mul(&self.source.arrow_matrix(a));
            let rhs = self.target.arrow_matrix(a).mul(&self.blocks[arrow.source]);
            if lhs != rhs {
                return Err(ModuleError::NotAHomomorphism(arrow.name.clone()));
            }
        }
        Ok(())
    }

    pub fn zero(source: Module, target: Module) -> Self {
        let f = source.field();
        let blocks = (0..source.dims().len()).map(|v| Matrix::zeros(f, target.dim_at(v), source.dim_at(v))).collect();
        ModuleHom { source, target, blocks }
    }

    pub fn identity(m: &Module) -> Self {
        let f = m.field();
        let blocks = m.dims().iter().map(|&d| Matrix::identity(f, d)).collect();
        ModuleHom { source: m.clone(), target: m.clone(), blocks }
    }

    /// From the concatenation of row-major blocks.
    pub fn from_flat(source: Module, target: Module, flat: &[u32]) -> Self {
        let f = source.field();
        let mut pos = 0;
        let blocks = (0..source.dims().len())
            .map(|v| {
                let (r, c) = (target.dim_at(v), source.dim_at(v));
                let m = Matrix::from_fn(f, r, c, |i, j| flat[pos + i * c + j]);
                pos += r * c;
                m
            })
            .collect();
        ModuleHom::built(source, target, blocks)
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    pub fn source(&self) -> &Module {
        &self.source
    }
    pub fn target(&self) -> &Module {
        &self.target
    }
    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }
    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    fn blocks_equal(&self, other: &ModuleHom) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a.data() == b.data())
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &ModuleHom) -> ModuleHom {
        assert!(first.target.dims() == self.source.dims(), "morphisms are not composable");
        let blocks = self.blocks.iter().zip(&first.blocks).map(|(a, b)| a.mul(b)).collect();
        ModuleHom { source: first.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn try_compose_after(&self, first: &ModuleHom) -> Result<ModuleHom, ModuleError> {
        if first.target != self.source {
            return Err(ModuleError::NotComposable);
        }
        Ok(self.compose_after(first))
    }

    pub fn add(&self, other: &ModuleHom) -> ModuleHom {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleHom { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn scale(&self, c: u32) -> ModuleHom {
        let blocks = self.blocks.iter().map(|b| b.scale(c)).collect();
        ModuleHom { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn neg(&self) -> ModuleHom {
        self.scale(self.source.field().neg(1))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.total_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.total_dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dims() == self.target.dims() && self.is_injective()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<ModuleHom> {
        let blocks = self.blocks.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(ModuleHom::built(self.target.clone(), self.source.clone(), blocks))
    }

    /// Same blocks viewed between different (equal-dimensional) modules.
    pub fn retarget(&self, source: &Module, target: &Module) -> ModuleHom {
        ModuleHom::built(source.clone(), target.clone(), self.blocks.clone())
    }

    pub fn kernel(&self) -> (Module, ModuleHom) {
        let spans: Vec<Matrix> = self.blocks.iter().map(Matrix::kernel).collect();
        self.source.submodule(&spans)
    }

    pub fn image(&self) -> (Module, ModuleHom) {
        self.target.submodule(&self.blocks)
    }

    pub fn cokernel(&self) -> (Module, ModuleHom) {
        self.target.quotient(&self.blocks)
    }

    /// Dual morphism between the dual modules (over the opposite algebra).
    pub fn dualize(&self) -> ModuleHom {
        let blocks = self.blocks.iter().map(Matrix::transpose).collect();
        ModuleHom::built(self.target.dualize(), self.source.dualize(), blocks)
    }

    /// `m` with `m ∘ self = map`, when `self` is surjective and `map` kills
    /// its kernel.
    pub fn factor_through_epi(&self, map: &ModuleHom) -> Option<ModuleHom> {
        let f = self.source.field();
        let mut blocks = Vec::new();
        for (v, e) in self.blocks.iter().enumerate() {
            let r = if e.rows() == 0 { Matrix::zeros(f, 0, 0) } else { e.right_inverse()? };
            let b = if e.rows() == 0 { Matrix::zeros(f, map.target.dim_at(v), 0) } else { map.blocks[v].mul(&r) };
            blocks.push(b);
        }
        let m = ModuleHom { source: self.target.clone(), target: map.target.clone(), blocks };
        if m.compose_after(self).blocks_equal(map) && m.check_intertwiner().is_ok() {
            Some(m)
        } else {
            None
        }
    }

    /// `m` with `self ∘ m = map`, when `self` is injective and contains the
    /// image of `map`.
    pub fn factor_through_mono(&self, map: &ModuleHom) -> Option<ModuleHom> {
        let mut blocks = Vec::new();
        for (v, i) in self.blocks.iter().enumerate() {
            blocks.push(i.solve_matrix(&map.blocks[v])?);
        }
        let m = ModuleHom { source: map.source.clone(), target: self.source.clone(), blocks };
        m.check_intertwiner().ok()?;
        Some(m)
    }
}

/// Expresses `target` as a combination of `basis` (flattened), if possible.
pub fn solve_in_span(basis: &[ModuleHom], target: &ModuleHom) -> Option<Vec<u32>> {
    let f = target.source().field();
    let n = target.flatten().len();
    let cols: Vec<Vec<u32>> = basis.iter().map(ModuleHom::flatten).collect();
    let m = Matrix::from_columns(f, n, &cols);
    m.solve(&target.flatten())
}

/// Linear combination of morphisms with a common source and target.
pub fn combine(basis: &[ModuleHom], coeffs: &[u32], source: &Module, target: &Module) -> ModuleHom {
    let mut acc = ModuleHom::zero(source.clone(), target.clone());
    for (h, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&h.scale(c));
        }
    }
    acc
}

/// `Y → Y ⊔_N G`, `G → Y ⊔_N G` for `f: N → Y`, `g: N → G`.
pub fn pushout(f: &ModuleHom, g: &ModuleHom) -> Result<Pushout, ModuleError> {
    if f.source() != g.source() {
        return Err(ModuleError::SourceMismatch);
    }
    let ds = Module::direct_sum(&[f.target(), g.target()]);
    // (f, -g): N → Y ⊕ G
    let into_sum = ds.inclusions[0].compose_after(f).add(&ds.inclusions[1].compose_after(&g.neg()));
    let (object, quotient) = into_sum.cokernel();
    let from_first = quotient.compose_after(&ds.inclusions[0]);
    let from_second = quotient.compose_after(&ds.inclusions[1]);
    Ok(Pushout { object, from_first, from_second, sum: ds, quotient })
}

#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Module,
    pub from_first: ModuleHom,
    pub from_second: ModuleHom,
    /// `Y ⊕ G` and the quotient map onto the pushout.
    pub sum: DirectSum,
    pub quotient: ModuleHom,
}

/// `0 → left → middle → right → 0`, checked exact on construction.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    inclusion: ModuleHom,
    projection: ModuleHom,
}

impl ShortExactSequence {
    pub fn new(inclusion: ModuleHom, projection: ModuleHom) -> Result<Self, ModuleError> {
        if inclusion.target() != projection.source() {
            return Err(ModuleError::NotComposable);
        }
        if !inclusion.is_injective() {
            return Err(ModuleError::NotExact("first map is not injective".into()));
        }
        if !projection.is_surjective() {
            return Err(ModuleError::NotExact("second map is not surjective".into()));
        }
        if !projection.compose_after(&inclusion).is_zero() {
            return Err(ModuleError::NotExact("composite is nonzero".into()));
        }
        let mid = inclusion.target().total_dim();
        if mid != inclusion.source().total_dim() + projection.target().total_dim() {
            return Err(ModuleError::NotExact("image differs from kernel".into()));
        }
        Ok(ShortExactSequence { inclusion, projection })
    }

    pub fn inclusion(&self) -> &ModuleHom {
        &self.inclusion
    }
    pub fn projection(&self) -> &ModuleHom {
        &self.projection
    }
    pub fn left(&self) -> &Module {
        self.inclusion.source()
    }
    pub fn middle(&self) -> &Module {
        self.inclusion.target()
    }
    pub fn right(&self) -> &Module {
        self.projection.target()
    }

    /// Whether some `r: middle → left` has `r ∘ inclusion = id`.
    pub fn splits(&self) -> Result<bool, ModuleError> {
        let basis = self.middle().hom_basis(self.left())?;
        let composites: Vec<ModuleHom> = basis.iter().map(|r| r.compose_after(&self.inclusion)).collect();
        Ok(solve_in_span(&composites, &ModuleHom::identity(self.left())).is_some())
    }

    /// The cover sequence `0 → Ω M → P → M → 0`.
    pub fn cover_of(m: &Module) -> ShortExactSequence {
        let cover = m.projective_cover();
        let (_, inc) = cover.epi.kernel();
        ShortExactSequence::new(inc, cover.epi).expect("cover sequence is exact")
    }
}
