//! Frobenius extensions `S ⊂ R` of finite-dimensional algebras and the
//! restriction / induction / coinduction functors between their module
//! categories.
//!
//! Modules are moved across the embedding through their *full action*: the
//! matrix of every basis element on the total space. Each functor returns
//! the new module together with the change of coordinates it used, so that
//! units and counits can be written down explicitly.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::builtin;
use crate::algebra::{Algebra, AlgebraPresentation, Path};
use crate::gorenstein::{self, GorensteinCertificate, GorensteinError};
use crate::linalg::{Coordinates, Matrix};
use crate::modcat::{Module, ModuleError, ModuleHom, SummandVerdict};
use crate::resolve::{self, DimValue};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrobError {
    #[error("embedding is not an injective unital algebra map: {0}")]
    BadEmbedding(String),
    #[error("alpha is not an algebra automorphism of S: {0}")]
    NotAutomorphism(String),
    #[error("R is not projective as a left S-module")]
    NotProjective,
    #[error("basis element '{0}' has no counterpart in the larger algebra")]
    UnknownBasis(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Gorenstein(#[from] GorensteinError),
}

/// An injective unital algebra map `S → R`, given on bases.
#[derive(Clone, Debug)]
pub struct AlgebraEmbedding {
    sub: Arc<Algebra>,
    big: Arc<Algebra>,
    /// `dim R × dim S`; column `b` is the image of basis element `b`.
    map: Matrix,
}

impl AlgebraEmbedding {
    pub fn new(sub: Arc<Algebra>, big: Arc<Algebra>, map: Matrix) -> Result<Self, FrobError> {
        let bad = |s: String| Err(FrobError::BadEmbedding(s));
        if map.rows() != big.dim() || map.cols() != sub.dim() {
            return bad(format!("matrix is {}x{}, expected {}x{}", map.rows(), map.cols(), big.dim(), sub.dim()));
        }
        if map.rank() != sub.dim() {
            return bad("not injective".into());
        }
        if map.mul_vec(&sub.one()) != big.one() {
            return bad("unit is not preserved".into());
        }
        for i in 0..sub.dim() {
            for j in 0..sub.dim() {
                let lhs = map.mul_vec(&sub.multiply(&sub.unit_vector(i), &sub.unit_vector(j)));
                let rhs = big.multiply(&map.col(i), &map.col(j));
                if lhs != rhs {
                    return bad(format!("product {}*{} is not preserved", sub.basis_label(i), sub.basis_label(j)));
                }
            }
        }
        Ok(AlgebraEmbedding { sub, big, map })
    }

    /// Sends every path of `S` to the path with the same vertex and arrow
    /// names in `R`.
    pub fn by_names(sub: Arc<Algebra>, big: Arc<Algebra>) -> Result<Self, FrobError> {
        let (qs, qb) = (sub.quiver(), big.quiver());
        let mut cols = Vec::with_capacity(sub.dim());
        for p in sub.basis() {
            let missing = || FrobError::UnknownBasis(p.label(qs));
            let source = qb.vertex_index(&qs.vertices()[p.source]).ok_or_else(missing)?;
            let target = qb.vertex_index(&qs.vertices()[p.target]).ok_or_else(missing)?;
            let arrows = p
                .arrows
                .iter()
                .map(|&a| qb.arrow_index(&qs.arrows()[a].name).ok_or_else(missing))
                .collect::<Result<Vec<_>, _>>()?;
            cols.push(big.path_element(&Path { source, target, arrows }));
        }
        let map = Matrix::from_columns(big.field(), big.dim(), &cols);
        AlgebraEmbedding::new(sub, big, map)
    }

    pub fn sub(&self) -> &Arc<Algebra> {
        &self.sub
    }
    pub fn big(&self) -> &Arc<Algebra> {
        &self.big
    }
    pub fn map(&self) -> &Matrix {
        &self.map
    }

    /// Image of an element of `S`.
    pub fn apply(&self, s: &[u32]) -> Vec<u32> {
        self.map.mul_vec(s)
    }
}

/// `S ⊂ S[t]/(t²)` with `t` central.
pub fn central_nilpotent(s: &AlgebraPresentation) -> Result<AlgebraEmbedding, FrobError> {
    let sub = s.compile().map_err(|e| FrobError::BadEmbedding(e.to_string()))?;
    let big =
        builtin::central_nilpotent_presentation(s).compile().map_err(|e| FrobError::BadEmbedding(e.to_string()))?;
    AlgebraEmbedding::by_names(sub, big)
}

/// A verified Frobenius extension.
#[derive(Clone, Debug)]
pub struct FrobeniusExtension {
    pub embedding: AlgebraEmbedding,
    /// Automorphism of `S` on its basis.
    pub alpha: Matrix,
    /// `φ: R → Hom_S(R, αS)` in the basis `hom_basis` of the target.
    pub iso_witness: Matrix,
    /// `φ(1)`, a linear map `R → S` (`dim S × dim R`).
    pub trace: Matrix,
    /// Basis of `Hom_S(R, αS)` as flattened `dim S × dim R` matrices.
    pub hom_basis: Matrix,
    /// Rank of `R` as a free-up-to-summands left `S`-module: the
    /// multiplicities of the vertex projectives in `R|_S`.
    pub multiplicities: Vec<usize>,
}

impl FrobeniusExtension {
    pub fn sub(&self) -> &Arc<Algebra> {
        self.embedding.sub()
    }
    pub fn big(&self) -> &Arc<Algebra> {
        self.embedding.big()
    }

    /// `σ(a, b) = φ(1)(ab) ∈ S`.
    pub fn pairing(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.trace.mul_vec(&self.big().multiply(a, b))
    }

    /// Associativity and the two linearity rules of the pairing, and its
    /// non-degeneracy, on all basis elements.
    pub fn check_pairing(&self) -> bool {
        let (s, r) = (self.sub(), self.big());
        let unit = |alg: &Algebra, b| alg.unit_vector(b);
        for a in 0..r.dim() {
            for b in 0..r.dim() {
                let sab = self.pairing(&unit(r, a), &unit(r, b));
                for x in 0..s.dim() {
                    let xr = self.embedding.apply(&unit(s, x));
                    let ax = self.alpha.mul_vec(&unit(s, x));
                    if self.pairing(&r.multiply(&xr, &unit(r, a)), &unit(r, b)) != s.multiply(&ax, &sab) {
                        return false;
                    }
                    if self.pairing(&unit(r, a), &r.multiply(&unit(r, b), &xr)) != s.multiply(&sab, &unit(s, x)) {
                        return false;
                    }
                }
                for c in 0..r.dim() {
                    let left = self.pairing(&r.multiply(&unit(r, a), &unit(r, b)), &unit(r, c));
                    let right = self.pairing(&unit(r, a), &r.multiply(&unit(r, b), &unit(r, c)));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        // b ↦ σ(−, b) is injective
        let f = r.field();
        let cols: Vec<Vec<u32>> =
            (0..r.dim()).map(|b| (0..r.dim()).flat_map(|a| self.pairing(&unit(r, a), &unit(r, b))).collect()).collect();
        Matrix::from_columns(f, r.dim() * s.dim(), &cols).rank() == r.dim()
    }
}

/// Outcome of [`verify_frobenius`].
#[derive(Clone, Debug)]
pub enum FrobeniusVerdict {
    Verified(Box<FrobeniusExtension>),
    /// No invertible bimodule map among the basis and the sampled
    /// combinations; the extension may still be Frobenius.
    NotFound {
        candidates: usize,
        sampled: usize,
    },
}

impl FrobeniusVerdict {
    pub fn extension(&self) -> Option<&FrobeniusExtension> {
        match self {
            FrobeniusVerdict::Verified(e) => Some(e),
            FrobeniusVerdict::NotFound { .. } => None,
        }
    }
}

fn check_automorphism(alg: &Algebra, alpha: &Matrix) -> Result<(), FrobError> {
    let bad = |s: &str| Err(FrobError::NotAutomorphism(s.to_string()));
    if alpha.rows() != alg.dim() || alpha.cols() != alg.dim() {
        return bad("wrong shape");
    }
    if alpha.inverse().is_none() {
        return bad("not invertible");
    }
    if alpha.mul_vec(&alg.one()) != alg.one() {
        return bad("unit is not fixed");
    }
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let lhs = alpha.mul_vec(&alg.multiply(&alg.unit_vector(i), &alg.unit_vector(j)));
            let rhs = alg.multiply(&alpha.col(i), &alpha.col(j));
            if lhs != rhs {
                return bad("not multiplicative");
            }
        }
    }
    Ok(())
}

/// Index of entry `(row, col)` of a flattened `dim S × dim R` matrix.
fn flat(row: usize, col: usize, cols: usize) -> usize {
    row * cols + col
}

/// Linear maps `g: R → S` (as `dim S × dim R` matrices, flattened row-major)
/// with `g(x·r) = α(x)·g(r)` for `x ∈ S`, plus, if `right` is set,
/// `g(r·x) = g(r)·x`.
fn twisted_maps(emb: &AlgebraEmbedding, alpha: &Matrix, right: bool) -> Matrix {
    let (s, r) = (emb.sub(), emb.big());
    let f = r.field();
    let (ds, dr) = (s.dim(), r.dim());
    let n = ds * dr;
    let mut eqs: Vec<Vec<u32>> = Vec::new();
    // g ∘ L_{ι x} − L^S_{α x} ∘ g = 0, and g ∘ R_{ι x} − R^S_x ∘ g = 0
    let mut push = |pre: &Matrix, post: &Matrix| {
        // entries of g·pre − post·g
        for i in 0..ds {
            for j in 0..dr {
                let mut row = vec![0u32; n];
                for k in 0..dr {
                    let c = pre.get(k, j);
                    if c != 0 {
                        let idx = flat(i, k, dr);
                        row[idx] = f.add(row[idx], c);
                    }
                }
                for k in 0..ds {
                    let c = post.get(i, k);
                    if c != 0 {
                        let idx = flat(k, j, dr);
                        row[idx] = f.sub(row[idx], c);
                    }
                }
                eqs.push(row);
            }
        }
    };
    for x in 0..ds {
        let xs = s.unit_vector(x);
        let xr = emb.apply(&xs);
        push(&r.left_mult_matrix(&xr), &s.left_mult_matrix(&alpha.mul_vec(&xs)));
        if right {
            push(&r.right_mult_matrix(&xr), &s.right_mult_matrix(&xs));
        }
    }
    let rows: Vec<&[u32]> = eqs.iter().map(Vec::as_slice).collect();
    let mut m = Matrix::zeros(f, rows.len(), n);
    for (i, row) in rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m.kernel()
}

fn unflatten(f: crate::linalg::PrimeField, v: &[u32], rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(f, rows, cols, |i, j| v[flat(i, j, cols)])
}

fn flatten(m: &Matrix) -> Vec<u32> {
    m.data().to_vec()
}

/// Checks that `R` is a Frobenius extension of `S` twisted by `alpha`:
/// `R` is projective over `S`, and some `(R,S)`-bimodule map
/// `R → Hom_S(R, αS)` is invertible.
pub fn verify_frobenius(
    emb: &AlgebraEmbedding,
    alpha: &Matrix,
    trials: usize,
    seed: u64,
) -> Result<FrobeniusVerdict, FrobError> {
    check_automorphism(emb.sub(), alpha)?;
    let (s, r) = (emb.sub(), emb.big());
    let f = r.field();
    let (restricted, _) = restrict(emb, &Module::regular(r))?;
    let cover = restricted.projective_cover();
    if !cover.epi.is_isomorphism() {
        return Err(FrobError::NotProjective);
    }
    let multiplicities = cover.projective.multiplicities();
    let hom_basis = twisted_maps(emb, alpha, false);
    // bimodule maps are determined by φ(1) ∈ Hom_S(R, αS) that is also right S-linear
    let candidates = twisted_maps(emb, alpha, true);
    let coords = Coordinates::new(&hom_basis);
    let witness_for = |trace: &[u32]| -> Option<Matrix> {
        if hom_basis.cols() != r.dim() {
            return None;
        }
        let g = unflatten(f, trace, s.dim(), r.dim());
        let cols: Vec<Vec<u32>> = (0..r.dim())
            .map(|b| {
                let phi_b = g.mul(&r.right_mult_matrix(&r.unit_vector(b)));
                coords.coords(&flatten(&phi_b)).expect("φ(b) is S-linear")
            })
            .collect();
        let w = Matrix::from_columns(f, r.dim(), &cols);
        w.inverse().map(|_| w)
    };
    let build = |trace: Vec<u32>, w: Matrix| {
        FrobeniusVerdict::Verified(Box::new(FrobeniusExtension {
            embedding: emb.clone(),
            alpha: alpha.clone(),
            iso_witness: w,
            trace: unflatten(f, &trace, s.dim(), r.dim()),
            hom_basis: hom_basis.clone(),
            multiplicities: multiplicities.clone(),
        }))
    };
    for c in candidates.columns() {
        if let Some(w) = witness_for(&c) {
            return Ok(build(c, w));
        }
    }
    let mut sampled = 0;
    if candidates.cols() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            sampled += 1;
            let coeffs = Matrix::random_with(f, candidates.cols(), 1, &mut rng);
            let c = candidates.mul(&coeffs).col(0);
            if let Some(w) = witness_for(&c) {
                return Ok(build(c, w));
            }
        }
    }
    Ok(FrobeniusVerdict::NotFound { candidates: candidates.cols(), sampled })
}

/// Module over `alg` from the full action of each basis element, through the
/// change of coordinates `change` (new coordinates of old vectors).
fn from_action(alg: &Arc<Algebra>, n: usize, ops: &[Matrix]) -> Result<(Module, Matrix), FrobError> {
    Ok(Module::from_full_action(alg, n, ops)?)
}

/// Total-coordinate matrix of a module map, if it is block diagonal.
fn hom_from_total(source: &Module, target: &Module, m: &Matrix) -> Result<ModuleHom, FrobError> {
    let (os, ot) = (source.offsets(), target.offsets());
    let f = source.field();
    let mut check = Matrix::zeros(f, target.total_dim(), source.total_dim());
    let blocks: Vec<Matrix> = (0..source.dims().len())
        .map(|v| {
            let b = m.block(ot[v], os[v], target.dim_at(v), source.dim_at(v));
            check.set_block(ot[v], os[v], &b);
            b
        })
        .collect();
    if &check != m {
        return Err(ModuleError::NotAHomomorphism("map mixes vertices".into()).into());
    }
    Ok(ModuleHom::new(source.clone(), target.clone(), blocks)?)
}

/// A module map on total coordinates.
pub fn total_matrix(h: &ModuleHom) -> Matrix {
    let (os, ot) = (h.source().offsets(), h.target().offsets());
    let mut m = Matrix::zeros(h.source().field(), h.target().total_dim(), h.source().total_dim());
    for (v, b) in h.blocks().iter().enumerate() {
        m.set_block(ot[v], os[v], b);
    }
    m
}

/// `X|_S` and the change of coordinates from `X` to it.
pub fn restrict(emb: &AlgebraEmbedding, x: &Module) -> Result<(Module, Matrix), FrobError> {
    if !x.algebra().same_as(emb.big()) {
        return Err(ModuleError::AlgebraMismatch.into());
    }
    let ops: Vec<Matrix> = (0..emb.sub().dim()).map(|b| x.element_action(&emb.map().col(b))).collect();
    from_action(emb.sub(), x.total_dim(), &ops)
}

/// `R ⊗_S M` and the quotient map from `R ⊗_k M` (index `r·dim M + i`).
pub fn induce(emb: &AlgebraEmbedding, m: &Module) -> Result<(Module, Matrix), FrobError> {
    if !m.algebra().same_as(emb.sub()) {
        return Err(ModuleError::AlgebraMismatch.into());
    }
    let (s, r) = (emb.sub(), emb.big());
    let f = r.field();
    let (dr, dm) = (r.dim(), m.total_dim());
    let n = dr * dm;
    // relations r·x ⊗ m − r ⊗ x·m
    let mut rels: Vec<Vec<u32>> = Vec::new();
    for x in 0..s.dim() {
        let rx = r.right_mult_matrix(&emb.map().col(x));
        let xm = m.full_action(x);
        for b in 0..dr {
            for i in 0..dm {
                let mut v = vec![0u32; n];
                for (c, &k) in rx.col(b).iter().enumerate() {
                    if k != 0 {
                        v[c * dm + i] = f.add(v[c * dm + i], k);
                    }
                }
                for (j, &k) in xm.col(i).iter().enumerate() {
                    if k != 0 {
                        v[b * dm + j] = f.sub(v[b * dm + j], k);
                    }
                }
                rels.push(v);
            }
        }
    }
    let w = Matrix::from_columns(f, n, &rels);
    let quotient = w.left_kernel();
    let section = quotient.right_inverse().expect("independent rows");
    let q = quotient.rows();
    let ops: Vec<Matrix> = (0..dr)
        .map(|b| {
            let lb = r.left_mult_matrix(&r.unit_vector(b));
            let on_tensor = kron_left(&lb, dm);
            quotient.mul(&on_tensor).mul(&section)
        })
        .collect();
    let (module, change) = from_action(r, q, &ops)?;
    Ok((module, change.mul(&quotient)))
}

/// `L ⊗ I_dm` on `R ⊗ M` with index `r·dm + i`.
fn kron_left(l: &Matrix, dm: usize) -> Matrix {
    let n = l.rows() * dm;
    let mut out = Matrix::zeros(l.field(), n, l.cols() * dm);
    for a in 0..l.rows() {
        for b in 0..l.cols() {
            let c = l.get(a, b);
            if c != 0 {
                for i in 0..dm {
                    out.set(a * dm + i, b * dm + i, c);
                }
            }
        }
    }
    out
}

/// `Hom_S(R, M)` with `(x·f)(r) = f(r·x)`, and the matrix whose columns are
/// the flattened `dim M × dim R` maps of the module's coordinate basis.
pub fn coinduce(emb: &AlgebraEmbedding, m: &Module) -> Result<(Module, Matrix), FrobError> {
    if !m.algebra().same_as(emb.sub()) {
        return Err(ModuleError::AlgebraMismatch.into());
    }
    let (s, r) = (emb.sub(), emb.big());
    let f = r.field();
    let (dr, dm) = (r.dim(), m.total_dim());
    let n = dm * dr;
    // F ∘ L_{ι x} = ρ(x) ∘ F
    let mut eqs = Matrix::zeros(f, s.dim() * n, n);
    let mut row0 = 0;
    for x in 0..s.dim() {
        let lx = r.left_mult_matrix(&emb.map().col(x));
        let px = m.full_action(x);
        for i in 0..dm {
            for j in 0..dr {
                for k in 0..dr {
                    let c = lx.get(k, j);
                    if c != 0 {
                        let e = eqs.get(row0, flat(i, k, dr));
                        eqs.set(row0, flat(i, k, dr), f.add(e, c));
                    }
                }
                for k in 0..dm {
                    let c = px.get(i, k);
                    if c != 0 {
                        let e = eqs.get(row0, flat(k, j, dr));
                        eqs.set(row0, flat(k, j, dr), f.sub(e, c));
                    }
                }
                row0 += 1;
            }
        }
    }
    let basis = eqs.kernel();
    let coords = Coordinates::new(&basis);
    let ops: Vec<Matrix> = (0..dr)
        .map(|b| {
            let rb = r.right_mult_matrix(&r.unit_vector(b));
            let cols: Vec<Vec<u32>> = basis
                .columns()
                .iter()
                .map(|v| {
                    let g = unflatten(f, v, dm, dr).mul(&rb);
                    coords.coords(&flatten(&g)).expect("coinduced action stays S-linear")
                })
                .collect();
            Matrix::from_columns(f, basis.cols(), &cols)
        })
        .collect();
    let (module, change) = from_action(r, basis.cols(), &ops)?;
    let back = change.inverse().expect("change of basis");
    Ok((module, basis.mul(&back)))
}

/// `M` with `x ∈ S` acting as `α(x)`.
pub fn twist(alpha: &Matrix, m: &Module) -> Result<Module, FrobError> {
    let ops: Vec<Matrix> = (0..m.algebra().dim()).map(|b| m.element_action(&alpha.col(b))).collect();
    Ok(from_action(m.algebra(), m.total_dim(), &ops)?.0)
}

/// The unit `M → (R ⊗_S M)|_S`, `m ↦ 1 ⊗ m`.
pub fn induction_unit(emb: &AlgebraEmbedding, m: &Module) -> Result<ModuleHom, FrobError> {
    let (ind, quotient) = induce(emb, m)?;
    let (res, change) = restrict(emb, &ind)?;
    let one = emb.big().one();
    let dm = m.total_dim();
    let embed = kron_left(&Matrix::column(m.field(), &one), dm);
    hom_from_total(m, &res, &change.mul(&quotient).mul(&embed))
}

/// The counit `Hom_S(R, N)|_S → N`, `f ↦ f(1)`.
pub fn coinduction_counit(emb: &AlgebraEmbedding, n: &Module) -> Result<ModuleHom, FrobError> {
    let (coind, basis) = coinduce(emb, n)?;
    let (res, change) = restrict(emb, &coind)?;
    let f = n.field();
    let (dr, dn) = (emb.big().dim(), n.total_dim());
    let one = emb.big().one();
    // evaluation at 1 of flattened maps
    let mut eval = Matrix::zeros(f, dn, dn * dr);
    for i in 0..dn {
        for (k, &c) in one.iter().enumerate() {
            if c != 0 {
                eval.set(i, flat(i, k, dr), c);
            }
        }
    }
    let back = change.inverse().expect("change of basis");
    hom_from_total(&res, n, &eval.mul(&basis).mul(&back))
}

/// One named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), passed, detail: detail.into() });
    }
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }
    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.passed)
    }
}

/// Units mono, counits epi, and the Hom-dimension identities of both
/// adjunctions, on sampled `S`-modules `ms` and `R`-modules `xs`.
pub fn check_adjunctions(emb: &AlgebraEmbedding, ms: &[Module], xs: &[Module]) -> Result<CheckReport, FrobError> {
    let mut report = CheckReport::default();
    for (i, m) in ms.iter().enumerate() {
        let unit = induction_unit(emb, m)?;
        report.push(
            format!("unit mono #{i}"),
            unit.is_injective(),
            format!("rank {} of {}", unit.rank(), m.total_dim()),
        );
        let counit = coinduction_counit(emb, m)?;
        report.push(
            format!("counit epi #{i}"),
            counit.is_surjective(),
            format!("rank {} onto {}", counit.rank(), m.total_dim()),
        );
        let (ind, _) = induce(emb, m)?;
        let (coind, _) = coinduce(emb, m)?;
        for (j, x) in xs.iter().enumerate() {
            let (rx, _) = restrict(emb, x)?;
            let (l, r) = (ind.hom_dim(x)?, m.hom_dim(&rx)?);
            report.push(format!("Hom(IM,X) = Hom(M,RX) #{i},{j}"), l == r, format!("{l} vs {r}"));
            let (l, r) = (rx.hom_dim(m)?, x.hom_dim(&coind)?);
            report.push(format!("Hom(RX,M) = Hom(X,CM) #{i},{j}"), l == r, format!("{l} vs {r}"));
        }
    }
    Ok(report)
}

/// Every indecomposable projective over `R` is a summand of an induced
/// projective, and restriction keeps projectives projective.
pub fn check_projective_correspondence(
    emb: &AlgebraEmbedding,
    trials: usize,
    seed: u64,
) -> Result<CheckReport, FrobError> {
    let (s, r) = (emb.sub(), emb.big());
    let mut report = CheckReport::default();
    let induced: Vec<Module> = (0..s.vertex_count())
        .map(|v| Ok(induce(emb, &Module::vertex_projective(s, v)?)?.0))
        .collect::<Result<_, FrobError>>()?;
    for w in 0..r.vertex_count() {
        let p = Module::vertex_projective(r, w)?;
        let verdicts: Vec<SummandVerdict> =
            induced.iter().map(|i| p.is_summand_of(i, trials, seed.wrapping_add(w as u64))).collect();
        let found = verdicts.iter().any(|v| *v == SummandVerdict::Yes);
        let qualifier = if found {
            "summand found".to_string()
        } else if verdicts.iter().all(|v| *v == SummandVerdict::No) {
            "not a summand of any induced projective".to_string()
        } else {
            format!("no summand found in {trials} trials (probabilistic)")
        };
        report.push(format!("P_R({}) summand of induced", r.quiver().vertices()[w]), found, qualifier);
        let (rp, _) = restrict(emb, &p)?;
        report.push(
            format!("P_R({}) restricts to projective", r.quiver().vertices()[w]),
            rp.is_projective(),
            format!("dims {:?}", rp.dims()),
        );
    }
    Ok(report)
}

/// `R ⊗_S M ≅ Hom_S(R, αM)` on sampled `S`-modules.
pub fn check_ind_coind_twist(
    ext: &FrobeniusExtension,
    ms: &[Module],
    trials: usize,
    seed: u64,
) -> Result<CheckReport, FrobError> {
    let mut report = CheckReport::default();
    for (i, m) in ms.iter().enumerate() {
        let (ind, _) = induce(&ext.embedding, m)?;
        let (coind, _) = coinduce(&ext.embedding, &twist(&ext.alpha, m)?)?;
        let verdict = ind.is_isomorphic(&coind, trials, seed.wrapping_add(i as u64));
        let detail = match &verdict {
            v if v.is_yes() => format!("isomorphic, dim {}", ind.total_dim()),
            v if v.is_no() => "not isomorphic".to_string(),
            _ => format!("no isomorphism found in {trials} trials (probabilistic)"),
        };
        report.push(format!("I(M) = C(E M) #{i}"), verdict.is_yes(), detail);
    }
    Ok(report)
}

/// Transfer of Gorenstein data along the extension: equal IG bounds,
/// `Gd_R X = Gd_S X|_S`, `Gd_R X = pd_S X|_S` when `S` has global dimension
/// `d`, and `id_S P = id_R (R ⊗_S P)` for vertex projectives.
pub fn transfer_checks(
    emb: &AlgebraEmbedding,
    cert_s: &GorensteinCertificate,
    cert_r: &GorensteinCertificate,
    xs: &[Module],
) -> Result<CheckReport, FrobError> {
    let d_s = cert_s.require(emb.sub())?;
    let d_r = cert_r.require(emb.big())?;
    let mut report = CheckReport::default();
    report.push("d_S = d_R", d_s == d_r, format!("{d_s} vs {d_r}"));
    let s = emb.sub();
    let mut gldim_d = true;
    for v in 0..s.vertex_count() {
        match gorenstein::finite_pd(&Module::simple(s, v), cert_s)? {
            Some(p) if p <= d_s => {}
            _ => gldim_d = false,
        }
    }
    for (i, x) in xs.iter().enumerate() {
        let (rx, _) = restrict(emb, x)?;
        let g_r = gorenstein::gdim(x, cert_r)?;
        let g_s = gorenstein::gdim(&rx, cert_s)?;
        report.push(format!("Gd_R X = Gd_S RX #{i}"), g_r == g_s, format!("{g_r} vs {g_s}"));
        if gldim_d {
            let pd = gorenstein::finite_pd(&rx, cert_s)?;
            report.push(format!("Gd_R X = pd_S RX #{i}"), pd == Some(g_r), format!("{g_r} vs {pd:?}"));
        }
    }
    let cap = cert_s.cap().max(cert_r.cap());
    for v in 0..s.vertex_count() {
        let p = Module::vertex_projective(s, v)?;
        let (ip, _) = induce(emb, &p)?;
        let (a, b) = (resolve::id(&p, cap), resolve::id(&ip, cap));
        let ok = matches!((a, b), (DimValue::Exact(x), DimValue::Exact(y)) if x == y);
        report.push(format!("id_S P({}) = id_R I P", s.quiver().vertices()[v]), ok, format!("{a} vs {b}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
