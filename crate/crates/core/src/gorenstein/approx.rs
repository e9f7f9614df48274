//! Special Gorenstein-projective approximations, Gorenstein Ext, extension
//! realisation and the Avramov–Martsinkovsky sequence.

use super::complete::tate_ext;
use super::{finite_pd, gdim, gp_coresolution, is_gp, GorensteinCertificate, GorensteinError, DEFAULT_WINDOW};
use crate::linalg::Matrix;
use crate::modcat::{baby_comparison, pushout, solve_in_span, Module, ModuleHom, ProjectiveModule, ShortExactSequence};
use crate::resolve::{self, pullback_matrix, HomComplex, Resolution};

/// `0 → K → G → X → 0` with `G` Gorenstein projective and `pd K = Gd X − 1`.
#[derive(Clone, Debug)]
pub struct GpApproximation {
    pub gdim: usize,
    pub inclusion: ModuleHom,
    pub projection: ModuleHom,
    /// `pd K`; `None` for `K = 0`.
    pub pd_k: Option<usize>,
}

impl GpApproximation {
    pub fn k(&self) -> &Module {
        self.inclusion.source()
    }
    pub fn g(&self) -> &Module {
        self.inclusion.target()
    }
    pub fn x(&self) -> &Module {
        self.projection.target()
    }
}

/// Builds the approximation by walking up the minimal resolution of `X`
/// from `Ω^g X`, one coresolution step and one comparison at a time.
pub fn special_approximation(x: &Module, cert: &GorensteinCertificate) -> Result<GpApproximation, GorensteinError> {
    cert.require(x.algebra())?;
    let g = gdim(x, cert)?;
    let res = resolve::min_projective_resolution(x, g);
    let top = res.syzygy(g).clone();
    let mut pi = ModuleHom::identity(&top);
    let mut k_inc = ModuleHom::zero(Module::zero(x.algebra()), top.clone());
    for j in (1..=g).rev() {
        let gm = pi.source().clone();
        let co = gp_coresolution(&gm, 1, cert)?;
        let (_, to_cosyzygy) = co.coaugmentation.cokernel();
        let y_row = ShortExactSequence::new(co.coaugmentation.clone(), to_cosyzygy)?;
        let z_row = ShortExactSequence::new(res.kernel_inclusion(j - 1).clone(), res.cover(j - 1).clone())?;
        let cmp = baby_comparison(&y_row, &z_row, &pi)?;
        let four =
            cmp.four_term.ok_or_else(|| GorensteinError::Inconsistent("approximation map is not surjective".into()))?;
        if !four.is_exact() {
            return Err(GorensteinError::Inconsistent("comparison sequence is not exact".into()));
        }
        let [_, _, psi] = four.maps;
        k_inc = psi.kernel().1;
        pi = psi;
    }
    let approx = GpApproximation { gdim: g, inclusion: k_inc, projection: pi, pd_k: None };
    let seq = ShortExactSequence::new(approx.inclusion.clone(), approx.projection.clone());
    if seq.is_err() || approx.x() != x {
        return Err(GorensteinError::Inconsistent("approximation sequence is not exact".into()));
    }
    if !is_gp(approx.g(), cert)? {
        return Err(GorensteinError::Inconsistent("approximating module is not Gorenstein projective".into()));
    }
    let pd_k = if approx.k().is_zero() {
        None
    } else {
        Some(finite_pd(approx.k(), cert)?.ok_or_else(|| GorensteinError::Inconsistent("pd K is infinite".into()))?)
    };
    if g >= 1 && pd_k.unwrap_or(0) != g - 1 {
        return Err(GorensteinError::Inconsistent(format!("pd K = {pd_k:?}, expected {}", g - 1)));
    }
    Ok(GpApproximation { pd_k, ..approx })
}

fn composite_rank(basis: &[ModuleHom], with: &ModuleHom) -> usize {
    if basis.is_empty() {
        return 0;
    }
    let f = with.source().field();
    let cols: Vec<Vec<u32>> = basis.iter().map(|h| h.compose_after(with).flatten()).collect();
    Matrix::from_columns(f, cols[0].len(), &cols).rank()
}

/// `dim GE^k(X, Y)`.
pub fn gorenstein_ext(
    x: &Module,
    y: &Module,
    k: usize,
    cert: &GorensteinCertificate,
) -> Result<usize, GorensteinError> {
    cert.require(x.algebra())?;
    let value = if k == 0 {
        x.hom_dim(y)?
    } else {
        let approx = special_approximation(x, cert)?;
        ge_from_approximation(&approx, y, k)?
    };
    if cfg!(debug_assertions) {
        let direct = gorenstein_ext_direct(x, y, k, cert)?;
        if direct != value {
            return Err(GorensteinError::Inconsistent(format!("GE^{k}: {value} vs direct {direct}")));
        }
    }
    Ok(value)
}

fn ge_from_approximation(approx: &GpApproximation, y: &Module, k: usize) -> Result<usize, GorensteinError> {
    Ok(match k {
        0 => approx.x().hom_dim(y)?,
        1 => {
            let from_g = approx.g().hom_basis(y)?;
            approx.k().hom_dim(y)? - composite_rank(&from_g, &approx.inclusion)
        }
        _ => resolve::ext_dim(approx.k(), y, k - 1)?,
    })
}

/// `dim GE^k(X, Y)` as the cohomology of `Hom(G_•, Y)` for the strict
/// resolution `… → P_1 K → P_0 K → G → X`.
pub fn gorenstein_ext_direct(
    x: &Module,
    y: &Module,
    k: usize,
    cert: &GorensteinCertificate,
) -> Result<usize, GorensteinError> {
    cert.require(x.algebra())?;
    let approx = special_approximation(x, cert)?;
    let res = resolve::min_projective_resolution(approx.k(), k + 1);
    let zero = Module::zero(x.algebra());
    let term = |i: usize| -> Module {
        match i {
            0 => approx.g().clone(),
            _ if i - 1 < res.len() => res.term(i - 1).module().clone(),
            _ => zero.clone(),
        }
    };
    let differential = |i: usize| -> ModuleHom {
        // d_i: term(i) → term(i-1), i ≥ 1
        if i == 1 && !res.is_empty() {
            approx.inclusion.compose_after(res.augmentation())
        } else if i >= 2 && i - 1 < res.len() {
            res.differential(i - 1)
        } else {
            ModuleHom::zero(term(i), term(i - 1))
        }
    };
    let here = term(k).hom_basis(y)?;
    let out = composite_rank(&here, &differential(k + 1));
    let inc = if k == 0 { 0 } else { composite_rank(&term(k - 1).hom_basis(y)?, &differential(k)) };
    Ok(here.len() - out - inc)
}

/// Representatives `α: K → Y` of a basis of `GE¹(X, Y)`.
pub fn ge1_classes(
    x: &Module,
    y: &Module,
    cert: &GorensteinCertificate,
) -> Result<(GpApproximation, Vec<ModuleHom>), GorensteinError> {
    let approx = special_approximation(x, cert)?;
    let f = x.field();
    let from_k = approx.k().hom_basis(y)?;
    let from_g = approx.g().hom_basis(y)?;
    let len = from_k.first().map(|h| h.flatten().len()).unwrap_or(0);
    let mut span = Matrix::from_columns(
        f,
        len,
        &from_g.iter().map(|h| h.compose_after(&approx.inclusion).flatten()).collect::<Vec<_>>(),
    )
    .column_space();
    let mut classes = Vec::new();
    for h in from_k {
        let with = Matrix::hstack(&[&span, &Matrix::column(f, &h.flatten())], f, len);
        if with.rank() > span.cols() {
            span = with;
            classes.push(h);
        }
    }
    Ok((approx, classes))
}

/// `0 → Y → M → X → 0` realising a nonzero class of `GE¹(X, Y)`.
#[derive(Clone, Debug)]
pub struct RealizedExtension {
    pub sequence: ShortExactSequence,
    pub split: bool,
    /// `Hom(Q, −)` exact on the sequence for every Gorenstein projective
    /// test object `Q`.
    pub left_gp_acyclic: bool,
}

/// Pushout of `K ↪ G` along `α: K → Y`, for `α` not factoring through `G`.
pub fn realize_ge1(
    approx: &GpApproximation,
    y: &Module,
    alpha: &ModuleHom,
    cert: &GorensteinCertificate,
) -> Result<RealizedExtension, GorensteinError> {
    let d = cert.require(y.algebra())?;
    if alpha.source() != approx.k() || alpha.target() != y {
        return Err(crate::modcat::ModuleError::NotComposable.into());
    }
    let from_g: Vec<ModuleHom> = approx.g().hom_basis(y)?.iter().map(|h| h.compose_after(&approx.inclusion)).collect();
    if alpha.is_zero() || solve_in_span(&from_g, alpha).is_some() {
        return Err(GorensteinError::Coboundary);
    }
    let po = pushout(&approx.inclusion, alpha)?;
    let to_x = approx.projection.compose_after(&po.sum.projections[0]);
    let onto_x = po
        .quotient
        .factor_through_epi(&to_x)
        .ok_or_else(|| GorensteinError::Inconsistent("pushout does not map onto X".into()))?;
    let sequence = ShortExactSequence::new(po.from_second.clone(), onto_x)?;
    let split = sequence.splits()?;
    let alg = y.algebra().clone();
    let mut tests = Vec::new();
    // d-th syzygies are Gorenstein projective
    for v in 0..alg.vertex_count() {
        for mut s in [Module::simple(&alg, v), Module::vertex_injective(&alg, v)?] {
            for _ in 0..d {
                s = s.syzygy();
            }
            if !s.is_zero() {
                tests.push(s);
            }
        }
    }
    let mut left_gp_acyclic = true;
    for q in &tests {
        let lhs = q.hom_dim(sequence.middle())?;
        let rhs = q.hom_dim(sequence.left())? + q.hom_dim(sequence.right())?;
        left_gp_acyclic &= lhs == rhs;
    }
    if split {
        return Err(GorensteinError::Inconsistent("realised extension splits".into()));
    }
    if !left_gp_acyclic {
        return Err(GorensteinError::Inconsistent("realised extension is not left gp-acyclic".into()));
    }
    Ok(RealizedExtension { sequence, split, left_gp_acyclic })
}

/// Dimensions and exactness of
/// `0 → GE¹ → Ext¹ → Êxt¹ → GE² → Ext² → Êxt² → …` up to degree `d + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmReport {
    pub degrees: usize,
    /// Indexed by `k - 1`.
    pub ge: Vec<usize>,
    pub ext: Vec<usize>,
    pub tate: Vec<usize>,
    /// Ranks of the maps between consecutive terms, in sequence order.
    pub ranks: Vec<usize>,
    /// Exact at every term but the last.
    pub exact: bool,
    /// The dimensions agree with the GE, Ext and Tate engines.
    pub engines_agree: bool,
}

fn rank_on_cohomology(f: &Matrix, cocycles: &Matrix, boundaries: &Matrix) -> usize {
    let field = f.field();
    let image = f.mul(cocycles);
    let b = boundaries.column_space();
    Matrix::hstack(&[&image, &b], field, f.rows()).rank() - b.cols()
}

struct Cochains {
    dims: Vec<usize>,
    /// `delta[n]: C^n → C^{n+1}`.
    delta: Vec<Matrix>,
}

impl Cochains {
    fn from_hom_complex(h: HomComplex) -> Self {
        Cochains { dims: h.dims, delta: h.coboundary }
    }
    fn cocycles(&self, n: usize) -> Matrix {
        self.delta[n].kernel()
    }
    fn boundaries(&self, n: usize) -> Matrix {
        if n == 0 {
            Matrix::zeros(self.delta[0].field(), self.dims[0], 0)
        } else {
            self.delta[n - 1].clone()
        }
    }
    fn cohomology(&self, n: usize) -> usize {
        self.cocycles(n).cols() - self.boundaries(n).rank()
    }
}

fn term_or_zero(res: &Resolution, i: usize) -> Option<&ProjectiveModule> {
    (i < res.len()).then(|| res.term(i))
}

/// Horseshoe resolution of `G` from those of `K` and `X`, as a list of
/// projectives with generators ordered `K` first, and its differentials.
fn horseshoe_resolution(
    approx: &GpApproximation,
    res_k: &Resolution,
    res_x: &Resolution,
    len: usize,
) -> Result<(Vec<ProjectiveModule>, Vec<ModuleHom>), GorensteinError> {
    let alg = approx.g().algebra().clone();
    let f = alg.field();
    let bad = |what: &str| GorensteinError::Inconsistent(format!("horseshoe: {what}"));
    let gens = |i: usize| -> Vec<usize> {
        let mut g = term_or_zero(res_k, i).map(|p| p.generators().to_vec()).unwrap_or_default();
        g.extend(term_or_zero(res_x, i).map(|p| p.generators().to_vec()).unwrap_or_default());
        g
    };
    let terms: Vec<ProjectiveModule> = (0..=len).map(|i| ProjectiveModule::new(&alg, gens(i))).collect();
    let dim_k = |i: usize, v: usize| term_or_zero(res_k, i).map(|p| p.module().dim_at(v)).unwrap_or(0);
    let dim_x = |i: usize, v: usize| term_or_zero(res_x, i).map(|p| p.module().dim_at(v)).unwrap_or(0);
    let concat = |i: usize, v: usize, kpart: Option<Vec<u32>>, xpart: Option<Vec<u32>>| -> Vec<u32> {
        let mut out = kpart.unwrap_or_else(|| vec![0; dim_k(i, v)]);
        out.extend(xpart.unwrap_or_else(|| vec![0; dim_x(i, v)]));
        out
    };

    // augmentation ε_G = (ι ε_K, λ_0)
    let mut images = Vec::new();
    if let Some(pk) = term_or_zero(res_k, 0) {
        images.extend(pk.images_of(&approx.inclusion.compose_after(res_k.augmentation())));
    }
    let mut lambda = None;
    if let Some(px) = term_or_zero(res_x, 0) {
        let l = px.lift_through(res_x.augmentation(), &approx.projection).ok_or_else(|| bad("no lift to G"))?;
        images.extend(px.images_of(&l));
        lambda = Some(l);
    }
    let aug = terms[0].hom_from_images(approx.g(), &images);
    if !aug.is_surjective() {
        return Err(bad("augmentation is not surjective"));
    }

    let mut diffs = Vec::new();
    let mut theta_prev: Option<ModuleHom> = None;
    for i in 1..=len {
        let px = term_or_zero(res_x, i);
        let pk = term_or_zero(res_k, i);
        // θ_i : P_i X → P_{i-1} K
        let theta = match px {
            Some(px) => {
                let dx = res_x.differential(i);
                let m = if i == 1 {
                    let lam = lambda.as_ref().expect("P_0 X exists when P_1 X does");
                    let into_g = lam.compose_after(&dx).neg();
                    approx.inclusion.factor_through_mono(&into_g).ok_or_else(|| bad("image outside K"))?
                } else if let Some(prev) = theta_prev.as_ref() {
                    let into = prev.compose_after(&dx).neg();
                    if i - 2 >= res_k.len() {
                        if !into.is_zero() {
                            return Err(bad("nonzero map into a zero term"));
                        }
                        ModuleHom::zero(px.module().clone(), Module::zero(&alg))
                    } else {
                        res_k.kernel_inclusion(i - 2).factor_through_mono(&into).ok_or_else(|| bad("θ not liftable"))?
                    }
                } else if i - 1 < res_k.len() {
                    ModuleHom::zero(px.module().clone(), res_k.syzygy(i - 1).clone())
                } else {
                    ModuleHom::zero(px.module().clone(), Module::zero(&alg))
                };
                if i - 1 < res_k.len() {
                    Some(px.lift_through(&m, res_k.cover(i - 1)).ok_or_else(|| bad("θ lift failed"))?)
                } else {
                    if !m.is_zero() {
                        return Err(bad("nonzero map into a zero term"));
                    }
                    None
                }
            }
            None => None,
        };
        let mut images = Vec::new();
        if let Some(pk) = pk {
            let dk = res_k.differential(i);
            for (g, &v) in pk.generators().iter().enumerate() {
                let col = dk.block(v).col(pk.generator_coordinate(g));
                images.push(concat(i - 1, v, Some(col), None));
            }
        }
        if let Some(px) = px {
            let dx = res_x.differential(i);
            for (g, &v) in px.generators().iter().enumerate() {
                let c = px.generator_coordinate(g);
                let kpart = theta.as_ref().map(|t| t.block(v).col(c));
                images.push(concat(i - 1, v, kpart, Some(dx.block(v).col(c))));
            }
        }
        let d = terms[i].hom_from_images(terms[i - 1].module(), &images);
        let prev = if i == 1 { aug.clone() } else { diffs.last().cloned().expect("previous differential") };
        if !prev.compose_after(&d).is_zero() || prev.rank() + d.rank() != terms[i - 1].module().total_dim() {
            return Err(bad("not exact"));
        }
        diffs.push(d);
        theta_prev = theta;
        let _ = f;
    }
    Ok((terms, diffs))
}

/// Builds the long exact sequence from the horseshoe resolution of the
/// approximation `0 → K → G → X → 0` and checks it against the engines.
pub fn am_sequence_check(x: &Module, y: &Module, cert: &GorensteinCertificate) -> Result<AmReport, GorensteinError> {
    let d = cert.require(x.algebra())?;
    let top = d + 2;
    let approx = special_approximation(x, cert)?;
    let res_k = resolve::min_projective_resolution(approx.k(), top + 1);
    let res_x = resolve::min_projective_resolution(x, top + 1);
    for r in [&res_k, &res_x] {
        if r.guarded() && r.len() < top + 2 {
            return Err(resolve::ResolveError::Truncated {
                reached: r.len(),
                needed: top + 1,
                size: r.syzygy(r.len()).total_dim(),
            }
            .into());
        }
    }
    let (terms, diffs) = horseshoe_resolution(&approx, &res_k, &res_x, top + 1)?;
    let ck = Cochains::from_hom_complex(HomComplex::new(&res_k, y, top));
    let cx = Cochains::from_hom_complex(HomComplex::new(&res_x, y, top));
    let f = x.field();
    let cg = {
        let mut dims = Vec::new();
        let mut delta = Vec::new();
        for n in 0..=top {
            let m = pullback_matrix(&terms[n], &terms[n + 1], &diffs[n], y);
            dims.push(m.cols());
            delta.push(m);
        }
        Cochains { dims, delta }
    };
    for n in 0..=top {
        if cg.dims[n] != ck.dims[n] + cx.dims[n] {
            return Err(GorensteinError::Inconsistent("horseshoe cochains do not split".into()));
        }
    }
    // maps between cochain groups
    let restrict_k = |n: usize| -> Matrix {
        let mut m = Matrix::zeros(f, ck.dims[n], cg.dims[n]);
        for i in 0..ck.dims[n] {
            m.set(i, i, 1);
        }
        m
    };
    let include_x = |n: usize| -> Matrix {
        let mut m = Matrix::zeros(f, cg.dims[n], cx.dims[n]);
        for i in 0..cx.dims[n] {
            m.set(ck.dims[n] + i, i, 1);
        }
        m
    };
    let connecting = |n: usize| -> Matrix { cg.delta[n].block(ck.dims[n + 1], 0, cx.dims[n + 1], ck.dims[n]) };

    let h_k: Vec<usize> = (0..=top).map(|n| ck.cohomology(n)).collect();
    let h_x: Vec<usize> = (0..=top).map(|n| cx.cohomology(n)).collect();
    let h_g: Vec<usize> = (0..=top).map(|n| cg.cohomology(n)).collect();
    let r_restrict: Vec<usize> =
        (0..=top).map(|n| rank_on_cohomology(&restrict_k(n), &cg.cocycles(n), &ck.boundaries(n))).collect();
    let r_include: Vec<usize> =
        (0..=top).map(|n| rank_on_cohomology(&include_x(n), &cx.cocycles(n), &cg.boundaries(n))).collect();
    let r_conn: Vec<usize> =
        (0..top).map(|n| rank_on_cohomology(&connecting(n), &ck.cocycles(n), &cx.boundaries(n + 1))).collect();

    let ge1 = h_k[0] - r_restrict[0];
    // sequence: GE¹, then for n = 1..top: Ext^n, Êxt^n, GE^{n+1} (the last GE omitted)
    let mut dims = vec![ge1];
    let mut ranks = vec![r_conn[0]];
    for n in 1..=top {
        dims.push(h_x[n]);
        ranks.push(r_include[n]);
        dims.push(h_g[n]);
        if n < top {
            ranks.push(r_restrict[n]);
            dims.push(h_k[n]);
            ranks.push(r_conn[n]);
        }
    }
    let mut exact = true;
    for (t, &dim) in dims.iter().enumerate().take(dims.len() - 1) {
        let incoming = if t == 0 { 0 } else { ranks[t - 1] };
        exact &= dim == incoming + ranks[t];
    }

    let ge: Vec<usize> = (1..=top).map(|k| if k == 1 { ge1 } else { h_k[k - 1] }).collect();
    let ext: Vec<usize> = (1..=top).map(|k| h_x[k]).collect();
    let tate: Vec<usize> = (1..=top).map(|k| h_g[k]).collect();
    let window = DEFAULT_WINDOW.max(top + 2);
    let mut engines_agree = true;
    for k in 1..=top {
        engines_agree &= ge[k - 1] == ge_from_approximation(&approx, y, k)?;
        engines_agree &= ext[k - 1] == resolve::ext_dim(x, y, k)?;
        engines_agree &= tate[k - 1] == tate_ext(x, y, k as isize, cert, window)?;
    }
    Ok(AmReport { degrees: top, ge, ext, tate, ranks, exact, engines_agree })
}
