//! The dualisation functor `F = Hom(−, A)` and what is built from it.

use std::sync::Arc;

use super::{is_gp, GorensteinCertificate, GorensteinError};
use crate::algebra::Algebra;
use crate::linalg::{Coordinates, Matrix};
use crate::modcat::{Module, ModuleHom, ProjectiveModule};
use crate::resolve;

/// `F M = Hom_A(M, A)` as a module over the opposite algebra, together with
/// the bases of `Hom(M, A·e_v)` that give its coordinates.
#[derive(Clone, Debug)]
pub struct DualModule {
    pub source: Module,
    pub module: Module,
    pub bases: Vec<Vec<ModuleHom>>,
    projectives: Vec<ProjectiveModule>,
    coords: Vec<Coordinates>,
}

impl DualModule {
    /// Coordinates of `f: source → A·e_v` in `bases[v]`.
    pub fn coordinates(&self, v: usize, f: &ModuleHom) -> Option<Vec<u32>> {
        self.coords[v].coords(&f.flatten())
    }

    pub fn projective(&self, v: usize) -> &ProjectiveModule {
        &self.projectives[v]
    }
}

fn flat_coordinates(basis: &[ModuleHom], source: &Module, target: &Module) -> Coordinates {
    let f = source.field();
    let len: usize = (0..source.dims().len()).map(|v| source.dim_at(v) * target.dim_at(v)).sum();
    let cols: Vec<Vec<u32>> = basis.iter().map(ModuleHom::flatten).collect();
    Coordinates::new(&Matrix::from_columns(f, len, &cols))
}

/// Right multiplication by arrow `a: s → t`, as a map `A·e_t → A·e_s`.
fn right_mult(alg: &Arc<Algebra>, projectives: &[ProjectiveModule], a: usize) -> ModuleHom {
    let arrow = &alg.quiver().arrows()[a];
    let (s, t) = (arrow.source, arrow.target);
    let elem = alg.arrow_element(a);
    let image: Vec<u32> = alg.paths_between(s, t).iter().map(|&b| elem[b]).collect();
    projectives[t].hom_from_images(projectives[s].module(), &[image])
}

/// `F M`: at vertex `v` of the opposite quiver the space `Hom(M, A·e_v)`,
/// with the reversed arrow `a` acting by post-composition with right
/// multiplication by `a`.
pub fn hom_to_regular(m: &Module) -> Result<DualModule, GorensteinError> {
    let alg = m.algebra().clone();
    let op = alg.opposite();
    let f = alg.field();
    let projectives: Vec<ProjectiveModule> =
        (0..alg.vertex_count()).map(|v| ProjectiveModule::new(&alg, vec![v])).collect();
    let bases: Vec<Vec<ModuleHom>> = projectives.iter().map(|p| m.hom_basis(p.module())).collect::<Result<_, _>>()?;
    let coords: Vec<Coordinates> =
        bases.iter().zip(&projectives).map(|(b, p)| flat_coordinates(b, m, p.module())).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut action = Vec::with_capacity(alg.arrow_count());
    for (a, arrow) in alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let r = right_mult(&alg, &projectives, a);
        let cols: Vec<Vec<u32>> = bases[t]
            .iter()
            .map(|h| coords[s].coords(&r.compose_after(h).flatten()).expect("composite stays in Hom(M, A e_s)"))
            .collect();
        action.push(Matrix::from_columns(f, dims[s], &cols));
    }
    let module = Module::new(op, dims, action)
        .map_err(|e| GorensteinError::Inconsistent(format!("dual module is invalid: {e}")))?;
    Ok(DualModule { source: m.clone(), module, bases, projectives, coords })
}

/// `F h: F Y → F X` for `h: X → Y`, i.e. `f ↦ f ∘ h`.
pub fn dual_morphism(h: &ModuleHom, fx: &DualModule, fy: &DualModule) -> ModuleHom {
    let f = h.source().field();
    let blocks = (0..fy.bases.len())
        .map(|v| {
            let cols: Vec<Vec<u32>> = fy.bases[v]
                .iter()
                .map(|g| fx.coordinates(v, &g.compose_after(h)).expect("composite lies in Hom(X, A e_v)"))
                .collect();
            Matrix::from_columns(f, fx.bases[v].len(), &cols)
        })
        .collect();
    ModuleHom::new(fy.module.clone(), fx.module.clone(), blocks).expect("dual of a morphism is a morphism")
}

/// The unit `η: G → F°F G`, `η(m)(f) = f(m)`.
pub fn unit_map(g: &Module) -> Result<(DualModule, DualModule, ModuleHom), GorensteinError> {
    let fg = hom_to_regular(g)?;
    let ffg = hom_to_regular(&fg.module)?;
    let alg = g.algebra().clone();
    let op = fg.module.algebra().clone();
    let f = alg.field();
    let mut blocks = Vec::with_capacity(alg.vertex_count());
    for w in 0..alg.vertex_count() {
        let target_proj = ffg.projective(w);
        let mut cols = Vec::with_capacity(g.dim_at(w));
        for i in 0..g.dim_at(w) {
            // η(e_i) : F G → A^op e_w, block at v sends f_j to f_j(e_i)
            let hom_blocks: Vec<Matrix> = (0..alg.vertex_count())
                .map(|v| {
                    let rows = target_proj.module().dim_at(v);
                    let mut m = Matrix::zeros(f, rows, fg.bases[v].len());
                    let op_paths = op.paths_between(w, v);
                    for (j, fj) in fg.bases[v].iter().enumerate() {
                        let val = fj.block(w).col(i);
                        for (k, &b) in alg.paths_between(v, w).iter().enumerate() {
                            let row = op.position(b);
                            debug_assert_eq!(op_paths[row], b);
                            m.set(row, j, val[k]);
                        }
                    }
                    m
                })
                .collect();
            let eta_m = ModuleHom::new(fg.module.clone(), target_proj.module().clone(), hom_blocks)
                .map_err(|e| GorensteinError::Inconsistent(format!("evaluation is not a morphism: {e}")))?;
            cols.push(
                ffg.coordinates(w, &eta_m)
                    .ok_or_else(|| GorensteinError::Inconsistent("evaluation outside the dual basis".into()))?,
            );
        }
        blocks.push(Matrix::from_columns(f, ffg.bases[w].len(), &cols));
    }
    let eta = ModuleHom::new(g.clone(), ffg.module.clone(), blocks)
        .map_err(|e| GorensteinError::Inconsistent(format!("unit is not a morphism: {e}")))?;
    Ok((fg, ffg, eta))
}

/// `0 → G → Q⁰ → Q¹ → …` with projective terms.
#[derive(Clone, Debug)]
pub struct GpCoresolution {
    pub module: Module,
    pub terms: Vec<ProjectiveModule>,
    /// `G → Q⁰`.
    pub coaugmentation: ModuleHom,
    /// `differentials[j]: Q^j → Q^{j+1}`.
    pub differentials: Vec<ModuleHom>,
}

impl GpCoresolution {
    /// Injectivity of the coaugmentation and exactness at `Q⁰ … Q^{len-2}`.
    pub fn is_exact(&self) -> bool {
        if !self.coaugmentation.is_injective() {
            return false;
        }
        let mut incoming = self.coaugmentation.clone();
        for (j, d) in self.differentials.iter().enumerate() {
            if !d.compose_after(&incoming).is_zero() {
                return false;
            }
            if incoming.rank() + d.rank() != self.terms[j].module().total_dim() {
                return false;
            }
            incoming = d.clone();
        }
        true
    }

    /// `Q^j ↠ G^{j+1} = coker(Q^{j-1} → Q^j)`.
    pub fn cosyzygy(&self, j: usize) -> (Module, ModuleHom) {
        let incoming = if j == 0 { &self.coaugmentation } else { &self.differentials[j - 1] };
        incoming.cokernel()
    }
}

/// Transports a projective module in arbitrary coordinates to the standard
/// form, returning the standard module and an isomorphism onto the original.
fn standardize(q: &Module) -> Result<(ProjectiveModule, ModuleHom), GorensteinError> {
    let cover = q.projective_cover();
    if !cover.epi.is_isomorphism() {
        return Err(GorensteinError::Inconsistent("F° of a projective is not projective".into()));
    }
    Ok((cover.projective, cover.epi))
}

/// Coresolution of a Gorenstein projective `G` through `depth` terms:
/// resolve `F G` over the opposite algebra and apply `F°`, then identify
/// `F°F G` with `G` through the unit.
pub fn gp_coresolution(
    g: &Module,
    depth: usize,
    cert: &GorensteinCertificate,
) -> Result<GpCoresolution, GorensteinError> {
    if !is_gp(g, cert)? {
        return Err(GorensteinError::NotGorensteinProjective);
    }
    let (fg, ffg, eta) = unit_map(g)?;
    if !eta.is_isomorphism() {
        return Err(GorensteinError::Inconsistent("F°F G is not isomorphic to G via the unit".into()));
    }
    let res = resolve::min_projective_resolution(&fg.module, depth);
    if res.guarded() && res.len() < depth + 1 {
        return Err(resolve::ResolveError::Truncated {
            reached: res.len(),
            needed: depth,
            size: res.syzygy(res.len()).total_dim(),
        }
        .into());
    }
    let n = res.len();
    let duals: Vec<DualModule> = (0..n).map(|j| hom_to_regular(res.term(j).module())).collect::<Result<_, _>>()?;
    let mut terms = Vec::with_capacity(n);
    let mut isos = Vec::with_capacity(n);
    for d in &duals {
        let (p, iso) = standardize(&d.module)?;
        terms.push(p);
        isos.push(iso);
    }
    // G → F°F G → F°P'_0 → standard Q⁰
    let coaugmentation = if n == 0 {
        ModuleHom::zero(g.clone(), Module::zero(g.algebra()))
    } else {
        let into = dual_morphism(res.augmentation(), &duals[0], &ffg);
        let inv = isos[0].inverse().expect("isomorphism");
        inv.compose_after(&into.compose_after(&eta))
    };
    let mut differentials = Vec::with_capacity(n.saturating_sub(1));
    for j in 1..n {
        let d = dual_morphism(&res.differential(j), &duals[j], &duals[j - 1]);
        let inv = isos[j].inverse().expect("isomorphism");
        differentials.push(inv.compose_after(&d.compose_after(&isos[j - 1])));
    }
    let out = GpCoresolution { module: g.clone(), terms, coaugmentation, differentials };
    if !out.is_exact() {
        return Err(GorensteinError::Inconsistent("coresolution is not exact".into()));
    }
    Ok(out)
}

/// Nakayama functor `ν = D ∘ Hom(−, A)`.
pub fn nakayama(m: &Module) -> Result<Module, GorensteinError> {
    Ok(hom_to_regular(m)?.module.dualize())
}
