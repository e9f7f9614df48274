//! Brute-force oracles and module corpora.
//!
//! The oracles here deliberately avoid the main engine's constructions:
//! Hom spaces come from the intertwiner equations, Ext from injective
//! coresolutions, and Gorenstein approximations from left
//! `add(A)`-approximations and chain-map lifting rather than from duality and
//! the comparison lemma.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::gorenstein::{GorensteinCertificate, GorensteinError};
use crate::linalg::Matrix;
use crate::modcat::{combine, pushout, solve_in_span, Module, ModuleError, ModuleHom, ProjectiveModule};
use crate::resolve::{self, ResolveError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("dimension cap {cap} is below the largest projective dimension {needed}")]
    CapTooSmall { cap: usize, needed: usize },
    #[error("oracle construction failed: {0}")]
    Failed(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error(transparent)]
    Gorenstein(#[from] GorensteinError),
}

impl From<Box<ResolveError>> for OracleError {
    fn from(e: Box<ResolveError>) -> Self {
        OracleError::Resolve(*e)
    }
}

/// `dim Ext^i(M, N)` from an injective coresolution of `N`.
pub fn ext_oracle(m: &Module, n: &Module, i: usize) -> Result<usize, OracleError> {
    Ok(resolve::ext_via_injectives(m, n, i)?)
}

fn hom_basis(m: &Module, n: &Module) -> Result<Vec<ModuleHom>, OracleError> {
    Ok(m.hom_basis_intertwiner(n)?)
}

/// Some `h: B → C` with `h ∘ a = b`, for `a: A → B` and `b: A → C`.
fn extend_along(a: &ModuleHom, b: &ModuleHom) -> Result<Option<ModuleHom>, OracleError> {
    let basis = hom_basis(a.target(), b.target())?;
    let composites: Vec<ModuleHom> = basis.iter().map(|h| h.compose_after(a)).collect();
    Ok(solve_in_span(&composites, b).map(|c| combine(&basis, &c, a.target(), b.target())))
}

/// The left `add(A)`-approximation `G → ⊕_v P_v^{dim Hom(G, P_v)}`.
fn left_projective_approximation(g: &Module) -> Result<(ProjectiveModule, ModuleHom), OracleError> {
    let alg = g.algebra().clone();
    let mut gens = Vec::new();
    let mut maps = Vec::new();
    for v in 0..alg.vertex_count() {
        let p = Module::vertex_projective(&alg, v)?;
        for h in hom_basis(g, &p)? {
            gens.push(v);
            maps.push(h);
        }
    }
    let q = ProjectiveModule::new(&alg, gens);
    let f = alg.field();
    let blocks: Vec<Matrix> = (0..alg.vertex_count())
        .map(|w| {
            let parts: Vec<&Matrix> = maps.iter().map(|h| h.block(w)).collect();
            Matrix::vstack(&parts, f, g.dim_at(w))
        })
        .collect();
    let into = ModuleHom::new(g.clone(), q.module().clone(), blocks)?;
    Ok((q, into))
}

/// `0 → K → G → X → 0` with `G` Gorenstein projective and `pd K < ∞`,
/// built by the Auslander–Buchweitz construction.
#[derive(Clone, Debug)]
pub struct OracleApproximation {
    pub inclusion: ModuleHom,
    pub projection: ModuleHom,
}

pub fn oracle_approximation(x: &Module, cert: &GorensteinCertificate) -> Result<OracleApproximation, OracleError> {
    let d = cert.require(x.algebra())?;
    let fail = |s: &str| OracleError::Failed(s.to_string());
    if d == 0 {
        let (_, inc) = ModuleHom::identity(x).kernel();
        return Ok(OracleApproximation { inclusion: inc, projection: ModuleHom::identity(x) });
    }
    let res = resolve::min_projective_resolution(x, d);
    if res.len() <= d {
        // pd X < d: the projective cover already works with G = P_0 ⊕ 0
        let (_, inc) = res.augmentation().kernel();
        return Ok(OracleApproximation { inclusion: inc, projection: res.augmentation().clone() });
    }
    let omega = res.syzygy(d).clone();
    // coresolution 0 → Ω → Q^0 → … → Q^{d-1} by left approximations
    let mut coaug = Vec::new(); // maps G^j → Q^j
    let mut to_next = Vec::new(); // Q^j ↠ G^{j+1}
    let mut g = omega.clone();
    for _ in 0..d {
        let (_, into) = left_projective_approximation(&g)?;
        if !into.is_injective() {
            return Err(fail("syzygy is not torsionless"));
        }
        let (next, proj) = into.cokernel();
        coaug.push(into);
        to_next.push(proj);
        g = next;
    }
    // δ_j = coaug[j+1] ∘ to_next[j]: Q^j → Q^{j+1}
    // chain map f_{d-1-j}: Q^j → P_{d-1-j}
    let mut f_prev = extend_along(&coaug[0], res.kernel_inclusion(d - 1))?.ok_or_else(|| fail("no extension"))?;
    for j in 1..d {
        let delta = coaug[j].compose_after(&to_next[j - 1]);
        let target = res.differential(d - j).compose_after(&f_prev);
        // factor through Q^{j-1} ↠ G^j, then extend along G^j ↪ Q^j
        let on_cosyzygy =
            to_next[j - 1].factor_through_epi(&target).ok_or_else(|| fail("chain map does not descend"))?;
        let f_next = extend_along(&coaug[j], &on_cosyzygy)?.ok_or_else(|| fail("no extension"))?;
        debug_assert!(f_next.compose_after(&delta) == target);
        f_prev = f_next;
    }
    // G' = G^d = coker(Q^{d-2} → Q^{d-1}), with G' → X induced by ε ∘ f_0
    let to_x = res.augmentation().compose_after(&f_prev);
    let bar = to_next[d - 1].factor_through_epi(&to_x).ok_or_else(|| fail("augmentation does not descend"))?;
    let p0 = res.term(0).module().clone();
    let sum = Module::direct_sum(&[bar.source(), &p0]);
    let projection = bar.compose_after(&sum.projections[0]).add(&res.augmentation().compose_after(&sum.projections[1]));
    if !projection.is_surjective() {
        return Err(fail("approximation is not surjective"));
    }
    let (k, inclusion) = projection.kernel();
    let rk = resolve::min_projective_resolution(&k, d);
    if rk.truncated() {
        return Err(fail("kernel has infinite projective dimension"));
    }
    Ok(OracleApproximation { inclusion, projection })
}

/// `dim GE^k(X, Y)` through [`oracle_approximation`].
pub fn ge_oracle(x: &Module, y: &Module, k: usize, cert: &GorensteinCertificate) -> Result<usize, OracleError> {
    cert.require(x.algebra())?;
    if k == 0 {
        return Ok(hom_basis(x, y)?.len());
    }
    let ap = oracle_approximation(x, cert)?;
    let kmod = ap.inclusion.source();
    if k == 1 {
        let from_g = hom_basis(ap.inclusion.target(), y)?;
        let f = x.field();
        let from_k = hom_basis(kmod, y)?.len();
        if from_g.is_empty() || from_k == 0 {
            return Ok(from_k);
        }
        let cols: Vec<Vec<u32>> = from_g.iter().map(|h| h.compose_after(&ap.inclusion).flatten()).collect();
        let rank = Matrix::from_columns(f, cols[0].len(), &cols).rank();
        return Ok(from_k - rank);
    }
    ext_oracle(kmod, y, k - 1)
}

/// A named list of modules over one algebra.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub algebra: Arc<Algebra>,
    pub seed: u64,
    pub dim_cap: usize,
    pub modules: Vec<(String, Module)>,
}

impl Corpus {
    pub fn get(&self, name: &str) -> Option<&Module> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
    pub fn names(&self) -> Vec<&str> {
        self.modules.iter().map(|(n, _)| n.as_str()).collect()
    }
}

fn push_unique(list: &mut Vec<(String, Module)>, name: String, m: Module, cap: usize) {
    if m.is_zero() || m.total_dim() > cap || list.iter().any(|(_, n)| *n == m) {
        return;
    }
    list.push((name, m));
}

/// Middle term of the extension of `b` by `a` classified by a random map
/// `Ω b → a`.
pub fn random_extension<R: Rng + ?Sized>(a: &Module, b: &Module, rng: &mut R) -> Result<Module, OracleError> {
    let (omega, inc) = b.syzygy_with_inclusion();
    let basis = omega.hom_basis(a)?;
    let f = a.field();
    let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..f.p())).collect();
    let phi = combine(&basis, &coeffs, &omega, a);
    Ok(pushout(&inc, &phi)?.object)
}

/// Cokernel of a random map `P_w → P_u ⊕ P_v`.
pub fn random_quotient<R: Rng + ?Sized>(alg: &Arc<Algebra>, rng: &mut R) -> Module {
    let n = alg.vertex_count();
    let target = ProjectiveModule::new(alg, vec![rng.gen_range(0..n), rng.gen_range(0..n)]);
    let w = rng.gen_range(0..n);
    let source = ProjectiveModule::new(alg, vec![w]);
    let f = alg.field();
    let dim = target.module().dim_at(w);
    let image: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..f.p())).collect();
    source.hom_from_images(target.module(), &[image]).cokernel().0
}

/// Deterministic random modules of total dimension at most `dim_cap`.
pub fn random_modules(alg: &Arc<Algebra>, count: usize, seed: u64, dim_cap: usize) -> Result<Vec<Module>, OracleError> {
    let structural = structural_modules(alg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 100 * count.max(1) {
            return Err(OracleError::Failed(format!("could not sample {count} modules within dimension {dim_cap}")));
        }
        let m = if rng.gen_bool(0.5) {
            random_quotient(alg, &mut rng)
        } else {
            let a = &structural[rng.gen_range(0..structural.len())].1;
            let b = &structural[rng.gen_range(0..structural.len())].1;
            random_extension(a, b, &mut rng)?
        };
        if !m.is_zero() && m.total_dim() <= dim_cap {
            out.push(m);
        }
    }
    Ok(out)
}

fn vertex_name(alg: &Algebra, v: usize) -> &str {
    &alg.quiver().vertices()[v]
}

fn structural_modules(alg: &Arc<Algebra>) -> Result<Vec<(String, Module)>, OracleError> {
    let n = alg.vertex_count();
    let mut out = vec![("A".to_string(), Module::regular(alg))];
    for v in 0..n {
        out.push((format!("P({})", vertex_name(alg, v)), Module::vertex_projective(alg, v)?));
    }
    for v in 0..n {
        out.push((format!("S({})", vertex_name(alg, v)), Module::simple(alg, v)));
    }
    for v in 0..n {
        out.push((format!("I({})", vertex_name(alg, v)), Module::vertex_injective(alg, v)?));
    }
    // radical and socle layers that are not already listed
    for v in 0..n {
        let name = vertex_name(alg, v);
        let mut layer = Module::vertex_projective(alg, v)?;
        for k in 1.. {
            layer = layer.radical().0;
            if layer.is_zero() {
                break;
            }
            push_unique(&mut out, format!("rad^{k} P({name})"), layer.clone(), usize::MAX);
        }
        let mut quot = Module::vertex_injective(alg, v)?;
        for k in 1.. {
            let (_, soc) = quot.socle();
            quot = soc.cokernel().0;
            if quot.is_zero() {
                break;
            }
            push_unique(&mut out, format!("I({name})/soc^{k}"), quot.clone(), usize::MAX);
        }
    }
    Ok(out)
}

/// Structural modules (regular, vertex projectives, simples, injectives,
/// radical and socle layers) plus random extensions between them, all of
/// total dimension at most `dim_cap`.
pub fn generate_corpus(alg: &Arc<Algebra>, seed: u64, dim_cap: usize) -> Result<Corpus, OracleError> {
    let needed = (0..alg.vertex_count())
        .map(|v| Module::vertex_projective(alg, v).map(|p| p.total_dim()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    if dim_cap < needed {
        return Err(OracleError::CapTooSmall { cap: dim_cap, needed });
    }
    let structural = structural_modules(alg)?;
    let modules: Vec<(String, Module)> =
        structural.into_iter().filter(|(_, m)| !m.is_zero() && m.total_dim() <= dim_cap).collect();
    let mut modules = modules;
    let base: Vec<(String, Module)> = modules.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut made = 0;
    for i in 0..base.len() {
        for j in 0..base.len() {
            let (na, a) = &base[i];
            let (nb, b) = &base[j];
            if a.total_dim() + b.total_dim() > dim_cap || a.total_dim() > 2 || b.total_dim() > 2 {
                continue;
            }
            let e = random_extension(a, b, &mut rng)?;
            let before = modules.len();
            push_unique(&mut modules, format!("E[{na} -> ? -> {nb}]"), e, dim_cap);
            made += modules.len() - before;
            if made >= 6 {
                break;
            }
        }
    }
    Ok(Corpus { algebra: alg.clone(), seed, dim_cap, modules })
}

#[cfg(test)]
mod tests;
