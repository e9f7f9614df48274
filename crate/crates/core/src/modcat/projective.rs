//! Finitely generated projectives `⊕_g A·e_{v_g}` with explicit generators.

use std::sync::Arc;

use super::{Module, ModuleHom};
use crate::algebra::Algebra;
use crate::linalg::{Matrix, Splitting};

/// `⊕_g A·e_{v_g}`. At vertex `w` the coordinates are the paths `v_g → w`,
/// concatenated over the generators in order.
#[derive(Clone, Debug)]
pub struct ProjectiveModule {
    gens: Vec<usize>,
    module: Module,
    offsets: Vec<Vec<usize>>,
}

impl PartialEq for ProjectiveModule {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.module == other.module
    }
}

impl ProjectiveModule {
    pub fn new(algebra: &Arc<Algebra>, gens: Vec<usize>) -> Self {
        let f = algebra.field();
        let vc = algebra.vertex_count();
        let mut offsets = vec![Vec::with_capacity(gens.len()); vc];
        let mut dims = vec![0; vc];
        for (w, off) in offsets.iter_mut().enumerate() {
            for &v in &gens {
                off.push(dims[w]);
                dims[w] += algebra.paths_between(v, w).len();
            }
        }
        let action = algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let (s, t) = (arrow.source, arrow.target);
                let mut m = Matrix::zeros(f, dims[t], dims[s]);
                let elem = algebra.arrow_element(a);
                for (g, &v) in gens.iter().enumerate() {
                    for (k, &p) in algebra.paths_between(v, s).iter().enumerate() {
                        for (b, &c) in elem.iter().enumerate() {
                            if c == 0 {
                                continue;
                            }
                            for &(r, coef) in algebra.mult_basis(b, p) {
                                let row = offsets[t][g] + algebra.position(r);
                                let val = f.add(m.get(row, offsets[s][g] + k), f.mul(c, coef));
                                m.set(row, offsets[s][g] + k, val);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        let module = Module::built(algebra.clone(), dims, action);
        ProjectiveModule { gens, module, offsets }
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        ProjectiveModule::new(algebra, Vec::new())
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }
    pub fn module(&self) -> &Module {
        &self.module
    }
    pub fn algebra(&self) -> &Arc<Algebra> {
        self.module.algebra()
    }
    pub fn rank(&self) -> usize {
        self.gens.len()
    }
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Multiplicity of each indecomposable projective.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.algebra().vertex_count()];
        for &v in &self.gens {
            m[v] += 1;
        }
        m
    }

    /// Offset of generator `g`'s block at vertex `w`.
    pub fn offset(&self, w: usize, g: usize) -> usize {
        self.offsets[w][g]
    }

    /// Coordinate of generator `g` itself (the idempotent `e_{v_g}`).
    pub fn generator_coordinate(&self, g: usize) -> usize {
        let v = self.gens[g];
        let alg = self.algebra();
        self.offsets[v][g] + alg.position(alg.idempotent(v))
    }

    /// The map sending generator `g` to `images[g] ∈ N_{v_g}`.
    pub fn hom_from_images(&self, target: &Module, images: &[Vec<u32>]) -> ModuleHom {
        let alg = self.algebra().clone();
        let f = alg.field();
        let blocks = (0..alg.vertex_count())
            .map(|w| {
                let mut m = Matrix::zeros(f, target.dim_at(w), self.module.dim_at(w));
                for (g, &v) in self.gens.iter().enumerate() {
                    for (k, &p) in alg.paths_between(v, w).iter().enumerate() {
                        let col = target.path_action(p).mul_vec(&images[g]);
                        for (r, &x) in col.iter().enumerate() {
                            m.set(r, self.offsets[w][g] + k, x);
                        }
                    }
                }
                m
            })
            .collect();
        ModuleHom::built(self.module.clone(), target.clone(), blocks)
    }

    /// Generator images of a map out of this projective.
    pub fn images_of(&self, h: &ModuleHom) -> Vec<Vec<u32>> {
        (0..self.gens.len()).map(|g| h.block(self.gens[g]).col(self.generator_coordinate(g))).collect()
    }

    /// Linear map from generator images `(y_g) ∈ ⊕ N_{v_g}` (laid out at
    /// `var_off`) to the value at `x ∈ P_w` of the induced morphism.
    pub fn evaluation_at(&self, w: usize, x: &[u32], target: &Module, var_off: &[usize], nvars: usize) -> Matrix {
        let alg = self.algebra();
        let f = alg.field();
        let mut acc = Matrix::zeros(f, target.dim_at(w), nvars);
        for (g, &v) in self.gens.iter().enumerate() {
            let nv = target.dim_at(v);
            if nv == 0 {
                continue;
            }
            for (k, &p) in alg.paths_between(v, w).iter().enumerate() {
                let c = x[self.offsets[w][g] + k];
                if c == 0 {
                    continue;
                }
                let rho = target.path_action(p);
                for i in 0..rho.rows() {
                    for j in 0..nv {
                        let y = rho.get(i, j);
                        if y != 0 {
                            let col = var_off[g] + j;
                            acc.set(i, col, f.add(acc.get(i, col), f.mul(c, y)));
                        }
                    }
                }
            }
        }
        acc
    }

    /// A lift `P → N` of `map: P → M` through the surjection `epi: N → M`.
    pub fn lift_through(&self, map: &ModuleHom, epi: &ModuleHom) -> Option<ModuleHom> {
        let images = self.images_of(map);
        let mut lifted = Vec::with_capacity(images.len());
        for (g, y) in images.iter().enumerate() {
            lifted.push(epi.block(self.gens[g]).solve(y)?);
        }
        Some(self.hom_from_images(epi.source(), &lifted))
    }
}

/// A minimal projective cover `P ↠ M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: ProjectiveModule,
    pub epi: ModuleHom,
}

pub(super) fn minimal_cover(m: &Module) -> ProjectiveCover {
    let alg = m.algebra().clone();
    let mut gens = Vec::new();
    let mut images = Vec::new();
    for (v, span) in m.radical_spans().iter().enumerate() {
        let split = Splitting::new(span);
        for &j in &split.complement {
            gens.push(v);
            let mut e = vec![0u32; m.dim_at(v)];
            e[j] = 1;
            images.push(e);
        }
    }
    let projective = ProjectiveModule::new(&alg, gens);
    let epi = projective.hom_from_images(m, &images);
    assert!(epi.is_surjective(), "generators must span the module");
    ProjectiveCover { projective, epi }
}
