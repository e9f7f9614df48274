//! Quiver-with-relations presentations compiled to finite-dimensional algebras.
//!
//! Paths are stored in traversal order: `[a, b]` means "first `a`, then `b`",
//! which as an algebra element is the composite `b·a`. Left modules are then
//! ordinary (covariant) quiver representations.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, Weak};

use thiserror::Error;

use crate::linalg::{Matrix, PrimeField};

pub mod builtin;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("quiver has no vertices")]
    EmptyQuiver,
    #[error("nilpotency bound must be at least 1")]
    ZeroBound,
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("relation {relation} uses unknown arrow `{arrow}`")]
    UnknownArrow { relation: usize, arrow: String },
    #[error("relation {relation}: term {term} has an empty path")]
    EmptyPath { relation: usize, term: usize },
    #[error("relation {relation}: term {term} is not a composable path")]
    NotComposable { relation: usize, term: usize },
    #[error("relation {relation}: terms are not parallel paths")]
    NonParallel { relation: usize },
    #[error("relation {relation} has no nonzero coefficient")]
    ZeroRelation { relation: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, AlgebraError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(AlgebraError::EmptyQuiver);
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(AlgebraError::DuplicateVertex(v.clone()));
            }
        }
        let lookup = |arrow: &str, v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| AlgebraError::UnknownVertex { arrow: arrow.to_string(), vertex: v.to_string() })
        };
        let mut names = BTreeSet::new();
        let mut out = Vec::new();
        for (name, from, to) in arrows {
            if !names.insert(name.clone()) {
                return Err(AlgebraError::DuplicateArrow(name));
            }
            let source = lookup(&name, &from)?;
            let target = lookup(&name, &to)?;
            out.push(Arrow { name, source, target });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }
}

/// A path in a quiver; `arrows` is in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    fn sort_key(&self) -> (usize, usize, Vec<usize>) {
        (self.arrows.len(), if self.arrows.is_empty() { self.source } else { 0 }, self.arrows.clone())
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }

    pub fn label(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", quiver.vertices[self.source])
        } else {
            self.arrows.iter().map(|&a| quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
        }
    }
}

/// A linear combination of parallel paths; coefficients are residues mod p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(u32, Path)>,
}

impl Relation {
    pub fn label(&self, quiver: &Quiver, field: PrimeField) -> String {
        self.terms
            .iter()
            .map(|(c, p)| format!("{}*{}", field.signed(*c), p.label(quiver)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn reversed(&self) -> Relation {
        Relation { terms: self.terms.iter().map(|(c, p)| (*c, p.reversed())).collect() }
    }
}

/// Relation given by arrow names, before validation.
#[derive(Clone, Debug, Default)]
pub struct RelationSpec {
    pub terms: Vec<(i64, Vec<String>)>,
}

impl RelationSpec {
    /// Shorthand: `RelationSpec::parse(&[(1, "a.b"), (-1, "c")])`.
    pub fn parse(terms: &[(i64, &str)]) -> Self {
        RelationSpec {
            terms: terms
                .iter()
                .map(|(c, p)| (*c, p.split('.').filter(|s| !s.is_empty()).map(str::to_string).collect()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraPresentation {
    pub field: PrimeField,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub nilpotency_bound: usize,
}

impl AlgebraPresentation {
    pub fn new(
        field: PrimeField,
        quiver: Quiver,
        relations: &[RelationSpec],
        nilpotency_bound: usize,
    ) -> Result<Self, AlgebraError> {
        if nilpotency_bound == 0 {
            return Err(AlgebraError::ZeroBound);
        }
        let mut out = Vec::new();
        for (ri, spec) in relations.iter().enumerate() {
            let mut terms = Vec::new();
            for (ti, (coef, names)) in spec.terms.iter().enumerate() {
                if names.is_empty() {
                    return Err(AlgebraError::EmptyPath { relation: ri, term: ti });
                }
                let mut arrows = Vec::new();
                for n in names {
                    let a = quiver
                        .arrow_index(n)
                        .ok_or_else(|| AlgebraError::UnknownArrow { relation: ri, arrow: n.clone() })?;
                    arrows.push(a);
                }
                for w in arrows.windows(2) {
                    if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                        return Err(AlgebraError::NotComposable { relation: ri, term: ti });
                    }
                }
                let path = Path {
                    source: quiver.arrows[arrows[0]].source,
                    target: quiver.arrows[*arrows.last().unwrap()].target,
                    arrows,
                };
                let c = field.reduce(*coef);
                terms.push((c, path));
            }
            if let Some(first) = terms.first() {
                let (s, t) = (first.1.source, first.1.target);
                if terms.iter().any(|(_, p)| p.source != s || p.target != t) {
                    return Err(AlgebraError::NonParallel { relation: ri });
                }
            }
            // merge repeated paths
            let mut merged: Vec<(u32, Path)> = Vec::new();
            for (c, p) in terms {
                if let Some(slot) = merged.iter_mut().find(|(_, q)| *q == p) {
                    slot.0 = field.add(slot.0, c);
                } else {
                    merged.push((c, p));
                }
            }
            merged.retain(|(c, _)| *c != 0);
            if merged.is_empty() {
                return Err(AlgebraError::ZeroRelation { relation: ri });
            }
            out.push(Relation { terms: merged });
        }
        Ok(AlgebraPresentation { field, quiver, relations: out, nilpotency_bound })
    }

    /// All paths of length below `bound`, ordered length-lexicographically.
    fn paths_below(&self, bound: usize) -> Vec<Path> {
        let q = &self.quiver;
        let mut out: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
        let mut frontier: Vec<Path> = out.clone();
        for _ in 1..bound {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { source: p.source, target: a.target, arrows });
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort_by_key(Path::sort_key);
        out
    }

    /// Reduced echelon form of the ideal span inside paths of length `< bound`.
    /// Columns are indexed in descending path order.
    fn ideal_echelon(&self, paths: &[Path], bound: usize) -> (Matrix, Vec<usize>) {
        let n = paths.len();
        let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let col_of = |i: usize| n - 1 - i;
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for rel in &self.relations {
            let (s, t) = (rel.terms[0].1.source, rel.terms[0].1.target);
            for u in paths.iter().filter(|u| u.source == t) {
                for w in paths.iter().filter(|w| w.target == s) {
                    let mut v = vec![0u32; n];
                    let mut any = false;
                    for (c, p) in &rel.terms {
                        let len = w.len() + p.len() + u.len();
                        if len >= bound {
                            continue;
                        }
                        let mut arrows = w.arrows.clone();
                        arrows.extend(&p.arrows);
                        arrows.extend(&u.arrows);
                        let path = Path { source: w.source, target: u.target, arrows };
                        let col = col_of(index[&path]);
                        v[col] = self.field.add(v[col], *c);
                        any = true;
                    }
                    if any && v.iter().any(|&x| x != 0) {
                        gens.push(v);
                    }
                }
            }
        }
        let rows: Vec<&Vec<u32>> = gens.iter().collect();
        let mut m = Matrix::zeros(self.field, rows.len(), n);
        for (r, g) in rows.iter().enumerate() {
            for (c, &x) in g.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        let ech = m.echelon();
        let rank = ech.pivots.len();
        (ech.reduced.block(0, 0, rank, n), ech.pivots)
    }

    pub fn compile(&self) -> Result<Arc<Algebra>, AlgebraError> {
        Ok(Arc::new(Algebra::from_presentation(self.clone())))
    }

    /// Paths of length exactly N that lie outside the ideal generated by the
    /// relations, i.e. paths killed only by the J^N truncation.
    pub fn truncation_warnings(&self) -> Vec<String> {
        let bound = self.nilpotency_bound + 1;
        let paths = self.paths_below(bound);
        let (red, pivots) = self.ideal_echelon(&paths, bound);
        let n = paths.len();
        let leading: BTreeSet<usize> = pivots.iter().map(|&c| n - 1 - c).collect();
        let mut out = Vec::new();
        for (i, p) in paths.iter().enumerate() {
            if p.len() != self.nilpotency_bound {
                continue;
            }
            // in the ideal iff the reduction of p is zero: p is leading and its
            // row has no other entries
            let in_ideal = leading.contains(&i) && {
                let row = pivots.iter().position(|&c| c == n - 1 - i).unwrap();
                (0..n).filter(|&c| c != n - 1 - i).all(|c| red.get(row, c) == 0)
            };
            if !in_ideal {
                out.push(p.label(&self.quiver));
            }
        }
        out
    }
}

/// A finite-dimensional algebra with an explicit path basis.
pub struct Algebra {
    field: PrimeField,
    quiver: Quiver,
    relations: Vec<Relation>,
    nilpotency_bound: usize,
    basis: Vec<Path>,
    /// `mult[i * dim + j]` = sparse coordinates of `b_i · b_j`.
    mult: Vec<Vec<(usize, u32)>>,
    idempotents: Vec<usize>,
    arrow_elems: Vec<Vec<u32>>,
    paths_between: Vec<Vec<Vec<usize>>>,
    position: Vec<usize>,
    fingerprint: u64,
    presentation: Option<AlgebraPresentation>,
    opposite: Mutex<Weak<Algebra>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("p", &self.field.p())
            .field("vertices", &self.quiver.vertices)
            .field("dimension", &self.dim())
            .finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.field == other.field
            && self.basis == other.basis
            && self.mult == other.mult
    }
}
impl Eq for Algebra {}

impl Algebra {
    fn from_presentation(pres: AlgebraPresentation) -> Algebra {
        let bound = pres.nilpotency_bound;
        let field = pres.field;
        let paths = pres.paths_below(bound);
        let n = paths.len();
        let (red, pivots) = pres.ideal_echelon(&paths, bound);
        let col_of = |i: usize| n - 1 - i;
        let mut leading_row: HashMap<usize, usize> = HashMap::new();
        for (r, &c) in pivots.iter().enumerate() {
            leading_row.insert(n - 1 - c, r);
        }
        let basis_idx: Vec<usize> = (0..n).filter(|i| !leading_row.contains_key(i)).collect();
        let mut basis_pos = vec![usize::MAX; n];
        for (k, &i) in basis_idx.iter().enumerate() {
            basis_pos[i] = k;
        }
        let dim = basis_idx.len();
        let path_index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();

        let reduce = |arrows: &[usize], source: usize, target: usize| -> Vec<u32> {
            let mut v = vec![0u32; dim];
            if arrows.len() >= bound {
                return v;
            }
            let p = Path { source, target, arrows: arrows.to_vec() };
            let i = path_index[&p];
            if let Some(&r) = leading_row.get(&i) {
                for &j in &basis_idx {
                    let x = red.get(r, col_of(j));
                    if x != 0 {
                        v[basis_pos[j]] = field.neg(x);
                    }
                }
            } else {
                v[basis_pos[i]] = 1;
            }
            v
        };

        let basis: Vec<Path> = basis_idx.iter().map(|&i| paths[i].clone()).collect();
        let mut mult = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let (bi, bj) = (&basis[i], &basis[j]);
                if bi.source != bj.target {
                    continue;
                }
                let mut arrows = bj.arrows.clone();
                arrows.extend(&bi.arrows);
                let v = reduce(&arrows, bj.source, bi.target);
                mult[i * dim + j] = v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, &x)| (k, x)).collect();
            }
        }
        let vcount = pres.quiver.vertex_count();
        let idempotents: Vec<usize> = (0..vcount)
            .map(|v| basis.iter().position(|b| b.is_trivial() && b.source == v).expect("trivial path survives"))
            .collect();
        let arrow_elems =
            pres.quiver.arrows.iter().enumerate().map(|(ai, a)| reduce(&[ai], a.source, a.target)).collect();
        Algebra::assemble(
            field,
            pres.quiver.clone(),
            pres.relations.clone(),
            bound,
            basis,
            mult,
            idempotents,
            arrow_elems,
            Some(pres),
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        field: PrimeField,
        quiver: Quiver,
        relations: Vec<Relation>,
        nilpotency_bound: usize,
        basis: Vec<Path>,
        mult: Vec<Vec<(usize, u32)>>,
        idempotents: Vec<usize>,
        arrow_elems: Vec<Vec<u32>>,
        presentation: Option<AlgebraPresentation>,
    ) -> Algebra {
        let vcount = quiver.vertex_count();
        let mut paths_between = vec![vec![Vec::new(); vcount]; vcount];
        let mut position = vec![0; basis.len()];
        for (i, b) in basis.iter().enumerate() {
            let list: &mut Vec<usize> = &mut paths_between[b.source][b.target];
            position[i] = list.len();
            list.push(i);
        }
        let mut h = DefaultHasher::new();
        field.hash(&mut h);
        quiver.hash(&mut h);
        basis.hash(&mut h);
        mult.hash(&mut h);
        Algebra {
            field,
            quiver,
            relations,
            nilpotency_bound,
            basis,
            mult,
            idempotents,
            arrow_elems,
            paths_between,
            position,
            fingerprint: h.finish(),
            presentation,
            opposite: Mutex::new(Weak::new()),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }
    pub fn nilpotency_bound(&self) -> usize {
        self.nilpotency_bound
    }
    pub fn presentation(&self) -> Option<&AlgebraPresentation> {
        self.presentation.as_ref()
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }
    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }
    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
    /// Coordinates of an arrow in the basis (zero when it lies in the ideal).
    pub fn arrow_element(&self, a: usize) -> &[u32] {
        &self.arrow_elems[a]
    }
    /// Basis indices of the paths from `s` to `t`.
    pub fn paths_between(&self, s: usize, t: usize) -> &[usize] {
        &self.paths_between[s][t]
    }
    /// Position of basis element `b` inside `paths_between(source, target)`.
    pub fn position(&self, b: usize) -> usize {
        self.position[b]
    }
    pub fn basis_label(&self, b: usize) -> String {
        self.basis[b].label(&self.quiver)
    }
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        (0..self.dim()).find(|&b| self.basis_label(b) == label)
    }

    /// Sparse product of two basis elements.
    pub fn mult_basis(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.mult[i * self.dim() + j]
    }

    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim()];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                for &(k, m) in self.mult_basis(i, j) {
                    out[k] = f.add(out[k], f.mul(c, m));
                }
            }
        }
        out
    }

    pub fn unit_vector(&self, b: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[b] = 1;
        v
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for &e in &self.idempotents {
            v[e] = 1;
        }
        v
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult_matrix(&self, x: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|j| self.multiply(x, &self.unit_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult_matrix(&self, x: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|j| self.multiply(&self.unit_vector(j), x)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Reduction of an arbitrary path (traversal order) to basis coordinates.
    pub fn path_element(&self, path: &Path) -> Vec<u32> {
        let mut acc = self.unit_vector(self.idempotents[path.source]);
        for &a in &path.arrows {
            acc = self.multiply(&self.arrow_elems[a], &acc);
        }
        acc
    }

    /// Exhaustive associativity check on basis triples.
    pub fn check_associativity(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.multiply(&self.unit_vector(i), &self.unit_vector(j));
                for k in 0..d {
                    let left = self.multiply(&ij, &self.unit_vector(k));
                    let jk = self.multiply(&self.unit_vector(j), &self.unit_vector(k));
                    let right = self.multiply(&self.unit_vector(i), &jk);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks that the idempotents are orthogonal and sum to a two-sided unit.
    pub fn check_unit(&self) -> bool {
        let one = self.one();
        for b in 0..self.dim() {
            let u = self.unit_vector(b);
            if self.multiply(&one, &u) != u || self.multiply(&u, &one) != u {
                return false;
            }
        }
        for (v, &ev) in self.idempotents.iter().enumerate() {
            for (w, &ew) in self.idempotents.iter().enumerate() {
                let prod = self.multiply(&self.unit_vector(ev), &self.unit_vector(ew));
                let expected = if v == w { self.unit_vector(ev) } else { vec![0; self.dim()] };
                if prod != expected {
                    return false;
                }
            }
        }
        true
    }

    /// The opposite algebra: same basis, reversed multiplication and arrows.
    /// Repeated calls return the same shared value while it is alive.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        let mut slot = self.opposite.lock().unwrap();
        if let Some(op) = slot.upgrade() {
            return op;
        }
        let d = self.dim();
        let mut mult = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                mult[i * d + j] = self.mult[j * d + i].clone();
            }
        }
        let op = Algebra::assemble(
            self.field,
            self.quiver.opposite(),
            self.relations.iter().map(Relation::reversed).collect(),
            self.nilpotency_bound,
            self.basis.iter().map(Path::reversed).collect(),
            mult,
            self.idempotents.clone(),
            self.arrow_elems.clone(),
            None,
        );
        *op.opposite.lock().unwrap() = Arc::downgrade(self);
        let op = Arc::new(op);
        *slot = Arc::downgrade(&op);
        op
    }

    /// Same algebra up to bookkeeping (identical basis and table).
    pub fn same_as(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

#[cfg(test)]
mod tests {
    use super::builtin::*;
    use super::*;

    #[test]
    fn compile_examples() {
        let f = PrimeField::default();
        let e1 = e1(f);
        assert_eq!(e1.dim(), 2);
        assert_eq!(e1.basis_label(0), "e_1");
        assert_eq!(e1.basis_label(1), "x");
        let e2 = e2(f);
        assert_eq!(e2.dim(), 3);
        let e3 = e3(f);
        assert_eq!(e3.dim(), 3);
        for a in [&e1, &e2, &e3, &e4(f), &e5(f)] {
            assert!(a.check_associativity());
            assert!(a.check_unit());
        }
        assert_eq!(e4(f).dim(), 6);
        assert_eq!(e5(f).dim(), 3);
    }

    #[test]
    fn compile_errors() {
        let f = PrimeField::default();
        assert_eq!(Quiver::new(Vec::<String>::new(), vec![]), Err(AlgebraError::EmptyQuiver));
        let q =
            Quiver::new(["1", "2"], vec![("a".into(), "1".into(), "2".into()), ("b".into(), "1".into(), "1".into())])
                .unwrap();
        let bad = RelationSpec::parse(&[(1, "a"), (1, "b")]);
        assert_eq!(AlgebraPresentation::new(f, q.clone(), &[bad], 3), Err(AlgebraError::NonParallel { relation: 0 }));
        assert_eq!(AlgebraPresentation::new(f, q.clone(), &[], 0), Err(AlgebraError::ZeroBound));
        let nc = RelationSpec::parse(&[(1, "a.b")]);
        assert!(matches!(AlgebraPresentation::new(f, q, &[nc], 3), Err(AlgebraError::NotComposable { .. })));
    }

    #[test]
    fn non_monomial_relation_reduces() {
        // loops x, y with x^2 = y^2, xy = yx = 0, N = 3: basis e, x, y, x^2
        let f = PrimeField::default();
        let q = Quiver::new(["o"], vec![("x".into(), "o".into(), "o".into()), ("y".into(), "o".into(), "o".into())])
            .unwrap();
        let rels = [
            RelationSpec::parse(&[(1, "x.x"), (-1, "y.y")]),
            RelationSpec::parse(&[(1, "x.y")]),
            RelationSpec::parse(&[(1, "y.x")]),
        ];
        let a = AlgebraPresentation::new(f, q, &rels, 3).unwrap().compile().unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.check_associativity());
        let x = a.arrow_element(0).to_vec();
        let y = a.arrow_element(1).to_vec();
        assert_eq!(a.multiply(&x, &x), a.multiply(&y, &y));
    }

    #[test]
    fn opposite_examples() {
        let f = PrimeField::default();
        let e1 = e1(f);
        let op = e1.opposite();
        assert!(op.same_as(&e1));
        let e2 = e2(f);
        let op = e2.opposite();
        let a = &op.quiver().arrows()[0];
        assert_eq!((a.source, a.target), (1, 0));
        let e3 = e3(f);
        let back = e3.opposite().opposite();
        assert!(back.same_as(&e3));
        assert!(Arc::ptr_eq(&back, &e3) || back.mult == e3.mult);
    }

    #[test]
    fn truncation_warning_lists_paths() {
        let f = PrimeField::default();
        let q = Quiver::new(["o"], vec![("x".into(), "o".into(), "o".into())]).unwrap();
        let p = AlgebraPresentation::new(f, q.clone(), &[], 3).unwrap();
        assert_eq!(p.truncation_warnings(), vec!["x.x.x".to_string()]);
        let p = AlgebraPresentation::new(f, q, &[RelationSpec::parse(&[(1, "x.x")])], 2).unwrap();
        assert!(p.truncation_warnings().is_empty());
    }
}
