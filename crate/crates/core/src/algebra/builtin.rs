//! Small algebras used as fixtures by tests, the self-test and the CLI.

use std::sync::Arc;

use super::{Algebra, AlgebraPresentation, Path, Quiver, RelationSpec};
use crate::linalg::PrimeField;

fn arrow(name: &str, from: &str, to: &str) -> (String, String, String) {
    (name.to_string(), from.to_string(), to.to_string())
}

fn compile(p: AlgebraPresentation) -> Arc<Algebra> {
    p.compile().expect("builtin presentation is valid")
}

/// The ground field: one vertex, no arrows.
pub fn ground_presentation(field: PrimeField) -> AlgebraPresentation {
    let q = Quiver::new(["1"], vec![]).unwrap();
    AlgebraPresentation::new(field, q, &[], 1).unwrap()
}

/// `k[x]/(x^n)` as a one-loop quiver.
pub fn truncated_polynomial_presentation(field: PrimeField, n: usize) -> AlgebraPresentation {
    let q = Quiver::new(["1"], vec![arrow("x", "1", "1")]).unwrap();
    let rel = RelationSpec::parse(&[(1, &vec!["x"; n].join("."))]);
    AlgebraPresentation::new(field, q, &[rel], n).unwrap()
}

pub fn e1_presentation(field: PrimeField) -> AlgebraPresentation {
    truncated_polynomial_presentation(field, 2)
}

pub fn e2_presentation(field: PrimeField) -> AlgebraPresentation {
    let q = Quiver::new(["1", "2"], vec![arrow("a", "1", "2")]).unwrap();
    AlgebraPresentation::new(field, q, &[], 2).unwrap()
}

pub fn e3_presentation(field: PrimeField) -> AlgebraPresentation {
    let q = Quiver::new(["1"], vec![arrow("x", "1", "1"), arrow("y", "1", "1")]).unwrap();
    let rels: Vec<RelationSpec> = ["x.x", "y.y", "x.y", "y.x"].iter().map(|p| RelationSpec::parse(&[(1, p)])).collect();
    AlgebraPresentation::new(field, q, &rels, 2).unwrap()
}

pub fn e4_presentation(field: PrimeField) -> AlgebraPresentation {
    central_nilpotent_presentation(&e2_presentation(field))
}

pub fn e5_presentation(field: PrimeField) -> AlgebraPresentation {
    truncated_polynomial_presentation(field, 3)
}

/// `S[t]/(t^2)` with `t` central, for a presented algebra `S`.
///
/// A loop `t_v` is added at every vertex, with `t_v^2 = 0` and
/// `t_w·a = a·t_v` for every arrow `a: v → w`. Paths of `S` of length N
/// are added as relations so that the truncation of `S` survives the larger
/// bound `N + 1`.
pub fn central_nilpotent_presentation(s: &AlgebraPresentation) -> AlgebraPresentation {
    let q = &s.quiver;
    let mut arrows: Vec<(String, String, String)> = q
        .arrows()
        .iter()
        .map(|a| (a.name.clone(), q.vertices()[a.source].clone(), q.vertices()[a.target].clone()))
        .collect();
    let loop_name = |v: &str| format!("t_{v}");
    for v in q.vertices() {
        arrows.push((loop_name(v), v.clone(), v.clone()));
    }
    let big = Quiver::new(q.vertices().iter().cloned(), arrows).unwrap();
    let names = |p: &Path| -> Vec<String> { p.arrows.iter().map(|&a| q.arrows()[a].name.clone()).collect() };
    let mut rels: Vec<RelationSpec> = s
        .relations
        .iter()
        .map(|r| RelationSpec { terms: r.terms.iter().map(|(c, p)| (s.field.signed(*c), names(p))).collect() })
        .collect();
    for v in q.vertices() {
        rels.push(RelationSpec { terms: vec![(1, vec![loop_name(v), loop_name(v)])] });
    }
    for a in q.arrows() {
        let (src, tgt) = (&q.vertices()[a.source], &q.vertices()[a.target]);
        rels.push(RelationSpec {
            terms: vec![(1, vec![loop_name(src), a.name.clone()]), (-1, vec![a.name.clone(), loop_name(tgt)])],
        });
    }
    for p in s.paths_below(s.nilpotency_bound + 1) {
        if p.len() == s.nilpotency_bound {
            rels.push(RelationSpec { terms: vec![(1, names(&p))] });
        }
    }
    AlgebraPresentation::new(s.field, big, &rels, s.nilpotency_bound + 1).unwrap()
}

pub fn ground(field: PrimeField) -> Arc<Algebra> {
    compile(ground_presentation(field))
}
/// `k[x]/(x^2)`.
pub fn e1(field: PrimeField) -> Arc<Algebra> {
    compile(e1_presentation(field))
}
/// Path algebra of `1 → 2`.
pub fn e2(field: PrimeField) -> Arc<Algebra> {
    compile(e2_presentation(field))
}
/// Two loops with radical square zero.
pub fn e3(field: PrimeField) -> Arc<Algebra> {
    compile(e3_presentation(field))
}
/// `E2[t]/(t^2)` with `t` central.
pub fn e4(field: PrimeField) -> Arc<Algebra> {
    compile(e4_presentation(field))
}
/// `k[x]/(x^3)`.
pub fn e5(field: PrimeField) -> Arc<Algebra> {
    compile(e5_presentation(field))
}

/// Looks up one of the named fixtures `k`, `e1` … `e5`.
pub fn by_name(name: &str, field: PrimeField) -> Option<AlgebraPresentation> {
    Some(match name {
        "k" | "ground" => ground_presentation(field),
        "e1" => e1_presentation(field),
        "e2" => e2_presentation(field),
        "e3" => e3_presentation(field),
        "e4" => e4_presentation(field),
        "e5" => e5_presentation(field),
        _ => return None,
    })
}
