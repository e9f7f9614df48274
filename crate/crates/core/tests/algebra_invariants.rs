use gorkit::algebra::builtin;
use gorkit::gorenstein::{hom_to_regular, unit_map};
use gorkit::linalg::PrimeField;
use gorkit::modcat::Module;

fn all() -> Vec<std::sync::Arc<gorkit::algebra::Algebra>> {
    let f = PrimeField::default();
    let mut out =
        vec![builtin::ground(f), builtin::e1(f), builtin::e2(f), builtin::e3(f), builtin::e4(f), builtin::e5(f)];
    let ops: Vec<_> = out.iter().map(|a| a.opposite()).collect();
    out.extend(ops);
    out
}

#[test]
fn compiled_algebras_are_associative_and_unital() {
    for a in all() {
        assert!(a.dim() <= 50);
        assert!(a.check_associativity(), "{:?}", a.quiver().vertices());
        assert!(a.check_unit());
    }
}

#[test]
fn vertex_projectives_satisfy_relations() {
    for a in all() {
        for v in 0..a.vertex_count() {
            let p = Module::vertex_projective(&a, v).unwrap();
            p.validate().unwrap();
            assert!(p.is_projective());
            assert_eq!(p.top_dims().iter().sum::<usize>(), 1);
        }
    }
}

#[test]
fn duality_is_an_equivalence_on_projectives() {
    for a in all() {
        for v in 0..a.vertex_count() {
            let p = Module::vertex_projective(&a, v).unwrap();
            let fp = hom_to_regular(&p).unwrap();
            assert!(fp.module.is_projective());
            let (_, ffp, eta) = unit_map(&p).unwrap();
            assert!(eta.is_isomorphism());
            assert_eq!(ffp.module.dims(), p.dims());
        }
    }
}
