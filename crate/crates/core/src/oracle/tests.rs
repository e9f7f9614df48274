use super::*;
use crate::algebra::builtin;
use crate::gorenstein::{certify_ig, gorenstein_ext};
use crate::linalg::PrimeField;

fn field() -> PrimeField {
    PrimeField::default()
}

#[test]
fn ext_oracle_examples() {
    let e1 = builtin::e1(field());
    let s = Module::simple(&e1, 0);
    assert_eq!(ext_oracle(&s, &s, 2).unwrap(), 1);
    let p = Module::regular(&e1);
    assert_eq!(ext_oracle(&p, &s, 1).unwrap(), 0);
    let e2 = builtin::e2(field());
    assert_eq!(ext_oracle(&Module::simple(&e2, 0), &Module::simple(&e2, 1), 1).unwrap(), 1);
}

#[test]
fn oracle_approximation_shape() {
    let e2 = builtin::e2(field());
    let cert = certify_ig(&e2, 12);
    let ap = oracle_approximation(&Module::simple(&e2, 0), &cert).unwrap();
    assert!(ap.projection.is_surjective());
    assert_eq!(ap.inclusion.target(), ap.projection.source());
    assert!(crate::gorenstein::is_gp(ap.projection.source(), &cert).unwrap());
}

#[test]
fn ge_oracle_matches_engine() {
    for alg in [builtin::e1(field()), builtin::e2(field())] {
        let cert = certify_ig(&alg, 12);
        let d = cert.d().unwrap();
        let corpus = generate_corpus(&alg, 3, 4).unwrap();
        let ms: Vec<&Module> = corpus.modules.iter().map(|(_, m)| m).take(4).collect();
        for x in &ms {
            for y in &ms {
                for k in 0..=d + 2 {
                    assert_eq!(ge_oracle(x, y, k, &cert).unwrap(), gorenstein_ext(x, y, k, &cert).unwrap());
                }
            }
        }
    }
}

#[test]
fn corpus_contents() {
    let e1 = builtin::e1(field());
    let c = generate_corpus(&e1, 1, 4).unwrap();
    let names = c.names();
    assert_eq!(&names[..4], &["A", "P(1)", "S(1)", "I(1)"]);
    assert!(c.modules.iter().all(|(_, m)| m.total_dim() <= 4 && m.validate().is_ok()));
    assert!(names.iter().any(|n| n.starts_with("E[")));
    let again = generate_corpus(&e1, 1, 4).unwrap();
    assert_eq!(c.modules, again.modules);

    let e2 = builtin::e2(field());
    let c = generate_corpus(&e2, 1, 4).unwrap();
    for n in ["P(1)", "P(2)", "S(1)", "I(2)"] {
        assert!(c.get(n).is_some(), "{n} missing from {:?}", c.names());
    }
}

#[test]
fn corpus_cap_too_small() {
    let e2 = builtin::e2(field());
    assert_eq!(generate_corpus(&e2, 1, 1).unwrap_err(), OracleError::CapTooSmall { cap: 1, needed: 2 });
}

#[test]
fn random_modules_are_deterministic() {
    let e4 = builtin::e4(field());
    let a = random_modules(&e4, 5, 9, 8).unwrap();
    let b = random_modules(&e4, 5, 9, 8).unwrap();
    assert_eq!(a, b);
    assert!(a.iter().all(|m| m.validate().is_ok() && m.total_dim() <= 8));
}
