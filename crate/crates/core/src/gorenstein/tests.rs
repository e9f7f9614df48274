use super::*;
use crate::algebra::builtin;
use crate::linalg::PrimeField;
use crate::modcat::ModuleHom;

fn field() -> PrimeField {
    PrimeField::default()
}

fn certified(alg: &Arc<Algebra>) -> GorensteinCertificate {
    let cert = certify_ig(alg, 12);
    assert!(cert.d().is_ok(), "{cert}");
    cert
}

#[test]
fn certificates_of_examples() {
    let e1 = certify_ig(&builtin::e1(field()), 12);
    assert_eq!(e1.to_string(), "certified d=0");
    let e2 = certify_ig(&builtin::e2(field()), 12);
    assert_eq!(e2.status, IgStatus::Certified(1));
    let e4 = certify_ig(&builtin::e4(field()), 12);
    assert_eq!(e4.status, IgStatus::Certified(1));
    let e5 = certify_ig(&builtin::e5(field()), 12);
    assert_eq!(e5.status, IgStatus::Certified(0));
    let e3 = certify_ig(&builtin::e3(field()), 10);
    assert_eq!(e3.status, IgStatus::Unknown);
    assert!(e3.to_string().contains("id(A) >= 11"), "{e3}");
}

#[test]
fn uncertified_algebras_refuse() {
    let a = builtin::e3(field());
    let cert = certify_ig(&a, 6);
    let s = Module::simple(&a, 0);
    let err = is_gp(&s, &cert).unwrap_err();
    assert_eq!(err.to_string(), "unavailable: algebra not certified IG within cap 6");
    assert!(matches!(gdim(&s, &cert), Err(GorensteinError::NotCertified { .. })));
    assert!(matches!(gorenstein_ext(&s, &s, 1, &cert), Err(GorensteinError::NotCertified { .. })));
}

#[test]
fn wrong_algebra_is_rejected() {
    let cert = certified(&builtin::e1(field()));
    let other = builtin::e5(field());
    assert_eq!(is_gp(&Module::simple(&other, 0), &cert), Err(GorensteinError::WrongAlgebra));
}

#[test]
fn gp_and_gdim() {
    let e1 = builtin::e1(field());
    let c1 = certified(&e1);
    let s = Module::simple(&e1, 0);
    assert!(is_gp(&s, &c1).unwrap());
    assert_eq!(gdim(&s, &c1).unwrap(), 0);

    let e2 = builtin::e2(field());
    let c2 = certified(&e2);
    let s1 = Module::simple(&e2, 0);
    assert!(!is_gp(&s1, &c2).unwrap());
    assert_eq!(gdim(&s1, &c2).unwrap(), 1);
    assert_eq!(finite_pd(&s1, &c2).unwrap(), Some(1));
    assert!(is_gp(&Module::simple(&e2, 1), &c2).unwrap());
}

#[test]
fn coresolution_of_simple_over_dual_numbers() {
    let a = builtin::e1(field());
    let cert = certified(&a);
    let s = Module::simple(&a, 0);
    let co = gp_coresolution(&s, 4, &cert).unwrap();
    assert!(co.is_exact());
    assert_eq!(co.terms.len(), 5);
    for t in &co.terms {
        assert_eq!(t.generators(), &[0]);
    }
    let (cos, _) = co.cosyzygy(0);
    assert!(cos.is_isomorphic(&s, 4, 1).is_yes());
}

#[test]
fn coresolution_refuses_non_gp() {
    let a = builtin::e2(field());
    let cert = certified(&a);
    let err = gp_coresolution(&Module::simple(&a, 0), 2, &cert).unwrap_err();
    assert_eq!(err, GorensteinError::NotGorensteinProjective);
}

#[test]
fn unit_is_iso_on_projectives() {
    let a = builtin::e4(field());
    for v in 0..a.vertex_count() {
        let p = Module::vertex_projective(&a, v).unwrap();
        let (_, _, eta) = unit_map(&p).unwrap();
        assert!(eta.is_isomorphism());
    }
}

#[test]
fn tate_cohomology_over_dual_numbers() {
    let a = builtin::e1(field());
    let cert = certified(&a);
    let s = Module::simple(&a, 0);
    let cr = complete_resolution(&s, &cert, 8).unwrap();
    assert!(cr.check_window());
    for i in -6..=6 {
        assert_eq!(tate_ext_in(&cr, &s, &s, i).unwrap(), 1, "degree {i}");
    }
    assert_eq!(tate_ext(&s, &s, -2, &cert, 8).unwrap(), 1);
    assert_eq!(tate_ext(&s, &s, 3, &cert, 8).unwrap(), 1);
    assert!(matches!(tate_ext_in(&cr, &s, &s, 7), Err(GorensteinError::WindowTooSmall { .. })));
}

#[test]
fn finite_pd_has_zero_complete_resolution() {
    let a = builtin::e2(field());
    let cert = certified(&a);
    let s1 = Module::simple(&a, 0);
    let cr = complete_resolution(&s1, &cert, 4).unwrap();
    assert!(cr.is_zero());
    assert_eq!(tate_ext(&s1, &Module::simple(&a, 1), 1, &cert, 4).unwrap(), 0);
}

#[test]
fn tate_over_nilpotent_extension() {
    let a = builtin::e4(field());
    let cert = certified(&a);
    for v in 0..a.vertex_count() {
        let s = Module::simple(&a, v);
        let cr = complete_resolution(&s, &cert, 6).unwrap();
        assert!(cr.check_window());
        for i in (cr.base as isize + 1)..=4 {
            let n = Module::simple(&a, 1 - v);
            tate_ext_in(&cr, &s, &n, i).unwrap();
        }
    }
}

#[test]
fn approximation_of_simple_over_a2() {
    let a = builtin::e2(field());
    let cert = certified(&a);
    let s1 = Module::simple(&a, 0);
    let ap = special_approximation(&s1, &cert).unwrap();
    assert_eq!(ap.gdim, 1);
    assert_eq!(ap.pd_k, Some(0));
    assert!(ap.k().is_isomorphic(&Module::vertex_projective(&a, 1).unwrap(), 4, 1).is_yes());
    assert!(ap.g().is_isomorphic(&Module::vertex_projective(&a, 0).unwrap(), 4, 1).is_yes());
}

#[test]
fn approximation_of_gp_module_is_trivial() {
    let a = builtin::e1(field());
    let cert = certified(&a);
    let s = Module::simple(&a, 0);
    let ap = special_approximation(&s, &cert).unwrap();
    assert!(ap.k().is_zero());
    assert!(ap.projection.is_isomorphism());
}

#[test]
fn gorenstein_ext_examples() {
    let e1 = builtin::e1(field());
    let c1 = certified(&e1);
    let s = Module::simple(&e1, 0);
    assert_eq!(gorenstein_ext(&s, &s, 0, &c1).unwrap(), 1);
    for k in 1..=3 {
        assert_eq!(gorenstein_ext(&s, &s, k, &c1).unwrap(), 0);
    }
    let e2 = builtin::e2(field());
    let c2 = certified(&e2);
    let (s1, s2) = (Module::simple(&e2, 0), Module::simple(&e2, 1));
    assert_eq!(gorenstein_ext(&s1, &s2, 1, &c2).unwrap(), 1);
    assert_eq!(gorenstein_ext_direct(&s1, &s2, 1, &c2).unwrap(), 1);
    assert_eq!(gorenstein_ext(&s1, &s2, 2, &c2).unwrap(), 0);
}

#[test]
fn realised_extension_over_a2() {
    let a = builtin::e2(field());
    let cert = certified(&a);
    let (s1, s2) = (Module::simple(&a, 0), Module::simple(&a, 1));
    let (ap, classes) = ge1_classes(&s1, &s2, &cert).unwrap();
    assert_eq!(classes.len(), 1);
    let ext = realize_ge1(&ap, &s2, &classes[0], &cert).unwrap();
    assert!(!ext.split);
    assert!(ext.left_gp_acyclic);
    assert!(ext.sequence.middle().is_isomorphic(&Module::vertex_projective(&a, 0).unwrap(), 4, 2).is_yes());
    let zero = ModuleHom::zero(ap.k().clone(), s2.clone());
    assert_eq!(realize_ge1(&ap, &s2, &zero, &cert).unwrap_err(), GorensteinError::Coboundary);
}

#[test]
fn no_extensions_over_self_injective() {
    let a = builtin::e1(field());
    let cert = certified(&a);
    let s = Module::simple(&a, 0);
    let (ap, classes) = ge1_classes(&s, &s, &cert).unwrap();
    assert!(classes.is_empty());
    let zero = ModuleHom::zero(ap.k().clone(), s.clone());
    assert_eq!(realize_ge1(&ap, &s, &zero, &cert).unwrap_err(), GorensteinError::Coboundary);
}

#[test]
fn am_sequence_examples() {
    for a in [builtin::e1(field()), builtin::e2(field()), builtin::e4(field())] {
        let cert = certified(&a);
        for v in 0..a.vertex_count() {
            for w in 0..a.vertex_count() {
                let (x, y) = (Module::simple(&a, v), Module::simple(&a, w));
                let r = am_sequence_check(&x, &y, &cert).unwrap();
                assert!(r.exact, "{r:?}");
                assert!(r.engines_agree, "{r:?}");
            }
        }
    }
}

#[test]
fn am_sequence_values_over_a2() {
    let a = builtin::e2(field());
    let cert = certified(&a);
    let r = am_sequence_check(&Module::simple(&a, 0), &Module::simple(&a, 1), &cert).unwrap();
    assert_eq!(r.ge, vec![1, 0, 0]);
    assert_eq!(r.ext, vec![1, 0, 0]);
    assert_eq!(r.tate, vec![0, 0, 0]);
}

#[test]
fn nakayama_sends_projectives_to_injectives() {
    for a in [builtin::e1(field()), builtin::e2(field()), builtin::e4(field())] {
        for v in 0..a.vertex_count() {
            let p = Module::vertex_projective(&a, v).unwrap();
            let nu = nakayama(&p).unwrap();
            let i = Module::vertex_injective(&a, v).unwrap();
            assert!(nu.is_isomorphic(&i, 8, 3).is_yes(), "vertex {v}");
        }
    }
}

#[test]
fn findim_bound_holds() {
    let a = builtin::e2(field());
    let cert = certified(&a);
    let ms: Vec<(String, Module)> = (0..2)
        .flat_map(|v| {
            [(format!("S{v}"), Module::simple(&a, v)), (format!("I{v}"), Module::vertex_injective(&a, v).unwrap())]
        })
        .collect();
    let r = findim_check(&cert, &ms).unwrap();
    assert_eq!(r.checked, 4);
    assert_eq!(r.finite, 4);
    assert_eq!(r.max_finite_pd, 1);
    assert!(r.violations.is_empty());
}
