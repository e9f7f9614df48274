use super::*;
use crate::gorenstein::certify_ig;
use crate::linalg::PrimeField;

fn field() -> PrimeField {
    PrimeField::default()
}

fn dual_numbers_over_field() -> AlgebraEmbedding {
    AlgebraEmbedding::by_names(builtin::ground(field()), builtin::e1(field())).unwrap()
}

fn e4_over_e2() -> AlgebraEmbedding {
    central_nilpotent(&builtin::e2_presentation(field())).unwrap()
}

fn identity(alg: &Algebra) -> Matrix {
    Matrix::identity(alg.field(), alg.dim())
}

fn sample_modules(alg: &Arc<Algebra>) -> Vec<Module> {
    let mut out = vec![Module::zero(alg), Module::regular(alg)];
    for v in 0..alg.vertex_count() {
        out.push(Module::simple(alg, v));
        out.push(Module::vertex_injective(alg, v).unwrap());
    }
    out
}

#[test]
fn embedding_checks() {
    let emb = dual_numbers_over_field();
    assert_eq!(emb.apply(&[1]), emb.big().one());
    let e2 = builtin::e2(field());
    let bad = Matrix::zeros(field(), e2.dim(), e2.dim());
    assert!(matches!(AlgebraEmbedding::new(e2.clone(), e2, bad), Err(FrobError::BadEmbedding(_))));
}

#[test]
fn frobenius_algebra_over_field() {
    let emb = dual_numbers_over_field();
    let v = verify_frobenius(&emb, &identity(emb.sub()), 8, 1).unwrap();
    let ext = v.extension().expect("verified");
    assert!(ext.check_pairing());
    assert_eq!(ext.multiplicities, vec![2]);
}

#[test]
fn central_nilpotent_extension_is_frobenius() {
    let emb = e4_over_e2();
    assert_eq!(emb.big().dim(), 2 * emb.sub().dim());
    let v = verify_frobenius(&emb, &identity(emb.sub()), 8, 1).unwrap();
    let ext = v.extension().expect("verified");
    assert!(ext.check_pairing());
    assert_eq!(ext.multiplicities, vec![2, 2]);
}

#[test]
fn non_projective_extension_is_refuted() {
    let emb = AlgebraEmbedding::by_names(builtin::e1(field()), builtin::e3(field())).unwrap();
    let err = verify_frobenius(&emb, &identity(emb.sub()), 8, 1).unwrap_err();
    assert_eq!(err, FrobError::NotProjective);
}

#[test]
fn non_frobenius_algebra_finds_no_witness() {
    let emb = AlgebraEmbedding::by_names(builtin::ground(field()), builtin::e3(field())).unwrap();
    let v = verify_frobenius(&emb, &identity(emb.sub()), 8, 1).unwrap();
    assert!(matches!(v, FrobeniusVerdict::NotFound { .. }));
}

#[test]
fn alpha_must_be_automorphism() {
    let emb = e4_over_e2();
    let zero = Matrix::zeros(field(), emb.sub().dim(), emb.sub().dim());
    assert!(matches!(verify_frobenius(&emb, &zero, 8, 1), Err(FrobError::NotAutomorphism(_))));
}

#[test]
fn restriction_of_simple() {
    let emb = e4_over_e2();
    let s = Module::simple(emb.big(), 0);
    let (r, _) = restrict(&emb, &s).unwrap();
    assert!(r.is_isomorphic(&Module::simple(emb.sub(), 0), 4, 1).is_yes());
}

#[test]
fn induce_and_coinduce_from_field() {
    let emb = dual_numbers_over_field();
    let k = Module::simple(emb.sub(), 0);
    let reg = Module::regular(emb.big());
    let (i, _) = induce(&emb, &k).unwrap();
    let (c, _) = coinduce(&emb, &k).unwrap();
    assert!(i.is_isomorphic(&reg, 4, 1).is_yes());
    assert!(c.is_isomorphic(&reg, 4, 2).is_yes());
    let unit = induction_unit(&emb, &k).unwrap();
    assert_eq!(unit.rank(), 1);
    assert_eq!(unit.target().total_dim(), 2);
}

#[test]
fn induced_dimensions_scale() {
    let emb = e4_over_e2();
    for m in sample_modules(emb.sub()) {
        let (i, _) = induce(&emb, &m).unwrap();
        let (c, _) = coinduce(&emb, &m).unwrap();
        assert_eq!(i.total_dim(), 2 * m.total_dim());
        assert_eq!(c.total_dim(), 2 * m.total_dim());
    }
}

#[test]
fn adjunctions_hold() {
    for emb in [dual_numbers_over_field(), e4_over_e2()] {
        let report = check_adjunctions(&emb, &sample_modules(emb.sub()), &sample_modules(emb.big())).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn projective_correspondence() {
    for emb in [dual_numbers_over_field(), e4_over_e2()] {
        let report = check_projective_correspondence(&emb, 8, 3).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
    let emb = e4_over_e2();
    let (i, _) = induce(&emb, &Module::vertex_projective(emb.sub(), 0).unwrap()).unwrap();
    assert!(i.is_isomorphic(&Module::vertex_projective(emb.big(), 0).unwrap(), 4, 1).is_yes());
}

#[test]
fn induction_is_twisted_coinduction() {
    for emb in [dual_numbers_over_field(), e4_over_e2()] {
        let ext = verify_frobenius(&emb, &identity(emb.sub()), 8, 1).unwrap();
        let ext = ext.extension().unwrap();
        let report = check_ind_coind_twist(ext, &sample_modules(emb.sub()), 8, 5).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn gorenstein_transfer() {
    for emb in [dual_numbers_over_field(), e4_over_e2()] {
        let cs = certify_ig(emb.sub(), 12);
        let cr = certify_ig(emb.big(), 12);
        let report = transfer_checks(&emb, &cs, &cr, &sample_modules(emb.big())).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert!(report.lines.iter().any(|l| l.name.starts_with("Gd_R X = pd_S")));
    }
    let emb = e4_over_e2();
    let cr = certify_ig(emb.big(), 12);
    assert_eq!(cr.d().unwrap(), 1);
    assert_eq!(gorenstein::gdim(&Module::simple(emb.big(), 0), &cr).unwrap(), 1);
}
