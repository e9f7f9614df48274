mod common;

use std::sync::OnceLock;

use gorkit::algebra::builtin;
use gorkit::frobext::{
    central_nilpotent, check_adjunctions, check_ind_coind_twist, coinduce, induce, restrict, verify_frobenius,
    AlgebraEmbedding, FrobeniusExtension,
};
use gorkit::linalg::{Matrix, PrimeField};
use gorkit::modcat::{Module, ModuleHom, ShortExactSequence};
use gorkit::oracle::random_modules;
use gorkit::resolve::pd;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `S ⊂ S[t]/(t²)` for S = k[x]/(x²), A₂, k[x]/(x³).
fn extensions() -> &'static [FrobeniusExtension] {
    static E: OnceLock<Vec<FrobeniusExtension>> = OnceLock::new();
    E.get_or_init(|| {
        let field = PrimeField::default();
        [builtin::e1_presentation(field), builtin::e2_presentation(field), builtin::e5_presentation(field)]
            .iter()
            .map(|s| {
                let emb = central_nilpotent(s).unwrap();
                let id = Matrix::identity(field, emb.sub().dim());
                verify_frobenius(&emb, &id, 8, 1).unwrap().extension().expect("verified").clone()
            })
            .collect()
    })
}

fn ext_and_seed() -> impl Strategy<Value = (&'static FrobeniusExtension, u64)> {
    (0usize..3, any::<u64>()).prop_map(|(i, seed)| (&extensions()[i], seed))
}

fn sub_sample(emb: &AlgebraEmbedding, seed: u64, n: usize) -> Vec<Module> {
    random_modules(emb.sub(), n, seed, 5).unwrap()
}

fn big_sample(emb: &AlgebraEmbedding, seed: u64, n: usize) -> Vec<Module> {
    random_modules(emb.big(), n, seed, 8).unwrap()
}

fn random_ses(y: &Module, w: &Module, seed: u64) -> ShortExactSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = y.field().p();
    let mut h = ModuleHom::zero(y.clone(), w.clone());
    for b in &y.hom_basis(w).unwrap() {
        h = h.add(&b.scale(rng.gen_range(0..p)));
    }
    let (_, k) = h.kernel();
    let (_, q) = k.cokernel();
    ShortExactSequence::new(k, q).unwrap()
}

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn induction_and_coinduction_have_equal_dimension((ext, seed) in ext_and_seed()) {
        let emb = &ext.embedding;
        for m in sub_sample(emb, seed, 2) {
            let (i, _) = induce(emb, &m).unwrap();
            let (c, _) = coinduce(emb, &m).unwrap();
            prop_assert_eq!(i.total_dim(), c.total_dim());
            prop_assert_eq!(i.total_dim(), 2 * m.total_dim());
        }
    }

    #[test]
    fn adjunctions_hold((ext, seed) in ext_and_seed()) {
        let emb = &ext.embedding;
        let report = check_adjunctions(emb, &sub_sample(emb, seed, 2), &big_sample(emb, seed ^ 1, 2)).unwrap();
        let failures: Vec<_> = report.failures().collect();
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn induction_is_twisted_coinduction((ext, seed) in ext_and_seed()) {
        let report = check_ind_coind_twist(ext, &sub_sample(&ext.embedding, seed, 2), 8, seed).unwrap();
        prop_assert!(report.passed());
    }

    #[test]
    fn functors_are_exact_on_dimensions((ext, seed) in ext_and_seed()) {
        let emb = &ext.embedding;
        let ms = sub_sample(emb, seed, 2);
        let s = random_ses(&ms[0], &ms[1], seed);
        for functor in [induce, coinduce] {
            let dims: Vec<usize> = [s.left(), s.middle(), s.right()]
                .iter()
                .map(|m| functor(emb, m).unwrap().0.total_dim())
                .collect();
            prop_assert_eq!(dims[1], dims[0] + dims[2]);
        }
        let xs = big_sample(emb, seed ^ 2, 2);
        let s = random_ses(&xs[0], &xs[1], seed);
        let dims: Vec<usize> = [s.left(), s.middle(), s.right()]
            .iter()
            .map(|m| restrict(emb, m).unwrap().0.total_dim())
            .collect();
        prop_assert_eq!(dims[1], dims[0] + dims[2]);
    }

    #[test]
    fn projective_dimension_transfers((ext, seed) in ext_and_seed()) {
        let emb = &ext.embedding;
        for m in sub_sample(emb, seed, 2) {
            if let Some(p) = pd(&m, 6).exact() {
                let (i, _) = induce(emb, &m).unwrap();
                prop_assert!(pd(&i, 6).exact().is_some_and(|q| q <= p));
            }
        }
        for x in big_sample(emb, seed ^ 3, 2) {
            if let Some(p) = pd(&x, 6).exact() {
                let (r, _) = restrict(emb, &x).unwrap();
                prop_assert!(pd(&r, 6).exact().is_some_and(|q| q <= p));
            }
        }
    }
}
