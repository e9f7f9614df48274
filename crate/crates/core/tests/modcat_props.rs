mod common;

use common::{config, fixture, fixture_and_seed, sample, sum};
use gorkit::linalg::Matrix;
use gorkit::modcat::{baby_horseshoe, solve_in_span, ModuleHom, ShortExactSequence};
use gorkit::oracle::random_modules;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A short exact sequence `K ↪ Y ↠ Q` cut out of `Y` by a random map to `W`.
fn random_ses(y: &gorkit::modcat::Module, w: &gorkit::modcat::Module, seed: u64) -> ShortExactSequence {
    let basis = y.hom_basis(w).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = y.field().p();
    let mut h = ModuleHom::zero(y.clone(), w.clone());
    for b in &basis {
        h = h.add(&b.scale(rng.gen_range(0..p)));
    }
    let (_, k) = h.kernel();
    let (_, q) = k.cokernel();
    ShortExactSequence::new(k, q).unwrap()
}

fn injective_row(x: &gorkit::modcat::Module) -> ShortExactSequence {
    let (_, mono) = x.injective_envelope();
    let (_, q) = mono.cokernel();
    ShortExactSequence::new(mono, q).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn hom_dimension_is_preserved_by_duality((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let (m, n) = (sample(f, seed), sample(f, seed ^ 0x9e37));
        prop_assert_eq!(m.hom_dim(&n).unwrap(), n.dualize().hom_dim(&m.dualize()).unwrap());
        prop_assert_eq!(m.hom_dim(&n).unwrap(), m.hom_basis_intertwiner(&n).unwrap().len());
    }

    #[test]
    fn cover_kernel_lies_in_radical((i, seed) in fixture_and_seed()) {
        let m = sample(fixture(i), seed);
        let cover = m.projective_cover();
        let (_, k) = cover.epi.kernel();
        let (_, t) = cover.projective.module().top();
        prop_assert!(t.compose_after(&k).is_zero());
        prop_assert_eq!(cover.projective.rank(), m.top_dims().iter().sum::<usize>());
    }

    #[test]
    fn syzygy_is_additive((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let (m, n) = (sample(f, seed), sample(f, seed.wrapping_add(1)));
        let lhs = sum(&m, &n).syzygy();
        let rhs = sum(&m.syzygy(), &n.syzygy());
        prop_assert!(lhs.is_isomorphic(&rhs, 8, seed).is_yes());
    }

    #[test]
    fn horseshoe_rows_and_columns_are_exact((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let ms = random_modules(&f.alg, 2, seed, f.dim_cap).unwrap();
        let column = random_ses(&ms[0], &ms[1], seed);
        let h = baby_horseshoe(&injective_row(column.left()), &injective_row(column.right()), &column).unwrap();
        prop_assert!(h.commutes());
        for s in [&h.top, &h.middle, &h.bottom, &h.left, &h.center, &h.right] {
            prop_assert!(s.inclusion().is_injective() && s.projection().is_surjective());
            prop_assert!(s.projection().compose_after(s.inclusion()).is_zero());
            prop_assert_eq!(s.middle().total_dim(), s.left().total_dim() + s.right().total_dim());
        }
        prop_assert!(h.middle.middle().is_injective());
    }

    #[test]
    fn homomorphisms_intertwine((i, seed) in fixture_and_seed()) {
        let f = fixture(i);
        let (m, n) = (sample(f, seed), sample(f, !seed));
        for h in m.hom_basis(&n).unwrap() {
            prop_assert!(ModuleHom::new(m.clone(), n.clone(), h.blocks().to_vec()).is_ok());
        }
        let basis = m.hom_basis(&n).unwrap();
        let blocks: Vec<Matrix> = (0..f.alg.vertex_count())
            .map(|v| Matrix::random(m.field(), n.dim_at(v), m.dim_at(v), seed))
            .collect();
        // a random family of blocks is a homomorphism only if it lies in the span
        if let Ok(h) = ModuleHom::new(m.clone(), n.clone(), blocks) {
            prop_assert!(solve_in_span(&basis, &h).is_some());
        }
    }
}
