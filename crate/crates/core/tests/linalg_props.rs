use gorkit::linalg::{Matrix, PrimeField};
use proptest::prelude::*;

fn field(small: bool) -> PrimeField {
    PrimeField::new(if small { 3 } else { 32003 }).unwrap()
}

/// Random matrices of low rank show up far more often over F_3.
fn matrix() -> impl Strategy<Value = Matrix> {
    (any::<bool>(), 0usize..9, 0usize..9, any::<u64>())
        .prop_map(|(small, r, c, seed)| Matrix::random(field(small), r, c, seed))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rank_nullity(m in matrix()) {
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_is_exact(m in matrix(), seed in any::<u64>()) {
        let f = m.field();
        let x = Matrix::random(f, m.cols(), 1, seed).col(0);
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn rank_of_transpose(m in matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let lk = m.left_kernel();
        prop_assert!(lk.mul(&m).is_zero());
    }

    #[test]
    fn inverse_when_full_rank(small in any::<bool>(), n in 0usize..7, seed in any::<u64>()) {
        let m = Matrix::random(field(small), n, n, seed);
        match m.inverse() {
            Some(inv) => prop_assert_eq!(m.mul(&inv), Matrix::identity(m.field(), n)),
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn random_is_deterministic(r in 0usize..6, c in 0usize..6, seed in any::<u64>()) {
        let f = field(false);
        prop_assert_eq!(Matrix::random(f, r, c, seed), Matrix::random(f, r, c, seed));
    }
}
