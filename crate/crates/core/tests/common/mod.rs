#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use gorkit::algebra::{builtin, Algebra};
use gorkit::gorenstein::{certify_ig, GorensteinCertificate};
use gorkit::linalg::PrimeField;
use gorkit::modcat::Module;
use gorkit::oracle::random_modules;
use proptest::prelude::*;
use proptest::test_runner::Config;

pub const CASES: u32 = 64;

pub fn config() -> Config {
    Config { cases: CASES, failure_persistence: None, ..Config::default() }
}

pub struct Fixture {
    pub name: &'static str,
    pub alg: Arc<Algebra>,
    pub cert: GorensteinCertificate,
    pub dim_cap: usize,
}

/// The certified test algebras: k[x]/(x²), A₂, A₂[t]/(t²), k[x]/(x³).
pub fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        let field = PrimeField::default();
        [
            ("e1", builtin::e1(field), 6),
            ("e2", builtin::e2(field), 6),
            ("e4", builtin::e4(field), 8),
            ("e5", builtin::e5(field), 6),
        ]
        .into_iter()
        .map(|(name, alg, dim_cap)| {
            let cert = certify_ig(&alg, 24);
            Fixture { name, alg, cert, dim_cap }
        })
        .collect()
    })
}

pub fn fixture(i: usize) -> &'static Fixture {
    let f = fixtures();
    &f[i % f.len()]
}

/// One deterministic random module over the fixture.
pub fn sample(f: &Fixture, seed: u64) -> Module {
    random_modules(&f.alg, 1, seed, f.dim_cap).expect("sampling succeeds").remove(0)
}

pub fn samples(f: &Fixture, seed: u64, n: usize) -> Vec<Module> {
    random_modules(&f.alg, n, seed, f.dim_cap).expect("sampling succeeds")
}

pub fn fixture_and_seed() -> impl Strategy<Value = (usize, u64)> {
    (0usize..4, any::<u64>())
}

pub fn sum(a: &Module, b: &Module) -> Module {
    Module::direct_sum(&[a, b]).sum
}
