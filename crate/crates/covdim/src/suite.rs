//! Deterministic random code suites for the cross-check batteries.
//!
//! Generation is seeded ChaCha so a suite is identical across runs,
//! platforms and thread counts; every randomized battery takes the seed
//! explicitly.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Field;
use crate::algebra::MatrixGF;
use crate::code::{LinearCode, Strictness};

#[derive(Clone, Debug)]
pub struct SuiteSpec {
    pub seed: u64,
    pub count: usize,
    pub field_orders: Vec<u32>,
    pub n_max: usize,
    pub k_max: usize,
}

impl SuiteSpec {
    pub fn standard(seed: u64, count: usize) -> SuiteSpec {
        SuiteSpec {
            seed,
            count,
            field_orders: vec![2, 3, 4, 5],
            n_max: 10,
            k_max: 5,
        }
    }
}

/// A deterministic suite of random codes with exactly the requested count.
/// Generators are uniform full-rank matrices; zero columns are allowed, so
/// the suite exercises the infinite covering-dimension path too.
pub fn random_codes(spec: &SuiteSpec) -> Vec<LinearCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let fields: Vec<Arc<Field>> = spec
        .field_orders
        .iter()
        .map(|&q| Field::from_order(q).expect("suite field orders are prime powers"))
        .collect();
    let mut out = Vec::with_capacity(spec.count);
    while out.len() < spec.count {
        let field = &fields[rng.gen_range(0..fields.len())];
        let n = rng.gen_range(1..=spec.n_max);
        let k = rng.gen_range(1..=spec.k_max.min(n));
        let q = field.order();
        let mut gen = MatrixGF::zeros(field.clone(), k, n);
        for i in 0..k {
            for j in 0..n {
                gen.set(i, j, field.elem(rng.gen_range(0..q)));
            }
        }
        if gen.rank() < k {
            continue; // resample; keeps the dimension exactly k
        }
        let code =
            LinearCode::from_generator(gen, Strictness::Strict).expect("full-rank generator");
        out.push(code);
    }
    out
}
