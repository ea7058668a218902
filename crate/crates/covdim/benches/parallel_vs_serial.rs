//! Parallel scheduling against the sequential reference on the two
//! enumeration-heavy paths: the characteristic-polynomial subset sweep and
//! the exhaustive bound search. One worker exercises the plain sequential
//! loops; the multi-worker runs go through the rayon splits. Reports must
//! be identical; only the wall clock may differ.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use covdim::algebra::Field;
use covdim::matroid::MatroidView;
use covdim::search::{run_search, SearchParams};
use covdim::Caps;

fn charpoly_code() -> covdim::LinearCode {
    // one fixed [18, 5] binary code: 2^18 subsets per sweep. An identity
    // block keeps the generator full rank; the tail columns are arbitrary.
    let field = Field::from_order(2).unwrap();
    let rows: Vec<Vec<u32>> = (0..5)
        .map(|i| {
            (0..18)
                .map(|j| {
                    if j < 5 {
                        (j == i) as u32
                    } else {
                        ((j >> i) ^ (j * 7 + i)) as u32 & 1
                    }
                })
                .collect()
        })
        .collect();
    covdim::LinearCode::from_u32_rows(field, &rows).expect("full rank")
}

fn bench_charpoly(c: &mut Criterion) {
    let code = charpoly_code();
    let caps = Caps::default();
    let mut group = c.benchmark_group("charpoly_subset_sweep");
    group.sample_size(10);
    for workers in [1usize, 2, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(workers), &workers, |b, _| {
            b.iter(|| {
                pool.install(|| {
                    MatroidView::new(&code)
                        .characteristic_polynomial(&caps)
                        .unwrap()
                })
            });
        });
    }
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    let caps = Caps::default();
    let params = SearchParams {
        q: 2,
        n_max: 7,
        k_max: 4,
        simple_only: true,
        start_cursor: 0,
    };
    let mut group = c.benchmark_group("exhaustive_search_q2");
    group.sample_size(10);
    for workers in [1usize, 2, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(workers), &workers, |b, &w| {
            b.iter(|| run_search(&params, &caps, w).unwrap());
        });
    }
    group.finish();
}

fn bench_gamma_routes(c: &mut Criterion) {
    let caps = Caps::default();
    let field = Field::from_order(3).unwrap();
    let code = covdim::construct::dual_hamming(field, 4, &caps).unwrap();
    let mut group = c.benchmark_group("covering_dimension_40_4_gf3");
    group.sample_size(10);
    group.bench_function("subcode_search", |b| {
        b.iter(|| code.covering_dimension_subcode(&caps).unwrap());
    });
    group.bench_function("subspace_avoidance", |b| {
        b.iter(|| code.covering_dimension_avoidance(&caps).unwrap());
    });
    group.finish();
}

criterion_group!(benches, bench_charpoly, bench_search, bench_gamma_routes);
criterion_main!(benches);
