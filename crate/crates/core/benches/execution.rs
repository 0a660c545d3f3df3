use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diagideal::scan::{conjecture_scan, ScanBounds};
use diagideal::verify::{sorted_chains_up_to, sweep_lemma2};
use diagideal::{betti_table, Characteristic, Execution, GridShape, Options, WindowChain};

const STRATEGIES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn lemma_sweep(c: &mut Criterion) {
    let instances = sorted_chains_up_to(3, 6, 2);
    let mut group = c.benchmark_group("colon_lemma_sweep_3x6");
    group.sample_size(10);
    for exec in STRATEGIES {
        let opts = Options::default().with_exec(exec);
        group.bench_function(BenchmarkId::from_parameter(format!("{exec:?}")), |b| {
            b.iter(|| sweep_lemma2(&instances, true, &opts))
        });
    }
    group.finish();
}

fn homology_oracle(c: &mut Criterion) {
    let shape = GridShape::new(3, 8).unwrap();
    let ideal = WindowChain::parse(shape, "2,6")
        .unwrap()
        .diagonal_product(shape)
        .unwrap();
    let mut group = c.benchmark_group("betti_oracle_j26");
    group.sample_size(10);
    for exec in STRATEGIES {
        let opts = Options::default().with_exec(exec);
        group.bench_function(BenchmarkId::from_parameter(format!("{exec:?}")), |b| {
            b.iter(|| betti_table(&ideal, Characteristic::RATIONAL, &opts).unwrap())
        });
    }
    group.finish();
}

fn groebner_scan(c: &mut Criterion) {
    let bounds = ScanBounds {
        max_rows: 2,
        max_cols: 5,
        max_factors: 2,
        char: Characteristic::DEFAULT_PRIME,
    };
    let mut group = c.benchmark_group("conjecture_scan_2x5");
    group.sample_size(10);
    for exec in STRATEGIES {
        let opts = Options::default().with_exec(exec);
        group.bench_function(BenchmarkId::from_parameter(format!("{exec:?}")), |b| {
            b.iter(|| conjecture_scan(&bounds, &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, lemma_sweep, homology_oracle, groebner_scan);
criterion_main!(benches);
