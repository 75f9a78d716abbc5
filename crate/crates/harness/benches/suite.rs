use charlab::par;
use charlab_harness::{run_suite, Catalog, Kind, SuiteOptions};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn suite(c: &mut Criterion) {
    let catalog = Catalog::from_exprs(&[
        "S(4)",
        "SL(2,3)",
        "D(8) x C(2)",
        "C(3) wr C(2) x C(2)",
        "Q(8) x C(3)",
    ]);
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for kind in [Kind::Thm13, Kind::Ow21, Kind::Thm31] {
        let opts = SuiteOptions {
            kinds: vec![kind],
            ..SuiteOptions::default()
        };
        for (mode, jobs) in [("sequential", 1), ("parallel", 0)] {
            group.bench_with_input(BenchmarkId::new(mode, kind), &opts, |b, opts| {
                par::set_jobs(jobs);
                b.iter(|| run_suite(&catalog, opts).unwrap());
            });
        }
    }
    group.finish();
    par::set_jobs(0);
}

criterion_group!(benches, suite);
criterion_main!(benches);
