use std::sync::Arc;

use charlab::chartab::{character_table_at, DEFAULT_SEED};
use charlab::{par, FiniteGroup};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    vec![
        ("SL(2,3)", FiniteGroup::special_linear_2(3).unwrap()),
        ("S(4)", FiniteGroup::symmetric(4).unwrap()),
        (
            "S(3) x S(3)",
            FiniteGroup::direct_product(&s3, &s3).unwrap(),
        ),
        ("A(5)", FiniteGroup::alternating(5).unwrap()),
        ("S(5)", FiniteGroup::symmetric(5).unwrap()),
    ]
    .into_iter()
    .map(|(n, g)| (n, Arc::new(g)))
    .collect()
}

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_table");
    for (name, g) in groups() {
        for (mode, jobs) in [("sequential", 1), ("parallel", 0)] {
            group.bench_with_input(BenchmarkId::new(mode, name), &g, |b, g| {
                par::set_jobs(jobs);
                b.iter(|| character_table_at(g, g.exponent(), DEFAULT_SEED).unwrap());
            });
        }
    }
    group.finish();
    par::set_jobs(0);
}

criterion_group!(benches, tables);
criterion_main!(benches);
