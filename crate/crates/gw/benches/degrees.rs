use criterion::{criterion_group, criterion_main, Criterion};
use qonf_gw::{confluence_compare_with, jk_closed_formula_with, jk_series_with};
use qonf_rings::par::Exec;

fn bench_degrees(c: &mut Criterion) {
    let mut g = c.benchmark_group("jk_by_degree");
    g.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        g.bench_function(format!("series_N3_D10/{name}"), |b| b.iter(|| jk_series_with(3, 10, exec).expect("series")));
        g.bench_function(format!("closed_N3_D10/{name}"), |b| {
            b.iter(|| jk_closed_formula_with(3, 10, exec).expect("closed formula"))
        });
        g.bench_function(format!("compare_N4_D6/{name}"), |b| {
            b.iter(|| confluence_compare_with(4, 6, exec).expect("compare"))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_degrees);
criterion_main!(benches);
