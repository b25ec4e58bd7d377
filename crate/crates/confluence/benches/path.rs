use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use qonf_confluence::{limit_matrix_along_path, pn_j, ConfluenceResult, TSchedule};
use qonf_qdiff::{frobenius_solution, Mat};
use qonf_qspecial::QValue;
use qonf_rings::par::Exec;

fn bench_path(c: &mut Criterion) {
    let sys = pn_j(2, &BigRational::one()).expect("builtin");
    let q0 = Complex64::new(0.5, 0.5);
    let big_q = Complex64::new(0.6, 0.3);
    let eval = |q: &QValue| -> ConfluenceResult<Mat<Complex64>> {
        let s = sys.specialize(q.q()).expect("no pole at this q");
        Ok(frobenius_solution(&s, 30)?.eval(big_q)?)
    };
    let schedule = TSchedule::default();
    let mut g = c.benchmark_group("pn_j_path_limit");
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        g.bench_function(name, |b| {
            b.iter(|| limit_matrix_along_path(eval, q0, big_q, &[Complex64::new(-1.0, 0.0)], &schedule, exec).expect("limit"))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_path);
criterion_main!(benches);
