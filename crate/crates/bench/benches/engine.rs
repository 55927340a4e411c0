use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use kantorlab_bench::{function, grid, kernel, square, zygmund, FUNCTIONS, KERNELS};
use kantorlab_core::kernels::moment;
use kantorlab_core::operators::KantorovichEval;
use kantorlab_core::orlicz::luxemburg_norm;

fn luxemburg(c: &mut Criterion) {
    let mut g = c.benchmark_group("luxemburg_norm");
    g.sample_size(20);
    for (label, phi) in [("square", square()), ("zygmund", zygmund())] {
        for name in FUNCTIONS {
            let f = function(name);
            g.bench_with_input(BenchmarkId::new(label, name), &f, |b, f| {
                b.iter(|| luxemburg_norm(&phi, black_box(f)).unwrap())
            });
        }
    }
    g.finish();
}

fn apply(c: &mut Criterion) {
    let mut g = c.benchmark_group("kantorovich_apply");
    let f = function("sin");
    let xs = grid(256);
    for name in KERNELS {
        for n in [16, 256] {
            let op = KantorovichEval::new(&kernel(name), &f, n).unwrap();
            g.bench_function(BenchmarkId::new(name, n), |b| {
                b.iter(|| xs.iter().map(|&x| op.apply(black_box(x)).unwrap()).sum::<f64>())
            });
        }
    }
    g.finish();
}

fn moments(c: &mut Criterion) {
    let mut g = c.benchmark_group("moment");
    for name in KERNELS {
        let k = kernel(name);
        g.bench_function(name, |b| b.iter(|| moment(&k, black_box(1.0)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, luxemburg, apply, moments);
criterion_main!(benches);
