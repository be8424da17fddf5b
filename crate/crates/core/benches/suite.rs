use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use siclab::sic;
use siclab::suite::{self, Ensemble, PairConfig, SuiteConfig};
use siclab::ExecMode;

const MODES: [(&str, ExecMode); 2] = [
    ("sequential", ExecMode::Sequential),
    ("parallel", ExecMode::Parallel),
];

fn bound_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("bound_suite");
    for d in [2usize, 3] {
        let base = sic::rank_one_sic(d).unwrap();
        let sics = suite::sic_family(&base, &suite::default_lambdas()).unwrap();
        let states = Ensemble::new(d, 200, 1).states().unwrap();
        for (name, mode) in MODES {
            let cfg = SuiteConfig {
                mode,
                ..SuiteConfig::default()
            };
            group.bench_with_input(BenchmarkId::new(name, d), &cfg, |b, cfg| {
                b.iter(|| suite::check_bound_suite(&sics, &states, 0, cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn pair_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("pair_suite");
    group.sample_size(20);
    let m = sic::rank_one_sic(3).unwrap();
    let n = sic::depolarize_sic(&m, 0.7).unwrap();
    for (name, mode) in MODES {
        let cfg = PairConfig {
            samples: 100,
            mode,
            ..PairConfig::default()
        };
        group.bench_function(name, |b| b.iter(|| suite::run_pair(&m, &n, &cfg).unwrap()));
    }
    group.finish();
}

fn tomography(c: &mut Criterion) {
    let mut group = c.benchmark_group("tomography");
    let s = sic::rank_one_sic(3).unwrap();
    for (name, mode) in MODES {
        group.bench_function(name, |b| b.iter(|| suite::run_tomo(&s, 200, 1, mode).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bound_suite, pair_suite, tomography);
criterion_main!(benches);
