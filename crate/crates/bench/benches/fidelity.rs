use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qgestalt::sample::random_pure_state;
use qgestalt::{fidelity, fidelity_pure, projector, spectral_sqrt};
use qgestalt_bench::{mixture_pairs, rng};
use std::hint::black_box;

fn bench_fidelity(c: &mut Criterion) {
    let mut group = c.benchmark_group("uhlmann_fidelity");
    for dim in [2usize, 4, 8, 16, 32] {
        let pairs = mixture_pairs(dim, 8);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &pairs, |b, pairs| {
            b.iter(|| {
                for (rho, sigma) in pairs {
                    black_box(fidelity(rho, sigma).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_sqrt(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral_sqrt");
    for dim in [4usize, 16, 64] {
        let (rho, _) = mixture_pairs(dim, 1).remove(0);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &rho, |b, rho| {
            b.iter(|| black_box(spectral_sqrt(rho).unwrap()))
        });
    }
    group.finish();
}

fn bench_pure_vs_projector(c: &mut Criterion) {
    let mut r = rng(7);
    let psi = random_pure_state(&mut r, 17);
    let phi = random_pure_state(&mut r, 17);
    let (p, q) = (projector(&psi), projector(&phi));
    c.bench_function("fidelity_pure_17", |b| {
        b.iter(|| black_box(fidelity_pure(&psi, &phi).unwrap()))
    });
    c.bench_function("fidelity_projectors_17", |b| {
        b.iter(|| black_box(fidelity(&p, &q).unwrap()))
    });
}

criterion_group!(benches, bench_fidelity, bench_sqrt, bench_pure_vs_projector);
criterion_main!(benches);
