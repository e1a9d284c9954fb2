use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qwalk_bench::{cycle, grid};
use qwalk_core::constructions::blow_up;
use qwalk_core::partition::coarsest_equitable;
use qwalk_core::spectral::{exp_oracle, SpectralDecomposition};
use qwalk_core::transfer::{check_pst, search_pst, PST_TOL};
use qwalk_core::{named_gadget, Claim, GadgetParams, Partition, PureState, TailLen};

fn spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigendecomposition");
    for k in [4usize, 8, 16] {
        let a = grid(k).adjacency_matrix();
        group.bench_with_input(BenchmarkId::new("grid", k * k), &a, |b, a| {
            b.iter(|| SpectralDecomposition::new(black_box(a)))
        });
    }
    group.finish();

    let a = cycle(32).adjacency_matrix();
    let mut group = c.benchmark_group("transition-c32");
    group.bench_function("spectral", |b| {
        let d = SpectralDecomposition::new(&a);
        b.iter(|| d.transition_matrix(black_box(3.7)))
    });
    group.bench_function("taylor", |b| b.iter(|| exp_oracle(black_box(&a), 3.7)));
    group.finish();
}

fn transfer(c: &mut Criterion) {
    let g = blow_up(&cycle(8), 2).unwrap();
    let (u, v) = (PureState::vertex(0), PureState::vertex(4));
    c.bench_function("search_pst blow-up c8 t<=20", |b| {
        b.iter(|| search_pst(black_box(&g), &u, &v, 20.0, 4096).unwrap())
    });

    let fly = named_gadget("flyswatter", &GadgetParams { tail: Some(TailLen::Infinite), ..Default::default() }).unwrap();
    let Claim::Transfer { src, dst, .. } = fly.claim else { unreachable!() };
    c.bench_function("check_pst flyswatter infinite tail", |b| {
        b.iter(|| check_pst(black_box(&fly.graph), &src, &dst, PI / SQRT_2, PST_TOL).unwrap())
    });

    let p2 = named_gadget("p2-twins", &GadgetParams::default()).unwrap();
    let Claim::Transfer { src, dst, .. } = p2.claim else { unreachable!() };
    c.bench_function("check_pst p2 twins", |b| {
        b.iter(|| check_pst(black_box(&p2.graph), &src, &dst, FRAC_PI_2, PST_TOL).unwrap())
    });
}

fn partitions(c: &mut Criterion) {
    let mut group = c.benchmark_group("coarsest_equitable");
    for k in [8usize, 16, 32] {
        let g = grid(k);
        let seed = Partition::new(k * k, vec![vec![0], (1..k * k).collect()]).unwrap();
        group.bench_with_input(BenchmarkId::new("grid corner", k * k), &(g, seed), |b, (g, seed)| {
            b.iter(|| coarsest_equitable(black_box(g), seed).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, spectral, transfer, partitions);
criterion_main!(benches);
