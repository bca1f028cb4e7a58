use aeroplane_core::coding::{compare_regions, upper_arc};
use aeroplane_core::exchange::{trace_scenario, ScenarioConfig};
use aeroplane_core::lamination::{minor_leaf_of, pullback_lamination};
use aeroplane_core::{Angle, Families};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn words(c: &mut Criterion) {
    let fam = Families::up_to(8);
    let mut g = c.benchmark_group("words");
    for k in [2usize, 5, 8] {
        let l = fam.level(k);
        g.bench_with_input(BenchmarkId::new("upper_arc", k), &l.v, |b, v| b.iter(|| upper_arc(black_box(v))));
        g.bench_with_input(BenchmarkId::new("compare", k), &(&l.v, &l.w), |b, (v, w)| {
            b.iter(|| compare_regions(black_box(v), black_box(w)))
        });
    }
    g.bench_function("build_levels_8", |b| b.iter(|| Families::up_to(black_box(8))));
    g.finish();
}

fn lamination(c: &mut Criterion) {
    let minor = minor_leaf_of(&Angle::frac(3, 7)).unwrap();
    let mut g = c.benchmark_group("lamination");
    for depth in [8usize, 12] {
        g.bench_with_input(BenchmarkId::new("pullback", depth), &depth, |b, &d| {
            b.iter(|| pullback_lamination(&minor, d).unwrap())
        });
    }
    g.finish();
}

fn exchange(c: &mut Criterion) {
    let fam = Families::up_to(2);
    let mut g = c.benchmark_group("exchange");
    let cfgs = [
        ScenarioConfig::basic(&fam).unwrap(),
        ScenarioConfig::level(&fam, 2).unwrap(),
        ScenarioConfig::mating(&fam, 0, 0).unwrap(),
    ];
    for cfg in &cfgs {
        g.bench_with_input(BenchmarkId::new("trace", cfg.name()), cfg, |b, cfg| {
            b.iter(|| trace_scenario(cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, words, lamination, exchange);
criterion_main!(benches);
