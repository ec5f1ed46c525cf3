use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subcube_bench::{php_formula, tseitin_complete};
use subcube_core::families::{pyramid, ChargedGraph};
use subcube_core::oracles::{bpeb_graph, conical_junta_feasible, min_res_width, tseitin_level_census};
use subcube_core::subcubesums::viol_table;

fn pebbling(c: &mut Criterion) {
    let mut group = c.benchmark_group("bpeb");
    group.sample_size(10);
    for h in 2..=4 {
        let g = pyramid(h);
        group.bench_with_input(BenchmarkId::new("pyramid", h), &g, |b, g| b.iter(|| bpeb_graph(g).unwrap()));
    }
    group.finish();
}

fn lp(c: &mut Criterion) {
    let mut group = c.benchmark_group("conical_junta_feasible");
    group.sample_size(10);
    let target = viol_table(&php_formula(2)).unwrap().add_constant(-1);
    for d in 2..=3 {
        group.bench_with_input(BenchmarkId::new("php2", d), &d, |b, &d| b.iter(|| conical_junta_feasible(&target, d).unwrap()));
    }
    group.finish();
}

fn width_and_census(c: &mut Criterion) {
    let f = tseitin_complete(4);
    c.bench_function("min_res_width/tseitin_k4", |b| b.iter(|| min_res_width(&f).unwrap()));
    let g = ChargedGraph::complete(6);
    c.bench_function("census/k6", |b| b.iter(|| tseitin_level_census(&g).unwrap()));
}

criterion_group!(benches, pebbling, lp, width_and_census);
criterion_main!(benches);
