use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subcube_bench::pebhint_or;
use subcube_core::families::random_regular_bipartite;
use subcube_core::maxres::{enumerate_dpll_trees, simulate_treeres};
use subcube_core::witnesses::{pebhint_or_maxres_proof, pyramid2_pebbling_tree, scs_from_maxresw, subsetcard_scs_proof};

fn pebhint(c: &mut Criterion) {
    let mut group = c.benchmark_group("pebhint_or_maxres_proof");
    for h in [2, 5, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(h), &h, |b, &h| b.iter(|| pebhint_or_maxres_proof(h).unwrap()));
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let (f, t) = pyramid2_pebbling_tree();
    c.bench_function("simulate_treeres/pyramid2", |b| b.iter(|| simulate_treeres(&f, &t).unwrap()));
    let g = pebhint_or(1);
    let trees = enumerate_dpll_trees(&g, 4_000, 0, 0).unwrap();
    let t = &trees[0];
    c.bench_function("simulate_treeres/pebhint_or1_dpll", |b| b.iter(|| simulate_treeres(&g, t).unwrap()));
    let log = pebhint_or_maxres_proof(3).unwrap();
    c.bench_function("scs_from_maxresw/pebhint_or3", |b| b.iter(|| scs_from_maxresw(&log).unwrap()));
}

fn subset(c: &mut Criterion) {
    let g = random_regular_bipartite(8, 1).unwrap();
    c.bench_function("subsetcard_scs_proof/8", |b| b.iter(|| subsetcard_scs_proof(&g).unwrap()));
}

criterion_group!(benches, pebhint, simulation, subset);
criterion_main!(benches);
