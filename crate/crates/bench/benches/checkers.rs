use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subcube_core::maxres::{check_viol_invariant, replay};
use subcube_core::subcubesums::check_certificate;
use subcube_core::witnesses::{pebhint_or_maxres_proof, php_scs_proof};
use subcube_core::{CheckMode, CheckOptions};

fn certificates(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_certificate");
    for m in 1..=3 {
        let cert = php_scs_proof(m);
        group.bench_with_input(BenchmarkId::new("php", m), &cert, |b, cert| {
            b.iter(|| check_certificate(cert, CheckMode::Exhaustive).unwrap())
        });
    }
    let cert = php_scs_proof(4);
    group.bench_function("php/4/sampled", |b| {
        b.iter(|| check_certificate(&cert, CheckOptions::sampled(10_000, 1)).unwrap())
    });
    group.finish();
}

fn logs(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_viol_invariant");
    group.sample_size(20);
    for h in 1..=3 {
        let log = pebhint_or_maxres_proof(h).unwrap();
        group.bench_with_input(BenchmarkId::new("pebhint_or", h), &log, |b, log| {
            b.iter(|| check_viol_invariant(log, CheckMode::Exhaustive).unwrap())
        });
    }
    let log = pebhint_or_maxres_proof(5).unwrap();
    group.bench_function("replay/pebhint_or/5", |b| b.iter(|| replay(&log).unwrap()));
    group.finish();
}

criterion_group!(benches, certificates, logs);
criterion_main!(benches);
