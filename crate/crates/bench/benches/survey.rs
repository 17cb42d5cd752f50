use criterion::{criterion_group, criterion_main, Criterion};
use dicirc_core::classifier::{condition_iii, DifferenceSetCriterion};
use dicirc_core::search::{enumerate_specs, survey, SurveyOptions};
use dicirc_core::{build_graph, is_distance_regular, ConnectionSpec};

fn bench_survey(c: &mut Criterion) {
    let options = SurveyOptions::default();
    for n in [3, 4] {
        c.bench_function(&format!("survey n={n}"), |b| b.iter(|| survey(n, &options).unwrap()));
    }
}

fn bench_drg_check(c: &mut Criterion) {
    let spec: ConnectionSpec = "n=8; R=1,3,13,15; T=1,9".parse().unwrap();
    c.bench_function("build + drg n=8", |b| {
        b.iter(|| is_distance_regular(&build_graph(&spec), true).unwrap())
    });
}

fn bench_condition_scan(c: &mut Criterion) {
    let specs: Vec<ConnectionSpec> = enumerate_specs(6, false).unwrap().collect();
    c.bench_function("condition_iii scan n=6", |b| {
        b.iter(|| specs.iter().filter(|s| condition_iii(s).holds).count())
    });
    let criterion = DifferenceSetCriterion::new(6);
    c.bench_function("condition_iii_prime scan n=6", |b| {
        b.iter(|| specs.iter().filter(|s| criterion.check(s).unwrap_or(false)).count())
    });
}

criterion_group!(benches, bench_survey, bench_drg_check, bench_condition_scan);
criterion_main!(benches);
