use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use epseq::epsilon::{composition_sum, recursion_table, series_table, SumStrategy};
use epseq::gauge::{an_type_lower_bound, d_prime, log_identity_check};
use epseq::series::{arccosh_sq, arccosh_sq_derivative, cosh_sqrt, ArccoshSqMethod};
use epseq::BigInt;

fn epsilon_methods(c: &mut Criterion) {
    let mut group = c.benchmark_group("epsilon");
    group.sample_size(20);
    group.bench_function("series_table_100", |b| {
        b.iter(|| series_table(black_box(100)))
    });
    group.bench_function("recursion_table_60", |b| {
        b.iter(|| recursion_table(black_box(60)))
    });
    group.bench_function("composition_sum_25_partitions", |b| {
        b.iter(|| composition_sum(black_box(25), SumStrategy::Partitions))
    });
    group.bench_function("composition_sum_16_naive", |b| {
        b.iter(|| composition_sum(black_box(16), SumStrategy::NaiveCompositions))
    });
    group.finish();
}

fn series_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    group.sample_size(20);
    let f_prime = arccosh_sq_derivative(150);
    group.bench_function("inverse_150", |b| b.iter(|| f_prime.inverse()));
    let f = arccosh_sq(60, ArccoshSqMethod::ClosedForm);
    let h = cosh_sqrt(60);
    group.bench_function("compose_f_h_60", |b| b.iter(|| f.compose(&h)));
    group.finish();
}

fn gauge_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauge");
    // warm the shared epsilon cache so the scan cost dominates
    let _ = d_prime(13, &BigInt::from(13i64.pow(4)));
    group.bench_function("d_prime_13_at_13_pow_4", |b| {
        b.iter(|| d_prime(13, &BigInt::from(black_box(13i64.pow(4)))))
    });
    group.bench_function("an_type_lower_bound_200", |b| {
        b.iter(|| an_type_lower_bound(black_box(200)))
    });
    group.bench_function("log_identity_check_200", |b| {
        b.iter(|| log_identity_check(black_box(200), 1e-9))
    });
    group.finish();
}

criterion_group!(benches, epsilon_methods, series_ops, gauge_ops);
criterion_main!(benches);
