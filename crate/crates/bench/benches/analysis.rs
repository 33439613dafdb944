use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ordkit_bench::{chain, pseudocomplemented_poset, random_poset};
use ordkit_core::dsl;
use ordkit_core::ideal::IdealFilterCatalog;
use ordkit_core::pseudo;
use ordkit_core::theorems;

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for n in [64, 256, 1024] {
        let p = random_poset(n, 4.0 / n as f64, 7);
        let text = dsl::serialize_poset("b", &p);
        group.bench_with_input(BenchmarkId::new("parse_and_build", n), &text, |b, text| {
            b.iter(|| dsl::parse(black_box(text)).unwrap().entries[0].to_poset().unwrap())
        });
    }
    group.finish();
}

fn catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog");
    for n in [16, 64, 256] {
        let p = random_poset(n, 0.1, 11);
        group.bench_with_input(BenchmarkId::new("random", n), &p, |b, p| {
            b.iter(|| IdealFilterCatalog::build(black_box(p)))
        });
    }
    let p = chain(256);
    group.bench_function("chain/256", |b| b.iter(|| IdealFilterCatalog::build(black_box(&p))));
    group.finish();
}

fn star(c: &mut Criterion) {
    let mut group = c.benchmark_group("star_table");
    for n in [64, 256] {
        let p = chain(n);
        group.bench_with_input(BenchmarkId::new("chain", n), &p, |b, p| {
            b.iter(|| pseudo::star_table(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn theorem_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_all");
    group.sample_size(10);
    for n in [5, 7] {
        let p = pseudocomplemented_poset(n, 0.4, 5);
        group.bench_with_input(BenchmarkId::new("pseudocomplemented", p.len()), &p, |b, p| {
            b.iter(|| theorems::check_all(black_box(p)))
        });
    }
    group.finish();
}

criterion_group!(benches, closure, catalog, star, theorem_suite);
criterion_main!(benches);
