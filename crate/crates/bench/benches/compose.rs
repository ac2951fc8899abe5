use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use linbicat::qrel::{compose_par, compose_tensor, FiniteSet, QRelation};
use linbicat::quantale::{Flavor, ZInf, ZInfLd, ZInfQuantale};
use linbicat::verify::{catalog_entry, Structure};

const SIZES: [usize; 3] = [8, 32, 96];

/// Square relation with deterministic mixed finite and infinite entries.
fn zinf_relation(n: usize, salt: i64) -> QRelation<ZInf> {
    let set = Arc::new(FiniteSet::indexed("S", n));
    QRelation::from_fn(set.clone(), set, |x, y| match (x * 7 + y * 3) as i64 % 11 + salt {
        0 => ZInf::NegInf,
        10 => ZInf::PosInf,
        v => ZInf::Fin(v - 5),
    })
}

fn zinf(c: &mut Criterion) {
    let q = ZInfLd::new(ZInfQuantale::new(Flavor::Tropical), 0);
    let mut group = c.benchmark_group("zinf");
    for n in SIZES {
        let (f, g) = (zinf_relation(n, 0), zinf_relation(n, 1));
        group.bench_with_input(BenchmarkId::new("tensor", n), &n, |b, _| {
            b.iter(|| compose_tensor(black_box(&q), black_box(&f), black_box(&g)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("par", n), &n, |b, _| {
            b.iter(|| compose_par(black_box(&q), black_box(&f), black_box(&g)).unwrap())
        });
    }
    group.finish();
}

fn table(c: &mut Criterion) {
    let entry = catalog_entry("diamond-frame").expect("catalog entry");
    let Structure::Table(q) = &entry.structure else { panic!("diamond-frame is a table quantale") };
    let size = q.tensor_part().len();
    let mut group = c.benchmark_group("diamond");
    for n in SIZES {
        let set = Arc::new(FiniteSet::indexed("S", n));
        let f = QRelation::from_fn(set.clone(), set.clone(), |x, y| (x + 2 * y) % size);
        let g = QRelation::from_fn(set.clone(), set, |x, y| (3 * x + y + 1) % size);
        group.bench_with_input(BenchmarkId::new("tensor", n), &n, |b, _| {
            b.iter(|| compose_tensor(black_box(q), black_box(&f), black_box(&g)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("par", n), &n, |b, _| {
            b.iter(|| compose_par(black_box(q), black_box(&f), black_box(&g)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, zinf, table);
criterion_main!(benches);
