use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use skewdet::{commutative_oracle, deg_det, mat_mul, quotient_dim_oracle, OracleCaps};
use skewdet_bench::{instances, matrices};

fn bench_deg_det(c: &mut Criterion) {
    let mut group = c.benchmark_group("deg_det");
    for inst in instances() {
        for n in [2, 3] {
            let ms = matrices(&inst, 16, n, 2);
            group.bench_with_input(BenchmarkId::new(inst.name, n), &ms, |b, ms| {
                b.iter(|| ms.iter().map(|m| deg_det(black_box(m)).free_rank_s).sum::<usize>())
            });
        }
    }
    group.finish();
}

fn bench_oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    group.sample_size(10);
    for inst in instances() {
        let ms = matrices(&inst, 8, 2, 2);
        group.bench_with_input(BenchmarkId::new("quotient_dim", inst.name), &ms, |b, ms| {
            b.iter(|| {
                for m in ms {
                    black_box(quotient_dim_oracle(m, OracleCaps::default()));
                }
            })
        });
        if inst.ring.is_commutative() {
            let ms = matrices(&inst, 8, 4, 3);
            group.bench_with_input(BenchmarkId::new("commutative", inst.name), &ms, |b, ms| {
                b.iter(|| {
                    for m in ms {
                        black_box(commutative_oracle(m).unwrap());
                    }
                })
            });
        }
    }
    group.finish();
}

fn bench_products(c: &mut Criterion) {
    let mut group = c.benchmark_group("mat_mul");
    for inst in instances() {
        let ms = matrices(&inst, 8, 3, 2);
        group.bench_with_input(BenchmarkId::from_parameter(inst.name), &ms, |b, ms| {
            b.iter(|| {
                for pair in ms.windows(2) {
                    black_box(mat_mul(&pair[0], &pair[1]).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_deg_det, bench_oracles, bench_products);
criterion_main!(benches);
