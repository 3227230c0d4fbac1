use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use squish_core::exec::Exec;
use squish_core::partitionfn::{colored_gf_box, measure_check};
use squish_core::planepart::{count_boxed, BoxShape};
use squish_core::squish::squish_counts;

const PATHS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_boxed");
    for shape in [BoxShape::new(3, 3, 3), BoxShape::new(4, 4, 4)] {
        for (name, exec) in PATHS {
            group.bench_with_input(BenchmarkId::new(name, shape), &shape, |b, &s| b.iter(|| count_boxed(s, exec)));
        }
    }
    group.finish();
}

fn colored_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("colored_gf_box");
    group.sample_size(10);
    let shape = BoxShape::new(4, 4, 4);
    for (name, exec) in PATHS {
        group.bench_with_input(BenchmarkId::new(name, shape), &shape, |b, &s| b.iter(|| colored_gf_box(s, exec)));
    }
    group.finish();
}

fn fibers(c: &mut Criterion) {
    let mut group = c.benchmark_group("fibers");
    group.sample_size(10);
    let shape = BoxShape::new(4, 4, 4);
    for (name, exec) in PATHS {
        group.bench_with_input(BenchmarkId::new(format!("squish_counts/{name}"), shape), &shape, |b, &s| {
            b.iter(|| squish_counts(s, exec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new(format!("measure_check/{name}"), shape), &shape, |b, &s| {
            b.iter(|| measure_check(s, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, colored_sums, fibers);
criterion_main!(benches);
