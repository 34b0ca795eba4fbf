use catcoh::extension::extension_pages;
use catcoh::homalg::{cohomology_dims, tor_groups, Window};
use catcoh::{CatModule, Variance};
use catcoh_bench::*;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn group_cohomology(c: &mut Criterion) {
    let mut g = c.benchmark_group("group cohomology");
    for (name, n) in [("Z4", 6), ("V4", 5), ("S3", 4)] {
        let m = trivial_coefficients(name);
        g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| b.iter(|| cohomology_dims(&m, n).unwrap()));
    }
    g.finish();
}

fn tor_on_chains(c: &mut Criterion) {
    let mut g = c.benchmark_group("tor on chains");
    for n in [3, 5, 7] {
        let cat = chain(n);
        let right = CatModule::constant(cat.clone(), f2(), Variance::Right);
        let left = CatModule::constant(cat, f2(), Variance::Left);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| b.iter(|| tor_groups(&right, &left, 3).unwrap()));
    }
    g.finish();
}

fn orbit_pages(c: &mut Criterion) {
    let mut g = c.benchmark_group("orbit extension pages");
    g.sample_size(10);
    for (name, n) in [("Z4", 3), ("V4", 3), ("S3", 2)] {
        let (ext, m) = orbit_extension(name);
        g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| b.iter(|| extension_pages(&ext, &m, 4, Window::through(n)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, group_cohomology, tor_on_chains, orbit_pages);
criterion_main!(benches);
