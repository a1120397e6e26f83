use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hcint::closedform::{integral, weyl_sum_integral};
use hcint::symalg::discriminant_norm;
use hcint::{Family, GroupSpec, Method};
use hcint_bench::{regular, regular_alt};

const FAMILIES: [Family; 4] = [
    Family::UnitaryA,
    Family::SpecialOrthogonalEvenD,
    Family::SpecialOrthogonalOddB,
    Family::SymplecticC,
];

fn weyl_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("weyl_sum");
    for f in FAMILIES {
        for n in [2, 4, 6] {
            let spec = GroupSpec::new(f, n).unwrap();
            let (a, b) = (regular(n), regular_alt(n));
            group.bench_with_input(BenchmarkId::new(format!("{f:?}"), n), &n, |bench, _| {
                bench.iter(|| weyl_sum_integral(&spec, &a, &b).unwrap())
            });
        }
    }
    group.finish();
}

fn determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("determinant");
    for f in FAMILIES {
        for n in [2, 4, 8] {
            let spec = GroupSpec::new(f, n).unwrap();
            let (a, b) = (regular(n), regular_alt(n));
            group.bench_with_input(BenchmarkId::new(format!("{f:?}"), n), &n, |bench, _| {
                bench.iter(|| integral(&spec, &a, &b, Method::Determinant).unwrap())
            });
        }
    }
    group.finish();
}

fn normalization(c: &mut Criterion) {
    let mut group = c.benchmark_group("discriminant_norm");
    group.sample_size(10);
    for f in FAMILIES {
        let spec = GroupSpec::new(f, 5).unwrap();
        group.bench_function(spec.to_string(), |bench| {
            bench.iter(|| discriminant_norm(&spec))
        });
    }
    group.finish();
}

criterion_group!(benches, weyl_sum, determinant, normalization);
criterion_main!(benches);
