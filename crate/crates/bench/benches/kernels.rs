//! Benchmarks for the hot kernels: lattice construction, the nice
//! partition search, the factorization search, and lattice isomorphism.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use arrfac::catalog::{self, NamedRestriction, RootSystem};
use arrfac::induction::indfac_search;
use arrfac::iso::lattice_isomorphic;
use arrfac::partition::nice_search;
use arrfac::SearchLimits;

fn limits() -> SearchLimits {
    SearchLimits::default()
}

fn bench_lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice");
    group.sample_size(20);
    for (name, arr) in [
        (
            "intermediate-2-4-2",
            catalog::intermediate(2, 4, 2).unwrap(),
        ),
        (
            "intermediate-3-4-2",
            catalog::intermediate(3, 4, 2).unwrap(),
        ),
        ("h3", catalog::root_system(RootSystem::H3).unwrap()),
    ] {
        group.bench_function(name, |b| {
            // Lattices are cached per arrangement, so rebuild a fresh
            // clone without its cache each iteration.
            b.iter_batched(
                || {
                    arrfac::Arrangement::new(
                        arr.dim(),
                        arr.field().clone(),
                        arr.hyperplanes()
                            .iter()
                            .map(|h| h.normal().to_vec())
                            .collect(),
                    )
                    .unwrap()
                },
                |fresh| fresh.lattice().num_flats(),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn bench_nice_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("nice-search");
    group.sample_size(20);
    let (b, _) = catalog::named_restriction(NamedRestriction::E6A1Cubed);
    let (cc, _) = catalog::named_restriction(NamedRestriction::E6A1A2);
    let a141 = catalog::intermediate(2, 4, 1).unwrap();
    // Warm the lattice caches so only the search is measured.
    for a in [&b, &cc, &a141] {
        a.lattice();
    }
    group.bench_function("e6-a1cubed (fails)", |bch| {
        bch.iter(|| nice_search(&b, &limits()).unwrap().is_some())
    });
    group.bench_function("e6-a1a2 (succeeds)", |bch| {
        bch.iter(|| nice_search(&cc, &limits()).unwrap().is_some())
    });
    group.bench_function("intermediate-2-4-1 (fails)", |bch| {
        bch.iter(|| nice_search(&a141, &limits()).unwrap().is_some())
    });
    group.finish();
}

fn bench_indfac(c: &mut Criterion) {
    let mut group = c.benchmark_group("indfac-search");
    group.sample_size(10);
    let a242 = catalog::intermediate(2, 4, 2).unwrap();
    let (d, _) = catalog::named_restriction(NamedRestriction::E7A1A3DoublePrime);
    for a in [&a242, &d] {
        a.lattice();
    }
    group.bench_function("intermediate-2-4-2", |bch| {
        bch.iter(|| indfac_search(&a242, &limits()).unwrap().is_some())
    });
    group.bench_function("e7-a1a3dd", |bch| {
        bch.iter(|| indfac_search(&d, &limits()).unwrap().is_some())
    });
    group.finish();
}

fn bench_iso(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice-isomorphic");
    group.sample_size(20);
    let e6 = catalog::simple_root_indices(RootSystem::E6).unwrap();
    let restr = catalog::subsystem_restriction(RootSystem::E6, &[e6[0], e6[2], e6[3]]).unwrap();
    let target = catalog::intermediate(2, 3, 2).unwrap();
    restr.lattice();
    target.lattice();
    group.bench_function("e6-a3 vs intermediate-2-3-2", |bch| {
        bch.iter(|| {
            lattice_isomorphic(&restr, &target, &limits())
                .unwrap()
                .is_some()
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_lattice,
    bench_nice_search,
    bench_indfac,
    bench_iso
);
criterion_main!(benches);
