use criterion::{black_box, criterion_group, criterion_main, Criterion};
use smt_core::generators::{enumerate_standard, DegreeSpec, Mode};
use smt_core::hibi::FiniteLattice;
use smt_core::oracle::{gl_hilbert_by_rank, invariant_dimension, rank_of, Group, DEFAULT_MONOMIAL_CAP};
use smt_core::Params;

fn bench_invariants(c: &mut Criterion) {
    let p = Params::new(2, 3, 3).unwrap();
    let mut g = c.benchmark_group("invariant dimension");
    g.sample_size(10);
    for (a, b) in [(1, 1), (2, 2), (3, 1)] {
        g.bench_function(format!("SL ({a},{b})"), |bch| {
            bch.iter(|| black_box(invariant_dimension(&p, a, b, Group::SL, DEFAULT_MONOMIAL_CAP).unwrap()))
        });
    }
    g.bench_function("GL (3,3)", |bch| {
        bch.iter(|| black_box(invariant_dimension(&p, 3, 3, Group::GL, DEFAULT_MONOMIAL_CAP).unwrap()))
    });
    g.finish();
}

fn bench_ranks(c: &mut Criterion) {
    let p = Params::new(2, 3, 3).unwrap();
    let polys: Vec<_> = enumerate_standard(&p, DegreeSpec::Bidegree(2, 2), Mode::S)
        .unwrap()
        .iter()
        .map(|m| m.evaluate().unwrap())
        .collect();
    c.bench_function("rank of standard monomials (2,2)", |b| b.iter(|| black_box(rank_of(&polys))));
    let mut g = c.benchmark_group("pairing algebra");
    g.sample_size(10);
    g.bench_function("degree 3 by rank", |b| {
        b.iter(|| black_box(gl_hilbert_by_rank(&p, 3, DEFAULT_MONOMIAL_CAP).unwrap()))
    });
    g.finish();
}

fn bench_multichains(c: &mut Criterion) {
    let p = Params::new(2, 4, 4).unwrap();
    let lattice = FiniteLattice::of_d(&p).unwrap();
    c.bench_function("multichains k=6 at (2,4,4)", |b| b.iter(|| black_box(lattice.hilbert_a(6))));
}

criterion_group!(benches, bench_invariants, bench_ranks, bench_multichains);
criterion_main!(benches);
