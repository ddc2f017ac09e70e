use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use smt_bench::parsed_2_3_3;
use smt_core::straighten::{straighten, RelationTable, Strategy};
use smt_core::verify::random_monomials;
use smt_core::Params;

fn warm_table(p: &Params) -> RelationTable {
    let t = RelationTable::new(p).unwrap();
    t.all_relations().unwrap();
    t
}

fn bench_straighten(c: &mut Criterion) {
    let p = Params::new(2, 3, 3).unwrap();
    let table = warm_table(&p);
    let fixed = parsed_2_3_3();
    c.bench_function("straighten fixed monomials (2,3,3)", |b| {
        b.iter(|| {
            for m in &fixed {
                black_box(straighten(m, Strategy::First, &table).unwrap());
            }
        })
    });
    let random = random_monomials(&p, 200, 4, 0).unwrap();
    for (name, s) in [("first", Strategy::First), ("last", Strategy::Last), ("random", Strategy::Random(1))] {
        c.bench_function(&format!("straighten 200 random monomials, {name}"), |b| {
            b.iter(|| {
                for m in &random {
                    black_box(straighten(m, s, &table).unwrap());
                }
            })
        });
    }
}

fn bench_relation_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("relation table");
    g.sample_size(10);
    for (n, m, q) in [(2, 3, 3), (2, 4, 3)] {
        let p = Params::new(n, m, q).unwrap();
        g.bench_function(format!("all relations {p}"), |b| {
            b.iter_batched(
                || RelationTable::new(&p).unwrap(),
                |t| black_box(t.all_relations().unwrap().len()),
                BatchSize::LargeInput,
            )
        });
    }
    g.finish();
}

criterion_group!(benches, bench_straighten, bench_relation_table);
criterion_main!(benches);
