//! Cross-module invariants over several parameter choices.

mod common;

use proptest::prelude::*;
use smt_core::generators::{enumerate_d, enumerate_standard, DegreeSpec, Mode};
use smt_core::hibi::FiniteLattice;
use smt_core::poset::{
    build_poset, canonical_cmp, embed_chain, from_lattice_coords, join_d, lattice_coords, leq_h, meet_d,
    PosetKind, DEFAULT_POSET_CAP,
};
use smt_core::straighten::{min_weight_base, straighten_traced, weight, RelationTable, Strategy as Rewrite, DEFAULT_STEP_GUARD};
use smt_core::{DElement, GenMonomial, Params, SparsePoly};

const SMALL: [(usize, usize, usize); 6] = [(1, 2, 2), (1, 3, 2), (2, 3, 3), (2, 4, 3), (2, 3, 4), (3, 4, 4)];

fn params(t: (usize, usize, usize)) -> Params {
    Params::new(t.0, t.1, t.2).unwrap()
}

#[test]
fn element_counts_match_binomial_formula() {
    for t in SMALL {
        let d = enumerate_d(&params(t)).unwrap();
        assert_eq!(d.len() as u128, common::h_size(t.0 as u128, t.1 as u128, t.2 as u128) + 2, "{t:?}");
    }
}

#[test]
fn coordinates_are_an_order_embedding() {
    for t in SMALL {
        let p = params(t);
        let d = enumerate_d(&p).unwrap();
        for x in &d {
            let cx = lattice_coords(x, &p);
            assert_eq!(from_lattice_coords(&cx, &p).as_ref(), Some(x));
            for y in &d {
                let cy = lattice_coords(y, &p);
                let below = cx.iter().zip(&cy).all(|(a, b)| a <= b);
                assert_eq!(leq_h(x, y), below, "{t:?}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn chain_embedding_is_monotone() {
    for t in SMALL {
        let p = params(t);
        let d = enumerate_d(&p).unwrap();
        for x in &d {
            assert!(embed_chain(x, &p).in_bounds(&p));
            for y in &d {
                if leq_h(x, y) {
                    assert!(embed_chain(x, &p).leq(&embed_chain(y, &p)), "{t:?}: {x} <= {y}");
                }
            }
        }
    }
}

#[test]
fn join_and_meet_agree_with_brute_force() {
    for t in SMALL {
        let p = params(t);
        let d = enumerate_d(&p).unwrap();
        let brute = FiniteLattice::of_d(&p).unwrap();
        assert!(brute.is_distributive_exhaustive(), "{t:?}");
        for i in 0..d.len() {
            for j in 0..d.len() {
                assert_eq!(join_d(&d[i], &d[j], &p).unwrap(), d[brute.join(i, j)]);
                assert_eq!(meet_d(&d[i], &d[j], &p).unwrap(), d[brute.meet(i, j)]);
            }
        }
    }
}

#[test]
fn canonical_order_extends_the_poset() {
    for t in SMALL {
        let p = params(t);
        let d = enumerate_d(&p).unwrap();
        for x in &d {
            for y in &d {
                if x != y && leq_h(x, y) {
                    assert_eq!(canonical_cmp(y, x, &p), std::cmp::Ordering::Less, "{t:?}: {y} before {x}");
                }
            }
        }
    }
}

#[test]
fn chain_length_table_matches_enumeration() {
    for t in SMALL {
        let p = params(t);
        for kind in [PosetKind::H, PosetKind::D] {
            let poset = build_poset(kind, &p, DEFAULT_POSET_CAP).unwrap();
            let mut by_len = std::collections::BTreeMap::<usize, u128>::new();
            poset.for_each_maximal_chain(|c| *by_len.entry(c.len()).or_default() += 1);
            assert_eq!(poset.chain_cardinalities(), by_len, "{t:?} {kind:?}");
            let d = t.0 * (t.1 + t.2) - t.0 * t.0;
            let want = if kind == PosetKind::H { d + 1 } else { d + 3 };
            assert_eq!(by_len.keys().copied().collect::<Vec<_>>(), vec![want], "{t:?} {kind:?}");
        }
    }
}

#[test]
fn multichains_count_standard_monomials() {
    for t in [(1, 2, 2), (2, 3, 3), (2, 4, 3)] {
        let p = params(t);
        let lattice = FiniteLattice::of_d(&p).unwrap();
        for k in 0..=2 {
            let std = enumerate_standard(&p, DegreeSpec::Degree(k), Mode::RD).unwrap();
            assert_eq!(lattice.hilbert_a(k), std.len() as u128, "{t:?} k={k}");
        }
    }
}

fn monomial_strategy(p: Params) -> impl Strategy<Value = GenMonomial> {
    let pool: Vec<DElement> = enumerate_d(&p).unwrap().into_iter().filter(|x| !x.is_extremal()).collect();
    proptest::collection::vec(0..pool.len(), 1..=4).prop_map(move |idx| {
        let f = idx.iter().map(|&i| pool[i].clone()).collect();
        GenMonomial::new(f, Mode::S, &p).unwrap()
    })
}

fn eval_sum(terms: &[(smt_core::Rational, GenMonomial)], p: &Params) -> SparsePoly {
    let mut s = SparsePoly::zero(p);
    for (c, t) in terms {
        s.add_scaled(c, &t.evaluate().unwrap());
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn straightening_is_sound_and_confluent(m in monomial_strategy(params((2, 3, 3))), seed in any::<u64>()) {
        let p = params((2, 3, 3));
        let table = RelationTable::new(&p).unwrap();
        let a = straighten_traced(&m, Rewrite::First, &table, DEFAULT_STEP_GUARD).unwrap();
        let b = straighten_traced(&m, Rewrite::Random(seed), &table, DEFAULT_STEP_GUARD).unwrap();
        prop_assert_eq!(&a.terms, &b.terms);
        prop_assert!(a.terms.iter().all(|(_, t)| t.is_standard() && t.content() == m.content()));
        prop_assert_eq!(eval_sum(&a.terms, &p), m.evaluate().unwrap());
        if m.is_standard() {
            prop_assert_eq!(a.steps, 0);
        }
    }

    #[test]
    fn straightening_works_at_n_one(m in monomial_strategy(params((1, 3, 2)))) {
        let p = params((1, 3, 2));
        let table = RelationTable::new(&p).unwrap();
        let out = straighten_traced(&m, Rewrite::Last, &table, DEFAULT_STEP_GUARD).unwrap();
        prop_assert_eq!(eval_sum(&out.terms, &p), m.evaluate().unwrap());
    }

    #[test]
    fn product_weight_is_order_compatible(i in 0usize..26, j in 0usize..26, k in 0usize..26) {
        // multiplying by a common factor keeps the weight order
        let p = params((2, 3, 3));
        let d = enumerate_d(&p).unwrap();
        let base = min_weight_base(&p);
        let mono = |xs: &[usize]| GenMonomial::new(xs.iter().map(|&x| d[x].clone()).collect(), Mode::RD, &p).unwrap();
        let (x, y) = (mono(&[i]), mono(&[j]));
        let (xz, yz) = (mono(&[i, k]), mono(&[j, k]));
        let wx = weight(&x, base).unwrap();
        let wy = weight(&y, base).unwrap();
        if wx < wy {
            prop_assert!(weight(&xz, base).unwrap() < weight(&yz, base).unwrap());
        }
    }

    #[test]
    fn lattice_normal_form_is_unique(idx in proptest::collection::vec(0usize..26, 1..6), seed in any::<u64>()) {
        let p = params((2, 3, 3));
        let lattice = FiniteLattice::of_d(&p).unwrap();
        prop_assert_eq!(lattice.normal_form(&idx, None), lattice.normal_form(&idx, Some(seed)));
    }
}
