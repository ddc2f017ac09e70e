//! The S-mode relation table at (2,3,3) is pinned in a golden file.
//! Set `SMT_REGENERATE_GOLDEN=1` to rewrite it after an intended change.

use std::path::PathBuf;

use smt_core::generators::Mode;
use smt_core::straighten::{check_relation, relations_from_json, relations_to_json, RelationTable};
use smt_core::{Params, Relation};

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/relations_2_3_3.json")
}

fn current() -> String {
    let p = Params::new(2, 3, 3).unwrap();
    let table = RelationTable::new(&p).unwrap();
    let rels: Vec<Relation> = table.all_relations().unwrap().iter().map(|r| r.to_s()).collect();
    serde_json::to_string_pretty(&relations_to_json(&p, Mode::S, &rels)).unwrap() + "\n"
}

#[test]
fn relations_match_golden_file() {
    let now = current();
    let path = golden_path();
    if std::env::var_os("SMT_REGENERATE_GOLDEN").is_some() {
        std::fs::write(&path, &now).unwrap();
        return;
    }
    let stored = std::fs::read_to_string(&path).expect("golden file present");
    assert!(stored == now, "relation table drifted from {}", path.display());
}

#[test]
fn golden_file_round_trips_and_checks() {
    let stored = std::fs::read_to_string(golden_path()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stored).unwrap();
    let (p, mode, rels) = relations_from_json(&v).unwrap();
    assert_eq!((p.n, p.m, p.q), (2, 3, 3));
    assert_eq!(mode, Mode::S);
    assert_eq!(rels.len(), 68);
    let again = serde_json::to_string_pretty(&relations_to_json(&p, mode, &rels)).unwrap() + "\n";
    assert_eq!(again, stored);
    let table = RelationTable::new(&p).unwrap();
    for r in &rels {
        // S-mode relations are still exact identities in the invariant ring
        let lhs = r.lhs_monomial().evaluate().unwrap();
        let mut rhs = smt_core::SparsePoly::zero(&p);
        for (c, t) in &r.rhs {
            rhs.add_scaled(c, &t.evaluate().unwrap());
        }
        assert_eq!(lhs, rhs, "{r}");
        assert!(r.rhs.iter().all(|(_, t)| t.is_standard()), "{r}");
    }
    // the stored table is the S-image of the RD table used for rewriting
    for r in table.all_relations().unwrap() {
        assert!(check_relation(&r, &table).unwrap().passed());
    }
}
