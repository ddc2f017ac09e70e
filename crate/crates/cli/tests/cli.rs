use std::process::{Command, Output};

fn smt_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smt-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(args: &[&str]) -> Vec<String> {
    let o = smt_lab(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).lines().map(str::to_string).collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn enumerate_counts() {
    let h = binomial(3, 2) + binomial(3, 2) + 3 * 3 + binomial(3, 2) * binomial(3, 2);
    let base = ["--n", "2", "--m", "3", "--q", "3"];
    let run = |extra: &[&str]| lines(&[extra, &base[..]].concat());
    assert_eq!(run(&["enumerate", "--poset", "H"]).len(), h);
    assert_eq!(run(&["enumerate", "--poset", "D"]).len(), h + 2);
    assert_eq!(run(&["enumerate", "--standard", "--bidegree", "1,1"]).len(), 3 * 3);
    assert_eq!(run(&["enumerate", "--standard", "--degree", "1"]).len(), h + 2);
}

#[test]
fn enumerate_json_and_csv() {
    let out = lines(&["enumerate", "--poset", "D", "--format", "json"]).join("\n");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["elements"].as_array().unwrap().len(), 26);
    let csv = lines(&["enumerate", "--poset", "H", "--format", "csv"]);
    assert_eq!(csv[0], "elements");
    assert_eq!(csv.len(), 25);
    // entries with commas are quoted
    assert!(csv.iter().any(|l| l.starts_with('"')));
}

#[test]
fn straighten_examples() {
    assert_eq!(lines(&["straighten", "u[1,2]*xi[1,2]"]), ["1 p[1,2|1,2]"]);
    assert_eq!(lines(&["straighten", "p[1|2]*p[2|1]"]), ["1 p[2|2]*p[1|1]", "-1 p[1,2|1,2]"]);
    assert_eq!(lines(&["straighten", "p[1|1]"]), ["1 p[1|1]"]);
    assert_eq!(lines(&["straighten", "u[1,2]*xi[1,2]", "--mode", "rd"]), ["1 p[1,2|1,2]*BOT"]);
}

#[test]
fn straighten_strategies_agree() {
    let m = "u[1,3]*xi[1,2]*p[2|3]*p[3|1]";
    let first = lines(&["straighten", m, "--strategy", "first"]);
    assert!(!first.is_empty());
    assert_eq!(first, lines(&["straighten", m, "--strategy", "last"]));
    for seed in ["1", "99"] {
        assert_eq!(first, lines(&["straighten", m, "--strategy", "random", "--seed", seed]));
    }
}

#[test]
fn straighten_json() {
    let out = lines(&["straighten", "p[1|2]*p[2|1]", "--format", "json"]).join("\n");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[1]["coeff"], "-1/1");
    assert_eq!(terms[1]["monomial"], "p[1,2|1,2]");
}

#[test]
fn exit_codes() {
    assert_eq!(smt_lab(&["straighten", "p[1|"]).status.code(), Some(2));
    assert_eq!(smt_lab(&["straighten", "p[4|1]"]).status.code(), Some(2));
    assert_eq!(smt_lab(&["--n", "3", "--m", "3", "enumerate", "--poset", "H"]).status.code(), Some(2));
    assert_eq!(smt_lab(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(smt_lab(&["bogus"]).status.code(), Some(2));
    assert_eq!(smt_lab(&["enumerate"]).status.code(), Some(2));
    let capped = smt_lab(&["verify", "--suite", "basis", "--cap-monomials", "10"]);
    assert_eq!(capped.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
    assert_eq!(
        smt_lab(&["verify", "--suite", "lattice", "--cap-lattice", "5"]).status.code(),
        Some(4)
    );
}

#[test]
fn verify_suites_pass() {
    for suite in ["order", "lattice", "relations", "basis", "degeneration", "rank"] {
        let o = smt_lab(&["verify", "--suite", suite, "--maxdeg", "4"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(!stdout(&o).contains("[FAIL]"));
    }
    let rank = stdout(&smt_lab(&["verify", "--suite", "rank"]));
    assert!(rank.contains("expected 9") && rank.contains("expected 11"));
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--suite", "relations", "--seed", "17", "--format", "json"];
    let a = smt_lab(&args);
    let b = smt_lab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["seed"], 17);
    assert_eq!(v["passed"], true);
    // thread count does not change the report
    let c = Command::new(env!("CARGO_BIN_EXE_smt-lab"))
        .args(args)
        .env("SMT_LAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn verify_csv() {
    let csv = lines(&["verify", "--suite", "rank", "--format", "csv"]);
    assert_eq!(csv[0], "suite,check,passed,detail");
    assert_eq!(csv.len(), 3);
    assert!(csv[1].starts_with("rank,H chains,true,"));
}

#[test]
fn relations_export() {
    let out = smt_lab(&["relations"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["mode"], "S");
    let rels = v["relations"].as_array().unwrap();
    // one relation per non-comparable pair of the extended poset
    assert_eq!(rels.len(), 68);
    let rd: serde_json::Value = serde_json::from_slice(&smt_lab(&["relations", "--mode", "rd"]).stdout).unwrap();
    assert_eq!(rd["mode"], "RD");
    assert_eq!(rd["relations"].as_array().unwrap().len(), 68);
}

#[test]
fn lattice_roundtrip_and_rejection() {
    let dir = std::env::temp_dir().join(format!("smt-lab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let exported = smt_lab(&["lattice", "--export"]);
    assert!(exported.status.success());
    let path = dir.join("d.json");
    std::fs::write(&path, &exported.stdout).unwrap();
    let summary = lines(&["lattice", "--input", path.to_str().unwrap(), "--format", "csv"]);
    assert!(summary.contains(&"elements,26".to_string()));
    assert!(summary.contains(&"distributive,true".to_string()));
    assert!(summary.contains(&"binomials,68".to_string()));
    assert!(summary.contains(&"hilbert_1,26".to_string()));

    // the diamond M3 is a lattice but not distributive
    let m3 = dir.join("m3.json");
    std::fs::write(
        &m3,
        r#"{"schema":1,"elements":["0","a","b","c","1"],"covers":[[0,1],[0,2],[0,3],[1,4],[2,4],[3,4]]}"#,
    )
    .unwrap();
    let o = smt_lab(&["lattice", "--input", m3.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("distributive: false"));

    let garbage = dir.join("bad.json");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(smt_lab(&["lattice", "--input", garbage.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
