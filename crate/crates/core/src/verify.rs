//! Batch verification suites. Each suite returns a report of named checks;
//! reports contain no timings, so equal configurations give equal reports.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generators::{enumerate_d, enumerate_h, enumerate_standard, DegreeSpec, GenMonomial, Mode};
use crate::hibi::{check_degeneration_hypotheses, hilbert_agreement, rank_dimension_report, FiniteLattice, DEFAULT_FULL_CHECK_CAP};
use crate::oracle::{det_phi, gl_hilbert_by_rank, gl_hilbert_oracle, invariant_dimension, rank_of, Group};
use crate::params::Params;
use crate::poset::{embed_chain, enumerate_tuples, join_d, lattice_coords, leq_pair, meet_d, theta, DElement};
use crate::straighten::{check_relation, presentation_check, straighten_traced, RelationTable, Strategy, DEFAULT_STEP_GUARD};

/// The available suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Order,
    Lattice,
    Relations,
    Basis,
    Degeneration,
    FundamentalGl,
    FundamentalSl,
    Rank,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Order,
        Suite::Lattice,
        Suite::Relations,
        Suite::Basis,
        Suite::Degeneration,
        Suite::FundamentalGl,
        Suite::FundamentalSl,
        Suite::Rank,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Order => "order",
            Suite::Lattice => "lattice",
            Suite::Relations => "relations",
            Suite::Basis => "basis",
            Suite::Degeneration => "degeneration",
            Suite::FundamentalGl => "fundamental-gl",
            Suite::FundamentalSl => "fundamental-sl",
            Suite::Rank => "rank",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::param(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything a suite run depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub params: Params,
    /// Bound on `a + b` for bidegree sweeps.
    pub maxdeg: usize,
    /// Degree bound for the presentation check.
    pub presentation_degree: usize,
    pub seed: u64,
    /// Number of random monomials for the confluence check.
    pub samples: usize,
    pub cap_monomials: usize,
    /// Cap on poset and lattice sizes.
    pub cap_lattice: usize,
}

impl VerifyConfig {
    pub fn new(params: Params) -> Self {
        VerifyConfig {
            params,
            maxdeg: 4,
            presentation_degree: 3,
            seed: 0,
            samples: 200,
            cap_monomials: crate::oracle::DEFAULT_MONOMIAL_CAP,
            cap_lattice: crate::poset::DEFAULT_POSET_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub params: Params,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "suite": self.suite.name(),
            "params": {"n": self.params.n, "m": self.params.m, "q": self.params.q},
            "seed": self.seed,
            "passed": self.passed(),
            "checks": self.checks,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,passed,detail\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},\"{}\"\n",
                self.suite,
                c.name,
                c.passed,
                c.detail.replace('"', "\"\"")
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} at {} seed {}\n", self.suite, self.params, self.seed);
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}: {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out.push_str(if self.passed() { "all checks passed\n" } else { "some checks failed\n" });
        out
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Order => order_checks(cfg)?,
        Suite::Lattice => lattice_checks(cfg)?,
        Suite::Relations => relation_checks(cfg)?,
        Suite::Basis => basis_checks(cfg)?,
        Suite::Degeneration => degeneration_checks(cfg)?,
        Suite::FundamentalGl => gl_checks(cfg)?,
        Suite::FundamentalSl => sl_checks(cfg)?,
        Suite::Rank => rank_checks(cfg)?,
    };
    Ok(SuiteReport {
        suite,
        params: cfg.params,
        seed: cfg.seed,
        checks,
    })
}

fn d_elements(cfg: &VerifyConfig) -> Result<Vec<DElement>> {
    let d = enumerate_d(&cfg.params)?;
    if d.len() > cfg.cap_lattice {
        return Err(Error::resource("elements of D", d.len(), cfg.cap_lattice));
    }
    Ok(d)
}

fn order_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let p = cfg.params;
    let d = d_elements(cfg)?;
    let coords: Vec<_> = d.iter().map(|x| lattice_coords(x, &p)).collect();
    let chains: Vec<_> = d.iter().map(|x| embed_chain(x, &p)).collect();
    let below = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut disagree = 0;
    let mut not_monotone = 0;
    let mut not_hom = 0;
    for i in 0..d.len() {
        for j in 0..d.len() {
            let le = d[i].leq(&d[j]);
            if le != below(&coords[i], &coords[j]) {
                disagree += 1;
            }
            if le && !chains[i].leq(&chains[j]) {
                not_monotone += 1;
            }
            let jn = embed_chain(&join_d(&d[i], &d[j], &p)?, &p);
            let mt = embed_chain(&meet_d(&d[i], &d[j], &p)?, &p);
            if jn != chains[i].join(&chains[j]) || mt != chains[i].meet(&chains[j]) {
                not_hom += 1;
            }
        }
    }
    let mut images = chains.clone();
    images.sort();
    images.dedup();
    let pairs = d.len() * d.len();
    let mut reversal_failures = 0;
    let mut reversal_pairs = 0;
    for n in 2..=6 {
        for dd in 1..n {
            let all = enumerate_tuples(dd, n)?;
            let img = all.iter().map(|i| theta(i, dd, n)).collect::<Result<Vec<_>>>()?;
            for a in 0..all.len() {
                for b in 0..all.len() {
                    reversal_pairs += 1;
                    let lhs = all[a].leq_componentwise(&all[b]);
                    let rhs = leq_pair((&img[b].0, &img[b].1), (&img[a].0, &img[a].1));
                    if lhs != rhs {
                        reversal_failures += 1;
                    }
                }
            }
        }
    }
    Ok(vec![
        Check::new(
            "order-agreement",
            disagree == 0,
            format!("{pairs} ordered pairs, {disagree} where the order and the lattice coordinates disagree"),
        ),
        Check::new(
            "chain-embedding",
            not_monotone == 0 && not_hom == 0,
            format!(
                "{pairs} ordered pairs, {not_monotone} order violations, {not_hom} join/meet mismatches; {} distinct chain vectors for {} elements",
                images.len(),
                d.len()
            ),
        ),
        Check::new(
            "theta-order-reversal",
            reversal_failures == 0,
            format!("{reversal_pairs} pairs over n <= 6, {reversal_failures} failures"),
        ),
    ])
}

fn lattice_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let p = cfg.params;
    let d = d_elements(cfg)?;
    let l = FiniteLattice::of_d(&p)?;
    let mut outside = 0;
    let mut mismatch = 0;
    let mut pairs = 0;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            pairs += 1;
            match (join_d(&d[i], &d[j], &p), meet_d(&d[i], &d[j], &p)) {
                (Ok(jn), Ok(mt)) => {
                    if jn != d[l.join(i, j)] || mt != d[l.meet(i, j)] {
                        mismatch += 1;
                    }
                }
                _ => outside += 1,
            }
        }
    }
    let full = d.len() <= DEFAULT_FULL_CHECK_CAP;
    let distributive = l.is_distributive(DEFAULT_FULL_CHECK_CAP, 20_000, cfg.seed);
    Ok(vec![
        Check::new(
            "closure",
            outside == 0 && mismatch == 0,
            format!("{pairs} pairs, {outside} outside D, {mismatch} differing from least upper/greatest lower bounds"),
        ),
        Check::new(
            "distributive",
            distributive,
            if full {
                format!("all {} triples", d.len().pow(3))
            } else {
                "20000 sampled triples".to_string()
            },
        ),
    ])
}

/// Seeded random monomials in `S` with 1 to `max_degree` factors.
pub fn random_monomials(params: &Params, count: usize, max_degree: usize, seed: u64) -> Result<Vec<GenMonomial>> {
    let h: Vec<DElement> = enumerate_h(params)?.into_iter().map(DElement::Gen).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let k = rng.gen_range(1..=max_degree.max(1));
            let f = (0..k).map(|_| h[rng.gen_range(0..h.len())].clone()).collect();
            GenMonomial::new(f, Mode::S, params).expect("generators of H are valid")
        })
        .collect())
}

fn relation_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let p = cfg.params;
    d_elements(cfg)?;
    let table = RelationTable::new(&p)?;
    let rels = table.all_relations()?;
    let bad: Vec<String> = rels
        .par_iter()
        .map(|r| check_relation(r, &table).map(|c| (r, c)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, c)| !c.passed())
        .map(|(r, c)| format!("{}*{} ({})", r.lhs.0, r.lhs.1, c.failures().join(",")))
        .collect();
    let monos = random_monomials(&p, cfg.samples, cfg.maxdeg, cfg.seed)?;
    let outcomes = monos
        .par_iter()
        .enumerate()
        .map(|(i, m)| {
            let a = straighten_traced(m, Strategy::First, &table, DEFAULT_STEP_GUARD)?;
            let b = straighten_traced(m, Strategy::Last, &table, DEFAULT_STEP_GUARD)?;
            let c = straighten_traced(m, Strategy::Random(cfg.seed.wrapping_add(i as u64)), &table, DEFAULT_STEP_GUARD)?;
            Ok((a.terms == b.terms && b.terms == c.terms, a.steps + b.steps + c.steps))
        })
        .collect::<Result<Vec<_>>>()?;
    let mismatches = outcomes.iter().filter(|(ok, _)| !ok).count();
    let steps: usize = outcomes.iter().map(|(_, s)| s).sum();
    Ok(vec![
        Check::new(
            "structure",
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} non-comparable pairs, all relations pass", rels.len())
            } else {
                format!("{} non-comparable pairs, failures: {}", rels.len(), bad.join("; "))
            },
        ),
        Check::new(
            "termination-confluence",
            mismatches == 0,
            format!(
                "{} random monomials of degree <= {}, {steps} weight-increasing rewrite steps, {mismatches} strategy mismatches",
                monos.len(),
                cfg.maxdeg
            ),
        ),
    ])
}

fn bidegrees(maxdeg: usize) -> Vec<(usize, usize)> {
    (0..=maxdeg)
        .flat_map(|t| (0..=t).rev().map(move |a| (a, t - a)))
        .collect()
}

fn basis_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let p = cfg.params;
    bidegrees(cfg.maxdeg)
        .into_par_iter()
        .map(|(a, b)| {
            let std = enumerate_standard(&p, DegreeSpec::Bidegree(a, b), Mode::S)?;
            let polys = std.iter().map(GenMonomial::evaluate).collect::<Result<Vec<_>>>()?;
            let rank = rank_of(&polys);
            let dim = invariant_dimension(&p, a, b, Group::SL, cfg.cap_monomials)?;
            Ok(Check::new(
                format!("bidegree ({a},{b})"),
                std.len() == rank && rank == dim,
                format!("standard {}, rank {rank}, invariant dimension {dim}", std.len()),
            ))
        })
        .collect()
}

fn degeneration_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let p = cfg.params;
    d_elements(cfg)?;
    let table = RelationTable::new(&p)?;
    let report = check_degeneration_hypotheses(&table)?;
    let detail = if report.passed() {
        format!("{} non-comparable pairs pass (a), (b), (c)", report.pairs_checked)
    } else {
        let v: Vec<String> = report
            .violations
            .iter()
            .map(|v| format!("{} ({})", v.pair, v.failures.join(",")))
            .collect();
        format!("{} pairs, violations: {}", report.pairs_checked, v.join("; "))
    };
    let mut checks = vec![Check::new("hypotheses", report.passed(), detail)];
    for (k, multichains, std) in hilbert_agreement(&p, 3)? {
        checks.push(Check::new(
            format!("hilbert k={k}"),
            multichains == std as u128,
            format!("multichains {multichains}, standard monomials {std}"),
        ));
    }
    Ok(checks)
}

fn p_only_count(p: &Params, k: usize) -> Result<usize> {
    Ok(enumerate_standard(p, DegreeSpec::Bidegree(k, k), Mode::S)?
        .into_iter()
        .filter(|m| m.factors().iter().all(DElement::is_p))
        .count())
}

fn gl_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let p = cfg.params;
    let det = det_phi(&p)?;
    let mut checks = vec![Check::new(
        "det-phi",
        det.is_zero(),
        format!("leading {0}x{0} minor of the pairing matrix has {1} terms", p.n + 1, det.num_terms()),
    )];
    for a in 0..=3 {
        let dim = invariant_dimension(&p, a, a, Group::GL, cfg.cap_monomials)?;
        let count = p_only_count(&p, a)?;
        checks.push(Check::new(
            format!("invariants ({a},{a})"),
            dim == count,
            format!("GL invariant dimension {dim}, standard monomials in p {count}"),
        ));
    }
    for k in 1..=3 {
        let by_rank = gl_hilbert_by_rank(&p, k, cfg.cap_monomials)?;
        let oracle = gl_hilbert_oracle(p.m, p.q, p.n, k, cfg.cap_monomials)?;
        let count = p_only_count(&p, k)? as u128;
        checks.push(Check::new(
            format!("hilbert k={k}"),
            by_rank == oracle && oracle == count,
            format!("series/oracle {oracle}, rank {by_rank}, standard monomials in p {count}"),
        ));
    }
    Ok(checks)
}

fn sl_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let p = cfg.params;
    let mut checks = bidegrees(cfg.maxdeg)
        .into_par_iter()
        .map(|(a, b)| {
            let count = enumerate_standard(&p, DegreeSpec::Bidegree(a, b), Mode::S)?.len();
            let dim = invariant_dimension(&p, a, b, Group::SL, cfg.cap_monomials)?;
            Ok(Check::new(
                format!("invariants ({a},{b})"),
                count == dim,
                format!("SL invariant dimension {dim}, standard monomials {count}"),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = RelationTable::new(&p)?;
    let report = presentation_check(&table, cfg.presentation_degree)?;
    for row in &report.rows {
        checks.push(Check::new(
            format!("presentation {} {}", row.flavor, row.grade),
            row.passed(),
            format!(
                "{} monomials, kernel {}, relation span {}, relations vanish {}",
                row.monomials, row.kernel_dim, row.relation_span_dim, row.relations_vanish
            ),
        ));
    }
    if let (Some(k), Some(s)) = (report.det_in_kernel, report.det_in_span) {
        checks.push(Check::new(
            "presentation det",
            k && s,
            format!("det in kernel {k}, det in relation span {s}"),
        ));
    }
    Ok(checks)
}

fn rank_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let r = rank_dimension_report(&cfg.params, cfg.cap_lattice)?;
    Ok(vec![
        Check::new(
            "H chains",
            r.h_chain_cardinalities == [r.h_expected],
            format!(
                "{} maximal chains with cardinalities {:?}, expected {}",
                r.h_chains, r.h_chain_cardinalities, r.h_expected
            ),
        ),
        Check::new(
            "D chains",
            r.d_chain_cardinalities == [r.d_expected],
            format!(
                "{} maximal chains with cardinalities {:?}, expected {}",
                r.d_chains, r.d_chain_cardinalities, r.d_expected
            ),
        ),
    ])
}
