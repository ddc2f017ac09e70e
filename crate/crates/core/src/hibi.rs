//! Finite distributive lattices and their binomial algebras `A(L)`: binomial
//! generators, normal forms, multichain counts, and the degeneration checks
//! for `D`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{enumerate_d, enumerate_standard, DegreeSpec, Mode};
use crate::params::Params;
use crate::poset::{build_poset, PosetKind};
use crate::straighten::{check_relation, Relation, RelationTable};

/// Lattices up to this size get the full triple distributivity check.
pub const DEFAULT_FULL_CHECK_CAP: usize = 64;

/// A finite lattice with precomputed join and meet tables.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    /// Number of elements below each element, used to sort multichains.
    down: Vec<usize>,
}

/// `x y - (x∧y)(x∨y)` for a non-comparable pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBinomial {
    pub x: usize,
    pub y: usize,
    pub meet: usize,
    pub join: usize,
}

/// Lattice interchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub schema: u32,
    pub elements: Vec<String>,
    /// `[lower, upper]` index pairs.
    pub covers: Vec<[usize; 2]>,
}

impl FiniteLattice {
    /// Builds from a full order relation, finding joins and meets as least
    /// upper and greatest lower bounds.
    pub fn from_leq(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::param("order relation has the wrong shape"));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::param(format!("{} is not <= itself", labels[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::param(format!("{} and {} are equivalent", labels[i], labels[j])));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::param("order relation is not transitive"));
                    }
                }
            }
        }
        let bound = |i: usize, j: usize, upper: bool| -> Result<usize> {
            let ok = |k: usize| if upper { leq[i][k] && leq[j][k] } else { leq[k][i] && leq[k][j] };
            let cands: Vec<usize> = (0..n).filter(|&k| ok(k)).collect();
            cands
                .iter()
                .copied()
                .find(|&k| cands.iter().all(|&c| if upper { leq[k][c] } else { leq[c][k] }))
                .ok_or_else(|| {
                    Error::param(format!(
                        "{} and {} have no {}",
                        labels[i],
                        labels[j],
                        if upper { "join" } else { "meet" }
                    ))
                })
        };
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                join[i][j] = bound(i, j, true)?;
                meet[i][j] = bound(i, j, false)?;
            }
        }
        let down = (0..n).map(|j| (0..n).filter(|&i| leq[i][j]).count()).collect();
        Ok(FiniteLattice {
            labels,
            leq,
            join,
            meet,
            down,
        })
    }

    /// Builds from cover pairs `(lower, upper)` by reflexive-transitive
    /// closure.
    pub fn from_covers(labels: Vec<String>, covers: &[[usize; 2]]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &[a, b] in covers {
            if a >= n || b >= n {
                return Err(Error::param(format!("cover ({a},{b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_leq(labels, leq)
    }

    /// `D` at `(n,m,q)` with its order, joins and meets found by brute force.
    pub fn of_d(params: &Params) -> Result<Self> {
        let d = enumerate_d(params)?;
        let labels = d.iter().map(ToString::to_string).collect();
        let leq = d.iter().map(|x| d.iter().map(|y| x.leq(y)).collect()).collect();
        Self::from_leq(labels, leq)
    }

    pub fn from_json(j: &LatticeJson) -> Result<Self> {
        if j.schema != 1 {
            return Err(Error::parse(format!("unsupported lattice schema {}", j.schema)));
        }
        Self::from_covers(j.elements.clone(), &j.covers)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            schema: 1,
            elements: self.labels.clone(),
            covers: self.covers(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq[i][j] || self.leq[j][i]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn covers(&self) -> Vec<[usize; 2]> {
        let n = self.len();
        let lt = |i: usize, j: usize| i != j && self.leq[i][j];
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    out.push([i, j]);
                }
            }
        }
        out
    }

    fn distributive_at(&self, x: usize, y: usize, z: usize) -> bool {
        let (j, m) = (&self.join, &self.meet);
        m[x][j[y][z]] == j[m[x][y]][m[x][z]] && j[x][m[y][z]] == m[j[x][y]][j[x][z]]
    }

    /// Checks both distributive laws on all triples when the lattice has at
    /// most `full_cap` elements, otherwise on `samples` seeded random triples.
    pub fn is_distributive(&self, full_cap: usize, samples: usize, seed: u64) -> bool {
        let n = self.len();
        if n <= full_cap {
            (0..n).into_par_iter().all(|x| (0..n).all(|y| (0..n).all(|z| self.distributive_at(x, y, z))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).all(|_| {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                self.distributive_at(x, y, z)
            })
        }
    }

    /// Every triple, regardless of size.
    pub fn is_distributive_exhaustive(&self) -> bool {
        self.is_distributive(usize::MAX, 0, 0)
    }

    /// One binomial per unordered non-comparable pair.
    pub fn binomial_generators(&self) -> Result<Vec<LatticeBinomial>> {
        if !self.is_distributive(DEFAULT_FULL_CHECK_CAP, 20_000, 0) {
            return Err(Error::param("lattice is not distributive"));
        }
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if !self.comparable(x, y) {
                    out.push(LatticeBinomial {
                        x,
                        y,
                        meet: self.meet[x][y],
                        join: self.join[x][y],
                    });
                }
            }
        }
        Ok(out)
    }

    fn sort_desc(&self, m: &mut [usize]) {
        m.sort_by(|&a, &b| self.down[b].cmp(&self.down[a]).then(a.cmp(&b)));
    }

    /// Rewrites non-comparable pairs to `(meet, join)` until the factors form
    /// a multichain; returned largest first. `seed = None` always rewrites the
    /// first violating pair, `Some(s)` picks pairs at random.
    pub fn normal_form(&self, monomial: &[usize], seed: Option<u64>) -> Vec<usize> {
        let mut m = monomial.to_vec();
        let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
        loop {
            let mut bad = Vec::new();
            for i in 0..m.len() {
                for j in i + 1..m.len() {
                    if !self.comparable(m[i], m[j]) {
                        bad.push((i, j));
                    }
                }
            }
            if bad.is_empty() {
                break;
            }
            let (i, j) = match rng.as_mut() {
                Some(r) => bad[r.gen_range(0..bad.len())],
                None => bad[0],
            };
            let (x, y) = (m[i], m[j]);
            m[i] = self.meet[x][y];
            m[j] = self.join[x][y];
        }
        self.sort_desc(&mut m);
        m
    }

    /// Number of `k`-multichains `x_1 >= .. >= x_k`, which is the dimension of
    /// the degree-`k` piece of `A(L)`.
    pub fn hilbert_a(&self, k: usize) -> u128 {
        if k == 0 {
            return 1;
        }
        let n = self.len();
        let mut ends = vec![1u128; n];
        for _ in 1..k {
            ends = (0..n)
                .into_par_iter()
                .map(|x| (0..n).filter(|&y| self.leq[y][x]).map(|y| ends[y]).sum())
                .collect();
        }
        ends.iter().sum()
    }
}

/// Violations of the degeneration hypotheses for one relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationViolation {
    pub pair: String,
    pub failures: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationReport {
    pub pairs_checked: usize,
    pub violations: Vec<DegenerationViolation>,
}

impl DegenerationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for every non-comparable pair of `D`, that the homogenized
/// relation has the join-meet term with coefficient 1, that every other
/// term brackets the pair strictly, and that content is preserved.
pub fn check_degeneration_hypotheses(table: &RelationTable) -> Result<DegenerationReport> {
    let rels = table.all_relations()?;
    let rels: Vec<Relation> = rels.iter().map(|r| (**r).clone()).collect();
    check_relations_degeneration(&rels, table)
}

/// [`check_degeneration_hypotheses`] on an explicit relation list.
pub fn check_relations_degeneration(rels: &[Relation], table: &RelationTable) -> Result<DegenerationReport> {
    let checks = rels
        .par_iter()
        .map(|r| check_relation(r, table).map(|c| (r, c)))
        .collect::<Result<Vec<_>>>()?;
    let violations = checks
        .into_iter()
        .filter(|(_, c)| !c.passed())
        .map(|(r, c)| DegenerationViolation {
            pair: format!("{}*{}", r.lhs.0, r.lhs.1),
            failures: c.failures(),
        })
        .collect();
    Ok(DegenerationReport {
        pairs_checked: rels.len(),
        violations,
    })
}

/// Multichain counts of `D` against the count of standard monomials in the
/// homogenized ring, for `k = 0..=max_k`.
pub fn hilbert_agreement(params: &Params, max_k: usize) -> Result<Vec<(usize, u128, usize)>> {
    let l = FiniteLattice::of_d(params)?;
    (0..=max_k)
        .map(|k| {
            let std = enumerate_standard(params, DegreeSpec::Degree(k), Mode::RD)?.len();
            Ok((k, l.hilbert_a(k), std))
        })
        .collect()
}

/// Maximal-chain cardinalities of `H` and `D` against the expected
/// `d + 1` and `d + 3`, `d = (m+q)n - n^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub h_chain_cardinalities: Vec<usize>,
    pub d_chain_cardinalities: Vec<usize>,
    pub h_chains: u128,
    pub d_chains: u128,
    pub h_expected: usize,
    pub d_expected: usize,
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.h_chain_cardinalities == [self.h_expected] && self.d_chain_cardinalities == [self.d_expected]
    }
}

pub fn rank_dimension_report(params: &Params, cap: usize) -> Result<RankReport> {
    let summarize = |kind| -> Result<(Vec<usize>, u128)> {
        let counts: HashMap<usize, u128> = build_poset(kind, params, cap)?.chain_cardinalities().into_iter().collect();
        let mut lens: Vec<usize> = counts.keys().copied().collect();
        lens.sort();
        Ok((lens, counts.values().sum()))
    };
    let (h_lens, h_chains) = summarize(PosetKind::H)?;
    let (d_lens, d_chains) = summarize(PosetKind::D)?;
    Ok(RankReport {
        h_chain_cardinalities: h_lens,
        d_chain_cardinalities: d_lens,
        h_chains,
        d_chains,
        h_expected: params.rank_d() + 1,
        d_expected: params.rank_d() + 3,
    })
}
