//! Straightening relations, weights, rewriting to standard form, and the
//! presentation check.
//!
//! Relations are computed by exact linear algebra: the product of a
//! non-standard pair is expanded in the standard monomials of the same
//! bidegree and content. They are stored homogenized (every term has two
//! factors, padded with Top or Bottom); `S`-mode relations drop the padding.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generators::{
    all_monomials, all_monomials_of_bidegree, enumerate_d, enumerate_h, enumerate_standard, Content, DegreeSpec,
    GenMonomial, Mode,
};
use crate::linalg::{sparse_rank, RationalMatrix, Solution};
use crate::params::Params;
use crate::polyring::{eval_d, format_rational, parse_rational, Mono, SparsePoly};
use crate::poset::{join_d, lattice_coords, meet_d, DElement, HElement};
use crate::Rational;

/// Default bound on rewrite steps in [`straighten`].
pub const DEFAULT_STEP_GUARD: usize = 200_000;

/// A natural number written in base `base` with most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    digits: Vec<u32>,
    base: u32,
}

impl Weight {
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn value(&self) -> BigUint {
        self.digits
            .iter()
            .fold(BigUint::zero(), |acc, &d| acc * self.base + d)
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    /// Numeric order when bases agree; digit strings never carry leading
    /// zero blocks of differing length for monomials of equal degree.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.base == other.base {
            self.value().cmp(&other.value())
        } else {
            self.digits.len().cmp(&other.digits.len()).then_with(|| self.digits.cmp(&other.digits))
        }
    }
}

/// Smallest base for which [`weight`] is defined.
pub fn min_weight_base(params: &Params) -> u32 {
    if params.n >= 2 {
        params.max_mq() as u32 + 1
    } else {
        params.max_mq() as u32 + 2
    }
}

/// Weight digits of a single factor: its lattice coordinates, shifted into
/// `[0, max(m,q)]` (unshifted when `n = 1`).
pub fn weight_digits(x: &DElement, params: &Params) -> Vec<u32> {
    let c = lattice_coords(x, params);
    if params.n >= 2 {
        c.into_iter().map(|v| v.max(1) as u32 - 1).collect()
    } else {
        c.into_iter().map(|v| v as u32).collect()
    }
}

/// Concatenation of the factor digit blocks, largest block first.
pub fn weight(m: &GenMonomial, base: u32) -> Result<Weight> {
    let params = m.params();
    let min = min_weight_base(params);
    if base < min {
        return Err(Error::param(format!("weight base must be at least {min}, got {base}")));
    }
    let mut blocks: Vec<Vec<u32>> = m.factors().iter().map(|x| weight_digits(x, params)).collect();
    blocks.sort_by(|a, b| b.cmp(a));
    Ok(Weight {
        digits: blocks.concat(),
        base,
    })
}

fn default_weight(m: &GenMonomial) -> Weight {
    weight(m, min_weight_base(m.params())).expect("minimal base is valid")
}

/// Canonical order on terms: more factors first, then larger weight, then text.
pub fn term_order(a: &GenMonomial, b: &GenMonomial) -> Ordering {
    b.degree()
        .cmp(&a.degree())
        .then_with(|| default_weight(b).cmp(&default_weight(a)))
        .then_with(|| a.to_string().cmp(&b.to_string()))
}

/// A straightening relation `lhs.0 * lhs.1 = sum c * term`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: (DElement, DElement),
    pub rhs: Vec<(Rational, GenMonomial)>,
    pub mode: Mode,
    pub params: Params,
}

impl Relation {
    pub fn lhs_monomial(&self) -> GenMonomial {
        GenMonomial::from_factors(vec![self.lhs.0.clone(), self.lhs.1.clone()], self.mode, &self.params)
    }

    /// Drops Top and Bottom factors.
    pub fn to_s(&self) -> Relation {
        let mut rhs: BTreeMap<GenMonomial, Rational> = BTreeMap::new();
        for (c, t) in &self.rhs {
            *rhs.entry(t.to_s()).or_insert_with(Rational::zero) += c;
        }
        let mut rhs: Vec<_> = rhs.into_iter().filter(|(_, c)| !c.is_zero()).map(|(t, c)| (c, t)).collect();
        rhs.sort_by(|a, b| term_order(&a.1, &b.1));
        Relation {
            rhs,
            mode: Mode::S,
            ..self.clone()
        }
    }

    pub fn coefficient_of(&self, m: &GenMonomial) -> Rational {
        self.rhs
            .iter()
            .filter(|(_, t)| t == m)
            .map(|(c, _)| c.clone())
            .sum()
    }

    /// `lhs - rhs` as an element of the free polynomial ring on the generators.
    pub fn free_vector(&self) -> Vec<(GenMonomial, Rational)> {
        let mut v = vec![(self.lhs_monomial(), Rational::one())];
        v.extend(self.rhs.iter().map(|(c, t)| (t.clone(), -c.clone())));
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lhs": [self.lhs.0.to_string(), self.lhs.1.to_string()],
            "rhs": self.rhs.iter().map(|(c, t)| json!({
                "coeff": format_rational(c),
                "monomial": t.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value, mode: Mode, params: &Params) -> Result<Relation> {
        let bad = |what: &str| Error::parse(format!("relation JSON: {what}"));
        let lhs = v["lhs"].as_array().ok_or_else(|| bad("missing lhs"))?;
        if lhs.len() != 2 {
            return Err(bad("lhs must have two factors"));
        }
        let el = |x: &Value| -> Result<DElement> { DElement::parse(x.as_str().ok_or_else(|| bad("lhs entry"))?, params) };
        let rhs = v["rhs"]
            .as_array()
            .ok_or_else(|| bad("missing rhs"))?
            .iter()
            .map(|t| {
                let c = parse_rational(t["coeff"].as_str().ok_or_else(|| bad("coeff"))?)?;
                let m = GenMonomial::parse(t["monomial"].as_str().ok_or_else(|| bad("monomial"))?, mode, params)?;
                Ok((c, m))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Relation {
            lhs: (el(&lhs[0])?, el(&lhs[1])?),
            rhs,
            mode,
            params: *params,
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.lhs_monomial())?;
        if self.rhs.is_empty() {
            return f.write_str(" 0");
        }
        for (i, (c, t)) in self.rhs.iter().enumerate() {
            if i > 0 {
                f.write_str(" +")?;
            }
            write!(f, " {c} {t}")?;
        }
        Ok(())
    }
}

type StandardByContent = HashMap<Content, Vec<GenMonomial>>;

/// Memoized straightening relations at fixed `(n,m,q)`.
///
/// Lookups and inserts go through locks, so one table can be shared by
/// parallel rewrites.
pub struct RelationTable {
    params: Params,
    element_polys: HashMap<DElement, SparsePoly>,
    relations: RwLock<HashMap<(DElement, DElement), Arc<Relation>>>,
    standard: RwLock<HashMap<(usize, usize), Arc<StandardByContent>>>,
}

impl RelationTable {
    pub fn new(params: &Params) -> Result<Self> {
        let element_polys = enumerate_d(params)?
            .into_iter()
            .map(|x| {
                let p = eval_d(params, &x)?;
                Ok((x, p))
            })
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(RelationTable {
            params: *params,
            element_polys,
            relations: RwLock::new(HashMap::new()),
            standard: RwLock::new(HashMap::new()),
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.relations.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn eval_element(&self, x: &DElement) -> Result<SparsePoly> {
        match self.element_polys.get(x) {
            Some(p) => Ok(p.clone()),
            None => eval_d(&self.params, x),
        }
    }

    pub fn eval_monomial(&self, m: &GenMonomial) -> Result<SparsePoly> {
        let mut out = SparsePoly::one(&self.params);
        for x in m.factors() {
            out = out.mul(self.element_polys.get(x).ok_or_else(|| Error::param(format!("{x} not in D")))?);
        }
        Ok(out)
    }

    fn standard_by_content(&self, a: usize, b: usize) -> Result<Arc<StandardByContent>> {
        if let Some(s) = self.standard.read().unwrap().get(&(a, b)) {
            return Ok(s.clone());
        }
        let mut by: StandardByContent = HashMap::new();
        for m in enumerate_standard(&self.params, DegreeSpec::Bidegree(a, b), Mode::S)? {
            by.entry(m.content()).or_default().push(m);
        }
        let by = Arc::new(by);
        self.standard.write().unwrap().insert((a, b), by.clone());
        Ok(by)
    }

    /// The homogenized relation for a non-standard pair, in the requested mode.
    pub fn straighten_pair(&self, x: &DElement, y: &DElement, mode: Mode) -> Result<Relation> {
        let rel = self.get(x, y)?;
        Ok(match mode {
            Mode::RD => (*rel).clone(),
            Mode::S => rel.to_s(),
        })
    }

    /// The homogenized relation for a non-standard pair, memoized.
    pub fn get(&self, x: &DElement, y: &DElement) -> Result<Arc<Relation>> {
        let key = pair_key(x, y, &self.params);
        if let Some(r) = self.relations.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let rel = Arc::new(self.compute(&key.0, &key.1)?);
        self.relations.write().unwrap().insert(key, rel.clone());
        Ok(rel)
    }

    fn compute(&self, x: &DElement, y: &DElement) -> Result<Relation> {
        let p = self.params;
        for z in [x, y] {
            z.validate(&p)?;
            if z.is_extremal() {
                return Err(Error::param(format!("{z} is comparable to everything; {x}*{y} is standard")));
            }
        }
        if x.comparable(y) {
            return Err(Error::param(format!("{x}*{y} is already standard")));
        }
        let lhs_m = GenMonomial::from_factors(vec![x.clone(), y.clone()], Mode::S, &p);
        let lhs = self.eval_monomial(&lhs_m)?;
        let (a, b) = lhs_m.bidegree();
        let by = self.standard_by_content(a, b)?;
        let candidates: &[GenMonomial] = by.get(&lhs_m.content()).map(Vec::as_slice).unwrap_or(&[]);
        let coeffs = self.solve_in(&lhs, candidates, &lhs_m)?;
        let mut rhs = Vec::new();
        for (c, t) in coeffs.into_iter().zip(candidates) {
            if !c.is_zero() {
                rhs.push((c, homogenize(t, &lhs_m)?));
            }
        }
        rhs.sort_by(|a, b| term_order(&a.1, &b.1));
        Ok(Relation {
            lhs: (lhs_m.factors()[0].clone(), lhs_m.factors()[1].clone()),
            rhs,
            mode: Mode::RD,
            params: p,
        })
    }

    fn solve_in(&self, target: &SparsePoly, basis: &[GenMonomial], what: &GenMonomial) -> Result<Vec<Rational>> {
        let polys = basis.iter().map(|m| self.eval_monomial(m)).collect::<Result<Vec<_>>>()?;
        let mut rows: BTreeMap<&Mono, usize> = BTreeMap::new();
        for (m, _) in target.terms().chain(polys.iter().flat_map(|p| p.terms())) {
            let next = rows.len();
            rows.entry(m).or_insert(next);
        }
        let mut a = RationalMatrix::zeros(rows.len(), basis.len());
        for (j, poly) in polys.iter().enumerate() {
            for (m, c) in poly.terms() {
                a.set(rows[m], j, c.clone());
            }
        }
        let mut rhs = vec![Rational::zero(); rows.len()];
        for (m, c) in target.terms() {
            rhs[rows[m]] = c.clone();
        }
        match a.solve(&rhs) {
            Solution::Unique(x) => Ok(x),
            Solution::Inconsistent => Err(Error::BasisFailure(format!(
                "{what} is not in the span of {} standard monomials",
                basis.len()
            ))),
            Solution::Underdetermined(k) => Err(Error::BasisFailure(format!(
                "standard monomials for {what} have a {k}-dimensional dependency"
            ))),
        }
    }

    /// Every non-comparable pair of `D`, each once, in enumeration order.
    pub fn noncomparable_pairs(&self) -> Result<Vec<(DElement, DElement)>> {
        noncomparable_pairs(&self.params)
    }

    /// Computes every relation (in parallel) and returns them in pair order.
    pub fn all_relations(&self) -> Result<Vec<Arc<Relation>>> {
        let pairs = self.noncomparable_pairs()?;
        pairs.par_iter().map(|(x, y)| self.get(x, y)).collect()
    }
}

fn pair_key(x: &DElement, y: &DElement, params: &Params) -> (DElement, DElement) {
    let m = GenMonomial::from_factors(vec![x.clone(), y.clone()], Mode::RD, params);
    (m.factors()[0].clone(), m.factors()[1].clone())
}

/// Every non-comparable pair of `D`.
pub fn noncomparable_pairs(params: &Params) -> Result<Vec<(DElement, DElement)>> {
    let d = enumerate_d(params)?;
    let mut out = Vec::new();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if !d[i].comparable(&d[j]) {
                out.push(pair_key(&d[i], &d[j], params));
            }
        }
    }
    Ok(out)
}

/// `(t, s)` exponents that make evaluation of `R(D)` faithful: p and Top
/// carry `t^2`, u and xi carry `ts`, Bottom carries `s^2`.
pub fn tag(x: &DElement) -> (usize, usize) {
    match x {
        DElement::Top | DElement::Gen(HElement::P(..)) => (2, 0),
        DElement::Gen(_) => (1, 1),
        DElement::Bottom => (0, 2),
    }
}

pub fn monomial_tag(m: &GenMonomial) -> (usize, usize) {
    m.factors().iter().fold((0, 0), |(a, b), x| {
        let (da, db) = tag(x);
        (a + da, b + db)
    })
}

/// Pads an `S`-term with Top/Bottom so its degree and tag match `lhs`.
fn homogenize(term: &GenMonomial, lhs: &GenMonomial) -> Result<GenMonomial> {
    let p = *lhs.params();
    let (lt, ls) = monomial_tag(lhs);
    let (tt, ts) = monomial_tag(term);
    let pads = lhs.degree().checked_sub(term.degree());
    let ok = pads.is_some() && lt >= tt && ls >= ts && (lt - tt) % 2 == 0 && (ls - ts) % 2 == 0;
    if !ok || (lt - tt) / 2 + (ls - ts) / 2 != pads.unwrap() {
        return Err(Error::Invariant(format!("cannot homogenize {term} against {lhs}")));
    }
    let mut f = term.factors().to_vec();
    f.extend(std::iter::repeat_n(DElement::Top, (lt - tt) / 2));
    f.extend(std::iter::repeat_n(DElement::Bottom, (ls - ts) / 2));
    Ok(GenMonomial::from_factors(f, Mode::RD, &p))
}

/// A fresh-table convenience wrapper around [`RelationTable::straighten_pair`].
pub fn straighten_pair(x: &DElement, y: &DElement, params: &Params, mode: Mode) -> Result<Relation> {
    RelationTable::new(params)?.straighten_pair(x, y, mode)
}

/// Which violating pair a rewrite step replaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    First,
    Last,
    Random(u64),
}

/// Result of [`straighten_traced`].
#[derive(Debug, Clone)]
pub struct StraightenOutcome {
    pub terms: Vec<(Rational, GenMonomial)>,
    pub steps: usize,
}

/// Rewrites `m` into a combination of standard monomials.
pub fn straighten(m: &GenMonomial, strategy: Strategy, table: &RelationTable) -> Result<Vec<(Rational, GenMonomial)>> {
    straighten_traced(m, strategy, table, DEFAULT_STEP_GUARD).map(|o| o.terms)
}

/// [`straighten`] with a step bound and a step count. Every step checks that
/// the weight of each new monomial exceeds the weight of the one replaced.
pub fn straighten_traced(
    m: &GenMonomial,
    strategy: Strategy,
    table: &RelationTable,
    guard: usize,
) -> Result<StraightenOutcome> {
    let params = *table.params();
    if m.params() != &params {
        return Err(Error::param("monomial and relation table disagree on (n,m,q)"));
    }
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let base = min_weight_base(&params);
    let mut poly: BTreeMap<GenMonomial, Rational> = BTreeMap::new();
    poly.insert(m.with_mode(Mode::RD), Rational::one());
    let mut steps = 0;
    while let Some(f) = poly.keys().find(|f| !f.is_standard()).cloned() {
        if steps >= guard {
            return Err(Error::Termination(format!("{steps} rewrite steps on {m} without reaching standard form")));
        }
        steps += 1;
        let c = poly.remove(&f).expect("present");
        let fac = f.factors();
        let mut pairs = Vec::new();
        for i in 0..fac.len() {
            for j in i + 1..fac.len() {
                if !fac[i].comparable(&fac[j]) {
                    pairs.push((i, j));
                }
            }
        }
        let (i, j) = match (strategy, rng.as_mut()) {
            (Strategy::First, _) => pairs[0],
            (Strategy::Last, _) => pairs[pairs.len() - 1],
            (Strategy::Random(_), Some(r)) => pairs[r.gen_range(0..pairs.len())],
            (Strategy::Random(_), None) => unreachable!(),
        };
        let rel = table.get(&fac[i], &fac[j])?;
        let rest: Vec<DElement> = fac
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, x)| x.clone())
            .collect();
        let rest = GenMonomial::from_factors(rest, Mode::RD, &params);
        let w = weight(&f, base)?;
        for (r, t) in &rel.rhs {
            let g = t.mul(&rest);
            let wg = weight(&g, base)?;
            if wg <= w {
                return Err(Error::Invariant(format!("weight did not increase rewriting {f} to {g}")));
            }
            let e = poly.entry(g).or_insert_with(Rational::zero);
            *e += &c * r;
        }
        poly.retain(|_, v| !v.is_zero());
    }
    let mut out: BTreeMap<GenMonomial, Rational> = BTreeMap::new();
    for (g, c) in poly {
        let g = if m.mode() == Mode::S { g.to_s() } else { g };
        *out.entry(g).or_insert_with(Rational::zero) += c;
    }
    let mut terms: Vec<_> = out.into_iter().filter(|(_, c)| !c.is_zero()).map(|(g, c)| (c, g)).collect();
    terms.sort_by(|a, b| term_order(&a.1, &b.1));
    Ok(StraightenOutcome { terms, steps })
}

/// Structural checks on one homogenized relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub identity: bool,
    pub rhs_standard: bool,
    /// The join-meet term appears with coefficient exactly 1.
    pub join_meet_coefficient_one: bool,
    /// Every rhs pair `(alpha, beta)` has `beta < x, y < alpha`.
    pub interval: bool,
    pub content: bool,
    pub weight_increases: bool,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.identity
            && self.rhs_standard
            && self.join_meet_coefficient_one
            && self.interval
            && self.content
            && self.weight_increases
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.identity, "identity"),
            (self.rhs_standard, "rhs-standard"),
            (self.join_meet_coefficient_one, "join-meet-coefficient"),
            (self.interval, "interval"),
            (self.content, "content"),
            (self.weight_increases, "weight"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

/// Re-checks a homogenized relation from scratch.
pub fn check_relation(rel: &Relation, table: &RelationTable) -> Result<RelationCheck> {
    let p = *table.params();
    let (x, y) = (&rel.lhs.0, &rel.lhs.1);
    let lhs_m = rel.lhs_monomial().with_mode(Mode::RD);
    let lhs = table.eval_monomial(&lhs_m)?;
    let mut sum = SparsePoly::zero(&p);
    for (c, t) in &rel.rhs {
        sum.add_scaled(c, &table.eval_monomial(t)?);
    }
    let jm = GenMonomial::from_factors(vec![join_d(x, y, &p)?, meet_d(x, y, &p)?], Mode::RD, &p);
    let lhs_content = lhs_m.content();
    let lhs_tag = monomial_tag(&lhs_m);
    let base = min_weight_base(&p);
    let w = weight(&lhs_m, base)?;
    let mut weight_increases = true;
    for (_, t) in &rel.rhs {
        weight_increases &= weight(&t.with_mode(Mode::RD), base)? > w;
    }
    Ok(RelationCheck {
        identity: lhs == sum,
        rhs_standard: rel.rhs.iter().all(|(_, t)| t.is_standard()),
        join_meet_coefficient_one: rel.coefficient_of(&jm.with_mode(rel.mode)).is_one(),
        interval: rel.rhs.iter().all(|(_, t)| {
            let f = t.factors();
            f.len() == 2 && f[1].lt(x) && f[1].lt(y) && x.lt(&f[0]) && y.lt(&f[0])
        }),
        content: rel
            .rhs
            .iter()
            .all(|(_, t)| t.content() == lhs_content && monomial_tag(t) == lhs_tag),
        weight_increases,
    })
}

/// Relations at fixed parameters as versioned JSON.
pub fn relations_to_json(params: &Params, mode: Mode, relations: &[Relation]) -> Value {
    json!({
        "schema": 1,
        "params": {"n": params.n, "m": params.m, "q": params.q},
        "mode": match mode { Mode::S => "S", Mode::RD => "RD" },
        "relations": relations.iter().map(Relation::to_json).collect::<Vec<_>>(),
    })
}

pub fn relations_from_json(v: &Value) -> Result<(Params, Mode, Vec<Relation>)> {
    if v["schema"].as_u64() != Some(1) {
        return Err(Error::parse("unsupported relation file schema"));
    }
    let get = |k: &str| -> Result<usize> {
        v["params"][k]
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| Error::parse(format!("relation file lacks params.{k}")))
    };
    let params = Params::new(get("n")?, get("m")?, get("q")?)?;
    let mode = match v["mode"].as_str() {
        Some("S") => Mode::S,
        Some("RD") => Mode::RD,
        _ => return Err(Error::parse("relation file mode must be S or RD")),
    };
    let rels = v["relations"]
        .as_array()
        .ok_or_else(|| Error::parse("relation file lacks relations"))?
        .iter()
        .map(|r| Relation::from_json(r, mode, &params))
        .collect::<Result<Vec<_>>>()?;
    Ok((params, mode, rels))
}

/// Which free ring the presentation check runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Polynomial ring on `D`, graded by number of factors.
    RD,
    /// Polynomial ring on `H`, graded by bidegree.
    S,
    /// Polynomial ring on the `p(A,B)` only, graded by total minor size.
    GL,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::RD => "RD",
            Flavor::S => "S",
            Flavor::GL => "GL",
        })
    }
}

/// Kernel of the evaluation map in one graded piece, against the span of
/// relations times monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationRow {
    pub flavor: Flavor,
    pub grade: String,
    pub monomials: usize,
    pub kernel_dim: usize,
    pub relation_span_dim: usize,
    pub relations_vanish: bool,
}

impl PresentationRow {
    pub fn passed(&self) -> bool {
        self.relations_vanish && self.kernel_dim == self.relation_span_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationReport {
    pub rows: Vec<PresentationRow>,
    /// The `(n+1)`-minor of the pairing matrix, written in the `p`'s,
    /// evaluates to zero.
    pub det_in_kernel: Option<bool>,
    /// ... and lies in the span of the relations.
    pub det_in_span: Option<bool>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(PresentationRow::passed)
            && self.det_in_kernel != Some(false)
            && self.det_in_span != Some(false)
    }
}

type Tagged = ((usize, usize), Mono);

struct Evaluator<'a> {
    table: &'a RelationTable,
    tagged: bool,
}

impl Evaluator<'_> {
    fn image(&self, m: &GenMonomial) -> Result<Vec<(Tagged, Rational)>> {
        let t = if self.tagged { monomial_tag(m) } else { (0, 0) };
        Ok(self
            .table
            .eval_monomial(m)?
            .terms()
            .map(|(mono, c)| ((t, mono.clone()), c.clone()))
            .collect())
    }

    fn vanishes(&self, v: &[(GenMonomial, Rational)]) -> Result<bool> {
        let mut acc: HashMap<Tagged, Rational> = HashMap::new();
        for (m, c) in v {
            for (k, x) in self.image(m)? {
                *acc.entry(k).or_insert_with(Rational::zero) += c * x;
            }
        }
        Ok(acc.values().all(Zero::is_zero))
    }

    fn kernel_dim(&self, monos: &[GenMonomial]) -> Result<usize> {
        let rows = monos.par_iter().map(|m| self.image(m)).collect::<Result<Vec<_>>>()?;
        Ok(monos.len() - sparse_rank(&rows))
    }
}

fn multiply_out(relations: &[Vec<(GenMonomial, Rational)>], by: &[GenMonomial]) -> Vec<Vec<(GenMonomial, Rational)>> {
    relations
        .iter()
        .flat_map(|r| {
            by.iter()
                .map(move |g| r.iter().map(|(m, c)| (m.mul(g), c.clone())).collect())
        })
        .collect()
}

/// Compares, graded piece by graded piece, the kernel of evaluation on the
/// free ring of generators with the span of the straightening relations
/// multiplied by monomials.
///
/// Runs in the homogenized ring on `D` for degrees `1..=cap`, in the ring on
/// `H` for bidegrees with `a + b <= 2 cap`, and in the ring on the `p`'s for
/// minor sizes `1..=cap`.
pub fn presentation_check(table: &RelationTable, cap: usize) -> Result<PresentationReport> {
    let p = *table.params();
    let rels = table.all_relations()?;
    let mut rows = Vec::new();

    // homogenized ring on D
    let rd_vecs: Vec<_> = rels.iter().map(|r| r.free_vector()).collect();
    let tagged = Evaluator { table, tagged: true };
    let rd_vanish = rd_vecs.iter().map(|v| tagged.vanishes(v)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
    let d = enumerate_d(&p)?;
    for k in 1..=cap {
        let monos = all_monomials(&d, k, Mode::RD, &p);
        let span = if k >= 2 {
            let by = all_monomials(&d, k - 2, Mode::RD, &p);
            sparse_rank(&multiply_out(&rd_vecs, &by))
        } else {
            0
        };
        rows.push(PresentationRow {
            flavor: Flavor::RD,
            grade: format!("{k}"),
            monomials: monos.len(),
            kernel_dim: tagged.kernel_dim(&monos)?,
            relation_span_dim: span,
            relations_vanish: rd_vanish,
        });
    }

    // ring on H, relations with Top/Bottom dropped
    let plain = Evaluator { table, tagged: false };
    let s_rels: Vec<Relation> = rels.iter().map(|r| r.to_s()).collect();
    let s_vecs: Vec<_> = s_rels.iter().map(|r| (r.lhs_monomial().bidegree(), r.free_vector())).collect();
    let s_vanish = s_vecs.iter().map(|(_, v)| plain.vanishes(v)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
    let h: Vec<DElement> = enumerate_h(&p)?.into_iter().map(DElement::Gen).collect();
    for total in 1..=2 * cap {
        for a in (0..=total).rev() {
            let b = total - a;
            let monos = all_monomials_of_bidegree(&h, a, b, Mode::S, &p);
            if monos.is_empty() {
                continue;
            }
            let mut gens = Vec::new();
            for ((ra, rb), v) in &s_vecs {
                if *ra <= a && *rb <= b {
                    let by = all_monomials_of_bidegree(&h, a - ra, b - rb, Mode::S, &p);
                    gens.extend(multiply_out(std::slice::from_ref(v), &by));
                }
            }
            rows.push(PresentationRow {
                flavor: Flavor::S,
                grade: format!("({a},{b})"),
                monomials: monos.len(),
                kernel_dim: plain.kernel_dim(&monos)?,
                relation_span_dim: sparse_rank(&gens),
                relations_vanish: s_vanish,
            });
        }
    }

    // ring on the p's
    let pool: Vec<DElement> = h.iter().filter(|x| x.is_p()).cloned().collect();
    let gl_vecs: Vec<_> = s_vecs
        .iter()
        .filter(|(_, v)| v.iter().all(|(m, _)| m.factors().iter().all(DElement::is_p)))
        .cloned()
        .collect();
    let det = det_relation(&p);
    let (mut det_in_kernel, mut det_in_span) = (None, None);
    for k in 1..=cap {
        let monos = all_monomials_of_bidegree(&pool, k, k, Mode::S, &p);
        let mut gens = Vec::new();
        for ((ra, _), v) in &gl_vecs {
            if *ra <= k {
                let by = all_monomials_of_bidegree(&pool, k - ra, k - ra, Mode::S, &p);
                gens.extend(multiply_out(std::slice::from_ref(v), &by));
            }
        }
        let span = sparse_rank(&gens);
        if k == p.n + 1 {
            det_in_kernel = Some(plain.vanishes(&det)?);
            gens.push(det.clone());
            det_in_span = Some(sparse_rank(&gens) == span);
        }
        rows.push(PresentationRow {
            flavor: Flavor::GL,
            grade: format!("{k}"),
            monomials: monos.len(),
            kernel_dim: plain.kernel_dim(&monos)?,
            relation_span_dim: span,
            relations_vanish: s_vanish,
        });
    }
    Ok(PresentationReport {
        rows,
        det_in_kernel,
        det_in_span,
    })
}

/// Laplace expansion of the leading `(n+1)`-minor of the pairing matrix
/// along its first row, as an element of the free ring on the `p`'s.
pub fn det_relation(params: &Params) -> Vec<(GenMonomial, Rational)> {
    let k = params.n + 1;
    let rows: Vec<usize> = (2..=k).collect();
    (1..=k)
        .map(|j| {
            let cols: Vec<usize> = (1..=k).filter(|&c| c != j).collect();
            let m = GenMonomial::from_factors(vec![DElement::p(&[1], &[j]), DElement::p(&rows, &cols)], Mode::S, params);
            let sign = if j % 2 == 1 { Rational::one() } else { -Rational::one() };
            (m, sign)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p233() -> Params {
        Params::new(2, 3, 3).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn terms(rel: &Relation) -> Vec<(String, String)> {
        rel.rhs.iter().map(|(c, t)| (c.to_string(), t.to_string())).collect()
    }

    #[test]
    fn u_times_xi_is_a_single_minor() {
        let p = p233();
        let table = RelationTable::new(&p).unwrap();
        let rel = table.straighten_pair(&DElement::u(&[1, 2]), &DElement::xi(&[1, 3]), Mode::S).unwrap();
        assert_eq!(terms(&rel), vec![("1".into(), "p[1,2|1,3]".into())]);
        let rd = table.straighten_pair(&DElement::u(&[1, 2]), &DElement::xi(&[1, 3]), Mode::RD).unwrap();
        assert_eq!(terms(&rd), vec![("1".into(), "p[1,2|1,3]*BOT".into())]);
    }

    #[test]
    fn two_by_two_minor_relation() {
        let p = p233();
        let rel = straighten_pair(&DElement::p(&[1], &[2]), &DElement::p(&[2], &[1]), &p, Mode::S).unwrap();
        assert_eq!(
            terms(&rel),
            vec![("1".into(), "p[2|2]*p[1|1]".into()), ("-1".into(), "p[1,2|1,2]".into())]
        );
    }

    #[test]
    fn pairing_times_vector_minor() {
        let p = p233();
        let rel = straighten_pair(&DElement::p(&[1], &[1]), &DElement::u(&[2, 3]), &p, Mode::S).unwrap();
        let mut got = terms(&rel);
        got.sort();
        let mut want = vec![("1".to_string(), "p[2|1]*u[1,3]".to_string()), ("-1".into(), "p[3|1]*u[1,2]".into())];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn three_term_plucker() {
        let p = Params::new(2, 4, 3).unwrap();
        let rel = straighten_pair(&DElement::u(&[1, 4]), &DElement::u(&[2, 3]), &p, Mode::S).unwrap();
        let mut got = terms(&rel);
        got.sort();
        let mut want = vec![("1".to_string(), "u[2,4]*u[1,3]".to_string()), ("-1".into(), "u[3,4]*u[1,2]".into())];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn comparable_pairs_are_rejected() {
        let p = p233();
        let r = straighten_pair(&DElement::p(&[2], &[2]), &DElement::p(&[1], &[1]), &p, Mode::S);
        assert!(matches!(r, Err(Error::Parameter(_))));
        let r = straighten_pair(&DElement::Top, &DElement::p(&[1], &[1]), &p, Mode::RD);
        assert!(matches!(r, Err(Error::Parameter(_))));
    }

    #[test]
    fn weight_digits_and_bases() {
        let p = p233();
        let m = GenMonomial::parse("p[2|3]", Mode::S, &p).unwrap();
        let w = weight(&m, 4).unwrap();
        assert_eq!(w.digits(), &[1, 3, 2, 3]);
        assert_eq!(w.value(), BigUint::from(64u32 + 3 * 16 + 2 * 4 + 3));
        assert!(matches!(weight(&m, 3), Err(Error::Parameter(_))));
        let bot = GenMonomial::parse("BOT*BOT", Mode::RD, &p).unwrap();
        assert!(weight(&bot, 4).unwrap().digits().iter().all(|&d| d == 0));
    }

    #[test]
    fn weight_strictly_increases_where_chain_digits_would_not() {
        let p = p233();
        let table = RelationTable::new(&p).unwrap();
        let rel = table.get(&DElement::p(&[2, 3], &[2, 3]), &DElement::p(&[1], &[2])).unwrap();
        let check = check_relation(&rel, &table).unwrap();
        assert!(check.passed(), "{:?}", check.failures());
    }

    #[test]
    fn standard_input_is_returned() {
        let p = p233();
        let table = RelationTable::new(&p).unwrap();
        let m = GenMonomial::parse("p[2|2]*p[1|1]", Mode::S, &p).unwrap();
        assert_eq!(straighten(&m, Strategy::First, &table).unwrap(), vec![(q(1), m)]);
    }

    #[test]
    fn degree_three_expansion_matches_evaluation() {
        let p = p233();
        let table = RelationTable::new(&p).unwrap();
        let m = GenMonomial::parse("p[1|2]*p[2|1]*p[1|1]", Mode::S, &p).unwrap();
        let out = straighten(&m, Strategy::First, &table).unwrap();
        let mut sum = SparsePoly::zero(&p);
        for (c, t) in &out {
            assert!(t.is_standard());
            sum.add_scaled(c, &t.evaluate().unwrap());
        }
        assert_eq!(sum, m.evaluate().unwrap());
        for s in [Strategy::Last, Strategy::Random(7)] {
            assert_eq!(straighten(&m, s, &table).unwrap(), out);
        }
    }

    #[test]
    fn mixed_pair_straightens_to_minor() {
        let p = p233();
        let table = RelationTable::new(&p).unwrap();
        let m = GenMonomial::parse("u[1,2]*xi[1,2]", Mode::S, &p).unwrap();
        let out = straighten(&m, Strategy::First, &table).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0, q(1));
        assert_eq!(out[0].1.to_string(), "p[1,2|1,2]");
    }

    #[test]
    fn step_guard_fires() {
        let p = p233();
        let table = RelationTable::new(&p).unwrap();
        let m = GenMonomial::parse("p[1|2]*p[2|1]", Mode::S, &p).unwrap();
        assert!(matches!(straighten_traced(&m, Strategy::First, &table, 0), Err(Error::Termination(_))));
    }

    #[test]
    fn json_round_trip() {
        let p = p233();
        let table = RelationTable::new(&p).unwrap();
        let rel = (*table.get(&DElement::p(&[1], &[2]), &DElement::p(&[2], &[1])).unwrap()).clone();
        let v = relations_to_json(&p, Mode::RD, std::slice::from_ref(&rel));
        let (p2, mode, back) = relations_from_json(&v).unwrap();
        assert_eq!((p2, mode), (p, Mode::RD));
        assert_eq!(back, vec![rel]);
        assert!(relations_from_json(&json!({"schema": 2})).is_err());
    }

    #[test]
    fn det_relation_vanishes() {
        let p = p233();
        let mut sum = SparsePoly::zero(&p);
        for (m, c) in det_relation(&p) {
            sum.add_scaled(&c, &m.evaluate().unwrap());
        }
        assert!(sum.is_zero());
    }

    #[test]
    fn small_presentation_check() {
        let p = Params::new(1, 2, 2).unwrap();
        let table = RelationTable::new(&p).unwrap();
        let report = presentation_check(&table, 2).unwrap();
        for row in &report.rows {
            assert!(row.passed(), "{row:?}");
        }
        assert_eq!(report.rows[0].kernel_dim, 0);
        assert!(report.passed());
    }
}
