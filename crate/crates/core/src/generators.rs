//! Enumeration of `H` and `D`, monomials in the generators, standardness and
//! content.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::polyring::{eval_d, SparsePoly};
use crate::poset::{canonical_cmp, enumerate_tuples, DElement, HElement};

/// Whether monomials live in `S` (generators of `H` only) or in the
/// homogenized ring on `D` (Top and Bottom allowed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    S,
    RD,
}

/// All of `H`: the `u(I)`, then the `xi(J)`, then the `p(A,B)` by size.
pub fn enumerate_h(params: &Params) -> Result<Vec<HElement>> {
    let Params { n, m, q } = *params;
    if m <= n || q <= n {
        return Err(Error::param(format!("need m > n and q > n at {params}")));
    }
    let mut out: Vec<HElement> = enumerate_tuples(n, m)?.into_iter().map(HElement::U).collect();
    out.extend(enumerate_tuples(n, q)?.into_iter().map(HElement::Xi));
    for r in 1..=n {
        let rows = enumerate_tuples(r, m)?;
        let cols = enumerate_tuples(r, q)?;
        for a in &rows {
            for b in &cols {
                out.push(HElement::P(a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// `H` followed by Top and Bottom.
pub fn enumerate_d(params: &Params) -> Result<Vec<DElement>> {
    let mut out: Vec<DElement> = enumerate_h(params)?.into_iter().map(DElement::Gen).collect();
    out.push(DElement::Top);
    out.push(DElement::Bottom);
    Ok(out)
}

/// `(u-degree, xi-degree)` of a generator's polynomial.
pub fn element_bidegree(x: &DElement, params: &Params) -> (usize, usize) {
    match x {
        DElement::Top | DElement::Bottom => (0, 0),
        DElement::Gen(HElement::U(_)) => (params.n, 0),
        DElement::Gen(HElement::Xi(_)) => (0, params.n),
        DElement::Gen(HElement::P(a, _)) => (a.len(), a.len()),
    }
}

/// Multisets of row indices (u side) and column indices (xi side), stored as
/// count vectors of length `m` and `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Content {
    pub u: Vec<usize>,
    pub xi: Vec<usize>,
}

impl Content {
    pub fn empty(params: &Params) -> Self {
        Content {
            u: vec![0; params.m],
            xi: vec![0; params.q],
        }
    }

    pub fn of_element(x: &DElement, params: &Params) -> Self {
        let mut c = Self::empty(params);
        c.add_element(x);
        c
    }

    fn add_element(&mut self, x: &DElement) {
        let (us, xis): (&[usize], &[usize]) = match x {
            DElement::Top | DElement::Bottom => (&[], &[]),
            DElement::Gen(HElement::U(i)) => (i.entries(), &[]),
            DElement::Gen(HElement::Xi(j)) => (&[], j.entries()),
            DElement::Gen(HElement::P(a, b)) => (a.entries(), b.entries()),
        };
        for &i in us {
            self.u[i - 1] += 1;
        }
        for &j in xis {
            self.xi[j - 1] += 1;
        }
    }

    pub fn add(&self, other: &Content) -> Content {
        Content {
            u: self.u.iter().zip(&other.u).map(|(a, b)| a + b).collect(),
            xi: self.xi.iter().zip(&other.xi).map(|(a, b)| a + b).collect(),
        }
    }

    /// The u-side multiset, listed in increasing order.
    pub fn u_multiset(&self) -> Vec<usize> {
        expand(&self.u)
    }

    pub fn xi_multiset(&self) -> Vec<usize> {
        expand(&self.xi)
    }
}

fn expand(counts: &[usize]) -> Vec<usize> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
        .collect()
}

/// A commutative monomial in generators, factors kept in canonical order
/// (descending lattice coordinates, which is a linear extension of the
/// order on `D` read from the top).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenMonomial {
    factors: Vec<DElement>,
    mode: Mode,
    params: Params,
}

impl GenMonomial {
    pub fn new(factors: Vec<DElement>, mode: Mode, params: &Params) -> Result<Self> {
        for f in &factors {
            f.validate(params)?;
            if mode == Mode::S && f.is_extremal() {
                return Err(Error::param(format!("{f} is not allowed in S mode")));
            }
        }
        Ok(Self::from_factors(factors, mode, params))
    }

    /// No validation; sorts the factors.
    pub(crate) fn from_factors(mut factors: Vec<DElement>, mode: Mode, params: &Params) -> Self {
        factors.sort_by(|a, b| canonical_cmp(a, b, params));
        GenMonomial {
            factors,
            mode,
            params: *params,
        }
    }

    pub fn one(mode: Mode, params: &Params) -> Self {
        Self::from_factors(Vec::new(), mode, params)
    }

    pub fn factors(&self) -> &[DElement] {
        &self.factors
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn mul(&self, other: &GenMonomial) -> GenMonomial {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        Self::from_factors(f, self.mode.max(other.mode), &self.params)
    }

    /// Same factors, with Top and Bottom dropped and the mode set to `S`.
    pub fn to_s(&self) -> GenMonomial {
        let f = self.factors.iter().filter(|x| !x.is_extremal()).cloned().collect();
        Self::from_factors(f, Mode::S, &self.params)
    }

    pub fn with_mode(&self, mode: Mode) -> GenMonomial {
        GenMonomial { mode, ..self.clone() }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        self.factors.iter().fold((0, 0), |(a, b), x| {
            let (da, db) = element_bidegree(x, &self.params);
            (a + da, b + db)
        })
    }

    pub fn content(&self) -> Content {
        content(self)
    }

    pub fn is_standard(&self) -> bool {
        is_standard(self)
    }

    pub fn evaluate(&self) -> Result<SparsePoly> {
        let mut out = SparsePoly::one(&self.params);
        for f in &self.factors {
            out = out.mul(&eval_d(&self.params, f)?);
        }
        Ok(out)
    }

    /// Parses `*`-joined generator forms; `1` is the empty monomial.
    pub fn parse(s: &str, mode: Mode, params: &Params) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one(mode, params));
        }
        let factors = s
            .split('*')
            .map(|f| DElement::parse(f, params))
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors, mode, params)
    }
}

impl fmt::Display for GenMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Row indices consumed on the u side and column indices on the xi side.
/// Top and Bottom consume nothing.
pub fn content(m: &GenMonomial) -> Content {
    let mut c = Content::empty(&m.params);
    for x in &m.factors {
        c.add_element(x);
    }
    c
}

/// No `u`/`xi` mixing and pairwise comparable factors.
pub fn is_standard(m: &GenMonomial) -> bool {
    let has_u = m.factors.iter().any(DElement::is_u);
    let has_xi = m.factors.iter().any(DElement::is_xi);
    if has_u && has_xi {
        return false;
    }
    // canonical order is a linear extension, so a chain must be decreasing in it
    m.factors.windows(2).all(|w| w[1].leq(&w[0]))
}

/// What to enumerate standard monomials by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeSpec {
    /// Evaluated bidegree `(a,b)`; `S` mode.
    Bidegree(usize, usize),
    /// Number of factors; `RD` mode.
    Degree(usize),
}

/// Standard monomials of the requested degree.
///
/// `S` mode with a bidegree lists the chains in `H` without `u`/`xi` mixing
/// whose evaluated bidegree matches; `RD` mode with a degree lists all
/// multichains of that length in `D`.
pub fn enumerate_standard(params: &Params, spec: DegreeSpec, mode: Mode) -> Result<Vec<GenMonomial>> {
    let mut pool = match mode {
        Mode::S => enumerate_h(params)?.into_iter().map(DElement::Gen).collect::<Vec<_>>(),
        Mode::RD => enumerate_d(params)?,
    };
    pool.sort_by(|a, b| canonical_cmp(a, b, params));
    let mut out = Vec::new();
    let mut stack = Vec::new();
    match (spec, mode) {
        (DegreeSpec::Bidegree(a, b), Mode::S) => {
            let degs: Vec<_> = pool.iter().map(|x| element_bidegree(x, params)).collect();
            chains_by_bidegree(&pool, &degs, 0, (a, b), &mut stack, &mut |f| {
                out.push(GenMonomial::from_factors(f.to_vec(), Mode::S, params))
            });
        }
        (DegreeSpec::Degree(k), Mode::RD) => {
            chains_by_length(&pool, 0, k, &mut stack, &mut |f| {
                out.push(GenMonomial::from_factors(f.to_vec(), Mode::RD, params))
            });
        }
        _ => {
            return Err(Error::param(
                "enumerate by bidegree in S mode or by degree in RD mode",
            ))
        }
    }
    Ok(out)
}

fn fits_chain(stack: &[DElement], x: &DElement) -> bool {
    if let Some(last) = stack.last() {
        if !x.leq(last) {
            return false;
        }
    }
    // no mixing: u and xi are incomparable, so only p-chains need the check
    !(x.is_u() && stack.iter().any(DElement::is_xi) || x.is_xi() && stack.iter().any(DElement::is_u))
}

fn chains_by_bidegree(
    pool: &[DElement],
    degs: &[(usize, usize)],
    start: usize,
    left: (usize, usize),
    stack: &mut Vec<DElement>,
    emit: &mut impl FnMut(&[DElement]),
) {
    if left == (0, 0) {
        emit(stack);
        return;
    }
    for i in start..pool.len() {
        let (da, db) = degs[i];
        if da > left.0 || db > left.1 || !fits_chain(stack, &pool[i]) {
            continue;
        }
        stack.push(pool[i].clone());
        chains_by_bidegree(pool, degs, i, (left.0 - da, left.1 - db), stack, emit);
        stack.pop();
    }
}

fn chains_by_length(
    pool: &[DElement],
    start: usize,
    left: usize,
    stack: &mut Vec<DElement>,
    emit: &mut impl FnMut(&[DElement]),
) {
    if left == 0 {
        emit(stack);
        return;
    }
    for i in start..pool.len() {
        if !fits_chain(stack, &pool[i]) {
            continue;
        }
        stack.push(pool[i].clone());
        chains_by_length(pool, i, left - 1, stack, emit);
        stack.pop();
    }
}

/// All multisets of `k` elements from `pool` (any order relation), as
/// monomials.
pub fn all_monomials(pool: &[DElement], k: usize, mode: Mode, params: &Params) -> Vec<GenMonomial> {
    use itertools::Itertools;
    pool.iter()
        .cloned()
        .combinations_with_replacement(k)
        .map(|f| GenMonomial::from_factors(f, mode, params))
        .collect()
}

/// All multisets of elements of `pool` whose evaluated bidegree is `(a,b)`.
pub fn all_monomials_of_bidegree(pool: &[DElement], a: usize, b: usize, mode: Mode, params: &Params) -> Vec<GenMonomial> {
    fn go(
        pool: &[DElement],
        degs: &[(usize, usize)],
        start: usize,
        left: (usize, usize),
        stack: &mut Vec<DElement>,
        out: &mut Vec<Vec<DElement>>,
    ) {
        if left == (0, 0) {
            out.push(stack.clone());
            return;
        }
        for i in start..pool.len() {
            let (da, db) = degs[i];
            if (da, db) == (0, 0) || da > left.0 || db > left.1 {
                continue;
            }
            stack.push(pool[i].clone());
            go(pool, degs, i, (left.0 - da, left.1 - db), stack, out);
            stack.pop();
        }
    }
    let degs: Vec<_> = pool.iter().map(|x| element_bidegree(x, params)).collect();
    let mut raw = Vec::new();
    go(pool, &degs, 0, (a, b), &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|f| GenMonomial::from_factors(f, mode, params))
        .collect()
}
