//! Index tuples, the generator poset `H`, its completion `D`, and the lattice
//! structure on `D`.
//!
//! Two coordinate systems are provided for elements of `D`:
//!
//! - [`embed_chain`] gives the `(2n+2)`-tuple in the chain lattice
//!   `C(m,..,m,q,..,q)`: `A` padded with `m`s and a trailing `1`, likewise for
//!   `B`. This map is monotone and commutes with join/meet, but it is not
//!   injective: `p((a,m),(b,q))` and `p((a),(b))` share a tuple.
//! - [`lattice_coords`] gives an injective `2n`-tuple (`A` padded with `m+1`,
//!   `B` padded with `q+1`, an absent side written as zeros). It is an order
//!   embedding of `D`, and join/meet are computed through it.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Params;

/// Default cap on the number of poset elements for chain enumeration.
pub const DEFAULT_POSET_CAP: usize = 200;

/// A strictly increasing tuple of positive integers (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    /// Validates strict increase and `1 <= entry <= bound`.
    pub fn new(entries: Vec<usize>, bound: usize) -> Result<Self> {
        if entries.iter().any(|&e| e == 0 || e > bound) {
            return Err(Error::param(format!(
                "tuple {entries:?} has an entry outside [1,{bound}]"
            )));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param(format!(
                "tuple {entries:?} is not strictly increasing"
            )));
        }
        Ok(IndexTuple(entries))
    }

    /// No validation. Used for tuples built by the crate itself and for test
    /// fixtures that need deliberately malformed input.
    pub fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        IndexTuple(entries)
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// Componentwise comparison for tuples of equal length (the Bruhat order
    /// on `I(d,n)`).
    pub fn leq_componentwise(&self, other: &IndexTuple) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(","))
    }
}

impl From<&[usize]> for IndexTuple {
    fn from(v: &[usize]) -> Self {
        IndexTuple(v.to_vec())
    }
}

/// All strictly increasing `r`-tuples from `{1..n}` in lexicographic order.
pub fn enumerate_tuples(r: usize, n: usize) -> Result<Vec<IndexTuple>> {
    if r > n {
        return Err(Error::param(format!("cannot choose {r} of {n}")));
    }
    Ok((1..=n).combinations(r).map(IndexTuple).collect())
}

/// The order on tuples of possibly different lengths: `a ⪯ b` iff
/// `#b <= #a` and `b_j >= a_j` for `j <= #b`. The empty tuple is the largest.
pub fn leq_tuple(a: &IndexTuple, b: &IndexTuple) -> bool {
    b.len() <= a.len() && b.0.iter().zip(&a.0).all(|(bj, aj)| bj >= aj)
}

/// The order on pairs `(A,B)` of equal size, with `(∅,∅)` largest.
pub fn leq_pair(a: (&IndexTuple, &IndexTuple), b: (&IndexTuple, &IndexTuple)) -> bool {
    leq_tuple(a.0, b.0) && leq_tuple(a.1, b.1)
}

/// An element of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HElement {
    /// `p(A,B)`, an `r`-minor of the pairing matrix, `1 <= r <= n`.
    P(IndexTuple, IndexTuple),
    /// `u(I)`, the `n`-minor of `U` on rows `I`.
    U(IndexTuple),
    /// `xi(J)`, the `n`-minor of `W` on columns `J`.
    Xi(IndexTuple),
}

/// An element of `D = H ∪ {Top, Bottom}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DElement {
    Top,
    Gen(HElement),
    Bottom,
}

impl HElement {
    pub fn validate(&self, params: &Params) -> Result<()> {
        let check = |t: &IndexTuple, len: usize, bound: usize| -> Result<()> {
            IndexTuple::new(t.0.clone(), bound)?;
            if t.len() != len {
                return Err(Error::param(format!("tuple ({t}) should have {len} entries")));
            }
            Ok(())
        };
        match self {
            HElement::U(i) => check(i, params.n, params.m),
            HElement::Xi(j) => check(j, params.n, params.q),
            HElement::P(a, b) => {
                if a.len() != b.len() || a.is_empty() || a.len() > params.n {
                    return Err(Error::param(format!(
                        "p[{a}|{b}] needs 1 <= #A = #B <= {}",
                        params.n
                    )));
                }
                check(a, a.len(), params.m)?;
                check(b, b.len(), params.q)
            }
        }
    }
}

impl DElement {
    pub fn u(rows: &[usize]) -> Self {
        DElement::Gen(HElement::U(rows.into()))
    }

    pub fn xi(cols: &[usize]) -> Self {
        DElement::Gen(HElement::Xi(cols.into()))
    }

    pub fn p(rows: &[usize], cols: &[usize]) -> Self {
        DElement::Gen(HElement::P(rows.into(), cols.into()))
    }

    pub fn as_h(&self) -> Option<&HElement> {
        match self {
            DElement::Gen(h) => Some(h),
            _ => None,
        }
    }

    pub fn is_u(&self) -> bool {
        matches!(self, DElement::Gen(HElement::U(_)))
    }

    pub fn is_xi(&self) -> bool {
        matches!(self, DElement::Gen(HElement::Xi(_)))
    }

    pub fn is_p(&self) -> bool {
        matches!(self, DElement::Gen(HElement::P(..)))
    }

    pub fn is_extremal(&self) -> bool {
        matches!(self, DElement::Top | DElement::Bottom)
    }

    pub fn validate(&self, params: &Params) -> Result<()> {
        match self {
            DElement::Gen(h) => h.validate(params),
            _ => Ok(()),
        }
    }

    /// The partial order on `D`.
    pub fn leq(&self, other: &DElement) -> bool {
        leq_h(self, other)
    }

    pub fn lt(&self, other: &DElement) -> bool {
        self != other && leq_h(self, other)
    }

    pub fn comparable(&self, other: &DElement) -> bool {
        leq_h(self, other) || leq_h(other, self)
    }

    /// Parses the compact text form: `u[1,2]`, `xi[1,3]`, `p[1,2|1,3]`,
    /// `TOP`, `BOT`.
    pub fn parse(s: &str, params: &Params) -> Result<Self> {
        let s = s.trim();
        let el = match s {
            "TOP" => DElement::Top,
            "BOT" => DElement::Bottom,
            _ => {
                let open = s
                    .find('[')
                    .ok_or_else(|| Error::parse(format!("expected '[' in {s:?}")))?;
                if !s.ends_with(']') {
                    return Err(Error::parse(format!("expected trailing ']' in {s:?}")));
                }
                let head = &s[..open];
                let body = &s[open + 1..s.len() - 1];
                let nums = |t: &str| -> Result<IndexTuple> {
                    let t = t.trim();
                    if t.is_empty() {
                        return Ok(IndexTuple::empty());
                    }
                    t.split(',')
                        .map(|x| {
                            x.trim()
                                .parse::<usize>()
                                .map_err(|_| Error::parse(format!("bad index {x:?} in {s:?}")))
                        })
                        .collect::<Result<Vec<_>>>()
                        .map(IndexTuple)
                };
                match head {
                    "u" => DElement::Gen(HElement::U(nums(body)?)),
                    "xi" => DElement::Gen(HElement::Xi(nums(body)?)),
                    "p" => {
                        let (a, b) = body
                            .split_once('|')
                            .ok_or_else(|| Error::parse(format!("expected '|' in {s:?}")))?;
                        DElement::Gen(HElement::P(nums(a)?, nums(b)?))
                    }
                    _ => return Err(Error::parse(format!("unknown generator {head:?}"))),
                }
            }
        };
        el.validate(params)?;
        Ok(el)
    }
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HElement::U(i) => write!(f, "u[{i}]"),
            HElement::Xi(j) => write!(f, "xi[{j}]"),
            HElement::P(a, b) => write!(f, "p[{a}|{b}]"),
        }
    }
}

impl fmt::Display for DElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DElement::Top => f.write_str("TOP"),
            DElement::Bottom => f.write_str("BOT"),
            DElement::Gen(h) => h.fmt(f),
        }
    }
}

/// The partial order on `D`, rule by rule.
pub fn leq_h(x: &DElement, y: &DElement) -> bool {
    use HElement::*;
    match (x, y) {
        (DElement::Bottom, _) | (_, DElement::Top) => true,
        (DElement::Top, _) | (_, DElement::Bottom) => false,
        (DElement::Gen(x), DElement::Gen(y)) => match (x, y) {
            (P(a, b), P(a2, b2)) => leq_pair((a, b), (a2, b2)),
            (U(i), U(i2)) => i.leq_componentwise(i2),
            (Xi(j), Xi(j2)) => j.leq_componentwise(j2),
            (U(_), Xi(_)) | (Xi(_), U(_)) => false,
            (P(..), U(_)) | (P(..), Xi(_)) => false,
            (U(i), P(a, _)) => leq_tuple(i, a),
            (Xi(j), P(_, b)) => leq_tuple(j, b),
        },
    }
}

/// A `(2n+2)`-tuple in `C(m,..,m,q,..,q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChainVector(pub Vec<usize>);

impl ChainVector {
    pub fn leq(&self, other: &ChainVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &ChainVector) -> ChainVector {
        ChainVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &ChainVector) -> ChainVector {
        ChainVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Componentwise bounds: first `n+1` entries in `[1,m]`, rest in `[1,q]`.
    pub fn in_bounds(&self, params: &Params) -> bool {
        let k = params.n + 1;
        self.0.len() == 2 * k
            && self.0[..k].iter().all(|&e| (1..=params.m).contains(&e))
            && self.0[k..].iter().all(|&e| (1..=params.q).contains(&e))
    }
}

impl fmt::Display for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

fn bar(t: &IndexTuple, n: usize, top: usize) -> impl Iterator<Item = usize> + '_ {
    t.0.iter()
        .copied()
        .chain(std::iter::repeat_n(top, n - t.len()))
        .chain(std::iter::once(1))
}

/// The chain-lattice tuple of an element of `D`.
pub fn embed_chain(x: &DElement, params: &Params) -> ChainVector {
    let Params { n, m, q } = *params;
    let v: Vec<usize> = match x {
        DElement::Top => std::iter::repeat_n(m, n + 1)
            .chain(std::iter::repeat_n(q, n + 1))
            .collect(),
        DElement::Bottom => vec![1; 2 * n + 2],
        DElement::Gen(HElement::P(a, b)) => bar(a, n, m).chain(bar(b, n, q)).collect(),
        DElement::Gen(HElement::U(i)) => i
            .0
            .iter()
            .copied()
            .chain(std::iter::repeat_n(1, n + 2))
            .collect(),
        DElement::Gen(HElement::Xi(j)) => std::iter::repeat_n(1, n + 1)
            .chain(j.0.iter().copied())
            .chain(std::iter::once(1))
            .collect(),
    };
    ChainVector(v)
}

/// Every element of `D` whose [`embed_chain`] image is `cv`.
pub fn chain_preimages(cv: &ChainVector, params: &Params) -> Vec<DElement> {
    crate::generators::enumerate_d(params)
        .unwrap_or_default()
        .into_iter()
        .filter(|x| &embed_chain(x, params) == cv)
        .collect()
}

/// Injective order coordinates of an element of `D` (length `2n`).
pub fn lattice_coords(x: &DElement, params: &Params) -> Vec<usize> {
    let Params { n, m, q } = *params;
    let pad = |t: &IndexTuple, top: usize| {
        t.0.iter()
            .copied()
            .chain(std::iter::repeat_n(top, n - t.len()))
            .collect::<Vec<_>>()
    };
    match x {
        DElement::Top => {
            let mut v = vec![m + 1; n];
            v.extend(std::iter::repeat_n(q + 1, n));
            v
        }
        DElement::Bottom => vec![0; 2 * n],
        DElement::Gen(HElement::P(a, b)) => {
            let mut v = pad(a, m + 1);
            v.extend(pad(b, q + 1));
            v
        }
        DElement::Gen(HElement::U(i)) => {
            let mut v = i.0.clone();
            v.extend(std::iter::repeat_n(0, n));
            v
        }
        DElement::Gen(HElement::Xi(j)) => {
            let mut v = vec![0; n];
            v.extend_from_slice(&j.0);
            v
        }
    }
}

/// Inverse of [`lattice_coords`]; `None` if `c` is not the image of an
/// element of `D`.
pub fn from_lattice_coords(c: &[usize], params: &Params) -> Option<DElement> {
    let Params { n, m, q } = *params;
    if c.len() != 2 * n {
        return None;
    }
    let (left, right) = c.split_at(n);
    let all = |s: &[usize], v: usize| s.iter().all(|&e| e == v);
    if all(left, 0) && all(right, 0) {
        return Some(DElement::Bottom);
    }
    if all(left, m + 1) && all(right, q + 1) {
        return Some(DElement::Top);
    }
    let strict = |s: &[usize], bound: usize| {
        s.windows(2).all(|w| w[0] < w[1]) && s.iter().all(|&e| (1..=bound).contains(&e))
    };
    if all(right, 0) {
        return strict(left, m).then(|| DElement::u(left));
    }
    if all(left, 0) {
        return strict(right, q).then(|| DElement::xi(right));
    }
    // p(A,B): a strictly increasing prefix then padding, same length on both sides.
    let unpad = |s: &[usize], bound: usize| -> Option<Vec<usize>> {
        let len = s.iter().position(|&e| e == bound + 1).unwrap_or(s.len());
        if !all(&s[len..], bound + 1) || !strict(&s[..len], bound) {
            return None;
        }
        Some(s[..len].to_vec())
    };
    let a = unpad(left, m)?;
    let b = unpad(right, q)?;
    (a.len() == b.len() && !a.is_empty()).then(|| DElement::p(&a, &b))
}

fn combine(x: &DElement, y: &DElement, params: &Params, f: fn(usize, usize) -> usize) -> Result<DElement> {
    let cx = lattice_coords(x, params);
    let cy = lattice_coords(y, params);
    let c: Vec<usize> = cx.iter().zip(&cy).map(|(a, b)| f(*a, *b)).collect();
    from_lattice_coords(&c, params).ok_or_else(|| {
        Error::Invariant(format!("lattice operation on {x}, {y} left D: {c:?}"))
    })
}

/// Least upper bound in `D`.
pub fn join_d(x: &DElement, y: &DElement, params: &Params) -> Result<DElement> {
    combine(x, y, params, usize::max)
}

/// Greatest lower bound in `D`.
pub fn meet_d(x: &DElement, y: &DElement, params: &Params) -> Result<DElement> {
    combine(x, y, params, usize::min)
}

/// Descending order on `D` by lattice coordinates: a linear extension of the
/// partial order, used as the canonical factor order.
pub fn canonical_cmp(x: &DElement, y: &DElement, params: &Params) -> Ordering {
    lattice_coords(y, params).cmp(&lattice_coords(x, params))
}

/// The order-reversing bijection `θ: I(d,n) → H_{r,d}` with `r = n - d`.
pub fn theta(i: &IndexTuple, d: usize, n: usize) -> Result<(IndexTuple, IndexTuple)> {
    check_grassmann_tuple(i, d, n)?;
    let e = i.entries();
    let split = e.iter().take_while(|&&x| x <= d).count();
    let rows: Vec<usize> = e[split..].iter().rev().map(|&x| n + 1 - x).collect();
    let cols: Vec<usize> = (1..=d).filter(|c| !e[..split].contains(c)).collect();
    Ok((IndexTuple(rows), IndexTuple(cols)))
}

/// The minor of the opposite-cell matrix that the Plücker coordinate
/// `p_j` restricts to: `(rows, cols)` with rows renumbered from 1.
pub fn f_minor(j: &IndexTuple, d: usize, n: usize) -> Result<(IndexTuple, IndexTuple)> {
    check_grassmann_tuple(j, d, n)?;
    let e = j.entries();
    let split = e.iter().take_while(|&&x| x <= d).count();
    let cols: Vec<usize> = (1..=d).filter(|c| !e[..split].contains(c)).collect();
    let rows: Vec<usize> = e[split..].iter().map(|&x| x - d).collect();
    Ok((IndexTuple(rows), IndexTuple(cols)))
}

fn check_grassmann_tuple(i: &IndexTuple, d: usize, n: usize) -> Result<()> {
    if d == 0 || d > n {
        return Err(Error::param(format!("need 1 <= d <= n, got d={d}, n={n}")));
    }
    if i.len() != d {
        return Err(Error::param(format!("tuple ({i}) should have {d} entries")));
    }
    IndexTuple::new(i.0.clone(), n).map(|_| ())
}

/// Which poset to build from `(n,m,q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetKind {
    H,
    D,
}

/// A finite poset given by its full order relation.
#[derive(Debug, Clone)]
pub struct FinitePoset<T> {
    pub elements: Vec<T>,
    leq: Vec<Vec<bool>>,
    covers_up: Vec<Vec<usize>>,
}

impl<T> FinitePoset<T> {
    pub fn new(elements: Vec<T>, leq: impl Fn(&T, &T) -> bool) -> Self {
        let len = elements.len();
        let rel: Vec<Vec<bool>> = (0..len)
            .map(|i| (0..len).map(|j| leq(&elements[i], &elements[j])).collect())
            .collect();
        Self::from_relation(elements, rel)
    }

    pub fn from_relation(elements: Vec<T>, leq: Vec<Vec<bool>>) -> Self {
        let len = elements.len();
        let lt = |i: usize, j: usize| i != j && leq[i][j];
        let covers_up = (0..len)
            .map(|i| {
                (0..len)
                    .filter(|&j| lt(i, j) && !(0..len).any(|k| lt(i, k) && lt(k, j)))
                    .collect()
            })
            .collect();
        FinitePoset {
            elements,
            leq,
            covers_up,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn covers_of(&self, i: usize) -> &[usize] {
        &self.covers_up[i]
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| !(0..self.len()).any(|i| i != j && self.leq[i][j]))
            .collect()
    }

    /// Visits every maximal chain (as index lists, bottom to top).
    pub fn for_each_maximal_chain(&self, mut visit: impl FnMut(&[usize])) {
        let mut path = Vec::new();
        for start in self.minimal() {
            path.push(start);
            self.walk(&mut path, &mut visit);
            path.pop();
        }
    }

    fn walk(&self, path: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        let last = *path.last().expect("nonempty path");
        let up = &self.covers_up[last];
        if up.is_empty() {
            visit(path);
            return;
        }
        for &next in up {
            path.push(next);
            self.walk(path, visit);
            path.pop();
        }
    }

    /// Number of maximal chains of each cardinality, by dynamic programming
    /// over cover relations.
    pub fn chain_cardinalities(&self) -> std::collections::BTreeMap<usize, u128> {
        use std::collections::BTreeMap;
        // memo[i]: cardinality -> number of saturated chains from i to a maximal element
        let mut memo: Vec<Option<BTreeMap<usize, u128>>> = vec![None; self.len()];
        fn go<T>(p: &FinitePoset<T>, i: usize, memo: &mut Vec<Option<BTreeMap<usize, u128>>>) -> BTreeMap<usize, u128> {
            if let Some(m) = &memo[i] {
                return m.clone();
            }
            let mut out = BTreeMap::new();
            if p.covers_up[i].is_empty() {
                out.insert(1, 1);
            }
            for &j in &p.covers_up[i] {
                for (len, count) in go(p, j, memo) {
                    *out.entry(len + 1).or_insert(0) += count;
                }
            }
            memo[i] = Some(out.clone());
            out
        }
        let mut total = BTreeMap::new();
        for s in self.minimal() {
            for (len, count) in go(self, s, &mut memo) {
                *total.entry(len).or_insert(0) += count;
            }
        }
        total
    }

    /// The common maximal-chain cardinality minus one, or an invariant error
    /// if the poset is not graded.
    pub fn rank(&self) -> Result<usize> {
        let lens = self.chain_cardinalities();
        match (lens.keys().next(), lens.keys().next_back()) {
            (Some(&lo), Some(&hi)) if lo == hi => Ok(lo - 1),
            (None, _) => Err(Error::param("empty poset has no rank")),
            _ => Err(Error::Invariant(format!(
                "maximal chains have differing cardinalities {:?}",
                lens.keys().collect::<Vec<_>>()
            ))),
        }
    }
}

/// `H` or `D` at `(n,m,q)` as a [`FinitePoset`], guarded by `cap` elements.
pub fn build_poset(kind: PosetKind, params: &Params, cap: usize) -> Result<FinitePoset<DElement>> {
    let elements = match kind {
        PosetKind::H => crate::generators::enumerate_h(params)?
            .into_iter()
            .map(DElement::Gen)
            .collect::<Vec<_>>(),
        PosetKind::D => crate::generators::enumerate_d(params)?,
    };
    if elements.len() > cap {
        return Err(Error::resource("poset elements", elements.len(), cap));
    }
    Ok(FinitePoset::new(elements, leq_h))
}

/// Every maximal chain of `H` or `D`, bottom to top.
pub fn maximal_chains(kind: PosetKind, params: &Params, cap: usize) -> Result<Vec<Vec<DElement>>> {
    let poset = build_poset(kind, params, cap)?;
    let mut chains = Vec::new();
    poset.for_each_maximal_chain(|c| {
        chains.push(c.iter().map(|&i| poset.elements[i].clone()).collect())
    });
    Ok(chains)
}

/// Rank of `H` or `D`.
pub fn rank(kind: PosetKind, params: &Params, cap: usize) -> Result<usize> {
    build_poset(kind, params, cap)?.rank()
}
