//! Sparse polynomials over `Q` in the entries `u_ij` of the `m x n` matrix `U`
//! and `xi_kl` of the `n x q` matrix `W`.
//!
//! Variables are numbered in a fixed global order: `u_11, u_12, .., u_mn`
//! row-major, then `xi_11, .., xi_nq` row-major. Terms are kept in
//! degree-lexicographic order over exponent vectors in that numbering and
//! printed largest first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::params::Params;
use crate::poset::{DElement, HElement, IndexTuple};
use crate::Rational;

/// Which matrix a variable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    U,
    Xi,
}

/// A single variable `u[row,col]` or `xi[row,col]` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub kind: VarKind,
    pub row: usize,
    pub col: usize,
}

impl Variable {
    pub fn u(row: usize, col: usize) -> Self {
        Variable { kind: VarKind::U, row, col }
    }

    pub fn xi(row: usize, col: usize) -> Self {
        Variable { kind: VarKind::Xi, row, col }
    }

    pub fn in_bounds(&self, p: &Params) -> bool {
        let (rows, cols) = match self.kind {
            VarKind::U => (p.m, p.n),
            VarKind::Xi => (p.n, p.q),
        };
        (1..=rows).contains(&self.row) && (1..=cols).contains(&self.col)
    }

    /// Position in the global variable order.
    pub fn index(&self, p: &Params) -> usize {
        match self.kind {
            VarKind::U => (self.row - 1) * p.n + (self.col - 1),
            VarKind::Xi => p.num_u_vars() + (self.row - 1) * p.q + (self.col - 1),
        }
    }

    pub fn from_index(idx: usize, p: &Params) -> Self {
        if idx < p.num_u_vars() {
            Variable::u(idx / p.n + 1, idx % p.n + 1)
        } else {
            let k = idx - p.num_u_vars();
            Variable::xi(k / p.q + 1, k % p.q + 1)
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            VarKind::U => "u",
            VarKind::Xi => "xi",
        };
        write!(f, "{name}[{},{}]", self.row, self.col)
    }
}

/// An exponent vector indexed by the global variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(Vec<u16>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(u-degree, xi-degree)` of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bidegree {
    Zero,
    Homogeneous(usize, usize),
    Inhomogeneous,
}

/// An exact polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    params: Params,
    terms: BTreeMap<Mono, Rational>,
}

impl SparsePoly {
    pub fn zero(params: &Params) -> Self {
        SparsePoly {
            params: *params,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(params: &Params) -> Self {
        Self::constant(params, Rational::one())
    }

    pub fn constant(params: &Params, c: Rational) -> Self {
        let mut p = Self::zero(params);
        if !c.is_zero() {
            p.terms.insert(Mono::one(params.num_vars()), c);
        }
        p
    }

    pub fn var(params: &Params, v: Variable) -> Result<Self> {
        if !v.in_bounds(params) {
            return Err(Error::param(format!("variable {v} out of range at {params}")));
        }
        let mut e = Mono::one(params.num_vars());
        e.0[v.index(params)] = 1;
        let mut p = Self::zero(params);
        p.terms.insert(e, Rational::one());
        Ok(p)
    }

    /// The monomial with the given exponent vector (global variable order).
    pub fn monomial(params: &Params, exponents: Vec<u16>) -> Self {
        assert_eq!(exponents.len(), params.num_vars());
        let mut p = Self::zero(params);
        p.terms.insert(Mono(exponents), Rational::one());
        p
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending degree-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        debug_assert_eq!(self.params, other.params);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparsePoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return Self::zero(&self.params);
        }
        SparsePoly {
            params: self.params,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &SparsePoly) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        debug_assert_eq!(self.params, other.params);
        let mut out = Self::zero(&self.params);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> SparsePoly {
        (0..k).fold(Self::one(&self.params), |acc, _| acc.mul(self))
    }

    pub fn bidegree(&self) -> Bidegree {
        let nu = self.params.num_u_vars();
        let mut it = self.terms.keys().map(|m| {
            let a: usize = m.0[..nu].iter().map(|&e| e as usize).sum();
            let b: usize = m.0[nu..].iter().map(|&e| e as usize).sum();
            (a, b)
        });
        let Some(first) = it.next() else {
            return Bidegree::Zero;
        };
        if it.all(|d| d == first) {
            Bidegree::Homogeneous(first.0, first.1)
        } else {
            Bidegree::Inhomogeneous
        }
    }

    /// Partial derivative with respect to `v`.
    pub fn derive(&self, v: Variable) -> SparsePoly {
        let idx = v.index(&self.params);
        let mut out = Self::zero(&self.params);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(s: &str, params: &Params) -> Result<SparsePoly> {
        let mut out = Self::zero(params);
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        // Split on top-level " + " separators; a leading '-' stays with its term.
        for term in s.split(" + ") {
            let mut factors = term.split('*').map(str::trim);
            let coeff_txt = factors
                .next()
                .ok_or_else(|| Error::parse(format!("empty term in {s:?}")))?;
            let coeff = parse_rational(coeff_txt)?;
            let mut mono = Mono::one(params.num_vars());
            for f in factors {
                let (base, exp) = match f.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<u16>()
                            .map_err(|_| Error::parse(format!("bad exponent in {f:?}")))?,
                    ),
                    None => (f, 1),
                };
                let v = parse_variable(base)?;
                if !v.in_bounds(params) {
                    return Err(Error::parse(format!("variable {v} out of range at {params}")));
                }
                mono.0[v.index(params)] += exp;
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

/// Parses `a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b: num_bigint::BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formats as `p/q` (always with a denominator).
pub fn format_rational(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn parse_variable(s: &str) -> Result<Variable> {
    let bad = || Error::parse(format!("bad variable {s:?}"));
    let open = s.find('[').ok_or_else(bad)?;
    let body = s[open + 1..].strip_suffix(']').ok_or_else(bad)?;
    let (r, c) = body.split_once(',').ok_or_else(bad)?;
    let row = r.trim().parse().map_err(|_| bad())?;
    let col = c.trim().parse().map_err(|_| bad())?;
    match &s[..open] {
        "u" => Ok(Variable::u(row, col)),
        "xi" => Ok(Variable::xi(row, col)),
        _ => Err(bad()),
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let text = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut parts = vec![c.to_string()];
                for (idx, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let v = Variable::from_index(idx, &self.params);
                    parts.push(if e == 1 { v.to_string() } else { format!("{v}^{e}") });
                }
                parts.join(" * ")
            })
            .join(" + ");
        f.write_str(&text)
    }
}

/// `phi_ij = sum_s u_is xi_sj`.
pub fn phi(params: &Params, i: usize, j: usize) -> Result<SparsePoly> {
    if !(1..=params.m).contains(&i) || !(1..=params.q).contains(&j) {
        return Err(Error::param(format!("phi({i},{j}) out of range at {params}")));
    }
    let mut out = SparsePoly::zero(params);
    for s in 1..=params.n {
        let t = SparsePoly::var(params, Variable::u(i, s))?.mul(&SparsePoly::var(params, Variable::xi(s, j))?);
        out = out.add(&t);
    }
    Ok(out)
}

/// Determinant of a square matrix of polynomials by signed permutation
/// expansion.
pub fn det(params: &Params, entries: &[Vec<SparsePoly>]) -> SparsePoly {
    let k = entries.len();
    let mut out = SparsePoly::zero(params);
    for perm in (0..k).permutations(k) {
        let inversions = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let mut t = SparsePoly::one(params);
        for (r, &c) in perm.iter().enumerate() {
            t = t.mul(&entries[r][c]);
            if t.is_zero() {
                break;
            }
        }
        let sign = if inversions % 2 == 0 { Rational::one() } else { -Rational::one() };
        out.add_scaled(&sign, &t);
    }
    out
}

/// The minor of the `m x q` matrix `(phi_ij)` on the given rows and columns.
/// No size limit and no validation of the index lists beyond range, so that
/// repeated indices and `(n+1)`-minors can be formed.
pub fn phi_minor(params: &Params, rows: &[usize], cols: &[usize]) -> Result<SparsePoly> {
    if rows.len() != cols.len() {
        return Err(Error::param("minor needs as many rows as columns"));
    }
    let entries = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| phi(params, i, j)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(det(params, &entries))
}

/// `p(A,B)`: the `#A`-minor of `(phi_ij)` on rows `A`, columns `B`.
pub fn eval_p(params: &Params, a: &IndexTuple, b: &IndexTuple) -> Result<SparsePoly> {
    if a.len() != b.len() {
        return Err(Error::param(format!("p[{a}|{b}] has mismatched sizes")));
    }
    if a.len() > params.n {
        return Err(Error::param(format!("p[{a}|{b}] is larger than n={}", params.n)));
    }
    phi_minor(params, a.entries(), b.entries())
}

/// `u(I)`: the `n`-minor of `U` on rows `I`.
pub fn eval_u(params: &Params, rows: &IndexTuple) -> Result<SparsePoly> {
    if rows.len() != params.n || rows.entries().iter().any(|&i| i == 0 || i > params.m) {
        return Err(Error::param(format!("u[{rows}] is not an n-subset of rows")));
    }
    let entries = rows
        .entries()
        .iter()
        .map(|&i| (1..=params.n).map(|s| SparsePoly::var(params, Variable::u(i, s))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(det(params, &entries))
}

/// `xi(J)`: the `n`-minor of `W` on columns `J`.
pub fn eval_xi(params: &Params, cols: &IndexTuple) -> Result<SparsePoly> {
    if cols.len() != params.n || cols.entries().iter().any(|&j| j == 0 || j > params.q) {
        return Err(Error::param(format!("xi[{cols}] is not an n-subset of columns")));
    }
    let entries = (1..=params.n)
        .map(|s| cols.entries().iter().map(|&j| SparsePoly::var(params, Variable::xi(s, j))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(det(params, &entries))
}

/// The polynomial of a generator; `Top` and `Bottom` evaluate to 1.
pub fn eval_d(params: &Params, x: &DElement) -> Result<SparsePoly> {
    match x {
        DElement::Top | DElement::Bottom => Ok(SparsePoly::one(params)),
        DElement::Gen(HElement::P(a, b)) => eval_p(params, a, b),
        DElement::Gen(HElement::U(i)) => eval_u(params, i),
        DElement::Gen(HElement::Xi(j)) => eval_xi(params, j),
    }
}

/// The derivation of the `gl_n` action `A.(U,W) = (UA, A^{-1}W)` in the
/// direction `X`:
/// `sum (XW)_kl d/dxi_kl - sum (UX)_ij d/du_ij`.
pub fn lie_derive(x: &RationalMatrix, f: &SparsePoly) -> Result<SparsePoly> {
    let p = *f.params();
    if x.rows() != p.n || x.cols() != p.n {
        return Err(Error::param(format!("expected a {0}x{0} matrix", p.n)));
    }
    let nu = p.num_u_vars();
    let mut out = SparsePoly::zero(&p);
    for (m, c) in f.terms() {
        for (idx, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = Variable::from_index(idx, &p);
            let ce = c * Rational::from_integer(e.into());
            // lower this variable once, then raise each replacement variable
            let mut base = m.clone();
            base.0[idx] -= 1;
            if idx < nu {
                // (UX)_ij = sum_s u_is X_sj
                for s in 1..=p.n {
                    let coef = x.get(s - 1, v.col - 1);
                    if coef.is_zero() {
                        continue;
                    }
                    let mut t = base.clone();
                    t.0[Variable::u(v.row, s).index(&p)] += 1;
                    out.add_term(t, -(&ce * coef));
                }
            } else {
                // (XW)_kl = sum_s X_ks xi_sl
                for s in 1..=p.n {
                    let coef = x.get(v.row - 1, s - 1);
                    if coef.is_zero() {
                        continue;
                    }
                    let mut t = base.clone();
                    t.0[Variable::xi(s, v.col).index(&p)] += 1;
                    out.add_term(t, &ce * coef);
                }
            }
        }
    }
    Ok(out)
}

/// A basis of the trace-zero matrices: `E_kl` for `k != l` and
/// `E_kk - E_(k+1)(k+1)`.
pub fn sl_basis(n: usize) -> Vec<RationalMatrix> {
    let mut out = Vec::new();
    for k in 0..n {
        for l in 0..n {
            if k != l {
                out.push(RationalMatrix::unit(n, k, l));
            }
        }
    }
    for k in 0..n.saturating_sub(1) {
        out.push(RationalMatrix::unit(n, k, k).add(&RationalMatrix::unit(n, k + 1, k + 1).scale(&-Rational::one())));
    }
    out
}

/// All matrix units `E_kl`.
pub fn gl_basis(n: usize) -> Vec<RationalMatrix> {
    (0..n)
        .flat_map(|k| (0..n).map(move |l| RationalMatrix::unit(n, k, l)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::enumerate_tuples;
    use proptest::prelude::*;

    fn p233() -> Params {
        Params::new(2, 3, 3).unwrap()
    }

    fn v(p: &Params, x: Variable) -> SparsePoly {
        SparsePoly::var(p, x).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        let p = p233();
        let f = v(&p, Variable::u(1, 1)).mul(&v(&p, Variable::xi(1, 1)));
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f.to_string(), "1 * u[1,1] * xi[1,1]");
        assert!(f.add(&f.scale(&-Rational::one())).is_zero());
        assert_eq!(f.mul(&SparsePoly::one(&p)), f);
    }

    #[test]
    fn phi_expansion() {
        let p1 = Params::new(1, 2, 3).unwrap();
        assert_eq!(phi(&p1, 2, 3).unwrap().to_string(), "1 * u[2,1] * xi[1,3]");
        let p = p233();
        let f = phi(&p, 1, 1).unwrap();
        let expect = v(&p, Variable::u(1, 1))
            .mul(&v(&p, Variable::xi(1, 1)))
            .add(&v(&p, Variable::u(1, 2)).mul(&v(&p, Variable::xi(2, 1))));
        assert_eq!(f, expect);
        assert_eq!(f.num_terms(), 2);
        assert!(f.terms().all(|(_, c)| c.is_one()));
        assert!(phi(&p, 4, 1).is_err());
    }

    #[test]
    fn minors() {
        let p = p233();
        let a = IndexTuple::from(&[1usize][..]);
        let b = IndexTuple::from(&[2usize][..]);
        assert_eq!(eval_p(&p, &a, &b).unwrap(), phi(&p, 1, 2).unwrap());
        let u12 = eval_u(&p, &IndexTuple::from(&[1usize, 2][..])).unwrap();
        let expect = v(&p, Variable::u(1, 1))
            .mul(&v(&p, Variable::u(2, 2)))
            .sub(&v(&p, Variable::u(1, 2)).mul(&v(&p, Variable::u(2, 1))));
        assert_eq!(u12, expect);
        assert!(eval_p(&p, &a, &IndexTuple::from(&[1usize, 2][..])).is_err());
    }

    #[test]
    fn cauchy_binet_exhaustive() {
        let p = p233();
        for i in enumerate_tuples(2, 3).unwrap() {
            for j in enumerate_tuples(2, 3).unwrap() {
                let lhs = eval_u(&p, &i).unwrap().mul(&eval_xi(&p, &j).unwrap());
                assert_eq!(lhs, eval_p(&p, &i, &j).unwrap(), "u[{i}] xi[{j}]");
            }
        }
    }

    #[test]
    fn repeated_rows_give_zero() {
        let p = p233();
        let a = IndexTuple::from_vec_unchecked(vec![2, 2]);
        let b = IndexTuple::from(&[1usize, 3][..]);
        assert!(eval_p(&p, &a, &b).unwrap().is_zero());
    }

    #[test]
    fn bidegrees() {
        let p = p233();
        let f = phi(&p, 1, 1).unwrap();
        assert_eq!(f.bidegree(), Bidegree::Homogeneous(1, 1));
        let u = eval_u(&p, &IndexTuple::from(&[1usize, 3][..])).unwrap();
        assert_eq!(u.bidegree(), Bidegree::Homogeneous(2, 0));
        assert_eq!(f.add(&u).bidegree(), Bidegree::Inhomogeneous);
        assert_eq!(SparsePoly::zero(&p).bidegree(), Bidegree::Zero);
    }

    #[test]
    fn generators_are_sl_invariant() {
        let p = p233();
        let mut gens = Vec::new();
        for i in enumerate_tuples(2, 3).unwrap() {
            gens.push(eval_u(&p, &i).unwrap());
            gens.push(eval_xi(&p, &i).unwrap());
        }
        for r in 1..=2 {
            for a in enumerate_tuples(r, 3).unwrap() {
                for b in enumerate_tuples(r, 3).unwrap() {
                    gens.push(eval_p(&p, &a, &b).unwrap());
                }
            }
        }
        for x in sl_basis(2) {
            for g in &gens {
                assert!(lie_derive(&x, g).unwrap().is_zero());
            }
        }
        // phi is invariant under every X, not just trace-zero ones
        for x in gl_basis(2) {
            assert!(lie_derive(&x, &phi(&p, 2, 3).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn u_minors_carry_the_inverse_determinant_character() {
        let p = p233();
        let x = RationalMatrix::from_i64(&[vec![3, 0], vec![0, 5]]);
        let u = eval_u(&p, &IndexTuple::from(&[2usize, 3][..])).unwrap();
        assert_eq!(lie_derive(&x, &u).unwrap(), u.scale(&-x.trace()));
        let xi = eval_xi(&p, &IndexTuple::from(&[1usize, 3][..])).unwrap();
        assert_eq!(lie_derive(&x, &xi).unwrap(), xi.scale(&x.trace()));
    }

    #[test]
    fn identity_scales_by_degree_difference() {
        let p = p233();
        let f = eval_u(&p, &IndexTuple::from(&[1usize, 2][..]))
            .unwrap()
            .mul(&v(&p, Variable::xi(2, 1)));
        let id = RationalMatrix::identity(2);
        assert_eq!(lie_derive(&id, &f).unwrap(), f.scale(&Rational::from_integer((-1).into())));
        assert!(lie_derive(&id, &phi(&p, 1, 1).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn text_round_trip() {
        let p = p233();
        let f = eval_p(&p, &IndexTuple::from(&[1usize, 2][..]), &IndexTuple::from(&[2usize, 3][..]))
            .unwrap()
            .scale(&Rational::new(3.into(), 7.into()))
            .add(&SparsePoly::constant(&p, Rational::from_integer(2.into())));
        let text = f.to_string();
        assert_eq!(SparsePoly::parse(&text, &p).unwrap(), f);
        assert_eq!(SparsePoly::parse("0", &p).unwrap(), SparsePoly::zero(&p));
        assert!(SparsePoly::parse("1 * w[1,1]", &p).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly> {
        let p = p233();
        proptest::collection::vec((-3i64..4, proptest::collection::vec(0u16..3, 12)), 0..5).prop_map(
            move |terms| {
                let mut f = SparsePoly::zero(&p);
                for (c, e) in terms {
                    f.add_term(Mono(e), Rational::from_integer(c.into()));
                }
                f
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert_eq!(f.add(&g), g.add(&f));
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert!(f.sub(&f).is_zero());
        }

        #[test]
        fn parse_inverts_display(f in arb_poly()) {
            prop_assert_eq!(SparsePoly::parse(&f.to_string(), f.params()).unwrap(), f);
        }
    }
}
