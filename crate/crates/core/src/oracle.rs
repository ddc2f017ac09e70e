//! Ground truth independent of the straightening machinery: dimensions of
//! invariant spaces as kernels of the Lie-algebra action, and exact ranks.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::sparse_rank;
use crate::params::Params;
use crate::polyring::{gl_basis, lie_derive, phi, sl_basis, Mono, SparsePoly, Variable};
use crate::Rational;

/// Default cap on the size of a monomial space.
pub const DEFAULT_MONOMIAL_CAP: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    SL,
    GL,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Exponent vectors of total degree `deg` over the variables `vars`.
fn monomials_over(vars: &[Variable], deg: usize, params: &Params) -> Vec<Vec<u16>> {
    vars.iter()
        .combinations_with_replacement(deg)
        .map(|vs| {
            let mut e = vec![0u16; params.num_vars()];
            for v in vs {
                e[v.index(params)] += 1;
            }
            e
        })
        .collect()
}

/// Dimension of the space of polynomials of bidegree `(a,b)` killed by the
/// Lie algebra of `SL_n` or `GL_n`.
///
/// The action preserves the multiset of `U`-rows and of `W`-columns, so the
/// monomial space is split into blocks by that content and each block's
/// kernel is computed separately by exact rank.
pub fn invariant_dimension(params: &Params, a: usize, b: usize, group: Group, cap: usize) -> Result<usize> {
    let nu = params.num_u_vars();
    let nx = params.num_xi_vars();
    let size = binomial(nu + a - 1, a) * binomial(nx + b - 1, b);
    let size = if a == 0 && b == 0 { 1 } else { size };
    if size > cap as u128 {
        return Err(Error::resource("monomial space", size.min(usize::MAX as u128) as usize, cap));
    }
    let u_vars: Vec<Variable> = (0..nu).map(|i| Variable::from_index(i, params)).collect();
    let x_vars: Vec<Variable> = (nu..nu + nx).map(|i| Variable::from_index(i, params)).collect();
    let us = monomials_over(&u_vars, a, params);
    let xs = monomials_over(&x_vars, b, params);
    let row_content = |e: &[u16]| -> Vec<u16> {
        (0..params.m).map(|i| e[i * params.n..(i + 1) * params.n].iter().sum()).collect()
    };
    let col_content = |e: &[u16]| -> Vec<u16> {
        (0..params.q)
            .map(|l| (0..params.n).map(|k| e[nu + k * params.q + l]).sum())
            .collect()
    };
    let mut blocks: BTreeMap<(Vec<u16>, Vec<u16>), Vec<Vec<u16>>> = BTreeMap::new();
    for u in &us {
        for x in &xs {
            let e: Vec<u16> = u.iter().zip(x).map(|(p, q)| p + q).collect();
            blocks.entry((row_content(&e), col_content(&e))).or_default().push(e);
        }
    }
    let basis = match group {
        Group::SL => sl_basis(params.n),
        Group::GL => gl_basis(params.n),
    };
    let blocks: Vec<_> = blocks.into_values().collect();
    let dims = blocks
        .par_iter()
        .map(|monos| {
            let cols = monos
                .iter()
                .map(|e| {
                    let f = SparsePoly::monomial(params, e.clone());
                    let mut v = Vec::new();
                    for (t, x) in basis.iter().enumerate() {
                        for (m, c) in lie_derive(x, &f)?.terms() {
                            v.push(((t, m.clone()), c.clone()));
                        }
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<Vec<((usize, Mono), Rational)>>>>()?;
            Ok(monos.len() - sparse_rank(&cols))
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(dims.into_iter().sum())
}

/// Exact rank over `Q` of a list of polynomials.
pub fn rank_of(polys: &[SparsePoly]) -> usize {
    let rows: Vec<Vec<(Mono, Rational)>> = polys
        .iter()
        .map(|p| p.terms().map(|(m, c)| (m.clone(), c.clone())).collect())
        .collect();
    sparse_rank(&rows)
}

/// Dimension of the degree-`k` part of the algebra generated by the `phi_ij`
/// (the `GL_n` invariants).
///
/// When `m = q = n + 1` the only relation is the determinant, so the value
/// is read off `(1 - t^(n+1)) / (1 - t)^(mq)`; otherwise it is the rank of the
/// evaluated degree-`k` monomials in the `phi_ij`.
pub fn gl_hilbert_oracle(m: usize, q: usize, n: usize, k: usize, cap: usize) -> Result<u128> {
    let params = Params::new(n, m, q)?;
    let vars = m * q;
    if m == n + 1 && q == n + 1 {
        let total = binomial(vars + k - 1, k);
        let sub = if k > n { binomial(vars + k - n - 2, k - n - 1) } else { 0 };
        return Ok(total - sub);
    }
    gl_hilbert_by_rank(&params, k, cap)
}

/// The rank-based branch of [`gl_hilbert_oracle`], usable at any parameters.
pub fn gl_hilbert_by_rank(params: &Params, k: usize, cap: usize) -> Result<u128> {
    let vars = params.m * params.q;
    let count = binomial(vars + k - 1, k);
    if count > cap as u128 {
        return Err(Error::resource("phi monomials", count as usize, cap));
    }
    let phis = (1..=params.m)
        .cartesian_product(1..=params.q)
        .map(|(i, j)| phi(params, i, j))
        .collect::<Result<Vec<_>>>()?;
    let polys: Vec<SparsePoly> = (0..vars)
        .combinations_with_replacement(k)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|c| c.iter().fold(SparsePoly::one(params), |acc, &i| acc.mul(&phis[i])))
        .collect();
    Ok(rank_of(&polys) as u128)
}

/// The `(n+1) x (n+1)` leading minor of the pairing matrix.
pub fn det_phi(params: &Params) -> Result<SparsePoly> {
    let idx: Vec<usize> = (1..=params.n + 1).collect();
    crate::polyring::phi_minor(params, &idx, &idx)
}

/// Dimension of the bidegree-`(a,b)` monomial space.
pub fn monomial_space_size(params: &Params, a: usize, b: usize) -> u128 {
    binomial(params.num_u_vars() + a - 1, a) * binomial(params.num_xi_vars() + b - 1, b)
}
