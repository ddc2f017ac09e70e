//! Independent reference computations for integration tests. Nothing here
//! calls the enumeration or straightening code under test.
#![allow(dead_code)]

use smt_core::poset::{leq_h, DElement};

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `|H| = C(m,n) + C(q,n) + sum_r C(m,r) C(q,r)`.
pub fn h_size(n: u128, m: u128, q: u128) -> u128 {
    binomial(m, n) + binomial(q, n) + (1..=n).map(|r| binomial(m, r) * binomial(q, r)).sum::<u128>()
}

/// Pairs `x >= y` of 1x1 minors `p(i|j)`, where `p(i|j) <= p(k|l)` iff
/// `i <= k` and `j <= l`.
pub fn singleton_pairs(m: usize, q: usize) -> usize {
    let cells: Vec<(usize, usize)> = (1..=m).flat_map(|i| (1..=q).map(move |j| (i, j))).collect();
    let mut count = 0;
    for (a, x) in cells.iter().enumerate() {
        for y in &cells[a..] {
            if (x.0 <= y.0 && x.1 <= y.1) || (y.0 <= x.0 && y.1 <= x.1) {
                count += 1;
            }
        }
    }
    count
}

/// Standard monomial count for bidegree `(k,k)` built only from `p(A,B)`,
/// by brute force over multisets of `p`'s with pairwise comparable factors.
pub fn brute_p_standard(ps: &[DElement], k: usize) -> usize {
    fn size(x: &DElement) -> usize {
        match x {
            DElement::Gen(smt_core::HElement::P(a, _)) => a.len(),
            _ => unreachable!(),
        }
    }
    fn go(ps: &[DElement], start: usize, left: usize, stack: &mut Vec<usize>) -> usize {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for i in start..ps.len() {
            let s = size(&ps[i]);
            if s > left || !stack.iter().all(|&j| leq_h(&ps[i], &ps[j]) || leq_h(&ps[j], &ps[i])) {
                continue;
            }
            stack.push(i);
            total += go(ps, i, left - s, stack);
            stack.pop();
        }
        total
    }
    go(ps, 0, k, &mut Vec::new())
}

/// Coefficient of `t^k` in `(1 - t^(n+1)) / (1 - t)^v`.
pub fn hypersurface_series(v: u128, n: u128, k: u128) -> u128 {
    let total = binomial(v + k - 1, k);
    if k > n {
        total - binomial(v + k - n - 2, k - n - 1)
    } else {
        total
    }
}
