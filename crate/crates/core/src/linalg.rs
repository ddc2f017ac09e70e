//! Exact linear algebra over `Q`: fraction-free rank, Gauss-Jordan solving,
//! and block-decomposed ranks of sparse row sets.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Rational;

/// A dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Inconsistent,
    /// Consistent, with a kernel of the given dimension.
    Underdetermined(usize),
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    /// The matrix unit `E_kl` (0-based indices).
    pub fn unit(n: usize, k: usize, l: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[k][l] = Rational::one();
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(data: Vec<Vec<Rational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        RationalMatrix { rows, cols, data }
    }

    pub fn from_i64(data: &[Vec<i64>]) -> Self {
        Self::from_rows(
            data.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.data[i][i].clone()).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        RationalMatrix { data, ..*self }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|x| x * c).collect())
            .collect();
        RationalMatrix { data, ..*self }
    }

    /// Rank by fraction-free (Bareiss) elimination on the integer matrix
    /// obtained by clearing each row's denominators.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = self.data.iter().map(|r| clear_denominators(r)).collect();
        bareiss_rank(rows, self.cols)
    }

    /// Rank by ordinary Gaussian elimination over `Q`. Slower; kept as an
    /// independent route for cross-checking [`RationalMatrix::rank`].
    pub fn rank_gauss(&self) -> usize {
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank][col].clone();
            for r in rank + 1..self.rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pivot;
                for c in col..self.cols {
                    let sub = &f * &a[rank][c];
                    a[r][c] -= sub;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Solves `A x = b` by Gauss-Jordan elimination.
    pub fn solve(&self, b: &[Rational]) -> Solution {
        assert_eq!(b.len(), self.rows);
        let mut a: Vec<Vec<Rational>> = self
            .data
            .iter()
            .zip(b)
            .map(|(r, bi)| {
                let mut r = r.clone();
                r.push(bi.clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = a[rank][col].recip();
            for x in a[rank].iter_mut() {
                *x *= &inv;
            }
            for r in 0..self.rows {
                if r == rank || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in col..=self.cols {
                    let sub = &f * &a[rank][c];
                    a[r][c] -= sub;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if a[rank..].iter().any(|r| !r[self.cols].is_zero()) {
            return Solution::Inconsistent;
        }
        if rank < self.cols {
            return Solution::Underdetermined(self.cols - rank);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = a[r][self.cols].clone();
        }
        Solution::Unique(x)
    }
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Rank of an integer matrix by fraction-free elimination with first-nonzero
/// pivoting. Every intermediate entry is a minor of the input, so the
/// divisions are exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for c in col + 1..cols {
                let v = &row[c] * &pivot - &lead * &pivot_row[c];
                debug_assert!((&v % &prev).is_zero());
                row[c] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank of a set of sparse rational rows keyed by arbitrary column labels.
///
/// Rows are split into connected components (two rows are connected when they
/// share a column label) and the component ranks are summed.
pub fn sparse_rank<K: Eq + Hash + Clone>(rows: &[Vec<(K, Rational)>]) -> usize {
    let mut parent: Vec<usize> = (0..rows.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: HashMap<&K, usize> = HashMap::new();
    for (i, row) in rows.iter().enumerate() {
        for (k, v) in row {
            if v.is_zero() {
                continue;
            }
            match owner.get(k) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
                None => {
                    owner.insert(k, i);
                }
            }
        }
    }
    let mut blocks: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..rows.len() {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().push(i);
    }
    blocks.values().map(|members| block_rank(rows, members)).sum()
}

fn block_rank<K: Eq + Hash + Clone>(rows: &[Vec<(K, Rational)>], members: &[usize]) -> usize {
    let mut index: HashMap<&K, usize> = HashMap::new();
    for &i in members {
        for (k, v) in &rows[i] {
            if !v.is_zero() {
                let next = index.len();
                index.entry(k).or_insert(next);
            }
        }
    }
    if index.is_empty() {
        return 0;
    }
    let cols = index.len();
    let dense: Vec<Vec<BigInt>> = members
        .iter()
        .map(|&i| {
            let mut r = vec![Rational::zero(); cols];
            for (k, v) in &rows[i] {
                if let Some(&c) = index.get(k) {
                    r[c] += v;
                }
            }
            clear_denominators(&r)
        })
        .collect();
    // Fewer rows than columns is the common shape; eliminate on the transpose
    // when that is smaller.
    if dense.len() < cols {
        let t: Vec<Vec<BigInt>> = (0..cols)
            .map(|c| dense.iter().map(|r| r[c].clone()).collect())
            .collect();
        bareiss_rank(t, dense.len())
    } else {
        bareiss_rank(dense, cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rank_examples() {
        let m = RationalMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_gauss(), 2);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        assert_eq!(RationalMatrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn rank_with_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![Rational::new(1.into(), 2.into()), q(1)],
            vec![q(1), q(2)],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_cases() {
        let a = RationalMatrix::from_i64(&[vec![2, 0], vec![0, 3], vec![1, 1]]);
        let sol = a.solve(&[q(2), q(3), q(2)]);
        assert_eq!(sol, Solution::Unique(vec![q(1), q(1)]));
        assert_eq!(a.solve(&[q(2), q(3), q(5)]), Solution::Inconsistent);
        let b = RationalMatrix::from_i64(&[vec![1, 1]]);
        assert_eq!(b.solve(&[q(1)]), Solution::Underdetermined(1));
    }

    #[test]
    fn sparse_rank_splits_blocks() {
        let rows = vec![
            vec![("a", q(1)), ("b", q(1))],
            vec![("a", q(2)), ("b", q(2))],
            vec![("c", q(1))],
            vec![("d", q(0))],
        ];
        assert_eq!(sparse_rank(&rows), 2);
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_gauss(
            rows in 1usize..6,
            cols in 1usize..6,
            seed in proptest::collection::vec(-3i64..4, 36),
            den in proptest::collection::vec(1i64..4, 36),
        ) {
            let data: Vec<Vec<Rational>> = (0..rows)
                .map(|i| (0..cols).map(|j| {
                    let k = i * 6 + j;
                    Rational::new(seed[k].into(), den[k].into())
                }).collect())
                .collect();
            let m = RationalMatrix::from_rows(data);
            prop_assert_eq!(m.rank(), m.rank_gauss());
        }

        #[test]
        fn low_rank_products_are_detected(
            a in proptest::collection::vec(-3i64..4, 8),
            b in proptest::collection::vec(-3i64..4, 8),
        ) {
            // a 4x4 product of 4x2 and 2x4 matrices has rank <= 2
            let data: Vec<Vec<i64>> = (0..4)
                .map(|i| (0..4).map(|j| a[2 * i] * b[j] + a[2 * i + 1] * b[4 + j]).collect())
                .collect();
            let m = RationalMatrix::from_i64(&data);
            prop_assert!(m.rank() <= 2);
            prop_assert_eq!(m.rank(), m.rank_gauss());
        }
    }
}
