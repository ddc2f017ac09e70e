use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ambient sizes: `n = dim V`, `m` vectors, `q` covectors.
///
/// Construction enforces `m > n` and `q > n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub m: usize,
    pub q: usize,
}

impl Params {
    pub fn new(n: usize, m: usize, q: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n must be at least 1"));
        }
        if m <= n || q <= n {
            return Err(Error::param(format!(
                "need m > n and q > n, got (n,m,q)=({n},{m},{q})"
            )));
        }
        Ok(Params { n, m, q })
    }

    /// `d = (m+q)n - n^2`, the rank of `H`.
    pub fn rank_d(&self) -> usize {
        (self.m + self.q) * self.n - self.n * self.n
    }

    pub fn max_mq(&self) -> usize {
        self.m.max(self.q)
    }

    pub fn num_u_vars(&self) -> usize {
        self.m * self.n
    }

    pub fn num_xi_vars(&self) -> usize {
        self.n * self.q
    }

    pub fn num_vars(&self) -> usize {
        self.num_u_vars() + self.num_xi_vars()
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.n, self.m, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_m_or_q() {
        assert!(Params::new(2, 2, 3).is_err());
        assert!(Params::new(2, 3, 2).is_err());
        assert!(Params::new(0, 3, 3).is_err());
        assert_eq!(Params::new(2, 3, 3).unwrap().rank_d(), 8);
    }
}
