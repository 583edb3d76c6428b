use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::point::fmt_q;
use super::Q;
use crate::error::{Error, Result};

/// The four level constants, `0 < delta' < delta < gamma < eps < 1/(d+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub eps: Q,
    pub gamma: Q,
    pub delta: Q,
    pub delta_prime: Q,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamsJson {
    pub eps: String,
    pub gamma: String,
    pub delta: String,
    pub delta_prime: String,
}

impl Params {
    /// `eps = 1/(d+2)`, `gamma = 3 eps/4`, `delta = eps/2`, `delta' = eps/4`.
    pub fn default_for(d: usize) -> Self {
        let n = d as i64 + 2;
        Self {
            eps: Q::new(1, n),
            gamma: Q::new(3, 4 * n),
            delta: Q::new(1, 2 * n),
            delta_prime: Q::new(1, 4 * n),
        }
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        let bound = Q::new(1, d as i64 + 1);
        let chain = [
            ("0", Q::zero()),
            ("delta'", self.delta_prime),
            ("delta", self.delta),
            ("gamma", self.gamma),
            ("eps", self.eps),
            ("1/(d+1)", bound),
        ];
        for w in chain.windows(2) {
            if w[0].1 >= w[1].1 {
                return Err(Error::InvalidParams(format!(
                    "need {} < {}, got {} >= {}",
                    w[0].0,
                    w[1].0,
                    fmt_q(&w[0].1),
                    fmt_q(&w[1].1)
                )));
            }
        }
        Ok(())
    }

    /// Least common multiple of the four denominators.
    pub fn lattice_unit(&self) -> i64 {
        [self.eps, self.gamma, self.delta, self.delta_prime]
            .iter()
            .fold(1i64, |acc, q| acc.lcm(q.denom()))
    }

    pub fn levels(&self) -> [Q; 4] {
        [self.eps, self.gamma, self.delta, self.delta_prime]
    }

    pub fn to_json(&self) -> ParamsJson {
        ParamsJson {
            eps: fmt_q(&self.eps),
            gamma: fmt_q(&self.gamma),
            delta: fmt_q(&self.delta),
            delta_prime: fmt_q(&self.delta_prime),
        }
    }
}
