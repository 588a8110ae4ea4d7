//! Graded homology dimensions with their audit trail.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Homology dimensions `H_0 ..= H_pmax` of a chain complex.
///
/// `ranks[p]` is the rank of the boundary `C_p -> C_{p-1}` for
/// `p in 0..=pmax+1` (so `ranks[0] = 0`), and
/// `betti[p] = chain_dims[p] - ranks[p] - ranks[p+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub kind: String,
    pub max_degree: usize,
    pub chain_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub betti: Vec<usize>,
}

impl BettiReport {
    pub fn from_ranks(kind: impl Into<String>, chain_dims: Vec<usize>, ranks: Vec<usize>) -> Result<Self> {
        let kind = kind.into();
        let pmax = chain_dims.len().checked_sub(1).ok_or_else(|| {
            Error::Internal("empty chain dimension list".into())
        })?;
        if ranks.len() != pmax + 2 || ranks[0] != 0 {
            return Err(Error::Internal(format!(
                "{kind}: expected {} boundary ranks starting at 0",
                pmax + 2
            )));
        }
        let betti = (0..=pmax)
            .map(|p| {
                chain_dims[p]
                    .checked_sub(ranks[p] + ranks[p + 1])
                    .ok_or_else(|| Error::Internal(format!("{kind}: negative homology in degree {p}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            kind,
            max_degree: pmax,
            chain_dims,
            ranks,
            betti,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,chain_dim,boundary_rank,betti\n");
        for p in 0..=self.max_degree {
            out.push_str(&format!(
                "{p},{},{},{}\n",
                self.chain_dims[p], self.ranks[p], self.betti[p]
            ));
        }
        out
    }
}

/// Resource limits for chain-level computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_chain_dim: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_chain_dim: 1_000_000,
        }
    }
}

impl Limits {
    pub fn check(&self, what: impl Into<String>, needed: u128) -> Result<()> {
        if needed > self.max_chain_dim {
            return Err(Error::Resource {
                what: what.into(),
                needed,
                ceiling: self.max_chain_dim,
            });
        }
        Ok(())
    }
}
