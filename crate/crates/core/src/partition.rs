//! Young diagrams in English notation: row 0 is the longest row, arms point
//! right and legs point down.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

/// A cell with its arm and leg lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellStat {
    pub row: usize,
    pub col: usize,
    pub arm: u32,
    pub leg: u32,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..width)
                .map(|c| self.0.iter().filter(|&&p| p > c).count() as u32)
                .collect(),
        )
    }

    /// `n(lambda) = sum_i (i-1) lambda_i`.
    pub fn n_stat(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
    }

    pub fn arm(&self, row: usize, col: usize) -> u32 {
        self.0[row] - 1 - col as u32
    }

    pub fn leg(&self, row: usize, col: usize) -> u32 {
        self.0[row + 1..]
            .iter()
            .filter(|&&p| p as usize > col)
            .count() as u32
    }

    pub fn cells_with_stats(&self) -> Vec<CellStat> {
        self.cells()
            .map(|(row, col)| CellStat {
                row,
                col,
                arm: self.arm(row, col),
                leg: self.leg(row, col),
            })
            .collect()
    }

    /// Multiplies every part by `n`.
    pub fn scaled(&self, n: u32) -> Partition {
        Partition(self.0.iter().map(|p| p * n).collect())
    }

    /// Union of parts, as used for products of power sums.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::from_unsorted(v)
    }

    /// `z_lambda = prod_i i^{m_i} m_i!`.
    pub fn z_factor(&self) -> u64 {
        let mut z = 1u64;
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let mut m = 0u64;
            while i < self.0.len() && self.0[i] == p {
                m += 1;
                i += 1;
                z *= p as u64 * m;
            }
        }
        z
    }

    /// Multiplicities `(part, count)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Dominance order: `self >= other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }
}

/// All partitions of `n`, in reverse lexicographic order (`(n)` first).
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,1`, `(3,1)`, `3 1`; the empty string and `()` give the
    /// empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part '{p}' in '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}
