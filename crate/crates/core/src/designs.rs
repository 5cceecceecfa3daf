//! Block designs: t-design verification, design reduction, and the
//! replication counting identity.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codes::next_combination;
use crate::error::{Error, Result};

/// A multiset of blocks over the points `0..points`.
///
/// `labels[p]` is the original coordinate of point `p`, so collections
/// produced by [`reduce_design`] still name positions of the code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCollection {
    pub points: usize,
    pub blocks: Vec<Vec<usize>>,
    pub labels: Vec<usize>,
}

impl BlockCollection {
    /// Blocks are sorted internally; every point must be `< points` and no
    /// block may be empty.
    pub fn new(points: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidParameters("empty block".into()));
            }
            b.sort_unstable();
            b.dedup();
            if let Some(&p) = b.iter().find(|&&p| p >= points) {
                return Err(Error::IndexOutOfRange {
                    index: p + 1,
                    bound: points,
                });
            }
            sorted.push(b);
        }
        Ok(BlockCollection {
            points,
            blocks: sorted,
            labels: (0..points).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks rewritten in original coordinates.
    pub fn labelled_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&p| self.labels[p]).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignReport {
    pub t: usize,
    pub v: usize,
    pub blocks: usize,
    /// Common block size, `None` when sizes differ.
    pub block_size: Option<usize>,
    /// Common coverage count of every t-subset, when there is one.
    pub lambda: Option<u64>,
    pub is_design: bool,
    /// Common number of blocks through each point, when there is one.
    pub replication: Option<u64>,
    /// Number of blocks equal to an earlier block.
    pub repeated_blocks: usize,
    /// Two distinct block sizes, when the collection is not uniform.
    pub offending_sizes: Option<(usize, usize)>,
}

impl DesignReport {
    pub fn is_steiner(&self) -> bool {
        self.is_design && self.t == 2 && self.lambda == Some(1)
    }
}

impl fmt::Display for DesignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.is_design, self.block_size, self.lambda) {
            (true, Some(k), Some(lambda)) => {
                write!(f, "{}-({},{},{}) design: YES", self.t, self.v, k, lambda)?;
                if self.is_steiner() {
                    write!(f, " (Steiner)")?;
                }
                Ok(())
            }
            _ => {
                write!(f, "{}-design on {} points: NO", self.t, self.v)?;
                if let Some((a, b)) = self.offending_sizes {
                    write!(f, " (block sizes {a} and {b})")?;
                } else if self.blocks == 0 {
                    write!(f, " (no blocks)")?;
                } else {
                    write!(f, " (uneven {}-subset coverage)", self.t)?;
                }
                Ok(())
            }
        }
    }
}

/// Exact t-design test by counting the blocks over every t-subset.
///
/// Refuses when `C(v, t)` exceeds `cap`. An empty collection, or one that
/// covers the t-subsets zero times each, is reported as not a design.
pub fn check_t_design(bc: &BlockCollection, t: usize, cap: u64) -> Result<DesignReport> {
    if t == 0 {
        return Err(Error::InvalidParameters("design level t must be >= 1".into()));
    }
    let v = bc.points;
    let subsets = binomial(v, t);
    if subsets > cap as u128 {
        return Err(Error::CapExceeded {
            what: "t-subsets for design check",
            needed: subsets,
            cap,
        });
    }
    let mut sizes = bc.blocks.iter().map(Vec::len);
    let first = sizes.next();
    let offending_sizes = first.and_then(|a| sizes.find(|&b| b != a).map(|b| (a, b)));
    let block_size = if offending_sizes.is_none() { first } else { None };

    let table = BinomialTable::new(v, t);
    let mut coverage = vec![0u64; subsets as usize];
    let mut replication = vec![0u64; v];
    for block in &bc.blocks {
        for &p in block {
            replication[p] += 1;
        }
        if block.len() < t {
            continue;
        }
        let mut combo: Vec<usize> = (0..t).collect();
        loop {
            let rank: usize = combo
                .iter()
                .enumerate()
                .map(|(i, &c)| table.get(block[c], i + 1))
                .sum();
            coverage[rank] += 1;
            if !next_combination(&mut combo, block.len()) {
                break;
            }
        }
    }
    let lambda = common(&coverage).filter(|&l| l > 0);
    let mut seen: HashMap<&Vec<usize>, ()> = HashMap::new();
    let repeated_blocks = bc.blocks.iter().filter(|b| seen.insert(b, ()).is_some()).count();
    Ok(DesignReport {
        t,
        v,
        blocks: bc.blocks.len(),
        block_size,
        lambda,
        is_design: block_size.is_some() && lambda.is_some(),
        replication: common(&replication),
        repeated_blocks,
        offending_sizes,
    })
}

fn common(counts: &[u64]) -> Option<u64> {
    let first = *counts.first()?;
    counts.iter().all(|&c| c == first).then_some(first)
}

/// `C(n, k)` for `n ≤ max_n`, `k ≤ max_k`, used for colex ranks.
struct BinomialTable {
    rows: Vec<Vec<usize>>,
}

impl BinomialTable {
    fn new(max_n: usize, max_k: usize) -> Self {
        let mut rows = vec![vec![0usize; max_k + 1]; max_n + 1];
        for n in 0..=max_n {
            rows[n][0] = 1;
            for k in 1..=max_k.min(n) {
                rows[n][k] = rows[n - 1][k - 1] + if k < n { rows[n - 1][k] } else { 0 };
            }
        }
        BinomialTable { rows }
    }

    fn get(&self, n: usize, k: usize) -> usize {
        self.rows[n][k]
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Blocks containing `z`, with `z` removed, on the points outside `z`.
///
/// Points are renumbered in increasing order; `labels` keeps the original
/// coordinates.
pub fn reduce_design(bc: &BlockCollection, z: &[usize]) -> Result<BlockCollection> {
    let mut z = z.to_vec();
    z.sort_unstable();
    z.dedup();
    if let Some(&p) = z.iter().find(|&&p| p >= bc.points) {
        return Err(Error::IndexOutOfRange {
            index: p + 1,
            bound: bc.points,
        });
    }
    if let Some(min) = bc.blocks.iter().map(Vec::len).min() {
        if z.len() >= min {
            return Err(Error::Precondition(format!(
                "reduction set of size {} is not smaller than the blocks (size {min})",
                z.len()
            )));
        }
    }
    let mut index = vec![None; bc.points];
    let mut labels = Vec::new();
    for p in (0..bc.points).filter(|p| z.binary_search(p).is_err()) {
        index[p] = Some(labels.len());
        labels.push(bc.labels[p]);
    }
    let blocks = bc
        .blocks
        .iter()
        .filter(|b| z.iter().all(|p| b.binary_search(p).is_ok()))
        .map(|b| b.iter().filter_map(|&p| index[p]).collect())
        .collect();
    Ok(BlockCollection {
        points: labels.len(),
        blocks,
        labels,
    })
}

/// Both sides of `(n − 1) · d_c = γ · (d⊥ − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingIdentity {
    pub lhs: u64,
    pub rhs: u64,
}

impl CountingIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn counting_identity(
    n_minus_1: u64,
    replication: u64,
    gamma: u64,
    d_dual: u64,
) -> Result<CountingIdentity> {
    if n_minus_1 == 0 || replication == 0 || gamma == 0 || d_dual == 0 {
        return Err(Error::Precondition(
            "counting identity needs positive inputs".into(),
        ));
    }
    Ok(CountingIdentity {
        lhs: n_minus_1 * replication,
        rhs: gamma * (d_dual - 1),
    })
}
