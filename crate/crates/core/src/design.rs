//! Incidence structures: points plus a list of blocks (sorted point-index sets).

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subspace::{ProjectivePoint, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BlockFamily {
    /// `[W]` for an (e+1)-subspace W of V.
    Geometric,
    /// `[sigma(W ∩ H) ∪ (W \ H)]` for W in A.
    APrime,
    /// `[W]` for an (e+1)-subspace W of H.
    BPrime,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLabel {
    pub family: BlockFamily,
    pub source: Option<Subspace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DesignParameters {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
}

impl DesignParameters {
    /// `bk = vr` and `lambda (v - 1) = r (k - 1)`.
    pub fn satisfies_counting_identities(&self) -> bool {
        self.b * self.k == self.v * self.r && self.lambda * (self.v - 1) == self.r * (self.k - 1)
    }
}

#[derive(Clone, Debug)]
pub struct Design {
    v: usize,
    points: Vec<ProjectivePoint>,
    blocks: Vec<Vec<u32>>,
    labels: Vec<BlockLabel>,
}

impl Design {
    /// Blocks are sorted and checked; repeated blocks are rejected.
    pub fn new(
        v: usize,
        points: Vec<ProjectivePoint>,
        blocks: Vec<Vec<u32>>,
        labels: Vec<BlockLabel>,
    ) -> Result<Design> {
        if !points.is_empty() && points.len() != v {
            return Err(Error::DimensionMismatch(format!("{} point labels for {v} points", points.len())));
        }
        if labels.len() != blocks.len() {
            return Err(Error::DimensionMismatch(format!("{} labels for {} blocks", labels.len(), blocks.len())));
        }
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument("block repeats a point".into()));
            }
            if let Some(&bad) = b.iter().find(|&&p| p as usize >= v) {
                return Err(Error::OutOfRange(format!("point {bad} of {v}")));
            }
            sorted.push(b);
        }
        let d = Design { v, points, blocks: sorted, labels };
        if let Some((i, j)) = d.first_repeated_block() {
            return Err(Error::InvalidArgument(format!("blocks {i} and {j} are equal")));
        }
        Ok(d)
    }

    /// An abstract design on points `0..v`.
    pub fn from_blocks(v: usize, blocks: Vec<Vec<u32>>) -> Result<Design> {
        let labels = vec![BlockLabel { family: BlockFamily::Plain, source: None }; blocks.len()];
        Design::new(v, Vec::new(), blocks, labels)
    }

    pub fn point_count(&self) -> usize {
        self.v
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[u32] {
        &self.blocks[i]
    }

    pub fn labels(&self) -> &[BlockLabel] {
        &self.labels
    }

    fn first_repeated_block(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<&[u32], usize> = HashMap::with_capacity(self.blocks.len());
        for (i, b) in self.blocks.iter().enumerate() {
            if let Some(&j) = seen.get(b.as_slice()) {
                return Some((j, i));
            }
            seen.insert(b, i);
        }
        None
    }

    /// Blocks as bitsets over the points.
    pub fn block_bits(&self) -> Vec<Vec<u64>> {
        let words = self.v.div_ceil(64);
        self.blocks
            .iter()
            .map(|b| {
                let mut row = vec![0u64; words];
                for &p in b {
                    row[p as usize / 64] |= 1 << (p % 64);
                }
                row
            })
            .collect()
    }

    /// Drops block `i`; used to build non-designs in tests and experiments.
    pub fn without_block(&self, i: usize) -> Design {
        let mut d = self.clone();
        d.blocks.remove(i);
        d.labels.remove(i);
        d
    }

    /// Relabels points by `perm` and reorders blocks by `order`.
    pub fn permuted(&self, perm: &[u32], order: &[usize]) -> Result<Design> {
        if perm.len() != self.v || order.len() != self.blocks.len() {
            return Err(Error::DimensionMismatch("permutation sizes".into()));
        }
        let blocks = order
            .iter()
            .map(|&i| self.blocks[i].iter().map(|&p| perm[p as usize]).collect())
            .collect();
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        Design::new(self.v, Vec::new(), blocks, labels)
    }
}

/// Lookup from a sorted point set to its block index.
pub struct BlockIndex<'a> {
    map: HashMap<&'a [u32], usize>,
}

impl<'a> BlockIndex<'a> {
    pub fn new(d: &'a Design) -> BlockIndex<'a> {
        BlockIndex { map: d.blocks.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect() }
    }

    pub fn get(&self, sorted_points: &[u32]) -> Option<usize> {
        self.map.get(sorted_points).copied()
    }
}

#[inline]
pub(crate) fn popcount_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_blocks() {
        assert!(Design::from_blocks(3, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(Design::from_blocks(3, vec![vec![0, 3]]).is_err());
        assert!(Design::from_blocks(3, vec![vec![0, 0]]).is_err());
        let d = Design::from_blocks(3, vec![vec![2, 0], vec![1, 2]]).unwrap();
        assert_eq!(d.block(0), &[0, 2]);
        let idx = BlockIndex::new(&d);
        assert_eq!(idx.get(&[1, 2]), Some(1));
        assert_eq!(idx.get(&[0, 1]), None);
    }

    #[test]
    fn parameter_identities() {
        let fano = DesignParameters { v: 7, b: 7, r: 3, k: 3, lambda: 1 };
        assert!(fano.satisfies_counting_identities());
        let bad = DesignParameters { v: 7, b: 6, r: 3, k: 3, lambda: 1 };
        assert!(!bad.satisfies_counting_identities());
    }
}
