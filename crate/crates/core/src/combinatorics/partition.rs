//! Non-crossing pair partitions of `{1, ..., 2n}` with outer/inner block
//! classification.
//!
//! The enumeration here is deliberately independent of the Dyck-path
//! stream in [`super::dyck`]: it walks partner choices directly, so the
//! agreement of the two counts and of the derived polynomials is a real
//! cross-check rather than a shared bijection.

use super::{CombinatoricsError, ENUMERATION_CAP};

/// A non-crossing partition of `{1, ..., 2n}` into two-element blocks.
/// Blocks are stored as `(a, b)` with `a < b`, sorted by `a`; `outer[i]`
/// records whether block `i` is nested inside no other block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairPartition {
    blocks: Vec<(usize, usize)>,
    outer: Vec<bool>,
}

impl PairPartition {
    /// Validates disjointness, coverage and the non-crossing property, then
    /// classifies each block by the definition: `(a, b)` is outer iff there
    /// is no block `(c, d)` with `c < a` and `b < d`.
    pub fn new(mut blocks: Vec<(usize, usize)>) -> Result<Self, CombinatoricsError> {
        for b in blocks.iter_mut() {
            if b.0 > b.1 {
                *b = (b.1, b.0);
            }
            if b.0 == b.1 {
                return Err(CombinatoricsError::InvalidPairPartition);
            }
        }
        blocks.sort_unstable();
        let n = blocks.len();
        let mut covered = vec![false; 2 * n + 1];
        for &(a, b) in &blocks {
            if a == 0 || b > 2 * n || covered[a] || covered[b] {
                return Err(CombinatoricsError::InvalidPairPartition);
            }
            covered[a] = true;
            covered[b] = true;
        }
        for (i, &(_, b)) in blocks.iter().enumerate() {
            for &(c, d) in &blocks[i + 1..] {
                // sorted, so a < c; crossing means a < c < b < d
                if c < b && b < d {
                    return Err(CombinatoricsError::CrossingBlocks);
                }
            }
        }
        let outer = classify_outer(&blocks);
        Ok(PairPartition { blocks, outer })
    }

    pub fn order(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn is_outer(&self, block_index: usize) -> bool {
        self.outer[block_index]
    }

    pub fn outer_count(&self) -> usize {
        self.outer.iter().filter(|&&o| o).count()
    }

    pub fn inner_count(&self) -> usize {
        self.blocks.len() - self.outer_count()
    }
}

fn classify_outer(blocks: &[(usize, usize)]) -> Vec<bool> {
    blocks
        .iter()
        .map(|&(a, b)| !blocks.iter().any(|&(c, d)| c < a && b < d))
        .collect()
}

/// Stream of all non-crossing pair partitions of `{1, ..., 2n}`.
pub fn enumerate_nc_pair_partitions(
    n: usize,
) -> Result<NcPairPartitionIter, CombinatoricsError> {
    if n > ENUMERATION_CAP {
        return Err(CombinatoricsError::CapExceeded {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(NcPairPartitionIter {
        n,
        stack: Vec::new(),
        started: false,
        done: false,
    })
}

/// Depth-first enumeration state. Pairs are created in increasing order of
/// their smaller element; the partner of the current smallest free point
/// ranges over odd offsets inside the tightest enclosing block.
pub struct NcPairPartitionIter {
    n: usize,
    stack: Vec<(usize, usize)>,
    started: bool,
    done: bool,
}

impl NcPairPartitionIter {
    /// Smallest point not used by `stack`, or `None` when complete.
    fn first_free(&self) -> Option<usize> {
        let mut used = vec![false; 2 * self.n + 1];
        for &(a, b) in &self.stack {
            used[a] = true;
            used[b] = true;
        }
        (1..=2 * self.n).find(|&p| !used[p])
    }

    /// Exclusive upper bound for the partner of `s`: the smallest second
    /// endpoint among blocks enclosing `s`, else past the end.
    fn partner_bound(&self, s: usize) -> usize {
        self.stack
            .iter()
            .filter(|&&(a, b)| a < s && s < b)
            .map(|&(_, b)| b)
            .min()
            .unwrap_or(2 * self.n + 1)
    }

    /// Extend the stack by always pairing the smallest free point with its
    /// nearest admissible partner until the partition is complete.
    fn complete_minimal(&mut self) {
        while let Some(s) = self.first_free() {
            self.stack.push((s, s + 1));
        }
    }

    /// Backtrack: advance the top block's partner by two (gap parity must
    /// stay even), popping blocks whose partner options are exhausted.
    fn advance(&mut self) -> bool {
        while let Some((s, m)) = self.stack.pop() {
            let bound = self.partner_bound(s);
            let next = m + 2;
            if next < bound {
                self.stack.push((s, next));
                self.complete_minimal();
                return true;
            }
        }
        false
    }
}

impl Iterator for NcPairPartitionIter {
    type Item = PairPartition;

    fn next(&mut self) -> Option<PairPartition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.complete_minimal();
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        if self.n == 0 {
            self.done = true;
        }
        let blocks = self.stack.clone();
        let outer = classify_outer(&blocks);
        Some(PairPartition { blocks, outer })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::catalan;
    use num_bigint::BigInt;

    #[test]
    fn order_one_single_outer_block() {
        let all: Vec<_> = enumerate_nc_pair_partitions(1).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].blocks(), &[(1, 2)]);
        assert_eq!(all[0].outer_count(), 1);
        assert_eq!(all[0].inner_count(), 0);
    }

    #[test]
    fn order_two_flags() {
        let all: Vec<_> = enumerate_nc_pair_partitions(2).unwrap().collect();
        assert_eq!(all.len(), 2);
        let nested = all
            .iter()
            .find(|p| p.blocks() == [(1, 4), (2, 3)])
            .expect("nested partition present");
        assert_eq!((nested.outer_count(), nested.inner_count()), (1, 1));
        let adjacent = all
            .iter()
            .find(|p| p.blocks() == [(1, 2), (3, 4)])
            .expect("adjacent partition present");
        assert_eq!((adjacent.outer_count(), adjacent.inner_count()), (2, 0));
    }

    #[test]
    fn counts_match_catalan() {
        for n in 0..=10 {
            let count = enumerate_nc_pair_partitions(n).unwrap().count();
            assert_eq!(BigInt::from(count), catalan(n), "order {n}");
        }
    }

    #[test]
    fn emitted_partitions_are_valid_and_distinct() {
        use std::collections::HashSet;
        for n in 0..=6 {
            let mut seen = HashSet::new();
            for p in enumerate_nc_pair_partitions(n).unwrap() {
                let rebuilt = PairPartition::new(p.blocks().to_vec()).expect("valid partition");
                assert_eq!(rebuilt, p);
                assert!(seen.insert(p.blocks().to_vec()), "duplicate at order {n}");
            }
        }
    }

    #[test]
    fn crossing_and_malformed_inputs_rejected() {
        assert!(matches!(
            PairPartition::new(vec![(1, 3), (2, 4)]),
            Err(CombinatoricsError::CrossingBlocks)
        ));
        assert!(PairPartition::new(vec![(1, 2), (2, 3)]).is_err());
        assert!(PairPartition::new(vec![(1, 5), (2, 3)]).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate_nc_pair_partitions(ENUMERATION_CAP + 1).is_err());
    }
}
