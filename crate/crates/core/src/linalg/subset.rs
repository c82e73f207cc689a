use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Position of a strictly increasing 0-based subset in the colexicographic
/// order of all subsets of the same size.
pub fn colex_rank(members: &[usize]) -> usize {
    members
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c, i + 1) as usize)
        .sum()
}

/// Iterator over the `k`-subsets of `{0, .., n-1}` in colex order: sorted by
/// largest element, ties broken recursively on the rest.
#[derive(Debug, Clone)]
pub struct ColexSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

pub fn colex_subsets(n: usize, k: usize) -> ColexSubsets {
    let current = if k <= n { Some((0..k).collect()) } else { None };
    ColexSubsets { n, current }
}

impl Iterator for ColexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // Smallest position that can be bumped without colliding with its
        // successor; everything below it resets to 0, 1, ...
        let mut i = 0;
        while i < k {
            let limit = if i + 1 < k { next[i + 1] } else { self.n };
            if next[i] + 1 < limit {
                next[i] += 1;
                for (j, slot) in next.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                self.current = Some(next);
                return Some(out);
            }
            i += 1;
        }
        Some(out)
    }
}

/// A `k`-subset of `{1, .., n}`, stored 1-based and strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetIndex {
    n: usize,
    members: Vec<usize>,
}

impl SubsetIndex {
    /// Build from 1-based members, which must be strictly increasing and lie
    /// in `1..=n`.
    pub fn new(n: usize, members: Vec<usize>) -> Result<Self> {
        for (i, &m) in members.iter().enumerate() {
            if m == 0 || m > n {
                return Err(Error::IndexOutOfRange { index: m, bound: n });
            }
            if i > 0 && members[i - 1] >= m {
                return Err(Error::MalformedSubset(
                    "members must be strictly increasing".to_string(),
                ));
            }
        }
        Ok(Self { n, members })
    }

    pub(crate) fn from_zero_based(n: usize, members: &[usize]) -> Self {
        Self {
            n,
            members: members.iter().map(|&m| m + 1).collect(),
        }
    }

    pub fn ground(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// 1-based members.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.members.iter().map(|&m| m - 1).collect()
    }

    pub fn colex_position(&self) -> usize {
        colex_rank(&self.zero_based())
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn colex_order_of_pairs() {
        let pairs: Vec<Vec<usize>> = colex_subsets(4, 2).collect();
        assert_eq!(
            pairs,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        for (i, p) in pairs.iter().enumerate() {
            assert_eq!(colex_rank(p), i);
        }
    }

    #[test]
    fn colex_counts_and_ranks() {
        for n in 0..8 {
            for k in 0..=n + 1 {
                let all: Vec<_> = colex_subsets(n, k).collect();
                assert_eq!(all.len() as u64, binomial(n, k));
                for (i, s) in all.iter().enumerate() {
                    assert_eq!(colex_rank(s), i);
                }
            }
        }
    }

    #[test]
    fn subset_validation() {
        assert!(SubsetIndex::new(3, vec![1, 2]).is_ok());
        assert!(matches!(
            SubsetIndex::new(3, vec![1, 4]),
            Err(Error::IndexOutOfRange { index: 4, bound: 3 })
        ));
        assert!(SubsetIndex::new(3, vec![2, 2]).is_err());
        assert_eq!(
            SubsetIndex::new(5, vec![1, 2, 4]).unwrap().colex_position(),
            1
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 4), 126);
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
