use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A permutation of `{0, .., n-1}`; `image(i)` is where `i` goes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(alloc::format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Self(images))
    }

    /// From 1-based images, as written in files and on the command line.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(alloc::string::String::from(
                "1-based permutation contains 0",
            )));
        }
        Self::new(images.iter().map(|&i| i - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Self(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Advance to the next permutation in lexicographic order of image
    /// sequences; false once the last one has been passed.
    pub fn next_lex(&mut self) -> bool {
        let v = &mut self.0;
        let n = v.len();
        if n < 2 {
            return false;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
            return false;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| v[j] > v[i])
            .expect("successor exists");
        v.swap(i, j);
        v[i + 1..].reverse();
        true
    }
}

/// Parity of the permutation sorting `items` (distinct values): true when odd.
pub(crate) fn sort_parity(items: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] > items[j] {
                odd = !odd;
            }
        }
    }
    odd
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.0)
    }
}

impl fmt::Display for Permutation {
    /// 1-based images separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}
