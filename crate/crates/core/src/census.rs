//! Region counts of Grasstopes of oriented matroids and sweeps over all
//! reorderings and reorientations of the ground set.
//!
//! For a rank-`r` chirotope the Grasstope selects the topes with
//! `var̄ ≥ r − 1` in the chosen order of the ground set; uniform chirotopes
//! correspond to simple arrangements of `n` hyperplanes in `ℙ^{r−1}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::linalg::binomial;
use crate::matroid::{matroid_grasstope, Chirotope, CovectorSet, Permutation};
use crate::{Error, Result};

/// Region counts of a simple arrangement of `n` affine hyperplanes in
/// `ℝᵏ`: all regions, bounded regions, and regions of its projective
/// closure in `ℙᵏ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zaslavsky {
    pub total: u64,
    pub bounded: u64,
    pub projective: u64,
}

pub fn zaslavsky(n: usize, k: usize) -> Zaslavsky {
    let total: u64 = (0..=k).map(|i| binomial(n, i)).sum();
    let bounded = if n == 0 { 0 } else { binomial(n - 1, k) };
    Zaslavsky {
        total,
        bounded,
        projective: bounded + (total - bounded) / 2,
    }
}

/// `β`: sign patterns of length `n` up to negation with `var < k`; `γ`:
/// the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BetaGamma {
    pub beta: u64,
    pub gamma: u64,
}

pub fn beta_gamma(k: usize, n: usize) -> BetaGamma {
    assert!(n >= 1, "beta_gamma needs a nonempty ground set");
    let all = 1u64 << (n - 1);
    let beta = (0..k.min(n))
        .map(|j| binomial(n - 1, j))
        .sum::<u64>()
        .min(all);
    BetaGamma {
        beta,
        gamma: all - beta,
    }
}

/// Grasstope region count of a chirotope, reading the ground set in
/// `order` (`order[j]` is the element at position `j`).
pub fn count_regions(c: &Chirotope, order: &Permutation) -> Result<usize> {
    let covectors = c.covectors();
    Ok(matroid_grasstope(&covectors, c.rank(), order)?.topes.len())
}

/// Topes of a loop-free oriented matroid packed as bitmasks of their
/// negative entries, canonical form (element 0 positive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopeSet {
    n: usize,
    rank: usize,
    uniform: bool,
    masks: Vec<u64>,
}

impl TopeSet {
    pub fn from_chirotope(c: &Chirotope) -> Result<Self> {
        Self::from_covectors(&c.covectors(), c.rank(), c.is_uniform())
    }

    pub fn from_covectors(covectors: &CovectorSet, rank: usize, uniform: bool) -> Result<Self> {
        let n = covectors.n();
        let topes = covectors.topes();
        if n > 32 {
            return Err(Error::GroundTooLarge(n));
        }
        if topes.iter().any(|t| !t.is_full()) {
            return Err(Error::Unsupported(alloc::string::String::from(
                "region sweeps need a loop-free oriented matroid",
            )));
        }
        Ok(Self {
            n,
            rank,
            uniform,
            masks: topes.iter().map(|t| t.negative_mask()).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// Region count after reorienting `reorient` and reading in `order`.
    pub fn count(&self, reorient: u64, order: &Permutation) -> Result<usize> {
        if order.len() != self.n {
            return Err(Error::InvalidPermutation(alloc::format!(
                "order of length {} for a ground set of {}",
                order.len(),
                self.n
            )));
        }
        let flip = permute_mask(reorient, order.as_slice());
        let permuted: Vec<u64> = self
            .masks
            .iter()
            .map(|&m| permute_mask(m, order.as_slice()))
            .collect();
        Ok(count_selected(&permuted, flip, self.n, self.rank))
    }
}

/// Bit `j` of the result is bit `order[j]` of `mask`.
fn permute_mask(mask: u64, order: &[usize]) -> u64 {
    order
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &e)| acc | (mask >> e & 1) << j)
}

fn count_selected(permuted: &[u64], flip: u64, n: usize, rank: usize) -> usize {
    let low = (1u64 << (n - 1)) - 1;
    let threshold = rank.saturating_sub(1) as u32;
    permuted
        .iter()
        .filter(|&&m| {
            let t = m ^ flip;
            ((t ^ (t >> 1)) & low).count_ones() >= threshold
        })
        .count()
}

/// A point of the sweep: reorient the elements of `reorientation`
/// (bitmask), then relabel element `e` as `relabel.image(e)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub reorientation: u64,
    pub relabel: Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    /// Largest number of configurations a sweep may visit.
    pub budget: u64,
    /// Keep every configuration's count in [`CensusRecord::per_config`].
    pub record_all: bool,
}

/// Enough for every ground set of size seven.
pub const DEFAULT_BUDGET: u64 = 5040 * 64;

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            record_all: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    /// Dimension `k = r − 1` of the ambient projective space.
    pub k: usize,
    pub n: usize,
    pub uniform: bool,
    pub topes: usize,
    pub configurations: u64,
    pub min: usize,
    pub max: usize,
    pub argmin: Configuration,
    pub argmax: Configuration,
    /// Region count → number of configurations attaining it.
    pub histogram: BTreeMap<usize, u64>,
    pub per_config: Option<Vec<(Configuration, usize)>>,
}

impl CensusRecord {
    /// `r(P) − β ≤ min ≤ max ≤ min(γ, r(P))` for uniform inputs.
    pub fn satisfies_bounds(&self) -> bool {
        let rp = zaslavsky(self.n, self.k).projective as usize;
        let bg = beta_gamma(self.k, self.n);
        self.min <= self.max
            && rp.saturating_sub(bg.beta as usize) <= self.min
            && self.max <= rp.min(bg.gamma as usize)
    }
}

/// Number of configurations a full sweep visits: `n! · 2^{n−1}`.
pub fn configuration_count(n: usize) -> u64 {
    let fact = (1..=n as u64).try_fold(1u64, |acc, i| acc.checked_mul(i));
    fact.and_then(|f| f.checked_mul(1u64 << n.saturating_sub(1)))
        .unwrap_or(u64::MAX)
}

pub fn sweep(c: &Chirotope, options: &SweepOptions) -> Result<CensusRecord> {
    sweep_topes(&TopeSet::from_chirotope(c)?, options)
}

pub fn sweep_topes(topes: &TopeSet, options: &SweepOptions) -> Result<CensusRecord> {
    check_budget(topes.n, options)?;
    let parts: Vec<CensusRecord> = (0..topes.n)
        .map(|first| sweep_partition(topes, first, options))
        .collect::<Result<_>>()?;
    Ok(merge(parts).expect("at least one partition"))
}

pub fn check_budget(n: usize, options: &SweepOptions) -> Result<()> {
    let configs = configuration_count(n);
    if configs > options.budget {
        return Err(Error::BudgetExceeded {
            configs,
            budget: options.budget,
        });
    }
    Ok(())
}

/// The part of a sweep whose reading orders start with element `first`.
/// Partitions for `first = 0, 1, ..` merged in that order reproduce
/// [`sweep_topes`] exactly.
pub fn sweep_partition(
    topes: &TopeSet,
    first: usize,
    options: &SweepOptions,
) -> Result<CensusRecord> {
    let n = topes.n;
    if first >= n {
        return Err(Error::IndexOutOfRange {
            index: first + 1,
            bound: n,
        });
    }
    check_budget(n, options)?;
    let images: Vec<usize> = core::iter::once(first)
        .chain((0..n).filter(|&e| e != first))
        .collect();
    let mut order = Permutation::new(images).expect("valid");
    let mut record: Option<CensusRecord> = None;
    let mut per_config = options.record_all.then(Vec::new);
    let half = 1u64 << (n - 1);
    loop {
        let permuted: Vec<u64> = topes
            .masks
            .iter()
            .map(|&m| permute_mask(m, order.as_slice()))
            .collect();
        // Flipping every position changes no sign variation, so the top
        // position is never flipped.
        for flip in 0..half {
            let count = count_selected(&permuted, flip, n, topes.rank);
            let config = || Configuration {
                reorientation: order
                    .as_slice()
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| flip >> j & 1 == 1)
                    .fold(0u64, |acc, (_, &e)| acc | 1 << e),
                relabel: order.inverse(),
            };
            if let Some(all) = per_config.as_mut() {
                all.push((config(), count));
            }
            match record.as_mut() {
                None => {
                    let c = config();
                    record = Some(CensusRecord {
                        k: topes.rank.saturating_sub(1),
                        n,
                        uniform: topes.uniform,
                        topes: topes.len(),
                        configurations: 1,
                        min: count,
                        max: count,
                        argmin: c.clone(),
                        argmax: c,
                        histogram: BTreeMap::from([(count, 1)]),
                        per_config: None,
                    });
                }
                Some(r) => {
                    r.configurations += 1;
                    *r.histogram.entry(count).or_insert(0) += 1;
                    if count < r.min {
                        r.min = count;
                        r.argmin = config();
                    }
                    if count > r.max {
                        r.max = count;
                        r.argmax = config();
                    }
                }
            }
        }
        if !order.next_lex() {
            break;
        }
        if order.image(0) != first {
            break;
        }
    }
    let mut record = record.expect("at least one configuration");
    record.per_config = per_config;
    Ok(record)
}

/// Combine partial sweeps; ties keep the earlier part's representative.
pub fn merge(parts: impl IntoIterator<Item = CensusRecord>) -> Option<CensusRecord> {
    let mut iter = parts.into_iter();
    let mut acc = iter.next()?;
    for p in iter {
        acc.configurations += p.configurations;
        for (count, times) in p.histogram {
            *acc.histogram.entry(count).or_insert(0) += times;
        }
        if p.min < acc.min {
            acc.min = p.min;
            acc.argmin = p.argmin;
        }
        if p.max > acc.max {
            acc.max = p.max;
            acc.argmax = p.argmax;
        }
        match (acc.per_config.as_mut(), p.per_config) {
            (Some(all), Some(more)) => all.extend(more),
            (_, _) => acc.per_config = None,
        }
    }
    Some(acc)
}

/// A Table-1 style census: every uniform class of rank `k + 1` on `n`
/// elements swept separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCensus {
    pub k: usize,
    pub n: usize,
    pub classes: Vec<(Chirotope, CensusRecord)>,
}

impl ClassCensus {
    /// Common `(min, max)` when every class agrees.
    pub fn class_independent_extremes(&self) -> Option<(usize, usize)> {
        let (_, first) = self.classes.first()?;
        self.classes
            .iter()
            .all(|(_, r)| r.min == first.min && r.max == first.max)
            .then_some((first.min, first.max))
    }
}

pub fn census_uniform_classes(k: usize, n: usize, options: &SweepOptions) -> Result<ClassCensus> {
    check_budget(n, options)?;
    let classes = crate::matroid::enumerate_uniform_chirotopes(k + 1, n)?
        .into_iter()
        .map(|c| {
            let r = sweep(&c, options)?;
            Ok((c, r))
        })
        .collect::<Result<_>>()?;
    Ok(ClassCensus { k, n, classes })
}

/// Table-1 rows for which the class enumeration and sweeps run on a desk.
pub const TABLE1_ROWS: &[(usize, usize)] = &[
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (2, 4),
    (2, 5),
    (2, 6),
    (2, 7),
    (3, 5),
    (3, 6),
    (3, 7),
    (4, 6),
    (4, 7),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zaslavsky_values() {
        assert_eq!(
            zaslavsky(6, 2),
            Zaslavsky {
                total: 22,
                bounded: 10,
                projective: 16
            }
        );
        assert_eq!(zaslavsky(5, 3).projective, 15);
        assert_eq!(zaslavsky(7, 4).projective, 57);
    }

    #[test]
    fn beta_gamma_values() {
        assert_eq!(beta_gamma(2, 6), BetaGamma { beta: 6, gamma: 26 });
        assert_eq!(
            beta_gamma(4, 7),
            BetaGamma {
                beta: 42,
                gamma: 22
            }
        );
        assert_eq!(beta_gamma(6, 5), BetaGamma { beta: 16, gamma: 0 });
        assert_eq!(beta_gamma(5, 5), BetaGamma { beta: 16, gamma: 0 });
    }

    #[test]
    fn partitions_merge_to_the_full_sweep() {
        let c = Chirotope::alternating(3, 5).unwrap();
        let topes = TopeSet::from_chirotope(&c).unwrap();
        let opts = SweepOptions {
            record_all: true,
            ..SweepOptions::default()
        };
        let full = sweep_topes(&topes, &opts).unwrap();
        assert_eq!(full.configurations, configuration_count(5));
        assert_eq!(
            full.per_config.as_ref().unwrap().len() as u64,
            full.configurations
        );
        assert_eq!(full.histogram.values().sum::<u64>(), full.configurations);
        let reversed = merge(
            (0..5)
                .rev()
                .map(|f| sweep_partition(&topes, f, &opts).unwrap()),
        )
        .unwrap();
        assert_eq!((reversed.min, reversed.max), (full.min, full.max));
        assert_eq!(reversed.histogram, full.histogram);
    }

    #[test]
    fn budget_is_enforced() {
        let c = Chirotope::alternating(2, 5).unwrap();
        let opts = SweepOptions {
            budget: 10,
            record_all: false,
        };
        assert_eq!(
            sweep(&c, &opts),
            Err(Error::BudgetExceeded {
                configs: 1920,
                budget: 10
            })
        );
    }
}
