use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use hashbrown::HashSet;
use num_traits::{One, Signed, Zero};

use super::perm::Permutation;
use crate::linalg::{colex_subsets, Rational, RationalMatrix};
use crate::sign::SignVector;
use crate::{Error, Result};

/// All covectors of an oriented matroid, one canonical representative per
/// `±` pair, sorted, with the zero vector first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CovectorSet {
    n: usize,
    covectors: Vec<SignVector>,
}

impl CovectorSet {
    /// Composition closure of the cocircuits (either sign accepted).
    pub fn from_cocircuits(n: usize, cocircuits: &[SignVector]) -> Result<Self> {
        let zero = SignVector::zero(n)?;
        let mut generators: Vec<SignVector> = Vec::with_capacity(2 * cocircuits.len());
        for c in cocircuits {
            if c.len() != n {
                return Err(Error::DimensionMismatch(alloc::format!(
                    "cocircuit of length {} on a ground set of {n}",
                    c.len()
                )));
            }
            if c.is_zero() {
                continue;
            }
            generators.push(c.canonical());
            generators.push(c.canonical().negate());
        }
        generators.sort();
        generators.dedup();

        // Negation commutes with composition, so canonical representatives
        // composed with generators of both signs reach every class.
        let mut seen: HashSet<SignVector> = HashSet::new();
        seen.insert(zero);
        let mut frontier: Vec<SignVector> = Vec::new();
        for g in &generators {
            if seen.insert(g.canonical()) {
                frontier.push(g.canonical());
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                if x.is_full() {
                    continue;
                }
                for g in &generators {
                    let z = x.compose_unchecked(g).canonical();
                    if seen.insert(z) {
                        next.push(z);
                    }
                }
            }
            frontier = next;
        }
        let mut covectors: Vec<SignVector> = seen.into_iter().collect();
        covectors.sort();
        Ok(Self { n, covectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn covectors(&self) -> &[SignVector] {
        &self.covectors
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn contains(&self, v: &SignVector) -> bool {
        self.covectors.binary_search(&v.canonical()).is_ok()
    }

    /// Covectors of maximal support; full support unless there are loops.
    pub fn topes(&self) -> Vec<SignVector> {
        let support = self
            .covectors
            .iter()
            .fold(0u64, |acc, v| acc | v.support_mask());
        self.covectors
            .iter()
            .filter(|v| v.support_mask() == support)
            .copied()
            .collect()
    }

    /// Minimal nonzero covectors.
    pub fn cocircuits(&self) -> Vec<SignVector> {
        let nonzero: Vec<&SignVector> = self.covectors.iter().filter(|v| !v.is_zero()).collect();
        nonzero
            .iter()
            .filter(|v| {
                !nonzero.iter().any(|w| {
                    w.support_mask() != v.support_mask()
                        && w.support_mask() & !v.support_mask() == 0
                })
            })
            .map(|v| **v)
            .collect()
    }
}

/// Covectors selected by `var̄ ≥ r − 1` read in a given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidGrasstope {
    pub topes: Vec<SignVector>,
    pub lower_faces: Vec<SignVector>,
}

impl MatroidGrasstope {
    pub fn len(&self) -> usize {
        self.topes.len() + self.lower_faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `order[j]` is the element read at position `j`.
pub fn matroid_grasstope(
    covectors: &CovectorSet,
    rank: usize,
    order: &Permutation,
) -> Result<MatroidGrasstope> {
    if order.len() != covectors.n() {
        return Err(Error::InvalidPermutation(alloc::format!(
            "order of length {} for a ground set of {}",
            order.len(),
            covectors.n()
        )));
    }
    let threshold = rank.saturating_sub(1);
    let topes: BTreeSet<SignVector> = covectors.topes().into_iter().collect();
    let mut out = MatroidGrasstope {
        topes: Vec::new(),
        lower_faces: Vec::new(),
    };
    for v in covectors.covectors() {
        if v.is_zero() || v.read_in_order(order.as_slice()).varbar() < threshold {
            continue;
        }
        if topes.contains(v) {
            out.topes.push(*v);
        } else {
            out.lower_faces.push(*v);
        }
    }
    Ok(out)
}

/// A point `x` with `sign(A x) = ±target`, or `None` when `target` is not a
/// covector of the rows of `a` (an `n × d` matrix of rank `d`).
///
/// Sums the extreme rays of the cell: one vector per hyperplane-flat of
/// dimension one whose sign pattern conforms to `target`, each scaled so
/// its first nonzero value is `±1`.
pub fn realize_covector(a: &RationalMatrix, target: &SignVector) -> Result<Option<Vec<Rational>>> {
    let (n, d) = (a.rows(), a.cols());
    if target.len() != n {
        return Err(Error::DimensionMismatch(alloc::format!(
            "covector of length {} for {n} rows",
            target.len()
        )));
    }
    let rank = a.rank();
    if rank < d {
        return Err(Error::RankDeficient { rank, expected: d });
    }
    if target.is_zero() {
        return Ok(Some(alloc::vec![Rational::zero(); d]));
    }
    let mut rays: BTreeMap<SignVector, Vec<Rational>> = BTreeMap::new();
    for rows in colex_subsets(n, d - 1) {
        let kernel = a.select_rows(&rows).rank_and_kernel();
        if kernel.basis.rows() != 1 {
            continue;
        }
        let c: Vec<Rational> = kernel.basis.row(0).to_vec();
        let w = a.mul_vec(&c)?;
        let y = SignVector::from_rationals(&w)?;
        if y.is_zero() || rays.contains_key(&y.canonical()) {
            continue;
        }
        let first = w.iter().find(|v| !v.is_zero()).expect("nonzero").abs();
        let scale = Rational::one() / first;
        let mut ray: Vec<Rational> = c.iter().map(|v| v * &scale).collect();
        if !y.conforms_to(target) {
            if !y.negate().conforms_to(target) {
                continue;
            }
            ray.iter_mut().for_each(|v| *v = -v.clone());
        }
        rays.insert(y.canonical(), ray);
    }
    let mut x = alloc::vec![Rational::zero(); d];
    for ray in rays.values() {
        for (xi, ri) in x.iter_mut().zip(ray) {
            *xi += ri;
        }
    }
    let got = SignVector::from_rationals(&a.mul_vec(&x)?)?;
    Ok((got == *target).then_some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Chirotope;

    fn sec5() -> RationalMatrix {
        RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[2, -3, 4]])
    }

    #[test]
    fn example_covectors_are_low_variation_vectors() {
        let cov = Chirotope::from_matrix(&sec5()).unwrap().covectors();
        let mut expected = BTreeSet::new();
        for pos in 0u64..16 {
            for neg in 0u64..16 {
                if pos & neg == 0 {
                    let v = SignVector::from_masks(4, pos, neg).unwrap();
                    if v.is_zero() || v.varbar() < 3 {
                        expected.insert(v.canonical());
                    }
                }
            }
        }
        let got: BTreeSet<SignVector> = cov.covectors().iter().copied().collect();
        assert_eq!(got, expected);
        assert_eq!(cov.topes().len(), 7);
        assert_eq!(cov.cocircuits().len(), 6);
    }

    #[test]
    fn coordinate_hyperplanes() {
        let cov = Chirotope::from_matrix(&RationalMatrix::identity(3))
            .unwrap()
            .covectors();
        assert_eq!(cov.topes().len(), 4);
        // 3 vertices, 6 edges, 4 triangles, and zero.
        assert_eq!(cov.len(), 14);
    }

    #[test]
    fn example_grasstope_selects_three_topes() {
        let cov = Chirotope::from_matrix(&sec5()).unwrap().covectors();
        let id = Permutation::identity(4);
        let g = matroid_grasstope(&cov, 3, &id).unwrap();
        assert_eq!(g.topes.len(), 3);
        let rev = Permutation::new(alloc::vec![3, 2, 1, 0]).unwrap();
        assert_eq!(matroid_grasstope(&cov, 3, &rev).unwrap(), g);
        assert!(matroid_grasstope(&cov, 3, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn every_covector_is_realized() {
        let a = sec5();
        let cov = Chirotope::from_matrix(&a).unwrap().covectors();
        for v in cov.covectors() {
            let x = realize_covector(&a, v).unwrap().expect("realizable");
            assert_eq!(
                SignVector::from_rationals(&a.mul_vec(&x).unwrap()).unwrap(),
                *v
            );
        }
        let bogus = SignVector::from_signed_set(4, &[1, 3], &[2, 4]).unwrap();
        assert_eq!(realize_covector(&a, &bogus).unwrap(), None);
    }
}
