use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::perm::{sort_parity, Permutation};
use crate::linalg::{binomial, colex_rank, colex_subsets, rational_sign, RationalMatrix};
use crate::sign::{Sign, SignVector, MAX_GROUND};
use crate::{Error, Result};

/// Basis signs of a rank-`r` oriented matroid on `n` elements, indexed by
/// the colex rank of each `r`-subset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chirotope {
    n: usize,
    rank: usize,
    values: Vec<Sign>,
}

impl Chirotope {
    /// Checks only the shape: one value per `r`-subset, not all zero.
    /// Axioms are checked separately by [`Chirotope::check_axioms`].
    pub fn new(n: usize, rank: usize, values: Vec<Sign>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        if rank == 0 || rank > n {
            return Err(Error::InvalidChirotope(alloc::format!(
                "rank {rank} on {n} elements"
            )));
        }
        let expected = binomial(n, rank);
        if values.len() as u64 != expected {
            return Err(Error::InvalidChirotope(alloc::format!(
                "{} values given, C({n},{rank}) = {expected} expected",
                values.len()
            )));
        }
        if values.iter().all(|s| s.is_zero()) {
            return Err(Error::InvalidChirotope(String::from(
                "chirotope is identically zero",
            )));
        }
        Ok(Self { n, rank, values })
    }

    /// `values[I] = sign det(A_I)` over row subsets `I` of an `n × r`
    /// matrix of rank `r`.
    pub fn from_matrix(a: &RationalMatrix) -> Result<Self> {
        let (n, r) = (a.rows(), a.cols());
        let rank = a.rank();
        if r == 0 || rank < r {
            return Err(Error::RankDeficient { rank, expected: r });
        }
        let cols: Vec<usize> = (0..r).collect();
        let values = colex_subsets(n, r)
            .map(|rows| {
                rational_sign(
                    &a.submatrix(&rows, &cols)
                        .determinant()
                        .expect("square submatrix"),
                )
            })
            .collect();
        Self::new(n, r, values)
    }

    /// The uniform chirotope with every basis positive: alternating
    /// matroid of any totally positive configuration.
    pub fn alternating(rank: usize, n: usize) -> Result<Self> {
        if rank == 0 || rank > n {
            return Err(Error::InvalidChirotope(alloc::format!(
                "rank {rank} on {n} elements"
            )));
        }
        Self::new(n, rank, alloc::vec![Sign::Pos; binomial(n, rank) as usize])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[Sign] {
        &self.values
    }

    /// Value on a sorted 0-based basis.
    pub fn basis_value(&self, sorted: &[usize]) -> Sign {
        self.values[colex_rank(sorted)]
    }

    /// Value on an arbitrary ordered tuple of 0-based elements, extended
    /// alternatingly; repeated elements give zero.
    pub fn tuple_value(&self, tuple: &[usize]) -> Sign {
        debug_assert_eq!(tuple.len(), self.rank);
        let mut sorted: Vec<usize> = tuple.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Sign::Zero;
        }
        let v = self.basis_value(&sorted);
        if sort_parity(tuple) {
            v.negate()
        } else {
            v
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.values.iter().all(|s| !s.is_zero())
    }

    /// Three-term Grassmann–Plücker condition: for every `(r−2)`-set `S`
    /// and `a < b < c < d` outside it, the signs of
    /// `χ(S,a,b)χ(S,c,d)`, `−χ(S,a,c)χ(S,b,d)`, `χ(S,a,d)χ(S,b,c)` either
    /// all vanish or include both `+` and `−`.
    pub fn satisfies_three_term_relations(&self) -> bool {
        let r = self.rank;
        if r < 2 {
            return true;
        }
        for s in colex_subsets(self.n, r - 2) {
            let rest: Vec<usize> = (0..self.n).filter(|e| !s.contains(e)).collect();
            for quad in colex_subsets(rest.len(), 4) {
                let [a, b, c, d] = [rest[quad[0]], rest[quad[1]], rest[quad[2]], rest[quad[3]]];
                let chi = |x: usize, y: usize| {
                    let mut t = s.clone();
                    t.push(x);
                    t.push(y);
                    self.tuple_value(&t)
                };
                let terms = [
                    chi(a, b).times(chi(c, d)),
                    chi(a, c).times(chi(b, d)).negate(),
                    chi(a, d).times(chi(b, c)),
                ];
                let has_pos = terms.contains(&Sign::Pos);
                let has_neg = terms.contains(&Sign::Neg);
                if has_pos != has_neg {
                    return false;
                }
            }
        }
        true
    }

    /// Basis exchange for the underlying matroid: for bases `B1, B2` and
    /// `e ∈ B1 ∖ B2` some `f ∈ B2 ∖ B1` makes `B1 − e + f` a basis.
    pub fn satisfies_basis_exchange(&self) -> bool {
        let bases: Vec<Vec<usize>> = colex_subsets(self.n, self.rank)
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(b, _)| b)
            .collect();
        let is_basis = |set: &[usize]| {
            let mut s = set.to_vec();
            s.sort_unstable();
            !self.basis_value(&s).is_zero()
        };
        for b1 in &bases {
            for b2 in &bases {
                for &e in b1.iter().filter(|e| !b2.contains(e)) {
                    let ok = b2.iter().filter(|f| !b1.contains(f)).any(|&f| {
                        let swapped: Vec<usize> =
                            b1.iter().map(|&x| if x == e { f } else { x }).collect();
                        is_basis(&swapped)
                    });
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Full axiom check used on user-supplied chirotopes. Three-term
    /// relations plus basis exchange characterize chirotopes.
    pub fn check_axioms(&self) -> Result<()> {
        if !self.satisfies_basis_exchange() {
            return Err(Error::InvalidChirotope(String::from(
                "bases violate the exchange axiom",
            )));
        }
        if !self.satisfies_three_term_relations() {
            return Err(Error::InvalidChirotope(String::from(
                "three-term Grassmann-Plücker relation fails",
            )));
        }
        Ok(())
    }

    /// Cocircuits in canonical form, sorted. Each `(r−1)`-set `S` spanning
    /// a hyperplane yields `e ↦ χ(S, e)`.
    pub fn cocircuits(&self) -> Vec<SignVector> {
        let mut out = BTreeSet::new();
        let mut tuple = alloc::vec![0; self.rank];
        for s in colex_subsets(self.n, self.rank - 1) {
            tuple[..self.rank - 1].copy_from_slice(&s);
            let mut y = SignVector::zero(self.n).expect("ground checked");
            for e in 0..self.n {
                tuple[self.rank - 1] = e;
                y.set(e, self.tuple_value(&tuple));
            }
            if !y.is_zero() {
                out.insert(y.canonical());
            }
        }
        out.into_iter().collect()
    }

    /// Circuits in canonical form, sorted. Each `(r+1)`-set
    /// `e_0 < .. < e_r` yields `e_i ↦ (−1)^i χ(e_0, .., ê_i, .., e_r)`, which
    /// is zero or the unique circuit it contains.
    pub fn circuits(&self) -> Vec<SignVector> {
        let mut out = BTreeSet::new();
        for s in colex_subsets(self.n, self.rank + 1) {
            let mut x = SignVector::zero(self.n).expect("ground checked");
            let mut rest = alloc::vec![0; self.rank];
            for i in 0..=self.rank {
                for (slot, &e) in rest.iter_mut().zip(
                    s.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, e)| e),
                ) {
                    *slot = e;
                }
                let v = self.basis_value(&rest);
                x.set(s[i], if i % 2 == 1 { v.negate() } else { v });
            }
            if !x.is_zero() {
                out.insert(x.canonical());
            }
        }
        out.into_iter().collect()
    }

    pub fn covectors(&self) -> super::CovectorSet {
        super::CovectorSet::from_cocircuits(self.n, &self.cocircuits())
            .expect("cocircuits share the ground set")
    }

    /// Reorient the elements in `reorient` (bitmask), then relabel element
    /// `e` as `relabel.image(e)`.
    pub fn transform(&self, reorient: u64, relabel: &Permutation) -> Result<Self> {
        if relabel.len() != self.n {
            return Err(Error::InvalidPermutation(alloc::format!(
                "permutation of {} elements applied to a ground set of {}",
                relabel.len(),
                self.n
            )));
        }
        if self.n < 64 && reorient >> self.n != 0 {
            return Err(Error::IndexOutOfRange {
                index: 64 - reorient.leading_zeros() as usize,
                bound: self.n,
            });
        }
        let mut values = alloc::vec![Sign::Zero; self.values.len()];
        for (basis, &v) in colex_subsets(self.n, self.rank).zip(&self.values) {
            let flips = basis.iter().filter(|&&e| reorient >> e & 1 == 1).count();
            let image: Vec<usize> = basis.iter().map(|&e| relabel.image(e)).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            let odd = (flips % 2 == 1) ^ sort_parity(&image);
            values[colex_rank(&sorted)] = if odd { v.negate() } else { v };
        }
        Ok(Self {
            n: self.n,
            rank: self.rank,
            values,
        })
    }

    pub fn negate(&self) -> Self {
        Self {
            n: self.n,
            rank: self.rank,
            values: self.values.iter().map(|s| s.negate()).collect(),
        }
    }

    /// Values as a `+ − 0` string in colex basis order.
    pub fn value_string(&self) -> String {
        self.values.iter().map(|s| s.to_char()).collect()
    }
}

impl fmt::Debug for Chirotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Chirotope({}, {}, {})",
            self.n,
            self.rank,
            self.value_string()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::circuits_from_matrix;

    fn sec5() -> RationalMatrix {
        RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[2, -3, 4]])
    }

    #[test]
    fn chirotope_of_example_matrix() {
        let c = Chirotope::from_matrix(&sec5()).unwrap();
        assert_eq!(c.value_string(), "++++");
        assert_eq!(
            Chirotope::from_matrix(&RationalMatrix::identity(3))
                .unwrap()
                .value_string(),
            "+"
        );
        let mut a = sec5();
        a.negate_row(1);
        assert_eq!(Chirotope::from_matrix(&a).unwrap().value_string(), "--+-");
    }

    #[test]
    fn rank_deficient_matrix_is_rejected() {
        let a = RationalMatrix::from_i64(&[&[1, 2], &[2, 4], &[3, 6]]);
        assert!(matches!(
            Chirotope::from_matrix(&a),
            Err(Error::RankDeficient {
                rank: 1,
                expected: 2
            })
        ));
    }

    #[test]
    fn example_cocircuits() {
        let c = Chirotope::from_matrix(&sec5()).unwrap();
        let got: BTreeSet<SignVector> = c.cocircuits().into_iter().collect();
        let want: BTreeSet<SignVector> = [
            (&[2][..], &[4][..]),
            (&[3, 4], &[]),
            (&[2, 3], &[]),
            (&[1, 4], &[]),
            (&[3], &[1]),
            (&[1, 2], &[]),
        ]
        .iter()
        .map(|(p, m)| SignVector::from_signed_set(4, p, m).unwrap().canonical())
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn circuits_agree_with_the_matrix() {
        let a = sec5();
        let c = Chirotope::from_matrix(&a).unwrap();
        assert_eq!(c.circuits(), circuits_from_matrix(&a).unwrap());
        assert_eq!(c.circuits().len(), 1);
        // Parallel elements give a two-element circuit.
        let b = RationalMatrix::from_i64(&[&[1, 0], &[0, 1], &[2, 0], &[1, 1]]);
        let cb = Chirotope::from_matrix(&b).unwrap();
        assert_eq!(cb.circuits(), circuits_from_matrix(&b).unwrap());
        assert!(cb.circuits().iter().any(|x| x.support_size() == 2));
    }

    #[test]
    fn rank_one_has_a_single_cocircuit() {
        let c = Chirotope::alternating(1, 5).unwrap();
        let cc = c.cocircuits();
        assert_eq!(cc.len(), 1);
        assert!(cc[0].is_full() && cc[0].negative_mask() == 0);
    }

    #[test]
    fn shape_errors() {
        assert!(Chirotope::new(4, 2, alloc::vec![Sign::Pos; 5]).is_err());
        assert!(Chirotope::new(4, 2, alloc::vec![Sign::Zero; 6]).is_err());
        assert!(Chirotope::new(4, 0, alloc::vec![]).is_err());
    }

    #[test]
    fn alternating_chirotopes_satisfy_axioms() {
        for (r, n) in [(2, 5), (3, 6), (4, 7)] {
            Chirotope::alternating(r, n)
                .unwrap()
                .check_axioms()
                .unwrap();
        }
    }

    #[test]
    fn three_term_violation_is_detected() {
        // Rank 2 on 4 points: χ(12)χ(34) − χ(13)χ(24) + χ(14)χ(23) with one
        // sign flipped away from the alternating pattern.
        let mut c = Chirotope::alternating(2, 4).unwrap();
        c.values[colex_rank(&[0, 2])] = Sign::Neg;
        assert!(!c.satisfies_three_term_relations());
        assert!(c.check_axioms().is_err());
    }

    #[test]
    fn transform_round_trips() {
        let c = Chirotope::from_matrix(&sec5()).unwrap();
        let id = Permutation::identity(4);
        assert_eq!(c.transform(0, &id).unwrap(), c);
        let once = c.transform(0b0110, &id).unwrap();
        assert_eq!(once.transform(0b0110, &id).unwrap(), c);
        let p = Permutation::new(alloc::vec![2, 0, 3, 1]).unwrap();
        let there = c.transform(0b1001, &p).unwrap();
        let back = there
            .transform(0, &p.inverse())
            .unwrap()
            .transform(0b1001, &id)
            .unwrap();
        assert_eq!(back, c);
        assert!(c.transform(0, &Permutation::identity(3)).is_err());
        assert!(c.transform(1 << 4, &id).is_err());
    }
}
