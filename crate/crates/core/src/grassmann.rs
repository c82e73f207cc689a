//! Plücker vectors, total positivity and twistor coordinates.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::{colex_subsets, rational_sign, Rational, RationalMatrix, SubsetIndex};
use crate::sign::{Sign, SignVector};
use crate::{Error, Result};

/// Maximal minors of a full-rank `k × n` matrix, colex order of column sets.
pub fn pluecker_vector(a: &RationalMatrix) -> Result<Vec<Rational>> {
    let (k, n) = (a.rows(), a.cols());
    if k > n {
        return Err(Error::DimensionMismatch(alloc::format!(
            "Plücker vector of a {k}x{n} matrix needs k <= n"
        )));
    }
    let rank = a.rank();
    if rank < k {
        return Err(Error::RankDeficient { rank, expected: k });
    }
    let rows: Vec<usize> = (0..k).collect();
    Ok(colex_subsets(n, k)
        .map(|cols| {
            a.submatrix(&rows, &cols)
                .determinant()
                .expect("square submatrix")
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    TotallyPositive,
    TotallyNonnegativeNotPositive,
    Neither,
}

/// Verdict of [`positivity_class`]. The witness pairs the first nonzero
/// Plücker coordinate with the first coordinate that vanishes or has the
/// opposite sign; absent for totally positive input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityClass {
    pub verdict: Positivity,
    pub witness: Option<(SubsetIndex, SubsetIndex)>,
}

pub fn positivity_class(a: &RationalMatrix) -> Result<PositivityClass> {
    let p = pluecker_vector(a)?;
    let (k, n) = (a.rows(), a.cols());
    let subsets: Vec<Vec<usize>> = colex_subsets(n, k).collect();
    let reference = p.iter().position(|v| !v.is_zero()).expect("full rank");
    let ref_sign = rational_sign(&p[reference]);
    let normalized = |i: usize| rational_sign(&p[i]).times(ref_sign);
    let subset = |i: usize| SubsetIndex::from_zero_based(n, &subsets[i]);
    if let Some(conflict) = (0..p.len()).find(|&i| normalized(i) == Sign::Neg) {
        return Ok(PositivityClass {
            verdict: Positivity::Neither,
            witness: Some((subset(reference), subset(conflict))),
        });
    }
    if let Some(zero) = (0..p.len()).find(|&i| normalized(i) == Sign::Zero) {
        return Ok(PositivityClass {
            verdict: Positivity::TotallyNonnegativeNotPositive,
            witness: Some((subset(reference), subset(zero))),
        });
    }
    Ok(PositivityClass {
        verdict: Positivity::TotallyPositive,
        witness: None,
    })
}

/// `rows × cols` Vandermonde matrix with row `i` equal to
/// `(1, d_i, d_i², ..)`. With increasing positive nodes its transpose is
/// totally positive.
pub fn vandermonde(nodes: &[Rational], cols: usize) -> RationalMatrix {
    RationalMatrix::from_fn(nodes.len(), cols, |i, j| {
        let mut acc = Rational::one();
        for _ in 0..j {
            acc *= &nodes[i];
        }
        acc
    })
}

/// The linear forms `l_i` on `ℙ^k` given by pairing a point with the rows of
/// `Z`.
///
/// Points `x ∈ ℙ^k` are Plücker vectors of hyperplanes of `ℝ^{k+1}`, indexed
/// by the colex `k`-subsets of `{1, .., k+1}`; position `t` is the subset
/// missing element `k+1-t`. Then `l_i(x) = det[w_1 .. w_k Z_i]`, which
/// expands to `Σ_j (−1)^{j+k+1} Z_{ij} x_{k+1-j}`. For `k = 2` this reads
/// `l_i(x, y, z) = Z_{i3} x − Z_{i2} y + Z_{i1} z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistorArrangement {
    k: usize,
    forms: RationalMatrix,
}

/// Twistor vector `L(x)` together with its sign pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistorValue {
    pub values: Vec<Rational>,
    /// Canonical representative (first nonzero entry `+`).
    pub signs: SignVector,
}

impl TwistorArrangement {
    pub fn new(z: &RationalMatrix) -> Result<Self> {
        let (n, d) = (z.rows(), z.cols());
        if d == 0 || d > n {
            return Err(Error::DimensionMismatch(alloc::format!(
                "Z must be n x (k+1) with k+1 <= n, got {n}x{d}"
            )));
        }
        let rank = z.rank();
        if rank < d {
            return Err(Error::RankDeficient { rank, expected: d });
        }
        let k = d - 1;
        let forms = RationalMatrix::from_fn(n, d, |i, t| {
            // 1-based source column j = k + 1 - t.
            let j = k + 1 - t;
            let v = z[(i, j - 1)].clone();
            if (j + k + 1) % 2 == 0 {
                v
            } else {
                -v
            }
        });
        Ok(Self { k, forms })
    }

    /// Number of hyperplanes.
    pub fn n(&self) -> usize {
        self.forms.rows()
    }

    /// Dimension of the ambient projective space.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Row `i` holds the coefficients of `l_i`.
    pub fn forms(&self) -> &RationalMatrix {
        &self.forms
    }

    pub fn eval(&self, x: &[Rational]) -> Result<TwistorValue> {
        if x.len() != self.k + 1 {
            return Err(Error::DimensionMismatch(alloc::format!(
                "point has {} coordinates, expected {}",
                x.len(),
                self.k + 1
            )));
        }
        if x.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        let values = self.forms.mul_vec(x)?;
        let signs = SignVector::from_rationals(&values)?.canonical();
        Ok(TwistorValue { values, signs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn pluecker_of_coordinate_plane() {
        let a = RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(pluecker_vector(&a).unwrap(), vec![q(1), q(0), q(0)]);
        let p = positivity_class(&a).unwrap();
        assert_eq!(p.verdict, Positivity::TotallyNonnegativeNotPositive);
        let (r, z) = p.witness.unwrap();
        assert_eq!((r.members(), z.members()), (&[1, 2][..], &[1, 3][..]));
    }

    #[test]
    fn pluecker_rejects_rank_deficiency() {
        let a = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(
            pluecker_vector(&a),
            Err(Error::RankDeficient {
                rank: 1,
                expected: 2
            })
        );
    }

    #[test]
    fn vandermonde_is_totally_positive() {
        let nodes: Vec<Rational> = (1..=6).map(q).collect();
        let a = vandermonde(&nodes, 2).transpose();
        assert!(pluecker_vector(&a).unwrap().iter().all(|v| v > &q(0)));
        let a3 = vandermonde(&nodes, 3).transpose();
        assert_eq!(
            positivity_class(&a3).unwrap().verdict,
            Positivity::TotallyPositive
        );
        assert!(positivity_class(&a3).unwrap().witness.is_none());
    }

    #[test]
    fn twistor_forms_on_unit_rows() {
        // Rows e1, e2, e3 give the coordinate functions z, -y, x.
        let t = TwistorArrangement::new(&RationalMatrix::identity(3)).unwrap();
        assert_eq!(
            t.forms(),
            &RationalMatrix::from_i64(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]])
        );
        let x = vec![q(2), q(3), q(5)];
        let l = t.eval(&x).unwrap();
        let dbl: Vec<Rational> = x.iter().map(|v| v * q(-7)).collect();
        assert_eq!(l.signs, t.eval(&dbl).unwrap().signs);
        assert_eq!(t.eval(&[q(0), q(0), q(0)]), Err(Error::ZeroVector));
    }

    #[test]
    fn twistor_needs_full_column_rank() {
        let z = RationalMatrix::from_i64(&[&[1, 1], &[2, 2], &[3, 3]]);
        assert!(matches!(
            TwistorArrangement::new(&z),
            Err(Error::RankDeficient { .. })
        ));
    }
}
