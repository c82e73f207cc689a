use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;
use super::subset::{colex_subsets, SubsetIndex};
use crate::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of [`RationalMatrix::rank_and_kernel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub rank: usize,
    /// Rows span `{v : Mv = 0}`; in reduced row-echelon form.
    pub basis: RationalMatrix,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: alloc::vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                r.len(),
                cols
            )));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for integer literals; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn column_vector(values: Vec<Rational>) -> Self {
        Self {
            rows: values.len(),
            cols: 1,
            data: values,
        }
    }

    pub fn row_vector(values: Vec<Rational>) -> Self {
        Self {
            rows: 1,
            cols: values.len(),
            data: values,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.row_iter().map(<[Rational]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.row_iter().map(|r| dot(r, v)).collect())
    }

    /// `vᵀ M`.
    pub fn left_mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = alloc::vec![Rational::zero(); self.cols];
        for (i, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += coeff * a;
            }
        }
        Ok(out)
    }

    /// Submatrix on the given 0-based rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &all)
    }

    pub fn has_zero_row(&self) -> Option<usize> {
        (0..self.rows).find(|&i| self.row(i).iter().all(Zero::is_zero))
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let delta = &factor * &m[(r, j)];
                    m[(i, j)] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact rank and a basis of `{v : Mv = 0}`, returned in reduced
    /// row-echelon form so the basis is canonical.
    pub fn rank_and_kernel(&self) -> Kernel {
        let (r, pivots) = self.rref();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(free.len(), self.cols);
        for (b, &f) in free.iter().enumerate() {
            basis[(b, f)] = Rational::one();
            for (pi, &p) in pivots.iter().enumerate() {
                basis[(b, p)] = -r[(pi, f)].clone();
            }
        }
        let (basis, _) = basis.rref();
        Kernel { rank, basis }
    }

    /// Inverse of a square matrix, or `None` when it is singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination
    /// after clearing denominators row by row.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(bareiss_determinant(self))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -core::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn bareiss_determinant(m: &RationalMatrix) -> Rational {
    let n = m.rows;
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        a.push(row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect());
        scale *= lcm;
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if negate {
        det = -det;
    }
    Rational::new(det, scale)
}

/// Determinant of the square submatrix of `m` on the given row and column
/// subsets.
pub fn minor(m: &RationalMatrix, rows: &SubsetIndex, cols: &SubsetIndex) -> Result<Rational> {
    if rows.len() != cols.len() {
        return Err(Error::UnequalSubsetSizes {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    for (subset, bound) in [(rows, m.rows), (cols, m.cols)] {
        if let Some(&bad) = subset.members().iter().find(|&&x| x > bound) {
            return Err(Error::IndexOutOfRange { index: bad, bound });
        }
    }
    Ok(bareiss_determinant(
        &m.submatrix(&rows.zero_based(), &cols.zero_based()),
    ))
}

/// The `k`-th compound matrix: entry `(I, J)` is the `k × k` minor on rows
/// `I` and columns `J`, both axes in colex order.
pub fn exterior_power(m: &RationalMatrix, k: usize) -> Result<RationalMatrix> {
    if k == 0 || k > m.rows.min(m.cols) {
        return Err(Error::DimensionMismatch(format!(
            "exterior power {k} of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let row_sets: Vec<Vec<usize>> = colex_subsets(m.rows, k).collect();
    let col_sets: Vec<Vec<usize>> = colex_subsets(m.cols, k).collect();
    let mut data = Vec::with_capacity(row_sets.len() * col_sets.len());
    for r in &row_sets {
        for c in &col_sets {
            data.push(bareiss_determinant(&m.submatrix(r, c)));
        }
    }
    Ok(RationalMatrix {
        rows: row_sets.len(),
        cols: col_sets.len(),
        data,
    })
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for (i, r) in self.row_iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, v) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.row_iter() {
            for (j, v) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
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
    fn inverse_of_a_chart() {
        let p = RationalMatrix::from_i64(&[&[-4, 0, 1], &[0, 1, 0], &[0, 0, 1]]);
        let inv = p.inverse().unwrap();
        assert_eq!(p.mul(&inv).unwrap(), RationalMatrix::identity(3));
        assert_eq!(inv[(0, 0)], Rational::new((-1).into(), 4.into()));
        assert!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]])
            .inverse()
            .is_none());
        assert!(RationalMatrix::zeros(2, 3).inverse().is_none());
    }

    #[test]
    fn identity_has_full_rank_and_no_kernel() {
        let k = RationalMatrix::identity(3).rank_and_kernel();
        assert_eq!(k.rank, 3);
        assert_eq!(k.basis.rows(), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let k = m.rank_and_kernel();
        assert_eq!(k.rank, 2);
        assert_eq!(k.basis.rows(), 2);
        for v in k.basis.row_iter() {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinant_by_hand() {
        let m = RationalMatrix::from_i64(&[&[0, 1], &[-3, 4]]);
        assert_eq!(m.determinant().unwrap(), q(3));
        let m = RationalMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(m.determinant().unwrap(), q(-1));
        let half = Rational::new(1.into(), 2.into());
        let m =
            RationalMatrix::from_rows(vec![vec![half.clone(), q(1)], vec![q(1), half]]).unwrap();
        assert_eq!(
            m.determinant().unwrap(),
            Rational::new((-3).into(), 4.into())
        );
        let singular = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(singular.determinant().unwrap(), q(0));
    }

    #[test]
    fn minor_errors() {
        let m = RationalMatrix::identity(3);
        let a = SubsetIndex::new(3, vec![1, 2]).unwrap();
        let b = SubsetIndex::new(3, vec![1]).unwrap();
        assert!(matches!(
            minor(&m, &a, &b),
            Err(Error::UnequalSubsetSizes { .. })
        ));
        let big = SubsetIndex::new(4, vec![1, 4]).unwrap();
        assert!(matches!(
            minor(&m, &big, &a),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert_eq!(minor(&m, &a, &a).unwrap(), q(1));
    }

    #[test]
    fn exterior_power_units() {
        let i3 = RationalMatrix::identity(3);
        assert_eq!(exterior_power(&i3, 2).unwrap(), i3);
        let m = RationalMatrix::from_i64(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(exterior_power(&m, 1).unwrap(), m);
        assert!(exterior_power(&m, 3).is_err());
    }
}
