//! Classification, membership and cell structure of `m = 1` Grasstopes.
//!
//! `Z` is `n × (k+1)`. A point `x ∈ ℙᵏ` lies in the (closed) Grasstope
//! when the twistor vector `L(x)` has `var̄ ≥ k`; for maps whose base locus
//! meets `Gr≥0(k, n)` only the sandwich between the open set `var ≥ k` and
//! the closed set `var̄ ≥ k` is reported.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::grassmann::TwistorArrangement;
use crate::linalg::{exterior_power, primitive_integer_vector, Rational, RationalMatrix};
use crate::matroid::{realize_covector, Chirotope, CovectorSet};
use crate::sign::SignVector;
use crate::simplex::{maximize, LpOutcome};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Tame,
    Wild,
    Rational,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Tame => "tame",
            Verdict::Wild => "wild",
            Verdict::Rational => "rational",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameCertificate {
    /// Primitive integer vector with `Λ_k(Z) q > 0`.
    pub q: Vec<Rational>,
    /// `(k+1) × k` matrix whose Plücker vector is a positive multiple of `q`.
    pub m: RationalMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Tame(TameCertificate),
    /// Nonnegative integer weights on the rows of `Λ_k(Z)` summing to zero,
    /// with inclusion-minimal support.
    Infeasible(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellDefinedness {
    pub well_defined: bool,
    /// Primitive integer `w ∈ ker Zᵀ` with `var(w) ≤ k − 1`.
    pub witness: Option<Vec<Rational>>,
    /// Rows span `ker Zᵀ` (reduced row echelon form).
    pub kernel_basis: RationalMatrix,
    /// Nonzero kernel sign vectors up to negation.
    pub kernel_covectors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub n: usize,
    pub k: usize,
    pub tame_certificate: Option<TameCertificate>,
    pub farkas_witness: Option<Vec<Rational>>,
    pub kernel_witness: Option<Vec<Rational>>,
    pub kernel_basis: RationalMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub point: Vec<Rational>,
    pub twistor: Vec<Rational>,
    pub var: usize,
    pub varbar: usize,
    /// `var̄(L(x)) ≥ k`.
    pub in_closed_set: bool,
    /// `var(L(x)) ≥ k`.
    pub in_open_set: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    /// Canonical tope of the twistor arrangement.
    pub signs: SignVector,
    /// A rational point inside the region.
    pub sample: Vec<Rational>,
    pub in_grasstope: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrasstopeRegions {
    pub k: usize,
    pub arrangement: TwistorArrangement,
    pub chirotope: Chirotope,
    pub regions: Vec<Region>,
}

impl GrasstopeRegions {
    pub fn selected(&self) -> impl Iterator<Item = &Region> {
        self.regions.iter().filter(|r| r.in_grasstope)
    }

    pub fn selected_count(&self) -> usize {
        self.selected().count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerReport {
    /// Number of selected cells of each dimension `0..=k`.
    pub cells_by_dimension: Vec<usize>,
    pub euler: i64,
}

fn shape(z: &RationalMatrix) -> Result<usize> {
    let (n, d) = (z.rows(), z.cols());
    if d < 2 || d > n {
        return Err(Error::DimensionMismatch(alloc::format!(
            "Z must be n x (k+1) with 1 <= k < n, got {n}x{d}"
        )));
    }
    let rank = z.rank();
    if rank < d {
        return Err(Error::RankDeficient { rank, expected: d });
    }
    Ok(d - 1)
}

fn reject_zero_rows(z: &RationalMatrix) -> Result<()> {
    match z.has_zero_row() {
        Some(i) => Err(Error::ZeroRow(i + 1)),
        None => Ok(()),
    }
}

/// Whether every maximal minor of `ZM` has the same strict sign, for an
/// `n × (k+m)` matrix `Z` and a `(k+m) × k` matrix `M`.
pub fn verify_tame_certificate(z: &RationalMatrix, m: &RationalMatrix) -> Result<bool> {
    if z.cols() != m.rows() || m.cols() == 0 || m.cols() > z.rows() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "Z is {}x{}, M is {}x{}",
            z.rows(),
            z.cols(),
            m.rows(),
            m.cols()
        )));
    }
    let zm = z.mul(m)?;
    let minors = exterior_power(&zm, m.cols())?;
    let values = minors.column(0);
    Ok(values.iter().all(Signed::is_positive) || values.iter().all(Signed::is_negative))
}

/// A `(k+1) × k` matrix whose column span has Plücker vector `λ q`, `λ > 0`.
pub fn certificate_matrix(q: &[Rational]) -> Result<RationalMatrix> {
    let d = q.len();
    if d < 2 {
        return Err(Error::DimensionMismatch(alloc::format!(
            "certificate vector of length {d}"
        )));
    }
    if q.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let k = d - 1;
    // The span of M is the hyperplane {v : det[M v] = 0}; expanding along
    // v, coefficient j (1-based) is ±p_{[k+1]∖j}, and [k+1]∖j has colex
    // position k + 1 − j.
    let normal: Vec<Rational> = (1..=d)
        .map(|j| {
            let v = q[k + 1 - j].clone();
            if (j + k + 1).is_multiple_of(2) {
                v
            } else {
                -v
            }
        })
        .collect();
    let basis = RationalMatrix::row_vector(normal).rank_and_kernel().basis;
    let mut m = basis.transpose();
    let p = exterior_power(&m, k)?.column(0);
    let dot: Rational = p.iter().zip(q).map(|(a, b)| a * b).sum();
    if dot.is_negative() {
        for i in 0..m.rows() {
            m[(i, 0)] = -m[(i, 0)].clone();
        }
    }
    Ok(m)
}

/// Decide strict feasibility of `Λ_k(Z) q > 0` exactly.
pub fn tame_feasibility(z: &RationalMatrix) -> Result<Feasibility> {
    let k = shape(z)?;
    let lambda = exterior_power(z, k)?;
    let (rows, d) = (lambda.rows(), lambda.cols());

    // Variables q⁺ (d), q⁻ (d), δ; maximize δ subject to
    // −Λq + δ ≤ 0, q± ≤ 1, δ ≤ 1.
    let vars = 2 * d + 1;
    let cons = rows + vars;
    let a = RationalMatrix::from_fn(cons, vars, |i, j| {
        if i < rows {
            if j < d {
                -lambda[(i, j)].clone()
            } else if j < 2 * d {
                lambda[(i, j - d)].clone()
            } else {
                Rational::one()
            }
        } else if j == i - rows {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let mut b = alloc::vec![Rational::zero(); rows];
    b.extend(core::iter::repeat_n(Rational::one(), vars));
    let mut c = alloc::vec![Rational::zero(); vars];
    c[vars - 1] = Rational::one();

    let LpOutcome::Optimal(sol) = maximize(&a, &b, &c)? else {
        unreachable!("every variable is bounded");
    };
    if sol.objective.is_positive() {
        let raw: Vec<Rational> = (0..d).map(|j| &sol.x[j] - &sol.x[d + j]).collect();
        let q = primitive_integer_vector(&raw);
        if !lambda.mul_vec(&q)?.iter().all(Signed::is_positive) {
            return Err(Error::CertificateRejected(alloc::string::String::from(
                "LP solution does not satisfy the strict inequalities",
            )));
        }
        let m = certificate_matrix(&q)?;
        if !verify_tame_certificate(z, &m)? {
            return Err(Error::CertificateRejected(alloc::string::String::from(
                "certificate matrix fails the minor test",
            )));
        }
        return Ok(Feasibility::Tame(TameCertificate { q, m }));
    }

    let weights = minimal_support(&lambda, sol.dual[..rows].to_vec());
    if weights.iter().all(Zero::is_zero)
        || weights.iter().any(Signed::is_negative)
        || !lambda.left_mul_vec(&weights)?.iter().all(Zero::is_zero)
    {
        return Err(Error::CertificateRejected(alloc::string::String::from(
            "dual solution is not a Farkas witness",
        )));
    }
    Ok(Feasibility::Infeasible(weights))
}

/// Reduce a nonnegative `λ` with `λᵀΛ = 0` to one of inclusion-minimal
/// support (Carathéodory step), then to a primitive integer vector.
fn minimal_support(lambda: &RationalMatrix, mut w: Vec<Rational>) -> Vec<Rational> {
    loop {
        let support: Vec<usize> = (0..w.len()).filter(|&i| !w[i].is_zero()).collect();
        if support.is_empty() {
            return w;
        }
        let kernel = lambda.select_rows(&support).transpose().rank_and_kernel();
        if kernel.basis.rows() <= 1 {
            return primitive_integer_vector(&w);
        }
        let on_support: Vec<Rational> = support.iter().map(|&i| w[i].clone()).collect();
        let mut mu = (0..kernel.basis.rows())
            .map(|r| kernel.basis.row(r).to_vec())
            .find(|b| !parallel(b, &on_support))
            .expect("kernel of dimension two has a non-parallel vector");
        if !mu.iter().any(Signed::is_positive) {
            mu.iter_mut().for_each(|v| *v = -v.clone());
        }
        let t = mu
            .iter()
            .zip(&on_support)
            .filter(|(m, _)| m.is_positive())
            .map(|(m, l)| l / m)
            .min()
            .expect("a positive entry");
        for (idx, &i) in support.iter().enumerate() {
            w[i] = &on_support[idx] - &t * &mu[idx];
        }
    }
}

fn parallel(a: &[Rational], b: &[Rational]) -> bool {
    let Some(i) = b.iter().position(|v| !v.is_zero()) else {
        return true;
    };
    let ratio = &a[i] / &b[i];
    a.iter().zip(b).all(|(x, y)| *x == &ratio * y)
}

/// Decide whether `ker Zᵀ` avoids `Gr≥0(k, n)`: true iff every nonzero
/// kernel vector has `var ≥ k`, decided over all kernel sign vectors.
pub fn is_well_defined(z: &RationalMatrix) -> Result<WellDefinedness> {
    let k = shape(z)?;
    let n = z.rows();
    let kernel_basis = z.transpose().rank_and_kernel().basis;
    if kernel_basis.rows() == 0 {
        return Ok(WellDefinedness {
            well_defined: true,
            witness: None,
            kernel_basis,
            kernel_covectors: 0,
        });
    }
    // Kernel vectors are Bᵀy, so their sign vectors are the covectors of
    // the configuration formed by the rows of Bᵀ.
    let config = kernel_basis.transpose();
    let covectors = Chirotope::from_matrix(&config)?.covectors();
    let nonzero: Vec<&SignVector> = covectors
        .covectors()
        .iter()
        .filter(|v| !v.is_zero())
        .collect();
    let worst = nonzero
        .iter()
        .copied()
        .min_by_key(|v| (v.var(), core::cmp::Reverse(v.support_size()), **v))
        .copied();
    let kernel_covectors = nonzero.len();
    let Some(worst) = worst.filter(|v| v.var() < k) else {
        return Ok(WellDefinedness {
            well_defined: true,
            witness: None,
            kernel_basis,
            kernel_covectors,
        });
    };
    let y = realize_covector(&config, &worst)?.ok_or_else(|| {
        Error::CertificateRejected(alloc::string::String::from(
            "kernel covector has no realization",
        ))
    })?;
    let w = primitive_integer_vector(&config.mul_vec(&y)?);
    let check = SignVector::from_rationals(&w)?;
    if check.is_zero()
        || check.var() >= k
        || !z.left_mul_vec(&w)?.iter().all(Zero::is_zero)
        || w.len() != n
    {
        return Err(Error::CertificateRejected(alloc::string::String::from(
            "kernel witness failed re-verification",
        )));
    }
    Ok(WellDefinedness {
        well_defined: false,
        witness: Some(w),
        kernel_basis,
        kernel_covectors,
    })
}

pub fn classify(z: &RationalMatrix) -> Result<ClassificationReport> {
    let k = shape(z)?;
    reject_zero_rows(z)?;
    let wd = is_well_defined(z)?;
    let mut report = ClassificationReport {
        verdict: Verdict::Rational,
        n: z.rows(),
        k,
        tame_certificate: None,
        farkas_witness: None,
        kernel_witness: None,
        kernel_basis: wd.kernel_basis,
    };
    if !wd.well_defined {
        report.kernel_witness = wd.witness;
        return Ok(report);
    }
    match tame_feasibility(z)? {
        Feasibility::Tame(cert) => {
            report.verdict = Verdict::Tame;
            report.tame_certificate = Some(cert);
        }
        Feasibility::Infeasible(w) => {
            report.verdict = Verdict::Wild;
            report.farkas_witness = Some(w);
        }
    }
    Ok(report)
}

pub fn membership(z: &RationalMatrix, x: &[Rational]) -> Result<MembershipVerdict> {
    shape(z)?;
    reject_zero_rows(z)?;
    let arrangement = TwistorArrangement::new(z)?;
    membership_in(&arrangement, x)
}

fn membership_in(arrangement: &TwistorArrangement, x: &[Rational]) -> Result<MembershipVerdict> {
    let k = arrangement.k();
    let value = arrangement.eval(x)?;
    let (var, varbar) = (value.signs.var(), value.signs.varbar());
    Ok(MembershipVerdict {
        point: x.to_vec(),
        twistor: value.values,
        var,
        varbar,
        in_closed_set: varbar >= k,
        in_open_set: var >= k,
    })
}

fn arrangement_covectors(
    z: &RationalMatrix,
) -> Result<(TwistorArrangement, Chirotope, CovectorSet)> {
    shape(z)?;
    reject_zero_rows(z)?;
    let arrangement = TwistorArrangement::new(z)?;
    let chirotope = Chirotope::from_matrix(arrangement.forms())?;
    let covectors = chirotope.covectors();
    Ok((arrangement, chirotope, covectors))
}

/// Every region of the twistor arrangement in `ℙᵏ`, with a sample point and
/// whether it lies in the Grasstope.
pub fn grasstope_topes(z: &RationalMatrix) -> Result<GrasstopeRegions> {
    let (arrangement, chirotope, covectors) = arrangement_covectors(z)?;
    let k = arrangement.k();
    let mut regions = Vec::new();
    for tope in covectors.topes() {
        let sample = realize_covector(arrangement.forms(), &tope)?.ok_or_else(|| {
            Error::CertificateRejected(alloc::format!("tope {tope} has no sample point"))
        })?;
        let in_grasstope = tope.varbar() >= k;
        let verdict = membership_in(&arrangement, &sample)?;
        if verdict.in_closed_set != in_grasstope {
            return Err(Error::CertificateRejected(alloc::format!(
                "membership disagrees with the tope statistic on {tope}"
            )));
        }
        regions.push(Region {
            signs: tope,
            sample,
            in_grasstope,
        });
    }
    Ok(GrasstopeRegions {
        k,
        arrangement,
        chirotope,
        regions,
    })
}

/// Euler characteristic of `{x ∈ ℙᵏ : var̄(L(x)) ≥ k}` from its cell
/// decomposition by the twistor arrangement.
pub fn euler_characteristic(z: &RationalMatrix) -> Result<EulerReport> {
    let (arrangement, _, covectors) = arrangement_covectors(z)?;
    let k = arrangement.k();
    let forms = arrangement.forms();
    let mut cells = alloc::vec![0usize; k + 1];
    for v in covectors.covectors() {
        if v.is_zero() || v.varbar() < k {
            continue;
        }
        let rank = forms.select_rows(&v.zeros()).rank();
        cells[k - rank] += 1;
    }
    let euler = cells
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum();
    Ok(EulerReport {
        cells_by_dimension: cells,
        euler,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn square_invertible_is_tame() {
        let z = RationalMatrix::from_i64(&[&[2, 1, 0], &[0, 1, 1], &[1, 0, 3]]);
        let Feasibility::Tame(cert) = tame_feasibility(&z).unwrap() else {
            panic!("square invertible Z must be tame");
        };
        assert!(verify_tame_certificate(&z, &cert.m).unwrap());
        assert_eq!(classify(&z).unwrap().verdict, Verdict::Tame);
    }

    #[test]
    fn certificate_matrix_has_requested_pluecker_vector() {
        for raw in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [3, -2, 5], [-1, -1, 2]] {
            let v: Vec<Rational> = raw.iter().map(|&x| q(x)).collect();
            let m = certificate_matrix(&v).unwrap();
            let p = exterior_power(&m, 2).unwrap().column(0);
            let ratio = p
                .iter()
                .zip(&v)
                .find(|(_, b)| !b.is_zero())
                .map(|(a, b)| a / b)
                .unwrap();
            assert!(ratio.is_positive());
            assert!(p.iter().zip(&v).all(|(a, b)| *a == &ratio * b));
        }
    }

    #[test]
    fn zero_rows_are_rejected() {
        let z = RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(classify(&z), Err(Error::ZeroRow(2)));
        assert_eq!(membership(&z, &[q(1), q(0), q(0)]), Err(Error::ZeroRow(2)));
    }

    #[test]
    fn shape_and_rank_errors() {
        let tall = RationalMatrix::from_i64(&[&[1, 2], &[2, 4], &[3, 6]]);
        assert!(matches!(classify(&tall), Err(Error::RankDeficient { .. })));
        let wide = RationalMatrix::from_i64(&[&[1, 2, 3]]);
        assert!(matches!(classify(&wide), Err(Error::DimensionMismatch(_))));
        let z = RationalMatrix::identity(3);
        assert_eq!(membership(&z, &[q(0), q(0), q(0)]), Err(Error::ZeroVector));
    }

    #[test]
    fn minimal_support_reduction() {
        // Rows (1), (1), (−1), (−1): weights (1,1,1,1) reduce to two rows.
        let l = RationalMatrix::from_i64(&[&[1], &[1], &[-1], &[-1]]);
        let w = minimal_support(&l, alloc::vec![q(1), q(1), q(1), q(1)]);
        assert_eq!(w.iter().filter(|v| !v.is_zero()).count(), 2);
        assert!(l.left_mul_vec(&w).unwrap().iter().all(Zero::is_zero));
    }
}
