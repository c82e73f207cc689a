use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::linalg::{colex_subsets, RationalMatrix};
use crate::sign::SignVector;
use crate::{Error, Result};

/// Signed circuits of the rows of `a` (canonical form, sorted): the sign
/// patterns of minimal linear dependencies `Σ λ_i a_i = 0`.
pub fn circuits_from_matrix(a: &RationalMatrix) -> Result<Vec<SignVector>> {
    let n = a.rows();
    let rank = a.rank();
    let mut found: Vec<SignVector> = Vec::new();
    for size in 1..=(rank + 1).min(n) {
        for rows in colex_subsets(n, size) {
            let mask: u64 = rows.iter().map(|&i| 1u64 << i).sum();
            if found.iter().any(|c| c.support_mask() & !mask == 0) {
                continue;
            }
            let kernel = a.select_rows(&rows).transpose().rank_and_kernel();
            if kernel.basis.rows() != 1 {
                continue;
            }
            let lambda = kernel.basis.row(0);
            if lambda.iter().any(num_traits::Zero::is_zero) {
                continue;
            }
            let mut x = SignVector::zero(n).map_err(|_| Error::GroundTooLarge(n))?;
            for (&i, l) in rows.iter().zip(lambda) {
                x.set(i, crate::linalg::rational_sign(l));
            }
            found.push(x.canonical());
        }
    }
    let set: BTreeSet<SignVector> = found.into_iter().collect();
    Ok(set.into_iter().collect())
}
