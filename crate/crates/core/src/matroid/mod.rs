//! Oriented matroids given by chirotopes, circuits or covectors.
//!
//! Ground elements are 0-based internally; element sets (reorientations,
//! supports) are `u64` bitmasks with bit `e` for element `e`, so the ground
//! set is capped at 64 elements, far beyond anything enumerable anyway.

mod chirotope;
mod circuit;
mod covector;
mod enumerate;
mod perm;

pub use chirotope::Chirotope;
pub use circuit::circuits_from_matrix;
pub use covector::{matroid_grasstope, realize_covector, CovectorSet, MatroidGrasstope};
pub use enumerate::{enumerate_uniform_chirotopes, MAX_ENUMERATION_BASES, MAX_ENUMERATION_GROUND};
pub use perm::Permutation;

/// Bitmask of the 1-based elements in `elements`.
pub fn element_mask(n: usize, elements: &[usize]) -> crate::Result<u64> {
    let mut m = 0u64;
    for &e in elements {
        if e == 0 || e > n {
            return Err(crate::Error::IndexOutOfRange { index: e, bound: n });
        }
        m |= 1 << (e - 1);
    }
    Ok(m)
}
