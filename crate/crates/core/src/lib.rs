//! Exact computations for `m = 1` Grasstopes, the images of the totally
//! nonnegative Grassmannian `Gr≥0(k, n)` under the rational map
//! `[A] ↦ [AZ]` given by an `n × (k+1)` matrix `Z`.
//!
//! Everything here is exact rational arithmetic and allocation-only: the
//! crate is `no_std` and needs just `alloc`. File formats, rendering and the
//! command line live in the companion `grasstope` crate.
//!
//! Layout:
//!
//! * [`linalg`]: rationals, dense matrices, colex subsets, minors and
//!   compound (exterior power) matrices.
//! * [`sign`]: sign vectors with `var` / `var̄` statistics.
//! * [`grassmann`]: Plücker vectors, total positivity, twistor forms.
//! * [`matroid`]: chirotopes, circuits, cocircuits, covectors, topes,
//!   relabel/reorient actions and uniform chirotope enumeration.
//! * [`simplex`]: a small exact simplex solver with Bland's rule.
//! * [`grasstope`]: tame/wild/rational classification with certificates,
//!   membership, region lists and Euler characteristics.
//! * [`census`]: Zaslavsky counts, the β/γ bounds and region sweeps over
//!   reorderings and reorientations.
#![no_std]

extern crate alloc;

pub mod census;
mod error;
pub mod grassmann;
pub mod grasstope;
pub mod linalg;
pub mod matroid;
pub mod sign;
pub mod simplex;

pub use error::{Error, Result};
pub use linalg::{Rational, RationalMatrix, SubsetIndex};
pub use sign::{Sign, SignVector};
