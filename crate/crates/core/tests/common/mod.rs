#![allow(dead_code)]

use grasstope_core::{Rational, RationalMatrix};

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

/// Example with a certificate taken from the first two columns.
pub fn tame() -> RationalMatrix {
    RationalMatrix::from_i64(&[
        &[1, 0, 0],
        &[0, 1, 0],
        &[-1, 1, 1],
        &[-3, 2, -1],
        &[-2, 1, -2],
    ])
}

/// Wild: no certificate satisfies the tame condition.
pub fn wild() -> RationalMatrix {
    RationalMatrix::from_i64(&[
        &[2, 2, 2],
        &[2, 3, 2],
        &[0, 1, 0],
        &[-1, 0, 0],
        &[1, 2, 2],
        &[0, 0, 1],
    ])
}

/// Kernel contains the all-ones vector; the closure is a Möbius strip.
pub fn rational() -> RationalMatrix {
    RationalMatrix::from_i64(&[
        &[1, 0, 0],
        &[0, 1, 0],
        &[0, 0, 3],
        &[-1, -1, 0],
        &[0, 1, -2],
        &[0, -1, -1],
    ])
}

/// Four vectors in ℝ³ with one circuit.
pub fn four_vectors() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[2, -3, 4]])
}

/// `n × cols` Vandermonde matrix on nodes `1..=n`.
pub fn vandermonde(n: usize, cols: usize) -> RationalMatrix {
    let nodes: Vec<Rational> = (1..=n as i64).map(q).collect();
    grasstope_core::grassmann::vandermonde(&nodes, cols)
}

pub fn negate_rows(m: &RationalMatrix, rows: &[usize]) -> RationalMatrix {
    let mut m = m.clone();
    for &r in rows {
        m.negate_row(r);
    }
    m
}

pub fn swap_rows(m: &RationalMatrix, a: usize, b: usize) -> RationalMatrix {
    let mut m = m.clone();
    m.swap_rows(a, b);
    m
}

/// Transpose of a matrix printed as `rows` (the way the examples print
/// `Zᵀ` and `(∧₂Z)ᵀ`).
pub fn printed_transpose(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_i64(rows).transpose()
}
