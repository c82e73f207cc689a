//! Reproduction of the published region-count tables.
//!
//! Table 1 rows sweep every uniform class of rank `k + 1` on `n` elements
//! and require the extremes to agree across classes. Table 2 rows sweep the
//! twistor chirotope of a totally positive Vandermonde matrix.

use grasstope_core::census::{beta_gamma, check_budget, zaslavsky, CensusRecord, SweepOptions};
use grasstope_core::grassmann::{vandermonde, TwistorArrangement};
use grasstope_core::matroid::{enumerate_uniform_chirotopes, Chirotope};
use grasstope_core::{Error, Rational, Result};

use crate::parallel;

/// Published Table 1: `(k, n, min, max, r(P), β, γ)`.
pub const TABLE1: &[(usize, usize, usize, usize, u64, u64, u64)] = &[
    (2, 6, 10, 16, 16, 6, 26),
    (2, 7, 15, 22, 22, 7, 57),
    (3, 5, 4, 5, 15, 11, 5),
    (3, 6, 10, 16, 26, 16, 16),
    (4, 6, 5, 6, 31, 26, 6),
    (4, 7, 15, 22, 57, 42, 22),
];

/// Published Table 2: `(k, n, max, r(P), γ)`.
pub const TABLE2: &[(usize, usize, usize, u64, u64)] = &[
    (3, 7, 42, 42, 42),
    (3, 8, 64, 64, 99),
    (4, 8, 64, 99, 64),
    (5, 8, 29, 120, 29),
    (2, 9, 37, 37, 247),
    (3, 9, 93, 93, 219),
    (4, 9, 163, 163, 163),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    Classes,
    Positive,
}

impl Table {
    pub fn number(self) -> u8 {
        match self {
            Table::Classes => 1,
            Table::Positive => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Published {
    pub min: Option<usize>,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub table: Table,
    pub k: usize,
    pub n: usize,
    /// `None` when the classes disagree.
    pub min: Option<usize>,
    pub max: Option<usize>,
    pub classes: usize,
    /// Largest class maximum and smallest class minimum.
    pub range: (usize, usize),
    pub rp: u64,
    pub beta: u64,
    pub gamma: u64,
    pub records: Vec<(Chirotope, CensusRecord)>,
    pub published: Option<Published>,
}

impl TableRow {
    /// Published values reproduced exactly (vacuous for unpublished rows).
    pub fn matches_published(&self) -> bool {
        match &self.published {
            None => true,
            Some(p) => self.max == Some(p.max) && (p.min.is_none() || self.min == p.min),
        }
    }
}

pub fn published(table: Table, k: usize, n: usize) -> Option<Published> {
    match table {
        Table::Classes => TABLE1
            .iter()
            .find(|r| (r.0, r.1) == (k, n))
            .map(|r| Published {
                min: Some(r.2),
                max: r.3,
            }),
        Table::Positive => TABLE2
            .iter()
            .find(|r| (r.0, r.1) == (k, n))
            .map(|r| Published {
                min: None,
                max: r.2,
            }),
    }
}

/// The table a row belongs to when none is named.
pub fn default_table(k: usize, n: usize) -> Table {
    if published(Table::Positive, k, n).is_some() && published(Table::Classes, k, n).is_none() {
        Table::Positive
    } else {
        Table::Classes
    }
}

/// Twistor chirotope of the `n × (k+1)` Vandermonde matrix on nodes `1..n`.
pub fn positive_chirotope(k: usize, n: usize) -> Result<Chirotope> {
    if k == 0 || k >= n {
        return Err(Error::Unsupported(format!(
            "no positive configuration for k = {k}, n = {n}"
        )));
    }
    let nodes: Vec<Rational> = (1..=n as i64)
        .map(|i| Rational::from_integer(i.into()))
        .collect();
    let z = vandermonde(&nodes, k + 1);
    Chirotope::from_matrix(TwistorArrangement::new(&z)?.forms())
}

pub fn reproduce(
    table: Table,
    k: usize,
    n: usize,
    options: &SweepOptions,
    threads: usize,
) -> Result<TableRow> {
    let records = match table {
        Table::Classes => {
            check_budget(n, options)?;
            enumerate_uniform_chirotopes(k + 1, n)?
                .into_iter()
                .map(|c| Ok((c.clone(), parallel::sweep(&c, options, threads)?)))
                .collect::<Result<Vec<_>>>()?
        }
        Table::Positive => {
            let c = positive_chirotope(k, n)?;
            let r = parallel::sweep(&c, options, threads)?;
            vec![(c, r)]
        }
    };
    let bg = beta_gamma(k, n);
    let first = &records[0].1;
    let agree = records
        .iter()
        .all(|(_, r)| r.min == first.min && r.max == first.max);
    let range = (
        records.iter().map(|(_, r)| r.min).min().unwrap_or(0),
        records.iter().map(|(_, r)| r.max).max().unwrap_or(0),
    );
    Ok(TableRow {
        table,
        k,
        n,
        min: agree.then_some(first.min),
        max: agree.then_some(first.max),
        classes: records.len(),
        range,
        rp: zaslavsky(n, k).projective,
        beta: bg.beta,
        gamma: bg.gamma,
        records,
        published: published(table, k, n),
    })
}
