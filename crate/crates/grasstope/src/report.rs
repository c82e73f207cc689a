//! Structured reports behind `--json`.
//!
//! Every report is an object with a `kind` tag. Rationals are JSON numbers
//! when they are integers that fit in an `i64` and `"p/q"` strings
//! otherwise, so nothing is rounded. Sign vectors are strings over `+-0`;
//! element indices and permutations are 1-based. The shipped schema
//! (`schema/report.schema.json`) describes every kind.

use grasstope_core::census::{beta_gamma, zaslavsky, CensusRecord, Configuration};
use grasstope_core::grasstope::{
    ClassificationReport, EulerReport, GrasstopeRegions, MembershipVerdict,
};
use grasstope_core::matroid::Chirotope;
use grasstope_core::{Rational, RationalMatrix, SignVector};
use num_traits::ToPrimitive;
use serde::ser::Serializer;
use serde::Serialize;

use crate::tables::TableRow;

pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

/// An exact rational for serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self
            .0
            .is_integer()
            .then(|| self.0.numer().to_i64())
            .flatten()
        {
            Some(i) => s.serialize_i64(i),
            None => s.serialize_str(&crate::format::format_rational(&self.0)),
        }
    }
}

fn vector(v: &[Rational]) -> Vec<Exact> {
    v.iter().cloned().map(Exact).collect()
}

fn matrix(m: &RationalMatrix) -> Vec<Vec<Exact>> {
    m.row_iter().map(vector).collect()
}

fn signs(v: &SignVector) -> String {
    v.to_string()
}

fn one_based(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Report {
    Classify(Classify),
    Member(Member),
    Regions(Regions),
    Euler(Euler),
    Wedge(Wedge),
    Matroid(Matroid),
    Census(Census),
    Sweep(Sweep),
    Tables(Tables),
    EnumerateOm(Enumerate),
    Svg(SvgSummary),
    Error(ErrorReport),
}

#[derive(Debug, Serialize)]
pub struct Certificate {
    pub q: Vec<Exact>,
    pub m: Vec<Vec<Exact>>,
}

#[derive(Debug, Serialize)]
pub struct Classify {
    pub verdict: &'static str,
    pub n: usize,
    pub k: usize,
    pub tame_certificate: Option<Certificate>,
    pub farkas_witness: Option<Vec<Exact>>,
    /// 1-based rows of `Λ_k(Z)` carrying the Farkas witness.
    pub farkas_rows: Option<Vec<usize>>,
    pub kernel_witness: Option<Vec<Exact>>,
    pub kernel_basis: Vec<Vec<Exact>>,
    /// Whether the certificate was re-checked independently of the solver.
    pub verified: bool,
}

impl Classify {
    pub fn new(r: &ClassificationReport, verified: bool) -> Self {
        Self {
            verdict: r.verdict.as_str(),
            n: r.n,
            k: r.k,
            tame_certificate: r.tame_certificate.as_ref().map(|c| Certificate {
                q: vector(&c.q),
                m: matrix(&c.m),
            }),
            farkas_witness: r.farkas_witness.as_deref().map(vector),
            farkas_rows: r.farkas_witness.as_ref().map(|w| {
                w.iter()
                    .enumerate()
                    .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                    .map(|(i, _)| i + 1)
                    .collect()
            }),
            kernel_witness: r.kernel_witness.as_deref().map(vector),
            kernel_basis: matrix(&r.kernel_basis),
            verified,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Member {
    pub point: Vec<Exact>,
    pub twistor: Vec<Exact>,
    pub signs: String,
    pub var: usize,
    pub varbar: usize,
    pub in_closed_set: bool,
    pub in_open_set: bool,
}

impl From<&MembershipVerdict> for Member {
    fn from(m: &MembershipVerdict) -> Self {
        let s: String = m
            .twistor
            .iter()
            .map(|x| grasstope_core::linalg::rational_sign(x).to_char())
            .collect();
        Self {
            point: vector(&m.point),
            twistor: vector(&m.twistor),
            signs: s,
            var: m.var,
            varbar: m.varbar,
            in_closed_set: m.in_closed_set,
            in_open_set: m.in_open_set,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RegionEntry {
    pub signs: String,
    pub sample: Vec<Exact>,
    pub varbar: usize,
    pub in_grasstope: bool,
}

#[derive(Debug, Serialize)]
pub struct Regions {
    pub n: usize,
    pub k: usize,
    pub total: usize,
    pub selected: usize,
    pub regions: Vec<RegionEntry>,
}

impl From<&GrasstopeRegions> for Regions {
    fn from(g: &GrasstopeRegions) -> Self {
        Self {
            n: g.arrangement.n(),
            k: g.k,
            total: g.regions.len(),
            selected: g.selected_count(),
            regions: g
                .regions
                .iter()
                .map(|r| RegionEntry {
                    signs: signs(&r.signs),
                    sample: vector(&r.sample),
                    varbar: r.signs.varbar(),
                    in_grasstope: r.in_grasstope,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Euler {
    pub cells_by_dimension: Vec<usize>,
    pub euler: i64,
}

impl From<&EulerReport> for Euler {
    fn from(e: &EulerReport) -> Self {
        Self {
            cells_by_dimension: e.cells_by_dimension.clone(),
            euler: e.euler,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Wedge {
    pub k: usize,
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<Vec<Exact>>,
}

impl Wedge {
    pub fn new(k: usize, m: &RationalMatrix) -> Self {
        Self {
            k,
            rows: m.rows(),
            cols: m.cols(),
            matrix: matrix(m),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Matroid {
    pub what: &'static str,
    pub n: usize,
    pub rank: Option<usize>,
    pub count: usize,
    /// Present for `grasstope`: the 1-based reading order.
    pub order: Option<Vec<usize>>,
    pub sign_vectors: Vec<String>,
}

impl Matroid {
    pub fn new(
        what: &'static str,
        n: usize,
        rank: Option<usize>,
        order: Option<Vec<usize>>,
        vs: &[SignVector],
    ) -> Self {
        Self {
            what,
            n,
            rank,
            count: vs.len(),
            order,
            sign_vectors: vs.iter().map(signs).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConfigurationEntry {
    /// Reoriented elements.
    pub reorientation: Vec<usize>,
    /// Element `e` is relabelled `relabel[e - 1]`.
    pub relabel: Vec<usize>,
}

impl From<&Configuration> for ConfigurationEntry {
    fn from(c: &Configuration) -> Self {
        Self {
            reorientation: one_based(c.reorientation),
            relabel: c.relabel.as_slice().iter().map(|&e| e + 1).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Bounds {
    pub rp: u64,
    pub beta: u64,
    pub gamma: u64,
    pub lower: u64,
    pub upper: u64,
    pub satisfied: bool,
}

#[derive(Debug, Serialize)]
pub struct Record {
    pub k: usize,
    pub n: usize,
    pub uniform: bool,
    pub topes: usize,
    pub configurations: u64,
    pub min: usize,
    pub max: usize,
    pub argmin: ConfigurationEntry,
    pub argmax: ConfigurationEntry,
    /// `[regions, configurations]` pairs in increasing order of regions.
    pub histogram: Vec<[u64; 2]>,
    pub bounds: Option<Bounds>,
}

impl From<&CensusRecord> for Record {
    fn from(r: &CensusRecord) -> Self {
        let rp = zaslavsky(r.n, r.k).projective;
        let bg = beta_gamma(r.k, r.n);
        Self {
            k: r.k,
            n: r.n,
            uniform: r.uniform,
            topes: r.topes,
            configurations: r.configurations,
            min: r.min,
            max: r.max,
            argmin: (&r.argmin).into(),
            argmax: (&r.argmax).into(),
            histogram: r.histogram.iter().map(|(&c, &t)| [c as u64, t]).collect(),
            bounds: r.uniform.then(|| Bounds {
                rp,
                beta: bg.beta,
                gamma: bg.gamma,
                lower: rp.saturating_sub(bg.beta),
                upper: rp.min(bg.gamma),
                satisfied: r.satisfies_bounds(),
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassEntry {
    pub chirotope: String,
    pub record: Record,
}

#[derive(Debug, Serialize)]
pub struct Census {
    pub k: usize,
    pub n: usize,
    pub classes: Vec<ClassEntry>,
    /// Common `[min, max]` when every class agrees.
    pub class_independent: Option<[usize; 2]>,
}

impl Census {
    pub fn new(k: usize, n: usize, classes: &[(Chirotope, CensusRecord)]) -> Self {
        let first = classes.first().map(|(_, r)| (r.min, r.max));
        let agree = classes.iter().all(|(_, r)| Some((r.min, r.max)) == first);
        Self {
            k,
            n,
            classes: classes
                .iter()
                .map(|(c, r)| ClassEntry {
                    chirotope: c.value_string(),
                    record: r.into(),
                })
                .collect(),
            class_independent: first.filter(|_| agree).map(|(a, b)| [a, b]),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SampledSweep {
    pub seed: u64,
    pub samples: u64,
    pub min: usize,
    pub max: usize,
    pub bounds: Option<Bounds>,
}

#[derive(Debug, Serialize)]
pub struct Sweep {
    pub source: String,
    pub record: Option<Record>,
    pub sampled: Option<SampledSweep>,
}

#[derive(Debug, Serialize)]
pub struct PublishedEntry {
    pub min: Option<usize>,
    pub max: usize,
}

#[derive(Debug, Serialize)]
pub struct TableEntry {
    pub table: u8,
    pub k: usize,
    pub n: usize,
    pub min: Option<usize>,
    pub max: Option<usize>,
    /// Smallest class minimum and largest class maximum.
    pub range: [usize; 2],
    pub classes: usize,
    pub rp: u64,
    pub beta: u64,
    pub gamma: u64,
    pub published: Option<PublishedEntry>,
    pub matches_published: bool,
    pub argmax: ConfigurationEntry,
}

impl From<&TableRow> for TableEntry {
    fn from(t: &TableRow) -> Self {
        let best = t
            .records
            .iter()
            .max_by_key(|(_, r)| r.max)
            .map(|(_, r)| &r.argmax)
            .expect("at least one class");
        Self {
            table: t.table.number(),
            k: t.k,
            n: t.n,
            min: t.min,
            max: t.max,
            range: [t.range.0, t.range.1],
            classes: t.classes,
            rp: t.rp,
            beta: t.beta,
            gamma: t.gamma,
            published: t.published.as_ref().map(|p| PublishedEntry {
                min: p.min,
                max: p.max,
            }),
            matches_published: t.matches_published(),
            argmax: best.into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Tables {
    pub rows: Vec<TableEntry>,
}

#[derive(Debug, Serialize)]
pub struct Enumerate {
    pub rank: usize,
    pub n: usize,
    pub count: usize,
    pub classes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct SvgSummary {
    pub lines: usize,
    pub cells: usize,
    pub shaded_cells: usize,
    pub shaded_topes: usize,
    pub output: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

pub fn bounds(k: usize, n: usize, min: usize, max: usize) -> Bounds {
    let rp = zaslavsky(n, k).projective;
    let bg = beta_gamma(k, n);
    let (lower, upper) = (rp.saturating_sub(bg.beta), rp.min(bg.gamma));
    Bounds {
        rp,
        beta: bg.beta,
        gamma: bg.gamma,
        lower,
        upper,
        satisfied: lower <= min as u64 && max as u64 <= upper,
    }
}

pub fn to_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn exact_numbers() {
        let q = |n: i64, d: i64| Exact(Rational::new(BigInt::from(n), BigInt::from(d)));
        assert_eq!(serde_json::to_string(&q(4, 2)).unwrap(), "2");
        assert_eq!(serde_json::to_string(&q(-1, 3)).unwrap(), "\"-1/3\"");
        let big = Exact(Rational::from_integer(BigInt::from(i64::MAX) * 4));
        assert_eq!(
            serde_json::to_string(&big).unwrap(),
            format!("\"{}\"", BigInt::from(i64::MAX) * 4)
        );
    }

    #[test]
    fn kind_tags() {
        let r = Report::Error(ErrorReport {
            message: "x".into(),
            line: Some(1),
            column: None,
        });
        let v: serde_json::Value = serde_json::from_str(&to_json(&r)).unwrap();
        assert_eq!(v["kind"], "error");
        let e = Report::EnumerateOm(Enumerate {
            rank: 2,
            n: 3,
            count: 0,
            classes: vec![],
        });
        assert!(to_json(&e).contains("\"enumerate-om\""));
    }
}
