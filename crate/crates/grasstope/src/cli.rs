//! The `grasstope` command line.
//!
//! Exit codes: 0 on success, 1 on domain errors (bad input files, failed
//! checks, budgets), 2 on usage errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use grasstope_core::census::{
    beta_gamma, zaslavsky, CensusRecord, SweepOptions, TopeSet, DEFAULT_BUDGET,
};
use grasstope_core::grassmann::TwistorArrangement;
use grasstope_core::grasstope::{
    classify, euler_characteristic, grasstope_topes, membership, verify_tame_certificate,
    ClassificationReport, Verdict,
};
use grasstope_core::linalg::exterior_power;
use grasstope_core::matroid::{
    circuits_from_matrix, enumerate_uniform_chirotopes, matroid_grasstope, Chirotope, CovectorSet,
    Permutation,
};
use grasstope_core::{Rational, RationalMatrix, SignVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::format::{self, BasisOrder, CocircuitList, ParseError};
use crate::parallel;
use crate::report::{self, Report};
use crate::svg::{self, Chart, SvgOptions};
use crate::tables::{self, Table};

#[derive(Debug, Parser)]
#[command(
    name = "grasstope",
    version,
    about = "Exact computations for m = 1 Grasstopes"
)]
pub struct Cli {
    /// Print the structured report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tame, wild or rational, with a certificate.
    Classify { file: PathBuf },
    /// Whether a point of P^k lies in the Grasstope.
    Member {
        file: PathBuf,
        /// Homogeneous coordinates, e.g. "1 0 -1/2".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Regions of the twistor arrangement and which ones are selected.
    Regions {
        file: PathBuf,
        /// List only the regions in the Grasstope.
        #[arg(long)]
        selected: bool,
    },
    /// Euler characteristic of the closed Grasstope.
    Euler { file: PathBuf },
    /// The k-th exterior power of a matrix (k defaults to its column count minus one).
    Wedge {
        file: PathBuf,
        #[arg(short)]
        k: Option<usize>,
    },
    /// Oriented matroid data.
    Matroid {
        #[arg(value_enum)]
        what: MatroidQuery,
        #[command(flatten)]
        source: SourceArgs,
        /// Reading order for `grasstope`, 1-based, e.g. "2 1 3 4".
        #[arg(long)]
        reading: Option<String>,
    },
    /// Sweep every uniform class of rank k+1 on n elements.
    Census {
        k: usize,
        n: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Region counts over all reorderings and reorientations.
    Sweep {
        #[command(flatten)]
        source: SourceArgs,
        /// Twistor chirotope of the totally positive Vandermonde matrix, "k,n".
        #[arg(long, value_parser = parse_pair)]
        positive: Option<(usize, usize)>,
        /// Evaluate this many random configurations instead of all of them.
        #[arg(long)]
        samples: Option<u64>,
        /// Seed for --samples.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Reproduce rows of the region-count tables.
    Tables {
        /// 1: every uniform class; 2: the totally positive class.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        table: Option<u8>,
        /// A row "k,n"; repeatable. Defaults to every published row in budget.
        #[arg(long, value_parser = parse_pair)]
        row: Vec<(usize, usize)>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// One uniform chirotope per isomorphism class.
    EnumerateOm { rank: usize, n: usize },
    /// Draw a k = 2 Grasstope.
    Svg {
        file: PathBuf,
        /// Rows of the chart matrix P separated by ';', e.g. "-4 0 1; 0 1 0; 0 0 1".
        #[arg(long, allow_hyphen_values = true)]
        chart: Option<String>,
        /// 1-based coordinate of P x set to 1.
        #[arg(long, default_value_t = 1)]
        dehomogenize: usize,
        /// Write the SVG here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Drop twistor lines the chart sends to infinity instead of failing.
        #[arg(long)]
        allow_unbounded: bool,
        /// Omit the line labels.
        #[arg(long)]
        no_labels: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatroidQuery {
    Circuits,
    Cocircuits,
    Covectors,
    Topes,
    Grasstope,
}

impl MatroidQuery {
    fn name(self) -> &'static str {
        match self {
            MatroidQuery::Circuits => "circuits",
            MatroidQuery::Cocircuits => "cocircuits",
            MatroidQuery::Covectors => "covectors",
            MatroidQuery::Topes => "topes",
            MatroidQuery::Grasstope => "grasstope",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Colex,
    Lex,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Vector configuration, one element per row.
    #[arg(long, conflicts_with_all = ["twistor", "chirotope", "cocircuits"])]
    matrix: Option<PathBuf>,
    /// A matrix Z; the configuration is its twistor forms.
    #[arg(long, conflicts_with_all = ["chirotope", "cocircuits"])]
    twistor: Option<PathBuf>,
    /// Chirotope file ("r n" then the basis signs).
    #[arg(long, conflicts_with_all = ["cocircuits"])]
    chirotope: Option<PathBuf>,
    /// Cocircuit file ("r n" then one signed set per line).
    #[arg(long)]
    cocircuits: Option<PathBuf>,
    /// Basis order of the chirotope string.
    #[arg(long, value_enum, default_value_t = OrderArg::Colex)]
    order: OrderArg,
    /// Check the chirotope axioms when reading a chirotope.
    #[arg(long)]
    check_axioms: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Largest number of configurations a sweep may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long)]
    threads: Option<usize>,
}

impl RunArgs {
    fn options(&self) -> SweepOptions {
        SweepOptions {
            budget: self.budget,
            record_all: false,
        }
    }

    fn threads(&self) -> usize {
        self.threads
            .unwrap_or_else(parallel::default_threads)
            .max(1)
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"k,n\", found `{s}`"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("expected \"k,n\", found `{s}`"))
    };
    Ok((num(a)?, num(b)?))
}

/// A domain failure: message plus an optional file position.
#[derive(Debug)]
pub struct Failure {
    message: String,
    line: Option<usize>,
    column: Option<usize>,
}

impl Failure {
    fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            line: None,
            column: None,
        }
    }
}

impl From<grasstope_core::Error> for Failure {
    fn from(e: grasstope_core::Error) -> Self {
        Failure::new(e.to_string())
    }
}

impl From<svg::SvgError> for Failure {
    fn from(e: svg::SvgError) -> Self {
        Failure::new(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(format!("{}: {e}", path.display())))
}

fn parsed<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, Failure> {
    r.map_err(|e| Failure {
        message: format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message),
        line: Some(e.line),
        column: Some(e.column),
    })
}

fn load_matrix(path: &Path) -> Result<RationalMatrix, Failure> {
    parsed(path, format::parse_matrix(&read(path)?))
}

/// What a matroid or sweep command runs on.
enum Source {
    Matrix(RationalMatrix),
    Chirotope(Chirotope),
    Cocircuits(CocircuitList),
}

impl Source {
    fn load(args: &SourceArgs) -> Result<Option<Self>, Failure> {
        let order = match args.order {
            OrderArg::Colex => BasisOrder::Colex,
            OrderArg::Lex => BasisOrder::Lex,
        };
        Ok(if let Some(p) = &args.matrix {
            Some(Source::Matrix(load_matrix(p)?))
        } else if let Some(p) = &args.twistor {
            let z = load_matrix(p)?;
            Some(Source::Matrix(TwistorArrangement::new(&z)?.forms().clone()))
        } else if let Some(p) = &args.chirotope {
            Some(Source::Chirotope(parsed(
                p,
                format::parse_chirotope(&read(p)?, order, args.check_axioms),
            )?))
        } else if let Some(p) = &args.cocircuits {
            Some(Source::Cocircuits(parsed(
                p,
                format::parse_cocircuits(&read(p)?),
            )?))
        } else {
            None
        })
    }

    fn chirotope(&self) -> Result<Option<Chirotope>, Failure> {
        Ok(match self {
            Source::Matrix(a) => Some(Chirotope::from_matrix(a)?),
            Source::Chirotope(c) => Some(c.clone()),
            Source::Cocircuits(_) => None,
        })
    }

    fn n(&self) -> usize {
        match self {
            Source::Matrix(a) => a.rows(),
            Source::Chirotope(c) => c.n(),
            Source::Cocircuits(l) => l.n,
        }
    }

    fn rank(&self) -> Result<usize, Failure> {
        Ok(match self {
            Source::Matrix(a) => a.rank(),
            Source::Chirotope(c) => c.rank(),
            Source::Cocircuits(l) => l.rank,
        })
    }

    fn covectors(&self) -> Result<CovectorSet, Failure> {
        Ok(match self {
            Source::Cocircuits(l) => CovectorSet::from_cocircuits(l.n, &l.cocircuits)?,
            _ => self.chirotope()?.expect("not a cocircuit list").covectors(),
        })
    }

    /// Uniform: every cocircuit misses exactly `r − 1` elements.
    fn uniform(&self, covectors: &CovectorSet) -> Result<bool, Failure> {
        Ok(match self.chirotope()? {
            Some(c) => c.is_uniform(),
            None => {
                let r = self.rank()?;
                covectors
                    .cocircuits()
                    .iter()
                    .all(|c| c.len() - c.support_size() + 1 == r)
            }
        })
    }
}

/// Parse argv, run, print, and return the exit code.
pub fn run_cli<I, T>(argv: I, out: &mut String, err: &mut String) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                out.push_str(&text);
            } else {
                err.push_str(&text);
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            if cli.json {
                let r = Report::Error(report::ErrorReport {
                    message: f.message.clone(),
                    line: f.line,
                    column: f.column,
                });
                out.push_str(&report::to_json(&r));
                out.push('\n');
            }
            let _ = writeln!(err, "error: {}", f.message);
            1
        }
    }
}

fn emit(out: &mut String, json: bool, report: Report, text: impl FnOnce(&mut String)) {
    if json {
        out.push_str(&report::to_json(&report));
        out.push('\n');
    } else {
        text(out);
    }
}

fn vec_string(v: &[Rational]) -> String {
    let cells: Vec<String> = v.iter().map(format::format_rational).collect();
    format!("({})", cells.join(", "))
}

fn verified(z: &RationalMatrix, r: &ClassificationReport) -> Result<bool, Failure> {
    Ok(match r.verdict {
        Verdict::Tame => match &r.tame_certificate {
            Some(c) => verify_tame_certificate(z, &c.m)?,
            None => false,
        },
        Verdict::Wild => {
            // The weights must be nonnegative and cancel on the rows of Λ_k(Z).
            let lambda = exterior_power(z, r.k)?;
            match &r.farkas_witness {
                Some(w) => {
                    !w.iter().any(num_traits::Signed::is_negative)
                        && lambda
                            .left_mul_vec(w)?
                            .iter()
                            .all(num_traits::Zero::is_zero)
                        && w.iter().any(|x| !num_traits::Zero::is_zero(x))
                }
                None => false,
            }
        }
        Verdict::Rational => match &r.kernel_witness {
            Some(w) => {
                let v = SignVector::from_rationals(w)?;
                z.left_mul_vec(w)?.iter().all(num_traits::Zero::is_zero)
                    && !v.is_zero()
                    && v.var() < r.k
            }
            None => false,
        },
    })
}

fn record_text(out: &mut String, r: &CensusRecord) {
    let _ = writeln!(
        out,
        "min {} max {} over {} configurations ({} topes{})",
        r.min,
        r.max,
        r.configurations,
        r.topes,
        if r.uniform { "" } else { ", not uniform" }
    );
    if r.uniform {
        let rp = zaslavsky(r.n, r.k).projective;
        let bg = beta_gamma(r.k, r.n);
        let _ = writeln!(
            out,
            "bounds {} <= count <= {} (rP {}, beta {}, gamma {}): {}",
            rp.saturating_sub(bg.beta),
            rp.min(bg.gamma),
            rp,
            bg.beta,
            bg.gamma,
            if r.satisfies_bounds() {
                "hold"
            } else {
                "VIOLATED"
            }
        );
    }
    let show = |c: &grasstope_core::census::Configuration| {
        let e = report::ConfigurationEntry::from(c);
        format!(
            "reorient {:?} relabel {}",
            e.reorientation,
            Permutation::new(c.relabel.as_slice().to_vec()).expect("valid")
        )
    };
    let _ = writeln!(out, "argmin {}", show(&r.argmin));
    let _ = writeln!(out, "argmax {}", show(&r.argmax));
}

fn execute(cli: &Cli, out: &mut String) -> Result<i32, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Classify { file } => {
            let z = load_matrix(file)?;
            let r = classify(&z)?;
            let ok = verified(&z, &r)?;
            emit(
                out,
                json,
                Report::Classify(report::Classify::new(&r, ok)),
                |o| {
                    let _ = writeln!(o, "{}", r.verdict.as_str().to_uppercase());
                    if let Some(c) = &r.tame_certificate {
                        let _ = writeln!(o, "q = {}", vec_string(&c.q));
                        let _ = writeln!(o, "M =\n{}", c.m.to_string().trim_end());
                    }
                    if let Some(w) = &r.farkas_witness {
                        let rows: Vec<String> = w
                            .iter()
                            .enumerate()
                            .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                            .map(|(i, x)| format!("{} x row {}", format::format_rational(x), i + 1))
                            .collect();
                        let _ = writeln!(o, "farkas: {} = 0", rows.join(" + "));
                    }
                    if let Some(w) = &r.kernel_witness {
                        let _ = writeln!(o, "kernel witness {}", vec_string(w));
                    }
                    let _ = writeln!(
                        o,
                        "certificate {}",
                        if ok { "verified" } else { "NOT verified" }
                    );
                },
            );
            Ok(if ok { 0 } else { 1 })
        }
        Command::Member { file, point } => {
            let z = load_matrix(file)?;
            let x =
                format::parse_vector(point).map_err(|e| Failure::new(format!("--point: {e}")))?;
            let m = membership(&z, &x)?;
            let rep = report::Member::from(&m);
            let signs = rep.signs.clone();
            emit(out, json, Report::Member(rep), |o| {
                let _ = writeln!(o, "L(x) = {} signs {signs}", vec_string(&m.twistor));
                let _ = writeln!(o, "var {} varbar {}", m.var, m.varbar);
                let _ = writeln!(
                    o,
                    "{}",
                    match (m.in_open_set, m.in_closed_set) {
                        (true, _) => "in the grasstope (interior)",
                        (false, true) => "in the closed grasstope",
                        _ => "not in the grasstope",
                    }
                );
            });
            Ok(0)
        }
        Command::Regions { file, selected } => {
            let z = load_matrix(file)?;
            let g = grasstope_topes(&z)?;
            let mut rep = report::Regions::from(&g);
            if *selected {
                rep.regions.retain(|r| r.in_grasstope);
            }
            let lines: Vec<String> = rep
                .regions
                .iter()
                .map(|r| {
                    let sample: Vec<String> = r
                        .sample
                        .iter()
                        .map(|q| format::format_rational(&q.0))
                        .collect();
                    format!(
                        "{} {} varbar {} ({})",
                        if r.in_grasstope { "*" } else { " " },
                        r.signs,
                        r.varbar,
                        sample.join(", ")
                    )
                })
                .collect();
            let (total, sel) = (rep.total, rep.selected);
            emit(out, json, Report::Regions(rep), |o| {
                for l in &lines {
                    let _ = writeln!(o, "{l}");
                }
                let _ = writeln!(o, "{sel} of {total} regions");
            });
            Ok(0)
        }
        Command::Euler { file } => {
            let z = load_matrix(file)?;
            let e = euler_characteristic(&z)?;
            emit(out, json, Report::Euler((&e).into()), |o| {
                let _ = writeln!(o, "cells by dimension {:?}", e.cells_by_dimension);
                let _ = writeln!(o, "euler {}", e.euler);
            });
            Ok(0)
        }
        Command::Wedge { file, k } => {
            let z = load_matrix(file)?;
            let k = k.unwrap_or(z.cols().saturating_sub(1));
            let w = exterior_power(&z, k)?;
            emit(out, json, Report::Wedge(report::Wedge::new(k, &w)), |o| {
                o.push_str(&format::write_matrix(&w));
            });
            Ok(0)
        }
        Command::Matroid {
            what,
            source,
            reading,
        } => {
            let src = Source::load(source)?.ok_or_else(|| {
                Failure::new("give one of --matrix, --twistor, --chirotope, --cocircuits")
            })?;
            let n = src.n();
            let rank = src.rank()?;
            let mut order_out = None;
            let vectors = match what {
                MatroidQuery::Circuits => match &src {
                    Source::Matrix(a) => circuits_from_matrix(a)?,
                    Source::Chirotope(c) => c.circuits(),
                    Source::Cocircuits(_) => {
                        return Err(Failure::new("circuits need a matrix or a chirotope"));
                    }
                },
                MatroidQuery::Cocircuits => src.covectors()?.cocircuits(),
                MatroidQuery::Covectors => src.covectors()?.covectors().to_vec(),
                MatroidQuery::Topes => src.covectors()?.topes(),
                MatroidQuery::Grasstope => {
                    let order = match reading {
                        Some(r) => {
                            let v: Vec<usize> = r
                                .split([' ', ','])
                                .filter(|t| !t.is_empty())
                                .map(|t| {
                                    t.parse::<usize>().map_err(|_| {
                                        Failure::new(format!("--reading: bad index `{t}`"))
                                    })
                                })
                                .collect::<Result<_, _>>()?;
                            Permutation::from_one_based(&v)?
                        }
                        None => Permutation::identity(n),
                    };
                    order_out = Some(order.as_slice().iter().map(|&e| e + 1).collect());
                    matroid_grasstope(&src.covectors()?, rank, &order)?.topes
                }
            };
            let rep = report::Matroid::new(what.name(), n, Some(rank), order_out, &vectors);
            emit(out, json, Report::Matroid(rep), |o| {
                for v in &vectors {
                    let _ = writeln!(o, "{v}  {{{}}}", v.to_signed_set_string());
                }
                let _ = writeln!(o, "{} {}", vectors.len(), what.name());
            });
            Ok(0)
        }
        Command::Census { k, n, run } => {
            // Enumerate here, sweep each class threaded.
            let opts = run.options();
            grasstope_core::census::check_budget(*n, &opts)?;
            let classes = enumerate_uniform_chirotopes(k + 1, *n)?
                .into_iter()
                .map(|c| Ok((c.clone(), parallel::sweep(&c, &opts, run.threads())?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            let rep = report::Census::new(*k, *n, &classes);
            let agreed = rep.class_independent;
            let ok = classes.iter().all(|(_, r)| r.satisfies_bounds());
            emit(out, json, Report::Census(rep), |o| {
                for (c, r) in &classes {
                    let _ = writeln!(
                        o,
                        "class {} : min {} max {}",
                        c.value_string(),
                        r.min,
                        r.max
                    );
                }
                match agreed {
                    Some([a, b]) => {
                        let _ = writeln!(
                            o,
                            "{} classes, min {a} max {b} in every class",
                            classes.len()
                        );
                    }
                    None => {
                        let _ =
                            writeln!(o, "{} classes, extremes depend on the class", classes.len());
                    }
                }
            });
            Ok(if ok { 0 } else { 1 })
        }
        Command::Sweep {
            source,
            positive,
            samples,
            seed,
            run,
        } => sweep_command(json, out, source, *positive, *samples, *seed, run),
        Command::Tables { table, row, run } => {
            let rows: Vec<(Table, usize, usize)> = if row.is_empty() {
                let t1 = tables::TABLE1.iter().map(|r| (Table::Classes, r.0, r.1));
                let t2 = tables::TABLE2.iter().map(|r| (Table::Positive, r.0, r.1));
                let all: Vec<_> = match table {
                    Some(1) => t1.collect(),
                    Some(_) => t2.collect(),
                    None => t1.chain(t2).collect(),
                };
                let budget = run.options().budget;
                all.into_iter()
                    .filter(|&(_, _, n)| grasstope_core::census::configuration_count(n) <= budget)
                    .collect()
            } else {
                row.iter()
                    .map(|&(k, n)| {
                        let t = match table {
                            Some(1) => Table::Classes,
                            Some(_) => Table::Positive,
                            None => tables::default_table(k, n),
                        };
                        (t, k, n)
                    })
                    .collect()
            };
            let mut results = Vec::new();
            for (t, k, n) in rows {
                results.push(tables::reproduce(t, k, n, &run.options(), run.threads())?);
            }
            let all_match = results.iter().all(|r| r.matches_published());
            let rep = report::Tables {
                rows: results.iter().map(Into::into).collect(),
            };
            emit(out, json, Report::Tables(rep), |o| {
                for r in &results {
                    let extremes = match (r.min, r.max) {
                        (Some(a), Some(b)) => format!("min {a} max {b}"),
                        _ => format!(
                            "min {}..{} max {}..{} (class dependent)",
                            r.range.0, r.range.0, r.range.1, r.range.1
                        ),
                    };
                    let verdict = match &r.published {
                        None => "unpublished".to_string(),
                        Some(_) if r.matches_published() => "matches".to_string(),
                        Some(p) => format!("MISMATCH (published max {})", p.max),
                    };
                    let _ = writeln!(
                        o,
                        "table {} row ({},{}): {extremes} classes {} rP {} beta {} gamma {} [{verdict}]",
                        r.table.number(),
                        r.k,
                        r.n,
                        r.classes,
                        r.rp,
                        r.beta,
                        r.gamma
                    );
                }
            });
            Ok(if all_match { 0 } else { 1 })
        }
        Command::EnumerateOm { rank, n } => {
            let classes = enumerate_uniform_chirotopes(*rank, *n)?;
            let strings: Vec<String> = classes.iter().map(Chirotope::value_string).collect();
            let rep = report::Enumerate {
                rank: *rank,
                n: *n,
                count: strings.len(),
                classes: strings.clone(),
            };
            emit(out, json, Report::EnumerateOm(rep), |o| {
                for s in &strings {
                    let _ = writeln!(o, "{s}");
                }
                let _ = writeln!(
                    o,
                    "{} classes of uniform rank {rank} chirotopes on {n} elements",
                    strings.len()
                );
            });
            Ok(0)
        }
        Command::Svg {
            file,
            chart,
            dehomogenize,
            output,
            allow_unbounded,
            no_labels,
        } => {
            let z = load_matrix(file)?;
            let p = match chart {
                Some(text) => {
                    let rows = text.replace(';', "\n");
                    let m = format::parse_matrix(&rows)
                        .map_err(|e| Failure::new(format!("--chart: {e}")))?;
                    if m.rows() != 3 {
                        return Err(Failure::new("--chart needs three rows"));
                    }
                    m
                }
                None => RationalMatrix::identity(3),
            };
            if *dehomogenize == 0 || *dehomogenize > 3 {
                return Err(Failure::new("--dehomogenize must be 1, 2 or 3"));
            }
            let chart = Chart {
                p,
                dehomogenize: dehomogenize - 1,
            };
            let options = SvgOptions {
                allow_unbounded: *allow_unbounded,
                labels: !no_labels,
                ..SvgOptions::default()
            };
            let drawing = svg::render(&z, &chart, &options)?;
            if let Some(path) = output {
                fs::write(path, &drawing.document)
                    .map_err(|e| Failure::new(format!("{}: {e}", path.display())))?;
            }
            let summary = report::SvgSummary {
                lines: drawing.drawn_lines(),
                cells: drawing.cells.len(),
                shaded_cells: drawing.shaded_cells(),
                shaded_topes: drawing.shaded_topes(),
                output: output.as_ref().map(|p| p.display().to_string()),
            };
            if json {
                emit(out, true, Report::Svg(summary), |_| {});
            } else if output.is_some() {
                let _ = writeln!(
                    out,
                    "{} lines, {} cells, {} shaded ({} regions)",
                    summary.lines, summary.cells, summary.shaded_cells, summary.shaded_topes
                );
            } else {
                out.push_str(&drawing.document);
            }
            Ok(0)
        }
    }
}

fn sweep_command(
    json: bool,
    out: &mut String,
    source: &SourceArgs,
    positive: Option<(usize, usize)>,
    samples: Option<u64>,
    seed: u64,
    run: &RunArgs,
) -> Result<i32, Failure> {
    let (label, topes) = match (positive, Source::load(source)?) {
        (Some((k, n)), None) => {
            let c = tables::positive_chirotope(k, n)?;
            (format!("positive {k},{n}"), TopeSet::from_chirotope(&c)?)
        }
        (None, Some(src)) => {
            let cov = src.covectors()?;
            let uniform = src.uniform(&cov)?;
            let label = match &src {
                Source::Matrix(_) => "matrix",
                Source::Chirotope(_) => "chirotope",
                Source::Cocircuits(_) => "cocircuits",
            };
            (
                label.to_string(),
                TopeSet::from_covectors(&cov, src.rank()?, uniform)?,
            )
        }
        (Some(_), Some(_)) => return Err(Failure::new("--positive excludes the other inputs")),
        (None, None) => {
            return Err(Failure::new(
                "give one of --matrix, --twistor, --chirotope, --cocircuits, --positive",
            ))
        }
    };
    let (n, k) = (topes.n(), topes.rank().saturating_sub(1));
    if let Some(count) = samples {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        let (mut lo, mut hi) = (usize::MAX, 0);
        for _ in 0..count {
            order.shuffle(&mut rng);
            let flip = rng.gen_range(0..1u64 << n);
            let c = topes.count(flip, &Permutation::new(order.clone()).expect("a shuffle"))?;
            lo = lo.min(c);
            hi = hi.max(c);
        }
        if count == 0 {
            lo = 0;
        }
        let bounds = topes.is_uniform().then(|| report::bounds(k, n, lo, hi));
        let ok = bounds.as_ref().is_none_or(|b| b.satisfied);
        let text = format!(
            "sampled {count} configurations (seed {seed}): min {lo} max {hi}{}\n",
            bounds
                .as_ref()
                .map(|b| format!(
                    "; bounds {} <= count <= {}: {}",
                    b.lower,
                    b.upper,
                    if b.satisfied { "hold" } else { "VIOLATED" }
                ))
                .unwrap_or_default()
        );
        let rep = report::Sweep {
            source: label,
            record: None,
            sampled: Some(report::SampledSweep {
                seed,
                samples: count,
                min: lo,
                max: hi,
                bounds,
            }),
        };
        emit(out, json, Report::Sweep(rep), |o| o.push_str(&text));
        return Ok(if ok { 0 } else { 1 });
    }
    let record = parallel::sweep_topes(&topes, &run.options(), run.threads())?;
    let ok = !record.uniform || record.satisfies_bounds();
    let rep = report::Sweep {
        source: label,
        record: Some((&record).into()),
        sampled: None,
    };
    emit(out, json, Report::Sweep(rep), |o| record_text(o, &record));
    Ok(if ok { 0 } else { 1 })
}
