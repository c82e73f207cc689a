//! Plain-text file formats.
//!
//! * Matrix: optional header `n k`, then `n` rows of `k + 1` rationals
//!   (`3`, `-2`, `1/2`). Without a header any consistent row length works.
//! * Chirotope: header `r n`, then one string over `+ - 0` of length
//!   `C(n, r)`, bases in colex order (or lex with [`BasisOrder::Lex`]).
//! * Cocircuits: header `r n`, then one signed set per line, e.g. `2 -4`.
//!
//! `#` starts a comment; blank lines are ignored. Diagnostics carry 1-based
//! line and column numbers.

use std::fmt::Write as _;

use grasstope_core::linalg::{binomial, colex_rank};
use grasstope_core::matroid::Chirotope;
use grasstope_core::{Rational, RationalMatrix, Sign, SignVector};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// A token with its 1-based position.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Non-empty lines after comment stripping, each split into tokens.
fn lines(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content
            .char_indices()
            .chain(std::iter::once((content.len(), ' ')))
        {
            let sep = ch.is_whitespace() || ch == ',';
            match (start, sep) {
                (None, false) => start = Some(pos),
                (Some(s), true) => {
                    tokens.push(Token {
                        text: &content[s..pos],
                        line: i + 1,
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(tokens);
        }
    }
    out
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let parse = |t: &str| -> Result<BigInt, String> {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed rational `{s}`"));
        }
        t.parse::<BigInt>()
            .map_err(|_| format!("malformed rational `{s}`"))
    };
    let n = parse(num)?;
    let d = match den {
        Some(d) => parse(d)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_count(tok: &Token<'_>, what: &str) -> Result<usize, ParseError> {
    tok.text.parse::<usize>().map_err(|_| {
        err(
            tok.line,
            tok.column,
            format!("expected {what}, found `{}`", tok.text),
        )
    })
}

pub fn parse_matrix(text: &str) -> Result<RationalMatrix, ParseError> {
    let mut body = lines(text);
    if body.is_empty() {
        return Err(err(1, 1, "empty matrix file"));
    }
    // A leading `n k` line is a header when the rest has n rows of k + 1.
    let header = match body[0].as_slice() {
        [a, b] => match (a.text.parse::<usize>(), b.text.parse::<usize>()) {
            (Ok(n), Ok(k)) => {
                let rest = &body[1..];
                (rest.len() == n && rest.iter().all(|r| r.len() == k + 1)).then_some((n, k))
            }
            _ => None,
        },
        _ => None,
    };
    if header.is_some() {
        body.remove(0);
        if body.is_empty() {
            return Err(err(1, 1, "header announces an empty matrix"));
        }
    }
    let width = body[0].len();
    let mut rows = Vec::with_capacity(body.len());
    for line in &body {
        if line.len() != width {
            let t = line.get(width).or(line.last()).expect("non-empty line");
            return Err(err(
                t.line,
                t.column,
                format!("row has {} entries, expected {width}", line.len()),
            ));
        }
        let row = line
            .iter()
            .map(|t| parse_rational(t.text).map_err(|m| err(t.line, t.column, m)))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(RationalMatrix::from_rows(rows).expect("rows checked"))
}

/// Header `n k` (with `k = cols − 1`) and one row per line.
pub fn write_matrix(m: &RationalMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols().saturating_sub(1));
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BasisOrder {
    #[default]
    Colex,
    Lex,
}

/// Lex positions of the colex-ordered `r`-subsets of `n`.
fn lex_positions(n: usize, r: usize) -> Vec<usize> {
    let mut lex: Vec<Vec<usize>> = grasstope_core::linalg::colex_subsets(n, r).collect();
    lex.sort();
    let mut pos = vec![0; lex.len()];
    for (i, s) in lex.iter().enumerate() {
        pos[colex_rank(s)] = i;
    }
    pos
}

pub fn parse_chirotope(
    text: &str,
    order: BasisOrder,
    check_axioms: bool,
) -> Result<Chirotope, ParseError> {
    let body = lines(text);
    let Some(header) = body.first() else {
        return Err(err(1, 1, "empty chirotope file"));
    };
    if header.len() != 2 {
        return Err(err(
            header[0].line,
            header[0].column,
            "expected header `r n`",
        ));
    }
    let r = parse_count(&header[0], "rank")?;
    let n = parse_count(&header[1], "ground set size")?;
    let values: Vec<&Token<'_>> = body[1..].iter().flatten().collect();
    let line = values.first().map_or(header[0].line + 1, |t| t.line);
    let mut signs = Vec::new();
    for tok in &values {
        for (i, ch) in tok.text.chars().enumerate() {
            let s = Sign::from_char(ch).ok_or_else(|| {
                err(
                    tok.line,
                    tok.column + i,
                    format!("unexpected `{ch}` in chirotope"),
                )
            })?;
            signs.push(s);
        }
    }
    let expected = binomial(n, r);
    if signs.len() as u64 != expected {
        return Err(err(
            line,
            1,
            format!(
                "chirotope has {} signs, C({n},{r}) = {expected} expected",
                signs.len()
            ),
        ));
    }
    if order == BasisOrder::Lex {
        let pos = lex_positions(n, r);
        signs = pos.iter().map(|&p| signs[p]).collect();
    }
    let chi = Chirotope::new(n, r, signs).map_err(|e| err(line, 1, e.to_string()))?;
    if check_axioms {
        chi.check_axioms()
            .map_err(|e| err(line, 1, e.to_string()))?;
    }
    Ok(chi)
}

pub fn write_chirotope(c: &Chirotope, order: BasisOrder) -> String {
    let values = match order {
        BasisOrder::Colex => c.value_string(),
        BasisOrder::Lex => {
            let pos = lex_positions(c.n(), c.rank());
            let mut lex = vec!['0'; pos.len()];
            for (colex, &p) in pos.iter().enumerate() {
                lex[p] = c.values()[colex].to_char();
            }
            lex.into_iter().collect()
        }
    };
    format!("{} {}\n{}\n", c.rank(), c.n(), values)
}

/// Rank, ground set size and the signed sets of a cocircuit file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocircuitList {
    pub rank: usize,
    pub n: usize,
    pub cocircuits: Vec<SignVector>,
}

pub fn parse_cocircuits(text: &str) -> Result<CocircuitList, ParseError> {
    let body = lines(text);
    let Some(header) = body.first() else {
        return Err(err(1, 1, "empty cocircuit file"));
    };
    if header.len() != 2 {
        return Err(err(
            header[0].line,
            header[0].column,
            "expected header `r n`",
        ));
    }
    let rank = parse_count(&header[0], "rank")?;
    let n = parse_count(&header[1], "ground set size")?;
    if n > grasstope_core::sign::MAX_GROUND {
        return Err(err(
            header[1].line,
            header[1].column,
            format!("ground set {n} exceeds 64"),
        ));
    }
    let mut cocircuits = Vec::new();
    for line in &body[1..] {
        let mut v = SignVector::zero(n).expect("bounded");
        for tok in line {
            let value: i64 = tok.text.parse().map_err(|_| {
                err(
                    tok.line,
                    tok.column,
                    format!("expected a signed index, found `{}`", tok.text),
                )
            })?;
            let e = value.unsigned_abs() as usize;
            if e == 0 || e > n {
                return Err(err(
                    tok.line,
                    tok.column,
                    format!("index {value} outside 1..{n}"),
                ));
            }
            if !v.get(e - 1).is_zero() {
                return Err(err(
                    tok.line,
                    tok.column,
                    format!("element {e} listed twice"),
                ));
            }
            v.set(e - 1, if value > 0 { Sign::Pos } else { Sign::Neg });
        }
        cocircuits.push(v);
    }
    if cocircuits.is_empty() {
        return Err(err(header[0].line + 1, 1, "no cocircuits listed"));
    }
    Ok(CocircuitList {
        rank,
        n,
        cocircuits,
    })
}

pub fn write_cocircuits(list: &CocircuitList) -> String {
    let mut out = format!("{} {}\n", list.rank, list.n);
    for c in &list.cocircuits {
        let _ = writeln!(out, "{}", c.to_signed_set_string());
    }
    out
}

/// A space-separated vector of rationals, e.g. a point `1 0 -1/2`.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>, ParseError> {
    let body = lines(text);
    body.iter()
        .flatten()
        .map(|t| parse_rational(t.text).map_err(|m| err(t.line, t.column, m)))
        .collect()
}
