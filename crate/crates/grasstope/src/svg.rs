//! SVG pictures of `k = 2` Grasstopes in an affine chart.
//!
//! A chart is an invertible `3 × 3` matrix `P` (new coordinates `u = P x`)
//! together with the coordinate `u_d` that is set to 1. Each twistor form
//! `l_i` becomes an affine function on the chart; the viewport is the
//! bounding box of all pairwise intersection points plus a 10% margin, and
//! the cells are cut out of it exactly. A cell is shaded when its
//! projective region belongs to the Grasstope. Arrowheads point to the side
//! where `l_i > 0`.
//!
//! Output is a pure function of `Z`, the chart and the options: coordinates
//! print with three decimals and elements appear in a fixed order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use grasstope_core::grassmann::TwistorArrangement;
use grasstope_core::grasstope::grasstope_topes;
use grasstope_core::linalg::rational_sign;
use grasstope_core::{Rational, RationalMatrix, Sign, SignVector};
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, thiserror::Error)]
pub enum SvgError {
    #[error(transparent)]
    Core(#[from] grasstope_core::Error),
    #[error("pictures need k = 2 (Z with 3 columns), got k = {0}")]
    NotPlanar(usize),
    #[error("the chart matrix must be an invertible 3x3 matrix")]
    SingularChart,
    #[error("dehomogenizing coordinate {0} is not one of 1, 2, 3")]
    BadCoordinate(usize),
    #[error("the chart sends line {0} to infinity; pass --allow-unbounded to draw without it")]
    LineAtInfinity(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub p: RationalMatrix,
    /// 0-based coordinate of `P x` that is set to 1.
    pub dehomogenize: usize,
}

impl Chart {
    pub fn standard() -> Self {
        Self {
            p: RationalMatrix::identity(3),
            dehomogenize: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    pub allow_unbounded: bool,
    pub labels: bool,
    /// Pixel size of the longer side of the viewport.
    pub size: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            allow_unbounded: false,
            labels: true,
            size: 600.0,
        }
    }
}

type Point = (Rational, Rational);

#[derive(Debug, Clone)]
pub struct Cell {
    /// Signs of the forms on the cell for the representative `u_d = 1`.
    pub signs: SignVector,
    /// The projective region: `signs` up to negation.
    pub tope: SignVector,
    pub shaded: bool,
    pub polygon: Vec<Point>,
}

#[derive(Debug, Clone)]
pub struct Drawing {
    /// Affine forms `c + a x̃ + b ỹ` as `(c, a, b)`; `a = b = 0` for a line at infinity.
    pub forms: Vec<[Rational; 3]>,
    pub cells: Vec<Cell>,
    pub viewport: (Point, Point),
    pub document: String,
}

impl Drawing {
    pub fn shaded_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.shaded).count()
    }

    pub fn shaded_topes(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| c.shaded)
            .map(|c| c.tope)
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn drawn_lines(&self) -> usize {
        self.forms.iter().filter(|f| !is_at_infinity(f)).count()
    }
}

fn is_at_infinity(f: &[Rational; 3]) -> bool {
    f[1].is_zero() && f[2].is_zero()
}

fn eval(f: &[Rational; 3], p: &Point) -> Rational {
    &f[0] + &f[1] * &p.0 + &f[2] * &p.1
}

/// The affine form of each twistor form in the chart.
pub fn affine_forms(
    arrangement: &TwistorArrangement,
    chart: &Chart,
) -> Result<Vec<[Rational; 3]>, SvgError> {
    if chart.p.rows() != 3 || chart.p.cols() != 3 {
        return Err(SvgError::SingularChart);
    }
    if chart.dehomogenize > 2 {
        return Err(SvgError::BadCoordinate(chart.dehomogenize + 1));
    }
    let inv = chart.p.inverse().ok_or(SvgError::SingularChart)?;
    let d = chart.dehomogenize;
    let (o0, o1) = match d {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let forms = arrangement.forms();
    Ok((0..forms.rows())
        .map(|i| {
            let h = inv.left_mul_vec(forms.row(i)).expect("3 columns");
            [h[d].clone(), h[o0].clone(), h[o1].clone()]
        })
        .collect())
}

fn intersection(f: &[Rational; 3], g: &[Rational; 3]) -> Option<Point> {
    let det = &f[1] * &g[2] - &f[2] * &g[1];
    if det.is_zero() {
        return None;
    }
    let x = (&f[2] * &g[0] - &f[0] * &g[2]) / &det;
    let y = (&f[0] * &g[1] - &f[1] * &g[0]) / &det;
    Some((x, y))
}

fn viewport(forms: &[[Rational; 3]]) -> (Point, Point) {
    let finite: Vec<&[Rational; 3]> = forms.iter().filter(|f| !is_at_infinity(f)).collect();
    let mut points = Vec::new();
    for (i, f) in finite.iter().enumerate() {
        let mut crossed = false;
        for (j, g) in finite.iter().enumerate() {
            if let Some(p) = (i != j).then(|| intersection(f, g)).flatten() {
                crossed = true;
                if i < j {
                    points.push(p);
                }
            }
        }
        if !crossed {
            // Parallel to every other line: keep its foot point in view.
            let norm = &f[1] * &f[1] + &f[2] * &f[2];
            let t = -&f[0] / norm;
            points.push((&f[1] * &t, &f[2] * &t));
        }
    }
    if points.is_empty() {
        points.push((Rational::zero(), Rational::zero()));
    }
    let min =
        |sel: fn(&Point) -> &Rational| points.iter().map(sel).min().expect("nonempty").clone();
    let max =
        |sel: fn(&Point) -> &Rational| points.iter().map(sel).max().expect("nonempty").clone();
    let (x0, x1, y0, y1) = (min(|p| &p.0), max(|p| &p.0), min(|p| &p.1), max(|p| &p.1));
    let one = Rational::from_integer(1.into());
    let tenth = Rational::new(1.into(), 10.into());
    let pad = |lo: &Rational, hi: &Rational| {
        let w = hi - lo;
        if w.is_zero() {
            one.clone()
        } else {
            w * &tenth
        }
    };
    let (px, py) = (pad(&x0, &x1), pad(&y0, &y1));
    ((x0 - &px, y0 - &py), (x1 + px, y1 + py))
}

fn area2(poly: &[Point]) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        acc += &a.0 * &b.1 - &b.0 * &a.1;
    }
    acc
}

/// The parts of a convex polygon where `f ≥ 0` and where `f ≤ 0`.
fn split(poly: &[Point], f: &[Rational; 3]) -> (Vec<Point>, Vec<Point>) {
    let values: Vec<Rational> = poly.iter().map(|p| eval(f, p)).collect();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let (vi, vj) = (&values[i], &values[j]);
        if !vi.is_negative() {
            pos.push(poly[i].clone());
        }
        if !vi.is_positive() {
            neg.push(poly[i].clone());
        }
        if (vi.is_positive() && vj.is_negative()) || (vi.is_negative() && vj.is_positive()) {
            let t = vi / (vi - vj);
            let p = (
                &poly[i].0 + (&poly[j].0 - &poly[i].0) * &t,
                &poly[i].1 + (&poly[j].1 - &poly[i].1) * &t,
            );
            pos.push(p.clone());
            neg.push(p);
        }
    }
    (pos, neg)
}

fn nondegenerate(poly: &[Point]) -> bool {
    poly.len() >= 3 && !area2(poly).is_zero()
}

/// Exact cell decomposition of the viewport by the finite lines.
fn cells(forms: &[[Rational; 3]], view: &(Point, Point)) -> Vec<(Vec<Option<Sign>>, Vec<Point>)> {
    let ((x0, y0), (x1, y1)) = view;
    let rect = vec![
        (x0.clone(), y0.clone()),
        (x1.clone(), y0.clone()),
        (x1.clone(), y1.clone()),
        (x0.clone(), y1.clone()),
    ];
    let mut out = vec![(vec![None; forms.len()], rect)];
    for (i, f) in forms.iter().enumerate() {
        if is_at_infinity(f) {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * 2);
        for (signs, poly) in out {
            let (pos, neg) = split(&poly, f);
            for (part, s) in [(pos, Sign::Pos), (neg, Sign::Neg)] {
                if nondegenerate(&part) {
                    let mut signs = signs.clone();
                    signs[i] = Some(s);
                    next.push((signs, part));
                }
            }
        }
        out = next;
    }
    out
}

const COLORS: &[&str] = &[
    "#d62728", "#ff7f0e", "#e6c619", "#2ca02c", "#1f77b4", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#17becf",
];

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn f64_of(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

struct Frame {
    x0: f64,
    y1: f64,
    scale: f64,
    margin: f64,
}

impl Frame {
    fn px(&self, p: &Point) -> (f64, f64) {
        (
            self.margin + (f64_of(&p.0) - self.x0) * self.scale,
            self.margin + (self.y1 - f64_of(&p.1)) * self.scale,
        )
    }
}

/// The segment of a line inside the viewport.
fn clip_line(f: &[Rational; 3], view: &(Point, Point)) -> Option<(Point, Point)> {
    let ((x0, y0), (x1, y1)) = view;
    let mut hits: Vec<Point> = Vec::new();
    if !f[2].is_zero() {
        for x in [x0, x1] {
            let y = -(&f[0] + &f[1] * x) / &f[2];
            if &y >= y0 && &y <= y1 {
                hits.push((x.clone(), y));
            }
        }
    }
    if !f[1].is_zero() {
        for y in [y0, y1] {
            let x = -(&f[0] + &f[2] * y) / &f[1];
            if &x >= x0 && &x <= x1 {
                hits.push((x, y.clone()));
            }
        }
    }
    hits.sort();
    hits.dedup();
    (hits.len() >= 2).then(|| (hits[0].clone(), hits[hits.len() - 1].clone()))
}

pub fn render(
    z: &RationalMatrix,
    chart: &Chart,
    options: &SvgOptions,
) -> Result<Drawing, SvgError> {
    if z.cols() != 3 {
        return Err(SvgError::NotPlanar(z.cols().saturating_sub(1)));
    }
    let regions = grasstope_topes(z)?;
    let selected: BTreeSet<SignVector> = regions.selected().map(|r| r.signs).collect();
    let forms = affine_forms(&regions.arrangement, chart)?;
    if let Some(i) = forms.iter().position(is_at_infinity) {
        if !options.allow_unbounded {
            return Err(SvgError::LineAtInfinity(i + 1));
        }
    }
    let view = viewport(&forms);
    let n = forms.len();
    let mut out_cells = Vec::new();
    for (partial, polygon) in cells(&forms, &view) {
        let mut signs = SignVector::zero(n)?;
        for (i, s) in partial.iter().enumerate() {
            let s = s.unwrap_or_else(|| rational_sign(&forms[i][0]));
            signs.set(i, s);
        }
        let tope = signs.canonical();
        out_cells.push(Cell {
            signs,
            tope,
            shaded: selected.contains(&tope),
            polygon,
        });
    }

    let ((vx0, vy0), (vx1, vy1)) = &view;
    let (w, h) = (f64_of(&(vx1 - vx0)), f64_of(&(vy1 - vy0)));
    let frame = Frame {
        x0: f64_of(vx0),
        y1: f64_of(vy1),
        scale: options.size / w.max(h),
        margin: 20.0,
    };
    let legend_w = 140.0;
    let width = w * frame.scale + 2.0 * frame.margin + legend_w;
    let height = (h * frame.scale + 2.0 * frame.margin).max(40.0 + 18.0 * n as f64);

    let mut doc = String::new();
    doc.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        doc,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        num(width),
        num(height),
        num(width),
        num(height)
    );
    let _ = writeln!(
        doc,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"#bbbbbb\"/>",
        num(frame.margin),
        num(frame.margin),
        num(w * frame.scale),
        num(h * frame.scale)
    );
    doc.push_str("<g id=\"cells\">\n");
    for c in &out_cells {
        let pts: Vec<String> = c
            .polygon
            .iter()
            .map(|p| {
                let (x, y) = frame.px(p);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(
            doc,
            "<polygon class=\"cell{}\" data-signs=\"{}\" data-tope=\"{}\" data-shaded=\"{}\" points=\"{}\" fill=\"{}\" stroke=\"none\"/>",
            if c.shaded { " shaded" } else { "" },
            c.signs,
            c.tope,
            c.shaded,
            pts.join(" "),
            if c.shaded { "#9ecae1" } else { "none" }
        );
    }
    doc.push_str("</g>\n<g id=\"lines\">\n");
    for (i, f) in forms.iter().enumerate() {
        let Some((a, b)) = clip_line(f, &view) else {
            continue;
        };
        let color = COLORS[i % COLORS.len()];
        let (ax, ay) = frame.px(&a);
        let (bx, by) = frame.px(&b);
        let _ = writeln!(
            doc,
            "<line data-line=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            i + 1,
            num(ax),
            num(ay),
            num(bx),
            num(by)
        );
        // Positive side in pixel space: the gradient with y flipped.
        let (gx, gy) = (f64_of(&f[1]), -f64_of(&f[2]));
        let norm = (gx * gx + gy * gy).sqrt();
        let (nx, ny) = (gx / norm, gy / norm);
        let (mx, my) = ((ax + bx) / 2.0, (ay + by) / 2.0);
        let tip = (mx + 14.0 * nx, my + 14.0 * ny);
        let left = (mx - 5.0 * ny, my + 5.0 * nx);
        let right = (mx + 5.0 * ny, my - 5.0 * nx);
        let _ = writeln!(
            doc,
            "<polygon class=\"arrow\" data-line=\"{}\" points=\"{},{} {},{} {},{}\" fill=\"{color}\"/>",
            i + 1,
            num(left.0),
            num(left.1),
            num(tip.0),
            num(tip.1),
            num(right.0),
            num(right.1)
        );
    }
    doc.push_str("</g>\n");
    if options.labels {
        doc.push_str(
            "<g id=\"labels\" font-family=\"monospace\" font-size=\"9\" text-anchor=\"middle\">\n",
        );
        for c in &out_cells {
            let k = Rational::from_integer((c.polygon.len() as i64).into());
            let sx: Rational = c.polygon.iter().map(|p| p.0.clone()).sum::<Rational>() / &k;
            let sy: Rational = c.polygon.iter().map(|p| p.1.clone()).sum::<Rational>() / &k;
            let (x, y) = frame.px(&(sx, sy));
            let _ = writeln!(
                doc,
                "<text x=\"{}\" y=\"{}\">{}</text>",
                num(x),
                num(y),
                c.signs
            );
        }
        doc.push_str("</g>\n");
    }
    let lx = w * frame.scale + 2.0 * frame.margin + 10.0;
    doc.push_str("<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n");
    for (i, f) in forms.iter().enumerate() {
        let y = frame.margin + 18.0 * i as f64 + 6.0;
        let color = COLORS[i % COLORS.len()];
        let note = if is_at_infinity(f) {
            " (at infinity)"
        } else {
            ""
        };
        let _ = writeln!(
            doc,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"3\"/><text x=\"{}\" y=\"{}\">l{}{note}</text>",
            num(lx),
            num(y),
            num(lx + 24.0),
            num(y),
            num(lx + 30.0),
            num(y + 4.0),
            i + 1
        );
    }
    let y = frame.margin + 18.0 * n as f64 + 10.0;
    let _ = writeln!(
        doc,
        "<rect x=\"{}\" y=\"{}\" width=\"24\" height=\"10\" fill=\"#9ecae1\"/><text x=\"{}\" y=\"{}\">var&#772; &#8805; 2</text>",
        num(lx),
        num(y - 5.0),
        num(lx + 30.0),
        num(y + 4.0)
    );
    doc.push_str("</g>\n</svg>\n");

    Ok(Drawing {
        forms,
        cells: out_cells,
        viewport: view,
        document: doc,
    })
}
