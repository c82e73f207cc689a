use grasstope::format::parse_matrix;
use grasstope::svg::{render, Chart, SvgError, SvgOptions};
use grasstope_core::grasstope::grasstope_topes;
use grasstope_core::{Rational, RationalMatrix};

fn fixture(name: &str) -> RationalMatrix {
    parse_matrix(
        &std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR")))
            .unwrap(),
    )
    .unwrap()
}

fn chart(rows: &[&[i64]], d: usize) -> Chart {
    Chart {
        p: RationalMatrix::from_i64(rows),
        dehomogenize: d,
    }
}

fn tame_chart() -> Chart {
    chart(&[&[-4, 0, 1], &[0, 1, 0], &[0, 0, 1]], 0)
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn tame_chart_affine_lines() {
    let d = render(&fixture("ex41.mat"), &tame_chart(), &SvgOptions::default()).unwrap();
    // (constant, x̃, ỹ) of each line. With x = (ỹ − 1)/4, y = x̃, z = ỹ, the form
    // l₄ = −x − 2y − 3z gives constant +1/4; the printed l̃₄ has −1/4, which
    // contradicts the printed projective form. The other four agree with print.
    let derived = [
        [frac(0, 1), frac(0, 1), frac(1, 1)],
        [frac(0, 1), frac(-1, 1), frac(0, 1)],
        [frac(-1, 4), frac(-1, 1), frac(-3, 4)],
        [frac(1, 4), frac(-2, 1), frac(-13, 4)],
        [frac(1, 2), frac(-1, 1), frac(-5, 2)],
    ];
    assert_eq!(d.forms, derived);
}

#[test]
fn wild_chart_gives_the_printed_affine_lines() {
    let d = render(
        &fixture("ex42.mat"),
        &chart(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]], 0),
        &SvgOptions::default(),
    )
    .unwrap();
    let i = |v: i64| frac(v, 1);
    let printed = [
        [i(2), i(-4), i(2)],
        [i(2), i(-5), i(2)],
        [i(0), i(-1), i(0)],
        [i(0), i(0), i(-1)],
        [i(2), i(-4), i(1)],
        [i(1), i(-1), i(0)],
    ];
    assert_eq!(d.forms, printed);
    // Shaded exactly where at least two signs change.
    for c in &d.cells {
        assert_eq!(c.shaded, c.tope.varbar() >= 2, "{}", c.signs);
    }
    assert_eq!(
        d.shaded_topes(),
        grasstope_topes(&fixture("ex42.mat"))
            .unwrap()
            .selected_count()
    );
}

#[test]
fn tame_picture_is_bounded_and_consistent() {
    let z = fixture("ex41.mat");
    let d = render(&z, &tame_chart(), &SvgOptions::default()).unwrap();
    let selected = grasstope_topes(&z).unwrap().selected_count();
    assert_eq!(d.drawn_lines(), 5);
    assert_eq!(d.shaded_cells(), selected);
    assert_eq!(d.shaded_topes(), selected);
    // Each projective region crossing infinity shows up twice.
    assert_eq!(d.cells.len(), 2 * 10 - 5);
    let ((x0, y0), (x1, y1)) = &d.viewport;
    for c in d.cells.iter().filter(|c| c.shaded) {
        for (x, y) in &c.polygon {
            assert!(
                x > x0 && x < x1 && y > y0 && y < y1,
                "shaded cell touches the frame"
            );
        }
    }
    let doc = &d.document;
    assert_eq!(doc.matches("class=\"cell shaded\"").count(), selected);
    assert_eq!(doc.matches("class=\"arrow\"").count(), 5);
    assert_eq!(doc.matches("<line data-line=").count(), 5);
    assert!(doc.contains("<g id=\"legend\""));
}

#[test]
fn output_is_deterministic() {
    let z = fixture("ex42.mat");
    let c = chart(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]], 0);
    let a = render(&z, &c, &SvgOptions::default()).unwrap().document;
    let b = render(&z.clone(), &c.clone(), &SvgOptions::default())
        .unwrap()
        .document;
    assert_eq!(a, b);
    assert!(!a.contains("NaN") && !a.contains("inf"));
}

#[test]
fn every_region_appears_in_the_full_fixture() {
    let z = fixture("vandermonde6_neg24.mat");
    let d = render(
        &z,
        &Chart::standard(),
        &SvgOptions {
            allow_unbounded: true,
            ..SvgOptions::default()
        },
    )
    .unwrap();
    assert_eq!(d.shaded_topes(), 16);
    assert!(d.cells.iter().all(|c| c.shaded));
}

#[test]
fn chart_errors() {
    let z = fixture("ex41.mat");
    let singular = chart(&[&[1, 0, 0], &[1, 0, 0], &[0, 0, 1]], 0);
    assert!(matches!(
        render(&z, &singular, &SvgOptions::default()),
        Err(SvgError::SingularChart)
    ));
    // Dehomogenizing by z sends l1 = z to infinity.
    let at_infinity = chart(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 2);
    assert!(matches!(
        render(&z, &at_infinity, &SvgOptions::default()),
        Err(SvgError::LineAtInfinity(1))
    ));
    let allowed = render(
        &z,
        &at_infinity,
        &SvgOptions {
            allow_unbounded: true,
            ..SvgOptions::default()
        },
    )
    .unwrap();
    assert_eq!(allowed.drawn_lines(), 4);
    assert_eq!(
        allowed.shaded_topes(),
        grasstope_topes(&z).unwrap().selected_count()
    );
    let wide = fixture("ex43.mat");
    let flat = RationalMatrix::from_fn(6, 4, |i, j| {
        if j < 3 {
            wide[(i, j)].clone()
        } else {
            Rational::from_integer(i.into())
        }
    });
    assert!(matches!(
        render(&flat, &Chart::standard(), &SvgOptions::default()),
        Err(SvgError::NotPlanar(3))
    ));
}
