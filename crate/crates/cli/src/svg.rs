//! Minimal deterministic SVG 1.1 line plots.

use std::fmt::Write;

use crate::curve::Curve;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub width: u32,
    pub height: u32,
    pub margin: u32,
    pub ticks: usize,
    pub palette: Vec<&'static str>,
}

impl Default for Style {
    fn default() -> Self {
        Self {
            width: 640,
            height: 420,
            margin: 64,
            ticks: 5,
            palette: vec!["#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad"],
        }
    }
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if hi > lo {
        (lo, hi)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.5 * lo.abs() };
        (lo - pad, hi + pad)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// One path per series column, axes with ticks, labels from the header.
pub fn render_svg(curve: &Curve, style: &Style) -> Result<String, CliError> {
    if curve.rows.is_empty() {
        return Err(CliError::Render("cannot plot an empty curve".into()));
    }
    if curve.header.len() < 2 {
        return Err(CliError::Render(
            "a curve needs an abscissa and at least one series".into(),
        ));
    }
    let (w, h, m) = (style.width as f64, style.height as f64, style.margin as f64);
    let (x0, x1) = range(curve.rows.iter().map(|r| r[0]));
    let (y0, y1) = range(curve.rows.iter().flat_map(|r| r[1..].iter().copied()));
    let px = |x: f64| m + (x - x0) / (x1 - x0) * (w - 2.0 * m);
    let py = |y: f64| h - m - (y - y0) / (y1 - y0) * (h - 2.0 * m);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        style.width, style.height, style.width, style.height
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        style.width, style.height
    );
    let _ = writeln!(
        s,
        r#"<polyline points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" stroke="black" stroke-width="1" fill="none"/>"#,
        m,
        m,
        m,
        h - m,
        w - m,
        h - m
    );

    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="11" fill="black">"#
    );
    for i in 0..=style.ticks {
        let f = i as f64 / style.ticks as f64;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (tx, ty) = (px(xv), py(yv));
        let _ = writeln!(
            s,
            r#"<line x1="{tx:.2}" y1="{:.2}" x2="{tx:.2}" y2="{:.2}" stroke="black"/>"#,
            h - m,
            h - m + 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{tx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            h - m + 18.0,
            tick_label(xv)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{ty:.2}" x2="{m:.2}" y2="{ty:.2}" stroke="black"/>"#,
            m - 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            m - 8.0,
            ty + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{}</text>"#,
        w / 2.0,
        h - 16.0,
        escape(&curve.header[0])
    );
    let ylabel = curve.header[1..]
        .iter()
        .map(|n| escape(n))
        .collect::<Vec<_>>()
        .join(", ");
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 16 {:.2})">{ylabel}</text>"#,
        h / 2.0,
        h / 2.0
    );
    let _ = writeln!(s, "</g>");

    for (col, name) in curve.header.iter().enumerate().skip(1) {
        let color = style.palette[(col - 1) % style.palette.len()];
        let mut d = String::new();
        for (i, row) in curve.rows.iter().enumerate() {
            let _ = write!(
                d,
                "{}{:.2},{:.2}",
                if i == 0 { "M" } else { " L" },
                px(row[0]),
                py(row[col])
            );
        }
        let _ = writeln!(
            s,
            r#"<path d="{d}" stroke="{color}" stroke-width="1.5" fill="none"><title>{}</title></path>"#,
            escape(name)
        );
        let ly = m - 24.0 + 14.0 * (col - 1) as f64;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{ly:.2}" font-family="sans-serif" font-size="11" fill="{color}" text-anchor="end">{}</text>"#,
            w - m,
            escape(name)
        );
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e4).contains(&a) {
        format!("{v:.2e}")
    } else {
        let t = format!("{v:.3}");
        let t = t.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".into()
        } else {
            t.to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(cols: usize) -> Curve {
        let names = ["x", "a", "b", "c"];
        let rows = (0..5)
            .map(|i| (0..cols).map(|c| i as f64 * (c + 1) as f64).collect())
            .collect();
        Curve::new(&names[..cols], rows).unwrap()
    }

    #[test]
    fn one_path_per_series() {
        let style = Style::default();
        assert_eq!(
            render_svg(&curve(2), &style)
                .unwrap()
                .matches("<path d=\"M")
                .count(),
            1
        );
        assert_eq!(
            render_svg(&curve(3), &style)
                .unwrap()
                .matches("<path d=\"M")
                .count(),
            2
        );
    }

    #[test]
    fn deterministic() {
        let c = curve(3);
        assert_eq!(
            render_svg(&c, &Style::default()).unwrap(),
            render_svg(&c, &Style::default()).unwrap()
        );
    }

    #[test]
    fn empty_is_an_error() {
        let c = Curve::new(&["x", "y"], vec![]).unwrap();
        assert!(render_svg(&c, &Style::default()).is_err());
    }

    #[test]
    fn flat_series_still_renders() {
        let c = Curve::new(&["x", "y"], vec![vec![0.0, 2.0], vec![1.0, 2.0]]).unwrap();
        let s = render_svg(&c, &Style::default()).unwrap();
        assert!(!s.contains("NaN"));
    }

    #[test]
    fn labels() {
        assert_eq!(tick_label(0.5), "0.5");
        assert_eq!(tick_label(0.0), "0");
        assert_eq!(tick_label(1e-5), "1.00e-5");
    }
}
