//! Minimal ratio-versus-t line chart with a logarithmic t axis.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(name: &str, points: Vec<(f64, f64)>) -> Self {
        Series { name: name.to_string(), points }
    }
}

fn num(x: f64) -> String {
    format!("{x:.2}")
}

/// Points with t ≤ 0 or non-finite coordinates are skipped.
pub fn render(title: &str, series: &[Series]) -> String {
    let pts: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .filter(|(t, y)| *t > 0.0 && t.is_finite() && y.is_finite())
        .collect();
    let (mut x0, mut x1) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (t, _)| {
        let l = t.log10();
        (a.min(l), b.max(l))
    });
    let (mut y0, mut y1) = pts.iter().fold((0.0f64, f64::NEG_INFINITY), |(a, b), (_, y)| (a.min(*y), b.max(*y)));
    if pts.is_empty() {
        (x0, x1, y0, y1) = (-1.0, 0.0, 0.0, 1.0);
    }
    x0 = x0.floor();
    x1 = x1.ceil().max(x0 + 1.0);
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    y1 += 0.05 * (y1 - y0);
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |t: f64| LEFT + (t.log10() - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="18" text-anchor="middle">{}</text>"#, num(LEFT + pw / 2.0), escape(title));
    let _ = writeln!(
        s,
        r#"<path d="M{l} {t} V{b} H{r}" fill="none" stroke="black"/>"#,
        l = num(LEFT),
        t = num(TOP),
        b = num(TOP + ph),
        r = num(LEFT + pw)
    );
    let mut e = x0 as i32;
    while e as f64 <= x1 {
        let x = sx(10f64.powi(e));
        let _ = writeln!(
            s,
            r#"<line x1="{x}" y1="{b}" x2="{x}" y2="{b2}" stroke="black"/><text x="{x}" y="{ty}" text-anchor="middle">1e{e}</text>"#,
            x = num(x),
            b = num(TOP + ph),
            b2 = num(TOP + ph + 5.0),
            ty = num(TOP + ph + 20.0)
        );
        e += 1;
    }
    for k in 0..=4 {
        let y = y0 + (y1 - y0) * k as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<line x1="{l2}" y1="{py}" x2="{l}" y2="{py}" stroke="black"/><text x="{tx}" y="{ty}" text-anchor="end">{v}</text>"#,
            l2 = num(LEFT - 5.0),
            l = num(LEFT),
            py = num(sy(y)),
            tx = num(LEFT - 8.0),
            ty = num(sy(y) + 4.0),
            v = format_tick(y)
        );
    }
    let _ =
        writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">t</text>"#, num(LEFT + pw / 2.0), num(HEIGHT - 8.0));
    let _ = writeln!(
        s,
        r#"<text x="16" y="{y}" text-anchor="middle" transform="rotate(-90 16 {y})">ratio</text>"#,
        y = num(TOP + ph / 2.0)
    );
    for (i, series) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> = series
            .points
            .iter()
            .filter(|(t, y)| *t > 0.0 && t.is_finite() && y.is_finite())
            .map(|&(t, y)| format!("{},{}", num(sx(t)), num(sy(y))))
            .collect();
        if !coords.is_empty() {
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                coords.join(" ")
            );
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = LEFT + pw + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{a}" y1="{y}" x2="{b}" y2="{y}" stroke="{color}" stroke-width="2"/><text x="{c}" y="{ty}">{n}</text>"#,
            a = num(lx),
            b = num(lx + 20.0),
            c = num(lx + 26.0),
            y = num(ly),
            ty = num(ly + 4.0),
            n = escape(&series.name)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn format_tick(y: f64) -> String {
    let s = format!("{y:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
