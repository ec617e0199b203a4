//! Static SVG figures. Coordinates are printed with fixed precision so the
//! same input always yields the same bytes.

use std::fmt::Write;

use hypermds::Configuration;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 20.0;

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn disk_xy(re: f64, im: f64) -> (f64, f64) {
    let r = SIZE / 2.0 - MARGIN;
    (SIZE / 2.0 + r * re, SIZE / 2.0 - r * im)
}

/// Unit circle with the points of `frames`. A single frame is drawn solid;
/// with several, each point's trajectory is drawn, the first frame hollow and
/// the last solid.
pub fn disk(frames: &[Configuration]) -> String {
    let mut out = String::new();
    header(&mut out, SIZE, SIZE);
    let (cx, cy) = disk_xy(0.0, 0.0);
    let _ = writeln!(
        out,
        r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="none" stroke="black" stroke-width="1"/>"#,
        SIZE / 2.0 - MARGIN
    );
    let (Some(first), Some(last)) = (frames.first(), frames.last()) else {
        out.push_str("</svg>\n");
        return out;
    };
    if frames.len() > 1 {
        for i in 0..first.len() {
            let pts = frames
                .iter()
                .map(|f| {
                    let (x, y) = disk_xy(f[i].re(), f[i].im());
                    format!("{x:.3},{y:.3}")
                })
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                out,
                r#"<polyline points="{pts}" fill="none" stroke="gray" stroke-width="0.8"/>"#
            );
        }
        for p in first.iter() {
            let (x, y) = disk_xy(p.re(), p.im());
            let _ = writeln!(
                out,
                r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="white" stroke="black" stroke-width="1"/>"#
            );
        }
    }
    for p in last.iter() {
        let (x, y) = disk_xy(p.re(), p.im());
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="black"/>"#
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Polyline of `(scale, error)` pairs over a logarithmic scale axis.
pub fn curve(points: &[(f64, f64)]) -> String {
    let (w, h, left, bottom) = (640.0, 400.0, 70.0, 50.0);
    let mut out = String::new();
    header(&mut out, w, h);
    let plot_w = w - left - MARGIN;
    let plot_h = h - bottom - MARGIN;
    let _ = writeln!(
        out,
        r#"<rect x="{left:.0}" y="{MARGIN:.0}" width="{plot_w:.0}" height="{plot_h:.0}" fill="none" stroke="black"/>"#
    );
    let finite: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(a, e)| a > 0.0 && e.is_finite())
        .collect();
    if finite.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let lx: Vec<f64> = finite.iter().map(|p| p.0.log10()).collect();
    let (x0, x1) = span(&lx);
    let (y0, y1) = span(&finite.iter().map(|p| p.1).collect::<Vec<_>>());
    let y0 = y0.min(0.0);
    let sx = |v: f64| left + plot_w * (v - x0) / (x1 - x0);
    let sy = |v: f64| MARGIN + plot_h * (1.0 - (v - y0) / (y1 - y0));

    for decade in x0.ceil() as i32..=x1.floor() as i32 {
        let x = sx(decade as f64);
        let _ = writeln!(
            out,
            r#"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="black"/>"#,
            h - bottom,
            h - bottom + 5.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{x:.3}" y="{:.3}" font-size="12" text-anchor="middle">1e{decade}</text>"#,
            h - bottom + 20.0
        );
    }
    for i in 0..=4 {
        let v = y0 + (y1 - y0) * i as f64 / 4.0;
        let y = sy(v);
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{y:.3}" font-size="12" text-anchor="end">{v:.3e}</text>"#,
            left - 6.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}" font-size="13" text-anchor="middle">scaling factor a</text>"#,
        left + plot_w / 2.0,
        h - 10.0
    );
    let pts = finite
        .iter()
        .zip(&lx)
        .map(|(&(_, e), &x)| format!("{:.3},{:.3}", sx(x), sy(e)))
        .collect::<Vec<_>>();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        pts.join(" ")
    );
    for p in &pts {
        let (x, y) = p.split_once(',').expect("formatted pair");
        let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="2.5" fill="black"/>"#);
    }
    out.push_str("</svg>\n");
    out
}

/// Range of `v`, widened when degenerate.
fn span(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}
