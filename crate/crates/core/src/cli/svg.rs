//! Braid picture: parameter `t` on the horizontal axis, real parts of the
//! critical values as solid curves and imaginary parts as dashed curves.

use std::fmt::Write;

use crate::complex::rat_to_f64;
use crate::family::BraidData;
use crate::poly::{format_rat, Rat};

pub const WIDTH: f64 = 1000.0;
pub const HEIGHT: f64 = 600.0;
pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

const LEFT: f64 = 80.0;
const RIGHT: f64 = 960.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 540.0;

/// Renders the braid over `[lo, hi]` as a standalone SVG document.
pub fn braid_svg(b: &BraidData, interval: &(Rat, Rat), title: &str) -> String {
    let (t0, t1) = (rat_to_f64(&interval.0), rat_to_f64(&interval.1));
    let tspan = if t1 > t0 { t1 - t0 } else { 1.0 };
    let mut vmin = f64::INFINITY;
    let mut vmax = f64::NEG_INFINITY;
    for s in &b.strands {
        for p in &s.points {
            for v in [rat_to_f64(&p.center.re), rat_to_f64(&p.center.im)] {
                vmin = vmin.min(v);
                vmax = vmax.max(v);
            }
        }
    }
    if !vmin.is_finite() || !vmax.is_finite() {
        vmin = -1.0;
        vmax = 1.0;
    }
    if vmax - vmin < 1e-9 {
        vmin -= 1.0;
        vmax += 1.0;
    }
    let pad = (vmax - vmin) * 0.05;
    let (vmin, vmax) = (vmin - pad, vmax + pad);
    let sx = |t: f64| LEFT + (t - t0) / tspan * (RIGHT - LEFT);
    let sy = |v: f64| BOTTOM - (v - vmin) / (vmax - vmin) * (BOTTOM - TOP);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {} {}" width="{}" height="{}">"#,
        WIDTH, HEIGHT, WIDTH, HEIGHT
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, WIDTH, HEIGHT);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="30" font-family="monospace" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        r#"<path d="M {LEFT} {BOTTOM} L {RIGHT} {BOTTOM} M {LEFT} {BOTTOM} L {LEFT} {TOP}" stroke="black" fill="none"/>"#
    );
    if vmin < 0.0 && vmax > 0.0 {
        let _ = writeln!(
            out,
            r##"<path d="M {LEFT} {:.2} L {RIGHT} {:.2}" stroke="#cccccc" fill="none"/>"##,
            sy(0.0),
            sy(0.0)
        );
    }
    for (t, anchor) in [(&interval.0, LEFT), (&interval.1, RIGHT)] {
        let _ = writeln!(
            out,
            r#"<text x="{anchor}" y="{}" font-family="monospace" font-size="12" text-anchor="middle">t = {}</text>"#,
            BOTTOM + 20.0,
            format_rat(t)
        );
    }
    for (v, label) in [(vmin, format!("{:.3}", vmin)), (vmax, format!("{:.3}", vmax))] {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{:.2}" font-family="monospace" font-size="12" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            sy(v) + 4.0,
            label
        );
    }
    for e in &b.events {
        let x0 = sx(rat_to_f64(&e.lo));
        let x1 = sx(rat_to_f64(&e.hi)).max(x0 + 2.0);
        let _ = writeln!(
            out,
            r##"<rect x="{:.2}" y="{TOP}" width="{:.2}" height="{}" fill="#ff0000" fill-opacity="0.25" stroke="#ff0000"/>"##,
            x0 - 1.0,
            x1 - x0 + 2.0,
            BOTTOM - TOP
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{}" font-family="monospace" font-size="12" fill="#ff0000">{}</text>"##,
            x1 + 4.0,
            TOP + 14.0,
            e.kind.as_str()
        );
    }
    for (i, s) in b.strands.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path = |part: fn(&crate::family::StrandPoint) -> f64| {
            let mut d = String::new();
            for (j, p) in s.points.iter().enumerate() {
                let _ = write!(
                    d,
                    "{}{:.2} {:.2}",
                    if j == 0 { "M " } else { " L " },
                    sx(rat_to_f64(&p.t)),
                    sy(part(p))
                );
            }
            d
        };
        let re = path(|p| rat_to_f64(&p.center.re));
        let im = path(|p| rat_to_f64(&p.center.im));
        let _ = writeln!(out, r#"<path d="{}" stroke="{}" stroke-width="2" fill="none"/>"#, re, color);
        let _ = writeln!(
            out,
            r#"<path d="{}" stroke="{}" stroke-width="2" stroke-dasharray="6 4" fill="none"/>"#,
            im, color
        );
        if s.points.len() == 1 {
            let p = &s.points[0];
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#,
                sx(rat_to_f64(&p.t)),
                sy(rat_to_f64(&p.center.re)),
                color
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
