//! Four-panel SVG of a profile: normalized ρ, u, T and raw Π against ξ.

use std::fmt::Write as _;

use crate::profile_csv::ProfileTable;

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 240.0;
const MARGIN: f64 = 52.0;

struct Panel<'a> {
    title: &'a str,
    values: Vec<f64>,
}

/// Render the table as a standalone SVG document.
pub fn render_svg(table: &ProfileTable) -> String {
    let xi: Vec<f64> = table.rows.iter().map(|r| r.xi).collect();
    let panels = [
        Panel {
            title: "normalized density",
            values: table.rows.iter().map(|r| r.rho_norm).collect(),
        },
        Panel {
            title: "normalized velocity",
            values: table.rows.iter().map(|r| r.u_norm).collect(),
        },
        Panel {
            title: "normalized temperature",
            values: table.rows.iter().map(|r| r.temperature_norm).collect(),
        },
        Panel {
            title: "dynamic pressure",
            values: table.rows.iter().map(|r| r.pi).collect(),
        },
    ];
    let width = 2.0 * (PANEL_W + 2.0 * MARGIN);
    let height = 2.0 * (PANEL_H + 2.0 * MARGIN) + 30.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let m = &table.meta;
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">M0 = {}, alpha = {}, s* = {}, alpha* = {}</text>"#,
        width / 2.0,
        m.mach0,
        m.alpha,
        m.s_star,
        m.alpha_star
    );
    for (k, panel) in panels.iter().enumerate() {
        let ox = (k % 2) as f64 * (PANEL_W + 2.0 * MARGIN) + MARGIN;
        let oy = (k / 2) as f64 * (PANEL_H + 2.0 * MARGIN) + MARGIN + 30.0;
        draw_panel(&mut svg, ox, oy, &xi, panel);
    }
    svg.push_str("</svg>\n");
    svg
}

fn range(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(lo.is_finite() && hi.is_finite()) {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 * (1.0 + hi.abs()) {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn draw_panel(svg: &mut String, ox: f64, oy: f64, xi: &[f64], panel: &Panel<'_>) {
    let (x0, x1) = range(xi);
    let (y0, y1) = range(&panel.values);
    let px = |x: f64| ox + (x - x0) / (x1 - x0) * PANEL_W;
    let py = |y: f64| oy + PANEL_H - (y - y0) / (y1 - y0) * PANEL_H;
    let _ = writeln!(
        svg,
        r#"<rect x="{ox}" y="{oy}" width="{PANEL_W}" height="{PANEL_H}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        ox + PANEL_W / 2.0,
        oy - 8.0,
        panel.title
    );
    for t in 0..=4 {
        let fx = x0 + (x1 - x0) * t as f64 / 4.0;
        let fy = y0 + (y1 - y0) * t as f64 / 4.0;
        let (sx, sy) = (px(fx), py(fy));
        let _ = writeln!(
            svg,
            r#"<line x1="{sx:.2}" y1="{:.2}" x2="{sx:.2}" y2="{:.2}" stroke="black"/><text x="{sx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            oy + PANEL_H,
            oy + PANEL_H + 4.0,
            oy + PANEL_H + 16.0,
            tick(fx)
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{sy:.2}" x2="{ox:.2}" y2="{sy:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            ox - 4.0,
            ox - 6.0,
            sy + 4.0,
            tick(fy)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">xi</text>"#,
        ox + PANEL_W / 2.0,
        oy + PANEL_H + 32.0
    );
    let mut path = String::new();
    for (k, (&x, &y)) in xi.iter().zip(&panel.values).enumerate() {
        let _ = write!(
            path,
            "{}{:.2},{:.2} ",
            if k == 0 { "M" } else { "L" },
            px(x),
            py(y)
        );
    }
    let _ = writeln!(
        svg,
        r#"<path d="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
        path.trim_end()
    );
}

fn tick(v: f64) -> String {
    if v == 0.0 || (1e-3..1e4).contains(&v.abs()) {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.1e}")
    }
}
