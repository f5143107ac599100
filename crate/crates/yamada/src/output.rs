//! CSV and SVG writers for zero scans and region grids.

use std::fmt::Write as _;
use std::io::Write;

use num_complex::Complex64;
use yamada_core::zeros::{RegionGrid, ScanReport};

pub const CSV_HEADER: [&str; 8] = ["family", "s", "n", "re", "im", "residual", "bkw_residual", "in_omega"];

/// One row per distinct root. An empty `bkw_residual` marks a point where
/// the equal-modulus test is singular.
pub fn write_scan_csv<W: Write>(out: W, reports: &[ScanReport]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        for root in &r.roots {
            w.write_record([
                r.family.name().to_string(),
                r.s.to_string(),
                r.n.to_string(),
                root.z.re.to_string(),
                root.z.im.to_string(),
                root.residual.to_string(),
                root.bkw_residual.map(|b| b.to_string()).unwrap_or_default(),
                root.in_omega.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One line per report: root count, worst residual, worst equal-modulus
/// residual outside the exclusion discs, and the share of roots in Ω.
pub fn scan_summary(reports: &[ScanReport]) -> String {
    let mut out = String::new();
    for r in reports {
        write!(out, "{} s={} n={}: ", r.family.name(), r.s, r.n).unwrap();
        if r.degenerate {
            out.push_str("degenerate, not scanned\n");
            continue;
        }
        let inside = r.roots.iter().filter(|x| x.in_omega).count();
        let bkw = r.max_bkw().map_or("n/a".to_string(), |b| format!("{b:.3e}"));
        writeln!(
            out,
            "{} roots, max residual {:.3e}, max bkw {}, {}/{} in omega",
            r.roots.len(),
            r.max_residual(),
            bkw,
            inside,
            r.roots.len()
        )
        .unwrap();
    }
    out
}

/// The grid as an SVG picture at `scale` pixels per unit: cells inside the
/// region as translucent rectangles (merged along rows), `roots` as
/// circles, and the coordinate axes where they cross the window.
pub fn region_svg(grid: &RegionGrid, scale: f64, roots: &[Complex64]) -> String {
    let (x0, x1) = grid.re;
    let (y0, y1) = grid.im;
    let width = (x1 - x0) * scale;
    let height = (y1 - y0) * scale;
    let cell_w = width / grid.resolution as f64;
    let cell_h = height / grid.resolution as f64;
    let px = |x: f64| (x - x0) * scale;
    let py = |y: f64| (y1 - y) * scale;

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.3} {height:.3}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(svg, r##"<g fill="#3465a4" fill-opacity="0.35" stroke="none">"##).unwrap();
    for row in 0..grid.resolution {
        let mut col = 0;
        while col < grid.resolution {
            if !grid.get(row, col) {
                col += 1;
                continue;
            }
            let start = col;
            while col < grid.resolution && grid.get(row, col) {
                col += 1;
            }
            writeln!(
                svg,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"/>"#,
                start as f64 * cell_w,
                row as f64 * cell_h,
                (col - start) as f64 * cell_w,
                cell_h
            )
            .unwrap();
        }
    }
    svg.push_str("</g>\n");
    writeln!(svg, r##"<g stroke="#555555" stroke-width="0.5">"##).unwrap();
    if x0 <= 0.0 && 0.0 <= x1 {
        writeln!(svg, r#"<line x1="{0:.3}" y1="0" x2="{0:.3}" y2="{height:.3}"/>"#, px(0.0)).unwrap();
    }
    if y0 <= 0.0 && 0.0 <= y1 {
        writeln!(svg, r#"<line x1="0" y1="{0:.3}" x2="{width:.3}" y2="{0:.3}"/>"#, py(0.0)).unwrap();
    }
    svg.push_str("</g>\n");
    if !roots.is_empty() {
        writeln!(svg, r##"<g fill="#cc0000" stroke="none">"##).unwrap();
        for z in roots.iter().filter(|z| (x0..=x1).contains(&z.re) && (y0..=y1).contains(&z.im)) {
            writeln!(svg, r#"<circle cx="{:.3}" cy="{:.3}" r="2"/>"#, px(z.re), py(z.im)).unwrap();
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    svg
}
