//! SVG picture of the hyperplanes `(v₀ + x·b¹ + y·b²)_i = 0` of a rank-2 lattice.
//!
//! Cells of the arrangement that contain a lattice point off every line are
//! labelled with its negative support. Floating point is used for drawing only.

use std::collections::BTreeMap;
use std::fmt::Write;

use gkz_core::frobenius::format_set;
use gkz_core::lattice::{lattice_points, LatticeBasis};
use gkz_core::support::{fake_exponents, nsupp, offset, support_classes};
use gkz_core::Rational;
use num_traits::{ToPrimitive, Zero};

use crate::config::ProblemConfig;
use crate::error::{CliError, CliResult};

const SCALE: f64 = 40.0;

fn f(x: &Rational) -> f64 {
    x.to_f64().expect("finite")
}

/// Clips `c + a·x + b·y = 0` to the square `|x|, |y| ≤ r`.
fn clip(c: f64, a: f64, b: f64, r: f64) -> Option<((f64, f64), (f64, f64))> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    if b != 0.0 {
        for x in [-r, r] {
            let y = -(c + a * x) / b;
            if y.abs() <= r + 1e-9 {
                pts.push((x, y));
            }
        }
    }
    if a != 0.0 {
        for y in [-r, r] {
            let x = -(c + b * y) / a;
            if x.abs() <= r + 1e-9 {
                pts.push((x, y));
            }
        }
    }
    pts.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    pts.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9);
    match pts.as_slice() {
        [p, .., q] => Some((*p, *q)),
        _ => None,
    }
}

/// The region plot for `v0 + L`, or an error when the lattice is not of rank 2.
pub fn emit_region_plot(v0: &[Rational], b: &LatticeBasis, w: &[Rational], radius: i64) -> CliResult<String> {
    if b.h() != 2 {
        return Err(CliError::Config(format!("region plots need a rank-2 lattice, this one has rank {}", b.h())));
    }
    let r = radius.max(0) as f64 + 0.5;
    let size = 2.0 * r * SCALE;
    let px = |x: f64| (x + r) * SCALE;
    let py = |y: f64| (r - y) * SCALE;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<line class="axis" x1="0" y1="{0:.2}" x2="{size:.2}" y2="{0:.2}" stroke="lightgray"/>"#, py(0.0));
    let _ = writeln!(s, r#"<line class="axis" x1="{0:.2}" y1="0" x2="{0:.2}" y2="{size:.2}" stroke="lightgray"/>"#, px(0.0));
    if radius > 0 {
        let rows: Vec<Vec<i64>> = (0..b.n()).map(|i| b.row(i)).collect();
        for (i, row) in rows.iter().enumerate() {
            let (c, a1, a2) = (f(&v0[i]), row[0] as f64, row[1] as f64);
            let _ = write!(s, r#"<g class="hyperplane" data-index="{}">"#, i + 1);
            if let Some(((x1, y1), (x2, y2))) = clip(c, a1, a2, r) {
                let _ = write!(
                    s,
                    r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
                    px(x1), py(y1), px(x2), py(y2)
                );
                // A short arrow from the midpoint towards the positive side.
                let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
                let norm = (a1 * a1 + a2 * a2).sqrt();
                let (ex, ey) = (mx + 0.4 * a1 / norm, my + 0.4 * a2 / norm);
                let _ = write!(
                    s,
                    r#"<line class="arrow" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" font-size="11">H{}</text>"#,
                    px(mx), py(my), px(ex), py(ey), px(ex) + 3.0, py(ey) - 3.0, i + 1
                );
            }
            let _ = writeln!(s, "</g>");
        }
        let mut cells: BTreeMap<Vec<usize>, (i64, i64, i64)> = BTreeMap::new();
        for (z, u) in lattice_points(b, radius) {
            let x = offset(v0, &u);
            if x.iter().any(|c| c.is_zero()) {
                continue;
            }
            let e = cells.entry(nsupp(&x)).or_insert((0, 0, 0));
            e.0 += z[0];
            e.1 += z[1];
            e.2 += 1;
        }
        for (set, (sx, sy, k)) in &cells {
            let (cx, cy) = (*sx as f64 / *k as f64, *sy as f64 / *k as f64);
            let _ = writeln!(
                s,
                r#"<text class="region" x="{:.2}" y="{:.2}" font-size="13" fill="navy" text-anchor="middle">{}</text>"#,
                px(cx), py(cy), format_set(set)
            );
        }
        if let Ok(classes) = support_classes(v0, b, w, radius) {
            for c in classes.iter().filter(|c| c.in_n) {
                let Some(u) = &c.min_offset else { continue };
                let Some(z) = b.coordinates(u) else { continue };
                if z.iter().all(|x| x.abs() <= radius) {
                    let _ = writeln!(
                        s,
                        r#"<circle class="minimal" cx="{:.2}" cy="{:.2}" r="4" fill="darkred"><title>{}</title></circle>"#,
                        px(z[0] as f64), py(z[1] as f64), format_set(&c.support)
                    );
                }
            }
        }
    }
    let _ = writeln!(s, r#"<circle class="v0" cx="{:.2}" cy="{:.2}" r="5" fill="none" stroke="green" stroke-width="2"/>"#, px(0.0), py(0.0));
    s.push_str("</svg>\n");
    Ok(s)
}

/// Plot around the chosen exponent, the config's, or the first fake exponent.
pub fn plot_config(cfg: &ProblemConfig, exponent: Option<&Vec<Rational>>) -> CliResult<String> {
    let p = cfg.resolve()?;
    let v0 = match exponent.or(p.exponent.as_ref()) {
        Some(v) => v.clone(),
        None => {
            let fe = fake_exponents(&p.a, &p.beta, &p.w, &p.b)?;
            fe.exponents.first().map(|e| e.v.clone()).ok_or_else(|| CliError::Config("there are no fake exponents".into()))?
        }
    };
    if v0.len() != p.a.n() {
        return Err(CliError::Config("exponent has the wrong length".into()));
    }
    emit_region_plot(&v0, &p.b, &p.w, p.radius)
}
