//! SVG drawing of a Newton polygon.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use strongsep::exp::QExp;
use strongsep::polygon::Polygon;

const CELL: f64 = 60.0;
const PAD: f64 = 40.0;

fn f(e: &QExp) -> f64 {
    e.to_f64().unwrap_or(0.0)
}

/// Points as dots, the lower hull as a polyline; `ν` grows upwards.
pub fn hull(p: &Polygon<QExp>) -> String {
    let xmax = p.points.iter().map(|(i, _)| *i).max().unwrap_or(0) as f64;
    let ymin = p.points.iter().map(|(_, e)| f(e)).fold(0.0, f64::min);
    let ymax = p.points.iter().map(|(_, e)| f(e)).fold(1.0, f64::max);
    let w = xmax * CELL + 2.0 * PAD;
    let h = (ymax - ymin) * CELL + 2.0 * PAD;
    let at = |i: usize, e: &QExp| (PAD + i as f64 * CELL, h - PAD - (f(e) - ymin) * CELL);
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    let pts: Vec<String> = p.hull.iter().map(|(i, e)| {
        let (x, y) = at(*i, e);
        format!("{:.1},{:.1}", x, y)
    }).collect();
    writeln!(s, r#"<polyline points="{}" fill="none" stroke="black" stroke-width="2"/>"#, pts.join(" ")).unwrap();
    for (i, e) in &p.points {
        let (x, y) = at(*i, e);
        writeln!(s, r#"<circle cx="{x:.1}" cy="{y:.1}" r="4" fill="steelblue"/>"#).unwrap();
        writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="12" font-family="monospace">({}, {})</text>"#, x + 6.0, y - 6.0, i, e).unwrap();
    }
    s.push_str("</svg>\n");
    s
}
