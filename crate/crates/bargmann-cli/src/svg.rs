//! Static SVG figure of the invariant region and the unit n-gon, with the
//! unit circle as reference.

use bargmann::Complex64;
use std::fmt::Write;

fn path_from(points: &[Complex64]) -> String {
    let mut d = String::new();
    for (i, z) in points.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        // SVG's y axis points down; flip it so the figure reads like the
        // complex plane.
        let _ = write!(d, "{cmd}{:.6},{:.6} ", z.re, -z.im);
    }
    d.push('Z');
    d
}

/// Renders the closed boundary curve of the region and the n-gon outline.
pub fn region_figure(region: &[Complex64], ngon: &[Complex64]) -> String {
    let mut svg = String::new();
    svg.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.2 -1.2 2.4 2.4\" \
         width=\"640\" height=\"640\">\n",
    );
    svg.push_str(
        "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#bbbbbb\" \
         stroke-width=\"0.008\" stroke-dasharray=\"0.03,0.03\"/>\n",
    );
    let _ = writeln!(
        svg,
        "  <path d=\"{}\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.008\"/>",
        path_from(ngon)
    );
    let _ = writeln!(
        svg,
        "  <path d=\"{}\" fill=\"#4477aa33\" stroke=\"#4477aa\" stroke-width=\"0.012\"/>",
        path_from(region)
    );
    svg.push_str("</svg>\n");
    svg
}
