//! SVG figures: points as circles, optional copies as translucent polygons.

use std::fmt::Write;

use patternforge_core::PointSet;

/// Bits of precision for the coordinate approximations.
pub const PRECISION: u32 = 128;

#[derive(Clone, Copy, Debug)]
pub struct SvgOptions {
    /// Pixels per unit; `None` fits the drawing into [`SvgOptions::FIT`] pixels.
    pub scale: Option<f64>,
    pub radius: f64,
}

impl SvgOptions {
    pub const FIT: f64 = 640.0;
}

impl Default for SvgOptions {
    fn default() -> SvgOptions {
        SvgOptions { scale: None, radius: 4.0 }
    }
}

/// Draws `set`; each entry of `copies` lists target indices of one copy.
pub fn render(set: &PointSet, copies: &[Vec<usize>], opts: &SvgOptions) -> String {
    let pts: Vec<(f64, f64)> = set.iter().map(|p| p.to_float(PRECISION).to_f64()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if pts.is_empty() {
        (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let extent = (x1 - x0).max(y1 - y0);
    let scale = opts.scale.unwrap_or(if extent > 0.0 { SvgOptions::FIT / extent } else { 1.0 });
    let margin = 4.0 * opts.radius;
    let width = (x1 - x0) * scale + 2.0 * margin;
    let height = (y1 - y0) * scale + 2.0 * margin;
    // y grows downwards in SVG
    let map = |(x, y): (f64, f64)| ((x - x0) * scale + margin, (y1 - y) * scale + margin);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if !copies.is_empty() {
        let _ = writeln!(out, r#"<g class="copies" stroke-width="1">"#);
        for (k, copy) in copies.iter().enumerate() {
            let hue = (k as f64 * 137.508) % 360.0;
            let corners = around_centroid(copy.iter().map(|&i| pts[i]).collect());
            let path: Vec<String> = corners
                .into_iter()
                .map(|p| {
                    let (x, y) = map(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(
                out,
                r#"<polygon class="copy" points="{}" fill="hsl({hue:.1},70%,55%)" fill-opacity="0.18" stroke="hsl({hue:.1},70%,35%)" stroke-opacity="0.6"/>"#,
                path.join(" ")
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, r#"<g class="points" fill="black">"#);
    for &p in &pts {
        let (x, y) = map(p);
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.2}"/>"#, opts.radius);
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

/// Vertices sorted by angle about their centroid, so convex copies draw as
/// simple polygons.
fn around_centroid(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let n = v.len() as f64;
    let cx = v.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = v.iter().map(|p| p.1).sum::<f64>() / n;
    v.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use patternforge_core::constructions::shapes::square;

    #[test]
    fn one_circle_per_point() {
        let sq = square();
        let svg = render(sq.base(), &[vec![0, 1, 2, 3]], &SvgOptions::default());
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(svg.starts_with("<svg"));
    }
}
