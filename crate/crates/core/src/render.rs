//! ASCII and SVG drawings of a representation.
//!
//! Endpoints are normalized first, so the drawing only shows the order of
//! endpoints. Intervals are packed into rows greedily: each interval, taken
//! by left endpoint, goes to the first row whose last interval ends strictly
//! before it starts (closed intervals that touch need different rows).

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::interval::{Representation, Q};
use crate::verify::Displayed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" | "text" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(Error::Validation(format!("unknown render format `{other}`"))),
        }
    }
}

/// One bar: vertex and integer span after normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bar {
    v: VertexId,
    lo: usize,
    hi: usize,
}

fn to_usize(p: &Q) -> usize {
    p.to_integer().try_into().expect("normalized endpoints are small non-negative integers")
}

/// A displayed gap: owner and normalized endpoints.
type Gap = (VertexId, usize, usize);

/// Rows of bars plus the displayed gaps in normalized units.
fn layout(rep: &Representation, shown: Option<&Displayed>) -> (Vec<Vec<Bar>>, Vec<Gap>, usize) {
    let norm = rep.normalize();
    let mut bars: Vec<Bar> = norm
        .iter()
        .flat_map(|(v, list)| list.iter().map(move |iv| Bar { v, lo: to_usize(iv.lo()), hi: to_usize(iv.hi()) }))
        .collect();
    bars.sort_by_key(|b| (b.lo, b.v, b.hi));
    let mut rows: Vec<Vec<Bar>> = Vec::new();
    for bar in bars {
        match rows.iter_mut().find(|r| r.last().is_some_and(|l| l.hi < bar.lo)) {
            Some(row) => row.push(bar),
            None => rows.push(vec![bar]),
        }
    }
    let pts = rep.endpoints();
    let rank = |p: &Q| 2 * pts.binary_search(p).expect("endpoint");
    let highlights = shown
        .map(|d| d.vertices.iter().map(|(&v, p)| (v, rank(&p.lo), rank(&p.hi))).collect())
        .unwrap_or_default();
    let width = 2 * pts.len().saturating_sub(1);
    (rows, highlights, width)
}

/// Text drawing, two columns per normalized unit. Displayed vertex gaps are
/// drawn with `#` when `shown` is given.
pub fn render_ascii(rep: &Representation, shown: Option<&Displayed>) -> String {
    const SCALE: usize = 2;
    let (rows, highlights, width) = layout(rep, shown);
    let cols = width * SCALE + 1;
    let mut out = String::new();
    for row in &rows {
        let mut line = vec![' '; cols];
        for bar in row {
            let (a, b) = (bar.lo * SCALE, bar.hi * SCALE);
            for (c, ch) in line.iter_mut().enumerate().take(b).skip(a + 1) {
                let lit = highlights.iter().any(|&(v, lo, hi)| v == bar.v && lo * SCALE <= c && c <= hi * SCALE);
                *ch = if lit { '#' } else { '=' };
            }
            line[a] = '[';
            line[b] = ']';
            let label = bar.v.to_string();
            if label.len() < b - a {
                for (k, ch) in label.chars().enumerate() {
                    line[a + 1 + k] = ch;
                }
            }
        }
        let text: String = line.into_iter().collect();
        out.push_str(text.trim_end());
        out.push('\n');
    }
    let mut axis = vec!['-'; cols];
    for c in (0..cols).step_by(2 * SCALE) {
        axis[c] = '+';
    }
    out.extend(axis);
    out.push('\n');
    out
}

/// Standalone SVG document.
pub fn render_svg(rep: &Representation, shown: Option<&Displayed>) -> String {
    const UNIT: usize = 12;
    const ROW: usize = 22;
    const PAD: usize = 10;
    let (rows, highlights, width) = layout(rep, shown);
    let w = width * UNIT + 2 * PAD;
    let h = rows.len() * ROW + 2 * PAD + 14;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="monospace" font-size="11">"#
    );
    for (r, row) in rows.iter().enumerate() {
        let y = PAD + r * ROW;
        for bar in row {
            let x = PAD + bar.lo * UNIT;
            let bw = (bar.hi - bar.lo) * UNIT;
            let hue = (bar.v * 137) % 360;
            let _ = writeln!(
                out,
                r#"  <rect x="{x}" y="{y}" width="{bw}" height="{}" fill="hsl({hue},60%,75%)" stroke="black"/>"#,
                ROW - 6
            );
            for &(v, lo, hi) in highlights.iter().filter(|h| h.0 == bar.v) {
                if lo >= bar.lo && hi <= bar.hi {
                    let _ = writeln!(
                        out,
                        r#"  <rect x="{}" y="{y}" width="{}" height="{}" fill="hsl({hue},70%,45%)"><title>{v} displayed</title></rect>"#,
                        PAD + lo * UNIT,
                        (hi - lo) * UNIT,
                        ROW - 6
                    );
                }
            }
            let _ = writeln!(out, r#"  <text x="{}" y="{}">{}</text>"#, x + 3, y + ROW - 10, bar.v);
        }
    }
    let axis_y = PAD + rows.len() * ROW + 4;
    let _ = writeln!(
        out,
        r#"  <line x1="{PAD}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#,
        PAD + width * UNIT
    );
    out.push_str("</svg>\n");
    out
}

pub fn render(rep: &Representation, format: RenderFormat, shown: Option<&Displayed>) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(rep, shown),
        RenderFormat::Svg => render_svg(rep, shown),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::base_triangle;
    use crate::interval::Interval;
    use crate::verify::displayed;

    #[test]
    fn base_triangle_snapshot() {
        let (rep, _) = base_triangle(0, 1, 2);
        let text = render_ascii(&rep, None);
        let expected = "\
[0==========]           [1==]
    [1==========]
        [2==========]
+---+---+---+---+---+---+---+
";
        // three rows: one per level of the depth-3 stack
        assert_eq!(text, expected);
        assert_eq!(render_ascii(&rep, None), text);
    }

    #[test]
    fn single_vertex_one_row() {
        let mut rep = Representation::new();
        rep.insert(7, Interval::ints(-5, 9));
        assert_eq!(render_ascii(&rep, None).lines().count(), 2);
    }

    #[test]
    fn highlights_and_svg() {
        let (rep, _) = base_triangle(0, 1, 2);
        let shown = displayed(&rep);
        let text = render_ascii(&rep, Some(&shown));
        assert!(text.contains('#'));
        let svg = render_svg(&rep, Some(&shown));
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("displayed</title>").count(), 3);
    }
}
