//! SVG rendering of span sections, one panel per section, side by side.
//!
//! Fixed scale of 40 px per unit with a one-unit margin and the y axis
//! pointing up. Output depends only on the input, so files can be compared
//! byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::scalar::Scalar;
use crate::section::{Point, SpanSection};

pub const PX_PER_UNIT: f64 = 40.0;
const FACE_FILL: &str = "#c9d6ea";
const STROKE: &str = "#2f4b7c";
const GENERATOR: &str = "#1f4fd8";

#[derive(Clone, Debug, Default)]
pub struct RenderOptions {
    /// Caption per panel; missing captions are left out.
    pub labels: Vec<String>,
}

struct Frame {
    left: f64,
    lo_x: f64,
    hi_y: f64,
}

impl Frame {
    fn x<T: Scalar>(&self, p: &Point<T>) -> f64 {
        self.left + (p.x.to_f64_lossy() - self.lo_x + 1.0) * PX_PER_UNIT
    }

    fn y<T: Scalar>(&self, p: &Point<T>) -> f64 {
        (self.hi_y - p.y.to_f64_lossy() + 1.0) * PX_PER_UNIT
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders the sections as a standalone SVG document.
pub fn render_svg<T: Scalar>(sections: &[SpanSection<T>], options: &RenderOptions) -> String {
    let mut body = String::new();
    let mut width = 0.0f64;
    let mut height = 0.0f64;
    for (k, s) in sections.iter().enumerate() {
        let (lo, hi) = s.bounding_box();
        let (lo_x, hi_x) = (lo.x.to_f64_lossy(), hi.x.to_f64_lossy());
        let (lo_y, hi_y) = (lo.y.to_f64_lossy(), hi.y.to_f64_lossy());
        let f = Frame { left: width, lo_x, hi_y };
        let panel_w = (hi_x - lo_x + 2.0) * PX_PER_UNIT;
        let panel_h = (hi_y - lo_y + 2.0) * PX_PER_UNIT;

        let _ = writeln!(body, "<g class=\"panel\" data-panel=\"{k}\">");
        let _ = writeln!(
            body,
            "<rect x=\"{:.3}\" y=\"0.000\" width=\"{panel_w:.3}\" height=\"{panel_h:.3}\" fill=\"none\" stroke=\"#dddddd\"/>",
            width
        );
        for face in &s.faces {
            let pts: Vec<String> = face
                .iter()
                .map(|&v| format!("{:.3},{:.3}", f.x(&s.vertices[v]), f.y(&s.vertices[v])))
                .collect();
            let _ = writeln!(
                body,
                "<polygon class=\"face\" points=\"{}\" fill=\"{FACE_FILL}\" stroke=\"{FACE_FILL}\" stroke-width=\"0.5\"/>",
                pts.join(" ")
            );
        }
        // Outline each 2-cell along the edges that bound only one of its faces.
        for cell in s.cells.iter().filter(|c| c.dim == 2) {
            let mut uses: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for &fi in &cell.faces {
                let face = &s.faces[fi];
                for k in 0..face.len() {
                    let (u, v) = (face[k], face[(k + 1) % face.len()]);
                    *uses.entry((u.min(v), u.max(v))).or_default() += 1;
                }
            }
            for (&(u, v), _) in uses.iter().filter(|(_, &c)| c == 1) {
                let (p, q) = (&s.vertices[u], &s.vertices[v]);
                let _ = writeln!(
                    body,
                    "<line class=\"boundary\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"{STROKE}\" stroke-width=\"1.5\" stroke-linecap=\"round\"/>",
                    f.x(p),
                    f.y(p),
                    f.x(q),
                    f.y(q)
                );
            }
        }
        for cell in s.cells.iter().filter(|c| c.dim == 1) {
            for &e in &cell.edges {
                let (u, v) = s.edges[e];
                let (p, q) = (&s.vertices[u], &s.vertices[v]);
                let _ = writeln!(
                    body,
                    "<line class=\"edge\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"{STROKE}\" stroke-width=\"2.5\" stroke-linecap=\"round\"/>",
                    f.x(p),
                    f.y(p),
                    f.x(q),
                    f.y(q)
                );
            }
        }
        for cell in s.cells.iter().filter(|c| c.dim == 0) {
            let p = &s.vertices[cell.vertices[0]];
            let _ = writeln!(
                body,
                "<circle class=\"point\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"3\" fill=\"{STROKE}\"/>",
                f.x(p),
                f.y(p)
            );
        }
        let origin: Point<T> = Point::origin();
        let _ = writeln!(
            body,
            "<circle class=\"origin\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"4.5\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1\"/>",
            f.x(&origin),
            f.y(&origin)
        );
        for g in &s.generators {
            let _ = writeln!(
                body,
                "<circle class=\"generator\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"4.5\" fill=\"{GENERATOR}\" data-x=\"{}\" data-y=\"{}\"/>",
                f.x(g),
                f.y(g),
                g.x.to_exact_string(),
                g.y.to_exact_string()
            );
        }
        if let Some(label) = options.labels.get(k) {
            let _ = writeln!(
                body,
                "<text x=\"{:.3}\" y=\"16.000\" font-family=\"sans-serif\" font-size=\"14\">{}</text>",
                width + 6.0,
                escape(label)
            );
        }
        body.push_str("</g>\n");
        width += panel_w;
        height = height.max(panel_h);
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.3}\" height=\"{height:.3}\" viewBox=\"0 0 {width:.3} {height:.3}\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n{body}</svg>\n"
    )
}

/// Writes [`render_svg`] output to `path`.
pub fn write_svg<T: Scalar>(sections: &[SpanSection<T>], path: impl AsRef<Path>, options: &RenderOptions) -> Result<()> {
    std::fs::write(path, render_svg(sections, options))?;
    Ok(())
}
