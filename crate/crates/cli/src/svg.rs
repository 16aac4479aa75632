//! SVG pictures of geometric drawings.

use std::fmt::Write;

use cstg::curves::{arc_point, sample_arc, vertex_position};
use cstg::{Certificate, Drawing, Edge, Model, Result, Side};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;
const SPIRAL_SEGMENTS: usize = 96;

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[(f64, f64)]) -> Frame {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        Frame {
            min_x: x0,
            min_y: y0,
            scale: (SIZE - 2.0 * MARGIN) / span,
        }
    }

    // y grows downwards in SVG
    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            MARGIN + (x - self.min_x) * self.scale,
            SIZE - MARGIN - (y - self.min_y) * self.scale,
        )
    }
}

fn edge_element(d: &Drawing, f: &Frame, e: Edge, class: &str, out: &mut String) -> Result<()> {
    match d.model() {
        Model::HalfCircle(signs) => {
            let (ax, ay) = f.map(arc_point(d, e, 0.0)?);
            let (bx, by) = f.map(arc_point(d, e, 1.0)?);
            let r = (bx - ax) / 2.0;
            let sweep = u8::from(signs.get(e.0, e.1) == Side::Upper);
            let side = if sweep == 1 { "upper" } else { "lower" };
            writeln!(
                out,
                r#"<path class="{class} {side}" d="M {ax:.3} {ay:.3} A {r:.3} {r:.3} 0 0 {sweep} {bx:.3} {by:.3}"/>"#
            )
            .expect("write to string");
        }
        Model::Twisted(_) => {
            let pts: Vec<String> = sample_arc(d, e, SPIRAL_SEGMENTS)?
                .into_iter()
                .map(|p| {
                    let (x, y) = f.map(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            writeln!(
                out,
                r#"<polyline class="{class}" points="{}"/>"#,
                pts.join(" ")
            )
            .expect("write to string");
        }
        _ => {
            let (ax, ay) = f.map(vertex_position(d, e.0)?);
            let (bx, by) = f.map(vertex_position(d, e.1)?);
            writeln!(
                out,
                r#"<line class="{class}" x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}"/>"#
            )
            .expect("write to string");
        }
    }
    Ok(())
}

/// Renders every edge and vertex; edges of `overlay` are drawn again on top.
pub fn render_svg(d: &Drawing, overlay: Option<&Certificate>) -> Result<String> {
    let n = d.n();
    let verts: Vec<(f64, f64)> = (0..n)
        .map(|v| vertex_position(d, v))
        .collect::<Result<_>>()?;
    let mut extent = verts.clone();
    match d.model() {
        Model::HalfCircle(_) => {
            let r = (n as f64 - 1.0) / 2.0;
            extent.push((1.0, r));
            extent.push((1.0, -r));
        }
        Model::Twisted(_) => {
            for a in 0..n {
                for b in a + 1..n {
                    extent.extend(sample_arc(d, Edge(a, b), SPIRAL_SEGMENTS)?);
                }
            }
        }
        _ => {}
    }
    let f = Frame::fit(&extent);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .expect("write to string");
    out.push_str(
        "<style>.edge{fill:none;stroke:#888;stroke-width:0.6}\
         .overlay{fill:none;stroke:#c00;stroke-width:2.2}\
         .vertex{fill:#000}.label{font:10px sans-serif}</style>\n",
    );
    out.push_str("<g id=\"edges\">\n");
    for a in 0..n {
        for b in a + 1..n {
            edge_element(d, &f, Edge(a, b), "edge", &mut out)?;
        }
    }
    out.push_str("</g>\n");
    if let Some(c) = overlay {
        out.push_str("<g id=\"overlay\">\n");
        for e in c.edges() {
            edge_element(d, &f, Edge::new(e.0, e.1), "overlay", &mut out)?;
        }
        out.push_str("</g>\n");
    }
    out.push_str("<g id=\"vertices\">\n");
    for (v, &p) in verts.iter().enumerate() {
        let (x, y) = f.map(p);
        writeln!(
            out,
            r#"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="3"/><text class="label" x="{:.3}" y="{:.3}">{v}</text>"#,
            x + 4.0,
            y - 4.0
        )
        .expect("write to string");
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
