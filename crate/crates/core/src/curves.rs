//! Floating-point pictures of the geometric families, for rendering and
//! numeric cross-checks.

use std::f64::consts::{PI, TAU};

use crate::drawing::{Drawing, Edge, Model};
use crate::error::{Error, Result};
use crate::generators::Side;

/// Position of vertex `v`.
pub fn vertex_position(d: &Drawing, v: usize) -> Result<(f64, f64)> {
    let n = d.n();
    match d.model() {
        Model::Explicit(_) => Err(Error::GeometryMissing),
        Model::Convex => {
            let a = TAU * v as f64 / n as f64;
            Ok((a.cos(), a.sin()))
        }
        Model::Twisted(p) => Ok(p.arc_point(Edge(v, v), 0.0)),
        Model::HalfCircle(_) => Ok(((v + 1) as f64, 0.0)),
        Model::Points(pts) => Ok(pts[v].to_f64()),
    }
}

/// Point of the arc `e` at parameter `s`, running from `e.0` (`s = 0`) to
/// `e.1` (`s = 1`).
pub fn arc_point(d: &Drawing, e: Edge, s: f64) -> Result<(f64, f64)> {
    match d.model() {
        Model::Explicit(_) => Err(Error::GeometryMissing),
        Model::Twisted(p) => Ok(p.arc_point(e, s)),
        Model::HalfCircle(signs) => {
            let (a, b) = (e.0 as f64 + 1.0, e.1 as f64 + 1.0);
            let (c, r) = ((a + b) / 2.0, (b - a) / 2.0);
            let t = PI * (1.0 - s);
            let sign = if signs.get(e.0, e.1) == Side::Upper {
                1.0
            } else {
                -1.0
            };
            Ok((c + r * t.cos(), sign * r * t.sin()))
        }
        Model::Convex | Model::Points(_) => {
            let (x0, y0) = vertex_position(d, e.0)?;
            let (x1, y1) = vertex_position(d, e.1)?;
            Ok((x0 + (x1 - x0) * s, y0 + (y1 - y0) * s))
        }
    }
}

/// `segments + 1` evenly spaced samples along the arc.
pub fn sample_arc(d: &Drawing, e: Edge, segments: usize) -> Result<Vec<(f64, f64)>> {
    (0..=segments)
        .map(|i| arc_point(d, e, i as f64 / segments as f64))
        .collect()
}

/// Smallest distance between two vertices.
pub fn min_vertex_distance(d: &Drawing) -> Result<f64> {
    let pos: Vec<(f64, f64)> = (0..d.n())
        .map(|v| vertex_position(d, v))
        .collect::<Result<_>>()?;
    let mut best = f64::INFINITY;
    for (i, p) in pos.iter().enumerate() {
        for q in &pos[i + 1..] {
            best = best.min((p.0 - q.0).hypot(p.1 - q.1));
        }
    }
    Ok(best)
}
