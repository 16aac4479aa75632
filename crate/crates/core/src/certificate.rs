//! Checkable witnesses and their verification against a drawing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::drawing::{Drawing, Edge};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    /// Crossing iff interleaved in the listed order.
    Convex,
    /// Crossing iff nested in the listed order.
    Twisted,
    /// Vertex sequence whose consecutive edges are pairwise non-crossing.
    PlanePath,
    /// Two centres followed by leaves; all star edges pairwise non-crossing.
    PlaneBipartite,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::Convex => "convex",
            CertificateKind::Twisted => "twisted",
            CertificateKind::PlanePath => "planepath",
            CertificateKind::PlaneBipartite => "planebipartite",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub vertices: Vec<usize>,
}

impl Certificate {
    pub fn new(kind: CertificateKind, vertices: Vec<usize>) -> Self {
        Certificate { kind, vertices }
    }

    /// Number of pattern vertices (leaves only for a bipartite certificate).
    pub fn vertex_count(&self) -> usize {
        match self.kind {
            CertificateKind::PlaneBipartite => self.vertices.len().saturating_sub(2),
            _ => self.vertices.len(),
        }
    }

    pub fn edge_count(&self) -> usize {
        let k = self.vertices.len();
        match self.kind {
            CertificateKind::Convex | CertificateKind::Twisted => k * k.saturating_sub(1) / 2,
            CertificateKind::PlanePath => k.saturating_sub(1),
            CertificateKind::PlaneBipartite => 2 * k.saturating_sub(2),
        }
    }

    /// The drawn edges the certificate is about.
    pub fn edges(&self) -> Vec<Edge> {
        let v = &self.vertices;
        match self.kind {
            CertificateKind::Convex | CertificateKind::Twisted => (0..v.len())
                .flat_map(|i| (i + 1..v.len()).map(move |j| Edge::new(v[i], v[j])))
                .collect(),
            CertificateKind::PlanePath => v.windows(2).map(|w| Edge::new(w[0], w[1])).collect(),
            CertificateKind::PlaneBipartite => v
                .iter()
                .skip(2)
                .flat_map(|&l| [Edge::new(v[0], l), Edge::new(v[1], l)])
                .collect(),
        }
    }
}

/// A pair of edges whose crossing status contradicts the certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// The offending tuple of vertices, in certificate order.
    pub tuple: Vec<usize>,
    pub first: Edge,
    pub second: Edge,
    pub expected_cross: bool,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = if self.expected_cross {
            "required crossing absent"
        } else {
            "forbidden crossing present"
        };
        write!(
            f,
            "tuple {:?}: {} x {}: {}",
            self.tuple, self.first, self.second, what
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

fn check_vertices(d: &Drawing, c: &Certificate) -> Result<()> {
    let mut seen = vec![false; d.n()];
    for &v in &c.vertices {
        if v >= d.n() {
            return Err(Error::InvalidCertificate(format!(
                "vertex {v} out of range"
            )));
        }
        if seen[v] {
            return Err(Error::InvalidCertificate(format!("vertex {v} repeated")));
        }
        seen[v] = true;
    }
    match c.kind {
        CertificateKind::PlaneBipartite if c.vertices.len() < 3 => Err(Error::InvalidCertificate(
            "a bipartite certificate needs two centres and at least one leaf".into(),
        )),
        _ if c.vertices.is_empty() => Err(Error::InvalidCertificate("no vertices".into())),
        _ => Ok(()),
    }
}

/// Checks `c` against the crossings of `d`; reports the first violation.
pub fn verify_certificate(d: &Drawing, c: &Certificate) -> Result<Verdict> {
    check_vertices(d, c)?;
    match c.kind {
        CertificateKind::Convex | CertificateKind::Twisted => Ok(verify_pattern(d, c)),
        CertificateKind::PlanePath | CertificateKind::PlaneBipartite => {
            verify_plane_edges(d, &c.edges())
        }
    }
}

fn verify_pattern(d: &Drawing, c: &Certificate) -> Verdict {
    let w = &c.vertices;
    let k = w.len();
    let convex = c.kind == CertificateKind::Convex;
    for a in 0..k {
        for b in a + 1..k {
            for cc in b + 1..k {
                for dd in cc + 1..k {
                    let (wa, wb, wc, wd) = (w[a], w[b], w[cc], w[dd]);
                    // (edge, edge, must cross)
                    let checks = [
                        (Edge::new(wa, wc), Edge::new(wb, wd), convex),
                        (Edge::new(wa, wb), Edge::new(wc, wd), false),
                        (Edge::new(wa, wd), Edge::new(wb, wc), !convex),
                    ];
                    for (e1, e2, want) in checks {
                        if d.cross_unchecked(e1, e2) != want {
                            return Verdict::Fail(Violation {
                                tuple: vec![wa, wb, wc, wd],
                                first: e1,
                                second: e2,
                                expected_cross: want,
                            });
                        }
                    }
                }
            }
        }
    }
    Verdict::Pass
}

/// Checks that the given edges are pairwise non-crossing.
pub fn verify_plane_edges(d: &Drawing, edges: &[Edge]) -> Result<Verdict> {
    for e in edges {
        if e.0 == e.1 || e.1 >= d.n() {
            return Err(Error::InvalidEdge(e.0, e.1, d.n()));
        }
    }
    for (i, e1) in edges.iter().enumerate() {
        for e2 in &edges[i + 1..] {
            if !e1.shares_endpoint(e2) && d.cross_unchecked(*e1, *e2) {
                return Ok(Verdict::Fail(Violation {
                    tuple: vec![e1.0, e1.1, e2.0, e2.1],
                    first: *e1,
                    second: *e2,
                    expected_cross: false,
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_convex, gen_twisted};

    #[test]
    fn generators_match_their_patterns() {
        let c5 = gen_convex(5).unwrap();
        let id: Vec<usize> = (0..5).collect();
        assert_eq!(
            verify_certificate(&c5, &Certificate::new(CertificateKind::Convex, id.clone())),
            Ok(Verdict::Pass)
        );
        let t5 = gen_twisted(5).unwrap();
        assert_eq!(
            verify_certificate(&t5, &Certificate::new(CertificateKind::Twisted, id.clone())),
            Ok(Verdict::Pass)
        );
    }

    #[test]
    fn twisted_is_not_convex_in_identity_order() {
        let t5 = gen_twisted(5).unwrap();
        let v = verify_certificate(
            &t5,
            &Certificate::new(CertificateKind::Convex, (0..5).collect()),
        )
        .unwrap();
        assert_eq!(
            v,
            Verdict::Fail(Violation {
                tuple: vec![0, 1, 2, 3],
                first: Edge(0, 2),
                second: Edge(1, 3),
                expected_cross: true,
            })
        );
    }

    #[test]
    fn twisted_spine_is_plane() {
        let t5 = gen_twisted(5).unwrap();
        let c = Certificate::new(CertificateKind::PlanePath, (0..5).collect());
        assert_eq!(verify_certificate(&t5, &c), Ok(Verdict::Pass));
        // 0-2, 1-... : 0,3,1,2 contains {0,3} x {1,2}
        let c = Certificate::new(CertificateKind::PlanePath, vec![0, 3, 4, 1, 2]);
        assert!(!verify_certificate(&t5, &c).unwrap().is_pass());
    }

    #[test]
    fn adjacent_convex_centres_carry_no_plane_k22() {
        let c6 = gen_convex(6).unwrap();
        let c = Certificate::new(CertificateKind::PlaneBipartite, vec![0, 1, 3, 4]);
        assert!(!verify_certificate(&c6, &c).unwrap().is_pass());
        // opposite sides of a diagonal do
        let c = Certificate::new(CertificateKind::PlaneBipartite, vec![0, 3, 1, 4]);
        assert!(verify_certificate(&c6, &c).unwrap().is_pass());
    }

    #[test]
    fn malformed_certificates() {
        let c5 = gen_convex(5).unwrap();
        for (kind, vs) in [
            (CertificateKind::Convex, vec![0, 1, 1]),
            (CertificateKind::Convex, vec![0, 9]),
            (CertificateKind::PlanePath, vec![]),
            (CertificateKind::PlaneBipartite, vec![0, 1]),
        ] {
            assert!(matches!(
                verify_certificate(&c5, &Certificate::new(kind, vs)),
                Err(Error::InvalidCertificate(_))
            ));
        }
    }

    #[test]
    fn counts() {
        let c = Certificate::new(CertificateKind::PlaneBipartite, vec![0, 1, 2, 3, 4]);
        assert_eq!((c.vertex_count(), c.edge_count()), (3, 6));
        let c = Certificate::new(CertificateKind::PlanePath, vec![0, 1, 2]);
        assert_eq!((c.vertex_count(), c.edge_count()), (3, 2));
    }
}
