//! Canonical `cstg-1` text documents for drawings and certificates.
//!
//! Documents are compact JSON with keys in lexicographic order, crossing
//! pairs sorted, radii written as exact rationals and one trailing newline.

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, CertificateKind};
use crate::chromatics::validate_observation;
use crate::drawing::{edge_count, edge_from_index, Anchor, CrossingTable, Drawing, Model};
use crate::error::{Error, Result};
use crate::generators::HalfCircleSigns;
use crate::{Point, Rational, SpiralParams};

pub const FORMAT: &str = "cstg-1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnchorDoc {
    order: Vec<usize>,
    v0: usize,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ParamsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<[i128; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radii: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signs: Option<String>,
}

impl ParamsDoc {
    fn is_empty(&self) -> bool {
        self.points.is_none() && self.radii.is_none() && self.signs.is_none()
    }
}

// field order is the serialized key order
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DrawingDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    anchor: Option<AnchorDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    crossings: Option<Vec<[usize; 2]>>,
    format: String,
    model: String,
    n: usize,
    #[serde(default, skip_serializing_if = "ParamsDoc::is_empty")]
    params: ParamsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotations: Option<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    kind: CertificateKind,
    vertices: Vec<usize>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents always serialize");
    s.push('\n');
    s
}

fn rational_text(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn encode_drawing(d: &Drawing) -> String {
    let mut params = ParamsDoc::default();
    let mut crossings = None;
    match d.model() {
        Model::Explicit(_) => {
            crossings = Some(
                d.crossing_pairs()
                    .into_iter()
                    .map(|(a, b)| [a, b])
                    .collect(),
            );
        }
        Model::Convex => {}
        Model::Twisted(p) => params.radii = Some(p.radii().iter().map(rational_text).collect()),
        Model::HalfCircle(s) => params.signs = Some(s.to_string()),
        Model::Points(pts) => params.points = Some(pts.iter().map(|p| [p.x, p.y]).collect()),
    }
    let doc = DrawingDoc {
        anchor: d.anchor().map(|a| AnchorDoc {
            order: a.order.clone(),
            v0: a.v0,
        }),
        crossings,
        format: FORMAT.into(),
        model: d.model().name().into(),
        n: d.n(),
        params,
        rotations: d.rotations().map(|r| r.to_vec()),
    };
    to_text(&doc)
}

fn unexpected(model: &str, what: &str) -> Error {
    Error::Validation(format!("model {model} takes no {what}"))
}

pub fn decode_drawing(text: &str) -> Result<Drawing> {
    let doc: DrawingDoc = serde_json::from_str(text).map_err(parse_error)?;
    if doc.format != FORMAT {
        return Err(Error::Validation(format!(
            "unsupported format {:?}",
            doc.format
        )));
    }
    let n = doc.n;
    let p = doc.params;
    let m = doc.model.as_str();
    if doc.crossings.is_some() && m != "explicit" {
        return Err(unexpected(m, "crossings"));
    }
    if p.points.is_some() && m != "points" {
        return Err(unexpected(m, "points"));
    }
    if p.radii.is_some() && m != "twisted" {
        return Err(unexpected(m, "radii"));
    }
    if p.signs.is_some() && m != "halfcircle" {
        return Err(unexpected(m, "signs"));
    }
    let missing = |what: &str| Error::Validation(format!("model {m} needs {what}"));
    let model = match m {
        "explicit" => {
            let pairs = doc.crossings.ok_or_else(|| missing("crossings"))?;
            let mut table = CrossingTable::new(n)?;
            let e = edge_count(n);
            let mut prev: Option<[usize; 2]> = None;
            for pair in pairs {
                let [r1, r2] = pair;
                if r1 >= r2 || r2 >= e {
                    return Err(Error::Validation(format!(
                        "invalid crossing pair [{r1}, {r2}]"
                    )));
                }
                if prev.is_some_and(|q| q >= pair) {
                    return Err(Error::Validation(format!(
                        "crossing pair [{r1}, {r2}] out of order"
                    )));
                }
                prev = Some(pair);
                let (e1, e2) = (edge_from_index(r1, n)?, edge_from_index(r2, n)?);
                table
                    .insert(e1, e2)
                    .map_err(|err| Error::Validation(err.to_string()))?;
            }
            Model::Explicit(table)
        }
        "convex" => Model::Convex,
        "twisted" => {
            let radii = p.radii.ok_or_else(|| missing("radii"))?;
            Model::Twisted(SpiralParams::new(SpiralParams::parse(&radii)?)?)
        }
        "halfcircle" => {
            let signs = p.signs.ok_or_else(|| missing("signs"))?;
            Model::HalfCircle(HalfCircleSigns::parse(n, &signs)?)
        }
        "points" => {
            let pts = p.points.ok_or_else(|| missing("points"))?;
            let pts: Vec<Point> = pts.into_iter().map(Point::from).collect();
            if let Some(bad) = crate::geometry::find_degeneracy(&pts) {
                return Err(Error::DegenerateInput(format!(
                    "points {bad:?} are not in general position"
                )));
            }
            Model::Points(pts)
        }
        other => return Err(Error::Validation(format!("unknown model {other:?}"))),
    };
    let anchor = doc.anchor.map(|a| Anchor {
        v0: a.v0,
        order: a.order,
    });
    let d = Drawing::new(n, model, doc.rotations, anchor)?;
    if matches!(d.model(), Model::Explicit(_)) && d.anchor().is_some() {
        let report = validate_observation(&d.canonical_view()?);
        if let Some(v) = report.violation {
            return Err(Error::Validation(format!(
                "triple at positions {:?} has color {:03b}",
                v.positions, v.bits
            )));
        }
    }
    Ok(d)
}

pub fn encode_certificate(c: &Certificate) -> String {
    to_text(&CertificateDoc {
        kind: c.kind,
        vertices: c.vertices.clone(),
    })
}

pub fn decode_certificate(text: &str) -> Result<Certificate> {
    let doc: CertificateDoc = serde_json::from_str(text).map_err(parse_error)?;
    Ok(Certificate::new(doc.kind, doc.vertices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::Edge;
    use crate::generators::{
        gen_convex, gen_halfcircle_seeded, gen_horton, gen_straightline, gen_twisted_with,
    };

    fn corpus() -> Vec<Drawing> {
        let spiral = SpiralParams::new(vec![
            Rational::new(1, 2),
            Rational::from_integer(1),
            Rational::new(7, 3),
            Rational::from_integer(5),
        ])
        .unwrap();
        vec![
            gen_convex(7).unwrap(),
            gen_twisted_with(spiral).unwrap(),
            gen_halfcircle_seeded(9, 4).unwrap(),
            gen_straightline(gen_horton(3).unwrap()).unwrap(),
            Drawing::explicit(5, &[(Edge(0, 2), Edge(1, 3))]).unwrap(),
            gen_convex(8).unwrap().to_explicit().unwrap(),
        ]
    }

    #[test]
    fn round_trip() {
        for d in corpus() {
            let text = encode_drawing(&d);
            let back = decode_drawing(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(encode_drawing(&back), text);
        }
    }

    #[test]
    fn canonical_layout() {
        let d = gen_convex(3).unwrap();
        assert_eq!(
            encode_drawing(&d),
            "{\"anchor\":{\"order\":[2,1],\"v0\":0},\"format\":\"cstg-1\",\"model\":\"convex\",\"n\":3,\
             \"rotations\":[[1,2],[2,0],[0,1]]}\n"
        );
        let c = Certificate::new(CertificateKind::Twisted, vec![3, 1, 2]);
        let text = encode_certificate(&c);
        assert_eq!(text, "{\"kind\":\"twisted\",\"vertices\":[3,1,2]}\n");
        assert_eq!(decode_certificate(&text).unwrap(), c);
    }

    #[test]
    fn big_coordinates_survive() {
        let big = 1i128 << 100;
        let pts = vec![Point::new(0, 0), Point::new(big, 1), Point::new(1, big)];
        let d = gen_straightline(pts).unwrap();
        assert_eq!(decode_drawing(&encode_drawing(&d)).unwrap(), d);
    }

    #[test]
    fn rejects_bad_documents() {
        // [0,1] and [0,2] are ranks of {0,1}, {0,2}: adjacent
        let adj = r#"{"crossings":[[0,1]],"format":"cstg-1","model":"explicit","n":4}"#;
        assert!(matches!(decode_drawing(adj), Err(Error::Validation(_))));
        let bad = "{\"format\":\"cstg-1\",\n\"n\":}";
        match decode_drawing(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let extra = r#"{"format":"cstg-1","model":"convex","n":4,"colour":1}"#;
        assert!(matches!(decode_drawing(extra), Err(Error::Parse { .. })));
        let signs = r#"{"format":"cstg-1","model":"halfcircle","n":4,"params":{"signs":"UUL"}}"#;
        assert!(matches!(
            decode_drawing(signs),
            Err(Error::InvalidSigns { .. })
        ));
        let radii = r#"{"format":"cstg-1","model":"twisted","n":2,"params":{"radii":["2","1"]}}"#;
        assert!(matches!(decode_drawing(radii), Err(Error::Validation(_))));
        let version = r#"{"format":"cstg-2","model":"convex","n":4}"#;
        assert!(matches!(decode_drawing(version), Err(Error::Validation(_))));
    }

    #[test]
    fn explicit_anchor_must_satisfy_observation() {
        // a bare 5-vertex drawing with one crossing {1,3}x{2,4} and the
        // anchor at 0 gives triple (1,2,3) no bits, which is allowed
        let d = Drawing::explicit(5, &[(Edge(1, 3), Edge(2, 4))]).unwrap();
        let rot: Vec<Vec<usize>> = (0..5)
            .map(|v| (0..5).filter(|&u| u != v).collect())
            .collect();
        let anchored = d
            .with_rotations(Some(rot))
            .unwrap()
            .with_anchor(Some(Anchor {
                v0: 0,
                order: vec![4, 3, 2, 1],
            }))
            .unwrap();
        let text = encode_drawing(&anchored);
        assert!(decode_drawing(&text).is_ok());
        // positions 1, 2, 3 are vertices 3, 2, 1; crossings {0,3}x{1,2} and
        // {0,2}x{1,3} give bits 110
        let bad =
            Drawing::explicit(4, &[(Edge(0, 2), Edge(1, 3)), (Edge(0, 3), Edge(1, 2))]).unwrap();
        let rot: Vec<Vec<usize>> = (0..4)
            .map(|v| (0..4).filter(|&u| u != v).collect())
            .collect();
        let bad = bad
            .with_rotations(Some(rot))
            .unwrap()
            .with_anchor(Some(Anchor {
                v0: 0,
                order: vec![3, 2, 1],
            }))
            .unwrap();
        assert!(matches!(
            decode_drawing(&encode_drawing(&bad)),
            Err(Error::Validation(_))
        ));
    }
}
