//! JSON interchange in Poincaré-disk coordinates.

use serde::{Deserialize, Serialize};

use crate::arcs::ArcChain;
use crate::error::GeomError;
use crate::hyperbolic::ModelPoint;
use crate::polygon::ConvexPolygon;

/// `{"k": number, "vertices": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub k: f64,
    pub vertices: Vec<[f64; 2]>,
}

impl From<&ConvexPolygon> for PolygonJson {
    fn from(p: &ConvexPolygon) -> Self {
        Self {
            k: p.k(),
            vertices: p.to_disk(),
        }
    }
}

impl TryFrom<&PolygonJson> for ConvexPolygon {
    type Error = GeomError;

    fn try_from(j: &PolygonJson) -> Result<Self, GeomError> {
        ConvexPolygon::from_disk(j.k, &j.vertices)
    }
}

/// `{"k": number, "xy": [u, v]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub k: f64,
    pub xy: [f64; 2],
}

impl From<&ModelPoint> for PointJson {
    fn from(p: &ModelPoint) -> Self {
        Self {
            k: p.k(),
            xy: p.to_disk(),
        }
    }
}

/// One arc of a chain: `{center_xy, rho, from_index, to_index}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcJson {
    pub center_xy: [f64; 2],
    pub rho: f64,
    pub from_index: usize,
    pub to_index: usize,
}

pub fn arc_chain_json(chain: &ArcChain) -> Vec<ArcJson> {
    chain
        .arcs()
        .iter()
        .map(|a| ArcJson {
            center_xy: a.center.to_disk(),
            rho: a.radius,
            from_index: a.from_index,
            to_index: a.to_index,
        })
        .collect()
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("polygon {index}: {source}")]
    Polygon { index: usize, source: GeomError },
}

/// Parses a JSON array of polygons.
pub fn parse_corpus(text: &str) -> Result<Vec<ConvexPolygon>, CorpusError> {
    let raw: Vec<PolygonJson> = serde_json::from_str(text).map_err(|e| CorpusError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    raw.iter()
        .enumerate()
        .map(|(index, j)| ConvexPolygon::try_from(j).map_err(|source| CorpusError::Polygon { index, source }))
        .collect()
}

/// Pretty JSON array of polygons with a trailing newline.
pub fn corpus_to_json(polygons: &[ConvexPolygon]) -> String {
    let raw: Vec<PolygonJson> = polygons.iter().map(PolygonJson::from).collect();
    let mut s = serde_json::to_string_pretty(&raw).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p = ConvexPolygon::regular(0.7, 5, 0.4).unwrap();
        let text = corpus_to_json(std::slice::from_ref(&p));
        let back = parse_corpus(&text).unwrap();
        assert_eq!(back.len(), 1);
        for (a, b) in p.vertices().iter().zip(back[0].vertices()) {
            assert!(a.distance(b).unwrap() < 1e-12);
        }
        assert_eq!(parse_corpus("[]").unwrap().len(), 0);
    }

    #[test]
    fn parse_error_has_position() {
        match parse_corpus("[\n  {\"k\": 1, \"vertices\": [[0.1, }\n]") {
            Err(CorpusError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let bad = r#"[{"k": 1, "vertices": [[0,0],[0.1,0],[0.2,0]]}]"#;
        assert!(matches!(parse_corpus(bad), Err(CorpusError::Polygon { index: 0, .. })));
    }
}
