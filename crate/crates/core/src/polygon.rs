//! Convex geodesic polygons and their vertex curvatures.
//!
//! Indexing is cyclic: side `i` joins `A[i-1]` to `A[i]`, so vertex `i`
//! is flanked by sides `i` (previous) and `i + 1` (next).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bounds::CurvatureBand;
use crate::error::{GeomError, Result};
use crate::hyperbolic::{angle_at, GeodesicLine, Isometry, ModelPoint};
use crate::numeric::{coth, k_coth};

/// Tolerance on the normalized turn predicate used for convexity.
pub const TURN_TOL: f64 = 1e-10;

/// A strictly convex, simple, counterclockwise geodesic polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<ModelPoint>,
    k: f64,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<ModelPoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::InvalidPolygon(format!("{n} vertices, need at least 3")));
        }
        let k = vertices[0].k();
        for v in &vertices[1..] {
            if v.k() != k {
                return Err(GeomError::ScaleMismatch(k, v.k()));
            }
        }
        // Geodesics are straight in the Klein model, so convexity and
        // simplicity reduce to the Euclidean tests on t-normalized coordinates.
        let klein: Vec<[f64; 2]> = vertices
            .iter()
            .map(|p| {
                let c = p.coords();
                [c.y / c.x, c.z / c.x]
            })
            .collect();
        let mut turning = 0.0;
        for i in 0..n {
            let a = klein[(i + n - 1) % n];
            let b = klein[i];
            let c = klein[(i + 1) % n];
            let e1 = [b[0] - a[0], b[1] - a[1]];
            let e2 = [c[0] - b[0], c[1] - b[1]];
            let n1 = e1[0].hypot(e1[1]);
            let n2 = e2[0].hypot(e2[1]);
            if n1 == 0.0 || n2 == 0.0 {
                return Err(GeomError::InvalidPolygon(format!("repeated vertex at {i}")));
            }
            let cross = (e1[0] * e2[1] - e1[1] * e2[0]) / (n1 * n2);
            let dot = (e1[0] * e2[0] + e1[1] * e2[1]) / (n1 * n2);
            if cross <= TURN_TOL {
                return Err(GeomError::InvalidPolygon(format!(
                    "vertex {i} is not a strict counterclockwise turn (turn {cross:e})"
                )));
            }
            turning += cross.atan2(dot);
        }
        if (turning - 2.0 * PI).abs() > 1e-9 {
            return Err(GeomError::InvalidPolygon(format!(
                "polygon winds {:.3} times, not simple",
                turning / (2.0 * PI)
            )));
        }
        Ok(Self { vertices, k })
    }

    /// Polygon from Poincaré-disk coordinates.
    pub fn from_disk(k: f64, xy: &[[f64; 2]]) -> Result<Self> {
        let vs = xy
            .iter()
            .map(|&uv| ModelPoint::from_disk(k, uv))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vs)
    }

    /// Regular `n`-gon with vertices at distance `circumradius` from the origin.
    pub fn regular(k: f64, n: usize, circumradius: f64) -> Result<Self> {
        let vs = (0..n)
            .map(|i| ModelPoint::from_polar(k, circumradius, 2.0 * PI * i as f64 / n as f64))
            .collect();
        Self::new(vs)
    }

    pub fn to_disk(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(ModelPoint::to_disk).collect()
    }

    /// The same disk coordinates read in curvature `-k'^2`.
    pub fn with_curvature(&self, k: f64) -> Result<Self> {
        Self::from_disk(k, &self.to_disk())
    }

    pub fn transformed(&self, iso: &Isometry) -> Self {
        Self {
            vertices: self.vertices.iter().map(|p| iso.apply(p)).collect(),
            k: self.k,
        }
    }

    pub fn vertices(&self) -> &[ModelPoint] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &ModelPoint {
        &self.vertices[i % self.len()]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    /// `l[i] = d(A[i-1], A[i])`.
    pub fn side_lengths(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| {
                self.vertices[self.prev(i)]
                    .distance(&self.vertices[i])
                    .expect("vertices share a scale")
            })
            .collect()
    }

    /// Interior angle at each vertex.
    pub fn interior_angles(&self) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                angle_at(
                    &self.vertices[i],
                    &self.vertices[self.prev(i)],
                    &self.vertices[(i + 1) % n],
                )
                .expect("distinct vertices")
            })
            .collect()
    }

    /// Carrier lines of the sides, `lines[i]` through `A[i-1], A[i]`,
    /// oriented so that the interior has positive signed distance.
    pub fn side_lines(&self) -> Vec<GeodesicLine> {
        (0..self.len())
            .map(|i| {
                GeodesicLine::through(&self.vertices[self.prev(i)], &self.vertices[i])
                    .expect("distinct vertices")
            })
            .collect()
    }

    /// Minimum signed distance from `p` to the side lines; positive inside.
    pub fn depth(&self, p: &ModelPoint) -> Result<f64> {
        depth_to_lines(&self.side_lines(), p)
    }

    pub fn contains(&self, p: &ModelPoint, tol: f64) -> Result<bool> {
        Ok(self.depth(p)? >= -tol)
    }

    /// Vertex centroid projected to the sheet.
    pub fn centroid(&self) -> ModelPoint {
        let sum = self
            .vertices
            .iter()
            .fold(crate::hyperbolic::Vec3::zeros(), |acc, p| acc + p.coords());
        ModelPoint::project(sum, self.k).expect("sum of sheet points is timelike")
    }

    /// Per-vertex angles, adjacent sides and both vertex curvatures.
    pub fn curvature_report(&self, k1: f64) -> VertexCurvatureReport {
        let n = self.len();
        let sides = self.side_lengths();
        let angles = self.interior_angles();
        let vertices = (0..n)
            .map(|i| {
                let (lp, ln) = (sides[i], sides[(i + 1) % n]);
                VertexCurvature {
                    index: i,
                    alpha: angles[i],
                    l_prev: lp,
                    l_next: ln,
                    kappa_a: kappa_a(angles[i], lp, ln),
                    kappa_b: kappa_b(angles[i], lp, ln, k1),
                }
            })
            .collect();
        VertexCurvatureReport { vertices }
    }

    /// `kappa_A = 2 (pi - alpha) / (l_prev + l_next)` at every vertex.
    pub fn vertex_curvature_a(&self) -> Vec<f64> {
        self.curvature_report(1.0)
            .vertices
            .iter()
            .map(|v| v.kappa_a)
            .collect()
    }

    /// The tanh-weighted vertex curvature at every vertex.
    pub fn vertex_curvature_b(&self, k1: f64) -> Vec<f64> {
        self.curvature_report(k1)
            .vertices
            .iter()
            .map(|v| v.kappa_b)
            .collect()
    }
}

pub(crate) fn depth_to_lines(lines: &[GeodesicLine], p: &ModelPoint) -> Result<f64> {
    let mut m = f64::INFINITY;
    for l in lines {
        m = m.min(l.signed_distance(p)?);
    }
    Ok(m)
}

/// `2 (pi - alpha) / (l1 + l2)`.
#[inline]
pub fn kappa_a(alpha: f64, l1: f64, l2: f64) -> f64 {
    2.0 * (PI - alpha) / (l1 + l2)
}

/// `(pi - alpha) / ((1/k1) tanh(k1 l1 / 2) + (1/k1) tanh(k1 l2 / 2))`.
#[inline]
pub fn kappa_b(alpha: f64, l1: f64, l2: f64, k1: f64) -> f64 {
    (PI - alpha) / (((0.5 * k1 * l1).tanh() + (0.5 * k1 * l2).tanh()) / k1)
}

/// Which vertex curvature the hypothesis checker uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurvatureDefinition {
    /// Arclength-weighted angle defect.
    #[default]
    A,
    /// tanh-weighted angle defect.
    B,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexCurvature {
    pub index: usize,
    pub alpha: f64,
    pub l_prev: f64,
    pub l_next: f64,
    pub kappa_a: f64,
    pub kappa_b: f64,
}

impl VertexCurvature {
    pub fn kappa(&self, def: CurvatureDefinition) -> f64 {
        match def {
            CurvatureDefinition::A => self.kappa_a,
            CurvatureDefinition::B => self.kappa_b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexCurvatureReport {
    pub vertices: Vec<VertexCurvature>,
}

/// Outcome of the polygon hypothesis test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem2Hypotheses {
    /// `(pi/2) k1 coth(k1 rho)`.
    pub threshold: f64,
    pub definition: CurvatureDefinition,
    pub kappa: Vec<f64>,
    pub per_vertex: Vec<bool>,
    /// `coth(k2 rho) >= k1/k2`, or `1/rho >= k1` when `k2 = 0`.
    pub global: bool,
    /// Whether the band was declared with a strict upper curvature bound.
    pub strict_band: bool,
    pub holds: bool,
}

/// Vertex threshold `(pi/2) k1 coth(k1 rho)`.
pub fn vertex_threshold(k1: f64, rho: f64) -> f64 {
    0.5 * PI * k_coth(k1, rho)
}

/// Global condition on `rho`: `coth(k2 rho) >= k1 / k2` when `k2 > 0`,
/// `1/rho >= k1` when `k2 = 0`.
pub fn global_rho_condition(band: &CurvatureBand, rho: f64) -> bool {
    if band.k2 > 0.0 {
        coth(band.k2 * rho) >= band.k1 / band.k2
    } else {
        1.0 / rho >= band.k1
    }
}

pub fn check_theorem2_hypotheses(
    polygon: &ConvexPolygon,
    band: &CurvatureBand,
    rho: f64,
    definition: CurvatureDefinition,
) -> Result<Theorem2Hypotheses> {
    if !(rho > 0.0) {
        return Err(GeomError::Domain(format!("rho must be positive, got {rho}")));
    }
    let threshold = vertex_threshold(band.k1, rho);
    let report = polygon.curvature_report(band.k1);
    let kappa: Vec<f64> = report.vertices.iter().map(|v| v.kappa(definition)).collect();
    let per_vertex: Vec<bool> = kappa.iter().map(|&x| x >= threshold).collect();
    let global = global_rho_condition(band, rho);
    let holds = global && per_vertex.iter().all(|&b| b);
    Ok(Theorem2Hypotheses {
        threshold,
        definition,
        kappa,
        per_vertex,
        global,
        strict_band: band.strict,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn equilateral_unit() -> ConvexPolygon {
        let r = ((0.5f64).sinh() / (PI / 3.0).sin()).asinh();
        ConvexPolygon::regular(1.0, 3, r).unwrap()
    }

    #[test]
    fn rejects_bad_polygons() {
        let o = ModelPoint::origin(1.0);
        let a = ModelPoint::from_polar(1.0, 0.3, 0.0);
        let b = ModelPoint::from_polar(1.0, 0.3, 2.0);
        assert!(ConvexPolygon::new(vec![o, a]).is_err());
        assert!(ConvexPolygon::new(vec![o, a, a, b]).is_err());
        // clockwise
        assert!(ConvexPolygon::new(vec![b, a, o]).is_err());
        // pentagram: left turns but winds twice
        let star: Vec<_> = (0..5)
            .map(|i| ModelPoint::from_polar(1.0, 0.5, 4.0 * PI * i as f64 / 5.0))
            .collect();
        assert!(ConvexPolygon::new(star).is_err());
        // flat vertex
        let m = o.midpoint(&a).unwrap();
        assert!(ConvexPolygon::new(vec![o, m, a, b]).is_err());
    }

    #[test]
    fn equilateral_sides_and_kappa() {
        let p = equilateral_unit();
        for l in p.side_lengths() {
            assert_abs_diff_eq!(l, 1.0, epsilon = 1e-12);
        }
        let alpha = (1f64.cosh() / (1f64.cosh() + 1.0)).acos();
        for ka in p.vertex_curvature_a() {
            assert_abs_diff_eq!(ka, PI - alpha, epsilon = 1e-12);
            assert_abs_diff_eq!(ka, 2.222_794_781_411_766, epsilon = 1e-12);
        }
    }

    #[test]
    fn kappa_formulas() {
        assert_abs_diff_eq!(kappa_a(PI / 2.0, 1.0, 1.0), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(kappa_a(PI - 1e-9, 1.0, 1.0), 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(
            kappa_b(PI / 2.0, 1.0, 1.0, 1.0),
            1.699_565_036_827_976_5,
            epsilon = 1e-14
        );
        let ratio = kappa_b(1.0, 1e-6, 1e-6, 1.0) / kappa_a(1.0, 1e-6, 1e-6);
        assert_abs_diff_eq!(ratio, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn curvature_scale_reuse() {
        let p = ConvexPolygon::regular(1.0, 5, 0.8).unwrap();
        let q = p.with_curvature(2.0).unwrap();
        for (a, b) in p.side_lengths().iter().zip(q.side_lengths()) {
            assert_abs_diff_eq!(b, a / 2.0, epsilon = 1e-13);
        }
        let o = ModelPoint::origin(2.0);
        let v = q.vertex(0);
        let v1 = q.vertex(1);
        assert_abs_diff_eq!(q.side_lengths()[1], v.distance(v1).unwrap(), epsilon = 0.0);
        assert_abs_diff_eq!(o.distance(v).unwrap(), 0.4, epsilon = 1e-13);
    }

    #[test]
    fn hypothesis_flags() {
        let band = CurvatureBand::new(1.0, 0.5, false).unwrap();
        assert!(global_rho_condition(&band, 0.5));
        assert_abs_diff_eq!(coth(0.25), 4.082_988_165_073_597, epsilon = 1e-13);
        let eq = CurvatureBand::new(0.8, 0.8, false).unwrap();
        for rho in [0.01, 1.0, 50.0] {
            assert!(global_rho_condition(&eq, rho));
        }
        // small regular polygon: sharp vertices pass
        let small = ConvexPolygon::regular(0.7, 6, 0.1).unwrap();
        let h = check_theorem2_hypotheses(&small, &band, 0.5, CurvatureDefinition::A).unwrap();
        assert!(h.holds && h.global);
        // near-flat vertex fails
        let o = ModelPoint::origin(1.0);
        let a = ModelPoint::from_polar(1.0, 0.1, 0.0);
        let bump = ModelPoint::from_polar(1.0, 0.05, -1e-4);
        let top = ModelPoint::from_polar(1.0, 0.1, 1.2);
        let p = ConvexPolygon::new(vec![o, bump, a, top]).unwrap();
        let h = check_theorem2_hypotheses(&p, &band, 0.5, CurvatureDefinition::A).unwrap();
        assert!(!h.per_vertex[1]);
        assert!(!h.holds);
    }
}
