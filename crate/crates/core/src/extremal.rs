//! Inradius and circumradius of convex regions in the constant-curvature model.
//!
//! The largest inscribed circle of a convex polygon touches at least three
//! side lines, and the point equidistant from three lines `u_i, u_j, u_m` is
//! the Minkowski normal of `u_i - u_j` and `u_i - u_m`. Enumerating these
//! candidates and keeping the one with the largest depth is exact. The
//! smallest enclosing circle uses the incremental support-set recursion
//! with the circumcircle primitive.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::hyperbolic::{
    circumcircle_three_points, lorentz_cross, minkowski, two_point_circle, Circle, ModelPoint, Vec3,
};
use crate::optim::NelderMead;
use crate::polygon::{depth_to_lines, ConvexPolygon};

/// Slack used to classify active sides and support vertices.
pub const ACTIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct InballResult {
    pub center: ModelPoint,
    pub r: f64,
    pub active_sides: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircumballResult {
    pub center: ModelPoint,
    pub radius: f64,
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Radii {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
}

pub fn inradius(polygon: &ConvexPolygon) -> Result<InballResult> {
    let lines = polygon.side_lines();
    let k = polygon.k();
    let n = lines.len();
    let normals: Vec<Vec3> = lines.iter().map(|l| *l.normal()).collect();
    let mut best: Option<(ModelPoint, f64)> = None;
    let mut tried = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            for m in (j + 1)..n {
                tried += 1;
                let a = normals[i] - normals[j];
                let b = normals[i] - normals[m];
                let mut w = lorentz_cross(&a, &b);
                if !(minkowski(&w, &w) < 0.0) {
                    continue;
                }
                if w.x < 0.0 {
                    w = -w;
                }
                let Ok(c) = ModelPoint::project(w, k) else {
                    continue;
                };
                let d = depth_to_lines(&lines, &c)?;
                if best.as_ref().is_none_or(|(_, v)| d > *v) {
                    best = Some((c, d));
                }
            }
        }
    }
    match best {
        Some((center, r)) if r > 0.0 => {
            let active_sides = lines
                .iter()
                .enumerate()
                .filter(|(_, l)| l.signed_distance(&center).is_ok_and(|d| d <= r + ACTIVE_TOL))
                .map(|(i, _)| i)
                .collect();
            Ok(InballResult {
                center,
                r,
                active_sides,
            })
        }
        other => Err(GeomError::NumericFailure {
            reason: "no interior point equidistant from three sides".into(),
            iterations: tried,
            best: other.map_or(f64::NAN, |(_, v)| v),
        }),
    }
}

pub fn circumradius(polygon: &ConvexPolygon) -> Result<CircumballResult> {
    let pts = polygon.vertices();
    let inside = |c: &Circle, p: &ModelPoint| -> Result<bool> {
        Ok(c.center.distance(p)? <= c.radius * (1.0 + 1e-14) + 1e-15)
    };
    let mut ball = Circle::new(pts[0], 0.0)?;
    for i in 1..pts.len() {
        if inside(&ball, &pts[i])? {
            continue;
        }
        ball = Circle::new(pts[i], 0.0)?;
        for j in 0..i {
            if inside(&ball, &pts[j])? {
                continue;
            }
            ball = two_point_circle(&pts[i], &pts[j])?;
            for m in 0..j {
                if inside(&ball, &pts[m])? {
                    continue;
                }
                ball = three_point_ball(&pts[i], &pts[j], &pts[m])?;
            }
        }
    }
    let mut far = 0.0f64;
    for p in pts {
        far = far.max(ball.center.distance(p)?);
    }
    if far > ball.radius + ACTIVE_TOL {
        return Err(GeomError::NumericFailure {
            reason: "enclosing circle misses a vertex".into(),
            iterations: pts.len(),
            best: far,
        });
    }
    let radius = far.max(ball.radius);
    let support = pts
        .iter()
        .enumerate()
        .filter(|(_, p)| ball.center.distance(p).is_ok_and(|d| d >= radius - ACTIVE_TOL))
        .map(|(i, _)| i)
        .collect();
    Ok(CircumballResult {
        center: ball.center,
        radius,
        support,
    })
}

/// Smallest circle with `a`, `b`, `c` all on or inside it and `a`, `b` on its
/// boundary; in exact arithmetic this is the circumcircle.
fn three_point_ball(a: &ModelPoint, b: &ModelPoint, c: &ModelPoint) -> Result<Circle> {
    if let Some(circ) = circumcircle_three_points(a, b, c)? {
        return Ok(circ);
    }
    let mut best: Option<Circle> = None;
    for (p, q, r) in [(a, b, c), (a, c, b), (b, c, a)] {
        let circ = two_point_circle(p, q)?;
        if circ.center.distance(r)? <= circ.radius + ACTIVE_TOL
            && best.as_ref().is_none_or(|b| circ.radius < b.radius)
        {
            best = Some(circ);
        }
    }
    best.ok_or_else(|| GeomError::Degenerate("three points without an enclosing circle".into()))
}

/// Measured `R - r`.
pub fn gap(polygon: &ConvexPolygon) -> Result<f64> {
    Ok(circumradius(polygon)?.radius - inradius(polygon)?.r)
}

pub fn radii(polygon: &ConvexPolygon) -> Result<Radii> {
    Ok(Radii {
        r: inradius(polygon)?.r,
        big_r: circumradius(polygon)?.radius,
    })
}

/// A compact convex region known through two distance functions.
pub trait ConvexRegion {
    fn k(&self) -> f64;
    /// Distance from `p` to the boundary, positive inside, negative outside.
    fn depth(&self, p: &ModelPoint) -> Result<f64>;
    /// Largest distance from `p` to a point of the region.
    fn reach(&self, p: &ModelPoint) -> Result<f64>;
    /// An interior point to start searches from.
    fn seed(&self) -> ModelPoint;
    /// A length comparable to the region's diameter.
    fn size(&self) -> f64;
}

impl ConvexRegion for Circle {
    fn k(&self) -> f64 {
        self.center.k()
    }
    fn depth(&self, p: &ModelPoint) -> Result<f64> {
        Ok(self.radius - self.center.distance(p)?)
    }
    fn reach(&self, p: &ModelPoint) -> Result<f64> {
        Ok(self.radius + self.center.distance(p)?)
    }
    fn seed(&self) -> ModelPoint {
        // off-centre, so the search has to find the centre
        chart(&self.center)(&[0.3 * self.radius, 0.1 * self.radius])
    }
    fn size(&self) -> f64 {
        2.0 * self.radius
    }
}

impl ConvexRegion for ConvexPolygon {
    fn k(&self) -> f64 {
        ConvexPolygon::k(self)
    }
    fn depth(&self, p: &ModelPoint) -> Result<f64> {
        ConvexPolygon::depth(self, p)
    }
    fn reach(&self, p: &ModelPoint) -> Result<f64> {
        let mut m = 0.0f64;
        for v in self.vertices() {
            m = m.max(p.distance(v)?);
        }
        Ok(m)
    }
    fn seed(&self) -> ModelPoint {
        self.centroid()
    }
    fn size(&self) -> f64 {
        let vs = self.vertices();
        vs.iter()
            .flat_map(|a| vs.iter().map(move |b| a.distance(b).unwrap_or(0.0)))
            .fold(0.0, f64::max)
    }
}

/// Exponential chart about `base`: `(a, b) -> exp_base(a e1 + b e2)`.
pub(crate) fn chart(base: &ModelPoint) -> impl Fn(&[f64]) -> ModelPoint + '_ {
    let o = ModelPoint::origin(base.k());
    let e1 = if base.distance(&o).unwrap_or(0.0) < 1e-12 {
        Vec3::new(0.0, 1.0, 0.0)
    } else {
        let t = base.tangent_toward(&o).expect("same scale");
        t / minkowski(&t, &t).sqrt()
    };
    let e2 = base.rotate_quarter(&e1);
    move |x: &[f64]| {
        let v = e1 * x[0] + e2 * x[1];
        let len = minkowski(&v, &v).max(0.0).sqrt();
        if len == 0.0 {
            *base
        } else {
            base.exp(&v, len).expect("nonzero direction")
        }
    }
}

/// Inball of a general convex region by derivative-free maximization of depth.
pub fn region_inradius<R: ConvexRegion>(region: &R) -> Result<(ModelPoint, f64)> {
    let seed = region.seed();
    let at = chart(&seed);
    let nm = NelderMead {
        initial_step: 0.25 * region.size(),
        xtol: 1e-13,
        ftol: 0.0,
        max_iter: 50_000,
        restarts: 4,
    };
    let m = nm.minimize(|x| -region.depth(&at(x)).unwrap_or(f64::NEG_INFINITY), &[0.0, 0.0]);
    Ok((at(&m.x), -m.value))
}

/// Circumball of a general convex region by derivative-free minimization of reach.
pub fn region_circumradius<R: ConvexRegion>(region: &R) -> Result<(ModelPoint, f64)> {
    let seed = region.seed();
    let at = chart(&seed);
    let nm = NelderMead {
        initial_step: 0.25 * region.size(),
        xtol: 1e-13,
        ftol: 0.0,
        max_iter: 50_000,
        restarts: 4,
    };
    let m = nm.minimize(|x| region.reach(&at(x)).unwrap_or(f64::INFINITY), &[0.0, 0.0]);
    Ok((at(&m.x), m.value))
}
