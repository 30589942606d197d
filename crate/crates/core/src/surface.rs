//! Rotationally symmetric surfaces `dr^2 + f(r)^2 dtheta^2` with a pole at
//! `r = 0`, geodesics by shooting, and polygon measurements on them.
//!
//! A direction at a point `(r, theta)` is the angle `psi` from the outward
//! radial direction, counterclockwise (toward increasing `theta`). Geodesics
//! satisfy `r' = cos psi`, `theta' = sin psi / f`, `psi' = -f' sin psi / f`,
//! and `f(r) sin psi` is constant along them.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::CurvatureBand;
use crate::error::{GeomError, Result};
use crate::hyperbolic::{minkowski, GeodesicLine, ModelPoint, Vec3};
use crate::numeric::wrap_angle;
use crate::ode::Dopri;
use crate::optim::NelderMead;
use crate::polygon::{global_rho_condition, kappa_a, vertex_threshold};

/// Node spacing of the tabulated blended profile.
pub const TABLE_STEP: f64 = 1e-3;

/// Warped profile with `K(r) = -q(r)`, `q` moving from `k1^2` at the pole
/// to `k2^2` at `r_blend` along a smoothstep, constant beyond.
#[derive(Debug, Clone)]
pub struct BlendedProfile {
    pub k1: f64,
    pub k2: f64,
    pub r_blend: f64,
    f: Arc<Vec<f64>>,
    fp: Arc<Vec<f64>>,
}

fn smoothstep(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    x * x * (3.0 - 2.0 * x)
}

impl BlendedProfile {
    pub fn new(k1: f64, k2: f64, r_blend: f64) -> Result<Self> {
        if !(k1 >= k2 && k2 > 0.0 && r_blend > 0.0) {
            return Err(GeomError::Domain(format!(
                "blended profile needs k1 >= k2 > 0 and r_blend > 0 (got {k1}, {k2}, {r_blend})"
            )));
        }
        let q = |r: f64| k1 * k1 + (k2 * k2 - k1 * k1) * smoothstep(r / r_blend);
        let nodes = (r_blend / TABLE_STEP).ceil() as usize;
        let h = r_blend / nodes as f64;
        let mut f = Vec::with_capacity(nodes + 1);
        let mut fp = Vec::with_capacity(nodes + 1);
        let mut y = [0.0, 1.0];
        f.push(y[0]);
        fp.push(y[1]);
        let ode = Dopri {
            rtol: 1e-13,
            atol: 1e-15,
            ..Default::default()
        };
        for i in 0..nodes {
            y = ode.integrate(|r, y: &[f64; 2]| [y[1], q(r) * y[0]], i as f64 * h, y, (i + 1) as f64 * h)?;
            f.push(y[0]);
            fp.push(y[1]);
        }
        Ok(Self {
            k1,
            k2,
            r_blend,
            f: Arc::new(f),
            fp: Arc::new(fp),
        })
    }

    pub fn q(&self, r: f64) -> f64 {
        let (a, b) = (self.k1 * self.k1, self.k2 * self.k2);
        a + (b - a) * smoothstep(r / self.r_blend)
    }

    fn step(&self) -> f64 {
        self.r_blend / (self.f.len() - 1) as f64
    }

    /// `(f, f')` by cubic Hermite interpolation inside the table and the
    /// closed-form constant-curvature continuation beyond it.
    fn eval(&self, r: f64) -> (f64, f64) {
        let n = self.f.len() - 1;
        if r >= self.r_blend {
            let (fb, gb) = (self.f[n], self.fp[n]);
            let k = self.k2;
            let x = k * (r - self.r_blend);
            let (s, c) = (x.sinh(), x.cosh());
            return (fb * c + gb * s / k, fb * k * s + gb * c);
        }
        let h = self.step();
        let i = ((r / h) as usize).min(n - 1);
        let t = (r - i as f64 * h) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let (r0, r1) = (i as f64 * h, (i + 1) as f64 * h);
        let (f0, f1) = (self.f[i], self.f[i + 1]);
        let (g0, g1) = (self.fp[i], self.fp[i + 1]);
        let (d0, d1) = (self.q(r0) * f0, self.q(r1) * f1);
        let f = h00 * f0 + h10 * h * g0 + h01 * f1 + h11 * h * g1;
        let g = h00 * g0 + h10 * h * d0 + h01 * g1 + h11 * h * d1;
        (f, g)
    }
}

#[derive(Debug, Clone)]
pub enum SurfaceProfile {
    /// `f = sinh(k r) / k`, constant curvature `-k^2`.
    Sinh { k: f64 },
    Blended(BlendedProfile),
}

impl SurfaceProfile {
    pub fn sinh(k: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(GeomError::Domain(format!("k must be positive, got {k}")));
        }
        Ok(Self::Sinh { k })
    }

    pub fn blended(k1: f64, k2: f64, r_blend: f64) -> Result<Self> {
        Ok(Self::Blended(BlendedProfile::new(k1, k2, r_blend)?))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Sinh { .. } => "sinh",
            Self::Blended(_) => "blended",
        }
    }

    /// `(f(r), f'(r))`.
    pub fn eval(&self, r: f64) -> (f64, f64) {
        match self {
            Self::Sinh { k } => ((k * r).sinh() / k, (k * r).cosh()),
            Self::Blended(b) => b.eval(r),
        }
    }

    pub fn f(&self, r: f64) -> f64 {
        self.eval(r).0
    }

    pub fn fp(&self, r: f64) -> f64 {
        self.eval(r).1
    }

    pub fn fpp(&self, r: f64) -> f64 {
        match self {
            Self::Sinh { k } => k * (k * r).sinh(),
            Self::Blended(b) => b.q(r) * b.eval(r).0,
        }
    }

    /// Gauss curvature `-f''/f`, continued to the pole.
    pub fn curvature(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return match self {
                Self::Sinh { k } => -k * k,
                Self::Blended(b) => -b.q(0.0),
            };
        }
        -self.fpp(r) / self.f(r)
    }

    /// Scale of the constant-curvature model used to seed solvers near `r`.
    fn reference_k(&self, r: f64) -> f64 {
        (-self.curvature(r)).max(1e-6).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PinchingReport {
    pub min_curvature: f64,
    pub max_curvature: f64,
    pub holds: bool,
}

/// Samples `K = -f''/f` at `samples` points of `(0, r_max]` and checks
/// `-k1^2 - 1e-9 <= K <= -k2^2 + 1e-9`.
pub fn pinching_certificate(profile: &SurfaceProfile, band: &CurvatureBand, r_max: f64, samples: usize) -> PinchingReport {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 1..=samples {
        let kk = profile.curvature(r_max * i as f64 / samples as f64);
        lo = lo.min(kk);
        hi = hi.max(kk);
    }
    PinchingReport {
        min_curvature: lo,
        max_curvature: hi,
        holds: lo >= -band.k1 * band.k1 - 1e-9 && hi <= -band.k2 * band.k2 + 1e-9,
    }
}

/// Polar coordinates about the pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub r: f64,
    pub theta: f64,
}

impl SurfacePoint {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() || !theta.is_finite() {
            return Err(GeomError::Domain(format!("bad polar point ({r}, {theta})")));
        }
        Ok(Self {
            r,
            theta: theta.rem_euclid(2.0 * PI),
        })
    }

    pub fn pole() -> Self {
        Self { r: 0.0, theta: 0.0 }
    }

    /// Geodesic normal coordinates `(r cos theta, r sin theta)`.
    pub fn to_xy(&self) -> [f64; 2] {
        [self.r * self.theta.cos(), self.r * self.theta.sin()]
    }

    pub fn from_xy(xy: [f64; 2]) -> Self {
        Self {
            r: xy[0].hypot(xy[1]),
            theta: xy[1].atan2(xy[0]).rem_euclid(2.0 * PI),
        }
    }

    /// The same polar coordinates on the hyperboloid of curvature `-k^2`.
    pub fn to_model(&self, k: f64) -> ModelPoint {
        ModelPoint::from_polar(k, self.r, self.theta)
    }

    pub fn from_model(p: &ModelPoint) -> Self {
        let c = p.coords();
        let k = p.k();
        let r = (k * c.x).max(1.0).acosh() / k;
        Self {
            r,
            theta: c.z.atan2(c.y).rem_euclid(2.0 * PI),
        }
    }
}

/// Unit radial direction at `p` on the hyperboloid of the same polar coordinates.
fn model_radial(k: f64, p: &SurfacePoint) -> Vec3 {
    let (s, c) = ((k * p.r).sinh(), (k * p.r).cosh());
    Vec3::new(s, c * p.theta.cos(), c * p.theta.sin())
}

/// Angle from the radial direction at `p` to the model tangent `w`.
fn model_psi(k: f64, p: &SurfacePoint, w: &Vec3) -> f64 {
    let mp = p.to_model(k);
    let e = model_radial(k, p);
    mp.area_form(&e, w).atan2(minkowski(&e, w))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotEnd {
    pub point: SurfacePoint,
    /// Direction of travel at the end point.
    pub psi: f64,
    pub clairaut_start: f64,
    pub clairaut_end: f64,
}

fn ode() -> Dopri {
    Dopri::default()
}

/// Follows the geodesic from `start` in direction `psi` for signed length
/// `length`. At the pole, `psi` is read as the polar angle of the ray.
pub fn geodesic_shoot(profile: &SurfaceProfile, start: &SurfacePoint, psi: f64, length: f64) -> Result<ShotEnd> {
    if !length.is_finite() {
        return Err(GeomError::Domain(format!("length must be finite, got {length}")));
    }
    if start.r == 0.0 {
        let (r, th) = if length >= 0.0 { (length, psi) } else { (-length, psi + PI) };
        return Ok(ShotEnd {
            point: SurfacePoint::new(r, th)?,
            psi: 0.0,
            clairaut_start: 0.0,
            clairaut_end: 0.0,
        });
    }
    let psi = wrap_angle(psi);
    let c0 = profile.f(start.r) * psi.sin();
    if psi.sin().abs() < 1e-15 {
        let sign = psi.cos().signum();
        let r = start.r + sign * length;
        let (point, out_psi) = if r >= 0.0 {
            (SurfacePoint::new(r, start.theta)?, if sign > 0.0 { 0.0 } else { PI })
        } else {
            let out = if length >= 0.0 { 0.0 } else { PI };
            (SurfacePoint::new(-r, start.theta + PI)?, out)
        };
        return Ok(ShotEnd {
            point,
            psi: out_psi,
            clairaut_start: c0,
            clairaut_end: 0.0,
        });
    }
    let y = ode().integrate(
        |_, y: &[f64; 3]| {
            if !(y[0] > 0.0) {
                return [f64::NAN; 3];
            }
            let (f, fp) = profile.eval(y[0]);
            let (s, c) = y[2].sin_cos();
            [c, s / f, -fp * s / f]
        },
        0.0,
        [start.r, start.theta, psi],
        length,
    )?;
    Ok(ShotEnd {
        point: SurfacePoint::new(y[0], y[1])?,
        psi: wrap_angle(y[2]),
        clairaut_start: c0,
        clairaut_end: profile.f(y[0]) * y[2].sin(),
    })
}

/// Shortest geodesic between two points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub length: f64,
    /// Launch direction at the first point.
    pub psi_start: f64,
    /// Direction of travel on arrival at the second point.
    pub psi_end: f64,
}

/// Residual of an end point against a target, in local orthonormal units.
fn residual(profile: &SurfaceProfile, end: &SurfacePoint, target: &SurfacePoint) -> [f64; 2] {
    [end.r - target.r, profile.f(target.r) * wrap_angle(end.theta - target.theta)]
}

fn norm2(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// Solves `F(x) = 0` for `x = (a, b)` by damped Newton with a forward
/// difference in `a` and the supplied derivative in `b`.
fn newton2<F>(mut eval: F, x0: [f64; 2], what: &str) -> Result<([f64; 2], [f64; 2])>
where
    F: FnMut([f64; 2]) -> Result<([f64; 2], [f64; 2])>,
{
    let mut x = x0;
    let (mut fx, mut db) = eval(x)?;
    for it in 0..60 {
        let n = norm2(fx);
        if n < 1e-12 {
            return Ok((x, fx));
        }
        let ha = 1e-7;
        let (fa, _) = eval([x[0] + ha, x[1]])?;
        let da = [(fa[0] - fx[0]) / ha, (fa[1] - fx[1]) / ha];
        let det = da[0] * db[1] - da[1] * db[0];
        if det.abs() < 1e-300 {
            return Err(GeomError::NumericFailure {
                reason: format!("{what}: singular Jacobian"),
                iterations: it,
                best: n,
            });
        }
        let step = [
            (fx[0] * db[1] - fx[1] * db[0]) / det,
            (da[0] * fx[1] - da[1] * fx[0]) / det,
        ];
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let cand = [x[0] - lambda * step[0], x[1] - lambda * step[1]];
            if let Ok((fc, dc)) = eval(cand) {
                if norm2(fc) < n {
                    x = cand;
                    fx = fc;
                    db = dc;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            // At the integrator's noise floor no step reduces the residual.
            if n < 1e-9 {
                return Ok((x, fx));
            }
            return Err(GeomError::NumericFailure {
                reason: format!("{what}: line search stalled"),
                iterations: it,
                best: n,
            });
        }
    }
    let n = norm2(fx);
    if n < 1e-9 {
        return Ok((x, fx));
    }
    Err(GeomError::NumericFailure {
        reason: format!("{what}: no convergence"),
        iterations: 60,
        best: n,
    })
}

/// Two-point boundary value problem by shooting on `(psi, length)`.
pub fn geodesic_bvp(profile: &SurfaceProfile, p: &SurfacePoint, q: &SurfacePoint) -> Result<Segment> {
    if p.r == 0.0 && q.r == 0.0 {
        return Err(GeomError::Degenerate("both points are the pole".into()));
    }
    if p.r == 0.0 {
        return Ok(Segment {
            length: q.r,
            psi_start: q.theta,
            psi_end: 0.0,
        });
    }
    if q.r == 0.0 {
        return Ok(Segment {
            length: p.r,
            psi_start: PI,
            psi_end: PI,
        });
    }
    let dtheta = wrap_angle(q.theta - p.theta);
    if dtheta.abs() < 1e-14 {
        if (p.r - q.r).abs() == 0.0 {
            return Err(GeomError::Degenerate("coincident points".into()));
        }
        let (psi, len) = if q.r > p.r { (0.0, q.r - p.r) } else { (PI, p.r - q.r) };
        return Ok(Segment {
            length: len,
            psi_start: psi,
            psi_end: psi,
        });
    }
    if PI - dtheta.abs() < 1e-14 {
        return Ok(Segment {
            length: p.r + q.r,
            psi_start: PI,
            psi_end: 0.0,
        });
    }
    let k = profile.reference_k(0.5 * (p.r + q.r));
    let (mp, mq) = (p.to_model(k), q.to_model(k));
    let s0 = mp.distance(&mq)?;
    let psi0 = model_psi(k, p, &mp.tangent_toward(&mq)?);
    let (x, _) = newton2(
        |x| {
            let e = geodesic_shoot(profile, p, x[0], x[1])?;
            let f = profile.f(q.r);
            let (s, c) = e.psi.sin_cos();
            let db = [c, f * s / profile.f(e.point.r)];
            Ok((residual(profile, &e.point, q), db))
        },
        [psi0, s0],
        "geodesic boundary value problem",
    )?;
    let (psi, len) = (x[0], x[1]);
    let end = geodesic_shoot(profile, p, psi, len)?;
    Ok(Segment {
        length: len,
        psi_start: wrap_angle(psi),
        psi_end: end.psi,
    })
}

pub fn distance_bvp(profile: &SurfaceProfile, p: &SurfacePoint, q: &SurfacePoint) -> Result<f64> {
    Ok(geodesic_bvp(profile, p, q)?.length)
}

/// Interior angle at `a` of the triangle with the other vertices `b`, `c`,
/// from the launch directions of the two sides.
fn angle_between(psi_b: f64, psi_c: f64) -> f64 {
    wrap_angle(psi_b - psi_c).abs()
}

/// Angle opposite `a` in the triangle with sides `a, b, c` in curvature
/// `-k^2`, by the half-angle form of the law of cosines.
pub fn comparison_angle(k: f64, a: f64, b: f64, c: f64) -> f64 {
    let (a, b, c) = (k * a, k * b, k * c);
    let s = 0.5 * (a + b + c);
    let num = (s - b).max(0.0).sinh() * (s - c).max(0.0).sinh();
    let den = s.sinh() * (s - a).max(0.0).sinh();
    2.0 * (num / den).sqrt().atan()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ToponogovReport {
    pub sides: [f64; 3],
    pub angles: [f64; 3],
    pub comparison: [f64; 3],
    /// `angles - comparison`.
    pub margins: [f64; 3],
}

/// Measures the triangle on the surface and compares its angles with the
/// triangle of the same side lengths in curvature `-k1^2`.
pub fn toponogov_angle_check(profile: &SurfaceProfile, tri: &[SurfacePoint; 3], k1: f64) -> Result<ToponogovReport> {
    let ab = geodesic_bvp(profile, &tri[0], &tri[1])?;
    let bc = geodesic_bvp(profile, &tri[1], &tri[2])?;
    let ca = geodesic_bvp(profile, &tri[2], &tri[0])?;
    let back = |s: &Segment| wrap_angle(s.psi_end + PI);
    let angles = [
        angle_between(ab.psi_start, back(&ca)),
        angle_between(bc.psi_start, back(&ab)),
        angle_between(ca.psi_start, back(&bc)),
    ];
    // Side opposite vertex i.
    let sides = [bc.length, ca.length, ab.length];
    let comparison = [
        comparison_angle(k1, sides[0], sides[1], sides[2]),
        comparison_angle(k1, sides[1], sides[2], sides[0]),
        comparison_angle(k1, sides[2], sides[0], sides[1]),
    ];
    let margins = [
        angles[0] - comparison[0],
        angles[1] - comparison[1],
        angles[2] - comparison[2],
    ];
    Ok(ToponogovReport {
        sides,
        angles,
        comparison,
        margins,
    })
}

/// Geodesic polygon on a surface, counterclockwise, side `i` from `A[i-1]` to `A[i]`.
#[derive(Debug, Clone)]
pub struct SurfacePolygon {
    vertices: Vec<SurfacePoint>,
    sides: Vec<Segment>,
    angles: Vec<f64>,
}

impl SurfacePolygon {
    /// Measures sides and angles; fails unless every interior angle is in `(0, pi)`.
    pub fn new(profile: &SurfaceProfile, vertices: Vec<SurfacePoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::InvalidPolygon(format!("{n} vertices, need at least 3")));
        }
        let sides: Vec<Segment> = (0..n)
            .map(|i| geodesic_bvp(profile, &vertices[(i + n - 1) % n], &vertices[i]))
            .collect::<Result<_>>()?;
        let mut angles = Vec::with_capacity(n);
        for i in 0..n {
            let to_prev = sides[i].psi_end + PI;
            let to_next = sides[(i + 1) % n].psi_start;
            let a = (to_prev - to_next).rem_euclid(2.0 * PI);
            if !(a > 0.0 && a < PI) {
                return Err(GeomError::Domain(format!(
                    "not a convex counterclockwise polygon: angle {a} at vertex {i}"
                )));
            }
            angles.push(a);
        }
        Ok(Self { vertices, sides, angles })
    }

    pub fn vertices(&self) -> &[SurfacePoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        self.sides.iter().map(|s| s.length).collect()
    }

    pub fn interior_angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn kappa_a(&self) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| kappa_a(self.angles[i], self.sides[i].length, self.sides[(i + 1) % n].length))
            .collect()
    }

    /// Vertex and global hypotheses of the polygon radius theorem.
    pub fn hypotheses_hold(&self, band: &CurvatureBand, rho: f64) -> bool {
        let t = vertex_threshold(band.k1, rho);
        global_rho_condition(band, rho) && self.kappa_a().iter().all(|&k| k >= t)
    }

    /// Signed distance from `x` to side `i` (positive inside), from the foot
    /// of the perpendicular when it falls on the side, else the nearer end.
    pub fn side_distance(&self, profile: &SurfaceProfile, i: usize, x: &SurfacePoint) -> Result<f64> {
        let n = self.len();
        let a = &self.vertices[(i + n - 1) % n];
        let b = &self.vertices[i];
        let side = &self.sides[i];
        let k = profile.reference_k(0.5 * (a.r + b.r));
        let (ma, mb, mx) = (a.to_model(k), b.to_model(k), x.to_model(k));
        let line = GeodesicLine::through(&ma, &mb)?;
        let s0 = line.signed_distance(&mx)?;
        let foot = line.foot(&mx)?;
        let along = ma.tangent_toward(&mb)?;
        let t0 = if ma.distance(&foot)? < 1e-14 {
            0.0
        } else {
            minkowski(&along, &ma.tangent_toward(&foot)?).signum() * ma.distance(&foot)?
        };
        let (sol, _) = newton2(
            |y| {
                let base = geodesic_shoot(profile, a, side.psi_start, y[0])?;
                let e = geodesic_shoot(profile, &base.point, base.psi + FRAC_PI_2, y[1])?;
                let f = profile.f(x.r);
                let (s, c) = e.psi.sin_cos();
                let db = [c, f * s / profile.f(e.point.r)];
                Ok((residual(profile, &e.point, x), db))
            },
            [t0, s0],
            "perpendicular foot",
        )?;
        let (t, s) = (sol[0], sol[1]);
        if (0.0..=side.length).contains(&t) {
            return Ok(s);
        }
        let d = distance_bvp(profile, x, a)?.min(distance_bvp(profile, x, b)?);
        Ok(if s < 0.0 { -d } else { d })
    }

    pub fn depth(&self, profile: &SurfaceProfile, x: &SurfacePoint) -> Result<f64> {
        let mut m = f64::INFINITY;
        for i in 0..self.len() {
            m = m.min(self.side_distance(profile, i, x)?);
        }
        Ok(m)
    }

    pub fn reach(&self, profile: &SurfaceProfile, x: &SurfacePoint) -> Result<f64> {
        let mut m: f64 = 0.0;
        for v in &self.vertices {
            m = m.max(distance_bvp(profile, x, v)?);
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceRadii {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub incenter: SurfacePoint,
    pub circumcenter: SurfacePoint,
}

/// Best point of a small grid over the vertex box, in normal coordinates.
fn grid_start<F: FnMut([f64; 2]) -> f64>(poly: &SurfacePolygon, cells: usize, mut score: F) -> [f64; 2] {
    let xy: Vec<[f64; 2]> = poly.vertices.iter().map(|v| v.to_xy()).collect();
    let lo = [xy.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min), xy.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min)];
    let hi = [xy.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max), xy.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max)];
    let mut best = ([0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])], f64::INFINITY);
    for i in 1..cells {
        for j in 1..cells {
            let p = [
                lo[0] + (hi[0] - lo[0]) * i as f64 / cells as f64,
                lo[1] + (hi[1] - lo[1]) * j as f64 / cells as f64,
            ];
            let v = score(p);
            if v < best.1 {
                best = (p, v);
            }
        }
    }
    best.0
}

/// Inradius and circumradius of a geodesic polygon by direct optimization
/// of the side and vertex distances.
pub fn polygon_extremal_radii_numeric(profile: &SurfaceProfile, poly: &SurfacePolygon) -> Result<SurfaceRadii> {
    let size = poly.side_lengths().iter().copied().fold(0.0, f64::max);
    let nm = NelderMead {
        initial_step: 0.1 * size,
        xtol: 1e-9,
        ftol: 1e-13,
        max_iter: 2_000,
        restarts: 2,
    };
    let neg_depth = |xy: [f64; 2]| -> f64 {
        let x = SurfacePoint::from_xy(xy);
        poly.depth(profile, &x).map(|d| -d).unwrap_or(f64::INFINITY)
    };
    let start = grid_start(poly, 6, neg_depth);
    let m = nm.minimize(|x| neg_depth([x[0], x[1]]), &start);
    let (incenter, r) = (SurfacePoint::from_xy([m.x[0], m.x[1]]), -m.value);
    let reach = |xy: [f64; 2]| -> f64 {
        let x = SurfacePoint::from_xy(xy);
        poly.reach(profile, &x).unwrap_or(f64::INFINITY)
    };
    let start = grid_start(poly, 6, reach);
    let m = nm.minimize(|x| reach([x[0], x[1]]), &start);
    let (circumcenter, big_r) = (SurfacePoint::from_xy([m.x[0], m.x[1]]), m.value);
    if !(r.is_finite() && big_r.is_finite()) {
        return Err(GeomError::NumericFailure {
            reason: "surface radii did not converge".into(),
            iterations: m.iterations,
            best: big_r,
        });
    }
    Ok(SurfaceRadii {
        r,
        big_r,
        incenter,
        circumcenter,
    })
}

/// Sampling parameters for random geodesic polygons on a surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePolygonConfig {
    pub n_range: (usize, usize),
    /// Polar radius range of the sampling centre.
    pub center_r: (f64, f64),
    pub r0_range: (f64, f64),
    pub jitter: f64,
    pub max_attempts: usize,
}

impl SurfacePolygonConfig {
    pub fn new(band: &CurvatureBand, rho: f64, center_r: (f64, f64)) -> Self {
        let r0_max = 1.0 / vertex_threshold(band.k1, rho);
        Self {
            n_range: (3, 6),
            center_r,
            r0_range: (0.3 * r0_max, r0_max),
            jitter: 0.1,
            max_attempts: 2_000,
        }
    }
}

/// Draws a convex geodesic polygon with vertices on geodesic rays from a
/// random centre, rejecting samples that fail the hypotheses.
pub fn random_surface_polygon<R: Rng>(
    profile: &SurfaceProfile,
    band: &CurvatureBand,
    rho: f64,
    cfg: &SurfacePolygonConfig,
    rng: &mut R,
) -> Result<SurfacePolygon> {
    for _ in 0..cfg.max_attempts {
        let n = rng.random_range(cfg.n_range.0..=cfg.n_range.1);
        let c = SurfacePoint::new(
            rng.random_range(cfg.center_r.0..=cfg.center_r.1),
            rng.random_range(0.0..2.0 * PI),
        )?;
        let r0 = rng.random_range(cfg.r0_range.0..=cfg.r0_range.1);
        let mut dirs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
        dirs.sort_by(f64::total_cmp);
        let mut vs = Vec::with_capacity(n);
        for &d in &dirs {
            let len = r0 * (1.0 + rng.random_range(-cfg.jitter..=cfg.jitter));
            vs.push(geodesic_shoot(profile, &c, d, len)?.point);
        }
        let Ok(poly) = SurfacePolygon::new(profile, vs) else {
            continue;
        };
        if poly.hypotheses_hold(band, rho) {
            return Ok(poly);
        }
    }
    Err(GeomError::Hypothesis(format!(
        "no surface polygon met the hypotheses in {} attempts",
        cfg.max_attempts
    )))
}
