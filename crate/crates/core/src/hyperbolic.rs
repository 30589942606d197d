//! Hyperbolic plane of curvature `-k^2` in the hyperboloid model.
//!
//! A point is a vector `p = (t, x, y)` of Minkowski space with
//! `<p, p> = -1/k^2` and `t > 0`, where `<a, b> = -a.t b.t + a.x b.x + a.y b.y`.
//! Geodesics are the intersections of the sheet with planes through the
//! origin, so a line is stored by its unit spacelike Minkowski normal.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};

use crate::error::{GeomError, Result};
use crate::numeric::{acosh_clamped, k_coth};

pub type Vec3 = Vector3<f64>;

/// Residual `|k^2 <p,p> + 1|` accepted before a vector is renormalized.
pub const SHEET_TOL: f64 = 1e-9;

/// Relative tolerance used when comparing curvature scales.
const SCALE_TOL: f64 = 1e-12;

/// Minkowski inner product with signature (-, +, +).
#[inline]
pub fn minkowski(a: &Vec3, b: &Vec3) -> f64 {
    -a.x * b.x + a.y * b.y + a.z * b.z
}

/// Lorentz cross product `J (a x b)`, characterized by
/// `<a ⊠ b, c> = det(a, b, c)`.
#[inline]
pub fn lorentz_cross(a: &Vec3, b: &Vec3) -> Vec3 {
    let c = a.cross(b);
    Vec3::new(-c.x, c.y, c.z)
}

#[inline]
fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    a.dot(&b.cross(c))
}

fn check_scale(a: f64, b: f64) -> Result<()> {
    if (a - b).abs() <= SCALE_TOL * a.abs().max(b.abs()) {
        Ok(())
    } else {
        Err(GeomError::ScaleMismatch(a, b))
    }
}

fn check_k(k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        Err(GeomError::Domain(format!("curvature scale must be positive, got {k}")))
    }
}

/// A point of the hyperbolic plane of curvature `-k^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    coords: Vec3,
    k: f64,
}

impl ModelPoint {
    /// Builds a point from Minkowski coordinates, renormalizing onto the
    /// sheet. Fails when the residual exceeds [`SHEET_TOL`] or `t <= 0`.
    pub fn new(coords: Vec3, k: f64) -> Result<Self> {
        check_k(k)?;
        let residual = (k * k * minkowski(&coords, &coords) + 1.0).abs();
        if !(residual <= SHEET_TOL) || coords.x <= 0.0 {
            return Err(GeomError::OffSheet(residual));
        }
        Self::project(coords, k)
    }

    /// Rescales any future-pointing timelike vector onto the sheet.
    pub fn project(v: Vec3, k: f64) -> Result<Self> {
        check_k(k)?;
        let n = minkowski(&v, &v);
        if !(n < 0.0) || v.x <= 0.0 {
            return Err(GeomError::Degenerate(
                "vector is not future-pointing timelike".into(),
            ));
        }
        let s = 1.0 / (k * (-n).sqrt());
        Ok(Self { coords: v * s, k })
    }

    /// The base point `(1/k, 0, 0)`, the centre of the Poincaré disk.
    pub fn origin(k: f64) -> Self {
        Self {
            coords: Vec3::new(1.0 / k, 0.0, 0.0),
            k,
        }
    }

    /// Point at geodesic distance `r` from the origin in direction `theta`.
    pub fn from_polar(k: f64, r: f64, theta: f64) -> Self {
        let (s, c) = ((k * r).sinh() / k, (k * r).cosh() / k);
        Self {
            coords: Vec3::new(c, s * theta.cos(), s * theta.sin()),
            k,
        }
    }

    /// Poincaré-disk coordinates `(u, v)`, `u^2 + v^2 < 1`, to the sheet:
    /// with `s = u^2 + v^2`, `t = (1 + s) / (k (1 - s))`,
    /// `x = 2u / (k (1 - s))`, `y = 2v / (k (1 - s))`.
    pub fn from_disk(k: f64, uv: [f64; 2]) -> Result<Self> {
        check_k(k)?;
        let [u, v] = uv;
        let s = u * u + v * v;
        if !(s < 1.0) {
            return Err(GeomError::Domain(format!(
                "disk coordinates ({u}, {v}) are not inside the unit disk"
            )));
        }
        let d = k * (1.0 - s);
        Self::project(Vec3::new((1.0 + s) / d, 2.0 * u / d, 2.0 * v / d), k)
    }

    /// Inverse of [`ModelPoint::from_disk`]: `u = k x / (1 + k t)`,
    /// `v = k y / (1 + k t)`.
    pub fn to_disk(&self) -> [f64; 2] {
        let d = 1.0 + self.k * self.coords.x;
        [self.k * self.coords.y / d, self.k * self.coords.z / d]
    }

    /// Same disk coordinates read in curvature `-k'^2`; all lengths scale by `k / k'`.
    pub fn with_curvature(&self, k: f64) -> Result<Self> {
        Self::from_disk(k, self.to_disk())
    }

    pub fn coords(&self) -> &Vec3 {
        &self.coords
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// `|k^2 <p,p> + 1|`.
    pub fn sheet_residual(&self) -> f64 {
        (self.k * self.k * minkowski(&self.coords, &self.coords) + 1.0).abs()
    }

    /// Geodesic distance `(1/k) acosh(-k^2 <p,q>)`.
    pub fn distance(&self, other: &ModelPoint) -> Result<f64> {
        check_scale(self.k, other.k)?;
        let k = self.k;
        let c = -k * k * minkowski(&self.coords, &other.coords);
        if c <= 1.0 {
            return Ok(0.0);
        }
        // Near coincident points acosh loses half the digits; the chord form
        // 2 asinh(k |p - q|_M / 2) is exact in that regime.
        if c < 1.5 {
            let d = self.coords - other.coords;
            let chord = minkowski(&d, &d).max(0.0).sqrt();
            return Ok(2.0 * (0.5 * k * chord).asinh() / k);
        }
        Ok(acosh_clamped(c) / k)
    }

    /// Tangent vector at `self` pointing toward `other` (not normalized).
    pub fn tangent_toward(&self, other: &ModelPoint) -> Result<Vec3> {
        check_scale(self.k, other.k)?;
        let k2 = self.k * self.k;
        Ok(other.coords + self.coords * (k2 * minkowski(&self.coords, &other.coords)))
    }

    /// Follows the geodesic with initial unit tangent `dir` for length `t`.
    pub fn exp(&self, dir: &Vec3, t: f64) -> Result<ModelPoint> {
        let n = minkowski(dir, dir);
        if !(n > 0.0) {
            return Err(GeomError::Degenerate("zero tangent direction".into()));
        }
        let u = dir / n.sqrt();
        let kt = self.k * t;
        Self::project(self.coords * kt.cosh() + u * (kt.sinh() / self.k), self.k)
    }

    /// Point at distance `t` from `self` along the geodesic toward `other`.
    pub fn toward(&self, other: &ModelPoint, t: f64) -> Result<ModelPoint> {
        let v = self.tangent_toward(other)?;
        self.exp(&v, t)
    }

    /// Geodesic midpoint.
    pub fn midpoint(&self, other: &ModelPoint) -> Result<ModelPoint> {
        check_scale(self.k, other.k)?;
        Self::project(self.coords + other.coords, self.k)
    }

    /// Unit tangent at `self` obtained by rotating `v` by `+pi/2`.
    pub fn rotate_quarter(&self, v: &Vec3) -> Vec3 {
        // k p ⊠ v is the positive quarter turn of v in T_p.
        lorentz_cross(&self.coords, v) * self.k
    }

    /// Oriented area form `k det(p, a, b)` on the tangent plane at `self`;
    /// positive when `b` is counterclockwise from `a`.
    pub fn area_form(&self, a: &Vec3, b: &Vec3) -> f64 {
        self.k * det3(&self.coords, a, b)
    }

    /// Point of the unit tangent circle at `self` at angle `theta` counterclockwise
    /// from the direction `a`.
    pub fn rotate(&self, a: &Vec3, theta: f64) -> Vec3 {
        let n = minkowski(a, a).sqrt();
        let e = a / n;
        let f = self.rotate_quarter(&e);
        e * theta.cos() + f * theta.sin()
    }
}

/// Interior angle at `vertex` between the geodesics toward `a` and `b`, in `[0, pi]`.
pub fn angle_at(vertex: &ModelPoint, a: &ModelPoint, b: &ModelPoint) -> Result<f64> {
    Ok(oriented_angle(vertex, a, b)?.abs())
}

/// Signed angle at `vertex` from the ray toward `from` to the ray toward `to`,
/// counterclockwise positive, in `(-pi, pi]`.
pub fn oriented_angle(vertex: &ModelPoint, from: &ModelPoint, to: &ModelPoint) -> Result<f64> {
    let va = vertex.tangent_toward(from)?;
    let vb = vertex.tangent_toward(to)?;
    let na = minkowski(&va, &va);
    let nb = minkowski(&vb, &vb);
    let scale = vertex.coords.norm().powi(2);
    if na <= 1e-30 * scale || nb <= 1e-30 * scale {
        return Err(GeomError::Degenerate("angle with coincident points".into()));
    }
    let sin = vertex.area_form(&va, &vb);
    let cos = minkowski(&va, &vb);
    let a = sin.atan2(cos);
    Ok(if a <= -PI { PI } else { a })
}

/// A complete geodesic `{p : <p, u> = 0}` with `<u, u> = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicLine {
    normal: Vec3,
    k: f64,
}

impl GeodesicLine {
    pub fn new(normal: Vec3, k: f64) -> Result<Self> {
        check_k(k)?;
        let n = minkowski(&normal, &normal);
        if !(n > 0.0) {
            return Err(GeomError::Degenerate("line normal must be spacelike".into()));
        }
        Ok(Self {
            normal: normal / n.sqrt(),
            k,
        })
    }

    /// Line through `a` and `b`; points to the left of `a -> b` have positive
    /// signed distance.
    pub fn through(a: &ModelPoint, b: &ModelPoint) -> Result<Self> {
        check_scale(a.k, b.k)?;
        let n = lorentz_cross(&a.coords, &b.coords);
        if minkowski(&n, &n) <= 1e-28 * a.coords.norm_squared() * b.coords.norm_squared() {
            return Err(GeomError::Degenerate("line through coincident points".into()));
        }
        Self::new(n, a.k)
    }

    pub fn normal(&self) -> &Vec3 {
        &self.normal
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Signed distance `(1/k) asinh(k <p, u>)`.
    pub fn signed_distance(&self, p: &ModelPoint) -> Result<f64> {
        check_scale(self.k, p.k)?;
        Ok((self.k * minkowski(&p.coords, &self.normal)).asinh() / self.k)
    }

    /// Reflection across the line.
    pub fn reflect(&self, p: &ModelPoint) -> Result<ModelPoint> {
        check_scale(self.k, p.k)?;
        let s = minkowski(&p.coords, &self.normal);
        ModelPoint::project(p.coords - self.normal * (2.0 * s), self.k)
    }

    /// Foot of the perpendicular dropped from `p`.
    pub fn foot(&self, p: &ModelPoint) -> Result<ModelPoint> {
        check_scale(self.k, p.k)?;
        let s = minkowski(&p.coords, &self.normal);
        ModelPoint::project(p.coords - self.normal * s, self.k)
    }

    /// Arclength parametrization starting at the foot of the origin.
    pub fn point_at(&self, t: f64) -> Result<ModelPoint> {
        let base = self.foot(&ModelPoint::origin(self.k))?;
        let dir = lorentz_cross(&self.normal, base.coords());
        base.exp(&dir, t)
    }
}

/// A geodesic circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: ModelPoint,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: ModelPoint, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) {
            return Err(GeomError::Domain(format!("negative radius {radius}")));
        }
        Ok(Self { center, radius })
    }

    /// Normal curvature `k coth(k r)` of the circle.
    pub fn normal_curvature(&self) -> Result<f64> {
        circle_normal_curvature(self.center.k, self.radius)
    }

    pub fn contains(&self, p: &ModelPoint, tol: f64) -> Result<bool> {
        Ok(self.center.distance(p)? <= self.radius + tol)
    }

    /// Point of the circle at angle `theta` measured from the `x` direction
    /// transported from the origin (exact for circles about the origin).
    pub fn point(&self, theta: f64) -> Result<ModelPoint> {
        let c = &self.center;
        let o = ModelPoint::origin(c.k);
        let base = if c.distance(&o)? < 1e-14 {
            Vec3::new(0.0, 1.0, 0.0)
        } else {
            c.tangent_toward(&o)?
        };
        c.exp(&c.rotate(&base, theta), self.radius)
    }
}

/// Normal curvature `k coth(k r)` of a geodesic circle of radius `r`.
pub fn circle_normal_curvature(k: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(GeomError::Domain(format!("circle radius must be positive, got {r}")));
    }
    Ok(k_coth(k, r))
}

/// Equidistant point of three points, if it exists. Collinear triples and
/// triples lying on a horocycle or hypercycle yield `None`.
pub fn circumcircle_three_points(
    a: &ModelPoint,
    b: &ModelPoint,
    c: &ModelPoint,
) -> Result<Option<Circle>> {
    check_scale(a.k, b.k)?;
    check_scale(a.k, c.k)?;
    let k = a.k;
    if a.distance(b)? == 0.0 || a.distance(c)? == 0.0 || b.distance(c)? == 0.0 {
        return Err(GeomError::Degenerate("circumcircle of coincident points".into()));
    }
    let (pa, pb, pc) = (a.coords, b.coords, c.coords);
    let coll = det3(&pa, &pb, &pc);
    let scale = pa.norm() * pb.norm() * pc.norm();
    if coll.abs() <= 1e-14 * scale {
        return Ok(None);
    }
    let mut w = lorentz_cross(&(pa - pb), &(pa - pc));
    let n = minkowski(&w, &w);
    if !(n < -1e-14 * w.norm_squared()) {
        return Ok(None);
    }
    if w.x < 0.0 {
        w = -w;
    }
    let center = ModelPoint::project(w, k)?;
    let radius = center.distance(a)?;
    Ok(Some(Circle { center, radius }))
}

/// Smallest circle through two points (centred at their midpoint).
pub fn two_point_circle(a: &ModelPoint, b: &ModelPoint) -> Result<Circle> {
    let center = a.midpoint(b)?;
    Ok(Circle {
        center,
        radius: 0.5 * a.distance(b)?,
    })
}

/// Orientation-preserving isometry of the sheet, a matrix in `SO+(2,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    m: Matrix3<f64>,
}

impl Isometry {
    pub fn identity() -> Self {
        Self {
            m: Matrix3::identity(),
        }
    }

    /// Rotation by `theta` about the origin.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            m: Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c),
        }
    }

    /// Translation by geodesic distance `d` along the `x` axis in curvature `-k^2`.
    pub fn translation_x(k: f64, d: f64) -> Self {
        let (s, c) = ((k * d).sinh(), (k * d).cosh());
        Self {
            m: Matrix3::new(c, s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0),
        }
    }

    /// Applies `self` after `other`.
    pub fn then(&self, next: &Isometry) -> Self {
        Self { m: next.m * self.m }
    }

    pub fn apply(&self, p: &ModelPoint) -> ModelPoint {
        // Isometries of SO+(2,1) keep the sheet; projection only absorbs rounding.
        ModelPoint::project(self.m * p.coords, p.k).expect("isometry keeps the sheet")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unit(t: f64, x: f64, y: f64) -> ModelPoint {
        ModelPoint::new(Vec3::new(t, x, y), 1.0).unwrap()
    }

    #[test]
    fn distance_examples() {
        let p = unit(1.0, 0.0, 0.0);
        assert_eq!(p.distance(&p).unwrap(), 0.0);
        let q = unit(1f64.cosh(), 1f64.sinh(), 0.0);
        assert_abs_diff_eq!(p.distance(&q).unwrap(), 1.0, epsilon = 1e-14);
        let q2 = unit(1f64.cosh(), -1f64.sinh(), 0.0);
        assert_abs_diff_eq!(q.distance(&q2).unwrap(), 2.0, epsilon = 1e-13);
    }

    #[test]
    fn scale_mismatch_is_an_error() {
        let p = ModelPoint::origin(1.0);
        let q = ModelPoint::origin(0.5);
        assert!(matches!(p.distance(&q), Err(GeomError::ScaleMismatch(..))));
    }

    #[test]
    fn off_sheet_rejected() {
        assert!(matches!(
            ModelPoint::new(Vec3::new(1.1, 0.0, 0.0), 1.0),
            Err(GeomError::OffSheet(_))
        ));
        assert!(ModelPoint::new(Vec3::new(-1.0, 0.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn disk_round_trip_and_origin() {
        let p = ModelPoint::from_disk(2.0, [0.3, -0.4]).unwrap();
        let [u, v] = p.to_disk();
        assert_abs_diff_eq!(u, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(v, -0.4, epsilon = 1e-15);
        assert!(p.sheet_residual() < 1e-12);
        let o = ModelPoint::from_disk(2.0, [0.0, 0.0]).unwrap();
        assert_eq!(o, ModelPoint::origin(2.0));
        assert!(ModelPoint::from_disk(1.0, [0.8, 0.6]).is_err());
    }

    #[test]
    fn disk_radius_matches_distance() {
        // disk radius w corresponds to distance (2/k) atanh(w)
        let k = 0.7;
        let p = ModelPoint::from_disk(k, [0.5, 0.0]).unwrap();
        let d = p.distance(&ModelPoint::origin(k)).unwrap();
        assert_abs_diff_eq!(d, 2.0 * 0.5f64.atanh() / k, epsilon = 1e-14);
    }

    #[test]
    fn straight_and_zero_angles() {
        let o = ModelPoint::origin(1.0);
        let a = ModelPoint::from_polar(1.0, 0.7, 0.3);
        let b = ModelPoint::from_polar(1.0, 1.1, 0.3 + PI);
        assert_abs_diff_eq!(angle_at(&o, &a, &b).unwrap(), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(angle_at(&o, &a, &a).unwrap(), 0.0, epsilon = 1e-12);
        assert!(angle_at(&o, &o, &a).is_err());
    }

    #[test]
    fn equilateral_angle_matches_law_of_cosines() {
        // side 1, k = 1: cos(alpha) = cosh(1) / (cosh(1) + 1)
        let alpha = (1f64.cosh() / (1f64.cosh() + 1.0)).acos();
        assert_abs_diff_eq!(alpha, 0.918_797_872_178_027_4, epsilon = 1e-15);
        // circumradius R of the equilateral triangle: sinh(R) = sinh(1/2) / sin(pi/3)
        let r = ((0.5f64).sinh() / (PI / 3.0).sin()).asinh();
        let vs: Vec<_> = (0..3)
            .map(|i| ModelPoint::from_polar(1.0, r, 2.0 * PI * i as f64 / 3.0))
            .collect();
        assert_abs_diff_eq!(vs[0].distance(&vs[1]).unwrap(), 1.0, epsilon = 1e-13);
        let a = angle_at(&vs[0], &vs[1], &vs[2]).unwrap();
        assert_abs_diff_eq!(a, alpha, epsilon = 1e-12);
    }

    #[test]
    fn oriented_angle_sign() {
        let o = ModelPoint::origin(1.0);
        let a = ModelPoint::from_polar(1.0, 0.5, 0.0);
        let b = ModelPoint::from_polar(1.0, 0.5, 1.0);
        assert_abs_diff_eq!(oriented_angle(&o, &a, &b).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(oriented_angle(&o, &b, &a).unwrap(), -1.0, epsilon = 1e-12);
    }

    #[test]
    fn line_signed_distance_and_reflection() {
        let k = 1.3;
        let a = ModelPoint::from_polar(k, 0.4, 0.2);
        let b = ModelPoint::from_polar(k, 0.9, 2.0);
        let line = GeodesicLine::through(&a, &b).unwrap();
        assert_abs_diff_eq!(line.signed_distance(&a).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(line.signed_distance(&b).unwrap(), 0.0, epsilon = 1e-14);
        // the origin is to the left of a -> b here
        let o = ModelPoint::origin(k);
        let d = line.signed_distance(&o).unwrap();
        assert!(d > 0.0);
        let ro = line.reflect(&o).unwrap();
        assert_abs_diff_eq!(line.signed_distance(&ro).unwrap(), -d, epsilon = 1e-13);
        let foot = line.foot(&o).unwrap();
        assert_abs_diff_eq!(o.distance(&foot).unwrap(), d, epsilon = 1e-13);
    }

    #[test]
    fn line_distance_matches_dense_sampling() {
        let k = 0.8;
        let a = ModelPoint::from_polar(k, 1.0, -0.3);
        let b = ModelPoint::from_polar(k, 0.6, 1.9);
        let line = GeodesicLine::through(&a, &b).unwrap();
        let p = ModelPoint::from_polar(k, 0.9, 3.5);
        let exact = line.signed_distance(&p).unwrap().abs();
        // coarse scan followed by successive local rescans
        let mut best_t = 0.0;
        let mut best = f64::INFINITY;
        let (mut lo, mut hi) = (-20.0, 20.0);
        for _ in 0..8 {
            let steps = 400;
            for i in 0..=steps {
                let t = lo + (hi - lo) * i as f64 / steps as f64;
                let d = p.distance(&line.point_at(t).unwrap()).unwrap();
                if d < best {
                    best = d;
                    best_t = t;
                }
            }
            let h = (hi - lo) / steps as f64;
            lo = best_t - 2.0 * h;
            hi = best_t + 2.0 * h;
        }
        assert_abs_diff_eq!(best, exact, epsilon = 1e-10);
    }

    #[test]
    fn circle_curvature() {
        assert_abs_diff_eq!(
            circle_normal_curvature(1.0, 1.0).unwrap(),
            1.313_035_285_499_331_3,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            circle_normal_curvature(1.0, 0.5).unwrap(),
            2.163_953_413_738_653,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(circle_normal_curvature(1.0, 40.0).unwrap(), 1.0, epsilon = 1e-15);
        assert!(circle_normal_curvature(1.0, 0.0).is_err());
        assert!(circle_normal_curvature(1.0, -1.0).is_err());
    }

    #[test]
    fn circumcircle_constructed_inverse() {
        let c = ModelPoint::from_polar(1.0, 1.0, 0.0);
        let circle = Circle::new(c, 1.0).unwrap();
        let pts: Vec<_> = [0.3, 2.0, 4.4].iter().map(|&t| circle.point(t).unwrap()).collect();
        let got = circumcircle_three_points(&pts[0], &pts[1], &pts[2])
            .unwrap()
            .unwrap();
        assert!(got.center.distance(&c).unwrap() < 1e-9);
        assert_abs_diff_eq!(got.radius, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn circumcircle_collinear_is_none() {
        let a = ModelPoint::from_polar(1.0, 0.5, 0.0);
        let b = ModelPoint::origin(1.0);
        let c = ModelPoint::from_polar(1.0, 0.8, PI);
        assert!(circumcircle_three_points(&a, &b, &c).unwrap().is_none());
    }

    #[test]
    fn circumcircle_hypercycle_is_none() {
        // three points at equal distance on one side of a line lie on a hypercycle
        let line = GeodesicLine::new(Vec3::new(0.0, 0.0, 1.0), 1.0).unwrap();
        let pts: Vec<_> = [-3.0, 0.0, 3.0]
            .iter()
            .map(|&t| {
                let f = line.point_at(t).unwrap();
                let n = Vec3::new(0.0, 0.0, 1.0);
                f.exp(&n, 0.5).unwrap()
            })
            .collect();
        assert!(circumcircle_three_points(&pts[0], &pts[1], &pts[2])
            .unwrap()
            .is_none());
    }

    #[test]
    fn isometry_moves_origin() {
        let iso = Isometry::translation_x(0.5, 2.0);
        let p = iso.apply(&ModelPoint::origin(0.5));
        assert_abs_diff_eq!(
            p.distance(&ModelPoint::origin(0.5)).unwrap(),
            2.0,
            epsilon = 1e-12
        );
    }
}
