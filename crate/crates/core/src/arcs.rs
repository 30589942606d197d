//! Rounding a polygon by circular arcs of a common radius, the angle
//! conditions that make the rounded curve convex, and its outer parallels.
//!
//! Side `i` of the polygon joins `A[i-1]` to `A[i]`; arc `i` spans the same
//! pair and bulges outward, with its centre `O[i]` on the interior side.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::bounds::{thm1_bounds, CurvatureBand, RadiusBounds};
use crate::error::{GeomError, Result};
use crate::hyperbolic::{angle_at, minkowski, oriented_angle, ModelPoint, Vec3};
use crate::numeric::{acosh_clamped, k_coth};
use crate::polygon::ConvexPolygon;

/// Slack allowed when a side is spanned by a half circle exactly.
pub const SPAN_TOL: f64 = 1e-12;

/// Tolerance for the implication checks between the three conditions.
pub const IMPLICATION_TOL: f64 = 1e-9;

/// Circular arc of radius `radius` about `center` from `A[from]` to `A[to]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    pub center: ModelPoint,
    pub radius: f64,
    pub from_index: usize,
    pub to_index: usize,
    /// Central angle swept counterclockwise from `A[from]` to `A[to]`.
    pub sweep: f64,
}

/// The rounded curve: one arc per side, all of radius `rho`.
#[derive(Debug, Clone)]
pub struct ArcChain {
    polygon: ConvexPolygon,
    rho: f64,
    arcs: Vec<Arc>,
    /// `delta[i] = pi/2 - angle(A[i-1], A[i], O[i])`.
    delta_in: Vec<f64>,
    /// `pi/2 - angle(O[i+1], A[i], A[i+1])`.
    delta_out: Vec<f64>,
    /// Counterclockwise angle at `A[i]` from `O[i]` to `O[i+1]`.
    junction: Vec<f64>,
}

/// `asin(tanh(k1 l / 2) / tanh(k1 rho))`, the base-angle complement of an
/// isosceles comparison triangle with legs `rho` and base `l`.
pub fn delta_bar(l: f64, rho: f64, k1: f64) -> Result<f64> {
    if !(l >= 0.0) || !(rho > 0.0) || !(k1 >= 0.0) {
        return Err(GeomError::Domain(format!(
            "delta_bar needs l >= 0, rho > 0, k1 >= 0 (got {l}, {rho}, {k1})"
        )));
    }
    let ratio = if k1 == 0.0 {
        0.5 * l / rho
    } else {
        (0.5 * k1 * l).tanh() / (k1 * rho).tanh()
    };
    if ratio > 1.0 + SPAN_TOL {
        return Err(GeomError::Span {
            side: None,
            length: l,
            rho,
        });
    }
    Ok(ratio.min(1.0).asin())
}

/// Centre of the radius-`rho` circle through `a` and `b` lying to the left
/// of `a -> b`.
pub fn arc_center(a: &ModelPoint, b: &ModelPoint, rho: f64) -> Result<Option<ModelPoint>> {
    let k = a.k();
    let l = a.distance(b)?;
    let ratio = (k * rho).cosh() / (0.5 * k * l).cosh();
    if ratio < 1.0
        && 0.5 * l - rho > SPAN_TOL * rho.max(1.0) {
            return Ok(None);
        }
    let h = acosh_clamped(ratio.max(1.0)) / k;
    let m = a.midpoint(b)?;
    let along = m.tangent_toward(b)?;
    let left = m.rotate_quarter(&(along / minkowski(&along, &along).sqrt()));
    if h == 0.0 {
        return Ok(Some(m));
    }
    Ok(Some(m.exp(&left, h)?))
}

pub fn build_arc_chain(polygon: &ConvexPolygon, rho: f64) -> Result<ArcChain> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(GeomError::Domain(format!("rho must be positive and finite, got {rho}")));
    }
    let n = polygon.len();
    let v = polygon.vertices();
    let prev = |i: usize| (i + n - 1) % n;
    let mut arcs = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (&v[prev(i)], &v[i]);
        let center = arc_center(a, b, rho)?.ok_or(GeomError::Span {
            side: Some(i),
            length: a.distance(b).unwrap_or(f64::NAN),
            rho,
        })?;
        let mut sweep = oriented_angle(&center, a, b)?;
        // A half circle can land on either side of the branch cut.
        if sweep < 0.0 && sweep > -1e-9 {
            sweep = PI;
        }
        if sweep <= 0.0 {
            sweep += 2.0 * PI;
        }
        arcs.push(Arc {
            center,
            radius: rho,
            from_index: prev(i),
            to_index: i,
            sweep,
        });
    }
    let mut delta_in = Vec::with_capacity(n);
    let mut delta_out = Vec::with_capacity(n);
    let mut junction = Vec::with_capacity(n);
    for i in 0..n {
        let next = (i + 1) % n;
        let (oi, on) = (&arcs[i].center, &arcs[next].center);
        delta_in.push(FRAC_PI_2 - angle_at(&v[i], &v[prev(i)], oi)?);
        delta_out.push(FRAC_PI_2 - angle_at(&v[i], on, &v[next])?);
        junction.push(oriented_angle(&v[i], oi, on)?);
    }
    Ok(ArcChain {
        polygon: polygon.clone(),
        rho,
        arcs,
        delta_in,
        delta_out,
        junction,
    })
}

impl ArcChain {
    pub fn polygon(&self) -> &ConvexPolygon {
        &self.polygon
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn k(&self) -> f64 {
        self.polygon.k()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Measured `(delta_i, delta_{i+1})` at vertex `i`.
    pub fn deltas(&self, i: usize) -> (f64, f64) {
        (self.delta_in[i], self.delta_out[i])
    }

    /// Comparison angles `(delta_bar_i, delta_bar_{i+1})` at vertex `i`.
    pub fn delta_bars(&self, i: usize, k1: f64) -> Result<(f64, f64)> {
        let l = self.polygon.side_lengths();
        let n = self.len();
        Ok((
            delta_bar(l[i], self.rho, k1)?,
            delta_bar(l[(i + 1) % n], self.rho, k1)?,
        ))
    }

    /// Counterclockwise angle at `A[i]` from `O[i]` to `O[i+1]`; the turn of
    /// the chain at `A[i]` is this angle, so the chain is convex there when
    /// it lies in `[0, pi]`.
    pub fn junction_angle(&self, i: usize) -> f64 {
        self.junction[i]
    }

    pub fn is_convex(&self, tol: f64) -> bool {
        self.junction.iter().all(|&j| j >= -tol && j <= PI + tol)
    }

    /// Whether `p` lies in the intersection of the closed discs `D(O[i], rho)`.
    /// For a convex chain this is the region it bounds.
    pub fn contains(&self, p: &ModelPoint, tol: f64) -> Result<bool> {
        for a in &self.arcs {
            if a.center.distance(p)? > self.rho + tol {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Unsigned distance from `p` to the curve itself.
    pub fn distance_to_curve(&self, p: &ModelPoint) -> Result<f64> {
        let v = self.polygon.vertices();
        let mut best = f64::INFINITY;
        for a in &self.arcs {
            best = best.min(distance_to_arc(p, a, &v[a.from_index], &v[a.to_index])?);
        }
        Ok(best)
    }

    /// Distance from `p` to the closed region bounded by the chain.
    pub fn distance_to_region(&self, p: &ModelPoint) -> Result<f64> {
        if self.contains(p, 0.0)? {
            return Ok(0.0);
        }
        self.distance_to_curve(p)
    }

    /// Point of arc `i` at fraction `t` of its sweep.
    pub fn arc_point(&self, i: usize, t: f64) -> Result<ModelPoint> {
        let a = &self.arcs[i];
        let start = &self.polygon.vertices()[a.from_index];
        let dir = a.center.tangent_toward(start)?;
        a.center.exp(&a.center.rotate(&dir, t * a.sweep), a.radius)
    }
}

fn distance_to_arc(p: &ModelPoint, arc: &Arc, from: &ModelPoint, to: &ModelPoint) -> Result<f64> {
    let d = arc.center.distance(p)?;
    if d < 1e-14 {
        return Ok(arc.radius);
    }
    let mut phi = oriented_angle(&arc.center, from, p)?;
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    if phi <= arc.sweep {
        return Ok((d - arc.radius).abs());
    }
    Ok(from.distance(p)?.min(to.distance(p)?))
}

/// Status of the three convexity conditions at one vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub index: usize,
    pub alpha: f64,
    pub kappa: f64,
    pub l_prev: f64,
    pub l_next: f64,
    /// `kappa (l_prev + l_next) / 2`, which equals `pi - alpha`.
    pub rhs: f64,
    pub junction_angle: f64,
    pub delta_prev: f64,
    pub delta_next: f64,
    pub delta_bar_prev: f64,
    pub delta_bar_next: f64,
    pub cco1: bool,
    pub cco2: bool,
    pub cco3: bool,
    /// False if a stronger condition holds while a weaker one fails by more
    /// than [`IMPLICATION_TOL`].
    pub implications_ok: bool,
}

pub fn convexity_condition(chain: &ArcChain, i: usize, k1: f64) -> Result<ConditionReport> {
    let n = chain.len();
    if i >= n {
        return Err(GeomError::Domain(format!("vertex {i} out of range for {n} vertices")));
    }
    let l = chain.polygon.side_lengths();
    let alpha = chain.polygon.interior_angles()[i];
    let (lp, ln) = (l[i], l[(i + 1) % n]);
    let kappa = crate::polygon::kappa_a(alpha, lp, ln);
    let rhs = 0.5 * kappa * (lp + ln);
    let j = chain.junction[i];
    let (dp, dn) = chain.deltas(i);
    let (bp, bn) = chain.delta_bars(i, k1)?;
    let cco1 = (0.0..=PI).contains(&j);
    let cco2 = dp + dn <= rhs;
    let cco3 = bp + bn <= rhs;
    let cco1_loose = (-IMPLICATION_TOL..=PI + IMPLICATION_TOL).contains(&j);
    let cco2_loose = dp + dn <= rhs + IMPLICATION_TOL;
    let implications_ok = !(cco3 && !cco2_loose) && !(cco2 && !cco1_loose) && !(cco3 && !cco1_loose);
    Ok(ConditionReport {
        index: i,
        alpha,
        kappa,
        l_prev: lp,
        l_next: ln,
        rhs,
        junction_angle: j,
        delta_prev: dp,
        delta_next: dn,
        delta_bar_prev: bp,
        delta_bar_next: bn,
        cco1,
        cco2,
        cco3,
        implications_ok,
    })
}

pub fn convexity_conditions(chain: &ArcChain, k1: f64) -> Result<Vec<ConditionReport>> {
    (0..chain.len()).map(|i| convexity_condition(chain, i, k1)).collect()
}

/// The five terms of the inequality chain bounding `delta_bar_i + delta_bar_{i+1}`
/// by `kappa (l_i + l_{i+1}) / 2`, and the slack of each link.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BpaiChain {
    /// `[sum delta_bar, (pi/2) sum sin, (pi/2) sum tanh / tanh(k1 rho),
    ///   hypothesis-weighted sum, kappa (l + l') / 2]`.
    pub terms: [f64; 5],
    /// `terms[j + 1] - terms[j]`.
    pub slacks: [f64; 4],
}

impl BpaiChain {
    pub fn min_slack(&self) -> f64 {
        self.slacks.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Evaluates the chain
/// `sum delta_bar <= (pi/2) sum sin(delta_bar) = (pi/2) coth(k1 rho) sum tanh(k1 l/2)
///  <= (pi/2) k1 coth(k1 rho) (l + l')/2 <= kappa (l + l')/2`.
pub fn check_bpai_chain(l_prev: f64, l_next: f64, kappa: f64, k1: f64, rho: f64) -> Result<BpaiChain> {
    let bp = delta_bar(l_prev, rho, k1)?;
    let bn = delta_bar(l_next, rho, k1)?;
    let half_sum = 0.5 * (l_prev + l_next);
    let t0 = bp + bn;
    let t1 = FRAC_PI_2 * (bp.sin() + bn.sin());
    let (t2, t3) = if k1 == 0.0 {
        (
            FRAC_PI_2 * half_sum / rho,
            FRAC_PI_2 * half_sum / rho,
        )
    } else {
        let tsum = (0.5 * k1 * l_prev).tanh() + (0.5 * k1 * l_next).tanh();
        let c = 1.0 / (k1 * rho).tanh();
        (FRAC_PI_2 * c * tsum, FRAC_PI_2 * k1 * c * half_sum)
    };
    let t4 = kappa * half_sum;
    let terms = [t0, t1, t2, t3, t4];
    let slacks = [t1 - t0, t2 - t1, t3 - t2, t4 - t3];
    Ok(BpaiChain { terms, slacks })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    /// Offset of side arc `i`, radius `rho + eps` about `O[i]`.
    Side,
    /// Arc of radius `eps` about vertex `A[i]`.
    Vertex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub kind: PieceKind,
    pub index: usize,
    pub center: ModelPoint,
    pub radius: f64,
    /// Unit tangent at `center` toward the start of the piece.
    pub start: Vec3,
    pub sweep: f64,
}

impl Piece {
    pub fn point(&self, t: f64) -> Result<ModelPoint> {
        self.center
            .exp(&self.center.rotate(&self.start, t * self.sweep), self.radius)
    }

    /// Geodesic curvature, exact for a circle: `k coth(k r)`.
    pub fn curvature(&self) -> f64 {
        k_coth(self.center.k(), self.radius)
    }
}

/// Outer parallel at distance `eps` of a convex arc chain.
#[derive(Debug, Clone)]
pub struct ParallelCurve {
    base: ArcChain,
    eps: f64,
    pieces: Vec<Piece>,
}

pub fn parallel_curve(chain: &ArcChain, eps: f64) -> Result<ParallelCurve> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(GeomError::Domain(format!("eps must be positive, got {eps}")));
    }
    if let Some(i) = (0..chain.len()).find(|&i| !(0.0..=PI).contains(&chain.junction[i])) {
        return Err(GeomError::Hypothesis(format!(
            "arc chain turns by {} at vertex {i}, outside [0, pi]",
            chain.junction[i]
        )));
    }
    let n = chain.len();
    let v = chain.polygon.vertices();
    let mut pieces = Vec::with_capacity(2 * n);
    for i in 0..n {
        let a = &chain.arcs[i];
        let start = a.center.tangent_toward(&v[a.from_index])?;
        pieces.push(Piece {
            kind: PieceKind::Side,
            index: i,
            center: a.center,
            radius: chain.rho + eps,
            start: start / minkowski(&start, &start).sqrt(),
            sweep: a.sweep,
        });
        let inward = v[i].tangent_toward(&a.center)?;
        let out = -inward / minkowski(&inward, &inward).sqrt();
        pieces.push(Piece {
            kind: PieceKind::Vertex,
            index: i,
            center: v[i],
            radius: eps,
            start: out,
            sweep: chain.junction[i],
        });
    }
    Ok(ParallelCurve {
        base: chain.clone(),
        eps,
        pieces,
    })
}

impl ParallelCurve {
    pub fn base(&self) -> &ArcChain {
        &self.base
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Smallest and largest piece curvature.
    pub fn curvature_range(&self) -> (f64, f64) {
        self.pieces.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), p| {
            let c = p.curvature();
            (lo.min(c), hi.max(c))
        })
    }

    /// Whether every piece curvature lies in the band's admissible range:
    /// `[k2 coth(k2 r), k1 coth(k1 r)]` with `r = rho + eps` on side pieces
    /// and `r = eps` on vertex pieces.
    pub fn curvatures_in_band(&self, band: &CurvatureBand, tol: f64) -> bool {
        self.pieces.iter().all(|p| {
            let c = p.curvature();
            c >= k_coth(band.k2, p.radius) - tol && c <= k_coth(band.k1, p.radius) + tol
        })
    }

    /// Radius bounds for the smooth curve from its curvature lower bound
    /// `k2 coth(k2 (rho + eps))`.
    pub fn smooth_bounds(&self, band: &CurvatureBand) -> Result<RadiusBounds> {
        thm1_bounds(band, self.base.rho + self.eps)
    }

    /// Points within `eps` of the chain region.
    pub fn contains(&self, p: &ModelPoint, tol: f64) -> Result<bool> {
        Ok(self.base.distance_to_region(p)? <= self.eps + tol)
    }
}
