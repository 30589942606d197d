//! Brute-force reference values for the extremal radii.
//!
//! These deliberately share nothing with the solvers in [`crate::extremal`]
//! beyond the distance primitives: a uniform Poincaré-disk grid, repeated
//! local refinement, and an optional simplex polish.

use crate::extremal::chart;
use crate::hyperbolic::ModelPoint;
use crate::optim::NelderMead;
use crate::polygon::{depth_to_lines, ConvexPolygon};

/// Window moves allowed per refinement level.
const MAX_RECENTRES: usize = 10_000;

#[derive(Debug, Clone, Copy)]
pub struct GridOracle {
    /// Cells per axis of the first grid over the bounding box.
    pub divisions: usize,
    /// Number of local refinements.
    pub levels: usize,
    /// Step reduction per refinement.
    pub factor: usize,
    /// Half-width of each refinement window, in steps of the previous level;
    /// the window is re-centred on the best point until it stays put.
    pub window: usize,
    /// Finish with a simplex search from the grid optimum. A grid search
    /// stalls where the objective's improving cone is narrower than the
    /// window resolves (two nearly coincident supporting vertices).
    pub polish: bool,
}

impl Default for GridOracle {
    fn default() -> Self {
        Self {
            divisions: 128,
            levels: 5,
            factor: 4,
            window: 2,
            polish: true,
        }
    }
}

/// Axis-aligned disk-coordinate box around `points`, padded so that the
/// geodesic hull (which bows toward the disk centre) stays inside.
pub fn padded_box(points: &[ModelPoint]) -> ([f64; 2], [f64; 2]) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in points {
        let uv = p.to_disk();
        for j in 0..2 {
            lo[j] = lo[j].min(uv[j]);
            hi[j] = hi[j].max(uv[j]);
        }
    }
    let pad = 0.25 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-6);
    (
        [(lo[0] - pad).max(-1.0), (lo[1] - pad).max(-1.0)],
        [(hi[0] + pad).min(1.0), (hi[1] + pad).min(1.0)],
    )
}

impl GridOracle {
    /// Maximizes `f` over disk points in the box `[lo, hi]`. `f` should be
    /// finite wherever it is meaningful and `-inf` elsewhere.
    pub fn maximize<F: Fn(&ModelPoint) -> f64>(
        &self,
        k: f64,
        lo: [f64; 2],
        hi: [f64; 2],
        f: F,
    ) -> (ModelPoint, f64) {
        let eval = |u: f64, v: f64| -> Option<(ModelPoint, f64)> {
            let p = ModelPoint::from_disk(k, [u, v]).ok()?;
            let val = f(&p);
            val.is_finite().then_some((p, val))
        };
        let mut step = [
            (hi[0] - lo[0]) / self.divisions as f64,
            (hi[1] - lo[1]) / self.divisions as f64,
        ];
        let mut best: Option<([f64; 2], ModelPoint, f64)> = None;
        let scan = |origin: [f64; 2], cells: usize, step: [f64; 2], best: &mut Option<([f64; 2], ModelPoint, f64)>| {
            for i in 0..=cells {
                for j in 0..=cells {
                    let u = origin[0] + i as f64 * step[0];
                    let v = origin[1] + j as f64 * step[1];
                    if let Some((p, val)) = eval(u, v) {
                        if best.as_ref().is_none_or(|b| val > b.2) {
                            *best = Some(([u, v], p, val));
                        }
                    }
                }
            }
        };
        scan(lo, self.divisions, step, &mut best);
        let w = self.window as f64;
        for _ in 0..self.levels {
            step = [step[0] / self.factor as f64, step[1] / self.factor as f64];
            // Re-centre until the best point stops moving: along the ridge of
            // a max of distances the optimum can drift far from the start.
            for _ in 0..MAX_RECENTRES {
                let Some((c, _, _)) = best else { break };
                let span = w * self.factor as f64;
                let origin = [c[0] - span * step[0], c[1] - span * step[1]];
                scan(origin, 2 * self.window * self.factor, step, &mut best);
                if best.as_ref().is_some_and(|b| b.0 == c) {
                    break;
                }
            }
        }
        let (_, p, v) = best.expect("grid box meets the disk");
        if !self.polish {
            return (p, v);
        }
        let at = chart(&p);
        let nm = NelderMead {
            initial_step: 4.0 * step[0].max(step[1]),
            xtol: 1e-14,
            restarts: 6,
            ..Default::default()
        };
        let m = nm.minimize(|x| -f(&at(x)), &[0.0, 0.0]);
        if -m.value > v {
            (at(&m.x), -m.value)
        } else {
            (p, v)
        }
    }

    /// Centre and radius of the largest disc inside `polygon`.
    pub fn inradius(&self, polygon: &ConvexPolygon) -> (ModelPoint, f64) {
        let lines = polygon.side_lines();
        let (lo, hi) = padded_box(polygon.vertices());
        self.maximize(polygon.k(), lo, hi, |p| {
            depth_to_lines(&lines, p).unwrap_or(f64::NEG_INFINITY)
        })
    }

    /// Centre and radius of the smallest disc containing `points`.
    pub fn circumradius(&self, points: &[ModelPoint]) -> (ModelPoint, f64) {
        let (lo, hi) = padded_box(points);
        let (c, v) = self.maximize(points[0].k(), lo, hi, |p| -max_distance(points, p));
        (c, -v)
    }
}

fn max_distance(points: &[ModelPoint], p: &ModelPoint) -> f64 {
    points
        .iter()
        .map(|q| q.distance(p).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

/// Simplex polish of the minimax centre of `points`, started at `start`.
pub fn minimax_refine(points: &[ModelPoint], start: &ModelPoint) -> (ModelPoint, f64) {
    let at = chart(start);
    let nm = NelderMead {
        initial_step: 1e-3,
        xtol: 1e-14,
        restarts: 6,
        ..Default::default()
    };
    let m = nm.minimize(|x| max_distance(points, &at(x)), &[0.0, 0.0]);
    (at(&m.x), m.value)
}
