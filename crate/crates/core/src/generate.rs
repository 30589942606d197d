//! Seeded random convex polygons for corpus runs.
//!
//! Vertices sit on geodesic rays from a base point at sorted uniform angles
//! and jittered radius about `r0`; the polygon is then moved by a random
//! isometry. Samples failing convexity or (optionally) the vertex and global
//! hypotheses are rejected.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::bounds::CurvatureBand;
use crate::error::{GeomError, Result};
use crate::hyperbolic::{Isometry, ModelPoint};
use crate::polygon::{
    check_theorem2_hypotheses, global_rho_condition, vertex_threshold, ConvexPolygon,
    CurvatureDefinition,
};

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub band: CurvatureBand,
    pub rho: f64,
    /// Inclusive vertex-count range.
    pub n_range: (usize, usize),
    /// Model curvature scale `k` drawn uniformly from this range.
    pub k_range: (f64, f64),
    /// Circumradius `r0` of the sampling circle.
    pub r0_range: (f64, f64),
    /// Relative radial jitter of each vertex.
    pub jitter: f64,
    /// Largest distance the base point is moved from the origin.
    pub max_offset: f64,
    pub require_hypotheses: bool,
    pub definition: CurvatureDefinition,
    /// Attempts allowed per accepted polygon.
    pub max_attempts: usize,
}

impl GeneratorConfig {
    /// Defaults for `band` and `rho`: `k` spans the band, and `r0` is at most
    /// `1 / ((pi/2) k1 coth(k1 rho))`, the radius at which a regular polygon's
    /// vertex curvature meets the threshold.
    pub fn new(band: CurvatureBand, rho: f64) -> Self {
        let r0_max = 1.0 / vertex_threshold(band.k1, rho);
        Self {
            band,
            rho,
            n_range: (3, 8),
            k_range: (band.k2.max(1e-3), band.k1),
            r0_range: (0.2 * r0_max, r0_max),
            jitter: 0.1,
            max_offset: 1.0,
            require_hypotheses: true,
            definition: CurvatureDefinition::A,
            max_attempts: 10_000,
        }
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = self.n_range;
        if a < 3 || b < a {
            return Err(GeomError::Domain(format!("bad vertex-count range {a}..={b}")));
        }
        let (lo, hi) = self.k_range;
        if !(lo > 0.0 && hi >= lo) {
            return Err(GeomError::Domain(format!("bad curvature range [{lo}, {hi}]")));
        }
        let (lo, hi) = self.r0_range;
        if !(lo > 0.0 && hi >= lo) {
            return Err(GeomError::Domain(format!("bad radius range [{lo}, {hi}]")));
        }
        if !(self.rho > 0.0) {
            return Err(GeomError::Domain(format!("rho must be positive, got {}", self.rho)));
        }
        if self.require_hypotheses && !global_rho_condition(&self.band, self.rho) {
            return Err(GeomError::Hypothesis(format!(
                "global condition coth(k2 rho) >= k1/k2 fails for k1 = {}, k2 = {}, rho = {}",
                self.band.k1, self.band.k2, self.rho
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RejectionStats {
    pub attempts: usize,
    pub accepted: usize,
    pub nonconvex: usize,
    pub hypothesis: usize,
}

/// Draws a uniformly random orientation-preserving motion moving the origin
/// at most `max_offset`.
pub fn random_isometry<R: Rng>(k: f64, max_offset: f64, rng: &mut R) -> Isometry {
    let d = if max_offset > 0.0 {
        rng.random_range(0.0..max_offset)
    } else {
        0.0
    };
    Isometry::rotation(rng.random_range(0.0..2.0 * PI))
        .then(&Isometry::translation_x(k, d))
        .then(&Isometry::rotation(rng.random_range(0.0..2.0 * PI)))
}

fn sample<R: Rng>(cfg: &GeneratorConfig, rng: &mut R) -> Result<ConvexPolygon> {
    let n = rng.random_range(cfg.n_range.0..=cfg.n_range.1);
    let (klo, khi) = cfg.k_range;
    let k = if khi > klo { rng.random_range(klo..=khi) } else { klo };
    let (rlo, rhi) = cfg.r0_range;
    let r0 = if rhi > rlo { rng.random_range(rlo..=rhi) } else { rlo };
    let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
    angles.sort_by(f64::total_cmp);
    let iso = random_isometry(k, cfg.max_offset, rng);
    let vertices = angles
        .iter()
        .map(|&t| {
            let j = if cfg.jitter > 0.0 {
                rng.random_range(-cfg.jitter..=cfg.jitter)
            } else {
                0.0
            };
            iso.apply(&ModelPoint::from_polar(k, r0 * (1.0 + j), t))
        })
        .collect();
    ConvexPolygon::new(vertices)
}

/// Draws one accepted polygon, updating `stats`.
pub fn generate_polygon<R: Rng>(
    cfg: &GeneratorConfig,
    rng: &mut R,
    stats: &mut RejectionStats,
) -> Result<ConvexPolygon> {
    cfg.validate()?;
    for _ in 0..cfg.max_attempts {
        stats.attempts += 1;
        let Ok(p) = sample(cfg, rng) else {
            stats.nonconvex += 1;
            continue;
        };
        if cfg.require_hypotheses {
            let h = check_theorem2_hypotheses(&p, &cfg.band, cfg.rho, cfg.definition)?;
            if !h.holds {
                stats.hypothesis += 1;
                continue;
            }
        }
        stats.accepted += 1;
        return Ok(p);
    }
    Err(GeomError::Hypothesis(format!(
        "no polygon accepted in {} attempts ({} non-convex, {} failing kappa >= {:.6})",
        cfg.max_attempts,
        stats.nonconvex,
        stats.hypothesis,
        vertex_threshold(cfg.band.k1, cfg.rho)
    )))
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub polygons: Vec<ConvexPolygon>,
    pub stats: RejectionStats,
}

pub fn generate_corpus<R: Rng>(cfg: &GeneratorConfig, size: usize, rng: &mut R) -> Result<Corpus> {
    cfg.validate()?;
    let mut stats = RejectionStats::default();
    let mut polygons = Vec::with_capacity(size);
    for _ in 0..size {
        polygons.push(generate_polygon(cfg, rng, &mut stats)?);
    }
    Ok(Corpus { polygons, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn accepted_polygons_pass() {
        let band = CurvatureBand::new(1.0, 0.5, false).unwrap();
        let cfg = GeneratorConfig::new(band, 0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = generate_corpus(&cfg, 50, &mut rng).unwrap();
        assert_eq!(c.polygons.len(), 50);
        for p in &c.polygons {
            let h = check_theorem2_hypotheses(p, &band, 0.5, CurvatureDefinition::A).unwrap();
            assert!(h.holds);
            assert!(p.k() >= 0.5 && p.k() <= 1.0);
        }
        assert!(c.stats.attempts >= 50);
    }

    #[test]
    fn same_seed_same_corpus() {
        let band = CurvatureBand::new(1.0, 0.5, false).unwrap();
        let cfg = GeneratorConfig::new(band, 0.5);
        let a = generate_corpus(&cfg, 10, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = generate_corpus(&cfg, 10, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a.polygons, b.polygons);
    }

    #[test]
    fn unreachable_global_condition() {
        let band = CurvatureBand::new(1.0, 0.5, false).unwrap();
        let cfg = GeneratorConfig::new(band, 2.0);
        let err = generate_corpus(&cfg, 1, &mut ChaCha8Rng::seed_from_u64(0)).unwrap_err();
        assert!(err.to_string().contains("coth(k2 rho)"), "{err}");
    }
}
