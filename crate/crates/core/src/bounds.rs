//! Inradius and circumradius bounds for convex curves and polygons in
//! surfaces with curvature pinched in `[-k1^2, -k2^2]`.
//!
//! Every circumradius bound adds a term `c ln 2` to an inradius bound. The
//! prefactor is exposed through [`Ln2Variant`]: `AsWritten` uses `c = k1`,
//! `Dimensional` uses `c = 1/k1`, the only choice that keeps the bound a
//! length under rescaling. The two agree at `k1 = 1`.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{GeomError, Result};
use crate::extremal::{circumradius, inradius};
use crate::numeric::{arccoth, k_coth};
use crate::polygon::{check_theorem2_hypotheses, ConvexPolygon, CurvatureDefinition};

/// Width of the band around an `arccoth` argument of 1 reported as unbounded.
pub const ARCCOTH_GUARD: f64 = 1e-12;

/// A verdict fails when some margin is below `-VERDICT_TOL`.
pub const VERDICT_TOL: f64 = 1e-6;

/// Pinching constants with `-k1^2 <= K <= -k2^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureBand {
    pub k1: f64,
    pub k2: f64,
    /// The upper bound is strict (`K < -k2^2`).
    #[serde(default)]
    pub strict: bool,
}

impl CurvatureBand {
    pub fn new(k1: f64, k2: f64, strict: bool) -> Result<Self> {
        if !(k1 > 0.0 && k1.is_finite()) || !(k2 >= 0.0) || k2 > k1 {
            return Err(GeomError::Domain(format!(
                "curvature band needs k1 >= k2 >= 0 and k1 > 0, got k1={k1}, k2={k2}"
            )));
        }
        Ok(Self { k1, k2, strict })
    }

    /// Whether a constant-curvature model `-k^2` lies in the band.
    pub fn contains_model(&self, k: f64) -> bool {
        let tol = 1e-12 * self.k1;
        k >= self.k2 - tol && k <= self.k1 + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ln2Variant {
    #[default]
    Dimensional,
    AsWritten,
}

impl Ln2Variant {
    pub fn prefactor(self, k1: f64) -> f64 {
        match self {
            Ln2Variant::Dimensional => 1.0 / k1,
            Ln2Variant::AsWritten => k1,
        }
    }
}

/// `c ln 2` for the chosen prefactor.
pub fn ln2_term(k1: f64, variant: Ln2Variant) -> f64 {
    variant.prefactor(k1) * LN_2
}

/// A bound that may be infinite at the boundary of a hypothesis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Finite(f64),
    Unbounded,
}

impl Bound {
    pub fn value(self) -> f64 {
        match self {
            Bound::Finite(v) => v,
            Bound::Unbounded => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    fn plus(self, x: f64) -> Bound {
        match self {
            Bound::Finite(v) => Bound::Finite(v + x),
            Bound::Unbounded => Bound::Unbounded,
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => s.serialize_f64(*v),
            Bound::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusBounds {
    pub r_max: Bound,
    #[serde(rename = "R_max_dimensional")]
    pub circum_dimensional: Bound,
    #[serde(rename = "R_max_as_written")]
    pub circum_as_written: Bound,
}

impl RadiusBounds {
    fn from_inradius(r_max: Bound, k1: f64) -> Self {
        Self {
            r_max,
            circum_dimensional: r_max.plus(ln2_term(k1, Ln2Variant::Dimensional)),
            circum_as_written: r_max.plus(ln2_term(k1, Ln2Variant::AsWritten)),
        }
    }

    pub fn circum(&self, variant: Ln2Variant) -> Bound {
        match variant {
            Ln2Variant::Dimensional => self.circum_dimensional,
            Ln2Variant::AsWritten => self.circum_as_written,
        }
    }
}

/// `(1/k1) arccoth(x)`, unbounded when `x` is within the guard band of 1.
fn arccoth_bound(x: f64, k1: f64, what: &str) -> Result<Bound> {
    if (x - 1.0).abs() <= ARCCOTH_GUARD {
        return Ok(Bound::Unbounded);
    }
    if !(x > 1.0) {
        return Err(GeomError::Hypothesis(format!(
            "{what} = {x} must be at least 1"
        )));
    }
    Ok(Bound::Finite(arccoth(x) / k1))
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(GeomError::Domain(format!("rho must be positive, got {rho}")))
    }
}

/// Bounds for a `k2 coth(k2 rho)`-convex curve with `k2 coth(k2 rho) >= k1`:
/// `r <= (1/k1) arccoth((k2/k1) coth(k2 rho))`, `R <= r_max + c ln 2`.
pub fn thm1_bounds(band: &CurvatureBand, rho: f64) -> Result<RadiusBounds> {
    check_rho(rho)?;
    if !(band.k2 > 0.0) {
        return Err(GeomError::Domain("k2 must be positive; use the k2 = 0 bounds".into()));
    }
    let x = k_coth(band.k2, rho) / band.k1;
    let r_max = arccoth_bound(x, band.k1, "k2 coth(k2 rho) / k1")?;
    Ok(RadiusBounds::from_inradius(r_max, band.k1))
}

/// Bounds for a `k1 coth(k1 rho)`-convex curve: `r <= rho`, `R <= rho + c ln 2`.
pub fn thm1prime_bounds(k1: f64, rho: f64) -> Result<RadiusBounds> {
    check_rho(rho)?;
    if !(k1 > 0.0) {
        return Err(GeomError::Domain(format!("k1 must be positive, got {k1}")));
    }
    Ok(RadiusBounds::from_inradius(Bound::Finite(rho), k1))
}

/// Bounds for a `1/rho`-convex curve with `1/rho >= k1`:
/// `r <= (1/k1) arccoth(1/(k1 rho))`.
pub fn thm1doubleprime_bounds(k1: f64, rho: f64) -> Result<RadiusBounds> {
    check_rho(rho)?;
    if !(k1 > 0.0) {
        return Err(GeomError::Domain(format!("k1 must be positive, got {k1}")));
    }
    let r_max = arccoth_bound(1.0 / (k1 * rho), k1, "1 / (k1 rho)")?;
    Ok(RadiusBounds::from_inradius(r_max, k1))
}

/// Polygon bounds, the `k2 = 0` case falling back to the `1/rho` form.
pub fn thm2_bounds(band: &CurvatureBand, rho: f64) -> Result<RadiusBounds> {
    if band.k2 > 0.0 {
        thm1_bounds(band, rho)
    } else {
        thm1doubleprime_bounds(band.k1, rho)
    }
}

/// `c ln((1 + sqrt(tau))^2 / (1 + tau))` with `tau = tanh(k1 r / 2)`.
pub fn lemma_bm02_gap(k1: f64, r: f64, variant: Ln2Variant) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(GeomError::Domain(format!("inradius must be non-negative, got {r}")));
    }
    let tau = gap_tau(k1, r);
    let s = tau.sqrt();
    Ok(variant.prefactor(k1) * ((1.0 + s).powi(2) / (1.0 + tau)).ln())
}

/// `c ln 2` minus the gap bound, evaluated without cancellation as
/// `c ln(1 + q^2)`, `q = (1 - tau) / (1 + sqrt(tau))^2`. Positive for every
/// finite `r` until `q^2` underflows.
pub fn lemma_bm02_deficit(k1: f64, r: f64, variant: Ln2Variant) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(GeomError::Domain(format!("inradius must be non-negative, got {r}")));
    }
    let x = k1 * r;
    let e = (-x).exp();
    // 1 - tanh(x/2) = 2 e^{-x} / (1 + e^{-x})
    let one_minus_tau = 2.0 * e / (1.0 + e);
    let s = gap_tau(k1, r).sqrt();
    let q = one_minus_tau / (1.0 + s).powi(2);
    Ok(variant.prefactor(k1) * (q * q).ln_1p())
}

pub fn gap_tau(k1: f64, r: f64) -> f64 {
    (0.5 * k1 * r).tanh()
}

/// Normal-curvature range `[k2 coth(k2 r), k1 coth(k1 r)]` of a geodesic
/// circle of radius `r`.
pub fn sphere_curvature_range(band: &CurvatureBand, r: f64) -> Result<(f64, f64)> {
    if !(r > 0.0) {
        return Err(GeomError::Domain(format!("radius must be positive, got {r}")));
    }
    Ok((k_coth(band.k2, r), k_coth(band.k1, r)))
}

/// Lower curvature bound demanded of the curve, `k2 coth(k2 rho)` (or `1/rho`).
pub fn required_curvature(band: &CurvatureBand, rho: f64) -> f64 {
    k_coth(band.k2, rho)
}

/// `k1 coth(k1 r) - k2 coth(k2 rho)`; non-negative under the polygon theorem.
pub fn rupb_margin(band: &CurvatureBand, r: f64, rho: f64) -> f64 {
    k_coth(band.k1, r) - required_curvature(band, rho)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisFlags {
    pub vertex: Vec<bool>,
    pub global: bool,
    pub model_in_band: bool,
    pub strict_band: bool,
    pub all: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Margins {
    /// `k1 coth(k1 r) - k2 coth(k2 rho)`.
    pub rupb: f64,
    pub r: Bound,
    #[serde(rename = "R")]
    pub big_r: Bound,
    pub gap: f64,
}

impl Margins {
    /// Smallest margin among the theorem's own conclusions (`rupb`, `r`, `R`).
    /// The gap margin is reported but does not enter the verdict: the gap
    /// bound presumes a `k1`-convex domain, which a polygon is not.
    pub fn theorem_min(&self) -> f64 {
        self.rupb.min(self.r.value()).min(self.big_r.value())
    }

    pub fn min(&self) -> f64 {
        self.rupb
            .min(self.r.value())
            .min(self.big_r.value())
            .min(self.gap)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub k: f64,
    pub k1: f64,
    pub k2: f64,
    pub rho: f64,
    pub variant: Ln2Variant,
    pub definition: CurvatureDefinition,
    pub hypotheses: HypothesisFlags,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub r_bound: Option<Bound>,
    #[serde(rename = "R_bound_dimensional")]
    pub big_r_bound_dimensional: Option<Bound>,
    #[serde(rename = "R_bound_as_written")]
    pub big_r_bound_as_written: Option<Bound>,
    pub tau: f64,
    pub gap_bound_dimensional: f64,
    pub gap_bound_as_written: f64,
    pub margins: Option<Margins>,
    pub verdict: Verdict,
}

impl BoundsReport {
    pub fn gap_bound(&self) -> f64 {
        match self.variant {
            Ln2Variant::Dimensional => self.gap_bound_dimensional,
            Ln2Variant::AsWritten => self.gap_bound_as_written,
        }
    }
}

/// Measures `r` and `R` of a polygon and checks them against the polygon
/// bounds and the gap bound. Without the hypotheses the report is `Skipped`.
pub fn verify_theorem2(
    polygon: &ConvexPolygon,
    band: &CurvatureBand,
    rho: f64,
    variant: Ln2Variant,
    definition: CurvatureDefinition,
) -> Result<BoundsReport> {
    let hyp = check_theorem2_hypotheses(polygon, band, rho, definition)?;
    let model_in_band = band.contains_model(polygon.k());
    let all = hyp.holds && model_in_band;
    let r = inradius(polygon)?.r;
    let big_r = circumradius(polygon)?.radius;
    let bounds = thm2_bounds(band, rho).ok();
    let gap_dim = lemma_bm02_gap(band.k1, r, Ln2Variant::Dimensional)?;
    let gap_aw = lemma_bm02_gap(band.k1, r, Ln2Variant::AsWritten)?;
    let gap_selected = match variant {
        Ln2Variant::Dimensional => gap_dim,
        Ln2Variant::AsWritten => gap_aw,
    };

    let margins = match (all, bounds) {
        (true, Some(b)) => Some(Margins {
            rupb: rupb_margin(band, r, rho),
            r: b.r_max.plus(-r),
            big_r: b.circum(variant).plus(-big_r),
            gap: gap_selected - (big_r - r),
        }),
        _ => None,
    };
    let verdict = match &margins {
        None => Verdict::Skipped,
        Some(m) if m.theorem_min() < -VERDICT_TOL => Verdict::Fail,
        Some(_) => Verdict::Pass,
    };
    Ok(BoundsReport {
        n: polygon.len(),
        k: polygon.k(),
        k1: band.k1,
        k2: band.k2,
        rho,
        variant,
        definition,
        hypotheses: HypothesisFlags {
            vertex: hyp.per_vertex,
            global: hyp.global,
            model_in_band,
            strict_band: band.strict,
            all,
        },
        r,
        big_r,
        r_bound: bounds.map(|b| b.r_max),
        big_r_bound_dimensional: bounds.map(|b| b.circum_dimensional),
        big_r_bound_as_written: bounds.map(|b| b.circum_as_written),
        tau: gap_tau(band.k1, r),
        gap_bound_dimensional: gap_dim,
        gap_bound_as_written: gap_aw,
        margins,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn band(k1: f64, k2: f64) -> CurvatureBand {
        CurvatureBand::new(k1, k2, false).unwrap()
    }

    #[test]
    fn band_validation() {
        assert!(CurvatureBand::new(0.5, 1.0, false).is_err());
        assert!(CurvatureBand::new(0.0, 0.0, false).is_err());
        assert!(CurvatureBand::new(1.0, 0.0, true).is_ok());
    }

    #[test]
    fn thm1_examples() {
        let b = thm1_bounds(&band(0.7, 0.7), 1.3).unwrap();
        assert_abs_diff_eq!(b.r_max.value(), 1.3, epsilon = 1e-12);
        let b = thm1_bounds(&band(1.0, 0.5), 0.5).unwrap();
        assert_abs_diff_eq!(b.r_max.value(), 0.535_846_284_586_881_1, epsilon = 1e-13);
        assert_abs_diff_eq!(b.circum_dimensional.value(), 0.535_846_284_586_881_1 + LN_2, epsilon = 1e-13);
        // k2 coth(k2 rho) < k1
        assert!(matches!(
            thm1_bounds(&band(1.0, 0.5), 3.0),
            Err(GeomError::Hypothesis(_))
        ));
    }

    #[test]
    fn thm1prime_example() {
        let b = thm1prime_bounds(1.0, 1.0).unwrap();
        assert_eq!(b.r_max, Bound::Finite(1.0));
        assert_abs_diff_eq!(b.circum_dimensional.value(), 1.693_147_180_559_945_3, epsilon = 1e-15);
        assert_eq!(b.circum_dimensional, b.circum_as_written);
        let b2 = thm1prime_bounds(2.0, 1.0).unwrap();
        assert_abs_diff_eq!(b2.circum_dimensional.value(), 1.0 + 0.5 * LN_2, epsilon = 1e-15);
        assert_abs_diff_eq!(b2.circum_as_written.value(), 1.0 + 2.0 * LN_2, epsilon = 1e-15);
    }

    #[test]
    fn thm1doubleprime_examples() {
        let b = thm1doubleprime_bounds(1.0, 0.5).unwrap();
        assert_abs_diff_eq!(b.r_max.value(), 0.549_306_144_334_054_8, epsilon = 1e-15);
        assert_eq!(thm1doubleprime_bounds(1.0, 1.0).unwrap().r_max, Bound::Unbounded);
        assert!(thm1doubleprime_bounds(1.0, 1.5).is_err());
    }

    #[test]
    fn thm1_flat_limit() {
        let limit = thm1doubleprime_bounds(1.0, 0.5).unwrap().r_max.value();
        let mut prev = f64::INFINITY;
        for k2 in [1e-2, 1e-3, 1e-4] {
            let v = thm1_bounds(&band(1.0, k2), 0.5).unwrap().r_max.value();
            let rel = (v - limit).abs() / limit;
            assert!(rel < prev);
            prev = rel;
        }
        assert!(prev < 1e-6);
    }

    #[test]
    fn gap_examples() {
        assert_abs_diff_eq!(
            lemma_bm02_gap(1.0, 1.0, Ln2Variant::Dimensional).unwrap(),
            0.657_454_454_153_077_3,
            epsilon = 1e-14
        );
        assert_eq!(lemma_bm02_gap(1.0, 0.0, Ln2Variant::Dimensional).unwrap(), 0.0);
        let far = lemma_bm02_gap(1.0, 60.0, Ln2Variant::Dimensional).unwrap();
        assert_abs_diff_eq!(far, LN_2, epsilon = 1e-12);
        assert!(far <= LN_2);
        assert!(lemma_bm02_gap(1.0, 10.0, Ln2Variant::Dimensional).unwrap() < LN_2);
        for r in [1e-3, 1.0, 10.0, 60.0, 300.0] {
            let deficit = lemma_bm02_deficit(1.0, r, Ln2Variant::Dimensional).unwrap();
            assert!(deficit > 0.0, "r = {r}");
            let gap = lemma_bm02_gap(1.0, r, Ln2Variant::Dimensional).unwrap();
            assert_abs_diff_eq!(gap + deficit, LN_2, epsilon = 1e-15);
        }
        let aw = lemma_bm02_gap(2.0, 1.0, Ln2Variant::AsWritten).unwrap();
        let dim = lemma_bm02_gap(2.0, 1.0, Ln2Variant::Dimensional).unwrap();
        assert_abs_diff_eq!(aw, 4.0 * dim, epsilon = 1e-14);
    }

    #[test]
    fn sphere_range_examples() {
        let (lo, hi) = sphere_curvature_range(&band(1.0, 0.5), 1.0).unwrap();
        assert_abs_diff_eq!(lo, 1.081_976_706_869_326_4, epsilon = 1e-14);
        assert_abs_diff_eq!(hi, 1.313_035_285_499_331_3, epsilon = 1e-14);
        let (lo, hi) = sphere_curvature_range(&band(0.9, 0.9), 0.3).unwrap();
        assert_eq!(lo, hi);
        assert!(sphere_curvature_range(&band(1.0, 0.5), 0.0).is_err());
    }

    #[test]
    fn bound_serializes_unbounded_as_string() {
        let json = serde_json::to_string(&[Bound::Finite(0.5), Bound::Unbounded]).unwrap();
        assert_eq!(json, r#"[0.5,"unbounded"]"#);
    }

    #[test]
    fn verify_regular_polygon() {
        let p = ConvexPolygon::regular(0.8, 5, 0.2).unwrap();
        let rep = verify_theorem2(
            &p,
            &band(1.0, 0.5),
            0.5,
            Ln2Variant::Dimensional,
            CurvatureDefinition::A,
        )
        .unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.margins.unwrap().rupb > 0.0);
    }

    #[test]
    fn verify_skips_without_hypotheses() {
        let p = ConvexPolygon::regular(0.8, 5, 1.5).unwrap();
        let rep = verify_theorem2(
            &p,
            &band(1.0, 0.5),
            0.5,
            Ln2Variant::Dimensional,
            CurvatureDefinition::A,
        )
        .unwrap();
        assert_eq!(rep.verdict, Verdict::Skipped);
        assert!(!rep.hypotheses.all);
        assert!(rep.margins.is_none());
        // model outside the band
        let q = ConvexPolygon::regular(2.0, 5, 0.1).unwrap();
        let rep = verify_theorem2(
            &q,
            &band(1.0, 0.5),
            0.5,
            Ln2Variant::Dimensional,
            CurvatureDefinition::A,
        )
        .unwrap();
        assert!(!rep.hypotheses.model_in_band);
        assert_eq!(rep.verdict, Verdict::Skipped);
    }

    #[test]
    fn degenerate_band_reduces_to_r_le_rho() {
        let b = band(1.0, 1.0);
        for rho in [0.3, 0.8] {
            let r_max = thm2_bounds(&b, rho).unwrap().r_max.value();
            assert_abs_diff_eq!(r_max, rho, epsilon = 1e-12);
            // k coth(k r) >= k coth(k rho) iff r <= rho
            assert!(rupb_margin(&b, rho * 0.99, rho) > 0.0);
            assert!(rupb_margin(&b, rho * 1.01, rho) < 0.0);
        }
    }
}
