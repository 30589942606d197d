//! Subcommand implementations behind the `kconvex` binary.
//!
//! Each `cmd_*` function takes a [`RunConfig`] and the input text and returns
//! a [`CommandOutput`]; the binary only moves bytes between files and
//! streams. Keeping the commands pure makes the determinism contract easy to
//! test: the same config and input give the same bytes.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use kconvex::arcs::{build_arc_chain, check_bpai_chain, convexity_conditions, parallel_curve, ConditionReport};
use kconvex::bounds::{
    rupb_margin, thm2_bounds, verify_theorem2, Bound, BoundsReport, CurvatureBand, Ln2Variant, Verdict,
};
use kconvex::extremal::radii;
use kconvex::generate::{generate_corpus, GeneratorConfig, RejectionStats};
use kconvex::io::{arc_chain_json, corpus_to_json, parse_corpus, ArcJson, PolygonJson};
use kconvex::numeric::k_coth;
use kconvex::polygon::{check_theorem2_hypotheses, vertex_threshold, ConvexPolygon, CurvatureDefinition};
use kconvex::surface::{
    pinching_certificate, polygon_extremal_radii_numeric, random_surface_polygon, PinchingReport,
    SurfacePoint, SurfacePolygon, SurfacePolygonConfig, SurfaceProfile,
};

/// Columns of the `verify` CSV, in order.
pub const VERIFY_COLUMNS: [&str; 12] = [
    "n",
    "k",
    "k1",
    "k2",
    "rho",
    "r",
    "R",
    "r_bound",
    "R_bound_dimensional",
    "R_bound_as_written",
    "gap_bound",
    "verdict",
];

/// Columns of the `measure` CSV, in order.
pub const MEASURE_COLUMNS: [&str; 8] = ["polygon", "index", "alpha", "l_prev", "l_next", "kappaA", "kappaB", "flag"];

/// Columns of the parallel-curve table written by `round`.
pub const PARALLEL_COLUMNS: [&str; 8] = [
    "polygon",
    "eps",
    "min_curvature",
    "curvature_floor",
    "in_band",
    "r_bound_smooth",
    "r_bound_polygon",
    "difference",
];

/// Surface polygons fail when the `rupb` margin drops below `-SURFACE_TOL`.
pub const SURFACE_TOL: f64 = 1e-3;

/// Bins of the slack histogram in the `verify` summary.
pub const HISTOGRAM_BINS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Gen,
    Measure,
    Verify,
    Round,
    Surface,
}

/// Everything a subcommand may read.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub band: CurvatureBand,
    /// Fixed model curvature scale; `None` draws it from the band.
    pub k: Option<f64>,
    pub rho: f64,
    pub eps: Vec<f64>,
    /// Corpus size for `gen`, random polygon count for `surface`.
    pub size: usize,
    /// Inclusive vertex-count range.
    pub n_range: (usize, usize),
    pub variant: Ln2Variant,
    pub definition: CurvatureDefinition,
    /// Surface profile name, overriding the scenario file.
    pub profile: Option<String>,
    /// Keep only polygons passing the polygon hypotheses (`gen`).
    pub require_hypotheses: bool,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, band: CurvatureBand, rho: f64) -> Self {
        Self {
            command,
            seed: 0,
            band,
            k: None,
            rho,
            eps: vec![1e-2, 1e-3, 1e-4],
            size: 100,
            n_range: (3, 8),
            variant: Ln2Variant::Dimensional,
            definition: CurvatureDefinition::A,
            profile: None,
            require_hypotheses: true,
            input: None,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            bail!("--rho must be positive and finite, got {}", self.rho);
        }
        if let Some(k) = self.k {
            if !(k > 0.0) || !self.band.contains_model(k) {
                bail!(
                    "--k must satisfy k2 <= k <= k1 (k2 = {}, k1 = {}), got {k}",
                    self.band.k2,
                    self.band.k1
                );
            }
        }
        if let Some(e) = self.eps.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            bail!("--eps values must be positive, got {e}");
        }
        let (lo, hi) = self.n_range;
        if lo < 3 || hi < lo {
            bail!("--n needs 3 <= min <= max, got {lo}..{hi}");
        }
        Ok(())
    }
}

/// Output of one subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    /// Main artifact: written to `--out`, else to stdout.
    pub primary: String,
    /// Side artifacts `(suffix, content)`, written next to `--out`.
    pub extras: Vec<(String, String)>,
    /// Human-readable summary for stderr.
    pub summary: String,
    /// Some verdict failed (exit status 1).
    pub failed: bool,
}

/// Path of a side artifact: `dir/stem.suffix` for `--out dir/stem.ext`.
pub fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.{suffix}"))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn json_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        anyhow!(
            "cannot parse {what}: line {}, column {}: {e}",
            e.line(),
            e.column()
        )
    })
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn opt_bound(b: Option<Bound>) -> String {
    b.map(|b| b.to_string()).unwrap_or_default()
}

// ---------------------------------------------------------------- gen

#[derive(Debug, Serialize)]
struct GenStats<'a> {
    seed: u64,
    size: usize,
    k1: f64,
    k2: f64,
    rho: f64,
    n_range: (usize, usize),
    k_range: (f64, f64),
    require_hypotheses: bool,
    stats: &'a RejectionStats,
}

pub fn generator_config(cfg: &RunConfig) -> GeneratorConfig {
    let mut g = GeneratorConfig::new(cfg.band, cfg.rho);
    g.n_range = cfg.n_range;
    if let Some(k) = cfg.k {
        g.k_range = (k, k);
    }
    g.require_hypotheses = cfg.require_hypotheses;
    g.definition = cfg.definition;
    g
}

/// Seeded polygon corpus as a JSON array, with rejection statistics.
pub fn cmd_gen(cfg: &RunConfig) -> Result<CommandOutput> {
    cfg.validate()?;
    let g = generator_config(cfg);
    let corpus = generate_corpus(&g, cfg.size, &mut rng(cfg.seed)).context("corpus generation failed")?;
    let s = &corpus.stats;
    let stats = GenStats {
        seed: cfg.seed,
        size: cfg.size,
        k1: cfg.band.k1,
        k2: cfg.band.k2,
        rho: cfg.rho,
        n_range: g.n_range,
        k_range: g.k_range,
        require_hypotheses: g.require_hypotheses,
        stats: s,
    };
    Ok(CommandOutput {
        primary: corpus_to_json(&corpus.polygons),
        extras: vec![("stats.json".into(), json_pretty(&stats))],
        summary: format!(
            "generated {} polygons in {} attempts ({} non-convex, {} failing the hypotheses)",
            s.accepted, s.attempts, s.nonconvex, s.hypothesis
        ),
        failed: false,
    })
}

// ---------------------------------------------------------------- measure

#[derive(Debug, Serialize)]
struct MeasuredVertex {
    index: usize,
    alpha: f64,
    l_prev: f64,
    l_next: f64,
    #[serde(rename = "kappaA")]
    kappa_a: f64,
    #[serde(rename = "kappaB")]
    kappa_b: f64,
    flag: bool,
}

#[derive(Debug, Serialize)]
struct MeasuredPolygon {
    index: usize,
    n: usize,
    k: f64,
    r: f64,
    #[serde(rename = "R")]
    big_r: f64,
    threshold: f64,
    global: bool,
    hypotheses: bool,
    vertices: Vec<MeasuredVertex>,
}

fn load_corpus(text: &str) -> Result<Vec<ConvexPolygon>> {
    parse_corpus(text).map_err(|e| anyhow!("invalid corpus: {e}"))
}

/// Vertex curvatures, hypothesis flags and extremal radii per polygon.
pub fn cmd_measure(cfg: &RunConfig, corpus: &str) -> Result<CommandOutput> {
    cfg.validate()?;
    let polygons = load_corpus(corpus)?;
    let measured: Vec<MeasuredPolygon> = polygons
        .par_iter()
        .enumerate()
        .map(|(index, p)| -> Result<MeasuredPolygon> {
            let hyp = check_theorem2_hypotheses(p, &cfg.band, cfg.rho, cfg.definition)?;
            let rr = radii(p)?;
            let vertices = p
                .curvature_report(cfg.band.k1)
                .vertices
                .into_iter()
                .zip(&hyp.per_vertex)
                .map(|(v, &flag)| MeasuredVertex {
                    index: v.index,
                    alpha: v.alpha,
                    l_prev: v.l_prev,
                    l_next: v.l_next,
                    kappa_a: v.kappa_a,
                    kappa_b: v.kappa_b,
                    flag,
                })
                .collect();
            Ok(MeasuredPolygon {
                index,
                n: p.len(),
                k: p.k(),
                r: rr.r,
                big_r: rr.big_r,
                threshold: hyp.threshold,
                global: hyp.global,
                hypotheses: hyp.holds,
                vertices,
            })
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<String>> = measured
        .iter()
        .flat_map(|m| {
            m.vertices.iter().map(move |v| {
                vec![
                    m.index.to_string(),
                    v.index.to_string(),
                    v.alpha.to_string(),
                    v.l_prev.to_string(),
                    v.l_next.to_string(),
                    v.kappa_a.to_string(),
                    v.kappa_b.to_string(),
                    v.flag.to_string(),
                ]
            })
        })
        .collect();
    let passing = measured.iter().filter(|m| m.hypotheses).count();
    Ok(CommandOutput {
        primary: csv_string(&MEASURE_COLUMNS, &rows),
        extras: vec![("json".into(), json_pretty(&measured))],
        summary: format!(
            "measured {} polygons; {} pass the hypotheses (threshold {})",
            measured.len(),
            passing,
            vertex_threshold(cfg.band.k1, cfg.rho)
        ),
        failed: false,
    })
}

// ---------------------------------------------------------------- verify

/// Counts of a quantity over equal-width bins.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub quantity: String,
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn new(quantity: &str, values: &[f64], bins: usize) -> Self {
        let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
        if finite.is_empty() || bins == 0 {
            return Self {
                quantity: quantity.into(),
                edges: Vec::new(),
                counts: Vec::new(),
            };
        }
        let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
        let edges = (0..=bins).map(|i| lo + i as f64 * width).collect();
        let mut counts = vec![0; bins];
        for v in finite {
            let b = (((v - lo) / width) as usize).min(bins - 1);
            counts[b] += 1;
        }
        Self {
            quantity: quantity.into(),
            edges,
            counts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinMargins {
    pub rupb: Option<f64>,
    pub r: Option<f64>,
    #[serde(rename = "R")]
    pub big_r: Option<f64>,
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub polygons: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub variant: Ln2Variant,
    pub min_margins: MinMargins,
    /// Checked polygons with `R - r` above the gap bound (reported only).
    pub gap_violations: usize,
    /// Distribution of `R_bound - R` over checked polygons.
    pub slack_histogram: Histogram,
}

fn min_of<I: Iterator<Item = f64>>(it: I) -> Option<f64> {
    it.fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.min(v))))
}

pub fn summarize(reports: &[BoundsReport], variant: Ln2Variant) -> VerifySummary {
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let margins: Vec<_> = reports.iter().filter_map(|r| r.margins).collect();
    let slack: Vec<f64> = margins.iter().map(|m| m.big_r.value()).collect();
    VerifySummary {
        polygons: reports.len(),
        pass: count(Verdict::Pass),
        fail: count(Verdict::Fail),
        skipped: count(Verdict::Skipped),
        variant,
        min_margins: MinMargins {
            rupb: min_of(margins.iter().map(|m| m.rupb)),
            r: min_of(margins.iter().map(|m| m.r.value())),
            big_r: min_of(margins.iter().map(|m| m.big_r.value())),
            gap: min_of(margins.iter().map(|m| m.gap)),
        },
        gap_violations: margins.iter().filter(|m| m.gap < -kconvex::bounds::VERDICT_TOL).count(),
        slack_histogram: Histogram::new("R_bound - R", &slack, HISTOGRAM_BINS),
    }
}

pub fn verify_row(r: &BoundsReport) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.k.to_string(),
        r.k1.to_string(),
        r.k2.to_string(),
        r.rho.to_string(),
        r.r.to_string(),
        r.big_r.to_string(),
        opt_bound(r.r_bound),
        opt_bound(r.big_r_bound_dimensional),
        opt_bound(r.big_r_bound_as_written),
        r.gap_bound().to_string(),
        r.verdict.to_string(),
    ]
}

/// Runs the polygon verifier on every corpus entry.
pub fn verify_corpus(cfg: &RunConfig, polygons: &[ConvexPolygon]) -> Result<Vec<BoundsReport>> {
    polygons
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            verify_theorem2(p, &cfg.band, cfg.rho, cfg.variant, cfg.definition)
                .with_context(|| format!("polygon {i}"))
        })
        .collect()
}

/// One report row per polygon (CSV), full reports and a summary (JSON).
pub fn cmd_verify(cfg: &RunConfig, corpus: &str) -> Result<CommandOutput> {
    cfg.validate()?;
    let polygons = load_corpus(corpus)?;
    let reports = verify_corpus(cfg, &polygons)?;
    let rows: Vec<Vec<String>> = reports.iter().map(verify_row).collect();
    let summary = summarize(&reports, cfg.variant);
    let text = format!(
        "{} polygons: {} pass, {} fail, {} skipped; min margins rupb {} r {} R {}; gap bound exceeded by {}",
        summary.polygons,
        summary.pass,
        summary.fail,
        summary.skipped,
        fmt_opt(summary.min_margins.rupb),
        fmt_opt(summary.min_margins.r),
        fmt_opt(summary.min_margins.big_r),
        summary.gap_violations,
    );
    Ok(CommandOutput {
        primary: csv_string(&VERIFY_COLUMNS, &rows),
        extras: vec![
            ("reports.json".into(), json_pretty(&reports)),
            ("summary.json".into(), json_pretty(&summary)),
        ],
        summary: text,
        failed: summary.fail > 0,
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |v| format!("{v:.3e}"))
}

// ---------------------------------------------------------------- round

#[derive(Debug, Clone, Serialize)]
pub struct BpaiRow {
    pub index: usize,
    pub terms: [f64; 5],
    pub slacks: [f64; 4],
    pub min_slack: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParallelRow {
    pub eps: f64,
    pub min_curvature: f64,
    pub max_curvature: f64,
    /// `k2 coth(k2 (rho + eps))`, the curvature floor of the side pieces.
    pub curvature_floor: f64,
    pub in_band: bool,
    pub r_bound_smooth: Bound,
    pub r_bound_polygon: Bound,
    pub difference: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundReport {
    pub polygon: usize,
    pub rho: f64,
    pub k1: f64,
    pub arcs: Vec<ArcJson>,
    pub conditions: Vec<ConditionReport>,
    pub bpai: Vec<BpaiRow>,
    pub convex: bool,
    pub parallel: Vec<ParallelRow>,
}

fn parse_polygons(text: &str) -> Result<Vec<ConvexPolygon>> {
    let value: serde_json::Value = parse_json(text, "polygon input")?;
    if value.is_array() {
        return load_corpus(text);
    }
    let j: PolygonJson = serde_json::from_value(value).map_err(|e| anyhow!("invalid polygon: {e}"))?;
    Ok(vec![ConvexPolygon::try_from(&j)?])
}

pub fn round_polygon(cfg: &RunConfig, index: usize, p: &ConvexPolygon) -> Result<RoundReport> {
    let band = &cfg.band;
    let chain = build_arc_chain(p, cfg.rho).with_context(|| format!("polygon {index}"))?;
    let conditions = convexity_conditions(&chain, band.k1)?;
    let bpai = conditions
        .iter()
        .map(|c| {
            let b = check_bpai_chain(c.l_prev, c.l_next, c.kappa, band.k1, cfg.rho)?;
            Ok(BpaiRow {
                index: c.index,
                terms: b.terms,
                slacks: b.slacks,
                min_slack: b.min_slack(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let convex = chain.is_convex(1e-9);
    let polygon_bound = thm2_bounds(band, cfg.rho).map(|b| b.r_max).ok();
    let mut parallel = Vec::new();
    if convex {
        for &eps in &cfg.eps {
            let c = parallel_curve(&chain, eps)?;
            let (lo, hi) = c.curvature_range();
            let smooth = c.smooth_bounds(band)?.r_max;
            let poly = polygon_bound.unwrap_or(Bound::Unbounded);
            parallel.push(ParallelRow {
                eps,
                min_curvature: lo,
                max_curvature: hi,
                curvature_floor: k_coth(band.k2, cfg.rho + eps),
                in_band: c.curvatures_in_band(band, 1e-12),
                r_bound_smooth: smooth,
                r_bound_polygon: poly,
                difference: smooth.value() - poly.value(),
            });
        }
    }
    Ok(RoundReport {
        polygon: index,
        rho: cfg.rho,
        k1: band.k1,
        arcs: arc_chain_json(&chain),
        conditions,
        bpai,
        convex,
        parallel,
    })
}

/// Arc chain, convexity conditions and parallel-curve table per polygon.
pub fn cmd_round(cfg: &RunConfig, input: &str) -> Result<CommandOutput> {
    cfg.validate()?;
    let polygons = parse_polygons(input)?;
    let reports: Vec<RoundReport> = polygons
        .par_iter()
        .enumerate()
        .map(|(i, p)| round_polygon(cfg, i, p))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<String>> = reports
        .iter()
        .flat_map(|r| {
            r.parallel.iter().map(move |row| {
                vec![
                    r.polygon.to_string(),
                    row.eps.to_string(),
                    row.min_curvature.to_string(),
                    row.curvature_floor.to_string(),
                    row.in_band.to_string(),
                    row.r_bound_smooth.to_string(),
                    row.r_bound_polygon.to_string(),
                    row.difference.to_string(),
                ]
            })
        })
        .collect();
    let vertices: usize = reports.iter().map(|r| r.conditions.len()).sum();
    let cco3 = reports.iter().flat_map(|r| &r.conditions).filter(|c| c.cco3).count();
    let nonconvex = reports.iter().filter(|r| !r.convex).count();
    Ok(CommandOutput {
        primary: json_pretty(&reports),
        extras: vec![("parallel.csv".into(), csv_string(&PARALLEL_COLUMNS, &rows))],
        summary: format!(
            "{} polygons, {cco3} of {vertices} vertices satisfy the rounding condition, {nonconvex} chains not convex",
            reports.len()
        ),
        failed: false,
    })
}

// ---------------------------------------------------------------- surface

/// `{profile, params, polygons}` with polygons as lists of `[r, theta]`.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct Scenario {
    #[serde(default)]
    pub profile: Option<String>,
    #[serde(default)]
    pub params: ProfileParams,
    #[serde(default)]
    pub polygons: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ProfileParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_blend: Option<f64>,
}

/// Blend radius of the default blended profile.
pub const DEFAULT_R_BLEND: f64 = 2.0;

pub fn build_profile(name: &str, params: &ProfileParams, cfg: &RunConfig) -> Result<(SurfaceProfile, ProfileParams)> {
    match name {
        "sinh" => {
            let k = params.k.or(cfg.k).unwrap_or(cfg.band.k1);
            let used = ProfileParams {
                k: Some(k),
                ..Default::default()
            };
            Ok((SurfaceProfile::sinh(k)?, used))
        }
        "blended" => {
            let k1 = params.k1.unwrap_or(cfg.band.k1);
            let k2 = params.k2.unwrap_or(cfg.band.k2);
            let rb = params.r_blend.unwrap_or(DEFAULT_R_BLEND);
            let used = ProfileParams {
                k1: Some(k1),
                k2: Some(k2),
                r_blend: Some(rb),
                ..Default::default()
            };
            Ok((SurfaceProfile::blended(k1, k2, rb)?, used))
        }
        other => bail!("unknown profile {other:?} (expected \"sinh\" or \"blended\")"),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfacePolygonReport {
    pub index: usize,
    pub n: usize,
    pub vertices: Vec<SurfacePoint>,
    pub side_lengths: Vec<f64>,
    pub angles: Vec<f64>,
    pub kappa_a: Vec<f64>,
    pub hypotheses: bool,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub incenter: SurfacePoint,
    pub circumcenter: SurfacePoint,
    pub rupb_margin: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceReport {
    pub profile: String,
    pub params: ProfileParams,
    pub k1: f64,
    pub k2: f64,
    pub rho: f64,
    pub pinching: PinchingReport,
    pub polygons: Vec<SurfacePolygonReport>,
}

fn measure_surface_polygon(
    profile: &SurfaceProfile,
    cfg: &RunConfig,
    index: usize,
    poly: &SurfacePolygon,
) -> Result<SurfacePolygonReport> {
    let radii = polygon_extremal_radii_numeric(profile, poly).with_context(|| format!("surface polygon {index}"))?;
    let hypotheses = poly.hypotheses_hold(&cfg.band, cfg.rho);
    let margin = rupb_margin(&cfg.band, radii.r, cfg.rho);
    let verdict = if !hypotheses {
        Verdict::Skipped
    } else if margin < -SURFACE_TOL {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    Ok(SurfacePolygonReport {
        index,
        n: poly.len(),
        vertices: poly.vertices().to_vec(),
        side_lengths: poly.side_lengths(),
        angles: poly.interior_angles().to_vec(),
        kappa_a: poly.kappa_a(),
        hypotheses,
        r: radii.r,
        big_r: radii.big_r,
        incenter: radii.incenter,
        circumcenter: radii.circumcenter,
        rupb_margin: margin,
        verdict,
    })
}

/// Measures the scenario polygons on a warped surface; with no polygons in
/// the scenario, `size` random hypothesis-passing polygons are drawn.
pub fn cmd_surface(cfg: &RunConfig, scenario: &str) -> Result<CommandOutput> {
    cfg.validate()?;
    let sc: Scenario = if scenario.trim().is_empty() {
        Scenario::default()
    } else {
        parse_json(scenario, "scenario")?
    };
    let name = cfg.profile.clone().or(sc.profile.clone()).unwrap_or_else(|| "blended".into());
    let (profile, params) = build_profile(&name, &sc.params, cfg)?;
    let polys: Vec<SurfacePolygon> = if sc.polygons.is_empty() {
        let mut rng = rng(cfg.seed);
        let mut pc = SurfacePolygonConfig::new(&cfg.band, cfg.rho, (0.0, 2.0));
        pc.n_range = cfg.n_range;
        (0..cfg.size)
            .map(|_| random_surface_polygon(&profile, &cfg.band, cfg.rho, &pc, &mut rng))
            .collect::<kconvex::Result<_>>()?
    } else {
        sc.polygons
            .iter()
            .enumerate()
            .map(|(i, vs)| {
                let pts = vs
                    .iter()
                    .map(|&[r, t]| SurfacePoint::new(r, t))
                    .collect::<kconvex::Result<Vec<_>>>()?;
                SurfacePolygon::new(&profile, pts).with_context(|| format!("surface polygon {i}"))
            })
            .collect::<Result<_>>()?
    };
    let reach = polys
        .iter()
        .flat_map(|p| p.vertices().iter().map(|v| v.r))
        .fold(1.0, f64::max);
    let pinching = pinching_certificate(&profile, &cfg.band, reach + 1.0, 4_000);
    let reports: Vec<SurfacePolygonReport> = polys
        .par_iter()
        .enumerate()
        .map(|(i, p)| measure_surface_polygon(&profile, cfg, i, p))
        .collect::<Result<_>>()?;
    let fail = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    let pass = reports.iter().filter(|r| r.verdict == Verdict::Pass).count();
    let min_margin = min_of(reports.iter().filter(|r| r.hypotheses).map(|r| r.rupb_margin));
    let summary = format!(
        "{} profile, pinching {} (K in [{:.4}, {:.4}]); {} polygons: {pass} pass, {fail} fail; min rupb margin {}",
        profile.name(),
        if pinching.holds { "holds" } else { "violated" },
        pinching.min_curvature,
        pinching.max_curvature,
        reports.len(),
        fmt_opt(min_margin),
    );
    let report = SurfaceReport {
        profile: profile.name().into(),
        params,
        k1: cfg.band.k1,
        k2: cfg.band.k2,
        rho: cfg.rho,
        pinching,
        polygons: reports,
    };
    Ok(CommandOutput {
        primary: json_pretty(&report),
        extras: Vec::new(),
        summary,
        failed: fail > 0,
    })
}

/// Dispatches on `cfg.command`; `input` is the contents of the input file
/// (ignored by `gen`).
pub fn run(cfg: &RunConfig, input: &str) -> Result<CommandOutput> {
    match cfg.command {
        Command::Gen => cmd_gen(cfg),
        Command::Measure => cmd_measure(cfg, input),
        Command::Verify => cmd_verify(cfg, input),
        Command::Round => cmd_round(cfg, input),
        Command::Surface => cmd_surface(cfg, input),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: Command) -> RunConfig {
        RunConfig::new(command, CurvatureBand::new(1.0, 0.5, false).unwrap(), 0.5)
    }

    #[test]
    fn histogram_bins() {
        let h = Histogram::new("x", &[0.0, 0.5, 1.0, f64::INFINITY], 2);
        assert_eq!(h.edges, vec![0.0, 0.5, 1.0]);
        assert_eq!(h.counts, vec![1, 2]);
        assert!(Histogram::new("x", &[], 4).counts.is_empty());
        assert_eq!(Histogram::new("x", &[2.0, 2.0], 3).counts, vec![2, 0, 0]);
    }

    #[test]
    fn failing_report_sets_exit_flag() {
        let c = cfg(Command::Verify);
        let corpus = cmd_gen(&RunConfig { size: 3, ..cfg(Command::Gen) }).unwrap().primary;
        let polys = parse_corpus(&corpus).unwrap();
        let mut reports = verify_corpus(&c, &polys).unwrap();
        assert_eq!(summarize(&reports, c.variant).fail, 0);
        reports[1].verdict = Verdict::Fail;
        let s = summarize(&reports, c.variant);
        assert_eq!((s.pass, s.fail, s.skipped), (2, 1, 0));
        assert!(s.min_margins.rupb.is_some());
    }

    #[test]
    fn sibling_paths() {
        assert_eq!(sibling(Path::new("out/v.csv"), "summary.json"), PathBuf::from("out/v.summary.json"));
        assert_eq!(sibling(Path::new("c"), "stats.json"), PathBuf::from("c.stats.json"));
    }

    #[test]
    fn config_validation() {
        let mut c = cfg(Command::Gen);
        c.k = Some(0.4);
        assert!(c.validate().is_err());
        c.k = Some(0.5);
        assert!(c.validate().is_ok());
        c.eps = vec![0.0];
        assert!(c.validate().is_err());
        let mut c = cfg(Command::Gen);
        c.n_range = (2, 5);
        assert!(c.validate().is_err());
    }

    #[test]
    fn verify_row_matches_columns() {
        let c = cfg(Command::Verify);
        let p = ConvexPolygon::regular(1.0, 4, 0.2).unwrap();
        let r = verify_theorem2(&p, &c.band, c.rho, c.variant, c.definition).unwrap();
        assert_eq!(verify_row(&r).len(), VERIFY_COLUMNS.len());
    }
}
