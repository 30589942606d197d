//! Fixtures shared by the benchmarks.

use kconvex::generate::{generate_corpus, GeneratorConfig};
use kconvex::{ConvexPolygon, CurvatureBand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const RHO: f64 = 0.5;

pub fn band() -> CurvatureBand {
    CurvatureBand::new(1.0, 0.5, false).expect("valid band")
}

/// `size` hypothesis-passing polygons from a fixed seed.
pub fn corpus(size: usize, n: usize) -> Vec<ConvexPolygon> {
    let mut cfg = GeneratorConfig::new(band(), RHO);
    cfg.n_range = (n, n);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    generate_corpus(&cfg, size, &mut rng).expect("corpus").polygons
}
