//! Inradius and circumradius bounds for convex curves and polygons in
//! surfaces of pinched negative curvature.
//!
//! The constant-curvature model lives in [`hyperbolic`]; polygons and their
//! vertex curvatures in [`polygon`]; exact extremal radii in [`extremal`];
//! the corner-rounding construction in [`arcs`]; bound formulas and the
//! verifier in [`bounds`]; variable-curvature surfaces in [`surface`].

pub mod arcs;
pub mod bounds;
pub mod error;
pub mod extremal;
pub mod generate;
pub mod hyperbolic;
pub mod io;
pub mod numeric;
pub mod ode;
pub mod optim;
pub mod oracle;
pub mod polygon;
pub mod surface;

pub use bounds::{BoundsReport, CurvatureBand, Ln2Variant, Verdict};
pub use error::{GeomError, Result};
pub use hyperbolic::{Circle, GeodesicLine, ModelPoint};
pub use polygon::{ConvexPolygon, CurvatureDefinition};
