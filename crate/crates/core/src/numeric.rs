//! Scalar helpers shared by every module.

use std::f64::consts::PI;

/// Slack below 1 tolerated by [`acosh_clamped`] before the argument
/// is treated as invalid.
pub const ACOSH_CLAMP: f64 = 1e-12;

/// Hyperbolic cotangent.
#[inline]
pub fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// Inverse hyperbolic cotangent for `x > 1`, written as
/// `0.5 * ln((x + 1) / (x - 1))`. Returns `+inf` at `x == 1` and NaN below.
#[inline]
pub fn arccoth(x: f64) -> f64 {
    if x == 1.0 {
        return f64::INFINITY;
    }
    0.5 * ((x + 1.0) / (x - 1.0)).ln()
}

/// `acosh` with arguments in `[1 - 1e-12, 1)` clamped to 1.
#[inline]
pub fn acosh_clamped(x: f64) -> f64 {
    if (1.0 - ACOSH_CLAMP..1.0).contains(&x) {
        0.0
    } else {
        x.acosh()
    }
}

/// `k * coth(k * r)`, continued to `1 / r` at `k == 0`.
#[inline]
pub fn k_coth(k: f64, r: f64) -> f64 {
    if k == 0.0 {
        1.0 / r
    } else {
        k * coth(k * r)
    }
}

/// Wraps an angle into `(-pi, pi]`.
#[inline]
pub fn wrap_angle(a: f64) -> f64 {
    let mut w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w -= 2.0 * PI;
    }
    w
}
