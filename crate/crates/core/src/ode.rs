//! Adaptive Dormand–Prince 5(4) integration of small autonomous-or-not systems.

use crate::error::{GeomError, Result};

#[derive(Debug, Clone, Copy)]
pub struct Dopri {
    pub rtol: f64,
    pub atol: f64,
    /// Smallest step magnitude before giving up.
    pub h_min: f64,
    pub max_steps: usize,
}

impl Default for Dopri {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            h_min: 1e-14,
            max_steps: 200_000,
        }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights (equal to the last row of `A`, so FSAL applies).
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

impl Dopri {
    /// Integrates `y' = f(t, y)` from `t0` to `t1` (either direction).
    /// A right-hand side returning non-finite values rejects the step.
    pub fn integrate<const N: usize, F>(&self, mut f: F, t0: f64, y0: [f64; N], t1: f64) -> Result<[f64; N]>
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        let span = t1 - t0;
        if span == 0.0 {
            return Ok(y0);
        }
        let dir = span.signum();
        let mut t = t0;
        let mut y = y0;
        let mut h = dir * span.abs().min(0.1);
        let mut k = [[0.0; N]; 7];
        k[0] = f(t, &y);
        for _ in 0..self.max_steps {
            if (t1 - t) * dir <= 0.0 {
                return Ok(y);
            }
            let last = (t + h - t1) * dir >= 0.0;
            if last {
                h = t1 - t;
            }
            for s in 1..7 {
                let mut ys = y;
                for (j, kj) in k.iter().enumerate().take(s) {
                    let a = A[s][j];
                    if a != 0.0 {
                        for i in 0..N {
                            ys[i] += h * a * kj[i];
                        }
                    }
                }
                k[s] = f(t + C[s] * h, &ys);
            }
            let mut y5 = y;
            let mut err = 0.0;
            for i in 0..N {
                let mut d5 = 0.0;
                let mut d4 = 0.0;
                for s in 0..7 {
                    d5 += B5[s] * k[s][i];
                    d4 += B4[s] * k[s][i];
                }
                y5[i] += h * d5;
                let sc = self.atol + self.rtol * y[i].abs().max(y5[i].abs());
                let e = h * (d5 - d4) / sc;
                err += e * e;
            }
            let err = (err / N as f64).sqrt();
            if err.is_finite() && err <= 1.0 {
                t = if last { t1 } else { t + h };
                y = y5;
                k[0] = k[6];
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                h *= grow;
            } else {
                let shrink = if err.is_finite() { (0.9 * err.powf(-0.25)).clamp(0.1, 0.9) } else { 0.2 };
                h *= shrink;
                if h.abs() < self.h_min {
                    return Err(GeomError::Integration(format!(
                        "step size underflow at t = {t} (h = {h:e})"
                    )));
                }
            }
        }
        Err(GeomError::Integration(format!(
            "exceeded {} steps before reaching t = {t1}",
            self.max_steps
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let y = Dopri::default()
            .integrate(|_, y: &[f64; 2]| [y[1], -y[0]], 0.0, [0.0, 1.0], 10.0)
            .unwrap();
        assert!((y[0] - 10f64.sin()).abs() < 1e-9);
        assert!((y[1] - 10f64.cos()).abs() < 1e-9);
    }

    #[test]
    fn backward_and_exponential() {
        let d = Dopri::default();
        let y = d.integrate(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], -3.0).unwrap();
        assert!((y[0] - (-3f64).exp()).abs() < 1e-11);
        let z = d.integrate(|t, _: &[f64; 1]| [t * t], 1.0, [0.0], 2.0).unwrap();
        assert!((z[0] - 7.0 / 3.0).abs() < 1e-12);
    }
}
