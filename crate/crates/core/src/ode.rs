//! Dormand–Prince 5(4) with adaptive steps, landing exactly on output
//! points.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rtol: 1e-10,
            atol: 1e-14,
        }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates `y' = f(t, y)` from `t0` through every point of `grid`
/// (increasing, all `> t0` except possibly the first, which may equal
/// `t0`), calling `observe` at each one.
pub fn dopri5<F, O>(mut f: F, t0: f64, y0: &[f64], grid: &[f64], tol: Tolerances, mut observe: O) -> Result<()>
where
    F: FnMut(f64, &[f64], &mut [f64]),
    O: FnMut(f64, &[f64]) -> Result<()>,
{
    let n = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k = vec![vec![0.0; n]; 7];
    let mut tmp = vec![0.0; n];
    let mut y5 = vec![0.0; n];
    f(t, &y, &mut k[0]);
    let span = grid.last().map_or(0.0, |&g| g - t0);
    let mut h = (span * 1e-3).max(1e-6);
    for &target in grid {
        while target - t > 1e-14 * target.abs().max(1.0) {
            let last = h >= target - t;
            let step = if last { target - t } else { h };
            if step < 1e-14 * t.abs().max(1.0) {
                return Err(Error::StepUnderflow { r: t });
            }
            for s in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(s) {
                        acc += step * A[s][j] * kj[i];
                    }
                    tmp[i] = acc;
                }
                let (_, tail) = k.split_at_mut(s);
                f(t + C[s] * step, &tmp, &mut tail[0]);
            }
            let mut err = 0.0f64;
            for i in 0..n {
                let mut hi = 0.0;
                let mut lo = 0.0;
                for s in 0..7 {
                    hi += B5[s] * k[s][i];
                    lo += B4[s] * k[s][i];
                }
                y5[i] = y[i] + step * hi;
                let sc = tol.atol + tol.rtol * y[i].abs().max(y5[i].abs());
                err = err.max((step * (hi - lo) / sc).abs());
            }
            if !err.is_finite() {
                h = step * 0.1;
                continue;
            }
            if err <= 1.0 {
                t = if last { target } else { t + step };
                y.copy_from_slice(&y5);
                // First-same-as-last: stage 7 is f at the new point.
                let (first, rest) = k.split_at_mut(1);
                first[0].copy_from_slice(&rest[5]);
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 && last {
                h = h.max(step * factor);
            } else {
                h = step * factor;
            }
        }
        observe(target, &y)?;
    }
    Ok(())
}
