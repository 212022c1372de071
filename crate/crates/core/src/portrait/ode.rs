//! Dormand–Prince 5(4) with step-size control.

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

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

/// Outcome of one attempted step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Step<const N: usize> {
    Accepted { y: [f64; N], h: f64, next_h: f64 },
    Underflow,
}

/// Takes one accepted step from `(t, y)` with initial guess `h`, shrinking on
/// rejection. `h` may be negative.
pub fn step<const N: usize>(
    f: &impl Fn(f64, &[f64; N]) -> [f64; N],
    t: f64,
    y: &[f64; N],
    mut h: f64,
    tol: Tolerances,
) -> Step<N> {
    loop {
        if h.abs() < 1e-14 * t.abs().max(1.0) || !h.is_finite() {
            return Step::Underflow;
        }
        let mut k = [[0.0; N]; 7];
        for s in 0..7 {
            let mut ys = *y;
            for (j, kj) in k.iter().enumerate().take(s) {
                for i in 0..N {
                    ys[i] += h * A[s][j] * kj[i];
                }
            }
            k[s] = f(t + C[s] * h, &ys);
        }
        let mut y5 = *y;
        let mut err = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for s in 0..7 {
                y5[i] += h * B5[s] * k[s][i];
                e += h * (B5[s] - B4[s]) * k[s][i];
            }
            let scale = tol.abs + tol.rel * y[i].abs().max(y5[i].abs());
            err += (e / scale).powi(2);
        }
        let err = (err / N as f64).sqrt();
        if !err.is_finite() {
            h *= 0.2;
            continue;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        if err <= 1.0 {
            return Step::Accepted {
                y: y5,
                h,
                next_h: h * factor,
            };
        }
        h *= factor.min(1.0);
    }
}

/// Integrates from `t0` to `t1` exactly, returning the final state or `None`
/// on step underflow.
pub fn solve<const N: usize>(
    f: &impl Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    t1: f64,
    tol: Tolerances,
) -> Option<[f64; N]> {
    let dir = (t1 - t0).signum();
    let mut t = t0;
    let mut y = y0;
    let mut h = (t1 - t0) / 64.0;
    while (t1 - t) * dir > 0.0 {
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }
        match step(f, t, &y, h, tol) {
            Step::Accepted { y: yn, h: hs, next_h } => {
                t = if ((t + hs) - t1).abs() <= 1e-15 * t1.abs().max(1.0) { t1 } else { t + hs };
                y = yn;
                h = next_h;
            }
            Step::Underflow => return None,
        }
    }
    Some(y)
}
