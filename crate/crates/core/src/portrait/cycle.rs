//! Tracing the invariant circle.
//!
//! With `w = r^(2p)` and time divided by `w`, the polar field becomes
//! `w' = 2p(λ + f(θ) w)`, `θ' = g(θ)`, which is linear in `w`. Three cases:
//!
//! * `σ = ∞`: the circle is the graph `w = −λ/f`.
//! * `σ = ∅`: `dw/dθ = 2p(λ + f w)/g` is π-periodic and linear, so the
//!   periodic orbit is `w0 = ψ/(1 − Φ)` with `Φ` the monodromy and `ψ` the
//!   image of `0`.
//! * otherwise each sector between equilibria is the orbit leaving the
//!   repelling end, started on `ṙ = 0` just past that end.

use std::f64::consts::{PI, TAU};

use crate::circle::{self, DynamicsType};
use crate::error::{Error, Result};
use crate::starfield::StarField;

use super::ode::{self, Step, Tolerances};
use super::{PortraitSpec, Polar};

/// Samples of the invariant circle as `(θ, r)`, with `θ` increasing over one
/// full turn; the last sample repeats the first shifted by `2π`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantCircleTrace {
    pub dynamics_type: DynamicsType,
    pub points: Vec<(f64, f64)>,
    pub residuals: Vec<f64>,
    pub closed: bool,
}

const STEPS_PER_HALF_TURN: usize = 8192;
const MAX_SECTOR_STEPS: usize = 400_000;

impl InvariantCircleTrace {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }

    /// Interpolated radius in direction `θ`.
    pub fn radius_at(&self, theta: f64) -> f64 {
        let n = self.points.len() - 1;
        let t0 = self.points[0].0;
        let t = t0 + (theta - t0).rem_euclid(TAU);
        let k = match self.points.binary_search_by(|p| p.0.total_cmp(&t)) {
            Ok(k) => return self.points[k].1,
            Err(k) => k.clamp(1, n) - 1,
        };
        let at = |i: isize| -> (f64, f64) {
            let m = n as isize;
            let wraps = i.div_euclid(m);
            let (th, r) = self.points[i.rem_euclid(m) as usize];
            (th + wraps as f64 * TAU, r)
        };
        let k = k as isize;
        let q = [at(k - 1), at(k), at(k + 1), at(k + 2)];
        let h = [q[1].0 - q[0].0, q[2].0 - q[1].0, q[3].0 - q[2].0];
        let balanced = h.iter().all(|&d| d > 0.0 && d < 4.0 * h[1] && h[1] < 4.0 * d);
        if !balanced {
            let s = (t - q[1].0) / h[1];
            return q[1].1 + s * (q[2].1 - q[1].1);
        }
        let mut acc = 0.0;
        for i in 0..4 {
            let mut l = 1.0;
            for j in 0..4 {
                if i != j {
                    l *= (t - q[j].0) / (q[i].0 - q[j].0);
                }
            }
            acc += l * q[i].1;
        }
        acc
    }
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let d = (b.0 - a.0, b.1 - a.1);
    let len2 = d.0 * d.0 + d.1 * d.1;
    let s = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * d.0 + (p.1 - a.1) * d.1) / len2).clamp(0.0, 1.0)
    };
    (p.0 - a.0 - s * d.0).hypot(p.1 - a.1 - s * d.1)
}

impl InvariantCircleTrace {
    /// Euclidean distance from `(r cos θ, r sin θ)` to the polyline, searched
    /// over segments within `WINDOW` of `θ`.
    pub fn distance(&self, r: f64, theta: f64) -> f64 {
        const WINDOW: f64 = 2e-3;
        let n = self.points.len() - 1;
        let t0 = self.points[0].0;
        let t = t0 + (theta - t0).rem_euclid(TAU);
        let p = (r * t.cos(), r * t.sin());
        let k = self.points.partition_point(|q| q.0 < t) as isize;
        let at = |i: isize| -> (f64, f64) {
            let m = n as isize;
            let wraps = i.div_euclid(m);
            let (th, r) = self.points[i.rem_euclid(m) as usize];
            (th + wraps as f64 * TAU, r)
        };
        let xy = |(th, r): (f64, f64)| (r * th.cos(), r * th.sin());
        let mut best = f64::INFINITY;
        let mut i = k;
        loop {
            let (a, b) = (at(i - 1), at(i));
            best = best.min(segment_distance(p, xy(a), xy(b)));
            if b.0 < t - WINDOW || i < k - n as isize {
                break;
            }
            i -= 1;
        }
        let mut i = k;
        loop {
            let (a, b) = (at(i), at(i + 1));
            best = best.min(segment_distance(p, xy(a), xy(b)));
            if a.0 > t + WINDOW || i > k + n as isize {
                break;
            }
            i += 1;
        }
        best
    }
}

fn to_radius(w: f64, p: usize) -> f64 {
    w.powf(1.0 / (2 * p) as f64)
}

fn trace_tolerances(spec: &PortraitSpec) -> Tolerances {
    Tolerances {
        rel: spec.rel.min(1e-11),
        abs: spec.abs.min(1e-14),
    }
}

fn graph(polar: &Polar) -> InvariantCircleTrace {
    let n = 2 * STEPS_PER_HALF_TURN;
    let points: Vec<(f64, f64)> = (0..=n)
        .map(|k| {
            let t = TAU * k as f64 / n as f64;
            (t, polar.null_radius(t))
        })
        .collect();
    let residuals = points.iter().map(|&(t, r)| polar.radial_residual(r, t)).collect();
    InvariantCircleTrace {
        dynamics_type: DynamicsType::Continuum,
        points,
        residuals,
        closed: true,
    }
}

/// Periodic orbit of `dw/dθ = 2p(λ + f w)/g` over `[0, 2π]`, with the
/// closing error `|r(2π) − r(0)|`.
fn periodic(polar: &Polar, tol: Tolerances) -> Result<(Vec<(f64, f64)>, f64)> {
    let two_p = (2 * polar.p) as f64;
    let lam = polar.lambda;
    let forward = polar.g(0.0) > 0.0;
    let (t_start, t_end) = if forward { (0.0, PI) } else { (PI, 0.0) };
    // [w, log Φ]
    let rhs = |t: f64, y: &[f64; 2]| {
        let g = polar.g(t);
        let f = polar.f(t);
        [two_p * (lam + f * y[0]) / g, two_p * f / g]
    };
    let fail = || Error::Other("invariant circle integration failed".into());
    let [psi, log_phi] = ode::solve(&rhs, t_start, [0.0, 0.0], t_end, tol).ok_or_else(fail)?;
    let w0 = psi / (1.0 - log_phi.exp());
    let lin = |t: f64, y: &[f64; 1]| [two_p * (lam + polar.f(t) * y[0]) / polar.g(t)];
    let n = STEPS_PER_HALF_TURN;
    let mut half = vec![(t_start, w0)];
    let mut w = w0;
    for k in 1..=n {
        let a = t_start + (t_end - t_start) * (k - 1) as f64 / n as f64;
        let b = t_start + (t_end - t_start) * k as f64 / n as f64;
        w = ode::solve(&lin, a, [w], b, tol).ok_or_else(fail)?[0];
        half.push((b, w));
    }
    let closing = (to_radius(w, polar.p) - to_radius(w0, polar.p)).abs();
    if !forward {
        half.reverse();
    }
    // half now runs over [0, π] in increasing θ
    let mut points: Vec<(f64, f64)> = half.iter().map(|&(t, w)| (t, to_radius(w, polar.p))).collect();
    let second: Vec<(f64, f64)> = points[1..].iter().map(|&(t, r)| (t + PI, r)).collect();
    points.extend(second);
    Ok((points, closing))
}

fn start_offset(m: usize) -> f64 {
    match m {
        1 => 1e-8,
        2 => 1e-4,
        _ => 1e-2,
    }
}

/// Samples closer than this to an equilibrium, other than the equilibrium
/// itself, are dropped.
const KEEP_AWAY: f64 = 1e-6;
/// Rough lower bound on the spacing of retained samples.
const MIN_SPACING: f64 = 1e-4;

fn end_offset(m: usize) -> f64 {
    match m {
        1 => KEEP_AWAY,
        2 => 1e-4,
        _ => 1e-3,
    }
}

/// `w = −λ/f + e` with `e = (−λ/f)′ g/(2p f)`, the first-order slow
/// manifold of `w' = 2p(λ + f w)`, `θ' = g` where `g` is small.
fn slow_manifold(polar: &Polar, t: f64) -> f64 {
    let two_p = (2 * polar.p) as f64;
    let w0 = |t: f64| -polar.lambda / polar.f(t);
    let d = 1e-6;
    let dw0 = (w0(t + d) - w0(t - d)) / (2.0 * d);
    w0(t) + dw0 * polar.g(t) / (two_p * polar.f(t))
}

/// The state is within rounding of the slow manifold and the first-order
/// correction is negligible.
fn on_slow_manifold(polar: &Polar, w: f64, t: f64) -> bool {
    let m = slow_manifold(polar, t);
    (w - m).abs() < 1e-9 * m && correction_negligible(polar, t)
}

fn correction_negligible(polar: &Polar, t: f64) -> bool {
    let m = slow_manifold(polar, t);
    let w0 = -polar.lambda / polar.f(t);
    (m - w0).abs() < 1e-10 * m
}

/// The orbit between consecutive equilibria `a < b` as `(θ, w)` with `θ`
/// increasing, endpoints included.
fn sector(
    polar: &Polar,
    (a, ma): (f64, usize),
    (b, mb): (f64, usize),
    tol: Tolerances,
    scale: f64,
) -> Result<Vec<(f64, f64)>> {
    let two_p = (2 * polar.p) as f64;
    let lam = polar.lambda;
    let w_null = |t: f64| -lam / polar.f(t);
    let forward = polar.g(0.5 * (a + b)) > 0.0;
    let (start, ms, end, me, dir) = if forward { (a, ma, b, mb, 1.0) } else { (b, mb, a, ma, -1.0) };
    let max_dtheta = PI / STEPS_PER_HALF_TURN as f64;
    let offset = (start_offset(ms) * scale).min(0.25 * (b - a));
    let stop = end_offset(me).min(0.25 * (b - a));
    let rhs = |_: f64, y: &[f64; 2]| [two_p * (lam + polar.f(y[1]) * y[0]), polar.g(y[1])];
    let mut out = vec![(start, w_null(start))];
    let mut theta0 = start + dir * offset;
    let mut w_start = w_null(theta0);
    if ms >= 2 {
        // leave a degenerate root along the slow manifold
        let mut t = start;
        loop {
            let next = t + dir * max_dtheta;
            if (next - start).abs() >= 0.25 * (b - a) || !correction_negligible(polar, next) {
                break;
            }
            out.push((next, slow_manifold(polar, next)));
            t = next;
        }
        if t != start {
            theta0 = t;
            w_start = slow_manifold(polar, t);
        }
    }
    let mut y = [w_start, theta0];
    let mut tau = 0.0;
    let mut h = 1e-3;
    let mut steps = 0;
    while (end - y[1]) * dir > stop {
        steps += 1;
        if steps > MAX_SECTOR_STEPS {
            return Err(Error::Other("invariant circle sector did not converge".into()));
        }
        match ode::step(&rhs, tau, &y, h, tol) {
            Step::Accepted { y: yn, h: hs, next_h } => {
                let dt = (yn[1] - y[1]).abs();
                if dt > max_dtheta {
                    h = hs * 0.5 * max_dtheta / dt;
                    continue;
                }
                if (end - yn[1]) * dir < 0.0 {
                    h = hs * 0.5;
                    continue;
                }
                tau += hs;
                y = yn;
                h = next_h;
                let last = out[out.len() - 1];
                let far = (to_radius(last.1, polar.p) - to_radius(y[0], polar.p)).abs() + (last.0 - y[1]).abs();
                if (y[1] - start).abs() >= KEEP_AWAY && far >= MIN_SPACING {
                    out.push((y[1], y[0]));
                }
                if me >= 2 && (end - y[1]).abs() < 0.5 * (b - a).min(0.1) && on_slow_manifold(polar, y[0], y[1]) {
                    // θ creeps towards a degenerate root while w relaxes fast
                    let n = ((end - y[1]).abs() / max_dtheta).ceil().max(1.0) as usize;
                    let from = y[1];
                    for k in 1..n {
                        let t = from + (end - from) * k as f64 / n as f64;
                        if (end - t) * dir > stop {
                            out.push((t, slow_manifold(polar, t)));
                        }
                    }
                    break;
                }
            }
            Step::Underflow => return Err(Error::Other("step underflow on the invariant circle".into())),
        }
    }
    out.push((end, w_null(end)));
    if !forward {
        out.reverse();
    }
    Ok(out)
}

fn policycle(polar: &Polar, roots: &[(f64, usize)], tol: Tolerances, scale: f64) -> Result<Vec<(f64, f64)>> {
    let m = roots.len();
    let mut half: Vec<(f64, f64)> = Vec::new();
    for i in 0..m {
        let a = roots[i];
        let b = if i + 1 < m { roots[i + 1] } else { (roots[0].0 + PI, roots[0].1) };
        let pts = sector(polar, a, b, tol, scale)?;
        let skip = usize::from(!half.is_empty());
        half.extend(pts.into_iter().skip(skip));
    }
    // half covers [θ0, θ0 + π]
    let mut points: Vec<(f64, f64)> = half.iter().map(|&(t, w)| (t, to_radius(w, polar.p))).collect();
    let second: Vec<(f64, f64)> = points[1..].iter().map(|&(t, r)| (t + PI, r)).collect();
    points.extend(second);
    Ok(points)
}

fn roots_of(f: &StarField) -> Result<Vec<(f64, usize)>> {
    let set = f.lq().projective_roots()?;
    let mut roots: Vec<(f64, usize)> = set.angles().into_iter().zip(set.multiplicities()).collect();
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(roots)
}

fn compare(points: &[(f64, f64)], reference: &InvariantCircleTrace) -> Vec<f64> {
    points.iter().map(|&(t, r)| reference.distance(r, t)).collect()
}

/// Samples the invariant circle of a contracting field.
///
/// Residuals are the Euclidean distance to an independent trace computed
/// with tighter tolerances and a smaller start offset; on the graph case
/// they are `|ṙ|`.
pub fn trace_invariant_circle(f: &StarField, spec: &PortraitSpec) -> Result<InvariantCircleTrace> {
    let class = circle::classify_circle(f)?;
    let polar = Polar::new(f);
    let tol = trace_tolerances(spec);
    let fine = Tolerances {
        rel: tol.rel * 1e-2,
        abs: tol.abs * 1e-2,
    };
    match class.dynamics_type {
        DynamicsType::Continuum => Ok(graph(&polar)),
        DynamicsType::LimitCycle => {
            let (points, closing) = periodic(&polar, tol)?;
            let (reference, _) = periodic(&polar, fine)?;
            let reference = InvariantCircleTrace {
                dynamics_type: DynamicsType::LimitCycle,
                points: reference,
                residuals: Vec::new(),
                closed: true,
            };
            let residuals = compare(&points, &reference);
            Ok(InvariantCircleTrace {
                dynamics_type: DynamicsType::LimitCycle,
                closed: closing < spec.circle_tol,
                points,
                residuals,
            })
        }
        DynamicsType::Policycle => {
            let roots = roots_of(f)?;
            let points = policycle(&polar, &roots, tol, 1.0)?;
            let reference = InvariantCircleTrace {
                dynamics_type: DynamicsType::Policycle,
                points: policycle(&polar, &roots, fine, 0.1)?,
                residuals: Vec::new(),
                closed: true,
            };
            let residuals = compare(&points, &reference);
            let closed = (points[0].1 - points[points.len() - 1].1).abs() < spec.circle_tol;
            Ok(InvariantCircleTrace {
                dynamics_type: DynamicsType::Policycle,
                points,
                residuals,
                closed,
            })
        }
    }
}
