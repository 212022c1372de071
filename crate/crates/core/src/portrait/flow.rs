//! Trajectories of the field.
//!
//! Integration runs in `(ρ, θ)` with `ρ = ln r` and time divided by
//! `1 + r^(2p)`, which keeps the speed bounded near infinity:
//! `ρ' = (λ + f w)/(1 + w)`, `θ' = g w/(1 + w)`, `w = r^(2p)`.

use serde::Serialize;

use super::cycle::InvariantCircleTrace;
use super::ode::{self, Step};
use super::{Polar, PortraitSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Equilibrium,
    InvariantCircle,
    Infinity,
    Origin,
    MaxArclength,
    MaxSteps,
    StepUnderflow,
    Escaped,
}

impl Termination {
    /// The trajectory stopped before reaching a limit set.
    pub fn is_truncated(self) -> bool {
        matches!(
            self,
            Termination::MaxArclength | Termination::MaxSteps | Termination::StepUnderflow | Termination::Escaped
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub seed_index: usize,
    pub seed: (f64, f64),
    pub direction: Direction,
    /// Plane coordinates, decimated.
    pub points: Vec<(f64, f64)>,
    pub termination: Termination,
    /// Length in disc coordinates.
    pub arclength: f64,
    /// Euclidean distance to the traced invariant circle at the last point.
    pub circle_distance: Option<f64>,
    /// `|λ + f(θ) r^(2p)| · r` at the last point.
    pub radial_residual: f64,
}

const R_INFINITY: f64 = 1e6;
const R_ORIGIN: f64 = 1e-8;
const DECIMATE: f64 = 1e-3;
const MAX_DISC_STEP: f64 = 0.02;
/// Accepted steps between stall checks.
const STALL_WINDOW: usize = 2000;
/// Disc displacement over a window below which the trajectory has stalled
/// on an equilibrium at the integration tolerance.
const STALL_DISTANCE: f64 = 1e-10;

fn disc(rho: f64, theta: f64) -> (f64, f64) {
    let r = rho.exp();
    let d = r / (1.0 + r);
    (d * theta.cos(), d * theta.sin())
}

fn plane(rho: f64, theta: f64) -> (f64, f64) {
    let r = rho.exp();
    (r * theta.cos(), r * theta.sin())
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Integrates one seed until a stopping rule fires.
///
/// Forward trajectories stop within `circle_tol` of the invariant circle when
/// one is given; both directions stop at equilibria (speed below `eq_tol`,
/// or no measurable motion over a window of steps),
/// near the origin, and beyond `r = 10⁶`.
pub fn integrate(
    polar: &Polar,
    circle: Option<&InvariantCircleTrace>,
    seed_index: usize,
    seed: (f64, f64),
    direction: Direction,
    spec: &PortraitSpec,
) -> Trajectory {
    let two_p = (2 * polar.p) as i32;
    let sign = match direction {
        Direction::Forward => 1.0,
        Direction::Backward => -1.0,
    };
    let rhs = |_: f64, y: &[f64; 2]| {
        let w = (two_p as f64 * y[0]).exp();
        let s = sign / (1.0 + w);
        [s * (polar.lambda + polar.f(y[1]) * w), s * polar.g(y[1]) * w]
    };
    let r0 = seed.0.hypot(seed.1);
    let mut y = [r0.ln(), seed.1.atan2(seed.0)];
    let mut t = 0.0;
    let mut h = 1e-2;
    let mut steps = 0;
    let mut arclength = 0.0;
    let mut last_disc = disc(y[0], y[1]);
    let mut last_kept = last_disc;
    let mut anchor = last_disc;
    let mut points = vec![seed];
    let tol = spec.tolerances();
    let check_circle = direction == Direction::Forward;
    let termination = loop {
        let r = y[0].exp();
        if !(y[0].is_finite() && y[1].is_finite()) {
            break Termination::Escaped;
        }
        if r > R_INFINITY {
            break Termination::Infinity;
        }
        if r < R_ORIGIN {
            break Termination::Origin;
        }
        if check_circle {
            if let Some(c) = circle {
                if c.distance(r, y[1]) < spec.circle_tol {
                    break Termination::InvariantCircle;
                }
            }
        }
        let w = r.powi(two_p);
        let speed = r * (polar.lambda + polar.f(y[1]) * w).hypot(polar.g(y[1]) * w);
        if speed < spec.eq_tol {
            break Termination::Equilibrium;
        }
        if steps > 0 && steps % STALL_WINDOW == 0 {
            if dist(last_disc, anchor) < STALL_DISTANCE {
                break Termination::Equilibrium;
            }
            anchor = last_disc;
        }
        if arclength > spec.max_arclength {
            break Termination::MaxArclength;
        }
        if steps >= spec.max_steps {
            break Termination::MaxSteps;
        }
        steps += 1;
        match ode::step(&rhs, t, &y, h, tol) {
            Step::Accepted { y: yn, h: hs, next_h } => {
                let d = disc(yn[0], yn[1]);
                let moved = dist(d, last_disc);
                if moved > MAX_DISC_STEP {
                    h = hs * 0.5 * MAX_DISC_STEP / moved;
                    continue;
                }
                arclength += moved;
                last_disc = d;
                t += hs;
                y = yn;
                h = next_h;
                if dist(d, last_kept) >= DECIMATE {
                    points.push(plane(y[0], y[1]));
                    last_kept = d;
                }
            }
            Step::Underflow => break Termination::StepUnderflow,
        }
    };
    let last = plane(y[0], y[1]);
    if points.last() != Some(&last) && y[0].is_finite() {
        points.push(last);
    }
    let r = y[0].exp();
    Trajectory {
        seed_index,
        seed,
        direction,
        points,
        termination,
        arclength,
        circle_distance: circle.map(|c| c.distance(r, y[1])),
        radial_residual: polar.radial_residual(r, y[1]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, Params, RowId};
    use crate::portrait::trace_invariant_circle;

    fn run(id: RowId, seed: (f64, f64), d: Direction) -> Trajectory {
        let f = catalog::build(id, &Params::default()).unwrap().field;
        let spec = PortraitSpec::default();
        let c = trace_invariant_circle(&f, &spec).unwrap();
        integrate(&Polar::new(&f), Some(&c), 0, seed, d, &spec)
    }

    #[test]
    fn continuum_trajectories_follow_rays() {
        let t = run(RowId::X, (0.3, 0.4), Direction::Forward);
        assert_eq!(t.termination, Termination::InvariantCircle);
        let (x, y) = *t.points.last().unwrap();
        assert!((y.atan2(x) - 0.4f64.atan2(0.3)).abs() < 1e-12);
        assert!((x.hypot(y) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn limit_cycle_attracts_from_both_sides() {
        for seed in [(0.1, 0.0), (5.0, -3.0)] {
            let t = run(RowId::II, seed, Direction::Forward);
            assert_eq!(t.termination, Termination::InvariantCircle);
            assert!(t.circle_distance.unwrap() < 1e-6);
        }
    }

    #[test]
    fn backward_ends_at_origin_or_infinity() {
        assert_eq!(run(RowId::II, (0.1, 0.0), Direction::Backward).termination, Termination::Origin);
        assert_eq!(run(RowId::II, (5.0, -3.0), Direction::Backward).termination, Termination::Infinity);
    }
}
