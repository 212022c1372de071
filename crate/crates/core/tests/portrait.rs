use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use starnode::catalog::{self, Params, RowId};
use starnode::circle::{self, DynamicsType, LocalType};
use starnode::poly2::Poly2;
use starnode::portrait::{self, Chart, Direction, Polar, PortraitSpec, Seeds, Termination};
use starnode::rational::to_f64;
use starnode::StarField;

fn row(id: RowId, params: &str) -> StarField {
    catalog::build(id, &Params::parse(params).unwrap()).unwrap().field
}

fn random_seeds(rng: &mut ChaCha8Rng, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| {
            let t = rng.gen_range(0.0..TAU);
            let r = 10f64.powf(rng.gen_range(-1.5..1.0));
            (r * t.cos(), r * t.sin())
        })
        .collect()
}

fn forward_only(seeds: Vec<(f64, f64)>) -> PortraitSpec {
    PortraitSpec {
        seeds: Seeds::Points(seeds),
        both_directions: false,
        ..PortraitSpec::default()
    }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

#[test]
fn chart_restriction_of_row_i() {
    let f = row(RowId::I, "mu=-1");
    let (u1, u2, plane) = portrait::chart_fields(&f).unwrap();
    assert_eq!((u1.chart, u2.chart, plane.chart), (Chart::U1, Chart::U2, Chart::Plane));
    let on_line = u1.u_dot.restrict_y_zero();
    assert_eq!(on_line, starnode::UniPoly::from_ints(&[1, 0, -6, 0, 1]));
    // oracle: Q2(1, u) − u Q1(1, u) from the coefficients directly
    let q1: Vec<f64> = f.q1().coeffs().iter().map(to_f64).collect();
    let q2: Vec<f64> = f.q2().coeffs().iter().map(to_f64).collect();
    let at = |c: &[f64], u: f64| c.iter().enumerate().map(|(k, a)| a * u.powi(k as i32)).sum::<f64>();
    for u in [-2.5, -0.3, 0.0, 0.7, 1.9] {
        let want = at(&q2, u) - u * at(&q1, u);
        assert!((on_line.eval_f64(u) - want).abs() < 1e-12);
        assert!((u1.u_dot.eval_f64(u, 0.0) - want).abs() < 1e-12);
    }
    // v = 0 is invariant in both charts
    for c in [&u1, &u2] {
        assert!(c.v_dot.restrict_y_zero().is_zero());
    }
}

#[test]
fn infinity_equilibria_match_phase_roots() {
    for (id, params) in [(RowId::I, "mu=-1"), (RowId::III, "mu=0"), (RowId::VII, ""), (RowId::VIII, ""), (RowId::IX, "")] {
        let f = row(id, params);
        let pts = portrait::infinity_equilibria(&f).unwrap().unwrap();
        let roots = f.lq().projective_roots().unwrap();
        assert_eq!(pts.len(), roots.len(), "{id}");
        for (i, p) in pts.iter().enumerate() {
            assert!((p.theta - roots.angle(i)).abs() < 1e-9, "{id}");
            assert_eq!(p.multiplicity, roots.multiplicities()[i], "{id}");
            assert_eq!(p.chart == Chart::U2, roots.roots[i].is_vertical(), "{id}");
        }
    }
    assert!(portrait::infinity_equilibria(&row(RowId::X, "")).unwrap().is_none());
    assert!(portrait::infinity_equilibria(&row(RowId::II, "mu=0")).unwrap().unwrap().is_empty());
}

#[test]
fn rendered_boundary_glyphs_biject_with_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (id, params) in [(RowId::I, "mu=-1"), (RowId::VII, ""), (RowId::IX, "")] {
        let f = row(id, params);
        let p = portrait::portrait(&f, &forward_only(random_seeds(&mut rng, 4))).unwrap();
        let mut got = p.rendered.infinity_angles();
        got.sort_by(f64::total_cmp);
        let roots = f.lq().projective_roots().unwrap();
        let mut want: Vec<f64> = roots.angles().iter().flat_map(|&t| [t, t + PI]).collect();
        want.sort_by(f64::total_cmp);
        assert_eq!(got.len(), want.len(), "{id}");
        for (a, b) in got.iter().zip(&want) {
            assert!(angle_gap(*a, *b) < 1e-9, "{id}: {a} vs {b}");
        }
    }
}

#[test]
fn random_seeds_reach_the_circle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (id, params) in [(RowId::II, "mu=0"), (RowId::VII, ""), (RowId::X, "")] {
        let f = row(id, params);
        let p = portrait::portrait(&f, &forward_only(random_seeds(&mut rng, 20))).unwrap();
        assert_eq!(p.trajectories.len(), 20);
        for t in &p.trajectories {
            assert_eq!(t.direction, Direction::Forward);
            assert!(!t.termination.is_truncated(), "{id}: {:?}", t.termination);
            assert!(t.circle_distance.unwrap() < 1e-6, "{id}: {:?}", t.circle_distance);
        }
    }
}

#[test]
fn sinks_attract_without_a_stopping_circle() {
    let f = row(RowId::I, "mu=-1");
    let inv = circle::equilibrium_inventory(&f).unwrap();
    let sinks: Vec<f64> = inv
        .circle_equilibria
        .iter()
        .filter(|e| e.local_type == LocalType::Sink)
        .map(|e| e.theta)
        .collect();
    assert_eq!(sinks.len(), 4);
    let polar = Polar::new(&f);
    let spec = PortraitSpec {
        max_arclength: 400.0,
        ..PortraitSpec::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut reached = 0;
    for (i, s) in random_seeds(&mut rng, 16).into_iter().enumerate() {
        let t = portrait::integrate(&polar, None, i, s, Direction::Forward, &spec);
        if t.termination != Termination::Equilibrium {
            continue;
        }
        reached += 1;
        let (x, y) = *t.points.last().unwrap();
        let theta = y.atan2(x);
        assert!(sinks.iter().any(|&s| angle_gap(s, theta) < 1e-3), "ended at θ = {theta}");
        assert!((x.hypot(y) - polar.null_radius(theta)).abs() < 1e-3);
    }
    assert!(reached >= 14, "{reached}");
}

#[test]
fn axes_are_invariant_rays_of_row_vii() {
    let f = row(RowId::VII, "");
    let polar = Polar::new(&f);
    let spec = PortraitSpec::default();
    for (i, seed) in [(0.2, 0.0), (-3.0, 0.0), (0.0, 0.5), (0.0, -4.0)].into_iter().enumerate() {
        let t = portrait::integrate(&polar, None, i, seed, Direction::Forward, &spec);
        for &(x, y) in &t.points {
            let off = if seed.1 == 0.0 { y } else { x };
            assert!(off.abs() < 1e-12);
        }
        let (x, y) = *t.points.last().unwrap();
        assert!((x.hypot(y) - polar.null_radius(y.atan2(x))).abs() < 1e-6);
    }
}

/// Fixed-step RK4 on the plane field.
fn rk4_orbit(f: &StarField, start: (f64, f64), dt: f64, steps: usize) -> Vec<(f64, f64)> {
    let lam = to_f64(f.lambda());
    let (q1, q2) = (Poly2::from_form(f.q1()), Poly2::from_form(f.q2()));
    let rhs = |(x, y): (f64, f64)| (lam * x + q1.eval_f64(x, y), lam * y + q2.eval_f64(x, y));
    let mut p = start;
    let mut out = vec![p];
    for _ in 0..steps {
        let k1 = rhs(p);
        let k2 = rhs((p.0 + 0.5 * dt * k1.0, p.1 + 0.5 * dt * k1.1));
        let k3 = rhs((p.0 + 0.5 * dt * k2.0, p.1 + 0.5 * dt * k2.1));
        let k4 = rhs((p.0 + dt * k3.0, p.1 + dt * k3.1));
        p = (
            p.0 + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            p.1 + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        );
        out.push(p);
    }
    out
}

#[test]
fn limit_cycle_trace_agrees_with_rk4() {
    for params in ["mu=0", "mu=1/2,alpha=1,lambda=2"] {
        let f = row(RowId::II, params);
        let trace = portrait::trace_invariant_circle(&f, &PortraitSpec::default()).unwrap();
        assert_eq!(trace.dynamics_type, DynamicsType::LimitCycle);
        assert!(trace.closed);
        assert!(trace.max_residual() < 1e-6, "{}", trace.max_residual());
        let r0 = trace.radius_at(0.0);
        let orbit = rk4_orbit(&f, (r0, 0.0), 1e-3, 20_000);
        let mut theta = 0.0f64;
        let mut last = 0.0f64;
        for &(x, y) in &orbit {
            let t = y.atan2(x);
            let d = (t - last + PI).rem_euclid(TAU) - PI;
            theta += d;
            last = t;
            assert!(trace.distance(x.hypot(y), t) < 1e-6, "at θ = {t}");
        }
        // the orbit winds at least once around the origin
        assert!(theta.abs() > TAU, "{theta}");
    }
}

#[test]
fn policycle_traces_agree_with_rk4() {
    for (id, params) in [(RowId::IV, ""), (RowId::VII, ""), (RowId::IX, ""), (RowId::I, "mu=-1")] {
        let f = row(id, params);
        let trace = portrait::trace_invariant_circle(&f, &PortraitSpec::default()).unwrap();
        assert_eq!(trace.dynamics_type, DynamicsType::Policycle, "{id}");
        assert!(trace.max_residual() < 1e-6, "{id}: {}", trace.max_residual());
        let roots = f.lq().projective_roots().unwrap().angles();
        let mid = if roots.len() > 1 { 0.5 * (roots[0] + roots[1]) } else { roots[0] + 0.5 * PI };
        let r0 = trace.radius_at(mid);
        let orbit = rk4_orbit(&f, (r0 * mid.cos(), r0 * mid.sin()), 1e-3, 20_000);
        for &(x, y) in &orbit {
            let d = trace.distance(x.hypot(y), y.atan2(x));
            assert!(d < 1e-6, "{id}: {d} at θ = {}", y.atan2(x));
        }
    }
}

#[test]
fn svg_is_byte_stable() {
    let f = row(RowId::VII, "");
    let spec = PortraitSpec::default();
    let a = portrait::render_svg(&f, &spec).unwrap();
    let b = portrait::render_svg(&f, &spec).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with("<?xml") && a.contains("<svg"));
    assert!(a.contains("width=\"600\""));
    let p = portrait::portrait(&f, &spec).unwrap();
    let json = p.sidecar_json();
    assert_eq!(json["trajectories"].as_array().unwrap().len(), 32);
}
