//! Phase portraits on the Poincaré disc.
//!
//! Everything here is floating point and downstream of the exact
//! classification. The disc is drawn with the radial compactification
//! `r ↦ r/(1+r)`; the charts at infinity are used only to locate equilibria
//! there.

pub mod charts;
pub mod cycle;
pub mod flow;
pub mod ode;
pub mod svg;

use rayon::prelude::*;
use serde::Serialize;

use crate::circle::{self, CircleClassification};
use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::starfield::StarField;

pub use charts::{chart_fields, infinity_equilibria, Chart, ChartField, InfinityPoint};
pub use cycle::{trace_invariant_circle, InvariantCircleTrace};
pub use flow::{integrate, Direction, Termination, Trajectory};
pub use svg::{render, Glyph, GlyphKind, Rendered};

/// `f(θ) = 𝓜Q(cos θ, sin θ)` and `g(θ) = 𝓛Q(cos θ, sin θ)` in doubles.
///
/// In polar coordinates the field reads `ṙ = λr + f r^(2p+1)`, `θ̇ = g r^(2p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polar {
    pub lambda: f64,
    pub p: usize,
    mq: Vec<f64>,
    lq: Vec<f64>,
}

fn eval_trig(c: &[f64], theta: f64) -> f64 {
    let (s, co) = theta.sin_cos();
    let d = c.len() - 1;
    let mut acc = 0.0;
    for (k, a) in c.iter().enumerate() {
        acc += a * co.powi((d - k) as i32) * s.powi(k as i32);
    }
    acc
}

impl Polar {
    pub fn new(f: &StarField) -> Polar {
        Polar {
            lambda: charts::lambda_f64(f),
            p: f.p(),
            mq: f.mq().coeffs_f64(),
            lq: f.lq().coeffs_f64(),
        }
    }

    pub fn f(&self, theta: f64) -> f64 {
        eval_trig(&self.mq, theta)
    }

    pub fn g(&self, theta: f64) -> f64 {
        eval_trig(&self.lq, theta)
    }

    /// Radius where `ṙ = 0` along the ray at `θ`.
    pub fn null_radius(&self, theta: f64) -> f64 {
        (-self.lambda / self.f(theta)).powf(1.0 / (2 * self.p) as f64)
    }

    /// `|λ + f(θ) r^(2p)| · r`, that is `|ṙ|`.
    pub fn radial_residual(&self, r: f64, theta: f64) -> f64 {
        ((self.lambda + self.f(theta) * r.powi(2 * self.p as i32)) * r).abs()
    }

    pub fn phase_form_is_zero(&self) -> bool {
        self.lq.iter().all(|c| *c == 0.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Seeds {
    /// A ring of at least 8 seeds alternating inside and outside the circle.
    Auto(usize),
    Points(Vec<(f64, f64)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Style {
    pub background: String,
    pub boundary: String,
    pub circle: String,
    pub trajectory: String,
    pub sink: String,
    pub source: String,
    pub saddle: String,
    pub saddle_node: String,
    pub boundary_width: f64,
    pub circle_width: f64,
    pub trajectory_width: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            background: "#ffffff".into(),
            boundary: "#000000".into(),
            circle: "#c0392b".into(),
            trajectory: "#2c3e50".into(),
            sink: "#000000".into(),
            source: "#ffffff".into(),
            saddle: "#2980b9".into(),
            saddle_node: "#8e44ad".into(),
            boundary_width: 2.0,
            circle_width: 2.0,
            trajectory_width: 0.8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Toggles {
    pub equilibria: bool,
    pub invariant_circle: bool,
    pub infinity: bool,
}

impl Default for Toggles {
    fn default() -> Self {
        Toggles {
            equilibria: true,
            invariant_circle: true,
            infinity: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PortraitSpec {
    pub seeds: Seeds,
    pub rel: f64,
    pub abs: f64,
    /// Speed below which a point counts as an equilibrium.
    pub eq_tol: f64,
    /// Distance to the invariant circle at which a trajectory stops.
    pub circle_tol: f64,
    /// In disc units.
    pub max_arclength: f64,
    pub max_steps: usize,
    pub both_directions: bool,
    /// Drawing radius of the disc in SVG units.
    pub disc_radius: f64,
    pub style: Style,
    pub toggles: Toggles,
}

impl Default for PortraitSpec {
    fn default() -> Self {
        PortraitSpec {
            seeds: Seeds::Auto(16),
            rel: 1e-9,
            abs: 1e-12,
            eq_tol: 1e-10,
            circle_tol: 1e-6,
            max_arclength: 40.0,
            max_steps: 1_000_000,
            both_directions: true,
            disc_radius: 280.0,
            style: Style::default(),
            toggles: Toggles::default(),
        }
    }
}

impl PortraitSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("rel", self.rel),
            ("abs", self.abs),
            ("eq_tol", self.eq_tol),
            ("circle_tol", self.circle_tol),
            ("max_arclength", self.max_arclength),
            ("disc_radius", self.disc_radius),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive")));
            }
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidParameter("max_steps must be positive".into()));
        }
        if let Seeds::Auto(n) = self.seeds {
            if n < 8 {
                return Err(Error::InvalidParameter("auto seeding needs at least 8 seeds".into()));
            }
        }
        Ok(())
    }

    pub fn tolerances(&self) -> ode::Tolerances {
        ode::Tolerances {
            rel: self.rel,
            abs: self.abs,
        }
    }

    /// Seed points in the plane; the auto ring is placed at multiples of
    /// `radius(θ)`.
    pub fn seed_points(&self, radius: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
        match &self.seeds {
            Seeds::Points(p) => p.clone(),
            Seeds::Auto(n) => (0..*n)
                .map(|k| {
                    let theta = std::f64::consts::TAU * (k as f64 + 0.5) / *n as f64;
                    let scale = if k % 2 == 0 { 0.5 } else { 3.0 };
                    let r = scale * radius(theta);
                    (r * theta.cos(), r * theta.sin())
                })
                .collect(),
        }
    }
}

/// Everything drawn in one portrait.
#[derive(Clone, Debug)]
pub struct Portrait {
    pub classification: CircleClassification,
    pub circle: InvariantCircleTrace,
    pub trajectories: Vec<Trajectory>,
    pub rendered: Rendered,
}

#[derive(Serialize)]
struct SidecarEntry<'a> {
    seed: usize,
    direction: Direction,
    points: &'a [(f64, f64)],
    termination_reason: Termination,
}

impl Portrait {
    pub fn svg(&self) -> &str {
        &self.rendered.svg
    }

    /// Trajectory polylines as JSON, ordered by seed.
    pub fn sidecar_json(&self) -> serde_json::Value {
        let entries: Vec<SidecarEntry> = self
            .trajectories
            .iter()
            .map(|t| SidecarEntry {
                seed: t.seed_index,
                direction: t.direction,
                points: &t.points,
                termination_reason: t.termination,
            })
            .collect();
        serde_json::json!({ "schema_version": 1, "trajectories": entries })
    }
}

/// Integrates every seed and assembles the picture.
pub fn portrait(f: &StarField, spec: &PortraitSpec) -> Result<Portrait> {
    spec.validate()?;
    let classification = circle::classify_circle(f)?;
    let polar = Polar::new(f);
    let trace = trace_invariant_circle(f, spec)?;
    let seeds = spec.seed_points(|t| trace.radius_at(t));
    let mut jobs = Vec::new();
    for (i, s) in seeds.iter().enumerate() {
        jobs.push((i, *s, Direction::Forward));
        if spec.both_directions {
            jobs.push((i, *s, Direction::Backward));
        }
    }
    let trajectories: Vec<Trajectory> = jobs
        .par_iter()
        .map(|&(i, s, d)| integrate(&polar, Some(&trace), i, s, d, spec))
        .collect();
    let rendered = render(f, &classification, &trace, &trajectories, spec)?;
    Ok(Portrait {
        classification,
        circle: trace,
        trajectories,
        rendered,
    })
}

/// The SVG document alone.
pub fn render_svg(f: &StarField, spec: &PortraitSpec) -> Result<String> {
    Ok(portrait(f, spec)?.rendered.svg)
}

/// Angles in `[0, 2π)` of the infinity equilibria, both antipodes.
pub(crate) fn infinity_angles(lq: &BinaryForm) -> Result<Option<Vec<(f64, usize)>>> {
    if lq.is_zero() {
        return Ok(None);
    }
    let roots = lq.projective_roots()?;
    let mut out = Vec::new();
    for half in [0.0, std::f64::consts::PI] {
        for (i, m) in roots.multiplicities().into_iter().enumerate() {
            out.push((roots.angle(i) + half, m));
        }
    }
    Ok(Some(out))
}
