//! Deterministic SVG output.

use std::fmt::Write;

use serde::Serialize;

use crate::circle::{self, CircleClassification, DynamicsType, LocalType, Symbol, SymbolSequence};
use crate::error::Result;
use crate::starfield::StarField;

use super::cycle::InvariantCircleTrace;
use super::flow::{Direction, Trajectory};
use super::PortraitSpec;

const SIZE: f64 = 600.0;
const CENTRE: f64 = SIZE / 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GlyphKind {
    Sink,
    Source,
    Saddle,
    SaddleNode,
}

impl GlyphKind {
    fn finite(t: LocalType) -> GlyphKind {
        match t {
            LocalType::Sink => GlyphKind::Sink,
            LocalType::Saddle => GlyphKind::Saddle,
            LocalType::SaddleNode => GlyphKind::SaddleNode,
        }
    }

    /// Type at infinity: the boundary repels transversally and carries the
    /// same angular motion as the invariant circle.
    fn at_infinity(s: Symbol) -> GlyphKind {
        match LocalType::of(s) {
            LocalType::Sink => GlyphKind::Saddle,
            LocalType::Saddle => GlyphKind::Source,
            LocalType::SaddleNode => GlyphKind::SaddleNode,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Glyph {
    pub kind: GlyphKind,
    /// Screen coordinates.
    pub x: f64,
    pub y: f64,
    /// Direction in `[0, 2π)` for glyphs on the boundary.
    pub infinity_theta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rendered {
    pub svg: String,
    pub glyphs: Vec<Glyph>,
}

impl Rendered {
    /// Directions of the glyphs drawn on the boundary.
    pub fn infinity_angles(&self) -> Vec<f64> {
        self.glyphs.iter().filter_map(|g| g.infinity_theta).collect()
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

struct Screen {
    radius: f64,
}

impl Screen {
    fn disc(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let r = x.hypot(y);
        let s = if r == 0.0 { 0.0 } else { 1.0 / (1.0 + r) };
        (CENTRE + self.radius * x * s, CENTRE - self.radius * y * s)
    }

    fn boundary(&self, theta: f64) -> (f64, f64) {
        (CENTRE + self.radius * theta.cos(), CENTRE - self.radius * theta.sin())
    }
}

fn polyline(out: &mut String, pts: &[(f64, f64)], stroke: &str, width: f64, extra: &str) {
    let body: Vec<String> = pts.iter().map(|&(x, y)| format!("{},{}", num(x), num(y))).collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{}"{extra}/>"#,
        body.join(" "),
        num(width)
    );
}

/// Arrowhead at the arclength midpoint, pointing along the flow.
fn arrowhead(out: &mut String, pts: &[(f64, f64)], forward: bool, colour: &str) {
    if pts.len() < 2 {
        return;
    }
    let seg: Vec<f64> = pts.windows(2).map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1)).collect();
    let total: f64 = seg.iter().sum();
    if total < 6.0 {
        return;
    }
    let mut acc = 0.0;
    let mut i = 0;
    while i + 1 < seg.len() && acc + seg[i] < total / 2.0 {
        acc += seg[i];
        i += 1;
    }
    if seg[i] == 0.0 {
        return;
    }
    let s = (total / 2.0 - acc) / seg[i];
    let (a, b) = (pts[i], pts[i + 1]);
    let tip = (a.0 + s * (b.0 - a.0), a.1 + s * (b.1 - a.1));
    let mut dir = ((b.0 - a.0) / seg[i], (b.1 - a.1) / seg[i]);
    if !forward {
        dir = (-dir.0, -dir.1);
    }
    let back = (tip.0 - 6.0 * dir.0, tip.1 - 6.0 * dir.1);
    let normal = (-dir.1 * 3.0, dir.0 * 3.0);
    let _ = writeln!(
        out,
        r#"<polygon points="{},{} {},{} {},{}" fill="{colour}"/>"#,
        num(tip.0),
        num(tip.1),
        num(back.0 + normal.0),
        num(back.1 + normal.1),
        num(back.0 - normal.0),
        num(back.1 - normal.1)
    );
}

fn glyph(out: &mut String, g: &Glyph, spec: &PortraitSpec) {
    let st = &spec.style;
    let (x, y) = (num(g.x), num(g.y));
    match g.kind {
        GlyphKind::Sink => {
            let _ = writeln!(out, r#"<circle class="sink" cx="{x}" cy="{y}" r="4.000" fill="{}"/>"#, st.sink);
        }
        GlyphKind::Source => {
            let _ = writeln!(
                out,
                r##"<circle class="source" cx="{x}" cy="{y}" r="4.000" fill="{}" stroke="#000000" stroke-width="1.200"/>"##,
                st.source
            );
        }
        GlyphKind::Saddle => {
            let (a, b) = (g.x, g.y);
            let _ = writeln!(
                out,
                r#"<path class="saddle" d="M{},{} L{},{} M{},{} L{},{}" stroke="{}" stroke-width="2.000"/>"#,
                num(a - 4.0),
                num(b - 4.0),
                num(a + 4.0),
                num(b + 4.0),
                num(a - 4.0),
                num(b + 4.0),
                num(a + 4.0),
                num(b - 4.0),
                st.saddle
            );
        }
        GlyphKind::SaddleNode => {
            let (a, b) = (g.x, g.y);
            let _ = writeln!(
                out,
                r#"<polygon class="saddle-node" points="{},{} {},{} {},{} {},{}" fill="{}"/>"#,
                num(a),
                num(b - 5.0),
                num(a + 5.0),
                num(b),
                num(a),
                num(b + 5.0),
                num(a - 5.0),
                num(b),
                st.saddle_node
            );
        }
    }
}

fn glyphs(f: &StarField, class: &CircleClassification, screen: &Screen) -> Result<Vec<Glyph>> {
    let mut out = vec![Glyph {
        kind: GlyphKind::Source,
        x: CENTRE,
        y: CENTRE,
        infinity_theta: None,
    }];
    if class.dynamics_type == DynamicsType::Continuum {
        return Ok(out);
    }
    let inv = circle::equilibrium_inventory(f)?;
    for e in &inv.circle_equilibria {
        let (x, y) = screen.disc(e.position());
        out.push(Glyph {
            kind: GlyphKind::finite(e.local_type),
            x,
            y,
            infinity_theta: None,
        });
    }
    if let (Some(angles), SymbolSequence::Cyclic(symbols)) = (super::infinity_angles(&f.lq())?, &class.sigma) {
        let n = symbols.len();
        for (k, (theta, _)) in angles.into_iter().enumerate() {
            let (x, y) = screen.boundary(theta);
            out.push(Glyph {
                kind: GlyphKind::at_infinity(symbols[k % n]),
                x,
                y,
                infinity_theta: Some(theta),
            });
        }
    }
    Ok(out)
}

/// Draws the boundary, trajectories, invariant circle and equilibria.
pub fn render(
    f: &StarField,
    class: &CircleClassification,
    trace: &InvariantCircleTrace,
    trajectories: &[Trajectory],
    spec: &PortraitSpec,
) -> Result<Rendered> {
    let st = &spec.style;
    let screen = Screen {
        radius: spec.disc_radius,
    };
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="600" height="600" viewBox="0 0 600 600">"#
    );
    let _ = writeln!(out, r#"<rect width="600" height="600" fill="{}"/>"#, st.background);
    if spec.toggles.infinity {
        let dash = if class.dynamics_type == DynamicsType::Continuum {
            r#" stroke-dasharray="1 3""#
        } else {
            ""
        };
        let _ = writeln!(
            out,
            r#"<circle class="infinity" cx="300.000" cy="300.000" r="{}" fill="none" stroke="{}" stroke-width="{}"{dash}/>"#,
            num(spec.disc_radius),
            st.boundary,
            num(st.boundary_width)
        );
    }
    let _ = writeln!(out, r#"<g class="trajectories">"#);
    for tr in trajectories {
        let pts: Vec<(f64, f64)> = tr.points.iter().map(|&p| screen.disc(p)).collect();
        let extra = if tr.termination.is_truncated() {
            r#" stroke-dasharray="4 3""#
        } else {
            ""
        };
        polyline(&mut out, &pts, &st.trajectory, st.trajectory_width, extra);
        arrowhead(&mut out, &pts, tr.direction == Direction::Forward, &st.trajectory);
    }
    let _ = writeln!(out, "</g>");
    if spec.toggles.invariant_circle {
        let pts: Vec<(f64, f64)> = trace
            .points
            .iter()
            .step_by(8)
            .chain(trace.points.last())
            .map(|&(t, r)| screen.disc((r * t.cos(), r * t.sin())))
            .collect();
        polyline(&mut out, &pts, &st.circle, st.circle_width, r#" class="invariant-circle""#);
    }
    let gl = glyphs(f, class, &screen)?;
    if spec.toggles.equilibria {
        let _ = writeln!(out, r#"<g class="equilibria">"#);
        for g in &gl {
            if g.infinity_theta.is_none() || spec.toggles.infinity {
                glyph(&mut out, g, spec);
            }
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    let glyphs = if spec.toggles.equilibria && spec.toggles.infinity {
        gl
    } else {
        gl.into_iter()
            .filter(|g| spec.toggles.equilibria && g.infinity_theta.is_none())
            .collect()
    };
    Ok(Rendered { svg: out, glyphs })
}
