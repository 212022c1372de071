//! Deciding whether a nonlinearity is contracting.
//!
//! The exact test works on the radial form `𝓜Q`: `Q` is contracting iff
//! `𝓜Q` is strictly negative at every nonzero point, which for an even form
//! reduces to sign checks at two directions plus a Sturm count on `𝓜Q(1, t)`.
//!
//! The sufficient tests work on the four pieces of the decomposition,
//! restricted to the segment `u + v = 1`, `u, v ≥ 0`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::poly::UniPoly;
use crate::rational::{self, Rational};
use crate::roots::{Domain, RealRoots};
use crate::starfield::{Decomposition, StarField};

/// Evidence that `𝓜Q` is not negative definite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A rational direction with `𝓜Q(x, y) = value ≥ 0`.
    Direction {
        x: Rational,
        y: Rational,
        value: Rational,
    },
    /// An irrational slope `t ∈ (lo, hi)` where `𝓜Q(1, t) = 0` and `𝓜Q ≤ 0`
    /// nearby; no rational direction with `𝓜Q ≥ 0` exists there.
    TouchingRoot { lo: Rational, hi: Rational },
}

/// Outcome of all contraction tests on one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionVerdict {
    pub is_contracting: bool,
    pub witness: Option<Witness>,
    pub gershgorin: bool,
    pub determinant: bool,
    /// Corner conditions, evaluated only for cubic fields.
    pub cubic: Option<bool>,
}

fn direction(mq: &BinaryForm, x: Rational, y: Rational) -> Witness {
    let value = mq.eval(&x, &y);
    Witness::Direction { x, y, value }
}

/// Exact decision on the radial form alone.
pub fn radial_form_negative(mq: &BinaryForm) -> (bool, Option<Witness>) {
    let one = rational::int(1);
    let zero = Rational::zero();
    if mq.is_zero() {
        return (false, Some(direction(mq, one, zero)));
    }
    let d = mq.degree();
    if !mq.coeff(0).is_negative() {
        return (false, Some(direction(mq, one, zero)));
    }
    if !mq.coeff(d).is_negative() {
        return (false, Some(direction(mq, zero, one)));
    }
    let m = mq.dehomogenize();
    let rr = RealRoots::isolate(&m, Domain::Real);
    if rr.roots.is_empty() {
        return (true, None);
    }
    for f in &rr.factors {
        if f.factor.degree() == 1 {
            let t = -f.factor.coeff(0) / f.factor.coeff(1);
            return (false, Some(direction(mq, one, t)));
        }
    }
    for r in &rr.roots {
        for t in [&r.lo, &r.hi] {
            if !m.eval(t).is_negative() {
                return (false, Some(direction(mq, one.clone(), t.clone())));
            }
        }
    }
    let r = &rr.roots[0];
    (
        false,
        Some(Witness::TouchingRoot {
            lo: r.lo.clone(),
            hi: r.hi.clone(),
        }),
    )
}

/// Whether `𝓜Q < 0` off the origin, with a witness when it is not.
pub fn is_contracting_exact(f: &StarField) -> (bool, Option<Witness>) {
    radial_form_negative(&f.mq())
}

pub fn is_contracting(f: &StarField) -> bool {
    is_contracting_exact(f).0
}

/// Whether `h(1 - s, s) < 0` for every `s ∈ [0, 1]`.
pub fn negative_on_segment(h: &BinaryForm) -> bool {
    negative_on_unit_interval(&h.on_segment())
}

fn negative_on_unit_interval(h: &UniPoly) -> bool {
    if h.is_zero() {
        return false;
    }
    let zero = Rational::zero();
    if !h.eval(&zero).is_negative() {
        return false;
    }
    RealRoots::isolate(h, Domain::Closed(zero, rational::int(1)))
        .roots
        .is_empty()
}

/// Gershgorin-type test: `2·max(p1, p2) < -|p3 + p4|` on `u, v ≥ 0`.
///
/// `|s| < c` is split into `s < c` and `-s < c`, so the test is four strict
/// polynomial inequalities on the segment.
pub fn sufficient_gershgorin(d: &Decomposition) -> bool {
    let s = &d.p3 + &d.p4;
    let two = rational::int(2);
    [&d.p1, &d.p2].iter().all(|pj| {
        let t = pj.scale(&two);
        negative_on_segment(&(&t + &s)) && negative_on_segment(&(&t - &s))
    })
}

/// Determinant test: `p1 < 0` and `4 p1 p2 > (p3 + p4)²` on `u, v ≥ 0`.
///
/// A positive determinant keeps `p1` and `p2` nonzero and of equal sign on
/// the segment, so one sign check at `s = 0` settles the first condition.
pub fn sufficient_determinant(d: &Decomposition) -> bool {
    let s = &d.p3 + &d.p4;
    let det = &(&d.p1 * &d.p2).scale(&rational::int(4)) - &(&s * &s);
    if !negative_on_segment(&-&det) {
        return false;
    }
    d.p1.on_segment().eval(&Rational::zero()).is_negative()
}

/// The three corner conditions for cubic fields, in order.
pub fn cubic_corner_conditions(d: &Decomposition) -> Result<[bool; 3]> {
    if d.p() != 1 {
        return Err(Error::NotCubic(2 * d.p() + 1));
    }
    let at = |f: &BinaryForm, i: usize| f.coeff(i).clone();
    let four = rational::int(4);
    let neg = |f: &BinaryForm| at(f, 0).is_negative() && at(f, 1).is_negative();
    let corner = |i: usize| {
        let s = at(&d.p3, i) + at(&d.p4, i);
        &four * at(&d.p1, i) * at(&d.p2, i) > &s * &s
    };
    Ok([neg(&d.p1) || neg(&d.p2), corner(0), corner(1)])
}

/// Whether all three corner conditions hold.
pub fn cubic_sufficient(d: &Decomposition) -> Result<bool> {
    Ok(cubic_corner_conditions(d)?.iter().all(|&c| c))
}

/// The equivariant cubic `(-x(a10 x² + a11 y²), -y(a20 x² + a21 y²))`.
pub fn z2z2_field(
    a10: &Rational,
    a11: &Rational,
    a20: &Rational,
    a21: &Rational,
    lambda: Rational,
) -> Result<StarField> {
    let z = Rational::zero();
    let q1 = BinaryForm::new(vec![-a10.clone(), z.clone(), -a11.clone(), z.clone()]);
    let q2 = BinaryForm::new(vec![z.clone(), -a20.clone(), z, -a21.clone()]);
    StarField::new(lambda, q1, q2)
}

/// Closed-form contraction criterion for equivariant cubics.
pub fn z2z2_exact(a10: &Rational, a11: &Rational, a20: &Rational, a21: &Rational) -> bool {
    let s = a11 + a20;
    a10.is_positive()
        && a21.is_positive()
        && (!s.is_negative() || rational::int(4) * a10 * a21 > &s * &s)
}

/// Runs every applicable test.
pub fn verdict(f: &StarField) -> ContractionVerdict {
    let (is_contracting, witness) = is_contracting_exact(f);
    let d = f.decompose();
    ContractionVerdict {
        is_contracting,
        witness,
        gershgorin: sufficient_gershgorin(&d),
        determinant: sufficient_determinant(&d),
        cubic: cubic_sufficient(&d).ok(),
    }
}
