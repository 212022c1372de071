//! The field in the plane and in the two charts at infinity.
//!
//! In `U1` (`x = 1/v`, `y = u/v`) and `U2` (`y = 1/v`, `x = u/v`), after
//! multiplying time by `v^(2p)`:
//!
//! ```text
//! U1:  u' = Q2(1,u) − u Q1(1,u),   v' = −λ v^(2p+1) − v Q1(1,u)
//! U2:  u' = Q1(u,1) − u Q2(u,1),   v' = −λ v^(2p+1) − v Q2(u,1)
//! ```

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::poly2::Poly2;
use crate::rational;
use crate::roots::{Domain, RealRoots};
use crate::starfield::StarField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    U1,
    U2,
    Plane,
}

/// A polynomial field in `(u, v)`; stored with `x` for `u` and `y` for `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartField {
    pub chart: Chart,
    pub u_dot: Poly2,
    pub v_dot: Poly2,
}

/// `h(1, u)` (or `h(u, 1)` when `swap`) as a polynomial in the first slot.
fn restrict(h: &BinaryForm, swap: bool) -> Poly2 {
    let d = h.degree();
    let mut p = Poly2::zero();
    for (k, c) in h.coeffs().iter().enumerate() {
        let e = if swap { d - k } else { k };
        p = &p + &Poly2::term(c.clone(), e as u32, 0);
    }
    p
}

fn at_infinity(f: &StarField, chart: Chart) -> Result<ChartField> {
    let swap = chart == Chart::U2;
    let (a, b) = if swap { (f.q2(), f.q1()) } else { (f.q1(), f.q2()) };
    let a1 = restrict(a, swap);
    let b1 = restrict(b, swap);
    let u = Poly2::x();
    let v = Poly2::y();
    let u_dot = &b1 - &(&u * &a1);
    let lam = Poly2::constant(-f.lambda().clone());
    let v_dot = &(&lam * &v.pow(f.degree() as u32)) - &(&v * &a1);
    if v_dot.y_valuation().is_some_and(|k| k == 0) {
        return Err(Error::Other("chart field does not leave v = 0 invariant".into()));
    }
    Ok(ChartField { chart, u_dot, v_dot })
}

/// The three chart fields `(U1, U2, plane)`.
pub fn chart_fields(f: &StarField) -> Result<(ChartField, ChartField, ChartField)> {
    let plane = ChartField {
        chart: Chart::Plane,
        u_dot: &Poly2::term(f.lambda().clone(), 1, 0) + &Poly2::from_form(f.q1()),
        v_dot: &Poly2::term(f.lambda().clone(), 0, 1) + &Poly2::from_form(f.q2()),
    };
    Ok((at_infinity(f, Chart::U1)?, at_infinity(f, Chart::U2)?, plane))
}

/// An equilibrium on `v = 0` of a chart.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinityPoint {
    pub chart: Chart,
    /// Position on `v = 0`.
    pub u: f64,
    /// Order of the root of `u'` on `v = 0`.
    pub multiplicity: usize,
    /// Direction in `[0, π)`.
    pub theta: f64,
}

/// Equilibria at infinity, one per direction: all roots in `U1`, and `u = 0`
/// in `U2` when it is one. `None` when the whole line `v = 0` is equilibria.
pub fn infinity_equilibria(f: &StarField) -> Result<Option<Vec<InfinityPoint>>> {
    let (u1, u2, _) = chart_fields(f)?;
    let on_line = u1.u_dot.restrict_y_zero();
    if on_line.is_zero() {
        return Ok(None);
    }
    let mut out = Vec::new();
    if on_line.degree() > 0 {
        let rr = RealRoots::isolate(&on_line, Domain::Real);
        for i in 0..rr.roots.len() {
            let u = rr.approx(i, 17);
            let t = u.atan();
            out.push(InfinityPoint {
                chart: Chart::U1,
                u,
                multiplicity: rr.roots[i].multiplicity,
                theta: if t < 0.0 { t + std::f64::consts::PI } else { t },
            });
        }
    }
    let line2 = u2.u_dot.restrict_y_zero();
    let zero_order = line2.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zero_order > 0 {
        out.push(InfinityPoint {
            chart: Chart::U2,
            u: 0.0,
            multiplicity: zero_order,
            theta: std::f64::consts::FRAC_PI_2,
        });
    }
    out.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    Ok(Some(out))
}

/// Evaluates a chart field in floating point.
pub fn eval(c: &ChartField, u: f64, v: f64) -> (f64, f64) {
    (c.u_dot.eval_f64(u, v), c.v_dot.eval_f64(u, v))
}

/// `λ` of a field as a float.
pub(crate) fn lambda_f64(f: &StarField) -> f64 {
    rational::to_f64(f.lambda())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn row_i_restriction() {
        // 3μ(x²+y²)(x, y) + (−y³, x³ + 6μxy²) at μ = −1
        let f = StarField::new(
            int(1),
            BinaryForm::from_ints(&[-3, 0, -3, -1]),
            BinaryForm::from_ints(&[1, -3, -6, -3]),
        )
        .unwrap();
        let (u1, _, _) = chart_fields(&f).unwrap();
        assert_eq!(u1.u_dot.restrict_y_zero(), crate::UniPoly::from_ints(&[1, 0, -6, 0, 1]));
        assert_eq!(infinity_equilibria(&f).unwrap().unwrap().len(), 4);
    }

    #[test]
    fn radial_field_has_line_of_equilibria() {
        let f = StarField::new(int(1), BinaryForm::from_ints(&[-1, 0, -1, 0]), BinaryForm::from_ints(&[0, -1, 0, -1])).unwrap();
        assert_eq!(infinity_equilibria(&f).unwrap(), None);
    }

    #[test]
    fn vertical_direction_from_second_chart() {
        // 𝓛Q = 6x²y²
        let f = StarField::new(int(1), BinaryForm::from_ints(&[-1, 0, -1, 0]), BinaryForm::from_ints(&[0, -1, 6, -1])).unwrap();
        let pts = infinity_equilibria(&f).unwrap().unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].chart, Chart::U2);
        assert_eq!(pts.iter().map(|p| p.multiplicity).collect::<Vec<_>>(), vec![2, 2]);
    }
}
