//! Homogeneous binary forms and their real projective roots.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{self, Rational};
use crate::roots::{Domain, IsolatedRoot, RealRoots};

/// Homogeneous polynomial of fixed degree `d` in two variables.
///
/// Entry `k` of the coefficient list multiplies `x^(d-k) y^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    /// Builds a form from `degree + 1` coefficients. Panics on an empty list.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    /// The monomial `c x^(d-k) y^k`.
    pub fn monomial(degree: usize, k: usize, c: Rational) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[k] = c;
        f
    }

    /// `a x + b y`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    /// `(x² + y²)^n`.
    pub fn circle_power(n: usize) -> Self {
        let q = Self::from_ints(&[1, 0, 1]);
        (0..n).fold(Self::from_ints(&[1]), |acc, _| &acc * &q)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let d = self.degree();
        let mut acc = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * rational::pow(x, (d - k) as u32) * rational::pow(y, k as u32);
            }
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let d = self.degree() as i32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| rational::to_f64(c) * x.powi(d - k as i32) * y.powi(k as i32))
            .sum()
    }

    /// Coefficients as doubles, for numerical work.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational::to_f64).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `x · self`.
    pub fn mul_x(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.push(Rational::zero());
        Self::new(v)
    }

    /// `y · self`.
    pub fn mul_y(&self) -> Self {
        let mut v = vec![Rational::zero()];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn partial_x(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        Self::new(
            (0..d)
                .map(|k| &self.coeffs[k] * rational::int((d - k) as i64))
                .collect(),
        )
    }

    pub fn partial_y(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        Self::new(
            (1..=d)
                .map(|k| &self.coeffs[k] * rational::int(k as i64))
                .collect(),
        )
    }

    /// `self(y, x)`.
    pub fn swap_xy(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// `self(x, -y)`.
    pub fn reflect_y(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Integer power.
    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::from_ints(&[1]), |acc, _| &acc * self)
    }

    /// `self(a x + b y, c x + d y)` for the matrix `[[a, b], [c, d]]`.
    pub fn compose_linear(&self, m: &[[Rational; 2]; 2]) -> Self {
        let d = self.degree();
        let l1 = Self::linear(m[0][0].clone(), m[0][1].clone());
        let l2 = Self::linear(m[1][0].clone(), m[1][1].clone());
        let p1: Vec<Self> = (0..=d).map(|e| l1.pow(e)).collect();
        let p2: Vec<Self> = (0..=d).map(|e| l2.pow(e)).collect();
        let mut acc = Self::zero(d);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&p1[d - k] * &p2[k]).scale(c);
            }
        }
        acc
    }

    /// `self(x², y²)`, a form of twice the degree.
    pub fn substitute_squares(&self) -> Self {
        let mut v = vec![Rational::zero(); 2 * self.degree() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[2 * k] = c.clone();
        }
        Self::new(v)
    }

    /// `self(1, t)`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    /// `self(1 - s, s)`, the restriction to the segment `u + v = 1`.
    pub fn on_segment(&self) -> UniPoly {
        let d = self.degree();
        let one_minus = UniPoly::from_ints(&[1, -1]);
        let s = UniPoly::from_ints(&[0, 1]);
        let mut acc = UniPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = UniPoly::constant(c.clone());
            for _ in 0..(d - k) {
                term = &term * &one_minus;
            }
            for _ in 0..k {
                term = &term * &s;
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Multiplicity of the vertical direction `(0, 1)` as a root.
    pub fn vertical_multiplicity(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count()
    }

    /// Real projective roots ordered by angle in `[0, π)`.
    pub fn projective_roots(&self) -> Result<ProjectiveRootSet> {
        ProjectiveRootSet::of(self)
    }

    /// Renders with the given variable names in the parser's syntax.
    pub fn display_with(&self, x: &str, y: &str) -> String {
        let d = self.degree();
        let terms: Vec<(Rational, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.clone(), monomial_text(x, d - k, y, k)))
            .collect();
        join_terms(&terms)
    }
}

fn power_text(v: &str, e: usize) -> Option<String> {
    match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    }
}

pub(crate) fn monomial_text(x: &str, a: usize, y: &str, b: usize) -> String {
    [power_text(x, a), power_text(y, b)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

/// Joins `(coefficient, monomial)` pairs as `a*m1 + b*m2 - ...`.
pub(crate) fn join_terms(terms: &[(Rational, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let body = if mono.is_empty() {
            rational::to_compact_string(&a)
        } else if a.is_one() {
            mono.clone()
        } else {
            format!("{}*{}", rational::to_compact_string(&a), mono)
        };
        out.push_str(&body);
    }
    out
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x", "y"))
    }
}

fn check_degrees(a: &BinaryForm, b: &BinaryForm) {
    assert_eq!(a.degree(), b.degree(), "binary forms of different degree");
}

impl Add for &BinaryForm {
    type Output = BinaryForm;
    fn add(self, rhs: &BinaryForm) -> BinaryForm {
        check_degrees(self, rhs);
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &BinaryForm {
    type Output = BinaryForm;
    fn sub(self, rhs: &BinaryForm) -> BinaryForm {
        check_degrees(self, rhs);
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Mul for &BinaryForm {
    type Output = BinaryForm;
    fn mul(self, rhs: &BinaryForm) -> BinaryForm {
        let mut out = BinaryForm::zero(self.degree() + rhs.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl Neg for &BinaryForm {
    type Output = BinaryForm;
    fn neg(self) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Location of a projective root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootKind {
    /// Direction `(1, t)` with `t` isolated in an interval.
    Slope(IsolatedRoot),
    /// Direction `(0, 1)`.
    Vertical,
}

/// A real root of a binary form, viewed as a point of RP¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveRoot {
    pub kind: RootKind,
    pub multiplicity: usize,
}

impl ProjectiveRoot {
    pub fn is_vertical(&self) -> bool {
        matches!(self.kind, RootKind::Vertical)
    }
}

/// All real projective roots of a nonzero form.
///
/// Roots are ordered by angle `θ ∈ [0, π)`: slopes `t ≥ 0` ascending, then
/// the vertical direction, then slopes `t < 0` ascending.
#[derive(Clone, Debug)]
pub struct ProjectiveRootSet {
    pub roots: Vec<ProjectiveRoot>,
    pub total_multiplicity: usize,
    slope_roots: Option<RealRoots>,
    /// For each entry of `roots`, its index in `slope_roots`.
    slope_index: Vec<Option<usize>>,
}

impl ProjectiveRootSet {
    fn of(g: &BinaryForm) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::ZeroForm);
        }
        let vm = g.vertical_multiplicity();
        let m = g.dehomogenize();
        let mut slope_roots = None;
        let mut nonneg = Vec::new();
        let mut neg = Vec::new();
        if m.degree() > 0 {
            let mut rr = RealRoots::isolate(&m, Domain::Real);
            let zero = Rational::zero();
            for i in 0..rr.roots.len() {
                rr.separate_from(i, &zero);
                let r = &rr.roots[i];
                let is_nonneg = match &r.exact {
                    Some(x) => !x.is_negative(),
                    None => r.lo >= zero,
                };
                if is_nonneg {
                    nonneg.push(i);
                } else {
                    neg.push(i);
                }
            }
            slope_roots = Some(rr);
        }
        let slope_entry = |i: usize| {
            let r = slope_roots.as_ref().unwrap().roots[i].clone();
            ProjectiveRoot {
                multiplicity: r.multiplicity,
                kind: RootKind::Slope(r),
            }
        };
        let mut ordered = Vec::new();
        let mut idx = Vec::new();
        for &i in &nonneg {
            ordered.push(slope_entry(i));
            idx.push(Some(i));
        }
        if vm > 0 {
            ordered.push(ProjectiveRoot {
                kind: RootKind::Vertical,
                multiplicity: vm,
            });
            idx.push(None);
        }
        for &i in &neg {
            ordered.push(slope_entry(i));
            idx.push(Some(i));
        }
        let total = ordered.iter().map(|r| r.multiplicity).sum();
        Ok(ProjectiveRootSet {
            roots: ordered,
            total_multiplicity: total,
            slope_roots,
            slope_index: idx,
        })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Multiplicities in angular order.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.roots.iter().map(|r| r.multiplicity).collect()
    }

    /// Angle in `[0, π)` of root `i`, accurate to roughly double precision.
    pub fn angle(&self, i: usize) -> f64 {
        match self.slope_index[i] {
            None => std::f64::consts::FRAC_PI_2,
            Some(j) => {
                let t = self.slope_roots.as_ref().unwrap().approx(j, 17);
                let a = t.atan();
                if a < 0.0 {
                    a + std::f64::consts::PI
                } else {
                    a
                }
            }
        }
    }

    /// All angles in `[0, π)`.
    pub fn angles(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.angle(i)).collect()
    }

    /// Slope value of root `i` to roughly double precision; `None` if vertical.
    pub fn slope(&self, i: usize) -> Option<f64> {
        self.slope_index[i].map(|j| self.slope_roots.as_ref().unwrap().approx(j, 17))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    /// x³y²(x−y)
    fn sample() -> BinaryForm {
        let x = BinaryForm::from_ints(&[1, 0]);
        let y = BinaryForm::from_ints(&[0, 1]);
        let xmy = BinaryForm::from_ints(&[1, -1]);
        &(&x.pow(3) * &y.pow(2)) * &xmy
    }

    #[test]
    fn arithmetic() {
        let a = BinaryForm::from_ints(&[1, 0, 1]);
        let b = BinaryForm::from_ints(&[1, 0, -1]);
        assert_eq!(&a * &b, BinaryForm::from_ints(&[1, 0, 0, 0, -1]));
        let g = BinaryForm::from_ints(&[1, 0, -6, 0, 1]);
        assert_eq!(g.partial_x(), BinaryForm::from_ints(&[4, 0, -12, 0]));
        assert_eq!(g.partial_y(), BinaryForm::from_ints(&[0, -12, 0, 4]));
    }

    #[test]
    fn display() {
        let g = BinaryForm::new(vec![int(1), int(0), rational::frac(-3, 2), int(0), int(1)]);
        assert_eq!(g.to_string(), "x^4 - 3/2*x^2*y^2 + y^4");
        assert_eq!(BinaryForm::zero(3).to_string(), "0");
        assert_eq!(BinaryForm::from_ints(&[0, -1]).to_string(), "-y");
    }

    #[test]
    fn sample_roots() {
        let set = sample().projective_roots().unwrap();
        assert_eq!(set.multiplicities(), vec![2, 1, 3]);
        assert!(set.roots[2].is_vertical());
        let a = set.angles();
        assert_eq!(a[0], 0.0);
        assert!((a[1] - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn definite_form_has_no_roots() {
        let g = BinaryForm::circle_power(2);
        assert!(g.projective_roots().unwrap().is_empty());
        assert_eq!(BinaryForm::zero(4).projective_roots().unwrap_err(), Error::ZeroForm);
    }

    #[test]
    fn negative_slopes_come_last() {
        let g = BinaryForm::from_ints(&[1, 0, -6, 0, 1]);
        let set = g.projective_roots().unwrap();
        assert_eq!(set.multiplicities(), vec![1, 1, 1, 1]);
        let a = set.angles();
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert!(a[1] < std::f64::consts::FRAC_PI_2 && a[2] > std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn compose_with_rotation() {
        let g = BinaryForm::from_ints(&[0, 0, 6, 0, 0]);
        let r = [[int(0), int(-1)], [int(1), int(0)]];
        assert_eq!(g.compose_linear(&r), g);
    }

    #[test]
    fn segment_restriction() {
        let p = BinaryForm::from_ints(&[1, 2]);
        assert_eq!(p.on_segment(), UniPoly::from_ints(&[1, 1]));
    }
}
