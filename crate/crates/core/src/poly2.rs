//! Sparse bivariate polynomials, used for parsed input and chart fields.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::form::{join_terms, monomial_text, BinaryForm};
use crate::poly::UniPoly;
use crate::rational::{self, Rational};

/// Polynomial `Σ c[a,b] x^a y^b`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    /// `c x^a y^b`.
    pub fn term(c: Rational, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, a, b);
        p
    }

    pub fn x() -> Self {
        Self::term(rational::int(1), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(rational::int(1), 0, 1)
    }

    fn add_term(&mut self, c: Rational, a: u32, b: u32) {
        let e = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^a y^b`.
    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    /// Constant value when the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    /// The homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| a + b == d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Degrees of all nonzero homogeneous components, ascending.
    pub fn degrees_present(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|(a, b)| a + b).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Converts a homogeneous polynomial of degree `d` to a binary form.
    /// Returns `None` when a term of another degree is present.
    pub fn to_form(&self, d: u32) -> Option<BinaryForm> {
        let mut f = vec![Rational::zero(); d as usize + 1];
        for ((a, b), c) in &self.terms {
            if a + b != d {
                return None;
            }
            f[*b as usize] = c.clone();
        }
        Some(BinaryForm::new(f))
    }

    pub fn from_form(f: &BinaryForm) -> Self {
        let d = f.degree() as u32;
        let mut p = Self::zero();
        for (k, c) in f.coeffs().iter().enumerate() {
            p.add_term(c.clone(), d - k as u32, k as u32);
        }
        p
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = Self::zero();
        for ((a, b), v) in &self.terms {
            p.add_term(v * c, *a, *b);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(rational::int(1)), |acc, _| &acc * self)
    }

    /// Largest power of `y` dividing the polynomial (`None` for zero).
    pub fn y_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|(_, b)| *b).min()
    }

    /// The univariate polynomial in `x` obtained by setting `y = 0`.
    pub fn restrict_y_zero(&self) -> UniPoly {
        let deg = self.terms.keys().map(|(a, _)| *a).max().unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for ((a, b), v) in &self.terms {
            if *b == 0 {
                c[*a as usize] = v.clone();
            }
        }
        UniPoly::new(c)
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|((a, b), c)| rational::to_f64(c) * x.powi(*a as i32) * y.powi(*b as i32))
            .sum()
    }

    /// Renders in the parser's syntax with the given variable names, terms
    /// ordered by descending total degree and then descending `x` power.
    pub fn display_with(&self, x: &str, y: &str) -> String {
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|p, q| (q.0 + q.1, q.0).cmp(&(p.0 + p.1, p.0)));
        let terms: Vec<(Rational, String)> = keys
            .into_iter()
            .map(|k| {
                (
                    self.terms[k].clone(),
                    monomial_text(x, k.0 as usize, y, k.1 as usize),
                )
            })
            .collect();
        join_terms(&terms)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x", "y"))
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for ((a, b), c) in &rhs.terms {
            p.add_term(c.clone(), *a, *b);
        }
        p
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut p = Poly2::zero();
        for ((a, b), c) in &self.terms {
            for ((e, f), d) in &rhs.terms {
                p.add_term(c * d, a + e, b + f);
            }
        }
        p
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&rational::int(-1))
    }
}
