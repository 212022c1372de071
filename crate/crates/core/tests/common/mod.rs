//! Generators and float oracles shared by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use starnode::circle::{Sign, Symbol};
use starnode::contraction;
use starnode::rational::{frac, int};
use starnode::starfield::{self, Matrix2};
use starnode::{BinaryForm, Rational, StarField};

pub fn rat(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

pub fn positive_rat() -> impl Strategy<Value = Rational> {
    (1i64..=20, 1i64..=5).prop_map(|(n, d)| frac(n, d))
}

pub fn form(degree: usize, bound: i64) -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(rat(-bound, bound), degree + 1).prop_map(BinaryForm::new)
}

pub fn nonzero_form(degree: usize, bound: i64) -> impl Strategy<Value = BinaryForm> {
    form(degree, bound).prop_filter("zero form", |f| !f.is_zero())
}

/// `Q` of the given odd degree with `λ = 1`; `Q ≠ 0`.
pub fn field(degree: usize) -> impl Strategy<Value = StarField> {
    (form(degree, 6), form(degree, 6))
        .prop_filter("Q = 0", |(a, b)| !(a.is_zero() && b.is_zero()))
        .prop_map(|(a, b)| StarField::new(int(1), a, b).unwrap())
}

pub fn field_any_degree() -> impl Strategy<Value = StarField> {
    prop_oneof![field(3), field(5), field(7)]
}

/// Adds `−K (x² + y²)^p X`, doubling `K` from 1 until the field contracts.
pub fn make_contracting(f: &StarField) -> StarField {
    let p = f.p();
    let r = BinaryForm::circle_power(p);
    let x = BinaryForm::from_ints(&[1, 0]);
    let y = BinaryForm::from_ints(&[0, 1]);
    let mut k = int(1);
    loop {
        let g = StarField::new(
            f.lambda().clone(),
            f.q1() - &(&r * &x).scale(&k),
            f.q2() - &(&r * &y).scale(&k),
        )
        .unwrap();
        if contraction::is_contracting(&g) {
            return g;
        }
        k = k * int(2);
    }
}

pub fn contracting_field() -> impl Strategy<Value = StarField> {
    field_any_degree().prop_map(|f| make_contracting(&f))
}

pub fn invertible_matrix() -> impl Strategy<Value = Matrix2> {
    (rat(-5, 5), rat(-5, 5), rat(-5, 5), rat(-5, 5))
        .prop_map(|(a, b, c, d)| starfield::matrix(a, b, c, d))
        .prop_filter("singular", |m| starfield::det(m) != int(0))
}

/// `Π (aᵢ x − bᵢ y)^mᵢ` times `definite` copies of `x² + y²`, with the
/// linear factors given by integer pairs.
pub fn product_form(factors: &[((i64, i64), usize)], definite: usize, scale: i64) -> BinaryForm {
    let mut g = BinaryForm::from_ints(&[scale]);
    for &((a, b), m) in factors {
        let l = BinaryForm::from_ints(&[a, -b]);
        g = &g * &l.pow(m);
    }
    &g * &BinaryForm::circle_power(definite)
}

/// Angle in `[0, π)` of the line `a x = b y`.
pub fn line_angle(a: i64, b: i64) -> f64 {
    let t = (a as f64).atan2(b as f64);
    t.rem_euclid(std::f64::consts::PI)
}

/// Symbols read off `g(θ)` by sampling just before and after each given
/// root angle: a sign change gives `(1s)` with `s` the sign after, no change
/// gives `(2s)` with `s` the common sign.
pub fn symbols_by_sampling(g: impl Fn(f64) -> f64, angles: &[f64], delta: f64) -> Vec<Symbol> {
    let sign = |v: f64| if v > 0.0 { Sign::Plus } else { Sign::Minus };
    angles
        .iter()
        .map(|&t| {
            let before = g(t - delta);
            let after = g(t + delta);
            assert!(before != 0.0 && after != 0.0, "sampled on a root");
            let j = if (before > 0.0) == (after > 0.0) { 2 } else { 1 };
            match (j, sign(after)) {
                (1, Sign::Plus) => Symbol::ONE_PLUS,
                (1, Sign::Minus) => Symbol::ONE_MINUS,
                (_, Sign::Plus) => Symbol::TWO_PLUS,
                (_, Sign::Minus) => Symbol::TWO_MINUS,
            }
        })
        .collect()
}

pub fn trig(f: &BinaryForm) -> impl Fn(f64) -> f64 + '_ {
    move |t: f64| f.eval_f64(t.cos(), t.sin())
}

/// `f(θ)` sampled at `n` equally spaced angles on the full circle.
pub fn circle_samples(f: &BinaryForm, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            f.eval_f64(t.cos(), t.sin())
        })
        .collect()
}

/// `Q − k (x² + y²)^p X` with `k` drawn from `0..=8`, so that both
/// contracting and non-contracting fields are frequent.
pub fn mixed_field(degree: usize) -> impl Strategy<Value = StarField> {
    (field(degree), 0i64..=8).prop_filter_map("Q = 0", |(f, k)| {
        let p = f.p();
        let r = BinaryForm::circle_power(p).scale(&int(k));
        let x = BinaryForm::from_ints(&[1, 0]);
        let y = BinaryForm::from_ints(&[0, 1]);
        StarField::new(int(1), f.q1() - &(&r * &x), f.q2() - &(&r * &y)).ok()
    })
}

