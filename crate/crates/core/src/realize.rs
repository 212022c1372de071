//! Contracting fields with a prescribed phase form.
//!
//! Any even form `q` of degree `2p + 2` splits as
//! `q = x² b1(x², y²) + xy b2(x², y²) + y² b3(x², y²)`; taking
//! `p1 = −K(uᵖ + vᵖ)`, `p2 = b2 + p1`, `p3 = −b3`, `p4 = b1` gives `𝓛Q = q`
//! for every `K`, and the field contracts once `K` is large enough.

use num_traits::{Signed, Zero};

use crate::contraction;
use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::rational::{self, Rational};
use crate::starfield::{Decomposition, StarField};

/// Largest number of doublings tried before giving up.
const MAX_DOUBLINGS: u32 = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub field: StarField,
    pub k: Rational,
    pub b1: BinaryForm,
    pub b2: BinaryForm,
    pub b3: BinaryForm,
}

fn check_degree(q: &BinaryForm) -> Result<usize> {
    let d = q.degree();
    if d % 2 != 0 {
        return Err(Error::OddDegree(d));
    }
    if d < 4 {
        return Err(Error::DegreeTooSmall { min: 4, found: d });
    }
    Ok((d - 2) / 2)
}

/// Splits `q` into `(b1, b2, b3)`, each of degree `p` in `(u, v)`.
///
/// `x^a y^b` goes to `b2` when `a, b` are odd, to `b1` when `a ≥ 2` is even,
/// and to `b3` when `a = 0`.
pub fn decompose_target(q: &BinaryForm) -> Result<(BinaryForm, BinaryForm, BinaryForm)> {
    let p = check_degree(q)?;
    let mut b = [
        vec![Rational::zero(); p + 1],
        vec![Rational::zero(); p + 1],
        vec![Rational::zero(); p + 1],
    ];
    for (l, c) in q.coeffs().iter().enumerate() {
        // monomial x^(d-l) y^l
        let a = q.degree() - l;
        if l % 2 == 1 {
            b[1][(l - 1) / 2] = c.clone();
        } else if a >= 2 {
            b[0][l / 2] = c.clone();
        } else {
            b[2][(l - 2) / 2] = c.clone();
        }
    }
    let [b1, b2, b3] = b.map(BinaryForm::new);
    Ok((b1, b2, b3))
}

/// The field built from `q` with a given constant `K`; may fail to contract.
pub fn realize_with_k(q: &BinaryForm, lambda: Rational, k: &Rational) -> Result<Realization> {
    let (b1, b2, b3) = decompose_target(q)?;
    let p = b1.degree();
    let mut ends = BinaryForm::zero(p);
    ends = &ends + &BinaryForm::monomial(p, 0, -k.clone());
    ends = &ends + &BinaryForm::monomial(p, p, -k.clone());
    let d = Decomposition {
        p2: &b2 + &ends,
        p1: ends,
        p3: -&b3,
        p4: b1.clone(),
    };
    Ok(Realization {
        field: StarField::from_decomposition(lambda, &d)?,
        k: k.clone(),
        b1,
        b2,
        b3,
    })
}

/// A contracting field with `𝓛Q = q`, doubling `K` from 1.
pub fn realize(q: &BinaryForm, lambda: Rational) -> Result<Realization> {
    if !lambda.is_positive() {
        return Err(Error::InvalidParameter("λ must be positive".into()));
    }
    let mut k = rational::int(1);
    for _ in 0..MAX_DOUBLINGS {
        let r = realize_with_k(q, lambda.clone(), &k)?;
        if contraction::is_contracting(&r.field) {
            return Ok(r);
        }
        k *= rational::int(2);
    }
    Err(Error::Other(format!("no contracting realization with K ≤ 2^{MAX_DOUBLINGS}")))
}
