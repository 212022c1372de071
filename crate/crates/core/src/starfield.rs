//! Star-node fields `Ẋ = λX + Q(X)` with `Q` homogeneous of odd degree.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::rational::{self, Rational};

/// A 2×2 rational matrix, rows first.
pub type Matrix2 = [[Rational; 2]; 2];

pub fn matrix(a: Rational, b: Rational, c: Rational, d: Rational) -> Matrix2 {
    [[a, b], [c, d]]
}

pub fn matrix_from_ints(a: i64, b: i64, c: i64, d: i64) -> Matrix2 {
    matrix(rational::int(a), rational::int(b), rational::int(c), rational::int(d))
}

pub fn identity() -> Matrix2 {
    matrix_from_ints(1, 0, 0, 1)
}

pub fn det(m: &Matrix2) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

pub fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn inverse(m: &Matrix2) -> Result<Matrix2> {
    let d = det(m);
    if d.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok([
        [&m[1][1] / &d, -&m[0][1] / &d],
        [-&m[1][0] / &d, &m[0][0] / &d],
    ])
}

/// The field `ẋ = λx + Q1(x, y)`, `ẏ = λy + Q2(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarField {
    lambda: Rational,
    q1: BinaryForm,
    q2: BinaryForm,
}

/// `Q = p1(x²,y²)(x,0) + p2(x²,y²)(0,y) + p3(x²,y²)(y,0) + p4(x²,y²)(0,x)`.
///
/// Each `pj` is a form of degree `p` in `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub p1: BinaryForm,
    pub p2: BinaryForm,
    pub p3: BinaryForm,
    pub p4: BinaryForm,
}

/// Symmetric 2×2 matrix whose entries are forms in `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForms {
    pub a11: BinaryForm,
    pub a12: BinaryForm,
    pub a22: BinaryForm,
}

/// Radial and angular forms of a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseData {
    /// `𝓜Q = x Q1 + y Q2`.
    pub mq: BinaryForm,
    /// `𝓛Q = -y Q1 + x Q2`.
    pub lq: BinaryForm,
    /// `𝓜Q = (x, y) A(x², y²) (x, y)ᵀ`.
    pub radial_matrix: SymmetricForms,
    /// `𝓛Q = (x, y) B(x², y²) (x, y)ᵀ`.
    pub phase_matrix: SymmetricForms,
}

impl StarField {
    /// Validates `λ > 0`, equal odd degrees at least 3 and `Q ≠ 0`.
    pub fn new(lambda: Rational, q1: BinaryForm, q2: BinaryForm) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::InvalidField("lambda must be positive".into()));
        }
        if q1.degree() != q2.degree() {
            return Err(Error::InvalidField(format!(
                "components have degrees {} and {}",
                q1.degree(),
                q2.degree()
            )));
        }
        let d = q1.degree();
        if d < 3 || d % 2 == 0 {
            return Err(Error::InvalidField(format!(
                "nonlinearity must have odd degree at least 3, found {d}"
            )));
        }
        if q1.is_zero() && q2.is_zero() {
            return Err(Error::InvalidField("nonlinearity is zero".into()));
        }
        Ok(StarField { lambda, q1, q2 })
    }

    /// Assembles a field from its decomposition.
    pub fn from_decomposition(lambda: Rational, d: &Decomposition) -> Result<Self> {
        let (q1, q2) = d.reconstruct();
        Self::new(lambda, q1, q2)
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn q1(&self) -> &BinaryForm {
        &self.q1
    }

    pub fn q2(&self) -> &BinaryForm {
        &self.q2
    }

    /// Degree `2p + 1` of `Q`.
    pub fn degree(&self) -> usize {
        self.q1.degree()
    }

    pub fn p(&self) -> usize {
        (self.degree() - 1) / 2
    }

    pub fn with_lambda(&self, lambda: Rational) -> Result<Self> {
        Self::new(lambda, self.q1.clone(), self.q2.clone())
    }

    /// Same `λ`, nonlinearity `c·Q`.
    pub fn scale_nonlinearity(&self, c: &Rational) -> Result<Self> {
        Self::new(self.lambda.clone(), self.q1.scale(c), self.q2.scale(c))
    }

    pub fn decompose(&self) -> Decomposition {
        let p = self.p();
        let d = self.degree();
        let mut p1 = BinaryForm::zero(p);
        let mut p2 = BinaryForm::zero(p);
        let mut p3 = BinaryForm::zero(p);
        let mut p4 = BinaryForm::zero(p);
        let set = |f: &mut BinaryForm, k: usize, c: &Rational| {
            *f = &*f + &BinaryForm::monomial(p, k, c.clone());
        };
        for l in 0..=d {
            // monomial x^(d-l) y^l
            let c1 = self.q1.coeff(l);
            let c2 = self.q2.coeff(l);
            if l % 2 == 0 {
                set(&mut p1, l / 2, c1);
                set(&mut p4, l / 2, c2);
            } else {
                set(&mut p3, (l - 1) / 2, c1);
                set(&mut p2, (l - 1) / 2, c2);
            }
        }
        Decomposition { p1, p2, p3, p4 }
    }

    pub fn phase_data(&self) -> PhaseData {
        let dec = self.decompose();
        let half = rational::frac(1, 2);
        PhaseData {
            mq: self.mq(),
            lq: self.lq(),
            radial_matrix: SymmetricForms {
                a11: dec.p1.clone(),
                a12: (&dec.p3 + &dec.p4).scale(&half),
                a22: dec.p2.clone(),
            },
            phase_matrix: SymmetricForms {
                a11: dec.p4.clone(),
                a12: (&dec.p2 - &dec.p1).scale(&half),
                a22: -&dec.p3,
            },
        }
    }

    /// `𝓜Q = x Q1 + y Q2`.
    pub fn mq(&self) -> BinaryForm {
        &self.q1.mul_x() + &self.q2.mul_y()
    }

    /// `𝓛Q = -y Q1 + x Q2`.
    pub fn lq(&self) -> BinaryForm {
        &self.q2.mul_x() - &self.q1.mul_y()
    }

    /// The field in coordinates `X = L X̃`: nonlinearity `L⁻¹ Q(L X̃)`.
    pub fn linear_change(&self, l: &Matrix2) -> Result<Self> {
        let inv = inverse(l)?;
        let a = self.q1.compose_linear(l);
        let b = self.q2.compose_linear(l);
        let n1 = &a.scale(&inv[0][0]) + &b.scale(&inv[0][1]);
        let n2 = &a.scale(&inv[1][0]) + &b.scale(&inv[1][1]);
        Self::new(self.lambda.clone(), n1, n2)
    }

    /// Whether `Q` commutes with both axis reflections.
    pub fn is_z2z2_equivariant(&self) -> bool {
        self.decompose().is_z2z2()
    }
}

impl Decomposition {
    /// Degree `p` of each piece.
    pub fn p(&self) -> usize {
        self.p1.degree()
    }

    /// `(Q1, Q2)` rebuilt from the four pieces.
    pub fn reconstruct(&self) -> (BinaryForm, BinaryForm) {
        let s1 = self.p1.substitute_squares();
        let s2 = self.p2.substitute_squares();
        let s3 = self.p3.substitute_squares();
        let s4 = self.p4.substitute_squares();
        (&s1.mul_x() + &s3.mul_y(), &s2.mul_y() + &s4.mul_x())
    }

    /// Vanishing asymmetric part.
    pub fn is_z2z2(&self) -> bool {
        self.p3.is_zero() && self.p4.is_zero()
    }

    /// The part with `p3 = p4 = 0`.
    pub fn symmetric_part(&self) -> Decomposition {
        let z = BinaryForm::zero(self.p());
        Decomposition {
            p1: self.p1.clone(),
            p2: self.p2.clone(),
            p3: z.clone(),
            p4: z,
        }
    }

    /// Table `a[j][k]` with `p_{j+1}(u,v) = Σ_k a[j][k] u^(p-k) v^k`.
    pub fn coefficient_table(&self) -> [Vec<Rational>; 4] {
        [
            self.p1.coeffs().to_vec(),
            self.p2.coeffs().to_vec(),
            self.p3.coeffs().to_vec(),
            self.p4.coeffs().to_vec(),
        ]
    }
}
