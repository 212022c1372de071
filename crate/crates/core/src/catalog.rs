//! Executable fixtures: the cubic normal forms, the definite family, and a
//! few worked examples.
//!
//! Rows I–V, VII and X are the seven classes of contracting cubics; rows VI,
//! VIII and IX are redundant forms equivalent to II, III and IV.
//!
//! Each row carries a printed system and its target phase form `𝓖`. A row is
//! built from the printed system when that system contracts and has
//! `𝓛Q = 𝓖`; otherwise the field is realized from `𝓖` and the build says why.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::circle::{self, root_type_name, symbol_sequence, SymbolSequence};
use crate::contraction::{self, cubic_corner_conditions};
use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::rational::{self, frac, int, Rational};
use crate::realize::{realize, realize_with_k};
use crate::starfield::{self, Decomposition, Matrix2, StarField};

/// Row label of a cubic normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RowId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
}

impl RowId {
    /// All rows, classes first.
    pub const ALL: [RowId; 10] = [
        RowId::I,
        RowId::II,
        RowId::III,
        RowId::IV,
        RowId::V,
        RowId::VII,
        RowId::X,
        RowId::VI,
        RowId::VIII,
        RowId::IX,
    ];

    /// The seven class representatives.
    pub const CLASSES: [RowId; 7] = [
        RowId::I,
        RowId::II,
        RowId::III,
        RowId::IV,
        RowId::V,
        RowId::VII,
        RowId::X,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RowId::I => "I",
            RowId::II => "II",
            RowId::III => "III",
            RowId::IV => "IV",
            RowId::V => "V",
            RowId::VI => "VI",
            RowId::VII => "VII",
            RowId::VIII => "VIII",
            RowId::IX => "IX",
            RowId::X => "X",
        }
    }

    /// The class a redundant row is equivalent to.
    pub fn class(self) -> RowId {
        match self {
            RowId::VI => RowId::II,
            RowId::VIII => RowId::III,
            RowId::IX => RowId::IV,
            r => r,
        }
    }

    pub fn uses_mu(self) -> bool {
        matches!(self, RowId::I | RowId::II | RowId::III)
    }

    pub fn uses_alpha(self) -> bool {
        matches!(self, RowId::II | RowId::IV | RowId::V | RowId::VI | RowId::IX)
    }
}

impl fmt::Display for RowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RowId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        RowId::ALL
            .iter()
            .copied()
            .find(|r| r.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown normal form `{s}`")))
    }
}

/// Parameters of a row. Unused entries are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub mu: Rational,
    pub alpha: Rational,
    pub lambda: Rational,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            mu: Rational::zero(),
            alpha: int(1),
            lambda: int(1),
        }
    }
}

impl Params {
    pub fn new(mu: Rational, alpha: Rational, lambda: Rational) -> Self {
        Params { mu, alpha, lambda }
    }

    /// Parses `mu=-1,alpha=1,lambda=1`; missing names keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Params::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected name=value, got `{item}`")))?;
            let v = rational::parse_rational(v.trim())
                .ok_or_else(|| Error::InvalidParameter(format!("bad number `{}`", v.trim())))?;
            match k.trim() {
                "mu" | "μ" => p.mu = v,
                "alpha" | "α" => p.alpha = v,
                "lambda" | "λ" => p.lambda = v,
                other => return Err(Error::InvalidParameter(format!("unknown parameter `{other}`"))),
            }
        }
        Ok(p)
    }

    fn with_lambda(&self, lambda: Rational) -> Self {
        Params {
            lambda,
            ..self.clone()
        }
    }
}

/// Checks `params` against the admissible range of `id`.
pub fn check_params(id: RowId, params: &Params) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidParameter(format!("({id}): {m}")));
    if !params.lambda.is_positive() {
        return bad("λ must be positive");
    }
    if id.uses_alpha() && params.alpha != int(1) && params.alpha != int(-1) {
        return bad("α must be 1 or -1");
    }
    match id {
        RowId::I if params.mu >= frac(-1, 3) => bad("μ must be below -1/3"),
        RowId::II if params.mu <= frac(-1, 3) || params.mu == frac(1, 3) => {
            bad("μ must exceed -1/3 and differ from 1/3")
        }
        _ => Ok(()),
    }
}

fn cubic(c: [Rational; 4]) -> BinaryForm {
    BinaryForm::new(c.to_vec())
}

fn max_k(mu: &Rational) -> Rational {
    let a = int(9) * mu * mu;
    let b = frac(1, 2);
    if a > b {
        a
    } else {
        b
    }
}

/// The constant `K` printed with the row; `None` for row I, which has none.
pub fn listed_k(id: RowId, params: &Params) -> Option<Rational> {
    match id {
        RowId::I => None,
        RowId::II | RowId::III => Some(max_k(&params.mu)),
        RowId::IV => Some(int(4)),
        RowId::VIII => Some(int(2)),
        _ => Some(int(1)),
    }
}

/// The printed system, which need not contract or match its target.
pub fn printed_system(id: RowId, params: &Params) -> Result<StarField> {
    let mu = &params.mu;
    let a = &params.alpha;
    let z = || Rational::zero();
    let k = listed_k(id, params).unwrap_or_else(z);
    let m3 = int(3) * mu;
    let m6 = int(6) * mu;
    let (q1, q2) = match id {
        RowId::I => (
            cubic([m3.clone(), z(), m3.clone(), int(-1)]),
            cubic([int(1), m3.clone(), m6, m3]),
        ),
        RowId::II => (
            cubic([-k.clone(), z(), -k.clone(), -a.clone()]),
            cubic([-a.clone(), -k.clone(), -(a * m6), -k]),
        ),
        RowId::III => (
            cubic([-k.clone(), z(), -k.clone(), int(1)]),
            cubic([int(1), -k.clone(), m6, -k]),
        ),
        RowId::IV => (
            cubic([int(-4), -(int(6) * a), int(-4), -a.clone()]),
            cubic([z(), int(-4), z(), int(-4)]),
        ),
        RowId::V => (
            cubic([int(-1), -a.clone(), int(-1), a.clone()]),
            cubic([z(), int(-1), z(), int(-1)]),
        ),
        RowId::VI => (
            cubic([int(-1), z(), int(-1), -a.clone()]),
            cubic([a.clone(), int(-1), int(2) * a, int(-1)]),
        ),
        RowId::VII => (
            cubic([int(-1), z(), int(-1), z()]),
            cubic([z(), int(-1), int(6), int(-1)]),
        ),
        RowId::VIII => (
            cubic([int(-2), z(), int(-2), z()]),
            cubic([z(), int(2), z(), int(-2)]),
        ),
        RowId::IX => (
            cubic([int(-1), z(), int(-1), z()]),
            cubic([a.clone(), int(-1), z(), int(-1)]),
        ),
        RowId::X => (
            cubic([int(-1), z(), int(-1), z()]),
            cubic([z(), int(-1), z(), int(-1)]),
        ),
    };
    StarField::new(params.lambda.clone(), q1, q2)
}

/// The target phase form `𝓖` of a row.
pub fn target(id: RowId, params: &Params) -> BinaryForm {
    let mu6 = int(6) * &params.mu;
    let a = &params.alpha;
    let z = Rational::zero();
    let quartic = |c: [Rational; 5]| BinaryForm::new(c.to_vec());
    match id {
        RowId::I => quartic([int(1), z.clone(), mu6, z, int(1)]),
        RowId::II => quartic([int(1), z.clone(), mu6, z, int(1)]).scale(a),
        RowId::III => quartic([int(1), z.clone(), mu6, z, int(-1)]),
        RowId::IV => quartic([z.clone(), z.clone(), int(6), z, int(1)]).scale(a),
        RowId::V => quartic([z.clone(), z.clone(), int(6), z, int(-1)]).scale(a),
        RowId::VI => BinaryForm::circle_power(2).scale(a),
        RowId::VII => quartic([z.clone(), z.clone(), int(6), z.clone(), z]),
        RowId::VIII => quartic([z.clone(), int(4), z.clone(), z.clone(), z]),
        RowId::IX => quartic([a.clone(), z.clone(), z.clone(), z.clone(), z]),
        RowId::X => BinaryForm::zero(4),
    }
}

/// How a fixture was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildSource {
    Printed,
    /// Realized from `𝓖` with the row's listed `K`.
    RealizedListedK,
    /// Realized from `𝓖` with `K` found by search.
    RealizedSearch(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub field: StarField,
    pub source: BuildSource,
    /// Why the printed system was not used.
    pub note: Option<String>,
}

/// Builds a contracting field for `id` with `𝓛Q = 𝓖`.
pub fn build(id: RowId, params: &Params) -> Result<Built> {
    check_params(id, params)?;
    let g = target(id, params);
    let printed = printed_system(id, params)?;
    let matches = printed.lq() == g;
    let contracts = contraction::is_contracting(&printed);
    if matches && contracts {
        return Ok(Built {
            field: printed,
            source: BuildSource::Printed,
            note: None,
        });
    }
    let note = if !matches {
        format!(
            "printed ({id}) has phase form {} instead of {}; realized from the target",
            printed.lq(),
            g
        )
    } else {
        format!("printed ({id}) is not contracting; realized from the target")
    };
    if let Some(k) = listed_k(id, params) {
        let r = realize_with_k(&g, params.lambda.clone(), &k)?;
        if contraction::is_contracting(&r.field) {
            return Ok(Built {
                field: r.field,
                source: BuildSource::RealizedListedK,
                note: Some(note),
            });
        }
    }
    let r = realize(&g, params.lambda.clone())?;
    Ok(Built {
        field: r.field,
        source: BuildSource::RealizedSearch(r.k),
        note: Some(note),
    })
}

/// Admissible parameter points used for sweeps.
pub fn sample_params(id: RowId) -> Vec<Params> {
    let p = |mu: Rational, alpha: i64, lambda: Rational| Params::new(mu, int(alpha), lambda);
    let lambdas = [int(1), int(2), frac(1, 2), int(3), frac(7, 5)];
    match id {
        RowId::I => [frac(-1, 2), int(-1), int(-2), frac(-3, 4), int(-10)]
            .into_iter()
            .map(|mu| p(mu, 1, int(1)))
            .collect(),
        RowId::II => vec![
            p(int(0), 1, int(1)),
            p(int(0), -1, int(1)),
            p(frac(1, 2), 1, int(2)),
            p(frac(-1, 4), -1, int(1)),
            p(int(2), 1, frac(1, 2)),
            p(int(1), -1, int(1)),
        ],
        RowId::III => [int(-2), frac(-1, 2), int(0), frac(1, 4), int(3)]
            .into_iter()
            .map(|mu| p(mu, 1, int(1)))
            .collect(),
        RowId::IV | RowId::V | RowId::VI | RowId::IX => [1, -1]
            .into_iter()
            .flat_map(|a| lambdas[..3].iter().map(move |l| p(int(0), a, l.clone())))
            .collect(),
        _ => lambdas.iter().map(|l| p(int(0), 1, l.clone())).collect(),
    }
}

/// Expected circle data for a row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub sigma: SymbolSequence,
    /// `None` when the circle at infinity consists of equilibria.
    pub infinite_equilibria: Option<usize>,
    /// `(count over the full circle, root type)`.
    pub root_types: Vec<(usize, String)>,
    pub angular_stability: Vec<(usize, String)>,
    pub stratum: usize,
    /// Angles of the equilibria in quarter turns, where fixed.
    pub quarter_turns: Option<Vec<u8>>,
}

fn seq(s: &str) -> SymbolSequence {
    s.parse().expect("static sequence")
}

pub fn expected(id: RowId) -> Expected {
    let types = |v: &[(usize, &str)]| v.iter().map(|(n, s)| (*n, s.to_string())).collect::<Vec<_>>();
    let (sigma, inf, roots, stab, stratum, quarters): (_, _, Vec<(usize, &str)>, Vec<(usize, &str)>, _, _) = match id {
        RowId::I => (
            "(1+),(1-),(1+),(1-)",
            Some(8),
            vec![(8, "simple")],
            vec![(8, "hyperbolic")],
            0,
            None,
        ),
        RowId::II | RowId::VI => ("∅", Some(0), vec![], vec![], 0, None),
        RowId::III => ("(1+),(1-)", Some(4), vec![(4, "simple")], vec![(4, "hyperbolic")], 0, None),
        RowId::IV => ("(2+)", Some(2), vec![(2, "double")], vec![(2, "saddle-node")], 1, None),
        RowId::V => (
            "(2+),(1-),(1+)",
            Some(6),
            vec![(4, "simple"), (2, "double")],
            vec![(4, "hyperbolic"), (2, "saddle-node")],
            1,
            None,
        ),
        RowId::VII => (
            "(2+),(2+)",
            Some(4),
            vec![(4, "double")],
            vec![(4, "saddle-node")],
            2,
            Some(vec![0, 1, 2, 3]),
        ),
        RowId::X => ("∞", None, vec![], vec![], 3, None),
        RowId::VIII => (
            "(1+),(1-)",
            Some(4),
            vec![(2, "simple"), (2, "triple")],
            vec![(2, "hyperbolic"), (2, "hyperbolic-like")],
            0,
            Some(vec![0, 1, 2, 3]),
        ),
        RowId::IX => (
            "(2+)",
            Some(2),
            vec![(2, "quadruple")],
            vec![(2, "saddle-node")],
            1,
            Some(vec![1, 3]),
        ),
    };
    Expected {
        sigma: seq(sigma),
        infinite_equilibria: inf,
        root_types: types(&roots),
        angular_stability: types(&stab),
        stratum,
        quarter_turns: quarters,
    }
}

/// Circle data computed from a field, in the same shape as [`Expected`].
pub fn observe(f: &StarField) -> Result<Expected> {
    let c = circle::classify_circle(f)?;
    if c.sigma == SymbolSequence::Infinity {
        return Ok(Expected {
            sigma: c.sigma,
            infinite_equilibria: None,
            root_types: vec![],
            angular_stability: vec![],
            stratum: c.stratum,
            quarter_turns: None,
        });
    }
    let inv = circle::equilibrium_inventory(f)?;
    let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &inv.circle_equilibria {
        *roots.entry(e.multiplicity).or_default() += 1;
    }
    let mut stab: BTreeMap<&'static str, usize> = BTreeMap::new();
    for e in &inv.circle_equilibria {
        *stab.entry(circle::stability_name(e.multiplicity)).or_default() += 1;
    }
    let order = ["hyperbolic", "saddle-node", "hyperbolic-like"];
    let quarter = |t: f64| {
        let q = t / std::f64::consts::FRAC_PI_2;
        ((q - q.round()).abs() < 1e-12).then(|| q.round() as u8 % 4)
    };
    let quarters: Option<Vec<u8>> = inv.circle_equilibria.iter().map(|e| quarter(e.theta)).collect();
    let quarters = quarters.map(|mut q| {
        q.sort_unstable();
        q
    });
    Ok(Expected {
        sigma: c.sigma,
        infinite_equilibria: Some(inv.count_infinite),
        root_types: roots.into_iter().map(|(m, n)| (n, root_type_name(m))).collect(),
        angular_stability: order
            .iter()
            .filter_map(|k| stab.get(k).map(|n| (*n, k.to_string())))
            .collect(),
        stratum: c.stratum,
        quarter_turns: quarters,
    })
}

impl Expected {
    /// Equality of the tabulated columns, with `σ` compared under `≡`.
    pub fn agrees_with(&self, observed: &Expected) -> bool {
        self.sigma.equivalent(&observed.sigma)
            && self.infinite_equilibria == observed.infinite_equilibria
            && self.root_types == observed.root_types
            && self.angular_stability == observed.angular_stability
            && self.stratum == observed.stratum
            && match &self.quarter_turns {
                Some(q) => observed.quarter_turns.as_ref() == Some(q),
                None => true,
            }
    }
}

/// Result of matching a cubic to a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicMatch {
    pub class: RowId,
    pub sigma: SymbolSequence,
}

/// Sends a contracting cubic to its class by the canonical key of `σ`.
pub fn match_cubic(f: &StarField) -> Result<CubicMatch> {
    if f.degree() != 3 {
        return Err(Error::NotCubic(f.degree()));
    }
    if !contraction::is_contracting(f) {
        return Err(Error::NotContracting);
    }
    let sigma = symbol_sequence(&f.lq())?;
    let class = RowId::CLASSES
        .iter()
        .copied()
        .find(|r| expected(*r).sigma.equivalent(&sigma))
        .ok_or_else(|| Error::Other(format!("no cubic class has σ = {sigma}")))?;
    Ok(CubicMatch { class, sigma })
}

/// Corner values `(p3 + p4)(1,0)²` and `(p3 + p4)(0,1)²` as tabulated.
pub fn listed_corners(id: RowId, params: &Params) -> (Rational, Rational) {
    let sq = |q: Rational| &q * &q;
    let m6 = int(6) * &params.mu;
    match id {
        RowId::I | RowId::III => (int(1), sq(int(-1) + m6)),
        RowId::II => (int(1), sq(int(1) + m6)),
        RowId::IV => (int(36), int(1)),
        RowId::V | RowId::VI => (int(1), int(1)),
        RowId::VII => (int(0), int(1)),
        RowId::X => (int(0), int(0)),
        RowId::IX => (int(1), int(0)),
        RowId::VIII => (int(0), int(0)),
    }
}

/// The tabulated `K²`; row VIII has none.
pub fn listed_k_squared(id: RowId, params: &Params) -> Option<Rational> {
    let mu2 = int(9) * &params.mu * &params.mu;
    match id {
        RowId::I => Some(mu2),
        RowId::II | RowId::III => Some(max_k(&params.mu)),
        RowId::IV => Some(int(16)),
        RowId::VIII => None,
        _ => Some(int(1)),
    }
}

/// One row of the `K` audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KAudit {
    pub id: RowId,
    pub k_squared: Rational,
    /// From the printed asymmetric parts.
    pub corners: (Rational, Rational),
    pub listed_corners: (Rational, Rational),
    /// `4K² > (p3 + p4)(1,0)²`.
    pub second: bool,
    /// `4K² > (p3 + p4)(0,1)²`.
    pub third: bool,
}

impl KAudit {
    pub fn holds(&self) -> bool {
        self.second && self.third
    }

    pub fn corners_agree(&self) -> bool {
        self.corners == self.listed_corners
    }
}

/// Checks the listed `K²` against the corner conditions with `p1 = p2 = −K`.
pub fn audit_k(id: RowId, params: &Params) -> Result<Option<KAudit>> {
    let Some(k_squared) = listed_k_squared(id, params) else {
        return Ok(None);
    };
    let d = printed_system(id, params)?.decompose();
    let s = &d.p3 + &d.p4;
    let corners = (s.coeff(0) * s.coeff(0), s.coeff(1) * s.coeff(1));
    let four_k2 = int(4) * &k_squared;
    Ok(Some(KAudit {
        id,
        second: four_k2 > corners.0,
        third: four_k2 > corners.1,
        k_squared,
        corners,
        listed_corners: listed_corners(id, params),
    }))
}

/// Row VIII with `K`: the interval condition `0 < K < 4` and the three
/// corner conditions of its printed decomposition.
pub fn audit_viii(k: &Rational) -> (bool, [bool; 3]) {
    let interval = k.is_positive() && k < &int(4);
    let z = Rational::zero();
    let p1 = BinaryForm::new(vec![-k.clone(), -k.clone()]);
    let d = Decomposition {
        p2: &p1 + &BinaryForm::new(vec![int(4), z.clone()]),
        p1,
        p3: BinaryForm::new(vec![z.clone(), z.clone()]),
        p4: BinaryForm::new(vec![z.clone(), z]),
    };
    (interval, cubic_corner_conditions(&d).expect("cubic"))
}

/// The degree-5 example with sinks at `π/4, 5π/4` and saddles at `3π/4, 7π/4`:
/// `p1 = p2 = −(u² + uv + v²)`, `p3 = −(u² − uv)`, `p4 = −(v² − uv)`.
pub fn quintic_example(lambda: Rational) -> Result<StarField> {
    let sym = BinaryForm::from_ints(&[-1, -1, -1]);
    let d = Decomposition {
        p1: sym.clone(),
        p2: sym,
        p3: BinaryForm::from_ints(&[-1, 1, 0]),
        p4: BinaryForm::from_ints(&[0, 1, -1]),
    };
    StarField::from_decomposition(lambda, &d)
}

/// The degree-5 example exactly as displayed; its phase form is the negative
/// of the one above, which puts the sinks at `3π/4, 7π/4`.
pub fn quintic_example_literal(lambda: Rational) -> Result<StarField> {
    let sym = BinaryForm::from_ints(&[-1, -1, -1]);
    let d = Decomposition {
        p1: sym.clone(),
        p2: sym,
        p3: BinaryForm::from_ints(&[1, -1, 0]),
        p4: BinaryForm::from_ints(&[0, -1, 1]),
    };
    StarField::from_decomposition(lambda, &d)
}

/// `x³y²(x − y)`, `σ = (2+)(1−)(1+)`.
pub fn three_symbol_form() -> BinaryForm {
    BinaryForm::from_ints(&[0, 0, 1, -1, 0, 0, 0])
}

/// `−x²y³(−x + y)`, equivalent to [`three_symbol_form`].
pub fn three_symbol_mirror() -> BinaryForm {
    BinaryForm::from_ints(&[0, 0, 0, -1, 1, 0, 0])
}

/// Rational stand-ins for `tan(iπ/12)`, `i = 1..5`, keeping their order.
pub fn tan_surrogates() -> [Rational; 5] {
    [frac(1, 4), frac(4, 7), int(1), frac(7, 4), frac(15, 4)]
}

/// `(a₁x − y)(a₂x − y)²(a₃x − y)(a₄x − y)(a₅x − y)y²` of degree 8,
/// `σ = (2+),(1−),(2−),(1+),(1−),(1+)`.
pub fn six_symbol_form() -> BinaryForm {
    let a = tan_surrogates();
    let lin = |t: &Rational| BinaryForm::new(vec![t.clone(), int(-1)]);
    let y2 = BinaryForm::from_ints(&[0, 0, 1]);
    let mut g = &lin(&a[0]) * &lin(&a[1]).pow(2);
    for t in &a[2..] {
        g = &g * &lin(t);
    }
    &g * &y2
}

/// Cubic with `p1 = −βa u − (βa + αb) v`, `p2 = (αb − βa) u − βa v`,
/// `p3 = (αa + βb) u + αa v`, `p4 = −αa u + (βb − αa) v`.
pub fn boukoucha(alpha: &Rational, beta: &Rational, a: &Rational, b: &Rational, lambda: Rational) -> Result<StarField> {
    let ba = beta * a;
    let ab = alpha * b;
    let aa = alpha * a;
    let bb = beta * b;
    let d = Decomposition {
        p1: BinaryForm::new(vec![-ba.clone(), -(&ba + &ab)]),
        p2: BinaryForm::new(vec![&ab - &ba, -ba.clone()]),
        p3: BinaryForm::new(vec![&aa + &bb, aa.clone()]),
        p4: BinaryForm::new(vec![-aa.clone(), &bb - &aa]),
    };
    StarField::from_decomposition(lambda, &d)
}

/// Case of the definite family, by the phase form `ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DefiniteCase {
    /// `ψ` definite: `σ = ∅`.
    I,
    /// Two distinct real roots: `σ = (1+)(1−)`.
    II,
    /// A double root: `σ = (2±)`.
    III,
    /// `ψ ≡ 0`: `σ = ∞`.
    IV,
}

impl DefiniteCase {
    pub fn expected_sigma(self) -> SymbolSequence {
        match self {
            DefiniteCase::I => SymbolSequence::Empty,
            DefiniteCase::II => seq("(1+),(1-)"),
            DefiniteCase::III => seq("(2+)"),
            DefiniteCase::IV => SymbolSequence::Infinity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiniteReport {
    pub field: StarField,
    pub case: DefiniteCase,
    /// `c x² + (d − a) xy − b y²`.
    pub psi: BinaryForm,
    pub sigma: SymbolSequence,
}

fn definite_sign(f: &BinaryForm) -> Option<i32> {
    if f.is_zero() || f.degree() % 2 != 0 {
        return None;
    }
    let roots = f.projective_roots().ok()?;
    roots.is_empty().then(|| rational::sign(f.coeff(0)))
}

/// `Q = φ · B (x, y)ᵀ` for definite `φ` and `B` of opposite sign.
pub fn definite_family(phi: &BinaryForm, b: &Matrix2, lambda: Rational) -> Result<DefiniteReport> {
    let sphi = definite_sign(phi).ok_or_else(|| Error::InvalidParameter("φ is not definite".into()))?;
    let [[a, bb], [c, d]] = b;
    let off = (bb + c) / int(2);
    let det_sym = a * d - &off * &off;
    if !det_sym.is_positive() {
        return Err(Error::InvalidParameter("B is not definite".into()));
    }
    if sphi * rational::sign(a) >= 0 {
        return Err(Error::InvalidParameter("φ and B are not of opposite sign".into()));
    }
    let q1 = phi * &BinaryForm::linear(a.clone(), bb.clone());
    let q2 = phi * &BinaryForm::linear(c.clone(), d.clone());
    let field = StarField::new(lambda, q1, q2)?;
    if !contraction::is_contracting(&field) {
        return Err(Error::NotContracting);
    }
    let psi = BinaryForm::new(vec![c.clone(), d - a, -bb.clone()]);
    let case = if psi.is_zero() {
        DefiniteCase::IV
    } else {
        let disc = (d - a) * (d - a) + int(4) * bb * c;
        match rational::sign(&disc) {
            -1 => DefiniteCase::I,
            1 => DefiniteCase::II,
            _ => DefiniteCase::III,
        }
    };
    let sigma = symbol_sequence(&field.lq())?;
    Ok(DefiniteReport {
        field,
        case,
        psi,
        sigma,
    })
}

/// The matrix of each definite normal form: I `[[a, −α], [α, a]]`,
/// II `[[a, 1], [1, a]]`, III `[[a, 0], [α, a]]`, IV `a·I`.
pub fn definite_normal_matrix(case: DefiniteCase, a: &Rational, alpha: &Rational) -> Matrix2 {
    let z = Rational::zero();
    let one = int(1);
    match case {
        DefiniteCase::I => starfield::matrix(a.clone(), -alpha.clone(), alpha.clone(), a.clone()),
        DefiniteCase::II => starfield::matrix(a.clone(), one.clone(), one, a.clone()),
        DefiniteCase::III => starfield::matrix(a.clone(), z, alpha.clone(), a.clone()),
        DefiniteCase::IV => starfield::matrix(a.clone(), z.clone(), z, a.clone()),
    }
}

/// A parameter range in the exported catalog.
#[derive(Clone, Debug, Serialize)]
pub struct ParamRange {
    pub name: &'static str,
    pub range: &'static str,
}

/// One row of the exported catalog.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: RowId,
    pub class: RowId,
    pub parameters: Vec<ParamRange>,
    pub target: String,
    #[serde(flatten)]
    pub expected: Expected,
}

fn ranges(id: RowId) -> Vec<ParamRange> {
    let mut v = Vec::new();
    match id {
        RowId::I => v.push(ParamRange {
            name: "mu",
            range: "mu < -1/3",
        }),
        RowId::II => v.push(ParamRange {
            name: "mu",
            range: "mu > -1/3, mu != 1/3",
        }),
        RowId::III => v.push(ParamRange {
            name: "mu",
            range: "any",
        }),
        _ => {}
    }
    if id.uses_alpha() {
        v.push(ParamRange {
            name: "alpha",
            range: "1 or -1",
        });
    }
    v.push(ParamRange {
        name: "lambda",
        range: "lambda > 0",
    });
    v
}

/// Target form with symbolic parameters.
fn target_text(id: RowId) -> &'static str {
    match id {
        RowId::I => "x^4 + 6*mu*x^2*y^2 + y^4",
        RowId::II => "alpha*(x^4 + 6*mu*x^2*y^2 + y^4)",
        RowId::III => "x^4 + 6*mu*x^2*y^2 - y^4",
        RowId::IV => "alpha*(6*x^2*y^2 + y^4)",
        RowId::V => "alpha*(6*x^2*y^2 - y^4)",
        RowId::VI => "alpha*(x^2 + y^2)^2",
        RowId::VII => "6*x^2*y^2",
        RowId::VIII => "4*x^3*y",
        RowId::IX => "alpha*x^4",
        RowId::X => "0",
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    RowId::ALL
        .iter()
        .map(|&id| CatalogEntry {
            id,
            class: id.class(),
            parameters: ranges(id),
            target: target_text(id).to_string(),
            expected: expected(id),
        })
        .collect()
}

/// The catalog as pretty-printed JSON.
pub fn to_json() -> String {
    let doc = serde_json::json!({
        "schema_version": 1,
        "normal_forms": entries(),
    });
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Every row at every sample point, optionally with `λ` overridden.
pub fn sweep(lambda: Option<Rational>) -> Vec<(RowId, Params)> {
    let mut out = Vec::new();
    for id in RowId::ALL {
        for p in sample_params(id) {
            let p = match &lambda {
                Some(l) => p.with_lambda(l.clone()),
                None => p,
            };
            out.push((id, p));
        }
    }
    out
}
