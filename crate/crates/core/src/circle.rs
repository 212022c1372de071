//! Dynamics on the invariant circle.
//!
//! Everything here is read off the phase form `G = 𝓛Q`. Its real projective
//! roots over `θ ∈ [0, π)` are the equilibria on the circle (and, in the
//! same directions, at infinity); the sign of `G` on the gaps between them
//! gives the direction of the angular flow. The cyclic list of symbols
//! built from these signs is a complete invariant up to `≡`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::contraction::{self, negative_on_segment};
use crate::error::{Error, Result};
use crate::form::{BinaryForm, ProjectiveRootSet, RootKind};
use crate::poly2::Poly2;
use crate::rational::{self, Rational};
use crate::starfield::StarField;

/// Sign part of a symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn of(s: i32) -> Sign {
        if s > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// One of `(1+)`, `(1−)`, `(2+)`, `(2−)`.
///
/// `(1+)` is a repellor and `(1−)` an attractor for the angular flow;
/// `(2±)` are the two orientations of a saddle-node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub j: u8,
    pub s: Sign,
}

impl Symbol {
    pub const ONE_PLUS: Symbol = Symbol { j: 1, s: Sign::Plus };
    pub const ONE_MINUS: Symbol = Symbol { j: 1, s: Sign::Minus };
    pub const TWO_PLUS: Symbol = Symbol { j: 2, s: Sign::Plus };
    pub const TWO_MINUS: Symbol = Symbol { j: 2, s: Sign::Minus };

    /// Sign of `g` on the gap following this symbol.
    pub fn sign_after(self) -> Sign {
        self.s
    }

    /// Sign of `g` on the gap preceding this symbol.
    pub fn sign_before(self) -> Sign {
        if self.j == 1 {
            self.s.flip()
        } else {
            self.s
        }
    }

    /// Image under an orientation-reversing change of coordinates.
    pub fn mirrored(self) -> Symbol {
        if self.j == 2 {
            Symbol {
                j: 2,
                s: self.s.flip(),
            }
        } else {
            self
        }
    }

    fn rank(self) -> u8 {
        2 * (self.j - 1) + u8::from(self.s == Sign::Minus)
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.s {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "({}{})", self.j, s)
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad symbol `{text}`"));
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut chars = inner.chars();
        let j = match chars.next() {
            Some('1') => 1,
            Some('2') => 2,
            _ => return Err(bad()),
        };
        let s = match chars.as_str() {
            "+" => Sign::Plus,
            "-" | "−" => Sign::Minus,
            _ => return Err(bad()),
        };
        Ok(Symbol { j, s })
    }
}

/// The invariant of a phase form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SymbolSequence {
    /// No equilibria on the circle.
    Empty,
    /// The circle is a continuum of equilibria.
    Infinity,
    /// Symbols of the roots in angular order; never empty.
    Cyclic(Vec<Symbol>),
}

fn rotations(list: &[Symbol]) -> impl Iterator<Item = Vec<Symbol>> + '_ {
    (0..list.len()).map(move |k| {
        let mut r = list[k..].to_vec();
        r.extend_from_slice(&list[..k]);
        r
    })
}

impl SymbolSequence {
    /// A cyclic sequence; rejects the empty list.
    pub fn cyclic(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidParameter("empty cyclic sequence".into()));
        }
        Ok(SymbolSequence::Cyclic(symbols))
    }

    pub fn symbols(&self) -> &[Symbol] {
        match self {
            SymbolSequence::Cyclic(s) => s,
            _ => &[],
        }
    }

    /// The sequence seen with the orientation of the circle reversed.
    ///
    /// The list is reversed; the angular velocity changes sign along with the
    /// orientation, so (1±) keep their sign and (2±) swap.
    pub fn backward(&self) -> SymbolSequence {
        match self {
            SymbolSequence::Cyclic(s) => {
                SymbolSequence::Cyclic(s.iter().rev().map(|x| x.mirrored()).collect())
            }
            other => other.clone(),
        }
    }

    /// Lexicographically least rotation of the sequence or its backward.
    pub fn canonical_key(&self) -> Option<Vec<Symbol>> {
        let list = self.symbols();
        if list.is_empty() {
            return None;
        }
        let back = self.backward();
        rotations(list).chain(rotations(back.symbols())).min()
    }

    /// The `≡` relation.
    pub fn equivalent(&self, other: &SymbolSequence) -> bool {
        match (self, other) {
            (SymbolSequence::Cyclic(_), SymbolSequence::Cyclic(_)) => {
                self.canonical_key() == other.canonical_key()
            }
            _ => self == other,
        }
    }

    /// Same variant and, for cyclic sequences, the canonical list.
    pub fn canonical(&self) -> SymbolSequence {
        match self.canonical_key() {
            Some(k) => SymbolSequence::Cyclic(k),
            None => self.clone(),
        }
    }

    /// Number of `(2±)` symbols.
    pub fn saddle_node_count(&self) -> usize {
        self.symbols().iter().filter(|s| s.j == 2).count()
    }

    /// `Σ jᵢ`.
    pub fn weight(&self) -> usize {
        self.symbols().iter().map(|s| s.j as usize).sum()
    }

    /// Stratum index `j` of `Σⱼ`: the number of `(2±)` per half period,
    /// 0 for the empty sequence and `p + 2` for `∞`.
    pub fn stratum(&self, p: usize) -> usize {
        match self {
            SymbolSequence::Infinity => p + 2,
            _ => self.saddle_node_count(),
        }
    }

    /// Checks the necessary conditions on a realizable sequence.
    pub fn validate_admissible(&self) -> Vec<Violation> {
        let list = self.symbols();
        let mut out = Vec::new();
        if list.is_empty() {
            return out;
        }
        if self.weight() % 2 != 0 {
            out.push(Violation::OddWeight(self.weight()));
        }
        let ones: Vec<(usize, Sign)> = list
            .iter()
            .enumerate()
            .filter(|(_, s)| s.j == 1)
            .map(|(i, s)| (i, s.s))
            .collect();
        for k in 0..ones.len() {
            let (i, a) = ones[k];
            let (_, b) = ones[(k + 1) % ones.len()];
            if a == b {
                out.push(Violation::NotAlternating { index: i });
            }
        }
        for i in 0..list.len() {
            let next = list[(i + 1) % list.len()];
            if list[i].sign_after() != next.sign_before() {
                out.push(Violation::BadSuccessor { index: i });
            }
        }
        out
    }

    pub fn is_admissible(&self) -> bool {
        self.validate_admissible().is_empty()
    }
}

impl fmt::Display for SymbolSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolSequence::Empty => f.write_str("∅"),
            SymbolSequence::Infinity => f.write_str("∞"),
            SymbolSequence::Cyclic(s) => {
                let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for SymbolSequence {
    type Err = Error;

    /// Accepts `∅`/`empty`, `∞`/`inf`, or symbols separated by commas,
    /// spaces, or nothing, as in `(2+)(1-)(1+)`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "∅" | "empty" | "" => return Ok(SymbolSequence::Empty),
            "∞" | "inf" | "infinity" => return Ok(SymbolSequence::Infinity),
            _ => {}
        }
        let mut symbols = Vec::new();
        let mut rest = t;
        loop {
            rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let end = rest
                .find(')')
                .ok_or_else(|| Error::InvalidParameter(format!("bad sequence `{text}`")))?;
            symbols.push(rest[..=end].parse()?);
            rest = &rest[end + 1..];
        }
        SymbolSequence::cyclic(symbols)
    }
}

impl Serialize for SymbolSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SymbolSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A failed admissibility condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `Σ jᵢ` is odd.
    OddWeight(usize),
    /// The `(1±)` symbol at `index` has the same sign as the next `(1±)`.
    NotAlternating { index: usize },
    /// The symbol after `index` does not match the sign left by it.
    BadSuccessor { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OddWeight(w) => write!(f, "sum of multiplicity classes is odd ({w})"),
            Violation::NotAlternating { index } => {
                write!(f, "(1±) symbols do not alternate at position {index}")
            }
            Violation::BadSuccessor { index } => {
                write!(f, "symbol at position {} cannot follow position {index}", index + 1)
            }
        }
    }
}

/// Projective roots of `G` with the sign of `G` on each following gap.
struct Gaps {
    roots: ProjectiveRootSet,
    after: Vec<i32>,
}

fn gap_signs(g: &BinaryForm) -> Result<Gaps> {
    let roots = g.projective_roots()?;
    let m = g.dehomogenize();
    let n = roots.len();
    let one = rational::int(1);
    let mut after = Vec::with_capacity(n);
    for i in 0..n {
        let a = &roots.roots[i].kind;
        let b = &roots.roots[(i + 1) % n].kind;
        let w = match (a, b) {
            (RootKind::Slope(ra), RootKind::Slope(rb)) if n > 1 && ra.hi <= rb.lo => {
                (&ra.hi + &rb.lo) / rational::int(2)
            }
            (RootKind::Slope(ra), _) => &ra.hi + &one,
            (RootKind::Vertical, RootKind::Slope(rb)) => &rb.lo - &one,
            (RootKind::Vertical, RootKind::Vertical) => Rational::zero(),
        };
        let s = m.sign_at(&w);
        debug_assert!(s != 0, "gap witness is a root");
        after.push(s);
    }
    Ok(Gaps { roots, after })
}

/// The symbol sequence of an even-degree form.
pub fn symbol_sequence(g: &BinaryForm) -> Result<SymbolSequence> {
    if g.degree() % 2 != 0 {
        return Err(Error::OddDegree(g.degree()));
    }
    if g.is_zero() {
        return Ok(SymbolSequence::Infinity);
    }
    let gaps = gap_signs(g)?;
    let n = gaps.roots.len();
    if n == 0 {
        return Ok(SymbolSequence::Empty);
    }
    let symbols = (0..n)
        .map(|i| {
            let before = gaps.after[(i + n - 1) % n];
            let after = gaps.after[i];
            if gaps.roots.roots[i].multiplicity % 2 == 1 {
                Symbol {
                    j: 1,
                    s: Sign::of(after),
                }
            } else {
                Symbol {
                    j: 2,
                    s: Sign::of(i32::from(before > 0 && after > 0) * 2 - 1),
                }
            }
        })
        .collect();
    Ok(SymbolSequence::Cyclic(symbols))
}

/// Shape of the invariant circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DynamicsType {
    LimitCycle,
    Policycle,
    Continuum,
}

impl DynamicsType {
    pub fn of(sigma: &SymbolSequence) -> DynamicsType {
        match sigma {
            SymbolSequence::Empty => DynamicsType::LimitCycle,
            SymbolSequence::Infinity => DynamicsType::Continuum,
            SymbolSequence::Cyclic(_) => DynamicsType::Policycle,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DynamicsType::LimitCycle => "limit_cycle",
            DynamicsType::Policycle => "policycle",
            DynamicsType::Continuum => "continuum",
        }
    }
}

/// Outcomes of the coefficient-level shortcuts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub struct QuickTests {
    /// `(p2 − p1)² + 4 p3 p4 < 0` on `u, v ≥ 0`: a limit cycle.
    pub limit_cycle: bool,
    /// `p3(0,1) p4(1,0) ≥ 0`: equilibria exist on the circle.
    pub has_equilibria: bool,
    /// `p3(0,1) p4(1,0) > 0`: a policycle.
    pub policycle: bool,
    /// `p3 ≡ p4 ≡ 0` and `p1 ≡ p2`: a continuum.
    pub continuum: bool,
}

impl QuickTests {
    pub fn of(f: &StarField) -> QuickTests {
        let d = f.decompose();
        let p = d.p();
        let diff = &d.p2 - &d.p1;
        let disc = &(&diff * &diff) + &(&d.p3 * &d.p4).scale(&rational::int(4));
        let corner = d.p3.coeff(p) * d.p4.coeff(0);
        QuickTests {
            limit_cycle: negative_on_segment(&disc),
            has_equilibria: !corner.is_negative(),
            policycle: corner.is_positive(),
            continuum: d.is_z2z2() && diff.is_zero(),
        }
    }

    /// Names of the tests that fired.
    pub fn triggered(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.limit_cycle {
            out.push("limit_cycle");
        }
        if self.policycle {
            out.push("policycle");
        } else if self.has_equilibria {
            out.push("has_equilibria");
        }
        if self.continuum {
            out.push("continuum");
        }
        out
    }
}

/// The circle of equilibria `r(θ)^(2p) = −λ / f(θ)`, `f(θ) = 𝓜Q(cos θ, sin θ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleGraph {
    pub lambda: Rational,
    pub mq: BinaryForm,
    pub p: usize,
}

impl CircleGraph {
    pub fn radius(&self, theta: f64) -> f64 {
        let f = self.mq.eval_f64(theta.cos(), theta.sin());
        (-rational::to_f64(&self.lambda) / f).powf(1.0 / (2 * self.p) as f64)
    }

    /// The curve as `λ(x² + y²) + 𝓜Q(x, y) = 0`.
    pub fn implicit(&self) -> Poly2 {
        let r2 = Poly2::from_form(&BinaryForm::circle_power(1)).scale(&self.lambda);
        &r2 + &Poly2::from_form(&self.mq)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleClassification {
    pub dynamics_type: DynamicsType,
    pub sigma: SymbolSequence,
    pub stratum: usize,
    /// Some root of `𝓛Q` has multiplicity at least 3.
    pub degenerate: bool,
    pub quick: QuickTests,
    pub invariant_circle_graph: Option<CircleGraph>,
}

fn require_contracting(f: &StarField) -> Result<()> {
    if contraction::is_contracting(f) {
        Ok(())
    } else {
        Err(Error::NotContracting)
    }
}

/// Classifies the invariant circle of a contracting field.
pub fn classify_circle(f: &StarField) -> Result<CircleClassification> {
    require_contracting(f)?;
    let g = f.lq();
    let sigma = symbol_sequence(&g)?;
    let degenerate = !g.is_zero() && g.projective_roots()?.multiplicities().iter().any(|&m| m >= 3);
    let dynamics_type = DynamicsType::of(&sigma);
    let invariant_circle_graph = (dynamics_type == DynamicsType::Continuum).then(|| CircleGraph {
        lambda: f.lambda().clone(),
        mq: f.mq(),
        p: f.p(),
    });
    Ok(CircleClassification {
        dynamics_type,
        stratum: sigma.stratum(f.p()),
        sigma,
        degenerate,
        quick: QuickTests::of(f),
        invariant_circle_graph,
    })
}

/// Local type of an equilibrium on the invariant circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalType {
    Sink,
    Saddle,
    SaddleNode,
}

impl LocalType {
    pub fn of(s: Symbol) -> LocalType {
        match (s.j, s.s) {
            (1, Sign::Minus) => LocalType::Sink,
            (1, Sign::Plus) => LocalType::Saddle,
            _ => LocalType::SaddleNode,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LocalType::Sink => "sink",
            LocalType::Saddle => "saddle",
            LocalType::SaddleNode => "saddle-node",
        }
    }
}

/// `simple`, `double`, ... for a root multiplicity.
pub fn root_type_name(multiplicity: usize) -> String {
    match multiplicity {
        1 => "simple".into(),
        2 => "double".into(),
        3 => "triple".into(),
        4 => "quadruple".into(),
        m => format!("multiplicity {m}"),
    }
}

/// `hyperbolic`, `saddle-node` or `hyperbolic-like` for a root multiplicity.
pub fn stability_name(multiplicity: usize) -> &'static str {
    if multiplicity == 1 {
        "hyperbolic"
    } else if multiplicity % 2 == 0 {
        "saddle-node"
    } else {
        "hyperbolic-like"
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircleEquilibrium {
    /// Angle in `[0, 2π)`.
    pub theta: f64,
    /// Isolating interval of the slope `tan θ`; `None` on the vertical axis.
    pub slope_bracket: Option<(Rational, Rational)>,
    pub multiplicity: usize,
    pub symbol: Symbol,
    pub local_type: LocalType,
    pub hyperbolic: bool,
    /// Distance from the origin.
    pub radius: f64,
}

impl CircleEquilibrium {
    pub fn position(&self) -> (f64, f64) {
        (self.radius * self.theta.cos(), self.radius * self.theta.sin())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumInventory {
    /// Over the full circle, sorted by angle.
    pub circle_equilibria: Vec<CircleEquilibrium>,
    pub count_finite_nonorigin: usize,
    pub count_infinite: usize,
}

impl EquilibriumInventory {
    pub fn hyperbolic_flags(&self) -> Vec<bool> {
        self.circle_equilibria.iter().map(|e| e.hyperbolic).collect()
    }

    pub fn count(&self, t: LocalType) -> usize {
        self.circle_equilibria.iter().filter(|e| e.local_type == t).count()
    }
}

/// Number of directions at infinity where the compactified field vanishes,
/// counted from the chart equations on `v = 0`.
fn infinite_count(f: &StarField) -> Result<usize> {
    // chart x = 1/v, y = u/v: u' = 𝓛Q(1, u) on v = 0, plus its antipode
    let g = f.lq();
    let m = g.dehomogenize();
    let finite_slopes = if m.degree() > 0 {
        crate::roots::RealRoots::isolate(&m, crate::roots::Domain::Real).roots.len()
    } else {
        0
    };
    // chart y = 1/v: the direction u = 0 is the only one missed above
    let vertical = usize::from(g.coeff(g.degree()).is_zero());
    Ok(2 * (finite_slopes + vertical))
}

/// Equilibria on the invariant circle of a contracting field with finitely many.
pub fn equilibrium_inventory(f: &StarField) -> Result<EquilibriumInventory> {
    require_contracting(f)?;
    let g = f.lq();
    let sigma = symbol_sequence(&g)?;
    if sigma == SymbolSequence::Infinity {
        return Err(Error::InfiniteSequence);
    }
    let mut list = Vec::new();
    if let SymbolSequence::Cyclic(symbols) = &sigma {
        let roots = g.projective_roots()?;
        let mq = f.mq();
        let lambda = rational::to_f64(f.lambda());
        let exponent = 1.0 / (2 * f.p()) as f64;
        for half in [0.0, std::f64::consts::PI] {
            for (i, root) in roots.roots.iter().enumerate() {
                let theta = roots.angle(i) + half;
                let fr = mq.eval_f64(theta.cos(), theta.sin());
                let slope_bracket = match &root.kind {
                    RootKind::Slope(r) => Some((r.lo.clone(), r.hi.clone())),
                    RootKind::Vertical => None,
                };
                list.push(CircleEquilibrium {
                    theta,
                    slope_bracket,
                    multiplicity: root.multiplicity,
                    symbol: symbols[i],
                    local_type: LocalType::of(symbols[i]),
                    hyperbolic: root.multiplicity == 1,
                    radius: (-lambda / fr).powf(exponent),
                });
            }
        }
    }
    let count_finite_nonorigin = list.iter().filter(|e| e.radius.is_finite() && e.radius > 0.0).count();
    let inv = EquilibriumInventory {
        circle_equilibria: list,
        count_finite_nonorigin,
        count_infinite: infinite_count(f)?,
    };
    assert_eq!(inv.count_finite_nonorigin, inv.count_infinite);
    assert!(inv.count_finite_nonorigin <= 4 * (f.p() + 1));
    if inv.circle_equilibria.iter().all(|e| e.hyperbolic) {
        assert_eq!(inv.count_finite_nonorigin % 4, 0);
    }
    Ok(inv)
}

/// The four cases for equivariant cubics, by the signs of `A` and `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Z2Case {
    /// `A = B = 0`.
    I,
    /// `AB = 0`, `A + B ≠ 0`.
    II,
    /// `AB < 0`.
    III,
    /// `AB > 0`.
    IV,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2Report {
    /// `a10 − a20`.
    pub a: Rational,
    /// `a21 − a11`.
    pub b: Rational,
    pub case: Z2Case,
    pub sigma: SymbolSequence,
    /// Equilibria at `θ = 0, π` are hyperbolic.
    pub horizontal_hyperbolic: bool,
    /// Equilibria at `θ = π/2, 3π/2` are hyperbolic.
    pub vertical_hyperbolic: bool,
    /// Equilibria off the axes over the full circle; all hyperbolic.
    pub off_axis: usize,
    /// In case I, the ellipse `a10 x² + a11 y² = λ`.
    pub ellipse: Option<(Rational, Rational)>,
}

/// Circle dynamics of `(−x(a10 x² + a11 y²), −y(a20 x² + a21 y²))`
/// read from the coefficients alone.
pub fn z2z2_circle(a10: &Rational, a11: &Rational, a20: &Rational, a21: &Rational) -> Result<Z2Report> {
    if !contraction::z2z2_exact(a10, a11, a20, a21) {
        return Err(Error::NotContracting);
    }
    let a = a10 - a20;
    let b = a21 - a11;
    let ab = &a * &b;
    let (case, sigma) = if a.is_zero() && b.is_zero() {
        (Z2Case::I, SymbolSequence::Infinity)
    } else if ab.is_zero() {
        (Z2Case::II, SymbolSequence::Cyclic(vec![Symbol::ONE_PLUS, Symbol::ONE_MINUS]))
    } else if ab.is_negative() {
        (Z2Case::III, SymbolSequence::Cyclic(vec![Symbol::ONE_PLUS, Symbol::ONE_MINUS]))
    } else {
        (
            Z2Case::IV,
            SymbolSequence::Cyclic(vec![
                Symbol::ONE_PLUS,
                Symbol::ONE_MINUS,
                Symbol::ONE_PLUS,
                Symbol::ONE_MINUS,
            ]),
        )
    };
    Ok(Z2Report {
        horizontal_hyperbolic: !a.is_zero(),
        vertical_hyperbolic: !b.is_zero(),
        off_axis: if case == Z2Case::IV { 4 } else { 0 },
        ellipse: (case == Z2Case::I).then(|| (a10.clone(), a11.clone())),
        a,
        b,
        case,
        sigma,
    })
}

/// `xy(A x² − B y²)`, the phase form of the equivariant cubic.
pub fn z2z2_phase_form(a: &Rational, b: &Rational) -> BinaryForm {
    let z = Rational::zero();
    BinaryForm::new(vec![z.clone(), a.clone(), z.clone(), -b.clone(), z])
}
