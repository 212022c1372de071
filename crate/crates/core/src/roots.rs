//! Square-free decomposition, Sturm sequences and real-root isolation.

use num_traits::{One, Signed, Zero};

use crate::poly::UniPoly;
use crate::rational::{self, Rational};

/// One factor of a square-free decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeFactor {
    /// Monic, square-free, pairwise coprime with the other factors.
    pub factor: UniPoly,
    pub multiplicity: usize,
}

/// Yun's algorithm. Returns the leading coefficient and the nonconstant
/// factors in increasing multiplicity, so that `lc · Π fᵢ^mᵢ = f`.
///
/// Panics on the zero polynomial.
pub fn squarefree_decompose(f: &UniPoly) -> (Rational, Vec<SquareFreeFactor>) {
    assert!(!f.is_zero(), "square-free decomposition of the zero polynomial");
    let lc = f.leading();
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree() < 1 {
        return (lc, out);
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let c = df.exact_div(&a0);
    let mut d = &c - &b.derivative();
    let mut k = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let nb = b.exact_div(&a);
        let nc = d.exact_div(&a);
        d = &nc - &nb.derivative();
        if a.degree() > 0 {
            out.push(SquareFreeFactor {
                factor: a,
                multiplicity: k,
            });
        }
        b = nb;
        k += 1;
    }
    (lc, out)
}

/// Monic square-free part `f / gcd(f, f')`.
pub fn squarefree_part(f: &UniPoly) -> UniPoly {
    assert!(!f.is_zero(), "square-free part of the zero polynomial");
    let g = f.gcd(&f.derivative());
    f.exact_div(&g).monic()
}

/// Sturm chain of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        let mut chain = vec![p.clone()];
        if p.degree() > 0 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(-&r);
            }
        }
        SturmChain { chain }
    }

    fn count_changes(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut changes = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Sign variations at `t`.
    pub fn variations(&self, t: &Rational) -> usize {
        Self::count_changes(self.chain.iter().map(|p| p.sign_at(t)))
    }

    /// Sign variations at `+∞` (`positive`) or `-∞`.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::count_changes(self.chain.iter().map(|p| {
            let s = rational::sign(&p.leading());
            if positive || p.degree() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct real roots in the open interval `(a, b)` when
    /// neither endpoint is a root.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// A real root isolated in the open interval `(lo, hi)`.
///
/// Neither endpoint is a root, and the interval contains exactly one
/// distinct root of the polynomial. `exact` holds the root when it has been
/// identified as a rational number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: Rational,
    pub hi: Rational,
    pub exact: Option<Rational>,
    pub multiplicity: usize,
}

impl IsolatedRoot {
    /// Midpoint approximation, or the exact value when known.
    pub fn approx(&self) -> f64 {
        match &self.exact {
            Some(r) => rational::to_f64(r),
            None => rational::to_f64(&((&self.lo + &self.hi) / rational::int(2))),
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Where to look for roots.
#[derive(Clone, Debug)]
pub enum Domain {
    Real,
    /// The closed interval `[a, b]`.
    Closed(Rational, Rational),
}

/// Strict upper bound on the absolute value of every complex root.
pub fn cauchy_bound(p: &UniPoly) -> Rational {
    let lc = p.leading().abs();
    let d = p.degree().max(0) as usize;
    let m = (0..d)
        .map(|k| p.coeff(k).abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + m
}

/// Real-root data of a nonzero polynomial: square-free part, Yun factors
/// and isolating intervals, sorted left to right.
#[derive(Clone, Debug)]
pub struct RealRoots {
    pub squarefree: UniPoly,
    pub factors: Vec<SquareFreeFactor>,
    pub roots: Vec<IsolatedRoot>,
}

impl RealRoots {
    /// Isolates all real roots of `f` in `domain`. Panics when `f` is zero.
    pub fn isolate(f: &UniPoly, domain: Domain) -> Self {
        let (_, factors) = squarefree_decompose(f);
        let s = squarefree_part(f);
        let mut roots = Vec::new();
        if s.degree() > 0 {
            let chain = SturmChain::new(&s);
            let b = cauchy_bound(&s);
            let n = chain.count_all();
            bisect(&s, &chain, -b.clone(), b, n, &mut roots);
        }
        let mut rr = RealRoots {
            squarefree: s,
            factors,
            roots: Vec::new(),
        };
        for mut r in roots {
            if let Domain::Closed(a, b) = &domain {
                if !rr.clip(&mut r, a, b) {
                    continue;
                }
            }
            r.multiplicity = rr.multiplicity_of(&r);
            rr.roots.push(r);
        }
        rr
    }

    fn multiplicity_of(&self, r: &IsolatedRoot) -> usize {
        for f in &self.factors {
            let hit = match &r.exact {
                Some(x) => f.factor.eval(x).is_zero(),
                None => f.factor.sign_at(&r.lo) * f.factor.sign_at(&r.hi) < 0,
            };
            if hit {
                return f.multiplicity;
            }
        }
        unreachable!("isolated root belongs to no square-free factor")
    }

    /// Narrows `r` until it is decided against `[a, b]`; returns membership.
    fn clip(&self, r: &mut IsolatedRoot, a: &Rational, b: &Rational) -> bool {
        loop {
            if let Some(x) = &r.exact {
                return a <= x && x <= b;
            }
            if &r.hi <= a || &r.lo >= b {
                return false;
            }
            if &r.lo >= a && &r.hi <= b {
                return true;
            }
            for e in [a, b] {
                if &r.lo < e && e < &r.hi && self.squarefree.eval(e).is_zero() {
                    r.exact = Some(e.clone());
                }
            }
            if r.exact.is_none() {
                self.bisect_once(r);
            }
        }
    }

    fn bisect_once(&self, r: &mut IsolatedRoot) {
        let mid = (&r.lo + &r.hi) / rational::int(2);
        let sm = self.squarefree.sign_at(&mid);
        if sm == 0 {
            let q = (&r.hi - &r.lo) / rational::int(4);
            r.lo = &mid - &q;
            r.hi = &mid + &q;
            r.exact = Some(mid);
        } else if sm == self.squarefree.sign_at(&r.lo) {
            r.lo = mid;
        } else {
            r.hi = mid;
        }
    }

    /// Narrows root `i` to width at most `width`.
    pub fn refine(&mut self, i: usize, width: &Rational) {
        let mut r = self.roots[i].clone();
        while &r.width() > width {
            if let Some(x) = &r.exact {
                let q = width / rational::int(4);
                r.lo = x - &q;
                r.hi = x + &q;
                break;
            }
            self.bisect_once(&mut r);
        }
        self.roots[i] = r;
    }

    /// Pins root `i` to the rational `x` if `x` lies in its interval and is a root.
    pub fn pin(&mut self, i: usize, x: &Rational) -> bool {
        let r = &mut self.roots[i];
        if r.exact.is_none() && &r.lo < x && x < &r.hi && self.squarefree.eval(x).is_zero() {
            r.exact = Some(x.clone());
        }
        r.exact.as_ref() == Some(x)
    }

    /// Splits root `i` away from `x`: afterwards the interval lies on one
    /// side of `x`, or the root equals `x` exactly.
    pub fn separate_from(&mut self, i: usize, x: &Rational) {
        if self.pin(i, x) {
            return;
        }
        let r = &mut self.roots[i];
        if r.exact.is_some() || !(&r.lo < x && x < &r.hi) {
            return;
        }
        if self.squarefree.sign_at(x) == self.squarefree.sign_at(&r.lo) {
            r.lo = x.clone();
        } else {
            r.hi = x.clone();
        }
    }

    /// Approximates root `i` to about `digits` decimal places.
    pub fn approx(&self, i: usize, digits: u32) -> f64 {
        let mut copy = self.clone();
        let w = Rational::new(1.into(), num_bigint::BigInt::from(10u32).pow(digits));
        copy.refine(i, &w);
        copy.roots[i].approx()
    }
}

fn bisect(
    s: &UniPoly,
    chain: &SturmChain,
    lo: Rational,
    hi: Rational,
    n: usize,
    out: &mut Vec<IsolatedRoot>,
) {
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(IsolatedRoot {
            lo,
            hi,
            exact: None,
            multiplicity: 0,
        });
        return;
    }
    let mid = (&lo + &hi) / rational::int(2);
    if s.sign_at(&mid) == 0 {
        let mut delta = (&hi - &lo) / rational::int(4);
        loop {
            let a = &mid - &delta;
            let b = &mid + &delta;
            if s.sign_at(&a) != 0 && s.sign_at(&b) != 0 && chain.count(&a, &b) == 1 {
                let left = chain.count(&lo, &a);
                bisect(s, chain, lo, a.clone(), left, out);
                out.push(IsolatedRoot {
                    lo: a,
                    hi: b.clone(),
                    exact: Some(mid),
                    multiplicity: 0,
                });
                bisect(s, chain, b, hi, n - left - 1, out);
                return;
            }
            delta /= rational::int(2);
        }
    }
    let left = chain.count(&lo, &mid);
    bisect(s, chain, lo, mid.clone(), left, out);
    bisect(s, chain, mid, hi, n - left, out);
}

/// Isolating intervals of the real roots of `f` in `domain`, left to right.
pub fn isolate_real_roots(f: &UniPoly, domain: Domain) -> Vec<IsolatedRoot> {
    RealRoots::isolate(f, domain).roots
}

/// Sign of `f` at `t`.
pub fn sign_at(f: &UniPoly, t: &Rational) -> i32 {
    f.sign_at(t)
}

/// Sign of `f` on the gap between two consecutive isolated roots.
pub fn sign_on_gap(f: &UniPoly, left: &IsolatedRoot, right: &IsolatedRoot) -> i32 {
    assert!(left.hi <= right.lo, "roots out of order");
    f.sign_at(&((&left.hi + &right.lo) / rational::int(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn yun_examples() {
        let (_, f) = squarefree_decompose(&p(&[0, 0, 0, -1, 1]));
        assert_eq!(f.len(), 2);
        assert!(f.contains(&SquareFreeFactor {
            factor: p(&[0, 1]),
            multiplicity: 3
        }));
        assert!(f.contains(&SquareFreeFactor {
            factor: p(&[-1, 1]),
            multiplicity: 1
        }));
        let (_, f) = squarefree_decompose(&p(&[1, 0, 1]));
        assert_eq!(
            f,
            vec![SquareFreeFactor {
                factor: p(&[1, 0, 1]),
                multiplicity: 1
            }]
        );
        let a = &p(&[-2, 1]) * &p(&[3, 1]);
        let sq = &a * &a;
        let (lc, f) = squarefree_decompose(&sq);
        assert_eq!(lc, int(1));
        assert_eq!(
            f,
            vec![SquareFreeFactor {
                factor: a,
                multiplicity: 2
            }]
        );
    }

    #[test]
    fn isolation_examples() {
        assert!(isolate_real_roots(&p(&[1, 0, 1]), Domain::Real).is_empty());
        let r = isolate_real_roots(&p(&[-2, 0, 1]), Domain::Real);
        assert_eq!(r.len(), 2);
        assert!(r[0].hi <= int(0) && r[1].lo >= int(0));
        for x in &r {
            assert_eq!(x.multiplicity, 1);
            assert!(x.lo.clone() * &x.lo < int(2) || x.hi.clone() * &x.hi < int(2));
        }
        let r = isolate_real_roots(&p(&[0, 0, 0, -1, 1]), Domain::Closed(int(0), int(10)));
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].multiplicity, 3);
        assert_eq!(r[1].multiplicity, 1);
        assert_eq!(r[0].exact, Some(int(0)));
    }

    #[test]
    fn closed_domain_endpoints() {
        let f = &p(&[-1, 1]) * &p(&[-3, 1]);
        let r = isolate_real_roots(&f, Domain::Closed(int(1), int(2)));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].exact, Some(int(1)));
        let r = isolate_real_roots(&f, Domain::Closed(frac(3, 2), int(2)));
        assert!(r.is_empty());
    }

    #[test]
    fn signs() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(sign_at(&f, &int(0)), -1);
        assert_eq!(sign_at(&f, &int(2)), 1);
        let g = p(&[0, -1, 1]);
        let r = isolate_real_roots(&g, Domain::Real);
        assert_eq!(sign_on_gap(&g, &r[0], &r[1]), -1);
    }

    #[test]
    fn refine_converges() {
        let mut rr = RealRoots::isolate(&p(&[-2, 0, 1]), Domain::Real);
        rr.refine(1, &frac(1, 1_000_000));
        assert!((rr.roots[1].approx() - 2f64.sqrt()).abs() < 1e-6);
        assert!((rr.approx(0, 12) + 2f64.sqrt()).abs() < 1e-11);
    }
}
