//! Exact real-root isolation with Sturm sequences.
//!
//! A real root is either an exact rational or an isolating interval
//! `(lo, hi)` with rational endpoints that contains exactly one root of a
//! squarefree integer polynomial, neither endpoint being a root. Questions
//! about a root ("is q zero there?", "what sign does q take?") are answered
//! exactly by gcd computations and interval refinement, never by float
//! comparison.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{poly_gcd, squarefree_part, IntPoly};

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = vec![p.clone()];
        if p.is_constant() {
            return SturmChain { chain };
        }
        chain.push(p.derivative());
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.is_constant() {
                break;
            }
            // lc(b)^k a = q b + prem; the true remainder has the sign of
            // prem when lc(b)^k > 0.
            let k = a.degree().unwrap() - b.degree().unwrap() + 1;
            let mut r = a.pseudo_rem(b);
            if b.leading().is_negative() && k % 2 == 1 {
                r = -r;
            }
            if r.is_zero() {
                break;
            }
            let c = r.content();
            chain.push(-r.div_scalar(&c));
        }
        SturmChain { chain }
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct roots in `(lo, hi]`.
    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }
}

/// A bound `B` with every real root of `p` in `(-B, B)`.
pub fn root_bound(p: &IntPoly) -> BigInt {
    if p.is_zero() {
        return BigInt::from(2);
    }
    let lc = p.leading().abs();
    let max = p
        .coeffs()
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    // Cauchy: 1 + max|a_k| / |a_n|, rounded up, plus one for strictness.
    max / lc + BigInt::from(2)
}

/// An algebraic real given by an isolating interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    /// Squarefree, primitive, positive leading coefficient.
    poly: IntPoly,
    lo: BigRational,
    hi: BigRational,
}

impl IsolatedRoot {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// Halve the interval; returns an exact root if the midpoint hits it.
    fn bisect(&self) -> RealRoot {
        let mid = (&self.lo + &self.hi) / rat(BigInt::from(2));
        let s_mid = self.poly.sign_at(&mid);
        if s_mid == Ordering::Equal {
            return RealRoot::Rational(mid);
        }
        let s_lo = self.poly.sign_at(&self.lo);
        let (lo, hi) = if s_mid == s_lo {
            (mid, self.hi.clone())
        } else {
            (self.lo.clone(), mid)
        };
        RealRoot::Isolated(IsolatedRoot {
            poly: self.poly.clone(),
            lo,
            hi,
        })
    }
}

/// A real number that is a root of an integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Rational(BigRational),
    Isolated(IsolatedRoot),
}

impl RealRoot {
    pub fn rational(x: BigRational) -> Self {
        RealRoot::Rational(x)
    }

    pub fn from_integer(x: i64) -> Self {
        RealRoot::Rational(rat(BigInt::from(x)))
    }

    /// Exact promotion of a finite float.
    pub fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_float(x)
            .map(RealRoot::Rational)
            .ok_or_else(|| Error::Domain(format!("{x} is not a finite real")))
    }

    /// Enclosing interval `[lo, hi]` (degenerate for rationals).
    pub fn bounds(&self) -> (BigRational, BigRational) {
        match self {
            RealRoot::Rational(x) => (x.clone(), x.clone()),
            RealRoot::Isolated(r) => (r.lo.clone(), r.hi.clone()),
        }
    }

    pub fn width(&self) -> BigRational {
        let (lo, hi) = self.bounds();
        hi - lo
    }

    /// One bisection step.
    pub fn refine(&self) -> RealRoot {
        match self {
            RealRoot::Rational(_) => self.clone(),
            RealRoot::Isolated(r) => r.bisect(),
        }
    }

    /// Refine until the enclosing interval is narrower than `width`.
    pub fn refine_to(&self, width: &BigRational) -> RealRoot {
        let mut r = self.clone();
        while r.width() >= *width && matches!(r, RealRoot::Isolated(_)) {
            r = r.refine();
        }
        r
    }

    /// Midpoint approximation.
    pub fn approx(&self) -> BigRational {
        let (lo, hi) = self.bounds();
        (lo + hi) / rat(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.refine_to(&BigRational::new(BigInt::one(), BigInt::one() << 60))
            .approx()
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Is `q(self) = 0`?
    pub fn is_root_of(&self, q: &IntPoly) -> bool {
        if q.is_zero() {
            return true;
        }
        match self {
            RealRoot::Rational(x) => q.sign_at(x) == Ordering::Equal,
            RealRoot::Isolated(r) => {
                if q.is_constant() {
                    return false;
                }
                let g = poly_gcd(&r.poly, q).expect("nonzero inputs");
                // g divides the squarefree poly, so it has at most the one
                // root of poly inside (lo, hi), and changes sign there iff it
                // vanishes at it.
                !g.is_constant() && g.sign_at(&r.lo) != g.sign_at(&r.hi)
            }
        }
    }

    /// Exact sign of `q(self)`.
    pub fn sign_of(&self, q: &IntPoly) -> Ordering {
        match self {
            RealRoot::Rational(x) => q.sign_at(x),
            RealRoot::Isolated(_) => {
                if self.is_root_of(q) {
                    return Ordering::Equal;
                }
                let sq = squarefree_part(q).expect("q nonzero");
                let chain = SturmChain::new(&sq);
                let mut cur = self.clone();
                loop {
                    match &cur {
                        RealRoot::Rational(x) => return q.sign_at(x),
                        RealRoot::Isolated(r) => {
                            if sq.sign_at(&r.lo) != Ordering::Equal
                                && sq.sign_at(&r.hi) != Ordering::Equal
                                && chain.count_in(&r.lo, &r.hi) == 0
                            {
                                return q.sign_at(&r.lo);
                            }
                        }
                    }
                    cur = cur.refine();
                }
            }
        }
    }

    /// Exact comparison of two real roots.
    pub fn cmp_exact(&self, other: &RealRoot) -> Ordering {
        match (self, other) {
            (RealRoot::Rational(a), RealRoot::Rational(b)) => a.cmp(b),
            (RealRoot::Rational(_), RealRoot::Isolated(_)) => other.cmp_exact(self).reverse(),
            (RealRoot::Isolated(r), _) => {
                if let RealRoot::Rational(x) = other {
                    if r.poly.sign_at(x) == Ordering::Equal {
                        // x is a root of poly but not inside (lo, hi), or it
                        // would be the isolated root itself; it is rational.
                        if &r.lo < x && x < &r.hi {
                            return Ordering::Equal;
                        }
                    }
                } else if let RealRoot::Isolated(s) = other {
                    let g = poly_gcd(&r.poly, &s.poly).expect("nonzero");
                    if !g.is_constant() && self.is_root_of(&g) && other.is_root_of(&g) {
                        // both are roots of g; equal iff the intervals share
                        // the same root of g
                        let lo = (&r.lo).max(&s.lo).clone();
                        let hi = (&r.hi).min(&s.hi).clone();
                        if lo < hi {
                            let sq = squarefree_part(&g).unwrap();
                            if SturmChain::new(&sq).count_in(&lo, &hi) == 1
                                && sq.sign_at(&lo) != Ordering::Equal
                            {
                                return Ordering::Equal;
                            }
                        }
                    }
                }
                let (mut a, mut b) = (self.clone(), other.clone());
                loop {
                    let (alo, ahi) = a.bounds();
                    let (blo, bhi) = b.bounds();
                    if ahi < blo {
                        return Ordering::Less;
                    }
                    if bhi < alo {
                        return Ordering::Greater;
                    }
                    if let (RealRoot::Rational(x), RealRoot::Rational(y)) = (&a, &b) {
                        return x.cmp(y);
                    }
                    if a.width() >= b.width() {
                        a = a.refine();
                    } else {
                        b = b.refine();
                    }
                }
            }
        }
    }
}

impl fmt::Display for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealRoot::Rational(x) => write!(f, "{x}"),
            RealRoot::Isolated(r) => write!(f, "root of {} in ({}, {})", r.poly, r.lo, r.hi),
        }
    }
}

/// JSON shape: `{"lo": "p/q", "hi": "p/q", "poly": [...]}`; `poly` is absent
/// for exact rationals, where `lo == hi`.
#[derive(Serialize)]
struct RootDump {
    lo: String,
    hi: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    poly: Option<IntPoly>,
    approx: f64,
}

impl Serialize for RealRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (lo, hi) = self.bounds();
        RootDump {
            lo: lo.to_string(),
            hi: hi.to_string(),
            poly: match self {
                RealRoot::Rational(_) => None,
                RealRoot::Isolated(r) => Some(r.poly.clone()),
            },
            approx: self.to_f64(),
        }
        .serialize(s)
    }
}

/// Leading coefficients above this skip the rational-root probe.
const RATIONAL_PROBE_MAX_LEADING: u32 = 64;

/// The unique root of squarefree `sq` in `(lo, hi]`, as an exact rational
/// when it is one with denominator dividing the leading coefficient.
fn rational_or_isolated(sq: &IntPoly, lo: BigRational, hi: BigRational) -> RealRoot {
    let lead = sq.leading().abs();
    let root = RealRoot::Isolated(IsolatedRoot {
        poly: sq.clone(),
        lo,
        hi,
    });
    let Some(a) = lead.to_u32().filter(|&a| a <= RATIONAL_PROBE_MAX_LEADING) else {
        return root;
    };
    // Distinct fractions with denominators at most `a` are more than 1/a^2
    // apart, so at most one of them survives in a narrower interval.
    let width = BigRational::new(BigInt::one(), BigInt::from(2 * a * a));
    let root = root.refine_to(&width);
    let RealRoot::Isolated(r) = &root else {
        return root;
    };
    for q in (1..=a).filter(|q| a % q == 0) {
        let q = BigInt::from(q);
        let num = (&r.hi * rat(q.clone())).floor().to_integer();
        let x = BigRational::new(num, q);
        if r.lo < x && x <= r.hi && sq.sign_at(&x) == Ordering::Equal {
            return RealRoot::Rational(x);
        }
    }
    root
}

/// All distinct real roots of `p`, increasing. `p` must be nonzero.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::Domain("root isolation of the zero polynomial".into()));
    }
    let sq = squarefree_part(p)?;
    if sq.is_constant() {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&sq);
    let b = rat(root_bound(&sq));
    let mut out = Vec::new();
    let mut work = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = work.pop() {
        let n = chain.count_in(&lo, &hi);
        match n {
            0 => {}
            1 => out.push(rational_or_isolated(&sq, lo, hi)),
            _ => {
                let mid = (&lo + &hi) / rat(BigInt::from(2));
                if sq.sign_at(&mid) == Ordering::Equal {
                    out.push(RealRoot::Rational(mid.clone()));
                    // shrink away from the exact root on both sides
                    let mut eps = (&hi - &lo) / rat(BigInt::from(4));
                    loop {
                        let left = &mid - &eps;
                        let right = &mid + &eps;
                        if chain.count_in(&left, &right) == 1
                            && sq.sign_at(&left) != Ordering::Equal
                            && sq.sign_at(&right) != Ordering::Equal
                        {
                            work.push((lo.clone(), left));
                            work.push((right, hi.clone()));
                            break;
                        }
                        eps /= rat(BigInt::from(2));
                    }
                } else {
                    work.push((lo, mid.clone()));
                    work.push((mid, hi));
                }
            }
        }
    }
    // Intervals and exact points are pairwise disjoint, so midpoints order them.
    out.sort_by_key(RealRoot::approx);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sturm_counts() {
        // t^3 - 2t has roots -sqrt2, 0, sqrt2
        let c = SturmChain::new(&p(&[0, -2, 0, 1]));
        assert_eq!(c.count_in(&q(-10, 1), &q(10, 1)), 3);
        assert_eq!(c.count_in(&q(-1, 2), &q(1, 2)), 1);
        assert_eq!(c.count_in(&q(1, 1), &q(2, 1)), 1);
        assert_eq!(c.count_in(&q(3, 2), &q(2, 1)), 0);
    }

    #[test]
    fn isolate_p3_spectrum() {
        let roots = isolate_real_roots(&p(&[0, -2, 0, 1])).unwrap();
        assert_eq!(roots.len(), 3);
        let approx: Vec<f64> = roots.iter().map(RealRoot::to_f64).collect();
        let s2 = 2f64.sqrt();
        for (a, b) in approx.iter().zip([-s2, 0.0, s2]) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        assert!(roots[1].is_root_of(&IntPoly::t()));
    }

    #[test]
    fn multiple_roots_reported_once() {
        // (t+1)^2 (t-2)
        let roots = isolate_real_roots(&p(&[-2, -3, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].cmp_exact(&RealRoot::from_integer(-1)), Ordering::Equal);
        assert_eq!(roots[1].cmp_exact(&RealRoot::from_integer(2)), Ordering::Equal);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        assert!(isolate_real_roots(&p(&[7])).unwrap().is_empty());
        assert!(isolate_real_roots(&IntPoly::zero()).is_err());
    }

    #[test]
    fn signs_at_algebraic_points() {
        let roots = isolate_real_roots(&p(&[-2, 0, 1])).unwrap(); // ±sqrt2
        let r = &roots[1];
        assert_eq!(r.sign_of(&p(&[-1, 1])), Ordering::Greater); // sqrt2 - 1
        assert_eq!(r.sign_of(&p(&[-3, 2])), Ordering::Less); // 2 sqrt2 - 3 < 0
        assert_eq!(r.sign_of(&p(&[-2, 0, 1])), Ordering::Equal);
        // (t^2-2)(t+5): vanishes at sqrt2 through a non-minimal factor
        assert_eq!(r.sign_of(&(&p(&[-2, 0, 1]) * &p(&[5, 1]))), Ordering::Equal);
        // t^2 - 2 + 1e-30 style near miss: 10^30 t^2 - 2*10^30 + 1 > 0 at sqrt2
        let big = BigInt::from(10).pow(30);
        let near = IntPoly::from_coeffs(vec![-&big * 2 + 1, BigInt::zero(), big]);
        assert_eq!(r.sign_of(&near), Ordering::Greater);
    }

    #[test]
    fn exact_comparisons() {
        let a = isolate_real_roots(&p(&[-2, 0, 1])).unwrap()[1].clone(); // sqrt2
        let b = isolate_real_roots(&p(&[2, 0, -4, 0, 1])).unwrap(); // t^4-4t^2+2
        // roots of t^4 - 4t^2 + 2 are ±sqrt(2±sqrt2); none equals sqrt2
        assert!(b.iter().all(|x| x.cmp_exact(&a) != Ordering::Equal));
        let c = isolate_real_roots(&(&p(&[-2, 0, 1]) * &p(&[-3, 1]))).unwrap();
        assert_eq!(c[1].cmp_exact(&a), Ordering::Equal);
        assert_eq!(c[2].cmp_exact(&a), Ordering::Greater);
        assert_eq!(a.cmp_exact(&RealRoot::Rational(q(141, 100))), Ordering::Greater);
        assert_eq!(a.cmp_exact(&RealRoot::Rational(q(142, 100))), Ordering::Less);
    }

    #[test]
    fn rational_roots_found_exactly() {
        // t (t - 1/2)... use 2t^2 - t
        let roots = isolate_real_roots(&p(&[0, -1, 2])).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].cmp_exact(&RealRoot::from_integer(0)), Ordering::Equal);
        assert_eq!(roots[1].cmp_exact(&RealRoot::Rational(q(1, 2))), Ordering::Equal);
    }
}
