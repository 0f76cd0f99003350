//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored lowest degree first. The representation is
//! canonical: no trailing zero coefficient is ever stored, so the zero
//! polynomial is the empty vector and structural equality is polynomial
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly { coeffs: vec![c] }.normalize()
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPoly { coeffs }.normalize()
    }

    /// `t - a`.
    pub fn linear_root(a: i64) -> Self {
        IntPoly::from_i64(&[-a, 1])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        IntPoly { coeffs }.normalize()
    }

    /// Convenience constructor, lowest degree first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`; callers guarantee exactness.
    pub fn div_scalar(&self, c: &BigInt) -> IntPoly {
        debug_assert!(self.coeffs.iter().all(|a| (a % c).is_zero()));
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a / c).collect())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Value at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let (num, den) = (x.numer(), x.denom());
        BigRational::new(self.eval_homogeneous(num, den), den.pow(self.coeffs.len().saturating_sub(1) as u32))
    }

    /// `den^deg * p(num/den)`, an integer with the sign of `p(num/den)` when
    /// `den > 0`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &dpow;
            dpow *= den;
        }
        acc
    }

    /// Sign of the value at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        // BigRational keeps a positive denominator.
        self.eval_homogeneous(x.numer(), x.denom()).sign().into_ordering()
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero(), "pseudo-remainder by zero polynomial");
        let dd = d.degree().unwrap();
        let mut r = self.clone();
        let lc = d.leading();
        let mut steps = match self.degree() {
            Some(da) if da >= dd => da - dd + 1,
            _ => return r,
        };
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading();
            let shift = dr - dd;
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (k, c) in d.coeffs.iter().enumerate() {
                next[k + shift] -= &lr * c;
            }
            r = IntPoly::from_coeffs(next);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&lc.pow(steps as u32));
        }
        r
    }

    /// Exact quotient over the integers, or `None` if `d` does not divide
    /// `self` in `Z[t]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        let dd = d.degree().unwrap();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return Some(IntPoly::zero());
        };
        if da < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); da - dd + 1];
        for k in (0..=da - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (quo, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (m, c) in d.coeffs.iter().enumerate() {
                r[k + m] -= &quo * c;
            }
            q[k] = quo;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPoly::from_coeffs(q))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Square root in `Z[t]` if `self` is the square of an integer
    /// polynomial; the root returned has a non-negative leading coefficient.
    pub fn sqrt_exact(&self) -> Option<IntPoly> {
        let Some(d) = self.degree() else {
            return Some(IntPoly::zero());
        };
        if d % 2 == 1 || self.leading().is_negative() {
            return None;
        }
        let m = d / 2;
        let lead = self.leading();
        let r = lead.sqrt();
        if &r * &r != lead {
            return None;
        }
        let two_r = &r * 2;
        let mut q = vec![BigInt::zero(); m + 1];
        q[m] = r;
        for k in 1..=m {
            // coefficient of t^(2m-k) in q^2, excluding the two 2*q_m*q_(m-k) terms
            let target = 2 * m - k;
            let mut acc = BigInt::zero();
            for a in (m - k + 1)..m {
                acc += &q[a] * &q[target - a];
            }
            let rest = self.coeff(target) - acc;
            let (quo, rem) = rest.div_rem(&two_r);
            if !rem.is_zero() {
                return None;
            }
            q[m - k] = quo;
        }
        let root = IntPoly::from_coeffs(q);
        (&root * &root == *self).then_some(root)
    }

    /// Render with a chosen variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }

    /// Coefficients as decimal strings, lowest degree first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Serialized as a degree-ascending array of decimal strings.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut c = long.coeffs.clone();
        for (a, b) in c.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::from_coeffs(c)
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

trait SignOrdering {
    fn into_ordering(self) -> Ordering;
}

impl SignOrdering for Sign {
    fn into_ordering(self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

/// Primitive gcd with positive leading coefficient, via the subresultant
/// polynomial remainder sequence.
pub fn poly_gcd(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::Domain("gcd of two zero polynomials".into()));
    }
    if p.is_zero() {
        return Ok(q.primitive_part());
    }
    if q.is_zero() {
        return Ok(p.primitive_part());
    }
    let (mut a, mut b) = if p.degree() >= q.degree() {
        (p.primitive_part(), q.primitive_part())
    } else {
        (q.primitive_part(), p.primitive_part())
    };
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return Ok(b.primitive_part());
        }
        if r.is_constant() {
            return Ok(IntPoly::one());
        }
        let divisor = &g * h.pow(delta as u32);
        a = b;
        b = r.div_scalar(&divisor);
        g = a.leading();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32) / h.pow(delta as u32 - 1)
        };
    }
}

/// `p / gcd(p, p')`: same roots as `p`, each with multiplicity one.
/// Returned primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() {
        return Err(Error::Domain("squarefree part of the zero polynomial".into()));
    }
    if p.is_constant() {
        return Ok(IntPoly::one());
    }
    let g = poly_gcd(p, &p.derivative())?;
    Ok(p
        .primitive_part()
        .div_exact(&g)
        .expect("gcd divides its argument")
        .primitive_part())
}

/// Yun's squarefree decomposition: primitive, pairwise coprime, squarefree
/// factors `f_k` with `p = c * prod f_k^k`. Constant factors are omitted.
pub fn squarefree_decomposition(p: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::Domain("squarefree decomposition of zero".into()));
    }
    let p = p.primitive_part();
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let a0 = poly_gcd(&p, &dp)?;
    let mut b = p.div_exact(&a0).expect("gcd divides p");
    let mut c = dp.div_exact(&a0).expect("gcd divides p'");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut k = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d)?;
        if !a.is_constant() {
            out.push((a.clone(), k));
        }
        b = b.div_exact(&a).expect("gcd divides b");
        c = d.div_exact(&a).expect("gcd divides d");
        d = &c - &b.derivative();
        k += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_zero() {
        assert_eq!(p(&[0, 0, 0]), IntPoly::zero());
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), IntPoly::zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, -2, 0, 1]).to_string(), "t^3 - 2t");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "t^2 - 1");
        assert_eq!(p(&[3]).to_string(), "3");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }

    #[test]
    fn evaluation() {
        let f = p(&[-1, 0, 1]);
        assert_eq!(f.eval(&q(2, 1)), q(3, 1));
        assert_eq!(f.eval(&q(1, 2)), q(-3, 4));
        assert_eq!(f.sign_at(&q(1, 3)), Ordering::Less);
        assert_eq!(f.sign_at(&q(-1, 1)), Ordering::Equal);
        assert_eq!(p(&[5]).eval(&q(7, 3)), q(5, 1));
        assert_eq!(IntPoly::zero().eval(&q(7, 3)), q(0, 1));
        // 2t^3 - t + 1 at -3/2
        assert_eq!(p(&[1, -1, 0, 2]).eval(&q(-3, 2)), q(-17, 4));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[0, -2, 0, 1]), &p(&[-1, 0, 1])).unwrap(), IntPoly::one());
        assert_eq!(poly_gcd(&p(&[0, -4, 0, 2]), &IntPoly::zero()).unwrap(), p(&[0, -2, 0, 1]));
        assert_eq!(poly_gcd(&p(&[2, -2]), &IntPoly::zero()).unwrap(), p(&[-1, 1]));
        assert!(poly_gcd(&IntPoly::zero(), &IntPoly::zero()).is_err());
    }

    #[test]
    fn squarefree_examples() {
        // (t-1)^2 (t+2) = t^3 - 3t + 2
        let f = p(&[2, -3, 0, 1]);
        assert_eq!(squarefree_part(&f).unwrap(), &p(&[-1, 1]) * &p(&[2, 1]));
        // already squarefree
        let g = p(&[0, -2, 0, 1]);
        assert_eq!(squarefree_part(&g).unwrap(), g);
        // K3: t^3 - 3t - 2 = (t-2)(t+1)^2
        let k3 = p(&[-2, -3, 0, 1]);
        assert_eq!(squarefree_part(&k3).unwrap(), &p(&[-2, 1]) * &p(&[1, 1]));
        assert!(squarefree_part(&IntPoly::zero()).is_err());
    }

    #[test]
    fn yun_decomposition() {
        // (t-2) (t+1)^2 t^3
        let f = &(&p(&[-2, 1]) * &p(&[1, 1]).pow(2)) * &IntPoly::t().pow(3);
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(d, vec![(p(&[-2, 1]), 1), (p(&[1, 1]), 2), (IntPoly::t(), 3)]);
    }

    #[test]
    fn exact_division() {
        let f = &p(&[1, 1]) * &p(&[-3, 0, 2]);
        assert_eq!(f.div_exact(&p(&[1, 1])), Some(p(&[-3, 0, 2])));
        assert_eq!(f.div_exact(&p(&[-3, 0, 2])), Some(p(&[1, 1])));
        assert_eq!(f.div_exact(&p(&[2, 1])), None);
        // divisible over Q but not over Z
        assert_eq!(p(&[1, 1]).div_exact(&p(&[2, 2])), None);
    }

    #[test]
    fn square_roots() {
        let s = p(&[3, -1, 0, 2]);
        assert_eq!((&s * &s).sqrt_exact(), Some(s.clone()));
        assert_eq!((-&s * -&s).sqrt_exact(), Some(s));
        assert_eq!(p(&[-1, 0, 1]).sqrt_exact(), None);
        assert_eq!(p(&[1, 2, 2]).sqrt_exact(), None);
        assert_eq!(p(&[9]).sqrt_exact(), Some(p(&[3])));
        assert_eq!(p(&[-4]).sqrt_exact(), None);
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p(&[1, 2, 3, 4, 5]);
        let d = p(&[1, 0, 3]);
        let r = a.pseudo_rem(&d);
        // lc(d)^3 a - r must be divisible by d
        let lhs = &a.scale(&BigInt::from(27)) - &r;
        assert!(d.divides(&lhs));
        assert!(r.degree() < d.degree());
    }

    /// Euclid over the rationals: a second gcd route used only in tests.
    fn rational_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
        type Q = BigRational;
        fn to_q(p: &IntPoly) -> Vec<Q> {
            p.coeffs().iter().map(|c| Q::from(c.clone())).collect()
        }
        fn trim(v: &mut Vec<Q>) {
            while v.last().is_some_and(Zero::is_zero) {
                v.pop();
            }
        }
        fn rem(a: &[Q], b: &[Q]) -> Vec<Q> {
            let mut r = a.to_vec();
            while r.len() >= b.len() {
                let f = r.last().unwrap() / b.last().unwrap();
                let s = r.len() - b.len();
                for (k, c) in b.iter().enumerate() {
                    r[s + k] -= &f * c;
                }
                r.pop();
                trim(&mut r);
            }
            r
        }
        let (mut x, mut y) = (to_q(a), to_q(b));
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        // clear denominators and take the primitive part
        let l = x.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPoly::from_coeffs(x.iter().map(|c| (c * Q::from(l.clone())).to_integer()).collect())
            .primitive_part()
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-6i64..=6, 0..6).prop_map(|v| IntPoly::from_i64(&v))
    }

    proptest! {
        #[test]
        fn gcd_agrees_with_rational_euclid(a in small_poly(), b in small_poly(), c in small_poly()) {
            // multiply in a common factor so gcds are often nontrivial
            let (a, b) = (&a * &c, &b * &c);
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = poly_gcd(&a, &b).unwrap();
            prop_assert!(g.divides(&a) || a.is_zero());
            prop_assert!(g.divides(&b) || b.is_zero());
            prop_assert_eq!(g, rational_gcd(&a, &b));
        }

        #[test]
        fn squarefree_part_is_coprime_to_derivative(a in small_poly(), b in small_poly()) {
            let f = &(&a * &a) * &b;
            prop_assume!(!f.is_zero());
            let s = squarefree_part(&f).unwrap();
            prop_assert!(poly_gcd(&s, &s.derivative()).unwrap().is_constant() || s.is_constant());
            // same roots: s divides f and f divides a power of s
            prop_assert!(s.divides(&f.primitive_part()));
        }

        #[test]
        fn yun_multiplies_back(a in small_poly(), b in small_poly()) {
            let f = &(&a * &a) * &(&b * &a);
            prop_assume!(!f.is_zero());
            let mut prod = IntPoly::one();
            for (fk, k) in squarefree_decomposition(&f).unwrap() {
                prod = &prod * &fk.pow(k as u32);
            }
            prop_assert_eq!(prod.primitive_part(), f.primitive_part());
        }

        #[test]
        fn square_root_of_square(a in small_poly()) {
            let sq = &a * &a;
            let r = sq.sqrt_exact().unwrap();
            prop_assert_eq!(&r * &r, sq);
        }
    }
}
