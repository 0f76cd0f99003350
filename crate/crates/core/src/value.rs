//! Exact real values at rational or algebraic points, and the projective
//! extension by a single unsigned `∞`.
//!
//! The value of a rational function `f` at an algebraic point `θ` is kept
//! symbolically as the pair `(f, θ)`. Arithmetic between values at the same
//! point is arithmetic of rational functions, and a zero test is a gcd with
//! the defining polynomial of `θ`, so every comparison is exact.
//!
//! Arithmetic on [`ExtendedValue`] follows these rules and nothing else:
//! `0/C = 0` for every `C` (including `0` and `∞`), `∞ + C = C + ∞ = ∞`,
//! `C/∞ = 0` for finite `C`, `C/0 = ∞` for `C ∉ {0, ∞}`. Anything else with an
//! `∞` operand (`∞/C`, products, differences) is rejected.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::roots::RealRoot;

/// A finite real number.
#[derive(Clone, Debug)]
pub enum Real {
    Rational(BigRational),
    /// `expr(at)`, where `expr` has no pole at `at`.
    Algebraic { expr: RatFunc, at: RealRoot },
}

impl Real {
    pub fn zero() -> Self {
        Real::Rational(BigRational::zero())
    }

    pub(crate) fn algebraic(expr: RatFunc, at: RealRoot) -> Self {
        match expr.as_constant() {
            Some(c) => Real::Rational(c),
            None => Real::Algebraic { expr, at },
        }
    }

    fn point(&self) -> Option<&RealRoot> {
        match self {
            Real::Rational(_) => None,
            Real::Algebraic { at, .. } => Some(at),
        }
    }

    fn as_expr(&self) -> RatFunc {
        match self {
            Real::Rational(c) => RatFunc::constant(c),
            Real::Algebraic { expr, .. } => expr.clone(),
        }
    }

    /// Combine two values with a rational-function operation.
    fn lift(&self, other: &Real, op: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> Result<Real> {
        let at = match (self.point(), other.point()) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) => {
                if a != b && a.cmp_exact(b) != Ordering::Equal {
                    return Err(Error::Domain(
                        "arithmetic between values at different points".into(),
                    ));
                }
                Some(a)
            }
        };
        let f = op(&self.as_expr(), &other.as_expr());
        Ok(match at {
            None => Real::Rational(f.as_constant().expect("constants stay constant")),
            Some(at) => Real::algebraic(f, at.clone()),
        })
    }

    pub fn sign(&self) -> Ordering {
        match self {
            Real::Rational(c) => c.cmp(&BigRational::zero()),
            Real::Algebraic { expr, at } => {
                let n = at.sign_of(expr.num());
                let d = at.sign_of(expr.den());
                debug_assert_ne!(d, Ordering::Equal, "value at a pole");
                match (n, d) {
                    (Ordering::Equal, _) => Ordering::Equal,
                    (a, b) if a == b => Ordering::Greater,
                    _ => Ordering::Less,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Rational(c) => c.is_zero(),
            Real::Algebraic { expr, at } => at.is_root_of(expr.num()),
        }
    }

    pub fn add(&self, other: &Real) -> Result<Real> {
        self.lift(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Real) -> Result<Real> {
        self.lift(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Real) -> Result<Real> {
        self.lift(other, |a, b| a * b)
    }

    pub fn div(&self, other: &Real) -> Result<Real> {
        if other.is_zero() {
            return Err(Error::UndefinedArithmetic("finite division by zero".into()));
        }
        self.lift(other, |a, b| a / b)
    }

    pub fn eq_exact(&self, other: &Real) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Rational(c) => c.to_f64().unwrap_or(f64::NAN),
            Real::Algebraic { expr, at } => {
                let x = at
                    .refine_to(&BigRational::new(1.into(), num_bigint::BigInt::from(1u64 << 62)))
                    .approx();
                expr.eval_rational(&x)
                    .and_then(|v| v.to_f64())
                    .unwrap_or(f64::NAN)
            }
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rational(c) => write!(f, "{c}"),
            Real::Algebraic { .. } => write!(f, "≈{:.12}", self.to_f64()),
        }
    }
}

/// A real number or the single unsigned point at infinity.
#[derive(Clone, Debug)]
pub enum ExtendedValue {
    Finite(Real),
    Infinity,
}

impl ExtendedValue {
    pub fn zero() -> Self {
        ExtendedValue::Finite(Real::zero())
    }

    pub fn rational(c: BigRational) -> Self {
        ExtendedValue::Finite(Real::Rational(c))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValue::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExtendedValue::Finite(r) => r.is_zero(),
            ExtendedValue::Infinity => false,
        }
    }

    pub fn finite(&self) -> Option<&Real> {
        match self {
            ExtendedValue::Finite(r) => Some(r),
            ExtendedValue::Infinity => None,
        }
    }

    /// `∞ + C = C + ∞ = ∞`; otherwise ordinary addition.
    pub fn ext_add(&self, other: &ExtendedValue) -> Result<ExtendedValue> {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => {
                Ok(ExtendedValue::Finite(a.add(b)?))
            }
            _ => Ok(ExtendedValue::Infinity),
        }
    }

    /// Division under the projective conventions. `∞ / C` is rejected.
    pub fn ext_div(&self, other: &ExtendedValue) -> Result<ExtendedValue> {
        match (self, other) {
            (ExtendedValue::Infinity, ExtendedValue::Infinity) => Err(
                Error::UndefinedArithmetic("∞/∞ is outside the extended conventions".into()),
            ),
            (ExtendedValue::Infinity, _) => Err(Error::UndefinedArithmetic(
                "∞/C is outside the extended conventions".into(),
            )),
            (ExtendedValue::Finite(a), _) if a.is_zero() => Ok(ExtendedValue::zero()),
            (ExtendedValue::Finite(_), ExtendedValue::Infinity) => Ok(ExtendedValue::zero()),
            (ExtendedValue::Finite(_), ExtendedValue::Finite(b)) if b.is_zero() => {
                Ok(ExtendedValue::Infinity)
            }
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => {
                Ok(ExtendedValue::Finite(a.div(b)?))
            }
        }
    }

    /// Exact equality; `∞` equals only itself.
    pub fn eq_exact(&self, other: &ExtendedValue) -> Result<bool> {
        match (self, other) {
            (ExtendedValue::Infinity, ExtendedValue::Infinity) => Ok(true),
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => a.eq_exact(b),
            _ => Ok(false),
        }
    }

    /// Coarse classification used in reports.
    pub fn kind(&self) -> ValueKind {
        match self {
            ExtendedValue::Infinity => ValueKind::Infinite,
            ExtendedValue::Finite(r) => match r.sign() {
                Ordering::Less => ValueKind::Negative,
                Ordering::Equal => ValueKind::Zero,
                Ordering::Greater => ValueKind::Positive,
            },
        }
    }
}

/// Exact equality; panics only if the two values live at different
/// algebraic points, which callers never mix.
impl PartialEq for ExtendedValue {
    fn eq(&self, other: &Self) -> bool {
        self.eq_exact(other).expect("values at the same point")
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(r) => write!(f, "{r}"),
            ExtendedValue::Infinity => f.write_str("∞"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    Negative,
    Zero,
    Positive,
    Infinite,
}

#[derive(Serialize)]
struct ValueDump {
    kind: ValueKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx: Option<f64>,
}

/// JSON shape: `{"kind": "...", "exact": "p/q"}` for rationals,
/// `{"kind": "...", "approx": x}` for algebraic values, `{"kind": "infinite"}`.
impl Serialize for ExtendedValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let kind = self.kind();
        let dump = match self {
            ExtendedValue::Infinity => ValueDump {
                kind,
                exact: None,
                approx: None,
            },
            ExtendedValue::Finite(Real::Rational(c)) => ValueDump {
                kind,
                exact: Some(c.to_string()),
                approx: None,
            },
            ExtendedValue::Finite(r) => ValueDump {
                kind,
                exact: None,
                approx: Some(r.to_f64()),
            },
        };
        dump.serialize(s)
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExtendedValue::Finite(self.clone()).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPoly;
    use crate::roots::isolate_real_roots;

    fn q(n: i64, d: i64) -> ExtendedValue {
        ExtendedValue::rational(BigRational::new(n.into(), d.into()))
    }

    const INF: ExtendedValue = ExtendedValue::Infinity;

    #[test]
    fn zero_over_anything_is_zero() {
        assert_eq!(q(0, 1).ext_div(&q(3, 1)).unwrap(), q(0, 1));
        assert_eq!(q(0, 1).ext_div(&q(0, 1)).unwrap(), q(0, 1));
        assert_eq!(q(0, 1).ext_div(&INF).unwrap(), q(0, 1));
    }

    #[test]
    fn infinity_absorbs_addition() {
        assert_eq!(INF.ext_add(&q(2, 1)).unwrap(), INF);
        assert_eq!(q(2, 1).ext_add(&INF).unwrap(), INF);
        assert_eq!(INF.ext_add(&INF).unwrap(), INF);
    }

    #[test]
    fn finite_over_infinity_is_zero() {
        assert_eq!(q(-5, 3).ext_div(&INF).unwrap(), q(0, 1));
    }

    #[test]
    fn nonzero_over_zero_is_infinity() {
        assert_eq!(q(-1, 1).ext_div(&q(0, 1)).unwrap(), INF);
    }

    #[test]
    fn ordinary_division() {
        assert_eq!(q(3, 4).ext_div(&q(-1, 2)).unwrap(), q(-3, 2));
        assert_eq!(q(1, 2).ext_add(&q(1, 3)).unwrap(), q(5, 6));
    }

    #[test]
    fn out_of_convention_cases_rejected() {
        assert!(matches!(INF.ext_div(&INF), Err(Error::UndefinedArithmetic(_))));
        assert!(matches!(INF.ext_div(&q(1, 1)), Err(Error::UndefinedArithmetic(_))));
        assert!(matches!(INF.ext_div(&q(0, 1)), Err(Error::UndefinedArithmetic(_))));
    }

    #[test]
    fn algebraic_values_compare_exactly() {
        let sqrt2 = isolate_real_roots(&IntPoly::from_i64(&[-2, 0, 1])).unwrap()[1].clone();
        let t = RatFunc::from_poly(IntPoly::t());
        let two_over_t =
            RatFunc::new(&IntPoly::from_i64(&[2]), &IntPoly::t()).unwrap();
        let a = t.eval_extended(&sqrt2);
        let b = two_over_t.eval_extended(&sqrt2);
        // sqrt2 == 2/sqrt2
        assert_eq!(a, b);
        assert_eq!(a.kind(), ValueKind::Positive);
        let diff = a.finite().unwrap().sub(&Real::Rational(BigRational::new(7.into(), 5.into())));
        assert_eq!(diff.unwrap().sign(), Ordering::Greater);
        // t^2 - 2 at sqrt2 is exactly zero
        let f = RatFunc::from_poly(IntPoly::from_i64(&[-2, 0, 1]));
        assert!(f.eval_extended(&sqrt2).is_zero());
        // 1/(t^2-2) has a pole there
        assert!(f.recip().unwrap().eval_extended(&sqrt2).is_infinite());
    }

    #[test]
    fn negative_algebraic_sign() {
        let r = isolate_real_roots(&IntPoly::from_i64(&[-2, 0, 1])).unwrap()[0].clone();
        let v = RatFunc::from_poly(IntPoly::t()).eval_extended(&r);
        assert_eq!(v.kind(), ValueKind::Negative);
        let w = RatFunc::new(&IntPoly::from_i64(&[1]), &IntPoly::from_i64(&[3, 1])).unwrap();
        // 1/(t+3) at -sqrt2 is positive
        assert_eq!(w.eval_extended(&r).kind(), ValueKind::Positive);
    }
}
