//! Reduced rational functions with integer polynomial numerator and
//! denominator.
//!
//! Canonical form: `num` and `den` coprime over `Q[t]`, the integer contents
//! of `num` and `den` jointly coprime, and `den` with a positive leading
//! coefficient. Zero is `0/1`. Equality of canonical forms is equality of
//! functions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{poly_gcd, IntPoly};
use crate::roots::{isolate_real_roots, RealRoot};
use crate::value::{ExtendedValue, Real};

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

/// Reduce `num / den` to canonical form.
pub fn ratfunc_reduce(num: &IntPoly, den: &IntPoly) -> Result<RatFunc> {
    RatFunc::new(num, den)
}

impl RatFunc {
    pub fn new(num: &IntPoly, den: &IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = poly_gcd(num, den)?;
        let mut n = num.div_exact(&g).expect("gcd divides numerator");
        let mut d = den.div_exact(&g).expect("gcd divides denominator");
        let mut c = n.content().gcd(&d.content());
        if d.leading().is_negative() {
            c = -c;
        }
        n = n.div_scalar(&c);
        d = d.div_scalar(&c);
        Ok(RatFunc { num: n, den: d })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(IntPoly::one())
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn constant(c: &BigRational) -> Self {
        RatFunc::new(
            &IntPoly::constant(c.numer().clone()),
            &IntPoly::constant(c.denom().clone()),
        )
        .expect("nonzero denominator")
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.num.is_constant() && self.den.is_constant())
            .then(|| BigRational::new(self.num.coeff(0), self.den.coeff(0)))
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(&self.den, &self.num)
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(&n, &(&self.den * &self.den)).expect("nonzero denominator")
    }

    /// Real zeros of the reduced form, increasing.
    pub fn zeros(&self) -> Vec<RealRoot> {
        if self.num.is_zero() {
            return Vec::new();
        }
        isolate_real_roots(&self.num).expect("nonzero numerator")
    }

    /// Real poles of the reduced form, increasing.
    pub fn poles(&self) -> Vec<RealRoot> {
        isolate_real_roots(&self.den).expect("nonzero denominator")
    }

    /// Exact value at a rational point; `None` at a pole.
    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Value at a real point, with poles mapped to `Infinity`.
    pub fn eval_extended(&self, theta: &RealRoot) -> ExtendedValue {
        match theta {
            RealRoot::Rational(x) => match self.eval_rational(x) {
                Some(v) => ExtendedValue::Finite(Real::Rational(v)),
                None => ExtendedValue::Infinity,
            },
            RealRoot::Isolated(_) => {
                if theta.is_root_of(&self.den) {
                    ExtendedValue::Infinity
                } else if theta.is_root_of(&self.num) {
                    ExtendedValue::Finite(Real::zero())
                } else if let Some(c) = self.as_constant() {
                    ExtendedValue::Finite(Real::Rational(c))
                } else {
                    ExtendedValue::Finite(Real::algebraic(self.clone(), theta.clone()))
                }
            }
        }
    }
}

/// Value of a reduced rational function at a point; poles give `Infinity`.
pub fn ratfunc_eval_extended(f: &RatFunc, theta: &RealRoot) -> ExtendedValue {
    f.eval_extended(theta)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc[{self}]")
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(&n, &(&self.den * &rhs.den)).expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &rhs.num), &(&self.den * &rhs.den))
            .expect("nonzero denominator")
    }
}

/// Panics on division by the zero function.
impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &rhs.den), &(&self.den * &rhs.num))
            .expect("division by the zero rational function")
    }
}
