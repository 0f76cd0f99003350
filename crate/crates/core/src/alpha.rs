//! The rational functions `α_i^G = φ^G/φ^{G∖i}` and
//! `λ_{ij}^G = −(Σ_P φ^{G∖P} / φ^{G∖{i,j}})²`, the contraction identity
//! linking them, and their behaviour at individual real points.
//!
//! Every function here may be taken relative to an induced subgraph, given as
//! a vertex subset of the ambient graph; this is how `α_i^{G∖{v,j}}` and its
//! relatives are formed without relabelling.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::charpoly::charpoly_within;
use crate::cospectral::{check_pair, path_sum_within};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::poly::{squarefree_part, IntPoly};
use crate::ratfunc::RatFunc;
use crate::roots::{root_bound, RealRoot};
use crate::value::{ExtendedValue, ValueKind};

/// `α_i` of the subgraph induced on `within`.
pub fn alpha_within(g: &Graph, within: VertexSet, i: usize) -> Result<RatFunc> {
    g.check_vertex(i)?;
    if !within.contains(i) {
        return Err(Error::Domain(format!("vertex {i} was deleted")));
    }
    RatFunc::new(
        &charpoly_within(g, within),
        &charpoly_within(g, within.minus(VertexSet::singleton(i))),
    )
}

/// `λ_{ij}` of the subgraph induced on `within`.
pub fn lambda_within(g: &Graph, within: VertexSet, i: usize, j: usize) -> Result<RatFunc> {
    check_pair(g, i, j)?;
    if !within.contains(i) || !within.contains(j) {
        return Err(Error::Domain(format!("vertex {i} or {j} was deleted")));
    }
    let s = path_sum_within(g, within, i, j)?;
    let d = charpoly_within(g, within.minus(VertexSet::from_slice(&[i, j])));
    RatFunc::new(&-&(&s * &s), &(&d * &d))
}

fn all_but(g: &Graph, s: &[usize]) -> VertexSet {
    g.vertices().minus(VertexSet::from_slice(s))
}

/// `α_i^G` with its real zeros and poles.
#[derive(Clone, Debug, Serialize)]
pub struct AlphaFunction {
    pub vertex: usize,
    pub value: RatFunc,
    /// Real zeros, increasing. All simple once certified.
    pub zeros: Vec<RealRoot>,
    /// Real poles, increasing. All simple once certified.
    pub poles: Vec<RealRoot>,
}

impl AlphaFunction {
    fn from_ratfunc(vertex: usize, value: RatFunc) -> Self {
        let zeros = value.zeros();
        let poles = value.poles();
        AlphaFunction {
            vertex,
            value,
            zeros,
            poles,
        }
    }
}

/// `α_i^G`, certified: simple zeros and poles, one more zero than poles,
/// strict interlacing.
pub fn alpha(g: &Graph, i: usize) -> Result<AlphaFunction> {
    let a = AlphaFunction::from_ratfunc(i, alpha_within(g, g.vertices(), i)?);
    let shape = alpha_shape(&a);
    if !shape.holds() {
        return Err(Error::Violation(format!(
            "α_{i} = {} fails its branch structure: {shape:?}",
            a.value
        )));
    }
    Ok(a)
}

/// `λ_{ij}^G` in reduced form.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaFunction {
    pub vertices: (usize, usize),
    pub value: RatFunc,
}

impl LambdaFunction {
    /// `(s, d)` with reduced numerator `−s²` and denominator `d²`, if the
    /// square structure holds.
    pub fn square_roots(&self) -> Option<(IntPoly, IntPoly)> {
        let s = (-self.value.num()).sqrt_exact()?;
        let d = self.value.den().sqrt_exact()?;
        Some((s, d))
    }

    /// `λ(θ)`, with poles mapped to `∞`.
    pub fn value_at(&self, theta: &RealRoot) -> ExtendedValue {
        self.value.eval_extended(theta)
    }
}

pub fn lambda(g: &Graph, i: usize, j: usize) -> Result<LambdaFunction> {
    Ok(LambdaFunction {
        vertices: (i, j),
        value: lambda_within(g, g.vertices(), i, j)?,
    })
}

/// Which forms of the contraction identity hold for a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    /// `α_i^G = α_i^{G∖j} + λ/α_j^{G∖i}`.
    pub contraction_i: bool,
    /// `α_j^G = α_j^{G∖i} + λ/α_i^{G∖j}`.
    pub contraction_j: bool,
    /// `λ = α_j^{G∖i}(α_i^G − α_i^{G∖j})`.
    pub product_form_i: bool,
    /// `λ = α_i^{G∖j}(α_j^G − α_j^{G∖i})`.
    pub product_form_j: bool,
    /// `α_i^G α_j^{G∖i} = φ^G/φ^{G∖{i,j}} = α_j^G α_i^{G∖j}`.
    pub ratio_form: bool,
}

impl ContractionReport {
    pub fn holds(&self) -> bool {
        self.contraction_i
            && self.contraction_j
            && self.product_form_i
            && self.product_form_j
            && self.ratio_form
    }
}

/// The contraction identity and its product forms, as exact equalities of
/// reduced rational functions.
pub fn contraction_report(g: &Graph, i: usize, j: usize) -> Result<ContractionReport> {
    check_pair(g, i, j)?;
    let all = g.vertices();
    let ai = alpha_within(g, all, i)?;
    let aj = alpha_within(g, all, j)?;
    let ai_j = alpha_within(g, all_but(g, &[j]), i)?;
    let aj_i = alpha_within(g, all_but(g, &[i]), j)?;
    let lam = lambda_within(g, all, i, j)?;
    let ratio = RatFunc::new(&charpoly_within(g, all), &charpoly_within(g, all_but(g, &[i, j])))?;
    Ok(ContractionReport {
        contraction_i: ai == &ai_j + &(&lam / &aj_i),
        contraction_j: aj == &aj_i + &(&lam / &ai_j),
        product_form_i: lam == &aj_i * &(&ai - &ai_j),
        product_form_j: lam == &ai_j * &(&aj - &aj_i),
        ratio_form: &ai * &aj_i == ratio && &aj * &ai_j == ratio,
    })
}

pub fn contraction_identity_check(g: &Graph, i: usize, j: usize) -> Result<bool> {
    Ok(contraction_report(g, i, j)?.holds())
}

/// Exact structure of an α-function's zeros and poles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaShape {
    pub simple_zeros: bool,
    pub simple_poles: bool,
    pub zero_count: usize,
    pub pole_count: usize,
    /// Zeros and poles strictly alternate, starting and ending with a zero.
    pub interlacing: bool,
}

impl AlphaShape {
    pub fn holds(&self) -> bool {
        self.simple_zeros
            && self.simple_poles
            && self.zero_count == self.pole_count + 1
            && self.interlacing
    }
}

fn is_squarefree(p: &IntPoly) -> bool {
    p.degree() == squarefree_part(p).ok().and_then(|s| s.degree())
}

fn alpha_shape(a: &AlphaFunction) -> AlphaShape {
    let num = a.value.num();
    let den = a.value.den();
    // Every root of a charpoly is real, so the real roots account for the
    // whole degree exactly when they are all simple.
    let simple_zeros = is_squarefree(num) && num.degree() == Some(a.zeros.len());
    let simple_poles = is_squarefree(den) && den.degree() == Some(a.poles.len());
    let mut merged: Vec<(&RealRoot, bool)> = a
        .zeros
        .iter()
        .map(|z| (z, true))
        .chain(a.poles.iter().map(|p| (p, false)))
        .collect();
    merged.sort_by(|x, y| x.0.cmp_exact(y.0));
    let interlacing = merged.iter().enumerate().all(|(k, &(_, is_zero))| is_zero == (k % 2 == 0))
        && merged.len() % 2 == 1
        && merged.windows(2).all(|w| w[0].0.cmp_exact(w[1].0) == Ordering::Less);
    AlphaShape {
        simple_zeros,
        simple_poles,
        zero_count: a.zeros.len(),
        pole_count: a.poles.len(),
        interlacing,
    }
}

/// Structure of an α-function plus sampled lower bounds on its derivative.
#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    #[serde(flatten)]
    pub shape: AlphaShape,
    pub samples: usize,
    /// Smallest derivative value seen, as an exact rational string.
    pub min_derivative: String,
    pub derivative_at_least_one: bool,
}

impl BranchReport {
    pub fn holds(&self) -> bool {
        self.shape.holds() && self.derivative_at_least_one
    }
}

/// `sample_count` rational points spread over an interval containing every
/// zero and pole of `f`, nudged off the poles.
pub(crate) fn sample_points(f: &RatFunc, sample_count: usize) -> Vec<BigRational> {
    let bound = root_bound(f.num()).max(root_bound(f.den())) + BigInt::one();
    let lo = BigRational::from_integer(-&bound);
    let span = BigRational::from_integer(&bound * 2);
    let nudge = BigRational::new(BigInt::one(), BigInt::from(7 * sample_count as u64 + 3));
    (0..sample_count)
        .map(|k| {
            let frac = BigRational::new(BigInt::from(2 * k + 1), BigInt::from(2 * sample_count));
            let mut x = &lo + &span * frac;
            while f.den().sign_at(&x) == Ordering::Equal {
                x += &nudge;
            }
            x
        })
        .collect()
}

/// Exact structural checks plus derivative samples `(α)'(x) ≥ 1`.
pub fn alpha_branch_properties(a: &AlphaFunction, sample_count: usize) -> Result<BranchReport> {
    if sample_count == 0 {
        return Err(Error::Config("sample count must be at least 1".into()));
    }
    let shape = alpha_shape(a);
    let deriv = a.value.derivative();
    let one = BigRational::one();
    let mut min: Option<BigRational> = None;
    for x in sample_points(&a.value, sample_count) {
        let d = deriv
            .eval_rational(&x)
            .expect("a pole of the derivative is a pole of the function");
        if min.as_ref().is_none_or(|m| d < *m) {
            min = Some(d);
        }
    }
    let min = min.expect("at least one sample");
    Ok(BranchReport {
        shape,
        samples: sample_count,
        derivative_at_least_one: min >= one,
        min_derivative: min.to_string(),
    })
}

/// Right side of the contraction identity at `θ` under the extended
/// conventions, checked against the direct value of `α_i^G(θ)`.
///
/// Requires `λ_{ij}^G(θ) ≠ ∞`.
pub fn extended_contraction_eval(
    g: &Graph,
    i: usize,
    j: usize,
    theta: &RealRoot,
) -> Result<ExtendedValue> {
    extended_contraction_within(g, g.vertices(), i, j, theta)
}

pub(crate) fn extended_contraction_within(
    g: &Graph,
    within: VertexSet,
    i: usize,
    j: usize,
    theta: &RealRoot,
) -> Result<ExtendedValue> {
    let lam = lambda_within(g, within, i, j)?.eval_extended(theta);
    if lam.is_infinite() {
        return Err(Error::Precondition(format!(
            "λ_{{{i}{j}}} has a pole at {theta}; the contraction does not apply"
        )));
    }
    let ai_j = alpha_within(g, within.minus(VertexSet::singleton(j)), i)?.eval_extended(theta);
    let aj_i = alpha_within(g, within.minus(VertexSet::singleton(i)), j)?.eval_extended(theta);
    let rhs = ai_j.ext_add(&lam.ext_div(&aj_i)?)?;
    let direct = alpha_within(g, within, i)?.eval_extended(theta);
    if !direct.eq_exact(&rhs)? {
        return Err(Error::Violation(format!(
            "α_{i}({theta}) = {direct} but the contraction gives {rhs}"
        )));
    }
    Ok(rhs)
}

/// At a pole `θ` of `λ_{ij}^G`: both `α_i^{G∖j}` and `α_j^{G∖i}` have a
/// pole there, and a pole of `α_j^G` forces one of `α_i^G`.
pub fn lambda_infinity_check(g: &Graph, i: usize, j: usize, theta: &RealRoot) -> Result<bool> {
    lambda_infinity_within(g, g.vertices(), i, j, theta)
}

pub(crate) fn lambda_infinity_within(
    g: &Graph,
    within: VertexSet,
    i: usize,
    j: usize,
    theta: &RealRoot,
) -> Result<bool> {
    let lam = lambda_within(g, within, i, j)?.eval_extended(theta);
    if !lam.is_infinite() {
        return Err(Error::Precondition(format!(
            "{theta} is not a pole of λ_{{{i}{j}}}"
        )));
    }
    let at = |w: VertexSet, x: usize| -> Result<bool> {
        Ok(alpha_within(g, w, x)?.eval_extended(theta).is_infinite())
    };
    let first = at(within.minus(VertexSet::singleton(j)), i)?
        && at(within.minus(VertexSet::singleton(i)), j)?;
    let second = !at(within, j)? || at(within, i)?;
    Ok(first && second)
}

/// Strong cospectrality read off α-functions: `α_i^G = α_j^G`, and at every
/// real zero of `α_i^{G∖j}` or `α_j^{G∖i}` the common value of `α_i^G` is
/// not zero (a pole is allowed).
pub fn alpha_criterion(g: &Graph, i: usize, j: usize) -> Result<bool> {
    check_pair(g, i, j)?;
    let all = g.vertices();
    let ai = alpha_within(g, all, i)?;
    if ai != alpha_within(g, all, j)? {
        return Ok(false);
    }
    let ai_j = alpha_within(g, all_but(g, &[j]), i)?;
    let aj_i = alpha_within(g, all_but(g, &[i]), j)?;
    for theta in ai_j.zeros().iter().chain(aj_i.zeros().iter()) {
        if ai.eval_extended(theta).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sign class of `λ(θ)`: zero, finite negative or a pole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaBranch {
    Zero,
    FiniteNegative,
    Pole,
}

impl LambdaBranch {
    pub fn of(value: &ExtendedValue) -> Result<Self> {
        match value.kind() {
            ValueKind::Zero => Ok(LambdaBranch::Zero),
            ValueKind::Negative => Ok(LambdaBranch::FiniteNegative),
            ValueKind::Infinite => Ok(LambdaBranch::Pole),
            ValueKind::Positive => Err(Error::Violation(format!("λ took the positive value {value}"))),
        }
    }
}

/// `λ(x) ≤ 0` at sampled rational points off the poles.
pub fn lambda_nonpositive_samples(l: &LambdaFunction, sample_count: usize) -> bool {
    sample_points(&l.value, sample_count).iter().all(|x| {
        l.value
            .eval_rational(x)
            .is_none_or(|v| !v.is_positive())
    })
}
