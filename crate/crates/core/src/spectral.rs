//! High-precision spectral decomposition and the numeric strong-cospectrality
//! test.
//!
//! Eigenpairs come from cyclic Jacobi rotations in binary floating point at
//! `precision + 32` bits. Multiplicities are never inferred from the floats:
//! the distinct eigenvalues and their multiplicities are read off the
//! squarefree decomposition of the characteristic polynomial, and the sorted
//! float eigenvalues must cluster into exactly that multiset at tolerance
//! `2^{-precision/2}`, or the decomposition is refused.
//!
//! Projector entries can also be computed without any eigenvectors, as
//! residues of `φ^{G∖i}/φ^G` and `Σ_P φ^{G∖P}/φ^G` at a simple pole. These are
//! exact algebraic numbers and give an independent check on the Jacobi route.

use std::cmp::Ordering;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::charpoly::{charpoly, charpoly_within};
use crate::cospectral::{check_pair, path_sum_poly};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::poly::{squarefree_decomposition, IntPoly};
use crate::ratfunc::RatFunc;
use crate::roots::{isolate_real_roots, RealRoot};
use crate::value::Real;

/// Binary floating point with round-half-even.
pub type Float = FBig<HalfEven, 2>;

pub const DEFAULT_PRECISION: usize = 128;
pub const MAX_PRECISION: usize = 1024;
const GUARD_BITS: usize = 32;
const MAX_SWEEPS: usize = 200;

fn bigint_to_ibig(x: &BigInt) -> IBig {
    let (sign, bytes) = x.to_bytes_le();
    let mag = IBig::from(UBig::from_le_bytes(&bytes));
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

fn int(x: i64, prec: usize) -> Float {
    Float::from(x).with_precision(prec).value()
}

/// `2^e` at the given precision.
fn pow2(e: isize, prec: usize) -> Float {
    Float::from_parts(IBig::from(1), e).with_precision(prec).value()
}

pub fn rational_to_float(q: &BigRational, prec: usize) -> Float {
    let n = Float::from(bigint_to_ibig(q.numer())).with_precision(prec).value();
    let d = Float::from(bigint_to_ibig(q.denom())).with_precision(prec).value();
    n / d
}

/// A real root to `prec` bits.
pub fn root_to_float(r: &RealRoot, prec: usize) -> Float {
    let width = BigRational::new(BigInt::one(), BigInt::one() << (prec + 8));
    rational_to_float(&r.refine_to(&width).approx(), prec)
}

/// An exact real to `prec` bits.
pub fn real_to_float(x: &Real, prec: usize) -> Float {
    match x {
        Real::Rational(q) => rational_to_float(q, prec),
        Real::Algebraic { expr, at } => {
            // The point is refined far past the target so that the
            // evaluation error stays below 2^-prec for desk-scale inputs.
            let width = BigRational::new(BigInt::one(), BigInt::one() << (2 * prec + 64));
            let t = at.refine_to(&width).approx();
            let v = expr
                .eval_rational(&t)
                .expect("no pole at the refined point");
            rational_to_float(&v, prec)
        }
    }
}

fn abs(x: &Float) -> Float {
    if x.sign() == dashu_int::Sign::Negative {
        -x
    } else {
        x.clone()
    }
}

/// Decimal rendering of a float with `prec` significant bits.
pub fn float_to_string(x: &Float) -> String {
    x.to_decimal().value().to_string()
}

fn float_to_f64(x: &Float) -> f64 {
    x.to_f64().value()
}

/// Distinct eigenvalues with multiplicities, decreasing, from exact data.
pub fn exact_spectrum(g: &Graph) -> Vec<(RealRoot, usize)> {
    let phi = charpoly(g);
    if phi.is_constant() {
        return Vec::new();
    }
    let mut out: Vec<(RealRoot, usize)> = squarefree_decomposition(&phi)
        .expect("charpoly is nonzero")
        .into_iter()
        .flat_map(|(f, m)| {
            isolate_real_roots(&f)
                .expect("nonzero factor")
                .into_iter()
                .map(move |r| (r, m))
        })
        .collect();
    out.sort_by(|a, b| b.0.cmp_exact(&a.0));
    out
}

#[derive(Clone, Debug)]
pub struct Eigenvalue {
    pub exact: RealRoot,
    pub multiplicity: usize,
    pub value: Float,
}

#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub precision_bits: usize,
    /// `2^{-precision_bits/2}`.
    pub tolerance: Float,
    /// Decreasing.
    pub eigenvalues: Vec<Eigenvalue>,
    /// `projectors[r]` is the `n × n` projector onto the `r`-th eigenspace.
    pub projectors: Vec<Vec<Vec<Float>>>,
}

/// Largest deviations from the projector identities.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantErrors {
    pub resolution_of_identity: f64,
    pub idempotence: f64,
    pub orthogonality: f64,
    pub reconstruction: f64,
    pub within_tolerance: bool,
}

fn mat_mul(a: &[Vec<Float>], b: &[Vec<Float>], prec: usize) -> Vec<Vec<Float>> {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).fold(int(0, prec), |acc, k| acc + &a[r][k] * &b[k][c]))
                .collect()
        })
        .collect()
}

fn max_abs_diff(a: &[Vec<Float>], b: &[Vec<Float>], prec: usize) -> Float {
    let mut m = int(0, prec);
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            let d = abs(&(x - y));
            if d > m {
                m = d;
            }
        }
    }
    m
}

impl SpectralDecomposition {
    fn working(&self) -> usize {
        self.precision_bits + GUARD_BITS
    }

    pub fn order(&self) -> usize {
        self.projectors.first().map_or(0, Vec::len)
    }

    pub fn entry(&self, r: usize, a: usize, b: usize) -> &Float {
        &self.projectors[r][a][b]
    }

    /// Check `Σ E_r = I`, `E_r² = E_r`, `E_r E_s = 0`, `Σ θ_r E_r = A`.
    pub fn check_invariants(&self, g: &Graph) -> InvariantErrors {
        let w = self.working();
        let n = self.order();
        let zero = || vec![vec![int(0, w); n]; n];
        let ident: Vec<Vec<Float>> = (0..n)
            .map(|r| (0..n).map(|c| int((r == c) as i64, w)).collect())
            .collect();
        let adj: Vec<Vec<Float>> = (0..n)
            .map(|r| (0..n).map(|c| int(g.has_edge(r, c) as i64, w)).collect())
            .collect();
        let mut sum = zero();
        let mut recon = zero();
        let mut idem = int(0, w);
        let mut orth = int(0, w);
        for (r, e) in self.projectors.iter().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    sum[a][b] = &sum[a][b] + &e[a][b];
                    recon[a][b] = &recon[a][b] + &self.eigenvalues[r].value * &e[a][b];
                }
            }
            let d = max_abs_diff(&mat_mul(e, e, w), e, w);
            if d > idem {
                idem = d;
            }
            for f in &self.projectors[r + 1..] {
                let d = max_abs_diff(&mat_mul(e, f, w), &zero(), w);
                if d > orth {
                    orth = d;
                }
            }
        }
        let res = max_abs_diff(&sum, &ident, w);
        let rec = max_abs_diff(&recon, &adj, w);
        let within = [&res, &idem, &orth, &rec].iter().all(|x| **x < self.tolerance);
        InvariantErrors {
            resolution_of_identity: float_to_f64(&res),
            idempotence: float_to_f64(&idem),
            orthogonality: float_to_f64(&orth),
            reconstruction: float_to_f64(&rec),
            within_tolerance: within,
        }
    }

    pub fn dump(&self) -> DecompositionDump {
        DecompositionDump {
            precision_bits: self.precision_bits,
            eigenvalues: self
                .eigenvalues
                .iter()
                .map(|e| EigenvalueDump {
                    value: float_to_string(&e.value),
                    multiplicity: e.multiplicity,
                })
                .collect(),
            projectors: self
                .projectors
                .iter()
                .map(|e| {
                    e.iter()
                        .map(|row| row.iter().map(float_to_string).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueDump {
    pub value: String,
    pub multiplicity: usize,
}

/// JSON shape of a decomposition; numbers are decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionDump {
    pub precision_bits: usize,
    pub eigenvalues: Vec<EigenvalueDump>,
    pub projectors: Vec<Vec<Vec<String>>>,
}

/// Eigenvalues (diagonal) and eigenvectors (columns of `v`) of a symmetric
/// 0/1 matrix by cyclic Jacobi rotations.
fn jacobi(g: &Graph, prec: usize) -> (Vec<Float>, Vec<Vec<Float>>) {
    let n = g.order();
    let mut a: Vec<Vec<Float>> = (0..n)
        .map(|r| (0..n).map(|c| int(g.has_edge(r, c) as i64, prec)).collect())
        .collect();
    let mut v: Vec<Vec<Float>> = (0..n)
        .map(|r| (0..n).map(|c| int((r == c) as i64, prec)).collect())
        .collect();
    let eps = pow2(-(prec as isize) + 4, prec);
    let one = int(1, prec);
    let two = int(2, prec);
    for _ in 0..MAX_SWEEPS {
        let mut off = int(0, prec);
        for p in 0..n {
            for q in p + 1..n {
                let x = abs(&a[p][q]);
                if x > off {
                    off = x;
                }
            }
        }
        if off <= eps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if abs(&a[p][q]) <= eps {
                    continue;
                }
                let theta = (&a[q][q] - &a[p][p]) / (&two * &a[p][q]);
                let root = (&theta * &theta + &one).sqrt();
                let t = if theta.sign() == dashu_int::Sign::Negative {
                    -(&one / (abs(&theta) + &root))
                } else {
                    &one / (abs(&theta) + &root)
                };
                let c = &one / (&t * &t + &one).sqrt();
                let s = &t * &c;
                for k in 0..n {
                    let akp = a[k][p].clone();
                    let akq = a[k][q].clone();
                    a[k][p] = &c * &akp - &s * &akq;
                    a[k][q] = &s * &akp + &c * &akq;
                }
                for k in 0..n {
                    let apk = a[p][k].clone();
                    let aqk = a[q][k].clone();
                    a[p][k] = &c * &apk - &s * &aqk;
                    a[q][k] = &s * &apk + &c * &aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p].clone();
                    let vq = row[q].clone();
                    row[p] = &c * &vp - &s * &vq;
                    row[q] = &s * &vp + &c * &vq;
                }
            }
        }
    }
    ((0..n).map(|k| a[k][k].clone()).collect(), v)
}

/// Spectral decomposition at `precision_bits`, validated against exact
/// multiplicities.
pub fn eigendecompose(g: &Graph, precision_bits: usize) -> Result<SpectralDecomposition> {
    if precision_bits < 64 {
        return Err(Error::Config(format!(
            "precision must be at least 64 bits, got {precision_bits}"
        )));
    }
    let w = precision_bits + GUARD_BITS;
    let tol = pow2(-((precision_bits / 2) as isize), w);
    let n = g.order();
    let exact = exact_spectrum(g);
    let (vals, vecs) = jacobi(g, w);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| vals[y].partial_cmp(&vals[x]).unwrap_or(Ordering::Equal));

    // Float clusters by gap, compared with the exact multiplicities.
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &k in &order {
        match clusters.last_mut() {
            Some(c) if abs(&(&vals[*c.last().unwrap()] - &vals[k])) <= tol => c.push(k),
            _ => clusters.push(vec![k]),
        }
    }
    let sizes: Vec<usize> = clusters.iter().map(Vec::len).collect();
    let expected: Vec<usize> = exact.iter().map(|e| e.1).collect();
    if sizes != expected {
        return Err(Error::Precision(format!(
            "float clusters {sizes:?} disagree with exact multiplicities {expected:?} \
             at {precision_bits} bits; retry at higher precision"
        )));
    }
    let mut eigenvalues = Vec::with_capacity(exact.len());
    let mut projectors = Vec::with_capacity(exact.len());
    for ((root, mult), cluster) in exact.into_iter().zip(&clusters) {
        let value = root_to_float(&root, w);
        for &k in cluster {
            if abs(&(&vals[k] - &value)) > tol {
                return Err(Error::Precision(format!(
                    "float eigenvalue {} is not within tolerance of {root}",
                    float_to_string(&vals[k])
                )));
            }
        }
        let e: Vec<Vec<Float>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        cluster
                            .iter()
                            .fold(int(0, w), |acc, &k| acc + &vecs[a][k] * &vecs[b][k])
                    })
                    .collect()
            })
            .collect();
        eigenvalues.push(Eigenvalue {
            exact: root,
            multiplicity: mult,
            value,
        });
        projectors.push(e);
    }
    Ok(SpectralDecomposition {
        precision_bits,
        tolerance: tol,
        eigenvalues,
        projectors,
    })
}

/// [`eigendecompose`] with precision doubling on cluster ambiguity, up to
/// [`MAX_PRECISION`].
pub fn eigendecompose_escalating(g: &Graph, precision_bits: usize) -> Result<SpectralDecomposition> {
    let mut p = precision_bits;
    loop {
        match eigendecompose(g, p) {
            Err(Error::Precision(_)) if p * 2 <= MAX_PRECISION => p *= 2,
            other => return other,
        }
    }
}

/// Residue of `f` at a simple pole `θ`; `0` if `θ` is not a pole.
fn residue(f: &RatFunc, theta: &RealRoot) -> Result<Real> {
    if !theta.is_root_of(f.den()) {
        return Ok(Real::zero());
    }
    let order = squarefree_decomposition(f.den())?
        .into_iter()
        .find(|(factor, _)| theta.is_root_of(factor))
        .map(|(_, m)| m)
        .expect("θ is a root of some factor");
    if order > 1 {
        return Err(Error::InfiniteEntry(format!(
            "pole of order {order} at {theta}"
        )));
    }
    let r = RatFunc::new(f.num(), &f.den().derivative())?;
    Ok(r.eval_extended(theta)
        .finite()
        .cloned()
        .expect("simple root keeps the derivative nonzero"))
}

fn eigenvalue(g: &Graph, r: usize) -> Result<RealRoot> {
    exact_spectrum(g)
        .into_iter()
        .nth(r)
        .map(|e| e.0)
        .ok_or_else(|| Error::Domain(format!("eigenvalue index {r} out of range")))
}

/// `(E_r)_{ii}` as the residue of `φ^{G∖i}/φ^G` at `θ_r` (eigenvalues in
/// decreasing order).
pub fn projector_entry_diag(g: &Graph, i: usize, r: usize) -> Result<Real> {
    g.check_vertex(i)?;
    let theta = eigenvalue(g, r)?;
    let f = RatFunc::new(
        &charpoly_within(g, g.vertices().minus(VertexSet::singleton(i))),
        &charpoly(g),
    )?;
    residue(&f, &theta)
}

/// `(E_r)_{ij}` as the residue of `Σ_P φ^{G∖P}/φ^G` at `θ_r`; the sign comes
/// from the exact path-sum polynomial.
pub fn projector_entry_offdiag(g: &Graph, i: usize, j: usize, r: usize) -> Result<Real> {
    check_pair(g, i, j)?;
    let theta = eigenvalue(g, r)?;
    let f = RatFunc::new(&path_sum_poly(g, i, j)?, &charpoly(g))?;
    residue(&f, &theta)
}

fn nth_derivative(p: &IntPoly, k: usize) -> IntPoly {
    (0..k).fold(p.clone(), |q, _| q.derivative())
}

/// Every projector from resolvent residues, without eigenvectors.
///
/// `(tI − A)^{-1}_{ab} = N_ab/φ^G` with `N_aa = φ^{G∖a}` and `N_ab` the
/// path-sum polynomial, whose sign is exact. At an eigenvalue of
/// multiplicity `m` the residue is `m·N_ab^{(m−1)}(θ)/φ^{(m)}(θ)`, evaluated
/// at a rational point within `2^{-(prec+64)}` of `θ`. Decreasing eigenvalue
/// order, as in [`eigendecompose`].
pub fn residue_projectors(g: &Graph, prec: usize) -> Result<Vec<Vec<Vec<Float>>>> {
    let n = g.order();
    let phi = charpoly(g);
    let all = g.vertices();
    let mut numer = vec![vec![IntPoly::zero(); n]; n];
    for a in 0..n {
        numer[a][a] = charpoly_within(g, all.minus(VertexSet::singleton(a)));
        for b in a + 1..n {
            numer[a][b] = path_sum_poly(g, a, b)?;
            numer[b][a] = numer[a][b].clone();
        }
    }
    let width = BigRational::new(BigInt::one(), BigInt::one() << (prec + 64));
    Ok(exact_spectrum(g)
        .into_iter()
        .map(|(theta, m)| {
            let t = theta.refine_to(&width).approx();
            let den = rational_to_float(&nth_derivative(&phi, m).eval(&t), prec);
            let scale = int(m as i64, prec) / den;
            numer
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| rational_to_float(&nth_derivative(p, m - 1).eval(&t), prec) * &scale)
                        .collect()
                })
                .collect()
        })
        .collect())
}

/// Sign relating `E_r e_j` to `E_r e_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Plus,
    Minus,
    /// Both vectors vanish, so either sign fits.
    Zero,
    /// Neither sign fits.
    Mismatch,
}

impl Parity {
    pub fn symbol(self) -> &'static str {
        match self {
            Parity::Plus => "+",
            Parity::Minus => "-",
            Parity::Zero => "0",
            Parity::Mismatch => "x",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityEntry {
    pub eigenvalue: String,
    pub parity: Parity,
}

/// Numeric verdict with the per-eigenvalue parity signature.
#[derive(Clone, Debug, Serialize)]
pub struct NumericDecision {
    pub vertices: (usize, usize),
    pub precision_bits: usize,
    pub strongly_cospectral: bool,
    pub signature: Vec<ParityEntry>,
}

impl NumericDecision {
    pub fn signature_string(&self) -> String {
        self.signature.iter().map(|e| e.parity.symbol()).collect()
    }
}

enum Verdict {
    Decided(NumericDecision),
    Borderline(String),
}

fn compare_columns(d: &SpectralDecomposition, i: usize, j: usize) -> Verdict {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    let w = d.working();
    let tol = &d.tolerance;
    let ten_tol = tol * int(10, w);
    let mut signature = Vec::with_capacity(d.eigenvalues.len());
    let mut all_match = true;
    for (r, e) in d.projectors.iter().enumerate() {
        let mut plus = int(0, w);
        let mut minus = int(0, w);
        let mut size = int(0, w);
        for row in e {
            let x = &row[a];
            let y = &row[b];
            let dp = abs(&(y - x));
            let dm = abs(&(y + x));
            if dp > plus {
                plus = dp;
            }
            if dm > minus {
                minus = dm;
            }
            for z in [abs(x), abs(y)] {
                if z > size {
                    size = z;
                }
            }
        }
        let parity = if size <= *tol {
            Parity::Zero
        } else if plus <= *tol {
            Parity::Plus
        } else if minus <= *tol {
            Parity::Minus
        } else if plus > ten_tol && minus > ten_tol {
            Parity::Mismatch
        } else {
            return Verdict::Borderline(format!(
                "eigenvalue {} of pair ({i}, {j}) is within 10x of tolerance",
                float_to_string(&d.eigenvalues[r].value)
            ));
        };
        if parity == Parity::Mismatch {
            all_match = false;
        }
        signature.push(ParityEntry {
            eigenvalue: float_to_string(&d.eigenvalues[r].value),
            parity,
        });
    }
    Verdict::Decided(NumericDecision {
        vertices: (i, j),
        precision_bits: d.precision_bits,
        strongly_cospectral: all_match,
        signature,
    })
}

/// Numeric test against a ready decomposition; `None` when borderline.
pub fn strongly_cospectral_with(
    d: &SpectralDecomposition,
    i: usize,
    j: usize,
) -> Option<NumericDecision> {
    match compare_columns(d, i, j) {
        Verdict::Decided(v) => Some(v),
        Verdict::Borderline(_) => None,
    }
}

/// `E_r e_i = ±E_r e_j` for every `r`, escalating precision on borderline
/// comparisons or ambiguous clusters.
pub fn strongly_cospectral_numeric(
    g: &Graph,
    i: usize,
    j: usize,
    precision_bits: usize,
) -> Result<NumericDecision> {
    check_pair(g, i, j)?;
    let mut p = precision_bits;
    loop {
        let reason = match eigendecompose(g, p) {
            Ok(d) => match compare_columns(&d, i, j) {
                Verdict::Decided(v) => return Ok(v),
                Verdict::Borderline(why) => why,
            },
            Err(Error::Precision(why)) => why,
            Err(e) => return Err(e),
        };
        if p * 2 > MAX_PRECISION {
            return Err(Error::Indeterminate(format!("{reason} (at {p} bits)")));
        }
        p *= 2;
    }
}

/// Per-eigenvalue check `σ_r (E_r)_{ii} = (E_r)_{ij}` within `tol`.
pub fn parity_consistent(
    d: &SpectralDecomposition,
    decision: &NumericDecision,
    tol: &Float,
) -> bool {
    let (i, j) = decision.vertices;
    decision.signature.iter().enumerate().all(|(r, e)| {
        let ii = d.entry(r, i, i);
        let ij = d.entry(r, i, j);
        let lhs = match e.parity {
            Parity::Plus => ii.clone(),
            Parity::Minus => -ii,
            Parity::Zero => int(0, d.working()),
            Parity::Mismatch => return false,
        };
        abs(&(lhs - ij)) <= *tol
    })
}

/// `2^{-bits}` as a float, for comparisons at an explicit tolerance.
pub fn tolerance(bits: usize) -> Float {
    pow2(-(bits as isize), bits + GUARD_BITS)
}

/// `|x − y|`.
pub fn abs_diff(x: &Float, y: &Float) -> Float {
    abs(&(x - y))
}

/// Absolute difference between a float and an exact real.
pub fn distance(x: &Float, y: &Real, prec: usize) -> Float {
    abs(&(x - real_to_float(y, prec)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: &Float, y: f64) -> bool {
        (float_to_f64(x) - y).abs() < 1e-12
    }

    #[test]
    fn p2_decomposition() {
        let g = Graph::path(2);
        let d = eigendecompose(&g, 128).unwrap();
        assert_eq!(d.eigenvalues.len(), 2);
        assert!(close(&d.eigenvalues[0].value, 1.0));
        assert!(close(&d.eigenvalues[1].value, -1.0));
        assert!(close(d.entry(0, 0, 1), 0.5));
        assert!(close(d.entry(1, 0, 1), -0.5));
        assert!(d.check_invariants(&g).within_tolerance);
    }

    #[test]
    fn k3_multiplicity() {
        let g = Graph::complete(3);
        let d = eigendecompose(&g, 128).unwrap();
        let m: Vec<usize> = d.eigenvalues.iter().map(|e| e.multiplicity).collect();
        assert_eq!(m, vec![1, 2]);
        assert!(close(&d.eigenvalues[1].value, -1.0));
        assert!(d.check_invariants(&g).within_tolerance);
    }

    #[test]
    fn p3_spectrum() {
        let d = eigendecompose(&Graph::path(3), 128).unwrap();
        let s = 2f64.sqrt();
        assert!(close(&d.eigenvalues[0].value, s));
        assert!(close(&d.eigenvalues[1].value, 0.0));
        assert!(close(&d.eigenvalues[2].value, -s));
    }

    #[test]
    fn low_precision_rejected() {
        assert!(matches!(eigendecompose(&Graph::path(2), 32), Err(Error::Config(_))));
    }

    #[test]
    fn residue_entries() {
        let half = Real::Rational(BigRational::new(1.into(), 2.into()));
        let p2 = Graph::path(2);
        assert!(projector_entry_diag(&p2, 0, 0).unwrap().eq_exact(&half).unwrap());
        let p3 = Graph::path(3);
        // θ_1 = 0 for P3
        assert!(projector_entry_diag(&p3, 1, 1).unwrap().is_zero());
        let mhalf = Real::Rational(BigRational::new((-1).into(), 2.into()));
        assert!(projector_entry_offdiag(&p3, 0, 2, 1).unwrap().eq_exact(&mhalf).unwrap());
        assert!(projector_entry_offdiag(&p2, 0, 1, 1).unwrap().eq_exact(&mhalf).unwrap());
        let third = Real::Rational(BigRational::new(1.into(), 3.into()));
        assert!(projector_entry_diag(&Graph::complete(3), 2, 0).unwrap().eq_exact(&third).unwrap());
    }

    #[test]
    fn p3_center_diag() {
        let p3 = Graph::path(3);
        let half = Real::Rational(BigRational::new(1.into(), 2.into()));
        // centre at θ = 0 has weight 0; at ±√2 it is 1/2
        assert!(projector_entry_diag(&p3, 1, 0).unwrap().eq_exact(&half).unwrap());
    }

    #[test]
    fn residues_match_jacobi() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let d = eigendecompose(&g, 128).unwrap();
        let res = residue_projectors(&g, 160).unwrap();
        assert_eq!(res.len(), d.projectors.len());
        for (e, f) in d.projectors.iter().zip(&res) {
            assert!(max_abs_diff(e, f, 160) <= d.tolerance);
        }
    }

    #[test]
    fn numeric_verdicts() {
        let d = strongly_cospectral_numeric(&Graph::path(2), 0, 1, 128).unwrap();
        assert!(d.strongly_cospectral);
        assert_eq!(d.signature_string(), "+-");
        let d = strongly_cospectral_numeric(&Graph::path(3), 0, 2, 128).unwrap();
        assert!(d.strongly_cospectral);
        assert_eq!(d.signature_string(), "+-+");
        let d = strongly_cospectral_numeric(&Graph::complete(3), 0, 1, 128).unwrap();
        assert!(!d.strongly_cospectral);
    }
}
