//! Instance audit of the chain of implications behind the no-three-strongly-
//! cospectral-vertices argument.
//!
//! Setting: a vertex `v` whose removal puts `i`, `j`, `k` in three different
//! components. For each of the three vertices `x` in turn (the other two
//! called `y` and `z`) and each real zero `θ` of `α_x^{G∖v}`, the audit
//! evaluates exactly every α and λ value the argument talks about, records
//! which hypotheses hold at `θ`, and checks each conclusion whose hypothesis
//! holds. Independently of `θ` it checks the transfer identities
//! `α_x^{G∖v} = α_x^{G∖{v,y}} = α_x^{G∖{v,y,z}}` and
//! `λ_{xv}^G = λ_{xv}^{G∖y} = λ_{xv}^{G∖{y,z}}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::alpha::{
    alpha_within, extended_contraction_within, lambda_infinity_within, lambda_within,
    LambdaBranch,
};
use crate::cospectral::GraphPolys;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::roots::RealRoot;
use crate::value::ExtendedValue;

/// One implication checked at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCheck {
    pub name: &'static str,
    pub hypothesis: bool,
    /// `None` when the hypothesis fails and the conclusion is not examined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<bool>,
}

impl PointCheck {
    fn new(name: &'static str, hypothesis: bool, conclusion: impl FnOnce() -> Result<bool>) -> Result<Self> {
        Ok(PointCheck {
            name,
            hypothesis,
            conclusion: if hypothesis { Some(conclusion()?) } else { None },
        })
    }

    pub fn violated(&self) -> bool {
        self.conclusion == Some(false)
    }
}

/// The roles at one audited point: `θ` is a zero of `α_x^{G∖v}`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaRecord {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub theta: RealRoot,
    /// Evaluated quantities keyed by a name in the role letters, for
    /// example `alpha_y(G-z)` or `lambda_xv(G)`.
    pub values: BTreeMap<String, ExtendedValue>,
    /// Branch of `λ_{xv}`, `λ_{yv}`, `λ_{zv}` at `θ`, in that order.
    pub lambda_branches: [LambdaBranch; 3],
    pub checks: Vec<PointCheck>,
    /// `α_y^{G∖v}(θ) = α_z^{G∖v}(θ) ≠ 0`, the pattern pairwise strong
    /// cospectrality would force.
    pub restriction_pattern: bool,
}

/// Exact identities that do not depend on a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferIdentities {
    pub x: usize,
    pub alpha_identity: bool,
    pub lambda_identity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub v: usize,
    pub triple: [usize; 3],
    /// Cospectrality of the pairs `(i,j)`, `(i,k)`, `(j,k)`.
    pub cospectral: [bool; 3],
    /// Strong cospectrality of the pairs `(i,j)`, `(i,k)`, `(j,k)`.
    pub strongly_cospectral: [bool; 3],
    /// Sorted real zeros of `α_i^{G∖v}`, `α_j^{G∖v}`, `α_k^{G∖v}`.
    pub zeros: [Vec<RealRoot>; 3],
    pub transfer: Vec<TransferIdentities>,
    pub points: Vec<ThetaRecord>,
}

impl AuditReport {
    pub fn pairwise_cospectral(&self) -> bool {
        self.cospectral.iter().all(|&b| b)
    }

    pub fn pairwise_strongly_cospectral(&self) -> bool {
        self.strongly_cospectral.iter().all(|&b| b)
    }

    /// Descriptions of every failed check. Empty on a clean audit.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for t in &self.transfer {
            if !t.alpha_identity || !t.lambda_identity {
                out.push(format!("transfer identities fail for x = {}", t.x));
            }
        }
        for p in &self.points {
            for c in p.checks.iter().filter(|c| c.violated()) {
                out.push(format!("{} fails at {} (x = {})", c.name, p.theta, p.x));
            }
        }
        if self.pairwise_strongly_cospectral() {
            out.push("three pairwise strongly cospectral vertices separated by a cut vertex".into());
        }
        // A point without the forced pattern already rules out pairwise
        // strong cospectrality; the exact decisions must agree.
        if self.points.iter().any(|p| !p.restriction_pattern) && self.pairwise_strongly_cospectral() {
            out.push("restriction pattern fails yet all pairs are strongly cospectral".into());
        }
        out
    }

    /// Count of `(λ branch)` occurrences over every audited point.
    pub fn branch_counts(&self) -> BTreeMap<LambdaBranch, usize> {
        let mut m = BTreeMap::new();
        for p in &self.points {
            for b in p.lambda_branches {
                *m.entry(b).or_insert(0) += 1;
            }
        }
        m
    }
}

struct Ctx<'a> {
    g: &'a Graph,
    v: usize,
    theta: &'a RealRoot,
}

impl Ctx<'_> {
    fn without(&self, s: &[usize]) -> VertexSet {
        self.g.vertices().minus(VertexSet::from_slice(s))
    }

    fn alpha(&self, x: usize, deleted: &[usize]) -> Result<ExtendedValue> {
        Ok(alpha_within(self.g, self.without(deleted), x)?.eval_extended(self.theta))
    }

    fn lambda(&self, x: usize) -> Result<ExtendedValue> {
        Ok(lambda_within(self.g, self.g.vertices(), x, self.v)?.eval_extended(self.theta))
    }
}

fn all_equal(vals: &[&ExtendedValue]) -> Result<bool> {
    for w in vals.windows(2) {
        if !w[0].eq_exact(w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn separated(g: &Graph, v: usize, t: [usize; 3]) -> bool {
    let rest = g.vertices().minus(VertexSet::singleton(v));
    let ci = g.component_of(t[0], rest);
    let cj = g.component_of(t[1], rest);
    !ci.contains(t[1]) && !ci.contains(t[2]) && !cj.contains(t[2])
}

/// Audit one `(v; i, j, k)` configuration.
pub fn key_lemma_audit(g: &Graph, v: usize, i: usize, j: usize, k: usize) -> Result<AuditReport> {
    for x in [v, i, j, k] {
        g.check_vertex(x)?;
    }
    let t = [i, j, k];
    if [i, j, k].contains(&v) || i == j || i == k || j == k {
        return Err(Error::Precondition("v, i, j, k must be four distinct vertices".into()));
    }
    if !separated(g, v, t) {
        return Err(Error::Precondition(format!(
            "removing {v} does not put {i}, {j}, {k} in three different components"
        )));
    }
    let polys = GraphPolys::new(g);
    let pairs = [(i, j), (i, k), (j, k)];
    let mut cospectral = [false; 3];
    let mut strong = [false; 3];
    for (n, &(a, b)) in pairs.iter().enumerate() {
        let d = polys.decide(a, b)?;
        cospectral[n] = d.cospectral;
        strong[n] = d.strongly_cospectral;
    }
    let pair_index = |a: usize, b: usize| -> usize {
        pairs
            .iter()
            .position(|&(p, q)| (p, q) == (a, b) || (p, q) == (b, a))
            .expect("pair of the triple")
    };

    let all = g.vertices();
    let without = |s: &[usize]| all.minus(VertexSet::from_slice(s));
    let mut zeros: [Vec<RealRoot>; 3] = Default::default();
    let mut transfer = Vec::new();
    let mut points = Vec::new();
    for (slot, (x, y, z)) in [(i, j, k), (j, i, k), (k, i, j)].into_iter().enumerate() {
        let a_xv = alpha_within(g, without(&[v]), x)?;
        let alpha_identity = a_xv == alpha_within(g, without(&[v, y]), x)?
            && a_xv == alpha_within(g, without(&[v, y, z]), x)?;
        let l_xv = lambda_within(g, all, x, v)?;
        let lambda_identity = l_xv == lambda_within(g, without(&[y]), x, v)?
            && l_xv == lambda_within(g, without(&[y, z]), x, v)?;
        transfer.push(TransferIdentities {
            x,
            alpha_identity,
            lambda_identity,
        });
        zeros[slot] = a_xv.zeros();
        for theta in &zeros[slot] {
            let rec = audit_point(
                g,
                v,
                (x, y, z),
                theta,
                strong[pair_index(x, y)] || strong[pair_index(x, z)],
                cospectral[pair_index(y, z)],
                strong[pair_index(y, z)],
                strong.iter().all(|&s| s),
            )?;
            points.push(rec);
        }
    }
    Ok(AuditReport {
        v,
        triple: t,
        cospectral,
        strongly_cospectral: strong,
        zeros,
        transfer,
        points,
    })
}

#[allow(clippy::too_many_arguments)]
fn audit_point(
    g: &Graph,
    v: usize,
    (x, y, z): (usize, usize, usize),
    theta: &RealRoot,
    x_strong_with_other: bool,
    yz_cospectral: bool,
    yz_strong: bool,
    all_strong: bool,
) -> Result<ThetaRecord> {
    let c = Ctx { g, v, theta };
    let mut values = BTreeMap::new();
    let mut put = |name: &str, val: ExtendedValue| -> ExtendedValue {
        values.insert(name.to_string(), val.clone());
        val
    };
    let ax_g = put("alpha_x(G)", c.alpha(x, &[])?);
    let ax_v = put("alpha_x(G-v)", c.alpha(x, &[v])?);
    let ax_y = put("alpha_x(G-y)", c.alpha(x, &[y])?);
    let ax_z = put("alpha_x(G-z)", c.alpha(x, &[z])?);
    let av_g = put("alpha_v(G)", c.alpha(v, &[])?);
    let av_y = put("alpha_v(G-y)", c.alpha(v, &[y])?);
    let av_z = put("alpha_v(G-z)", c.alpha(v, &[z])?);
    let av_yz = put("alpha_v(G-y-z)", c.alpha(v, &[y, z])?);
    let ay_g = put("alpha_y(G)", c.alpha(y, &[])?);
    let ay_v = put("alpha_y(G-v)", c.alpha(y, &[v])?);
    let ay_z = put("alpha_y(G-z)", c.alpha(y, &[z])?);
    let az_g = put("alpha_z(G)", c.alpha(z, &[])?);
    let az_v = put("alpha_z(G-v)", c.alpha(z, &[v])?);
    let az_y = put("alpha_z(G-y)", c.alpha(z, &[y])?);
    let l_x = put("lambda_xv(G)", c.lambda(x)?);
    let l_y = put("lambda_yv(G)", c.lambda(y)?);
    let l_z = put("lambda_zv(G)", c.lambda(z)?);
    debug_assert!(ax_v.is_zero());

    let lambda_branches = [
        LambdaBranch::of(&l_x)?,
        LambdaBranch::of(&l_y)?,
        LambdaBranch::of(&l_z)?,
    ];
    let lam_nonzero = !l_x.is_zero();
    let mut checks = vec![
        PointCheck::new("lambda_zero_fixes_alpha", l_x.is_zero(), || {
            all_equal(&[&ax_g, &ax_v, &ax_y, &ax_z])
        })?,
        PointCheck::new("strong_pair_forces_nonzero_lambda", x_strong_with_other, || {
            Ok(lam_nonzero)
        })?,
        PointCheck::new("hub_alpha_infinite", lam_nonzero, || {
            Ok([&av_g, &av_y, &av_z, &av_yz].iter().all(|a| a.is_infinite()))
        })?,
        PointCheck::new("neighbour_alpha_stable", lam_nonzero, || {
            Ok(all_equal(&[&ay_g, &ay_v, &ay_z])? && all_equal(&[&az_g, &az_v, &az_y])?)
        })?,
        PointCheck::new("cospectral_common_value", lam_nonzero && yz_cospectral, || {
            all_equal(&[&ay_z, &ay_v, &ay_g, &az_g, &az_v, &az_y])
        })?,
        PointCheck::new("common_value_nonzero", lam_nonzero && yz_strong, || {
            Ok(!ay_v.is_zero())
        })?,
    ];
    let restriction_pattern = ay_v.eq_exact(&az_v)? && !ay_v.is_zero();
    checks.push(PointCheck::new("restriction_holds", all_strong, || Ok(restriction_pattern))?);

    // Pointwise contraction through v, or the pole rule when λ blows up.
    let all = g.vertices();
    for (w, lam) in [(x, &l_x), (y, &l_y), (z, &l_z)] {
        if lam.is_infinite() {
            let ok = lambda_infinity_within(g, all, w, v, theta)?;
            checks.push(PointCheck::new("lambda_pole_forces_poles", true, || Ok(ok))?);
        } else {
            let ok = match extended_contraction_within(g, all, w, v, theta) {
                Ok(_) => true,
                Err(Error::Violation(_)) => false,
                Err(e) => return Err(e),
            };
            checks.push(PointCheck::new("contraction_at_point", true, || Ok(ok))?);
        }
    }

    Ok(ThetaRecord {
        x,
        y,
        z,
        theta: theta.clone(),
        values,
        lambda_branches,
        checks,
        restriction_pattern,
    })
}
