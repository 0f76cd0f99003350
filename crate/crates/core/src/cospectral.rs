//! Exact cospectrality decisions.
//!
//! Two vertices are strongly cospectral exactly when `φ^{G∖i} = φ^{G∖j}` and
//! every pole of `φ^{G∖{i,j}}/φ^G` is simple. The pole condition is decided
//! without touching eigenvalues: at a root of `φ^G` of multiplicity `m` the
//! numerator must vanish to order at least `m - 1`, which is the single
//! divisibility `φ^G | φ^{G∖{i,j}} · sqfree(φ^G)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::charpoly::{charpoly, charpoly_within};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6::to_graph6;
use crate::poly::{poly_gcd, squarefree_part, IntPoly};
use crate::roots::{isolate_real_roots, RealRoot};

pub(crate) fn check_pair(g: &Graph, i: usize, j: usize) -> Result<()> {
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    if i == j {
        return Err(Error::Domain(format!("pair needs two distinct vertices, got {i} twice")));
    }
    Ok(())
}

/// Why a pair fails to be (strongly) cospectral.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `φ^{G∖i} ≠ φ^{G∖j}`.
    DifferentDeletions { left: IntPoly, right: IntPoly },
    /// `φ^{G∖{i,j}}/φ^G` has a pole of order at least two. `factor` collects
    /// every eigenvalue where this happens; `root` is the smallest of them.
    NonSimplePole { factor: IntPoly, root: RealRoot },
}

/// Outcome of the exact decision for one vertex pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairDecision {
    pub vertices: (usize, usize),
    pub cospectral: bool,
    pub strongly_cospectral: bool,
    /// Present iff `strongly_cospectral` is false.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// On success, `q` with `φ^G · q = φ^{G∖{i,j}} · sqfree(φ^G)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<IntPoly>,
}

/// The polynomials shared by every pair decision on one graph.
#[derive(Clone, Debug)]
pub struct GraphPolys<'a> {
    graph: &'a Graph,
    phi: IntPoly,
    phi_sqfree: IntPoly,
    deleted: Vec<IntPoly>,
}

impl<'a> GraphPolys<'a> {
    pub fn new(g: &'a Graph) -> Self {
        let phi = charpoly(g);
        let phi_sqfree = squarefree_part(&phi).expect("monic charpoly is nonzero");
        let deleted = g
            .vertices()
            .iter()
            .map(|v| charpoly_within(g, g.vertices().minus(VertexSet::singleton(v))))
            .collect();
        GraphPolys {
            graph: g,
            phi,
            phi_sqfree,
            deleted,
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// `φ^G`.
    pub fn phi(&self) -> &IntPoly {
        &self.phi
    }

    pub fn phi_sqfree(&self) -> &IntPoly {
        &self.phi_sqfree
    }

    /// `φ^{G∖v}`.
    pub fn deleted(&self, v: usize) -> &IntPoly {
        &self.deleted[v]
    }

    /// `φ^{G∖{i,j}}`.
    pub fn deleted_pair(&self, i: usize, j: usize) -> IntPoly {
        let s = VertexSet::from_slice(&[i, j]);
        charpoly_within(self.graph, self.graph.vertices().minus(s))
    }

    pub fn cospectral(&self, i: usize, j: usize) -> Result<bool> {
        check_pair(self.graph, i, j)?;
        Ok(self.deleted[i] == self.deleted[j])
    }

    pub fn decide(&self, i: usize, j: usize) -> Result<PairDecision> {
        check_pair(self.graph, i, j)?;
        if self.deleted[i] != self.deleted[j] {
            return Ok(PairDecision {
                vertices: (i, j),
                cospectral: false,
                strongly_cospectral: false,
                witness: Some(Witness::DifferentDeletions {
                    left: self.deleted[i].clone(),
                    right: self.deleted[j].clone(),
                }),
                certificate: None,
            });
        }
        let h = &self.deleted_pair(i, j) * &self.phi_sqfree;
        if let Some(q) = h.div_exact(&self.phi) {
            return Ok(PairDecision {
                vertices: (i, j),
                cospectral: true,
                strongly_cospectral: true,
                witness: None,
                certificate: Some(q),
            });
        }
        // The roots of φ^G / gcd(φ^G, h) are exactly the eigenvalues where
        // the multiplicity condition fails.
        let common = poly_gcd(&self.phi, &h)?;
        let factor = squarefree_part(&self.phi.div_exact(&common).expect("gcd divides"))?;
        let root = isolate_real_roots(&factor)?
            .into_iter()
            .next()
            .expect("adjacency eigenvalues are real");
        Ok(PairDecision {
            vertices: (i, j),
            cospectral: true,
            strongly_cospectral: false,
            witness: Some(Witness::NonSimplePole { factor, root }),
            certificate: None,
        })
    }

    /// Decisions for every pair `i < j`, in lexicographic order.
    pub fn all_pairs(&self) -> Vec<PairDecision> {
        let n = self.graph.order();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.decide(i, j).expect("valid pair"))
            .collect()
    }
}

pub fn are_cospectral(g: &Graph, i: usize, j: usize) -> Result<bool> {
    check_pair(g, i, j)?;
    let pi = charpoly_within(g, g.vertices().minus(VertexSet::singleton(i)));
    let pj = charpoly_within(g, g.vertices().minus(VertexSet::singleton(j)));
    Ok(pi == pj)
}

pub fn are_strongly_cospectral_exact(g: &Graph, i: usize, j: usize) -> Result<PairDecision> {
    check_pair(g, i, j)?;
    GraphPolys::new(g).decide(i, j)
}

/// Paths from `i` to `j` inside `within`, grouped by vertex set, with
/// multiplicities.
fn path_vertex_sets(
    g: &Graph,
    within: VertexSet,
    i: usize,
    j: usize,
) -> Result<BTreeMap<u64, u64>> {
    let mut sets = BTreeMap::new();
    for p in g.simple_paths_within(i, j, within)? {
        *sets.entry(VertexSet::from_slice(&p).0).or_insert(0) += 1;
    }
    Ok(sets)
}

/// Path-sum polynomial of the subgraph induced on `within`.
pub(crate) fn path_sum_within(
    g: &Graph,
    within: VertexSet,
    i: usize,
    j: usize,
) -> Result<IntPoly> {
    let mut total = IntPoly::zero();
    for (set, count) in path_vertex_sets(g, within, i, j)? {
        let rest = charpoly_within(g, within.minus(VertexSet(set)));
        total = &total + &rest.scale(&num_bigint::BigInt::from(count));
    }
    Ok(total)
}

/// `Σ_P φ^{G∖P}` over the simple paths `P` from `i` to `j`.
///
/// `φ^{G∖P}` depends only on the vertex set of `P`, so paths sharing a vertex
/// set are counted together.
pub fn path_sum_poly(g: &Graph, i: usize, j: usize) -> Result<IntPoly> {
    check_pair(g, i, j)?;
    path_sum_within(g, g.vertices(), i, j)
}

/// `φ^{G∖i} φ^{G∖j} − φ^{G∖{i,j}} φ^G = (Σ_P φ^{G∖P})²`.
pub fn wronskian_identity_check(g: &Graph, i: usize, j: usize) -> Result<bool> {
    check_pair(g, i, j)?;
    let all = g.vertices();
    let phi = charpoly(g);
    let pi = charpoly_within(g, all.minus(VertexSet::singleton(i)));
    let pj = charpoly_within(g, all.minus(VertexSet::singleton(j)));
    let pij = charpoly_within(g, all.minus(VertexSet::from_slice(&[i, j])));
    let s = path_sum_poly(g, i, j)?;
    Ok(&(&pi * &pj) - &(&pij * &phi) == &s * &s)
}

/// `(φ^G)' = Σ_i φ^{G∖i}`.
pub fn derivative_identity_check(g: &Graph) -> bool {
    let all = g.vertices();
    let sum = all.iter().fold(IntPoly::zero(), |acc, v| {
        &acc + &charpoly_within(g, all.minus(VertexSet::singleton(v)))
    });
    charpoly(g).derivative() == sum
}

/// Maximal sets of pairwise strongly cospectral vertices with at least two
/// members, each sorted, ordered by smallest member.
///
/// Classes are built as connected components of the pairwise relation, and
/// every pair inside a component is then required to be related; a failure
/// aborts with [`Error::Transitivity`] carrying the graph and the offending
/// pair.
pub fn strongly_cospectral_classes(g: &Graph) -> Result<Vec<Vec<usize>>> {
    classes_from_decisions(g, &GraphPolys::new(g).all_pairs())
}

pub(crate) fn classes_from_decisions(
    g: &Graph,
    decisions: &[PairDecision],
) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    let mut related = vec![vec![false; n]; n];
    for d in decisions {
        let (i, j) = d.vertices;
        related[i][j] = d.strongly_cospectral;
        related[j][i] = d.strongly_cospectral;
    }
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if seen[start] || !related[start].iter().any(|&r| r) {
            continue;
        }
        let mut class = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < class.len() {
            let v = class[k];
            for w in 0..n {
                if related[v][w] && !seen[w] {
                    seen[w] = true;
                    class.push(w);
                }
            }
            k += 1;
        }
        class.sort_unstable();
        for (a, &x) in class.iter().enumerate() {
            for &y in &class[a + 1..] {
                if !related[x][y] {
                    return Err(Error::Transitivity(format!(
                        "graph {}: vertices {x} and {y} are linked through class {class:?} \
                         but are not strongly cospectral",
                        to_graph6(g)
                    )));
                }
            }
        }
        classes.push(class);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn cospectral_examples() {
        let p3 = Graph::path(3);
        assert!(are_cospectral(&p3, 0, 2).unwrap());
        assert!(!are_cospectral(&p3, 0, 1).unwrap());
        let c4 = Graph::cycle(4);
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(are_cospectral(&c4, i, j).unwrap());
            }
        }
        assert!(matches!(are_cospectral(&p3, 1, 1), Err(Error::Domain(_))));
        assert!(matches!(are_cospectral(&p3, 0, 5), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn path_sums() {
        assert_eq!(path_sum_poly(&Graph::path(3), 0, 2).unwrap(), IntPoly::one());
        assert_eq!(path_sum_poly(&Graph::path(2), 0, 1).unwrap(), IntPoly::one());
        assert_eq!(path_sum_poly(&Graph::empty(2).unwrap(), 0, 1).unwrap(), IntPoly::zero());
        // C4 antipodal: two paths each leaving one vertex, 2t
        assert_eq!(path_sum_poly(&Graph::cycle(4), 0, 2).unwrap(), p(&[0, 2]));
    }

    #[test]
    fn wronskian_small() {
        assert!(wronskian_identity_check(&Graph::path(3), 0, 2).unwrap());
        assert!(wronskian_identity_check(&Graph::path(2), 0, 1).unwrap());
        assert!(wronskian_identity_check(&Graph::complete(5), 1, 3).unwrap());
        assert!(wronskian_identity_check(&Graph::cycle(6), 0, 3).unwrap());
    }

    #[test]
    fn derivative_small() {
        assert!(derivative_identity_check(&Graph::path(3)));
        assert!(derivative_identity_check(&Graph::path(1)));
        assert!(derivative_identity_check(&Graph::complete(4)));
    }

    #[test]
    fn strong_decisions() {
        let d = are_strongly_cospectral_exact(&Graph::path(2), 0, 1).unwrap();
        assert!(d.strongly_cospectral && d.witness.is_none());
        let k3 = Graph::complete(3);
        let d = are_strongly_cospectral_exact(&k3, 0, 1).unwrap();
        assert!(d.cospectral && !d.strongly_cospectral);
        match d.witness {
            Some(Witness::NonSimplePole { factor, root }) => {
                assert_eq!(factor, p(&[1, 1]));
                assert_eq!(root, RealRoot::from_integer(-1));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        let two = Graph::empty(2).unwrap();
        let d = are_strongly_cospectral_exact(&two, 0, 1).unwrap();
        assert!(d.cospectral && !d.strongly_cospectral);
    }

    #[test]
    fn certificate_remultiplies() {
        let g = Graph::path(5);
        let gp = GraphPolys::new(&g);
        let d = gp.decide(0, 4).unwrap();
        let q = d.certificate.unwrap();
        assert_eq!(&q * gp.phi(), &gp.deleted_pair(0, 4) * gp.phi_sqfree());
    }

    #[test]
    fn classes() {
        assert_eq!(strongly_cospectral_classes(&Graph::path(3)).unwrap(), vec![vec![0, 2]]);
        assert!(strongly_cospectral_classes(&Graph::complete(3)).unwrap().is_empty());
        // The 2x3 grid has a simple spectrum, so the two middle vertices,
        // swapped by an automorphism, form a class next to the corners.
        let grid = Graph::path(2).cartesian_product(&Graph::path(3)).unwrap();
        assert_eq!(
            strongly_cospectral_classes(&grid).unwrap(),
            vec![vec![0, 2, 3, 5], vec![1, 4]]
        );
    }
}
