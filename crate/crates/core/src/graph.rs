//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` bit-row per vertex, which keeps vertex
//! deletion, induced subgraphs and component searches cheap at the sizes the
//! exhaustive campaigns work with.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex labels of one graph, as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    /// All labels `0..n`.
    pub fn full(n: usize) -> Self {
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        VertexSet(vs.iter().fold(0u64, |m, &v| m | (1u64 << v)))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn minus(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

/// An immutable simple undirected graph with vertices `0..n`.
///
/// Equality is label-sensitive; isomorphism is a separate question.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    rows: Vec<u64>,
}

/// An induced subgraph together with the original label of each new vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `original[new] = old`.
    pub original: Vec<usize>,
}

impl Subgraph {
    /// New label of an original vertex, if it survived the deletion.
    pub fn relabel(&self, old: usize) -> Option<usize> {
        self.original.iter().position(|&o| o == old)
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Domain(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        Ok(Graph { rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            if a == b {
                return Err(Error::Domain(format!("self-loop at vertex {a}")));
            }
            g.rows[a] |= 1 << b;
            g.rows[b] |= 1 << a;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path within vertex limit")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, &edges).expect("cycle within vertex limit")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph within vertex limit")
    }

    /// The star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star within vertex limit")
    }

    /// A spider: centre 0 with a pendant path of each given length.
    pub fn spider(legs: &[usize]) -> Self {
        let n = 1 + legs.iter().sum::<usize>();
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::from_edges(n, &edges).expect("spider within vertex limit")
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                order: self.order(),
            })
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order() && b < self.order() && self.rows[a] >> b & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.order() {
            for b in self.neighbours(a).iter() {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Adjacency lists, used for JSON dumps.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|v| self.neighbours(v).iter().collect())
            .collect()
    }

    /// Induced subgraph on `keep`, relabelled to `0..|keep|` in increasing
    /// order of the original labels.
    pub fn induced(&self, keep: VertexSet) -> Subgraph {
        let original: Vec<usize> = VertexSet(keep.0 & self.vertices().0).iter().collect();
        let rows = original
            .iter()
            .map(|&old| {
                let mut row = 0u64;
                for (new, &other) in original.iter().enumerate() {
                    if self.rows[old] >> other & 1 == 1 {
                        row |= 1 << new;
                    }
                }
                row
            })
            .collect();
        Subgraph {
            graph: Graph { rows },
            original,
        }
    }

    /// `self ∖ s`: the subgraph induced on the remaining vertices.
    pub fn delete_vertices(&self, s: &[usize]) -> Result<Subgraph> {
        for &v in s {
            self.check_vertex(v)?;
        }
        Ok(self.induced(self.vertices().minus(VertexSet::from_slice(s))))
    }

    /// Cartesian product. Vertex `(a, x)` gets label `a * |V(h)| + x`.
    pub fn cartesian_product(&self, h: &Graph) -> Result<Graph> {
        if self.order() == 0 || h.order() == 0 {
            return Err(Error::Domain(
                "cartesian product needs two nonempty graphs".into(),
            ));
        }
        let m = h.order();
        let n = self.order() * m;
        let mut g = Graph::empty(n)?;
        for a in 0..self.order() {
            for x in 0..m {
                let u = a * m + x;
                for y in h.neighbours(x).iter() {
                    g.rows[u] |= 1 << (a * m + y);
                }
                for b in self.neighbours(a).iter() {
                    g.rows[u] |= 1 << (b * m + x);
                }
            }
        }
        Ok(g)
    }

    /// Disjoint union; the vertices of `h` follow those of `self`.
    pub fn disjoint_union(&self, h: &Graph) -> Result<Graph> {
        let off = self.order();
        let mut g = Graph::empty(off + h.order())?;
        g.rows[..off].copy_from_slice(&self.rows);
        for (x, &row) in h.rows.iter().enumerate() {
            g.rows[off + x] = row << off;
        }
        Ok(g)
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component_of(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u64;
            for v in frontier.iter() {
                next |= self.rows[v];
            }
            let fresh = VertexSet(next & within.0 & !seen.0);
            seen = seen.union(fresh);
            frontier = fresh;
        }
        seen
    }

    /// Connected components of the subgraph induced on `within`, ordered by
    /// smallest member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.iter().next() {
            let c = self.component_of(v, within);
            rest = rest.minus(c);
            out.push(c);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.edge_count() + 1 == self.order() && self.is_connected()
    }

    /// Every simple path from `i` to `j`, as vertex sequences starting at `i`.
    ///
    /// Exhaustive DFS; intended for graphs of at most a couple dozen vertices.
    pub fn simple_paths_between(&self, i: usize, j: usize) -> Result<Vec<Vec<usize>>> {
        self.simple_paths_within(i, j, self.vertices())
    }

    /// Simple paths from `i` to `j` that only use vertices of `within`.
    pub fn simple_paths_within(
        &self,
        i: usize,
        j: usize,
        within: VertexSet,
    ) -> Result<Vec<Vec<usize>>> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::Domain("path endpoints must differ".into()));
        }
        if !within.contains(i) || !within.contains(j) {
            return Err(Error::Domain(format!(
                "endpoints {i}, {j} must both lie in the vertex subset"
            )));
        }
        let mut out = Vec::new();
        let mut stack = vec![i];
        self.extend_paths(j, within, VertexSet::singleton(i), &mut stack, &mut out);
        Ok(out)
    }

    fn extend_paths(
        &self,
        target: usize,
        within: VertexSet,
        used: VertexSet,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *stack.last().expect("nonempty path");
        // Prune branches that cannot reach the target any more.
        if !self
            .component_of(last, within.minus(used).insert(last))
            .contains(target)
        {
            return;
        }
        for next in VertexSet(self.rows[last] & within.0 & !used.0).iter() {
            stack.push(next);
            if next == target {
                out.push(stack.clone());
            } else {
                self.extend_paths(target, within, used.insert(next), stack, out);
            }
            stack.pop();
        }
    }

    /// Compact canonical key of the labelled graph (not an isomorphism
    /// invariant).
    pub fn key(&self) -> Vec<u64> {
        let mut k = Vec::with_capacity(self.rows.len() + 1);
        k.push(self.rows.len() as u64);
        k.extend_from_slice(&self.rows);
        k
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

/// JSON dump shape: `{"n": .., "adjacency": [[..], ..]}`.
#[derive(Serialize)]
pub struct AdjacencyDump {
    pub n: usize,
    pub graph6: String,
    pub adjacency: Vec<Vec<usize>>,
}

impl From<&Graph> for AdjacencyDump {
    fn from(g: &Graph) -> Self {
        AdjacencyDump {
            n: g.order(),
            graph6: crate::graph6::to_graph6(g),
            adjacency: g.adjacency_lists(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deleting_centre_of_p3_leaves_two_isolated_vertices() {
        let sub = Graph::path(3).delete_vertices(&[1]).unwrap();
        assert_eq!(sub.graph, Graph::empty(2).unwrap());
        assert_eq!(sub.original, vec![0, 2]);
    }

    #[test]
    fn deleting_endpoint_of_p3_leaves_p2() {
        let sub = Graph::path(3).delete_vertices(&[0]).unwrap();
        assert_eq!(sub.graph, Graph::path(2));
        assert_eq!(sub.relabel(2), Some(1));
        assert_eq!(sub.relabel(0), None);
    }

    #[test]
    fn deleting_nothing_is_identity() {
        let g = Graph::cycle(5);
        assert_eq!(g.delete_vertices(&[]).unwrap().graph, g);
    }

    #[test]
    fn deleting_unknown_vertex_fails() {
        assert!(matches!(
            Graph::path(3).delete_vertices(&[3]),
            Err(Error::InvalidVertex { vertex: 3, order: 3 })
        ));
    }

    #[test]
    fn p2_box_p2_is_c4() {
        let sq = Graph::path(2).cartesian_product(&Graph::path(2)).unwrap();
        // (0,0)=0 (0,1)=1 (1,0)=2 (1,1)=3
        assert_eq!(sq, Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap());
        assert!((0..4).all(|v| sq.degree(v) == 2));
        assert!(sq.is_connected());
    }

    #[test]
    fn p2_box_p3_is_grid() {
        let grid = Graph::path(2).cartesian_product(&Graph::path(3)).unwrap();
        let expect =
            Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)])
                .unwrap();
        assert_eq!(grid, expect);
    }

    #[test]
    fn k1_box_g_is_g() {
        let g = Graph::spider(&[1, 2, 3]);
        assert_eq!(Graph::path(1).cartesian_product(&g).unwrap(), g);
    }

    #[test]
    fn product_with_empty_graph_is_rejected() {
        let e = Graph::empty(0).unwrap();
        assert!(Graph::path(2).cartesian_product(&e).is_err());
    }

    #[test]
    fn path_listing() {
        let p3 = Graph::path(3);
        assert_eq!(p3.simple_paths_between(0, 2).unwrap(), vec![vec![0, 1, 2]]);

        let c4 = Graph::cycle(4);
        let mut paths = c4.simple_paths_between(0, 2).unwrap();
        paths.sort();
        assert_eq!(paths, vec![vec![0, 1, 2], vec![0, 3, 2]]);

        let two = Graph::empty(2).unwrap();
        assert!(two.simple_paths_between(0, 1).unwrap().is_empty());

        assert!(p3.simple_paths_between(1, 1).is_err());
    }

    #[test]
    fn k4_has_five_paths_between_two_vertices() {
        // direct, two of length 2, two of length 3
        assert_eq!(Graph::complete(4).simple_paths_between(0, 1).unwrap().len(), 5);
    }

    #[test]
    fn components_and_trees() {
        let g = Graph::path(3).disjoint_union(&Graph::path(2)).unwrap();
        let comps = g.components();
        assert_eq!(comps, vec![VertexSet::from_slice(&[0, 1, 2]), VertexSet::from_slice(&[3, 4])]);
        assert!(!g.is_tree());
        assert!(Graph::spider(&[2, 2, 2]).is_tree());
        assert!(!Graph::cycle(4).is_tree());
    }

    #[test]
    fn vertex_limit_enforced() {
        assert!(Graph::empty(65).is_err());
        assert!(Graph::empty(64).is_ok());
        assert_eq!(VertexSet::full(64).len(), 64);
    }
}
