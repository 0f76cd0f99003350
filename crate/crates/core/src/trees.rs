//! Exhaustive generation of non-isomorphic free trees.
//!
//! Trees of order `n` are obtained by hanging a leaf on every vertex of every
//! tree of order `n - 1` and keeping one representative per canonical form.
//! The canonical form is the AHU parenthesis string of the tree rooted at its
//! centre (the smaller string of the two when the tree is bicentral). Each
//! representative is relabelled in preorder of that string, so output is
//! deterministic.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default ceiling on the tree order accepted by [`enumerate_trees`].
pub const DEFAULT_TREE_LIMIT: usize = 16;

/// Rooted AHU encoding of the component of `g` containing `root`, restricted
/// to `within`.
fn rooted_code(g: &Graph, root: usize, parent: Option<usize>, within: VertexSet) -> Vec<u8> {
    let mut kids: Vec<Vec<u8>> = g
        .neighbours(root)
        .iter()
        .filter(|&c| Some(c) != parent && within.contains(c))
        .map(|c| rooted_code(g, c, Some(root), within))
        .collect();
    kids.sort_unstable();
    let mut out = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
    out.push(b'(');
    for k in kids {
        out.extend_from_slice(&k);
    }
    out.push(b')');
    out
}

/// Centre(s) of the tree spanned by `within` in `g`, by repeated leaf removal.
fn centres(g: &Graph, within: VertexSet) -> Vec<usize> {
    let mut alive = within;
    while alive.len() > 2 {
        let leaves: Vec<usize> = alive
            .iter()
            .filter(|&v| VertexSet(g.neighbours(v).0 & alive.0).len() <= 1)
            .collect();
        alive = alive.minus(VertexSet::from_slice(&leaves));
    }
    alive.iter().collect()
}

/// Isomorphism-invariant code of the tree spanned by `within`.
///
/// `within` must induce a tree in `g`.
pub fn tree_code_within(g: &Graph, within: VertexSet) -> Vec<u8> {
    centres(g, within)
        .into_iter()
        .map(|c| rooted_code(g, c, None, within))
        .min()
        .unwrap_or_default()
}

/// Isomorphism-invariant code of a tree.
pub fn tree_code(g: &Graph) -> Vec<u8> {
    tree_code_within(g, g.vertices())
}

/// Build the tree described by a rooted parenthesis code, labelling vertices
/// in preorder.
fn tree_from_code(code: &[u8]) -> Graph {
    let n = code.len() / 2;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0;
    for &c in code {
        if c == b'(' {
            if let Some(&p) = stack.last() {
                edges.push((p, next));
            }
            stack.push(next);
            next += 1;
        } else {
            stack.pop();
        }
    }
    Graph::from_edges(n, &edges).expect("tree code within vertex limit")
}

/// All non-isomorphic free trees of order `n + 1`, grown from those of order `n`.
fn grow(trees: &[Graph]) -> Vec<Graph> {
    let mut codes = BTreeSet::new();
    for t in trees {
        let n = t.order();
        let mut edges = t.edges();
        for v in 0..n {
            edges.push((v, n));
            let bigger = Graph::from_edges(n + 1, &edges).expect("tree within vertex limit");
            codes.insert(tree_code(&bigger));
            edges.pop();
        }
    }
    codes.iter().map(|c| tree_from_code(c)).collect()
}

/// All non-isomorphic free trees of exactly `n` vertices, in canonical order.
pub fn trees_of_order(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::Config("tree order must be at least 1".into()));
    }
    let mut level = vec![Graph::path(1)];
    for _ in 1..n {
        level = grow(&level);
    }
    Ok(level)
}

/// Iterator over every non-isomorphic free tree of order `1..=max_n`, by
/// increasing order. Single consumer; orders are produced lazily.
#[derive(Debug)]
pub struct TreeStream {
    max_n: usize,
    level: Vec<Graph>,
    next_in_level: usize,
}

impl TreeStream {
    pub fn max_n(&self) -> usize {
        self.max_n
    }
}

impl Iterator for TreeStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next_in_level == self.level.len() {
            let order = self.level.first().map_or(0, Graph::order);
            if order >= self.max_n {
                return None;
            }
            self.level = grow(&self.level);
            self.next_in_level = 0;
        }
        let t = self.level[self.next_in_level].clone();
        self.next_in_level += 1;
        Some(t)
    }
}

/// Stream of all free trees with at most `max_n` vertices, bounded by
/// [`DEFAULT_TREE_LIMIT`].
pub fn enumerate_trees(max_n: usize) -> Result<TreeStream> {
    enumerate_trees_with_limit(max_n, DEFAULT_TREE_LIMIT)
}

pub fn enumerate_trees_with_limit(max_n: usize, limit: usize) -> Result<TreeStream> {
    if max_n == 0 || max_n > limit {
        return Err(Error::Config(format!(
            "tree order bound {max_n} outside 1..={limit}"
        )));
    }
    Ok(TreeStream {
        max_n,
        level: vec![Graph::path(1)],
        next_in_level: 0,
    })
}
