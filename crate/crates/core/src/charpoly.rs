//! Characteristic polynomials `det(tI - A)` over the integers.
//!
//! The determinant is expanded with Berkowitz's division-free recurrence.
//! A graph's polynomial is the product of its components' polynomials, and
//! component results are memoized in a process-wide cache. Acyclic components
//! are keyed by their isomorphism code, so every subforest met while sweeping
//! a tree corpus is computed once; other components are keyed by their
//! relabelled adjacency rows.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::poly::IntPoly;
use crate::trees::tree_code_within;

/// Entries above this many cached components trigger a flush.
const CACHE_CAPACITY: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash)]
enum CacheKey {
    Tree(Vec<u8>),
    Labelled(Vec<u64>),
}

fn cache() -> &'static RwLock<HashMap<CacheKey, IntPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Drop every memoized component polynomial.
pub fn clear_charpoly_cache() {
    cache().write().expect("cache lock").clear();
}

/// Number of memoized component polynomials.
pub fn charpoly_cache_len() -> usize {
    cache().read().expect("cache lock").len()
}

/// `det(tI - A)` by Berkowitz's recurrence, without the cache.
pub fn charpoly_uncached(g: &Graph) -> IntPoly {
    let n = g.order();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| g.has_edge(a, b)).collect())
        .collect();
    // Coefficients, highest degree first.
    let mut p: Vec<BigInt> = vec![BigInt::from(1)];
    for r in 0..n {
        // First column of the Toeplitz factor: 1, -a_rr, -R S, -R A S, ...
        // with A the leading r x r block, R = row r and S = column r of it.
        // The diagonal is zero, so -a_rr = 0.
        let mut col = Vec::with_capacity(r + 2);
        col.push(BigInt::from(1));
        col.push(BigInt::zero());
        let mut row: Vec<BigInt> = (0..r).map(|c| BigInt::from(adj[r][c] as u8)).collect();
        for _ in 0..r {
            let dot: BigInt = (0..r).filter(|&c| adj[c][r]).map(|c| &row[c]).sum();
            col.push(-dot);
            row = (0..r)
                .map(|c| (0..r).filter(|&k| adj[k][c]).map(|k| &row[k]).sum())
                .collect();
        }
        let next: Vec<BigInt> = (0..r + 2)
            .map(|a| {
                (0..=r.min(a))
                    .filter(|&b| a - b < col.len() && b < p.len())
                    .map(|b| &col[a - b] * &p[b])
                    .sum()
            })
            .collect();
        p = next;
    }
    p.reverse();
    IntPoly::from_coeffs(p)
}

fn induced_edge_count(g: &Graph, within: VertexSet) -> usize {
    within
        .iter()
        .map(|v| (g.neighbours(v).0 & within.0).count_ones() as usize)
        .sum::<usize>()
        / 2
}

fn component_charpoly(g: &Graph, comp: VertexSet) -> IntPoly {
    match comp.len() {
        1 => return IntPoly::t(),
        2 => return IntPoly::from_i64(&[-1, 0, 1]),
        _ => {}
    }
    let key = if induced_edge_count(g, comp) + 1 == comp.len() {
        CacheKey::Tree(tree_code_within(g, comp))
    } else {
        CacheKey::Labelled(g.induced(comp).graph.key())
    };
    if let Some(p) = cache().read().expect("cache lock").get(&key) {
        return p.clone();
    }
    let p = charpoly_uncached(&g.induced(comp).graph);
    let mut w = cache().write().expect("cache lock");
    if w.len() >= CACHE_CAPACITY {
        w.clear();
    }
    w.insert(key, p.clone());
    p
}

/// Characteristic polynomial of the subgraph induced on `within`.
pub fn charpoly_within(g: &Graph, within: VertexSet) -> IntPoly {
    let within = VertexSet(within.0 & g.vertices().0);
    g.components_within(within)
        .into_iter()
        .fold(IntPoly::one(), |acc, c| &acc * &component_charpoly(g, c))
}

/// `det(tI - A)` of `g`; the empty graph gives `1`.
pub fn charpoly(g: &Graph) -> IntPoly {
    charpoly_within(g, g.vertices())
}

/// Characteristic polynomial of `g ∖ s`.
pub fn deleted_charpoly(g: &Graph, s: &[usize]) -> Result<IntPoly> {
    for &v in s {
        g.check_vertex(v)?;
    }
    Ok(charpoly_within(
        g,
        g.vertices().minus(VertexSet::from_slice(s)),
    ))
}
