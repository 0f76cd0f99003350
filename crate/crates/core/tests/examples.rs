//! Worked examples from the module contracts, end to end through the
//! public API.

use cospec::audit::key_lemma_audit;
use cospec::harness::{audit_cut_triples, find_sets, verify_trees};
use cospec::trees::trees_of_order;
use cospec::Graph;

/// Free trees per order, 1..=14.
const TREE_COUNTS: [usize; 14] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159];

#[test]
fn tree_enumeration_counts() {
    for (n, &count) in TREE_COUNTS.iter().enumerate() {
        let trees = trees_of_order(n + 1).unwrap();
        assert_eq!(trees.len(), count, "order {}", n + 1);
        assert!(trees.iter().all(Graph::is_tree));
    }
}

#[test]
fn claw_leaves_all_fail() {
    let r = key_lemma_audit(&Graph::star(3), 0, 1, 2, 3).unwrap();
    assert!(r.pairwise_cospectral());
    assert_eq!(r.strongly_cospectral, [false; 3]);
    assert!(r.violations().is_empty());
}

#[test]
fn spider_222_confirmed() {
    // Legs 1-2, 3-4, 5-6 around the centre 0.
    let g = Graph::spider(&[2, 2, 2]);
    let r = key_lemma_audit(&g, 0, 1, 3, 5).unwrap();
    assert!(r.pairwise_cospectral());
    assert!(!r.pairwise_strongly_cospectral());
    assert!(r.violations().is_empty());
}

#[test]
fn tiny_trees_have_no_separated_triple() {
    let r = audit_cut_triples(3).unwrap();
    assert!(r.success);
    assert_eq!(r.total("separated_triples"), 0);
}

#[test]
fn verify_up_to_ten() {
    let r = verify_trees(10).unwrap();
    assert!(r.success);
    assert_eq!(r.total("trees"), TREE_COUNTS[..10].iter().sum::<usize>() as u64);
    assert_eq!(r.total("strongly_cospectral_triples"), 0);
}

#[test]
fn cube_classes_are_observational() {
    let p2 = Graph::path(2);
    let q3 = p2.cartesian_product(&p2).unwrap().cartesian_product(&p2).unwrap();
    // Whatever the decision finds must be a consistent partition.
    let sets = find_sets(&q3).unwrap();
    let mut seen = [false; 8];
    for s in &sets {
        for &v in &s.vertices {
            assert!(!seen[v]);
            seen[v] = true;
        }
        assert!(s.signatures.iter().all(|d| d.strongly_cospectral));
    }
}
