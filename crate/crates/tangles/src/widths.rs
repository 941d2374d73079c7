//! Width parameters of graphs.
//!
//! Each parameter is computed by ascending k: build the separation system
//! `S_k`, search for a tree over the defining family, and stop at the first
//! k that admits one.  The failed search one level below certifies the
//! lower bound, so the reported value is exact.  Branch-width additionally
//! needs a case analysis for its small values, which the tree searches
//! cannot see: separating single edges gives every star forest width ≤ 1
//! no matter how the trees come out.

use crate::duality::{find_stree, find_tangle};
use crate::family::BagFamily;
use crate::graph::{cover_star_family, vertex_separations, Graph};
use crate::sep::{Orientation, SepSystem};
use crate::stree::STree;
use crate::{Error, Result};

/// A width value together with what certifies it.
#[derive(Debug)]
pub struct WidthResult {
    pub value: i64,
    pub witness: Witness,
}

/// The certificate behind a reported width.
#[derive(Debug)]
pub enum Witness {
    /// A tree over the defining family at the least admitting k.  Its
    /// existence bounds the parameter from above; the failed search at
    /// k − 1 bounds it from below.
    Tree { k: u32, tree: STree },
    /// The value follows from a structural case analysis instead of a
    /// tree search (branch-width below 2).
    Case(&'static str),
}

impl WidthResult {
    fn from_tree(value: i64, k: u32, tree: STree) -> WidthResult {
        WidthResult {
            value,
            witness: Witness::Tree { k, tree },
        }
    }

    fn from_case(value: i64, why: &'static str) -> WidthResult {
        WidthResult {
            value,
            witness: Witness::Case(why),
        }
    }
}

/// Tree-width: least k with a tree over the bag family, minus 2.  A tree
/// at k means width < k − 1; no tree at k − 1 means width ≥ k − 2.
pub fn treewidth(g: &Graph, max_nodes: usize) -> Result<WidthResult> {
    let n = g.n();
    for k in 1..=(n as u32 + 1) {
        let sys = vertex_separations(g, k);
        let fam = BagFamily::tree(n, k);
        if let Some(tree) = find_stree(&sys, &fam, max_nodes)? {
            return Ok(WidthResult::from_tree(k as i64 - 2, k, tree));
        }
    }
    Err(Error::Duality(
        "no bag tree up to k = |V| + 1, where a one-node tree always exists".into(),
    ))
}

/// Path-width: same scheme over the ≤ 2-element bag stars, whose trees
/// are paths.
pub fn pathwidth(g: &Graph, max_nodes: usize) -> Result<WidthResult> {
    let n = g.n();
    for k in 1..=(n as u32 + 1) {
        let sys = vertex_separations(g, k);
        let fam = BagFamily::path(n, k);
        if let Some(tree) = find_stree(&sys, &fam, max_nodes)? {
            return Ok(WidthResult::from_tree(k as i64 - 2, k, tree));
        }
    }
    Err(Error::Duality(
        "no path tree up to k = |V| + 1, where a one-node tree always exists".into(),
    ))
}

/// Does every component have a vertex meeting all of its edges?  Stars,
/// single edges and isolated vertices qualify.
pub fn is_star_forest(g: &Graph) -> bool {
    g.components_within(g.full_mask()).iter().all(|&c| {
        let inside: Vec<(u32, u32)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| c & (1 << u) != 0 && c & (1 << v) != 0)
            .collect();
        inside.is_empty()
            || (0..g.n() as u32)
                .filter(|&v| c & (1 << v) != 0)
                .any(|v| inside.iter().all(|&(x, y)| x == v || y == v))
    })
}

fn every_component_at_most_one_edge(g: &Graph) -> bool {
    g.components_within(g.full_mask()).iter().all(|&c| {
        g.edges()
            .iter()
            .filter(|&&(u, v)| c & (1 << u) != 0 && c & (1 << v) != 0)
            .count()
            <= 1
    })
}

/// Branch-width.  Width 0 and 1 are decided structurally: a decomposition
/// only separates edges, so components with at most one edge cost nothing,
/// and a star's edges pairwise meet in its centre.  From 2 upward the
/// cover-star duality applies: branch-width < k iff a tree over the cover
/// stars exists, for k ≥ 3 and graphs with at least k vertices — and k
/// never exceeds |V| here, since a non-star-forest has ≥ 3 vertices and
/// branch-width at most ⌈2|V|/3⌉ ≤ |V| − 1.
pub fn branchwidth(g: &Graph, max_nodes: usize) -> Result<WidthResult> {
    if every_component_at_most_one_edge(g) {
        return Ok(WidthResult::from_case(
            0,
            "every component has at most one edge",
        ));
    }
    if is_star_forest(g) {
        return Ok(WidthResult::from_case(
            1,
            "a disjoint union of stars, one of them with two or more edges",
        ));
    }
    let fam = cover_star_family(g)?;
    for k in 3..=(g.n() as u32) {
        let sys = vertex_separations(g, k);
        if let Some(tree) = find_stree(&sys, &fam, max_nodes)? {
            return Ok(WidthResult::from_tree(k as i64 - 1, k, tree));
        }
    }
    Err(Error::Duality(
        "no cover-star tree up to k = |V| despite branch-width < |V|".into(),
    ))
}

/// The largest k with a cover-star tangle of S_k, together with that
/// tangle.  Tangles restrict downward, so the first failing k ends the
/// ascent; k is capped at |V|, beyond which the tangle/tree dichotomy for
/// the cover families no longer tracks branch-width.
#[derive(Debug)]
pub struct TangleNumber {
    pub value: u32,
    pub system: SepSystem,
    pub tangle: Orientation,
}

pub fn tangle_number(g: &Graph) -> Result<TangleNumber> {
    let fam = cover_star_family(g)?;
    let mut best: Option<TangleNumber> = None;
    for k in 1..=(g.n() as u32) {
        let sys = vertex_separations(g, k);
        match find_tangle(&sys, &fam) {
            Some(o) => {
                best = Some(TangleNumber {
                    value: k,
                    system: sys,
                    tangle: o,
                })
            }
            None => break,
        }
    }
    best.ok_or_else(|| {
        Error::Duality("no tangle of order 1; every nonempty graph has one".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 10_000;

    fn tw(n: usize, edges: &[(u32, u32)]) -> i64 {
        treewidth(&Graph::new(n, edges).unwrap(), CAP).unwrap().value
    }

    fn pw(n: usize, edges: &[(u32, u32)]) -> i64 {
        pathwidth(&Graph::new(n, edges).unwrap(), CAP).unwrap().value
    }

    fn bw(n: usize, edges: &[(u32, u32)]) -> i64 {
        branchwidth(&Graph::new(n, edges).unwrap(), CAP).unwrap().value
    }

    fn tn(n: usize, edges: &[(u32, u32)]) -> u32 {
        tangle_number(&Graph::new(n, edges).unwrap()).unwrap().value
    }

    #[test]
    fn treewidth_known_values() {
        assert_eq!(tw(1, &[]), 0);
        assert_eq!(tw(2, &[(0, 1)]), 1);
        assert_eq!(tw(4, &[(0, 1), (1, 2), (2, 3)]), 1);
        assert_eq!(tw(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]), 2);
        // K_4
        assert_eq!(tw(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]), 3);
    }

    #[test]
    fn pathwidth_known_values() {
        assert_eq!(pw(1, &[]), 0);
        assert_eq!(pw(4, &[(0, 1), (1, 2), (2, 3)]), 1);
        assert_eq!(pw(4, &[(0, 1), (0, 2), (0, 3)]), 1);
        assert_eq!(pw(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]), 2);
        // A spider with three legs of length 2 has path-width 2.
        assert_eq!(
            pw(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]),
            2
        );
    }

    #[test]
    fn branchwidth_known_values() {
        // Stars have branch-width 1, however large.
        assert_eq!(bw(3, &[(0, 1), (0, 2)]), 1);
        assert_eq!(bw(4, &[(0, 1), (0, 2), (0, 3)]), 1);
        assert_eq!(bw(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]), 1);
        // Components of at most one edge cost nothing.
        assert_eq!(bw(1, &[]), 0);
        assert_eq!(bw(4, &[(0, 1), (2, 3)]), 0);
        assert_eq!(bw(2, &[(0, 1)]), 0);
        // Non-star trees have branch-width 2, as do cycles.
        assert_eq!(bw(4, &[(0, 1), (1, 2), (2, 3)]), 2);
        assert_eq!(bw(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]), 2);
        // K_4
        assert_eq!(bw(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]), 3);
    }

    #[test]
    fn tangle_number_known_values() {
        assert_eq!(tn(1, &[]), 1);
        assert_eq!(tn(2, &[]), 1);
        // Any graph with an edge reaches 2 by orienting toward that edge.
        assert_eq!(tn(2, &[(0, 1)]), 2);
        assert_eq!(tn(4, &[(0, 1), (2, 3)]), 2);
        assert_eq!(tn(4, &[(0, 1), (0, 2), (0, 3)]), 2);
        // K_4 has a tangle of order 3 but none of order 4.
        assert_eq!(tn(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]), 3);
    }

    #[test]
    fn tangle_number_tracks_branchwidth_above_two() {
        // With at least one edge the tangle number is max(bw, 2); edgeless
        // graphs sit at 1.
        let corpus: Vec<(usize, Vec<(u32, u32)>)> = vec![
            (1, vec![]),
            (3, vec![]),
            (2, vec![(0, 1)]),
            (4, vec![(0, 1), (2, 3)]),
            (4, vec![(0, 1), (1, 2), (2, 3)]),
            (4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]),
            (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            (5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
        ];
        for (n, edges) in corpus {
            let g = Graph::new(n, &edges).unwrap();
            let t = tangle_number(&g).unwrap();
            assert!(t.tangle.is_consistent(&t.system));
            let expect = if g.m() == 0 {
                1
            } else {
                branchwidth(&g, CAP).unwrap().value.max(2) as u32
            };
            assert_eq!(t.value, expect, "n={n} edges={edges:?}");
        }
    }

    #[test]
    fn star_forest_classification() {
        let yes: Vec<(usize, Vec<(u32, u32)>)> = vec![
            (1, vec![]),
            (2, vec![(0, 1)]),
            (4, vec![(0, 1), (2, 3)]),
            (5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]),
            (6, vec![(0, 1), (0, 2), (3, 4)]),
        ];
        let no: Vec<(usize, Vec<(u32, u32)>)> = vec![
            (3, vec![(0, 1), (1, 2), (0, 2)]),
            (4, vec![(0, 1), (1, 2), (2, 3)]),
        ];
        for (n, edges) in yes {
            assert!(is_star_forest(&Graph::new(n, &edges).unwrap()));
        }
        for (n, edges) in no {
            assert!(!is_star_forest(&Graph::new(n, &edges).unwrap()));
        }
    }

    #[test]
    fn width_relations_on_a_corpus() {
        let corpus: Vec<(usize, Vec<(u32, u32)>)> = vec![
            (1, vec![]),
            (2, vec![(0, 1)]),
            (3, vec![(0, 1), (1, 2)]),
            (3, vec![(0, 1), (1, 2), (0, 2)]),
            (4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]),
            (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            (5, vec![(0, 1), (1, 2), (2, 3), (3, 4)]),
        ];
        for (n, edges) in corpus {
            let g = Graph::new(n, &edges).unwrap();
            let tw = treewidth(&g, CAP).unwrap().value;
            let pw = pathwidth(&g, CAP).unwrap().value;
            let bw = branchwidth(&g, CAP).unwrap().value;
            assert!(tw <= pw, "n={n} edges={edges:?}");
            // Classical sandwich, valid once bw ≥ 2.
            if bw >= 2 {
                assert!(bw - 1 <= tw && tw <= 3 * bw / 2 - 1, "n={n} edges={edges:?}");
            }
        }
    }
}
