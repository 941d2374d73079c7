//! Bipartition universes over a finite ground set, with the two order
//! functions that make them interesting on graphs: edge-cut counting and
//! GF(2) cut-rank.  Trees over the star covering family are carvings
//! (respectively rank-decompositions), so the width loops here compute
//! carving-width and rank-width; the dual objects are edge-tangles.
//!
//! The covering family over bipartitions contains every set of up to three
//! oriented bipartitions whose first sides jointly exhaust the ground set,
//! and additionally every singleton whose second side is a single element
//! (so that no orientation can shrink the "large" side to a point).

use crate::duality::{find_stree, find_tangle};
use crate::family::{CoverSets, Family};
use crate::graph::Graph;
use crate::sep::{Bipartitions, Orientation, Sep, SepSystem, Universe};
use crate::widths::{WidthResult, Witness};
use crate::{Error, Result};

/// The covering family over bipartitions of a ground set of `n` elements.
/// With `stars_required` only the stars remain — the family whose trees
/// are exactly the carvings of the ground set.
pub struct SetCoverFamily {
    full: u64,
    stars_required: bool,
}

impl SetCoverFamily {
    fn new(n: usize, stars_required: bool) -> Result<SetCoverFamily> {
        if !(2..=20).contains(&n) {
            return Err(Error::Input(format!(
                "bipartition cover family supports 2..=20 ground elements, got {n}"
            )));
        }
        Ok(SetCoverFamily {
            full: (1u64 << n) - 1,
            stars_required,
        })
    }

    fn sets<'a>(&'a self, sys: &'a SepSystem) -> CoverSets<'a> {
        CoverSets {
            sys,
            full: self.full,
            cover: Box::new(|s: Sep| s.a),
            stars_required: self.stars_required,
            extra_singleton: Box::new(|s: Sep| s.b.count_ones() == 1),
        }
    }
}

/// The full covering family over bipartitions of an `n`-element ground set.
pub fn set_cover_family(n: usize) -> Result<SetCoverFamily> {
    SetCoverFamily::new(n, false)
}

/// The subfamily of covering sets that are stars.
pub fn set_cover_star_family(n: usize) -> Result<SetCoverFamily> {
    SetCoverFamily::new(n, true)
}

impl Family for SetCoverFamily {
    fn label(&self) -> String {
        if self.stars_required {
            "set-cover-stars".into()
        } else {
            "set-covers".into()
        }
    }

    fn contains(&self, set: &[Sep]) -> bool {
        let mut ms = set.to_vec();
        ms.sort_by(|x, y| x.cmp_key(*y));
        ms.dedup();
        if ms.is_empty() || ms.len() > 3 {
            return false;
        }
        if ms.len() == 1 && !ms[0].is_degenerate() && ms[0].b.count_ones() == 1 {
            return true;
        }
        if self.stars_required && !crate::sep::is_star(&ms) {
            return false;
        }
        let mut c = 0u64;
        for s in &ms {
            c |= s.a;
        }
        c == self.full
    }

    fn stars_only(&self) -> bool {
        self.stars_required
    }

    fn bounded_member_size(&self) -> Option<usize> {
        Some(3)
    }

    fn minimal_members(
        &self,
        sys: &SepSystem,
        allowed: Option<&[bool]>,
        anchor: Option<u32>,
    ) -> Vec<Vec<u32>> {
        self.sets(sys).minimal_members(allowed, anchor)
    }

    fn all_members_within(
        &self,
        sys: &SepSystem,
        allowed: Option<&[bool]>,
    ) -> Option<Vec<Vec<u32>>> {
        Some(self.sets(sys).all_members(allowed))
    }
}

/// The bipartition universe of a graph's vertex set ordered by cut size:
/// the order of (X, Y) is the number of edges with one end in X and one
/// in Y.
pub fn edge_cut_order(g: &Graph) -> Result<Bipartitions> {
    let edges = g.edges().to_vec();
    Bipartitions::from_fn(
        g.n(),
        move |x| {
            edges
                .iter()
                .filter(|&&(u, v)| (x >> u & 1) != (x >> v & 1))
                .count() as u32
        },
        "edge-cut",
    )
}

/// The GF(2) rank of a collection of 64-bit row vectors.
pub fn gf2_rank(rows: impl IntoIterator<Item = u64>) -> u32 {
    let mut pivot = [0u64; 64];
    let mut rank = 0;
    for mut r in rows {
        while r != 0 {
            let h = 63 - r.leading_zeros() as usize;
            if pivot[h] == 0 {
                pivot[h] = r;
                rank += 1;
                break;
            }
            r ^= pivot[h];
        }
    }
    rank
}

/// The bipartition universe of a graph's vertex set ordered by cut-rank:
/// the order of (X, Y) is the GF(2) rank of the X-by-Y block of the
/// adjacency matrix.
pub fn rank_order(g: &Graph) -> Result<Bipartitions> {
    let adj: Vec<u64> = (0..g.n() as u32).map(|v| g.adj_mask(v)).collect();
    Bipartitions::from_fn(
        g.n(),
        move |x| {
            let y = !x;
            gf2_rank(
                adj.iter()
                    .enumerate()
                    .filter(|&(v, _)| x >> v & 1 == 1)
                    .map(|(_, &m)| m & y),
            )
        },
        "cut-rank",
    )
}

/// Find the least k at which the bipartition universe, cut below k, carries
/// a tree over the cover stars, along with that tree.
fn least_cover_tree(u: &Bipartitions, max_nodes: usize) -> Result<(u32, crate::stree::STree)> {
    let n = u.ground_size();
    let fam = set_cover_star_family(n)?;
    let max_ord = (0..1u64 << n).map(|m| u.cost_of(m)).max().unwrap_or(0);
    for k in 1..=max_ord + 1 {
        let sys = SepSystem::below(u, k);
        if let Some(tree) = find_stree(&sys, &fam, max_nodes)? {
            return Ok((k, tree));
        }
    }
    // Unreachable: once k exceeds every order, any carving of the ground
    // set is a tree over the cover stars.
    Err(Error::Duality(format!(
        "no covering tree over {} even with every bipartition available",
        u.label()
    )))
}

/// Carving-width of a graph with at least two vertices: the least, over
/// all carvings of the vertex set, of the largest edge cut displayed.
pub fn carving_width(g: &Graph, max_nodes: usize) -> Result<WidthResult> {
    let u = edge_cut_order(g)?;
    let (k, tree) = least_cover_tree(&u, max_nodes)?;
    Ok(WidthResult {
        value: k as i64 - 1,
        witness: Witness::Tree { k, tree },
    })
}

/// Rank-width of a graph with at least two vertices: the least, over all
/// rank-decompositions of the vertex set, of the largest cut-rank displayed.
pub fn rank_width(g: &Graph, max_nodes: usize) -> Result<WidthResult> {
    let u = rank_order(g)?;
    let (k, tree) = least_cover_tree(&u, max_nodes)?;
    Ok(WidthResult {
        value: k as i64 - 1,
        witness: Witness::Tree { k, tree },
    })
}

/// The largest k for which the graph's edge-cut bipartitions of order < k
/// admit an edge-tangle, together with that tangle.  Zero when even the
/// order-1 system has none (then there is no witness).
#[derive(Debug)]
pub struct EdgeTangleNumber {
    pub value: u32,
    pub witness: Option<(SepSystem, Orientation)>,
}

/// Compute the edge-tangle number by ascending k while tangles persist.
/// Restricting an edge-tangle to a lower-order system keeps it one, so the
/// first failure is definitive; k is capped at the number of vertices,
/// beyond which the covering family's guarantees lapse.
pub fn edge_tangle_number(g: &Graph) -> Result<EdgeTangleNumber> {
    let u = edge_cut_order(g)?;
    let fam = set_cover_star_family(g.n())?;
    let mut best = EdgeTangleNumber {
        value: 0,
        witness: None,
    };
    for k in 1..=g.n() as u32 {
        let sys = SepSystem::below(&u, k);
        match find_tangle(&sys, &fam) {
            Some(o) => {
                best = EdgeTangleNumber {
                    value: k,
                    witness: Some((sys, o)),
                }
            }
            None => break,
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sep::{check_order_function, side_from};

    const CAP: usize = 10_000;

    fn cw(g: &Graph) -> i64 {
        carving_width(g, CAP).unwrap().value
    }

    fn rw(g: &Graph) -> i64 {
        rank_width(g, CAP).unwrap().value
    }

    #[test]
    fn edge_cut_values_and_laws() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let u = edge_cut_order(&k4).unwrap();
        assert_eq!(u.cost_of(0), 0);
        assert_eq!(u.cost_of(side_from(&[0])), 3);
        assert_eq!(u.cost_of(side_from(&[0, 1])), 4);
        assert_eq!(u.cost_of(side_from(&[0, 1, 2, 3])), 0);

        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let up = edge_cut_order(&p3).unwrap();
        assert_eq!(up.cost_of(side_from(&[1])), 2);
        assert_eq!(up.cost_of(side_from(&[0, 2])), 2);
        assert_eq!(up.cost_of(side_from(&[0])), 1);

        // Symmetry and submodularity, exhaustively.
        assert!(check_order_function(&u));
        assert!(check_order_function(&up));
    }

    #[test]
    fn cut_rank_values_and_laws() {
        assert_eq!(gf2_rank([0b111, 0b111, 0b111]), 1);
        assert_eq!(gf2_rank([0b001, 0b010, 0b100]), 3);
        assert_eq!(gf2_rank([0b011, 0b110, 0b101]), 2);
        assert_eq!(gf2_rank([]), 0);

        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let u = rank_order(&p4).unwrap();
        // {0,2} vs {1,3}: rows 01|10 are independent.
        assert_eq!(u.cost_of(side_from(&[0, 2])), 2);
        assert_eq!(u.cost_of(side_from(&[0, 1])), 1);
        assert_eq!(u.cost_of(side_from(&[0])), 1);
        assert_eq!(u.cost_of(0), 0);
        assert!(check_order_function(&u));

        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let uk = rank_order(&k4).unwrap();
        // Complete graphs have all-ones cross blocks.
        assert_eq!(uk.cost_of(side_from(&[0])), 1);
        assert_eq!(uk.cost_of(side_from(&[0, 1])), 1);
        assert!(check_order_function(&uk));
    }

    #[test]
    fn carving_width_known_values() {
        let single_edge = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(cw(&single_edge), 1);

        let edgeless = Graph::new(2, &[]).unwrap();
        assert_eq!(cw(&edgeless), 0);

        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(cw(&k3), 2);

        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(cw(&c4), 2);

        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(cw(&k4), 4);
    }

    #[test]
    fn rank_width_known_values() {
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(rw(&p4), 1);

        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(rw(&c4), 1);

        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(rw(&k4), 1);

        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(rw(&c5), 2);
    }

    #[test]
    fn carving_trees_are_over_the_star_family() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let r = carving_width(&c4, CAP).unwrap();
        match r.witness {
            Witness::Tree { k, ref tree } => {
                assert_eq!(k, 3);
                assert!(tree.is_over(&set_cover_star_family(4).unwrap()));
            }
            _ => panic!("expected a tree witness"),
        }
    }

    #[test]
    fn edge_tangle_number_tracks_carving_width() {
        let edgeless = Graph::new(2, &[]).unwrap();
        let e = edge_tangle_number(&edgeless).unwrap();
        assert_eq!(e.value, 0);
        assert!(e.witness.is_none());

        let graphs: Vec<Graph> = vec![
            Graph::new(2, &[(0, 1)]).unwrap(),
            Graph::new(3, &[(0, 1), (1, 2)]).unwrap(),
            Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(),
            Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap(),
            Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
            Graph::new(4, &[(0, 1), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            let e = edge_tangle_number(g).unwrap();
            let c = cw(g) as u32;
            assert_eq!(
                e.value,
                c.min(g.n() as u32),
                "edge-tangle number should be carving-width capped at |V| on {:?}",
                g.edges()
            );
            let (sys, o) = e.witness.as_ref().expect("tangle witness");
            assert!(o.is_consistent(sys));
        }
    }
}
