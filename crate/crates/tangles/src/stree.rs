//! Trees labelled with oriented separations.
//!
//! An S-tree is a finite tree together with a map α from its *oriented*
//! edges into a separation system, such that α(y,x) is always the inverse of
//! α(x,y).  The inward image of a node t is the set of labels α(x,t) over
//! edges xt; the tree is *over* a family F when every node's inward image
//! lies in F.  A single node with no edges has image ∅, so it is over F
//! exactly when ∅ ∈ F.
//!
//! Labels are stored once per undirected edge in a fixed orientation, with
//! the reverse label derived by inversion; the involution law is therefore
//! unrepresentable to violate.

use crate::family::Family;
use crate::sep::{Sep, SepSystem};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct STree {
    n_nodes: usize,
    /// (x, y, α(x,y)) per undirected edge xy.
    edges: Vec<(u32, u32, Sep)>,
    /// node → (edge index, neighbour)
    adj: Vec<Vec<(u32, u32)>>,
}

impl STree {
    /// The one-node tree.
    pub fn k1() -> STree {
        STree {
            n_nodes: 1,
            edges: Vec::new(),
            adj: vec![Vec::new()],
        }
    }

    pub fn from_edges(n_nodes: usize, edges: Vec<(u32, u32, Sep)>) -> Result<STree> {
        if n_nodes == 0 {
            return Err(Error::Input("a tree has at least one node".into()));
        }
        if edges.len() + 1 != n_nodes {
            return Err(Error::Input(format!(
                "a tree on {n_nodes} nodes has {} edges, got {}",
                n_nodes - 1,
                edges.len()
            )));
        }
        let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n_nodes];
        for (ei, &(x, y, _)) in edges.iter().enumerate() {
            if x as usize >= n_nodes || y as usize >= n_nodes {
                return Err(Error::Input(format!("edge ({x},{y}) out of range")));
            }
            if x == y {
                return Err(Error::Input(format!("self-loop at node {x}")));
            }
            adj[x as usize].push((ei as u32, y));
            adj[y as usize].push((ei as u32, x));
        }
        // Connectedness; with the edge count above this also rules out cycles.
        let mut seen = vec![false; n_nodes];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(_, w) in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Input("tree is not connected".into()));
        }
        Ok(STree {
            n_nodes,
            edges,
            adj,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[(u32, u32, Sep)] {
        &self.edges
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj[v as usize].iter().map(|&(_, w)| w)
    }

    /// α(x,y) for an oriented edge, if xy is an edge.
    pub fn alpha(&self, x: u32, y: u32) -> Option<Sep> {
        let &(ei, _) = self.adj[x as usize].iter().find(|&&(_, w)| w == y)?;
        let (ex, _, s) = self.edges[ei as usize];
        Some(if ex == x { s } else { s.inverse() })
    }

    /// Inward labels of t, one per incident edge (possibly with repeats).
    pub fn inward_labels(&self, t: u32) -> Vec<Sep> {
        self.adj[t as usize]
            .iter()
            .map(|&(ei, w)| {
                let (ex, _, s) = self.edges[ei as usize];
                if ex == w {
                    s
                } else {
                    s.inverse()
                }
            })
            .collect()
    }

    /// The inward image of t as a set, deduplicated and sorted.
    pub fn oriented_star_at(&self, t: u32) -> Vec<Sep> {
        let mut set = self.inward_labels(t);
        set.sort_by(|a, b| a.cmp_key(*b));
        set.dedup();
        set
    }

    /// Is every node's inward image a member of the family?
    pub fn is_over(&self, fam: &dyn Family) -> bool {
        (0..self.n_nodes as u32).all(|t| fam.contains(&self.oriented_star_at(t)))
    }

    /// Are all labels elements of the system?
    pub fn labels_in(&self, sys: &SepSystem) -> bool {
        self.edges.iter().all(|&(_, _, s)| sys.contains(s))
    }

    /// Nodes on the x-side of the oriented edge (x,y), i.e. the component
    /// of the tree minus xy that contains x.
    pub fn side_nodes(&self, x: u32, y: u32) -> Vec<u32> {
        let mut seen = vec![false; self.n_nodes];
        seen[x as usize] = true;
        seen[y as usize] = true; // blocked, removed again below
        let mut stack = vec![x];
        let mut out = vec![x];
        while let Some(v) = stack.pop() {
            for &(_, w) in &self.adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The natural partial order on oriented edges: (x,y) ≤ (u,v) iff the
    /// x-side of xy is contained in the u-side of uv.  Reflexive; distinct
    /// oriented edges compare when one "points along" the other.
    pub fn natural_edge_leq(&self, e1: (u32, u32), e2: (u32, u32)) -> bool {
        let s1 = self.side_nodes(e1.0, e1.1);
        let s2 = self.side_nodes(e2.0, e2.1);
        s1.iter().all(|v| s2.binary_search(v).is_ok())
    }

    /// Checks that α is order-preserving from the natural edge order into
    /// the separation order.  Returns a violating pair of oriented edges,
    /// or None if the labelling is order-preserving.
    pub fn check_order_preserving(&self) -> Option<((u32, u32), (u32, u32))> {
        let mut oriented = Vec::new();
        for &(x, y, s) in &self.edges {
            oriented.push(((x, y), s));
            oriented.push(((y, x), s.inverse()));
        }
        for &(e1, s1) in &oriented {
            for &(e2, s2) in &oriented {
                if self.natural_edge_leq(e1, e2) && !s1.leq(s2) {
                    return Some((e1, e2));
                }
            }
        }
        None
    }
}
