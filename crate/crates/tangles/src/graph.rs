//! Graphs and their vertex separations.
//!
//! A vertex separation of a graph G = (V,E) is a pair (A,B) with A ∪ B = V
//! and no edge between A∖B and B∖A; its order is |A∩B|.  Sides may be
//! empty.  These form a submodular universe; the systems S_k of separations
//! of order < k are the habitat of tree-width, path-width, branch-width and
//! graph tangles.
//!
//! The tangle-defining cover family consists of the sets of up to three
//! separations whose left sides induce subgraphs covering all of G; the star
//! variant keeps only its stars.

use crate::family::{CoverSets, Family};
use crate::sep::{Orientation, Sep, SepSystem, Side, Universe};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted, deduplicated, each (u,v) with u < v.
    edges: Vec<(u32, u32)>,
    adj: Vec<Side>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::Input("graphs here have at least one vertex".into()));
        }
        if n > 16 {
            return Err(Error::Input(format!(
                "vertex count {n} exceeds the supported maximum of 16"
            )));
        }
        let mut es: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Input(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::Input(format!("loop at vertex {u}")));
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort_unstable();
        if es.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input("duplicate edge".into()));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in &es {
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
        }
        Ok(Graph { n, edges: es, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn full_mask(&self) -> Side {
        if self.n == 64 {
            !0
        } else {
            (1 << self.n) - 1
        }
    }

    pub fn adj_mask(&self, v: u32) -> Side {
        self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.adj[v as usize].count_ones()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize] >> v & 1 == 1
    }

    pub fn isolated_vertices(&self) -> Vec<u32> {
        (0..self.n as u32).filter(|&v| self.adj[v as usize] == 0).collect()
    }

    /// N(set): the vertices outside `set` with a neighbour in it.
    pub fn neighbors_mask(&self, set: Side) -> Side {
        let mut nb = 0u64;
        for v in 0..self.n as u32 {
            if set >> v & 1 == 1 {
                nb |= self.adj[v as usize];
            }
        }
        nb & !set
    }

    /// ∂(set): the vertices of `set` with a neighbour outside it.
    pub fn boundary(&self, set: Side) -> Side {
        let outside = self.full_mask() & !set;
        let mut b = 0u64;
        for v in 0..self.n as u32 {
            if set >> v & 1 == 1 && self.adj[v as usize] & outside != 0 {
                b |= 1 << v;
            }
        }
        b
    }

    /// Vertex sets of the connected components of the subgraph induced on
    /// `within`, as masks, sorted ascending.
    pub fn components_within(&self, within: Side) -> Vec<Side> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n as u32 {
            if within >> v & 1 == 0 || seen >> v & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << v;
            loop {
                let mut grown = comp;
                for u in 0..self.n as u32 {
                    if comp >> u & 1 == 1 {
                        grown |= self.adj[u as usize] & within;
                    }
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(self.full_mask()).len() <= 1
    }

    /// Does (a,b) satisfy the separation property: a ∪ b = V and no edge
    /// joins a∖b to b∖a?
    pub fn is_separation(&self, s: Sep) -> bool {
        if s.a | s.b != self.full_mask() {
            return false;
        }
        let left = s.a & !s.b;
        let right = s.b & !s.a;
        (0..self.n as u32)
            .all(|v| left >> v & 1 == 0 || self.adj[v as usize] & right == 0)
    }

    /// The coverage mask of a side: which vertices and edges lie in G[A].
    /// Bits 0..n are vertices, bits n..n+m are edges.
    pub fn cover_mask(&self, a: Side) -> u64 {
        let mut c = a & self.full_mask();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if a >> u & 1 == 1 && a >> v & 1 == 1 {
                c |= 1 << (self.n + i);
            }
        }
        c
    }

    pub fn full_cover_mask(&self) -> u64 {
        self.cover_mask(self.full_mask())
    }
}

/// The universe of vertex separations of a graph, ordered by |A∩B|.
pub struct GraphSeps<'a> {
    g: &'a Graph,
}

impl<'a> GraphSeps<'a> {
    pub fn new(g: &'a Graph) -> GraphSeps<'a> {
        GraphSeps { g }
    }
}

impl Universe for GraphSeps<'_> {
    fn ground_size(&self) -> usize {
        self.g.n()
    }

    fn label(&self) -> String {
        format!("vertex-seps(n={},m={})", self.g.n(), self.g.m())
    }

    fn is_element(&self, s: Sep) -> bool {
        self.g.is_separation(s)
    }

    fn ord(&self, s: Sep) -> u32 {
        (s.a & s.b).count_ones()
    }

    fn elements(&self) -> Vec<Sep> {
        let full = self.g.full_mask();
        let mut out = Vec::new();
        for a in 0..=full {
            // b ⊇ V∖a; the overlap with a ranges over subsets of a.
            let rest = full & !a;
            let mut s = a;
            loop {
                let sep = Sep::new(a, rest | s);
                if self.g.is_separation(sep) {
                    out.push(sep);
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & a;
            }
        }
        out.sort_by(|x, y| x.cmp_key(*y));
        out
    }
}

/// The system S_k of vertex separations of order < k.
pub fn vertex_separations(g: &Graph, k: u32) -> SepSystem {
    SepSystem::below(&GraphSeps::new(g), k)
}

/// The graph cover families: sets of at most three separations whose left
/// sides induce subgraphs that together cover G.  With `stars_required`
/// this is the star subfamily; without, the full cover family.
pub struct CoverFamily {
    g: Graph,
    stars_required: bool,
}

impl CoverFamily {
    fn new(g: &Graph, stars_required: bool) -> Result<CoverFamily> {
        if g.n() + g.m() > 64 {
            return Err(Error::Input(
                "coverage masks support at most 64 vertices plus edges".into(),
            ));
        }
        Ok(CoverFamily {
            g: g.clone(),
            stars_required,
        })
    }

    fn sets<'a>(&'a self, sys: &'a SepSystem) -> CoverSets<'a> {
        CoverSets {
            sys,
            full: self.g.full_cover_mask(),
            cover: Box::new(move |s: Sep| self.g.cover_mask(s.a)),
            stars_required: self.stars_required,
            extra_singleton: Box::new(|_| false),
        }
    }
}

/// The family of covers of G by up to three left sides.
pub fn cover_family(g: &Graph) -> Result<CoverFamily> {
    CoverFamily::new(g, false)
}

/// The subfamily of covers that are stars.
pub fn cover_star_family(g: &Graph) -> Result<CoverFamily> {
    CoverFamily::new(g, true)
}

impl Family for CoverFamily {
    fn label(&self) -> String {
        if self.stars_required {
            "cover-stars".into()
        } else {
            "covers".into()
        }
    }

    fn contains(&self, set: &[Sep]) -> bool {
        let mut ms = set.to_vec();
        ms.sort_by(|x, y| x.cmp_key(*y));
        ms.dedup();
        if ms.is_empty() || ms.len() > 3 {
            return false;
        }
        if self.stars_required && !crate::sep::is_star(&ms) {
            return false;
        }
        let mut c = 0u64;
        for s in &ms {
            c |= self.g.cover_mask(s.a);
        }
        c == self.g.full_cover_mask()
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

/// Reduce a cover contained in a consistent orientation to a star cover
/// contained in it, witnessing that consistent star-cover-avoiding orientations
/// avoid the whole cover family when |G| ≥ k.
///
/// Repeatedly: delete an element comparable to a larger one; replace one of
/// a crossing pair (A,B), (C,D) by the corner (A∩D, B∪C) or (B∩C, A∪D)
/// that lies in the system — one of them does by submodularity, the
/// replacement stays in the orientation by consistency, the set remains a
/// cover, and the number of crossing pairs drops.  The process ends in a
/// nested antichain, which in a consistent orientation free of degenerate
/// elements is a star.
pub fn reduce_cover_to_star(
    g: &Graph,
    sys: &SepSystem,
    o: &Orientation,
    member: &[u32],
) -> Result<Vec<u32>> {
    let t = cover_family(g)?;
    let seps_of = |set: &[u32]| -> Vec<Sep> { set.iter().map(|&i| sys.sep(i)).collect() };
    if !t.contains(&seps_of(member)) {
        return Err(Error::Domain("the given set is not a cover of G".into()));
    }
    if member.iter().any(|&i| !o.contains_idx(i)) {
        return Err(Error::Domain(
            "the cover is not contained in the orientation".into(),
        ));
    }
    if sys.seps().iter().any(|s| s.is_degenerate()) {
        return Err(Error::Domain(
            "reduction requires |G| ≥ k, so that the system has no \
             degenerate separation"
                .into(),
        ));
    }

    let mut cur: Vec<u32> = member.to_vec();
    cur.sort_unstable();
    cur.dedup();
    loop {
        let seps = seps_of(&cur);
        // Delete elements below other elements.
        if let Some(i) = (0..cur.len()).find(|&i| {
            (0..cur.len()).any(|j| i != j && seps[i].leq(seps[j]))
        }) {
            cur.remove(i);
            continue;
        }
        // Find a crossing pair.
        let crossing = (0..cur.len())
            .flat_map(|i| (0..cur.len()).map(move |j| (i, j)))
            .find(|&(i, j)| i < j && !seps[i].nested(seps[j]));
        let (i, j) = match crossing {
            None => break,
            Some(p) => p,
        };
        let (r, s) = (seps[i], seps[j]);
        // Corners r∧s* ≤ r and s∧r* ≤ s; submodularity puts one in the
        // system, and consistency of the orientation then contains it.
        let c1 = r.meet(s.inverse());
        let c2 = s.meet(r.inverse());
        let (pos, corner) = if sys.contains(c1) {
            (i, c1)
        } else if sys.contains(c2) {
            (j, c2)
        } else {
            return Err(Error::Domain(
                "submodularity violation: neither corner is in the system".into(),
            ));
        };
        let ci = sys.idx(corner).expect("corner is in the system");
        if !o.contains_idx(ci) {
            return Err(Error::Domain(
                "inconsistent orientation: a corner below a chosen separation \
                 is not chosen"
                    .into(),
            ));
        }
        cur[pos] = ci;
        cur.sort_unstable();
        cur.dedup();
    }

    let out_seps = seps_of(&cur);
    let star = cover_star_family(g)?;
    if !star.contains(&out_seps) {
        return Err(Error::Domain(
            "reduction did not reach a star cover".into(),
        ));
    }
    Ok(cur)
}
