//! Matroids with an exact rank table, their connectivity order on
//! bipartitions of the ground set, and matroid tree-width.
//!
//! The width-defining family here is graded by a *norm*: for a star
//! σ = {(A₁,B₁), …, (A_d,B_d)} of bipartitions put
//! ∥σ∥ = r(E) + Σᵢ (r(Bᵢ) − r(E)), so ∥∅∥ = r(E) and every member added
//! can only lower the norm.  Trees over the stars of norm < k correspond
//! exactly to tree-decompositions of the matroid of width < k, via the
//! translations at the bottom of this module.

use crate::duality::find_stree;
use crate::family::{Family, GradedStars};
use crate::graph::Graph;
use crate::sep::{is_star, Bipartitions, Sep, SepSystem, Side};
use crate::setsep::gf2_rank;
use crate::stree::STree;
use crate::widths::{WidthResult, Witness};
use crate::{Error, Result};

/// A matroid on ground set {0, …, n−1}, held as a full rank table indexed
/// by subset mask.  Construction validates the rank axioms: rank 0 for the
/// empty set, unit steps, and the local exchange law (together these imply
/// submodularity).
#[derive(Debug, Clone)]
pub struct Matroid {
    n: usize,
    rank: Vec<u32>,
    label: String,
}

impl Matroid {
    pub fn from_rank_fn(
        n: usize,
        f: impl Fn(Side) -> u32,
        label: impl Into<String>,
    ) -> Result<Matroid> {
        if n == 0 || n > 16 {
            return Err(Error::Input(format!(
                "matroid ground set supports 1..=16 elements, got {n}"
            )));
        }
        let rank: Vec<u32> = (0..1u64 << n).map(&f).collect();
        let m = Matroid {
            n,
            rank,
            label: label.into(),
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        if self.rank[0] != 0 {
            return Err(Error::Input(
                "matroid rank of the empty set must be 0".into(),
            ));
        }
        let size = 1usize << self.n;
        for x in 0..size {
            let rx = self.rank[x];
            for e in 0..self.n {
                if x >> e & 1 == 1 {
                    continue;
                }
                let rxe = self.rank[x | 1 << e];
                if rxe < rx || rxe > rx + 1 {
                    return Err(Error::Input(format!(
                        "matroid rank must grow by 0 or 1 per element: \
                         r({x:b}) = {rx} but with element {e} it is {rxe}"
                    )));
                }
            }
        }
        // Local exchange: when neither e nor f alone raises the rank of X,
        // adding both does not either.  With unit steps this implies
        // submodularity of the rank function.
        for x in 0..size {
            let rx = self.rank[x];
            for e in 0..self.n {
                if x >> e & 1 == 1 || self.rank[x | 1 << e] != rx {
                    continue;
                }
                for f in e + 1..self.n {
                    if x >> f & 1 == 1 || self.rank[x | 1 << f] != rx {
                        continue;
                    }
                    if self.rank[x | 1 << e | 1 << f] != rx {
                        return Err(Error::Input(format!(
                            "matroid rank violates the exchange law at set \
                             {x:b} with elements {e} and {f}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The cycle matroid of a graph: ground set the graph's edges, in their
    /// stored order; the rank of an edge set is the number of vertices
    /// minus the number of components it leaves.
    pub fn graphic(g: &Graph) -> Result<Matroid> {
        let edges = g.edges().to_vec();
        let nv = g.n();
        Matroid::from_rank_fn(
            edges.len(),
            |s| {
                let mut parent: Vec<u32> = (0..nv as u32).collect();
                fn find(parent: &mut [u32], mut x: u32) -> u32 {
                    while parent[x as usize] != x {
                        parent[x as usize] = parent[parent[x as usize] as usize];
                        x = parent[x as usize];
                    }
                    x
                }
                let mut components = nv as u32;
                for (i, &(u, v)) in edges.iter().enumerate() {
                    if s >> i & 1 == 1 {
                        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                        if ru != rv {
                            parent[ru as usize] = rv;
                            components -= 1;
                        }
                    }
                }
                nv as u32 - components
            },
            format!("cycle-matroid({} vertices, {} edges)", nv, edges.len()),
        )
    }

    /// The vector matroid of a set of GF(2) columns, each given as a bitmask
    /// of its nonzero coordinates.
    pub fn binary(columns: &[u64]) -> Result<Matroid> {
        let cols = columns.to_vec();
        Matroid::from_rank_fn(
            cols.len(),
            |s| gf2_rank(cols.iter().enumerate().filter(|&(i, _)| s >> i & 1 == 1).map(|(_, &c)| c)),
            format!("binary-matroid({} columns)", cols.len()),
        )
    }

    /// The uniform matroid: every set of at most r elements is independent.
    pub fn uniform(r: u32, n: usize) -> Result<Matroid> {
        if r as usize > n {
            return Err(Error::Input(format!(
                "uniform matroid needs rank at most the ground size, got rank {r} on {n} elements"
            )));
        }
        Matroid::from_rank_fn(
            n,
            |s| s.count_ones().min(r),
            format!("uniform-matroid(rank {r} of {n})"),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> Side {
        (1u64 << self.n) - 1
    }

    /// Rank of the subset given by a mask.
    pub fn rank_of(&self, s: Side) -> u32 {
        self.rank[s as usize]
    }

    /// Rank of the whole matroid.
    pub fn rank(&self) -> u32 {
        self.rank[(1usize << self.n) - 1]
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// The bipartition universe of the matroid's ground set under the
/// connectivity order λ(X) = r(X) + r(E∖X) − r(E).
pub fn matroid_lambda(m: &Matroid) -> Result<Bipartitions> {
    let full = m.full();
    let label = format!("connectivity of {}", m.label());
    let m = m.clone();
    Bipartitions::from_fn(
        m.n(),
        move |x| m.rank_of(x) + m.rank_of(full ^ x) - m.rank(),
        label,
    )
}

/// The norm of a star of bipartitions of the matroid's ground set:
/// r(E) + Σᵢ (r(Bᵢ) − r(E)) over the members (Aᵢ,Bᵢ).
pub fn star_norm(m: &Matroid, sigma: &[Sep]) -> i64 {
    let r = m.rank() as i64;
    r + sigma
        .iter()
        .map(|s| m.rank_of(s.b) as i64 - r)
        .sum::<i64>()
}

/// The family of stars of bipartitions with norm below k.  The empty star
/// has norm r(E); a singleton {(A,B)} has norm r(B).  Every member of such
/// a star automatically has connectivity below k, so the family needs no
/// separate order constraint.
pub struct MatroidNormFamily {
    m: Matroid,
    k: u32,
}

pub fn matroid_norm_family(m: &Matroid, k: u32) -> MatroidNormFamily {
    MatroidNormFamily { m: m.clone(), k }
}

impl MatroidNormFamily {
    fn graded<'a>(&'a self, sys: &'a SepSystem) -> GradedStars<'a> {
        GradedStars {
            sys,
            bound: self.k as i64,
            max_size: None,
            member_ok: Box::new(|_| true),
            value: Box::new(move |seps: &[Sep]| star_norm(&self.m, seps)),
        }
    }
}

impl Family for MatroidNormFamily {
    fn label(&self) -> String {
        format!("matroid-norm<{}", self.k)
    }

    fn contains(&self, set: &[Sep]) -> bool {
        let mut ms = set.to_vec();
        ms.sort_by(|x, y| x.cmp_key(*y));
        ms.dedup();
        if !is_star(&ms) {
            return false;
        }
        if ms.iter().any(|s| !self.member_admissible(*s)) {
            return false;
        }
        star_norm(&self.m, &ms) < self.k as i64
    }

    fn stars_only(&self) -> bool {
        true
    }

    fn bounded_member_size(&self) -> Option<usize> {
        None
    }

    fn upward_closed_among_stars(&self) -> bool {
        true
    }

    fn member_admissible(&self, s: Sep) -> bool {
        s.a | s.b == self.m.full() && s.a & s.b == 0
    }

    fn minimal_members(
        &self,
        sys: &SepSystem,
        allowed: Option<&[bool]>,
        anchor: Option<u32>,
    ) -> Vec<Vec<u32>> {
        self.graded(sys).minimal_members(allowed, anchor)
    }
}

/// A tree-decomposition of a matroid: a tree together with a placement of
/// every ground element at a node.  At a node t whose removal leaves
/// components with element sets F₁, …, F_d, the width is
/// Σᵢ r(E∖Fᵢ) − (d−1)·r(E); for an isolated node this is r(E).  The width
/// of the decomposition is the largest node width.
#[derive(Debug, Clone)]
pub struct MatroidTreeDecomposition {
    n_nodes: usize,
    edges: Vec<(u32, u32)>,
    /// ground element → node of the tree.
    placement: Vec<u32>,
}

impl MatroidTreeDecomposition {
    pub fn new(
        n_nodes: usize,
        edges: Vec<(u32, u32)>,
        placement: Vec<u32>,
    ) -> Result<MatroidTreeDecomposition> {
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
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n_nodes];
        for &(x, y) in &edges {
            if x as usize >= n_nodes || y as usize >= n_nodes || x == y {
                return Err(Error::Input(format!("bad tree edge ({x},{y})")));
            }
            adj[x as usize].push(y);
            adj[y as usize].push(x);
        }
        let mut seen = vec![false; n_nodes];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Input("tree is not connected".into()));
        }
        if placement.iter().any(|&t| t as usize >= n_nodes) {
            return Err(Error::Input("placement points outside the tree".into()));
        }
        Ok(MatroidTreeDecomposition {
            n_nodes,
            edges,
            placement,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn placement(&self) -> &[u32] {
        &self.placement
    }

    /// The node sets of the components of the tree with `t` removed.
    fn components_without(&self, t: u32) -> Vec<Vec<u32>> {
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); self.n_nodes];
        for &(x, y) in &self.edges {
            adj[x as usize].push(y);
            adj[y as usize].push(x);
        }
        let mut seen = vec![false; self.n_nodes];
        seen[t as usize] = true;
        let mut out = Vec::new();
        for start in 0..self.n_nodes as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            seen[start as usize] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn elements_at_nodes(&self, nodes: &[u32]) -> Side {
        let mut mask = 0u64;
        for (e, &t) in self.placement.iter().enumerate() {
            if nodes.binary_search(&t).is_ok() {
                mask |= 1 << e;
            }
        }
        mask
    }

    pub fn node_width(&self, m: &Matroid, t: u32) -> Result<i64> {
        if self.placement.len() != m.n() {
            return Err(Error::Input(format!(
                "decomposition places {} elements, matroid has {}",
                self.placement.len(),
                m.n()
            )));
        }
        let r = m.rank() as i64;
        let comps = self.components_without(t);
        let d = comps.len() as i64;
        let sum: i64 = comps
            .iter()
            .map(|c| m.rank_of(m.full() ^ self.elements_at_nodes(c)) as i64)
            .sum();
        Ok(sum - (d - 1) * r)
    }

    pub fn width(&self, m: &Matroid) -> Result<i64> {
        (0..self.n_nodes as u32)
            .map(|t| self.node_width(m, t))
            .try_fold(i64::MIN, |acc, w| Ok(acc.max(w?)))
    }
}

/// Translate a tree over the norm family into a tree-decomposition of the
/// matroid: each element goes to the unique node toward which every edge
/// label puts it on the inward side.
pub fn matroid_stree_to_td(tree: &STree, m: &Matroid) -> Result<MatroidTreeDecomposition> {
    let n_nodes = tree.n_nodes();
    let mut placement = Vec::with_capacity(m.n());
    for e in 0..m.n() {
        let bit = 1u64 << e;
        // Orient each tree edge toward the side whose label holds e on the
        // second coordinate; a node is a sink when all incident edges point
        // at it, and the star property makes the sink unique.
        let mut sinks = Vec::new();
        for t in 0..n_nodes as u32 {
            let all_inward = tree.neighbors(t).all(|w| {
                let s = tree.alpha(w, t).expect("edge");
                s.b & bit != 0
            });
            if all_inward {
                sinks.push(t);
            }
        }
        if sinks.len() != 1 {
            return Err(Error::Domain(format!(
                "element {e} has {} sinks in the labelled tree; the labels \
                 do not come from bipartitions of the ground set",
                sinks.len()
            )));
        }
        placement.push(sinks[0]);
    }
    MatroidTreeDecomposition::new(
        n_nodes,
        tree.edges().iter().map(|&(x, y, _)| (x, y)).collect(),
        placement,
    )
}

/// Translate a tree-decomposition into a labelled tree: the edge (s,t)
/// carries the bipartition (elements placed on the s-side, elements placed
/// on the t-side).  The inward star at each node then has norm exactly the
/// node's width, so a decomposition of width < k yields a tree over the
/// norm family with bound k.
pub fn matroid_td_to_stree(td: &MatroidTreeDecomposition, m: &Matroid) -> Result<STree> {
    if td.placement.len() != m.n() {
        return Err(Error::Input(format!(
            "decomposition places {} elements, matroid has {}",
            td.placement.len(),
            m.n()
        )));
    }
    let mut labelled = Vec::with_capacity(td.edges.len());
    // Temporary tree to reuse side_nodes for splitting.
    let shape = STree::from_edges(
        td.n_nodes,
        td.edges
            .iter()
            .map(|&(x, y)| (x, y, Sep::new(0, 0)))
            .collect(),
    )?;
    for &(x, y) in &td.edges {
        let x_side = shape.side_nodes(x, y);
        let a = td.elements_at_nodes(&x_side);
        labelled.push((x, y, Sep::new(a, m.full() ^ a)));
    }
    STree::from_edges(td.n_nodes, labelled)
}

/// Matroid tree-width: the least width of a tree-decomposition, found as
/// the least k admitting a tree over the norm family, minus one.  The
/// search ends by k = r(E) + 1, where the one-node decomposition works.
pub fn matroid_treewidth(m: &Matroid, max_nodes: usize) -> Result<WidthResult> {
    let u = matroid_lambda(m)?;
    for k in 1..=m.rank() + 1 {
        let sys = SepSystem::below(&u, k);
        let fam = matroid_norm_family(m, k);
        if let Some(tree) = find_stree(&sys, &fam, max_nodes)? {
            return Ok(WidthResult {
                value: k as i64 - 1,
                witness: Witness::Tree { k, tree },
            });
        }
    }
    Err(Error::Duality(format!(
        "no tree over the norm family of {} even at k = r(E) + 1",
        m.label()
    )))
}
