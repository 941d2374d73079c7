//! Decompositions of graphs and the translations between them, trees of
//! separations, and the dual witnesses (brambles and blockages).
//!
//! The translations implemented here:
//!   * trees over bag families ⟷ tree-decompositions (bags are the
//!     intersections of inward B-sides, adhesion sets are the separators);
//!   * trees over the cover-star family ⟷ branch-decompositions;
//!   * brambles of order ≥ k ⟷ orientations of S_k avoiding the bag
//!     family with bound k;
//!   * blockages of order k−1 ⟷ orientations of S_k avoiding its two-member
//!     bag stars.

use crate::graph::{cover_star_family, vertex_separations, Graph};
use crate::sep::{side_elems, Orientation, Sep, SepSystem, Side};
use crate::stree::STree;
use crate::{Error, Result};

/// Validate an undirected tree on `nodes` vertices and return adjacency
/// lists (neighbor, edge index).
fn check_tree(nodes: usize, edges: &[(u32, u32)]) -> Result<Vec<Vec<(u32, u32)>>> {
    if nodes == 0 {
        return Err(Error::Input("a tree has at least one node".into()));
    }
    if edges.len() != nodes - 1 {
        return Err(Error::Input(format!(
            "a tree on {nodes} nodes has {} edges, got {}",
            nodes - 1,
            edges.len()
        )));
    }
    let mut adj = vec![Vec::new(); nodes];
    for (i, &(x, y)) in edges.iter().enumerate() {
        if x as usize >= nodes || y as usize >= nodes {
            return Err(Error::Input(format!("tree edge ({x},{y}) out of range")));
        }
        if x == y {
            return Err(Error::Input("tree edge is a loop".into()));
        }
        adj[x as usize].push((y, i as u32));
        adj[y as usize].push((x, i as u32));
    }
    let mut seen = vec![false; nodes];
    let mut stack = vec![0u32];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(u, _) in &adj[v as usize] {
            if !seen[u as usize] {
                seen[u as usize] = true;
                stack.push(u);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::Input("tree is not connected".into()));
    }
    Ok(adj)
}

// ---------------------------------------------------------------------------
// Tree-decompositions

#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    nodes: usize,
    edges: Vec<(u32, u32)>,
    bags: Vec<Side>,
}

impl TreeDecomposition {
    pub fn new(nodes: usize, edges: Vec<(u32, u32)>, bags: Vec<Side>) -> Result<TreeDecomposition> {
        check_tree(nodes, &edges)?;
        if bags.len() != nodes {
            return Err(Error::Input("one bag per tree node required".into()));
        }
        Ok(TreeDecomposition { nodes, edges, bags })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn bags(&self) -> &[Side] {
        &self.bags
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.count_ones() as i64).max().unwrap_or(0) - 1
    }

    /// Largest intersection of the bags of adjacent nodes; 0 for a single
    /// node.
    pub fn adhesion(&self) -> u32 {
        self.edges
            .iter()
            .map(|&(x, y)| (self.bags[x as usize] & self.bags[y as usize]).count_ones())
            .max()
            .unwrap_or(0)
    }

    pub fn is_path_shaped(&self) -> bool {
        let mut deg = vec![0usize; self.nodes];
        for &(x, y) in &self.edges {
            deg[x as usize] += 1;
            deg[y as usize] += 1;
        }
        deg.iter().all(|&d| d <= 2)
    }

    /// Check the three decomposition axioms against a graph: every vertex
    /// in a bag, every edge inside a bag, and every vertex's bags forming a
    /// subtree.
    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        let mut union = 0u64;
        for &b in &self.bags {
            union |= b;
        }
        if union & g.full_mask() != g.full_mask() {
            return Err(Error::Input("a vertex is in no bag".into()));
        }
        for &(u, v) in g.edges() {
            if !self
                .bags
                .iter()
                .any(|&b| b >> u & 1 == 1 && b >> v & 1 == 1)
            {
                return Err(Error::Input(format!("edge ({u},{v}) is inside no bag")));
            }
        }
        let adj = check_tree(self.nodes, &self.edges)?;
        for v in 0..g.n() as u32 {
            // The nodes whose bags contain v must induce a connected
            // subtree: count them, then flood from one.
            let total = self
                .bags
                .iter()
                .filter(|&&b| b >> v & 1 == 1)
                .count();
            let start = match self.bags.iter().position(|&b| b >> v & 1 == 1) {
                Some(s) => s as u32,
                None => continue,
            };
            let mut seen = vec![false; self.nodes];
            let mut stack = vec![start];
            seen[start as usize] = true;
            let mut reached = 0;
            while let Some(x) = stack.pop() {
                reached += 1;
                for &(u, _) in &adj[x as usize] {
                    if !seen[u as usize] && self.bags[u as usize] >> v & 1 == 1 {
                        seen[u as usize] = true;
                        stack.push(u);
                    }
                }
            }
            if reached != total {
                return Err(Error::Input(format!(
                    "the bags containing vertex {v} do not form a subtree"
                )));
            }
        }
        Ok(())
    }
}

/// Read a tree-decomposition off a tree of separations: the bag at a node
/// is the intersection of the B-sides of its inward labels (the whole
/// ground set at an isolated node).
pub fn stree_to_treedecomp(t: &STree, full: Side) -> TreeDecomposition {
    let bags: Vec<Side> = (0..t.n_nodes() as u32)
        .map(|v| {
            t.inward_labels(v)
                .iter()
                .fold(full, |acc, s| acc & s.b)
        })
        .collect();
    let edges: Vec<(u32, u32)> = t.edges().iter().map(|&(x, y, _)| (x, y)).collect();
    TreeDecomposition {
        nodes: t.n_nodes(),
        edges,
        bags,
    }
}

/// Turn a tree-decomposition into a tree of separations: the label towards
/// a side is the union of the bags there.  Fails if some label has order
/// ≥ k (the decomposition's adhesion is too large for the system).
pub fn treedecomp_to_stree(td: &TreeDecomposition, g: &Graph, k: u32) -> Result<STree> {
    td.validate_for(g)?;
    if td.nodes == 1 {
        return Ok(STree::k1());
    }
    let adj = check_tree(td.nodes, &td.edges)?;
    let sys = vertex_separations(g, k);
    let mut labelled = Vec::with_capacity(td.edges.len());
    for &(x, y) in &td.edges {
        // Union of bags on each side of the edge.
        let side_union = |from: u32, avoid: u32| -> Side {
            let mut acc = 0u64;
            let mut stack = vec![from];
            let mut seen = vec![false; td.nodes];
            seen[from as usize] = true;
            while let Some(v) = stack.pop() {
                acc |= td.bags[v as usize];
                for &(u, _) in &adj[v as usize] {
                    if u != avoid && !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u);
                    }
                }
            }
            acc
        };
        let a = side_union(x, y);
        let b = side_union(y, x);
        let s = Sep::new(a, b);
        if !sys.contains(s) {
            return Err(Error::Domain(format!(
                "separation {s} induced by a decomposition edge is not in the \
                 system of order < {k}"
            )));
        }
        labelled.push((x, y, s));
    }
    STree::from_edges(td.nodes, labelled)
}

// ---------------------------------------------------------------------------
// Branch-decompositions

#[derive(Debug, Clone)]
pub struct BranchDecomposition {
    nodes: usize,
    edges: Vec<(u32, u32)>,
    /// For each tree node, the graph edge it carries (leaves only).
    leaf_edge: Vec<Option<u32>>,
}

impl BranchDecomposition {
    pub fn new(
        g: &Graph,
        nodes: usize,
        edges: Vec<(u32, u32)>,
        assignment: &[(u32, u32)],
    ) -> Result<BranchDecomposition> {
        let adj = check_tree(nodes, &edges)?;
        if g.m() == 0 {
            return Err(Error::Input(
                "an edgeless graph has no branch-decomposition".into(),
            ));
        }
        let mut leaf_edge = vec![None; nodes];
        let mut used = vec![false; g.m()];
        for &(node, ge) in assignment {
            if node as usize >= nodes || ge as usize >= g.m() {
                return Err(Error::Input("assignment out of range".into()));
            }
            if leaf_edge[node as usize].replace(ge).is_some() {
                return Err(Error::Input(format!("node {node} carries two edges")));
            }
            if std::mem::replace(&mut used[ge as usize], true) {
                return Err(Error::Input(format!("graph edge {ge} appears twice")));
            }
        }
        if used.iter().any(|&u| !u) {
            return Err(Error::Input("a graph edge is carried by no leaf".into()));
        }
        for v in 0..nodes {
            let d = adj[v].len();
            match leaf_edge[v] {
                Some(_) if d > 1 => {
                    return Err(Error::Input(format!(
                        "node {v} carries an edge but is internal"
                    )))
                }
                None if d != 3 => {
                    return Err(Error::Input(format!(
                        "internal node {v} has degree {d}, expected 3"
                    )))
                }
                _ => {}
            }
        }
        Ok(BranchDecomposition {
            nodes,
            edges,
            leaf_edge,
        })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn leaf_edge(&self, v: u32) -> Option<u32> {
        self.leaf_edge[v as usize]
    }

    /// Vertex masks of the graph edges carried on each side of tree edge i.
    fn side_vertices(&self, g: &Graph, i: usize) -> (Side, Side) {
        let (x, y) = self.edges[i];
        let mut side = vec![0u8; self.nodes]; // 1 = x side, 2 = y side
        for (start, tag) in [(x, 1u8), (y, 2u8)] {
            let mut stack = vec![start];
            side[start as usize] = tag;
            while let Some(v) = stack.pop() {
                for (j, &(p, q)) in self.edges.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    for (a, b) in [(p, q), (q, p)] {
                        if a == v && side[b as usize] == 0 {
                            side[b as usize] = tag;
                            stack.push(b);
                        }
                    }
                }
            }
        }
        let mut vx = 0u64;
        let mut vy = 0u64;
        for v in 0..self.nodes {
            if let Some(ge) = self.leaf_edge[v] {
                let (a, b) = g.edges()[ge as usize];
                let m = (1u64 << a) | (1 << b);
                if side[v] == 1 {
                    vx |= m;
                } else {
                    vy |= m;
                }
            }
        }
        (vx, vy)
    }

    /// Width: the largest order of a tree edge, where the order is the
    /// number of vertices incident with carried edges on both sides.
    pub fn width(&self, g: &Graph) -> u32 {
        (0..self.edges.len())
            .map(|i| {
                let (vx, vy) = self.side_vertices(g, i);
                (vx & vy).count_ones()
            })
            .max()
            .unwrap_or(0)
    }
}

/// The units a branch-decomposition-to-tree translation distributes over
/// leaves: the graph's edges followed by its isolated vertices.
fn graph_units(g: &Graph) -> Vec<Side> {
    let mut units: Vec<Side> = g
        .edges()
        .iter()
        .map(|&(u, v)| (1u64 << u) | (1 << v))
        .collect();
    for v in g.isolated_vertices() {
        units.push(1u64 << v);
    }
    units
}

/// Translate a branch-decomposition of width < k into a tree of
/// separations over the cover-star family, for k ≥ 3.
///
/// Isolated vertices, which a branch-decomposition does not see, are hung
/// off subdivision nodes as extra leaves.  Each tree edge is labelled with
/// the vertex sets spanned by the units on its two sides; an edge at a
/// leaf instead gets the whole vertex set opposite the leaf's unit, which
/// keeps its star in the family at order ≤ 2 < k.
pub fn branchdecomp_to_stree(bd: &BranchDecomposition, g: &Graph, k: u32) -> Result<STree> {
    if k < 3 {
        return Err(Error::Domain(
            "the cover-star correspondence needs k ≥ 3".into(),
        ));
    }
    let w = bd.width(g);
    if w >= k {
        return Err(Error::Domain(format!(
            "branch-decomposition has width {w} ≥ {k}"
        )));
    }
    let full = g.full_mask();
    let units = graph_units(g);
    if units.len() == 1 {
        // G is a single edge or a single vertex.  Every leaf of a tree
        // over the cover stars needs an inward label (V, X), and each node
        // needs some inward label with first side V; a counting argument
        // over the tree's edges shows no such tree exists at any k.
        return Err(Error::Domain(
            "a graph that is a single edge or a single vertex has no tree \
             over the cover stars"
                .into(),
        ));
    }

    // Working tree: bd nodes first, then whatever we add.
    let mut edges: Vec<(u32, u32)> = bd.edges().to_vec();
    let mut unit_at: Vec<Option<u32>> = (0..bd.nodes() as u32)
        .map(|v| bd.leaf_edge(v))
        .collect();
    fn new_node(unit_at: &mut Vec<Option<u32>>, u: Option<u32>) -> u32 {
        unit_at.push(u);
        (unit_at.len() - 1) as u32
    }

    // Hang isolated-vertex units off subdivisions of the first edge.
    for iso in g.m() as u32..units.len() as u32 {
        if edges.is_empty() {
            // Single bd node: connect directly; shapes with two units are
            // finished below.
            let leaf = new_node(&mut unit_at, Some(iso));
            edges.push((0, leaf));
        } else {
            let (a, b) = edges[0];
            let mid = new_node(&mut unit_at, None);
            let leaf = new_node(&mut unit_at, Some(iso));
            edges[0] = (a, mid);
            edges.push((mid, b));
            edges.push((mid, leaf));
        }
    }

    // No edge may join two leaves (its label would be degenerate):
    // subdivide such edges.  With ≥ 2 units this happens only for the
    // two-unit shapes.
    let mut deg = vec![0usize; unit_at.len()];
    for &(x, y) in &edges {
        deg[x as usize] += 1;
        deg[y as usize] += 1;
    }
    for i in 0..edges.len() {
        let (x, y) = edges[i];
        if deg[x as usize] == 1 && deg[y as usize] == 1 {
            let mid = new_node(&mut unit_at, None);
            edges[i] = (x, mid);
            edges.push((mid, y));
        }
    }

    // Units reachable on the `from` side of the edge (from, avoid).
    let n_nodes = unit_at.len();
    let adj = check_tree(n_nodes, &edges)?;
    let raw_side = |from: u32, avoid: u32| -> Side {
        let mut acc = 0u64;
        let mut seen = vec![false; n_nodes];
        let mut stack = vec![from];
        seen[from as usize] = true;
        while let Some(v) = stack.pop() {
            if let Some(u) = unit_at[v as usize] {
                acc |= units[u as usize];
            }
            for &(u, _) in &adj[v as usize] {
                if u != avoid && !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        acc
    };

    let mut labelled = Vec::with_capacity(edges.len());
    for &(x, y) in &edges {
        let s = if adj[y as usize].len() == 1 {
            Sep::new(full, units[unit_at[y as usize].unwrap() as usize])
        } else if adj[x as usize].len() == 1 {
            Sep::new(units[unit_at[x as usize].unwrap() as usize], full)
        } else {
            Sep::new(raw_side(x, y), raw_side(y, x))
        };
        labelled.push((x, y, s));
    }
    let t = STree::from_edges(n_nodes, labelled)?;
    let sys = vertex_separations(g, k);
    let fam = cover_star_family(g)?;
    if !t.labels_in(&sys) || !t.is_over(&fam) {
        // The guarantee only covers graphs with at least k vertices; below
        // that, a split of the units can put every vertex on both sides.
        return Err(Error::Domain(
            "translated tree fails validation (the translation is only \
             guaranteed for graphs with at least k vertices)"
                .into(),
        ));
    }
    Ok(t)
}

/// Translate a tree of separations over the cover-star family into a
/// branch-decomposition of width < k.
///
/// Each graph edge walks from the root into the side claiming it (the
/// inward label whose A-side spans the edge) until no branch claims it,
/// and is hung off its stop node; grouping the branches at a node by their
/// label and expanding high-degree junctions per group keeps every new
/// interface inside one label's separator.
pub fn stree_to_branchdecomp(t: &STree, g: &Graph, k: u32) -> Result<BranchDecomposition> {
    if g.m() == 0 {
        return Err(Error::Input(
            "an edgeless graph has no branch-decomposition".into(),
        ));
    }
    let sys = vertex_separations(g, k);
    let fam = cover_star_family(g)?;
    if !t.labels_in(&sys) || !t.is_over(&fam) {
        return Err(Error::Domain(
            "the tree is not over the cover-star family in the given system".into(),
        ));
    }
    if g.m() == 1 {
        return BranchDecomposition::new(g, 1, Vec::new(), &[(0, 0)]);
    }

    // Walk each edge to its stop node.
    let mut stop = Vec::with_capacity(g.m());
    for &(u, v) in g.edges() {
        let ve: Side = (1u64 << u) | (1 << v);
        let mut at = 0u32;
        let mut came: Option<u32> = None;
        loop {
            let next = t
                .neighbors(at)
                .filter(|&nb| Some(nb) != came)
                .find(|&nb| {
                    let inward = t.alpha(nb, at).expect("tree edge");
                    ve & !inward.a == 0
                });
            match next {
                Some(nb) => {
                    came = Some(at);
                    at = nb;
                }
                None => break,
            }
        }
        let came = came.ok_or_else(|| {
            Error::Domain("internal: an edge was claimed by no branch".into())
        })?;
        stop.push((at, came));
    }

    // Working forest with label keys on edge ends, so that high-degree
    // nodes can be expanded by label groups.
    struct WEdge {
        p: u32,
        q: u32,
        key_p: Option<Sep>,
        key_q: Option<Sep>,
        alive: bool,
    }
    let mut unit: Vec<Option<u32>> = vec![None; t.n_nodes()];
    let mut wedges: Vec<WEdge> = t
        .edges()
        .iter()
        .map(|&(x, y, s)| WEdge {
            p: x,
            q: y,
            key_p: Some(s.inverse()),
            key_q: Some(s),
            alive: true,
        })
        .collect();
    for (e, &(at, came)) in stop.iter().enumerate() {
        let leaf = unit.len() as u32;
        unit.push(Some(e as u32));
        wedges.push(WEdge {
            p: leaf,
            q: at,
            key_p: None,
            key_q: Some(t.alpha(came, at).expect("tree edge")),
            alive: true,
        });
    }
    let mut alive: Vec<bool> = vec![true; unit.len()];

    loop {
        let n = unit.len();
        let mut inc: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (i, e) in wedges.iter().enumerate() {
            if e.alive {
                inc[e.p as usize].push(i as u32);
                inc[e.q as usize].push(i as u32);
            }
        }
        // Prune a bare node of degree ≤ 1.
        if let Some(v) = (0..n).find(|&v| {
            alive[v] && unit[v].is_none() && inc[v].len() <= 1
        }) {
            alive[v] = false;
            for &ei in &inc[v] {
                wedges[ei as usize].alive = false;
            }
            continue;
        }
        // Suppress a bare node of degree 2.
        if let Some(v) = (0..n).find(|&v| {
            alive[v] && unit[v].is_none() && inc[v].len() == 2
        }) {
            let (e1, e2) = (inc[v][0] as usize, inc[v][1] as usize);
            let (p, kp) = if wedges[e1].p as usize == v {
                (wedges[e1].q, wedges[e1].key_q)
            } else {
                (wedges[e1].p, wedges[e1].key_p)
            };
            let (q, kq) = if wedges[e2].p as usize == v {
                (wedges[e2].q, wedges[e2].key_q)
            } else {
                (wedges[e2].p, wedges[e2].key_p)
            };
            wedges[e1].alive = false;
            wedges[e2].alive = false;
            alive[v] = false;
            wedges.push(WEdge {
                p,
                q,
                key_p: kp,
                key_q: kq,
                alive: true,
            });
            continue;
        }
        // Expand a node of degree ≥ 4 into label-grouped chains.
        let v = match (0..n).find(|&v| alive[v] && inc[v].len() >= 4) {
            Some(v) => v,
            None => break,
        };
        let mut groups: Vec<(Sep, Vec<u32>)> = Vec::new();
        for &ei in &inc[v] {
            let key = if wedges[ei as usize].p as usize == v {
                wedges[ei as usize].key_p
            } else {
                wedges[ei as usize].key_q
            }
            .ok_or_else(|| Error::Domain("internal: expansion lost a label".into()))?;
            match groups.iter_mut().find(|(k2, _)| *k2 == key) {
                Some((_, items)) => items.push(ei),
                None => groups.push((key, vec![ei])),
            }
        }
        groups.sort_by(|(a, _), (b, _)| a.cmp_key(*b));
        alive[v] = false;
        let center = alive.len() as u32;
        alive.push(true);
        unit.push(None);
        let reattach = |wedges: &mut Vec<WEdge>, ei: u32, to: u32| {
            let e = &mut wedges[ei as usize];
            if e.p as usize == v {
                e.p = to;
                e.key_p = None;
            } else {
                e.q = to;
                e.key_q = None;
            }
        };
        for (_, items) in &groups {
            if items.len() == 1 {
                reattach(&mut wedges, items[0], center);
                continue;
            }
            // Chain: center — n_1 — … — n_{m−1}, item i at n_i, the last
            // node carrying the final two items.
            let mut prev = center;
            for (i, &ei) in items.iter().enumerate() {
                if i + 1 == items.len() {
                    reattach(&mut wedges, ei, prev);
                } else {
                    let node = alive.len() as u32;
                    alive.push(true);
                    unit.push(None);
                    wedges.push(WEdge {
                        p: prev,
                        q: node,
                        key_p: None,
                        key_q: None,
                        alive: true,
                    });
                    reattach(&mut wedges, ei, node);
                    prev = node;
                }
            }
        }
    }

    // Compact and hand to the validating constructor.
    let remap: Vec<Option<u32>> = {
        let mut next = 0u32;
        alive
            .iter()
            .map(|&a| {
                if a {
                    next += 1;
                    Some(next - 1)
                } else {
                    None
                }
            })
            .collect()
    };
    let nodes = remap.iter().flatten().count();
    let edges: Vec<(u32, u32)> = wedges
        .iter()
        .filter(|e| e.alive)
        .map(|e| {
            (
                remap[e.p as usize].expect("alive edge end"),
                remap[e.q as usize].expect("alive edge end"),
            )
        })
        .collect();
    let assignment: Vec<(u32, u32)> = unit
        .iter()
        .enumerate()
        .filter_map(|(v, u)| u.map(|ge| (remap[v].expect("unit node alive"), ge)))
        .collect();
    let bd = BranchDecomposition::new(g, nodes, edges, &assignment)?;
    if bd.width(g) >= k {
        return Err(Error::Domain(
            "internal: translated branch-decomposition too wide".into(),
        ));
    }
    Ok(bd)
}

// ---------------------------------------------------------------------------
// Brambles

/// A set of pairwise touching connected vertex sets.  Its order is the
/// least number of vertices meeting all of them.
#[derive(Debug, Clone)]
pub struct Bramble {
    sets: Vec<Side>,
}

impl Bramble {
    pub fn new(mut sets: Vec<Side>) -> Bramble {
        sets.sort_by(|&x, &y| crate::sep::side_lex_cmp(x, y));
        sets.dedup();
        Bramble { sets }
    }

    pub fn sets(&self) -> &[Side] {
        &self.sets
    }

    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        if self.sets.is_empty() {
            return Err(Error::Input("a bramble here has at least one set".into()));
        }
        for &c in &self.sets {
            if c == 0 || c & !g.full_mask() != 0 {
                return Err(Error::Input("bramble sets are nonempty vertex sets".into()));
            }
            if g.components_within(c).len() != 1 {
                return Err(Error::Input(format!(
                    "bramble set {{{}}} is not connected",
                    side_elems(c)
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )));
            }
        }
        for (i, &c) in self.sets.iter().enumerate() {
            for &d in &self.sets[i + 1..] {
                let touch = c & d != 0 || g.neighbors_mask(c) & d != 0;
                if !touch {
                    return Err(Error::Input("two bramble sets do not touch".into()));
                }
            }
        }
        Ok(())
    }

    /// Least size of a vertex set meeting every bramble set.
    pub fn order(&self, g: &Graph) -> u32 {
        let full = g.full_mask();
        for size in 0..=g.n() as u32 {
            let mut x: Side = 0;
            loop {
                if x.count_ones() == size && self.sets.iter().all(|&c| c & x != 0) {
                    return size;
                }
                if x == full {
                    break;
                }
                x += 1;
            }
        }
        g.n() as u32
    }
}

/// Orient S_k by where the bramble lives: choose (A,B) when some bramble
/// set lies in B∖A.  Needs order ≥ k so that every separator misses a set.
pub fn bramble_to_tangle(g: &Graph, br: &Bramble, k: u32) -> Result<Orientation> {
    br.validate_for(g)?;
    if br.order(g) < k {
        return Err(Error::Domain(format!(
            "bramble order {} is below {k}",
            br.order(g)
        )));
    }
    let sys = vertex_separations(g, k);
    let mut chosen = Vec::with_capacity(sys.pairs().len());
    for &(i, j) in sys.pairs() {
        let s = sys.sep(i);
        let in_b = br.sets.iter().any(|&c| c & s.a == 0);
        let in_a = br.sets.iter().any(|&c| c & s.b == 0);
        match (in_a, in_b) {
            (false, true) => chosen.push(i),
            (true, false) => chosen.push(j),
            _ => {
                return Err(Error::Domain(format!(
                    "bramble does not decide the separation {s}"
                )))
            }
        }
    }
    Orientation::new(&sys, chosen)
}

/// Extract a bramble of order ≥ k from an orientation of S_k avoiding the
/// bag family: for every vertex set X with |X| < k, the component star of
/// G−X has a unique member oriented inwards; collect those components.
pub fn tangle_to_bramble(g: &Graph, sys: &SepSystem, o: &Orientation) -> Result<Bramble> {
    let full = g.full_mask();
    let mut sets = Vec::new();
    let k = sys
        .seps()
        .iter()
        .map(|s| (s.a & s.b).count_ones() + 1)
        .max()
        .unwrap_or(1);
    let mut x: Side = 0;
    loop {
        if x.count_ones() < k {
            let comps = g.components_within(full & !x);
            let mut pick = None;
            for &c in &comps {
                let a = c | g.neighbors_mask(c);
                let b = full & !c;
                let idx = sys.idx(Sep::new(b, a)).ok_or_else(|| {
                    Error::Domain("component separation missing from the system".into())
                })?;
                if o.contains_idx(idx) {
                    if pick.is_some() {
                        return Err(Error::Domain(
                            "orientation inconsistent: two components point inwards".into(),
                        ));
                    }
                    pick = Some(c);
                }
            }
            match pick {
                Some(c) => sets.push(c),
                None => {
                    return Err(Error::Domain(
                        "orientation contains a full component star: no bramble".into(),
                    ))
                }
            }
        }
        if x == full {
            break;
        }
        x += 1;
    }
    Ok(Bramble::new(sets))
}

// ---------------------------------------------------------------------------
// Blockages

/// A downward-closed choice of one side from every separation of order
/// < k: the witness dual to path-decompositions.
#[derive(Debug, Clone)]
pub struct Blockage {
    sets: Vec<Side>,
}

impl Blockage {
    pub fn new(mut sets: Vec<Side>) -> Blockage {
        sets.sort_by(|&x, &y| crate::sep::side_lex_cmp(x, y));
        sets.dedup();
        Blockage { sets }
    }

    pub fn sets(&self) -> &[Side] {
        &self.sets
    }

    pub fn contains(&self, x: Side) -> bool {
        self.sets.contains(&x)
    }

    /// The three axioms: small boundaries, downward closure among sets
    /// with small boundary, and exactly one side of every separation of
    /// order < k.
    pub fn validate_for(&self, g: &Graph, k: u32) -> Result<()> {
        let full = g.full_mask();
        for &s in &self.sets {
            if s & !full != 0 {
                return Err(Error::Input("blockage set out of range".into()));
            }
            if g.boundary(s).count_ones() >= k {
                return Err(Error::Input(
                    "a blockage set has too large a boundary".into(),
                ));
            }
        }
        let mut x: Side = 0;
        loop {
            if g.boundary(x).count_ones() < k && !self.contains(x) {
                // Downward closure: no superset may be in the blockage.
                if self.sets.iter().any(|&s| x & !s == 0) {
                    return Err(Error::Input(
                        "blockage is not closed under taking subsets with \
                         small boundary"
                            .into(),
                    ));
                }
            }
            if x == full {
                break;
            }
            x += 1;
        }
        let sys = vertex_separations(g, k);
        for &(i, _) in sys.pairs() {
            let s = sys.sep(i);
            if self.contains(s.a) == self.contains(s.b) {
                return Err(Error::Input(format!(
                    "blockage must contain exactly one side of {s}"
                )));
            }
        }
        Ok(())
    }
}

/// The orientation {(X,Y) : X in the blockage} of S_k.
pub fn blockage_to_tangle(g: &Graph, bl: &Blockage, k: u32) -> Result<Orientation> {
    bl.validate_for(g, k)?;
    let sys = vertex_separations(g, k);
    let mut chosen = Vec::with_capacity(sys.pairs().len());
    for &(i, j) in sys.pairs() {
        let s = sys.sep(i);
        if bl.contains(s.a) {
            chosen.push(i);
        } else {
            chosen.push(j);
        }
    }
    Orientation::new(&sys, chosen)
}

/// The first components of an orientation of S_k form a blockage when the
/// orientation avoids the two-member bag stars.
pub fn tangle_to_blockage(sys: &SepSystem, o: &Orientation) -> Blockage {
    Blockage::new(o.indices().iter().map(|&i| sys.sep(i).a).collect())
}
