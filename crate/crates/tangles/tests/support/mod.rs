//! Brute-force oracles shared by the integration tests.
//!
//! Everything here recomputes its answer from first principles — by
//! exhaustive enumeration straight off the definitions — independently of
//! the library's searches, so agreement is evidence rather than tautology.
//! All of it is exponential and meant for the small corpora used below.

#![allow(dead_code)]

use tangles::family::Family;
use tangles::graph::Graph;
use tangles::sep::{is_consistent, Sep, SepSystem};

// ---------------------------------------------------------------------------
// Graph corpus, up to isomorphism
// ---------------------------------------------------------------------------

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// All graphs on exactly `n` vertices, one representative per isomorphism
/// class (chosen as the lexicographically least edge-mask).
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let pair_idx = |u: usize, v: usize| -> usize {
        pairs
            .iter()
            .position(|&p| p == (u.min(v), u.max(v)))
            .unwrap()
    };
    let perms = permutations(n);
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u32;
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        m |= 1 << pair_idx(p[u], p[v]);
                    }
                }
                m
            })
            .min()
            .unwrap();
        if canon == mask {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &(u, v))| (u as u32, v as u32))
                .collect();
            out.push(Graph::new(n, &edges).unwrap());
        }
    }
    out
}

/// Every graph on 1 to `n_max` vertices, up to isomorphism.
pub fn corpus(n_max: usize) -> Vec<Graph> {
    (1..=n_max).flat_map(graphs_up_to_iso).collect()
}

pub fn is_connected(g: &Graph) -> bool {
    g.components_within(g.full_mask()).len() == 1
}

/// Decode a Prüfer sequence over {0, …, n−1} into the edge list of the
/// labelled tree it encodes.
fn pruefer_decode(n: usize, seq: &[u32]) -> Vec<(u32, u32)> {
    let mut degree = vec![1u32; n];
    for &s in seq {
        degree[s as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
        edges.push((leaf as u32, s));
        degree[leaf] = 0;
        degree[s as usize] -= 1;
    }
    let last: Vec<u32> = (0..n)
        .filter(|&i| degree[i] == 1)
        .map(|i| i as u32)
        .collect();
    edges.push((last[0], last[1]));
    edges
}

/// All trees on exactly `n` vertices up to isomorphism: decode every Prüfer
/// sequence and keep one representative per canonical edge-mask.
pub fn trees_up_to_iso(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n));
    if n == 1 {
        return vec![Graph::new(1, &[]).unwrap()];
    }
    if n == 2 {
        return vec![Graph::new(2, &[(0, 1)]).unwrap()];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let pair_idx = |u: usize, v: usize| -> usize {
        pairs
            .iter()
            .position(|&p| p == (u.min(v), u.max(v)))
            .unwrap()
    };
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut seq = vec![0u32; n - 2];
    loop {
        let edges = pruefer_decode(n, &seq);
        let mask: u32 = edges
            .iter()
            .fold(0, |m, &(u, v)| m | 1 << pair_idx(u as usize, v as usize));
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u32;
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        m |= 1 << pair_idx(p[u], p[v]);
                    }
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let canon_edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| canon >> i & 1 == 1)
                .map(|(_, &(u, v))| (u as u32, v as u32))
                .collect();
            out.push(Graph::new(n, &canon_edges).unwrap());
        }
        // Odometer over all (n−2)-digit base-n sequences.
        let mut pos = 0;
        loop {
            if pos == seq.len() {
                return out;
            }
            seq[pos] += 1;
            if (seq[pos] as usize) < n {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Tree-width and path-width by exhausting vertex orders
// ---------------------------------------------------------------------------

/// Minimum over elimination orderings of the largest degree at elimination
/// time (neighbours of an eliminated vertex get clique-connected).  This is
/// exactly the least width of a tree-decomposition.
pub fn brute_treewidth(g: &Graph) -> i64 {
    let n = g.n();
    let base: Vec<u64> = (0..n as u32).map(|v| g.adj_mask(v)).collect();
    let mut best = i64::MAX;
    for order in permutations(n) {
        let mut adj = base.clone();
        let mut alive = g.full_mask();
        let mut worst = 0i64;
        for &v in &order {
            let nb = adj[v] & alive & !(1 << v);
            worst = worst.max(nb.count_ones() as i64);
            let mut rest = nb;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                adj[u] |= nb & !(1 << u);
            }
            alive &= !(1 << v);
        }
        best = best.min(worst);
    }
    best
}

/// Minimum over linear layouts of the largest boundary: placed vertices
/// that still have an unplaced neighbour.  This vertex separation number
/// equals path-width.
pub fn brute_pathwidth(g: &Graph) -> i64 {
    let n = g.n();
    let mut best = i64::MAX;
    for order in permutations(n) {
        let mut placed = 0u64;
        let mut worst = 0i64;
        for &v in &order {
            placed |= 1 << v;
            let boundary = (0..n as u32)
                .filter(|&u| placed >> u & 1 == 1 && g.adj_mask(u) & !placed != 0)
                .count();
            worst = worst.max(boundary as i64);
        }
        best = best.min(worst);
    }
    best
}

// ---------------------------------------------------------------------------
// Branch-width, carving-width and rank-width by exhausting leaf-trees
// ---------------------------------------------------------------------------

/// Visit every unrooted tree with leaves 0..m-1 and all internal nodes of
/// degree three, for m ≥ 3, by inserting one leaf at a time into every
/// edge — (2m−5)!! trees, each exactly once.  Nodes m..2m-2 are internal.
fn each_leaf_tree(m: usize, f: &mut impl FnMut(&[(u8, u8)])) {
    assert!((3..=12).contains(&m));
    fn insert(edges: &mut Vec<(u8, u8)>, leaf: u8, m: u8, f: &mut impl FnMut(&[(u8, u8)])) {
        if leaf == m {
            f(edges);
            return;
        }
        let c = m + (leaf - 2);
        for i in 0..edges.len() {
            let (a, b) = edges[i];
            edges[i] = (a, c);
            edges.push((c, b));
            edges.push((c, leaf));
            insert(edges, leaf + 1, m, f);
            edges.pop();
            edges.pop();
            edges[i] = (a, b);
        }
    }
    let m8 = m as u8;
    let mut edges = vec![(0, m8), (1, m8), (2, m8)];
    insert(&mut edges, 3, m8, f);
}

/// Minimum over all leaf-trees on m leaves of the largest width displayed
/// by a tree edge.  `width(S)` scores the leaf subset S (and must equal
/// `width(complement)`).  m = 1 has no tree edge; m = 2 has exactly one.
pub fn min_max_over_leaf_trees(m: usize, width: &mut impl FnMut(u16) -> i64) -> i64 {
    match m {
        0 | 1 => 0,
        2 => width(1),
        _ => {
            let mut best = i64::MAX;
            each_leaf_tree(m, &mut |edges| {
                let nodes = 2 * m - 2;
                let mut adj: Vec<Vec<u8>> = vec![Vec::new(); nodes];
                for &(a, b) in edges {
                    adj[a as usize].push(b);
                    adj[b as usize].push(a);
                }
                // One DFS from the first internal node computes the leaf
                // set below every edge.
                let mut worst = 0i64;
                let mut stack: Vec<(u8, u8, bool)> = vec![(m as u8, u8::MAX, false)];
                let mut below: Vec<u16> = vec![0; nodes];
                while let Some((v, parent, expanded)) = stack.pop() {
                    if expanded {
                        let mut mask = if (v as usize) < m { 1u16 << v } else { 0 };
                        for &w in &adj[v as usize] {
                            if w != parent {
                                mask |= below[w as usize];
                            }
                        }
                        below[v as usize] = mask;
                        if parent != u8::MAX {
                            worst = worst.max(width(mask));
                        }
                    } else {
                        stack.push((v, parent, true));
                        for &w in &adj[v as usize] {
                            if w != parent {
                                stack.push((w, v, false));
                            }
                        }
                    }
                }
                best = best.min(worst);
            });
            best
        }
    }
}

/// Branch-width: leaves are the edges of G; a displayed edge set E₁ is
/// scored by the vertices incident with both E₁ and its complement.
pub fn brute_branchwidth(g: &Graph) -> i64 {
    let m = g.m();
    if m == 0 {
        return 0;
    }
    let em: Vec<u64> = g
        .edges()
        .iter()
        .map(|&(u, v)| (1u64 << u) | (1 << v))
        .collect();
    let mut union = vec![0u64; 1 << m];
    for s in 1usize..1 << m {
        union[s] = union[s & (s - 1)] | em[s.trailing_zeros() as usize];
    }
    let full = (1u16 << m) - 1;
    min_max_over_leaf_trees(m, &mut |s: u16| {
        (union[s as usize] & union[(full ^ s) as usize]).count_ones() as i64
    })
}

/// Carving-width: leaves are the vertices of G; a displayed vertex set is
/// scored by the number of crossing edges.  Defined for n ≥ 2.
pub fn brute_carving_width(g: &Graph) -> i64 {
    let n = g.n();
    assert!(n >= 2);
    min_max_over_leaf_trees(n, &mut |s: u16| {
        g.edges()
            .iter()
            .filter(|&&(u, v)| (s >> u & 1) != (s >> v & 1))
            .count() as i64
    })
}

fn gf2_rank_u16(rows: impl IntoIterator<Item = u16>) -> i64 {
    let mut pivots: Vec<u16> = Vec::new();
    for mut r in rows {
        for &p in &pivots {
            let high = 1u16 << (15 - p.leading_zeros());
            if r & high != 0 {
                r ^= p;
            }
        }
        if r != 0 {
            pivots.push(r);
        }
    }
    pivots.len() as i64
}

/// Rank-width: leaves are the vertices; a displayed set X is scored by the
/// GF(2) rank of the adjacency submatrix between X and its complement.
pub fn brute_rank_width(g: &Graph) -> i64 {
    let n = g.n();
    assert!(n >= 2);
    min_max_over_leaf_trees(n, &mut |s: u16| {
        gf2_rank_u16(
            (0..n as u32)
                .filter(|&v| s >> v & 1 == 1)
                .map(|v| (g.adj_mask(v) as u16) & !s),
        )
    })
}

// ---------------------------------------------------------------------------
// Brambles
// ---------------------------------------------------------------------------

fn connected_subsets(g: &Graph) -> Vec<u64> {
    (1..=g.full_mask())
        .filter(|&m| g.components_within(m).len() == 1)
        .collect()
}

fn touch(g: &Graph, x: u64, y: u64) -> bool {
    if x & y != 0 {
        return true;
    }
    g.edges()
        .iter()
        .any(|&(u, v)| (x >> u & 1 == 1 && y >> v & 1 == 1) || (x >> v & 1 == 1 && y >> u & 1 == 1))
}

/// Least size of a vertex set meeting every member of the family, by
/// scanning all 2^n candidates.
pub fn min_hitting_set(n: usize, family: &[u64]) -> u32 {
    (0..1u64 << n)
        .filter(|&h| family.iter().all(|&b| b & h != 0))
        .map(|h| h.count_ones())
        .min()
        .expect("the full vertex set hits everything")
}

/// The largest order of a bramble of G: a family of pairwise touching
/// connected vertex sets, scored by its least hitting set.  Adding sets
/// to a bramble never lowers the order, so it suffices to score the
/// maximal pairwise-touching families, enumerated Bron–Kerbosch style.
pub fn brute_bramble_order(g: &Graph) -> u32 {
    let cands = connected_subsets(g);
    let nc = cands.len();
    assert!(nc <= 63);
    let mut adj = vec![0u64; nc];
    for i in 0..nc {
        for j in i + 1..nc {
            if touch(g, cands[i], cands[j]) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let mut best = 0u32;
    let mut order = |clique: u64| {
        let family: Vec<u64> = (0..nc).filter(|&i| clique >> i & 1 == 1).map(|i| cands[i]).collect();
        if !family.is_empty() {
            best = best.max(min_hitting_set(g.n(), &family));
        }
    };
    fn bk(r: u64, mut p: u64, mut x: u64, adj: &[u64], out: &mut impl FnMut(u64)) {
        if p == 0 && x == 0 {
            out(r);
            return;
        }
        let pivot = (p | x).trailing_zeros() as usize;
        let mut rest = p & !adj[pivot];
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            bk(r | 1 << v, p & adj[v], x & adj[v], adj, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    if nc > 0 {
        bk(0, (1u64 << nc) - 1, 0, &adj, &mut order);
    }
    best
}

// ---------------------------------------------------------------------------
// Blockages, as a 2-SAT instance
// ---------------------------------------------------------------------------

struct TwoSat {
    n: usize,
    adj: Vec<Vec<u32>>,
    radj: Vec<Vec<u32>>,
}

impl TwoSat {
    fn new(n: usize) -> TwoSat {
        TwoSat {
            n,
            adj: vec![Vec::new(); 2 * n],
            radj: vec![Vec::new(); 2 * n],
        }
    }

    /// Literals: variable v asserted is 2v, negated is 2v+1.
    fn add_or(&mut self, l1: u32, l2: u32) {
        // (l1 ∨ l2)  ⇒  ¬l1 → l2 and ¬l2 → l1.
        for (from, to) in [(l1 ^ 1, l2), (l2 ^ 1, l1)] {
            self.adj[from as usize].push(to);
            self.radj[to as usize].push(from);
        }
    }

    fn satisfiable(&self) -> bool {
        // Kosaraju: order by finish time, then label components on the
        // reverse graph; unsatisfiable iff some v and ¬v share one.
        let m = 2 * self.n;
        let mut seen = vec![false; m];
        let mut finish = Vec::with_capacity(m);
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut stack = vec![(s, 0usize)];
            seen[s] = true;
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < self.adj[v].len() {
                    let w = self.adj[v][*i] as usize;
                    *i += 1;
                    if !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    finish.push(v);
                    stack.pop();
                }
            }
        }
        let mut comp = vec![usize::MAX; m];
        let mut c = 0;
        for &s in finish.iter().rev() {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = c;
            while let Some(v) = stack.pop() {
                for &w in &self.radj[v] {
                    if comp[w as usize] == usize::MAX {
                        comp[w as usize] = c;
                        stack.push(w as usize);
                    }
                }
            }
            c += 1;
        }
        (0..self.n).all(|v| comp[2 * v] != comp[2 * v + 1])
    }
}

/// Vertices of X with a neighbour outside X.
fn vertex_boundary(g: &Graph, x: u64) -> u64 {
    let mut b = 0u64;
    for v in 0..g.n() as u32 {
        if x >> v & 1 == 1 && g.adj_mask(v) & !x != 0 {
            b |= 1 << v;
        }
    }
    b
}

/// Does G have a blockage of order k−1: a family B of vertex sets with
/// small boundary (|∂X| < k), closed downward among such sets, and picking
/// exactly one side of every separation of order < k?  Encoded in 2-SAT
/// with one variable per small-boundary set.
pub fn has_blockage(g: &Graph, k: u32) -> bool {
    let full = g.full_mask();
    let admissible: Vec<u64> = (0..=full)
        .filter(|&x| vertex_boundary(g, x).count_ones() < k)
        .collect();
    let var = |x: u64| -> u32 {
        admissible.binary_search(&x).expect("side is admissible") as u32
    };
    let mut sat = TwoSat::new(admissible.len());

    // Exactly one side of every separation {X, Y} of order < k.  A side
    // X has ∂X ⊆ X∩Y, so both sides are admissible variables.
    for x in 0..=full {
        for y in x..=full {
            if x | y != full || (x & y).count_ones() >= k {
                continue;
            }
            let crossing = g.edges().iter().any(|&(u, v)| {
                let (xo, yo) = (x & !y, y & !x);
                (xo >> u & 1 == 1 && yo >> v & 1 == 1) || (xo >> v & 1 == 1 && yo >> u & 1 == 1)
            });
            if crossing {
                continue;
            }
            if x == y {
                // {V, V} ∈ S_k: no family contains exactly one of X and X.
                return false;
            }
            let (vx, vy) = (var(x), var(y));
            sat.add_or(2 * vx, 2 * vy);
            sat.add_or(2 * vx + 1, 2 * vy + 1);
        }
    }

    // Downward closure among admissible sets.
    for &x in &admissible {
        let vx = var(x);
        let mut s = x;
        while s != 0 {
            s = (s - 1) & x;
            if admissible.binary_search(&s).is_ok() {
                sat.add_or(2 * vx + 1, 2 * var(s));
            }
            if s == 0 {
                break;
            }
        }
    }
    sat.satisfiable()
}

// ---------------------------------------------------------------------------
// Tangles by exhaustive orientation
// ---------------------------------------------------------------------------

/// Does the system have a consistent orientation no subset of which is a
/// family member?  Checked verbatim: all 2^pairs orientations, all subsets
/// of each.  Only for systems of at most 12 oriented separations.
pub fn brute_tangle_exists(sys: &SepSystem, fam: &dyn Family) -> bool {
    let pairs = sys.pairs();
    let p = pairs.len();
    assert!(sys.len() <= 12, "oracle is exponential in the system size");
    for mask in 0u32..1 << p {
        let seps: Vec<Sep> = pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| sys.sep(if mask >> i & 1 == 1 { b } else { a }))
            .collect();
        if !is_consistent(&seps) {
            continue;
        }
        let avoided = (0u32..1 << p).all(|sub| {
            let chosen: Vec<Sep> = (0..p).filter(|&i| sub >> i & 1 == 1).map(|i| seps[i]).collect();
            !fam.contains(&chosen)
        });
        if avoided {
            return true;
        }
    }
    false
}
