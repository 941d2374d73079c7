//! Oriented separations, separation systems, and universes.
//!
//! An *oriented separation* of a ground set V is an ordered pair (A, B) of
//! sides with A ∪ B = V.  The pair (B, A) is its *inverse*; the unordered
//! pair {(A,B), (B,A)} is the underlying unoriented separation.  Oriented
//! separations are partially ordered by
//!
//! ```text
//! (A,B) ≤ (C,D)  ⟺  A ⊆ C and B ⊇ D
//! ```
//!
//! and the involution is order-reversing: r ≤ s ⟺ s* ≤ r*.  A *universe*
//! additionally carries the lattice operations r ∨ s = (A∪C, B∩D) and
//! r ∧ s = (A∩C, B∪D), which satisfy De Morgan's law (r ∨ s)* = r* ∧ s*,
//! plus a non-negative symmetric submodular order function.
//!
//! Ground sets are indexed 0..n and sides are stored as `u64` bitmasks, so
//! all the poset and lattice operations are single-word bit fiddling.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

/// A side of a separation: a subset of the indexed ground set, as a bitmask.
pub type Side = u64;

pub fn side_from(elems: &[u32]) -> Side {
    elems.iter().fold(0, |m, &e| m | (1u64 << e))
}

pub fn side_elems(side: Side) -> Vec<u32> {
    (0..64).filter(|i| side >> i & 1 == 1).collect()
}

/// Lexicographic comparison of two sides viewed as ascending element lists,
/// e.g. {0,5} < {1,2} and {1} < {1,2} (a proper prefix is smaller).
pub fn side_lex_cmp(mut x: Side, mut y: Side) -> Ordering {
    while x != 0 && y != 0 {
        let (ex, ey) = (x.trailing_zeros(), y.trailing_zeros());
        match ex.cmp(&ey) {
            Ordering::Equal => {
                x &= x - 1;
                y &= y - 1;
            }
            other => return other,
        }
    }
    (x != 0).cmp(&(y != 0))
}

/// One orientation (A, B) of a separation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Sep {
    pub a: Side,
    pub b: Side,
}

impl Sep {
    pub fn new(a: Side, b: Side) -> Sep {
        Sep { a, b }
    }

    pub fn inverse(self) -> Sep {
        Sep { a: self.b, b: self.a }
    }

    /// (A,B) ≤ (C,D) ⟺ A ⊆ C and B ⊇ D.
    pub fn leq(self, other: Sep) -> bool {
        self.a & !other.a == 0 && other.b & !self.b == 0
    }

    pub fn lt(self, other: Sep) -> bool {
        self != other && self.leq(other)
    }

    /// r ∨ s = (A ∪ C, B ∩ D), the supremum.
    pub fn join(self, other: Sep) -> Sep {
        Sep { a: self.a | other.a, b: self.b & other.b }
    }

    /// r ∧ s = (A ∩ C, B ∪ D), the infimum.
    pub fn meet(self, other: Sep) -> Sep {
        Sep { a: self.a & other.a, b: self.b | other.b }
    }

    /// Degenerate: equal to its own inverse.
    pub fn is_degenerate(self) -> bool {
        self.a == self.b
    }

    /// Small: ≤ its own inverse.  Since (A,B) ≤ (B,A) reduces to A ⊆ B,
    /// the small separations of a set V are exactly those with B = V.
    pub fn is_small(self) -> bool {
        self.a & !self.b == 0
    }

    /// Do the two underlying separations have ≤-comparable orientations?
    pub fn nested(self, other: Sep) -> bool {
        self.leq(other)
            || other.leq(self)
            || self.leq(other.inverse())
            || other.inverse().leq(self)
    }

    /// True iff the underlying unoriented separations coincide.
    pub fn same_underlying(self, other: Sep) -> bool {
        self == other || self == other.inverse()
    }

    /// The canonical orientation of the underlying separation: the one whose
    /// first side is lexicographically smallest.  Used as a deterministic
    /// dictionary key, unrelated to the poset order.
    pub fn canonical(self) -> Sep {
        if side_lex_cmp(self.a, self.b) == Ordering::Greater {
            self.inverse()
        } else {
            self
        }
    }

    /// Total order for sorting and keying (again unrelated to ≤).
    pub fn cmp_key(self, other: Sep) -> Ordering {
        side_lex_cmp(self.a, other.a).then(side_lex_cmp(self.b, other.b))
    }
}

impl fmt::Display for Sep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: Side| {
            side_elems(s)
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({{{}}},{{{}}})", show(self.a), show(self.b))
    }
}

/// Is the given set a star: all members nondegenerate and pairwise pointing
/// towards each other, r ≤ s* for distinct r, s?  Input is treated as a set
/// (duplicates are ignored); the empty set is a star.
pub fn is_star(members: &[Sep]) -> bool {
    let mut ms = members.to_vec();
    ms.sort_by(|x, y| x.cmp_key(*y));
    ms.dedup();
    if ms.iter().any(|s| s.is_degenerate()) {
        return false;
    }
    // r ≤ s* ⟺ s ≤ r* (apply the order-reversing involution), so one
    // direction per unordered pair suffices.
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            if !ms[i].leq(ms[j].inverse()) {
                return false;
            }
        }
    }
    true
}

/// Is the given set consistent: it contains no r*, s with r < s lying on
/// distinct underlying separations?  (Such a pair would orient the two
/// separations away from each other.)  Both orientations of one and the
/// same separation do not count as an inconsistency.
pub fn is_consistent(set: &[Sep]) -> bool {
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            if x.same_underlying(y) {
                continue;
            }
            if x.inverse().leq(y) || y.inverse().leq(x) {
                return false;
            }
        }
    }
    true
}

/// A universe: the ambient lattice of oriented separations over an indexed
/// ground set, with an order function.  Join and meet are the fixed side
/// formulas on [`Sep`]; implementations guarantee that elements are closed
/// under them (checked in tests, not at runtime).
pub trait Universe {
    fn ground_size(&self) -> usize;
    fn label(&self) -> String;
    fn is_element(&self, s: Sep) -> bool;
    /// The order of an element.  Callers must pass elements only.
    fn ord(&self, s: Sep) -> u32;
    /// Every oriented element exactly once, in deterministic order.
    fn elements(&self) -> Vec<Sep>;

    fn full(&self) -> Side {
        if self.ground_size() == 64 {
            !0
        } else {
            (1u64 << self.ground_size()) - 1
        }
    }
}

/// Exhaustive check of the order-function laws (non-negativity is free with
/// unsigned orders): symmetry and submodularity over all element pairs.
/// Quadratic in the universe size; meant for tests on small grounds.
pub fn check_order_function<U: Universe + ?Sized>(u: &U) -> bool {
    let elems = u.elements();
    for &r in &elems {
        if u.ord(r) != u.ord(r.inverse()) {
            return false;
        }
        for &s in &elems {
            let (j, m) = (r.join(s), r.meet(s));
            if !u.is_element(j) || !u.is_element(m) {
                return false;
            }
            if u.ord(j) + u.ord(m) > u.ord(r) + u.ord(s) {
                return false;
            }
        }
    }
    true
}

/// The universe of *all* separations of a set: every (A, B) with A ∪ B = V,
/// ordered by |A ∩ B|.  Elements are enumerated three-ways per ground
/// element (A-only, B-only, both), so this is for small grounds only.
pub struct SetSeps {
    n: usize,
}

impl SetSeps {
    pub fn new(n: usize) -> Result<SetSeps> {
        if n == 0 || n > 12 {
            return Err(Error::Input(format!(
                "set-separation universe supports 1..=12 ground elements, got {n}"
            )));
        }
        Ok(SetSeps { n })
    }
}

impl Universe for SetSeps {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn label(&self) -> String {
        format!("set-separations(n={})", self.n)
    }

    fn is_element(&self, s: Sep) -> bool {
        s.a | s.b == self.full()
    }

    fn ord(&self, s: Sep) -> u32 {
        (s.a & s.b).count_ones()
    }

    fn elements(&self) -> Vec<Sep> {
        let mut out = Vec::new();
        let mut digits = vec![0u8; self.n];
        loop {
            let (mut a, mut b) = (0u64, 0u64);
            for (i, &d) in digits.iter().enumerate() {
                match d {
                    0 => a |= 1 << i,
                    1 => b |= 1 << i,
                    _ => {
                        a |= 1 << i;
                        b |= 1 << i;
                    }
                }
            }
            out.push(Sep::new(a, b));
            // ternary increment
            let mut i = 0;
            loop {
                if i == self.n {
                    return out;
                }
                digits[i] += 1;
                if digits[i] < 3 {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

/// The universe of ordered bipartitions (X, V∖X) of a ground set of at
/// least two elements, with a plug-in order function given as a table
/// indexed by the mask of the first side.  This is the home of edge-cut,
/// cut-rank and matroid-connectivity orders.
pub struct Bipartitions {
    n: usize,
    cost: Vec<u32>,
    label: String,
}

impl Bipartitions {
    pub fn new(n: usize, cost: Vec<u32>, label: impl Into<String>) -> Result<Bipartitions> {
        if !(1..=20).contains(&n) {
            return Err(Error::Input(format!(
                "bipartition universe supports 1..=20 ground elements, got {n}"
            )));
        }
        if cost.len() != 1 << n {
            return Err(Error::Input(format!(
                "cost table has {} entries, expected {}",
                cost.len(),
                1usize << n
            )));
        }
        let full = (1u64 << n) - 1;
        for m in 0..cost.len() {
            let c = (full ^ m as u64) as usize;
            if cost[m] != cost[c] {
                return Err(Error::Input(format!(
                    "cost table is not symmetric at mask {m}: {} vs {}",
                    cost[m], cost[c]
                )));
            }
        }
        Ok(Bipartitions { n, cost, label: label.into() })
    }

    pub fn from_fn(
        n: usize,
        f: impl Fn(Side) -> u32,
        label: impl Into<String>,
    ) -> Result<Bipartitions> {
        if !(1..=20).contains(&n) {
            return Err(Error::Input(format!(
                "bipartition universe supports 1..=20 ground elements, got {n}"
            )));
        }
        let cost = (0..1usize << n).map(|m| f(m as Side)).collect();
        Bipartitions::new(n, cost, label)
    }

    pub fn cost_of(&self, first_side: Side) -> u32 {
        self.cost[first_side as usize]
    }
}

impl Universe for Bipartitions {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn is_element(&self, s: Sep) -> bool {
        s.a & s.b == 0 && s.a | s.b == self.full()
    }

    fn ord(&self, s: Sep) -> u32 {
        self.cost[s.a as usize]
    }

    fn elements(&self) -> Vec<Sep> {
        let full = self.full();
        (0..1u64 << self.n).map(|m| Sep::new(m, full ^ m)).collect()
    }
}

/// A finite separation system: an inversion-closed set of oriented
/// separations drawn from some universe, with cached orders and inverse
/// indices.  Immutable after construction; indices are stable and all
/// search code works on them.
#[derive(Debug)]
pub struct SepSystem {
    ground: usize,
    seps: Vec<Sep>,
    inv: Vec<u32>,
    ords: Vec<u32>,
    index: HashMap<Sep, u32>,
    /// One entry per underlying separation: (canonical orientation index,
    /// inverse index); the two coincide for degenerate separations.
    pairs: Vec<(u32, u32)>,
}

impl SepSystem {
    /// Builds a system from the given elements, closing under inversion.
    pub fn from_elements<U: Universe + ?Sized>(
        u: &U,
        elems: impl IntoIterator<Item = Sep>,
    ) -> Result<SepSystem> {
        let mut seps: Vec<Sep> = Vec::new();
        for s in elems {
            if !u.is_element(s) {
                return Err(Error::Input(format!(
                    "{s} is not an element of universe {}",
                    u.label()
                )));
            }
            seps.push(s);
            seps.push(s.inverse());
        }
        seps.sort_by(|x, y| x.cmp_key(*y));
        seps.dedup();
        let index: HashMap<Sep, u32> =
            seps.iter().enumerate().map(|(i, &s)| (s, i as u32)).collect();
        let inv: Vec<u32> = seps.iter().map(|s| index[&s.inverse()]).collect();
        let ords: Vec<u32> = seps.iter().map(|&s| u.ord(s)).collect();
        let mut pairs = Vec::new();
        for (i, &s) in seps.iter().enumerate() {
            let j = inv[i];
            if s == s.canonical() || j == i as u32 {
                pairs.push((i as u32, j));
            }
        }
        Ok(SepSystem { ground: u.ground_size(), seps, inv, ords, index, pairs })
    }

    /// The subsystem S_k of all universe elements of order < k.
    pub fn below<U: Universe + ?Sized>(u: &U, k: u32) -> SepSystem {
        let elems = u.elements().into_iter().filter(|&s| u.ord(s) < k);
        SepSystem::from_elements(u, elems).expect("universe elements are always admissible")
    }

    pub fn len(&self) -> usize {
        self.seps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seps.is_empty()
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn seps(&self) -> &[Sep] {
        &self.seps
    }

    pub fn sep(&self, i: u32) -> Sep {
        self.seps[i as usize]
    }

    pub fn inv_idx(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    pub fn ord(&self, i: u32) -> u32 {
        self.ords[i as usize]
    }

    pub fn idx(&self, s: Sep) -> Option<u32> {
        self.index.get(&s).copied()
    }

    pub fn contains(&self, s: Sep) -> bool {
        self.index.contains_key(&s)
    }

    /// One `(orientation, inverse)` index pair per underlying separation.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Is separation i trivial in this system: is there a separation s on a
    /// different underlying pair with sep(i) < s and sep(i) < s*?  Trivial
    /// separations are small and must lie in every consistent orientation.
    pub fn is_trivial(&self, i: u32) -> bool {
        let r = self.sep(i);
        self.seps.iter().any(|&s| {
            !r.same_underlying(s) && r.leq(s) && r.leq(s.inverse())
        })
    }

    pub fn trivial_elements(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&i| self.is_trivial(i)).collect()
    }

    /// Corner closure: for every pair of elements, their join or their meet
    /// is again in the system.  This is what submodularity of the order
    /// function buys for every S_k.
    pub fn is_corner_closed(&self) -> bool {
        self.seps.iter().all(|&r| {
            self.seps
                .iter()
                .all(|&s| self.contains(r.join(s)) || self.contains(r.meet(s)))
        })
    }

    /// All consistent orientations, as a lazily backtracking stream.
    pub fn consistent_orientations(&self) -> ConsistentOrientations<'_> {
        ConsistentOrientations {
            sys: self,
            choice: Vec::new(),
            chosen: Vec::new(),
            started: false,
            done: false,
        }
    }
}

/// A choice of exactly one orientation per underlying separation of a
/// system, stored as sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    chosen: Vec<u32>,
}

impl Orientation {
    pub fn new(sys: &SepSystem, mut chosen: Vec<u32>) -> Result<Orientation> {
        chosen.sort_unstable();
        chosen.dedup();
        if chosen.len() != sys.pairs().len() {
            return Err(Error::Domain(format!(
                "orientation picks {} separations, system has {} underlying pairs",
                chosen.len(),
                sys.pairs().len()
            )));
        }
        for &(p, q) in sys.pairs() {
            let hp = chosen.binary_search(&p).is_ok();
            let hq = chosen.binary_search(&q).is_ok();
            if !(hp || hq) || (hp && hq && p != q) {
                return Err(Error::Domain(
                    "orientation must contain exactly one orientation of every separation".into(),
                ));
            }
        }
        Ok(Orientation { chosen })
    }

    pub fn indices(&self) -> &[u32] {
        &self.chosen
    }

    pub fn contains_idx(&self, i: u32) -> bool {
        self.chosen.binary_search(&i).is_ok()
    }

    pub fn seps(&self, sys: &SepSystem) -> Vec<Sep> {
        self.chosen.iter().map(|&i| sys.sep(i)).collect()
    }

    pub fn is_consistent(&self, sys: &SepSystem) -> bool {
        is_consistent(&self.seps(sys))
    }
}

/// Backtracking enumerator of all consistent orientations of a system.
/// Yields each exactly once; consistency is enforced incrementally as each
/// underlying pair is oriented.
pub struct ConsistentOrientations<'a> {
    sys: &'a SepSystem,
    choice: Vec<u8>,
    chosen: Vec<u32>,
    started: bool,
    done: bool,
}

impl<'a> ConsistentOrientations<'a> {
    fn candidate(&self, depth: usize, c: u8) -> Option<u32> {
        let (p, q) = self.sys.pairs()[depth];
        match c {
            0 => Some(p),
            1 if p != q => Some(q),
            _ => None,
        }
    }

    fn compatible(&self, x: u32) -> bool {
        let sx = self.sys.sep(x);
        self.chosen.iter().all(|&y| {
            let sy = self.sys.sep(y);
            sx.same_underlying(sy) || !(sx.inverse().leq(sy) || sy.inverse().leq(sx))
        })
    }

    /// Pops decided levels until one remains where the untried second
    /// orientation exists; returns that next choice.
    fn pop_advance(&mut self) -> Option<u8> {
        while let Some(c) = self.choice.pop() {
            self.chosen.pop();
            let d = self.choice.len();
            let (p, q) = self.sys.pairs()[d];
            if c == 0 && p != q {
                return Some(1);
            }
        }
        None
    }

    fn emit(&self) -> Orientation {
        let mut chosen = self.chosen.clone();
        chosen.sort_unstable();
        Orientation { chosen }
    }
}

impl<'a> Iterator for ConsistentOrientations<'a> {
    type Item = Orientation;

    fn next(&mut self) -> Option<Orientation> {
        if self.done {
            return None;
        }
        let np = self.sys.pairs().len();
        let mut c: u8 = if !self.started {
            self.started = true;
            if np == 0 {
                self.done = true;
                return Some(Orientation { chosen: Vec::new() });
            }
            0
        } else {
            match self.pop_advance() {
                Some(c) => c,
                None => {
                    self.done = true;
                    return None;
                }
            }
        };
        loop {
            let depth = self.choice.len();
            let viable = self
                .candidate(depth, c)
                .filter(|&x| self.compatible(x));
            match viable {
                Some(x) => {
                    self.choice.push(c);
                    self.chosen.push(x);
                    if self.choice.len() == np {
                        return Some(self.emit());
                    }
                    c = 0;
                }
                None => {
                    let (p, q) = self.sys.pairs()[depth];
                    if c == 0 && p != q {
                        c = 1;
                    } else {
                        match self.pop_advance() {
                            Some(nc) => c = nc,
                            None => {
                                self.done = true;
                                return None;
                            }
                        }
                    }
                }
            }
        }
    }
}
