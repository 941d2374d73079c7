//! Families of forbidden separation sets.
//!
//! A family F is a collection of finite sets of oriented separations.  An
//! orientation is an *F-tangle* if it is consistent and no subset of it lies
//! in F; a tree certificate is *over* F if every node's inward star image
//! lies in F.  Families here are given intensionally: a definitional
//! membership predicate plus enumerators of member sets drawn from a fixed
//! system.
//!
//! The enumerators deliberately produce only ⊆-minimal members (optionally
//! minimal among members containing a fixed *anchor* element).  This is what
//! makes the searches feasible: families like "stars whose bags intersect in
//! fewer than k vertices" are astronomically large because any member can be
//! padded with small separations, but every member contains a minimal one,
//! and avoidance of F is equivalent to avoidance of its minimal members.

use crate::sep::{is_star, Sep, SepSystem, Side};

/// A family of forbidden sets of oriented separations.
///
/// Implementations must keep the enumerators consistent with `contains`:
/// every emitted set is a member, and every member of the family whose
/// elements all lie in the given restriction of the system has an emitted
/// subset (an emitted subset containing the anchor, in anchored mode).
pub trait Family {
    fn label(&self) -> String;

    /// Definitional membership test.  The input is treated as a set;
    /// duplicates are ignored.  Sides are assumed to come from the host
    /// universe — predicates check what they can see (side arithmetic),
    /// not instance-specific element conditions.
    fn contains(&self, set: &[Sep]) -> bool;

    /// True if every member of the family is a star.
    fn stars_only(&self) -> bool;

    /// `Some(c)` when members never exceed c elements *and*
    /// `all_members_within` is implemented exactly.
    fn bounded_member_size(&self) -> Option<usize> {
        None
    }

    /// Is the family upward closed among admissible stars: if σ ⊆ σ' are
    /// stars, every member of σ' is individually admissible for the family,
    /// and σ ∈ F, then σ' ∈ F?  Families answering `true` here may have
    /// their shift-closure checked through anchored minimal members alone.
    fn upward_closed_among_stars(&self) -> bool {
        false
    }

    /// Necessary per-element condition for membership: every element of
    /// every member satisfies this.  Used together with
    /// `upward_closed_among_stars`.
    fn member_admissible(&self, _s: Sep) -> bool {
        true
    }

    /// Inclusion-minimal members with all elements drawn from `sys`,
    /// restricted to indices where `allowed` is true (no restriction if
    /// `None`).  With `anchor = Some(a)`: members containing `a` that are
    /// minimal among members containing `a`.  Each member is a sorted
    /// vector of system indices; the empty member is `vec![]`.
    fn minimal_members(
        &self,
        sys: &SepSystem,
        allowed: Option<&[bool]>,
        anchor: Option<u32>,
    ) -> Vec<Vec<u32>>;

    /// Every member within the restriction, for families with
    /// `bounded_member_size`.  `None` when not available.
    fn all_members_within(
        &self,
        _sys: &SepSystem,
        _allowed: Option<&[bool]>,
    ) -> Option<Vec<Vec<u32>>> {
        None
    }
}

fn allowed_at(allowed: Option<&[bool]>, i: u32) -> bool {
    allowed.map_or(true, |a| a[i as usize])
}

/// Star compatibility of two distinct members: r ≤ s*.  One direction per
/// pair suffices since the involution reverses the order.
fn star_compat(r: Sep, s: Sep) -> bool {
    r.leq(s.inverse())
}

/// Shared backtracking enumerator for *graded* star families: families of
/// the form  { star σ : every member admissible, |σ| ≤ cap, value(σ) < bound }
/// where `value` is non-increasing when members are added and satisfies the
/// null-member law: if value({m}) = value(∅) then m contributes nothing to
/// any set.  Both the bag families (value = |∩ Bᵢ|) and the matroid norm
/// family fit this shape.
///
/// Minimal members then admit a complete search over sets of non-null,
/// non-singleton-member candidates, with minimality certified by single
/// removals: value is monotone, so if no single removal stays below the
/// bound, no subset does.
pub(crate) struct GradedStars<'a> {
    pub sys: &'a SepSystem,
    pub bound: i64,
    pub max_size: Option<usize>,
    pub member_ok: Box<dyn Fn(Sep) -> bool + 'a>,
    pub value: Box<dyn Fn(&[Sep]) -> i64 + 'a>,
}

impl<'a> GradedStars<'a> {
    fn seps_of(&self, idxs: &[u32]) -> Vec<Sep> {
        idxs.iter().map(|&i| self.sys.sep(i)).collect()
    }

    fn value_of(&self, idxs: &[u32]) -> i64 {
        (self.value)(&self.seps_of(idxs))
    }

    fn is_singleton_member(&self, i: u32) -> bool {
        let s = self.sys.sep(i);
        !s.is_degenerate() && (self.member_ok)(s) && (self.value)(&[s]) < self.bound
    }

    fn is_null(&self, i: u32) -> bool {
        (self.value)(&[self.sys.sep(i)]) == (self.value)(&[])
    }

    pub fn minimal_members(
        &self,
        allowed: Option<&[bool]>,
        anchor: Option<u32>,
    ) -> Vec<Vec<u32>> {
        let m = self.sys.len() as u32;
        let empty_is_member = (self.value)(&[]) < self.bound;

        if let Some(a) = anchor {
            let sa = self.sys.sep(a);
            if !allowed_at(allowed, a) || sa.is_degenerate() || !(self.member_ok)(sa) {
                return Vec::new();
            }
            if self.is_singleton_member(a) {
                return vec![vec![a]];
            }
            let mut out = Vec::new();
            // {a, m} for a singleton member m is minimal among members
            // containing a (its only smaller subset through a is {a} ∉ F).
            if self.max_size.map_or(true, |c| c >= 2) {
                for i in 0..m {
                    if i != a
                        && allowed_at(allowed, i)
                        && self.is_singleton_member(i)
                        && star_compat(sa, self.sys.sep(i))
                    {
                        let mut pair = vec![a, i];
                        pair.sort_unstable();
                        out.push(pair);
                    }
                }
            }
            let pool = self.pool(allowed, Some(a));
            self.dfs(&mut vec![a], &pool, 0, Some(a), &mut out);
            out.sort();
            out.dedup();
            return out;
        }

        if empty_is_member {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..m {
            if allowed_at(allowed, i) && self.is_singleton_member(i) {
                out.push(vec![i]);
            }
        }
        let pool = self.pool(allowed, None);
        self.dfs(&mut Vec::new(), &pool, 0, None, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Candidates usable inside minimal members of size ≥ 2: admissible,
    /// nondegenerate, not null (a null member never helps reach the bound
    /// and its removal keeps membership), and not themselves members.
    fn pool(&self, allowed: Option<&[bool]>, anchor: Option<u32>) -> Vec<u32> {
        (0..self.sys.len() as u32)
            .filter(|&i| {
                let s = self.sys.sep(i);
                Some(i) != anchor
                    && allowed_at(allowed, i)
                    && !s.is_degenerate()
                    && (self.member_ok)(s)
                    && !self.is_null(i)
                    && !self.is_singleton_member(i)
            })
            .collect()
    }

    fn dfs(
        &self,
        current: &mut Vec<u32>,
        pool: &[u32],
        from: usize,
        anchor: Option<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if let Some(cap) = self.max_size {
            if current.len() >= cap {
                return;
            }
        }
        for (pi, &cand) in pool.iter().enumerate().skip(from) {
            let sc = self.sys.sep(cand);
            // Star compatibility with everything already chosen.  A set may
            // contain both orientations of one separation: {s, s*} is a star.
            if current.iter().any(|&x| !star_compat(self.sys.sep(x), sc)) {
                continue;
            }
            current.push(cand);
            if self.value_of(current) < self.bound {
                // Candidate member: minimal iff every single removal (never
                // the anchor) stays at or above the bound.
                let minimal = current.iter().all(|&x| {
                    if Some(x) == anchor {
                        return true;
                    }
                    let rest: Vec<u32> =
                        current.iter().copied().filter(|&y| y != x).collect();
                    self.value_of(&rest) >= self.bound
                });
                if minimal {
                    let mut member = current.clone();
                    member.sort_unstable();
                    out.push(member);
                }
            } else {
                self.dfs(current, pool, pi + 1, anchor, out);
            }
            current.pop();
        }
    }
}

/// Shared enumerator for *cover* families: members are sets of at most
/// three separations whose designated masks jointly cover a full mask,
/// optionally required to be stars, plus an extra per-element singleton
/// clause.  Membership of a set never depends on more than the masks of its
/// elements, so enumeration is a direct sweep over small subsets.
pub(crate) struct CoverSets<'a> {
    pub sys: &'a SepSystem,
    pub full: u64,
    pub cover: Box<dyn Fn(Sep) -> u64 + 'a>,
    pub stars_required: bool,
    pub extra_singleton: Box<dyn Fn(Sep) -> bool + 'a>,
}

/// Precomputed per-index data for the cover enumerators: cover masks,
/// membership flags for singletons, and (for star families) a pairwise
/// star-compatibility bitset, so that candidate scans are branch-cheap and
/// allocation-free.
struct CoverPre {
    idxs: Vec<u32>,
    cover: Vec<u64>,
    sing: Vec<bool>,
    /// Words of an m-bit row per index; bit j of row i says {i, j} can sit
    /// in a common star.  `None` when stars are not required.
    compat: Option<Vec<Vec<u64>>>,
    /// The allowed set as a bitset, for intersecting with compat rows.
    allowed_bits: Vec<u64>,
}

impl<'a> CoverSets<'a> {
    fn member_sets(&self, set: &[u32]) -> bool {
        let seps: Vec<Sep> = set.iter().map(|&i| self.sys.sep(i)).collect();
        if set.len() == 1 && (self.extra_singleton)(seps[0]) && !seps[0].is_degenerate() {
            return true;
        }
        if self.stars_required && !is_star(&seps) {
            return false;
        }
        let mut c = 0u64;
        for &s in &seps {
            c |= (self.cover)(s);
        }
        !set.is_empty() && set.len() <= 3 && c == self.full
    }

    fn precompute(&self, allowed: Option<&[bool]>) -> CoverPre {
        let m = self.sys.len();
        let idxs: Vec<u32> = (0..m as u32).filter(|&i| allowed_at(allowed, i)).collect();
        let words = m.div_ceil(64);
        let mut allowed_bits = vec![0u64; words];
        for &i in &idxs {
            allowed_bits[i as usize / 64] |= 1 << (i % 64);
        }
        let seps: Vec<Sep> = (0..m as u32).map(|i| self.sys.sep(i)).collect();
        let cover: Vec<u64> = seps.iter().map(|&s| (self.cover)(s)).collect();
        let sing: Vec<bool> = seps
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                ((self.extra_singleton)(s) && !s.is_degenerate())
                    || (cover[i] == self.full
                        && (!self.stars_required || !s.is_degenerate()))
            })
            .collect();
        let compat = self.stars_required.then(|| {
            let mut rows = vec![vec![0u64; words]; m];
            for i in 0..m {
                if seps[i].is_degenerate() {
                    continue;
                }
                for j in 0..m {
                    if !seps[j].is_degenerate() && seps[i].leq(seps[j].inverse()) {
                        rows[i][j / 64] |= 1 << (j % 64);
                    }
                }
            }
            rows
        });
        CoverPre {
            idxs,
            cover,
            sing,
            compat,
            allowed_bits,
        }
    }

    fn pair_compat(pre: &CoverPre, x: u32, y: u32) -> bool {
        match &pre.compat {
            None => true,
            Some(rows) => rows[x as usize][y as usize / 64] >> (y % 64) & 1 == 1,
        }
    }

    fn pair_member(&self, pre: &CoverPre, x: u32, y: u32) -> bool {
        Self::pair_compat(pre, x, y) && pre.cover[x as usize] | pre.cover[y as usize] == self.full
    }

    /// Run `f` on every z > y (allowed) completing {x, y} to a candidate
    /// triple: star-compatible with both when stars are required, any
    /// allowed index otherwise.
    fn each_third(&self, pre: &CoverPre, x: u32, y: u32, mut f: impl FnMut(u32)) {
        match &pre.compat {
            Some(rows) => {
                let (rx, ry) = (&rows[x as usize], &rows[y as usize]);
                for w in (y as usize / 64)..pre.allowed_bits.len() {
                    let mut bits = rx[w] & ry[w] & pre.allowed_bits[w];
                    if w == y as usize / 64 {
                        // Keep z strictly above y.
                        let r = y % 64;
                        bits &= if r == 63 { 0 } else { !0u64 << (r + 1) };
                    }
                    while bits != 0 {
                        let z = (w * 64) as u32 + bits.trailing_zeros();
                        bits &= bits - 1;
                        f(z);
                    }
                }
            }
            None => {
                for &z in pre.idxs.iter().filter(|&&z| z > y) {
                    f(z);
                }
            }
        }
    }

    /// All members within the restriction, sizes 1..=3.
    pub fn all_members(&self, allowed: Option<&[bool]>) -> Vec<Vec<u32>> {
        let pre = self.precompute(allowed);
        let mut out = Vec::new();
        for (i, &x) in pre.idxs.iter().enumerate() {
            if pre.sing[x as usize] {
                out.push(vec![x]);
            }
            for &y in &pre.idxs[i + 1..] {
                if !Self::pair_compat(&pre, x, y) {
                    continue;
                }
                let c2 = pre.cover[x as usize] | pre.cover[y as usize];
                if c2 == self.full {
                    out.push(vec![x, y]);
                }
                self.each_third(&pre, x, y, |z| {
                    if c2 | pre.cover[z as usize] == self.full {
                        out.push(vec![x, y, z]);
                    }
                });
            }
        }
        debug_assert!(out.iter().all(|s| self.member_sets(s)));
        out
    }

    pub fn minimal_members(
        &self,
        allowed: Option<&[bool]>,
        anchor: Option<u32>,
    ) -> Vec<Vec<u32>> {
        let pre = self.precompute(allowed);
        let mut out = Vec::new();
        match anchor {
            None => {
                for (i, &x) in pre.idxs.iter().enumerate() {
                    if pre.sing[x as usize] {
                        out.push(vec![x]);
                        // Nothing through a singleton member is minimal.
                        continue;
                    }
                    for &y in &pre.idxs[i + 1..] {
                        if pre.sing[y as usize] || !Self::pair_compat(&pre, x, y) {
                            continue;
                        }
                        let c2 = pre.cover[x as usize] | pre.cover[y as usize];
                        if c2 == self.full {
                            out.push(vec![x, y]);
                            continue;
                        }
                        self.each_third(&pre, x, y, |z| {
                            if c2 | pre.cover[z as usize] == self.full
                                && !pre.sing[z as usize]
                                && !self.pair_member(&pre, x, z)
                                && !self.pair_member(&pre, y, z)
                            {
                                out.push(vec![x, y, z]);
                            }
                        });
                    }
                }
            }
            Some(a) => {
                if !allowed_at(allowed, a) {
                    return Vec::new();
                }
                if pre.sing[a as usize] {
                    return vec![vec![a]];
                }
                // Minimality among members containing `a` only inspects
                // the subsets through `a`.
                for &y in &pre.idxs {
                    if y == a || !Self::pair_compat(&pre, a, y) {
                        continue;
                    }
                    let c2 = pre.cover[a as usize] | pre.cover[y as usize];
                    if c2 == self.full {
                        let mut pair = vec![a, y];
                        pair.sort_unstable();
                        out.push(pair);
                        continue;
                    }
                    // z runs above y so each triple {a,y,z} appears once,
                    // from its smaller non-anchor element.
                    self.each_third(&pre, a, y, |z| {
                        if z == a {
                            return;
                        }
                        if c2 | pre.cover[z as usize] == self.full
                            && !self.pair_member(&pre, a, z)
                        {
                            let mut triple = vec![a, y, z];
                            triple.sort_unstable();
                            out.push(triple);
                        }
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        debug_assert!(out.iter().all(|s| self.member_sets(s)));
        out
    }
}

/// The bag families of vertex separations: stars σ = {(Aᵢ,Bᵢ)} with
/// |∩ᵢ Bᵢ| < `bag_bound` (the intersection over the empty star is the whole
/// ground set), every member of order |A∩B| < `member_ord_bound`, and
/// optionally at most `max_size` members.
///
/// With bag_bound = member_ord_bound = k and no size cap this is the family
/// whose tree certificates are exactly the tree-decompositions of width
/// < k−1; the size-≤2 variant yields path-decompositions; bag_bound w >
/// member_ord k yields width < w−1 with adhesion < k.
pub struct BagFamily {
    ground_mask: Side,
    bag_bound: u32,
    member_ord_bound: u32,
    max_size: Option<usize>,
    label: String,
}

impl BagFamily {
    pub fn tree(n: usize, k: u32) -> BagFamily {
        BagFamily {
            ground_mask: mask_of(n),
            bag_bound: k,
            member_ord_bound: k,
            max_size: None,
            label: format!("bags<{k}"),
        }
    }

    pub fn path(n: usize, k: u32) -> BagFamily {
        BagFamily {
            ground_mask: mask_of(n),
            bag_bound: k,
            member_ord_bound: k,
            max_size: Some(2),
            label: format!("bags<{k},|σ|≤2"),
        }
    }

    pub fn adhesion(n: usize, k: u32, w: u32) -> crate::Result<BagFamily> {
        if w < k {
            return Err(crate::Error::Domain(format!(
                "bag bound w={w} must be at least the member order bound k={k}"
            )));
        }
        Ok(BagFamily {
            ground_mask: mask_of(n),
            bag_bound: w,
            member_ord_bound: k,
            max_size: None,
            label: format!("bags<{w},adhesion<{k}"),
        })
    }

    fn graded<'a>(&'a self, sys: &'a SepSystem) -> GradedStars<'a> {
        GradedStars {
            sys,
            bound: self.bag_bound as i64,
            max_size: self.max_size,
            member_ok: Box::new(move |s: Sep| {
                (s.a & s.b).count_ones() < self.member_ord_bound
            }),
            value: Box::new(move |seps: &[Sep]| {
                let inter = seps.iter().fold(self.ground_mask, |m, s| m & s.b);
                inter.count_ones() as i64
            }),
        }
    }
}

fn mask_of(n: usize) -> Side {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

impl Family for BagFamily {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn contains(&self, set: &[Sep]) -> bool {
        let mut ms = set.to_vec();
        ms.sort_by(|x, y| x.cmp_key(*y));
        ms.dedup();
        if let Some(cap) = self.max_size {
            if ms.len() > cap {
                return false;
            }
        }
        if !is_star(&ms) {
            return false;
        }
        if ms.iter().any(|s| !self.member_admissible(*s)) {
            return false;
        }
        let inter = ms.iter().fold(self.ground_mask, |m, s| m & s.b);
        inter.count_ones() < self.bag_bound
    }

    fn stars_only(&self) -> bool {
        true
    }

    fn bounded_member_size(&self) -> Option<usize> {
        self.max_size
    }

    fn upward_closed_among_stars(&self) -> bool {
        self.max_size.is_none()
    }

    fn member_admissible(&self, s: Sep) -> bool {
        s.a | s.b == self.ground_mask
            && (s.a & s.b).count_ones() < self.member_ord_bound
    }

    fn minimal_members(
        &self,
        sys: &SepSystem,
        allowed: Option<&[bool]>,
        anchor: Option<u32>,
    ) -> Vec<Vec<u32>> {
        self.graded(sys).minimal_members(allowed, anchor)
    }

    fn all_members_within(
        &self,
        sys: &SepSystem,
        allowed: Option<&[bool]>,
    ) -> Option<Vec<Vec<u32>>> {
        let cap = self.max_size?;
        // Small caps only; enumerate subsets directly.
        let idxs: Vec<u32> = (0..sys.len() as u32)
            .filter(|&i| allowed_at(allowed, i))
            .collect();
        let mut out = Vec::new();
        if self.contains(&[]) {
            out.push(Vec::new());
        }
        let mut stack: Vec<Vec<u32>> = idxs.iter().map(|&i| vec![i]).collect();
        while let Some(set) = stack.pop() {
            let seps: Vec<Sep> = set.iter().map(|&i| sys.sep(i)).collect();
            if self.contains(&seps) {
                out.push(set.clone());
            }
            if set.len() < cap {
                let last = *set.last().unwrap();
                for &next in idxs.iter().filter(|&&i| i > last) {
                    let mut bigger = set.clone();
                    bigger.push(next);
                    stack.push(bigger);
                }
            }
        }
        out.sort();
        out.dedup();
        Some(out)
    }
}

/// The family with no members.  Every consistent orientation is a tangle
/// for it and no tree is ever over it (there is nothing for node images to
/// be in).  Useful as a degenerate test fixture.
pub struct EmptyFamily;

impl Family for EmptyFamily {
    fn label(&self) -> String {
        "∅".into()
    }

    fn contains(&self, _set: &[Sep]) -> bool {
        false
    }

    fn stars_only(&self) -> bool {
        true
    }

    fn bounded_member_size(&self) -> Option<usize> {
        Some(0)
    }

    fn minimal_members(
        &self,
        _sys: &SepSystem,
        _allowed: Option<&[bool]>,
        _anchor: Option<u32>,
    ) -> Vec<Vec<u32>> {
        Vec::new()
    }

    fn all_members_within(
        &self,
        _sys: &SepSystem,
        _allowed: Option<&[bool]>,
    ) -> Option<Vec<Vec<u32>>> {
        Some(Vec::new())
    }
}
