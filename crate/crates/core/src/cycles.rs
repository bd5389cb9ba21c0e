//! Cycles over user subsets: weights, Δ values, combination, enumeration,
//! and cyclic partitions.
//!
//! A cycle is stored in canonical rotation (smallest user first); direction
//! is significant and preserved, so `(1→2→3)` and `(1→3→2)` are different
//! cycles. Cyclic partitions of a set `S` biject with permutations of `S`
//! via functional-graph cycles, which is how enumeration works.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::network::ChannelMatrix;
use crate::rational::Rational;

/// Full enumerations are exponential; beyond this subset size the assignment
/// solver must be used instead.
pub const ENUMERATION_CAP: usize = 10;

/// An ordered cycle of distinct users, canonically rotated so the smallest
/// user leads. The head is therefore always the smallest user.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    users: Vec<usize>,
}

impl Cycle {
    /// Builds a cycle from an ordered user sequence, canonicalizing the
    /// rotation. Users must be distinct and ≥ 1.
    pub fn new(users: Vec<usize>) -> Result<Self> {
        if users.is_empty() {
            return Err(Error::EmptyUserSet);
        }
        let mut seen = BTreeSet::new();
        for &u in &users {
            if u == 0 {
                return Err(Error::IndexOutOfRange { index: 0, k: 0 });
            }
            if !seen.insert(u) {
                return Err(Error::InvalidParameter {
                    what: "cycle",
                    reason: format!("user {u} appears twice"),
                });
            }
        }
        let head = users
            .iter()
            .enumerate()
            .min_by_key(|(_, &u)| u)
            .map(|(pos, _)| pos)
            .unwrap();
        let mut rotated = Vec::with_capacity(users.len());
        rotated.extend_from_slice(&users[head..]);
        rotated.extend_from_slice(&users[..head]);
        Ok(Cycle { users: rotated })
    }

    pub fn singleton(user: usize) -> Self {
        Cycle { users: vec![user] }
    }

    pub fn users(&self) -> &[usize] {
        &self.users
    }

    pub fn user_set(&self) -> BTreeSet<usize> {
        self.users.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.users.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.users.len() == 1
    }

    /// The head π(1); the smallest user under canonical rotation.
    pub fn head(&self) -> usize {
        self.users[0]
    }

    pub fn contains(&self, user: usize) -> bool {
        self.users.contains(&user)
    }

    /// The cycle's links as (transmitter, receiver) pairs
    /// (i_m, i_{m+1}) with wraparound. Empty for a trivial cycle.
    pub fn links(&self) -> Vec<(usize, usize)> {
        if self.is_trivial() {
            return Vec::new();
        }
        let m = self.users.len();
        (0..m).map(|idx| (self.users[idx], self.users[(idx + 1) % m])).collect()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, u) in self.users.iter().enumerate() {
            if idx > 0 {
                write!(f, "→")?;
            }
            write!(f, "{u}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Cycle {
    type Err = Error;

    /// Accepts the rendered form `(1→2→3)` (an ASCII `->` also works).
    fn from_str(s: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::ParseSyntax {
            what: "cycle",
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| syntax("expected parentheses"))?;
        let mut users = Vec::new();
        for part in inner.replace("->", "→").split('→') {
            let user: usize = part
                .trim()
                .parse()
                .map_err(|_| syntax(&format!("bad user index {:?}", part.trim())))?;
            users.push(user);
        }
        Cycle::new(users)
    }
}

/// Weight w(π): the sum of strengths of the cycle's interfering links,
/// Σ_m α_{i_{m+1} i_m}; zero for a trivial cycle.
pub fn weight(m: &ChannelMatrix, cycle: &Cycle) -> Result<Rational> {
    for &u in cycle.users() {
        m.check_user(u)?;
    }
    let mut total = Rational::zero();
    for (tx, rx) in cycle.links() {
        total += m.alpha(rx, tx);
    }
    Ok(total)
}

/// Δ_π: Σ_m δ_{i_m i_{m+1}} for cycles of length M > 1, and α_{i1 i1} for a
/// trivial cycle. Always equals Σ_{k∈{π}} α_kk − w(π).
pub fn cycle_delta(m: &ChannelMatrix, cycle: &Cycle) -> Result<Rational> {
    for &u in cycle.users() {
        m.check_user(u)?;
    }
    if cycle.is_trivial() {
        return Ok(m.alpha(cycle.head(), cycle.head()).clone());
    }
    let mut total = Rational::zero();
    for (cur, next) in cycle.links() {
        total += m.delta(cur, next)?;
    }
    Ok(total)
}

/// The weight/Δ pair of a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStats {
    pub weight: Rational,
    pub delta: Rational,
}

pub fn cycle_stats(m: &ChannelMatrix, cycle: &Cycle) -> Result<CycleStats> {
    Ok(CycleStats { weight: weight(m, cycle)?, delta: cycle_delta(m, cycle)? })
}

/// Concatenates pairwise-disjoint cycles (π_1→π_2→…→π_n ↺) and
/// canonicalizes the result.
pub fn combine(cycles: &[Cycle]) -> Result<Cycle> {
    if cycles.len() < 2 {
        return Err(Error::TooFewCycles);
    }
    let mut seen = BTreeSet::new();
    let mut users = Vec::new();
    for cycle in cycles {
        for &u in cycle.users() {
            if !seen.insert(u) {
                return Err(Error::CyclesOverlap { user: u });
            }
            users.push(u);
        }
    }
    Cycle::new(users)
}

/// Every cycle whose user set is contained in `s`, trivial cycles included,
/// each exactly once in canonical form, ordered by length then
/// lexicographically.
pub fn enumerate_cycles(s: &BTreeSet<usize>) -> Result<Vec<Cycle>> {
    if s.is_empty() {
        return Err(Error::EmptyUserSet);
    }
    if s.len() > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "cycle enumeration",
            limit: ENUMERATION_CAP,
            requested: s.len(),
        });
    }
    let elems: Vec<usize> = s.iter().copied().collect();
    let n = elems.len();
    let mut cycles = Vec::new();
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> =
            (0..n).filter(|&idx| mask & (1 << idx) != 0).map(|idx| elems[idx]).collect();
        // Fix the smallest user as head; every arrangement of the rest is a
        // distinct cycle in canonical form.
        let mut tail: Vec<usize> = subset[1..].to_vec();
        loop {
            let mut users = Vec::with_capacity(subset.len());
            users.push(subset[0]);
            users.extend_from_slice(&tail);
            cycles.push(Cycle { users });
            if !next_permutation(&mut tail) {
                break;
            }
        }
    }
    cycles.sort_by(|a, b| (a.len(), &a.users).cmp(&(b.len(), &b.users)));
    Ok(cycles)
}

/// A set of pairwise-disjoint cycles covering their ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicPartition {
    cycles: Vec<Cycle>,
}

impl CyclicPartition {
    /// Builds a partition from disjoint cycles; they are ordered by head.
    pub fn new(mut cycles: Vec<Cycle>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for cycle in &cycles {
            for &u in cycle.users() {
                if !seen.insert(u) {
                    return Err(Error::CyclesOverlap { user: u });
                }
            }
        }
        if cycles.is_empty() {
            return Err(Error::EmptyUserSet);
        }
        cycles.sort_by_key(|c| c.head());
        Ok(CyclicPartition { cycles })
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn ground_set(&self) -> BTreeSet<usize> {
        self.cycles.iter().flat_map(|c| c.users().iter().copied()).collect()
    }

    pub fn is_partition_of(&self, s: &BTreeSet<usize>) -> bool {
        self.ground_set() == *s
    }

    /// Heads π_n(1) of the partition's cycles, ascending.
    pub fn heads(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.head()).collect()
    }

    pub fn trivial_cycle_count(&self) -> usize {
        self.cycles.iter().filter(|c| c.is_trivial()).count()
    }

    /// Σ Δ_π over the partition's cycles.
    pub fn delta_sum(&self, m: &ChannelMatrix) -> Result<Rational> {
        let mut total = Rational::zero();
        for cycle in &self.cycles {
            total += cycle_delta(m, cycle)?;
        }
        Ok(total)
    }

    /// Combines all trivial cycles (ascending) into one cycle, leaving at
    /// most one trivial cycle. In the SLS regime this preserves Σ Δ-optimality
    /// of a p-optimal partition.
    pub fn with_merged_trivial_cycles(&self) -> CyclicPartition {
        let trivial: Vec<Cycle> =
            self.cycles.iter().filter(|c| c.is_trivial()).cloned().collect();
        if trivial.len() < 2 {
            return self.clone();
        }
        let mut cycles: Vec<Cycle> =
            self.cycles.iter().filter(|c| !c.is_trivial()).cloned().collect();
        cycles.push(combine(&trivial).expect("disjoint trivial cycles"));
        CyclicPartition::new(cycles).expect("merged cycles stay disjoint")
    }
}

impl fmt::Display for CyclicPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, cycle) in self.cycles.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{cycle}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for CyclicPartition {
    type Err = Error;

    /// Accepts the rendered form `{(1→2),(3)}`.
    fn from_str(s: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::ParseSyntax {
            what: "partition",
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|rest| rest.strip_suffix('}'))
            .ok_or_else(|| syntax("expected braces"))?;
        let mut cycles = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (pos, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.checked_sub(1).ok_or_else(|| syntax("unbalanced parentheses"))?,
                ',' if depth == 0 => {
                    cycles.push(inner[start..pos].parse::<Cycle>()?);
                    start = pos + ch.len_utf8();
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(syntax("unbalanced parentheses"));
        }
        cycles.push(inner[start..].parse::<Cycle>()?);
        CyclicPartition::new(cycles)
    }
}

/// Every cyclic partition of `s`, exactly once, in a deterministic order
/// (the bijection image of permutations of `s` in lexicographic order).
pub fn enumerate_partitions(s: &BTreeSet<usize>) -> Result<PartitionIter> {
    if s.is_empty() {
        return Err(Error::EmptyUserSet);
    }
    if s.len() > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "partition enumeration",
            limit: ENUMERATION_CAP,
            requested: s.len(),
        });
    }
    let elems: Vec<usize> = s.iter().copied().collect();
    let perm: Vec<usize> = (0..elems.len()).collect();
    Ok(PartitionIter { elems, perm, done: false })
}

/// Restartable sequence of cyclic partitions; not a shared iterator.
pub struct PartitionIter {
    elems: Vec<usize>,
    perm: Vec<usize>,
    done: bool,
}

impl PartitionIter {
    /// The partition induced by the successor map `elems[i] → elems[perm[i]]`.
    fn current(&self) -> CyclicPartition {
        let n = self.elems.len();
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut users = Vec::new();
            let mut idx = start;
            while !visited[idx] {
                visited[idx] = true;
                users.push(self.elems[idx]);
                idx = self.perm[idx];
            }
            // start is the smallest index of its cycle, so this is canonical.
            cycles.push(Cycle { users });
        }
        CyclicPartition { cycles }
    }
}

impl Iterator for PartitionIter {
    type Item = CyclicPartition;

    fn next(&mut self) -> Option<CyclicPartition> {
        if self.done {
            return None;
        }
        let partition = self.current();
        if !next_permutation(&mut self.perm) {
            self.done = true;
        }
        Some(partition)
    }
}

/// Advances `items` to its next lexicographic permutation; false if `items`
/// was the last one.
fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let Some(pivot) = (0..n - 1).rev().find(|&i| items[i] < items[i + 1]) else {
        return false;
    };
    let successor = (pivot + 1..n).rev().find(|&j| items[j] > items[pivot]).unwrap();
    items.swap(pivot, successor);
    items[pivot + 1..].reverse();
    true
}

/// The user set {1, …, k}.
pub fn full_user_set(k: usize) -> BTreeSet<usize> {
    (1..=k).collect()
}
