//! The paired-string crossover/mutation game and its graph reduction.
//!
//! A position is two equal-length bit strings. Mutation flips one bit of
//! either string; crossover swaps the two prefixes of length `k`. Legality is
//! judged on the *total* entropy across both strings.
//!
//! Every position maps to an edge-deletion graph game: each legal mutation
//! becomes an edge spanning the two "slots" around its bit, so mutations at
//! adjacent bits share a vertex, and each legal crossover at `k` becomes an
//! edge joining slot `k` of the first string to slot `k` of the second.

use super::bits::BitPosition;
use super::graph::GraphPosition;
use super::GameError;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// An ordered pair of equal-length bit strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CmPosition {
    a: BitPosition,
    b: BitPosition,
}

impl CmPosition {
    pub fn new(a: BitPosition, b: BitPosition) -> Result<CmPosition, GameError> {
        if a.len() != b.len() {
            return Err(GameError::CmLengthMismatch { a: a.len() as usize, b: b.len() as usize });
        }
        Ok(CmPosition { a, b })
    }

    pub fn first(&self) -> BitPosition {
        self.a
    }

    pub fn second(&self) -> BitPosition {
        self.b
    }

    pub fn len(&self) -> u8 {
        self.a.len()
    }

    /// Always false: strings have length at least 1.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entropy summed over both strings; moves must strictly increase it.
    pub fn total_entropy(&self) -> u32 {
        self.a.entropy() + self.b.entropy()
    }

    /// Swaps the prefixes of length `k` (`1 <= k <= n-1`).
    fn crossed(&self, k: u8) -> CmPosition {
        let mask = (1u64 << k) - 1;
        let a = self.a.bits() & !mask | self.b.bits() & mask;
        let b = self.b.bits() & !mask | self.a.bits() & mask;
        CmPosition {
            a: BitPosition::new(self.len(), a).expect("length unchanged"),
            b: BitPosition::new(self.len(), b).expect("length unchanged"),
        }
    }

    fn with_first(&self, a: BitPosition) -> CmPosition {
        CmPosition { a, b: self.b }
    }

    fn with_second(&self, b: BitPosition) -> CmPosition {
        CmPosition { a: self.a, b }
    }
}

impl fmt::Display for CmPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

impl FromStr for CmPosition {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once('/').ok_or_else(|| GameError::InvalidLiteral {
            text: s.to_string(),
            reason: "expected two bit strings joined by '/'".to_string(),
        })?;
        CmPosition::new(a.parse()?, b.parse()?)
    }
}

// ---------------------------------------------------------------------------
// Move generation and the graph construction
// ---------------------------------------------------------------------------

pub(crate) fn cm_options(p: &CmPosition) -> BTreeSet<CmPosition> {
    let e = p.total_entropy();
    let mut out = BTreeSet::new();
    for i in 0..p.len() {
        let q = p.with_first(p.first().flipped_bit(i));
        if q.total_entropy() > e {
            out.insert(q);
        }
        let q = p.with_second(p.second().flipped_bit(i));
        if q.total_entropy() > e {
            out.insert(q);
        }
    }
    for k in 1..p.len() {
        let q = p.crossed(k);
        if q.total_entropy() > e {
            out.insert(q);
        }
    }
    out
}

/// Builds the equivalent edge-deletion graph.
///
/// Vertices are slots `s0..sn` per string (`s` is `a` or `b`), materialized
/// only when an incident edge exists. A legal mutation at 1-based bit `i`
/// contributes the edge `s(i-1)`–`s(i)`; a legal crossover at `k` contributes
/// `a(k)`–`b(k)`. Two moves conflict (share a vertex) exactly when making one
/// renders the other illegal forever, which is what edge-deletion captures.
pub fn cm_to_arc_kayles(p: &CmPosition) -> GraphPosition {
    let e = p.total_entropy();
    let mut edges = Vec::new();
    for (name, string, is_second) in [('a', p.first(), false), ('b', p.second(), true)] {
        for i in 0..string.len() {
            let flipped = string.flipped_bit(i);
            let q = if is_second { p.with_second(flipped) } else { p.with_first(flipped) };
            if q.total_entropy() > e {
                edges.push((format!("{name}{}", i), format!("{name}{}", i + 1)));
            }
        }
    }
    for k in 1..p.len() {
        if p.crossed(k).total_entropy() > e {
            edges.push((format!("a{k}"), format!("b{k}")));
        }
    }
    GraphPosition::from_edges(edges).expect("slot vertices are distinct")
}
