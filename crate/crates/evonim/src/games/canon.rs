//! Canonical keys for memoization.
//!
//! Positions equivalent under value-preserving symmetries share a key:
//! bit strings under reversal and complement (the move sets commute with
//! both), paired strings additionally under swapping the pair, heaps under
//! reordering, and graphs under relabeling. Graph canonicalization is an
//! exact individualization-refinement labeling, so it is capped: components
//! beyond the cap signal [`CanonError::GraphTooLarge`], which callers treat
//! as "solve without sharing", not as failure.

use super::{BitPosition, CmPosition, GraphPosition, Position};
use std::collections::BTreeMap;

/// Largest component (in edges) accepted by the exact graph labeling.
pub const DEFAULT_CANON_EDGE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonError {
    #[error("a component with {edges} edges exceeds the canonical-labeling cap of {cap}")]
    GraphTooLarge { edges: usize, cap: usize },
}

/// An opaque, equality-comparable canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonKey(Repr);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Repr {
    Bits { len: u8, bits: u64 },
    Heaps(Vec<u32>),
    Cm { len: u8, a: u64, b: u64 },
    Graph(Vec<Vec<(u16, u16)>>),
}

/// Canonicalizes under the default graph cap.
pub fn canonical(p: &Position) -> Result<CanonKey, CanonError> {
    canonical_with_cap(p, DEFAULT_CANON_EDGE_CAP)
}

pub fn canonical_with_cap(p: &Position, cap: usize) -> Result<CanonKey, CanonError> {
    Ok(CanonKey(match p {
        Position::Bits(b) => Repr::Bits { len: b.len(), bits: canonical_bits(b) },
        Position::Heaps(h) => Repr::Heaps(h.heaps().to_vec()),
        Position::Cm(c) => {
            let (a, b) = canonical_cm(c);
            Repr::Cm { len: c.len(), a, b }
        }
        Position::Graph(g) => Repr::Graph(canonical_graph(g, cap)?),
    }))
}

fn canonical_bits(p: &BitPosition) -> u64 {
    let r = p.reversed();
    [p.bits(), r.bits(), p.complemented().bits(), r.complemented().bits()]
        .into_iter()
        .min()
        .unwrap()
}

fn canonical_cm(p: &CmPosition) -> (u64, u64) {
    let mut best = (u64::MAX, u64::MAX);
    for reverse in [false, true] {
        for complement in [false, true] {
            for swap in [false, true] {
                let (mut a, mut b) = (p.first(), p.second());
                if reverse {
                    a = a.reversed();
                    b = b.reversed();
                }
                if complement {
                    a = a.complemented();
                    b = b.complemented();
                }
                if swap {
                    std::mem::swap(&mut a, &mut b);
                }
                best = best.min((a.bits(), b.bits()));
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Graph canonical labeling
// ---------------------------------------------------------------------------

fn canonical_graph(g: &GraphPosition, cap: usize) -> Result<Vec<Vec<(u16, u16)>>, CanonError> {
    let mut comps = Vec::new();
    for comp in g.components() {
        if comp.edge_count() > cap {
            return Err(CanonError::GraphTooLarge { edges: comp.edge_count(), cap });
        }
        comps.push(canonical_component(&comp));
    }
    comps.sort();
    Ok(comps)
}

fn canonical_component(g: &GraphPosition) -> Vec<(u16, u16)> {
    let verts: Vec<&str> = g.vertices().into_iter().collect();
    let index: BTreeMap<&str, u16> =
        verts.iter().enumerate().map(|(i, &v)| (v, i as u16)).collect();
    let edges: Vec<(u16, u16)> = g
        .edges()
        .iter()
        .map(|(u, v)| (index[u.as_str()], index[v.as_str()]))
        .collect();
    let mut colors = vec![0u32; verts.len()];
    refine(&mut colors, &edges);
    search(&colors, &edges)
}

/// Iterated neighborhood refinement: a vertex's signature is its color plus
/// the sorted multiset of neighbor colors; signatures are re-ranked densely
/// until the partition stabilizes. Purely structural, so label-invariant.
fn refine(colors: &mut Vec<u32>, edges: &[(u16, u16)]) {
    let n = colors.len();
    loop {
        let mut neighborhoods: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            neighborhoods[u as usize].push(colors[v as usize]);
            neighborhoods[v as usize].push(colors[u as usize]);
        }
        for list in &mut neighborhoods {
            list.sort_unstable();
        }
        let sigs: Vec<(u32, Vec<u32>)> = colors
            .iter()
            .zip(neighborhoods)
            .map(|(&c, nb)| (c, nb))
            .collect();
        let mut ranks: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for sig in &sigs {
            ranks.insert(sig, 0);
        }
        for (next, rank) in ranks.values_mut().enumerate() {
            *rank = next as u32;
        }
        let new_colors: Vec<u32> = sigs.iter().map(|sig| ranks[sig]).collect();
        if new_colors == *colors {
            return;
        }
        *colors = new_colors;
    }
}

/// Branch on the smallest ambiguous color class, individualize each member
/// in turn, and keep the lexicographically least encoding.
fn search(colors: &[u32], edges: &[(u16, u16)]) -> Vec<(u16, u16)> {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &c in colors {
        *counts.entry(c).or_insert(0) += 1;
    }
    let target = counts.iter().find(|&(_, &count)| count > 1).map(|(&c, _)| c);
    let Some(target) = target else {
        // Discrete coloring: colors are a bijection onto 0..n.
        let mut encoded: Vec<(u16, u16)> = edges
            .iter()
            .map(|&(u, v)| {
                let (cu, cv) = (colors[u as usize] as u16, colors[v as usize] as u16);
                (cu.min(cv), cu.max(cv))
            })
            .collect();
        encoded.sort_unstable();
        return encoded;
    };
    let mut best: Option<Vec<(u16, u16)>> = None;
    for v in 0..colors.len() {
        if colors[v] != target {
            continue;
        }
        let mut branched = colors.to_vec();
        branched[v] = colors.len() as u32; // fresh color; re-ranked by refine
        refine(&mut branched, edges);
        let candidate = search(&branched, edges);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    best.expect("ambiguous classes are non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::HeapPosition;

    fn key(p: &Position) -> CanonKey {
        canonical(p).unwrap()
    }

    fn bits(s: &str) -> Position {
        Position::Bits(s.parse().unwrap())
    }

    fn cm(s: &str) -> Position {
        Position::Cm(s.parse().unwrap())
    }

    fn graph(s: &str) -> Position {
        Position::Graph(s.parse().unwrap())
    }

    #[test]
    fn bit_symmetries_collapse() {
        assert_eq!(key(&bits("0011")), key(&bits("1100"))); // reversal
        assert_eq!(key(&bits("0010")), key(&bits("1101"))); // complement
        assert_ne!(key(&bits("0011")), key(&bits("1010")));
        assert_ne!(key(&bits("00")), key(&bits("000")));
    }

    #[test]
    fn cm_symmetries_collapse() {
        assert_eq!(key(&cm("10/01")), key(&cm("01/10"))); // swap
        assert_eq!(key(&cm("110/001")), key(&cm("011/100"))); // reverse both
        assert_eq!(key(&cm("110/001")), key(&cm("001/110"))); // complement both
        assert_ne!(key(&cm("110/001")), key(&cm("110/010")));
    }

    #[test]
    fn heaps_key_on_the_multiset() {
        let a = Position::Heaps(HeapPosition::new([2, 5, 3]).unwrap());
        let b = Position::Heaps(HeapPosition::new([5, 3, 2]).unwrap());
        assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn graph_keys_are_label_invariant() {
        assert_eq!(key(&graph("a-b,b-c")), key(&graph("x-y,y-z")));
        assert_eq!(key(&graph("a-b,c-d")), key(&graph("q-r,y-z")));
        // A path and a matching with equal edge counts differ.
        assert_ne!(key(&graph("a-b,b-c")), key(&graph("a-b,c-d")));
        // Parallel edges are structural.
        assert_ne!(key(&graph("a-b,a-b")), key(&graph("a-b")));
        // A 4-cycle against itself under a rotated labeling.
        assert_eq!(
            key(&graph("a-b,b-c,c-d,d-a")),
            key(&graph("c-d,d-a,a-b,b-c"))
        );
        // Star versus path on the same vertex count.
        assert_ne!(
            key(&graph("c-a,c-b,c-d")),
            key(&graph("a-b,b-c,c-d"))
        );
    }

    #[test]
    fn oversized_components_signal_a_bypass() {
        let long_path: Vec<(String, String)> =
            (0..30).map(|i| (format!("v{i}"), format!("v{}", i + 1))).collect();
        let g = Position::Graph(GraphPosition::from_edges(long_path).unwrap());
        assert!(matches!(
            canonical(&g),
            Err(CanonError::GraphTooLarge { edges: 30, cap: 24 })
        ));
        assert!(canonical_with_cap(&g, 30).is_ok());
    }
}
