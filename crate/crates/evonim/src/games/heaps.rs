//! Heap multiset positions and the heap-level move generators.
//!
//! Heaps are stored sorted non-increasing, so equal multisets compare equal.
//! The empty multiset is the terminal position.

use super::GameError;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// An unordered multiset of positive heap sizes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HeapPosition {
    heaps: Vec<u32>,
}

impl HeapPosition {
    /// Builds a multiset; heap sizes must be positive.
    pub fn new<I: IntoIterator<Item = u32>>(heaps: I) -> Result<HeapPosition, GameError> {
        let mut heaps: Vec<u32> = heaps.into_iter().collect();
        if heaps.contains(&0) {
            return Err(GameError::ZeroHeap);
        }
        heaps.sort_unstable_by(|a, b| b.cmp(a));
        Ok(HeapPosition { heaps })
    }

    pub fn empty() -> HeapPosition {
        HeapPosition { heaps: Vec::new() }
    }

    pub fn heaps(&self) -> &[u32] {
        &self.heaps
    }

    pub fn len(&self) -> usize {
        self.heaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heaps.is_empty()
    }

    /// Total number of stones.
    pub fn total(&self) -> u64 {
        self.heaps.iter().map(|&h| h as u64).sum()
    }

    /// The same multiset with size-1 heaps removed.
    pub fn drop_ones(&self) -> HeapPosition {
        HeapPosition { heaps: self.heaps.iter().copied().filter(|&h| h > 1).collect() }
    }

    /// Removes one instance of each size in `remove` and inserts `add`.
    fn replaced(&self, remove: &[u32], add: &[u32]) -> HeapPosition {
        let mut heaps = self.heaps.clone();
        for &r in remove {
            let at = heaps.iter().position(|&h| h == r).expect("size present");
            heaps.swap_remove(at);
        }
        heaps.extend_from_slice(add);
        heaps.sort_unstable_by(|a, b| b.cmp(a));
        HeapPosition { heaps }
    }

    /// Distinct heap sizes (each listed once, descending).
    fn distinct(&self) -> Vec<u32> {
        let mut out = self.heaps.clone();
        out.dedup();
        out
    }
}

impl fmt::Display for HeapPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.heaps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

impl FromStr for HeapPosition {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut heaps = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let h: u32 = part.parse().map_err(|_| GameError::InvalidLiteral {
                text: s.to_string(),
                reason: format!("invalid heap size {part:?}"),
            })?;
            heaps.push(h);
        }
        HeapPosition::new(heaps)
    }
}

// ---------------------------------------------------------------------------
// Move generation
// ---------------------------------------------------------------------------

/// Single-string crossover/mutation moves in heap form. From a heap of size
/// `L`, split `L` or `L - 1` into two positive parts and discard parts equal
/// to 1. The input must already have its size-1 heaps removed.
pub(crate) fn ga1_heap_options(p: &HeapPosition) -> Result<BTreeSet<HeapPosition>, GameError> {
    if p.heaps.contains(&1) {
        return Err(GameError::SizeOneHeap);
    }
    let mut out = BTreeSet::new();
    for v in p.distinct() {
        for m in [v, v - 1] {
            for a in 1..=m / 2 {
                let parts: Vec<u32> =
                    [a, m - a].into_iter().filter(|&part| part > 1).collect();
                out.insert(p.replaced(&[v], &parts));
            }
        }
    }
    Ok(out)
}

/// Two-point moves in heap form, size-1 heaps retained: split one heap into
/// two, one heap into three, or two different heaps into two parts each.
pub(crate) fn ga2_heap_options(p: &HeapPosition) -> BTreeSet<HeapPosition> {
    let mut out = BTreeSet::new();
    let distinct = p.distinct();
    for &v in &distinct {
        // One heap into two positive parts.
        for a in 1..=v / 2 {
            out.insert(p.replaced(&[v], &[a, v - a]));
        }
        // One heap into three positive parts.
        for a in 1..=v / 3 {
            for b in a..=(v - a) / 2 {
                out.insert(p.replaced(&[v], &[a, b, v - a - b]));
            }
        }
    }
    // Two different heaps (distinct instances, values may coincide), each
    // split into two positive parts.
    let mut counts = BTreeMap::new();
    for &h in &p.heaps {
        *counts.entry(h).or_insert(0usize) += 1;
    }
    for (i, &v1) in distinct.iter().enumerate() {
        if v1 < 2 {
            continue;
        }
        for &v2 in &distinct[i..] {
            if v2 < 2 || (v1 == v2 && counts[&v1] < 2) {
                continue;
            }
            for a in 1..=v1 / 2 {
                for b in 1..=v2 / 2 {
                    out.insert(p.replaced(&[v1, v2], &[a, v1 - a, b, v2 - b]));
                }
            }
        }
    }
    out
}

/// Octal 0.77: remove one or two stones from a heap, optionally splitting
/// whatever remains into two non-empty heaps.
pub(crate) fn kayles_heap_options(p: &HeapPosition) -> BTreeSet<HeapPosition> {
    let mut out = BTreeSet::new();
    for v in p.distinct() {
        for take in 1..=2u32.min(v) {
            let m = v - take;
            if m == 0 {
                out.insert(p.replaced(&[v], &[]));
            } else {
                out.insert(p.replaced(&[v], &[m]));
                for a in 1..=m / 2 {
                    out.insert(p.replaced(&[v], &[a, m - a]));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(s: &str) -> HeapPosition {
        s.parse().unwrap()
    }

    fn strings(set: &BTreeSet<HeapPosition>) -> BTreeSet<String> {
        set.iter().map(|p| p.to_string()).collect()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn storage_is_sorted_and_validated() {
        assert_eq!(hp("2,3,3").to_string(), "3,3,2");
        assert_eq!(hp(" 4 , 1 ").to_string(), "4,1");
        assert!(HeapPosition::new([2, 0]).is_err());
        assert!("".parse::<HeapPosition>().is_err());
        assert!("2,x".parse::<HeapPosition>().is_err());
        assert_eq!(hp("3,1,1").drop_ones().to_string(), "3");
        assert_eq!(hp("5,4").total(), 9);
        assert_eq!(HeapPosition::empty().to_string(), "");
    }

    #[test]
    fn single_string_heap_moves() {
        // Splits of 4 give {3} (a part of 1 is discarded) and {2,2}; splits
        // of 3 give {2}.
        let opts = ga1_heap_options(&hp("4")).unwrap();
        assert_eq!(strings(&opts), set(&["3", "2,2", "2"]));
        // A heap of size 2 can only vanish.
        assert_eq!(strings(&ga1_heap_options(&hp("2")).unwrap()), set(&[""]));
        assert!(ga1_heap_options(&hp("3,1")).is_err());
        // Moves touch exactly one heap.
        let opts = ga1_heap_options(&hp("4,2")).unwrap();
        assert_eq!(strings(&opts), set(&["3,2", "2,2,2", "2,2", "4"]));
    }

    #[test]
    fn two_point_heap_moves() {
        assert_eq!(
            strings(&ga2_heap_options(&hp("4"))),
            set(&["3,1", "2,2", "2,1,1"])
        );
        // {2,2}: split one into {1,1}, or both at once.
        assert_eq!(
            strings(&ga2_heap_options(&hp("2,2"))),
            set(&["2,1,1", "1,1,1,1"])
        );
        // Size-1 heaps are inert but retained.
        assert_eq!(strings(&ga2_heap_options(&hp("1,1"))), set(&[]));
        assert_eq!(
            strings(&ga2_heap_options(&hp("3,1"))),
            set(&["2,1,1", "1,1,1,1"])
        );
    }

    #[test]
    fn two_point_moves_conserve_stones() {
        let p = hp("5,3,2,1");
        for q in ga2_heap_options(&p) {
            assert_eq!(q.total(), p.total(), "{q}");
            assert!(q.len() > p.len(), "{q}");
        }
    }

    #[test]
    fn octal_77_moves() {
        assert_eq!(
            strings(&kayles_heap_options(&hp("3"))),
            set(&["2", "1", "1,1"])
        );
        assert_eq!(strings(&kayles_heap_options(&hp("1"))), set(&[""]));
        assert_eq!(strings(&kayles_heap_options(&hp("2"))), set(&["1", ""]));
        assert_eq!(
            strings(&kayles_heap_options(&hp("5"))),
            set(&["4", "3,1", "2,2", "3", "2,1"])
        );
    }
}
