//! Bit-string positions and the entropy-driven move generators.
//!
//! A position is a word of up to 63 bits stored in a `u64`; character `i` of
//! the literal (counted from the left, 0-based) lives in bit `i`. Entropy is
//! the number of adjacent unequal pairs, computed in one shot as
//! `popcount((bits ^ bits>>1) & low(len-1))`.

use super::heaps::HeapPosition;
use super::GameError;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Longest representable bit string.
pub const MAX_BIT_LEN: u8 = 63;

/// A fixed-length binary word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitPosition {
    len: u8,
    bits: u64,
}

fn low_mask(k: u8) -> u64 {
    debug_assert!(k <= MAX_BIT_LEN);
    (1u64 << k) - 1
}

impl BitPosition {
    /// Builds a position from raw bits; bits at or above `len` are cleared.
    pub fn new(len: u8, bits: u64) -> Result<BitPosition, GameError> {
        if len == 0 || len > MAX_BIT_LEN {
            return Err(GameError::BitLength { len: len as usize });
        }
        Ok(BitPosition { len, bits: bits & low_mask(len) })
    }

    pub fn len(&self) -> u8 {
        self.len
    }

    /// Always false: positions have length at least 1.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, i: u8) -> bool {
        debug_assert!(i < self.len);
        self.bits >> i & 1 == 1
    }

    /// Number of adjacent unequal pairs; ranges over `[0, len-1]`.
    pub fn entropy(&self) -> u32 {
        ((self.bits ^ self.bits >> 1) & low_mask(self.len - 1)).count_ones()
    }

    pub fn flipped_bit(&self, i: u8) -> BitPosition {
        debug_assert!(i < self.len);
        BitPosition { len: self.len, bits: self.bits ^ 1 << i }
    }

    /// Flips the first `k` characters (`1 <= k <= len`).
    pub fn flipped_prefix(&self, k: u8) -> BitPosition {
        debug_assert!(1 <= k && k <= self.len);
        BitPosition { len: self.len, bits: self.bits ^ low_mask(k) }
    }

    /// Flips characters `x` through `y - 1`, 1-based, `x < y <= len + 1`
    /// is NOT accepted: callers pass `y <= len` per the two-point rule.
    pub fn flipped_segment(&self, x: u8, y: u8) -> BitPosition {
        debug_assert!(1 <= x && x < y && y <= self.len);
        let window = low_mask(y - 1) ^ low_mask(x - 1);
        BitPosition { len: self.len, bits: self.bits ^ window }
    }

    pub fn complemented(&self) -> BitPosition {
        BitPosition { len: self.len, bits: self.bits ^ low_mask(self.len) }
    }

    pub fn reversed(&self) -> BitPosition {
        BitPosition { len: self.len, bits: self.bits.reverse_bits() >> (64 - self.len as u32) }
    }

    /// Run lengths in string order, optionally with size-1 runs removed.
    pub fn to_heaps(&self, drop_ones: bool) -> HeapPosition {
        let mut runs = Vec::new();
        let mut current = self.bit(0);
        let mut run = 1u32;
        for i in 1..self.len {
            if self.bit(i) == current {
                run += 1;
            } else {
                runs.push(run);
                current = self.bit(i);
                run = 1;
            }
        }
        runs.push(run);
        if drop_ones {
            runs.retain(|&r| r > 1);
        }
        HeapPosition::new(runs).expect("run lengths are positive")
    }
}

impl fmt::Display for BitPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.bit(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for BitPosition {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || s.len() > MAX_BIT_LEN as usize {
            return Err(GameError::BitLength { len: s.len() });
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => {
                    return Err(GameError::InvalidLiteral {
                        text: s.to_string(),
                        reason: format!("invalid bit character {c:?}"),
                    })
                }
            }
        }
        BitPosition::new(s.len() as u8, bits)
    }
}

// ---------------------------------------------------------------------------
// Move generation
// ---------------------------------------------------------------------------

/// Single-string crossover (prefix flip of length `1..=n-1`) and mutation
/// (single-bit flip), kept when entropy strictly increases.
pub(crate) fn ga1_options(p: &BitPosition) -> BTreeSet<BitPosition> {
    let e = p.entropy();
    let mut out = BTreeSet::new();
    for i in 0..p.len() {
        let q = p.flipped_bit(i);
        if q.entropy() > e {
            out.insert(q);
        }
    }
    for k in 1..p.len() {
        let q = p.flipped_prefix(k);
        if q.entropy() > e {
            out.insert(q);
        }
    }
    out
}

/// Two-point moves: flip the window `x..=y-1` for `1 <= x < y <= n`, kept
/// when entropy strictly increases. The final bit is never inside a window.
pub(crate) fn ga2_options(p: &BitPosition) -> BTreeSet<BitPosition> {
    let e = p.entropy();
    let mut out = BTreeSet::new();
    for x in 1..=p.len() {
        for y in x + 1..=p.len() {
            let q = p.flipped_segment(x, y);
            if q.entropy() > e {
                out.insert(q);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(s: &str) -> BitPosition {
        s.parse().unwrap()
    }

    fn literals(set: &BTreeSet<BitPosition>) -> BTreeSet<String> {
        set.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn entropy_counts_unequal_neighbours() {
        assert_eq!(bp("001000111").entropy(), 3);
        assert_eq!(bp("0000").entropy(), 0);
        assert_eq!(bp("0101").entropy(), 3);
        assert_eq!(bp("0").entropy(), 0);
        assert_eq!(bp("01").entropy(), 1);
    }

    #[test]
    fn heaps_are_run_lengths() {
        assert_eq!(bp("001000111").to_heaps(false).to_string(), "3,3,2,1");
        assert_eq!(bp("001000111").to_heaps(true).to_string(), "3,3,2");
        assert!(bp("1").to_heaps(true).is_empty());
        assert_eq!(bp("0110").to_heaps(false).to_string(), "2,1,1");
    }

    #[test]
    fn literal_round_trip_and_errors() {
        for s in ["0", "1", "00110", "101010101"] {
            assert_eq!(bp(s).to_string(), s);
        }
        assert!("".parse::<BitPosition>().is_err());
        assert!("012".parse::<BitPosition>().is_err());
        assert!("0".repeat(64).parse::<BitPosition>().is_err());
    }

    #[test]
    fn transforms() {
        assert_eq!(bp("0011").reversed().to_string(), "1100");
        assert_eq!(bp("0011").complemented().to_string(), "1100");
        assert_eq!(bp("100").flipped_bit(2).to_string(), "101");
        assert_eq!(bp("0000").flipped_prefix(3).to_string(), "1110");
        // x=2, y=4 flips characters 2 and 3 only.
        assert_eq!(bp("0000").flipped_segment(2, 4).to_string(), "0110");
    }

    #[test]
    fn single_string_crossover_options() {
        // Both mutations raise entropy; crossover k=1 duplicates "10".
        assert_eq!(
            literals(&ga1_options(&bp("00"))),
            ["10", "01"].iter().map(|s| s.to_string()).collect()
        );
        // A maximal-entropy string has no options.
        assert!(ga1_options(&bp("0101")).is_empty());
        for q in ga1_options(&bp("000111")) {
            assert!(q.entropy() > bp("000111").entropy());
        }
    }

    #[test]
    fn two_point_options_never_touch_the_last_bit() {
        // n=2 admits only the window x=1,y=2, flipping the first bit.
        assert_eq!(
            literals(&ga2_options(&bp("00"))),
            ["10"].iter().map(|s| s.to_string()).collect()
        );
        for q in ga2_options(&bp("000000")) {
            assert!(!q.bit(5), "{q}");
        }
    }
}
