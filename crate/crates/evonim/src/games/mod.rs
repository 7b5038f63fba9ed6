//! Rulesets and position types.
//!
//! Five impartial games are modeled. Three act on binary strings and are
//! motivated by the moves of a genetic algorithm, with the restriction that
//! every move must strictly raise the entropy (the number of adjacent
//! unequal bit pairs):
//!
//! * [`Ruleset::Ga1`] — one string; flip a prefix (crossover with the
//!   string's complement) or flip a single bit (mutation).
//! * [`Ruleset::Ga2`] — one string; flip any contiguous segment that leaves
//!   the final bit untouched.
//! * [`Ruleset::Cm`] — two strings of equal length; swap prefixes between
//!   them, or flip a single bit of either, raising *total* entropy.
//!
//! The other two are classical comparisons: [`Ruleset::Kayles`] (octal 0.77:
//! take one or two tokens from a heap, optionally splitting the remainder)
//! and [`Ruleset::ArcKayles`] (remove an edge together with every edge
//! touching it).
//!
//! Bit-string positions reduce to heap multisets by reading runs of equal
//! bits ([`BitPosition::to_heaps`]); [`Position::parse`] accepts either
//! writing and infers which one was meant.

pub(crate) mod bits;
pub(crate) mod canon;
pub(crate) mod cm;
pub(crate) mod graph;
pub(crate) mod heaps;

pub use bits::{BitPosition, MAX_BIT_LEN};
pub use canon::{canonical, canonical_with_cap, CanonError, CanonKey, DEFAULT_CANON_EDGE_CAP};
pub use cm::{cm_to_arc_kayles, CmPosition};
pub use graph::GraphPosition;
pub use heaps::HeapPosition;

use std::fmt;
use std::str::FromStr;

// ---------------------------------------------------------------------------
// Rulesets
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ruleset {
    Ga1,
    Ga2,
    Cm,
    Kayles,
    ArcKayles,
}

impl Ruleset {
    pub const ALL: [Ruleset; 5] =
        [Ruleset::Ga1, Ruleset::Ga2, Ruleset::Cm, Ruleset::Kayles, Ruleset::ArcKayles];

    pub fn name(&self) -> &'static str {
        match self {
            Ruleset::Ga1 => "ga1",
            Ruleset::Ga2 => "ga2",
            Ruleset::Cm => "cm",
            Ruleset::Kayles => "kayles",
            Ruleset::ArcKayles => "arc-kayles",
        }
    }
}

impl fmt::Display for Ruleset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ruleset {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ga1" => Ok(Ruleset::Ga1),
            "ga2" => Ok(Ruleset::Ga2),
            "cm" => Ok(Ruleset::Cm),
            "kayles" => Ok(Ruleset::Kayles),
            "arc-kayles" => Ok(Ruleset::ArcKayles),
            _ => Err(GameError::InvalidLiteral {
                text: s.to_string(),
                reason: "expected one of ga1, ga2, cm, kayles, arc-kayles".to_string(),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("invalid literal {text:?}: {reason}")]
    InvalidLiteral { text: String, reason: String },
    #[error("bit strings must have 1 to {MAX_BIT_LEN} bits, got {len}")]
    BitLength { len: usize },
    #[error("paired strings must have equal lengths, got {a} and {b}")]
    CmLengthMismatch { a: usize, b: usize },
    #[error("self-loop on vertex {vertex:?}")]
    SelfLoop { vertex: String },
    #[error("invalid vertex name {name:?}")]
    InvalidVertex { name: String },
    #[error("heap sizes must be positive")]
    ZeroHeap,
    #[error("heaps of size 1 are inert here and must be dropped first")]
    SizeOneHeap,
    #[error("{ruleset} is not played on {kind} positions")]
    RulesetMismatch { ruleset: Ruleset, kind: &'static str },
}

// ---------------------------------------------------------------------------
// Positions
// ---------------------------------------------------------------------------

/// A position of any supported shape. Which shapes a ruleset accepts is
/// checked at move generation, not at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    Bits(BitPosition),
    Heaps(HeapPosition),
    Cm(CmPosition),
    Graph(GraphPosition),
}

impl Position {
    /// Parses a literal, inferring the shape from the ruleset:
    ///
    /// * `ga1` / `ga2` — a string of only `0`/`1` characters is a bit
    ///   string; anything else is a comma-separated heap list. (So `"10"`
    ///   is the two-bit string, not a heap of ten.) For `ga1`, heaps of
    ///   size 1 are inert and are dropped on parse.
    /// * `kayles` — a heap list.
    /// * `cm` — two bit strings joined by `/`.
    /// * `arc-kayles` — a `u-v,...` edge list.
    ///
    /// Empty text denotes the empty position where the ruleset has one.
    pub fn parse(text: &str, ruleset: Ruleset) -> Result<Position, GameError> {
        let text = text.trim();
        match ruleset {
            Ruleset::Ga1 | Ruleset::Ga2 | Ruleset::Kayles => {
                if text.is_empty() {
                    return Ok(Position::Heaps(HeapPosition::empty()));
                }
                let is_bits = ruleset != Ruleset::Kayles
                    && text.chars().all(|c| c == '0' || c == '1');
                if is_bits {
                    return Ok(Position::Bits(text.parse()?));
                }
                let heaps: HeapPosition = text.parse()?;
                Ok(Position::Heaps(if ruleset == Ruleset::Ga1 {
                    heaps.drop_ones()
                } else {
                    heaps
                }))
            }
            Ruleset::Cm => Ok(Position::Cm(text.parse()?)),
            Ruleset::ArcKayles => Ok(Position::Graph(text.parse()?)),
        }
    }

    /// The positions reachable in one move under `ruleset`, sorted and
    /// deduplicated.
    pub fn options(&self, ruleset: Ruleset) -> Result<Vec<Position>, GameError> {
        Ok(match (ruleset, self) {
            (Ruleset::Ga1, Position::Bits(p)) => {
                bits::ga1_options(p).into_iter().map(Position::Bits).collect()
            }
            (Ruleset::Ga2, Position::Bits(p)) => {
                bits::ga2_options(p).into_iter().map(Position::Bits).collect()
            }
            (Ruleset::Ga1, Position::Heaps(p)) => {
                heaps::ga1_heap_options(p)?.into_iter().map(Position::Heaps).collect()
            }
            (Ruleset::Ga2, Position::Heaps(p)) => {
                heaps::ga2_heap_options(p).into_iter().map(Position::Heaps).collect()
            }
            (Ruleset::Kayles, Position::Heaps(p)) => {
                heaps::kayles_heap_options(p).into_iter().map(Position::Heaps).collect()
            }
            (Ruleset::Cm, Position::Cm(p)) => {
                cm::cm_options(p).into_iter().map(Position::Cm).collect()
            }
            (Ruleset::ArcKayles, Position::Graph(p)) => {
                p.arc_kayles_options().into_iter().map(Position::Graph).collect()
            }
            _ => return Err(GameError::RulesetMismatch { ruleset, kind: self.kind() }),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Position::Bits(_) => "bit-string",
            Position::Heaps(_) => "heap",
            Position::Cm(_) => "paired-string",
            Position::Graph(_) => "graph",
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::Bits(p) => p.fmt(f),
            Position::Heaps(p) => p.fmt(f),
            Position::Cm(p) => p.fmt(f),
            Position::Graph(p) => p.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ruleset_names_round_trip() {
        for r in Ruleset::ALL {
            assert_eq!(r.name().parse::<Ruleset>().unwrap(), r);
        }
        assert_eq!("ARC-KAYLES".parse::<Ruleset>().unwrap(), Ruleset::ArcKayles);
        assert!("nim".parse::<Ruleset>().is_err());
    }

    #[test]
    fn parse_infers_the_shape() {
        assert!(matches!(Position::parse("0011", Ruleset::Ga1), Ok(Position::Bits(_))));
        // All-binary text is a bit string even when it would scan as a heap.
        assert!(matches!(Position::parse("10", Ruleset::Ga2), Ok(Position::Bits(_))));
        assert!(matches!(Position::parse("3,2", Ruleset::Ga2), Ok(Position::Heaps(_))));
        assert!(matches!(Position::parse("10", Ruleset::Kayles), Ok(Position::Heaps(_))));
        assert!(matches!(Position::parse("11/00", Ruleset::Cm), Ok(Position::Cm(_))));
        assert!(matches!(Position::parse("a-b", Ruleset::ArcKayles), Ok(Position::Graph(_))));
        assert!(Position::parse("a-b", Ruleset::Ga1).is_err());
        assert!(Position::parse("3,2", Ruleset::Cm).is_err());
    }

    #[test]
    fn empty_text_is_the_empty_position() {
        assert_eq!(Position::parse("", Ruleset::Kayles).unwrap().to_string(), "");
        assert_eq!(Position::parse("", Ruleset::ArcKayles).unwrap().to_string(), "");
        assert!(Position::parse("", Ruleset::Cm).is_err());
    }

    #[test]
    fn ga1_heap_literals_shed_ones() {
        let p = Position::parse("3,1,2,1", Ruleset::Ga1).unwrap();
        assert_eq!(p.to_string(), "3,2");
        let kept = Position::parse("3,1,2,1", Ruleset::Ga2).unwrap();
        assert_eq!(kept.to_string(), "3,2,1,1");
    }

    #[test]
    fn options_dispatch_by_shape() {
        let bits = Position::parse("00", Ruleset::Ga1).unwrap();
        let opts = bits.options(Ruleset::Ga1).unwrap();
        let shown: Vec<String> = opts.iter().map(Position::to_string).collect();
        assert_eq!(shown, ["10", "01"]); // ordered by value, least significant bit first

        let heap = Position::parse("3", Ruleset::Kayles).unwrap();
        assert_eq!(heap.options(Ruleset::Kayles).unwrap().len(), 3);

        let err = heap.options(Ruleset::Cm).unwrap_err();
        assert!(matches!(err, GameError::RulesetMismatch { kind: "heap", .. }));
        let cm = Position::parse("01/10", Ruleset::Cm).unwrap();
        assert!(cm.options(Ruleset::Ga1).is_err());
    }

    #[test]
    fn literals_round_trip_through_display() {
        for (text, ruleset) in [
            ("0010011", Ruleset::Ga1),
            ("5,3,2", Ruleset::Kayles),
            ("110/001", Ruleset::Cm),
            ("a-b,b-c,x-y", Ruleset::ArcKayles),
        ] {
            let p = Position::parse(text, ruleset).unwrap();
            assert_eq!(p.to_string(), text);
            assert_eq!(Position::parse(&p.to_string(), ruleset).unwrap(), p);
        }
    }
}
