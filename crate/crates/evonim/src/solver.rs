//! Grundy-value computation.
//!
//! Every game here is impartial under normal play, so each position has a
//! nim-value ([`Nimber`]): the minimum excludant of its options' values, with
//! terminal positions at 0. The solver memoizes values behind canonical keys
//! (see [`crate::games::canonical`]) so symmetric positions are solved once,
//! and exploits additivity where it is structural: heap games whose moves
//! touch one heap decompose into a nim-sum of single heaps, and disconnected
//! graphs into a nim-sum of components. Segment-flip heap positions are *not*
//! decomposed (one of their moves splits two heaps at once), and paired
//! strings never are.
//!
//! [`kayles_reference`] is a deliberately separate dynamic program over the
//! octal-0.77 rules, kept independent of the generic engine so the two can
//! be checked against each other.

use crate::games::{
    canonical_with_cap, bits, cm, heaps, CanonError, CanonKey, GameError, GraphPosition,
    HeapPosition, Position, Ruleset,
};
use std::collections::HashMap;
use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

// ---------------------------------------------------------------------------
// Nimbers
// ---------------------------------------------------------------------------

/// A Grundy value. Addition of independent games is bitwise XOR.
#[derive(
    Debug,
    Clone,
    Copy,
    PartialEq,
    Eq,
    PartialOrd,
    Ord,
    Hash,
    Default,
    serde::Serialize,
    serde::Deserialize,
)]
#[serde(transparent)]
pub struct Nimber(pub u32);

impl fmt::Display for Nimber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl BitXor for Nimber {
    type Output = Nimber;

    fn bitxor(self, rhs: Nimber) -> Nimber {
        Nimber(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Nimber {
    fn bitxor_assign(&mut self, rhs: Nimber) {
        self.0 ^= rhs.0;
    }
}

/// Minimum excludant: the least non-negative integer absent from `values`.
pub fn mex(values: &[Nimber]) -> Nimber {
    let mut present = vec![false; values.len() + 1];
    for v in values {
        if (v.0 as usize) < present.len() {
            present[v.0 as usize] = true;
        }
    }
    Nimber(present.iter().position(|&p| !p).unwrap() as u32)
}

/// XOR-sum of the values of independent components.
pub fn nim_sum<I: IntoIterator<Item = Nimber>>(values: I) -> Nimber {
    values.into_iter().fold(Nimber(0), |acc, v| acc ^ v)
}

// ---------------------------------------------------------------------------
// Limits and errors
// ---------------------------------------------------------------------------

/// Guards on exhaustive solving. State spaces here grow exponentially, so
/// the solver refuses inputs past these bounds instead of hanging.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverLimits {
    /// Longest bit string (and paired-string side) solved exhaustively.
    pub max_bits: u8,
    /// Most edges accepted in a graph position.
    pub max_graph_edges: usize,
    /// Largest component canonicalized for the shared cache; components
    /// between this and `max_graph_edges` are solved with a per-call memo.
    pub canon_edge_cap: usize,
}

impl Default for SolverLimits {
    fn default() -> SolverLimits {
        SolverLimits { max_bits: 20, max_graph_edges: 24, canon_edge_cap: 24 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("bit strings beyond {max} bits are not solved exhaustively (got {len})")]
    BitsTooLong { len: usize, max: usize },
    #[error("graphs beyond {max} edges are not solved exhaustively (got {edges})")]
    GraphTooLarge { edges: usize, max: usize },
    #[error("the empty position has no heap count to apply the formula to")]
    EmptyPosition,
    #[error("no {family} sequence is defined for {ruleset}")]
    UnsupportedFamily { ruleset: Ruleset, family: SequenceFamily },
    #[error(transparent)]
    Game(#[from] GameError),
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

/// A memoizing Grundy solver. Cheap to share behind a reference; all
/// interior state is synchronized.
pub struct Solver {
    limits: SolverLimits,
    cache: Mutex<HashMap<(Ruleset, CanonKey), Nimber>>,
    ga1_direct: Mutex<HashMap<Vec<u32>, Nimber>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Default for Solver {
    fn default() -> Solver {
        Solver::new()
    }
}

impl Solver {
    pub fn new() -> Solver {
        Solver::with_limits(SolverLimits::default())
    }

    pub fn with_limits(limits: SolverLimits) -> Solver {
        Solver {
            limits,
            cache: Mutex::new(HashMap::new()),
            ga1_direct: Mutex::new(HashMap::new()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn limits(&self) -> SolverLimits {
        self.limits
    }

    pub fn cache_stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.cache.lock().unwrap().len(),
        }
    }

    /// The Grundy value of `p` under `ruleset`.
    pub fn grundy(&self, p: &Position, ruleset: Ruleset) -> Result<Nimber, SolveError> {
        match (ruleset, p) {
            (Ruleset::Ga1 | Ruleset::Ga2, Position::Bits(b)) => {
                if b.len() > self.limits.max_bits {
                    return Err(SolveError::BitsTooLong {
                        len: b.len() as usize,
                        max: self.limits.max_bits as usize,
                    });
                }
                Ok(self.bits_value(ruleset, *b))
            }
            (Ruleset::Ga1, Position::Heaps(h)) => {
                // Size-1 heaps admit no move and enable none, so shed them.
                Ok(nim_sum(h.drop_ones().heaps().iter().map(|&n| self.ga1_single(n))))
            }
            (Ruleset::Ga2, Position::Heaps(h)) => Ok(self.ga2_heaps_value(h)),
            (Ruleset::Kayles, Position::Heaps(h)) => {
                Ok(nim_sum(h.heaps().iter().map(|&n| self.kayles_single(n))))
            }
            (Ruleset::Cm, Position::Cm(c)) => {
                if c.len() > self.limits.max_bits {
                    return Err(SolveError::BitsTooLong {
                        len: c.len() as usize,
                        max: self.limits.max_bits as usize,
                    });
                }
                Ok(self.cm_value(*c))
            }
            (Ruleset::ArcKayles, Position::Graph(g)) => {
                if g.edge_count() > self.limits.max_graph_edges {
                    return Err(SolveError::GraphTooLarge {
                        edges: g.edge_count(),
                        max: self.limits.max_graph_edges,
                    });
                }
                Ok(self.graph_value(g))
            }
            _ => Err(GameError::RulesetMismatch { ruleset, kind: p.kind() }.into()),
        }
    }

    /// Whole-multiset recursion for single-string heap positions, bypassing
    /// the nim-sum decomposition so the two routes can be compared.
    pub fn grundy_ga1_heaps_direct(&self, h: &HeapPosition) -> Result<Nimber, SolveError> {
        if let Some(&v) = self.ga1_direct.lock().unwrap().get(h.heaps()) {
            return Ok(v);
        }
        let mut values = Vec::new();
        for option in heaps::ga1_heap_options(h)? {
            values.push(self.grundy_ga1_heaps_direct(&option)?);
        }
        let v = mex(&values);
        self.ga1_direct.lock().unwrap().insert(h.heaps().to_vec(), v);
        Ok(v)
    }

    /// Whole-graph recursion without component decomposition or symmetry
    /// reduction; the independent cross-check for the graph route.
    pub fn grundy_graph_direct(&self, g: &GraphPosition) -> Result<Nimber, SolveError> {
        if g.edge_count() > self.limits.max_graph_edges {
            return Err(SolveError::GraphTooLarge {
                edges: g.edge_count(),
                max: self.limits.max_graph_edges,
            });
        }
        fn rec(g: &GraphPosition, memo: &mut HashMap<GraphPosition, Nimber>) -> Nimber {
            if let Some(&v) = memo.get(g) {
                return v;
            }
            let values: Vec<Nimber> =
                g.arc_kayles_options().iter().map(|o| rec(o, memo)).collect();
            let v = mex(&values);
            memo.insert(g.clone(), v);
            v
        }
        Ok(rec(g, &mut HashMap::new()))
    }

    // -- per-shape recursions ------------------------------------------------

    fn cached(&self, key: &(Ruleset, CanonKey)) -> Option<Nimber> {
        let got = self.cache.lock().unwrap().get(key).copied();
        match got {
            Some(v) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(v)
            }
            None => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn store(&self, key: (Ruleset, CanonKey), v: Nimber) {
        self.cache.lock().unwrap().insert(key, v);
    }

    fn key_of(&self, p: &Position, ruleset: Ruleset) -> (Ruleset, CanonKey) {
        let key = canonical_with_cap(p, self.limits.canon_edge_cap)
            .expect("only graph positions can exceed the canonical cap");
        (ruleset, key)
    }

    fn bits_value(&self, ruleset: Ruleset, p: bits::BitPosition) -> Nimber {
        let key = self.key_of(&Position::Bits(p), ruleset);
        if let Some(v) = self.cached(&key) {
            return v;
        }
        let options = match ruleset {
            Ruleset::Ga1 => bits::ga1_options(&p),
            _ => bits::ga2_options(&p),
        };
        let values: Vec<Nimber> =
            options.iter().map(|o| self.bits_value(ruleset, *o)).collect();
        let v = mex(&values);
        self.store(key, v);
        v
    }

    fn ga1_single(&self, n: u32) -> Nimber {
        if n <= 1 {
            return Nimber(0);
        }
        let heap = HeapPosition::new([n]).unwrap();
        let key = self.key_of(&Position::Heaps(heap.clone()), Ruleset::Ga1);
        if let Some(v) = self.cached(&key) {
            return v;
        }
        let options = heaps::ga1_heap_options(&heap).expect("single heap above 1");
        let values: Vec<Nimber> = options
            .iter()
            .map(|o| nim_sum(o.heaps().iter().map(|&part| self.ga1_single(part))))
            .collect();
        let v = mex(&values);
        self.store(key, v);
        v
    }

    fn kayles_single(&self, n: u32) -> Nimber {
        if n == 0 {
            return Nimber(0);
        }
        let heap = HeapPosition::new([n]).unwrap();
        let key = self.key_of(&Position::Heaps(heap.clone()), Ruleset::Kayles);
        if let Some(v) = self.cached(&key) {
            return v;
        }
        let values: Vec<Nimber> = heaps::kayles_heap_options(&heap)
            .iter()
            .map(|o| nim_sum(o.heaps().iter().map(|&part| self.kayles_single(part))))
            .collect();
        let v = mex(&values);
        self.store(key, v);
        v
    }

    fn ga2_heaps_value(&self, h: &HeapPosition) -> Nimber {
        let key = self.key_of(&Position::Heaps(h.clone()), Ruleset::Ga2);
        if let Some(v) = self.cached(&key) {
            return v;
        }
        let values: Vec<Nimber> = heaps::ga2_heap_options(h)
            .iter()
            .map(|o| self.ga2_heaps_value(o))
            .collect();
        let v = mex(&values);
        self.store(key, v);
        v
    }

    fn cm_value(&self, p: cm::CmPosition) -> Nimber {
        let key = self.key_of(&Position::Cm(p), Ruleset::Cm);
        if let Some(v) = self.cached(&key) {
            return v;
        }
        let values: Vec<Nimber> =
            cm::cm_options(&p).iter().map(|o| self.cm_value(*o)).collect();
        let v = mex(&values);
        self.store(key, v);
        v
    }

    fn graph_value(&self, g: &GraphPosition) -> Nimber {
        nim_sum(g.components().iter().map(|comp| self.component_value(comp)))
    }

    fn component_value(&self, comp: &GraphPosition) -> Nimber {
        match canonical_with_cap(&Position::Graph(comp.clone()), self.limits.canon_edge_cap) {
            Ok(key) => {
                let key = (Ruleset::ArcKayles, key);
                if let Some(v) = self.cached(&key) {
                    return v;
                }
                let values: Vec<Nimber> = comp
                    .arc_kayles_options()
                    .iter()
                    .map(|o| self.graph_value(o))
                    .collect();
                let v = mex(&values);
                self.store(key, v);
                v
            }
            Err(CanonError::GraphTooLarge { .. }) => {
                self.component_value_local(comp, &mut HashMap::new())
            }
        }
    }

    /// Recursion for components too large to canonicalize: memoized per call
    /// on the literal edge list, handing subcomponents that shrink under the
    /// cap back to the shared cache.
    fn component_value_local(
        &self,
        comp: &GraphPosition,
        memo: &mut HashMap<GraphPosition, Nimber>,
    ) -> Nimber {
        if let Some(&v) = memo.get(comp) {
            return v;
        }
        let mut values = Vec::new();
        for option in comp.arc_kayles_options() {
            let mut total = Nimber(0);
            for sub in option.components() {
                total ^= if sub.edge_count() <= self.limits.canon_edge_cap {
                    self.component_value(&sub)
                } else {
                    self.component_value_local(&sub, memo)
                };
            }
            values.push(total);
        }
        let v = mex(&values);
        memo.insert(comp.clone(), v);
        v
    }
}

// ---------------------------------------------------------------------------
// Reference octal-0.77 solver
// ---------------------------------------------------------------------------

/// Grundy values for octal-0.77 heaps of size `0..=max`, by direct dynamic
/// programming over "remove one or two tokens, optionally splitting the
/// remainder". Independent of [`Solver`] by design.
pub fn kayles_reference_sequence(max: u32) -> Vec<Nimber> {
    let mut g: Vec<Nimber> = Vec::with_capacity(max as usize + 1);
    g.push(Nimber(0));
    for n in 1..=max as usize {
        let mut values = Vec::new();
        for take in 1..=2usize.min(n) {
            let m = n - take;
            for a in 0..=m / 2 {
                values.push(g[a] ^ g[m - a]);
            }
        }
        g.push(mex(&values));
    }
    g
}

/// The octal-0.77 value of a single heap of `n` tokens.
pub fn kayles_reference(n: u32) -> Nimber {
    *kayles_reference_sequence(n).last().unwrap()
}

// ---------------------------------------------------------------------------
// Closed form for segment-flip heap positions
// ---------------------------------------------------------------------------

/// The closed form for segment-flip heap positions: with `k` heaps summing
/// to `s`, the value is `(t + s) mod 3` where `t ≡ -k (mod 3)`.
pub fn ga2_formula(h: &HeapPosition) -> Result<Nimber, SolveError> {
    if h.is_empty() {
        return Err(SolveError::EmptyPosition);
    }
    let t = (3 - (h.len() as u64 % 3)) % 3;
    Ok(Nimber(((t + h.total()) % 3) as u32))
}

// ---------------------------------------------------------------------------
// Sequences and periodicity
// ---------------------------------------------------------------------------

/// A one-parameter family of positions to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceFamily {
    /// A single heap of size `n` (single-string, segment-flip, octal 0.77).
    SingleHeap,
    /// The paired strings `1^n / 0^n` — the extreme all-ones/all-zeros pair.
    ExtremeCm,
}

impl SequenceFamily {
    pub fn name(&self) -> &'static str {
        match self {
            SequenceFamily::SingleHeap => "single-heap",
            SequenceFamily::ExtremeCm => "extreme-cm",
        }
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceFamily {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "single-heap" => Ok(SequenceFamily::SingleHeap),
            "extreme-cm" => Ok(SequenceFamily::ExtremeCm),
            _ => Err(GameError::InvalidLiteral {
                text: s.to_string(),
                reason: "expected one of single-heap, extreme-cm".to_string(),
            }),
        }
    }
}

impl Solver {
    /// Tabulates Grundy values for `n = 1..=max_n` along a family.
    pub fn sequence(
        &self,
        ruleset: Ruleset,
        family: SequenceFamily,
        max_n: u32,
    ) -> Result<Vec<Nimber>, SolveError> {
        match (ruleset, family) {
            (Ruleset::Ga1 | Ruleset::Ga2 | Ruleset::Kayles, SequenceFamily::SingleHeap) => (1
                ..=max_n)
                .map(|n| {
                    self.grundy(&Position::Heaps(HeapPosition::new([n]).unwrap()), ruleset)
                })
                .collect(),
            (Ruleset::Cm, SequenceFamily::ExtremeCm) => (1..=max_n)
                .map(|n| {
                    let pair = format!("{}/{}", "1".repeat(n as usize), "0".repeat(n as usize));
                    self.grundy(&Position::parse(&pair, Ruleset::Cm)?, Ruleset::Cm)
                })
                .collect(),
            _ => Err(SolveError::UnsupportedFamily { ruleset, family }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodReport {
    /// Values before this index may be irregular.
    pub preperiod: usize,
    pub period: usize,
    /// How many values the claim was checked against (the input length).
    pub verified_through: usize,
}

/// Finds the smallest eventual period in `values`, preferring the smallest
/// period and then the smallest preperiod. A candidate needs at least two
/// full periods of evidence after the preperiod (`preperiod + 2·period ≤
/// len`), otherwise `None`.
pub fn detect_period(values: &[Nimber]) -> Option<PeriodReport> {
    let len = values.len();
    for period in 1..=len / 2 {
        let mut preperiod = 0;
        for i in (0..len - period).rev() {
            if values[i] != values[i + period] {
                preperiod = i + 1;
                break;
            }
        }
        if preperiod + 2 * period <= len {
            return Some(PeriodReport { preperiod, period, verified_through: len });
        }
    }
    None
}
