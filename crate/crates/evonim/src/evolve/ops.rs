//! Fitness, selection, and variation operators.
//!
//! All randomness comes in through the caller's RNG, one draw stream,
//! so a whole evolutionary run is a pure function of seed + inputs.

use crate::formula::{eval, random_leaf, random_tree, Expr, Primitive, TreeMethod};
use crate::solver::Nimber;
use rand::Rng;

use super::{Dataset, EvolveError, FitnessMetric};

/// Total fitness of `expr` on a dataset — lower is better, 0 under
/// `AbsDiff` with zero parsimony means an exact fit. Rows whose evaluation
/// overflows contribute `overflow_penalty`; the parsimony coefficient adds
/// `coefficient × tree size` once.
pub fn fitness(
    expr: &Expr,
    data: &Dataset,
    metric: FitnessMetric,
    parsimony_coefficient: u64,
    overflow_penalty: u64,
) -> Result<u64, EvolveError> {
    if let Some(index) = expr.max_var() {
        if index >= data.vars().width() {
            return Err(EvolveError::ExprWidth { index, width: data.vars().width() });
        }
    }
    let mut total = parsimony_coefficient.saturating_mul(expr.size() as u64);
    for (row, g) in data.rows() {
        let row_score = match eval(expr, row) {
            Ok(v) => row_distance(v, *g, metric)?,
            Err(_) => overflow_penalty,
        };
        total = total.saturating_add(row_score);
    }
    Ok(total)
}

fn row_distance(value: i64, target: Nimber, metric: FitnessMetric) -> Result<u64, EvolveError> {
    Ok(match metric {
        FitnessMetric::AbsDiff => (value as i128 - target.0 as i128).unsigned_abs() as u64,
        // Nimbers are non-negative, so negative outputs clamp to 0 first.
        FitnessMetric::NimDist => (value.max(0) as u64) ^ target.0 as u64,
        FitnessMetric::MexConsistency => {
            return Err(EvolveError::UnimplementedMetric(metric))
        }
    })
}

/// Tournament selection: `tournament_size` uniform draws with replacement
/// from `ranked` (fitness, tree size) pairs; the winner minimizes raw
/// fitness, with the earliest-drawn contestant keeping ties. Leaving size
/// out of the comparison preserves genetic variety among equally-fit trees.
pub fn select<R: Rng>(ranked: &[(u64, usize)], tournament_size: usize, rng: &mut R) -> usize {
    assert!(!ranked.is_empty(), "selection needs a population");
    assert!(tournament_size >= 1, "tournaments need at least one entrant");
    let mut winner = rng.gen_range(0..ranked.len());
    for _ in 1..tournament_size {
        let challenger = rng.gen_range(0..ranked.len());
        if ranked[challenger].0 < ranked[winner].0 {
            winner = challenger;
        }
    }
    winner
}

/// Uniform node draw: every node of the tree, internal or leaf, is an
/// equally likely variation point, indexed in preorder.
fn draw_node<R: Rng>(expr: &Expr, rng: &mut R) -> usize {
    rng.gen_range(0..expr.size() as u32) as usize
}

/// Subtree crossover: a uniformly-drawn node of `recipient` is replaced by a
/// uniformly-drawn subtree of `donor`. Children deeper than `max_depth` are
/// discarded in favor of an unchanged copy of the recipient.
pub fn crossover<R: Rng>(
    recipient: &Expr,
    donor: &Expr,
    max_depth: usize,
    rng: &mut R,
) -> Expr {
    let target = draw_node(recipient, rng);
    let graft = draw_node(donor, rng);
    let child = recipient.replaced(target, donor.get(graft).expect("index within size"));
    if child.depth() > max_depth {
        recipient.clone()
    } else {
        child
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationKind {
    /// Crossover against a fresh grow-method tree of depth 1–4, splicing
    /// new genetic material into a uniform node of the parent.
    Subtree,
    /// Replace one uniformly-drawn node in place: a primitive becomes
    /// another primitive of the same arity, a leaf a fresh leaf. The tree
    /// shape is preserved exactly.
    Point,
    /// Replace the tree by one of its own uniformly-drawn subtrees,
    /// discarding the surrounding context.
    Hoist,
}

pub fn mutate<R: Rng>(
    parent: &Expr,
    kind: MutationKind,
    width: usize,
    max_depth: usize,
    rng: &mut R,
) -> Expr {
    match kind {
        MutationKind::Subtree => {
            let donor = random_tree(width, (1, 4), TreeMethod::Grow, rng);
            crossover(parent, &donor, max_depth, rng)
        }
        MutationKind::Point => {
            let target = draw_node(parent, rng);
            let node = parent.get(target).expect("index within size");
            let fresh = match node {
                Expr::Prim(current, children) => {
                    let pool: Vec<Primitive> = Primitive::ALL
                        .into_iter()
                        .filter(|p| p.arity() == current.arity() && p != current)
                        .collect();
                    Expr::Prim(pool[rng.gen_range(0..pool.len())], children.clone())
                }
                _ => random_leaf(width, rng),
            };
            parent.replaced(target, &fresh)
        }
        MutationKind::Hoist => {
            let keep = draw_node(parent, rng);
            parent.get(keep).expect("index within size").clone()
        }
    }
}
