//! Genetic programming over Grundy-value datasets.
//!
//! The engine is a plain generational scheme: ramped half-and-half
//! initialization, tournament selection, subtree crossover plus three
//! mutation flavors, elitism, and early exit the moment a formula fits the
//! dataset exactly. Fitness evaluation is the only parallel part — it is
//! pure, so the run is a deterministic function of (config, dataset)
//! regardless of thread count: every stochastic draw comes from one
//! sequential stream owned by the generational loop.

mod dataset;
mod ops;

pub use dataset::{generate_dataset, Dataset, DatasetProvenance};
pub(crate) use dataset::next_ascending_tuple;
pub use ops::{crossover, fitness, mutate, select, MutationKind};

use crate::formula::{print, random_tree, Expr, TreeMethod};
use crate::games::Ruleset;
use crate::solver::SolveError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::time::Instant;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvolveError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{ruleset} positions have no heap representation to tabulate")]
    NoHeapRepresentation { ruleset: Ruleset },
    #[error("row {row} has {found} inputs, expected {expected}")]
    RowWidth { row: usize, expected: usize, found: usize },
    #[error("expression uses input {index} but the dataset width is {width}")]
    ExprWidth { index: usize, width: usize },
    #[error("fitness metric {0} is reserved but not implemented")]
    UnimplementedMetric(FitnessMetric),
    #[error("malformed dataset CSV at line {line}: {message}")]
    CsvFormat { line: usize, message: String },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FitnessMetric {
    /// Sum of |program output − Grundy value| over the rows.
    AbsDiff,
    /// Sum of (output clamped to 0) XOR Grundy value — nim-distance.
    NimDist,
    /// Reserved: score candidates by mex-consistency with their options.
    /// Named so configs can mention it; selecting it is an error.
    MexConsistency,
}

impl FitnessMetric {
    pub fn name(&self) -> &'static str {
        match self {
            FitnessMetric::AbsDiff => "ABS_DIFF",
            FitnessMetric::NimDist => "NIM_DIST",
            FitnessMetric::MexConsistency => "MEX_CONSISTENCY",
        }
    }
}

impl fmt::Display for FitnessMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Engine parameters. Every field has the documented default, so a config
/// file needs to mention only what it changes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolutionConfig {
    pub population_size: usize,
    /// Breeding cycles after the initial population (generation 0).
    pub generations: usize,
    pub tournament_size: usize,
    /// Individuals copied unchanged into the next generation.
    pub elite_count: usize,
    pub crossover_prob: f64,
    pub subtree_mutation_prob: f64,
    pub point_mutation_prob: f64,
    pub hoist_mutation_prob: f64,
    pub reproduction_prob: f64,
    pub init_depth_min: usize,
    pub init_depth_max: usize,
    pub max_depth: usize,
    pub metric: FitnessMetric,
    pub parsimony_coefficient: u64,
    /// Charged per row whose evaluation overflows.
    pub overflow_penalty: u64,
    pub seed: u64,
}

impl Default for EvolutionConfig {
    fn default() -> EvolutionConfig {
        EvolutionConfig {
            population_size: 1000,
            generations: 20,
            tournament_size: 20,
            elite_count: 10,
            crossover_prob: 0.65,
            subtree_mutation_prob: 0.15,
            point_mutation_prob: 0.10,
            hoist_mutation_prob: 0.05,
            reproduction_prob: 0.05,
            init_depth_min: 2,
            init_depth_max: 6,
            max_depth: 17,
            metric: FitnessMetric::AbsDiff,
            parsimony_coefficient: 0,
            overflow_penalty: 1_000_000,
            seed: 0,
        }
    }
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<(), EvolveError> {
        let bad = |msg: String| Err(EvolveError::InvalidConfig(msg));
        if self.population_size == 0 {
            return bad("population_size must be positive".to_string());
        }
        if self.elite_count > self.population_size {
            return bad(format!(
                "elite_count {} exceeds population_size {}",
                self.elite_count, self.population_size
            ));
        }
        if self.tournament_size == 0 {
            return bad("tournament_size must be positive".to_string());
        }
        let probs = [
            self.crossover_prob,
            self.subtree_mutation_prob,
            self.point_mutation_prob,
            self.hoist_mutation_prob,
            self.reproduction_prob,
        ];
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return bad("operator probabilities must be non-negative".to_string());
        }
        let mass: f64 = probs.iter().sum();
        if (mass - 1.0).abs() > 1e-9 {
            return bad(format!("operator probabilities sum to {mass}, expected 1"));
        }
        if self.init_depth_min < 1
            || self.init_depth_min > self.init_depth_max
            || self.init_depth_max > self.max_depth
        {
            return bad(format!(
                "init depth range ({}, {}) must satisfy 1 <= min <= max <= max_depth {}",
                self.init_depth_min, self.init_depth_max, self.max_depth
            ));
        }
        if self.metric == FitnessMetric::MexConsistency {
            return Err(EvolveError::UnimplementedMetric(self.metric));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub best_fitness: u64,
    pub mean_fitness: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Termination {
    /// A formula reached fitness 0 — an exact fit.
    Exact,
    GenerationLimit,
}

/// Everything a run produced. Identical (config, dataset) pairs yield
/// identical reports except for `wall_time_ms`, which is therefore skipped
/// when absent so reports can be compared byte-for-byte after clearing it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub config: EvolutionConfig,
    pub generations: Vec<GenerationStats>,
    /// Total fitness evaluations performed.
    pub evaluations: u64,
    pub best_formula: String,
    pub best_fitness: u64,
    pub best_size: usize,
    pub termination: Termination,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

// ---------------------------------------------------------------------------
// The generational loop
// ---------------------------------------------------------------------------

/// Runs the evolutionary search. Generation 0 is the freshly initialized
/// population; each later generation keeps the `elite_count` best unchanged
/// and fills the rest with operator applications on tournament winners.
pub fn run(config: &EvolutionConfig, data: &Dataset) -> Result<RunReport, EvolveError> {
    config.validate()?;
    let start = Instant::now();
    let width = data.vars().width();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    // Ramped half-and-half: each program flips a coin between full and grow
    // and draws its own target depth uniformly from the init range. Seeding
    // retries duplicates a few times so the pool starts with wide coverage.
    let init_range = (config.init_depth_min, config.init_depth_max);
    let mut population: Vec<Expr> = Vec::with_capacity(config.population_size);
    while population.len() < config.population_size {
        for attempt in 0..8 {
            let method =
                if rng.gen_range(0..2) == 0 { TreeMethod::Full } else { TreeMethod::Grow };
            let tree = random_tree(width, init_range, method, &mut rng);
            if attempt == 7 || !population.contains(&tree) {
                population.push(tree);
                break;
            }
        }
    }

    let mut stats: Vec<GenerationStats> = Vec::new();
    let mut evaluations: u64 = 0;
    let mut champion: Option<(u64, Expr)> = None;
    let mut termination = Termination::GenerationLimit;

    for generation in 0.. {
        debug_assert!(population.iter().all(|e| e.depth() <= config.max_depth));
        let fitnesses: Vec<u64> = population
            .par_iter()
            .map(|e| {
                fitness(e, data, config.metric, config.parsimony_coefficient, config.overflow_penalty)
            })
            .collect::<Result<_, _>>()?;
        evaluations += population.len() as u64;

        let ranked: Vec<(u64, usize)> =
            fitnesses.iter().zip(&population).map(|(&f, e)| (f, e.size())).collect();
        let mut order: Vec<usize> = (0..population.len()).collect();
        order.sort_by_key(|&i| (ranked[i].0, ranked[i].1, i));
        let best_index = order[0];
        let best_fitness = ranked[best_index].0;
        let sum: u128 = fitnesses.iter().map(|&f| f as u128).sum();
        stats.push(GenerationStats {
            generation,
            best_fitness,
            mean_fitness: sum as f64 / population.len() as f64,
        });

        let improved = champion
            .as_ref()
            .map(|(f, e)| (best_fitness, ranked[best_index].1) < (*f, e.size()))
            .unwrap_or(true);
        if improved {
            champion = Some((best_fitness, population[best_index].clone()));
        }

        if best_fitness == 0 {
            termination = Termination::Exact;
            break;
        }
        if generation == config.generations {
            break;
        }

        let mut next: Vec<Expr> =
            order.iter().take(config.elite_count).map(|&i| population[i].clone()).collect();
        while next.len() < config.population_size {
            let roll: f64 = rng.gen();
            let child = if roll < config.crossover_prob {
                let a = select(&ranked, config.tournament_size, &mut rng);
                let b = select(&ranked, config.tournament_size, &mut rng);
                crossover(&population[a], &population[b], config.max_depth, &mut rng)
            } else if roll < config.crossover_prob + config.subtree_mutation_prob {
                let a = select(&ranked, config.tournament_size, &mut rng);
                mutate(&population[a], MutationKind::Subtree, width, config.max_depth, &mut rng)
            } else if roll
                < config.crossover_prob
                    + config.subtree_mutation_prob
                    + config.point_mutation_prob
            {
                let a = select(&ranked, config.tournament_size, &mut rng);
                mutate(&population[a], MutationKind::Point, width, config.max_depth, &mut rng)
            } else if roll
                < config.crossover_prob
                    + config.subtree_mutation_prob
                    + config.point_mutation_prob
                    + config.hoist_mutation_prob
            {
                let a = select(&ranked, config.tournament_size, &mut rng);
                mutate(&population[a], MutationKind::Hoist, width, config.max_depth, &mut rng)
            } else {
                let a = select(&ranked, config.tournament_size, &mut rng);
                population[a].clone()
            };
            next.push(child);
        }
        population = next;
    }

    let (best_fitness, best) = champion.expect("at least one generation was evaluated");
    Ok(RunReport {
        seed: config.seed,
        config: *config,
        generations: stats,
        evaluations,
        best_formula: print(&best, data.vars()),
        best_fitness,
        best_size: best.size(),
        termination,
        wall_time_ms: Some(start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Vars;
    use crate::solver::{Nimber, Solver};

    fn small(seed: u64) -> EvolutionConfig {
        EvolutionConfig {
            population_size: 120,
            generations: 6,
            elite_count: 4,
            seed,
            ..EvolutionConfig::default()
        }
    }

    #[test]
    fn defaults_are_the_documented_ones() {
        let c = EvolutionConfig::default();
        assert_eq!(c.population_size, 1000);
        assert_eq!(c.generations, 20);
        assert_eq!(c.tournament_size, 20);
        assert_eq!(c.elite_count, 10);
        assert_eq!(c.crossover_prob, 0.65);
        assert_eq!(c.overflow_penalty, 1_000_000);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn validation_rejects_bad_configs() {
        let mut c = EvolutionConfig { crossover_prob: 0.9, ..EvolutionConfig::default() };
        assert!(matches!(c.validate(), Err(EvolveError::InvalidConfig(_))));
        c = EvolutionConfig {
            elite_count: 2000,
            ..EvolutionConfig::default()
        };
        assert!(c.validate().is_err());
        c = EvolutionConfig { init_depth_min: 0, ..EvolutionConfig::default() };
        assert!(c.validate().is_err());
        c = EvolutionConfig { metric: FitnessMetric::MexConsistency, ..EvolutionConfig::default() };
        assert!(matches!(c.validate(), Err(EvolveError::UnimplementedMetric(_))));
    }

    #[test]
    fn config_files_fill_in_defaults_and_reject_strangers() {
        let c: EvolutionConfig = serde_json::from_str(r#"{"seed": 9, "generations": 3}"#).unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.generations, 3);
        assert_eq!(c.population_size, 1000);
        assert!(serde_json::from_str::<EvolutionConfig>(r#"{"tournament": 5}"#).is_err());
        assert!(
            serde_json::from_str::<EvolutionConfig>(r#"{"metric": "NIM_DIST"}"#).is_ok()
        );
    }

    #[test]
    fn a_solvable_single_row_terminates_exact() {
        let data =
            Dataset::new(Vars::single(), vec![(vec![1], Nimber(0))]).unwrap();
        let report = run(&small(0), &data).unwrap();
        assert_eq!(report.termination, Termination::Exact);
        assert_eq!(report.best_fitness, 0);
        assert!(report.generations.len() <= 7);
    }

    #[test]
    fn full_elitism_freezes_the_population() {
        let solver = Solver::new();
        let data = generate_dataset(&solver, Ruleset::Ga1, 1, 10, false).unwrap();
        let config = EvolutionConfig {
            population_size: 30,
            elite_count: 30,
            generations: 4,
            seed: 3,
            ..EvolutionConfig::default()
        };
        let report = run(&config, &data).unwrap();
        let traces: Vec<u64> = report.generations.iter().map(|g| g.best_fitness).collect();
        assert!(traces.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn best_fitness_trace_is_monotone() {
        let solver = Solver::new();
        let data = generate_dataset(&solver, Ruleset::Ga2, 1, 10, false).unwrap();
        let report = run(&small(1), &data).unwrap();
        let traces: Vec<u64> = report.generations.iter().map(|g| g.best_fitness).collect();
        assert!(traces.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(report.best_fitness, *traces.last().unwrap());
    }

    #[test]
    fn identical_runs_report_identically() {
        let solver = Solver::new();
        let data = generate_dataset(&solver, Ruleset::Ga2, 1, 6, false).unwrap();
        let mut one = run(&small(5), &data).unwrap();
        let mut two = run(&small(5), &data).unwrap();
        one.wall_time_ms = None;
        two.wall_time_ms = None;
        assert_eq!(one, two);
        let json = serde_json::to_string(&one).unwrap();
        assert!(!json.contains("wall_time_ms"));
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, one);
    }
}
