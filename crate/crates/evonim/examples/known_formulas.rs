//! Score the formulas this project ships against the exact value tables
//! they describe. Three fit perfectly; the single-flip approximation is
//! kept for contrast and misses on most rows.

use evonim::evolve::{fitness, generate_dataset, FitnessMetric};
use evonim::formula::parse;
use evonim::games::Ruleset;
use evonim::solver::Solver;
use evonim::verify::{
    KNOWN_FORMULA_GA1_APPROX, KNOWN_FORMULA_GA2_ONE_HEAP, KNOWN_FORMULA_GA2_THREE_HEAP,
    KNOWN_FORMULA_GA2_TWO_HEAP,
};

fn main() {
    let solver = Solver::new();
    let table = [
        ("two-flip, one heap", KNOWN_FORMULA_GA2_ONE_HEAP, Ruleset::Ga2, 1, false),
        ("two-flip, two heaps", KNOWN_FORMULA_GA2_TWO_HEAP, Ruleset::Ga2, 2, false),
        ("two-flip, three heaps", KNOWN_FORMULA_GA2_THREE_HEAP, Ruleset::Ga2, 3, true),
        ("single-flip, one heap", KNOWN_FORMULA_GA1_APPROX, Ruleset::Ga1, 1, false),
    ];

    for (label, text, ruleset, heaps, count_primed) in table {
        let data = generate_dataset(&solver, ruleset, heaps, 10, count_primed).unwrap();
        let expr = parse(text, data.vars()).unwrap();
        let miss = fitness(&expr, &data, FitnessMetric::AbsDiff, 0, 1_000_000).unwrap();
        let verdict = if miss == 0 { "exact" } else { "approximate" };
        println!("{label} ({} rows): total error {miss} — {verdict}", data.len());
        println!("  {text}");
    }
}
