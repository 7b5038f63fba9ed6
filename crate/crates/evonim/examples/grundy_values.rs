//! Compute Grundy values for a few positions in every ruleset, and show the
//! P-position / N-position split that the values encode.

use evonim::games::{Position, Ruleset};
use evonim::solver::Solver;

fn main() {
    let solver = Solver::new();
    let samples = [
        (Ruleset::Kayles, "7"),
        (Ruleset::Kayles, "3,4"),
        (Ruleset::Ga1, "110100"),
        (Ruleset::Ga1, "5,5"),
        (Ruleset::Ga2, "0000000"),
        (Ruleset::Ga2, "3,2,1"),
        (Ruleset::Cm, "1100/0011"),
        (Ruleset::ArcKayles, "a-b,b-c,c-d"),
    ];

    println!("{:<12} {:<14} {:>6}  outcome", "ruleset", "position", "value");
    for (ruleset, literal) in samples {
        let position = Position::parse(literal, ruleset).expect("literal parses");
        let value = solver.grundy(&position, ruleset).expect("position solves");
        let outcome = if value.0 == 0 { "previous player wins" } else { "next player wins" };
        println!("{:<12} {:<14} {:>6}  {}", ruleset.name(), literal, value.to_string(), outcome);
    }
}
