//! Translate paired-string positions into edge-deletion graph positions and
//! check that the Grundy value survives the trip. Each legal segment flip in
//! the pair corresponds to deleting one edge together with every edge that
//! shares an endpoint with it.

use evonim::games::{cm_to_arc_kayles, BitPosition, CmPosition, Position, Ruleset};
use evonim::solver::Solver;

fn main() {
    let solver = Solver::new();
    let pairs = [("11/00", 2), ("1100/0011", 4), ("11111/00000", 5)];

    for (literal, len) in pairs {
        let (first, second) = literal.split_once('/').unwrap();
        let a = BitPosition::new(len, u64::from_str_radix(first, 2).unwrap()).unwrap();
        let b = BitPosition::new(len, u64::from_str_radix(second, 2).unwrap()).unwrap();
        let pair = CmPosition::new(a, b).unwrap();

        let graph = cm_to_arc_kayles(&pair);
        println!("pair {literal}");
        println!("  graph edges: {:?}", graph.edges());

        let direct = solver.grundy(&Position::Cm(pair), Ruleset::Cm).unwrap();
        let translated =
            solver.grundy(&Position::Graph(graph), Ruleset::ArcKayles).unwrap();
        println!("  paired-string value {direct}, graph value {translated}");
        assert_eq!(direct, translated);
    }
}
