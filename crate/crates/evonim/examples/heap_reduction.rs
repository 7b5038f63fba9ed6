//! Show the run-length bridge between bit strings and heaps: maximal
//! constant runs become heap sizes, single-flip positions drop their inert
//! size-1 heaps, and multi-heap values split into a nim-sum of parts.

use evonim::games::{BitPosition, Position, Ruleset};
use evonim::solver::{nim_sum, Solver};

fn main() {
    let solver = Solver::new();
    let strings = ["110100", "0000011", "101010", "1111"];

    for text in strings {
        let bits: u64 = u64::from_str_radix(text, 2).unwrap();
        let b = BitPosition::new(text.len() as u8, bits).unwrap();
        let all = b.to_heaps(false);
        let active = b.to_heaps(true);
        println!("string {text}  entropy {}", b.entropy());
        println!("  runs {:?}  after dropping ones {:?}", all.heaps(), active.heaps());

        let whole = solver.grundy(&Position::Bits(b), Ruleset::Ga1).unwrap();
        let parts = nim_sum(active.heaps().iter().map(|&h| {
            let single = evonim::games::HeapPosition::new([h]).unwrap();
            solver.grundy(&Position::Heaps(single), Ruleset::Ga1).unwrap()
        }));
        println!("  single-flip value {whole} = nim-sum of parts {parts}");
        assert_eq!(whole, parts);
    }
}
