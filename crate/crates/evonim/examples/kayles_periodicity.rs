//! Tabulate the octal-0.77 value sequence and find its eventual period.
//! The sequence settles into period 12, with finitely many exceptional
//! values before the pattern locks in.

use evonim::solver::{detect_period, kayles_reference_sequence};

fn main() {
    let max = 400;
    let values = kayles_reference_sequence(max);

    println!("first 36 values (n = 0..36):");
    for chunk in values[..36].chunks(12) {
        let row: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
        println!("  {}", row.join(" "));
    }

    let report = detect_period(&values).expect("sequence is eventually periodic");
    println!(
        "\nperiod {} from n = {} on, verified through n = {}",
        report.period, report.preperiod, report.verified_through
    );

    let tail: Vec<String> =
        values[report.preperiod..report.preperiod + report.period].iter().map(|v| v.to_string()).collect();
    println!("repeating block: {}", tail.join(" "));
}
