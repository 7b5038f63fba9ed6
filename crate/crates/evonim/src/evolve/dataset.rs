//! Training data: exhaustive heap tables labeled with exact Grundy values.
//!
//! A dataset row pairs an input vector with the solver's value for that
//! position, so a formula with fitness 0 under the absolute-difference
//! metric is *provably* exact on the tabulated range — either a function
//! determines every value or it is wrong.

use crate::formula::Vars;
use crate::games::{HeapPosition, Position, Ruleset};
use crate::solver::{Nimber, Solver};

use super::EvolveError;

/// How a generated dataset was produced. Lost on CSV round trips.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DatasetProvenance {
    pub ruleset: Ruleset,
    pub heaps: usize,
    pub max_size: u32,
    pub count_primed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    vars: Vars,
    rows: Vec<(Vec<i64>, Nimber)>,
    provenance: Option<DatasetProvenance>,
}

impl Dataset {
    pub fn new(vars: Vars, rows: Vec<(Vec<i64>, Nimber)>) -> Result<Dataset, EvolveError> {
        for (i, (row, _)) in rows.iter().enumerate() {
            if row.len() != vars.width() {
                return Err(EvolveError::RowWidth {
                    row: i,
                    expected: vars.width(),
                    found: row.len(),
                });
            }
        }
        Ok(Dataset { vars, rows, provenance: None })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn rows(&self) -> &[(Vec<i64>, Nimber)] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn provenance(&self) -> Option<&DatasetProvenance> {
        self.provenance.as_ref()
    }

    /// Serializes as CSV with header `h,g`, `h1,..,hk,g`, or
    /// `nh,h1,..,hk,g` and one integer row per position.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.vars.names().join(","));
        out.push_str(",g\n");
        for (row, g) in &self.rows {
            for value in row {
                out.push_str(&value.to_string());
                out.push(',');
            }
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_csv_str(text: &str) -> Result<Dataset, EvolveError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or_else(|| EvolveError::CsvFormat {
            line: 1,
            message: "empty document".to_string(),
        })?;
        let mut columns: Vec<&str> = header.split(',').map(str::trim).collect();
        if columns.pop() != Some("g") {
            return Err(EvolveError::CsvFormat {
                line: 1,
                message: "last header column must be \"g\"".to_string(),
            });
        }
        let vars = Vars::from_names(columns)
            .map_err(|message| EvolveError::CsvFormat { line: 1, message })?;

        let mut rows = Vec::new();
        for (line, text) in lines {
            let fields: Vec<&str> = text.split(',').map(str::trim).collect();
            if fields.len() != vars.width() + 1 {
                return Err(EvolveError::CsvFormat {
                    line,
                    message: format!(
                        "expected {} fields, found {}",
                        vars.width() + 1,
                        fields.len()
                    ),
                });
            }
            let mut row = Vec::with_capacity(vars.width());
            for field in &fields[..vars.width()] {
                row.push(field.parse::<i64>().map_err(|_| EvolveError::CsvFormat {
                    line,
                    message: format!("invalid integer {field:?}"),
                })?);
            }
            let target = fields[vars.width()].parse::<u32>().map_err(|_| {
                EvolveError::CsvFormat {
                    line,
                    message: format!("invalid Grundy value {:?}", fields[vars.width()]),
                }
            })?;
            rows.push((row, Nimber(target)));
        }
        Ok(Dataset { vars, rows, provenance: None })
    }
}

/// Tabulates every multiset of exactly `heaps` heaps with sizes up to
/// `max_size` (single-string positions start at size 2 — size-1 heaps are
/// inert there), labeled by the solver. Rows are ascending tuples
/// `h1 ≤ h2 ≤ …` in lexicographic order; `count_primed` prepends the heap
/// count as input `nh`.
pub fn generate_dataset(
    solver: &Solver,
    ruleset: Ruleset,
    heaps: usize,
    max_size: u32,
    count_primed: bool,
) -> Result<Dataset, EvolveError> {
    let min_size: u32 = match ruleset {
        Ruleset::Ga1 => 2,
        Ruleset::Ga2 | Ruleset::Kayles => 1,
        Ruleset::Cm | Ruleset::ArcKayles => {
            return Err(EvolveError::NoHeapRepresentation { ruleset })
        }
    };
    if heaps == 0 {
        return Err(EvolveError::InvalidConfig("at least one heap is required".to_string()));
    }
    let vars = if count_primed {
        Vars::count_primed(heaps)
    } else if heaps == 1 {
        Vars::single()
    } else {
        Vars::heaps(heaps)
    };

    let mut rows = Vec::new();
    if min_size <= max_size {
        let mut tuple = vec![min_size; heaps];
        loop {
            let position = HeapPosition::new(tuple.iter().copied()).unwrap();
            let g = solver.grundy(&Position::Heaps(position), ruleset)?;
            let mut row = Vec::with_capacity(vars.width());
            if count_primed {
                row.push(heaps as i64);
            }
            row.extend(tuple.iter().map(|&h| h as i64));
            rows.push((row, g));
            if !next_ascending_tuple(&mut tuple, max_size) {
                break;
            }
        }
    }
    Ok(Dataset {
        vars,
        rows,
        provenance: Some(DatasetProvenance { ruleset, heaps, max_size, count_primed }),
    })
}

/// Advances a non-decreasing tuple to its lexicographic successor with
/// entries bounded by `max`; false when exhausted.
pub(crate) fn next_ascending_tuple(tuple: &mut [u32], max: u32) -> bool {
    for i in (0..tuple.len()).rev() {
        if tuple[i] < max {
            let bumped = tuple[i] + 1;
            for slot in &mut tuple[i..] {
                *slot = bumped;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain_rows(d: &Dataset) -> Vec<(Vec<i64>, u32)> {
        d.rows().iter().map(|(row, g)| (row.clone(), g.0)).collect()
    }

    #[test]
    fn single_heap_tables_match_known_values() {
        let solver = Solver::new();
        let d = generate_dataset(&solver, Ruleset::Ga2, 1, 3, false).unwrap();
        assert_eq!(d.vars().names(), ["h"]);
        assert_eq!(plain_rows(&d), [(vec![1], 0), (vec![2], 1), (vec![3], 2)]);

        let d = generate_dataset(&solver, Ruleset::Ga1, 1, 4, false).unwrap();
        assert_eq!(plain_rows(&d), [(vec![2], 1), (vec![3], 2), (vec![4], 3)]);
    }

    #[test]
    fn multi_heap_tables_enumerate_ascending_multisets() {
        let solver = Solver::new();
        let d = generate_dataset(&solver, Ruleset::Ga2, 2, 2, false).unwrap();
        assert_eq!(d.vars().names(), ["h1", "h2"]);
        assert_eq!(
            plain_rows(&d),
            [(vec![1, 1], 0), (vec![1, 2], 1), (vec![2, 2], 2)]
        );
    }

    #[test]
    fn count_primed_prepends_the_heap_count() {
        let solver = Solver::new();
        let d = generate_dataset(&solver, Ruleset::Ga2, 2, 2, true).unwrap();
        assert_eq!(d.vars().names(), ["nh", "h1", "h2"]);
        assert_eq!(
            plain_rows(&d),
            [(vec![2, 1, 1], 0), (vec![2, 1, 2], 1), (vec![2, 2, 2], 2)]
        );
        let tag = d.provenance().unwrap();
        assert!(tag.count_primed && tag.heaps == 2);
    }

    #[test]
    fn rulesets_without_heaps_are_rejected() {
        let solver = Solver::new();
        assert!(matches!(
            generate_dataset(&solver, Ruleset::Cm, 2, 4, false),
            Err(EvolveError::NoHeapRepresentation { ruleset: Ruleset::Cm })
        ));
    }

    #[test]
    fn csv_round_trips_without_provenance() {
        let solver = Solver::new();
        let d = generate_dataset(&solver, Ruleset::Kayles, 2, 4, true).unwrap();
        let csv = d.to_csv_string();
        assert!(csv.starts_with("nh,h1,h2,g\n"));
        let back = Dataset::from_csv_str(&csv).unwrap();
        assert_eq!(back.vars(), d.vars());
        assert_eq!(back.rows(), d.rows());
        assert_eq!(back.provenance(), None);
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let no_target = Dataset::from_csv_str("h1,h2\n1,2\n");
        assert!(matches!(no_target, Err(EvolveError::CsvFormat { line: 1, .. })));

        let short_row = Dataset::from_csv_str("h1,h2,g\n1,2,0\n3,1\n");
        assert!(matches!(short_row, Err(EvolveError::CsvFormat { line: 3, .. })));

        let bad_int = Dataset::from_csv_str("h,g\nten,1\n");
        assert!(matches!(bad_int, Err(EvolveError::CsvFormat { line: 2, .. })));

        let bad_target = Dataset::from_csv_str("h,g\n4,-1\n");
        assert!(matches!(bad_target, Err(EvolveError::CsvFormat { line: 2, .. })));
    }

    #[test]
    fn row_widths_are_validated() {
        let err = Dataset::new(Vars::heaps(2), vec![(vec![1], Nimber(0))]);
        assert!(matches!(
            err,
            Err(EvolveError::RowWidth { row: 0, expected: 2, found: 1 })
        ));
    }
}
