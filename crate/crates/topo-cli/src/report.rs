use topo_invariants::InvariantResult;

use crate::csv::{num, CsvTable};

/// One checked statement of a verification report.
#[derive(Clone, Debug, PartialEq)]
pub struct Assertion {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Assertion {
    /// `residual ≤ tolerance`.
    pub fn bound(name: &str, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), measured: residual, expected: 0.0, residual, tolerance, pass: residual <= tolerance }
    }

    /// The value is within its tolerance of the nearest integer.
    pub fn integer(name: &str, r: &InvariantResult) -> Self {
        Self {
            name: name.into(),
            measured: r.value,
            expected: r.rounded as f64,
            residual: r.distance_to_integer,
            tolerance: r.tolerance,
            pass: r.converged(),
        }
    }

    /// Exact equality of two integers.
    pub fn equal(name: &str, measured: i64, expected: i64) -> Self {
        Self {
            name: name.into(),
            measured: measured as f64,
            expected: expected as f64,
            residual: (measured - expected).abs() as f64,
            tolerance: 0.0,
            pass: measured == expected,
        }
    }
}

pub const ASSERTION_HEADER: [&str; 6] = ["assertion", "measured", "expected", "residual", "tolerance", "pass"];

pub fn push_assertions(table: &mut CsvTable, rows: &[Assertion]) {
    for a in rows {
        table.push(vec![
            a.name.clone(),
            num(a.measured),
            num(a.expected),
            num(a.residual),
            num(a.tolerance),
            a.pass.to_string(),
        ]);
    }
}
