use topo_greens::{boundary_unitary_field, default_depth, exp_map_field, BoundaryOptions, BoundaryUnitaryField, GreenRoute};
use topo_invariants::{boundary_invariant, bulk_invariant, fermi_projection_field, InvariantResult};
use topo_model::MomentumGrid;
use topo_numerics::C64;
use topo_scattering::{ReflectionRoute, ReflectionSolver};

use crate::args::{Common, SweepKind, VerifyKind};
use crate::config::{describe_flags, join, load_insulator, load_system, Setup, DEFAULT_EXP_STRIP};
use crate::csv::{num, CsvTable};
use crate::error::{CliError, EXIT_CONVERGENCE, EXIT_OK};
use crate::properties::run_properties;
use crate::report::{push_assertions, Assertion, ASSERTION_HEADER};

/// A finished report and the exit code it implies.
pub struct Outcome {
    pub table: CsvTable,
    pub exit_code: i32,
}

fn z_of(c: &Common, s: &Setup) -> C64 {
    C64::new(c.mu, s.delta)
}

fn bulk(s: &Setup, mu: f64, grid: &MomentumGrid) -> Result<InvariantResult, CliError> {
    let p = fermi_projection_field(&s.model, mu, grid)?;
    Ok(bulk_invariant(&p)?)
}

fn v_field(c: &Common, s: &Setup, opts: &BoundaryOptions, delta: f64) -> Result<BoundaryUnitaryField, CliError> {
    Ok(boundary_unitary_field(&s.model, &s.boundary_grid, C64::new(c.mu, delta), opts)?)
}

fn boundary(c: &Common, v: &BoundaryUnitaryField) -> Result<InvariantResult, CliError> {
    Ok(boundary_invariant(v, c.order)?)
}

fn assertion_outcome(mut table: CsvTable, rows: Vec<Assertion>) -> Outcome {
    let ok = rows.iter().all(|a| a.pass);
    table.meta("result", if ok { "pass" } else { "fail" });
    push_assertions(&mut table, &rows);
    Outcome { table, exit_code: if ok { EXIT_OK } else { EXIT_CONVERGENCE } }
}

pub fn chern_bulk(c: &Common) -> Result<Outcome, CliError> {
    let (model, _) = load_insulator(c)?;
    let s = Setup::new(model, c)?;
    let r = bulk(&s, c.mu, &s.bulk_grid)?;
    let mut table = CsvTable::new(&["grid", "value", "rounded", "distance_to_integer", "tolerance", "method", "converged"]);
    describe_flags(&mut table, "chern-bulk", c);
    s.describe(&mut table);
    table.push(vec![
        join(&r.grid),
        num(r.value),
        r.rounded.to_string(),
        num(r.distance_to_integer),
        num(r.tolerance),
        r.method.to_string(),
        r.converged().to_string(),
    ]);
    Ok(Outcome { table, exit_code: if r.converged() { EXIT_OK } else { EXIT_CONVERGENCE } })
}

pub fn verify(which: VerifyKind, c: &Common) -> Result<Outcome, CliError> {
    let mut table = CsvTable::new(&ASSERTION_HEADER);
    let name = format!("verify {}", verify_name(which));
    describe_flags(&mut table, &name, c);
    let rows = match which {
        VerifyKind::Properties => run_properties(c.seed, c.samples)?,
        VerifyKind::Theorem1 => {
            let (model, _) = load_insulator(c)?;
            let s = Setup::new(model, c)?;
            s.describe(&mut table);
            let b = bulk(&s, c.mu, &s.bulk_grid)?;
            let v = boundary(c, &v_field(c, &s, &s.boundary, s.delta)?)?;
            vec![
                Assertion::integer("bulk_chern", &b),
                Assertion::integer("winding_V", &v),
                Assertion::equal("bulk_equals_minus_winding_V", b.rounded, -v.rounded),
            ]
        }
        VerifyKind::Theorem2 => {
            let sys = load_system(c)?;
            let s = Setup::new(sys.insulator().clone(), c)?;
            s.describe(&mut table);
            let b = bulk(&s, c.mu, &s.bulk_grid)?;
            let v = boundary(c, &v_field(c, &s, &s.boundary, s.delta)?)?;
            let solver = ReflectionSolver::new(&sys, z_of(c, &s), s.boundary.route)?;
            let r = boundary(c, &solver.field(&s.boundary_grid, ReflectionRoute::Matching)?)?;
            vec![
                Assertion::integer("bulk_chern", &b),
                Assertion::integer("winding_V", &v),
                Assertion::integer("winding_R", &r),
                Assertion::equal("winding_R_equals_winding_V", r.rounded, v.rounded),
                Assertion::equal("bulk_equals_minus_winding_R", b.rounded, -r.rounded),
            ]
        }
        VerifyKind::Bbc => {
            let (model, _) = load_insulator(c)?;
            let strip = c.depth.unwrap_or(DEFAULT_EXP_STRIP);
            let base = Common { depth: None, ..c.clone() };
            let s = Setup::new(model, &base)?;
            s.describe(&mut table);
            let gap = s.exp_gap(c);
            table.meta("exp_gap", format!("{},{}", gap.0, gap.1));
            table.meta("exp_strip", strip);
            let b = bulk(&s, c.mu, &s.bulk_grid)?;
            let u = boundary(c, &exp_map_field(&s.model, &s.boundary_grid, strip, gap, c.mu)?)?;
            let v = boundary(c, &v_field(c, &s, &s.boundary, s.delta)?)?;
            vec![
                Assertion::integer("bulk_chern", &b),
                Assertion::integer("winding_U", &u),
                Assertion::integer("winding_V", &v),
                Assertion::equal("bulk_equals_winding_U", b.rounded, u.rounded),
                Assertion::equal("winding_U_equals_minus_winding_V", u.rounded, -v.rounded),
            ]
        }
    };
    Ok(assertion_outcome(table, rows))
}

fn verify_name(which: VerifyKind) -> &'static str {
    match which {
        VerifyKind::Bbc => "bbc",
        VerifyKind::Theorem1 => "theorem1",
        VerifyKind::Theorem2 => "theorem2",
        VerifyKind::Properties => "properties",
    }
}

fn sweep_name(vary: SweepKind) -> &'static str {
    match vary {
        SweepKind::Delta => "delta",
        SweepKind::Epsilon => "epsilon",
        SweepKind::Grid => "grid",
        SweepKind::StripN => "strip_N",
    }
}

fn as_count(v: f64, min: usize, what: &str) -> Result<usize, CliError> {
    if v.fract() == 0.0 && v >= min as f64 && v < 1e6 {
        Ok(v as usize)
    } else {
        Err(CliError::Usage(format!("{what} values must be integers >= {min}, got {v}")))
    }
}

fn check_values(vary: SweepKind, values: &[f64]) -> Result<(), CliError> {
    for &v in values {
        match vary {
            SweepKind::Delta | SweepKind::Epsilon if !(v > 0.0 && v.is_finite()) => {
                return Err(CliError::Usage(format!("{} values must be positive, got {v}", sweep_name(vary))));
            }
            SweepKind::Grid => {
                as_count(v, 2, "grid")?;
            }
            SweepKind::StripN => {
                as_count(v, 1, "strip_N")?;
            }
            _ => {}
        }
    }
    Ok(())
}

pub const SWEEP_HEADER: [&str; 9] = [
    "parameter",
    "value",
    "invariant",
    "rounded",
    "distance_to_integer",
    "tolerance",
    "converged",
    "min_singular_value",
    "status",
];

pub fn sweep(vary: SweepKind, values: &[f64], c: &Common) -> Result<Outcome, CliError> {
    check_values(vary, values)?;
    let (model, _) = load_insulator(c)?;
    let s = Setup::new(model, c)?;
    let mut table = CsvTable::new(&SWEEP_HEADER);
    describe_flags(&mut table, &format!("sweep {}", sweep_name(vary)), c);
    s.describe(&mut table);
    table.meta("values", values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
    let width = s.spectral_gap.1 - s.spectral_gap.0;
    let mut any_converged = false;
    for &value in values {
        let result: Result<(InvariantResult, f64), CliError> = (|| match vary {
            SweepKind::Grid => {
                let n = as_count(value, 2, "grid")?;
                let grid = MomentumGrid::uniform(s.model.dimension(), n)?;
                Ok((bulk(&s, c.mu, &grid)?, f64::NAN))
            }
            _ => {
                let mut opts = s.boundary;
                let mut delta = s.delta;
                match vary {
                    SweepKind::Delta => delta = value,
                    SweepKind::Epsilon => opts.epsilon = value,
                    _ => {
                        opts.strip = as_count(value, 1, "strip_N")?;
                        if opts.strip > 1 && opts.route == GreenRoute::TransferSubspace {
                            opts.route = GreenRoute::TruncatedResolvent { depth: default_depth(width) };
                        }
                    }
                }
                let v = v_field(c, &s, &opts, delta)?;
                let smin = v.min_singular_value()?;
                Ok((boundary(c, &v)?, smin))
            }
        })();
        let row = match result {
            Ok((r, smin)) => {
                any_converged |= r.converged();
                vec![
                    sweep_name(vary).to_string(),
                    num(value),
                    num(r.value),
                    r.rounded.to_string(),
                    num(r.distance_to_integer),
                    num(r.tolerance),
                    r.converged().to_string(),
                    num(smin),
                    "ok".into(),
                ]
            }
            Err(e) => {
                let nan = num(f64::NAN);
                vec![
                    sweep_name(vary).to_string(),
                    num(value),
                    nan.clone(),
                    nan.clone(),
                    nan.clone(),
                    nan.clone(),
                    "false".into(),
                    nan,
                    e.to_string(),
                ]
            }
        };
        table.push(row);
    }
    Ok(Outcome { table, exit_code: if any_converged { EXIT_OK } else { EXIT_CONVERGENCE } })
}
