use std::path::Path;

use topo_greens::{default_delta, default_depth, BoundaryOptions, GreenRoute};
use topo_invariants::GAP_TOL;
use topo_model::{bulk_gap, corpus, load_model, BlockJacobiModel, ModelFile, MomentumGrid, ScatteringSystem, WireModel};

use crate::args::Common;
use crate::csv::CsvTable;
use crate::error::CliError;

/// Default exp-map strip width.
pub const DEFAULT_EXP_STRIP: usize = 30;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Rejects out-of-range parameters before any model is read.
pub fn validate(c: &Common) -> Result<(), CliError> {
    if !c.mu.is_finite() {
        return Err(usage("--mu must be finite"));
    }
    if let Some(d) = c.delta {
        if !(d > 0.0 && d.is_finite()) {
            return Err(usage(format!("--delta must be positive, got {d}")));
        }
    }
    if !(c.epsilon > 0.0 && c.epsilon.is_finite()) {
        return Err(usage(format!("--epsilon must be positive, got {}", c.epsilon)));
    }
    if c.strip == 0 {
        return Err(usage("--strip must be at least 1"));
    }
    if c.depth == Some(0) {
        return Err(usage("--depth must be at least 1"));
    }
    for (name, g) in [("--grid", &c.grid), ("--boundary-grid", &c.boundary_grid)] {
        if let Some(g) = g {
            if g.is_empty() || g.iter().any(|&n| n < 2) {
                return Err(usage(format!("{name} sizes must be at least 2")));
            }
        }
    }
    if let Some(g) = &c.gap {
        if g.len() != 2 || !(g[0] < g[1]) {
            return Err(usage("--gap needs LO,HI with LO < HI"));
        }
    }
    if !matches!(c.order, 2 | 4 | 6) {
        return Err(usage(format!("--order must be 2, 4 or 6, got {}", c.order)));
    }
    if c.jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    if c.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    Ok(())
}

fn read(path: &Path) -> Result<ModelFile, CliError> {
    Ok(load_model(path)?)
}

/// The insulator of `--model` and, when the file describes one, the
/// scattering system.
pub fn load_insulator(c: &Common) -> Result<(BlockJacobiModel, Option<ScatteringSystem>), CliError> {
    let path = c.model.as_deref().ok_or_else(|| usage("--model is required"))?;
    match read(path)? {
        ModelFile::Insulator(m) => Ok((m, None)),
        ModelFile::Scattering(s) => Ok((s.insulator().clone(), Some(s))),
        ModelFile::Wire(_) => Err(usage(format!("{} describes a wire, not an insulator", path.display()))),
    }
}

/// Scattering system from `--model`, `--wire`, or the insulator with the
/// default lead of matching fiber dimension.
pub fn load_system(c: &Common) -> Result<ScatteringSystem, CliError> {
    let (insulator, sys) = load_insulator(c)?;
    if let Some(path) = &c.wire {
        let wire: WireModel = match read(path)? {
            ModelFile::Wire(w) => w,
            _ => return Err(usage(format!("{} is not a wire file", path.display()))),
        };
        return Ok(ScatteringSystem::new(wire, insulator)?);
    }
    match sys {
        Some(s) => Ok(s),
        None => Ok(ScatteringSystem::new(corpus::default_wire(insulator.fiber_dim()), insulator)?),
    }
}

fn expand(points: &[usize], ndim: usize, flag: &str) -> Result<Vec<usize>, CliError> {
    match points.len() {
        1 => Ok(vec![points[0]; ndim]),
        n if n == ndim => Ok(points.to_vec()),
        n => Err(usage(format!("{flag} has {n} entries, expected 1 or {ndim}"))),
    }
}

fn default_bulk_points(d: usize) -> usize {
    match d {
        2 => 32,
        4 => 12,
        _ => 16,
    }
}

fn default_boundary_points(d: usize) -> usize {
    match d {
        1 => 64,
        _ => 16,
    }
}

/// Everything derived from the model and the flags.
#[derive(Clone, Debug)]
pub struct Setup {
    pub model: BlockJacobiModel,
    pub bulk_grid: MomentumGrid,
    pub boundary_grid: MomentumGrid,
    /// Spectral edges below and above `mu` on the bulk grid.
    pub spectral_gap: (f64, f64),
    pub delta: f64,
    pub boundary: BoundaryOptions,
}

impl Setup {
    pub fn new(model: BlockJacobiModel, c: &Common) -> Result<Self, CliError> {
        let d = model.dimension();
        let bulk_points = match &c.grid {
            Some(g) => expand(g, d, "--grid")?,
            None => vec![default_bulk_points(d); d],
        };
        let bulk_grid = MomentumGrid::new(bulk_points)?;
        let boundary_grid = if d > 1 {
            let pts = match &c.boundary_grid {
                Some(g) => expand(g, d - 1, "--boundary-grid")?,
                None => vec![default_boundary_points(d - 1); d - 1],
            };
            MomentumGrid::new(pts)?.with_offset(0.5)
        } else {
            MomentumGrid::new(vec![])?
        };
        let spectral_gap = bulk_gap(&model, c.mu, &bulk_grid, GAP_TOL)?;
        let width = spectral_gap.1 - spectral_gap.0;
        let delta = c.delta.unwrap_or_else(|| default_delta(width.min(1e3)));
        let route = match c.depth {
            Some(depth) => GreenRoute::TruncatedResolvent { depth },
            None if c.strip > 1 => GreenRoute::TruncatedResolvent { depth: default_depth(width) },
            None => GreenRoute::TransferSubspace,
        };
        let boundary = BoundaryOptions { route, strip: c.strip, epsilon: c.epsilon };
        Ok(Self { model, bulk_grid, boundary_grid, spectral_gap, delta, boundary })
    }

    pub fn boundary_dim(&self) -> usize {
        self.model.boundary_dim()
    }

    /// `--gap`, or the inner 90% of the spectral gap around `mu`.
    pub fn exp_gap(&self, c: &Common) -> (f64, f64) {
        match &c.gap {
            Some(g) => (g[0], g[1]),
            None => {
                let (lo, hi) = self.spectral_gap;
                let lo = if lo.is_finite() { lo } else { c.mu - 1.0 };
                let hi = if hi.is_finite() { hi } else { c.mu + 1.0 };
                let w = hi - lo;
                (lo + 0.05 * w, hi - 0.05 * w)
            }
        }
    }

    pub fn describe(&self, table: &mut CsvTable) {
        table.meta("dimension", self.model.dimension());
        table.meta("fiber_dim", self.model.fiber_dim());
        table.meta("bulk_grid", join(self.bulk_grid.dims()));
        table.meta("boundary_grid", join(self.boundary_grid.dims()));
        table.meta("spectral_gap", format!("{},{}", self.spectral_gap.0, self.spectral_gap.1));
        table.meta("delta_used", self.delta);
        table.meta("green_route", route_name(self.boundary.route));
    }
}

pub fn route_name(r: GreenRoute) -> String {
    match r {
        GreenRoute::TruncatedResolvent { depth } => format!("truncated(depth={depth})"),
        GreenRoute::TransferSubspace => "transfer".into(),
    }
}

pub fn join(v: &[usize]) -> String {
    v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("x")
}

/// Records every flag as metadata.
pub fn describe_flags(table: &mut CsvTable, command: &str, c: &Common) {
    table.meta("topo", env!("CARGO_PKG_VERSION"));
    table.meta("command", command);
    let path = |p: &Option<std::path::PathBuf>| p.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "-".into());
    table.meta("model", path(&c.model));
    table.meta("wire", path(&c.wire));
    table.meta("mu", c.mu);
    table.meta("delta", c.delta.map(|d| d.to_string()).unwrap_or_else(|| "default".into()));
    let list = |g: &Option<Vec<usize>>| g.as_ref().map(|g| join(g)).unwrap_or_else(|| "default".into());
    table.meta("grid", list(&c.grid));
    table.meta("boundary_grid_flag", list(&c.boundary_grid));
    table.meta("depth", c.depth.map(|d| d.to_string()).unwrap_or_else(|| "default".into()));
    table.meta("strip", c.strip);
    table.meta("epsilon", c.epsilon);
    table.meta(
        "gap",
        c.gap.as_ref().map(|g| format!("{},{}", g[0], g[1])).unwrap_or_else(|| "default".into()),
    );
    table.meta("order", c.order);
    table.meta("seed", c.seed);
    table.meta("samples", c.samples);
}
