//! TOML model files.
//!
//! Three kinds of document are recognised, selected by the optional `kind`
//! key (default `"insulator"`):
//!
//! ```toml
//! kind = "insulator"
//! dimension = 2
//! fiber_dim = 2
//! period_perp = 1
//!
//! [[hoppings]]
//! layer = 1
//! [[hoppings.harmonics]]
//! exponent = [0]
//! real_part = [0.75, 0.0, 0.0, -0.25]
//! imag_part = [0.0, -0.5, -0.5, 0.0]
//!
//! [[onsite]]
//! layer = 1
//! [[onsite.harmonics]]
//! exponent = [1]
//! real_part = [0.5, -0.5, 0.5, -0.5]
//!
//! [perturbation]          # optional
//! lambda = 0.1
//! hoppings = [...]        # same shape as above
//! onsite = [...]
//! ```
//!
//! ```toml
//! kind = "wire"
//! fiber_dim = 1
//! hopping = { real_part = [1.0] }
//! onsite = { real_part = [0.0] }
//! ```
//!
//! ```toml
//! kind = "scattering"
//! wire = "wire_chain2.toml"     # paths relative to this file
//! insulator = "qwz_u-1.toml"
//! ```
//!
//! Matrices are row-major arrays of `fiber_dim²` reals; `imag_part` may be
//! omitted when zero. Each layer `1..=period_perp` needs exactly one
//! `hoppings` entry; a missing `onsite` layer means `B_n = 0`. Unknown keys
//! are rejected.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use topo_numerics::ComplexMatrix;

use crate::error::ModelError;
use crate::fourier::{FourierMatrix, Harmonic};
use crate::jacobi::{BlockJacobiModel, Perturbation};
use crate::wire::{ScatteringSystem, WireModel};

#[derive(Clone, Debug, PartialEq)]
pub enum ModelFile {
    Insulator(BlockJacobiModel),
    Wire(WireModel),
    Scattering(ScatteringSystem),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixSpec {
    real_part: Vec<f64>,
    #[serde(default)]
    imag_part: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HarmonicSpec {
    exponent: Vec<i32>,
    real_part: Vec<f64>,
    #[serde(default)]
    imag_part: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LayerSpec {
    layer: usize,
    harmonics: Vec<HarmonicSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PerturbationSpec {
    lambda: f64,
    #[serde(default)]
    hoppings: Vec<LayerSpec>,
    #[serde(default)]
    onsite: Vec<LayerSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InsulatorSpec {
    #[serde(default)]
    #[allow(dead_code)]
    kind: Option<String>,
    dimension: usize,
    fiber_dim: usize,
    period_perp: usize,
    hoppings: Vec<LayerSpec>,
    #[serde(default)]
    onsite: Vec<LayerSpec>,
    #[serde(default)]
    perturbation: Option<PerturbationSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireSpec {
    #[allow(dead_code)]
    kind: String,
    fiber_dim: usize,
    hopping: MatrixSpec,
    onsite: MatrixSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScatteringSpec {
    #[allow(dead_code)]
    kind: String,
    wire: PathBuf,
    insulator: PathBuf,
}

fn parse_err(path: &str, message: impl Into<String>) -> ModelError {
    ModelError::Parse { path: path.to_string(), message: message.into() }
}

fn matrix(
    path: &str,
    field: &str,
    dim: usize,
    re: &[f64],
    im: Option<&[f64]>,
) -> Result<ComplexMatrix, ModelError> {
    let n = dim * dim;
    if re.len() != n {
        return Err(parse_err(
            path,
            format!("{field}.real_part: expected {n} entries, found {}", re.len()),
        ));
    }
    let zeros = vec![0.0; n];
    let im = im.unwrap_or(&zeros);
    if im.len() != n {
        return Err(parse_err(
            path,
            format!("{field}.imag_part: expected {n} entries, found {}", im.len()),
        ));
    }
    if re.iter().chain(im).any(|x| !x.is_finite()) {
        return Err(parse_err(path, format!("{field}: non-finite entry")));
    }
    Ok(ComplexMatrix::from_parts(dim, dim, re, im))
}

fn layers(
    path: &str,
    field: &str,
    specs: &[LayerSpec],
    dim: usize,
    vars: usize,
    period: usize,
    required: bool,
) -> Result<Vec<FourierMatrix>, ModelError> {
    let mut out: Vec<Option<FourierMatrix>> = vec![None; period];
    for (i, spec) in specs.iter().enumerate() {
        let here = format!("{field}[{i}]");
        if spec.layer == 0 || spec.layer > period {
            return Err(parse_err(
                path,
                format!("{here}.layer: {} outside 1..={period}", spec.layer),
            ));
        }
        if out[spec.layer - 1].is_some() {
            return Err(parse_err(path, format!("{here}.layer: layer {} given twice", spec.layer)));
        }
        let mut harmonics = Vec::with_capacity(spec.harmonics.len());
        for (j, h) in spec.harmonics.iter().enumerate() {
            let hf = format!("{here}.harmonics[{j}]");
            if h.exponent.len() != vars {
                return Err(parse_err(
                    path,
                    format!("{hf}.exponent: expected {vars} components, found {}", h.exponent.len()),
                ));
            }
            let m = matrix(path, &hf, dim, &h.real_part, h.imag_part.as_deref())?;
            harmonics.push(Harmonic { exponent: h.exponent.clone(), matrix: m });
        }
        out[spec.layer - 1] = Some(FourierMatrix::new(dim, vars, harmonics)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(j, f)| match f {
            Some(f) => Ok(f),
            None if required => {
                Err(parse_err(path, format!("{field}: layer {} missing", j + 1)))
            }
            None => Ok(FourierMatrix::zero(dim, vars)),
        })
        .collect()
}

fn insulator_from(path: &str, spec: InsulatorSpec) -> Result<BlockJacobiModel, ModelError> {
    if spec.dimension == 0 || spec.fiber_dim == 0 || spec.period_perp == 0 {
        return Err(parse_err(path, "dimension, fiber_dim and period_perp must be positive"));
    }
    let (l, vars, p) = (spec.fiber_dim, spec.dimension - 1, spec.period_perp);
    let hoppings = layers(path, "hoppings", &spec.hoppings, l, vars, p, true)?;
    let onsite = layers(path, "onsite", &spec.onsite, l, vars, p, false)?;
    let perturbation = match spec.perturbation {
        None => None,
        Some(ps) => Some(Perturbation {
            lambda: ps.lambda,
            hoppings: layers(path, "perturbation.hoppings", &ps.hoppings, l, vars, p, false)?,
            onsite: layers(path, "perturbation.onsite", &ps.onsite, l, vars, p, false)?,
        }),
    };
    BlockJacobiModel::new(spec.dimension, l, p, hoppings, onsite, perturbation)
}

fn wire_from(path: &str, spec: WireSpec) -> Result<WireModel, ModelError> {
    let l = spec.fiber_dim;
    let a = matrix(path, "hopping", l, &spec.hopping.real_part, spec.hopping.imag_part.as_deref())?;
    let b = matrix(path, "onsite", l, &spec.onsite.real_part, spec.onsite.imag_part.as_deref())?;
    WireModel::new(a, b)
}

/// Parses a model document; `base` resolves relative paths of scattering
/// documents and `name` labels diagnostics.
pub fn parse_model(text: &str, name: &str, base: &Path) -> Result<ModelFile, ModelError> {
    let table: toml::Table = toml::from_str(text).map_err(|e| parse_err(name, e.to_string()))?;
    let kind = match table.get("kind") {
        None => "insulator".to_string(),
        Some(toml::Value::String(s)) => s.clone(),
        Some(_) => return Err(parse_err(name, "kind: expected a string")),
    };
    match kind.as_str() {
        "insulator" => {
            let spec: InsulatorSpec =
                toml::from_str(text).map_err(|e| parse_err(name, e.to_string()))?;
            Ok(ModelFile::Insulator(insulator_from(name, spec)?))
        }
        "wire" => {
            let spec: WireSpec = toml::from_str(text).map_err(|e| parse_err(name, e.to_string()))?;
            Ok(ModelFile::Wire(wire_from(name, spec)?))
        }
        "scattering" => {
            let spec: ScatteringSpec =
                toml::from_str(text).map_err(|e| parse_err(name, e.to_string()))?;
            let wire = match load_model(&base.join(&spec.wire))? {
                ModelFile::Wire(w) => w,
                _ => return Err(parse_err(name, "wire: referenced file is not a wire")),
            };
            let insulator = match load_model(&base.join(&spec.insulator))? {
                ModelFile::Insulator(m) => m,
                _ => return Err(parse_err(name, "insulator: referenced file is not an insulator")),
            };
            Ok(ModelFile::Scattering(ScatteringSystem::new(wire, insulator)?))
        }
        other => Err(parse_err(
            name,
            format!("kind: unknown value {other:?} (expected insulator, wire or scattering)"),
        )),
    }
}

pub fn load_model(path: &Path) -> Result<ModelFile, ModelError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ModelError::Io { path: name.clone(), message: e.to_string() })?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_model(&text, &name, base)
}
