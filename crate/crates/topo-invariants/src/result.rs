use std::fmt;

use crate::error::InvariantError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Plaquette phases of determinant link variables.
    Plaquette,
    /// Improved clover field strength.
    Clover,
    /// Phase increments of `det V`.
    DetWinding,
    /// Winding density with central differences of the given order.
    WindingDensity { order: usize },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Plaquette => write!(f, "plaquette"),
            Method::Clover => write!(f, "clover"),
            Method::DetWinding => write!(f, "det-winding"),
            Method::WindingDensity { order } => write!(f, "winding-density-o{order}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantResult {
    pub value: f64,
    pub rounded: i64,
    pub distance_to_integer: f64,
    pub tolerance: f64,
    pub grid: Vec<usize>,
    pub method: Method,
}

impl InvariantResult {
    pub fn new(value: f64, tolerance: f64, grid: Vec<usize>, method: Method) -> Self {
        let rounded = value.round();
        Self {
            value,
            rounded: rounded as i64,
            distance_to_integer: (value - rounded).abs(),
            tolerance,
            grid,
            method,
        }
    }

    pub fn converged(&self) -> bool {
        self.distance_to_integer < self.tolerance
    }

    /// `Ok(self)` if converged, otherwise [`InvariantError::Unconverged`].
    pub fn require_converged(self) -> Result<Self, InvariantError> {
        if self.converged() {
            Ok(self)
        } else {
            Err(InvariantError::Unconverged {
                value: self.value,
                distance: self.distance_to_integer,
                tolerance: self.tolerance,
            })
        }
    }
}
