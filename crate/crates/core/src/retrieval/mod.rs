//! Effective-parameter retrieval for a sample that fills only the central
//! disk of the tube.
//!
//! Pipeline per frequency: measured (T, R) → transfer matrix of the sample
//! region → 8×8 system for the face-averaged pressures and volume velocities
//! of the sample (part 1) and the air gap (part 2) → closed-form `z1`, `n1`.
//! [`retrieve_sweep`] adds branch unwrapping across frequency.

mod classic;
mod extract;
mod forward;
mod sweep;
mod system;
mod transfer;

use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::{DuctGeometry, GeometryError, MediumProperties};
use crate::modal::ModalError;
pub use crate::scattering::{ScatteringData, ScatteringError};

pub use classic::{classic_retrieve, classic_sweep};
pub use extract::{impedance_from_fields, index_from_fields, principal_phase};
pub use forward::{forward_averaged, forward_averaged_sweep};
pub use sweep::{retrieve_sweep, RetrievalConfig};
pub use system::{
    assemble_system, solve_fields, LinearSystem, Matrix8, SolveDiagnostics, SystemForm, Vector8, MAX_CONDITION, MAX_RESIDUAL,
};
pub use transfer::{tr_from_transfer_matrix, transfer_matrix_from_tr, TransferMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RetrievalError {
    #[error("transmission coefficient vanishes at {frequency} Hz")]
    SingularMeasurement { frequency: f64 },
    #[error("transfer matrix gives a vanishing (T, R) denominator at {frequency} Hz")]
    DegenerateSample { frequency: f64 },
    #[error("linear system is singular at {frequency} Hz")]
    Singular { frequency: f64 },
    #[error("linear system ill-conditioned at {frequency} Hz (condition number {condition:.3e})")]
    IllConditioned { frequency: f64, condition: f64 },
    #[error("linear solve residual {residual:.3e} too large at {frequency} Hz")]
    Residual { frequency: f64, residual: f64 },
    #[error("{quantity} denominator vanishes (half-wave degeneracy)")]
    DegenerateFields { quantity: &'static str },
    #[error("sweep has no data rows")]
    EmptySweep,
    #[error("frequencies must increase strictly; row {index} ({frequency} Hz) does not")]
    NonMonotone { index: usize, frequency: f64 },
    #[error("{frequency} Hz is above the first duct cut-on {cutoff:.1} Hz")]
    AboveCutoff { frequency: f64, cutoff: f64 },
    #[error("every frequency of the sweep is degenerate")]
    AllDegenerate,
    #[error(transparent)]
    Data(#[from] ScatteringError),
    #[error(transparent)]
    Modal(#[from] ModalError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The air gap as a layer: index 1 and volume-velocity impedance ρ₀c₀/S₃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapProperties {
    pub n2: f64,
    /// Pa·s/m³.
    pub z2: f64,
}

impl GapProperties {
    pub fn new(geometry: &DuctGeometry, medium: &MediumProperties) -> Self {
        Self {
            n2: 1.0,
            z2: medium.alpha() / geometry.s3(),
        }
    }
}

/// Face-averaged pressures (Pa) and volume velocities (m³/s); index 1 is the
/// sample, 2 the gap, `_0` the entry face and `_t` the exit face.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldState {
    pub p1_0: Complex64,
    pub p2_0: Complex64,
    pub p1_t: Complex64,
    pub p2_t: Complex64,
    pub u1_0: Complex64,
    pub u2_0: Complex64,
    pub u1_t: Complex64,
    pub u2_t: Complex64,
}

impl FieldState {
    pub fn from_array(w: [Complex64; 8]) -> Self {
        Self {
            p1_0: w[0],
            p2_0: w[1],
            p1_t: w[2],
            p2_t: w[3],
            u1_0: w[4],
            u2_0: w[5],
            u1_t: w[6],
            u2_t: w[7],
        }
    }

    /// The unknown vector in system order.
    pub fn to_array(&self) -> [Complex64; 8] {
        [
            self.p1_0, self.p2_0, self.p1_t, self.p2_t, self.u1_0, self.u2_0, self.u1_t, self.u2_t,
        ]
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self::from_array(self.to_array().map(|v| v * s))
    }

    /// Time-averaged acoustic power through the entry face, W.
    pub fn power_in(&self) -> f64 {
        0.5 * (self.p1_0 * self.u1_0.conj() + self.p2_0 * self.u2_0.conj()).re
    }

    /// Time-averaged acoustic power through the exit face, W.
    pub fn power_out(&self) -> f64 {
        0.5 * (self.p1_t * self.u1_t.conj() + self.p2_t * self.u2_t.conj()).re
    }
}

/// Per-frequency diagnostics of a retrieval.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Diagnostics {
    /// Condition number of the unit-normalised 8×8 system (0 for the classic method).
    pub condition: f64,
    /// Relative residual of the linear solve.
    pub residual: f64,
    /// Convergence figure of the modal sums, when available.
    pub modal_convergence: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    /// Closed forms were singular here; values are interpolated from neighbours.
    pub interpolated: bool,
    /// Above the first duct cut-on (only reachable with the override).
    pub above_cutoff: bool,
    /// Single-point sweep: the branch comes from the seed alone.
    pub branch_undetermined: bool,
}

impl Flags {
    pub fn any(&self) -> bool {
        self.interpolated || self.above_cutoff || self.branch_undetermined
    }
}

/// Retrieved sample properties at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetrievedProperties {
    pub frequency: f64,
    pub n1: Complex64,
    /// Volume-velocity impedance, Pa·s/m³ (specific impedance, Pa·s/m, for the
    /// classic full-fill method).
    pub z1: Complex64,
    /// Branch number of the inverse cosine.
    pub branch: i32,
    /// Sign applied to the principal inverse cosine, ±1.
    pub sign: i8,
    pub diagnostics: Diagnostics,
    pub flags: Flags,
}
