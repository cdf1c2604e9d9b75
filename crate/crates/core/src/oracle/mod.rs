//! Independent frequency-domain Helmholtz solver for the tube with a sample.
//!
//! Solves `∇·(ρ⁻¹∇p) + ω²κ⁻¹p = 0` on an axisymmetric finite-volume grid
//! (cell-centred pressure, fluxes on faces), with a rigid outer wall, the axis
//! as a zero-flux face, a rigid zero-thickness sleeve between sample and gap,
//! and quadratic-profile PMLs at both ends. A uniform source sheet launches a
//! plane wave; two microphones per side recover (T, R) the way an impedance
//! tube does.
//!
//! Nothing here depends on the modal or retrieval mathematics: the oracle
//! only shares the geometry and medium types and the [`ScatteringData`]
//! record, so agreement with retrieval is a genuine cross-check.

mod banded;
mod ports;
mod scene;
mod solve;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::geometry::{DuctGeometry, GeometryError, MediumProperties};
use crate::scattering::{ScatteringData, ScatteringError};

pub use banded::{BandLu, BandMatrix};
pub use ports::{scattering_from_ports, PortRecord};
pub use scene::{build_scene, OracleSettings, Side, SimGrid};
pub use solve::{solve_field, solve_harmonic, PressureField};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("grid needs {cells} cells, above the limit of {limit}")]
    ResolutionInfeasible { cells: usize, limit: usize },
    #[error("sample thickness {t} m is not a whole number of {dx} m cells")]
    ThicknessUnresolved { t: f64, dx: f64 },
    #[error("frequency must be positive and finite, got {0}")]
    Frequency(f64),
    #[error("{frequency} Hz is above the first duct cut-on {cutoff:.1} Hz")]
    AboveCutoff { frequency: f64, cutoff: f64 },
    #[error("finite-difference system singular at {frequency} Hz")]
    Singular { frequency: f64 },
    #[error("finite-difference residual {residual:.3e} too large at {frequency} Hz")]
    Residual { frequency: f64, residual: f64 },
    #[error("microphone spacing is {ratio:.3}·π rad at {frequency} Hz, too close to a multiple of π")]
    IllConditionedPorts { frequency: f64, ratio: f64 },
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
}

/// Sample described by its effective index and volume-velocity impedance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialSpec {
    pub n1: Complex64,
    /// Pa·s/m³.
    pub z1: Complex64,
}

impl MaterialSpec {
    pub fn new(n1: Complex64, z1: Complex64) -> Self {
        Self { n1, z1 }
    }

    /// Background air in the sample region.
    pub fn air(geometry: &DuctGeometry, medium: &MediumProperties) -> Self {
        Self {
            n1: Complex64::new(1.0, 0.0),
            z1: Complex64::new(medium.alpha() / geometry.s1(), 0.0),
        }
    }

    /// ρ = z₁S₁n₁/c₀, kg/m³.
    pub fn effective_density(&self, geometry: &DuctGeometry, medium: &MediumProperties) -> Complex64 {
        self.z1 * geometry.s1() * self.n1 / medium.c0
    }

    /// κ = z₁S₁c₀/n₁, Pa.
    pub fn bulk_modulus(&self, geometry: &DuctGeometry, medium: &MediumProperties) -> Complex64 {
        self.z1 * geometry.s1() * medium.c0 / self.n1
    }
}

/// Simulates every frequency on one grid sized for the highest of them.
pub fn simulate_sweep(
    material: &MaterialSpec,
    geometry: &DuctGeometry,
    medium: &MediumProperties,
    frequencies: &[f64],
    settings: &OracleSettings,
) -> Result<Vec<ScatteringData>, OracleError> {
    let f_max = frequencies.iter().copied().fold(0.0, f64::max);
    let scene = build_scene(material, geometry, medium, f_max, settings)?;
    frequencies
        .par_iter()
        .map(|&f| scattering_from_ports(&solve_harmonic(&scene, f)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn air_material_has_background_properties() {
        let medium = MediumProperties::air();
        let g = DuctGeometry::new(0.04, 0.07, 0.0052).unwrap();
        let m = MaterialSpec::air(&g, &medium);
        assert!((m.effective_density(&g, &medium) - medium.rho0).norm() < 1e-12);
        assert!((m.bulk_modulus(&g, &medium) - medium.bulk_modulus()).norm() < 1e-9 * medium.bulk_modulus());
    }
}
