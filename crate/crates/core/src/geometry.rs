//! Tube geometry and background fluid shared by the retrieval pipeline and the
//! finite-difference oracle.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("density and sound speed must be positive and finite (rho0 = {rho0}, c0 = {c0})")]
    Medium { rho0: f64, c0: f64 },
    #[error("need 0 < r1 < r2 and t > 0 (r1 = {r1}, r2 = {r2}, t = {t})")]
    Duct { r1: f64, r2: f64, t: f64 },
}

/// Background fluid filling the tube and the air gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumProperties {
    /// Density, kg/m³.
    pub rho0: f64,
    /// Sound speed, m/s.
    pub c0: f64,
}

impl MediumProperties {
    pub fn new(rho0: f64, c0: f64) -> Result<Self, GeometryError> {
        let ok = rho0.is_finite() && c0.is_finite() && rho0 > 0.0 && c0 > 0.0;
        if !ok {
            return Err(GeometryError::Medium { rho0, c0 });
        }
        Ok(Self { rho0, c0 })
    }

    /// Room-temperature air (1.21 kg/m³, 343 m/s).
    pub fn air() -> Self {
        Self { rho0: 1.21, c0: 343.0 }
    }

    /// Characteristic impedance ρ₀c₀ in Pa·s/m.
    pub fn alpha(&self) -> f64 {
        self.rho0 * self.c0
    }

    /// Bulk modulus ρ₀c₀² in Pa.
    pub fn bulk_modulus(&self) -> f64 {
        self.rho0 * self.c0 * self.c0
    }

    /// Free-field wavenumber ω/c₀ in 1/m.
    pub fn wavenumber(&self, frequency: f64) -> f64 {
        2.0 * PI * frequency / self.c0
    }
}

/// A sample disk of radius `r1` and thickness `t` sitting coaxially in a rigid
/// tube of radius `r2`; the annulus `r1 < r < r2` is the air gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DuctGeometry {
    pub r1: f64,
    pub r2: f64,
    pub t: f64,
}

impl DuctGeometry {
    pub fn new(r1: f64, r2: f64, t: f64) -> Result<Self, GeometryError> {
        let finite = r1.is_finite() && r2.is_finite() && t.is_finite();
        if !finite || r1 <= 0.0 || r1 >= r2 || t <= 0.0 {
            return Err(GeometryError::Duct { r1, r2, t });
        }
        Ok(Self { r1, r2, t })
    }

    /// Sample face area π r₁².
    pub fn s1(&self) -> f64 {
        PI * self.r1 * self.r1
    }

    /// Tube cross-section π r₂².
    pub fn s2(&self) -> f64 {
        PI * self.r2 * self.r2
    }

    /// Gap area π (r₂² − r₁²).
    pub fn s3(&self) -> f64 {
        PI * (self.r2 - self.r1) * (self.r2 + self.r1)
    }

    /// Frequency of the first non-planar axisymmetric duct mode (J₁ root 3.8317…).
    pub fn first_cutoff(&self, medium: &MediumProperties) -> f64 {
        FIRST_J1_ROOT * medium.c0 / (2.0 * PI * self.r2)
    }
}

/// First positive root of J₁, used for cutoff checks that must not depend on
/// building a full root table.
pub(crate) const FIRST_J1_ROOT: f64 = 3.831_705_970_207_512_3;
