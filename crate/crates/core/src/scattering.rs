//! Plane-wave scattering coefficients, the interface between the measurement
//! side (real tubes or the finite-difference oracle) and retrieval.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatteringError {
    #[error("invalid scattering data at {frequency} Hz: {reason}")]
    Invalid { frequency: f64, reason: &'static str },
    #[error("transmission coefficient vanishes at {frequency} Hz")]
    ZeroTransmission { frequency: f64 },
}

/// Complex transmission and reflection coefficients at one frequency, phase
/// referenced to the sample faces (x = 0 for R, x = t for T, both relative to
/// the incident wave at x = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringData {
    pub frequency: f64,
    pub transmission: Complex64,
    pub reflection: Complex64,
}

impl ScatteringData {
    pub fn new(frequency: f64, transmission: Complex64, reflection: Complex64) -> Result<Self, ScatteringError> {
        if !(frequency.is_finite() && frequency > 0.0) {
            return Err(ScatteringError::Invalid {
                frequency,
                reason: "frequency must be positive",
            });
        }
        if !(transmission.is_finite() && reflection.is_finite()) {
            return Err(ScatteringError::Invalid {
                frequency,
                reason: "T and R must be finite",
            });
        }
        if transmission.norm() == 0.0 {
            return Err(ScatteringError::ZeroTransmission { frequency });
        }
        Ok(Self {
            frequency,
            transmission,
            reflection,
        })
    }
}
