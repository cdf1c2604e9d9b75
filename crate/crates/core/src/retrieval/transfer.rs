//! Two-port transfer matrix of the sample region and its relation to the
//! plane-wave transmission and reflection coefficients.
//!
//! `M` maps pressure and particle velocity at the exit face to the entry face,
//! `[p(0), u(0)]ᵀ = M [p(t), u(t)]ᵀ`. For an anechoic downstream duct
//!
//! ```text
//! T = 2 / (M11 + M12/α + α·M21 + M22)
//! R = (M11 + M12/α − α·M21 − M22) / (M11 + M12/α + α·M21 + M22)
//! ```
//!
//! with α = ρ₀c₀. Symmetric reciprocal samples have `M11 = M22`, `det M = 1`,
//! which makes the inversion from (T, R) unique.

use num_complex::Complex64;

use super::{RetrievalError, ScatteringData};
use crate::geometry::MediumProperties;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m11: Complex64,
    /// Pa·s/m.
    pub m12: Complex64,
    /// m/(Pa·s).
    pub m21: Complex64,
    pub m22: Complex64,
}

impl TransferMatrix {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            m11: one,
            m12: zero,
            m21: zero,
            m22: one,
        }
    }

    /// Homogeneous layer of index `n`, specific impedance `z` (Pa·s/m) and
    /// thickness `t`, at free wavenumber `k0`.
    pub fn layer(n: Complex64, z: Complex64, k0: f64, t: f64) -> Self {
        let theta = n * k0 * t;
        let (c, s) = (theta.cos(), theta.sin());
        let i = Complex64::i();
        Self {
            m11: c,
            m12: -i * z * s,
            m21: -i * s / z,
            m22: c,
        }
    }

    pub fn determinant(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Largest violation of `M11 = M22` (relative) and `det M = 1`.
    pub fn constraint_error(&self) -> f64 {
        let scale = self.m11.norm().max(self.m22.norm()).max(1.0);
        let sym = (self.m11 - self.m22).norm() / scale;
        let det = (self.determinant() - 1.0).norm();
        sym.max(det)
    }
}

/// Inverts the (T, R) relations under `M11 = M22` and `det M = 1`.
///
/// Writing `u = M12/α`, `v = α·M21` and `m = M11 = M22`: the two relations give
/// `m + u = (1 + R)/T` and `m + v = (1 − R)/T`, and `m² − uv = 1` then fixes
/// `m = (1 − R² + T²)/(2T)`.
pub fn transfer_matrix_from_tr(data: &ScatteringData, medium: &MediumProperties) -> Result<TransferMatrix, RetrievalError> {
    let (t, r) = (data.transmission, data.reflection);
    if t.norm() == 0.0 {
        return Err(RetrievalError::SingularMeasurement { frequency: data.frequency });
    }
    let alpha = medium.alpha();
    let m = (1.0 - r * r + t * t) / (2.0 * t);
    let u = (1.0 + r) / t - m;
    let v = (1.0 - r) / t - m;
    Ok(TransferMatrix {
        m11: m,
        m12: alpha * u,
        m21: v / alpha,
        m22: m,
    })
}

/// Forward (T, R) of a two-port terminated by an anechoic duct.
pub fn tr_from_transfer_matrix(m: &TransferMatrix, medium: &MediumProperties, frequency: f64) -> Result<ScatteringData, RetrievalError> {
    let alpha = medium.alpha();
    let den = m.m11 + m.m12 / alpha + alpha * m.m21 + m.m22;
    let scale = m.m11.norm() + (m.m12 / alpha).norm() + (alpha * m.m21).norm() + m.m22.norm();
    if den.norm() <= 1e-14 * scale || !den.is_finite() {
        return Err(RetrievalError::DegenerateSample { frequency });
    }
    let num = m.m11 + m.m12 / alpha - alpha * m.m21 - m.m22;
    Ok(ScatteringData::new(frequency, 2.0 / den, num / den)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn transparent_sample_is_identity() {
        let air = MediumProperties::air();
        let d = ScatteringData::new(500.0, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let m = transfer_matrix_from_tr(&d, &air).unwrap();
        assert!((m.m11 - 1.0).norm() < 1e-15);
        assert!(m.m12.norm() < 1e-12 && m.m21.norm() < 1e-18);
    }

    #[test]
    fn air_slab_phase() {
        // e^{−iωt}: a slab of air of electrical length θ transmits e^{+iθ}
        let air = MediumProperties::air();
        let theta: f64 = 0.7;
        let d = ScatteringData::new(500.0, Complex64::from_polar(1.0, theta), c(0.0, 0.0)).unwrap();
        let m = transfer_matrix_from_tr(&d, &air).unwrap();
        let a = air.alpha();
        assert!((m.m11 - theta.cos()).norm() < 1e-14);
        assert!((m.m12 - c(0.0, -a * theta.sin())).norm() < 1e-12 * a);
        assert!((m.m21 - c(0.0, -theta.sin() / a)).norm() < 1e-14 / a);
        let layer = TransferMatrix::layer(c(1.0, 0.0), c(a, 0.0), 1.0, theta);
        let back = tr_from_transfer_matrix(&layer, &air, 500.0).unwrap();
        assert!((back.transmission - d.transmission).norm() < 1e-14);
        assert!(back.reflection.norm() < 1e-14);
    }

    #[test]
    fn quarter_wave_transformer() {
        let air = MediumProperties::air();
        let a = air.alpha();
        let m = TransferMatrix {
            m11: c(0.0, 0.0),
            m12: c(0.0, a),
            m21: c(0.0, 1.0 / a),
            m22: c(0.0, 0.0),
        };
        let d = tr_from_transfer_matrix(&m, &air, 100.0).unwrap();
        // den = i + i = 2i
        assert!((d.transmission - c(0.0, -1.0)).norm() < 1e-15);
        assert!(d.reflection.norm() < 1e-15);
    }

    #[test]
    fn zero_transmission_is_rejected() {
        let d = ScatteringData {
            frequency: 100.0,
            transmission: c(0.0, 0.0),
            reflection: c(1.0, 0.0),
        };
        assert!(matches!(
            transfer_matrix_from_tr(&d, &MediumProperties::air()),
            Err(RetrievalError::SingularMeasurement { .. })
        ));
    }

    #[test]
    fn degenerate_matrix_is_rejected() {
        let air = MediumProperties::air();
        let a = air.alpha();
        let m = TransferMatrix {
            m11: c(1.0, 0.0),
            m12: c(-a, 0.0),
            m21: c(-1.0 / a, 0.0),
            m22: c(1.0, 0.0),
        };
        assert!(matches!(
            tr_from_transfer_matrix(&m, &air, 100.0),
            Err(RetrievalError::DegenerateSample { .. })
        ));
    }
}
