//! Two-microphone decomposition of the tube field into plane waves.

use num_complex::Complex64;

use super::OracleError;
use crate::scattering::ScatteringData;

/// Plane-wave pressures at three microphone planes: two upstream of the
/// sample (`x < 0`) and one downstream (`x > t`), positions in the sample
/// frame with the entry face at x = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortRecord {
    pub frequency: f64,
    /// Axial wavenumber of the plane wave in the tube air, 1/m.
    pub wavenumber: f64,
    /// Sample thickness, m (reference plane of T).
    pub thickness: f64,
    pub positions: [f64; 3],
    pub pressures: [Complex64; 3],
    pub above_cutoff: bool,
}

/// Splits `p(x) = P⁺e^{ikx} + P⁻e^{−ikx}` upstream and reads the transmitted
/// wave downstream; R is referenced to x = 0, T to x = t.
pub fn scattering_from_ports(record: &PortRecord) -> Result<ScatteringData, OracleError> {
    let k = record.wavenumber;
    let [x1, x2, x3] = record.positions;
    let [p1, p2, p3] = record.pressures;
    let ratio = k * (x2 - x1).abs() / std::f64::consts::PI;
    if (ratio - ratio.round()).abs() < 0.05 {
        return Err(OracleError::IllConditionedPorts {
            frequency: record.frequency,
            ratio,
        });
    }
    let e = |x: f64| Complex64::from_polar(1.0, k * x);
    // [e(x1) 1/e(x1); e(x2) 1/e(x2)] [P⁺; P⁻] = [p1; p2]
    let det = e(x1) / e(x2) - e(x2) / e(x1);
    let plus = (p1 / e(x2) - p2 / e(x1)) / det;
    let minus = (e(x1) * p2 - e(x2) * p1) / det;
    let transmitted = p3 / e(x3);
    Ok(ScatteringData::new(
        record.frequency,
        transmitted * e(record.thickness) / plus,
        minus / plus,
    )?)
}
