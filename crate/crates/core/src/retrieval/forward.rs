//! Forward closure of the averaged-field model: given the sample's `n1`,
//! `z1`, predict (T, R). Shares the radiation rows and the layer relation
//! with the retrieval system, so retrieval of its output is an identity.

use num_complex::Complex64;
use rayon::prelude::*;

use super::system::{solve_fields, LinearSystem, Matrix8, Vector8};
use super::{GapProperties, RetrievalError, ScatteringData};
use crate::geometry::{DuctGeometry, MediumProperties};
use crate::modal::{CouplingCoefficients, CouplingConfig, CouplingModel};

/// (T, R) of a sample with index `n1` and volume-velocity impedance `z1`.
///
/// Unknowns are ordered as in the retrieval system. Rows 0–3 are the
/// radiation conditions under a unit incident wave, rows 4–5 the gap layer
/// and rows 6–7 the sample layer. The transmitted and reflected plane-wave
/// amplitudes are the area averages of the face velocities.
pub fn forward_averaged(
    n1: Complex64,
    z1: Complex64,
    geometry: &DuctGeometry,
    medium: &MediumProperties,
    gap: &GapProperties,
    coupling: &CouplingCoefficients,
) -> Result<ScatteringData, RetrievalError> {
    let frequency = coupling.frequency;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let k = coupling;
    let mut q = Matrix8::zeros();
    #[rustfmt::skip]
    let radiation = [
        [one, zero, zero, zero, -k.a, -k.b, zero, zero],
        [zero, one, zero, zero, -k.c, -k.d, zero, zero],
        [zero, zero, one, zero, zero, zero, -k.e, -k.f],
        [zero, zero, zero, one, zero, zero, -k.g, -k.h],
    ];
    for (r, row) in radiation.iter().enumerate() {
        for (col, v) in row.iter().enumerate() {
            q[(r, col)] = *v;
        }
    }
    let k0 = medium.wavenumber(frequency);
    // (row, [P(0), P(t), U(0), U(t)] columns, n, z)
    let layers = [
        (4, [1, 3, 5, 7], Complex64::new(gap.n2, 0.0), Complex64::new(gap.z2, 0.0)),
        (6, [0, 2, 4, 6], n1, z1),
    ];
    for (row, [p0, pt, u0, ut], n, z) in layers {
        let theta = n * k0 * geometry.t;
        let (sin, cos) = (theta.sin(), theta.cos());
        q[(row, p0)] = one;
        q[(row, pt)] = -cos;
        q[(row, ut)] = i * z * sin;
        q[(row + 1, u0)] = one;
        q[(row + 1, pt)] = i * sin / z;
        q[(row + 1, ut)] = -cos;
    }
    let two = Complex64::new(2.0, 0.0);
    let y = Vector8::from_column_slice(&[two, two, zero, zero, zero, zero, zero, zero]);
    let u = geometry.s2() / medium.alpha();
    let system = LinearSystem {
        q,
        y,
        frequency,
        unknown_scale: [1.0, 1.0, 1.0, 1.0, u, u, u, u],
    };
    let (w, _) = solve_fields(&system)?;
    let scale = medium.alpha() / geometry.s2();
    let transmission = scale * (w[6] + w[7]);
    let reflection = 1.0 - scale * (w[4] + w[5]);
    Ok(ScatteringData::new(frequency, transmission, reflection)?)
}

/// [`forward_averaged`] over a list of frequencies for a non-dispersive sample.
pub fn forward_averaged_sweep(
    n1: Complex64,
    z1: Complex64,
    geometry: &DuctGeometry,
    medium: &MediumProperties,
    frequencies: &[f64],
    config: CouplingConfig,
) -> Result<Vec<ScatteringData>, RetrievalError> {
    let model = CouplingModel::new(geometry, config)?;
    let gap = GapProperties::new(geometry, medium);
    frequencies
        .par_iter()
        .map(|&f| {
            let coupling = model.coefficients(medium, f)?;
            forward_averaged(n1, z1, geometry, medium, &gap, &coupling)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::coupling_coefficients;

    #[test]
    fn air_sample_is_transparent() {
        let medium = MediumProperties::air();
        let g = DuctGeometry::new(0.04, 0.07, 0.0052).unwrap();
        let gap = GapProperties::new(&g, &medium);
        let f = 1200.0;
        let c = coupling_coefficients(&g, &medium, f, &CouplingConfig::default()).unwrap();
        let z1 = Complex64::new(medium.alpha() / g.s1(), 0.0);
        let d = forward_averaged(Complex64::new(1.0, 0.0), z1, &g, &medium, &gap, &c).unwrap();
        let expected = Complex64::from_polar(1.0, medium.wavenumber(f) * g.t);
        assert!((d.transmission - expected).norm() < 1e-10);
        assert!(d.reflection.norm() < 1e-10);
    }

    #[test]
    fn lossless_sample_conserves_energy() {
        let medium = MediumProperties::air();
        let g = DuctGeometry::new(0.051, 0.07, 0.008).unwrap();
        let gap = GapProperties::new(&g, &medium);
        let c = coupling_coefficients(&g, &medium, 900.0, &CouplingConfig::default()).unwrap();
        let z1 = Complex64::new(10.0 * gap.z2, 0.0);
        let d = forward_averaged(Complex64::new(7.0, 0.0), z1, &g, &medium, &gap, &c).unwrap();
        let e = d.transmission.norm_sqr() + d.reflection.norm_sqr();
        assert!((e - 1.0).abs() < 1e-10, "{e}");
    }
}
