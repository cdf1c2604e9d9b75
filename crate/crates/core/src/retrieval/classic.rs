//! Classic single-layer inversion for a sample that fills the whole tube:
//! `cos(n k₀ t) = M11` and `z = √(M12/M21)` (specific impedance, Pa·s/m).

use rayon::prelude::*;

use super::extract::passive_root;
use super::sweep::{unwrap_branches, validate_sweep, PointEstimate};
use super::transfer::transfer_matrix_from_tr;
use super::{Diagnostics, RetrievalError, RetrievedProperties, ScatteringData};
use crate::geometry::MediumProperties;

fn estimate(data: &ScatteringData, t: f64, medium: &MediumProperties) -> Result<PointEstimate, RetrievalError> {
    let m = transfer_matrix_from_tr(data, medium)?;
    let z2 = m.m12 / m.m21;
    let z = (m.m21.norm() > 1e-12 * m.m11.norm() / medium.alpha() && z2.is_finite()).then(|| passive_root(z2.sqrt()));
    Ok(PointEstimate {
        frequency: data.frequency,
        k0t: medium.wavenumber(data.frequency) * t,
        phase: Some(m.m11.acos()),
        z,
        diagnostics: Diagnostics {
            condition: 0.0,
            residual: m.constraint_error(),
            modal_convergence: None,
        },
        above_cutoff: false,
    })
}

/// Single-frequency inversion, branch 0.
pub fn classic_retrieve(data: &ScatteringData, t: f64, medium: &MediumProperties) -> Result<RetrievedProperties, RetrievalError> {
    let p = estimate(data, t, medium)?;
    let mut out = unwrap_branches(&[p], 0)?;
    Ok(out.remove(0))
}

/// Full sweep with the same seeding and continuity rules as the gap method.
pub fn classic_sweep(
    data: &[ScatteringData],
    t: f64,
    medium: &MediumProperties,
    branch_seed: i32,
) -> Result<Vec<RetrievedProperties>, RetrievalError> {
    validate_sweep(data)?;
    let points = data.par_iter().map(|d| estimate(d, t, medium)).collect::<Result<Vec<_>, _>>()?;
    unwrap_branches(&points, branch_seed)
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::retrieval::{tr_from_transfer_matrix, TransferMatrix};

    #[test]
    fn air_gives_unit_index() {
        let air = MediumProperties::air();
        let (f, t) = (700.0, 0.01);
        let d = ScatteringData::new(f, Complex64::from_polar(1.0, air.wavenumber(f) * t), Complex64::new(0.0, 0.0)).unwrap();
        let r = classic_retrieve(&d, t, &air).unwrap();
        assert!((r.n1 - 1.0).norm() < 1e-10);
        assert!((r.z1 - air.alpha()).norm() < 1e-8 * air.alpha());
    }

    #[test]
    fn recovers_single_layer() {
        let air = MediumProperties::air();
        let (f, t) = (1500.0, 0.0052);
        let (n, z) = (Complex64::new(5.0, 0.0), Complex64::new(3.0 * air.alpha(), 0.0));
        let m = TransferMatrix::layer(n, z, air.wavenumber(f), t);
        let d = tr_from_transfer_matrix(&m, &air, f).unwrap();
        let r = classic_retrieve(&d, t, &air).unwrap();
        assert!((r.n1 - n).norm() < 1e-10 * n.norm());
        assert!((r.z1 - z).norm() < 1e-10 * z.norm());
    }

    #[test]
    fn evanescent_band_has_positive_loss() {
        let air = MediumProperties::air();
        let a = air.alpha();
        // M11 = 2 (real > 1), det = 1
        let m = TransferMatrix {
            m11: Complex64::new(2.0, 0.0),
            m12: Complex64::new(0.0, -a * 3f64.sqrt()),
            m21: Complex64::new(0.0, 3f64.sqrt() / a),
            m22: Complex64::new(2.0, 0.0),
        };
        let d = tr_from_transfer_matrix(&m, &air, 400.0).unwrap();
        let r = classic_retrieve(&d, 0.01, &air).unwrap();
        assert!(r.n1.im > 0.0, "{}", r.n1);
    }
}
