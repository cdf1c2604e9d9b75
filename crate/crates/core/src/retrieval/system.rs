//! The 8×8 linear system `Q W = Y` for the face-averaged fields.
//!
//! Unknowns `W = [P1(0), P2(0), P1(t), P2(t), U1(0), U2(0), U1(t), U2(t)]`.
//! Rows 0–1 tie the area-weighted face averages to the measured transfer
//! matrix, rows 2–5 are the radiation conditions on both faces (blocked
//! pressure 2 on the incident side), rows 6–7 carry the gap layer.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

use super::{GapProperties, RetrievalError, TransferMatrix};
use crate::geometry::{DuctGeometry, MediumProperties};
use crate::modal::CouplingCoefficients;

pub type Matrix8 = SMatrix<Complex64, 8, 8>;
pub type Vector8 = SVector<Complex64, 8>;

/// Condition numbers above this are rejected.
pub const MAX_CONDITION: f64 = 1e12;
/// Largest accepted relative residual of the solve.
pub const MAX_RESIDUAL: f64 = 1e-10;

/// Sign pattern used in rows 0 and 7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SystemForm {
    /// Unimodular transfer-matrix and gap-layer blocks; round-trips exactly.
    #[default]
    Consistent,
    /// `−M11` in row 0 and `+cos` in row 7, as typeset in the original
    /// derivation. Kept only to demonstrate that it does not round-trip.
    Printed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub q: Matrix8,
    pub y: Vector8,
    pub frequency: f64,
    /// Characteristic size of each unknown, used to normalise units before
    /// solving and when reporting the condition number.
    pub unknown_scale: [f64; 8],
}

impl LinearSystem {
    pub fn new(q: Matrix8, y: Vector8, frequency: f64) -> Self {
        Self {
            q,
            y,
            frequency,
            unknown_scale: [1.0; 8],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveDiagnostics {
    /// 2-norm condition number of the unit- and row-normalised matrix.
    pub condition: f64,
    /// `|Q W − Y| / |Y|` of the normalised system.
    pub residual: f64,
}

pub fn assemble_system(
    m: &TransferMatrix,
    geometry: &DuctGeometry,
    medium: &MediumProperties,
    gap: &GapProperties,
    coupling: &CouplingCoefficients,
    form: SystemForm,
) -> LinearSystem {
    let c = |re: f64| Complex64::new(re, 0.0);
    let zero = c(0.0);
    let one = c(1.0);
    let (s1, s2, s3) = (geometry.s1(), geometry.s2(), geometry.s3());
    let k0 = medium.wavenumber(coupling.frequency);
    let theta = k0 * gap.n2 * geometry.t;
    let (sin, cos) = theta.sin_cos();
    let i = Complex64::i();
    let z2 = gap.z2;
    let m11 = match form {
        SystemForm::Consistent => m.m11,
        SystemForm::Printed => -m.m11,
    };
    let last = match form {
        SystemForm::Consistent => c(-cos),
        SystemForm::Printed => c(cos),
    };
    let k = coupling;
    #[rustfmt::skip]
    let rows: [[Complex64; 8]; 8] = [
        [c(-s1 / s2), c(-s3 / s2), m11 * s1 / s2, m11 * s3 / s2, zero, zero, m.m12 / s2, m.m12 / s2],
        [zero, zero, m.m21 * s1 / s2, m.m21 * s3 / s2, c(-1.0 / s2), c(-1.0 / s2), m.m22 / s2, m.m22 / s2],
        [one, zero, zero, zero, -k.a, -k.b, zero, zero],
        [zero, one, zero, zero, -k.c, -k.d, zero, zero],
        [zero, zero, one, zero, zero, zero, -k.e, -k.f],
        [zero, zero, zero, one, zero, zero, -k.g, -k.h],
        [zero, one, zero, c(-cos), zero, zero, zero, i * z2 * sin],
        [zero, zero, zero, i * sin / z2, zero, one, zero, last],
    ];
    let q = Matrix8::from_fn(|r, col| rows[r][col]);
    let y = Vector8::from_column_slice(&[zero, zero, c(2.0), c(2.0), zero, zero, zero, zero]);
    let u = s2 / medium.alpha();
    LinearSystem {
        q,
        y,
        frequency: coupling.frequency,
        unknown_scale: [1.0, 1.0, 1.0, 1.0, u, u, u, u],
    }
}

/// Solves `Q W = Y` by LU with partial pivoting on the normalised system,
/// with one step of iterative refinement.
pub fn solve_fields(system: &LinearSystem) -> Result<(Vector8, SolveDiagnostics), RetrievalError> {
    let frequency = system.frequency;
    let mut q = system.q;
    let mut y = system.y;
    for (col, &s) in system.unknown_scale.iter().enumerate() {
        q.column_mut(col).scale_mut(s);
    }
    for r in 0..8 {
        let big = q.row(r).iter().map(|v| v.norm()).fold(0.0, f64::max);
        if big == 0.0 || !big.is_finite() {
            return Err(RetrievalError::Singular { frequency });
        }
        q.row_mut(r).unscale_mut(big);
        y[r] /= big;
    }
    let sv = q.singular_values();
    let (smax, smin) = (sv.max(), sv.min());
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition > MAX_CONDITION {
        return Err(RetrievalError::IllConditioned { frequency, condition });
    }
    let lu = q.lu();
    let mut w = lu.solve(&y).ok_or(RetrievalError::Singular { frequency })?;
    if let Some(dw) = lu.solve(&(y - q * w)) {
        w += dw;
    }
    let ynorm = y.norm();
    let residual = if ynorm > 0.0 {
        (q * w - y).norm() / ynorm
    } else {
        (q * w - y).norm()
    };
    if !residual.is_finite() || w.iter().any(|v| !v.is_finite()) {
        return Err(RetrievalError::Singular { frequency });
    }
    if residual > MAX_RESIDUAL {
        return Err(RetrievalError::Residual { frequency, residual });
    }
    for (v, &s) in w.iter_mut().zip(system.unknown_scale.iter()) {
        *v *= s;
    }
    Ok((w, SolveDiagnostics { condition, residual }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_returns_rhs() {
        let y = Vector8::from_fn(|r, _| Complex64::new(r as f64, -1.0));
        let sys = LinearSystem::new(Matrix8::identity(), y, 1.0);
        let (w, d) = solve_fields(&sys).unwrap();
        assert_eq!(w, y);
        assert!((d.condition - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let mut q = Matrix8::identity();
        q[(3, 3)] = Complex64::new(0.0, 0.0);
        let sys = LinearSystem::new(q, Vector8::zeros(), 42.0);
        assert!(matches!(solve_fields(&sys), Err(RetrievalError::Singular { frequency }) if frequency == 42.0));
    }

    #[test]
    fn ill_conditioned_matrix_is_reported() {
        let mut q = Matrix8::identity();
        q[(0, 1)] = Complex64::new(1.0, 0.0);
        q[(1, 0)] = Complex64::new(1.0, 0.0);
        q[(1, 1)] = Complex64::new(1.0 + 1e-14, 0.0);
        let sys = LinearSystem::new(q, Vector8::from_element(Complex64::new(1.0, 0.0)), 7.0);
        assert!(matches!(solve_fields(&sys), Err(RetrievalError::IllConditioned { .. })));
    }
}
