//! Closed-form impedance and index of the sample from its face-averaged fields.
//!
//! For a homogeneous layer, `P(0) = cos θ·P(t) − i z sin θ·U(t)` and
//! `U(0) = −(i/z) sin θ·P(t) + cos θ·U(t)` with `θ = n k₀ t`. Eliminating θ
//! gives `z² = (P(0)² − P(t)²)/(U(0)² − U(t)²)`; eliminating `z` gives
//! `cos θ = (P(0)U(0) + P(t)U(t))/(P(0)U(t) + P(t)U(0))`.

use num_complex::Complex64;

use super::{FieldState, RetrievalError};

// Relative size below which a denominator counts as vanishing.
const DEGENERATE: f64 = 1e-10;

/// `z1` with `Re z1 ≥ 0` (and `Im z1 ≥ 0` when the real part is exactly zero).
pub fn impedance_from_fields(w: &FieldState) -> Result<Complex64, RetrievalError> {
    let den = w.u1_0 * w.u1_0 - w.u1_t * w.u1_t;
    let scale = w.u1_0.norm_sqr() + w.u1_t.norm_sqr();
    if !(den.norm() > DEGENERATE * scale) {
        return Err(RetrievalError::DegenerateFields { quantity: "impedance" });
    }
    let z = ((w.p1_0 * w.p1_0 - w.p1_t * w.p1_t) / den).sqrt();
    Ok(passive_root(z))
}

/// Principal `arccos` of the field ratio, i.e. `θ = n k₀ t` up to sign and 2π.
pub fn principal_phase(w: &FieldState) -> Result<Complex64, RetrievalError> {
    let den = w.p1_0 * w.u1_t + w.p1_t * w.u1_0;
    let scale = w.p1_0.norm() * w.u1_t.norm() + w.p1_t.norm() * w.u1_0.norm();
    if !(den.norm() > DEGENERATE * scale) {
        return Err(RetrievalError::DegenerateFields { quantity: "index" });
    }
    let ratio = (w.p1_0 * w.u1_0 + w.p1_t * w.u1_t) / den;
    Ok(ratio.acos())
}

/// `n1 = (sign·arccos(ratio) + 2πm)/(k₀t)`.
pub fn index_from_fields(w: &FieldState, k0: f64, t: f64, branch: i32, sign: i8) -> Result<Complex64, RetrievalError> {
    let phase = principal_phase(w)?;
    Ok(index_from_phase(phase, k0 * t, branch, sign))
}

pub(crate) fn index_from_phase(phase: Complex64, k0t: f64, branch: i32, sign: i8) -> Complex64 {
    (f64::from(sign) * phase + 2.0 * std::f64::consts::PI * f64::from(branch)) / k0t
}

/// Principal square root already has `Re ≥ 0`; settle the imaginary axis.
pub(crate) fn passive_root(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im < 0.0 {
        -z
    } else {
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer_fields(z: f64, theta: f64) -> FieldState {
        let i = Complex64::i();
        let (pt, ut) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        FieldState {
            p1_0: theta.cos() * pt - i * z * theta.sin() * ut,
            p1_t: pt,
            u1_0: -i / z * theta.sin() * pt + theta.cos() * ut,
            u1_t: ut,
            ..FieldState::from_array([Complex64::new(0.0, 0.0); 8])
        }
    }

    #[test]
    fn single_layer_impedance_and_index() {
        let w = layer_fields(2.0, 1.5);
        let z = impedance_from_fields(&w).unwrap();
        assert!((z - 2.0).norm() < 1e-14);
        let n = index_from_fields(&w, 0.5, 1.0, 0, 1).unwrap();
        assert!((n - 3.0).norm() < 1e-14);
        let n = index_from_fields(&w, 0.5, 1.0, 1, 1).unwrap();
        assert!((n - (3.0 + 4.0 * std::f64::consts::PI)).norm() < 1e-13);
    }

    #[test]
    fn swapping_faces_keeps_impedance() {
        let w = layer_fields(2.0, 1.5);
        let swapped = FieldState {
            p1_0: w.p1_t,
            p1_t: w.p1_0,
            u1_0: w.u1_t,
            u1_t: w.u1_0,
            ..w
        };
        let (a, b) = (impedance_from_fields(&w).unwrap(), impedance_from_fields(&swapped).unwrap());
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn transparent_limit() {
        let one = Complex64::new(1.0, 0.0);
        let w = FieldState {
            p1_0: one,
            p1_t: one,
            u1_0: 0.3 * one,
            u1_t: 0.3 * one,
            ..FieldState::from_array([Complex64::new(0.0, 0.0); 8])
        };
        let n = index_from_fields(&w, 2.0, 0.1, 0, 1).unwrap();
        assert!(n.norm() < 1e-7);
        assert!(matches!(impedance_from_fields(&w), Err(RetrievalError::DegenerateFields { .. })));
    }

    #[test]
    fn imaginary_axis_root() {
        assert_eq!(passive_root(Complex64::new(0.0, -2.0)), Complex64::new(0.0, 2.0));
        assert_eq!(passive_root(Complex64::new(1.0, -2.0)), Complex64::new(1.0, -2.0));
    }
}
