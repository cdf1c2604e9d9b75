//! Oracles shared by the integration tests, independent of the library.

#![allow(dead_code, clippy::too_many_arguments)]

/// J0 from its integral representation (1/π)∫₀^π cos(x sin θ) dθ; the
/// trapezoid rule is spectrally accurate for this periodic integrand.
pub fn j0_integral(x: f64) -> f64 {
    let m = 64 + 2 * x.abs() as usize;
    let h = std::f64::consts::PI / m as f64;
    let mut s = 0.5 * (1.0 + 1.0);
    for i in 1..m {
        s += (x * (i as f64 * h).sin()).cos();
    }
    s * h / std::f64::consts::PI
}

pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// ∫_a^b J0(kr) r dr by quadrature of the independent J0.
pub fn quadrature(k: f64, a: f64, b: f64) -> f64 {
    adaptive_simpson(&|r| j0_integral(k * r) * r, a, b, 1e-15 * b * b)
}
