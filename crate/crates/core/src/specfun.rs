//! Cylindrical Bessel functions of orders 0 and 1, and the positive roots of J₁.
//!
//! Three evaluation regimes are used for `|x|`:
//!
//! * `|x| <= SERIES_LIMIT` (2.0): ascending power series. All terms are bounded
//!   by 1 so there is no cancellation.
//! * `SERIES_LIMIT < |x| < ASYMPTOTIC_LIMIT` (25.0): Miller backward recurrence,
//!   normalised with `J₀ + 2 Σ J₂ₖ = 1`.
//! * `|x| >= ASYMPTOTIC_LIMIT`: Hankel asymptotic expansion, summed until the
//!   terms stop shrinking (at x = 25 the smallest term is ~e⁻⁵⁰).
//!
//! The roots of J₁ are the rigid-wall radial eigenvalues of a circular duct
//! (J₀′ = −J₁), with x₀ = 0 standing in for the plane-wave mode.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use thiserror::Error;

/// Upper end of the power-series regime.
pub const SERIES_LIMIT: f64 = 2.0;
/// Lower end of the asymptotic regime.
pub const ASYMPTOTIC_LIMIT: f64 = 25.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("Bessel argument must be finite, got {0}")]
    NonFinite(f64),
    #[error("root table needs at least one entry, got {0}")]
    EmptyTable(usize),
    #[error("failed to bracket root {index} of J1 near {estimate}")]
    Bracket { index: usize, estimate: f64 },
}

/// J₀(x). Even in `x`.
pub fn bessel_j0(x: f64) -> Result<f64, SpecfunError> {
    if !x.is_finite() {
        return Err(SpecfunError::NonFinite(x));
    }
    Ok(j0(x))
}

/// J₁(x). Odd in `x`.
pub fn bessel_j1(x: f64) -> Result<f64, SpecfunError> {
    if !x.is_finite() {
        return Err(SpecfunError::NonFinite(x));
    }
    Ok(j1(x))
}

/// Unchecked J₀ for internal callers that already hold finite arguments.
pub(crate) fn j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_LIMIT {
        series(ax, 0)
    } else if ax < ASYMPTOTIC_LIMIT {
        miller(ax).0
    } else {
        hankel(ax, 0)
    }
}

/// Unchecked J₁.
pub(crate) fn j1(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= SERIES_LIMIT {
        series(ax, 1)
    } else if ax < ASYMPTOTIC_LIMIT {
        miller(ax).1
    } else {
        hankel(ax, 1)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

fn series(x: f64, order: u32) -> f64 {
    let q = -0.25 * x * x;
    let mut term = if order == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + order as f64));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || k > 60.0 {
            break;
        }
        k += 1.0;
    }
    sum
}

/// Backward recurrence J_{k-1} = (2k/x) J_k − J_{k+1}; returns (J₀, J₁).
fn miller(x: f64) -> (f64, f64) {
    let mut start = (x + 20.0 + 8.0 * x.sqrt()) as usize;
    start += start % 2;
    let mut above = 0.0_f64;
    let mut current = 1e-30_f64;
    let mut norm = 0.0_f64;
    let mut j1v = 0.0;
    let mut k = start;
    while k > 0 {
        let below = 2.0 * k as f64 / x * current - above;
        above = current;
        current = below;
        k -= 1;
        if k == 1 {
            j1v = current;
        }
        if k % 2 == 0 && k > 0 {
            norm += 2.0 * current;
        }
        if current.abs() > 1e250 {
            current *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
            j1v *= 1e-250;
        }
    }
    norm += current;
    (current / norm, j1v / norm)
}

fn hankel(x: f64, order: u32) -> f64 {
    let mu = 4.0 * (order * order) as f64;
    let z = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut last = f64::INFINITY;
    let mut k = 1_u32;
    while k < 200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * z);
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
        k += 1;
    }
    let (s, c) = x.sin_cos();
    // cos/sin of x − (order/2 + 1/4)π without forming the shifted phase
    let (cos_chi, sin_chi) = if order == 0 {
        ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2)
    } else {
        ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2)
    };
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// Roots of J₁ with the plane-wave eigenvalue x₀ = 0 prepended.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselRootTable {
    roots: Vec<f64>,
}

impl BesselRootTable {
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn count(&self) -> usize {
        self.roots.len()
    }

    pub fn get(&self, n: usize) -> Option<f64> {
        self.roots.get(n).copied()
    }
}

/// First `count` eigenvalues: 0 followed by the first `count − 1` positive roots of J₁.
///
/// Each root is bracketed around McMahon's estimate (n + 1/4)π, bisected to
/// machine resolution and polished with one Newton step.
pub fn j1_roots(count: usize) -> Result<BesselRootTable, SpecfunError> {
    if count < 1 {
        return Err(SpecfunError::EmptyTable(count));
    }
    let mut roots = Vec::with_capacity(count);
    roots.push(0.0);
    for n in 1..count {
        let estimate = (n as f64 + 0.25) * PI;
        let (mut lo, mut hi) = (estimate - 0.6, estimate + 0.4);
        let mut f_lo = j1(lo);
        if f_lo * j1(hi) > 0.0 {
            return Err(SpecfunError::Bracket { index: n, estimate });
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let f_mid = j1(mid);
            if f_mid == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if f_lo * f_mid < 0.0 {
                hi = mid;
            } else {
                lo = mid;
                f_lo = f_mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        // J₁′(x) = J₀(x) − J₁(x)/x
        let slope = j0(x) - j1(x) / x;
        if slope != 0.0 {
            let polished = x - j1(x) / slope;
            if j1(polished).abs() <= j1(x).abs() {
                x = polished;
            }
        }
        roots.push(x);
    }
    Ok(BesselRootTable { roots })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_values() {
        assert_eq!(bessel_j0(0.0).unwrap(), 1.0);
        assert_eq!(bessel_j1(0.0).unwrap(), 0.0);
    }

    #[test]
    fn non_finite_is_rejected() {
        assert!(matches!(bessel_j0(f64::NAN), Err(SpecfunError::NonFinite(_))));
        assert!(matches!(bessel_j1(f64::INFINITY), Err(SpecfunError::NonFinite(_))));
    }

    #[test]
    fn symmetry() {
        for &x in &[0.3, 2.5, 11.0, 40.0] {
            assert_eq!(j0(-x), j0(x));
            assert_eq!(j1(-x), -j1(x));
        }
    }

    #[test]
    fn continuous_across_crossovers() {
        let x = SERIES_LIMIT;
        assert!((series(x, 0) - miller(x).0).abs() < 1e-13);
        assert!((series(x, 1) - miller(x).1).abs() < 1e-13);
        let x = ASYMPTOTIC_LIMIT;
        assert!((miller(x).0 - hankel(x, 0)).abs() < 1e-13);
        assert!((miller(x).1 - hankel(x, 1)).abs() < 1e-13);
    }

    #[test]
    fn small_tables() {
        assert_eq!(j1_roots(1).unwrap().roots(), &[0.0]);
        let t = j1_roots(2).unwrap();
        assert!((t.roots()[1] - 3.8317059702).abs() < 1e-9);
        assert!(matches!(j1_roots(0), Err(SpecfunError::EmptyTable(0))));
    }

    #[test]
    fn large_table_is_ordered() {
        let t = j1_roots(2000).unwrap();
        for w in t.roots().windows(2) {
            assert!(w[1] - w[0] > 2.0);
        }
        for &x in &t.roots()[1..] {
            assert!(j1(x).abs() < 1e-12);
        }
    }
}
