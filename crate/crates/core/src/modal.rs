//! Rigid-duct eigenmodes, the interface Green's function and the eight
//! radiation-coupling coefficients A–H.
//!
//! The Green's function at a tube cross-section is the modal sum
//!
//! ```text
//! G(r, r0) = Σₙ φₙ(r) φₙ(r0) / (−iπ r₂² βₙ),   φₙ(r) = J₀(kₙ r) / J₀(kₙ r₂),
//! ```
//!
//! with kₙ = xₙ/r₂ (xₙ the roots of J₁, x₀ = 0) and βₙ = √(k₀² − kₙ²). The
//! crate uses the e^{−iωt} time convention, so evanescent modes take
//! βₙ = +i√(kₙ² − k₀²) and decay away from the interface on both sides.
//!
//! A coefficient pairs a receiver region with a source region (disk `0..r1`
//! or gap `r1..r2`). Because each face velocity is uniform over its region,
//! the double integrals factor into products of one-dimensional radial
//! integrals `∫ φₙ(r) r dr`, which have a closed form through J₁.

use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::{DuctGeometry, MediumProperties};
use crate::specfun::{self, BesselRootTable, SpecfunError};

pub use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModalError {
    #[error("need at least one mode, got {0}")]
    NoModes(usize),
    #[error("mode index {index} outside basis of {modes} modes")]
    ModeIndex { index: usize, modes: usize },
    #[error("radius {r} lies outside the duct (0..={r2})")]
    OutsideDuct { r: f64, r2: f64 },
    #[error("frequency must be positive and finite, got {0}")]
    Frequency(f64),
    #[error("modal sum not converged at {frequency} Hz: relative change {change:.3e} exceeds {tolerance:.1e}")]
    NotConverged { frequency: f64, change: f64, tolerance: f64 },
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

/// Radial eigen-wavenumbers of a rigid circular duct.
#[derive(Debug, Clone)]
pub struct ModalBasis {
    geometry: DuctGeometry,
    roots: BesselRootTable,
    wavenumbers: Vec<f64>,
    wall_values: Vec<f64>,
}

/// Builds the first `modes` axisymmetric modes (plane wave included).
pub fn duct_wavenumbers(geometry: &DuctGeometry, modes: usize) -> Result<ModalBasis, ModalError> {
    if modes < 1 {
        return Err(ModalError::NoModes(modes));
    }
    let roots = specfun::j1_roots(modes)?;
    let wavenumbers = roots.roots().iter().map(|x| x / geometry.r2).collect();
    let wall_values = roots.roots().iter().map(|&x| specfun::j0(x)).collect();
    Ok(ModalBasis {
        geometry: *geometry,
        roots,
        wavenumbers,
        wall_values,
    })
}

impl ModalBasis {
    pub fn geometry(&self) -> &DuctGeometry {
        &self.geometry
    }

    pub fn modes(&self) -> usize {
        self.wavenumbers.len()
    }

    pub fn roots(&self) -> &BesselRootTable {
        &self.roots
    }

    /// kₙ in 1/m; `wavenumbers()[0] == 0`.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    /// Cut-on frequency of mode `n`, Hz.
    pub fn cutoff_frequency(&self, n: usize, medium: &MediumProperties) -> f64 {
        self.wavenumbers[n] * medium.c0 / (2.0 * std::f64::consts::PI)
    }

    /// Cut-on frequency of the first non-planar mode, if the basis has one.
    pub fn first_cutoff(&self, medium: &MediumProperties) -> Option<f64> {
        (self.modes() > 1).then(|| self.cutoff_frequency(1, medium))
    }

    /// βₙ = √(k₀² − kₙ²): positive real when propagating, +i·√(kₙ² − k₀²) when evanescent.
    pub fn axial_wavenumber(&self, n: usize, k0: f64) -> Complex64 {
        axial(self.wavenumbers[n], k0)
    }

    pub fn is_propagating(&self, n: usize, k0: f64) -> bool {
        self.wavenumbers[n] < k0
    }

    /// Mode shape φₙ(r) = J₀(kₙ r)/J₀(kₙ r₂), normalised to 1 at the wall.
    pub fn eigenmode(&self, n: usize, r: f64) -> Result<f64, ModalError> {
        eigenmode(n, r, self)
    }

    /// `∫ₐᵇ φₙ(r) r dr`.
    pub fn mode_integral(&self, n: usize, a: f64, b: f64) -> f64 {
        radial_integral(self.wavenumbers[n], a, b) / self.wall_values[n]
    }
}

fn axial(kn: f64, k0: f64) -> Complex64 {
    let d = k0 * k0 - kn * kn;
    if d >= 0.0 {
        Complex64::new(d.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-d).sqrt())
    }
}

pub fn eigenmode(n: usize, r: f64, basis: &ModalBasis) -> Result<f64, ModalError> {
    if n >= basis.modes() {
        return Err(ModalError::ModeIndex {
            index: n,
            modes: basis.modes(),
        });
    }
    let r2 = basis.geometry.r2;
    if !(0.0..=r2).contains(&r) {
        return Err(ModalError::OutsideDuct { r, r2 });
    }
    Ok(specfun::j0(basis.wavenumbers[n] * r) / basis.wall_values[n])
}

/// `∫ₐᵇ J₀(k r) r dr = [r J₁(k r)/k]ₐᵇ`, or `(b² − a²)/2` for the plane wave.
pub fn radial_integral(k: f64, a: f64, b: f64) -> f64 {
    debug_assert!(0.0 <= a && a < b, "radial_integral needs 0 <= a < b");
    if k == 0.0 {
        return 0.5 * (b - a) * (b + a);
    }
    (b * specfun::j1(k * b) - a * specfun::j1(k * a)) / k
}

/// How the modal sum is closed beyond the last explicit mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailModel {
    /// Plain truncation after `modes` terms.
    Truncated,
    /// Continues the sum with McMahon-estimated roots up to 40×`modes`, then
    /// closes it with an Euler–Maclaurin estimate of the remainder.
    #[default]
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConfig {
    /// Number of explicit modes, plane wave included.
    pub modes: usize,
    /// Largest accepted relative change between `modes/2` and `modes` terms.
    pub tolerance: f64,
    pub tail: TailModel,
}

impl Default for CouplingConfig {
    fn default() -> Self {
        Self {
            modes: 64,
            tolerance: 1e-8,
            tail: TailModel::Asymptotic,
        }
    }
}

impl CouplingConfig {
    /// Plane wave only, no tail: A = B = C = D = −ρ₀c₀/S₂.
    pub fn plane_wave() -> Self {
        Self {
            modes: 1,
            tolerance: f64::INFINITY,
            tail: TailModel::Truncated,
        }
    }
}

/// Radiation-coupling impedances (Pa·s/m³) between the disk and gap regions
/// of the sample faces. `a..d` belong to the x = 0 face, `e..h` to x = t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub e: Complex64,
    pub f: Complex64,
    pub g: Complex64,
    pub h: Complex64,
    pub frequency: f64,
    pub modes: usize,
    /// Max relative change of the eight values between `modes/2` and `modes`.
    pub convergence: Option<f64>,
    /// Set when the frequency is above the first duct cut-on.
    pub above_cutoff: bool,
}

impl CouplingCoefficients {
    pub fn as_array(&self) -> [Complex64; 8] {
        [self.a, self.b, self.c, self.d, self.e, self.f, self.g, self.h]
    }
}

// Last tail term, as a multiple of the explicit mode count.
const TAIL_SPAN: usize = 40;

/// Root n of J₁ from McMahon's expansion; below 1e-14 relative for n ≥ 8.
fn mcmahon_root(n: usize) -> f64 {
    let b = (n as f64 + 0.25) * std::f64::consts::PI;
    let b2 = b * b;
    b - 3.0 / (8.0 * b) + 3.0 / (128.0 * b * b2) - 1179.0 / (5120.0 * b * b2 * b2)
}

/// Geometry-dependent part of the coupling computation, reusable across a sweep.
#[derive(Debug, Clone)]
pub struct CouplingModel {
    basis: ModalBasis,
    disk: Vec<f64>,
    gap: Vec<f64>,
    // (kₙ, (∫φₙ r dr over the disk)²) for the tail modes n ≥ modes/2
    tail: Vec<(f64, f64)>,
    config: CouplingConfig,
}

impl CouplingModel {
    pub fn new(geometry: &DuctGeometry, config: CouplingConfig) -> Result<Self, ModalError> {
        let basis = duct_wavenumbers(geometry, config.modes)?;
        let (r1, r2) = (geometry.r1, geometry.r2);
        let disk = (0..basis.modes()).map(|n| basis.mode_integral(n, 0.0, r1)).collect();
        let gap = (0..basis.modes()).map(|n| basis.mode_integral(n, r1, r2)).collect();
        let tail = match config.tail {
            TailModel::Truncated => Vec::new(),
            TailModel::Asymptotic => {
                let first = (basis.modes() / 2).max(1);
                (first..TAIL_SPAN * basis.modes())
                    .map(|n| {
                        let x = mcmahon_root(n);
                        let k = x / r2;
                        let i = r1 * specfun::j1(k * r1) / (k * specfun::j0(x));
                        (k, i * i)
                    })
                    .collect()
            }
        };
        Ok(Self {
            basis,
            disk,
            gap,
            tail,
            config,
        })
    }

    pub fn basis(&self) -> &ModalBasis {
        &self.basis
    }

    pub fn config(&self) -> &CouplingConfig {
        &self.config
    }

    pub fn coefficients(&self, medium: &MediumProperties, frequency: f64) -> Result<CouplingCoefficients, ModalError> {
        if !(frequency.is_finite() && frequency > 0.0) {
            return Err(ModalError::Frequency(frequency));
        }
        let k0 = medium.wavenumber(frequency);
        let full = self.assemble(medium, frequency, k0, self.basis.modes());
        let convergence = (self.basis.modes() >= 2).then(|| {
            let half = self.assemble(medium, frequency, k0, self.basis.modes() / 2);
            full.iter()
                .zip(half.iter())
                .map(|(x, y)| (x - y).norm() / x.norm())
                .fold(0.0, f64::max)
        });
        if let Some(change) = convergence {
            if change > self.config.tolerance {
                return Err(ModalError::NotConverged {
                    frequency,
                    change,
                    tolerance: self.config.tolerance,
                });
            }
        }
        let g = &self.basis.geometry;
        Ok(CouplingCoefficients {
            a: full[0],
            b: full[1],
            c: full[2],
            d: full[3],
            e: -full[0],
            f: -full[1],
            g: -full[2],
            h: -full[3],
            frequency,
            modes: self.basis.modes(),
            convergence,
            above_cutoff: frequency >= g.first_cutoff(medium),
        })
    }

    /// A, B, C, D from the first `upto` modes (plus tail, if configured).
    fn assemble(&self, medium: &MediumProperties, frequency: f64, k0: f64, upto: usize) -> [Complex64; 4] {
        let g = &self.basis.geometry;
        let r2sq = g.r2 * g.r2;
        let mut sums = [Complex64::new(0.0, 0.0); 3];
        for n in 0..upto {
            let den = Complex64::new(0.0, -std::f64::consts::PI * r2sq) * self.basis.axial_wavenumber(n, k0);
            sums[0] += self.disk[n] * self.disk[n] / den;
            sums[1] += self.disk[n] * self.gap[n] / den;
            sums[2] += self.gap[n] * self.gap[n] / den;
        }
        if self.config.tail == TailModel::Asymptotic {
            let t = self.tail(upto, k0);
            sums[0] += t;
            sums[1] -= t;
            sums[2] += t;
        }
        let omega = 2.0 * std::f64::consts::PI * frequency;
        let pre = Complex64::new(0.0, 4.0 * medium.rho0 * omega);
        let disk_norm = g.r1 * g.r1;
        let gap_norm = (g.r2 - g.r1) * (g.r2 + g.r1);
        [
            pre * sums[0] / (disk_norm * disk_norm),
            pre * sums[1] / (disk_norm * gap_norm),
            pre * sums[1] / (gap_norm * disk_norm),
            pre * sums[2] / (gap_norm * gap_norm),
        ]
    }

    /// Σ_{n ≥ from} of the disk/disk term beyond the explicit modes. For
    /// n ≥ 1 the gap integral is minus the disk integral, so the same sum
    /// serves all three pairings. The span ends at `TAIL_SPAN·from`, so the
    /// doubling check also sees the change in the closing remainder.
    fn tail(&self, from: usize, k0: f64) -> Complex64 {
        let g = &self.basis.geometry;
        let (r1, r2) = (g.r1, g.r2);
        let pi = std::f64::consts::PI;
        let from = from.max(1);
        let first = (self.basis.modes() / 2).max(1);
        let last = TAIL_SPAN * from;
        let den0 = Complex64::new(0.0, -pi * r2 * r2);
        let sum: Complex64 = self.tail[from - first..last - first]
            .iter()
            .map(|&(k, amp)| amp / (den0 * axial(k, k0)))
            .sum();
        // Remainder from the non-oscillating leading-order amplitude
        // r₁r₂/(2kₙ²) with βₙ ≈ i kₙ and kₙ ≈ (n + 1/4)π/r₂.
        let c = last as f64 + 0.25;
        let zeta3 = 1.0 / (2.0 * c * c) + 1.0 / (2.0 * c * c * c) + 1.0 / (4.0 * c.powi(4));
        let rem = r1 / (2.0 * pi * r2) * (r2 / pi).powi(3) * zeta3;
        sum + rem
    }
}

/// One-shot evaluation of A–H; prefer [`CouplingModel`] inside sweeps.
pub fn coupling_coefficients(
    geometry: &DuctGeometry,
    medium: &MediumProperties,
    frequency: f64,
    config: &CouplingConfig,
) -> Result<CouplingCoefficients, ModalError> {
    CouplingModel::new(geometry, *config)?.coefficients(medium, frequency)
}
