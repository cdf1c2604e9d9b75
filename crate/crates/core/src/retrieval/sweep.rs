//! Frequency sweeps: per-point solves in parallel, then a sequential
//! continuity fold that fixes the inverse-cosine branch and sign.

use num_complex::Complex64;
use rayon::prelude::*;

use super::extract::{impedance_from_fields, index_from_phase, principal_phase};
use super::system::{assemble_system, solve_fields, SystemForm};
use super::transfer::transfer_matrix_from_tr;
use super::{Diagnostics, FieldState, Flags, GapProperties, RetrievalError, RetrievedProperties, ScatteringData};
use crate::geometry::{DuctGeometry, MediumProperties};
use crate::modal::{CouplingConfig, CouplingModel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetrievalConfig {
    pub coupling: CouplingConfig,
    pub form: SystemForm,
    /// Branch number assumed at the lowest frequency. 0 is right whenever
    /// the sample is thinner than half a wavelength there.
    pub branch_seed: i32,
    pub allow_above_cutoff: bool,
}

impl Default for RetrievalConfig {
    fn default() -> Self {
        Self {
            coupling: CouplingConfig::default(),
            form: SystemForm::Consistent,
            branch_seed: 0,
            allow_above_cutoff: false,
        }
    }
}

/// Branch-free result at one frequency.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PointEstimate {
    pub frequency: f64,
    pub k0t: f64,
    /// Principal arccos, `None` where the closed form is singular.
    pub phase: Option<Complex64>,
    pub z: Option<Complex64>,
    pub diagnostics: Diagnostics,
    pub above_cutoff: bool,
}

pub(crate) fn validate_sweep(data: &[ScatteringData]) -> Result<(), RetrievalError> {
    if data.is_empty() {
        return Err(RetrievalError::EmptySweep);
    }
    for (index, pair) in data.windows(2).enumerate() {
        if !(pair[1].frequency > pair[0].frequency) {
            return Err(RetrievalError::NonMonotone {
                index: index + 1,
                frequency: pair[1].frequency,
            });
        }
    }
    Ok(())
}

/// Retrieves `n1`, `z1` at every frequency of a measured sweep.
pub fn retrieve_sweep(
    data: &[ScatteringData],
    geometry: &DuctGeometry,
    medium: &MediumProperties,
    config: &RetrievalConfig,
) -> Result<Vec<RetrievedProperties>, RetrievalError> {
    validate_sweep(data)?;
    let cutoff = geometry.first_cutoff(medium);
    if !config.allow_above_cutoff {
        if let Some(d) = data.iter().find(|d| d.frequency >= cutoff) {
            return Err(RetrievalError::AboveCutoff {
                frequency: d.frequency,
                cutoff,
            });
        }
    }
    let model = CouplingModel::new(geometry, config.coupling)?;
    let gap = GapProperties::new(geometry, medium);
    let points = data
        .par_iter()
        .map(|d| {
            let m = transfer_matrix_from_tr(d, medium)?;
            let coupling = model.coefficients(medium, d.frequency)?;
            let system = assemble_system(&m, geometry, medium, &gap, &coupling, config.form);
            let (w, solve) = solve_fields(&system)?;
            let fields = FieldState::from_array(w.into());
            Ok(PointEstimate {
                frequency: d.frequency,
                k0t: medium.wavenumber(d.frequency) * geometry.t,
                phase: principal_phase(&fields).ok(),
                z: impedance_from_fields(&fields).ok(),
                diagnostics: Diagnostics {
                    condition: solve.condition,
                    residual: solve.residual,
                    modal_convergence: coupling.convergence,
                },
                above_cutoff: coupling.above_cutoff,
            })
        })
        .collect::<Result<Vec<_>, RetrievalError>>()?;
    unwrap_branches(&points, config.branch_seed)
}

/// Sign for the seed point: prefer `Re n ≥ 0` and `Im n ≥ 0`, then `Re n ≥ 0`.
fn seed_sign(phase: Complex64, k0t: f64, branch: i32) -> i8 {
    let candidates = [1_i8, -1];
    let n = |s| index_from_phase(phase, k0t, branch, s);
    // rounding-level parts count as zero (a purely evanescent phase has Re n ≈ ±1e-16)
    let nonneg = |v: f64, s| v >= -1e-12 * n(s).norm();
    candidates
        .iter()
        .copied()
        .find(|&s| nonneg(n(s).re, s) && nonneg(n(s).im, s))
        .or_else(|| candidates.iter().copied().find(|&s| nonneg(n(s).re, s)))
        .unwrap_or(1)
}

pub(crate) fn unwrap_branches(points: &[PointEstimate], seed: i32) -> Result<Vec<RetrievedProperties>, RetrievalError> {
    if points.iter().all(|p| p.phase.is_none()) || points.iter().all(|p| p.z.is_none()) {
        return Err(RetrievalError::AllDegenerate);
    }
    // (n, branch, sign) where the index is resolved
    let mut resolved: Vec<Option<(Complex64, i32, i8)>> = vec![None; points.len()];
    let mut previous: Option<(Complex64, i32)> = None;
    for (slot, p) in resolved.iter_mut().zip(points) {
        let Some(phase) = p.phase else { continue };
        let choice = match previous {
            None => {
                let s = seed_sign(phase, p.k0t, seed);
                (index_from_phase(phase, p.k0t, seed, s), seed, s)
            }
            Some((n_prev, m_prev)) => {
                let mut best: Option<(f64, Complex64, i32, i8)> = None;
                for m in m_prev - 2..=m_prev + 2 {
                    for s in [1_i8, -1] {
                        let n = index_from_phase(phase, p.k0t, m, s);
                        let jump = (n - n_prev).norm();
                        if best.is_none_or(|b| jump < b.0) {
                            best = Some((jump, n, m, s));
                        }
                    }
                }
                let (_, n, m, s) = best.expect("candidate set is non-empty");
                (n, m, s)
            }
        };
        previous = Some((choice.0, choice.1));
        *slot = Some(choice);
    }
    let freqs: Vec<f64> = points.iter().map(|p| p.frequency).collect();
    let n_values: Vec<Option<Complex64>> = resolved.iter().map(|r| r.map(|v| v.0)).collect();
    let z_values: Vec<Option<Complex64>> = points.iter().map(|p| p.z).collect();
    let single = points.len() == 1;
    Ok(points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let (branch, sign) = resolved[i]
                .or_else(|| nearest(&resolved, i))
                .map(|v| (v.1, v.2))
                .unwrap_or((seed, 1));
            RetrievedProperties {
                frequency: p.frequency,
                n1: fill(&n_values, &freqs, i),
                z1: fill(&z_values, &freqs, i),
                branch,
                sign,
                diagnostics: p.diagnostics,
                flags: Flags {
                    interpolated: resolved[i].is_none() || p.z.is_none(),
                    above_cutoff: p.above_cutoff,
                    branch_undetermined: single,
                },
            }
        })
        .collect())
}

fn nearest<T: Copy>(values: &[Option<T>], i: usize) -> Option<T> {
    let before = values[..i].iter().rev().flatten().next();
    let after = values[i + 1..].iter().flatten().next();
    before.or(after).copied()
}

/// Value at `i`, or linear interpolation in frequency between the nearest
/// defined neighbours (nearest value at the ends of the sweep).
fn fill(values: &[Option<Complex64>], freqs: &[f64], i: usize) -> Complex64 {
    if let Some(v) = values[i] {
        return v;
    }
    let before = (0..i).rev().find(|&j| values[j].is_some());
    let after = (i + 1..values.len()).find(|&j| values[j].is_some());
    match (before, after) {
        (Some(a), Some(b)) => {
            let w = (freqs[i] - freqs[a]) / (freqs[b] - freqs[a]);
            values[a].unwrap() * (1.0 - w) + values[b].unwrap() * w
        }
        (Some(a), None) => values[a].unwrap(),
        (None, Some(b)) => values[b].unwrap(),
        (None, None) => unreachable!("checked that some value is defined"),
    }
}
