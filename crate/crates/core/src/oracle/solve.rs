//! Finite-volume assembly and the direct solve.
//!
//! Per cell (i, j) with volume weight `r_j·dr·dx` (the 2π cancels):
//!
//! ```text
//! Σ_faces c_f (p_nb − p) + s_x ω²/κ r_j dr dx p = f
//! c_axial  = r_j dr / (s_x(face) ρ_face dx)
//! c_radial = s_x(cell) dx r_face / (ρ_face dr)
//! ```
//!
//! with the PML stretch `s_x = 1 + iσ(x)/ω` and `ρ_face` the arithmetic mean
//! of the two cell densities (harmonic mean of 1/ρ). The axis face has
//! `r = 0` and so carries no flux; the outer wall and the sleeve faces are
//! simply left out.

use std::io::Write;

use num_complex::Complex64;

use super::banded::BandMatrix;
use super::ports::PortRecord;
use super::scene::{Side, SimGrid};
use super::OracleError;

const MAX_RESIDUAL: f64 = 1e-9;

struct Operator {
    nr: usize,
    diag: Vec<Complex64>,
    /// Coupling of (i, j) to (i + 1, j).
    axial: Vec<Complex64>,
    /// Coupling of (i, j) to (i, j + 1).
    radial: Vec<Complex64>,
}

impl Operator {
    fn apply(&self, p: &[Complex64]) -> Vec<Complex64> {
        let nr = self.nr;
        let n = p.len();
        let mut out: Vec<Complex64> = self.diag.iter().zip(p).map(|(d, v)| d * v).collect();
        for k in 0..n {
            if k + nr < n {
                let c = self.axial[k];
                out[k] += c * p[k + nr];
                out[k + nr] += c * p[k];
            }
            if (k + 1) % nr != 0 {
                let c = self.radial[k];
                out[k] += c * p[k + 1];
                out[k + 1] += c * p[k];
            }
        }
        out
    }
}

fn stretch(grid: &SimGrid, x_cells: f64, omega: f64) -> Complex64 {
    // x_cells: position in units of dx from the left end of the grid
    let pml = grid.pml_cells as f64;
    let right = (grid.nx - grid.pml_cells) as f64;
    let depth = if x_cells < pml {
        pml - x_cells
    } else if x_cells > right {
        x_cells - right
    } else {
        return Complex64::new(1.0, 0.0);
    };
    let length = pml * grid.dx;
    let sigma_max = -grid.pml_reflection.ln() * 3.0 * grid.medium.c0 / (2.0 * length);
    let sigma = sigma_max * (depth / pml).powi(2);
    Complex64::new(1.0, sigma / omega)
}

fn assemble(grid: &SimGrid, omega: f64) -> (Operator, Vec<Complex64>) {
    let (nx, nr, dx, dr) = (grid.nx, grid.nr, grid.dx, grid.dr);
    let n = nx * nr;
    let rho0 = Complex64::new(grid.medium.rho0, 0.0);
    let kappa0 = Complex64::new(grid.medium.bulk_modulus(), 0.0);
    let props = |i: usize, j: usize| {
        if grid.in_sample(i, j) {
            (grid.sample_density, grid.sample_modulus)
        } else {
            (rho0, kappa0)
        }
    };
    let mut diag = vec![Complex64::new(0.0, 0.0); n];
    let mut axial = vec![Complex64::new(0.0, 0.0); n];
    let mut radial = vec![Complex64::new(0.0, 0.0); n];
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    let sleeve_span = grid.sample_start..grid.sample_start + grid.sample_cells;
    for i in 0..nx {
        let s_cell = stretch(grid, i as f64 + 0.5, omega);
        let s_face = stretch(grid, i as f64 + 1.0, omega);
        for j in 0..nr {
            let k = i * nr + j;
            let r = grid.r_center(j);
            let (rho, kappa) = props(i, j);
            diag[k] += s_cell * omega * omega / kappa * r * dr * dx;
            if i + 1 < nx {
                let rho_face = 0.5 * (rho + props(i + 1, j).0);
                let c = r * dr / (s_face * rho_face * dx);
                axial[k] = c;
                diag[k] -= c;
                diag[k + nr] -= c;
            }
            let blocked = grid.sleeve && j + 1 == grid.sleeve_face && sleeve_span.contains(&i);
            if j + 1 < nr && !blocked {
                let rho_face = 0.5 * (rho + props(i, j + 1).0);
                let c = s_cell * dx * (j + 1) as f64 * dr / (rho_face * dr);
                radial[k] = c;
                diag[k] -= c;
                diag[k + 1] -= c;
            }
            if i == grid.source_cell {
                rhs[k] = -s_cell * r * dr * dx;
            }
        }
    }
    (Operator { nr, diag, axial, radial }, rhs)
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Complex pressure on the grid for one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureField {
    pub frequency: f64,
    pub nx: usize,
    pub nr: usize,
    /// Row-major over (axial, radial) cells.
    pub values: Vec<Complex64>,
    pub residual: f64,
}

impl PressureField {
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.nr + j]
    }

    /// Area average over the cross-section at axial cell `i`. Higher duct
    /// modes have zero mean, so this is the plane-wave amplitude.
    pub fn cross_section_average(&self, grid: &SimGrid, i: usize) -> Complex64 {
        let (mut num, mut den) = (Complex64::new(0.0, 0.0), 0.0);
        for j in 0..self.nr {
            let r = grid.r_center(j);
            num += self.at(i, j) * r;
            den += r;
        }
        num / den
    }

    /// Microphone pressures, positions in the frame of the excited side.
    pub fn port_record(&self, grid: &SimGrid) -> PortRecord {
        let omega = 2.0 * std::f64::consts::PI * self.frequency;
        let kd = omega / grid.medium.c0 * grid.dx;
        // exact wavenumber of the discrete second difference
        let wavenumber = (1.0 - 0.5 * kd * kd).acos() / grid.dx;
        let t = grid.thickness();
        let [a, b, c, d] = grid.mic_cells;
        let (cells, mirror) = match grid.excitation {
            Side::Upstream => ([a, b, c], false),
            Side::Downstream => ([d, c, b], true),
        };
        let positions = cells.map(|i| {
            let x = grid.x_center(i);
            if mirror {
                t - x
            } else {
                x
            }
        });
        PortRecord {
            frequency: self.frequency,
            wavenumber,
            thickness: t,
            positions,
            pressures: cells.map(|i| self.cross_section_average(grid, i)),
            above_cutoff: self.frequency >= grid.first_cutoff(),
        }
    }

    /// Face-averaged pressures and volume velocities of the sample disk (1)
    /// and the gap (2) on both faces, in the order
    /// `[P1(0), P2(0), P1(t), P2(t), U1(0), U2(0), U1(t), U2(t)]`.
    pub fn face_averages(&self, grid: &SimGrid) -> [Complex64; 8] {
        let omega = 2.0 * std::f64::consts::PI * self.frequency;
        let rho = |i: usize, j: usize| {
            if grid.in_sample(i, j) {
                grid.sample_density
            } else {
                Complex64::new(grid.medium.rho0, 0.0)
            }
        };
        let face = |left: usize, cols: std::ops::Range<usize>| {
            let (mut p, mut u, mut w) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 0.0);
            for j in cols {
                let (ra, rb) = (rho(left, j), rho(left + 1, j));
                let (pa, pb) = (self.at(left, j), self.at(left + 1, j));
                let weight = grid.r_center(j) * grid.dr;
                // continuity of p and of the flux (1/ρ)∂p/∂x across the face
                p += (rb * pa + ra * pb) / (ra + rb) * weight;
                let grad = 2.0 / (ra + rb) * (pb - pa) / grid.dx;
                u += grad / (Complex64::i() * omega) * 2.0 * std::f64::consts::PI * weight;
                w += weight;
            }
            (p / w, u)
        };
        let (j1, nr) = (grid.sleeve_face, grid.nr);
        let entry = grid.sample_start - 1;
        let exit = grid.sample_start + grid.sample_cells - 1;
        let (p10, u10) = face(entry, 0..j1);
        let (p20, u20) = face(entry, j1..nr);
        let (p1t, u1t) = face(exit, 0..j1);
        let (p2t, u2t) = face(exit, j1..nr);
        [p10, p20, p1t, p2t, u10, u20, u1t, u2t]
    }

    /// Writes `x, r, re, im` rows for every cell.
    pub fn write_csv<W: Write>(&self, grid: &SimGrid, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "r", "re_p", "im_p"])?;
        for i in 0..self.nx {
            for j in 0..self.nr {
                let p = self.at(i, j);
                w.write_record([
                    format!("{:.16e}", grid.x_center(i)),
                    format!("{:.16e}", grid.r_center(j)),
                    format!("{:.16e}", p.re),
                    format!("{:.16e}", p.im),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Solves the scene at `frequency` and returns the full pressure field.
pub fn solve_field(grid: &SimGrid, frequency: f64) -> Result<PressureField, OracleError> {
    if !(frequency.is_finite() && frequency > 0.0) {
        return Err(OracleError::Frequency(frequency));
    }
    let omega = 2.0 * std::f64::consts::PI * frequency;
    let (op, rhs) = assemble(grid, omega);
    let nr = grid.nr;
    let n = op.diag.len();
    let mut band = BandMatrix::zeros(n, nr, nr);
    for k in 0..n {
        band.add(k, k, op.diag[k]);
        if k + nr < n {
            band.add(k, k + nr, op.axial[k]);
            band.add(k + nr, k, op.axial[k]);
        }
        if (k + 1) % nr != 0 {
            band.add(k, k + 1, op.radial[k]);
            band.add(k + 1, k, op.radial[k]);
        }
    }
    let lu = band.factor().ok_or(OracleError::Singular { frequency })?;
    let mut p = lu.solve(&rhs);
    let b_norm = norm(&rhs);
    let residual_of = |p: &[Complex64]| {
        let ap = op.apply(p);
        let r: Vec<Complex64> = rhs.iter().zip(&ap).map(|(b, a)| b - a).collect();
        (norm(&r) / b_norm, r)
    };
    let (mut residual, r) = residual_of(&p);
    if residual > MAX_RESIDUAL {
        let dp = lu.solve(&r);
        for (v, d) in p.iter_mut().zip(dp) {
            *v += d;
        }
        residual = residual_of(&p).0;
    }
    if !(residual <= MAX_RESIDUAL) {
        return Err(OracleError::Residual { frequency, residual });
    }
    Ok(PressureField {
        frequency,
        nx: grid.nx,
        nr: grid.nr,
        values: p,
        residual,
    })
}

/// Solves the scene and reads the microphones.
pub fn solve_harmonic(grid: &SimGrid, frequency: f64) -> Result<PortRecord, OracleError> {
    Ok(solve_field(grid, frequency)?.port_record(grid))
}
