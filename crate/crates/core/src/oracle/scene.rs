//! Grid layout: PML | air (source, two microphones) | sample | air (two
//! microphones) | PML, radially from the axis to the rigid wall.

use num_complex::Complex64;

use super::{MaterialSpec, OracleError};
use crate::geometry::{DuctGeometry, MediumProperties};

/// End of the tube that the source sheet sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    #[default]
    Upstream,
    Downstream,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    /// Minimum cells per local wavelength, in every material.
    pub cells_per_wavelength: f64,
    /// Upper bound on the axial spacing, m.
    pub max_dx: f64,
    /// Upper bound on the radial spacing, m.
    pub max_dr: f64,
    /// Explicit spacings override the automatic choice.
    pub dx: Option<f64>,
    pub dr: Option<f64>,
    pub pml_cells: usize,
    /// Design normal-incidence reflection of each PML.
    pub pml_reflection: f64,
    /// Distance from a sample face to the nearer microphone (default r₂), m.
    pub mic_offset: Option<f64>,
    /// Microphone spacing (default r₂/2), m.
    pub mic_spacing: Option<f64>,
    pub excitation: Side,
    pub sleeve: bool,
    pub max_unknowns: usize,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self {
            cells_per_wavelength: 20.0,
            max_dx: 0.4e-3,
            max_dr: 1e-3,
            dx: None,
            dr: None,
            pml_cells: 20,
            pml_reflection: 1e-5,
            mic_offset: None,
            mic_spacing: None,
            excitation: Side::Upstream,
            sleeve: true,
            max_unknowns: 600_000,
        }
    }
}

// Air between the outer microphone and the PML, m.
const MARGIN: f64 = 0.02;
// Source sheet position, in cells from the PML.
const SOURCE_INSET: usize = 5;

/// A discretised scene. Cell `i` spans `x ∈ [(i − sample_start)·dx, …+dx]`,
/// so the sample's entry face is x = 0; cell `j` spans `r ∈ [j·dr, (j+1)·dr]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimGrid {
    pub nx: usize,
    pub nr: usize,
    pub dx: f64,
    pub dr: f64,
    pub pml_cells: usize,
    pub pml_reflection: f64,
    pub sample_start: usize,
    pub sample_cells: usize,
    /// Radial face index of the sleeve (r = j·dr).
    pub sleeve_face: usize,
    pub sleeve: bool,
    pub medium: MediumProperties,
    pub sample_density: Complex64,
    pub sample_modulus: Complex64,
    pub excitation: Side,
    pub source_cell: usize,
    /// Axial cells of the microphones: upstream far, upstream near,
    /// downstream near, downstream far.
    pub mic_cells: [usize; 4],
}

impl SimGrid {
    /// Axial centre of cell `i`, m.
    pub fn x_center(&self, i: usize) -> f64 {
        (i as f64 - self.sample_start as f64 + 0.5) * self.dx
    }

    pub fn r_center(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * self.dr
    }

    /// Resolved sample thickness, m.
    pub fn thickness(&self) -> f64 {
        self.sample_cells as f64 * self.dx
    }

    pub fn duct_radius(&self) -> f64 {
        self.nr as f64 * self.dr
    }

    pub fn sample_radius(&self) -> f64 {
        self.sleeve_face as f64 * self.dr
    }

    pub fn unknowns(&self) -> usize {
        self.nx * self.nr
    }

    pub fn in_sample(&self, i: usize, j: usize) -> bool {
        (self.sample_start..self.sample_start + self.sample_cells).contains(&i) && j < self.sleeve_face
    }

    pub fn first_cutoff(&self) -> f64 {
        DuctGeometry {
            r1: self.sample_radius(),
            r2: self.duct_radius(),
            t: self.thickness(),
        }
        .first_cutoff(&self.medium)
    }
}

/// Lays out the grid for a sample and the highest frequency to be simulated.
pub fn build_scene(
    material: &MaterialSpec,
    geometry: &DuctGeometry,
    medium: &MediumProperties,
    f_max: f64,
    settings: &OracleSettings,
) -> Result<SimGrid, OracleError> {
    if !(f_max.is_finite() && f_max > 0.0) {
        return Err(OracleError::Frequency(f_max));
    }
    let index = material.n1.norm().max(1.0);
    let spacing = medium.c0 / (f_max * index * settings.cells_per_wavelength);
    let t = geometry.t;

    let (dx, sample_cells) = match settings.dx {
        Some(dx) => {
            let nt = (t / dx).round() as usize;
            if nt == 0 || ((nt as f64 * dx) - t).abs() > 0.005 * t {
                return Err(OracleError::ThicknessUnresolved { t, dx });
            }
            (dx, nt)
        }
        None => {
            let nt = (t / settings.max_dx.min(spacing)).ceil() as usize;
            (t / nt as f64, nt)
        }
    };

    let (r1, r2) = (geometry.r1, geometry.r2);
    let mut nr = match settings.dr {
        Some(dr) => (r2 / dr).round().max(1.0) as usize,
        None => (r2 / settings.max_dr.min(spacing)).ceil() as usize,
    };
    // keep both radii on cell faces within 0.5 %
    let sleeve_face = loop {
        let dr = r2 / nr as f64;
        let j1 = (r1 / dr).round() as usize;
        if j1 >= 1 && j1 < nr && (j1 as f64 * dr - r1).abs() <= 0.005 * r1 {
            break j1;
        }
        nr += 1;
        if nr * 4 > settings.max_unknowns {
            return Err(OracleError::ResolutionInfeasible {
                cells: nr,
                limit: settings.max_unknowns,
            });
        }
    };
    let dr = r2 / nr as f64;

    let offset = settings.mic_offset.unwrap_or(r2);
    let spacing_m = settings.mic_spacing.unwrap_or(0.5 * r2);
    let near = (offset / dx).round() as usize;
    let far = ((offset + spacing_m) / dx).round() as usize;
    let side = ((offset + spacing_m + MARGIN) / dx).round() as usize;
    let pml = settings.pml_cells;
    let nx = 2 * pml + 2 * side + sample_cells;
    let cells = nx * nr;
    if cells > settings.max_unknowns {
        return Err(OracleError::ResolutionInfeasible {
            cells,
            limit: settings.max_unknowns,
        });
    }
    let sample_start = pml + side;
    let exit = sample_start + sample_cells;
    let mic_cells = [sample_start - 1 - far, sample_start - 1 - near, exit + near, exit + far];
    let source_cell = match settings.excitation {
        Side::Upstream => pml + SOURCE_INSET,
        Side::Downstream => nx - 1 - pml - SOURCE_INSET,
    };
    Ok(SimGrid {
        nx,
        nr,
        dx,
        dr,
        pml_cells: pml,
        pml_reflection: settings.pml_reflection,
        sample_start,
        sample_cells,
        sleeve_face,
        sleeve: settings.sleeve,
        medium: *medium,
        sample_density: material.effective_density(geometry, medium),
        sample_modulus: material.bulk_modulus(geometry, medium),
        excitation: settings.excitation,
        source_cell,
        mic_cells,
    })
}
