//! Run configuration: a TOML file whose sections map to dotted keys
//! (`geometry.r1`, `retrieval.modes`, …). Command-line flags are applied on
//! top of it by the caller.

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use super::CliError;
use crate::geometry::{DuctGeometry, MediumProperties};
use crate::modal::{CouplingConfig, TailModel};
use crate::oracle::{MaterialSpec, OracleSettings, Side};
use crate::retrieval::{RetrievalConfig, SystemForm};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MediumSection {
    pub rho0: f64,
    pub c0: f64,
}

impl Default for MediumSection {
    fn default() -> Self {
        let air = MediumProperties::air();
        Self {
            rho0: air.rho0,
            c0: air.c0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometrySection {
    pub r1: f64,
    pub r2: f64,
    pub t: f64,
}

impl Default for GeometrySection {
    fn default() -> Self {
        Self {
            r1: 0.04,
            r2: 0.07,
            t: 0.0052,
        }
    }
}

/// Sample material: either `preset = "air"`, or `n1` with the impedance as
/// `z1_ratio` (relative to the gap impedance ρ₀c₀/S₃) or absolute `z1`.
#[derive(Debug, Clone, PartialEq, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct MaterialSection {
    pub preset: Option<String>,
    pub n1: Option<f64>,
    pub n1_im: f64,
    pub z1_ratio: Option<f64>,
    pub z1_ratio_im: f64,
    pub z1: Option<f64>,
    pub z1_im: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            start: 300.0,
            stop: 2500.0,
            count: 45,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum BranchSetting {
    /// `"auto"`: branch 0 at the lowest frequency.
    Named(String),
    Fixed(i32),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RetrievalSection {
    pub modes: usize,
    pub tolerance: f64,
    /// `"asymptotic"` or `"truncated"`.
    pub tail: String,
    pub branch: BranchSetting,
    pub allow_above_cutoff: bool,
    pub printed_signs: bool,
}

impl Default for RetrievalSection {
    fn default() -> Self {
        let c = CouplingConfig::default();
        Self {
            modes: c.modes,
            tolerance: c.tolerance,
            tail: "asymptotic".into(),
            branch: BranchSetting::Named("auto".into()),
            allow_above_cutoff: false,
            printed_signs: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleSection {
    pub cells_per_wavelength: f64,
    pub max_dx: f64,
    pub max_dr: f64,
    pub dx: Option<f64>,
    pub dr: Option<f64>,
    pub pml_cells: usize,
    pub pml_reflection: f64,
    pub mic_offset: Option<f64>,
    pub mic_spacing: Option<f64>,
    /// `"upstream"` or `"downstream"`.
    pub excitation: String,
    pub sleeve: bool,
    pub max_unknowns: usize,
}

impl Default for OracleSection {
    fn default() -> Self {
        let s = OracleSettings::default();
        Self {
            cells_per_wavelength: s.cells_per_wavelength,
            max_dx: s.max_dx,
            max_dr: s.max_dr,
            dx: s.dx,
            dr: s.dr,
            pml_cells: s.pml_cells,
            pml_reflection: s.pml_reflection,
            mic_offset: s.mic_offset,
            mic_spacing: s.mic_spacing,
            excitation: "upstream".into(),
            sleeve: s.sleeve,
            max_unknowns: s.max_unknowns,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RoundtripSection {
    /// Accepted median relative error.
    pub tolerance: f64,
}

impl Default for RoundtripSection {
    fn default() -> Self {
        Self { tolerance: 0.01 }
    }
}

/// Everything a run needs. Missing sections take the defaults (air, the
/// 40/70 mm geometry, 300–2500 Hz in 45 steps).
#[derive(Debug, Clone, PartialEq, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub medium: MediumSection,
    pub geometry: GeometrySection,
    pub material: MaterialSection,
    pub sweep: SweepSection,
    pub retrieval: RetrievalSection,
    pub oracle: OracleSection,
    pub roundtrip: RoundtripSection,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive, got {v}")))
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let config: Self = toml::from_str(text).map_err(|e| invalid(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        positive("medium.rho0", self.medium.rho0)?;
        positive("medium.c0", self.medium.c0)?;
        positive("geometry.r1", self.geometry.r1)?;
        positive("geometry.r2", self.geometry.r2)?;
        positive("geometry.t", self.geometry.t)?;
        if self.geometry.r1 > self.geometry.r2 {
            return Err(invalid("geometry.r1 must not exceed geometry.r2"));
        }
        positive("sweep.start", self.sweep.start)?;
        positive("sweep.stop", self.sweep.stop)?;
        if self.sweep.count == 0 || (self.sweep.count > 1 && self.sweep.stop <= self.sweep.start) {
            return Err(invalid("sweep needs count ≥ 1 and stop > start"));
        }
        if self.retrieval.modes == 0 {
            return Err(invalid("retrieval.modes must be at least 1"));
        }
        positive("retrieval.tolerance", self.retrieval.tolerance)?;
        positive("roundtrip.tolerance", self.roundtrip.tolerance)?;
        self.tail()?;
        self.branch_seed()?;
        self.excitation()?;
        Ok(())
    }

    pub fn medium(&self) -> MediumProperties {
        MediumProperties {
            rho0: self.medium.rho0,
            c0: self.medium.c0,
        }
    }

    /// The sample fills the tube (`r1 = r2`): only the classic method applies.
    pub fn full_fill(&self) -> bool {
        self.geometry.r1 == self.geometry.r2
    }

    pub fn geometry(&self) -> Result<DuctGeometry, CliError> {
        let g = &self.geometry;
        DuctGeometry::new(g.r1, g.r2, g.t).map_err(|e| invalid(e.to_string()))
    }

    /// Gap impedance ρ₀c₀/S₃, Pa·s/m³.
    pub fn z2(&self) -> Result<f64, CliError> {
        Ok(self.medium().alpha() / self.geometry()?.s3())
    }

    /// Impedance that `material.z1_ratio` multiplies: z₂, or ρ₀c₀/S₂ for a
    /// full-fill sample.
    pub fn z_reference(&self) -> Result<f64, CliError> {
        if self.full_fill() {
            let r2 = self.geometry.r2;
            Ok(self.medium().alpha() / (std::f64::consts::PI * r2 * r2))
        } else {
            self.z2()
        }
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let s = &self.sweep;
        if s.count == 1 {
            return vec![s.start];
        }
        (0..s.count)
            .map(|i| s.start + (s.stop - s.start) * i as f64 / (s.count - 1) as f64)
            .collect()
    }

    pub fn material(&self) -> Result<MaterialSpec, CliError> {
        let m = &self.material;
        if let Some(p) = &m.preset {
            if p == "air" {
                let area = std::f64::consts::PI * self.geometry.r1 * self.geometry.r1;
                return Ok(MaterialSpec::new(
                    Complex64::new(1.0, 0.0),
                    Complex64::new(self.medium().alpha() / area, 0.0),
                ));
            }
            return Err(invalid(format!("unknown material.preset {p:?}")));
        }
        let n1 = m.n1.ok_or_else(|| invalid("material.n1 is required"))?;
        let z1 = match (m.z1_ratio, m.z1) {
            (Some(ratio), None) => Complex64::new(ratio, m.z1_ratio_im) * self.z_reference()?,
            (None, Some(z)) => Complex64::new(z, m.z1_im),
            _ => return Err(invalid("set exactly one of material.z1_ratio and material.z1")),
        };
        Ok(MaterialSpec::new(Complex64::new(n1, m.n1_im), z1))
    }

    fn tail(&self) -> Result<TailModel, CliError> {
        match self.retrieval.tail.as_str() {
            "asymptotic" => Ok(TailModel::Asymptotic),
            "truncated" => Ok(TailModel::Truncated),
            other => Err(invalid(format!("retrieval.tail must be asymptotic or truncated, got {other:?}"))),
        }
    }

    pub fn branch_seed(&self) -> Result<i32, CliError> {
        match &self.retrieval.branch {
            BranchSetting::Fixed(m) => Ok(*m),
            BranchSetting::Named(s) if s == "auto" => Ok(0),
            BranchSetting::Named(s) => Err(invalid(format!("retrieval.branch must be \"auto\" or an integer, got {s:?}"))),
        }
    }

    fn excitation(&self) -> Result<Side, CliError> {
        match self.oracle.excitation.as_str() {
            "upstream" => Ok(Side::Upstream),
            "downstream" => Ok(Side::Downstream),
            other => Err(invalid(format!("oracle.excitation must be upstream or downstream, got {other:?}"))),
        }
    }

    pub fn coupling(&self) -> Result<CouplingConfig, CliError> {
        Ok(CouplingConfig {
            modes: self.retrieval.modes,
            tolerance: self.retrieval.tolerance,
            tail: self.tail()?,
        })
    }

    pub fn retrieval(&self) -> Result<RetrievalConfig, CliError> {
        Ok(RetrievalConfig {
            coupling: self.coupling()?,
            form: if self.retrieval.printed_signs {
                SystemForm::Printed
            } else {
                SystemForm::Consistent
            },
            branch_seed: self.branch_seed()?,
            allow_above_cutoff: self.retrieval.allow_above_cutoff,
        })
    }

    pub fn oracle(&self) -> Result<OracleSettings, CliError> {
        let o = &self.oracle;
        Ok(OracleSettings {
            cells_per_wavelength: o.cells_per_wavelength,
            max_dx: o.max_dx,
            max_dr: o.max_dr,
            dx: o.dx,
            dr: o.dr,
            pml_cells: o.pml_cells,
            pml_reflection: o.pml_reflection,
            mic_offset: o.mic_offset,
            mic_spacing: o.mic_spacing,
            excitation: self.excitation()?,
            sleeve: o.sleeve,
            max_unknowns: o.max_unknowns,
        })
    }
}
