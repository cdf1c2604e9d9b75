//! The four subcommands. Each writes its data file to `out` and returns
//! warnings and summary lines for the caller to report.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use super::config::RunConfig;
use super::files::{flag_string, fmt, read_scattering, write_results, write_scattering};
use super::CliError;
use crate::modal::duct_wavenumbers;
use crate::oracle::{simulate_sweep, OracleError};
use crate::retrieval::{
    classic_sweep, forward_averaged_sweep, retrieve_sweep, tr_from_transfer_matrix, RetrievalError, RetrievedProperties, ScatteringData,
    TransferMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForwardMethod {
    /// Finite-difference oracle.
    Fdfd,
    /// The retrieval's own averaged-field model.
    Averaged,
}

impl ForwardMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::Fdfd => "fdfd",
            Self::Averaged => "averaged",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub warnings: Vec<String>,
    pub summary: Vec<String>,
    /// False when a round trip exceeded its tolerance.
    pub passed: bool,
}

fn header(config: &RunConfig, command: &str) -> Vec<String> {
    let g = &config.geometry;
    vec![
        format!("tubefit {command}"),
        format!("medium rho0={} c0={}", config.medium.rho0, config.medium.c0),
        format!("geometry r1={} r2={} t={}", g.r1, g.r2, g.t),
    ]
}

fn check_cutoff(config: &RunConfig, frequencies: &[f64]) -> Result<(), CliError> {
    if config.retrieval.allow_above_cutoff {
        return Ok(());
    }
    let g = &config.geometry;
    let cutoff = crate::geometry::DuctGeometry {
        r1: g.r1,
        r2: g.r2,
        t: g.t,
    }
    .first_cutoff(&config.medium());
    match frequencies.iter().find(|&&f| f >= cutoff) {
        Some(&frequency) => Err(RetrievalError::AboveCutoff { frequency, cutoff }.into()),
        None => Ok(()),
    }
}

/// Runs the retrieval appropriate to the geometry; returns the results and
/// the impedance used to normalise `z1_ratio`.
fn retrieve(config: &RunConfig, data: &[ScatteringData]) -> Result<(Vec<RetrievedProperties>, f64), CliError> {
    let medium = config.medium();
    if config.full_fill() {
        check_cutoff(config, &data.iter().map(|d| d.frequency).collect::<Vec<_>>())?;
        let rows = classic_sweep(data, config.geometry.t, &medium, config.branch_seed()?)?;
        Ok((rows, medium.alpha()))
    } else {
        let geometry = config.geometry()?;
        let rows = retrieve_sweep(data, &geometry, &medium, &config.retrieval()?)?;
        Ok((rows, config.z2()?))
    }
}

/// `retrieve`: (T, R) sweep file in, effective properties out.
pub fn cmd_retrieve(config: &RunConfig, input: &Path, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let file = std::fs::File::open(input).map_err(|e| CliError::Input {
        line: None,
        message: format!("{}: {e}", input.display()),
    })?;
    let data = read_scattering(std::io::BufReader::new(file))?;
    let (rows, z_ref) = retrieve(config, &data)?;
    let mut outcome = Outcome {
        passed: true,
        ..Outcome::default()
    };
    if data.len() == 1 {
        outcome.warnings.push(format!(
            "single frequency: branch {} taken from the seed, unwrapping undetermined",
            rows[0].branch
        ));
    }
    let flagged = rows.iter().filter(|r| r.flags.interpolated).count();
    if flagged > 0 {
        outcome.warnings.push(format!("{flagged} degenerate frequencies interpolated"));
    }
    let mut comments = header(config, "retrieve");
    comments.push(if config.full_fill() {
        format!(
            "full-fill classic method; z1 is specific impedance, z1_ratio = z1/(rho0 c0), rho0 c0 = {}",
            fmt(z_ref)
        )
    } else {
        format!("z1 in Pa s/m^3; z1_ratio = z1/z2 with z2 = rho0 c0/S3 = {}", fmt(z_ref))
    });
    write_results(out, &comments, &rows, z_ref)?;
    Ok(outcome)
}

fn forward_data(config: &RunConfig, method: ForwardMethod) -> Result<Vec<ScatteringData>, CliError> {
    let frequencies = config.frequencies();
    check_cutoff(config, &frequencies)?;
    let medium = config.medium();
    let material = config.material()?;
    if config.full_fill() {
        if method == ForwardMethod::Fdfd {
            return Err(CliError::Config("the finite-difference scene needs r1 < r2".into()));
        }
        let g = &config.geometry;
        let area = std::f64::consts::PI * g.r2 * g.r2;
        return frequencies
            .iter()
            .map(|&f| {
                let m = TransferMatrix::layer(material.n1, material.z1 * area, medium.wavenumber(f), g.t);
                Ok(tr_from_transfer_matrix(&m, &medium, f)?)
            })
            .collect();
    }
    let geometry = config.geometry()?;
    Ok(match method {
        ForwardMethod::Averaged => forward_averaged_sweep(material.n1, material.z1, &geometry, &medium, &frequencies, config.coupling()?)?,
        ForwardMethod::Fdfd => simulate_sweep(&material, &geometry, &medium, &frequencies, &config.oracle()?).map_err(|e| match e {
            OracleError::Scattering(s) => CliError::Retrieval(s.into()),
            other => CliError::Oracle(other),
        })?,
    })
}

/// `forward`: material in the config, (T, R) sweep out.
pub fn cmd_forward(config: &RunConfig, method: ForwardMethod, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let data = forward_data(config, method)?;
    let material = config.material()?;
    let mut comments = header(config, "forward");
    comments.push(format!("method={} n1={} z1={} Pa s/m^3", method.name(), material.n1, material.z1));
    comments.push("T referenced to x = t, R to x = 0, time dependence exp(-i omega t)".into());
    write_scattering(out, &comments, &data)?;
    Ok(Outcome {
        passed: true,
        ..Outcome::default()
    })
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// `roundtrip`: forward with each method, retrieve, compare with the truth.
pub fn cmd_roundtrip(config: &RunConfig, methods: &[ForwardMethod], out: &mut dyn Write) -> Result<Outcome, CliError> {
    let material = config.material()?;
    let (n_true, z_true) = (material.n1, material.z1);
    let mut outcome = Outcome {
        passed: true,
        ..Outcome::default()
    };
    let mut lines: Vec<[String; 9]> = Vec::new();
    for &method in methods {
        let data = forward_data(config, method)?;
        let (rows, _) = retrieve(config, &data)?;
        // the classic method reports specific impedance
        let z_expected = if config.full_fill() {
            let g = &config.geometry;
            z_true * std::f64::consts::PI * g.r2 * g.r2
        } else {
            z_true
        };
        let z_ref = if config.full_fill() {
            config.medium().alpha()
        } else {
            config.z2()?
        };
        let (mut en, mut ez) = (Vec::new(), Vec::new());
        for r in &rows {
            let err_n = (r.n1 - n_true).norm() / n_true.norm();
            let err_z = (r.z1 - z_expected).norm() / z_expected.norm();
            if !r.flags.interpolated {
                en.push(err_n);
                ez.push(err_z);
            }
            let ratio: Complex64 = r.z1 / z_ref;
            lines.push([
                method.name().into(),
                fmt(r.frequency),
                fmt(r.n1.re),
                fmt(r.n1.im),
                fmt(ratio.re),
                fmt(ratio.im),
                fmt(err_n),
                fmt(err_z),
                flag_string(r),
            ]);
        }
        let max = |v: &[f64]| v.iter().copied().fold(f64::NAN, f64::max);
        let (mn, mz) = (median(en.clone()), median(ez.clone()));
        let tolerance = config.roundtrip.tolerance;
        let ok = mn <= tolerance && mz <= tolerance;
        outcome.passed &= ok;
        outcome.summary.push(format!(
            "{}: n1 error median {:.3e} max {:.3e}; z1 error median {:.3e} max {:.3e}; tolerance {:.1e} {}",
            method.name(),
            mn,
            max(&en),
            mz,
            max(&ez),
            tolerance,
            if ok { "PASS" } else { "FAIL" }
        ));
    }
    let mut comments = header(config, "roundtrip");
    comments.push(format!("truth n1={n_true} z1={z_true} Pa s/m^3"));
    comments.extend(outcome.summary.iter().cloned());
    for c in &comments {
        writeln!(out, "# {c}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "method",
        "f",
        "re_n1",
        "im_n1",
        "re_z1_ratio",
        "im_z1_ratio",
        "err_n1",
        "err_z1",
        "flags",
    ])?;
    for l in &lines {
        w.write_record(l)?;
    }
    w.flush()?;
    Ok(outcome)
}

/// `modes`: radial wavenumbers and cut-on frequencies; with a query
/// frequency, marks each mode propagating or evanescent.
pub fn cmd_modes(config: &RunConfig, frequency: Option<f64>, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let g = &config.geometry;
    let medium = config.medium();
    // the radial basis depends on r2 only
    let duct = crate::geometry::DuctGeometry {
        r1: g.r1.min(0.5 * g.r2),
        r2: g.r2,
        t: g.t,
    };
    let basis = duct_wavenumbers(&duct, config.retrieval.modes).map_err(RetrievalError::from)?;
    let k0 = frequency.map(|f| medium.wavenumber(f));
    let mut comments = header(config, "modes");
    comments.push(format!("modes N = {}", basis.modes()));
    if let Some(fc) = basis.first_cutoff(&medium) {
        comments.push(format!("first cutoff {fc:.3} Hz"));
    }
    if let Some(f) = frequency {
        comments.push(format!("query frequency {f} Hz"));
    }
    for c in &comments {
        writeln!(out, "# {c}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "x_n", "k_n", "f_cut", "status"])?;
    for n in 0..basis.modes() {
        let status = match k0 {
            Some(k) if basis.is_propagating(n, k) || n == 0 => "propagating",
            Some(_) => "evanescent",
            None => "-",
        };
        w.write_record([
            n.to_string(),
            fmt(basis.roots().roots()[n]),
            fmt(basis.wavenumbers()[n]),
            fmt(basis.cutoff_frequency(n, &medium)),
            status.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(Outcome {
        passed: true,
        ..Outcome::default()
    })
}

/// Run metadata next to a data file (`<output>.meta.toml`), kept out of the
/// data itself so that data files are byte-reproducible.
pub fn write_sidecar(output: &Path, entries: &[(&str, String)], outcome: &Outcome) -> Result<(), CliError> {
    let mut path = output.as_os_str().to_owned();
    path.push(".meta.toml");
    let mut f = std::fs::File::create(std::path::PathBuf::from(path))?;
    let quote = |s: &str| format!("{s:?}");
    for (k, v) in entries {
        writeln!(f, "{k} = {}", quote(v))?;
    }
    let list = |v: &[String]| v.iter().map(|s| quote(s)).collect::<Vec<_>>().join(", ");
    writeln!(f, "warnings = [{}]", list(&outcome.warnings))?;
    writeln!(f, "summary = [{}]", list(&outcome.summary))?;
    writeln!(f, "passed = {}", outcome.passed)?;
    Ok(())
}
