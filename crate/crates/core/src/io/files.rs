//! CSV sweep files: `#` comment lines, one header line, complex values as
//! separate real and imaginary columns, floats written with 17 significant
//! digits so that reading back is exact.

use std::io::{Read, Write};

use num_complex::Complex64;

use super::CliError;
use crate::retrieval::{RetrievedProperties, ScatteringData};

pub const SCATTERING_HEADER: [&str; 5] = ["f", "re_t", "im_t", "re_r", "im_r"];
pub const RESULT_HEADER: [&str; 13] = [
    "f",
    "re_n1",
    "im_n1",
    "re_z1",
    "im_z1",
    "re_z1_ratio",
    "im_z1_ratio",
    "branch",
    "sign",
    "condition",
    "residual",
    "modal_change",
    "flags",
];

pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_comments<W: Write>(out: &mut W, comments: &[String]) -> Result<(), CliError> {
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    Ok(())
}

/// Writes a (T, R) sweep.
pub fn write_scattering<W: Write>(mut out: W, comments: &[String], data: &[ScatteringData]) -> Result<(), CliError> {
    write_comments(&mut out, comments)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCATTERING_HEADER)?;
    for d in data {
        w.write_record([
            fmt(d.frequency),
            fmt(d.transmission.re),
            fmt(d.transmission.im),
            fmt(d.reflection.re),
            fmt(d.reflection.im),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn parse_rows<R: Read>(input: R, header: &[&str]) -> Result<Vec<(u64, Vec<f64>, csv::StringRecord)>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input);
    let head = reader.headers()?.clone();
    if head.is_empty() {
        return Err(CliError::NoData);
    }
    let names: Vec<&str> = head.iter().collect();
    if names.len() < header.len() || names[..header.len()] != *header {
        return Err(CliError::Input {
            line: Some(head.position().map_or(1, |p| p.line())),
            message: format!("expected header starting with {}", header.join(",")),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != names.len() {
            return Err(CliError::Input {
                line: Some(line),
                message: format!("expected {} columns, found {}", names.len(), record.len()),
            });
        }
        let mut values = Vec::with_capacity(header.len());
        for (field, name) in record.iter().zip(header) {
            let v: f64 = field.parse().map_err(|_| CliError::Input {
                line: Some(line),
                message: format!("column {name}: cannot parse {field:?} as a number"),
            })?;
            values.push(v);
        }
        rows.push((line, values, record));
    }
    if rows.is_empty() {
        return Err(CliError::NoData);
    }
    Ok(rows)
}

/// Reads a (T, R) sweep; extra trailing columns are ignored.
pub fn read_scattering<R: Read>(input: R) -> Result<Vec<ScatteringData>, CliError> {
    parse_rows(input, &SCATTERING_HEADER[..])?
        .into_iter()
        .map(|(line, v, _)| {
            ScatteringData::new(v[0], Complex64::new(v[1], v[2]), Complex64::new(v[3], v[4])).map_err(|e| CliError::Input {
                line: Some(line),
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn flag_string(r: &RetrievedProperties) -> String {
    let mut parts = Vec::new();
    if r.flags.interpolated {
        parts.push("interpolated");
    }
    if r.flags.above_cutoff {
        parts.push("above_cutoff");
    }
    if r.flags.branch_undetermined {
        parts.push("branch_undetermined");
    }
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join("|")
    }
}

/// Writes retrieval results; `z_ref` normalises the `z1_ratio` columns.
pub fn write_results<W: Write>(mut out: W, comments: &[String], rows: &[RetrievedProperties], z_ref: f64) -> Result<(), CliError> {
    write_comments(&mut out, comments)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULT_HEADER)?;
    for r in rows {
        let ratio = r.z1 / z_ref;
        w.write_record([
            fmt(r.frequency),
            fmt(r.n1.re),
            fmt(r.n1.im),
            fmt(r.z1.re),
            fmt(r.z1.im),
            fmt(ratio.re),
            fmt(ratio.im),
            r.branch.to_string(),
            r.sign.to_string(),
            fmt(r.diagnostics.condition),
            fmt(r.diagnostics.residual),
            r.diagnostics.modal_convergence.map_or("-".into(), fmt),
            flag_string(r),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One parsed row of a results file.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub frequency: f64,
    pub n1: Complex64,
    pub z1: Complex64,
    pub z1_ratio: Complex64,
    pub branch: i32,
    pub sign: i8,
    pub condition: f64,
    pub residual: f64,
    pub modal_change: Option<f64>,
    pub flags: String,
}

pub fn read_results<R: Read>(input: R) -> Result<Vec<ResultRow>, CliError> {
    parse_rows(input, &RESULT_HEADER[..7])?
        .into_iter()
        .map(|(line, v, rec)| {
            let bad = |what: &str| CliError::Input {
                line: Some(line),
                message: format!("cannot parse {what}"),
            };
            let field = |i: usize| rec.get(i).unwrap_or("");
            Ok(ResultRow {
                frequency: v[0],
                n1: Complex64::new(v[1], v[2]),
                z1: Complex64::new(v[3], v[4]),
                z1_ratio: Complex64::new(v[5], v[6]),
                branch: field(7).parse().map_err(|_| bad("branch"))?,
                sign: field(8).parse().map_err(|_| bad("sign"))?,
                condition: field(9).parse().map_err(|_| bad("condition"))?,
                residual: field(10).parse().map_err(|_| bad("residual"))?,
                modal_change: match field(11) {
                    "-" => None,
                    s => Some(s.parse().map_err(|_| bad("modal_change"))?),
                },
                flags: field(12).to_string(),
            })
        })
        .collect()
}
