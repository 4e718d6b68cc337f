//! Error norms, observed convergence orders and the study report table.
//!
//! Norms are taken over the stored node set (periodic, right endpoint not
//! duplicated): the max norm and the root-mean-square norm. Orders compare
//! consecutive rows of a dyadic refinement study as `log2(coarse / fine)`.
//!
//! Reports serialize to a plain comma-separated table with a header row.
//! Floats are written in scientific notation with six significant digits,
//! and parsing a written table reproduces it field for field, so
//! write -> parse -> write is a fixed point.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::GridFunction;

/// Max and RMS deviation of `u` from a pointwise reference at time `t`.
pub fn error_norms(
    u: &GridFunction,
    reference: impl Fn(&[f64], f64) -> f64,
    t: f64,
) -> (f64, f64) {
    let d = u.spec.dim();
    let cells: Vec<usize> = (0..d).map(|k| u.spec.cells(k)).collect();
    let mut coords = vec![0.0; d];
    let mut linf = 0.0f64;
    let mut sum_sq = 0.0f64;
    let mut flat = 0usize;
    crate::mesh::for_each_index(&cells, |idx| {
        for k in 0..d {
            coords[k] = u.spec.coord(k, idx[k]);
        }
        let e = u.values[flat] - reference(&coords, t);
        linf = linf.max(e.abs());
        sum_sq += e * e;
        flat += 1;
    });
    (linf, (sum_sq / u.values.len() as f64).sqrt())
}

/// `log2(err_coarse / err_fine)`, or `None` when either error is unusable.
pub fn observed_order(err_coarse: f64, err_fine: f64) -> Option<f64> {
    if err_coarse > 0.0 && err_fine > 0.0 && err_coarse.is_finite() && err_fine.is_finite() {
        Some((err_coarse / err_fine).log2())
    } else {
        None
    }
}

/// One study row: a mesh plus whatever could be measured on it.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub mesh: String,
    pub points: u64,
    pub linf: Option<f64>,
    pub linf_order: Option<f64>,
    pub l2: Option<f64>,
    pub l2_order: Option<f64>,
    pub cpu_seconds: f64,
    pub status: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ReportRow>,
}

const HEADER: &str = "mesh,points,linf_error,linf_order,l2_error,l2_order,cpu_seconds,status";

fn fmt_float(x: f64) -> String {
    format!("{x:.5e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn parse_opt(field: &str) -> Result<Option<f64>> {
    if field.is_empty() {
        return Ok(None);
    }
    field
        .parse::<f64>()
        .map(Some)
        .map_err(|e| Error::CsvParse(format!("bad float '{field}': {e}")))
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for r in &self.rows {
            // Status is free text; keep the row parseable.
            let status = r.status.replace([',', '\n'], ";");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.mesh,
                r.points,
                fmt_opt(r.linf),
                fmt_opt(r.linf_order),
                fmt_opt(r.l2),
                fmt_opt(r.l2_order),
                fmt_float(r.cpu_seconds),
                status
            );
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h == HEADER => {}
            other => {
                return Err(Error::CsvParse(format!("unexpected header {other:?}")));
            }
        }
        let mut rows = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 8 {
                return Err(Error::CsvParse(format!(
                    "expected 8 fields, got {} in '{line}'",
                    fields.len()
                )));
            }
            rows.push(ReportRow {
                mesh: fields[0].to_string(),
                points: fields[1]
                    .parse()
                    .map_err(|e| Error::CsvParse(format!("bad point count: {e}")))?,
                linf: parse_opt(fields[2])?,
                linf_order: parse_opt(fields[3])?,
                l2: parse_opt(fields[4])?,
                l2_order: parse_opt(fields[5])?,
                cpu_seconds: fields[6]
                    .parse()
                    .map_err(|e| Error::CsvParse(format!("bad cpu time: {e}")))?,
                status: fields[7].to_string(),
            });
        }
        Ok(Self { rows })
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{DomainBox, GridSpec};

    #[test]
    fn norms_separate_max_from_rms() {
        let domain = DomainBox::new(vec![0.0; 2], vec![1.0; 2]).unwrap();
        let spec = GridSpec::new(domain, 4, vec![0, 0]).unwrap();
        // Error field alternates 0 and 1 along the fast axis.
        let mut u = GridFunction::constant(spec, 0.0);
        for (i, v) in u.values.iter_mut().enumerate() {
            *v = (i % 2) as f64;
        }
        let (linf, l2) = error_norms(&u, |_, _| 0.0, 0.0);
        assert!((linf - 1.0).abs() < 1e-15);
        assert!((l2 - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn norms_vanish_on_the_reference_itself() {
        let domain = DomainBox::new(vec![-2.0; 2], vec![2.0; 2]).unwrap();
        let spec = GridSpec::new(domain, 8, vec![1, 0]).unwrap();
        let f = |c: &[f64], t: f64| (c[0] + 2.0 * c[1]).sin() * (1.0 + t);
        let u = GridFunction::from_fn(spec, |c| f(c, 0.25));
        let (linf, l2) = error_norms(&u, f, 0.25);
        assert_eq!(linf, 0.0);
        assert_eq!(l2, 0.0);
    }

    #[test]
    fn order_of_a_clean_third_order_pair_is_three() {
        let order = observed_order(1e-2, 1.25e-3).unwrap();
        assert!((order - 3.0).abs() < 1e-12);
        assert!(observed_order(0.0, 1e-3).is_none());
        assert!(observed_order(1e-3, 0.0).is_none());
        assert!(observed_order(f64::NAN, 1e-3).is_none());
    }

    fn sample_report() -> ConvergenceReport {
        ConvergenceReport {
            rows: vec![
                ReportRow {
                    mesh: "80x80".into(),
                    points: 6561,
                    linf: Some(6.95e-5),
                    linf_order: None,
                    l2: Some(4.91e-5),
                    l2_order: None,
                    cpu_seconds: 0.123456,
                    status: "ok".into(),
                },
                ReportRow {
                    mesh: "160x160".into(),
                    points: 25921,
                    linf: Some(8.69e-6),
                    linf_order: Some(3.0),
                    l2: Some(6.17e-6),
                    l2_order: Some(2.99),
                    cpu_seconds: 1.5,
                    status: "ok".into(),
                },
                ReportRow {
                    mesh: "320x320".into(),
                    points: 103041,
                    linf: None,
                    linf_order: None,
                    l2: None,
                    l2_order: None,
                    cpu_seconds: 0.0,
                    status: "blew up, see log".into(),
                },
            ],
        }
    }

    #[test]
    fn csv_write_parse_write_is_a_fixed_point() {
        let report = sample_report();
        let text = report.to_csv();
        let parsed = ConvergenceReport::from_csv(&text).unwrap();
        assert_eq!(parsed.to_csv(), text);
        assert_eq!(parsed.rows.len(), 3);
        assert_eq!(parsed.rows[1].linf_order, Some(3.0));
        assert_eq!(parsed.rows[2].linf, None);
    }

    #[test]
    fn csv_floats_carry_six_significant_digits() {
        let text = sample_report().to_csv();
        assert!(text.contains("6.95000e-5"), "{text}");
        assert!(text.contains("3.00000e0"), "{text}");
    }

    #[test]
    fn csv_rejects_malformed_tables() {
        assert!(ConvergenceReport::from_csv("nonsense\n1,2,3").is_err());
        let mut text = String::from(HEADER);
        text.push_str("\nonly,three,fields\n");
        assert!(ConvergenceReport::from_csv(&text).is_err());
    }
}
