//! CSV data products: the capacitance-vs-separation sweep and general
//! tabulation.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::large_kappa::capacitance_large_series;
use crate::love::{capacitance_numeric, solve_love_with, SeparationKappa, MAX_KAPPA, MIN_KAPPA};
use crate::method::{evaluate_capacitance, MethodSelector, Toolkit};
use crate::small_kappa::eval_small_kappa;

/// Byte-exact header of the capacitance sweep file.
pub const FIG1_HEADER: &str = "kappa,C_nystrom,C_small_o6,C_large";

/// Where the order-6 small series stays within 1e-6 of the dense solver.
pub const SMALL_O6_MAX_KAPPA: f64 = 0.35;
/// Where the printed 1/kappa series stays within 1e-6 of the dense solver.
pub const LARGE_MIN_KAPPA: f64 = 5.0;

/// One row of the sweep; columns outside a method's validity are None.
#[derive(Clone, Debug)]
pub struct Fig1Row {
    pub kappa: f64,
    pub nystrom: Option<f64>,
    pub small_o6: Option<f64>,
    pub large: Option<f64>,
}

/// Log-spaced grid, endpoints included.
fn log_grid(kmin: f64, kmax: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            kmin * (kmax / kmin).powf(t)
        })
        .collect()
}

/// Evaluates the three methods over a log grid, honoring validity windows.
pub fn fig1_rows(tk: &Toolkit, kmin: f64, kmax: f64, points: usize) -> Result<Vec<Fig1Row>> {
    if !(kmin > 0.0 && kmin < kmax) || points < 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs 0 < kmin < kmax and points >= 2; got [{kmin}, {kmax}] x {points}"
        )));
    }
    let grid = log_grid(kmin, kmax, points);
    grid.par_iter()
        .map(|&k| {
            let kappa = SeparationKappa::new(k)?;
            let nystrom = if (MIN_KAPPA..=MAX_KAPPA).contains(&k) {
                Some(capacitance_numeric(&solve_love_with(
                    kappa,
                    tk.config.tolerance,
                    tk.config.node_budget,
                )?))
            } else {
                None
            };
            let small_o6 = if k <= SMALL_O6_MAX_KAPPA {
                Some(eval_small_kappa(&tk.reg, &tk.small, kappa, 6)?)
            } else {
                None
            };
            let large = if k >= LARGE_MIN_KAPPA {
                Some(capacitance_large_series(&tk.reg, kappa)?)
            } else {
                None
            };
            Ok(Fig1Row {
                kappa: k,
                nystrom,
                small_o6,
                large,
            })
        })
        .collect()
}

/// Twelve significant digits, the file format's numeric width.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

fn format_cell(v: Option<f64>) -> String {
    match v {
        Some(v) => format_value(v),
        None => "NA".into(),
    }
}

/// Writes the sweep as CSV (UTF-8, LF) with `NA` outside validity windows.
pub fn write_fig1<W: Write>(mut out: W, rows: &[Fig1Row]) -> Result<()> {
    writeln!(out, "{FIG1_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{}",
            format_value(row.kappa),
            format_cell(row.nystrom),
            format_cell(row.small_o6),
            format_cell(row.large),
        )?;
    }
    Ok(())
}

pub fn write_fig1_file(
    tk: &Toolkit,
    path: &Path,
    kmin: f64,
    kmax: f64,
    points: usize,
) -> Result<Vec<Fig1Row>> {
    let rows = fig1_rows(tk, kmin, kmax, points)?;
    let file = std::fs::File::create(path)?;
    write_fig1(std::io::BufWriter::new(file), &rows)?;
    Ok(rows)
}

/// General tabulation with automatic (or forced) method selection.
pub fn write_table<W: Write>(
    tk: &Toolkit,
    mut out: W,
    kmin: f64,
    kmax: f64,
    points: usize,
    selector: MethodSelector,
) -> Result<()> {
    if !(kmin > 0.0 && kmin < kmax) || points < 2 {
        return Err(Error::InvalidArgument(format!(
            "table needs 0 < kmin < kmax and points >= 2; got [{kmin}, {kmax}] x {points}"
        )));
    }
    let grid = log_grid(kmin, kmax, points);
    let records = grid
        .par_iter()
        .map(|&k| evaluate_capacitance(tk, SeparationKappa::new(k)?, selector))
        .collect::<Result<Vec<_>>>()?;
    writeln!(out, "kappa,C,method,error_estimate")?;
    for rec in records {
        writeln!(
            out,
            "{},{},{},{:.3e}",
            format_value(rec.kappa),
            format_value(rec.capacitance),
            rec.method,
            rec.error_estimate,
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_is_byte_exact() {
        assert_eq!(FIG1_HEADER, "kappa,C_nystrom,C_small_o6,C_large");
    }

    #[test]
    fn twelve_significant_digits_round_trip() {
        for v in [1.0 / 3.0, 2.938_980_796_532_633_6, 1e-7, 123456.789] {
            let s = format_value(v);
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 12, "{s}");
            let back: f64 = s.parse().unwrap();
            assert!((back - v).abs() <= 1e-11 * v.abs());
        }
    }

    #[test]
    fn rows_respect_validity_windows() {
        let tk = Toolkit::default();
        let rows = fig1_rows(&tk, 0.05, 100.0, 12).unwrap();
        assert_eq!(rows.len(), 12);
        assert!((rows[0].kappa - 0.05).abs() < 1e-12);
        assert!((rows[11].kappa - 100.0).abs() < 1e-9);
        for row in &rows {
            assert!(
                row.nystrom.is_some() || row.small_o6.is_some() || row.large.is_some(),
                "row at kappa = {} has no valid method",
                row.kappa
            );
            assert_eq!(row.small_o6.is_some(), row.kappa <= SMALL_O6_MAX_KAPPA);
            assert_eq!(row.large.is_some(), row.kappa >= LARGE_MIN_KAPPA);
        }
    }

    #[test]
    fn csv_format_contract() {
        let tk = Toolkit::default();
        let rows = fig1_rows(&tk, 0.1, 10.0, 4).unwrap();
        let mut buf = Vec::new();
        write_fig1(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], FIG1_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(!text.contains('\r'), "LF line endings only");
        // Reparse columns and compare against fresh evaluations.
        for (line, row) in lines[1..].iter().zip(&rows) {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells.len(), 4);
            let k: f64 = cells[0].parse().unwrap();
            assert!((k - row.kappa).abs() <= 1e-11 * row.kappa);
            match row.nystrom {
                Some(v) => {
                    let parsed: f64 = cells[1].parse().unwrap();
                    assert!((parsed - v).abs() <= 1e-11 * v.abs());
                }
                None => assert_eq!(cells[1], "NA"),
            }
        }
    }

    #[test]
    fn invalid_grids_are_rejected() {
        let tk = Toolkit::default();
        assert!(fig1_rows(&tk, 1.0, 0.5, 10).is_err());
        assert!(fig1_rows(&tk, 0.1, 1.0, 1).is_err());
        assert!(fig1_rows(&tk, -1.0, 1.0, 10).is_err());
    }

    #[test]
    fn table_uses_auto_labels() {
        let tk = Toolkit::default();
        let mut buf = Vec::new();
        write_table(&tk, &mut buf, 0.1, 10.0, 3, MethodSelector::Auto).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("kappa,C,method,error_estimate\n"));
        assert!(text.contains("small(order=7)"));
        assert!(text.contains("nystrom"));
        assert!(text.contains("large"));
    }
}
