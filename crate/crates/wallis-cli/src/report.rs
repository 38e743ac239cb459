//! Report rows and their three renderings (CSV, JSON, aligned table).
//!
//! Formatting is byte-deterministic: floats always print through
//! [`fmt_float`] (17 significant digits, round-trip exact), key and column
//! order is fixed, and rows are emitted in the order they were produced.

use std::fmt::Write as _;

/// Output format selector shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Comma-separated with a header row.
    Csv,
    /// Array of objects, canonical key order.
    Json,
    /// Aligned human-readable columns.
    Table,
}

/// One verified case: what was computed, what it should equal, and whether
/// the discrepancy is covered by the error bound or the requested tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    /// Case identifier, stable across runs.
    pub case: String,
    /// Space-separated `key=value` inputs.
    pub inputs: String,
    /// Computed value.
    pub value: f64,
    /// Independent target value.
    pub target: f64,
    /// |value - target|.
    pub abs_err: f64,
    /// Error bound claimed by the producer.
    pub bound: f64,
    /// Terms, panels, or recurrence depth consumed.
    pub terms: u64,
    /// abs_err <= max(bound, tolerance).
    pub pass: bool,
}

impl ReportRow {
    /// Builds a row, deriving `abs_err` and the pass flag from `tol`.
    pub fn judged(
        case: impl Into<String>,
        inputs: impl Into<String>,
        value: f64,
        target: f64,
        bound: f64,
        terms: u64,
        tol: f64,
    ) -> Self {
        let abs_err = (value - target).abs();
        Self {
            case: case.into(),
            inputs: inputs.into(),
            value,
            target,
            abs_err,
            bound,
            terms,
            pass: abs_err <= bound.max(tol),
        }
    }
}

/// One sample of a convergence study toward a known limit.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergeRow {
    /// Case identifier, stable across runs.
    pub case: String,
    /// Truncation index (terms, angular momentum steps, or depth).
    pub k: u64,
    /// Value at this truncation.
    pub value: f64,
    /// |value - limit|.
    pub deviation: f64,
    /// Empirical order from the previous sample; 0.0 on the first row.
    pub order: f64,
}

/// 17-significant-digit scientific form; round-trips every finite f64.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

/// Renders verification rows in the chosen format, trailing newline included.
pub fn render_report(rows: &[ReportRow], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("case,inputs,value,target,abs_err,bound,terms,pass\n");
            for r in rows {
                debug_assert!(
                    !r.case.contains(',') && !r.inputs.contains(','),
                    "case labels must stay comma-free to keep the CSV unambiguous"
                );
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.case,
                    r.inputs,
                    fmt_float(r.value),
                    fmt_float(r.target),
                    fmt_float(r.abs_err),
                    fmt_float(r.bound),
                    r.terms,
                    r.pass
                );
            }
            out
        }
        Format::Json => {
            let mut out = String::from("[\n");
            for (i, r) in rows.iter().enumerate() {
                let _ = write!(
                    out,
                    "  {{\"case\":\"{}\",\"inputs\":\"{}\",\"value\":{},\"target\":{},\"abs_err\":{},\"bound\":{},\"terms\":{},\"pass\":{}}}",
                    json_escape(&r.case),
                    json_escape(&r.inputs),
                    fmt_float(r.value),
                    fmt_float(r.target),
                    fmt_float(r.abs_err),
                    fmt_float(r.bound),
                    r.terms,
                    r.pass
                );
                out.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
            }
            out.push_str("]\n");
            out
        }
        Format::Table => {
            let header = ["case", "inputs", "value", "target", "abs_err", "bound", "terms", "pass"];
            let cells: Vec<[String; 8]> = rows
                .iter()
                .map(|r| {
                    [
                        r.case.clone(),
                        r.inputs.clone(),
                        format!("{:.9e}", r.value),
                        format!("{:.9e}", r.target),
                        format!("{:.3e}", r.abs_err),
                        format!("{:.3e}", r.bound),
                        r.terms.to_string(),
                        if r.pass { "pass".into() } else { "FAIL".into() },
                    ]
                })
                .collect();
            render_table(&header, &cells)
        }
    }
}

/// Renders convergence rows in the chosen format, trailing newline included.
pub fn render_converge(rows: &[ConvergeRow], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("case,k,value,deviation,order\n");
            for r in rows {
                debug_assert!(!r.case.contains(','), "case labels must stay comma-free");
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.case,
                    r.k,
                    fmt_float(r.value),
                    fmt_float(r.deviation),
                    fmt_float(r.order)
                );
            }
            out
        }
        Format::Json => {
            let mut out = String::from("[\n");
            for (i, r) in rows.iter().enumerate() {
                let _ = write!(
                    out,
                    "  {{\"case\":\"{}\",\"k\":{},\"value\":{},\"deviation\":{},\"order\":{}}}",
                    json_escape(&r.case),
                    r.k,
                    fmt_float(r.value),
                    fmt_float(r.deviation),
                    fmt_float(r.order)
                );
                out.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
            }
            out.push_str("]\n");
            out
        }
        Format::Table => {
            let header = ["case", "k", "value", "deviation", "order"];
            let cells: Vec<[String; 5]> = rows
                .iter()
                .map(|r| {
                    [
                        r.case.clone(),
                        r.k.to_string(),
                        format!("{:.9e}", r.value),
                        format!("{:.3e}", r.deviation),
                        format!("{:.2}", r.order),
                    ]
                })
                .collect();
            render_table(&header, &cells)
        }
    }
}

fn render_table<const W: usize>(header: &[&str; W], rows: &[[String; W]]) -> String {
    let mut widths = [0usize; W];
    for (i, h) in header.iter().enumerate() {
        widths[i] = h.len();
    }
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, cells: &[&str]| {
        for (i, cell) in cells.iter().enumerate() {
            let _ = write!(out, "{:<width$}", cell, width = widths[i]);
            out.push_str(if i + 1 < cells.len() { "  " } else { "\n" });
        }
    };
    let header_cells: Vec<&str> = header.to_vec();
    emit(&mut out, &header_cells);
    for row in rows {
        let cells: Vec<&str> = row.iter().map(|s| s.as_str()).collect();
        emit(&mut out, &cells);
    }
    out
}

/// Exit-code mapping: 0 when every row passes, 1 otherwise.
pub fn exit_code(rows: &[ReportRow]) -> i32 {
    if rows.iter().all(|r| r.pass) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<ReportRow> {
        vec![
            ReportRow::judged("alpha", "b=2 a=0", 1.5, 1.5 + 1e-12, 1e-11, 42, 1e-9),
            ReportRow::judged("beta", "b=4", 2.0, 3.0, 1e-11, 7, 1e-9),
        ]
    }

    #[test]
    fn pass_flag_uses_max_of_bound_and_tolerance() {
        let rows = sample();
        assert!(rows[0].pass);
        assert!(!rows[1].pass);
        assert_eq!(exit_code(&rows), 1);
        assert_eq!(exit_code(&rows[..1]), 0);
    }

    #[test]
    fn float_format_round_trips() {
        for x in [1.5, core::f64::consts::PI, 4.0 / 3.0, 1e-300, -2.5e17] {
            let s = fmt_float(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }

    #[test]
    fn csv_and_json_carry_identical_numbers() {
        let rows = sample();
        let csv = render_report(&rows, Format::Csv);
        let json = render_report(&rows, Format::Json);
        for r in &rows {
            let v = fmt_float(r.value);
            assert!(csv.contains(&v) && json.contains(&v));
        }
        assert!(csv.starts_with("case,inputs,value,target,abs_err,bound,terms,pass\n"));
    }

    #[test]
    fn json_escapes_control_and_quote_characters() {
        assert_eq!(json_escape("a\"b\\c"), "a\\\"b\\\\c");
        assert_eq!(json_escape("x\ny"), "x\\u000ay");
    }

    #[test]
    fn converge_rows_render_in_every_format() {
        let rows = vec![ConvergeRow {
            case: "w".into(),
            k: 10,
            value: 1.25,
            deviation: 0.25,
            order: 0.0,
        }];
        assert!(render_converge(&rows, Format::Csv).starts_with("case,k,value,deviation,order\n"));
        assert!(render_converge(&rows, Format::Json).contains("\"k\":10"));
        assert!(render_converge(&rows, Format::Table).contains("deviation"));
    }
}
