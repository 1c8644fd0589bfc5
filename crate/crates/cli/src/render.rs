//! Text, CSV and JSON rendering of exact results.
//!
//! Decimal columns are produced with half-to-even rounding from the exact
//! rationals; `*_exact` columns carry the canonical `p/q` strings.

use gft_core::{to_decimal, to_exact_string, BestOfReport, Rational, RationalReport, SweepRow};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy)]
pub struct OutputFormat {
    pub kind: Format,
    pub digits: usize,
    pub exact: bool,
}

pub const SWEEP_HEADER: &str = "H,opt,bo,so,ratio,ratio_lower,ratio_upper";
const SWEEP_EXACT_HEADER: &str =
    "opt_exact,bo_exact,so_exact,ratio_exact,ratio_lower_exact,ratio_upper_exact";

fn report_fields(report: &RationalReport) -> [(&'static str, Option<&Rational>); 6] {
    [
        ("opt", Some(&report.opt)),
        ("so", Some(&report.so)),
        ("bo", Some(&report.bo)),
        ("random_offerer", Some(&report.random_offerer)),
        ("best_of", Some(&report.best_of)),
        ("ratio", report.ratio.as_ref()),
    ]
}

pub fn render_report(report: &RationalReport, fmt: OutputFormat) -> String {
    let fields = report_fields(report);
    match fmt.kind {
        Format::Text => {
            let mut out = String::new();
            for (name, value) in fields {
                let shown =
                    value.map_or_else(|| "undefined".to_owned(), |v| to_decimal(v, fmt.digits));
                out.push_str(&format!("{name:<14} = {shown}\n"));
                if fmt.exact {
                    let exact = value.map_or_else(|| "undefined".to_owned(), to_exact_string);
                    out.push_str(&format!("{:<14} = {exact}\n", format!("{name}_exact")));
                }
            }
            out
        }
        Format::Csv => {
            let mut header: Vec<String> = fields.iter().map(|(n, _)| n.to_string()).collect();
            let mut row: Vec<String> = fields
                .iter()
                .map(|(_, v)| v.map(|v| to_decimal(v, fmt.digits)).unwrap_or_default())
                .collect();
            if fmt.exact {
                header.extend(fields.iter().map(|(n, _)| format!("{n}_exact")));
                row.extend(
                    fields
                        .iter()
                        .map(|(_, v)| v.map(to_exact_string).unwrap_or_default()),
                );
            }
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
        Format::Json => {
            let mut map = Map::new();
            for (name, value) in fields {
                map.insert(
                    name.to_owned(),
                    value.map_or(Value::Null, |v| Value::String(to_decimal(v, fmt.digits))),
                );
            }
            if fmt.exact {
                for (name, value) in fields {
                    map.insert(
                        format!("{name}_exact"),
                        value.map_or(Value::Null, |v| Value::String(to_exact_string(v))),
                    );
                }
            }
            let mut text =
                serde_json::to_string_pretty(&Value::Object(map)).expect("string map serializes");
            text.push('\n');
            text
        }
    }
}

/// CSV with header [`SWEEP_HEADER`], optionally followed by the exact columns.
pub fn render_sweep_csv(rows: &[SweepRow<Rational>], digits: usize, exact: bool) -> String {
    let mut out = String::from(SWEEP_HEADER);
    if exact {
        out.push(',');
        out.push_str(SWEEP_EXACT_HEADER);
    }
    out.push('\n');
    for row in rows {
        let values = [
            &row.opt,
            &row.bo,
            &row.so,
            &row.ratio,
            &row.ratio_lower,
            &row.ratio_upper,
        ];
        out.push_str(&row.h.to_string());
        for v in values {
            out.push(',');
            out.push_str(&to_decimal(v, digits));
        }
        if exact {
            for v in values {
                out.push(',');
                out.push_str(&to_exact_string(v));
            }
        }
        out.push('\n');
    }
    out
}

pub fn render_best_of(report: &BestOfReport<Rational>) -> String {
    let show = to_exact_string;
    format!(
        "fixed price = {}\n\
         opt = {}\n\
         second_best = opt = {}\n\
         so = {}\n\
         bo = {}\n\
         best_of/second_best = {}\n",
        show(&report.fixed_price),
        show(&report.opt),
        show(&report.second_best),
        show(&report.so),
        show(&report.bo),
        show(&report.best_of_fraction),
    )
}
