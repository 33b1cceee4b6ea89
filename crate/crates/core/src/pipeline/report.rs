//! CSV comparison reports: `approach,weights,L,C,Delta,Q,pareto_layer`.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::ObjectiveVector;

use super::SchemeResult;

pub const REPORT_HEADER: [&str; 7] = ["approach", "weights", "L", "C", "Delta", "Q", "pareto_layer"];

/// `%g`-style formatting with `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn report_csv(result: &SchemeResult) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPORT_HEADER).expect("in-memory write");
    for e in &result.entries {
        let weights = e
            .weights
            .map(|w| {
                w.as_array()
                    .iter()
                    .map(|x| format_sig(*x, 6))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default();
        let v = e.objectives;
        w.write_record([
            e.approach.as_str().to_string(),
            weights,
            format_sig(v.length, 6),
            format_sig(v.cost, 6),
            format_sig(v.altitude, 6),
            format_sig(v.qos, 6),
            e.layer.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Writes the comparison table. Rows: MST, then MMST and MSTP entries in
/// sweep order.
pub fn write_report(result: &SchemeResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, report_csv(result)).map_err(|e| Error::io(path, e))
}

/// One row of a vector file.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorRow {
    pub label: Option<String>,
    pub vector: ObjectiveVector,
    pub layer: Option<usize>,
}

/// Parses any CSV with `L`, `C`, `Delta` and `Q` columns (by header name).
/// `approach`/`label` and `pareto_layer` columns are picked up when
/// present; anything else is ignored.
pub fn parse_vectors(text: &str) -> Result<Vec<VectorRow>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = r
        .headers()
        .map_err(|e| Error::invalid(format!("CSV header: {e}")))?
        .clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let need = |name: &str| {
        col(name).ok_or_else(|| Error::invalid(format!("CSV is missing column `{name}`")))
    };
    let (l, c, d, q) = (need("L")?, need("C")?, need("Delta")?, need("Q")?);
    let label = col("approach").or_else(|| col("label"));
    let layer = col("pareto_layer");

    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| Error::invalid(format!("CSV row {}: {e}", i + 1)))?;
        let num = |j: usize| -> Result<f64> {
            let s = rec.get(j).unwrap_or("");
            s.parse::<f64>()
                .map_err(|_| Error::invalid(format!("CSV row {}: `{s}` is not a number", i + 1)))
        };
        let layer = match layer.and_then(|j| rec.get(j)) {
            Some(s) => Some(s.parse::<usize>().map_err(|_| {
                Error::invalid(format!("CSV row {}: bad pareto_layer `{s}`", i + 1))
            })?),
            None => None,
        };
        rows.push(VectorRow {
            label: label.and_then(|j| rec.get(j)).map(str::to_string),
            vector: ObjectiveVector::new(num(l)?, num(c)?, num(q)?, num(d)?),
            layer,
        });
    }
    Ok(rows)
}

pub fn read_vectors(path: impl AsRef<Path>) -> Result<Vec<VectorRow>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_vectors(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(format_sig(69.98, 6), "69.98");
        assert_eq!(format_sig(1.0 / 3.0, 6), "0.333333");
        assert_eq!(format_sig(1.0, 6), "1");
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(-0.0, 6), "0");
        assert_eq!(format_sig(123456.7, 6), "123457");
        assert_eq!(format_sig(1234567.0, 6), "1.23457e+06");
        assert_eq!(format_sig(0.000123456789, 6), "0.000123457");
        assert_eq!(format_sig(0.0000123456789, 6), "1.23457e-05");
        assert_eq!(format_sig(999999.6, 6), "1e+06");
        assert_eq!(format_sig(-2.5, 6), "-2.5");
    }

    #[test]
    fn parses_by_header_name() {
        let text = "Q,Delta,C,L,extra\n4,3,2,1,x\n";
        let rows = parse_vectors(text).unwrap();
        assert_eq!(rows[0].vector, ObjectiveVector::new(1.0, 2.0, 4.0, 3.0));
        assert_eq!(rows[0].layer, None);
        assert!(parse_vectors("L,C,Q\n1,2,3\n").is_err());
        assert!(parse_vectors("L,C,Delta,Q\n1,2,x,3\n").is_err());
    }
}
