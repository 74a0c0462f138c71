//! Output formats. Every function returns the complete text so callers can
//! write it in one piece; the same input always yields the same bytes.

use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use flowface::{FVector, FishburnMatrix, LaurentPoly, NetflowVector, TruncatedSeries};
use num_bigint::BigInt;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
    Tex,
    Dot,
}

fn unsupported(format: Format, what: &str) -> anyhow::Error {
    anyhow::anyhow!("format {format:?} is not available for {what}")
}

fn big(v: &BigInt) -> Value {
    serde_json::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

pub fn fvector_json(fv: &FVector) -> Value {
    Value::Object(fv.iter().map(|(d, v)| (d.to_string(), big(v))).collect())
}

fn laurent_json(p: &LaurentPoly) -> Value {
    Value::Object(p.terms().map(|(e, c)| (e.to_string(), big(c))).collect())
}

pub fn netflow_json(a: &NetflowVector) -> Value {
    Value::Array(a.bits().iter().map(|&b| Value::from(u8::from(b))).collect())
}

fn tuple(fv: &FVector) -> String {
    let parts: Vec<String> = fv.entries().iter().map(BigInt::to_string).collect();
    format!("({})", parts.join(", "))
}

fn csv_row(n: usize, fv: &FVector) -> String {
    let mut row = n.to_string();
    for v in fv.entries() {
        let _ = write!(row, ",{v}");
    }
    row
}

fn tex_table(header: &str, rows: &[(usize, FVector)]) -> String {
    let mut out = String::from("\\begin{tabular}{c p{15cm}}\n\\hline\n");
    let _ = writeln!(out, "$n$ & {header}\\\\");
    out.push_str("\\hline\n");
    for (n, fv) in rows {
        let _ = writeln!(out, "${n}$ & ${}$\\\\", tuple(fv));
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}

/// Which face numbers a row holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// All faces.
    F,
    /// Primitive faces.
    Primitive,
}

impl Which {
    fn key(self) -> &'static str {
        match self {
            Which::F => "fvector",
            Which::Primitive => "primitive",
        }
    }

    fn tex_header(self) -> &'static str {
        match self {
            Which::F => "$f$-vector of $CRY_n$",
            Which::Primitive => "$\\widetilde{f}$ of $CRY_n$",
        }
    }
}

/// One f-vector, labelled by `n` and optionally by its netflow vector.
pub fn fvector(
    format: Format,
    n: usize,
    netflow: Option<&NetflowVector>,
    which: Which,
    fv: &FVector,
) -> Result<String> {
    Ok(match format {
        Format::Plain => format!("{}\n", tuple(fv)),
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("n".into(), Value::from(n));
            if let Some(a) = netflow {
                obj.insert("netflow".into(), netflow_json(a));
            }
            obj.insert(which.key().into(), fvector_json(fv));
            format!("{}\n", Value::Object(obj))
        }
        Format::Csv => format!("{}\n", csv_row(n, fv)),
        Format::Tex => tex_table(which.tex_header(), &[(n, fv.clone())]),
        Format::Dot => return Err(unsupported(format, "f-vectors")),
    })
}

/// Rows `n = 1, 2, ...` of f-vectors.
pub fn table(format: Format, which: Which, rows: &[(usize, FVector)]) -> Result<String> {
    Ok(match format {
        Format::Plain => rows
            .iter()
            .map(|(n, fv)| format!("{n}\t{}\n", tuple(fv)))
            .collect(),
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|(n, fv)| {
                    let mut obj = Map::new();
                    obj.insert("n".into(), Value::from(*n));
                    obj.insert(which.key().into(), fvector_json(fv));
                    Value::Object(obj)
                })
                .collect();
            format!("{}\n", Value::Array(list))
        }
        Format::Csv => rows.iter().map(|(n, fv)| csv_row(*n, fv) + "\n").collect(),
        Format::Tex => tex_table(which.tex_header(), rows),
        Format::Dot => return Err(unsupported(format, "tables")),
    })
}

/// Truncated series in `t`, one Laurent polynomial per power.
pub fn series(format: Format, name: &str, s: &TruncatedSeries) -> Result<String> {
    Ok(match format {
        Format::Plain => s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| format!("t^{k}: {c}\n"))
            .collect(),
        Format::Json => {
            let coeffs: Map<String, Value> = s
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (k.to_string(), laurent_json(c)))
                .collect();
            let mut obj = Map::new();
            obj.insert("series".into(), Value::from(name));
            obj.insert("order".into(), Value::from(s.order()));
            obj.insert("coefficients".into(), Value::Object(coeffs));
            format!("{}\n", Value::Object(obj))
        }
        Format::Csv => {
            let mut out = String::new();
            for (k, c) in s.coeffs().iter().enumerate() {
                for (e, v) in c.terms() {
                    let _ = writeln!(out, "{k},{e},{v}");
                }
            }
            out
        }
        Format::Tex | Format::Dot => return Err(unsupported(format, "series")),
    })
}

/// Primitive Fishburn matrices.
pub fn matrices(format: Format, list: &[FishburnMatrix]) -> Result<String> {
    Ok(match format {
        Format::Plain => list
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let rows: Vec<String> = list.iter().map(FishburnMatrix::to_json).collect();
            format!("[{}]\n", rows.join(","))
        }
        Format::Csv | Format::Tex | Format::Dot => return Err(unsupported(format, "matrices")),
    })
}

pub fn integer(format: Format, fields: &[(&str, Value)], value: &BigInt) -> Result<String> {
    Ok(match format {
        Format::Plain => format!("{value}\n"),
        Format::Json => {
            let mut obj: Map<String, Value> = fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            obj.insert("count".into(), big(value));
            format!("{}\n", Value::Object(obj))
        }
        Format::Csv => {
            let mut row: Vec<String> = fields
                .iter()
                .filter(|(_, v)| !v.is_array())
                .map(|(_, v)| v.to_string())
                .collect();
            row.push(value.to_string());
            format!("{}\n", row.join(","))
        }
        Format::Tex | Format::Dot => return Err(unsupported(format, "counts")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_rows() {
        let fv = FVector::from_entries([1, 1]);
        assert_eq!(
            fvector(Format::Csv, 1, None, Which::F, &fv).unwrap(),
            "1,1,1\n"
        );
        let fv = FVector::from_entries([1, 2, 1]);
        assert_eq!(fvector_json(&fv).to_string(), r#"{"-1":1,"0":2,"1":1}"#);
    }

    #[test]
    fn json_keys_keep_dimension_order() {
        let fv = FVector::from_entries(1..=13);
        let text = fvector_json(&fv).to_string();
        assert!(text.find("\"9\"").unwrap() < text.find("\"10\"").unwrap());
    }

    #[test]
    fn dot_is_rejected_for_fvectors() {
        let fv = FVector::from_entries([1, 1]);
        assert!(fvector(Format::Dot, 1, None, Which::F, &fv).is_err());
    }
}
