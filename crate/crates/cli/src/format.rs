//! NDJSON and CSV records, and JSON dumps of exact forms.
//!
//! Computed floats are written with 17 significant digits and input
//! echoes with the shortest round-trip form, so parsing any emitted line and
//! writing it again reproduces it byte for byte.

use std::io::{Read, Write};

use besselrec_core::asymptotic::Family;
use besselrec_core::closed::{BesselProductForm, ExpClosedForm};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::CliError;

pub const CSV_HEADER: [&str; 7] = ["method", "family", "N", "nu", "z", "value", "error_estimate"];

/// `x` with 17 significant digits.
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

fn raw(text: String) -> Box<RawValue> {
    RawValue::from_string(text).expect("formatted finite float is a JSON number")
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::F => "F",
        Family::G => "G",
    }
}

fn parse_family(s: &str) -> Result<Family, CliError> {
    match s {
        "F" => Ok(Family::F),
        "G" => Ok(Family::G),
        _ => Err(CliError::Usage(format!("unknown family {s:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Asymptotic,
    Product,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Asymptotic => "asymptotic",
            Method::Product => "product",
            Method::Quadrature => "quadrature",
        }
    }

    fn parse(s: &str) -> Result<Method, CliError> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| CliError::Usage(format!("unknown method {s:?}")))
    }
}

/// One evaluation of `F` or `G` at one `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub method: Method,
    pub family: Family,
    pub n: f64,
    pub nu: f64,
    pub z: f64,
    pub value: f64,
    pub error_estimate: Option<f64>,
    /// Compact JSON of the exact form behind `value`, if any.
    pub exact: Option<String>,
}

#[derive(Serialize)]
struct RecordOut<'a> {
    method: Method,
    family: &'a str,
    #[serde(rename = "N")]
    n: Box<RawValue>,
    nu: Box<RawValue>,
    z: Box<RawValue>,
    value: Box<RawValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_estimate: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<Box<RawValue>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordIn {
    method: Method,
    family: String,
    #[serde(rename = "N")]
    n: f64,
    nu: f64,
    z: f64,
    value: f64,
    error_estimate: Option<f64>,
    exact: Option<Box<RawValue>>,
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        let out = RecordOut {
            method: self.method,
            family: family_name(self.family),
            n: raw(self.n.to_string()),
            nu: raw(self.nu.to_string()),
            z: raw(self.z.to_string()),
            value: raw(float17(self.value)),
            error_estimate: self.error_estimate.map(|e| raw(float17(e))),
            exact: self.exact.clone().map(|e| RawValue::from_string(e).expect("exact dump is JSON")),
        };
        serde_json::to_string(&out).expect("record serializes")
    }

    pub fn from_json(line: &str) -> Result<OutputRecord, CliError> {
        let r: RecordIn =
            serde_json::from_str(line).map_err(|e| CliError::Usage(format!("bad record: {e}")))?;
        Ok(OutputRecord {
            method: r.method,
            family: parse_family(&r.family)?,
            n: r.n,
            nu: r.nu,
            z: r.z,
            value: r.value,
            error_estimate: r.error_estimate,
            exact: r.exact.map(|e| e.get().to_string()),
        })
    }

    fn csv_fields(&self) -> [String; 7] {
        [
            self.method.as_str().to_string(),
            family_name(self.family).to_string(),
            self.n.to_string(),
            self.nu.to_string(),
            self.z.to_string(),
            float17(self.value),
            self.error_estimate.map(float17).unwrap_or_default(),
        ]
    }
}

pub fn write_json<W: Write>(records: &[OutputRecord], mut w: W) -> Result<(), CliError> {
    for r in records {
        writeln!(w, "{}", r.to_json())?;
    }
    Ok(())
}

pub fn read_json<R: Read>(mut r: R) -> Result<Vec<OutputRecord>, CliError> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    text.lines().filter(|l| !l.trim().is_empty()).map(OutputRecord::from_json).collect()
}

/// CSV with [`CSV_HEADER`]; the exact dumps are not part of the table.
pub fn write_csv<W: Write>(records: &[OutputRecord], w: W) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER).map_err(csv_error)?;
    for r in records {
        out.write_record(r.csv_fields()).map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<OutputRecord>, CliError> {
    let mut reader = csv::Reader::from_reader(r);
    let header = reader.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(CliError::Usage(format!("unexpected CSV header {header:?}")));
    }
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("bad number {s:?} in CSV")))
    };
    reader
        .records()
        .map(|row| {
            let row = row.map_err(csv_error)?;
            let field = |i: usize| row.get(i).unwrap_or("");
            Ok(OutputRecord {
                method: Method::parse(field(0))?,
                family: parse_family(field(1))?,
                n: num(field(2))?,
                nu: num(field(3))?,
                z: num(field(4))?,
                value: num(field(5))?,
                error_estimate: match field(6) {
                    "" => None,
                    s => Some(num(s)?),
                },
                exact: None,
            })
        })
        .collect()
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

#[derive(Serialize)]
struct ClosedFormJson {
    pi_factor: String,
    power: u32,
    poly: Vec<String>,
}

/// `{"pi_factor":"1/2","power":1,"poly":["1","1"]}`.
pub fn closed_form_json(f: &ExpClosedForm) -> String {
    let dump = ClosedFormJson {
        pi_factor: f.pi_factor.to_string(),
        power: f.power,
        poly: f.poly.coeffs().iter().map(ToString::to_string).collect(),
    };
    serde_json::to_string(&dump).expect("closed form serializes")
}

#[derive(Serialize)]
struct TermJson {
    c: String,
    k: u32,
}

#[derive(Serialize)]
struct ProductFormJson {
    nu: u32,
    terms: Vec<TermJson>,
}

/// `{"nu":1,"terms":[{"c":"1/2","k":2},...]}`.
pub fn product_form_json(pf: &BesselProductForm) -> String {
    let dump = ProductFormJson {
        nu: pf.nu,
        terms: pf
            .terms
            .iter()
            .map(|t| TermJson {
                c: t.c.to_string(),
                k: t.k,
            })
            .collect(),
    };
    serde_json::to_string(&dump).expect("product form serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        OutputRecord {
            method: Method::Quadrature,
            family: Family::G,
            n: 3.0,
            nu: -0.5,
            z: 1e-3,
            value: std::f64::consts::PI * 1e-7,
            error_estimate: Some(2.5e-19),
            exact: None,
        }
    }

    #[test]
    fn json_line_shape() {
        let line = sample().to_json();
        assert_eq!(
            line,
            r#"{"method":"quadrature","family":"G","N":3,"nu":-0.5,"z":0.001,"value":3.1415926535897932e-7,"error_estimate":2.5000000000000002e-19}"#
        );
        assert_eq!(OutputRecord::from_json(&line).unwrap(), sample());
    }

    #[test]
    fn exact_dump_is_kept_verbatim() {
        let r = OutputRecord {
            exact: Some(r#"{"pi_factor":"1/2","power":1,"poly":["1"]}"#.into()),
            error_estimate: None,
            ..sample()
        };
        let line = r.to_json();
        assert!(line.ends_with(r#""exact":{"pi_factor":"1/2","power":1,"poly":["1"]}}"#));
        assert_eq!(OutputRecord::from_json(&line).unwrap().to_json(), line);
    }

    #[test]
    fn csv_round_trip() {
        let records = vec![sample(), OutputRecord { error_estimate: None, ..sample() }];
        let mut buf = Vec::new();
        write_csv(&records, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("method,family,N,nu,z,value,error_estimate\n"));
        let back = read_csv(text.as_bytes()).unwrap();
        assert_eq!(back, records);
        let mut again = Vec::new();
        write_csv(&back, &mut again).unwrap();
        assert_eq!(again, buf);
    }
}
