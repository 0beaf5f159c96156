//! Tabular output shared by every command, written as CSV or JSON.

use std::collections::BTreeMap;
use std::io::Write;

use hermite_spread_core::{ExactReal, Real};
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Int,
    Float,
    /// An `ExactReal` in its text form, next to the float column it belongs to.
    Exact,
    Text,
    Bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
    pub kind: Kind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: u32,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
}

/// Formats numbers with a fixed number of significant digits.
#[derive(Clone, Copy, Debug)]
pub struct Fmt {
    pub digits: usize,
}

impl Fmt {
    pub fn real(&self, x: &Real) -> Value {
        number(&x.to_sci_string(self.digits))
    }

    /// Doubles carry at most 17 significant digits.
    pub fn f64(&self, x: f64) -> Value {
        if !x.is_finite() {
            return Value::Null;
        }
        number(&format!("{:.*e}", self.digits.clamp(1, 17) - 1, x))
    }

    pub fn exact(&self, x: &ExactReal) -> [Value; 2] {
        [self.real(&x.to_float(self.bits_for_digits())), Value::String(x.to_string())]
    }

    fn bits_for_digits(&self) -> usize {
        (self.digits * 4).max(64) + 32
    }
}

fn number(s: &str) -> Value {
    s.parse::<Number>().map(Value::Number).unwrap_or(Value::Null)
}

pub fn int(i: usize) -> Value {
    Value::from(i as u64)
}

/// Builds the column list; `exact` adds a `<name>_exact` column right after.
#[derive(Default)]
pub struct Columns(Vec<Column>);

impl Columns {
    pub fn push(&mut self, name: &str, unit: &str, kind: Kind) -> &mut Self {
        self.0.push(Column {
            name: name.to_string(),
            unit: unit.to_string(),
            kind,
        });
        self
    }

    pub fn exact(&mut self, name: &str, unit: &str) -> &mut Self {
        self.push(name, unit, Kind::Float);
        self.push(&format!("{name}_exact"), unit, Kind::Exact)
    }

    pub fn build(&mut self) -> Vec<Column> {
        std::mem::take(&mut self.0)
    }
}

impl OutputRecord {
    pub fn new(command: &str, parameters: BTreeMap<String, String>, columns: Vec<Column>) -> Self {
        OutputRecord {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            parameters,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        out.write_all(b"\n")
    }

    /// Header cells are `name [unit]`; exact values are written verbatim.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.columns.iter().map(|c| format!("{} [{}]", c.name, c.unit)))?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell_text))?;
        }
        w.flush()
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_keep_their_digits() {
        let f = Fmt { digits: 25 };
        let v = f.real(&Real::one(128).ldexp(-1));
        assert_eq!(v.to_string(), "5.000000000000000000000000e-1");
        assert_eq!(Fmt { digits: 3 }.f64(2.9216), number("2.92e0"));
        assert_eq!(Fmt { digits: 3 }.f64(f64::NAN), Value::Null);
    }

    #[test]
    fn csv_header_has_units() {
        let mut cols = Columns::default();
        cols.push("n", "1", Kind::Int).exact("std_dev", "x");
        let mut r = OutputRecord::new("t", BTreeMap::new(), cols.build());
        r.rows.push(vec![int(0), number("7.0710678e-1"), Value::String("1/2 * sqrt(2)".into())]);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "n [1],std_dev [x],std_dev_exact [x]\n0,7.0710678e-1,1/2 * sqrt(2)\n"
        );
    }
}
