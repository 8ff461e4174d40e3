//! Machine-readable emission: CSV (default) and JSON.
//!
//! Field order is fixed per record type and stamped with a schema
//! version. Numbers are printed with shortest round-trip formatting and
//! no locale, so identical runs produce identical bytes.

use std::fmt::Write as _;

/// Current output schema stamp.
pub const SCHEMA_VERSION: &str = "crsn-1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Value {
    F(f64),
    U(u64),
    B(bool),
    S(String),
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::F(x) => format!("{x}"),
            Value::U(x) => format!("{x}"),
            Value::B(x) => format!("{x}"),
            Value::S(x) => x.clone(),
        }
    }

    fn json(&self) -> String {
        match self {
            Value::F(x) if x.is_finite() => serde_json::to_string(x).unwrap(),
            Value::F(_) => "null".to_string(),
            Value::U(x) => serde_json::to_string(x).unwrap(),
            Value::B(x) => serde_json::to_string(x).unwrap(),
            Value::S(x) => serde_json::to_string(x).unwrap(),
        }
    }
}

/// One output record: ordered named fields.
#[derive(Debug, Clone, Default)]
pub struct Record {
    fields: Vec<(&'static str, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Record {
            fields: vec![("schema_version", Value::S(SCHEMA_VERSION.to_string()))],
        }
    }

    pub fn f(mut self, name: &'static str, v: f64) -> Self {
        self.fields.push((name, Value::F(v)));
        self
    }

    pub fn u(mut self, name: &'static str, v: u64) -> Self {
        self.fields.push((name, Value::U(v)));
        self
    }

    pub fn b(mut self, name: &'static str, v: bool) -> Self {
        self.fields.push((name, Value::B(v)));
        self
    }

    pub fn s(mut self, name: &'static str, v: &str) -> Self {
        self.fields.push((name, Value::S(v.to_string())));
        self
    }

    fn json_object(&self) -> String {
        let mut s = String::from("{");
        for (i, (name, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}:{}", serde_json::to_string(name).unwrap(), v.json());
        }
        s.push('}');
        s
    }
}

/// Render records in the chosen format; all records must share one
/// field layout.
pub fn render(records: &[Record], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            if let Some(first) = records.first() {
                let header: Vec<&str> = first.fields.iter().map(|(n, _)| *n).collect();
                out.push_str(&header.join(","));
                out.push('\n');
            }
            for rec in records {
                let row: Vec<String> = rec.fields.iter().map(|(_, v)| v.csv()).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let mut out = String::from("[");
            for (i, rec) in records.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                out.push_str(&rec.json_object());
            }
            out.push_str("\n]\n");
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout_is_stable() {
        let r = Record::new().f("x", 1.5).u("n", 3).b("ok", true).s("tag", "a");
        let text = render(&[r.clone(), r], Format::Csv);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "schema_version,x,n,ok,tag");
        assert_eq!(lines.next().unwrap(), "crsn-1,1.5,3,true,a");
    }

    #[test]
    fn json_is_valid_and_ordered() {
        let r = Record::new().f("x", 0.1).f("bad", f64::NAN);
        let text = render(&[r], Format::Json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["x"], 0.1);
        assert!(v[0]["bad"].is_null());
        let x_pos = text.find("\"x\"").unwrap();
        let bad_pos = text.find("\"bad\"").unwrap();
        assert!(x_pos < bad_pos);
    }
}
