//! Result records and their three output formats.

use std::fmt::Write as _;

use isoptic_core::format::num;

use crate::args::Format;

/// Ordered key/value pairs; key order is part of the output contract.
#[derive(Debug, Default)]
pub struct Record(Vec<(&'static str, String)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(mut self, key: &'static str, value: impl ToString) -> Self {
        self.0.push((key, value.to_string()));
        self
    }

    pub fn real(self, key: &'static str, value: f64) -> Self {
        self.text(key, num(value))
    }

    pub fn reals(self, key: &'static str, values: &[f64]) -> Self {
        let joined = values.iter().map(|&v| num(v)).collect::<Vec<_>>().join(",");
        self.text(key, joined)
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Kv => {
                let line: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
                s.push_str(&line.join(" "));
                s.push('\n');
            }
            Format::Human => {
                let width = self.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.0 {
                    let _ = writeln!(s, "{k:<width$}  {}", v.replace(',', ", "));
                }
            }
            Format::Csv => {
                let keys: Vec<&str> = self.0.iter().map(|(k, _)| *k).collect();
                let values: Vec<String> = self.0.iter().map(|(_, v)| csv_field(v)).collect();
                let _ = writeln!(s, "{}", keys.join(","));
                let _ = writeln!(s, "{}", values.join(","));
            }
        }
        s
    }
}

fn csv_field(v: &str) -> String {
    if v.contains([',', '"']) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_owned()
    }
}
