//! Output records and their two renderings: an aligned table for people and
//! line-delimited JSON for tools. Big values are always exact decimal strings.

use std::io::{self, Write};

use serde::Serialize;

/// One verified term of a closed form (pell, cbc, seq).
#[derive(Debug, Clone, Serialize)]
pub struct TermRecord {
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
    pub value: String,
    pub oracle: String,
    pub matched: bool,
    pub elapsed_ms: f64,
}

/// Root-scan and conjecture-scan observation.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRecord {
    pub a: u64,
    pub n: u32,
    pub k: Option<u64>,
    pub c: Option<i64>,
    pub variant: String,
    pub value_decimal: Option<String>,
    pub error_decimal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub matched: Option<bool>,
    pub skipped_reason: Option<String>,
    pub modulus_digits: u64,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureSummary {
    pub matches: usize,
    pub mismatches: usize,
    pub skipped: usize,
    pub max_modulus_digits: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub suite: String,
    pub n: u64,
    pub operation: String,
    pub repetitions: u32,
    pub median_ms: f64,
}

pub trait Tabular {
    fn headers() -> Vec<&'static str>;
    fn row(&self) -> Vec<String>;
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), ToString::to_string)
}

fn ms(v: f64) -> String {
    format!("{v:.3}")
}

impl Tabular for TermRecord {
    fn headers() -> Vec<&'static str> {
        vec!["n", "value", "oracle", "match", "elapsed_ms"]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.value.clone(),
            self.oracle.clone(),
            self.matched.to_string(),
            ms(self.elapsed_ms),
        ]
    }
}

impl Tabular for ScanRecord {
    fn headers() -> Vec<&'static str> {
        vec![
            "a",
            "n",
            "k",
            "c",
            "variant",
            "value",
            "error",
            "expected",
            "match",
            "skipped",
            "modulus_digits",
            "elapsed_ms",
        ]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.a.to_string(),
            self.n.to_string(),
            opt(&self.k),
            opt(&self.c),
            self.variant.clone(),
            opt(&self.value_decimal),
            opt(&self.error_decimal),
            opt(&self.expected),
            opt(&self.matched),
            opt(&self.skipped_reason),
            self.modulus_digits.to_string(),
            ms(self.elapsed_ms),
        ]
    }
}

impl Tabular for BenchRecord {
    fn headers() -> Vec<&'static str> {
        vec!["suite", "n", "operation", "reps", "median_ms"]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.suite.clone(),
            self.n.to_string(),
            self.operation.clone(),
            self.repetitions.to_string(),
            ms(self.median_ms),
        ]
    }
}

pub fn render_table<R: Tabular>(records: &[R]) -> String {
    let headers = R::headers();
    let rows: Vec<Vec<String>> = records.iter().map(Tabular::row).collect();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(headers.clone());
    out.push('\n');
    for row in &rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

pub fn emit<R: Tabular + Serialize>(json: bool, records: &[R]) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if json {
        for r in records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
    } else {
        out.write_all(render_table(records).as_bytes())?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let recs = vec![
            TermRecord {
                n: 1,
                term: None,
                base: None,
                exponent: None,
                value: "1".into(),
                oracle: "1".into(),
                matched: true,
                elapsed_ms: 0.0,
            },
            TermRecord {
                n: 12,
                term: None,
                base: None,
                exponent: None,
                value: "13860".into(),
                oracle: "13860".into(),
                matched: true,
                elapsed_ms: 1.5,
            },
        ];
        let t = render_table(&recs);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], " n  value  oracle  match  elapsed_ms");
        assert_eq!(lines[2], "12  13860   13860   true       1.500");
    }

    #[test]
    fn absent_fields_serialize_as_null() {
        let r = ScanRecord {
            a: 4,
            n: 2,
            k: None,
            c: None,
            variant: "conjecture".into(),
            value_decimal: None,
            error_decimal: None,
            expected: Some("2".into()),
            matched: None,
            skipped_reason: Some("perfect_power".into()),
            modulus_digits: 10,
            elapsed_ms: 0.0,
        };
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert!(v["k"].is_null());
        assert_eq!(v["skipped_reason"], "perfect_power");
    }
}
