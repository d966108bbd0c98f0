use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Ascii,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse {
                input: s.to_string(),
                position: 0,
                message: "expected json, csv or ascii".into(),
            }),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Ascii => "ascii",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Flat rows, rendered as CSV or as an aligned text table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.headers).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_ascii(&self) -> String {
        let cols = self.headers.len();
        let width: Vec<usize> = (0..cols)
            .map(|j| {
                self.rows
                    .iter()
                    .map(|r| r.get(j).map_or(0, |c| c.chars().count()))
                    .chain([self.headers[j].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(j, c)| format!("{c:>w$}", w = width[j]))
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = line(&self.headers);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}

/// What a command prints, in every format.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub table: Table,
    /// Replaces the table in ascii mode when present.
    pub ascii: Option<String>,
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n"),
            Format::Csv => self.table.to_csv(),
            Format::Ascii => Ok(self.ascii.clone().unwrap_or_else(|| self.table.to_ascii())),
        }
    }
}

/// Inclusive integer range written `a..b` (or a single integer).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn iter(self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |position: usize, message: &str| Error::Parse {
            input: s.to_string(),
            position,
            message: message.to_string(),
        };
        let (a, b, off) = match s.split_once("..") {
            Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b), a.len() + 2),
            None => (s, s, 0),
        };
        let lo = a.trim().parse().map_err(|_| bad(0, "expected an integer"))?;
        let hi = b.trim().parse().map_err(|_| bad(off, "expected an integer"))?;
        if lo > hi {
            return Err(bad(0, "empty range"));
        }
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("0..4".parse::<IntRange>().unwrap(), IntRange { lo: 0, hi: 4 });
        assert_eq!("-3..=-1".parse::<IntRange>().unwrap(), IntRange { lo: -3, hi: -1 });
        assert_eq!("2".parse::<IntRange>().unwrap(), IntRange { lo: 2, hi: 2 });
        assert!(matches!("3..x".parse::<IntRange>(), Err(Error::Parse { position: 3, .. })));
        assert!("4..1".parse::<IntRange>().is_err());
    }

    #[test]
    fn tables() {
        let mut t = Table::new(&["n", "dim"]);
        t.push(vec!["0".into(), "12".into()]);
        assert_eq!(t.to_csv().unwrap(), "n,dim\n0,12\n");
        assert_eq!(t.to_ascii(), "n  dim\n0   12\n");
    }
}
