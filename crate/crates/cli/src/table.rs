//! Tabular output shared by every subcommand.

use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use qsmoments_core::{ExactRational, MomentMode, MomentValue};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde_json::value::RawValue;

use crate::error::{CliError, CliResult};

/// One table cell. Integers and reals are emitted as bare JSON numbers,
/// rationals as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(BigInt),
    Rational(ExactRational),
    Real(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn int(v: impl Into<BigInt>) -> Self {
        Cell::Int(v.into())
    }

    pub fn text(v: impl Into<String>) -> Self {
        Cell::Text(v.into())
    }

    /// A moment value: rational in exact mode, real in float mode.
    pub fn moment(v: MomentValue) -> Self {
        match v {
            MomentValue::Exact(r) => Cell::Rational(r),
            MomentValue::Float(_) => Cell::Real(v.to_f64()),
        }
    }

    /// An exact quantity shown per the output mode.
    pub fn exact_or_real(v: ExactRational, mode: MomentMode) -> Self {
        match mode {
            MomentMode::Exact => Cell::Rational(v),
            MomentMode::Float => Cell::Real(v.to_f64()),
        }
    }

    fn is_json_number(&self) -> bool {
        match self {
            Cell::Int(_) => true,
            Cell::Real(x) => x.is_finite(),
            _ => false,
        }
    }
}

/// Reals carry 17 significant digits, enough to round-trip any `f64`.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Rational(r) => write!(f, "{r}"),
            Cell::Real(x) => f.write_str(&format_real(*x)),
            Cell::Text(t) => f.write_str(t),
            Cell::Empty => Ok(()),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Empty => serializer.serialize_none(),
            c if c.is_json_number() => {
                let raw = RawValue::from_string(c.to_string()).map_err(serde::ser::Error::custom)?;
                raw.serialize(serializer)
            }
            c => serializer.serialize_str(&c.to_string()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Meta {
    pub mode: &'static str,
    pub seed: Option<u64>,
    pub rng_id: Option<&'static str>,
}

impl Serialize for Meta {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Meta", 4)?;
        st.serialize_field("version", env!("CARGO_PKG_VERSION"))?;
        st.serialize_field("mode", self.mode)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("rng_id", &self.rng_id)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct OutputTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Meta,
}

impl OutputTable {
    pub fn new(columns: &[&str], mode: &'static str) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            meta: Meta {
                mode,
                ..Meta::default()
            },
        }
    }

    /// Appends a row; a length mismatch is a bug in the calling command.
    pub fn push(&mut self, row: Vec<Cell>) -> CliResult<()> {
        if row.len() != self.columns.len() {
            return Err(CliError::Invariant(format!(
                "row has {} cells, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> CliResult<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self).map_err(|e| CliError::Io(e.into()))?;
                writeln!(out)?;
                Ok(())
            }
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| CliError::Io(e.into());
        w.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_string)).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        let mut buf = Vec::new();
        self.write(format, &mut buf)?;
        Ok(String::from_utf8(buf).expect("tables are UTF-8"))
    }
}
