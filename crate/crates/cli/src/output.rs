use serde::Serialize;
use serde_json::{Map, Value};

use crate::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

/// Rows with a fixed column order; cells are JSON values.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything a command prints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    #[serde(serialize_with = "rows_as_objects")]
    pub rows: Table,
    /// Trailing key/value summary (CSV: `# key=value` lines).
    pub summary: Map<String, Value>,
    pub format_version: u32,
}

fn rows_as_objects<S: serde::Serializer>(t: &Table, s: S) -> Result<S::Ok, S::Error> {
    let objs: Vec<Map<String, Value>> = t
        .rows
        .iter()
        .map(|r| {
            t.columns
                .iter()
                .zip(r)
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect()
        })
        .collect();
    objs.serialize(s)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl OutputRecord {
    pub fn new(command: &str, rows: Table) -> Self {
        OutputRecord {
            command: command.into(),
            inputs: Map::new(),
            rows,
            summary: Map::new(),
            format_version: FORMAT_VERSION,
        }
    }

    pub fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.into(), v.into());
        self
    }

    pub fn summarize(&mut self, key: &str, v: impl Into<Value>) {
        self.summary.insert(key.into(), v.into());
    }

    /// Header, one line per row, then the summary as `#` comment lines.
    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::Internal(format!("CSV encoding: {e}"));
        w.write_record(&self.rows.columns).map_err(fail)?;
        for r in &self.rows.rows {
            w.write_record(r.iter().map(cell)).map_err(fail)?;
        }
        let mut out = w
            .into_inner()
            .map_err(|e| CliError::Internal(format!("CSV encoding: {e}")))?;
        for (k, v) in &self.summary {
            out.extend_from_slice(format!("# {k}={}\n", cell(v)).as_bytes());
        }
        String::from_utf8(out).map_err(|e| CliError::Internal(format!("CSV encoding: {e}")))
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Internal(format!("JSON encoding: {e}")))?;
        s.push('\n');
        Ok(s)
    }
}
