//! Tables and their CSV / JSON renderings.

use serde_json::{json, Map, Value};

use super::config::{ExperimentConfig, OutputFormat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.9e}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Float(v) => Some(v),
            Cell::Int(v) => Some(v as f64),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Named scalars reported alongside the rows.
    pub summary: Vec<(String, Cell)>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new(), summary: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn summary_value(&self, name: &str) -> Option<&Cell> {
        self.summary.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

/// A finished experiment: its resolved configuration and result table.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub config: ExperimentConfig,
    pub table: Table,
}

impl ExperimentOutput {
    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// `# `-prefixed provenance block (experiment, resolved config, summary),
    /// then a header row and the data rows.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = format!("# rsma-sinr {}\n", self.config.kind.as_str());
        for line in self.config.to_toml()?.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        for (name, value) in &self.table.summary {
            out.push_str(&format!("# summary.{name} = {}\n", value.csv()));
        }
        out.push_str(&self.table.columns.join(","));
        out.push('\n');
        for row in &self.table.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        let config = serde_json::to_value(&self.config).map_err(|e| Error::Numerical(e.to_string()))?;
        let rows: Vec<Value> = self
            .table
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.table.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                Value::Object(obj)
            })
            .collect();
        let summary: Map<String, Value> = self.table.summary.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        let doc = json!({
            "experiment": self.config.kind.as_str(),
            "config": config,
            "columns": self.table.columns,
            "rows": rows,
            "summary": summary,
        });
        let mut text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Numerical(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::ExperimentKind;

    fn sample() -> ExperimentOutput {
        let mut table = Table::new(&["K", "Nt", "mse"]);
        table.push(vec![4usize.into(), 16usize.into(), 1.234_567_890_123e-4.into()]);
        table.summary.push(("note".into(), Cell::from(0.5)));
        ExperimentOutput { config: ExperimentConfig::defaults(ExperimentKind::MseSweep), table }
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# rsma-sinr mse-sweep");
        assert!(lines.contains(&"# seed = 1"));
        assert!(lines.contains(&"# summary.note = 5.000000000e-1"));
        let header = lines.iter().position(|l| !l.starts_with('#')).unwrap();
        assert_eq!(lines[header], "K,Nt,mse");
        assert_eq!(lines[header + 1], "4,16,1.234567890e-4");
    }

    #[test]
    fn json_mirrors_columns() {
        let v: Value = serde_json::from_str(&sample().to_json().unwrap()).unwrap();
        assert_eq!(v["experiment"], "mse-sweep");
        assert_eq!(v["rows"][0]["Nt"], 16);
        assert_eq!(v["rows"][0]["mse"].as_f64().unwrap(), 1.234_567_890_123e-4);
        assert_eq!(v["config"]["seed"], 1);
        assert_eq!(v["summary"]["note"], 0.5);
    }
}
