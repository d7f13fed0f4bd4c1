use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
    Dot,
}

/// Everything a subcommand can print; absent renderings are usage errors.
pub struct Emission {
    pub json: Value,
    pub pretty: String,
    pub csv: Option<Table>,
    pub dot: Option<String>,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Emission {
    pub fn new(json: impl Serialize, pretty: String) -> Self {
        Emission {
            json: serde_json::to_value(json).expect("outputs are serializable"),
            pretty,
            csv: None,
            dot: None,
        }
    }

    pub fn with_csv(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.csv = Some(Table { header, rows });
        self
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("valid json") + "\n"),
            Format::Pretty => Ok(self.pretty.clone()),
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| "dot output is only available for poset-valued results".into()),
            Format::Csv => {
                let table = self.csv.as_ref().ok_or("csv output is not available for this subcommand")?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.header).map_err(|e| e.to_string())?;
                for row in &table.rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }
}
