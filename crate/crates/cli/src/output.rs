use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use arithx::experiments::ExperimentRecord;
use arithx::Result;
use serde_json::Value;

#[derive(Clone, Copy)]
pub enum Format {
    Json,
    Csv,
}

/// A JSON document plus its tabular (CSV) view.
pub struct Output {
    pub json: Value,
    pub rows: Vec<Vec<(String, String)>>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Per-trial rows for trial-based commands, summary rows for deviation,
/// verdict rows otherwise.
pub fn record_output(record: &ExperimentRecord) -> Output {
    let p = &record.payload;
    let rows = match record.command.as_str() {
        "ar_graph" | "ar_hyper" => p["lambdas"]
            .as_array()
            .map(|ls| {
                ls.iter()
                    .enumerate()
                    .map(|(i, l)| {
                        vec![
                            ("trial".into(), i.to_string()),
                            ("k".into(), cell(&p["k"])),
                            ("lambda".into(), cell(l)),
                        ]
                    })
                    .collect()
            })
            .unwrap_or_default(),
        "deviation" => {
            let s = &p["summary"];
            let k = p["k"].as_f64().unwrap_or(1.0);
            let sigma = &p["sigma"];
            let ratio = match (s["mean"].as_f64(), sigma.as_f64()) {
                (Some(m), Some(sg)) => (m / (k.sqrt() * sg)).to_string(),
                _ => String::new(),
            };
            vec![vec![
                ("k".into(), cell(&p["k"])),
                ("n".into(), cell(&p["n"])),
                ("t".into(), cell(&p["t"])),
                ("p".into(), cell(&p["p"])),
                ("mean".into(), cell(&s["mean"])),
                ("median".into(), cell(&s["median"])),
                ("q90".into(), cell(&s["q90"])),
                ("sigma".into(), cell(sigma)),
                ("ratio".into(), ratio),
            ]]
        }
        _ => record
            .verdicts
            .iter()
            .map(|v| {
                vec![
                    ("command".into(), record.command.clone()),
                    ("verdict".into(), v.name.clone()),
                    ("pass".into(), v.pass.to_string()),
                    ("detail".into(), v.detail.clone()),
                ]
            })
            .collect(),
    };
    Output {
        json: serde_json::to_value(record).expect("record serializes"),
        rows,
    }
}

pub fn emit(out: Option<&Path>, format: Format, output: &Output) -> Result<()> {
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, &output.json)?;
            writeln!(sink)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            if let Some(first) = output.rows.first() {
                w.write_record(first.iter().map(|(k, _)| k))
                    .map_err(|e| arithx::Error::Io(e.into()))?;
            }
            for row in &output.rows {
                w.write_record(row.iter().map(|(_, v)| v))
                    .map_err(|e| arithx::Error::Io(e.into()))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
