use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Writes records one per line: JSON lines, CSV with a header, or
/// `key=value` pairs.
pub fn emit<T: Serialize>(format: Format, records: &[T]) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in records {
                w.serialize(r).map_err(io::Error::other)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in records {
                writeln!(out, "{}", text_line(r))?;
            }
        }
    }
    Ok(())
}

fn text_line<T: Serialize>(record: &T) -> String {
    match serde_json::to_value(record).unwrap_or(Value::Null) {
        Value::Object(map) => map
            .into_iter()
            .map(|(k, v)| match v {
                Value::String(s) if s.contains(' ') => format!("{k}=\"{s}\""),
                Value::String(s) => format!("{k}={s}"),
                Value::Null => format!("{k}="),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        p: u64,
        label: &'static str,
        note: Option<u64>,
    }

    #[test]
    fn text_pairs() {
        let line = text_line(&Row { p: 7, label: "NMDS, 2-MDS", note: None });
        assert_eq!(line, "p=7 label=\"NMDS, 2-MDS\" note=");
    }
}
