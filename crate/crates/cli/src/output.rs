use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::commands::CliError;
use crate::config::Format;

pub const SCHEMA: &str = "monocst-v1";

#[derive(Serialize)]
struct JsonTable<'a, R> {
    format: &'static str,
    rows: &'a [R],
}

/// Renders rows as `# monocst-v1` CSV or as the mirrored JSON document.
pub fn render<R: Serialize>(rows: &[R], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut buf = format!("# {SCHEMA}\n").into_bytes();
            {
                let mut w = csv::Writer::from_writer(&mut buf);
                for row in rows {
                    w.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
                }
                w.flush().map_err(|e| CliError::Io(e.to_string()))?;
            }
            Ok(buf)
        }
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&JsonTable { format: SCHEMA, rows })
                .map_err(|e| CliError::Io(e.to_string()))?;
            text.push('\n');
            Ok(text.into_bytes())
        }
    }
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<(), CliError> {
    let io_err = |e: io::Error| CliError::Io(e.to_string());
    match path {
        Some(p) => File::create(p).and_then(|mut f| f.write_all(bytes)).map_err(io_err),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(io_err)
        }
    }
}
