use std::io::Write;

use serde::Serialize;

use crate::args::OutFormat;
use crate::Failure;

/// Writes rows as CSV (header first) or a JSON array.
pub fn emit_rows<T: Serialize>(rows: &[T], format: OutFormat, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        OutFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows).map_err(|e| Failure::io(e.to_string()))?;
            writeln!(out)?;
        }
        OutFormat::Csv | OutFormat::Table => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r).map_err(|e| Failure::io(e.to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Right-aligned columns, widths taken from the longest cell.
pub fn table(header: &[&str], rows: &[Vec<String>], out: &mut dyn Write) -> std::io::Result<()> {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for r in rows {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
