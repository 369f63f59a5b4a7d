use std::io::Write;

use super::EnumerationResult;

pub const CSV_HEADER: [&str; 6] = ["entry_vector", "trace", "is_semisimple", "length", "witness_q", "passes_cor52"];

/// One row per kept element; the header is always written. Floats use the
/// shortest representation that round-trips.
pub fn write_csv<W: Write>(result: &EnumerationResult, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &result.records {
        let entries: Vec<String> = r.entries.iter().map(|x| x.to_string()).collect();
        w.write_record([
            entries.join(" "),
            r.trace.to_string(),
            r.is_semisimple.to_string(),
            r.length.map(|l| l.to_string()).unwrap_or_default(),
            r.witness_q.map(|q| q.to_string()).unwrap_or_default(),
            r.passes_cor52.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
