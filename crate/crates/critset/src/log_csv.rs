//! Transaction logs as CSV: `src,dst[,count]`, optional `src,dst,count` header.

use std::io::{Read, Write};

use critset_core::ingest::TransactionRecord;

use crate::error::{Error, Result};

pub fn read_log<R: Read>(reader: R) -> Result<Vec<TransactionRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut records = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let fields: Vec<&str> = row.iter().collect();
        if i == 0 && fields.len() >= 2 && fields[0] == "src" && fields[1] == "dst" {
            continue;
        }
        let (src, dst, count) = match fields.as_slice() {
            [s, d] => (*s, *d, 1),
            [s, d, c] => {
                let count = c
                    .parse::<u64>()
                    .ok()
                    .filter(|&c| c >= 1)
                    .ok_or_else(|| Error::syntax(line, format!("invalid count `{c}`")))?;
                (*s, *d, count)
            }
            _ => {
                return Err(Error::syntax(
                    line,
                    format!("expected 2 or 3 fields, got {}", fields.len()),
                ))
            }
        };
        if src.is_empty() || dst.is_empty() {
            return Err(Error::syntax(line, "empty element id"));
        }
        records.push(TransactionRecord::new(src, dst, count));
    }
    Ok(records)
}

pub fn write_log<W: Write>(records: &[TransactionRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["src", "dst", "count"])?;
    for r in records {
        w.write_record([r.source.as_str(), r.target.as_str(), &r.count.to_string()])?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}
