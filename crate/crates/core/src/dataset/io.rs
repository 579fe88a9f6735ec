//! Parallel-corpus layout: aligned src/tgt text files, one example per
//! line, space-separated tokens, plus a JSON-lines provenance sidecar.

use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::dataset::{SourceFormat, TrainingExample};
use crate::tptp::StatementSet;

use super::DatasetError;

/// Write aligned src/tgt files and the metadata sidecar.
pub fn write_examples(
    src_path: &Path,
    tgt_path: &Path,
    meta_path: Option<&Path>,
    examples: &[TrainingExample],
) -> Result<(), DatasetError> {
    let mut src = BufWriter::new(std::fs::File::create(src_path)?);
    let mut tgt = BufWriter::new(std::fs::File::create(tgt_path)?);
    let mut meta = match meta_path {
        Some(p) => Some(BufWriter::new(std::fs::File::create(p)?)),
        None => None,
    };
    for ex in examples {
        writeln!(src, "{}", ex.source.joined())?;
        writeln!(tgt, "{}", ex.target.join(" "))?;
        if let Some(meta) = meta.as_mut() {
            let line = serde_json::to_string(&ex.provenance)
                .expect("provenance serializes infallibly");
            writeln!(meta, "{line}")?;
        }
    }
    Ok(())
}

/// Write the source sequences of the named theorems plus an aligned ids
/// file, the input layout of `predict`.
pub fn write_sources(
    src_path: &Path,
    ids_path: &Path,
    theorems: &[String],
    statements: &StatementSet,
    format: SourceFormat,
) -> Result<(), DatasetError> {
    let mut src = BufWriter::new(std::fs::File::create(src_path)?);
    let mut ids = BufWriter::new(std::fs::File::create(ids_path)?);
    for theorem in theorems {
        let stmt = statements
            .get(theorem)
            .ok_or_else(|| DatasetError::UnknownTheorem {
                theorem: theorem.clone(),
            })?;
        let tokens = match format {
            SourceFormat::Standard => crate::tptp::tokenize(&stmt.body)
                .expect("statement parsed at load"),
            SourceFormat::Prefix => crate::tptp::to_prefix(&stmt.ast),
        };
        writeln!(src, "{}", tokens.joined())?;
        writeln!(ids, "{theorem}")?;
    }
    Ok(())
}

/// Read a whitespace-tokenized line file (src/tgt/ids alike).
pub fn read_lines(path: &Path) -> std::io::Result<Vec<Vec<String>>> {
    let file = std::fs::File::open(path)?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        out.push(line.split_whitespace().map(|t| t.to_string()).collect());
    }
    Ok(out)
}
