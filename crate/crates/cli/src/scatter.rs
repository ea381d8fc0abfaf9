//! CSV emitter for scatter data of normalized costs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::CliError;
use crate::montecarlo::{run_records, ExperimentConfig, RunRecord, Variant};

pub const HEADER: &str = "variant,n,sample_index,comparisons,half_swaps,norm_c,norm_s";

/// Defaults mirroring the reference figure: 1000 permutations of size 10000.
pub const DEFAULT_N: usize = 10_000;
pub const DEFAULT_SAMPLES: usize = 1_000;

/// Writes the header and one LF-terminated row per record. Floats carry 17
/// significant digits.
pub fn write_csv<W: Write>(mut out: W, records: &[RunRecord]) -> std::io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{:.16e},{:.16e}",
            r.variant, r.n, r.sample_index, r.comparisons, r.half_swaps, r.norm_c, r.norm_s
        )?;
    }
    out.flush()
}

/// Records for every configured variant, in variant order.
pub fn scatter_records(config: &ExperimentConfig) -> Result<Vec<RunRecord>, CliError> {
    config.validate_basic()?;
    Ok(config
        .variants
        .iter()
        .flat_map(|&v| run_records(v, config.n, config.samples, config.seed, config.workers))
        .collect())
}

/// Runs both variants and writes the CSV to `path`.
pub fn emit_scatter(config: &ExperimentConfig, path: &Path) -> Result<usize, CliError> {
    let records = scatter_records(config)?;
    let file = File::create(path).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(BufWriter::new(file), &records).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(records.len())
}

/// Parses rows written by [`write_csv`].
pub fn read_csv(text: &str) -> Result<Vec<RunRecord>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err("missing or unexpected header".into());
    }
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 7 {
                return Err(format!("expected 7 fields in `{line}`"));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| format!("`{s}`: {e}"));
            let int = |s: &str| s.parse::<u64>().map_err(|e| format!("`{s}`: {e}"));
            Ok(RunRecord {
                variant: f[0].parse::<Variant>()?,
                n: int(f[1])? as usize,
                sample_index: int(f[2])?,
                comparisons: int(f[3])?,
                half_swaps: int(f[4])?,
                norm_c: num(f[5])?,
                norm_s: num(f[6])?,
            })
        })
        .collect()
}
