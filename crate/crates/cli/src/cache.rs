//! On-disk cache of dimension tables, one JSON file per (field, q).
//! Entries written by another version of the tool are ignored and replaced.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use hhq_core::cochain::{cohomology_report, CohomologyReport, DegreeRow};
use hhq_core::FieldContext;

use crate::{CliError, CliResult};

pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+dims1");

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: String,
    field: String,
    q: String,
    rows: Vec<DegreeRow>,
}

fn key_component(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '-' => 'm',
            '/' => 'd',
            ':' => '_',
            c if c.is_ascii_alphanumeric() => c,
            _ => '_',
        })
        .collect()
}

pub fn cache_path(dir: &Path, ctx: &FieldContext) -> PathBuf {
    dir.join(format!("dims-{}-q{}.json", key_component(&ctx.spec().to_string()), key_component(&ctx.q().to_string())))
}

fn load(path: &Path, field: &str, q: &str) -> Option<Vec<DegreeRow>> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    (file.version == CACHE_VERSION && file.field == field && file.q == q).then_some(file.rows)
}

/// Rows for degrees `0..=max_n`, reusing a cached table when it reaches far enough.
/// Representatives are not cached, so the returned report carries none.
pub fn cached_report(dir: &Path, max_n: usize, ctx: &FieldContext) -> CliResult<CohomologyReport> {
    let field = ctx.spec().to_string();
    let q = ctx.q().to_string();
    let path = cache_path(dir, ctx);
    if let Some(rows) = load(&path, &field, &q).filter(|rows| rows.len() > max_n) {
        let rows = rows.into_iter().take(max_n + 1).collect();
        return Ok(CohomologyReport { field, q, rows, kernel_bases: Vec::new(), representatives: Vec::new() });
    }
    let report = cohomology_report(max_n, ctx);
    let file = CacheFile { version: CACHE_VERSION.to_string(), field, q, rows: report.rows.clone() };
    let io = |source| CliError::Io { path: path.clone(), source };
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(&path, serde_json::to_string(&file).expect("cache serializes")).map_err(io)?;
    Ok(report)
}
