//! JSON, CSV and LaTeX renderings of dimension tables and quotient tables.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cochain::{Cochain, CohomologyReport, DegreeRow};
use crate::cup::{monomial_of_class, non_nilpotent_basis, Monomial};
use crate::error::{Error, Result};
use crate::field::FieldContext;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Latex,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "latex" => Ok(Self::Latex),
            other => Err(Error::Parse(format!("unknown format `{other}` (expected json, csv or latex)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Csv => "csv",
            Self::Latex => "latex",
        })
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

pub fn render_dims(report: &CohomologyReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => csv_string(|w| {
            w.write_record(["n", "dim_hom", "dim_ker", "rank_prev", "dim_hh", "claimed_dim_ker", "claim_mismatch"])?;
            for r in &report.rows {
                w.write_record([
                    r.n.to_string(),
                    r.dim_hom.to_string(),
                    r.dim_ker.to_string(),
                    r.rank_prev.to_string(),
                    r.dim_hh.to_string(),
                    r.claimed_dim_ker.clone().unwrap_or_default(),
                    r.claim_mismatch.map(|b| b.to_string()).unwrap_or_default(),
                ])?;
            }
            Ok(())
        }),
        Format::Latex => latex_dims(&report.field, &report.q, &report.rows),
    }
}

fn latex_dims(field: &str, q: &str, rows: &[DegreeRow]) -> String {
    let mut s = format!("% field {field}, q = {q}\n");
    s.push_str("\\begin{tabular}{rlrrr}\n\\hline\n");
    s.push_str("$n$ & parity & stated & $\\dim\\ker d^*_{n+1}$ & $\\dim HH^n$ \\\\\n\\hline\n");
    for r in rows {
        let parity = if r.n % 2 == 0 { "even" } else { "odd" };
        let stated = r.claimed_dim_ker.as_deref().unwrap_or("--");
        s.push_str(&format!("{} & {} & {} & {} & {} \\\\\n", r.n, parity, stated, r.dim_ker, r.dim_hh));
    }
    s.push_str("\\hline\n\\end{tabular}\n");
    s
}

/// One degree of `HH*/𝒩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientRow {
    pub n: usize,
    pub dim: usize,
    /// Monomial of each basis class when `q = ±1`, otherwise its cocycle.
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientTable {
    pub field: String,
    pub q: String,
    pub rows: Vec<QuotientRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn quotient_table(max_n: usize, ctx: &FieldContext) -> QuotientTable {
    let rows = (0..=max_n)
        .map(|n| {
            let basis = non_nilpotent_basis(n, ctx);
            let labels = basis
                .iter()
                .map(|cls| match monomial_of_class(cls, ctx) {
                    Ok(p) => p.to_string(),
                    Err(_) if *cls.representative() == Cochain::unit(ctx) => Monomial::ONE.to_string(),
                    Err(_) => cls.representative().to_string(),
                })
                .collect();
            QuotientRow { n, dim: basis.len(), labels }
        })
        .collect();
    let note = (!ctx.q_is_plus_minus_one()).then(|| "k only: every class of positive degree is nilpotent".to_string());
    QuotientTable { field: ctx.spec().to_string(), q: ctx.q().to_string(), rows, note }
}

pub fn render_quotient(table: &QuotientTable, format: Format) -> String {
    match format {
        Format::Json => to_json(table),
        Format::Csv => csv_string(|w| {
            w.write_record(["n", "dim", "labels"])?;
            for r in &table.rows {
                w.write_record([r.n.to_string(), r.dim.to_string(), r.labels.join("; ")])?;
            }
            Ok(())
        }),
        Format::Latex => {
            let mut s = format!("% field {}, q = {}\n", table.field, table.q);
            if let Some(note) = &table.note {
                s.push_str(&format!("% {note}\n"));
            }
            s.push_str("\\begin{tabular}{rrl}\n\\hline\n$n$ & $\\dim$ & basis \\\\\n\\hline\n");
            for r in &table.rows {
                let labels: Vec<String> = r.labels.iter().map(|l| format!("${l}$")).collect();
                s.push_str(&format!("{} & {} & {} \\\\\n", r.n, r.dim, labels.join(", ")));
            }
            s.push_str("\\hline\n\\end{tabular}\n");
            s
        }
    }
}
