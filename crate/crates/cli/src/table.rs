//! Rows `o(σ) | |Λ/σ| | LL | d_0, d_1, …` for fixed subalgebras of descent algebras.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use descent_core::automorphisms::{automorphism_of_order, diagram_automorphisms, FixedSubalgebra};
use descent_core::DescentAlgebra;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "type")]
    pub type_label: String,
    pub sigma_order: usize,
    pub dim: usize,
    pub lambda_orbits: usize,
    pub loewy_length: usize,
    pub radical_dims: Vec<usize>,
}

impl TableRow {
    /// `|Λ/σ| = d_0 - d_1`, `d_0` is the dimension and `LL` counts the nonzero `d_i`.
    pub fn is_consistent(&self) -> bool {
        let d1 = self.radical_dims.get(1).copied().unwrap_or(0);
        self.radical_dims.first() == Some(&self.dim)
            && self.lambda_orbits + d1 == self.dim
            && self.loewy_length == self.radical_dims.iter().filter(|&&d| d > 0).count()
    }
}

pub const CSV_HEADER: [&str; 6] = ["type", "sigma_order", "dim", "lambda_orbits", "loewy_length", "radical_dims"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::UnknownFormat(other.into())),
        }
    }
}

/// Orders of the diagram automorphisms, ascending and without repeats.
pub fn available_orders(a: &DescentAlgebra) -> Vec<usize> {
    let mut orders: Vec<usize> = diagram_automorphisms(a.system()).iter().map(|s| s.order()).collect();
    orders.sort_unstable();
    orders.dedup();
    orders
}

pub fn row(a: &Arc<DescentAlgebra>, sigma_order: usize) -> Result<TableRow> {
    let sigma = automorphism_of_order(a.system(), sigma_order)?;
    let (profile, orbits) = if sigma.is_identity() {
        (a.loewy_profile(), a.shapes().len())
    } else {
        let f = FixedSubalgebra::new(a, sigma)?;
        (f.loewy_profile(), f.shape_orbits().len())
    };
    Ok(TableRow {
        type_label: a.system().label().to_string(),
        sigma_order,
        dim: profile.dims.first().copied().unwrap_or(0),
        lambda_orbits: orbits,
        loewy_length: profile.loewy_length,
        radical_dims: profile.dims,
    })
}

/// One row per requested order, or per available order when none is given.
pub fn rows(a: &Arc<DescentAlgebra>, sigma_order: Option<usize>) -> Result<Vec<TableRow>> {
    match sigma_order {
        Some(k) => Ok(vec![row(a, k)?]),
        None => available_orders(a).into_iter().map(|k| row(a, k)).collect(),
    }
}

fn join(dims: &[usize], sep: &str) -> String {
    dims.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
}

pub fn render(rows: &[TableRow], format: Format) -> Result<String> {
    match format {
        Format::Text => {
            let mut out = format!("{:<8} {:>4} {:>7} {:>3}  {}\n", "type", "o(σ)", "|Λ/σ|", "LL", "d_0, d_1, ...");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{:<8} {:>4} {:>7} {:>3}  {}",
                    r.type_label,
                    r.sigma_order,
                    r.lambda_orbits,
                    r.loewy_length,
                    join(&r.radical_dims, ", ")
                );
            }
            Ok(out)
        }
        Format::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in rows {
                w.write_record([
                    r.type_label.clone(),
                    r.sigma_order.to_string(),
                    r.dim.to_string(),
                    r.lambda_orbits.to_string(),
                    r.loewy_length.to_string(),
                    join(&r.radical_dims, ";"),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}
