//! Dimension tables: computed `Z¹`, `B¹`, `H¹` and Schottky tangent
//! dimensions over random good Schottky representations, next to the
//! predicted values.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use surfrep::cohomology::formula_dims;
use surfrep::io::to_canonical_string;
use surfrep::{center_component_count, dims_report, random_good_schottky};

use crate::spec::CellSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Dims {
    #[serde(rename = "Z1")]
    pub z1: usize,
    #[serde(rename = "B1")]
    pub b1: usize,
    #[serde(rename = "H1")]
    pub h1: usize,
    pub tangent: usize,
}

/// One grid cell in one mode (strict or plain Schottky). `observed` is the
/// most frequent outcome over the seeds, ties going to the smallest.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub group: String,
    pub genus: usize,
    pub mode: &'static str,
    pub seeds: u64,
    pub components: u64,
    pub formula: Option<Dims>,
    pub observed: Option<Dims>,
    pub matched_runs: usize,
    pub failed_runs: usize,
    pub agree: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub agreeing: usize,
    pub all_agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimTable {
    pub rows: Vec<Row>,
    pub summary: Summary,
}

fn run_cell(cell: CellSpec, strict: bool, seeds: u64) -> Row {
    let mut row = Row {
        group: cell.desc.to_string(),
        genus: cell.genus,
        mode: if strict { "strict" } else { "schottky" },
        seeds,
        components: center_component_count(cell.desc, cell.genus),
        formula: None,
        observed: None,
        matched_runs: 0,
        failed_runs: 0,
        agree: false,
        error: None,
    };
    if cell.genus < 2 {
        row.error = Some(format!("genus {} is below 2; good representations need genus at least 2", cell.genus));
        return row;
    }
    let (z1, b1, h1, t_strict, t) = formula_dims(cell.desc, cell.genus);
    row.formula = Some(Dims { z1, b1, h1, tangent: if strict { t_strict } else { t } });
    let runs: Vec<surfrep::Result<(Dims, bool)>> = (0..seeds)
        .into_par_iter()
        .map(|seed| {
            let rep = random_good_schottky::<f64>(cell.desc, cell.genus, strict, seed)?;
            let r = dims_report(&rep)?;
            let tangent = r.dim_schottky_tangent.unwrap_or(0);
            Ok((Dims { z1: r.dim_z1, b1: r.dim_b1, h1: r.dim_h1, tangent }, r.matches))
        })
        .collect();
    let mut counts: BTreeMap<Dims, usize> = BTreeMap::new();
    for run in runs {
        match run {
            Ok((d, matched)) => {
                *counts.entry(d).or_default() += 1;
                row.matched_runs += usize::from(matched);
            }
            Err(e) => {
                row.failed_runs += 1;
                row.error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    // max_by_key keeps the last maximum; iterate in reverse so ties go to the smallest
    row.observed = counts.iter().rev().max_by_key(|(_, &c)| c).map(|(&d, _)| d);
    row.agree = row.failed_runs == 0 && row.observed.is_some() && row.observed == row.formula;
    row
}

/// Runs every cell in both modes, in parallel, keeping grid order.
pub fn dim_table(grid: &[CellSpec], seeds: u64) -> DimTable {
    let jobs: Vec<(CellSpec, bool)> = grid.iter().flat_map(|&c| [(c, true), (c, false)]).collect();
    let rows: Vec<Row> = jobs.into_par_iter().map(|(c, strict)| run_cell(c, strict, seeds)).collect();
    let agreeing = rows.iter().filter(|r| r.agree).count();
    let summary = Summary { rows: rows.len(), agreeing, all_agree: agreeing == rows.len() };
    DimTable { rows, summary }
}

const CSV_HEADER: [&str; 17] = [
    "group",
    "genus",
    "mode",
    "seeds",
    "components",
    "formula_Z1",
    "formula_B1",
    "formula_H1",
    "formula_tangent",
    "observed_Z1",
    "observed_B1",
    "observed_H1",
    "observed_tangent",
    "matched_runs",
    "failed_runs",
    "agree",
    "error",
];

fn dims_fields(d: Option<Dims>) -> [String; 4] {
    match d {
        Some(d) => [d.z1, d.b1, d.h1, d.tangent].map(|x| x.to_string()),
        None => Default::default(),
    }
}

impl DimTable {
    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Json => to_canonical_string(self).expect("table fields are plain data"),
            TableFormat::Csv => self.to_csv(),
        }
    }

    /// The rows only; the summary is not part of the CSV projection.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("writing to memory");
        for r in &self.rows {
            let mut rec = vec![r.group.clone(), r.genus.to_string(), r.mode.to_string(), r.seeds.to_string(), r.components.to_string()];
            rec.extend(dims_fields(r.formula));
            rec.extend(dims_fields(r.observed));
            rec.extend([r.matched_runs.to_string(), r.failed_runs.to_string(), r.agree.to_string(), r.error.clone().unwrap_or_default()]);
            w.write_record(&rec).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv writes UTF-8")
    }
}
