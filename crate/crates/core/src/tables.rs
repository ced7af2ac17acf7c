//! Reference tables and their verification.
//!
//! Two CSV files are embedded at compile time, one row per mix:
//!
//! - `data/polyhedra.csv`: `leaves,f0,f1,f2,g,polytopal`
//! - `data/rank4.csv`: `set,leaves,f0,f1,f2,f3,g,polytopal`
//!
//! `leaves` is a mix expression in the grammar of [`crate::parse`]; `set`
//! names the mix by indices into `P1 = {3,3,3}`, `P2 = {3,3,4}`,
//! `P3 = {3,3,5}`, `P4 = {3,4,3}`, `P5 = {4,3,3}`, `P6 = {5,3,3}`.
//! `g` is the flag count and `polytopal` is `Y` or `N`. The rank-n mixes
//! of simplex, cube and cross-polytope are checked against
//! [`crate::closed_form`] instead.
//!
//! The files hold the printed values unchanged. Known misprints are listed
//! in [`RANK4_ERRATA`] and applied when the rows are loaded.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::analyzer::{Analyzer, Verdict};
use crate::closed_form::ConvexMix;
use crate::error::{Error, Result};
use crate::mixer::MixExpression;
use crate::parse::parse_expression;

const POLYHEDRA_CSV: &str = include_str!("../data/polyhedra.csv");
const RANK4_CSV: &str = include_str!("../data/rank4.csv");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedRow {
    pub label: String,
    pub expression: MixExpression,
    pub faces: Vec<BigUint>,
    pub flags: BigUint,
    pub polytopal: bool,
}

fn parse_rows(csv_text: &str, label_column: bool) -> Result<Vec<ExpectedRow>> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Table(e.to_string()))?;
        let fields: Vec<&str> = record.iter().collect();
        let skip = usize::from(label_column);
        let (Some(&leaves), Some(&polytopal)) = (fields.get(skip), fields.last()) else {
            return Err(Error::Table(format!("short row {fields:?}")));
        };
        let expression = parse_expression(leaves)?;
        let numbers = fields[skip + 1..fields.len() - 1]
            .iter()
            .map(|x| BigUint::from_str(x).map_err(|e| Error::Table(format!("{x}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let rank = expression.rank();
        if numbers.len() != rank + 1 {
            return Err(Error::Table(format!("row {leaves}: expected {} numbers", rank + 1)));
        }
        let polytopal = match polytopal {
            "Y" => true,
            "N" => false,
            other => return Err(Error::Table(format!("polytopal column {other:?}"))),
        };
        rows.push(ExpectedRow {
            label: fields[0].to_string(),
            expression,
            faces: numbers[..rank].to_vec(),
            flags: numbers[rank].clone(),
            polytopal,
        });
    }
    Ok(rows)
}

/// A printed cell that is inconsistent with the rest of the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub label: &'static str,
    /// Index into the face vector.
    pub face: usize,
    pub printed: u64,
    pub corrected: u64,
}

/// `f3` of `{1,2,4,6}` is printed as 27648000. The row's own `g` divided
/// by the 34560 flags of its facet `{3,3}*{3,4}*{5,3}` is 2764800, which
/// is also `f0` of the dual row `{1,3,4,5}`.
pub const RANK4_ERRATA: &[Erratum] = &[Erratum {
    label: "{1,2,4,6}",
    face: 3,
    printed: 27648000,
    corrected: 2764800,
}];

/// Rank-4 rows exactly as stored, before errata.
pub fn printed_rank4_rows() -> Vec<ExpectedRow> {
    parse_rows(RANK4_CSV, true).expect("embedded rank-4 table is well formed")
}

pub fn polyhedra_rows() -> Vec<ExpectedRow> {
    parse_rows(POLYHEDRA_CSV, false).expect("embedded polyhedra table is well formed")
}

pub fn rank4_rows() -> Vec<ExpectedRow> {
    let mut rows = printed_rank4_rows();
    for e in RANK4_ERRATA {
        let row = rows
            .iter_mut()
            .find(|r| r.label == e.label)
            .expect("erratum names a row");
        assert_eq!(row.faces[e.face], BigUint::from(e.printed));
        row.faces[e.face] = BigUint::from(e.corrected);
    }
    rows
}

/// Rows of the rank-n closed-form table for `5 <= n <= max_n`.
pub fn rank_n_rows(max_n: usize) -> Vec<ExpectedRow> {
    (5..=max_n)
        .flat_map(|n| {
            ConvexMix::ALL.into_iter().map(move |m| ExpectedRow {
                label: m.to_string().replace('n', &n.to_string()),
                expression: m.expression(n),
                faces: m.faces(n),
                flags: m.flags(n),
                polytopal: m.polytopal(),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Polyhedra,
    Rank4,
    RankN,
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "polyhedra" => Ok(TableKind::Polyhedra),
            "rank4" => Ok(TableKind::Rank4),
            "rankn" => Ok(TableKind::RankN),
            other => Err(Error::Table(format!("unknown table {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDiff {
    pub column: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Match,
    Mismatch(Vec<CellDiff>),
    /// Numbers match; the cascade did not decide polytopality.
    Undecided,
    /// A coset or element budget ran out.
    Budget(String),
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowOutcome {
    pub label: String,
    pub status: RowStatus,
}

impl fmt::Display for RowOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            RowStatus::Match => write!(f, "match     {}", self.label),
            RowStatus::Undecided => write!(f, "undecided {}", self.label),
            RowStatus::Budget(e) => write!(f, "budget    {}: {e}", self.label),
            RowStatus::Failed(e) => write!(f, "error     {}: {e}", self.label),
            RowStatus::Mismatch(diffs) => {
                write!(f, "MISMATCH  {}", self.label)?;
                for d in diffs {
                    write!(f, "\n    {}: expected {}, computed {}", d.column, d.expected, d.computed)?;
                }
                Ok(())
            }
        }
    }
}

pub fn verify_row(analyzer: &Analyzer, row: &ExpectedRow) -> RowOutcome {
    let status = match analyzer.analyze(&row.expression) {
        Err(e @ (Error::BudgetExceeded { .. } | Error::CapExceeded { .. })) => RowStatus::Budget(e.to_string()),
        Err(e) => RowStatus::Failed(e.to_string()),
        Ok(report) => {
            let mut diffs = Vec::new();
            for (k, (want, got)) in row.faces.iter().zip(&report.faces).enumerate() {
                if want != got {
                    diffs.push(CellDiff {
                        column: format!("f{k}"),
                        expected: want.to_string(),
                        computed: got.to_string(),
                    });
                }
            }
            if row.flags != report.flags {
                diffs.push(CellDiff {
                    column: "g".into(),
                    expected: row.flags.to_string(),
                    computed: report.flags.to_string(),
                });
            }
            let verdict = report.decision.verdict;
            if let Some(got) = verdict.as_bool() {
                if got != row.polytopal {
                    diffs.push(CellDiff {
                        column: "polytopal".into(),
                        expected: if row.polytopal { "Y" } else { "N" }.into(),
                        computed: verdict.letter().to_string(),
                    });
                }
            }
            if !diffs.is_empty() {
                RowStatus::Mismatch(diffs)
            } else if verdict == Verdict::Undecided {
                RowStatus::Undecided
            } else {
                RowStatus::Match
            }
        }
    };
    RowOutcome {
        label: row.label.clone(),
        status,
    }
}

pub fn expected_rows(kind: TableKind, max_n: usize) -> Vec<ExpectedRow> {
    match kind {
        TableKind::Polyhedra => polyhedra_rows(),
        TableKind::Rank4 => rank4_rows(),
        TableKind::RankN => rank_n_rows(max_n),
    }
}

/// Recomputes every row in parallel. Output order follows the table.
pub fn verify_tables(analyzer: &Analyzer, kind: TableKind, max_n: usize) -> Vec<RowOutcome> {
    expected_rows(kind, max_n)
        .par_iter()
        .map(|row| verify_row(analyzer, row))
        .collect()
}
