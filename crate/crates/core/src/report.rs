//! Serializable reports. Every integer is a decimal string.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analyzer::{Analyzer, StructureReport};
use crate::error::{Error, Result};
use crate::mixer::MixExpression;
use crate::oracle::{run_oracle, OracleReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub cosets: String,
    pub elements: String,
    pub max_flags: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub analysis_us: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_us: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub flags: String,
    pub faces: Vec<String>,
    pub polytopal: String,
    /// Ranks of the fixed faces of a disconnected section, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub expression: String,
    #[serde(rename = "type")]
    pub schlafli_type: String,
    pub rank: String,
    pub flags: String,
    pub faces: Vec<String>,
    /// `Y`, `N` or `?`.
    pub polytopal: String,
    pub rule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grouping: Option<[String; 2]>,
    pub budgets: Budgets,
    pub timings: Timings,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleSummary>,
}

fn mix_label(leaves: &[crate::presentation::SchlafliSymbol]) -> String {
    leaves.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("*")
}

impl Report {
    pub fn new(analyzer: &Analyzer, structure: &StructureReport, max_flags: usize, analysis_us: u128) -> Self {
        let d = &structure.decision;
        Self {
            expression: structure.expression.to_string(),
            schlafli_type: structure.schlafli.to_string(),
            rank: structure.rank.to_string(),
            flags: structure.flags.to_string(),
            faces: structure.faces.iter().map(|f| f.to_string()).collect(),
            polytopal: d.verdict.letter().to_string(),
            rule: d.verdict.rule().map(|r| r.to_string()),
            grouping: d.grouping.as_ref().map(|(a, b)| [mix_label(a), mix_label(b)]),
            budgets: Budgets {
                cosets: analyzer.mixer().budget().to_string(),
                elements: analyzer.element_cap().to_string(),
                max_flags: max_flags.to_string(),
            },
            timings: Timings {
                analysis_us: analysis_us.to_string(),
                oracle_us: None,
            },
            oracle: None,
        }
    }

    pub fn attach_oracle(&mut self, oracle: &OracleReport, oracle_us: u128) {
        self.timings.oracle_us = Some(oracle_us.to_string());
        self.oracle = Some(OracleSummary {
            flags: oracle.flags.to_string(),
            faces: oracle.faces.iter().map(|f| f.to_string()).collect(),
            polytopal: if oracle.is_polytope() { "Y" } else { "N" }.into(),
            witness: oracle.witness.as_ref().map(|w| {
                format!(
                    "faces of ranks {:?} through the base flag: {} flags, {} reachable",
                    w.fixed, w.flags_through_faces, w.reachable
                )
            }),
        });
    }

    /// Oracle face counts and verdict agree with the analysis. `None`
    /// without an oracle run or when the analysis is undecided.
    pub fn oracle_agrees(&self) -> Option<bool> {
        let o = self.oracle.as_ref()?;
        let faces = o.faces == self.faces && o.flags == self.flags;
        match self.polytopal.as_str() {
            "?" => None,
            p => Some(faces && o.polytopal == p),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Table(e.to_string()))
    }

    /// Header matching the embedded table files.
    pub fn csv_header(rank: usize) -> String {
        let mut cols = vec!["leaves".to_string()];
        cols.extend((0..rank).map(|k| format!("f{k}")));
        cols.push("g".into());
        cols.push("polytopal".into());
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::Necessary)
            .from_writer(Vec::new());
        let mut fields = vec![self.expression.clone()];
        fields.extend(self.faces.iter().cloned());
        fields.push(self.flags.clone());
        fields.push(self.polytopal.clone());
        w.write_record(&fields).expect("in-memory write");
        let bytes = w.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("utf-8").trim_end().to_string()
    }

    pub fn markdown_header(rank: usize) -> String {
        let mut cols = vec!["mix".to_string(), "type".into()];
        cols.extend((0..rank).map(|k| format!("f{k}")));
        cols.extend(["g".into(), "polytopal".into(), "rule".into()]);
        let sep: Vec<&str> = cols.iter().map(|_| "---").collect();
        format!("| {} |\n| {} |", cols.join(" | "), sep.join(" | "))
    }

    pub fn markdown_row(&self) -> String {
        let mut cols = vec![format!("`{}`", self.expression), self.schlafli_type.clone()];
        cols.extend(self.faces.iter().cloned());
        cols.push(self.flags.clone());
        cols.push(self.polytopal.clone());
        cols.push(self.rule.clone().unwrap_or_default());
        format!("| {} |", cols.join(" | "))
    }
}

/// Analyzes `expr` and, if `oracle` is set, runs the face-lattice oracle
/// with `max_flags`.
pub fn build_report(analyzer: &Analyzer, expr: &MixExpression, oracle: bool, max_flags: usize) -> Result<Report> {
    let start = Instant::now();
    let structure = analyzer.analyze(expr)?;
    let mut report = Report::new(analyzer, &structure, max_flags, start.elapsed().as_micros());
    if oracle {
        let start = Instant::now();
        let o = run_oracle(analyzer.mixer(), expr, max_flags)?;
        report.attach_oracle(&o, start.elapsed().as_micros());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_MAX_FLAGS;
    use crate::parse::parse_expression;

    #[test]
    fn json_round_trip_and_fields() {
        let a = Analyzer::default();
        let r = build_report(&a, &parse_expression("{3,5}*{5,3}").unwrap(), true, DEFAULT_MAX_FLAGS).unwrap();
        let json = r.to_json();
        for key in ["expression", "type", "rank", "flags", "faces", "polytopal", "rule", "timings"] {
            assert!(json.contains(&format!("\"{key}\"")), "{key}");
        }
        assert_eq!(Report::from_json(&json).unwrap(), r);
        assert_eq!(r.schlafli_type, "{15,15}");
        assert_eq!(r.oracle_agrees(), Some(true));
    }

    #[test]
    fn csv_and_markdown() {
        let a = Analyzer::default();
        let r = build_report(&a, &parse_expression("{3,3}*{3,4}").unwrap(), false, DEFAULT_MAX_FLAGS).unwrap();
        assert_eq!(Report::csv_header(3), "leaves,f0,f1,f2,g,polytopal");
        assert_eq!(r.csv_row(), "\"{3,3}*{3,4}\",24,144,96,576,Y");
        assert!(r.markdown_row().starts_with("| `{3,3}*{3,4}` | {3,12} | 24 |"));
        assert_eq!(Report::markdown_header(3).lines().count(), 2);
    }
}
