//! Per-object analysis reports in table, JSON and CSV form.
//!
//! Objects and servers are 1-based here, matching what users type on the
//! command line. Rationals are strings `p/q` (or `p`).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::SearchMode;
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::Rational;
use crate::recovery::format_set;
use crate::srr::{demand_bounds, design_allocation, LAMBDA_LABEL};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_dual: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsSummary {
    pub span: u64,
    pub clique_nodes: u64,
    pub check_weight: Option<usize>,
    pub design: u64,
    pub error_patterns: u64,
}

impl From<&Limits> for CapsSummary {
    fn from(l: &Limits) -> Self {
        CapsSummary {
            span: l.span_cap,
            clique_nodes: l.clique_nodes,
            check_weight: l.max_check_weight,
            design: l.design_cap,
            error_patterns: l.error_pattern_cap,
        }
    }
}

/// One row per object. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectRow {
    pub object: usize,
    pub a: usize,
    pub j: usize,
    pub j_exact: bool,
    pub smallest_set: String,
    pub lower: Rational,
    pub upper_refined: Option<Rational>,
    pub upper_loose: Option<Rational>,
    pub lambda_max: Option<Rational>,
    pub design_status: String,
    pub allocation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub code: CodeSummary,
    pub caps: CapsSummary,
    pub lambda_label: String,
    pub exact_lp: bool,
    pub rows: Vec<ObjectRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Analyzes `objects` (0-based; all objects when `None`).
pub fn analyze(
    code: &LinearCode,
    objects: Option<&[usize]>,
    exact_lp: bool,
    limits: &Limits,
) -> Result<AnalysisReport> {
    let objects: Vec<usize> = match objects {
        Some(list) => {
            for &o in list {
                code.check_object(o)?;
            }
            let mut list = list.to_vec();
            list.sort_unstable();
            list.dedup();
            list
        }
        None => (0..code.k()).collect(),
    };
    let d_dual = code.dual_distance(limits.span_cap)?;
    let rows = objects
        .par_iter()
        .map(|&o| object_row(code, o, d_dual, exact_lp, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalysisReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        code: CodeSummary {
            n: code.n(),
            k: code.k(),
            d: code.min_distance(limits.span_cap)?,
            d_dual,
        },
        caps: limits.into(),
        lambda_label: LAMBDA_LABEL.to_string(),
        exact_lp,
        rows,
    })
}

fn object_row(
    code: &LinearCode,
    object: usize,
    d_dual: Option<usize>,
    exact_lp: bool,
    limits: &Limits,
) -> Result<ObjectRow> {
    let bounds = demand_bounds(code, object, exact_lp, SearchMode::Exact, limits)?;
    let design_status = if code.systematic_column(object).is_none() {
        "not systematic".to_string()
    } else if d_dual.is_none_or(|d| d <= 1) {
        "n/a".to_string()
    } else {
        match design_allocation(code, object, limits)? {
            Some(d) => format!(
                "1-({},{},{}) rate {}",
                d.design.v,
                d.design.block_size.unwrap_or(0),
                d.replication,
                d.rate
            ),
            None => "not a 1-design".to_string(),
        }
    };
    let allocation = match &bounds.lp {
        Some(sol) => summarize_allocation(sol.primal.iter().map(|(s, r)| (s.servers.len(), r))),
        None => "-".to_string(),
    };
    Ok(ObjectRow {
        object: object + 1,
        a: bounds.a,
        j: bounds.j,
        j_exact: bounds.j_exact,
        smallest_set: format_set(&bounds.disjoint.family.base),
        lower: bounds.lower.clone(),
        upper_refined: bounds.upper_refined.clone(),
        upper_loose: bounds.upper_loose.clone(),
        lambda_max: bounds.lp_exact().cloned(),
        design_status,
        allocation,
    })
}

/// `"9 sets: 1x size 1 @ 1, 8x size 7 @ 1/4"`.
fn summarize_allocation<'a>(entries: impl Iterator<Item = (usize, &'a Rational)>) -> String {
    let mut groups: BTreeMap<(usize, Rational), usize> = BTreeMap::new();
    let mut total = 0;
    for (size, rate) in entries {
        *groups.entry((size, rate.clone())).or_default() += 1;
        total += 1;
    }
    let parts: Vec<String> = groups
        .iter()
        .map(|((size, rate), count)| format!("{count}x size {size} @ {rate}"))
        .collect();
    format!("{total} sets: {}", parts.join(", "))
}

fn opt(r: &Option<Rational>) -> String {
    r.as_ref().map_or_else(|| "-".to_string(), Rational::to_string)
}

impl AnalysisReport {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Table => Ok(self.to_table()),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Internal(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let c = &self.code;
        let d_dual = c.d_dual.map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(
            out,
            "code: n = {}, k = {}, d = {}, d_dual = {}",
            c.n, c.k, c.d, d_dual
        );
        let _ = writeln!(out, "lambda_max: {}", self.lambda_label);
        let headers = [
            "object",
            "a",
            "J",
            "O",
            "lower",
            "upper",
            "loose",
            "lambda_max",
            "design",
            "allocation",
        ];
        let rows: Vec<[String; 10]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.object.to_string(),
                    r.a.to_string(),
                    if r.j_exact {
                        r.j.to_string()
                    } else {
                        format!(">={}", r.j)
                    },
                    r.smallest_set.clone(),
                    r.lower.to_string(),
                    opt(&r.upper_refined),
                    opt(&r.upper_loose),
                    opt(&r.lambda_max),
                    r.design_status.clone(),
                    r.allocation.clone(),
                ]
            })
            .collect();
        let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(headers.to_vec()));
        for row in &rows {
            let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{hamming, spc};

    #[test]
    fn hamming_rows() {
        let h = hamming(3).unwrap();
        let r = analyze(&h, None, true, &Limits::default()).unwrap();
        assert_eq!(r.rows.len(), 4);
        for row in &r.rows {
            assert_eq!(row.lambda_max, Some(Rational::from_integer(3)));
            assert_eq!(row.design_status, "1-(6,3,2) rate 3");
        }
        assert_eq!(r.rows[0].allocation, "5 sets: 1x size 1 @ 1, 4x size 3 @ 1/2");
    }

    #[test]
    fn json_round_trip_and_csv() {
        let r = analyze(&spc(4).unwrap(), Some(&[2, 0]), true, &Limits::default()).unwrap();
        assert_eq!(r.rows.iter().map(|x| x.object).collect::<Vec<_>>(), vec![1, 3]);
        let json = r.to_json().unwrap();
        let back = AnalysisReport::from_json(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), json);
        let csv = r.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "object,a,j,j_exact,smallest_set,lower,upper_refined,upper_loose,lambda_max,design_status,allocation"
        );
        assert!(lines.next().unwrap().starts_with("1,1,1,true,{1},2,2,2,2,"));
        let table = r.to_table();
        assert!(table.contains("lambda_max"));
        assert!(analyze(&spc(4).unwrap(), Some(&[3]), true, &Limits::default()).is_err());
    }
}
