//! JSONL, CSV and summary output.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use serde::Serialize;

use super::{InequalityId, InequalityReport};
use crate::error::Result;

pub const CSV_HEADER: &str = "inequality_id,seed,trial,lhs,rhs,margin,verdict,R,residual";

/// One JSON object per line: `header` (if any), then the reports.
pub fn write_jsonl<W: Write, H: Serialize>(
    mut w: W,
    header: Option<&H>,
    reports: &[InequalityReport],
) -> Result<()> {
    if let Some(h) = header {
        serde_json::to_writer(&mut w, h).map_err(std::io::Error::other)?;
        writeln!(w)?;
    }
    for r in reports {
        serde_json::to_writer(&mut w, r).map_err(std::io::Error::other)?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(mut w: W, reports: &[InequalityReport]) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            r.inequality_id,
            r.seed,
            r.trial,
            r.lhs,
            r.rhs,
            r.margin,
            r.verdict,
            r.radius().map(|v| v.to_string()).unwrap_or_default(),
            r.residual().map(|v| v.to_string()).unwrap_or_default(),
        )?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub inequality_id: InequalityId,
    pub probe: bool,
    pub reports: usize,
    pub violations: usize,
    pub min_margin: f64,
    /// largest `lhs / rhs` over reports with `rhs > 0`
    pub max_ratio: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub rows: Vec<SummaryRow>,
}

impl Summary {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.probe).map(|r| r.violations).sum()
    }
}

pub fn summarize(reports: &[InequalityReport]) -> Summary {
    let mut rows: BTreeMap<InequalityId, SummaryRow> = BTreeMap::new();
    for r in reports {
        let row = rows.entry(r.inequality_id).or_insert(SummaryRow {
            inequality_id: r.inequality_id,
            probe: r.probe,
            reports: 0,
            violations: 0,
            min_margin: f64::INFINITY,
            max_ratio: 0.0,
        });
        row.reports += 1;
        row.violations += usize::from(r.is_violation());
        row.min_margin = row.min_margin.min(r.margin);
        if r.rhs > 0.0 {
            row.max_ratio = row.max_ratio.max(r.lhs / r.rhs);
        }
    }
    Summary {
        rows: rows.into_values().collect(),
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<22} {:>7} {:>10} {:>14} {:>10}",
            "inequality", "reports", "violations", "min margin", "max lhs/rhs"
        )?;
        for r in &self.rows {
            let tag = if r.probe { " (probe)" } else { "" };
            writeln!(
                f,
                "{:<22} {:>7} {:>10} {:>14.6e} {:>10.6}{tag}",
                r.inequality_id.as_str(),
                r.reports,
                r.violations,
                r.min_margin,
                r.max_ratio
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{verify_zprop, HarnessOptions, SupportSampler, TrialSpec};
    use super::*;

    #[test]
    fn jsonl_and_csv() {
        let spec = TrialSpec::parse("zd:1", "trivial:1")
            .unwrap()
            .support(SupportSampler::BallSubset(3))
            .trials(3)
            .seed(9);
        let reports = verify_zprop(&spec, 5, &HarnessOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_jsonl(&mut buf, Some(&serde_json::json!({"config": 1})), &reports).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        let back: InequalityReport = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(back, reports[0]);
        let v: serde_json::Value = serde_json::from_str(lines[2]).unwrap();
        assert_eq!(v["seed"], 9);
        assert_eq!(v["verdict"], "consistent");

        let mut buf = Vec::new();
        write_csv(&mut buf, &reports).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(text.lines().nth(1).unwrap().split(',').count(), 9);

        let s = summarize(&reports);
        assert_eq!(s.rows.len(), 1);
        assert_eq!(s.rows[0].reports, 3);
        assert_eq!(s.violations(), 0);
        assert!(s.to_string().contains("zprop_section4"));
    }
}
