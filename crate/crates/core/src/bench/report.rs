use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::hashes::Algorithm;

use super::{BenchError, BenchReport, RocPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(BenchError::Io(format!("unknown report format `{other}`"))),
        }
    }
}

/// `operation,algorithm,mean_s,min_s,std_s,n`, one row per aggregate.
pub fn render_csv(report: &BenchReport) -> String {
    let mut out = String::from("operation,algorithm,mean_s,min_s,std_s,n\n");
    for a in &report.aggregates {
        writeln!(
            out,
            "{},{},{:.4},{:.4},{:.4},{}",
            a.operation, a.algorithm, a.mean, a.min, a.std, a.n
        )
        .unwrap();
    }
    out
}

/// Operations as rows, algorithms as columns, mean S in each cell.
pub fn render_markdown(report: &BenchReport) -> String {
    let operations: BTreeSet<&str> = report.aggregates.iter().map(|a| a.operation.name()).collect();
    let algorithms: BTreeSet<&str> = report.aggregates.iter().map(|a| a.algorithm.name()).collect();

    let mut out = String::from("| operation |");
    for alg in &algorithms {
        write!(out, " {alg} |").unwrap();
    }
    out.push_str("\n|---|");
    for _ in &algorithms {
        out.push_str("---:|");
    }
    out.push('\n');
    for op in &operations {
        write!(out, "| {op} |").unwrap();
        for alg in &algorithms {
            match report
                .aggregates
                .iter()
                .find(|a| a.operation.name() == *op && a.algorithm.name() == *alg)
            {
                Some(a) => write!(out, " {:.4} |", a.mean).unwrap(),
                None => out.push_str(" - |"),
            }
        }
        out.push('\n');
    }
    out
}

/// `algorithm,threshold,tpr,fpr` rows for each algorithm's sweep.
pub fn render_roc_csv(curves: &[(Algorithm, Vec<RocPoint>)]) -> String {
    let mut out = String::from("algorithm,threshold,tpr,fpr\n");
    for (alg, points) in curves {
        for p in points {
            writeln!(
                out,
                "{alg},{:.2},{:.4},{:.4}",
                p.threshold, p.true_positive_rate, p.false_positive_rate
            )
            .unwrap();
        }
    }
    out
}

pub fn emit_report(report: &BenchReport, format: ReportFormat, path: impl AsRef<Path>) -> Result<(), BenchError> {
    let path = path.as_ref();
    let text = match format {
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Markdown => render_markdown(report),
    };
    fs::write(path, text).map_err(|e| BenchError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attacks::AttackKind;
    use crate::bench::{aggregate, BenchRecord};

    fn report(records: Vec<BenchRecord>) -> BenchReport {
        BenchReport {
            aggregates: aggregate(&records),
            records,
            seed: 0,
            grid: vec![],
            failures: vec![],
        }
    }

    fn record(op: AttackKind, alg: Algorithm, score: f64) -> BenchRecord {
        BenchRecord {
            image: "x".into(),
            attack: op.name().into(),
            operation: op,
            algorithm: alg,
            score,
        }
    }

    #[test]
    fn single_record_csv() {
        let r = report(vec![record(AttackKind::Gamma, Algorithm::Phash, 0.987_654)]);
        assert_eq!(
            render_csv(&r),
            "operation,algorithm,mean_s,min_s,std_s,n\ngamma,phash,0.9877,0.9877,0.0000,1\n"
        );
    }

    #[test]
    fn markdown_shape() {
        let mut recs = Vec::new();
        for op in AttackKind::ALL {
            for alg in Algorithm::ALL {
                recs.push(record(op, alg, 0.5));
            }
        }
        let md = render_markdown(&report(recs));
        let lines: Vec<&str> = md.lines().collect();
        assert_eq!(lines.len(), 12);
        assert_eq!(lines[0], "| operation | block | cslbp | phash | ring |");
        assert_eq!(lines[2], "| brightness | 0.5000 | 0.5000 | 0.5000 | 0.5000 |");
        assert!(lines[2..].iter().all(|l| l.matches('|').count() == 6));
    }

    #[test]
    fn missing_cells_are_dashes() {
        let md = render_markdown(&report(vec![
            record(AttackKind::Jpeg, Algorithm::Ring, 0.9),
            record(AttackKind::Gamma, Algorithm::Phash, 0.8),
        ]));
        assert!(md.contains("| gamma | 0.8000 | - |"));
        assert!(md.contains("| jpeg | - | 0.9000 |"));
    }

    #[test]
    fn writes_files() {
        let dir = tempfile::tempdir().unwrap();
        let r = report(vec![record(AttackKind::Gamma, Algorithm::Phash, 1.0)]);
        let path = dir.path().join("r.csv");
        emit_report(&r, ReportFormat::Csv, &path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), render_csv(&r));
        assert!(emit_report(&r, ReportFormat::Markdown, dir.path().join("no/such/dir.md")).is_err());
    }
}
