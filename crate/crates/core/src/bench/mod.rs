//! End-to-end benchmark over the embedded corpus.

pub mod corpus;
pub mod csource;
pub mod csv;

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::coverage::unique_cause_coverage;
use crate::generator::{generate, project_to_variables, VariableTable};
use crate::normalize::normalize;
use crate::parse::parse;
use crate::Error;

pub use corpus::{case_by_id, load_corpus, BenchmarkCase};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub id: u32,
    pub conditions: usize,
    pub expected_cases: usize,
    pub cases: usize,
    pub covered: usize,
    pub coverage_percent: f64,
    pub wall_time_ms: f64,
    pub reference_cases: usize,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub cases: Vec<CaseReport>,
    pub passed: usize,
    pub total: usize,
    pub pass: bool,
    pub wall_time_ms: f64,
}

/// Parses, validates, generates and self-verifies one decision.
pub fn generate_and_verify(text: &str) -> Result<(VariableTable, usize), Error> {
    let expr = parse(text)?;
    let n = normalize(&expr)?;
    let table = generate(&n)?;
    let vars = project_to_variables(&table, &expr.variables())?;
    let report = unique_cause_coverage(&expr, &vars.assignments())?;
    Ok((vars, report.covered))
}

pub fn run_case(case: &BenchmarkCase) -> CaseReport {
    let start = Instant::now();
    let outcome = generate_and_verify(case.expression);
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut report = CaseReport {
        id: case.id,
        conditions: case.conditions,
        expected_cases: case.expected_cases(),
        cases: 0,
        covered: 0,
        coverage_percent: 0.0,
        wall_time_ms,
        reference_cases: case.reference_cases,
        error: None,
        pass: false,
    };
    match outcome {
        Ok((vars, covered)) => {
            let n = vars.order.len();
            report.cases = vars.rows.len();
            report.covered = covered;
            report.coverage_percent = 100.0 * covered as f64 / n as f64;
            if n != case.conditions {
                report.error = Some(format!("parsed {n} conditions, corpus says {}", case.conditions));
            }
            report.pass = report.error.is_none() && report.cases == n + 1 && covered == n;
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}

/// Runs every case in parallel; the report is ordered by case id.
pub fn run_corpus(cases: &[BenchmarkCase]) -> BenchReport {
    let start = Instant::now();
    let mut reports: Vec<CaseReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = cases.iter().map(|c| scope.spawn(move || run_case(c))).collect();
        handles.into_iter().map(|h| h.join().expect("bench worker panicked")).collect()
    });
    reports.sort_by_key(|r| r.id);
    let passed = reports.iter().filter(|r| r.pass).count();
    BenchReport {
        total: reports.len(),
        pass: passed == reports.len(),
        passed,
        cases: reports,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>3} {:>3} {:>6} {:>9} {:>10} {:>10}  status",
            "id", "N", "cases", "coverage", "reference", "time(ms)"
        )?;
        for c in &self.cases {
            let status = match (&c.error, c.pass) {
                (Some(e), _) => format!("FAIL: {e}"),
                (None, true) => "ok".to_string(),
                (None, false) => "FAIL".to_string(),
            };
            writeln!(
                f,
                "{:>3} {:>3} {:>6} {:>8.0}% {:>10} {:>10.2}  {status}",
                c.id, c.conditions, c.cases, c.coverage_percent, c.reference_cases, c.wall_time_ms
            )?;
        }
        write!(f, "{}/{} passed in {:.1} ms", self.passed, self.total, self.wall_time_ms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let corpus = load_corpus();
        assert_eq!(corpus.len(), 15);
        let ns: Vec<usize> = corpus.iter().map(|c| c.conditions).collect();
        assert_eq!(ns, [23, 5, 20, 21, 17, 10, 15, 20, 17, 13, 12, 18, 11, 9, 8]);
        assert_eq!(case_by_id(15).unwrap().expression, "!a && b && !c && !d && (e && f || !g && h)");
    }

    #[test]
    fn small_cases_pass() {
        for id in [2, 13] {
            let r = run_case(case_by_id(id).unwrap());
            assert!(r.pass, "{r:?}");
            assert_eq!(r.cases, r.conditions + 1);
            assert_eq!(r.coverage_percent, 100.0);
        }
    }

    #[test]
    fn bad_input_is_a_case_failure() {
        let bad = BenchmarkCase { id: 99, expression: "a && a", conditions: 1, reference_cases: 0 };
        let r = run_case(&bad);
        assert!(!r.pass);
        assert!(r.error.unwrap().contains("coupled"));
    }
}
