//! Minimal unique-cause MC/DC test generation for singular boolean expressions.
//!
//! The pipeline is: [`parse`] a decision, [`normalize`](normalize::normalize)
//! it, derive the [`RelationTable`](planner::RelationTable) and form tree in
//! [`planner`], build the N + 1 row table in [`generator`], and check it with
//! the independent [`coverage`] module.

pub mod bench;
pub mod coverage;
pub mod expr;
pub mod generator;
pub mod normalize;
pub mod parse;
pub mod planner;

use thiserror::Error;

pub use coverage::{CoverageReport, Criterion};
pub use expr::{Assignment, Connective, Expr, VarOrder};
pub use generator::{generate, TestTable};
pub use normalize::{normalize, NormalizedExpr};
pub use parse::parse;

/// Any failure along the parse → generate → verify pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] parse::SyntaxError),
    #[error(transparent)]
    Sbe(#[from] expr::SbeError),
    #[error(transparent)]
    Eval(#[from] expr::EvalError),
    #[error(transparent)]
    Plan(#[from] planner::PlanError),
    #[error(transparent)]
    Generate(#[from] generator::GenerateError),
    #[error(transparent)]
    Coverage(#[from] coverage::CoverageError),
    #[error(transparent)]
    Csv(#[from] bench::csv::CsvError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Parses, validates and generates in one step, returning the table over raw
/// variables in first-appearance order.
pub fn generate_for(text: &str) -> Result<generator::VariableTable, Error> {
    let expr = parse(text)?;
    let n = normalize(&expr)?;
    let table = generate(&n)?;
    Ok(generator::project_to_variables(&table, &expr.variables())?)
}
