use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sbe_mcdc::bench::csource::c_source;
use sbe_mcdc::bench::csv::{import_csv, to_csv_string};
use sbe_mcdc::bench::{load_corpus, run_corpus};
use sbe_mcdc::coverage::{brute_force_minimal, coverage, CoverageReport, DEFAULT_ORACLE_GUARD};
use sbe_mcdc::generator::{project_to_variables, VariableTable};
use sbe_mcdc::planner::{decompose, relation_table};
use sbe_mcdc::{generate, normalize, parse, Criterion, Expr, NormalizedExpr};

#[derive(Parser)]
#[command(name = "sbe-mcdc", version, about = "Minimal unique-cause MC/DC test sets for singular boolean expressions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a decision, then print its normalized form.
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// Also print the form tree and relation table.
        #[arg(long)]
        verbose: bool,
    },
    /// Build the N + 1 test table.
    Generate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Check a CSV of test vectors against a decision.
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long, value_name = "PATH")]
        csv: PathBuf,
        #[arg(long, value_enum, default_value_t = CriterionArg::UniqueCause)]
        criterion: CriterionArg,
    },
    /// Run generation and verification over the embedded corpus.
    Bench {
        #[arg(long, value_enum, default_value_t = Report::Table)]
        report: Report,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Brute-force the minimal covering test-set size (small N only).
    Oracle {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long, value_enum, default_value_t = CriterionArg::UniqueCause)]
        criterion: CriterionArg,
        /// Largest N to attempt.
        #[arg(long, default_value_t = DEFAULT_ORACLE_GUARD)]
        max_n: usize,
    },
    /// Wrap the decision in a C function.
    EmitC {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "decision")]
        name: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Decision text, e.g. "a && (b || c)".
    #[arg(long)]
    expr: Option<String>,
    /// File holding the decision text.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    UniqueCause,
    Masking,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Criterion {
        match c {
            CriterionArg::UniqueCause => Criterion::UniqueCause,
            CriterionArg::Masking => Criterion::Masking,
        }
    }
}

enum Failure {
    /// Verification ran and did not pass.
    Verification(String),
    /// Bad input, usage or I/O.
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Serialize)]
struct CheckJson<'a> {
    expression: String,
    normalized: String,
    conditions: usize,
    variables: &'a [String],
    relation_table: &'a [bool],
    form_tree: String,
}

#[derive(Serialize)]
struct GenerateJson<'a> {
    expression: String,
    normalized: String,
    variables: &'a [String],
    tests: Vec<Vec<u8>>,
    decisions: Vec<u8>,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    csv: String,
    tests: usize,
    percentage: f64,
    report: &'a CoverageReport,
}

fn read_input(input: &Input) -> Result<Expr, Failure> {
    let text = match (&input.expr, &input.file) {
        (Some(text), None) => text.clone(),
        (None, Some(path)) => {
            fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        _ => return Err(Failure::Input("exactly one of --expr or --file is required".into())),
    };
    Ok(parse(text.trim())?)
}

fn emit(text: &str, out: Option<&Path>) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn bits(row: &[bool]) -> Vec<u8> {
    row.iter().map(|&b| b as u8).collect()
}

fn check(input: &Input, output: &Output, verbose: bool) -> CmdResult {
    let expr = read_input(input)?;
    let n = normalize(&expr)?;
    let order = expr.variables();
    let text = if output.format == Some(Format::Json) {
        let (tree, rt) = if n.len() >= 2 {
            (decompose(&n)?.render(n.literals()), relation_table(&n)?.values().to_vec())
        } else {
            (String::new(), Vec::new())
        };
        json(&CheckJson {
            expression: expr.to_string(),
            normalized: n.to_string(),
            conditions: n.len(),
            variables: order.names(),
            relation_table: &rt,
            form_tree: tree,
        })
    } else {
        let mut s = format!("{n}\nN = {}\n", n.len());
        if verbose && n.len() >= 2 {
            writeln!(s, "forms: {}", decompose(&n)?.render(n.literals())).unwrap();
            writeln!(s, "{}", relation_table(&n)?).unwrap();
        }
        s
    };
    emit(&text, output.out.as_deref())
}

fn generate_table(expr: &Expr) -> Result<(NormalizedExpr, VariableTable), Failure> {
    let n = normalize(expr)?;
    let t = generate(&n)?;
    let vars = project_to_variables(&t, &expr.variables())?;
    Ok((n, vars))
}

fn render_table(expr: &Expr, vars: &VariableTable) -> Result<String, Failure> {
    let names = vars.order.names();
    let mut s = format!("{:>3}  {}  decision\n", "#", names.join(" "));
    for (i, (row, a)) in vars.rows.iter().zip(vars.assignments()).enumerate() {
        let cells: Vec<String> =
            row.iter().zip(names).map(|(&v, name)| format!("{:<w$}", v as u8, w = name.len())).collect();
        writeln!(s, "{:>3}  {}  {}", i + 1, cells.join(" "), expr.evaluate(&a)? as u8).unwrap();
    }
    Ok(s)
}

fn generate_cmd(input: &Input, output: &Output) -> CmdResult {
    let expr = read_input(input)?;
    let (n, vars) = generate_table(&expr)?;
    let format = output.format.unwrap_or(if output.out.is_some() { Format::Csv } else { Format::Table });
    let text = match format {
        Format::Csv => to_csv_string(&expr, &vars.order, &vars.assignments())?,
        Format::Json => {
            let decisions =
                vars.assignments().iter().map(|a| expr.evaluate(a).map(|d| d as u8)).collect::<Result<_, _>>()?;
            json(&GenerateJson {
                expression: expr.to_string(),
                normalized: n.to_string(),
                variables: vars.order.names(),
                tests: vars.rows.iter().map(|r| bits(r)).collect(),
                decisions,
            })
        }
        Format::Table => render_table(&expr, &vars)?,
    };
    emit(&text, output.out.as_deref())
}

fn verify(input: &Input, output: &Output, csv: &Path, criterion: Criterion) -> CmdResult {
    let expr = read_input(input)?;
    let tests = import_csv(csv, &expr)?;
    let report = coverage(criterion, &expr, &tests)?;
    let text = if output.format == Some(Format::Json) {
        json(&VerifyJson {
            csv: csv.display().to_string(),
            tests: tests.len(),
            percentage: report.percentage(),
            report: &report,
        })
    } else {
        let width = report.conditions.iter().map(|e| e.condition.len()).max().unwrap_or(0);
        let mut s = format!("{criterion} over {} tests\n", tests.len());
        for e in &report.conditions {
            let evidence = match e.pair {
                Some((x, y)) => format!("tests {} and {}", x + 1, y + 1),
                None => "no independence pair".into(),
            };
            writeln!(s, "  {:<width$}  {evidence}", e.condition).unwrap();
        }
        writeln!(s, "{report}").unwrap();
        s
    };
    emit(&text, output.out.as_deref())?;
    if report.is_complete() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("uncovered: {}", report.uncovered().collect::<Vec<_>>().join(", "))))
    }
}

fn bench(report: Report, out: Option<&Path>) -> CmdResult {
    let r = run_corpus(load_corpus());
    let text = match report {
        Report::Json => json(&r),
        Report::Table => format!("{r}\n"),
    };
    emit(&text, out)?;
    if r.pass {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{} of {} cases failed", r.total - r.passed, r.total)))
    }
}

fn oracle(input: &Input, output: &Output, criterion: Criterion, max_n: usize) -> CmdResult {
    let expr = read_input(input)?;
    expr.validate_sbe()?;
    let r = brute_force_minimal(&expr, criterion, max_n)?;
    let text = if output.format == Some(Format::Json) { json(&r) } else { format!("{}\n", r.minimal_size) };
    emit(&text, output.out.as_deref())
}

fn emit_c(input: &Input, name: &str, out: Option<&Path>) -> CmdResult {
    let expr = read_input(input)?;
    expr.validate_sbe()?;
    emit(&c_source(&expr, name), out)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Check { input, output, verbose } => check(&input, &output, verbose),
        Command::Generate { input, output } => generate_cmd(&input, &output),
        Command::Verify { input, output, csv, criterion } => verify(&input, &output, &csv, criterion.into()),
        Command::Bench { report, out } => bench(report, out.as_deref()),
        Command::Oracle { input, output, criterion, max_n } => oracle(&input, &output, criterion.into(), max_n),
        Command::EmitC { input, name, out } => emit_c(&input, &name, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("sbe-mcdc: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("sbe-mcdc: {msg}");
            ExitCode::from(2)
        }
    }
}
