//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{fuzz_corpus, reference_assignments, truth_table, SBE1};
use sbe_mcdc::bench::{load_corpus, run_corpus};
use sbe_mcdc::coverage::{brute_force_minimal, masking_coverage, unique_cause_coverage, DEFAULT_ORACLE_GUARD};
use sbe_mcdc::generator::project_to_variables;
use sbe_mcdc::planner::{relation_table, FormTree, RelationTable};
use sbe_mcdc::{generate, normalize, parse, Connective, Criterion, Expr};

const FUZZ_SEED: u64 = 0x5be_f00d;
const FUZZ_COUNT: usize = 1000;
const ORACLE_SEED: u64 = 0x0dd_ba11;
const ORACLE_COUNT: usize = 200;

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn corpus_sizes() -> Outcome {
    let expected = [24, 6, 21, 22, 18, 11, 16, 21, 18, 14, 13, 19, 12, 10, 9];
    let mut got = Vec::new();
    for case in load_corpus() {
        let e = parse(case.expression).map_err(|e| format!("case {}: {e}", case.id))?;
        let t = generate(&normalize(&e).map_err(|e| e.to_string())?).map_err(|e| format!("case {}: {e}", case.id))?;
        got.push(t.len());
    }
    if got == expected {
        Ok(format!("{got:?}"))
    } else {
        Err(format!("expected {expected:?}, got {got:?}"))
    }
}

fn corpus_coverage() -> Outcome {
    for case in load_corpus() {
        let e = parse(case.expression).unwrap();
        let t = generate(&normalize(&e).unwrap()).map_err(|err| format!("case {}: {err}", case.id))?;
        let vars = project_to_variables(&t, &e.variables()).map_err(|err| err.to_string())?;
        let r = unique_cause_coverage(&e, &vars.assignments()).map_err(|err| err.to_string())?;
        if !r.is_complete() {
            return Err(format!("case {}: {r}", case.id));
        }
    }
    Ok("15/15 cases at 100%".into())
}

fn reference_vectors() -> Outcome {
    let e = parse(SBE1).unwrap();
    let r = unique_cause_coverage(&e, &reference_assignments()).map_err(|err| err.to_string())?;
    if r.is_complete() {
        Ok(format!("{r}"))
    } else {
        Err(format!("{r}"))
    }
}

fn relation_tables() -> Outcome {
    use Connective::{And, Or};
    let small = RelationTable::from_forms(&FormTree::block(And, vec![FormTree::b(0, And), FormTree::b(2, Or)]));
    let n = normalize(&parse(SBE1).unwrap()).unwrap();
    let big = relation_table(&n).map_err(|e| e.to_string())?;
    let want_big = "RT(F,T,T,T,F,F,T,T,F,F,T,T,T,T,F,T,T,F,T,T,T,F)";
    if small.to_string() == "RT(T,T,F)" && big.to_string() == want_big {
        Ok(format!("{small}, {big}"))
    } else {
        Err(format!("got {small} and {big}"))
    }
}

fn minimality_oracle() -> Outcome {
    let corpus = fuzz_corpus(ORACLE_SEED, ORACLE_COUNT, 2, 5);
    for e in &corpus {
        let n = e.variables().len();
        let oracle = brute_force_minimal(e, Criterion::UniqueCause, DEFAULT_ORACLE_GUARD)
            .map_err(|err| format!("{e}: {err}"))?
            .minimal_size;
        let generated = generate(&normalize(e).unwrap()).map_err(|err| format!("{e}: {err}"))?.len();
        if oracle != n + 1 || generated != n + 1 {
            return Err(format!("{e}: N={n}, oracle {oracle}, generated {generated}"));
        }
    }
    Ok(format!("{} expressions", corpus.len()))
}

fn normalization_equivalence(corpus: &[Expr]) -> Outcome {
    for e in corpus {
        let n = normalize(e).map_err(|err| format!("{e}: {err}"))?;
        let order = e.variables();
        for row in truth_table(&order) {
            if e.eval_indexed(&order, &row).unwrap() != n.expr().eval_indexed(&order, &row).unwrap() {
                return Err(format!("{e} vs {n} at {row:?}"));
            }
        }
    }
    Ok(format!("{} expressions", corpus.len()))
}

fn fuzzed_generation(corpus: &[Expr]) -> Outcome {
    for e in corpus {
        let n = e.variables().len();
        let t = generate(&normalize(e).unwrap()).map_err(|err| format!("{e}: {err}"))?;
        if t.len() != n + 1 || t.duplicate_rows().is_some() {
            return Err(format!("{e}: {} rows for N={n}", t.len()));
        }
        let vars = project_to_variables(&t, &e.variables()).unwrap();
        let r = unique_cause_coverage(e, &vars.assignments()).unwrap();
        if !r.is_complete() {
            return Err(format!("{e}: {r}"));
        }
    }
    Ok(format!("{} expressions", corpus.len()))
}

fn masking_dominance(corpus: &[Expr]) -> Outcome {
    let mut checked = 0;
    for e in corpus {
        let Ok(t) = generate(&normalize(e).unwrap()) else { continue };
        let tests = project_to_variables(&t, &e.variables()).unwrap().assignments();
        if !unique_cause_coverage(e, &tests).unwrap().is_complete() {
            continue;
        }
        checked += 1;
        let m = masking_coverage(e, &tests).unwrap();
        if !m.is_complete() {
            return Err(format!("{e}: masking {m}"));
        }
    }
    Ok(format!("{checked} unique-cause-complete sets"))
}

fn bench_runtime() -> Outcome {
    let start = Instant::now();
    let report = run_corpus(load_corpus());
    let secs = start.elapsed().as_secs_f64();
    if report.pass && secs < 5.0 {
        Ok(format!("{}/{} in {secs:.3} s", report.passed, report.total))
    } else {
        Err(format!("{}/{} in {secs:.3} s", report.passed, report.total))
    }
}

fn main() -> ExitCode {
    let fuzz = fuzz_corpus(FUZZ_SEED, FUZZ_COUNT, 2, 12);
    let criteria: Vec<(&str, Check)> = vec![
        ("1 corpus size law", Box::new(corpus_sizes)),
        ("2 corpus coverage", Box::new(corpus_coverage)),
        ("3 reference vectors", Box::new(reference_vectors)),
        ("4 relation table golden values", Box::new(relation_tables)),
        ("5 minimality oracle", Box::new(minimality_oracle)),
        ("6 normalization equivalence", Box::new(|| normalization_equivalence(&fuzz))),
        ("7 fuzzed generation validity", Box::new(|| fuzzed_generation(&fuzz))),
        ("8 masking dominance", Box::new(|| masking_dominance(&fuzz))),
        ("9 bench runtime", Box::new(bench_runtime)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
