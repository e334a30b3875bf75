//! MC/DC checkers and a brute-force minimal-set oracle.
//!
//! Everything here works from the truth function of an [`Expr`] and the raw
//! pair rules. None of it knows how test sets are generated.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{Assignment, EvalError, Expr, VarOrder};

/// Largest condition count the oracle will enumerate by default.
pub const DEFAULT_ORACLE_GUARD: usize = 5;

/// Hard ceiling for the oracle: the truth table must fit a 64-bit row mask.
pub const ORACLE_CEILING: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverageError {
    #[error("`{0}` is not a condition of the expression")]
    UnknownVariable(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0} conditions exceed the oracle guard of {1}")]
    TooLarge(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    UniqueCause,
    Masking,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::UniqueCause => "unique-cause",
            Criterion::Masking => "masking",
        })
    }
}

/// Independence-pair evidence for one condition. `pair` holds test indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub condition: String,
    pub pair: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub criterion: Criterion,
    pub conditions: Vec<Evidence>,
    pub covered: usize,
    pub total: usize,
}

impl CoverageReport {
    pub fn percentage(&self) -> f64 {
        if self.total == 0 {
            return 100.0;
        }
        100.0 * self.covered as f64 / self.total as f64
    }

    pub fn is_complete(&self) -> bool {
        self.covered == self.total
    }

    pub fn uncovered(&self) -> impl Iterator<Item = &str> {
        self.conditions.iter().filter(|e| e.pair.is_none()).map(|e| e.condition.as_str())
    }
}

impl fmt::Display for CoverageReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.0}% ({}/{})", self.percentage(), self.covered, self.total)
    }
}

/// `F(a) xor F(a with c toggled)`.
pub fn boolean_difference(e: &Expr, c: &str, a: &Assignment) -> Result<bool, CoverageError> {
    if e.variables().index_of(c).is_none() {
        return Err(CoverageError::UnknownVariable(c.to_string()));
    }
    Ok(e.evaluate(a)? ^ e.evaluate(&a.toggled(c))?)
}

/// Checks the raw pair rules for condition `c` on tests `x`, `y`.
pub fn pair_satisfies(
    criterion: Criterion,
    e: &Expr,
    x: &Assignment,
    y: &Assignment,
    c: &str,
) -> Result<bool, CoverageError> {
    let (xc, yc) = match (x.get(c), y.get(c)) {
        (Some(xc), Some(yc)) => (xc, yc),
        _ => return Err(EvalError::MissingVariable(c.to_string()).into()),
    };
    if xc == yc || e.evaluate(x)? == e.evaluate(y)? {
        return Ok(false);
    }
    Ok(match criterion {
        Criterion::UniqueCause => e.variables().iter().filter(|&v| v != c).all(|v| x.get(v) == y.get(v)),
        Criterion::Masking => boolean_difference(e, c, x)? && boolean_difference(e, c, y)?,
    })
}

/// Test vectors laid out by variable order, with outcomes precomputed.
struct Evaluated {
    order: VarOrder,
    rows: Vec<Vec<bool>>,
    outcomes: Vec<bool>,
}

impl Evaluated {
    fn new(e: &Expr, tests: &[Assignment]) -> Result<Evaluated, CoverageError> {
        let order = e.variables();
        let mut rows = Vec::with_capacity(tests.len());
        let mut outcomes = Vec::with_capacity(tests.len());
        for t in tests {
            let row = order
                .iter()
                .map(|v| t.get(v).ok_or_else(|| EvalError::MissingVariable(v.to_string())))
                .collect::<Result<Vec<bool>, _>>()?;
            outcomes.push(e.eval_indexed(&order, &row)?);
            rows.push(row);
        }
        Ok(Evaluated { order, rows, outcomes })
    }

    fn condition(&self, c: &str) -> Result<usize, CoverageError> {
        self.order.index_of(c).ok_or_else(|| CoverageError::UnknownVariable(c.to_string()))
    }

    fn unique_cause_pair(&self, k: usize) -> Option<(usize, usize)> {
        let n = self.rows.len();
        for x in 0..n {
            for y in x + 1..n {
                let (rx, ry) = (&self.rows[x], &self.rows[y]);
                if rx[k] != ry[k]
                    && self.outcomes[x] != self.outcomes[y]
                    && (0..rx.len()).all(|j| j == k || rx[j] == ry[j])
                {
                    return Some((x, y));
                }
            }
        }
        None
    }

    fn masking_pair(&self, e: &Expr, k: usize) -> Result<Option<(usize, usize)>, CoverageError> {
        let mut sensitive = Vec::with_capacity(self.rows.len());
        for (row, &out) in self.rows.iter().zip(&self.outcomes) {
            let mut flipped = row.clone();
            flipped[k] = !flipped[k];
            sensitive.push(out ^ e.eval_indexed(&self.order, &flipped)?);
        }
        let n = self.rows.len();
        for x in 0..n {
            for y in x + 1..n {
                if self.rows[x][k] != self.rows[y][k]
                    && self.outcomes[x] != self.outcomes[y]
                    && sensitive[x]
                    && sensitive[y]
                {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }
}

/// Lexicographically smallest `(x, y)` with `x < y` forming a unique-cause
/// pair for `c`.
pub fn unique_cause_pair(e: &Expr, tests: &[Assignment], c: &str) -> Result<Option<(usize, usize)>, CoverageError> {
    let ev = Evaluated::new(e, tests)?;
    let k = ev.condition(c)?;
    Ok(ev.unique_cause_pair(k))
}

/// Lexicographically smallest `(x, y)` with `x < y` forming a masking pair for `c`.
pub fn masking_pair(e: &Expr, tests: &[Assignment], c: &str) -> Result<Option<(usize, usize)>, CoverageError> {
    let ev = Evaluated::new(e, tests)?;
    let k = ev.condition(c)?;
    ev.masking_pair(e, k)
}

pub fn unique_cause_coverage(e: &Expr, tests: &[Assignment]) -> Result<CoverageReport, CoverageError> {
    coverage(Criterion::UniqueCause, e, tests)
}

pub fn masking_coverage(e: &Expr, tests: &[Assignment]) -> Result<CoverageReport, CoverageError> {
    coverage(Criterion::Masking, e, tests)
}

pub fn coverage(criterion: Criterion, e: &Expr, tests: &[Assignment]) -> Result<CoverageReport, CoverageError> {
    let ev = Evaluated::new(e, tests)?;
    let mut conditions = Vec::with_capacity(ev.order.len());
    for (k, name) in ev.order.iter().enumerate() {
        let pair = match criterion {
            Criterion::UniqueCause => ev.unique_cause_pair(k),
            Criterion::Masking => ev.masking_pair(e, k)?,
        };
        conditions.push(Evidence { condition: name.to_string(), pair });
    }
    let covered = conditions.iter().filter(|e| e.pair.is_some()).count();
    Ok(CoverageReport { criterion, total: conditions.len(), conditions, covered })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub criterion: Criterion,
    pub minimal_size: usize,
    pub witness: Vec<Assignment>,
}

/// Smallest test set achieving full coverage, found by enumerating every
/// subset of the truth table in order of increasing size.
///
/// Truth-table row `r` assigns the first variable the most significant bit.
pub fn brute_force_minimal(e: &Expr, criterion: Criterion, max_n: usize) -> Result<OracleResult, CoverageError> {
    let order = e.variables();
    let n = order.len();
    let guard = max_n.min(ORACLE_CEILING);
    if n > guard {
        return Err(CoverageError::TooLarge(n, guard));
    }
    let rows = 1usize << n;
    let values = |r: usize| -> Vec<bool> { (0..n).map(|i| r >> (n - 1 - i) & 1 == 1).collect() };
    let outcomes: Vec<bool> = (0..rows).map(|r| e.eval_indexed(&order, &values(r))).collect::<Result<_, _>>()?;

    // For each condition, every qualifying pair as a two-bit row mask.
    let mut pair_masks: Vec<Vec<u64>> = vec![Vec::new(); n];
    for (k, masks) in pair_masks.iter_mut().enumerate() {
        let bit = 1usize << (n - 1 - k);
        for x in 0..rows {
            for y in x + 1..rows {
                if (x & bit) == (y & bit) || outcomes[x] == outcomes[y] {
                    continue;
                }
                let ok = match criterion {
                    Criterion::UniqueCause => x ^ y == bit,
                    Criterion::Masking => outcomes[x ^ bit] != outcomes[x] && outcomes[y ^ bit] != outcomes[y],
                };
                if ok {
                    masks.push((1u64 << x) | (1u64 << y));
                }
            }
        }
    }
    let covers = |subset: u64| pair_masks.iter().all(|ms| ms.iter().any(|&m| m & !subset == 0));

    for k in 1..=rows {
        if let Some(subset) = KSubsets::new(rows, k).find(|&s| covers(s)) {
            let witness = (0..rows).filter(|r| subset >> r & 1 == 1).map(|r| order.assign(&values(r))).collect();
            return Ok(OracleResult { criterion, minimal_size: k, witness });
        }
    }
    // Only reachable when some condition has no pair at all (coupled or constant).
    Ok(OracleResult { criterion, minimal_size: 0, witness: Vec::new() })
}

/// All `k`-element subsets of `0..n` as bit masks, in increasing numeric order
/// (Gosper's hack).
struct KSubsets {
    next: Option<u128>,
    limit: u128,
}

impl KSubsets {
    fn new(n: usize, k: usize) -> KSubsets {
        debug_assert!(n <= 64 && k >= 1 && k <= n);
        KSubsets { next: Some((1u128 << k) - 1), limit: 1u128 << n }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        let low = cur & cur.wrapping_neg();
        let ripple = cur + low;
        let succ = (((ripple ^ cur) >> 2) / low) | ripple;
        self.next = (succ < self.limit).then_some(succ);
        Some(cur as u64)
    }
}
