//! Test-table construction from base patterns under relation-table direction.
//!
//! Each form gets a small table that already shows independence for its own
//! literals: a B-form gets a reordered 3-row base pattern, an S-form the two
//! rows `[seed, !seed]`. Tables of sibling forms are joined one at a time.
//! A join keeps every row of the current table, extends it with an anchor
//! row of the next table, then appends the remaining rows of the next table
//! extended with an anchor row of the current table. With both anchors at the
//! connector's non-controlling value, all existing independence pairs survive
//! and the join adds exactly as many rows as the next form has literals, so
//! the finished table has N + 1 rows.
//!
//! The first attempt at a join fills the anchor regions from the relation
//! table. When that fill masks a block or loses an anchor row (typical when a
//! whole result block is joined), the exception handler re-selects anchors
//! from the rows the blocks actually have.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coverage::unique_cause_coverage;
use crate::expr::{Assignment, Connective, VarOrder};
use crate::normalize::{Literal, NormalizedExpr};
use crate::planner::{decompose, relation_table, BForm, FormTree, RelationTable, ResultBlock, SForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("expression has {0} condition(s); generation needs at least 2")]
    SizeError(usize),
    #[error("slice ({}, {}) is not a base pattern of {op}", fmt_bool(.slice.0), fmt_bool(.slice.1))]
    InvalidSlice { op: Connective, slice: (bool, bool) },
    #[error("table has unassigned cells")]
    Incomplete,
    #[error("generation failed: {0}")]
    GenerationFailed(String),
}

fn fmt_bool(v: bool) -> &'static str {
    if v {
        "T"
    } else {
        "F"
    }
}

/// The fixed 3-row minimal table for a two-condition operator, in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasePattern {
    pub op: Connective,
    pub rows: [(bool, bool); 3],
}

pub fn base_patterns(op: Connective) -> BasePattern {
    let rows = match op {
        Connective::And => [(true, true), (true, false), (false, true)],
        Connective::Or => [(false, false), (false, true), (true, false)],
    };
    BasePattern { op, rows }
}

/// Moves `slice` to the front of the B-form's base pattern; the other two rows
/// keep their priority order.
pub fn select_initial_pattern(b: &BForm, slice: (bool, bool)) -> Result<[(bool, bool); 3], GenerateError> {
    let base = base_patterns(b.op).rows;
    let Some(idx) = base.iter().position(|&r| r == slice) else {
        return Err(GenerateError::InvalidSlice { op: b.op, slice });
    };
    let mut out = [slice; 3];
    let mut k = 1;
    for (i, &row) in base.iter().enumerate() {
        if i != idx {
            out[k] = row;
            k += 1;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Column {
    pub position: usize,
    pub name: String,
    pub negated: bool,
}

/// Rows of literal truth values. Cells are `None` only while a join is being
/// filled in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestTable {
    columns: Vec<Column>,
    rows: Vec<Vec<Option<bool>>>,
}

impl TestTable {
    pub fn new(columns: Vec<Column>, rows: Vec<Vec<Option<bool>>>) -> TestTable {
        debug_assert!(rows.iter().all(|r| r.len() == columns.len()));
        TestTable { columns, rows }
    }

    pub fn from_rows(columns: Vec<Column>, rows: Vec<Vec<bool>>) -> TestTable {
        let rows = rows.into_iter().map(|r| r.into_iter().map(Some).collect()).collect();
        TestTable::new(columns, rows)
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn raw_rows(&self) -> &[Vec<Option<bool>>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Option::is_some))
    }

    pub fn row(&self, i: usize) -> Option<Vec<bool>> {
        self.rows[i].iter().copied().collect()
    }

    /// All rows, or `None` if any cell is unassigned.
    pub fn rows(&self) -> Option<Vec<Vec<bool>>> {
        (0..self.rows.len()).map(|i| self.row(i)).collect()
    }

    /// First pair of identical rows, if any.
    pub fn duplicate_rows(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows.len() {
            for j in i + 1..self.rows.len() {
                if self.rows[i] == self.rows[j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn first_position(&self) -> usize {
        self.columns[0].position
    }
}

impl fmt::Display for TestTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header: Vec<String> =
            self.columns.iter().map(|c| if c.negated { format!("!{}", c.name) } else { c.name.clone() }).collect();
        writeln!(f, "{}", header.join(" "))?;
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&header)
                .map(|(cell, h)| {
                    let v = match cell {
                        Some(true) => "T",
                        Some(false) => "F",
                        None => ".",
                    };
                    format!("{v:<w$}", w = h.len())
                })
                .collect();
            writeln!(f, "{}", cells.join(" ").trim_end())?;
        }
        Ok(())
    }
}

/// Literal descriptors plus the relation table that seeds pattern selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub literals: Vec<Literal>,
    pub rt: RelationTable,
}

impl Plan {
    pub fn new(literals: Vec<Literal>, rt: RelationTable) -> Plan {
        Plan { literals, rt }
    }

    fn column(&self, position: usize) -> Column {
        let lit = &self.literals[position];
        Column { position, name: lit.name.clone(), negated: lit.negated }
    }

    /// Relation-table seed of every literal in `form`, in position order.
    fn seeds(&self, form: &FormTree) -> Vec<bool> {
        match form {
            FormTree::S(s) => vec![self.rt.s_slice(s)],
            FormTree::B(b) => {
                let (l, r) = self.rt.b_slice(b);
                vec![l, r]
            }
            FormTree::Block(blk) => blk.members.iter().flat_map(|m| self.seeds(m)).collect(),
        }
    }
}

pub fn b_form_table(b: &BForm, plan: &Plan) -> Result<TestTable, GenerateError> {
    let pattern = select_initial_pattern(b, plan.rt.b_slice(b))?;
    Ok(TestTable::from_rows(
        vec![plan.column(b.left), plan.column(b.right())],
        pattern.iter().map(|&(l, r)| vec![l, r]).collect(),
    ))
}

pub fn s_form_table(s: &SForm, plan: &Plan) -> TestTable {
    let seed = plan.rt.s_slice(s);
    TestTable::from_rows(vec![plan.column(s.position)], vec![vec![seed], vec![!seed]])
}

/// Which side of a join a conflict concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Current,
    Next,
}

/// Why a filled join is not a valid table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conflict {
    /// A cell is still unassigned.
    Unassigned,
    /// Two rows are identical.
    DuplicateRow(usize, usize),
    /// The fill puts this side at the connector's controlling value, so the
    /// rows of the other side cannot flip the decision.
    Masking { side: Side, row: usize },
    /// The fill is not a row of this side's table, so one of its
    /// independence pairs lost a partner.
    MissingAnchor(Side),
}

/// Algorithm-level exception check: a composed table repeats a row.
pub fn is_exception_case(table: &TestTable) -> bool {
    table.duplicate_rows().is_some()
}

/// Two adjacent tables about to be joined under `connector`.
#[derive(Debug, Clone, Copy)]
pub struct Junction<'a> {
    pub current: &'a TestTable,
    pub current_form: &'a FormTree,
    pub next: &'a TestTable,
    pub next_form: &'a FormTree,
    pub connector: Connective,
}

impl<'a> Junction<'a> {
    fn outcome(form: &FormTree, table: &TestTable, values: &[bool]) -> bool {
        let base = table.first_position();
        form.evaluate(&|pos| values[pos - base])
    }

    fn columns(&self) -> Vec<Column> {
        self.current.columns.iter().chain(&self.next.columns).cloned().collect()
    }

    /// Places the next table so that its first row shares the current table's
    /// rows; the cells left empty are `None`.
    pub fn layout(&self) -> TestTable {
        let (cw, nw) = (self.current.width(), self.next.width());
        let mut rows = Vec::with_capacity(self.current.len() + self.next.len() - 1);
        for row in &self.current.rows {
            let mut r = row.clone();
            r.extend(std::iter::repeat_n(None, nw));
            rows.push(r);
        }
        for row in &self.next.rows[1..] {
            let mut r: Vec<Option<bool>> = vec![None; cw];
            r.extend(row.iter().copied());
            rows.push(r);
        }
        TestTable::new(self.columns(), rows)
    }

    /// Fills the empty regions of [`Junction::layout`] with each side's
    /// relation-table seeds.
    pub fn fill_from_rt(&self, mut table: TestTable, plan: &Plan) -> TestTable {
        let current_seed = plan.seeds(self.current_form);
        let next_seed = plan.seeds(self.next_form);
        let cw = self.current.width();
        for row in table.rows.iter_mut() {
            for (k, cell) in row.iter_mut().enumerate() {
                if cell.is_none() {
                    *cell = Some(if k < cw { current_seed[k] } else { next_seed[k - cw] });
                }
            }
        }
        table
    }

    /// Checks a filled join against the conditions that keep it N + 1 and
    /// pair-complete.
    pub fn conflict(&self, table: &TestTable) -> Option<Conflict> {
        if !table.is_complete() {
            return Some(Conflict::Unassigned);
        }
        if let Some((i, j)) = table.duplicate_rows() {
            return Some(Conflict::DuplicateRow(i, j));
        }
        let cw = self.current.width();
        let want = self.connector.non_controlling();
        let split = |row: &[Option<bool>]| -> (Vec<bool>, Vec<bool>) {
            let vals: Vec<bool> = row.iter().map(|c| c.unwrap_or_default()).collect();
            (vals[..cw].to_vec(), vals[cw..].to_vec())
        };

        // The next side's anchor: what the current rows carry in next's columns.
        let mut next_anchor: Option<Vec<bool>> = None;
        for (i, row) in table.rows[..self.current.len()].iter().enumerate() {
            let (_, nxt) = split(row);
            if Self::outcome(self.next_form, self.next, &nxt) != want {
                return Some(Conflict::Masking { side: Side::Next, row: i });
            }
            match &next_anchor {
                Some(a) if *a != nxt => return Some(Conflict::MissingAnchor(Side::Next)),
                _ => next_anchor = Some(nxt),
            }
        }
        let next_rows = self.next.rows().unwrap_or_default();
        let Some(next_anchor) = next_anchor.filter(|a| next_rows.contains(a)) else {
            return Some(Conflict::MissingAnchor(Side::Next));
        };
        // The fresh rows must carry every other row of the next table.
        let fresh: Vec<Vec<bool>> = table.rows[self.current.len()..].iter().map(|r| split(r).1).collect();
        if fresh.len() + 1 != next_rows.len() || next_rows.iter().any(|r| *r != next_anchor && !fresh.contains(r)) {
            return Some(Conflict::MissingAnchor(Side::Next));
        }

        let mut current_anchor: Option<Vec<bool>> = None;
        for (i, row) in table.rows.iter().enumerate().skip(self.current.len()) {
            let (cur, _) = split(row);
            if Self::outcome(self.current_form, self.current, &cur) != want {
                return Some(Conflict::Masking { side: Side::Current, row: i });
            }
            match &current_anchor {
                Some(a) if *a != cur => return Some(Conflict::MissingAnchor(Side::Current)),
                _ => current_anchor = Some(cur),
            }
        }
        if let Some(anchor) = current_anchor {
            let present = (0..self.current.len()).any(|i| self.current.row(i).as_deref() == Some(&anchor[..]));
            if !present {
                return Some(Conflict::MissingAnchor(Side::Current));
            }
        }
        None
    }

    /// Index of the anchor row for one side: the relation-table seed row when
    /// the table has it and it does not mask, otherwise the first row (in
    /// pattern-priority order) at the connector's non-controlling value.
    fn pick_anchor(&self, side: Side, plan: &Plan) -> Option<usize> {
        let (table, form) = match side {
            Side::Current => (self.current, self.current_form),
            Side::Next => (self.next, self.next_form),
        };
        let want = self.connector.non_controlling();
        let seed = plan.seeds(form);
        let rows = table.rows()?;
        let ok = |r: &Vec<bool>| Self::outcome(form, table, r) == want;
        rows.iter().position(|r| *r == seed && ok(r)).or_else(|| rows.iter().position(ok))
    }

    /// Rebuilds the join around the given anchor rows.
    pub fn compose_with_anchors(&self, current_anchor: usize, next_anchor: usize) -> TestTable {
        let cur_anchor = &self.current.rows[current_anchor];
        let nxt_anchor = &self.next.rows[next_anchor];
        let mut rows = Vec::with_capacity(self.current.len() + self.next.len() - 1);
        for row in &self.current.rows {
            rows.push(row.iter().chain(nxt_anchor).copied().collect());
        }
        for (i, row) in self.next.rows.iter().enumerate() {
            if i != next_anchor {
                rows.push(cur_anchor.iter().chain(row).copied().collect());
            }
        }
        TestTable::new(self.columns(), rows)
    }

    /// Layout, relation-table fill, and exception handling when needed.
    pub fn compose(&self, plan: &Plan) -> Result<TestTable, GenerateError> {
        let filled = self.fill_from_rt(self.layout(), plan);
        handle_exception(self, filled, plan)
    }
}

/// Repairs a join whose relation-table fill conflicts. A conflict-free table
/// is returned unchanged.
pub fn handle_exception(junction: &Junction<'_>, table: TestTable, plan: &Plan) -> Result<TestTable, GenerateError> {
    let Some(first) = junction.conflict(&table) else {
        return Ok(table);
    };
    let anchors = junction.pick_anchor(Side::Current, plan).zip(junction.pick_anchor(Side::Next, plan));
    let Some((ca, na)) = anchors else {
        return Err(GenerateError::GenerationFailed(format!(
            "no anchor row reaches the non-controlling value of {} ({first:?})",
            junction.connector
        )));
    };
    let repaired = junction.compose_with_anchors(ca, na);
    match junction.conflict(&repaired) {
        None => Ok(repaired),
        Some(c) => Err(GenerateError::GenerationFailed(format!(
            "join under {} still conflicts after repair: {c:?}",
            junction.connector
        ))),
    }
}

/// Joins a following B-form onto `current`.
pub fn compose_b_b(
    current: &TestTable,
    current_form: &FormTree,
    next: &BForm,
    connector: Connective,
    plan: &Plan,
) -> Result<TestTable, GenerateError> {
    let next_table = b_form_table(next, plan)?;
    let next_form = FormTree::B(*next);
    Junction { current, current_form, next: &next_table, next_form: &next_form, connector }.compose(plan)
}

/// Joins a trailing S-form onto `current`: under AND the S column is `T` in
/// every existing row and `F` in the fresh row, under OR the reverse.
pub fn compose_b_s(
    current: &TestTable,
    current_form: &FormTree,
    s: &SForm,
    connector: Connective,
    plan: &Plan,
) -> Result<TestTable, GenerateError> {
    let next_table = s_form_table(s, plan);
    let next_form = FormTree::S(*s);
    Junction { current, current_form, next: &next_table, next_form: &next_form, connector }.compose(plan)
}

/// Joins a whole result block onto `current`.
pub fn compose_blocks(
    current: &TestTable,
    current_form: &FormTree,
    next: &TestTable,
    next_form: &FormTree,
    connector: Connective,
    plan: &Plan,
) -> Result<TestTable, GenerateError> {
    Junction { current, current_form, next, next_form, connector }.compose(plan)
}

/// Builds the table for any form tree.
pub fn build_table(form: &FormTree, plan: &Plan) -> Result<TestTable, GenerateError> {
    match form {
        FormTree::S(s) => Ok(s_form_table(s, plan)),
        FormTree::B(b) => b_form_table(b, plan),
        FormTree::Block(blk) => {
            let mut current = build_table(&blk.members[0], plan)?;
            for j in 1..blk.members.len() {
                let prefix = if j == 1 {
                    blk.members[0].clone()
                } else {
                    FormTree::Block(ResultBlock { connector: blk.connector, members: blk.members[..j].to_vec() })
                };
                current = match &blk.members[j] {
                    FormTree::B(b) => compose_b_b(&current, &prefix, b, blk.connector, plan)?,
                    FormTree::S(s) => compose_b_s(&current, &prefix, s, blk.connector, plan)?,
                    next @ FormTree::Block(_) => {
                        let next_table = build_table(next, plan)?;
                        compose_blocks(&current, &prefix, &next_table, next, blk.connector, plan)?
                    }
                };
            }
            Ok(current)
        }
    }
}

/// Generates the N + 1 unique-cause test table for a normalized SBE.
///
/// The result is checked with the coverage module before it is returned.
pub fn generate(n: &NormalizedExpr) -> Result<TestTable, GenerateError> {
    let size = n.len();
    if size < 2 {
        return Err(GenerateError::SizeError(size));
    }
    let rt = relation_table(n).map_err(|_| GenerateError::SizeError(size))?;
    let plan = Plan::new(n.literals().to_vec(), rt);
    let form = decompose(n).map_err(|_| GenerateError::SizeError(size))?;

    let table = if size == 2 {
        let op = n.expr().connective().expect("two literals share an operator");
        let columns = vec![plan.column(0), plan.column(1)];
        TestTable::from_rows(columns, base_patterns(op).rows.iter().map(|&(l, r)| vec![l, r]).collect())
    } else {
        build_table(&form, &plan)?
    };

    self_check(n, &table)?;
    Ok(table)
}

fn self_check(n: &NormalizedExpr, table: &TestTable) -> Result<(), GenerateError> {
    let fail = |msg: String| Err(GenerateError::GenerationFailed(msg));
    if !table.is_complete() {
        return fail("unassigned cells remain".into());
    }
    if table.len() != n.len() + 1 || table.width() != n.len() {
        return fail(format!("table is {}x{}, expected {}x{}", table.len(), table.width(), n.len() + 1, n.len()));
    }
    if let Some((i, j)) = table.duplicate_rows() {
        return fail(format!("rows {i} and {j} are identical"));
    }
    let order = n.expr().variables();
    let vars = project_to_variables(table, &order)?;
    let report = unique_cause_coverage(n.expr(), &vars.assignments())
        .map_err(|e| GenerateError::GenerationFailed(e.to_string()))?;
    if !report.is_complete() {
        let missing: Vec<&str> = report.uncovered().collect();
        return fail(format!("no unique-cause pair for {}", missing.join(", ")));
    }
    Ok(())
}

/// A test table over raw variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariableTable {
    pub order: VarOrder,
    pub rows: Vec<Vec<bool>>,
}

impl VariableTable {
    pub fn assignments(&self) -> Vec<Assignment> {
        self.rows.iter().map(|r| self.order.assign(r)).collect()
    }
}

/// Converts literal values to variable values (inverting negated literals)
/// and reorders columns to `order`.
pub fn project_to_variables(t: &TestTable, order: &VarOrder) -> Result<VariableTable, GenerateError> {
    let rows = t.rows().ok_or(GenerateError::Incomplete)?;
    let mut index = Vec::with_capacity(order.len());
    for name in order.iter() {
        let col = t
            .columns
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| GenerateError::GenerationFailed(format!("no column for variable `{name}`")))?;
        index.push(col);
    }
    let rows = rows.iter().map(|r| index.iter().map(|&c| r[c] ^ t.columns[c].negated).collect()).collect();
    Ok(VariableTable { order: order.clone(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::normalize;
    use crate::parse::parse;
    use Connective::{And, Or};

    const T: bool = true;
    const F: bool = false;

    fn lits(names: &[&str]) -> Vec<Literal> {
        names.iter().map(|n| Literal { name: n.to_string(), negated: false }).collect()
    }

    #[test]
    fn base_pattern_rows() {
        assert_eq!(base_patterns(And).rows, [(T, T), (T, F), (F, T)]);
        assert_eq!(base_patterns(Or).rows, [(F, F), (F, T), (T, F)]);
        let outcomes: Vec<bool> = base_patterns(And).rows.iter().map(|&(a, b)| a && b).collect();
        assert_eq!(outcomes, [T, F, F]);
    }

    #[test]
    fn initial_pattern_selection() {
        let or = BForm::standalone(0, Or);
        assert_eq!(select_initial_pattern(&or, (T, F)), Ok([(T, F), (F, F), (F, T)]));
        let and = BForm::standalone(0, And);
        assert_eq!(select_initial_pattern(&and, (T, T)), Ok([(T, T), (T, F), (F, T)]));
        assert_eq!(select_initial_pattern(&and, (F, F)), Err(GenerateError::InvalidSlice { op: And, slice: (F, F) }));
    }

    #[test]
    fn b_and_b_composition() {
        // (A && B) && (C || D) with RT(T,T,F).
        let plan = Plan::new(lits(&["A", "B", "C", "D"]), RelationTable::from_values(vec![T, T, F]));
        let tree = FormTree::block(And, vec![FormTree::b(0, And), FormTree::b(2, Or)]);
        let FormTree::Block(blk) = &tree else { unreachable!() };
        let (FormTree::B(left), FormTree::B(right)) = (&blk.members[0], &blk.members[1]) else { unreachable!() };
        let current = b_form_table(left, &plan).unwrap();
        assert_eq!(current.rows().unwrap(), vec![vec![T, T], vec![T, F], vec![F, T]]);

        let table = compose_b_b(&current, &blk.members[0], right, And, &plan).unwrap();
        assert_eq!(
            table.rows().unwrap(),
            vec![vec![T, T, T, F], vec![T, F, T, F], vec![F, T, T, F], vec![T, T, F, F], vec![T, T, F, T],]
        );
        let outcomes: Vec<bool> = table.rows().unwrap().iter().map(|r| tree.evaluate(&|p| r[p])).collect();
        assert_eq!(outcomes, [T, F, F, F, T]);
    }

    #[test]
    fn b_and_s_composition() {
        // (A && B) && C with RT(T,T).
        let plan = Plan::new(lits(&["A", "B", "C"]), RelationTable::from_values(vec![T, T]));
        let tree = FormTree::block(And, vec![FormTree::b(0, And), FormTree::s(2)]);
        let FormTree::Block(blk) = &tree else { unreachable!() };
        let (FormTree::B(b), FormTree::S(s)) = (&blk.members[0], &blk.members[1]) else { unreachable!() };
        let current = b_form_table(b, &plan).unwrap();
        let table = compose_b_s(&current, &blk.members[0], s, And, &plan).unwrap();
        assert_eq!(table.rows().unwrap(), vec![vec![T, T, T], vec![T, F, T], vec![F, T, T], vec![T, T, F]]);
    }

    #[test]
    fn or_fresh_row_is_first_valid_completion() {
        // (A && B) || C with RT(T,F): the fresh row sets C = T and must pair
        // with a prior row where A && B is false.
        let n = normalize(&parse("(A && B) || C").unwrap()).unwrap();
        let table = generate(&n).unwrap();
        let rows = table.rows().unwrap();
        assert_eq!(rows, vec![vec![T, F, F], vec![T, T, F], vec![F, T, F], vec![T, F, T]]);

        // Independent enumeration of all fresh-row completions.
        let prior = &rows[..3];
        let valid: Vec<(bool, bool)> = [(T, T), (T, F), (F, T), (F, F)]
            .into_iter()
            .filter(|&(a, b)| {
                let fresh = vec![a, b, T];
                let flips = prior.iter().any(|p| p[0] == a && p[1] == b && ((p[0] && p[1]) || p[2]) != ((a && b) || T));
                flips && !prior.contains(&fresh)
            })
            .collect();
        assert_eq!(valid, vec![(T, F), (F, T)]);
        assert_eq!((rows[3][0], rows[3][1]), valid[0]);
    }

    #[test]
    fn n_equals_two_uses_base_pattern() {
        let n = normalize(&parse("A && B").unwrap()).unwrap();
        assert_eq!(generate(&n).unwrap().rows().unwrap(), vec![vec![T, T], vec![T, F], vec![F, T]]);
        let n = normalize(&parse("!(a && b)").unwrap()).unwrap();
        let t = generate(&n).unwrap();
        assert_eq!(t.row(0), Some(vec![F, F]));
        let vars = project_to_variables(&t, &n.expr().variables()).unwrap();
        assert_eq!(vars.rows[0], vec![T, T]);
    }

    #[test]
    fn size_error_for_single_condition() {
        let n = normalize(&parse("a").unwrap()).unwrap();
        assert_eq!(generate(&n), Err(GenerateError::SizeError(1)));
    }

    #[test]
    fn conflict_free_table_is_unchanged() {
        let plan = Plan::new(lits(&["A", "B", "C"]), RelationTable::from_values(vec![T, T]));
        let left_form = FormTree::b(0, And);
        let FormTree::B(b) = left_form else { unreachable!() };
        let b = BForm { slice: (0, 1), ..b };
        let left_form = FormTree::B(b);
        let current = b_form_table(&b, &plan).unwrap();
        let s = SForm { position: 2, slice: 1 };
        let next = s_form_table(&s, &plan);
        let next_form = FormTree::S(s);
        let j = Junction {
            current: &current,
            current_form: &left_form,
            next: &next,
            next_form: &next_form,
            connector: And,
        };
        let filled = j.fill_from_rt(j.layout(), &plan);
        assert_eq!(j.conflict(&filled), None);
        assert_eq!(handle_exception(&j, filled.clone(), &plan).unwrap(), filled);
    }

    #[test]
    fn masked_block_is_repaired() {
        // (a || b || c) && d: the OR block's seed row is all-false, which masks d.
        let n = normalize(&parse("(a || b || c) && d").unwrap()).unwrap();
        let form = decompose(&n).unwrap();
        let plan = Plan::new(n.literals().to_vec(), relation_table(&n).unwrap());
        let FormTree::Block(top) = &form else { unreachable!() };
        let inner = build_table(&top.members[0], &plan).unwrap();
        let s_table = build_table(&top.members[1], &plan).unwrap();
        let j = Junction {
            current: &inner,
            current_form: &top.members[0],
            next: &s_table,
            next_form: &top.members[1],
            connector: And,
        };
        let filled = j.fill_from_rt(j.layout(), &plan);
        assert!(matches!(j.conflict(&filled), Some(Conflict::Masking { side: Side::Current, .. })));
        let fixed = handle_exception(&j, filled, &plan).unwrap();
        assert_eq!(j.conflict(&fixed), None);
        assert_eq!(fixed.len(), 5);
    }

    #[test]
    fn duplicate_rows_trigger_exception_check() {
        let cols = lits(&["A", "B"])
            .into_iter()
            .enumerate()
            .map(|(i, l)| Column { position: i, name: l.name, negated: false })
            .collect();
        let t = TestTable::from_rows(cols, vec![vec![T, F], vec![F, T], vec![T, F]]);
        assert!(is_exception_case(&t));
        assert_eq!(t.duplicate_rows(), Some((0, 2)));
    }

    #[test]
    fn projection_inverts_negated_literals() {
        let n = normalize(&parse("!a && b && c").unwrap()).unwrap();
        let t = generate(&n).unwrap();
        let vars = project_to_variables(&t, &n.expr().variables()).unwrap();
        for (lit_row, var_row) in t.rows().unwrap().iter().zip(&vars.rows) {
            assert_eq!(var_row[0], !lit_row[0]);
            assert_eq!(&var_row[1..], &lit_row[1..]);
        }
    }

    #[test]
    fn nested_example_has_eight_rows() {
        let n = normalize(&parse("((a && b) || (c || d)) && ((e || f) && g)").unwrap()).unwrap();
        assert_eq!(relation_table(&n).unwrap().to_string(), "RT(T,F,F,T,F,T)");
        let t = generate(&n).unwrap();
        assert_eq!((t.len(), t.width()), (8, 7));
    }
}
