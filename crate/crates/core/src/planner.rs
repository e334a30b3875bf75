//! Structural analysis of a normalized SBE.
//!
//! The expression is decomposed into S-forms (one literal), B-forms (two
//! adjacent literals under one operator) and result blocks (members joined by
//! a single connector). The relation table is the operator scan of the
//! normalized expression with `&&` read as `T` and `||` as `F`.
//!
//! Literal positions are zero-based; operator `k` of the scan sits between
//! literal `k` and literal `k + 1`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{Connective, Expr};
use crate::normalize::{Literal, NormalizedExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("expression has {0} condition(s); at least 2 are required")]
    TooFewOperands(usize),
}

/// Single-literal form. `slice` indexes the relation-table value that seeds it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SForm {
    pub position: usize,
    pub slice: usize,
}

/// Two-literal form over positions `left` and `left + 1`. `slice` holds the
/// two relation-table indices that seed its literal values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BForm {
    pub left: usize,
    pub op: Connective,
    pub slice: (usize, usize),
}

impl BForm {
    /// A B-form that is the whole expression; both seeds read its own operator.
    pub fn standalone(left: usize, op: Connective) -> BForm {
        BForm { left, op, slice: (left, left) }
    }

    pub fn right(&self) -> usize {
        self.left + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResultBlock {
    pub connector: Connective,
    pub members: Vec<FormTree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FormTree {
    S(SForm),
    B(BForm),
    Block(ResultBlock),
}

impl FormTree {
    pub fn s(position: usize) -> FormTree {
        FormTree::S(SForm { position, slice: position })
    }

    pub fn b(left: usize, op: Connective) -> FormTree {
        FormTree::B(BForm::standalone(left, op))
    }

    /// Joins `members` under `connector` and assigns the relation-table seeds
    /// of direct S/B members: a member preceded by a sibling reads the
    /// connector before it; the first member reads the connector after it.
    pub fn block(connector: Connective, mut members: Vec<FormTree>) -> FormTree {
        assert!(members.len() >= 2, "a result block joins at least two members");
        for (idx, member) in members.iter_mut().enumerate() {
            match member {
                FormTree::S(s) => {
                    s.slice = if idx > 0 { s.position - 1 } else { s.position };
                }
                FormTree::B(b) => {
                    b.slice = if idx > 0 { (b.left - 1, b.left) } else { (b.left, b.left + 1) };
                }
                FormTree::Block(_) => {}
            }
        }
        debug_assert!(members.windows(2).all(|w| w[0].last_position() + 1 == w[1].first_position()));
        FormTree::Block(ResultBlock { connector, members })
    }

    pub fn first_position(&self) -> usize {
        match self {
            FormTree::S(s) => s.position,
            FormTree::B(b) => b.left,
            FormTree::Block(blk) => blk.members[0].first_position(),
        }
    }

    pub fn last_position(&self) -> usize {
        match self {
            FormTree::S(s) => s.position,
            FormTree::B(b) => b.right(),
            FormTree::Block(blk) => blk.members.last().unwrap().last_position(),
        }
    }

    /// Number of literals covered.
    pub fn width(&self) -> usize {
        self.last_position() - self.first_position() + 1
    }

    /// Literal positions of the leaves, left to right.
    pub fn positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_positions(&mut out);
        out
    }

    fn collect_positions(&self, out: &mut Vec<usize>) {
        match self {
            FormTree::S(s) => out.push(s.position),
            FormTree::B(b) => out.extend([b.left, b.right()]),
            FormTree::Block(blk) => blk.members.iter().for_each(|m| m.collect_positions(out)),
        }
    }

    /// Evaluates the form over literal truth values (negation already applied).
    pub fn evaluate<F: Fn(usize) -> bool>(&self, literal: &F) -> bool {
        match self {
            FormTree::S(s) => literal(s.position),
            FormTree::B(b) => b.op.apply(literal(b.left), literal(b.right())),
            FormTree::Block(blk) => {
                let mut acc = blk.members[0].evaluate(literal);
                for m in &blk.members[1..] {
                    acc = blk.connector.apply(acc, m.evaluate(literal));
                }
                acc
            }
        }
    }

    /// Binary operators in left-to-right reading order.
    pub fn operator_scan(&self) -> Vec<Connective> {
        let mut out = Vec::new();
        self.collect_scan(&mut out);
        out
    }

    fn collect_scan(&self, out: &mut Vec<Connective>) {
        match self {
            FormTree::S(_) => {}
            FormTree::B(b) => out.push(b.op),
            FormTree::Block(blk) => {
                for (i, m) in blk.members.iter().enumerate() {
                    if i > 0 {
                        out.push(blk.connector);
                    }
                    m.collect_scan(out);
                }
            }
        }
    }

    /// Renders the tree with literal names, e.g. `∧[B∨(n, o), B∧(l, m), S(p)]`.
    pub fn render(&self, literals: &[Literal]) -> String {
        let name = |pos: usize| literals.get(pos).map_or_else(|| format!("#{}", pos + 1), ToString::to_string);
        match self {
            FormTree::S(s) => format!("S({})", name(s.position)),
            FormTree::B(b) => format!("B{}({}, {})", b.op, name(b.left), name(b.right())),
            FormTree::Block(blk) => {
                let inner: Vec<String> = blk.members.iter().map(|m| m.render(literals)).collect();
                format!("{}[{}]", blk.connector, inner.join(", "))
            }
        }
    }
}

/// Truth-value sequence of length N - 1 directing pattern selection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RelationTable {
    values: Vec<bool>,
}

impl RelationTable {
    pub fn from_values(values: Vec<bool>) -> RelationTable {
        RelationTable { values }
    }

    pub fn from_scan(scan: &[Connective]) -> RelationTable {
        RelationTable { values: scan.iter().map(|op| op.non_controlling()).collect() }
    }

    pub fn from_forms(tree: &FormTree) -> RelationTable {
        Self::from_scan(&tree.operator_scan())
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, index: usize) -> bool {
        self.values[index]
    }

    pub fn b_slice(&self, b: &BForm) -> (bool, bool) {
        (self.values[b.slice.0], self.values[b.slice.1])
    }

    pub fn s_slice(&self, s: &SForm) -> bool {
        self.values[s.slice]
    }
}

impl fmt::Display for RelationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<&str> = self.values.iter().map(|&v| if v { "T" } else { "F" }).collect();
        write!(f, "RT({})", cells.join(","))
    }
}

/// Pairs literals left to right inside every operator group; an odd trailing
/// literal becomes an S-form and nested groups become result blocks.
pub fn decompose(n: &NormalizedExpr) -> Result<FormTree, PlanError> {
    if n.len() < 2 {
        return Err(PlanError::TooFewOperands(n.len()));
    }
    let mut next = 0;
    Ok(decompose_node(n.expr(), &mut next))
}

fn decompose_node(e: &Expr, next: &mut usize) -> FormTree {
    let Some(op) = e.connective() else {
        let s = FormTree::s(*next);
        *next += 1;
        return s;
    };
    let mut members = Vec::new();
    let mut pending: Option<usize> = None;
    for child in e.children() {
        if child.is_literal() {
            let pos = *next;
            *next += 1;
            match pending.take() {
                Some(left) => members.push(FormTree::b(left, op)),
                None => pending = Some(pos),
            }
        } else {
            if let Some(left) = pending.take() {
                members.push(FormTree::s(left));
            }
            members.push(decompose_node(child, next));
        }
    }
    if let Some(left) = pending {
        members.push(FormTree::s(left));
    }
    if members.len() == 1 {
        members.pop().unwrap()
    } else {
        FormTree::block(op, members)
    }
}

/// Reads the operators of the normalized expression left to right.
pub fn relation_table(n: &NormalizedExpr) -> Result<RelationTable, PlanError> {
    if n.len() < 2 {
        return Err(PlanError::TooFewOperands(n.len()));
    }
    let mut scan = Vec::with_capacity(n.len() - 1);
    scan_expr(n.expr(), &mut scan);
    Ok(RelationTable::from_scan(&scan))
}

fn scan_expr(e: &Expr, out: &mut Vec<Connective>) {
    if let Some(op) = e.connective() {
        for (i, c) in e.children().iter().enumerate() {
            if i > 0 {
                out.push(op);
            }
            scan_expr(c, out);
        }
    }
}
