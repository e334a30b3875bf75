//! Preprocessing: push negations down to literals, then order sibling blocks
//! by operand count (largest first), recursively.

use std::cmp::Reverse;
use std::fmt;

use serde::Serialize;

use crate::expr::{Expr, SbeError};

/// A literal occurrence in the normalized expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Literal {
    pub name: String,
    pub negated: bool,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!{}", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

/// An SBE in negation normal form with size-sorted siblings.
///
/// `literals[i]` describes the literal at position `i` in a left-to-right
/// reading of `expr`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedExpr {
    expr: Expr,
    literals: Vec<Literal>,
}

impl NormalizedExpr {
    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    /// Number of conditions, N.
    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }
}

impl fmt::Display for NormalizedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

/// Rewrites `e` into negation normal form via De Morgan's laws. Double
/// negations cancel.
pub fn pushdown_not(e: &Expr) -> Expr {
    nnf(e, false)
}

fn nnf(e: &Expr, negate: bool) -> Expr {
    match e {
        Expr::Var(_) if negate => Expr::not(e.clone()),
        Expr::Var(_) => e.clone(),
        Expr::Not(inner) => nnf(inner, !negate),
        Expr::And(cs) | Expr::Or(cs) => {
            let op = e.connective().unwrap();
            let op = if negate { op.dual() } else { op };
            Expr::nary(op, cs.iter().map(|c| nnf(c, negate)))
        }
    }
}

/// Orders the children of every n-ary node by operand count, descending.
/// Ties keep their original relative order.
pub fn sort_structure(e: &Expr) -> Expr {
    match e {
        Expr::Var(_) | Expr::Not(_) => e.clone(),
        Expr::And(cs) | Expr::Or(cs) => {
            let mut sorted: Vec<Expr> = cs.iter().map(sort_structure).collect();
            sorted.sort_by_key(|c| Reverse(c.operand_count()));
            match e {
                Expr::And(_) => Expr::And(sorted),
                _ => Expr::Or(sorted),
            }
        }
    }
}

pub fn normalize(e: &Expr) -> Result<NormalizedExpr, SbeError> {
    e.validate_sbe()?;
    let expr = sort_structure(&pushdown_not(e));
    let mut literals = Vec::new();
    collect_literals(&expr, &mut literals);
    Ok(NormalizedExpr { expr, literals })
}

fn collect_literals(e: &Expr, out: &mut Vec<Literal>) {
    match e {
        Expr::Var(name) => out.push(Literal { name: name.clone(), negated: false }),
        Expr::Not(inner) => match &**inner {
            Expr::Var(name) => out.push(Literal { name: name.clone(), negated: true }),
            _ => unreachable!("negation above a compound node after pushdown"),
        },
        Expr::And(cs) | Expr::Or(cs) => cs.iter().for_each(|c| collect_literals(c, out)),
    }
}

/// True when every `Not` sits directly above a variable.
pub fn is_nnf(e: &Expr) -> bool {
    match e {
        Expr::Var(_) => true,
        Expr::Not(inner) => matches!(**inner, Expr::Var(_)),
        Expr::And(cs) | Expr::Or(cs) => cs.iter().all(is_nnf),
    }
}

/// True when at every n-ary node the children's operand counts never increase.
pub fn is_sorted(e: &Expr) -> bool {
    let cs = e.children();
    cs.windows(2).all(|w| w[0].operand_count() >= w[1].operand_count()) && cs.iter().all(is_sorted)
}
