//! Boolean decision AST over named conditions.
//!
//! `And`/`Or` nodes are n-ary and always flattened: a node never has a direct
//! child of its own kind. Use [`Expr::and`] and [`Expr::or`] to build nodes so
//! that this holds.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Binary connective of an n-ary node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Connective {
    And,
    Or,
}

impl Connective {
    pub fn apply(self, lhs: bool, rhs: bool) -> bool {
        match self {
            Connective::And => lhs && rhs,
            Connective::Or => lhs || rhs,
        }
    }

    /// The operand value that lets the other operand decide the outcome
    /// (`true` for AND, `false` for OR). This is also the relation-table value
    /// of the connective.
    pub fn non_controlling(self) -> bool {
        matches!(self, Connective::And)
    }

    pub fn dual(self) -> Connective {
        match self {
            Connective::And => Connective::Or,
            Connective::Or => Connective::And,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::And => "&&",
            Connective::Or => "||",
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connective::And => "∧",
            Connective::Or => "∨",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SbeError {
    /// The variable occurs more than once, so unique-cause pairs cannot exist for it.
    #[error("coupled condition `{name}` occurs {count} times")]
    CoupledCondition { name: String, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value for variable `{0}`")]
    MissingVariable(String),
}

impl Expr {
    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    /// Flattening AND constructor. A single child is returned as-is.
    pub fn and(children: impl IntoIterator<Item = Expr>) -> Expr {
        Self::nary(Connective::And, children)
    }

    /// Flattening OR constructor. A single child is returned as-is.
    pub fn or(children: impl IntoIterator<Item = Expr>) -> Expr {
        Self::nary(Connective::Or, children)
    }

    pub fn nary(op: Connective, children: impl IntoIterator<Item = Expr>) -> Expr {
        let mut flat = Vec::new();
        for child in children {
            match (op, child) {
                (Connective::And, Expr::And(inner)) | (Connective::Or, Expr::Or(inner)) => flat.extend(inner),
                (_, other) => flat.push(other),
            }
        }
        assert!(!flat.is_empty(), "n-ary node needs at least one child");
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        match op {
            Connective::And => Expr::And(flat),
            Connective::Or => Expr::Or(flat),
        }
    }

    pub fn connective(&self) -> Option<Connective> {
        match self {
            Expr::And(_) => Some(Connective::And),
            Expr::Or(_) => Some(Connective::Or),
            _ => None,
        }
    }

    pub fn children(&self) -> &[Expr] {
        match self {
            Expr::And(cs) | Expr::Or(cs) => cs,
            _ => &[],
        }
    }

    /// A variable or a negated variable.
    pub fn is_literal(&self) -> bool {
        match self {
            Expr::Var(_) => true,
            Expr::Not(inner) => matches!(**inner, Expr::Var(_)),
            _ => false,
        }
    }

    /// Number of variable leaves beneath this node.
    pub fn operand_count(&self) -> usize {
        match self {
            Expr::Var(_) => 1,
            Expr::Not(inner) => inner.operand_count(),
            Expr::And(cs) | Expr::Or(cs) => cs.iter().map(Expr::operand_count).sum(),
        }
    }

    /// Variable leaves in left-to-right order, repeats included.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Var(name) => out.push(name),
            Expr::Not(inner) => inner.collect_leaves(out),
            Expr::And(cs) | Expr::Or(cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Distinct variables in first-appearance order.
    pub fn variables(&self) -> VarOrder {
        let mut names: Vec<String> = Vec::new();
        for leaf in self.leaves() {
            if !names.iter().any(|n| n == leaf) {
                names.push(leaf.to_string());
            }
        }
        VarOrder(names)
    }

    /// Checks the singular-expression property: every variable occurs exactly once.
    pub fn validate_sbe(&self) -> Result<(), SbeError> {
        let leaves = self.leaves();
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for leaf in &leaves {
            *counts.entry(leaf).or_default() += 1;
        }
        for leaf in leaves {
            let count = counts[leaf];
            if count > 1 {
                return Err(SbeError::CoupledCondition { name: leaf.to_string(), count });
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool, EvalError> {
        self.eval_with(&mut |name| assignment.get(name))
    }

    /// Evaluates with a caller-supplied variable lookup. All operands are
    /// evaluated; there is no short-circuiting.
    pub fn eval_with<F>(&self, lookup: &mut F) -> Result<bool, EvalError>
    where
        F: FnMut(&str) -> Option<bool>,
    {
        match self {
            Expr::Var(name) => lookup(name).ok_or_else(|| EvalError::MissingVariable(name.clone())),
            Expr::Not(inner) => Ok(!inner.eval_with(lookup)?),
            Expr::And(cs) => {
                let mut acc = true;
                for c in cs {
                    acc &= c.eval_with(lookup)?;
                }
                Ok(acc)
            }
            Expr::Or(cs) => {
                let mut acc = false;
                for c in cs {
                    acc |= c.eval_with(lookup)?;
                }
                Ok(acc)
            }
        }
    }

    /// Evaluates against a value vector laid out in `order`.
    pub fn eval_indexed(&self, order: &VarOrder, values: &[bool]) -> Result<bool, EvalError> {
        self.eval_with(&mut |name| order.index_of(name).and_then(|i| values.get(i).copied()))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Or(_) => 0,
            Expr::And(_) => 1,
            Expr::Not(_) | Expr::Var(_) => 2,
        }
    }

    fn fmt_child(&self, child: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if child.precedence() <= self.precedence() {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

/// Canonical rendering: `a && (b || !c)`. Parentheses appear only where
/// precedence requires them, so re-parsing yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(name) => f.write_str(name),
            Expr::Not(inner) => {
                f.write_str("!")?;
                match **inner {
                    Expr::Var(_) | Expr::Not(_) => write!(f, "{inner}"),
                    _ => write!(f, "({inner})"),
                }
            }
            Expr::And(cs) | Expr::Or(cs) => {
                let sep = if matches!(self, Expr::And(_)) { " && " } else { " || " };
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    self.fmt_child(c, f)?;
                }
                Ok(())
            }
        }
    }
}

/// Variable names in first-appearance order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarOrder(Vec<String>);

impl VarOrder {
    pub fn new(names: Vec<String>) -> VarOrder {
        VarOrder(names)
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    /// Builds an assignment from values laid out in this order.
    pub fn assign(&self, values: &[bool]) -> Assignment {
        self.0.iter().cloned().zip(values.iter().copied()).collect()
    }

    /// Lays out an assignment as a value vector; `None` if a name is missing.
    pub fn values_of(&self, assignment: &Assignment) -> Option<Vec<bool>> {
        self.0.iter().map(|n| assignment.get(n)).collect()
    }
}

/// Truth values for named conditions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment(BTreeMap<String, bool>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.0.get(name).copied()
    }

    pub fn set(&mut self, name: impl Into<String>, value: bool) {
        self.0.insert(name.into(), value);
    }

    /// Copy of this assignment with `name` negated.
    pub fn toggled(&self, name: &str) -> Assignment {
        let mut out = self.clone();
        if let Some(v) = out.0.get_mut(name) {
            *v = !*v;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<S: Into<String>> FromIterator<(S, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (S, bool)>>(iter: I) -> Self {
        Assignment(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}
