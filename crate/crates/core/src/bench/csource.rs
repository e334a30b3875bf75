//! C translation units wrapping a decision in an `if` statement.

use std::fs;
use std::io;
use std::path::Path;

use crate::expr::Expr;

/// Renders `int <name>(int a, int b, ...)` returning 1 when the decision holds.
/// Parameters follow first-appearance order.
pub fn c_source(expr: &Expr, name: &str) -> String {
    let params: Vec<String> = expr.variables().iter().map(|v| format!("int {v}")).collect();
    format!(
        "int {name}({params})\n{{\n    if ({expr}) {{\n        return 1;\n    }}\n    return 0;\n}}\n",
        params = params.join(", "),
    )
}

pub fn emit_c_source(expr: &Expr, name: &str, path: &Path) -> io::Result<()> {
    fs::write(path, c_source(expr, name))
}

/// The condition text of the first `if (...) {` in `source`.
pub fn extract_condition(source: &str) -> Option<&str> {
    let start = source.find("if (")? + 4;
    let end = source[start..].rfind(") {")? + start;
    Some(&source[start..end])
}
