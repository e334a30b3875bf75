//! The 15 TCAS-II decisions rewritten as singular boolean expressions.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BenchmarkCase {
    pub id: u32,
    pub expression: &'static str,
    pub conditions: usize,
    /// Case count reported for a commercial generator. Reference data only.
    pub reference_cases: usize,
}

impl BenchmarkCase {
    pub fn expected_cases(&self) -> usize {
        self.conditions + 1
    }
}

const fn case(id: u32, expression: &'static str, conditions: usize, reference_cases: usize) -> BenchmarkCase {
    BenchmarkCase { id, expression, conditions, reference_cases }
}

static CORPUS: [BenchmarkCase; 15] = [
    case(
        1,
        "!(a && b) && (c && !d && !e || !f && g && !h || !i && !j && !k) && (l && m && (n || o) && p || q && (r || s) && !t || u && (v || w))",
        23,
        27,
    ),
    case(2, "a && (!b || !c) && d || e", 5, 8),
    case(
        3,
        "a && (!b || !c || d && e && !(!f && g && h && !i || !j && k && l) && !(!m && n && o && p || !q && !r && s)) || t",
        20,
        26,
    ),
    case(
        4,
        "(!a && b || c && !d) && !(e && f) && !(g && h) && !(i && j) && ((k && l || m && n) && o && (!p || !q && !r || !s && (!t || !u)))",
        21,
        28,
    ),
    case(
        5,
        "(!a && b || c && !d) && !(e && f) && !(g && h) && ((i && j || k && l) && m && (n && o || !p && q))",
        17,
        22,
    ),
    case(6, "!(a && b) && (!c && d && !e && !f && (g && h || !i && j))", 10, 13),
    case(7, "a && !b && !c && d && !e && f && (g || !h && (i || j)) && !(k && l || !m && n || o)", 15, 17),
    case(
        8,
        "a && !b && !c && !((d && (e || !f && (g || h))) || i && (j || !k && (l || m)) && !n && !o) && !(p && q || !r && s && !t)",
        20,
        24,
    ),
    case(
        9,
        "a && !b && !c && (d && (e || !f && (g || h)) && (!i && !j || k ) || !l) && (m && n || !o && p && !q)",
        17,
        20,
    ),
    case(10, "a || b || c || !d && !e && f && g && !h && !i || j && (k || l) && !m", 13, 16),
    case(11, "a && b && (c || d) && e || f && (g || h) && !i || j && (k || l)", 12, 15),
    case(
        12,
        "a && (( b || c || d) && e || f && g || h && (i || j || k || l)) || (m || n) && (o || p || q) && r",
        18,
        22,
    ),
    case(13, "(a && b || c && d) && e && (f || (g && (h && i || j && k)))", 11, 15),
    case(14, "(a && b || c && d) && e && (f && g || !h && i)", 9, 12),
    case(15, "!a && b && !c && !d && (e && f || !g && h)", 8, 10),
];

pub fn load_corpus() -> &'static [BenchmarkCase] {
    &CORPUS
}

pub fn case_by_id(id: u32) -> Option<&'static BenchmarkCase> {
    CORPUS.iter().find(|c| c.id == id)
}
