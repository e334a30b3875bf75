#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbe_mcdc::{Assignment, Connective, Expr, VarOrder};

pub const SBE1: &str = "!(a && b) && (c && !d && !e || !f && g && !h || !i && !j && !k) && (l && m && (n || o) && p || q && (r || s) && !t || u && (v || w))";

/// The 24 reference vectors for corpus case 1, one string per test.
pub const REFERENCE_VECTORS: [&str; 24] = [
    "01111001000110011010001",
    "00111001000110011010001",
    "10111001000110011010001",
    "01011001000110011010001",
    "01101001000110011010001",
    "01110001000110011010001",
    "01110011000110011010001",
    "01110101000110011010001",
    "01110010000110011010001",
    "01110011100110011010001",
    "01110011101110011010001",
    "01110011110110011010001",
    "01110011101010011010001",
    "01110011101111011010001",
    "01110011101100011010001",
    "01110011101110111010001",
    "01110011101110101010001",
    "01110011101110100010001",
    "01110011101110101110001",
    "01110011101110101100001",
    "01110011101110101101001",
    "01110011101110101100101",
    "01110011101110101100011",
    "01110011101110101100010",
];

/// Variable behind each character position: the literal order of the normalized
/// expression, not the a..w header.
pub const REFERENCE_COLUMNS: &str = "nomlprsqtvwucdefghijkab";

pub fn reference_order() -> VarOrder {
    VarOrder::new(REFERENCE_COLUMNS.chars().map(|c| c.to_string()).collect())
}

pub fn reference_assignments() -> Vec<Assignment> {
    assignments_over(&reference_order())
}

/// The vectors read against the a..w header instead.
pub fn reference_header_assignments() -> Vec<Assignment> {
    assignments_over(&VarOrder::new(('a'..='w').map(|c| c.to_string()).collect()))
}

fn assignments_over(order: &VarOrder) -> Vec<Assignment> {
    REFERENCE_VECTORS.iter().map(|row| order.assign(&row.bytes().map(|b| b == b'1').collect::<Vec<_>>())).collect()
}

/// Every assignment over `order`, first variable as the most significant bit.
pub fn truth_table(order: &VarOrder) -> impl Iterator<Item = Vec<bool>> + '_ {
    let n = order.len();
    (0..1usize << n).map(move |r| (0..n).map(|i| r >> (n - 1 - i) & 1 == 1).collect())
}

/// A random singular expression over `n` fresh variables: random grouping,
/// operators and negations, including negated compound blocks.
pub fn random_sbe(rng: &mut impl Rng, n: usize) -> Expr {
    let mut names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    names.shuffle(rng);
    build(rng, &names)
}

fn build(rng: &mut impl Rng, names: &[String]) -> Expr {
    if names.len() == 1 {
        let v = Expr::var(names[0].clone());
        return if rng.gen_bool(0.4) { Expr::not(v) } else { v };
    }
    let parts = rng.gen_range(2..=names.len().min(4));
    let mut cuts: Vec<usize> = (1..names.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut children = Vec::with_capacity(parts);
    let mut start = 0;
    for cut in cuts.into_iter().chain([names.len()]) {
        children.push(build(rng, &names[start..cut]));
        start = cut;
    }
    let op = if rng.gen_bool(0.5) { Connective::And } else { Connective::Or };
    let node = Expr::nary(op, children);
    if rng.gen_bool(0.2) {
        Expr::not(node)
    } else {
        node
    }
}

/// Deterministic fuzz corpus with condition counts drawn from `lo..=hi`.
pub fn fuzz_corpus(seed: u64, count: usize, lo: usize, hi: usize) -> Vec<Expr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(lo..=hi);
            random_sbe(&mut rng, n)
        })
        .collect()
}
