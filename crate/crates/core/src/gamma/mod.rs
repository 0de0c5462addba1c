//! The partial function γ_G on `3n` bits built from a BPIS instance, its
//! graph-free restriction γ′ₙ, the canonical chained oaBPs, and checks of
//! the structure every oaBP computing them must have.
//!
//! Inputs are three `n`-bit vectors `x`, `y`, `z`. In tables, `x_i` is
//! variable `i-1`, `y_i` is `n+i-1` and `z_i` is `2n+i-1`, so `x_1` is the
//! most significant bit of the row index.

mod chain;
mod structure;

use std::collections::HashSet;
use std::fmt;

use crate::bpis::{validate_instance, BpisInstance};
use crate::error::{Error, Joined};
use crate::table::{PartialTruthTable, Value};

pub use chain::{canonical_oabp_from_permutation, chain_oabp};
pub use structure::{
    check_or_of_ands_path, check_structural_lemmas, extract_defined_permutation, inspect_structure, Lemma, LemmaViolation,
    StructureReport, Triplet,
};

/// Largest `n` for which full γ tables are materialized.
pub const REDUCE_MAX_N: usize = 6;

/// The defining cases of γ_G in their listed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GammaCase {
    /// `x = 0ⁿ`: `⋁ (y_i ∧ z_i)`
    XZero = 1,
    /// `x = 1ⁿ`: `⋁ z_i`
    XOne = 2,
    /// `z = 1ⁿ`: `⋁ (x_i ∨ y_i)`
    ZOne = 3,
    /// `z = 0ⁿ`: `0`
    ZZero = 4,
    /// `z = 1^{n/2}0^{n/2}`, `y = 0ⁿ`: OR of the first half of `x`
    Y0ZHigh = 5,
    /// `z = 0^{n/2}1^{n/2}`, `y = 0ⁿ`: OR of the second half of `x`
    Y0ZLow = 6,
    /// the input encodes an edge of G: `1`
    Edge = 7,
}

impl GammaCase {
    pub fn number(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for GammaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.number())
    }
}

/// `n`-bit words with coordinate 1 in the most significant bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Words {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Words {
    pub fn from_row(n: usize, row: usize) -> Self {
        let m = (1u32 << n) - 1;
        let r = row as u32;
        Words { x: (r >> (2 * n)) & m, y: (r >> n) & m, z: r & m }
    }

    fn from_slices(x: &[bool], y: &[bool], z: &[bool]) -> Self {
        let w = |v: &[bool]| v.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
        Words { x: w(x), y: w(y), z: w(z) }
    }
}

/// `e_i` over `h` bits, 1-based, coordinate 1 most significant.
fn unit(h: usize, i: usize) -> u32 {
    1 << (h - i)
}

/// Case-(7) patterns `(x, z)` of every edge; `y` must be zero.
pub(crate) fn edge_patterns(g: &BpisInstance) -> HashSet<(u32, u32)> {
    let n = g.n();
    let h = n / 2;
    let full = (1u32 << n) - 1;
    g.edges()
        .map(|(a, b)| {
            let (j, k) = (a.row, a.col);
            let (jp, kp) = (b.row - h, b.col - h);
            let x = full ^ ((unit(h, k) << h) | unit(h, kp));
            let z = (unit(h, j) << h) | unit(h, jp);
            (x, z)
        })
        .collect()
}

/// Every case of γ_G matching `w`, with the value it assigns.
pub(crate) fn cases_of(n: usize, edges: Option<&HashSet<(u32, u32)>>, w: Words) -> Vec<(GammaCase, Value)> {
    let full = (1u32 << n) - 1;
    let h = n / 2;
    let high = full ^ ((1u32 << (n - h)) - 1);
    let low = full ^ high;
    let b = Value::from_bool;
    let mut out = Vec::with_capacity(2);
    if w.x == 0 {
        out.push((GammaCase::XZero, b(w.y & w.z != 0)));
    }
    if w.x == full {
        out.push((GammaCase::XOne, b(w.z != 0)));
    }
    if w.z == full {
        out.push((GammaCase::ZOne, b(w.x | w.y != 0)));
    }
    if w.z == 0 {
        out.push((GammaCase::ZZero, Value::Zero));
    }
    if let Some(edges) = edges {
        if w.y == 0 && w.z == high {
            out.push((GammaCase::Y0ZHigh, b(w.x & high != 0)));
        }
        if w.y == 0 && w.z == low {
            out.push((GammaCase::Y0ZLow, b(w.x & low != 0)));
        }
        if w.y == 0 && edges.contains(&(w.x, w.z)) {
            out.push((GammaCase::Edge, Value::One));
        }
    }
    out
}

pub(crate) fn check_graph(g: &BpisInstance) -> Result<(), Error> {
    let v = validate_instance(g);
    if !v.is_empty() {
        return Err(Error::InvalidInstance(Joined(&v).to_string()));
    }
    if g.n() < 4 {
        return Err(Error::GammaDomain(format!(
            "γ_G needs n ≥ 4, got n = {}: at n = 2 the edge pattern x=00, y=00, z=11 of case (7) \
             also satisfies x = 0ⁿ (case (1)) and z = 1ⁿ (case (3)), which both assign 0",
            g.n()
        )));
    }
    Ok(())
}

fn check_lengths(n: usize, x: &[bool], y: &[bool], z: &[bool]) -> Result<(), Error> {
    for v in [x, y, z] {
        if v.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: v.len() });
        }
    }
    Ok(())
}

/// All cases of γ_G matching the input, each with its value.
pub fn gamma_cases(g: &BpisInstance, x: &[bool], y: &[bool], z: &[bool]) -> Result<Vec<(GammaCase, Value)>, Error> {
    check_graph(g)?;
    check_lengths(g.n(), x, y, z)?;
    Ok(cases_of(g.n(), Some(&edge_patterns(g)), Words::from_slices(x, y, z)))
}

/// γ_G(x, y, z): the value of the first matching case, `*` if none.
pub fn gamma_value(g: &BpisInstance, x: &[bool], y: &[bool], z: &[bool]) -> Result<Value, Error> {
    Ok(gamma_cases(g, x, y, z)?.first().map_or(Value::Star, |c| c.1))
}

/// γ′ₙ: cases (1)–(4) only.
pub fn gamma_prime_value(n: usize, x: &[bool], y: &[bool], z: &[bool]) -> Result<Value, Error> {
    check_lengths(n, x, y, z)?;
    Ok(cases_of(n, None, Words::from_slices(x, y, z)).first().map_or(Value::Star, |c| c.1))
}

/// Table of γ′ₙ over `3n` variables.
pub fn gamma_prime_table(n: usize) -> Result<PartialTruthTable, Error> {
    if n > REDUCE_MAX_N {
        return Err(Error::TooLarge { what: "γ′ table", n_vars: 3 * n, cap: 3 * REDUCE_MAX_N });
    }
    Ok(PartialTruthTable::from_fn(3 * n, |r| {
        cases_of(n, None, Words::from_row(n, r)).first().map_or(Value::Star, |c| c.1)
    }))
}

/// Output of [`reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub n: usize,
    pub table: PartialTruthTable,
    /// Non-sink node budget: one node per input bit.
    pub s_bp: usize,
    /// Gate budget of the formula version of the reduction.
    pub s_formula_gates: usize,
}

impl Reduction {
    /// `meta n=<n> s_bp=<3n> s_formula_gates=<3n-1> graph=<path>`
    pub fn meta_line(&self, graph: &str) -> String {
        format!(
            "meta n={} s_bp={} s_formula_gates={} graph={graph}",
            self.n, self.s_bp, self.s_formula_gates
        )
    }
}

/// The full table of γ_G and its size parameters.
pub fn reduce(g: &BpisInstance) -> Result<Reduction, Error> {
    check_graph(g)?;
    let n = g.n();
    if n > REDUCE_MAX_N {
        return Err(Error::TooLarge { what: "γ_G table", n_vars: 3 * n, cap: 3 * REDUCE_MAX_N });
    }
    let edges = edge_patterns(g);
    let table = PartialTruthTable::from_fn(3 * n, |r| {
        cases_of(n, Some(&edges), Words::from_row(n, r))
            .first()
            .map_or(Value::Star, |c| c.1)
    });
    Ok(Reduction { n, table, s_bp: 3 * n, s_formula_gates: 3 * n - 1 })
}

/// Inputs on which two matching cases disagree; empty when γ_G is
/// well defined.
pub fn case_conflicts(g: &BpisInstance) -> Result<Vec<(usize, Vec<(GammaCase, Value)>)>, Error> {
    check_graph(g)?;
    let n = g.n();
    if n > REDUCE_MAX_N {
        return Err(Error::TooLarge { what: "γ_G table", n_vars: 3 * n, cap: 3 * REDUCE_MAX_N });
    }
    let edges = edge_patterns(g);
    Ok((0..1usize << (3 * n))
        .filter_map(|r| {
            let c = cases_of(n, Some(&edges), Words::from_row(n, r));
            c.iter().any(|p| p.1 != c[0].1).then_some((r, c))
        })
        .collect())
}

/// Which γ target a structural check refers to.
#[derive(Clone, Copy, Debug)]
pub enum GammaTarget<'a> {
    Prime(usize),
    Graph(&'a BpisInstance),
}

impl GammaTarget<'_> {
    pub fn n(&self) -> usize {
        match self {
            GammaTarget::Prime(n) => *n,
            GammaTarget::Graph(g) => g.n(),
        }
    }

    pub fn table(&self) -> Result<PartialTruthTable, Error> {
        match self {
            GammaTarget::Prime(n) => gamma_prime_table(*n),
            GammaTarget::Graph(g) => reduce(g).map(|r| r.table),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bpis::Vertex;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    fn eval(g: &BpisInstance, x: &str, y: &str, z: &str) -> Value {
        gamma_value(g, &bits(x), &bits(y), &bits(z)).unwrap()
    }

    #[test]
    fn listed_cases() {
        let g = BpisInstance::empty(4).unwrap();
        assert_eq!(eval(&g, "0000", "1100", "1000"), Value::One);
        assert_eq!(eval(&g, "1011", "0110", "0000"), Value::Zero);
        assert_eq!(eval(&g, "0100", "0000", "1100"), Value::One);
        assert_eq!(eval(&g, "0010", "0000", "1100"), Value::Zero);
        assert_eq!(eval(&g, "0010", "0000", "0011"), Value::One);
    }

    #[test]
    fn edge_case_uses_half_offset() {
        let g = BpisInstance::new(4, [(Vertex::new(1, 2), Vertex::new(3, 4))]).unwrap();
        // x = complement of e_2 e_2 = 1010, z = e_1 e_1 = 1010
        assert_eq!(eval(&g, "1010", "0000", "1010"), Value::One);
        assert_eq!(
            gamma_cases(&g, &bits("1010"), &bits("0000"), &bits("1010")).unwrap(),
            vec![(GammaCase::Edge, Value::One)]
        );
        assert_eq!(eval(&g, "0101", "0000", "1010"), Value::Star);
        assert_eq!(eval(&BpisInstance::empty(4).unwrap(), "1010", "0000", "1010"), Value::Star);
    }

    #[test]
    fn gamma_prime_examples() {
        let v = |n, x: &str, y: &str, z: &str| gamma_prime_value(n, &bits(x), &bits(y), &bits(z)).unwrap();
        assert_eq!(v(2, "11", "00", "01"), Value::One);
        assert_eq!(v(2, "01", "11", "10"), Value::Star);
        assert_eq!(v(1, "0", "1", "1"), Value::One);
        let c = cases_of(1, None, Words::from_slices(&bits("0"), &bits("1"), &bits("1")));
        assert_eq!(c, vec![(GammaCase::XZero, Value::One), (GammaCase::ZOne, Value::One)]);
    }

    #[test]
    fn n2_is_rejected_with_the_collision() {
        let g = BpisInstance::new(2, [(Vertex::new(1, 1), Vertex::new(2, 2))]).unwrap();
        let err = gamma_value(&g, &bits("00"), &bits("00"), &bits("11")).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, Error::GammaDomain(_)));
        assert!(msg.contains("case (7)") && msg.contains("case (1)"), "{msg}");
    }

    #[test]
    fn reduction_table() {
        let empty = reduce(&BpisInstance::empty(4).unwrap()).unwrap();
        assert_eq!(empty.table.len(), 4096);
        assert_eq!(empty.s_bp, 12);
        assert_eq!(empty.s_formula_gates, 11);
        assert_eq!(empty.table.get(0), Value::Zero);
        let one = reduce(&BpisInstance::new(4, [(Vertex::new(2, 1), Vertex::new(4, 3))]).unwrap()).unwrap();
        let diff = (0..4096).filter(|&r| empty.table.get(r) != one.table.get(r)).count();
        assert_eq!(diff, 1);
        assert_eq!(
            empty.meta_line("g.bpis"),
            "meta n=4 s_bp=12 s_formula_gates=11 graph=g.bpis"
        );
    }
}
