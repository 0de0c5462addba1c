//! 3-CNF formulas in which every variable occurs in at most four clauses,
//! and the clause-chained program computing their negation.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bp::{BranchingProgram, Builder, Target};
use crate::error::{Error, ParseError};

pub const MAX_OCCURRENCES: usize = 4;

/// Largest variable count for which satisfiability is decided by brute force.
const BRUTE_FORCE_MAX_VARS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    /// From a DIMACS literal: `±v` with `v` 1-based.
    pub fn from_dimacs(lit: i64) -> Self {
        Literal { var: lit.unsigned_abs() as usize - 1, negated: lit < 0 }
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    /// True under `value` for the variable.
    pub fn holds(self, value: bool) -> bool {
        value != self.negated
    }
}

/// Clauses of exactly three literals; each variable occurs in at most four
/// clauses. A clause may repeat a literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf34 {
    n_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

fn occurrence_error(var: usize, count: usize) -> String {
    format!("variable {} occurs in {count} clauses, at most {MAX_OCCURRENCES} allowed", var + 1)
}

impl Cnf34 {
    pub fn new(n_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self, Error> {
        if n_vars == 0 {
            return Err(Error::Cnf("a formula needs at least one variable".into()));
        }
        let mut occ = vec![0usize; n_vars];
        for (c, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var >= n_vars) {
                return Err(Error::Cnf(format!(
                    "clause {} uses variable {} but the formula has {n_vars}",
                    c + 1,
                    l.var + 1
                )));
            }
            for v in distinct_vars(clause) {
                occ[v] += 1;
                if occ[v] > MAX_OCCURRENCES {
                    return Err(Error::Cnf(occurrence_error(v, occ[v])));
                }
            }
        }
        Ok(Cnf34 { n_vars, clauses })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(assignment[l.var])))
    }

    /// Brute force over all assignments.
    pub fn is_satisfiable(&self) -> Result<bool, Error> {
        if self.n_vars > BRUTE_FORCE_MAX_VARS {
            return Err(Error::TooLarge { what: "brute-force SAT", n_vars: self.n_vars, cap: BRUTE_FORCE_MAX_VARS });
        }
        Ok((0..1usize << self.n_vars).any(|r| self.evaluate(&crate::table::assignment_of(self.n_vars, r))))
    }
}

fn distinct_vars(clause: &[Literal; 3]) -> Vec<usize> {
    let mut v: Vec<usize> = clause.iter().map(|l| l.var).collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl fmt::Display for Cnf34 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.n_vars, self.clauses.len())?;
        for c in &self.clauses {
            writeln!(f, "{} {} {} 0", c[0].to_dimacs(), c[1].to_dimacs(), c[2].to_dimacs())?;
        }
        Ok(())
    }
}

/// Parses DIMACS CNF, rejecting clauses that do not have exactly three
/// literals and variables occurring in more than four clauses.
pub fn parse_dimacs(text: &str) -> Result<Cnf34, Error> {
    let err = |line: usize, m: String| Error::Parse(ParseError::new(line, m));
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut start_line = 0;
    let mut occ: Vec<usize> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let parts: Vec<&str> = t.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            let Some((v, c)) = parsed else {
                return Err(err(line, format!("malformed header `{t}`, expected `p cnf <vars> <clauses>`")));
            };
            if header.is_some() {
                return Err(err(line, "second header".into()));
            }
            if v == 0 {
                return Err(err(line, "a formula needs at least one variable".into()));
            }
            header = Some((v, c));
            occ = vec![0; v];
            continue;
        }
        let Some((n_vars, _)) = header else {
            return Err(err(line, "clause before the `p cnf` header".into()));
        };
        for tok in t.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| err(line, format!("`{tok}` is not an integer literal")))?;
            if lit == 0 {
                if current.len() != 3 {
                    return Err(err(start_line, format!("clause has {} literals, expected 3", current.len())));
                }
                let clause = [current[0], current[1], current[2]];
                for v in distinct_vars(&clause) {
                    occ[v] += 1;
                    if occ[v] > MAX_OCCURRENCES {
                        return Err(err(start_line, occurrence_error(v, occ[v])));
                    }
                }
                clauses.push(clause);
                current.clear();
                continue;
            }
            if lit.unsigned_abs() as usize > n_vars {
                return Err(err(line, format!("literal {lit} is out of range 1..={n_vars}")));
            }
            if current.is_empty() {
                start_line = line;
            }
            current.push(Literal::from_dimacs(lit));
        }
    }
    let Some((n_vars, n_clauses)) = header else {
        return Err(err(last_line.max(1), "missing `p cnf` header".into()));
    };
    if !current.is_empty() {
        return Err(err(start_line, "clause is not terminated by 0".into()));
    }
    if clauses.len() != n_clauses {
        return Err(err(last_line.max(1), format!("header announces {n_clauses} clauses, found {}", clauses.len())));
    }
    Cnf34::new(n_vars, clauses)
}

/// The compression instance for `φ`: the one-node identity on the first
/// variable when the all-zero assignment satisfies `φ`, otherwise
/// [`clause_chain`].
pub fn sat_to_bp(phi: &Cnf34) -> BranchingProgram {
    if phi.evaluate(&vec![false; phi.n_vars()]) {
        let mut b = Builder::new(phi.n_vars());
        let root = b.push_raw(0, Target::ZERO, Target::ONE);
        return b.finish(root);
    }
    clause_chain(phi)
}

/// A program computing `¬φ`, built clause by clause.
///
/// Inside a clause the falsifying edge of a literal moves to the next
/// literal and the last one's falsifying edge reaches the 1-sink; satisfying
/// edges move to the next clause, and past the last clause to the 0-sink.
/// Repeated literals are read once and clauses holding a literal and its
/// negation are skipped, so each variable labels at most four nodes.
pub fn clause_chain(phi: &Cnf34) -> BranchingProgram {
    let mut b = Builder::new(phi.n_vars());
    let mut next_clause = Target::ZERO;
    for clause in phi.clauses().iter().rev() {
        let mut lits: Vec<Literal> = Vec::with_capacity(3);
        for &l in clause {
            if !lits.contains(&l) {
                lits.push(l);
            }
        }
        if lits.iter().any(|l| lits.contains(&Literal { negated: !l.negated, ..*l })) {
            continue;
        }
        let mut falsified = Target::ONE;
        for l in lits.iter().rev() {
            let (lo, hi) = if l.negated { (next_clause, falsified) } else { (falsified, next_clause) };
            falsified = b.push_raw(l.var, lo, hi);
        }
        next_clause = falsified;
    }
    b.finish(next_clause)
}

/// A random formula with `n_clauses` clauses over three distinct variables
/// each. Every clause takes three of the least used variables, ties broken
/// at random, so any `3 * n_clauses <= 4 * n_vars` fits.
pub fn random_cnf34(n_vars: usize, n_clauses: usize, seed: u64) -> Result<Cnf34, Error> {
    if n_vars < 3 || 3 * n_clauses > MAX_OCCURRENCES * n_vars {
        return Err(Error::Cnf(format!(
            "{n_clauses} clauses of 3 distinct variables do not fit in {n_vars} variables"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut occ = vec![0usize; n_vars];
    let mut clauses = Vec::with_capacity(n_clauses);
    for _ in 0..n_clauses {
        let mut vars: Vec<usize> = (0..n_vars).collect();
        vars.shuffle(&mut rng);
        vars.sort_by_key(|&v| occ[v]);
        let mut pick = [vars[0], vars[1], vars[2]];
        pick.sort_unstable();
        let clause = pick.map(|var| {
            occ[var] += 1;
            Literal { var, negated: rng.gen() }
        });
        clauses.push(clause);
    }
    Cnf34::new(n_vars, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::min_bp_size;
    use crate::table::Value;

    fn lits(d: &[i64]) -> [Literal; 3] {
        [Literal::from_dimacs(d[0]), Literal::from_dimacs(d[1]), Literal::from_dimacs(d[2])]
    }

    #[test]
    fn single_clause_chain() {
        let phi = Cnf34::new(3, vec![lits(&[1, 2, -3])]).unwrap();
        let b = clause_chain(&phi);
        assert_eq!(b.evaluate(&[false, false, true]), Value::One);
        assert_eq!(b.evaluate(&[true, false, true]), Value::Zero);
        for r in 0..8 {
            let a = crate::table::assignment_of(3, r);
            assert_eq!(b.evaluate(&a), Value::from_bool(!phi.evaluate(&a)));
        }
    }

    #[test]
    fn zero_satisfying_formula_gives_identity() {
        let phi = Cnf34::new(3, vec![lits(&[-1, 2, 3])]).unwrap();
        let b = sat_to_bp(&phi);
        assert_eq!(b.size(), 1);
    }

    #[test]
    fn unsatisfiable_formula_compresses_to_a_constant() {
        let phi = Cnf34::new(
            2,
            vec![lits(&[1, 1, 2]), lits(&[1, 1, -2]), lits(&[-1, -1, 2]), lits(&[-1, -1, -2])],
        )
        .unwrap();
        assert!(!phi.is_satisfiable().unwrap());
        let b = sat_to_bp(&phi);
        let t = b.to_truth_table().unwrap();
        assert_eq!(t.constant_extension(), Some(Value::One));
        assert_eq!(min_bp_size(&t).unwrap(), 0);
        assert!(b.classify().max_reads <= MAX_OCCURRENCES);
    }

    #[test]
    fn dimacs_parsing() {
        let phi = parse_dimacs("c demo\np cnf 3 1\n1 2 -3 0\n").unwrap();
        assert_eq!(phi.n_vars(), 3);
        assert_eq!(phi.clauses(), &[lits(&[1, 2, -3])]);
        assert_eq!(parse_dimacs(&phi.to_string()).unwrap(), phi);

        let e = parse_dimacs("p cnf 3 1\n1 2 0\n").unwrap_err();
        assert!(e.to_string().contains("line 2") && e.to_string().contains("2 literals"), "{e}");
        let five = "p cnf 7 5\n1 2 3 0\n1 4 5 0\n1 6 7 0\n1 2 3 0\n1 4 5 0\n";
        let e = parse_dimacs(five).unwrap_err();
        assert!(e.to_string().contains("line 6") && e.to_string().contains("5 clauses"), "{e}");
        assert!(parse_dimacs("p cnf 3 1\n1 2 4 0\n").unwrap_err().to_string().contains("out of range"));
        assert!(parse_dimacs("p cnf x 1\n").unwrap_err().to_string().contains("malformed header"));
    }

    #[test]
    fn random_formulas_respect_the_bound() {
        for seed in 0..20 {
            let phi = random_cnf34(9, 12, seed).unwrap();
            assert_eq!(phi.clauses().len(), 12);
            assert!(sat_to_bp(&phi).classify().max_reads <= MAX_OCCURRENCES);
        }
        assert!(random_cnf34(3, 5, 0).is_err());
    }
}
