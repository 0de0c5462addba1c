//! DeMorgan formulas: binary ∧/∨ trees with negations only at the leaves.

use std::fmt;

use crate::bp::{Builder, BranchingProgram, Target};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DeMorganFormula {
    Lit { var: usize, negated: bool },
    And(Box<DeMorganFormula>, Box<DeMorganFormula>),
    Or(Box<DeMorganFormula>, Box<DeMorganFormula>),
}

impl DeMorganFormula {
    pub fn var(var: usize) -> Self {
        DeMorganFormula::Lit { var, negated: false }
    }

    pub fn not_var(var: usize) -> Self {
        DeMorganFormula::Lit { var, negated: true }
    }

    pub fn and(a: DeMorganFormula, b: DeMorganFormula) -> Self {
        DeMorganFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: DeMorganFormula, b: DeMorganFormula) -> Self {
        DeMorganFormula::Or(Box::new(a), Box::new(b))
    }

    /// Left-leaning disjunction of a non-empty list.
    pub fn or_all(parts: impl IntoIterator<Item = DeMorganFormula>) -> Option<Self> {
        parts.into_iter().reduce(DeMorganFormula::or)
    }

    pub fn evaluate(&self, a: &[bool]) -> bool {
        match self {
            DeMorganFormula::Lit { var, negated } => a[*var] != *negated,
            DeMorganFormula::And(l, r) => l.evaluate(a) && r.evaluate(a),
            DeMorganFormula::Or(l, r) => l.evaluate(a) || r.evaluate(a),
        }
    }

    /// Leaf variables in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            DeMorganFormula::Lit { var, .. } => out.push(*var),
            DeMorganFormula::And(l, r) | DeMorganFormula::Or(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// Smallest variable count that covers every leaf.
    pub fn min_vars(&self) -> usize {
        self.leaves().into_iter().max().map_or(0, |v| v + 1)
    }

    /// Every variable occurs in at most one leaf.
    pub fn is_read_once(&self) -> bool {
        self.repeated_var().is_none()
    }

    fn repeated_var(&self) -> Option<usize> {
        let leaves = self.leaves();
        let mut seen = vec![false; self.min_vars()];
        leaves
            .into_iter()
            .find(|&v| std::mem::replace(&mut seen[v], true))
    }

    /// Number of ∧/∨ gates.
    pub fn gate_count(&self) -> usize {
        match self {
            DeMorganFormula::Lit { .. } => 0,
            DeMorganFormula::And(l, r) | DeMorganFormula::Or(l, r) => {
                1 + l.gate_count() + r.gate_count()
            }
        }
    }
}

/// `is_read_once` as a free function.
pub fn is_read_once_formula(f: &DeMorganFormula) -> bool {
    f.is_read_once()
}

/// Compiles a read-once formula into an oaBP with one node per leaf.
///
/// A literal becomes a single node. For `g ∧ h` the 1-edges of `g` lead to
/// the program for `h` and its 0-edges to the 0-sink; `g ∨ h` is dual.
pub fn formula_to_oabp(f: &DeMorganFormula, n_vars: usize) -> Result<BranchingProgram, Error> {
    if let Some(var) = f.repeated_var() {
        return Err(Error::NotReadOnce { var });
    }
    if f.min_vars() > n_vars {
        return Err(Error::ArityMismatch {
            expected: n_vars,
            found: f.min_vars(),
        });
    }
    let mut b = Builder::new(n_vars);
    let root = build(f, Target::ONE, Target::ZERO, &mut b);
    Ok(b.finish(root))
}

fn build(f: &DeMorganFormula, on_true: Target, on_false: Target, b: &mut Builder) -> Target {
    match f {
        DeMorganFormula::Lit { var, negated } => {
            let (lo, hi) = if *negated {
                (on_true, on_false)
            } else {
                (on_false, on_true)
            };
            b.push_raw(*var, lo, hi)
        }
        DeMorganFormula::And(g, h) => {
            let rest = build(h, on_true, on_false, b);
            build(g, rest, on_false, b)
        }
        DeMorganFormula::Or(g, h) => {
            let rest = build(h, on_true, on_false, b);
            build(g, on_true, rest, b)
        }
    }
}

impl fmt::Display for DeMorganFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeMorganFormula::Lit { var, negated } => {
                write!(f, "{}x{}", if *negated { "¬" } else { "" }, var + 1)
            }
            DeMorganFormula::And(l, r) => write!(f, "({l} ∧ {r})"),
            DeMorganFormula::Or(l, r) => write!(f, "({l} ∨ {r})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{PartialTruthTable, Value};

    // x ∨ (¬y ∧ z)
    fn sample() -> DeMorganFormula {
        DeMorganFormula::or(
            DeMorganFormula::var(0),
            DeMorganFormula::and(DeMorganFormula::not_var(1), DeMorganFormula::var(2)),
        )
    }

    #[test]
    fn read_once_detection() {
        assert!(sample().is_read_once());
        let not_ro = DeMorganFormula::or(
            DeMorganFormula::and(DeMorganFormula::var(0), DeMorganFormula::var(1)),
            DeMorganFormula::and(DeMorganFormula::not_var(0), DeMorganFormula::var(2)),
        );
        assert!(!is_read_once_formula(&not_ro));
        assert!(matches!(formula_to_oabp(&not_ro, 3), Err(Error::NotReadOnce { var: 0 })));
        assert!(DeMorganFormula::not_var(4).is_read_once());
    }

    #[test]
    fn compiles_to_equivalent_oabp() {
        let f = sample();
        let bp = formula_to_oabp(&f, 3).unwrap();
        assert_eq!(bp.size(), 3);
        assert!(bp.classify().is_oabp);
        let want = PartialTruthTable::from_bool_fn(3, |a| f.evaluate(a));
        assert_eq!(bp.to_truth_table().unwrap(), want);
    }

    #[test]
    fn negated_literal_swaps_edges() {
        let bp = formula_to_oabp(&DeMorganFormula::not_var(0), 1).unwrap();
        assert_eq!(bp.size(), 1);
        assert_eq!(bp.nodes()[0].lo, Target::ONE);
        assert_eq!(bp.nodes()[0].hi, Target::ZERO);
        assert_eq!(bp.evaluate(&[false]), Value::One);
    }
}
