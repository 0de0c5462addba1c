//! Partial truth tables, partial assignments, and the `tt` text format.

use std::fmt;
use std::str::FromStr;

use crate::bits::Bits;
use crate::error::{Error, ParseError};

/// Largest variable count accepted when a table is materialized.
pub const DEFAULT_TABLE_CAP: usize = 20;

/// An output value: 0, 1, or the "undefined" star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Zero,
    One,
    Star,
}

impl Value {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Value::One
        } else {
            Value::Zero
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Value::Zero => Some(false),
            Value::One => Some(true),
            Value::Star => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Value::Zero => '0',
            Value::One => '1',
            Value::Star => '*',
        }
    }

    /// True when `self` is `*` or equals `other`.
    pub fn admits(self, other: Value) -> bool {
        self == Value::Star || self == other
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Bit of variable `var` in row `row` of an `n_vars` table (variable 0 is the
/// most significant bit).
#[inline]
pub fn row_bit(n_vars: usize, row: usize, var: usize) -> bool {
    (row >> (n_vars - 1 - var)) & 1 == 1
}

/// Row index of a total assignment.
pub fn row_of(assignment: &[bool]) -> usize {
    assignment
        .iter()
        .fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

/// Total assignment encoded by `row`.
pub fn assignment_of(n_vars: usize, row: usize) -> Vec<bool> {
    (0..n_vars).map(|v| row_bit(n_vars, row, v)).collect()
}

/// A function `{0,1}^n -> {0,1,*}` stored as its `2^n` values in ascending
/// row order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialTruthTable {
    n_vars: usize,
    values: Vec<Value>,
}

impl PartialTruthTable {
    pub fn new(n_vars: usize, values: Vec<Value>) -> Result<Self, Error> {
        if n_vars > 30 {
            return Err(Error::TooLarge {
                what: "truth table",
                n_vars,
                cap: 30,
            });
        }
        if values.len() != 1usize << n_vars {
            return Err(Error::TableLength {
                n_vars,
                len: values.len(),
            });
        }
        Ok(PartialTruthTable { n_vars, values })
    }

    pub fn from_fn(n_vars: usize, mut f: impl FnMut(usize) -> Value) -> Self {
        PartialTruthTable {
            n_vars,
            values: (0..1usize << n_vars).map(&mut f).collect(),
        }
    }

    /// Total table from a Boolean function of the row's assignment.
    pub fn from_bool_fn(n_vars: usize, mut f: impl FnMut(&[bool]) -> bool) -> Self {
        Self::from_fn(n_vars, |r| Value::from_bool(f(&assignment_of(n_vars, r))))
    }

    pub fn constant(n_vars: usize, v: Value) -> Self {
        PartialTruthTable {
            n_vars,
            values: vec![v; 1 << n_vars],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn get(&self, row: usize) -> Value {
        self.values[row]
    }

    pub fn at(&self, assignment: &[bool]) -> Value {
        self.values[row_of(assignment)]
    }

    pub fn is_total(&self) -> bool {
        !self.values.contains(&Value::Star)
    }

    pub fn defined_count(&self) -> usize {
        self.values.iter().filter(|v| **v != Value::Star).count()
    }

    /// Constant value compatible with every defined entry, if one exists.
    pub fn constant_extension(&self) -> Option<Value> {
        let has0 = self.values.contains(&Value::Zero);
        let has1 = self.values.contains(&Value::One);
        match (has0, has1) {
            (false, false) | (true, false) => Some(Value::Zero),
            (false, true) => Some(Value::One),
            (true, true) => None,
        }
    }

    /// True when every defined entry of `self` is matched by `other`.
    pub fn is_extended_by(&self, other: &PartialTruthTable) -> bool {
        self.n_vars == other.n_vars
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| *a == Value::Star || a == b)
    }

    /// First row where `self` is defined and `other` disagrees.
    pub fn first_disagreement(&self, other: &PartialTruthTable) -> Option<usize> {
        self.values
            .iter()
            .zip(&other.values)
            .position(|(a, b)| *a != Value::Star && a != b)
    }

    /// Pointwise restriction: row `r` takes the value at `r` with the
    /// assigned variables overwritten by `alpha`. Variable indexing is kept.
    pub fn restrict(&self, alpha: &PartialAssignment) -> PartialTruthTable {
        assert_eq!(alpha.n_vars(), self.n_vars, "assignment arity mismatch");
        let (mask, bits) = alpha.row_mask(self.n_vars);
        PartialTruthTable {
            n_vars: self.n_vars,
            values: (0..self.values.len())
                .map(|r| self.values[(r & !mask) | bits])
                .collect(),
        }
    }

    /// Table of the subfunction on the unassigned variables only, in their
    /// original relative order.
    pub fn subfunction(&self, alpha: &PartialAssignment) -> PartialTruthTable {
        let free: Vec<usize> = (0..self.n_vars).filter(|&v| alpha.get(v).is_none()).collect();
        let k = free.len();
        PartialTruthTable::from_fn(k, |r| {
            let mut full = alpha.clone();
            for (i, &v) in free.iter().enumerate() {
                full.set(v, Some(row_bit(k, r, i)));
            }
            self.values[full.row().expect("fully assigned")]
        })
    }

    /// True when some pair of defined rows differing only in `var` carries
    /// different values, so every extension depends on `var`.
    pub fn is_sensitive_in(&self, var: usize) -> bool {
        let stride = 1usize << (self.n_vars - 1 - var);
        (0..self.values.len()).any(|r| {
            r & stride == 0 && {
                let a = self.values[r];
                let b = self.values[r | stride];
                a != Value::Star && b != Value::Star && a != b
            }
        })
    }

    /// Variables every extension depends on.
    pub fn necessary_vars(&self) -> Vec<usize> {
        (0..self.n_vars).filter(|&v| self.is_sensitive_in(v)).collect()
    }

    /// True when, for every variable, some defined pair differing only there
    /// has different values.
    pub fn is_fully_sensitive(&self) -> bool {
        (0..self.n_vars).all(|v| self.is_sensitive_in(v))
    }

    pub(crate) fn zeros_and_ones(&self) -> (Bits, Bits) {
        let mut z = Bits::zeros(self.values.len());
        let mut o = Bits::zeros(self.values.len());
        for (r, v) in self.values.iter().enumerate() {
            match v {
                Value::Zero => z.set(r),
                Value::One => o.set(r),
                Value::Star => {}
            }
        }
        (z, o)
    }
}

impl fmt::Display for PartialTruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tt n={}", self.n_vars)?;
        for v in &self.values {
            write!(f, "{}", v.symbol())?;
        }
        writeln!(f)
    }
}

impl FromStr for PartialTruthTable {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, "missing `tt n=<n>` header"))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("tt") {
            return Err(ParseError::new(hl + 1, "expected `tt` header"));
        }
        let n_vars = match words.next().and_then(|w| w.strip_prefix("n=")) {
            Some(n) => n
                .parse::<usize>()
                .map_err(|_| ParseError::new(hl + 1, format!("bad variable count `{n}`")))?,
            None => return Err(ParseError::new(hl + 1, "expected `n=<n>`")),
        };
        if n_vars > 30 {
            return Err(ParseError::new(hl + 1, format!("n={n_vars} is too large")));
        }
        let (bl, body) = lines
            .next()
            .ok_or_else(|| ParseError::new(hl + 2, "missing table line"))?;
        let values = body
            .trim()
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(Value::Zero),
                '1' => Ok(Value::One),
                '*' => Ok(Value::Star),
                _ => Err(ParseError::new(bl + 1, format!("bad symbol `{c}` at column {}", i + 1))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != 1usize << n_vars {
            return Err(ParseError::new(
                bl + 1,
                format!("expected {} entries, found {}", 1usize << n_vars, values.len()),
            ));
        }
        if let Some((l, _)) = lines.next() {
            return Err(ParseError::new(l + 1, "trailing content after table"));
        }
        Ok(PartialTruthTable { n_vars, values })
    }
}

/// An assignment to some of the variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    values: Vec<Option<bool>>,
}

impl PartialAssignment {
    pub fn empty(n_vars: usize) -> Self {
        PartialAssignment {
            values: vec![None; n_vars],
        }
    }

    pub fn from_values(values: Vec<Option<bool>>) -> Self {
        PartialAssignment { values }
    }

    /// Assignment from `(variable, value)` pairs.
    pub fn from_pairs(n_vars: usize, pairs: &[(usize, bool)]) -> Self {
        let mut a = Self::empty(n_vars);
        for &(v, b) in pairs {
            a.values[v] = Some(b);
        }
        a
    }

    pub fn n_vars(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, var: usize) -> Option<bool> {
        self.values[var]
    }

    pub fn set(&mut self, var: usize, value: Option<bool>) {
        self.values[var] = value;
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| self.values[v].is_some()).collect()
    }

    /// Disjoint union `a ∪ b`.
    pub fn union(&self, other: &PartialAssignment) -> Result<PartialAssignment, Error> {
        if self.n_vars() != other.n_vars() {
            return Err(Error::ArityMismatch {
                expected: self.n_vars(),
                found: other.n_vars(),
            });
        }
        let mut out = self.clone();
        for (v, b) in other.values.iter().enumerate() {
            if let Some(b) = b {
                if self.values[v].is_some() {
                    return Err(Error::OverlappingSupport { var: v });
                }
                out.values[v] = Some(*b);
            }
        }
        Ok(out)
    }

    /// Row index when every variable is assigned.
    pub fn row(&self) -> Option<usize> {
        self.values
            .iter()
            .try_fold(0usize, |acc, b| b.map(|b| (acc << 1) | b as usize))
    }

    /// `(mask, bits)` such that a row `r` is consistent iff `r & mask == bits`.
    pub(crate) fn row_mask(&self, n_vars: usize) -> (usize, usize) {
        let mut mask = 0;
        let mut bits = 0;
        for (v, b) in self.values.iter().enumerate() {
            if let Some(b) = b {
                let w = 1usize << (n_vars - 1 - v);
                mask |= w;
                if *b {
                    bits |= w;
                }
            }
        }
        (mask, bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn msb_first_indexing() {
        assert_eq!(row_of(&[true, false, false]), 4);
        assert_eq!(assignment_of(3, 6), vec![true, true, false]);
        assert!(row_bit(3, 4, 0));
        assert!(!row_bit(3, 4, 2));
    }

    #[test]
    fn text_round_trip() {
        let t: PartialTruthTable = "tt n=2\n01*1\n".parse().unwrap();
        assert_eq!(t.get(2), Value::Star);
        assert_eq!(t.to_string(), "tt n=2\n01*1\n");
    }

    #[test]
    fn rejects_wrong_length() {
        let err = "tt n=2\n010\n".parse::<PartialTruthTable>().unwrap_err();
        assert_eq!(err.line, 2);
        assert!("tt n=1\n0x\n".parse::<PartialTruthTable>().is_err());
        assert!("bp n=1\n01\n".parse::<PartialTruthTable>().is_err());
    }

    #[test]
    fn union_requires_disjoint_support() {
        let a = PartialAssignment::from_pairs(3, &[(0, true)]);
        let b = PartialAssignment::from_pairs(3, &[(1, false)]);
        let u = a.union(&b).unwrap();
        assert_eq!(u.support(), vec![0, 1]);
        assert!(matches!(
            a.union(&a),
            Err(Error::OverlappingSupport { var: 0 })
        ));
    }

    #[test]
    fn restriction_and_subfunction_agree() {
        // f = x0 xor (x1 and x2)
        let f = PartialTruthTable::from_bool_fn(3, |a| a[0] ^ (a[1] & a[2]));
        let alpha = PartialAssignment::from_pairs(3, &[(1, true)]);
        let sub = f.subfunction(&alpha);
        assert_eq!(sub.n_vars(), 2);
        // sub(x0, x2) = x0 xor x2
        assert_eq!(
            sub.values(),
            &[Value::Zero, Value::One, Value::One, Value::Zero]
        );
        let r = f.restrict(&alpha);
        assert_eq!(r.get(0b000), f.get(0b010));
        assert_eq!(r.get(0b101), f.get(0b111));
    }

    #[test]
    fn sensitivity_uses_defined_pairs_only() {
        let t: PartialTruthTable = "tt n=2\n0**1\n".parse().unwrap();
        assert!(!t.is_sensitive_in(0));
        assert!(!t.is_sensitive_in(1));
        let x: PartialTruthTable = "tt n=2\n0011\n".parse().unwrap();
        assert_eq!(x.necessary_vars(), vec![0]);
    }
}
