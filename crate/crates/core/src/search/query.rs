//! Exact decision-tree depth of a partial function.
//!
//! States are partial assignments encoded in base 3, digit 2 meaning free,
//! with variable 0 as the most significant digit. Fixing a free digit lowers
//! the index, so one ascending pass sees every state after its refinements.

use crate::error::Error;
use crate::table::{PartialTruthTable, Value};

pub const QUERY_MAX_VARS: usize = 14;

const HAS0: u8 = 1;
const HAS1: u8 = 2;

/// Minimum depth of a decision tree computing some extension of `f`.
pub fn query_complexity(f: &PartialTruthTable) -> Result<usize, Error> {
    let n = f.n_vars();
    if n > QUERY_MAX_VARS {
        return Err(Error::TooLarge { what: "query complexity", n_vars: n, cap: QUERY_MAX_VARS });
    }
    let pow3: Vec<usize> = (0..=n).map(|k| 3usize.pow(k as u32)).collect();
    let states = pow3[n];
    // weight of variable v's digit
    let weight = |v: usize| pow3[n - 1 - v];

    let mut flags = vec![0u8; states];
    let mut depth = vec![0u8; states];
    for s in 0..states {
        // first free digit, if any
        let mut free = None;
        let mut row = 0usize;
        let mut rest = s;
        for v in 0..n {
            let d = rest / weight(v);
            rest %= weight(v);
            if d == 2 {
                free.get_or_insert(v);
            }
            row = (row << 1) | (d & 1);
        }
        match free {
            None => {
                flags[s] = match f.get(row) {
                    Value::Zero => HAS0,
                    Value::One => HAS1,
                    Value::Star => 0,
                };
            }
            Some(v) => {
                let w = weight(v);
                flags[s] = flags[s - 2 * w] | flags[s - w];
            }
        }
        if flags[s] != HAS0 | HAS1 {
            continue;
        }
        let mut best = u8::MAX;
        let mut rest = s;
        for v in 0..n {
            let w = weight(v);
            let d = rest / w;
            rest %= w;
            if d == 2 {
                best = best.min(1 + depth[s - 2 * w].max(depth[s - w]));
            }
        }
        depth[s] = best;
    }
    Ok(depth[states - 1] as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn or_and_parity() {
        let or3 = PartialTruthTable::from_bool_fn(3, |a| a.iter().any(|&b| b));
        assert_eq!(query_complexity(&or3).unwrap(), 3);
        let par = PartialTruthTable::from_bool_fn(4, |a| a.iter().filter(|&&b| b).count() % 2 == 1);
        assert_eq!(query_complexity(&par).unwrap(), 4);
        let x2 = PartialTruthTable::from_bool_fn(3, |a| a[1]);
        assert_eq!(query_complexity(&x2).unwrap(), 1);
        assert_eq!(query_complexity(&PartialTruthTable::constant(5, Value::One)).unwrap(), 0);
    }

    #[test]
    fn stars_lower_the_depth() {
        // defined only where x1 decides
        let t: PartialTruthTable = "tt n=2\n0*1*\n".parse().unwrap();
        assert_eq!(query_complexity(&t).unwrap(), 1);
    }
}
