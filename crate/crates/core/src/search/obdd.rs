//! Exact OBDD minimization by dynamic programming over variable subsets.
//!
//! When the variables of `I` are read first, the nodes labelled `v` right
//! below them are the distinct subfunctions `f|I=a` that depend on `v`, and
//! this count does not depend on the order inside `I`. Hence
//! `best(I ∪ {v}) = min over v of best(I) + nodes(I, v)`.

use std::collections::{HashMap, HashSet};

use crate::bits::Bits;
use crate::bp::{Builder, Target};
use crate::error::Error;
use crate::table::{PartialTruthTable, Value};

pub const OBDD_MAX_VARS: usize = 12;

/// Table over the free variables (in original relative order), MSB first.
fn table_bits(f: &PartialTruthTable) -> Bits {
    let mut b = Bits::zeros(f.len());
    for (r, v) in f.values().iter().enumerate() {
        if *v == Value::One {
            b.set(r);
        }
    }
    b
}

/// Splits a `k`-variable table on its variable at position `p`.
fn cofactors(t: &Bits, k: usize, p: usize) -> (Bits, Bits) {
    let half = 1usize << (k - 1);
    let stride = 1usize << (k - 1 - p);
    let mut lo = Bits::zeros(half);
    let mut hi = Bits::zeros(half);
    for r in 0..half {
        // insert a zero bit at the position of weight `stride`
        let high = (r / stride) * stride * 2;
        let low = r % stride;
        let base = high + low;
        if t.get(base) {
            lo.set(r);
        }
        if t.get(base + stride) {
            hi.set(r);
        }
    }
    (lo, hi)
}

fn depends_on(t: &Bits, k: usize, p: usize) -> bool {
    let (lo, hi) = cofactors(t, k, p);
    lo != hi
}

/// Position of variable `v` among the variables not in `set`.
fn position(set: u32, v: usize) -> usize {
    (0..v).filter(|&u| set & (1 << u) == 0).count()
}

/// Minimum reduced-OBDD size (non-sink nodes) over all variable orders,
/// with an order achieving it.
pub fn obdd_minimize(f: &PartialTruthTable) -> Result<(Vec<usize>, usize), Error> {
    let n = f.n_vars();
    if n > OBDD_MAX_VARS {
        return Err(Error::TooLarge { what: "OBDD minimization", n_vars: n, cap: OBDD_MAX_VARS });
    }
    if !f.is_total() {
        return Err(Error::NotTotal);
    }
    let full = (1u32 << n) - 1;
    let subsets = 1usize << n;
    // distinct subfunctions after fixing each subset, in ascending subset order
    let mut subs: Vec<Option<Vec<Bits>>> = vec![None; subsets];
    subs[0] = Some(vec![table_bits(f)]);
    let mut best = vec![usize::MAX; subsets];
    let mut pred = vec![usize::MAX; subsets];
    best[0] = 0;
    // subsets in order of size so every predecessor is ready
    let mut order: Vec<u32> = (0..=full).collect();
    order.sort_by_key(|s| s.count_ones());
    for &set in &order {
        let k = n - set.count_ones() as usize;
        let here = subs[set as usize].clone().expect("computed from a predecessor");
        for v in 0..n {
            if set & (1 << v) != 0 {
                continue;
            }
            let p = position(set, v);
            let nodes = here.iter().filter(|t| depends_on(t, k, p)).count();
            let next = (set | (1 << v)) as usize;
            let cost = best[set as usize] + nodes;
            if cost < best[next] {
                best[next] = cost;
                pred[next] = v;
            }
            if subs[next].is_none() {
                let mut seen = HashSet::new();
                let mut list = Vec::new();
                for t in &here {
                    let (lo, hi) = cofactors(t, k, p);
                    for c in [lo, hi] {
                        if seen.insert(c.clone()) {
                            list.push(c);
                        }
                    }
                }
                subs[next] = Some(list);
            }
        }
    }
    let mut rev = Vec::with_capacity(n);
    let mut set = full as usize;
    while set != 0 {
        let v = pred[set];
        rev.push(v);
        set &= !(1 << v);
    }
    rev.reverse();
    Ok((rev, best[full as usize]))
}

/// Size of the reduced OBDD for `f` under `order` (first element read first),
/// built explicitly by Shannon expansion with node sharing.
pub fn obdd_size_under_order(f: &PartialTruthTable, order: &[usize]) -> usize {
    fn build(
        t: &[Value],
        order: &[usize],
        depth: usize,
        n: usize,
        b: &mut Builder,
        memo: &mut HashMap<(usize, Vec<Value>), Target>,
    ) -> Target {
        if t.iter().all(|v| *v == t[0]) {
            return Target::Sink(t[0]);
        }
        if let Some(&x) = memo.get(&(depth, t.to_vec())) {
            return x;
        }
        let v = order[depth];
        // `t` is indexed by the variables order[depth..] in that order
        let k = n - depth;
        let half = 1usize << (k - 1);
        let lo = build(&t[..half], order, depth + 1, n, b, memo);
        let hi = build(&t[half..], order, depth + 1, n, b, memo);
        let id = b.node(v, lo, hi);
        memo.insert((depth, t.to_vec()), id);
        id
    }
    let n = f.n_vars();
    // reorder the table so that order[0] is the most significant bit
    let t: Vec<Value> = (0..f.len())
        .map(|r| {
            let mut row = 0usize;
            for (i, &v) in order.iter().enumerate() {
                if (r >> (n - 1 - i)) & 1 == 1 {
                    row |= 1 << (n - 1 - v);
                }
            }
            f.get(row)
        })
        .collect();
    let mut b = Builder::new(n);
    let mut memo = HashMap::new();
    let root = build(&t, order, 0, n, &mut b, &mut memo);
    b.finish(root).size()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn or_and_xor() {
        let or2: PartialTruthTable = "tt n=2\n0111\n".parse().unwrap();
        assert_eq!(obdd_minimize(&or2).unwrap().1, 2);
        let xor2: PartialTruthTable = "tt n=2\n0110\n".parse().unwrap();
        assert_eq!(obdd_minimize(&xor2).unwrap().1, 3);
        assert_eq!(obdd_size_under_order(&xor2, &[1, 0]), 3);
    }

    #[test]
    fn order_matters_for_pairing_function() {
        // (x1∧x4) ∨ (x2∧x5) ∨ (x3∧x6): interleaved orders are small
        let f = PartialTruthTable::from_bool_fn(6, |a| (a[0] && a[3]) || (a[1] && a[4]) || (a[2] && a[5]));
        let (order, size) = obdd_minimize(&f).unwrap();
        assert_eq!(size, 6);
        assert_eq!(obdd_size_under_order(&f, &order), 6);
        assert!(obdd_size_under_order(&f, &[0, 1, 2, 3, 4, 5]) > 6);
    }
}
