//! Existence of a read-once DeMorgan formula agreeing with a partial table.
//!
//! Subformulas are built bottom-up over variable subsets `S`. A subformula
//! is recorded by its signature: its values on the distinct projections of
//! the defined rows onto `S`. A subformula on `S` can only sit inside a
//! consistent formula if it separates every pair of defined rows that agree
//! outside `S` and carry different values; signatures failing that are
//! dropped.

use std::collections::HashMap;

use crate::formula::DeMorganFormula;
use crate::table::PartialTruthTable;

use super::budget::{Meter, SearchBudget, SearchOutcome, Witness};

pub const READ_ONCE_MAX_VARS: usize = 8;

type Sig = [u64; 4];

#[inline]
fn sig_get(s: &Sig, i: usize) -> bool {
    (s[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
fn sig_set(s: &mut Sig, i: usize) {
    s[i / 64] |= 1 << (i % 64);
}

#[derive(Clone, Copy, Debug)]
enum Back {
    Leaf { var: usize, negated: bool },
    Gate { and: bool, left: (u32, u32), right: (u32, u32) },
}

/// Projection data for one subset.
struct Subset {
    mask: usize,
    points: Vec<usize>,
    index: HashMap<usize, usize>,
    // point pairs that every usable signature must separate
    separate: Vec<(u32, u32)>,
    // required signature if `S` can carry the whole formula
    target: Option<Sig>,
}

#[derive(Default)]
struct Table {
    sigs: Vec<(Sig, Back)>,
    seen: HashMap<Sig, u32>,
}

/// Row mask selecting the variables of subset `set` (bit `v` = variable `v`).
fn row_mask(n: usize, set: u32) -> usize {
    (0..n)
        .filter(|v| set & (1 << v) != 0)
        .fold(0, |m, v| m | (1 << (n - 1 - v)))
}

fn subset_info(n: usize, set: u32, defined: &[(usize, bool)]) -> Subset {
    let mask = row_mask(n, set);
    let mut points = Vec::new();
    let mut index = HashMap::new();
    let mut value: Vec<Option<bool>> = Vec::new();
    let mut consistent = true;
    for &(r, b) in defined {
        let key = r & mask;
        let i = *index.entry(key).or_insert_with(|| {
            points.push(key);
            value.push(None);
            points.len() - 1
        });
        match value[i] {
            None => value[i] = Some(b),
            Some(old) if old != b => consistent = false,
            _ => {}
        }
    }
    let mut groups: HashMap<usize, (Vec<u32>, Vec<u32>)> = HashMap::new();
    for &(r, b) in defined {
        let g = groups.entry(r & !mask).or_default();
        let i = index[&(r & mask)] as u32;
        if b {
            g.1.push(i)
        } else {
            g.0.push(i)
        }
    }
    let mut separate: Vec<(u32, u32)> = Vec::new();
    for (z, o) in groups.values() {
        for &a in z {
            for &b in o {
                separate.push((a, b));
            }
        }
    }
    separate.sort_unstable();
    separate.dedup();
    let target = consistent.then(|| {
        let mut s = [0u64; 4];
        for (i, v) in value.iter().enumerate() {
            if v == &Some(true) {
                sig_set(&mut s, i);
            }
        }
        s
    });
    Subset { mask, points, index, separate, target }
}

fn separates(info: &Subset, s: &Sig) -> bool {
    info.separate
        .iter()
        .all(|&(a, b)| sig_get(s, a as usize) != sig_get(s, b as usize))
}

fn rebuild(tables: &[Table], set: u32, idx: u32) -> DeMorganFormula {
    match tables[set as usize].sigs[idx as usize].1 {
        Back::Leaf { var, negated } => DeMorganFormula::Lit { var, negated },
        Back::Gate { and, left, right } => {
            let l = rebuild(tables, left.0, left.1);
            let r = rebuild(tables, right.0, right.1);
            if and {
                DeMorganFormula::and(l, r)
            } else {
                DeMorganFormula::or(l, r)
            }
        }
    }
}

/// Searches for a read-once formula whose function agrees with `f` on every
/// defined entry. Variables the formula omits are simply ignored.
pub fn read_once_formula_search(f: &PartialTruthTable, budget: &SearchBudget) -> SearchOutcome {
    let meter = Meter::new(budget);
    let n = f.n_vars();
    if n > READ_ONCE_MAX_VARS {
        let mut out = meter.outcome(None);
        out.verdict = super::Verdict::Inconclusive;
        return out;
    }
    let defined: Vec<(usize, bool)> = f
        .values()
        .iter()
        .enumerate()
        .filter_map(|(r, v)| v.as_bool().map(|b| (r, b)))
        .collect();
    let necessary = f.necessary_vars().iter().fold(0u32, |m, &v| m | (1 << v));
    let full = (1u32 << n) - 1;

    let infos: Vec<Option<Subset>> = (0..=full)
        .map(|s| (s != 0).then(|| subset_info(n, s, &defined)))
        .collect();
    let mut tables: Vec<Table> = (0..=full).map(|_| Table::default()).collect();
    let mut order: Vec<u32> = (1..=full).collect();
    order.sort_by_key(|s| (s.count_ones(), *s));

    let mut witness = None;
    'outer: for &set in &order {
        let info = infos[set as usize].as_ref().expect("non-empty subset");
        let mut table = Table::default();
        let add = |sig: Sig, back: Back, table: &mut Table| {
            if separates(info, &sig) && !table.seen.contains_key(&sig) {
                table.seen.insert(sig, table.sigs.len() as u32);
                table.sigs.push((sig, back));
            }
        };
        if set.count_ones() == 1 {
            let var = set.trailing_zeros() as usize;
            for negated in [false, true] {
                let mut s = [0u64; 4];
                for (i, &key) in info.points.iter().enumerate() {
                    if (key & info.mask != 0) != negated {
                        sig_set(&mut s, i);
                    }
                }
                add(s, Back::Leaf { var, negated }, &mut table);
            }
        } else {
            let low = set & set.wrapping_neg();
            let rest = set & !low;
            // S1 = low ∪ (subset of rest), S2 = remainder, both non-empty
            let mut sub = rest;
            loop {
                let s1 = low | (rest & !sub);
                let s2 = set & !s1;
                if s2 != 0 {
                    let (i1, i2) = (infos[s1 as usize].as_ref().unwrap(), infos[s2 as usize].as_ref().unwrap());
                    let map: Vec<(usize, usize)> = info
                        .points
                        .iter()
                        .map(|&k| (i1.index[&(k & i1.mask)], i2.index[&(k & i2.mask)]))
                        .collect();
                    let (t1, t2) = (&tables[s1 as usize], &tables[s2 as usize]);
                    for (a, (g, _)) in t1.sigs.iter().enumerate() {
                        for (b, (h, _)) in t2.sigs.iter().enumerate() {
                            if !meter.tick() {
                                break 'outer;
                            }
                            let mut and = [0u64; 4];
                            let mut or = [0u64; 4];
                            for (p, &(x, y)) in map.iter().enumerate() {
                                let (gx, hy) = (sig_get(g, x), sig_get(h, y));
                                if gx && hy {
                                    sig_set(&mut and, p);
                                }
                                if gx || hy {
                                    sig_set(&mut or, p);
                                }
                            }
                            let left = (s1, a as u32);
                            let right = (s2, b as u32);
                            add(and, Back::Gate { and: true, left, right }, &mut table);
                            add(or, Back::Gate { and: false, left, right }, &mut table);
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        tables[set as usize] = table;
        if set & necessary == necessary {
            if let Some(t) = info.target {
                if let Some(&idx) = tables[set as usize].seen.get(&t) {
                    witness = Some(rebuild(&tables, set, idx));
                    break;
                }
            }
        }
    }

    if let Some(w) = &witness {
        for &(r, b) in &defined {
            let a = crate::table::assignment_of(n, r);
            assert_eq!(w.evaluate(&a), b, "witness must re-verify");
        }
        debug_assert!(w.is_read_once());
    }
    meter.outcome(witness.map(Witness::Formula))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn g_is_not_read_once() {
        let g = PartialTruthTable::from_bool_fn(3, |a| (a[1] && a[0]) || (a[2] && !a[0]));
        assert!(read_once_formula_search(&g, &budget()).is_exhausted_no());
    }

    #[test]
    fn read_once_functions_are_found() {
        let f = PartialTruthTable::from_bool_fn(3, |a| a[0] || (!a[1] && a[2]));
        let out = read_once_formula_search(&f, &budget());
        let w = out.formula().expect("found");
        assert_eq!(PartialTruthTable::from_bool_fn(3, |a| w.evaluate(a)), f);
        let lit = PartialTruthTable::from_bool_fn(2, |a| !a[1]);
        assert_eq!(
            read_once_formula_search(&lit, &budget()).formula(),
            Some(&DeMorganFormula::not_var(1))
        );
    }

    #[test]
    fn constants_need_a_fitting_literal() {
        let c = PartialTruthTable::constant(2, crate::table::Value::One);
        assert!(read_once_formula_search(&c, &budget()).is_exhausted_no());
        let t: PartialTruthTable = "tt n=2\n**11\n".parse().unwrap();
        assert!(read_once_formula_search(&t, &budget()).is_found());
    }
}
