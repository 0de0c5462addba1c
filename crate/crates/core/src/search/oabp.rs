//! Backtracking search for once-appearance programs.
//!
//! Nodes are placed one at a time in topological order. An open node is a
//! node already targeted by some edge but not yet placed; it keeps the set
//! of defined rows whose path reaches it. Placing an open node gives it an
//! unused label and routes its rows along two edges, each to a sink of the
//! right value, to another open node, or to a fresh open node.
//!
//! Only irredundant programs are visited: both edges of every node carry
//! at least one defined row. Deleting a node with a row-free edge and
//! redirecting its in-edges to the other child keeps the program correct,
//! so this loses no answer. Placements follow Kahn's algorithm taking the
//! smallest available label, which makes every program appear once: a node
//! is placed only with a label above every label placed since its last
//! in-edge.
//!
//! Rows waiting at an open node are only queried on unused labels from then
//! on. A 0-row and a 1-row waiting there that agree on every unused label
//! make the branch infeasible, and the future of a state depends only on
//! the open nodes' rows projected onto the unused labels. States already
//! shown to have no completion are remembered under that projection.

use std::collections::HashSet;
use std::sync::atomic::Ordering;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::bits::{column, Bits};
use crate::bp::{BranchingProgram, Node, Target};
use crate::table::{PartialTruthTable, Value};

use super::budget::{Meter, SearchBudget, SearchOutcome, Verdict, Witness};

pub const OABP_MAX_VARS: usize = 20;

/// Cap on remembered dead states.
const MEMO_CAP: usize = 1 << 21;

/// The search ran out of budget or found what it needed.
struct Stop;

/// `Ok(true)` when some program was emitted below.
type Flow = Result<bool, Stop>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Edge {
    Sink(Value),
    Open(usize),
}

#[derive(Clone)]
struct Open {
    id: usize,
    rows: Bits,
    // 0-rows and 1-rows, closed under flipping used labels; kept disjoint
    zeros: Bits,
    ones: Bits,
    // number of nodes placed when its latest in-edge was added
    since: usize,
}

#[derive(Clone, Copy)]
struct Placed {
    id: usize,
    var: usize,
    lo: Edge,
    hi: Edge,
}

#[derive(Clone)]
struct State {
    placed: Vec<Placed>,
    open: Vec<Open>,
    used: u32,
    next_id: usize,
}

/// Result of an exhaustive enumeration.
#[derive(Clone, Debug)]
pub struct OabpEnumeration {
    /// Distinct programs up to node renumbering, in canonical form.
    pub programs: Vec<BranchingProgram>,
    /// False when the budget ran out before the search space was covered.
    pub complete: bool,
    pub stats: super::SearchStats,
}

/// Where an edge of a node being placed goes.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Choice {
    Sink(Value),
    Existing(usize),
    Fresh,
}

struct Ctx<'a> {
    n: usize,
    zeros: &'a Bits,
    ones: &'a Bits,
    cols: Vec<Bits>,
    meter: &'a Meter,
    collect_all: bool,
    found: Mutex<Option<BranchingProgram>>,
    all: Mutex<HashSet<BranchingProgram>>,
    dead: Mutex<HashSet<Vec<u64>>>,
}

impl<'a> Ctx<'a> {
    fn stride(&self, v: usize) -> usize {
        1 << (self.n - 1 - v)
    }

    /// Restriction of a projected row set to the rows whose used labels are
    /// all 0, packed over the unused labels.
    fn pack(&self, rows: &Bits, used: u32, out: &mut Vec<u64>) {
        let free = (0..self.n)
            .filter(|u| used & (1 << u) == 0)
            .fold(0usize, |m, u| m | self.stride(u));
        let (mut word, mut bit, mut row) = (0u64, 0, 0usize);
        loop {
            word |= (rows.get(row) as u64) << bit;
            bit += 1;
            if bit == 64 {
                out.push(word);
                word = 0;
                bit = 0;
            }
            if row == free {
                break;
            }
            // next submask of `free` in increasing order
            row = ((row | !free).wrapping_add(1)) & free;
        }
        if bit > 0 {
            out.push(word);
        }
    }

    /// Largest label placed since `since` nodes were placed, plus one.
    fn floor(&self, st: &State, since: usize) -> usize {
        st.placed[since..].iter().map(|p| p.var + 1).max().unwrap_or(0)
    }

    /// Memo key: used labels and the sorted open-node descriptors.
    fn state_key(&self, st: &State) -> Vec<u64> {
        let mut parts: Vec<Vec<u64>> = st
            .open
            .iter()
            .map(|o| {
                let mut d = vec![self.floor(st, o.since) as u64];
                self.pack(&o.zeros, st.used, &mut d);
                self.pack(&o.ones, st.used, &mut d);
                d
            })
            .collect();
        parts.sort_unstable();
        let mut key = vec![st.used as u64];
        for p in parts {
            key.extend(p);
        }
        key
    }

    fn choices(&self, st: &State, exclude: usize, rows: &Bits) -> Vec<Choice> {
        let mut out = Vec::with_capacity(st.open.len() + 2);
        if !rows.intersects(self.ones) {
            out.push(Choice::Sink(Value::Zero));
        }
        if !rows.intersects(self.zeros) {
            out.push(Choice::Sink(Value::One));
        }
        out.extend((0..st.open.len()).filter(|&k| k != exclude).map(Choice::Existing));
        out.push(Choice::Fresh);
        out
    }

    fn program(&self, st: &State) -> BranchingProgram {
        let pos = |id: usize| st.placed.iter().position(|p| p.id == id).expect("every open node was placed");
        let target = |e: Edge| match e {
            Edge::Sink(v) => Target::Sink(v),
            Edge::Open(id) => Target::Node(pos(id)),
        };
        let nodes = st
            .placed
            .iter()
            .map(|p| Node { var: p.var, lo: target(p.lo), hi: target(p.hi) })
            .collect();
        BranchingProgram::new(self.n, nodes).expect("placement order is topological")
    }

    fn emit(&self, st: &State) -> Flow {
        let bp = self.program(st);
        if self.collect_all {
            self.all.lock().unwrap().insert(bp.canonicalize());
            return Ok(true);
        }
        self.found.lock().unwrap().get_or_insert(bp);
        self.meter.done.store(true, Ordering::Relaxed);
        Err(Stop)
    }

    /// Projected 0/1 sets of `rows` given the projection over `used`
    /// of a superset that agrees with it off label `v`: `rows` is the part
    /// of that superset where `v` reads `bit`.
    fn narrow(&self, z: &Bits, o: &Bits, v: usize, bit: bool) -> (Bits, Bits) {
        let keep = |b: &Bits| {
            let mut r = if bit { b & &self.cols[v] } else { b.and_not(&self.cols[v]) };
            r.exists(self.stride(v));
            r
        };
        (keep(z), keep(o))
    }

    /// The state after placing open node `k` with label `v`, before its
    /// edges are attached, plus the rows and projections of both edges.
    /// `None` when an edge would carry no row or an open node becomes
    /// inseparable.
    fn base(&self, st: &State, k: usize, v: usize) -> Option<(State, Open, [Open; 2])> {
        let w = &st.open[k].rows;
        let r1 = w & &self.cols[v];
        let r0 = w.and_not(&self.cols[v]);
        if r0.is_zero() || r1.is_zero() {
            return None;
        }
        let s = self.stride(v);
        let mut next = st.clone();
        let x = next.open.remove(k);
        next.used |= 1 << v;
        for o in &mut next.open {
            o.zeros.exists(s);
            o.ones.exists(s);
            if o.zeros.intersects(&o.ones) {
                return None;
            }
        }
        let t = st.placed.len() + 1;
        let half = |rows: Bits, bit: bool| {
            let (zeros, ones) = self.narrow(&x.zeros, &x.ones, v, bit);
            Open { id: usize::MAX, rows, zeros, ones, since: t }
        };
        let edges = [half(r0, false), half(r1, true)];
        Some((next, x, edges))
    }

    /// Attaches one edge to `next`; `None` if its target becomes
    /// inseparable.
    fn attach(&self, next: &mut State, c: Choice, k: usize, e: &Open) -> Option<Edge> {
        Some(match c {
            Choice::Sink(val) => Edge::Sink(val),
            Choice::Existing(j) => {
                let o = &mut next.open[if j > k { j - 1 } else { j }];
                o.rows |= &e.rows;
                o.zeros |= &e.zeros;
                o.ones |= &e.ones;
                o.since = e.since;
                if o.zeros.intersects(&o.ones) {
                    return None;
                }
                Edge::Open(o.id)
            }
            Choice::Fresh => {
                let id = next.next_id;
                next.next_id += 1;
                next.open.push(Open { id, ..e.clone() });
                Edge::Open(id)
            }
        })
    }

    /// Tries every edge pair for label `v` on open node `k`.
    fn try_label(&self, st: &State, k: usize, v: usize) -> Flow {
        let Some((base, x, [e0, e1])) = self.base(st, k, v) else {
            self.meter.prune();
            return Ok(false);
        };
        let (los, his) = (self.choices(st, k, &e0.rows), self.choices(st, k, &e1.rows));
        let mut emitted = false;
        for &lo in &los {
            for &hi in &his {
                if lo == hi && lo != Choice::Fresh {
                    continue;
                }
                if !self.meter.tick() {
                    return Err(Stop);
                }
                let mut next = base.clone();
                let edges = self
                    .attach(&mut next, lo, k, &e0)
                    .and_then(|l| Some((l, self.attach(&mut next, hi, k, &e1)?)));
                match edges {
                    Some((lo, hi)) => {
                        next.placed.push(Placed { id: x.id, var: v, lo, hi });
                        emitted |= self.dfs(&next)?;
                    }
                    None => self.meter.prune(),
                }
            }
        }
        Ok(emitted)
    }

    /// Every `(open node, label)` allowed by the smallest-label order.
    fn moves(&self, st: &State) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, o) in st.open.iter().enumerate() {
            let floor = self.floor(st, o.since);
            out.extend((floor..self.n).filter(|&v| st.used & (1 << v) == 0).map(|v| (k, v)));
        }
        out
    }

    fn dfs(&self, st: &State) -> Flow {
        if st.open.is_empty() {
            return self.emit(st);
        }
        if self.meter.should_stop() {
            return Err(Stop);
        }
        let key = self.state_key(st);
        if self.dead.lock().unwrap().contains(&key) {
            self.meter.prune();
            return Ok(false);
        }
        let mut emitted = false;
        for (k, v) in self.moves(st) {
            emitted |= self.try_label(st, k, v)?;
        }
        if !emitted {
            let mut dead = self.dead.lock().unwrap();
            if dead.len() < MEMO_CAP {
                dead.insert(key);
            }
        }
        Ok(emitted)
    }

    fn run(&self, threads: usize) {
        let root = State {
            placed: Vec::new(),
            open: vec![Open {
                id: 0,
                rows: self.zeros | self.ones,
                zeros: self.zeros.clone(),
                ones: self.ones.clone(),
                since: 0,
            }],
            used: 0,
            next_id: 1,
        };
        let top = self.moves(&root);
        let work = |&(k, v): &(usize, usize)| {
            if !self.meter.should_stop() {
                let _ = self.try_label(&root, k, v);
            }
        };
        if threads <= 1 {
            top.iter().for_each(work);
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool");
            pool.install(|| top.par_iter().for_each(work));
        }
    }
}

fn setup<'a>(f: &PartialTruthTable, z: &'a Bits, o: &'a Bits, meter: &'a Meter, collect_all: bool) -> Ctx<'a> {
    let n = f.n_vars();
    Ctx {
        n,
        zeros: z,
        ones: o,
        cols: (0..n).map(|v| column(n, v)).collect(),
        meter,
        collect_all,
        found: Mutex::new(None),
        all: Mutex::new(HashSet::new()),
        dead: Mutex::new(HashSet::new()),
    }
}

/// Searches for an oaBP, at most one node per variable, agreeing with `f`
/// on every defined entry. A constant extension yields the node-free
/// program.
pub fn oabp_search(f: &PartialTruthTable, budget: &SearchBudget) -> SearchOutcome {
    let meter = Meter::new(budget);
    if let Some(c) = f.constant_extension() {
        return meter.outcome(Some(Witness::Program(BranchingProgram::constant(f.n_vars(), c))));
    }
    if f.n_vars() > OABP_MAX_VARS {
        let mut out = meter.outcome(None);
        out.verdict = Verdict::Inconclusive;
        return out;
    }
    let (z, o) = f.zeros_and_ones();
    let ctx = setup(f, &z, &o, &meter, false);
    ctx.run(budget.threads);
    let found = ctx.found.into_inner().unwrap();
    if let Some(bp) = &found {
        let t = bp.to_truth_table_capped(OABP_MAX_VARS).expect("within cap");
        assert!(f.is_extended_by(&t), "witness must re-verify");
        assert!(bp.classify().is_oabp);
    }
    meter.outcome(found.map(Witness::Program))
}

/// Every irredundant oaBP agreeing with `f`, up to node renumbering. When
/// every extension of `f` depends on all variables these are all oaBPs
/// for `f`.
pub fn oabp_enumerate(f: &PartialTruthTable, budget: &SearchBudget) -> OabpEnumeration {
    let meter = Meter::new(budget);
    if let Some(c) = f.constant_extension() {
        return OabpEnumeration {
            programs: vec![BranchingProgram::constant(f.n_vars(), c)],
            complete: true,
            stats: meter.stats(),
        };
    }
    let (z, o) = f.zeros_and_ones();
    let ctx = setup(f, &z, &o, &meter, true);
    if f.n_vars() <= OABP_MAX_VARS {
        ctx.run(budget.threads);
    }
    let mut programs: Vec<_> = ctx.all.into_inner().unwrap().into_iter().collect();
    programs.sort_by_key(|b| b.to_string());
    OabpEnumeration {
        programs,
        complete: !meter.exhausted() && f.n_vars() <= OABP_MAX_VARS,
        stats: meter.stats(),
    }
}
