//! Structural properties forced on any oaBP computing γ′ₙ or γ_G, checked on
//! a concrete program.
//!
//! Positions are the program's stored topological order. Restrictions are
//! evaluated on the original nodes: a node whose variable is fixed is
//! contracted into the edge it takes.

use std::fmt;

use crate::bp::{BranchingProgram, Node, Target};
use crate::bpis::{is_independent_permutation, HalfPermutationPair};
use crate::error::Error;
use crate::table::Value;

use super::GammaTarget;

/// Cap on the number of source-to-1-sink paths walked by the two-ones check.
const MAX_ONE_PATHS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// `x = 0ⁿ` leaves a single path `a_1 b_1 … a_n b_n` over pairs `{y_t, z_t}`.
    OrOfAnds,
    /// `z = 1ⁿ` leaves a Hamiltonian path whose 1-edges all reach the 1-sink.
    ZOnePath,
    /// `z = 0ⁿ` makes the 1-sink unreachable.
    ZZeroNoOne,
    /// Under `x = 1ⁿ` every node computes the OR of the `z_i` at or after it.
    XOneSuffix,
    /// Consecutive node triples read `{x_a, y_b, z_b}`.
    Triplets,
    /// The triplet permutation maps each half of `[n]` into itself.
    Halves,
    /// The vertices `(b, π(b))` span no edge of the graph.
    Independence,
    /// A 1-sink edge leaving a triplet follows at least two 1-edges of it.
    TwoOnes,
    /// A triplet's `x` node that comes first never jumps to the 1-sink.
    XFirstNotToOne,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lemma::OrOfAnds => "or-of-ands",
            Lemma::ZOnePath => "z-one-path",
            Lemma::ZZeroNoOne => "z-zero-no-one",
            Lemma::XOneSuffix => "x-one-suffix",
            Lemma::Triplets => "triplets",
            Lemma::Halves => "halves",
            Lemma::Independence => "independence",
            Lemma::TwoOnes => "two-ones",
            Lemma::XFirstNotToOne => "x-first-not-to-one",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaViolation {
    pub lemma: Lemma,
    pub detail: String,
}

impl fmt::Display for LemmaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.lemma, self.detail)
    }
}

/// Nodes reading `x_x`, `y_yz` and `z_yz` (1-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Triplet {
    pub x: usize,
    pub yz: usize,
    /// Positions of the `x`, `y` and `z` nodes.
    pub positions: [usize; 3],
}

#[derive(Clone, Debug, Default)]
pub struct StructureReport {
    pub triplets: Vec<Triplet>,
    /// `π(b) = a` for each triplet `{x_a, y_b, z_b}`, 1-based.
    pub permutation: Option<Vec<usize>>,
    pub half_pair: Option<HalfPermutationPair>,
    pub violations: Vec<LemmaViolation>,
}

impl StructureReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, lemma: Lemma) -> bool {
        self.violations.iter().any(|v| v.lemma == lemma)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    X,
    Y,
    Z,
}

struct View<'a> {
    bp: &'a BranchingProgram,
    n: usize,
}

impl View<'_> {
    fn block(&self, var: usize) -> (Block, usize) {
        let n = self.n;
        match var / n {
            0 => (Block::X, var + 1),
            1 => (Block::Y, var - n + 1),
            _ => (Block::Z, var - 2 * n + 1),
        }
    }

    fn name(&self, pos: usize) -> String {
        let (b, i) = self.block(self.bp.nodes()[pos].var);
        let c = match b {
            Block::X => 'x',
            Block::Y => 'y',
            Block::Z => 'z',
        };
        format!("{c}{i}@{pos}")
    }

    /// Follows `t` through nodes whose block is fixed to `bit`.
    fn resolve(&self, mut t: Target, fixed: Block, bit: bool) -> Target {
        while let Target::Node(j) = t {
            let node = self.bp.nodes()[j];
            if self.block(node.var).0 != fixed {
                break;
            }
            t = node.edge(bit);
        }
        t
    }

    /// Contracted edges of the nodes reachable once every variable of block
    /// `fixed` is set to `bit`, in stored order.
    fn contract(&self, fixed: Block, bit: bool) -> (Target, Vec<(usize, Target, Target)>) {
        let nodes = self.bp.nodes();
        let src = self.resolve(self.bp.source(), fixed, bit);
        let mut reach = vec![false; nodes.len()];
        if let Target::Node(i) = src {
            reach[i] = true;
        }
        let mut out = Vec::new();
        for (i, node) in nodes.iter().enumerate() {
            if !reach[i] {
                continue;
            }
            let lo = self.resolve(node.lo, fixed, bit);
            let hi = self.resolve(node.hi, fixed, bit);
            for t in [lo, hi] {
                if let Target::Node(j) = t {
                    reach[j] = true;
                }
            }
            out.push((i, lo, hi));
        }
        (src, out)
    }

    fn or_of_ands(&self, out: &mut Vec<LemmaViolation>) {
        let (src, path) = self.contract(Block::X, false);
        let mut bad = |d: String| out.push(LemmaViolation { lemma: Lemma::OrOfAnds, detail: d });
        if path.len() != 2 * self.n || src != Target::Node(path.first().map_or(usize::MAX, |p| p.0)) {
            bad(format!("x=0 leaves {} nodes, expected a single path of {}", path.len(), 2 * self.n));
            return;
        }
        for (k, pair) in path.chunks(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            let (ba, ia) = self.block(self.bp.nodes()[a.0].var);
            let (bb, ib) = self.block(self.bp.nodes()[b.0].var);
            if ia != ib || ba == bb || ba == Block::X || bb == Block::X {
                bad(format!("{} and {} do not form a pair y_t, z_t", self.name(a.0), self.name(b.0)));
                continue;
            }
            let next = path.get(2 * k + 2).map_or(Target::ZERO, |p| Target::Node(p.0));
            if a.2 != Target::Node(b.0) || a.1 != next || b.1 != next || b.2 != Target::ONE {
                bad(format!("pair {} {} is not wired as a link of the path", self.name(a.0), self.name(b.0)));
            }
        }
    }

    fn z_one_path(&self, out: &mut Vec<LemmaViolation>) {
        let (src, path) = self.contract(Block::Z, true);
        let mut bad = |d: String| out.push(LemmaViolation { lemma: Lemma::ZOnePath, detail: d });
        if path.len() != 2 * self.n || src != Target::Node(path.first().map_or(usize::MAX, |p| p.0)) {
            bad(format!("z=1 leaves {} nodes, expected a path of {}", path.len(), 2 * self.n));
            return;
        }
        for (k, &(i, lo, hi)) in path.iter().enumerate() {
            let next = path.get(k + 1).map_or(Target::ZERO, |p| Target::Node(p.0));
            if lo != next || hi != Target::ONE {
                bad(format!("{} has edges 0=>{lo} 1=>{hi}, expected 0=>{next} 1=>S1", self.name(i)));
            }
        }
    }

    fn z_zero_no_one(&self, out: &mut Vec<LemmaViolation>) {
        let (src, rest) = self.contract(Block::Z, false);
        let hits: Vec<String> = rest
            .iter()
            .filter(|&&(_, lo, hi)| lo == Target::ONE || hi == Target::ONE)
            .map(|&(i, _, _)| self.name(i))
            .collect();
        if src == Target::ONE || !hits.is_empty() {
            out.push(LemmaViolation {
                lemma: Lemma::ZZeroNoOne,
                detail: format!("the 1-sink is reachable under z=0 via [{}]", hits.join(", ")),
            });
        }
    }

    fn x_one_suffix(&self, out: &mut Vec<LemmaViolation>) {
        let n = self.n;
        let nodes = self.bp.nodes();
        let z_pos: Vec<usize> = (0..n)
            .map(|i| nodes.iter().position(|nd| nd.var == 2 * n + i).unwrap_or(usize::MAX))
            .collect();
        // Nodes reached after some z reads 1 may already be decided, so only
        // nodes reachable with every z read so far at 0 are constrained.
        let (src, rest) = self.contract(Block::X, true);
        let mut live = vec![false; nodes.len()];
        if let Target::Node(i) = src {
            live[i] = true;
        }
        for &(v, lo, hi) in &rest {
            if !live[v] {
                continue;
            }
            let z_node = self.block(nodes[v].var).0 == Block::Z;
            for t in if z_node { vec![lo] } else { vec![lo, hi] } {
                if let Target::Node(j) = t {
                    live[j] = true;
                }
            }
        }
        for &(v, _, _) in rest.iter().filter(|r| live[r.0]) {
            let suffix: Vec<usize> = (0..n).filter(|&i| z_pos[i] >= v && z_pos[i] != usize::MAX).collect();
            // y and z free, x fixed to ones
            let bad_row = (0..1usize << (2 * n)).find(|&yz| {
                let row = (((1usize << n) - 1) << (2 * n)) | yz;
                let want = suffix.iter().any(|&i| (yz >> (n - 1 - i)) & 1 == 1);
                walk(self.bp, Target::Node(v), row) != Value::from_bool(want)
            });
            if let Some(yz) = bad_row {
                out.push(LemmaViolation {
                    lemma: Lemma::XOneSuffix,
                    detail: format!(
                        "{} differs from the OR of z at or after it on y,z = {:0w$b}",
                        self.name(v),
                        yz,
                        w = 2 * n
                    ),
                });
            }
        }
    }

    fn triplets(&self) -> Result<Vec<Triplet>, String> {
        let nodes = self.bp.nodes();
        if nodes.len() != 3 * self.n {
            return Err(format!("{} nodes, expected {}", nodes.len(), 3 * self.n));
        }
        nodes
            .chunks(3)
            .enumerate()
            .map(|(t, chunk)| {
                let mut x = None;
                let mut y = None;
                let mut z = None;
                for (k, nd) in chunk.iter().enumerate() {
                    let (b, i) = self.block(nd.var);
                    let slot = match b {
                        Block::X => &mut x,
                        Block::Y => &mut y,
                        Block::Z => &mut z,
                    };
                    *slot = Some((i, 3 * t + k));
                }
                match (x, y, z) {
                    (Some(x), Some(y), Some(z)) if y.0 == z.0 => {
                        Ok(Triplet { x: x.0, yz: y.0, positions: [x.1, y.1, z.1] })
                    }
                    _ => Err(format!(
                        "positions {}..{} read {}",
                        3 * t,
                        3 * t + 2,
                        (3 * t..3 * t + 3).map(|p| self.name(p)).collect::<Vec<_>>().join(" ")
                    )),
                }
            })
            .collect()
    }

    fn two_ones(&self, triplets: &[Triplet], out: &mut Vec<LemmaViolation>) {
        let mut owner = vec![0usize; self.bp.size()];
        for (t, tr) in triplets.iter().enumerate() {
            for &p in &tr.positions {
                owner[p] = t;
            }
        }
        // (position, bit taken) along the current path
        let mut path: Vec<(usize, bool)> = Vec::new();
        let mut walked = 0usize;
        let mut first_bad: Option<String> = None;
        let Target::Node(src) = self.bp.source() else { return };
        self.paths_to_one(src, &mut path, &mut walked, &mut |path| {
            let &(last, _) = path.last().expect("non-empty path");
            let tr = &triplets[owner[last]];
            let ones = path.iter().filter(|(p, b)| *b && tr.positions.contains(p)).count();
            if ones < 2 && first_bad.is_none() {
                first_bad = Some(format!(
                    "path {} reaches the 1-sink with {ones} one(s) in its last triplet",
                    path.iter()
                        .map(|&(p, b)| format!("{}={}", self.name(p), b as u8))
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
            }
        });
        if let Some(d) = first_bad {
            out.push(LemmaViolation { lemma: Lemma::TwoOnes, detail: d });
        }
    }

    fn paths_to_one(
        &self,
        at: usize,
        path: &mut Vec<(usize, bool)>,
        walked: &mut usize,
        on_path: &mut impl FnMut(&[(usize, bool)]),
    ) {
        let node = self.bp.nodes()[at];
        for bit in [false, true] {
            if *walked >= MAX_ONE_PATHS {
                return;
            }
            path.push((at, bit));
            match node.edge(bit) {
                Target::Node(j) => self.paths_to_one(j, path, walked, on_path),
                Target::Sink(Value::One) => {
                    *walked += 1;
                    on_path(path)
                }
                Target::Sink(_) => {}
            }
            path.pop();
        }
    }

    fn x_first_not_to_one(&self, triplets: &[Triplet], out: &mut Vec<LemmaViolation>) {
        for tr in triplets {
            let [px, py, pz] = tr.positions;
            if px < py && px < pz && self.bp.nodes()[px].hi == Target::ONE {
                out.push(LemmaViolation {
                    lemma: Lemma::XFirstNotToOne,
                    detail: format!("{} precedes its triplet and its 1-edge reaches the 1-sink", self.name(px)),
                });
            }
        }
    }
}

fn walk(bp: &BranchingProgram, mut t: Target, row: usize) -> Value {
    let n = bp.n_vars();
    while let Target::Node(i) = t {
        let node = bp.nodes()[i];
        t = node.edge((row >> (n - 1 - node.var)) & 1 == 1);
    }
    match t {
        Target::Sink(v) => v,
        Target::Node(_) => unreachable!(),
    }
}

/// Runs every structural check without first confirming that `bp` computes
/// the target; only the shape of `target` (its `n` and graph) is used.
pub fn inspect_structure(bp: &BranchingProgram, target: GammaTarget<'_>) -> StructureReport {
    let n = target.n();
    let mut report = StructureReport::default();
    if n == 0 || bp.n_vars() != 3 * n || bp.size() == 0 {
        report.violations.push(LemmaViolation {
            lemma: Lemma::Triplets,
            detail: format!("a program over {} variables with {} nodes has no triplets for n = {n}", bp.n_vars(), bp.size()),
        });
        return report;
    }
    let view = View { bp, n };
    let out = &mut report.violations;
    view.or_of_ands(out);
    view.z_one_path(out);
    view.z_zero_no_one(out);
    view.x_one_suffix(out);
    match view.triplets() {
        Err(d) => out.push(LemmaViolation { lemma: Lemma::Triplets, detail: d }),
        Ok(ts) => {
            let mut pi = vec![0; n];
            for t in &ts {
                pi[t.yz - 1] = t.x;
            }
            view.two_ones(&ts, out);
            view.x_first_not_to_one(&ts, out);
            if let GammaTarget::Graph(g) = target {
                match HalfPermutationPair::from_permutation(pi.clone()) {
                    Err(e) => out.push(LemmaViolation { lemma: Lemma::Halves, detail: e.to_string() }),
                    Ok(hp) => {
                        if !is_independent_permutation(g, &hp) {
                            out.push(LemmaViolation {
                                lemma: Lemma::Independence,
                                detail: format!("π = [{hp}] selects both ends of an edge"),
                            });
                        }
                        report.half_pair = Some(hp);
                    }
                }
            }
            report.triplets = ts;
            report.permutation = Some(pi);
        }
    }
    report
}

/// Checks that an oaBP over `y_1..y_n, z_1..z_n` is the single path of
/// `y_t, z_t` pairs that every oaBP for `⋁ y_i ∧ z_i` must be.
pub fn check_or_of_ands_path(bp: &BranchingProgram) -> Vec<LemmaViolation> {
    let n = bp.n_vars() / 2;
    let shifted: Vec<Node> = bp.nodes().iter().map(|nd| Node { var: nd.var + n, ..*nd }).collect();
    let mut out = Vec::new();
    match BranchingProgram::new(3 * n, shifted) {
        Ok(wide) if bp.n_vars() % 2 == 0 && wide.size() > 0 => View { bp: &wide, n }.or_of_ands(&mut out),
        _ => out.push(LemmaViolation {
            lemma: Lemma::OrOfAnds,
            detail: format!("no pair path over {} variables with {} nodes", bp.n_vars(), bp.size()),
        }),
    }
    out
}

/// Confirms `bp` is an oaBP computing the target.
fn check_semantics(bp: &BranchingProgram, target: GammaTarget<'_>) -> Result<(), Error> {
    let n = target.n();
    if bp.n_vars() != 3 * n {
        return Err(Error::ArityMismatch { expected: 3 * n, found: bp.n_vars() });
    }
    let mut seen = vec![false; bp.n_vars()];
    if let Some(node) = bp.nodes().iter().find(|nd| std::mem::replace(&mut seen[nd.var], true)) {
        return Err(Error::NotOabp { var: node.var });
    }
    let want = target.table()?;
    let got = bp.to_truth_table()?;
    match want.first_disagreement(&got) {
        Some(row) => Err(Error::SemanticMismatch { row }),
        None => Ok(()),
    }
}

/// Checks that `bp` is an oaBP computing the target, then runs every
/// structural check.
pub fn check_structural_lemmas(bp: &BranchingProgram, target: GammaTarget<'_>) -> Result<StructureReport, Error> {
    check_semantics(bp, target)?;
    Ok(inspect_structure(bp, target))
}

/// Decomposes the stored order of an oaBP computing the target into
/// consecutive triplets `{x_a, y_b, z_b}` and reads off `π(b) = a`. A failed
/// decomposition is reported as a triplet violation.
pub fn extract_defined_permutation(bp: &BranchingProgram, target: GammaTarget<'_>) -> Result<StructureReport, Error> {
    check_semantics(bp, target)?;
    let view = View { bp, n: target.n() };
    let mut report = StructureReport::default();
    match view.triplets() {
        Err(d) => report.violations.push(LemmaViolation { lemma: Lemma::Triplets, detail: d }),
        Ok(ts) => {
            let mut pi = vec![0; target.n()];
            for t in &ts {
                pi[t.yz - 1] = t.x;
            }
            report.half_pair = HalfPermutationPair::from_permutation(pi.clone()).ok();
            report.permutation = Some(pi);
            report.triplets = ts;
        }
    }
    Ok(report)
}
