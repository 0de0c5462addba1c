//! Branching programs: representation, evaluation, restriction,
//! classification and the `bp` text format.
//!
//! Programs are kept in canonical form: nodes are stored in a topological
//! order (every edge points to a higher index or to a sink), node 0 is the
//! source, and every node is reachable from the source. Sinks are implicit
//! edge targets. The size of a program is its number of non-sink nodes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError};
use crate::table::{row_bit, PartialAssignment, PartialTruthTable, Value, DEFAULT_TABLE_CAP};

/// Edge target: an inner node or a labeled sink.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Node(usize),
    Sink(Value),
}

impl Target {
    pub const ZERO: Target = Target::Sink(Value::Zero);
    pub const ONE: Target = Target::Sink(Value::One);
    pub const STAR: Target = Target::Sink(Value::Star);

    pub fn node(self) -> Option<usize> {
        match self {
            Target::Node(i) => Some(i),
            Target::Sink(_) => None,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Node(i) => write!(f, "{i}"),
            Target::Sink(v) => write!(f, "S{}", v.symbol()),
        }
    }
}

/// A non-sink node: the queried variable and the edge taken for each bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub var: usize,
    pub lo: Target,
    pub hi: Target,
}

impl Node {
    pub fn edge(&self, bit: bool) -> Target {
        if bit {
            self.hi
        } else {
            self.lo
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BranchingProgram {
    n_vars: usize,
    nodes: Vec<Node>,
    // `Node(0)` unless the program has no nodes.
    source: Target,
}

/// Output of [`BranchingProgram::classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    /// All node labels are distinct.
    pub is_oabp: bool,
    /// Largest number of times one variable is queried along a single
    /// source-to-sink path.
    pub max_reads: usize,
    /// A variable order respected by every edge, when one exists.
    pub obdd_order: Option<Vec<usize>>,
}

impl BranchingProgram {
    /// Builds a program and checks the canonical-form invariants.
    ///
    /// An empty node list is not allowed here; use [`BranchingProgram::constant`].
    pub fn new(n_vars: usize, nodes: Vec<Node>) -> Result<Self, Error> {
        let bp = BranchingProgram {
            n_vars,
            nodes,
            source: Target::Node(0),
        };
        bp.validate()?;
        Ok(bp)
    }

    /// The size-0 program whose source is the sink `value`.
    pub fn constant(n_vars: usize, value: Value) -> Self {
        BranchingProgram {
            n_vars,
            nodes: Vec::new(),
            source: Target::Sink(value),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Non-sink nodes in topological order (empty for a constant program).
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Number of non-sink nodes.
    pub fn size(&self) -> usize {
        self.nodes().len()
    }

    pub fn source(&self) -> Target {
        self.source
    }

    fn validate(&self) -> Result<(), Error> {
        if self.nodes.is_empty() {
            return Err(Error::InvalidProgram(
                "a program without nodes must be built with `constant`".into(),
            ));
        }
        let k = self.nodes.len();
        let mut reached = vec![false; k];
        reached[0] = true;
        for (i, node) in self.nodes.iter().enumerate() {
            if node.var >= self.n_vars {
                return Err(Error::InvalidProgram(format!(
                    "node {i} queries variable {} but the program has {} variables",
                    node.var + 1,
                    self.n_vars
                )));
            }
            if !reached[i] {
                return Err(Error::InvalidProgram(format!(
                    "node {i} is unreachable from the source"
                )));
            }
            for t in [node.lo, node.hi] {
                if let Target::Node(j) = t {
                    if j <= i || j >= k {
                        return Err(Error::InvalidProgram(format!(
                            "edge {i} -> {j} breaks the topological order"
                        )));
                    }
                    reached[j] = true;
                }
            }
        }
        Ok(())
    }

    /// True when some edge or the source leads to the `*` sink.
    pub fn has_star_sink(&self) -> bool {
        self.source() == Target::STAR
            || self
                .nodes()
                .iter()
                .any(|n| n.lo == Target::STAR || n.hi == Target::STAR)
    }

    /// Follows the unique path consistent with `assignment`.
    pub fn evaluate(&self, assignment: &[bool]) -> Value {
        debug_assert_eq!(assignment.len(), self.n_vars);
        self.evaluate_with(|v| assignment[v])
    }

    /// Evaluates on the assignment encoded by a table row.
    pub fn evaluate_row(&self, row: usize) -> Value {
        let n = self.n_vars;
        self.evaluate_with(|v| row_bit(n, row, v))
    }

    fn evaluate_with(&self, bit: impl Fn(usize) -> bool) -> Value {
        let nodes = self.nodes();
        let mut t = self.source();
        loop {
            match t {
                Target::Sink(v) => return v,
                Target::Node(i) => {
                    let n = nodes[i];
                    t = n.edge(bit(n.var));
                }
            }
        }
    }

    pub fn to_truth_table(&self) -> Result<PartialTruthTable, Error> {
        self.to_truth_table_capped(DEFAULT_TABLE_CAP)
    }

    pub fn to_truth_table_capped(&self, cap: usize) -> Result<PartialTruthTable, Error> {
        if self.n_vars > cap {
            return Err(Error::TooLarge {
                what: "truth table",
                n_vars: self.n_vars,
                cap,
            });
        }
        Ok(PartialTruthTable::from_fn(self.n_vars, |r| self.evaluate_row(r)))
    }

    /// `B|α`: edges inconsistent with `alpha` are removed and consistent ones
    /// contracted. Variable indices are kept; restricted variables are simply
    /// never queried. Unreachable nodes are pruned.
    pub fn restrict(&self, alpha: &PartialAssignment) -> BranchingProgram {
        assert_eq!(alpha.n_vars(), self.n_vars, "assignment arity mismatch");
        let nodes = self.nodes();
        // Contracted target of every node, computed bottom-up.
        let mut resolved: Vec<Target> = vec![Target::ZERO; nodes.len()];
        for i in (0..nodes.len()).rev() {
            resolved[i] = match alpha.get(nodes[i].var) {
                Some(b) => resolve(nodes[i].edge(b), &resolved),
                None => Target::Node(i),
            };
        }
        let mut b = Builder::new(self.n_vars);
        let mut memo: HashMap<usize, Target> = HashMap::new();
        let src = match self.source() {
            Target::Node(i) => resolve(Target::Node(i), &resolved),
            t => t,
        };
        // Rebuild bottom-up so the builder sees children first.
        fn rebuild(
            t: Target,
            nodes: &[Node],
            resolved: &[Target],
            b: &mut Builder,
            memo: &mut HashMap<usize, Target>,
        ) -> Target {
            let i = match t {
                Target::Sink(_) => return t,
                Target::Node(i) => i,
            };
            if let Some(&m) = memo.get(&i) {
                return m;
            }
            let n = nodes[i];
            let lo = rebuild(resolve(n.lo, resolved), nodes, resolved, b, memo);
            let hi = rebuild(resolve(n.hi, resolved), nodes, resolved, b, memo);
            let id = b.push_raw(n.var, lo, hi);
            memo.insert(i, id);
            id
        }
        let root = rebuild(src, nodes, &resolved, &mut b, &mut memo);
        b.finish(root)
    }

    /// Node labels, read-multiplicity and OBDD order.
    pub fn classify(&self) -> ClassReport {
        let nodes = self.nodes();
        let mut seen = vec![false; self.n_vars];
        let is_oabp = nodes.iter().all(|n| !std::mem::replace(&mut seen[n.var], true));

        // reads[i][v] = max number of v-queries on a path from node i.
        let mut max_reads = 0;
        let mut reads: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for i in (0..nodes.len()).rev() {
            let n = nodes[i];
            let mut r = vec![0usize; self.n_vars];
            for t in [n.lo, n.hi] {
                if let Target::Node(j) = t {
                    for (a, b) in r.iter_mut().zip(&reads[j]) {
                        *a = (*a).max(*b);
                    }
                }
            }
            r[n.var] += 1;
            reads[i] = r;
        }
        if let Some(r0) = reads.first() {
            max_reads = r0.iter().copied().max().unwrap_or(0);
        }

        ClassReport {
            is_oabp,
            max_reads,
            obdd_order: self.obdd_order(),
        }
    }

    fn obdd_order(&self) -> Option<Vec<usize>> {
        let n = self.n_vars;
        let nodes = self.nodes();
        let mut succ = vec![vec![false; n]; n];
        for node in nodes {
            for t in [node.lo, node.hi] {
                if let Target::Node(j) = t {
                    let w = nodes[j].var;
                    if w == node.var {
                        return None;
                    }
                    succ[node.var][w] = true;
                }
            }
        }
        // Kahn's algorithm, smallest variable first.
        let mut indeg = vec![0usize; n];
        for row in &succ {
            for (w, &e) in row.iter().enumerate() {
                if e {
                    indeg[w] += 1;
                }
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut done = vec![false; n];
        while order.len() < n {
            let v = (0..n).find(|&v| !done[v] && indeg[v] == 0)?;
            done[v] = true;
            order.push(v);
            for w in 0..n {
                if succ[v][w] {
                    indeg[w] -= 1;
                }
            }
        }
        Some(order)
    }

    /// Renumbers nodes by the reverse postorder of a depth-first search that
    /// visits the 0-edge first. Isomorphic programs get identical numbering.
    pub fn canonicalize(&self) -> BranchingProgram {
        let nodes = self.nodes();
        if nodes.is_empty() {
            return self.clone();
        }
        let mut post = Vec::with_capacity(nodes.len());
        let mut visited = vec![false; nodes.len()];
        // Iterative DFS with explicit child cursor.
        let mut stack: Vec<(usize, u8)> = vec![(0, 0)];
        visited[0] = true;
        while let Some(&mut (i, ref mut state)) = stack.last_mut() {
            let next = match *state {
                0 => nodes[i].lo,
                1 => nodes[i].hi,
                _ => {
                    post.push(i);
                    stack.pop();
                    continue;
                }
            };
            *state += 1;
            if let Target::Node(j) = next {
                if !visited[j] {
                    visited[j] = true;
                    stack.push((j, 0));
                }
            }
        }
        post.reverse();
        let mut new_id = vec![0usize; nodes.len()];
        for (k, &old) in post.iter().enumerate() {
            new_id[old] = k;
        }
        let map = |t: Target| match t {
            Target::Node(j) => Target::Node(new_id[j]),
            s => s,
        };
        let renumbered = post
            .iter()
            .map(|&old| Node {
                var: nodes[old].var,
                lo: map(nodes[old].lo),
                hi: map(nodes[old].hi),
            })
            .collect();
        BranchingProgram {
            n_vars: self.n_vars,
            nodes: renumbered,
            source: Target::Node(0),
        }
    }

    /// Labels of the nodes in stored (topological) order.
    pub fn labels(&self) -> Vec<usize> {
        self.nodes().iter().map(|n| n.var).collect()
    }
}

fn resolve(t: Target, resolved: &[Target]) -> Target {
    match t {
        Target::Node(j) => resolved[j],
        s => s,
    }
}

/// Assembles programs from nodes added children-first.
///
/// Nodes may be pushed in any order in which every child already exists;
/// [`Builder::finish`] reverses the order into a topological one and drops
/// nodes unreachable from the chosen root.
#[derive(Debug, Clone)]
pub struct Builder {
    n_vars: usize,
    nodes: Vec<Node>,
    unique: HashMap<Node, usize>,
}

impl Builder {
    pub fn new(n_vars: usize) -> Self {
        Builder {
            n_vars,
            nodes: Vec::new(),
            unique: HashMap::new(),
        }
    }

    /// Adds a node without any merging.
    pub fn push_raw(&mut self, var: usize, lo: Target, hi: Target) -> Target {
        self.nodes.push(Node { var, lo, hi });
        Target::Node(self.nodes.len() - 1)
    }

    /// Adds a node, sharing an identical existing node and skipping nodes
    /// whose two edges coincide.
    pub fn node(&mut self, var: usize, lo: Target, hi: Target) -> Target {
        if lo == hi {
            return lo;
        }
        let n = Node { var, lo, hi };
        if let Some(&i) = self.unique.get(&n) {
            return Target::Node(i);
        }
        self.nodes.push(n);
        let i = self.nodes.len() - 1;
        self.unique.insert(n, i);
        Target::Node(i)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn finish(self, root: Target) -> BranchingProgram {
        let root = match root {
            Target::Sink(v) => return BranchingProgram::constant(self.n_vars, v),
            Target::Node(i) => i,
        };
        let mut reach = vec![false; self.nodes.len()];
        reach[root] = true;
        // Children always have smaller builder ids.
        for i in (0..=root).rev() {
            if reach[i] {
                for t in [self.nodes[i].lo, self.nodes[i].hi] {
                    if let Target::Node(j) = t {
                        reach[j] = true;
                    }
                }
            }
        }
        let kept: Vec<usize> = (0..=root).rev().filter(|&i| reach[i]).collect();
        let mut new_id = vec![usize::MAX; self.nodes.len()];
        for (k, &old) in kept.iter().enumerate() {
            new_id[old] = k;
        }
        let map = |t: Target| match t {
            Target::Node(j) => Target::Node(new_id[j]),
            s => s,
        };
        let nodes = kept
            .iter()
            .map(|&old| {
                let n = self.nodes[old];
                Node {
                    var: n.var,
                    lo: map(n.lo),
                    hi: map(n.hi),
                }
            })
            .collect();
        BranchingProgram {
            n_vars: self.n_vars,
            nodes,
            source: Target::Node(0),
        }
    }
}

impl fmt::Display for BranchingProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sinks = if self.has_star_sink() { 3 } else { 2 };
        write!(f, "bp n={} sinks={}", self.n_vars, sinks)?;
        if let Target::Sink(v) = self.source() {
            write!(f, " source=S{}", v.symbol())?;
        }
        writeln!(f)?;
        for (i, n) in self.nodes().iter().enumerate() {
            writeln!(f, "{i} v={} 0=>{} 1=>{}", n.var + 1, n.lo, n.hi)?;
        }
        Ok(())
    }
}

fn parse_target(s: &str, line: usize, allow_star: bool) -> Result<Target, ParseError> {
    match s {
        "S0" => Ok(Target::ZERO),
        "S1" => Ok(Target::ONE),
        "S*" if allow_star => Ok(Target::STAR),
        "S*" => Err(ParseError::new(line, "`S*` used but header declares sinks=2")),
        _ => s
            .parse::<usize>()
            .map(Target::Node)
            .map_err(|_| ParseError::new(line, format!("bad edge target `{s}`"))),
    }
}

impl FromStr for BranchingProgram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, "missing `bp` header"))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("bp") {
            return Err(ParseError::new(hl, "expected `bp` header").into());
        }
        let mut n_vars = None;
        let mut sinks = None;
        let mut source = None;
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| ParseError::new(hl, format!("bad header field `{w}`")))?;
            match k {
                "n" => {
                    n_vars = Some(
                        v.parse::<usize>()
                            .map_err(|_| ParseError::new(hl, format!("bad variable count `{v}`")))?,
                    )
                }
                "sinks" => match v {
                    "2" => sinks = Some(2),
                    "3" => sinks = Some(3),
                    _ => return Err(ParseError::new(hl, "sinks must be 2 or 3").into()),
                },
                "source" => source = Some(v.to_string()),
                _ => return Err(ParseError::new(hl, format!("unknown header field `{k}`")).into()),
            }
        }
        let n_vars = n_vars.ok_or_else(|| ParseError::new(hl, "missing `n=`"))?;
        let allow_star = sinks.ok_or_else(|| ParseError::new(hl, "missing `sinks=`"))? == 3;

        let mut nodes = Vec::new();
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(ParseError::new(ln, "expected `<id> v=<var> 0=><t> 1=><t>`").into());
            }
            let id: usize = parts[0]
                .parse()
                .map_err(|_| ParseError::new(ln, format!("bad node id `{}`", parts[0])))?;
            if id != nodes.len() {
                return Err(ParseError::new(
                    ln,
                    format!("node ids must be consecutive from 0; expected {}", nodes.len()),
                )
                .into());
            }
            let var = parts[1]
                .strip_prefix("v=")
                .and_then(|v| v.parse::<usize>().ok())
                .filter(|&v| v >= 1 && v <= n_vars)
                .ok_or_else(|| ParseError::new(ln, format!("bad variable `{}`", parts[1])))?;
            let lo = parts[2]
                .strip_prefix("0=>")
                .ok_or_else(|| ParseError::new(ln, "expected `0=><target>`"))?;
            let hi = parts[3]
                .strip_prefix("1=>")
                .ok_or_else(|| ParseError::new(ln, "expected `1=><target>`"))?;
            nodes.push(Node {
                var: var - 1,
                lo: parse_target(lo, ln, allow_star)?,
                hi: parse_target(hi, ln, allow_star)?,
            });
        }
        match (nodes.is_empty(), source) {
            (true, Some(src)) => match parse_target(&src, hl, allow_star)? {
                Target::Sink(v) => Ok(BranchingProgram::constant(n_vars, v)),
                Target::Node(_) => Err(ParseError::new(hl, "a program without nodes needs a sink source").into()),
            },
            (true, None) => Err(ParseError::new(hl, "no nodes and no `source=` sink").into()),
            (false, Some(_)) => Err(ParseError::new(hl, "`source=` is only allowed without nodes").into()),
            (false, None) => BranchingProgram::new(n_vars, nodes),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// g(x,y,z) = (y ∧ x) ∨ (z ∧ ¬x) as the decision tree rooted at x.
    fn g_program() -> BranchingProgram {
        BranchingProgram::new(
            3,
            vec![
                Node { var: 0, lo: Target::Node(2), hi: Target::Node(1) },
                Node { var: 1, lo: Target::ZERO, hi: Target::ONE },
                Node { var: 2, lo: Target::ZERO, hi: Target::ONE },
            ],
        )
        .unwrap()
    }

    #[test]
    fn evaluates_decision_tree() {
        let g = g_program();
        assert_eq!(g.evaluate(&[true, true, false]), Value::One);
        assert_eq!(g.evaluate(&[false, true, false]), Value::Zero);
        let c = BranchingProgram::constant(3, Value::Zero);
        assert_eq!(c.size(), 0);
        assert_eq!(c.evaluate(&[true, false, true]), Value::Zero);
    }

    #[test]
    fn truth_table_is_msb_first() {
        // rows xyz = 000..111: g = 0,1,0,1,0,0,1,1
        let t = g_program().to_truth_table().unwrap();
        assert_eq!(t.to_string(), "tt n=3\n01010011\n");
        let c = BranchingProgram::constant(2, Value::Zero).to_truth_table().unwrap();
        assert_eq!(c.to_string(), "tt n=2\n0000\n");
        let x1 = BranchingProgram::new(1, vec![Node { var: 0, lo: Target::ZERO, hi: Target::ONE }]).unwrap();
        assert_eq!(x1.to_truth_table().unwrap().to_string(), "tt n=1\n01\n");
    }

    #[test]
    fn truth_table_cap() {
        let c = BranchingProgram::constant(21, Value::One);
        assert!(matches!(c.to_truth_table(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn restriction_examples() {
        let g = g_program();
        // y=0, z=1 leaves ¬x
        let r = g.restrict(&PartialAssignment::from_pairs(3, &[(1, false), (2, true)]));
        assert_eq!(r.size(), 1);
        assert_eq!(r.nodes()[0], Node { var: 0, lo: Target::ONE, hi: Target::ZERO });
        // x=1 leaves the single y node
        let r = g.restrict(&PartialAssignment::from_pairs(3, &[(0, true)]));
        assert_eq!(r.labels(), vec![1]);
        // the empty restriction is the identity
        assert_eq!(g.restrict(&PartialAssignment::empty(3)), g);
    }

    #[test]
    fn classification() {
        let c = g_program().classify();
        assert!(c.is_oabp);
        assert_eq!(c.max_reads, 1);
        assert_eq!(c.obdd_order, Some(vec![0, 1, 2]));

        // x1 queried twice on one path
        let twice = BranchingProgram::new(
            2,
            vec![
                Node { var: 0, lo: Target::Node(1), hi: Target::ONE },
                Node { var: 1, lo: Target::ZERO, hi: Target::Node(2) },
                Node { var: 0, lo: Target::ZERO, hi: Target::ONE },
            ],
        )
        .unwrap();
        let c = twice.classify();
        assert!(!c.is_oabp);
        assert_eq!(c.max_reads, 2);
        assert_eq!(c.obdd_order, None);
    }

    #[test]
    fn rejects_non_canonical_programs() {
        let back_edge = BranchingProgram::new(
            1,
            vec![
                Node { var: 0, lo: Target::ZERO, hi: Target::Node(0) },
            ],
        );
        assert!(back_edge.is_err());
        let unreachable = BranchingProgram::new(
            1,
            vec![
                Node { var: 0, lo: Target::ZERO, hi: Target::ONE },
                Node { var: 0, lo: Target::ZERO, hi: Target::ONE },
            ],
        );
        assert!(unreachable.is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let g = g_program();
        let text = g.to_string();
        assert_eq!(text, "bp n=3 sinks=2\n0 v=1 0=>2 1=>1\n1 v=2 0=>S0 1=>S1\n2 v=3 0=>S0 1=>S1\n");
        assert_eq!(text.parse::<BranchingProgram>().unwrap(), g);

        let c = BranchingProgram::constant(4, Value::Star);
        assert_eq!(c.to_string(), "bp n=4 sinks=3 source=S*\n");
        assert_eq!(c.to_string().parse::<BranchingProgram>().unwrap(), c);
    }

    #[test]
    fn text_format_errors_are_located() {
        let err = "bp n=2 sinks=2\n0 v=1 0=>S* 1=>S1\n"
            .parse::<BranchingProgram>()
            .unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { line: 2, .. })), "{err}");
        let err = "bp n=2 sinks=2\n0 v=3 0=>S0 1=>S1\n"
            .parse::<BranchingProgram>()
            .unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { line: 2, .. })));
    }

    #[test]
    fn canonicalize_is_invariant_under_renumbering() {
        // Same DAG stored in two topological orders.
        let a = BranchingProgram::new(
            3,
            vec![
                Node { var: 0, lo: Target::Node(1), hi: Target::Node(2) },
                Node { var: 1, lo: Target::ZERO, hi: Target::ONE },
                Node { var: 2, lo: Target::ZERO, hi: Target::ONE },
            ],
        )
        .unwrap();
        let b = BranchingProgram::new(
            3,
            vec![
                Node { var: 0, lo: Target::Node(2), hi: Target::Node(1) },
                Node { var: 2, lo: Target::ZERO, hi: Target::ONE },
                Node { var: 1, lo: Target::ZERO, hi: Target::ONE },
            ],
        )
        .unwrap();
        assert_ne!(a, b);
        assert_eq!(a.canonicalize(), b.canonicalize());
        assert_eq!(a.to_truth_table().unwrap(), a.canonicalize().to_truth_table().unwrap());
    }

}
