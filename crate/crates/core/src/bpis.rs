//! (n×n) bipartite permutation independent set instances.
//!
//! Vertices are 1-based `(row, col)` pairs in `[n]×[n]`. Every edge joins the
//! low block `J1 = [n/2]²` to the high block `J2 = {n/2+1..n}²` and is stored
//! as `(J1 vertex, J2 vertex)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Joined, ParseError};

pub const SOLVE_MAX_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
}

impl Vertex {
    pub fn new(row: usize, col: usize) -> Self {
        Vertex { row, col }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A reason an instance is malformed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    OddSize(usize),
    TooSmall(usize),
    OutOfRange(Vertex),
    NotAcrossBlocks(Vertex, Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OddSize(n) => write!(f, "n={n} is odd"),
            Violation::TooSmall(n) => write!(f, "n={n} is below 2"),
            Violation::OutOfRange(v) => write!(f, "vertex {v} is outside the grid"),
            Violation::NotAcrossBlocks(a, b) => {
                write!(f, "edge {a}-{b} does not join [n/2]² to the upper block")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BpisInstance {
    n: usize,
    edges: BTreeSet<(Vertex, Vertex)>,
}

fn block(n: usize, v: Vertex) -> Option<u8> {
    let h = n / 2;
    if v.row == 0 || v.col == 0 || v.row > n || v.col > n {
        None
    } else if v.row <= h && v.col <= h {
        Some(1)
    } else if v.row > h && v.col > h {
        Some(2)
    } else {
        Some(0)
    }
}

impl BpisInstance {
    /// Builds a validated instance. Edges may be given with either endpoint
    /// first; duplicates collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, Error> {
        let g = Self::from_raw(n, edges);
        let v = validate_instance(&g);
        if v.is_empty() {
            Ok(g)
        } else {
            Err(Error::InvalidInstance(Joined(&v).to_string()))
        }
    }

    /// Builds an instance without validation, orienting edges J1 → J2 where
    /// possible.
    pub fn from_raw(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let edges = edges
            .into_iter()
            .map(|(a, b)| if block(n, a) == Some(2) && block(n, b) == Some(1) { (b, a) } else { (a, b) })
            .collect();
        BpisInstance { n, edges }
    }

    pub fn empty(n: usize) -> Result<Self, Error> {
        Self::new(n, [])
    }

    /// Every J1–J2 pair is an edge.
    pub fn complete(n: usize) -> Result<Self, Error> {
        let low = block_vertices(1, n / 2);
        let high = block_vertices(n / 2 + 1, n);
        Self::new(n, low.iter().flat_map(|&a| high.iter().map(move |&b| (a, b))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edges.contains(&(a, b)) || self.edges.contains(&(b, a))
    }

    /// Copy with one more edge.
    pub fn with_edge(&self, a: Vertex, b: Vertex) -> Result<Self, Error> {
        Self::new(self.n, self.edges().chain([(a, b)]))
    }
}

fn block_vertices(lo: usize, hi: usize) -> Vec<Vertex> {
    (lo..=hi)
        .flat_map(|r| (lo..=hi).map(move |c| Vertex::new(r, c)))
        .collect()
}

/// Every parity, size and bipartition violation of `g`; empty when valid.
pub fn validate_instance(g: &BpisInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    if g.n % 2 == 1 {
        out.push(Violation::OddSize(g.n));
    }
    if g.n < 2 {
        out.push(Violation::TooSmall(g.n));
    }
    for (a, b) in g.edges() {
        match (block(g.n, a), block(g.n, b)) {
            (None, _) => out.push(Violation::OutOfRange(a)),
            (_, None) => out.push(Violation::OutOfRange(b)),
            (Some(1), Some(2)) if g.n % 2 == 0 => {}
            _ => out.push(Violation::NotAcrossBlocks(a, b)),
        }
    }
    out
}

/// A permutation `π` of `[n]` mapping `[n/2]` and `{n/2+1..n}` into
/// themselves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfPermutationPair {
    // pi[i - 1] = π(i)
    pi: Vec<usize>,
}

impl HalfPermutationPair {
    /// `sigma1` permutes `1..=n/2`, `sigma2` permutes `n/2+1..=n`;
    /// entry `k` of each is the image of the `k`-th element of its half.
    pub fn new(sigma1: &[usize], sigma2: &[usize]) -> Result<Self, Error> {
        let mut pi = sigma1.to_vec();
        pi.extend_from_slice(sigma2);
        if sigma1.len() != sigma2.len() {
            return Err(Error::InvalidPermutation("halves have different sizes".into()));
        }
        Self::from_permutation(pi)
    }

    /// Checks that `pi` (1-based images) is a permutation preserving halves.
    pub fn from_permutation(pi: Vec<usize>) -> Result<Self, Error> {
        let n = pi.len();
        if n % 2 == 1 {
            return Err(Error::InvalidPermutation(format!("odd length {n}")));
        }
        let mut seen = vec![false; n + 1];
        for (i, &p) in pi.iter().enumerate() {
            if p == 0 || p > n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(format!(
                    "[{}] is not a permutation of 1..={n}",
                    Joined(&pi)
                )));
            }
            if (i < n / 2) != (p <= n / 2) {
                return Err(Error::InvalidPermutation(format!(
                    "{} ↦ {p} crosses halves",
                    i + 1
                )));
            }
        }
        Ok(HalfPermutationPair { pi })
    }

    pub fn identity(n: usize) -> Result<Self, Error> {
        Self::from_permutation((1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    /// `π(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.pi[i - 1]
    }

    /// All images, `π(1), …, π(n)`.
    pub fn images(&self) -> &[usize] {
        &self.pi
    }

    pub fn sigma1(&self) -> &[usize] {
        &self.pi[..self.pi.len() / 2]
    }

    pub fn sigma2(&self) -> &[usize] {
        &self.pi[self.pi.len() / 2..]
    }

    /// The vertex set `{(i, π(i))}`.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.pi.iter().enumerate().map(|(i, &p)| Vertex::new(i + 1, p)).collect()
    }
}

impl fmt::Display for HalfPermutationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Joined(&self.pi))
    }
}

/// True iff no edge of `g` has both endpoints in `{(i, π(i))}`.
pub fn is_independent_permutation(g: &BpisInstance, p: &HalfPermutationPair) -> bool {
    let s: BTreeSet<Vertex> = p.vertices().into_iter().collect();
    !g.edges().any(|(a, b)| s.contains(&a) && s.contains(&b))
}

/// Permutations of `items` in lexicographic order.
fn lex_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// The lexicographically least `(σ1, σ2)` whose vertex set is independent,
/// or `None` for a No-instance.
pub fn solve_bpis(g: &BpisInstance) -> Result<Option<HalfPermutationPair>, Error> {
    let n = g.n;
    if n > SOLVE_MAX_N {
        return Err(Error::TooLarge { what: "BPIS brute force", n_vars: n, cap: SOLVE_MAX_N });
    }
    let v = validate_instance(g);
    if !v.is_empty() {
        return Err(Error::InvalidInstance(Joined(&v).to_string()));
    }
    let h = n / 2;
    for s1 in lex_permutations(&(1..=h).collect::<Vec<_>>()) {
        let chosen: Vec<Vertex> = s1.iter().enumerate().map(|(i, &p)| Vertex::new(i + 1, p)).collect();
        let blocked = |row: usize, col: usize| {
            let w = Vertex::new(row, col);
            chosen.iter().any(|&a| g.edges.contains(&(a, w)))
        };
        let mut s2 = Vec::with_capacity(h);
        let mut used = vec![false; h];
        if complete_sigma2(h, &blocked, &mut s2, &mut used) {
            return HalfPermutationPair::new(&s1, &s2).map(Some);
        }
    }
    Ok(None)
}

fn complete_sigma2(
    h: usize,
    blocked: &impl Fn(usize, usize) -> bool,
    s2: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let row = h + 1 + s2.len();
    if s2.len() == h {
        return true;
    }
    for k in 0..h {
        let col = h + 1 + k;
        if used[k] || blocked(row, col) {
            continue;
        }
        used[k] = true;
        s2.push(col);
        if complete_sigma2(h, blocked, s2, used) {
            return true;
        }
        s2.pop();
        used[k] = false;
    }
    false
}

/// Each J1×J2 pair becomes an edge independently with probability `p`.
pub fn random_instance(n: usize, p: f64, seed: u64) -> Result<BpisInstance, Error> {
    if n % 2 == 1 || n < 4 {
        return Err(Error::InvalidInstance(format!("n={n} must be even and at least 4")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInstance(format!("edge probability {p} outside [0,1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let low = block_vertices(1, n / 2);
    let high = block_vertices(n / 2 + 1, n);
    let mut edges = Vec::new();
    for &a in &low {
        for &b in &high {
            if rng.gen::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    BpisInstance::new(n, edges)
}

impl fmt::Display for BpisInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bpis n={}", self.n)?;
        for (a, b) in self.edges() {
            writeln!(f, "{} {} {} {}", a.row, a.col, b.row, b.col)?;
        }
        Ok(())
    }
}

impl FromStr for BpisInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| ParseError::new(1, "missing `bpis` header"))?;
        let n: usize = header
            .strip_prefix("bpis n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| ParseError::new(hl, "expected `bpis n=<n>`"))?;
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|w| w.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| ParseError::new(ln, "expected four positive integers `j k jp kp`"))?;
            if nums.len() != 4 {
                return Err(ParseError::new(ln, "expected four positive integers `j k jp kp`").into());
            }
            let (a, b) = (Vertex::new(nums[0], nums[1]), Vertex::new(nums[2], nums[3]));
            if block(n, a) != Some(1) || block(n, b) != Some(2) {
                return Err(ParseError::new(
                    ln,
                    format!("edge {a}-{b} must join [n/2]² to the upper block"),
                )
                .into());
            }
            edges.push((a, b));
        }
        BpisInstance::new(n, edges)
    }
}
