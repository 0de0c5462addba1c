//! Two-pass program for γ_G. Both passes read `x_1, y_1, z_1, …, x_n, y_n,
//! z_n`, so every variable is read at most twice on any path.
//!
//! Pass 1 tracks which of the patterns of cases (1)–(6) the input still
//! fits, one flag per case. At the end the lowest fitting case picks the
//! value computation of pass 2; with no fitting case pass 2 instead checks
//! whether the input is the pattern of an edge.

use std::collections::{HashMap, HashSet};

use crate::bp::{BranchingProgram, Builder, Target};
use crate::bpis::BpisInstance;
use crate::error::Error;
use crate::gamma::check_graph;

const ALL_CASES: u8 = 0b11_1111;

/// Positions of the single zero of `x` and the single one of `z` in each
/// half, 1-based within the half.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
struct EdgeProbe {
    x_zero: [Option<u8>; 2],
    z_one: [Option<u8>; 2],
}

struct Encoder {
    n: usize,
    half: usize,
    b: Builder,
    // ((j, k), (j', k')) with half-local indices
    edges: HashSet<((u8, u8), (u8, u8))>,
    first_ends: HashSet<(u8, u8)>,
    classes: [Target; 7],
    pass1: HashMap<(usize, u8), Target>,
    probe: HashMap<(usize, EdgeProbe), Target>,
}

impl Encoder {
    fn x(&self, i: usize) -> usize {
        i
    }

    fn y(&self, i: usize) -> usize {
        self.n + i
    }

    fn z(&self, i: usize) -> usize {
        2 * self.n + i
    }

    fn value_chains(&mut self) {
        let n = self.n;
        let (zero, one) = (Target::ZERO, Target::ONE);
        let mut yz = zero;
        let mut z_or = zero;
        let mut xy_or = zero;
        let mut x_high = zero;
        let mut x_low = zero;
        for i in (0..n).rev() {
            let z = self.b.node(self.z(i), yz, one);
            yz = self.b.node(self.y(i), yz, z);
            z_or = self.b.node(self.z(i), z_or, one);
            xy_or = self.b.node(self.y(i), xy_or, one);
            xy_or = self.b.node(self.x(i), xy_or, one);
            if i < self.half {
                x_high = self.b.node(self.x(i), x_high, one);
            } else {
                x_low = self.b.node(self.x(i), x_low, one);
            }
        }
        let edge = self.edge_probe(0, EdgeProbe::default());
        self.classes = [yz, z_or, xy_or, zero, x_high, x_low, edge];
    }

    fn pass1(&mut self, pos: usize, flags: u8) -> Target {
        if flags == 0 {
            return self.classes[6];
        }
        if pos == 3 * self.n {
            return self.classes[flags.trailing_zeros() as usize];
        }
        if let Some(&t) = self.pass1.get(&(pos, flags)) {
            return t;
        }
        let (i, kind) = (pos / 3, pos % 3);
        let var = kind * self.n + i;
        let high = i < self.half;
        let step = |bit: bool| -> u8 {
            let keep: u8 = match kind {
                0 if bit => !0b00_0001,
                0 => !0b00_0010,
                1 if bit => !0b11_0000,
                1 => !0,
                _ => {
                    let mut keep = if bit { !0b00_1000 } else { !0b00_0100 };
                    if bit != high {
                        keep &= !0b01_0000;
                    }
                    if bit == high {
                        keep &= !0b10_0000;
                    }
                    keep
                }
            };
            flags & keep
        };
        let lo = self.pass1(pos + 1, step(false));
        let hi = self.pass1(pos + 1, step(true));
        let t = self.b.node(var, lo, hi);
        self.pass1.insert((pos, flags), t);
        t
    }

    fn edge_probe(&mut self, pos: usize, st: EdgeProbe) -> Target {
        let h = self.half;
        if pos == 3 * h {
            let (Some(k), Some(j)) = (st.x_zero[0], st.z_one[0]) else {
                return Target::STAR;
            };
            if !self.first_ends.contains(&(j, k)) {
                return Target::STAR;
            }
        }
        if pos == 3 * self.n {
            return match (st.x_zero, st.z_one) {
                ([Some(k), Some(kp)], [Some(j), Some(jp)]) if self.edges.contains(&((j, k), (jp, kp))) => Target::ONE,
                _ => Target::STAR,
            };
        }
        if let Some(&t) = self.probe.get(&(pos, st)) {
            return t;
        }
        let (i, kind) = (pos / 3, pos % 3);
        let side = usize::from(i >= h);
        let local = (i - side * h + 1) as u8;
        let var = kind * self.n + i;
        let t = match kind {
            0 => {
                let hi = self.edge_probe(pos + 1, st);
                let lo = if st.x_zero[side].is_some() {
                    Target::STAR
                } else {
                    let mut next = st;
                    next.x_zero[side] = Some(local);
                    self.edge_probe(pos + 1, next)
                };
                self.b.node(var, lo, hi)
            }
            1 => {
                let lo = self.edge_probe(pos + 1, st);
                self.b.node(var, lo, Target::STAR)
            }
            _ => {
                let lo = self.edge_probe(pos + 1, st);
                let hi = if st.z_one[side].is_some() {
                    Target::STAR
                } else {
                    let mut next = st;
                    next.z_one[side] = Some(local);
                    self.edge_probe(pos + 1, next)
                };
                self.b.node(var, lo, hi)
            }
        };
        self.probe.insert((pos, st), t);
        t
    }
}

/// A program with sinks 0, 1 and `*` computing γ_G exactly, reading each
/// variable at most twice on every path. Needs no truth table, so it scales
/// to any `n` whose program fits in memory.
pub fn encode_gamma_2bp(g: &BpisInstance) -> Result<BranchingProgram, Error> {
    check_graph(g)?;
    let n = g.n();
    let h = n / 2;
    let edges: HashSet<((u8, u8), (u8, u8))> = g
        .edges()
        .map(|(a, b)| {
            ((a.row as u8, a.col as u8), ((b.row - h) as u8, (b.col - h) as u8))
        })
        .collect();
    let first_ends = edges.iter().map(|e| e.0).collect();
    let mut enc = Encoder {
        n,
        half: h,
        b: Builder::new(3 * n),
        edges,
        first_ends,
        classes: [Target::STAR; 7],
        pass1: HashMap::new(),
        probe: HashMap::new(),
    };
    enc.value_chains();
    let root = enc.pass1(0, ALL_CASES);
    Ok(enc.b.finish(root))
}
