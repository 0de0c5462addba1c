use crate::bp::{BranchingProgram, Node, Target};
use crate::bpis::HalfPermutationPair;
use crate::error::{Error, Joined};

/// The chained oaBP computing `⋁ z_i ∧ (x_{π(i)} ∨ y_i)` over `3n`
/// variables, with `pi[i-1] = π(i)` (1-based).
///
/// Block `i` occupies positions `3(i-1)..3i` and reads `x_{π(i)}`, `y_i`,
/// `z_i` in that order. It agrees with γ′ₙ for every permutation, and with
/// γ_G exactly when `π` preserves halves and its vertex set is independent.
pub fn chain_oabp(n: usize, pi: &[usize]) -> Result<BranchingProgram, Error> {
    let mut seen = vec![false; n + 1];
    if pi.len() != n || pi.iter().any(|&p| p == 0 || p > n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::InvalidPermutation(format!(
            "[{}] is not a permutation of 1..={n}",
            Joined(pi)
        )));
    }
    if n == 0 {
        return Ok(BranchingProgram::constant(0, crate::table::Value::Zero));
    }
    let mut nodes = Vec::with_capacity(3 * n);
    for (b, &a) in pi.iter().enumerate() {
        let p = 3 * b;
        let next = if b + 1 == n { Target::ZERO } else { Target::Node(p + 3) };
        nodes.push(Node { var: a - 1, lo: Target::Node(p + 1), hi: Target::Node(p + 2) });
        nodes.push(Node { var: n + b, lo: next, hi: Target::Node(p + 2) });
        nodes.push(Node { var: 2 * n + b, lo: next, hi: Target::ONE });
    }
    BranchingProgram::new(3 * n, nodes)
}

/// The canonical oaBP for γ_G built from a solution of the BPIS instance.
pub fn canonical_oabp_from_permutation(p: &HalfPermutationPair) -> BranchingProgram {
    chain_oabp(p.n(), p.images()).expect("a half-permutation pair is a permutation")
}
