use anyhow::anyhow;

use bpminlab::bpis::{random_instance, solve_bpis};
use bpminlab::gamma::{
    canonical_oabp_from_permutation, check_or_of_ands_path, check_structural_lemmas, gamma_prime_table, reduce,
    GammaTarget,
};
use bpminlab::search::{oabp_enumerate, oabp_search, SearchBudget};
use bpminlab::{BpisInstance, PartialTruthTable};

use crate::report::Report;
use crate::{Failure, Level, Run, Status};

pub struct Campaign {
    pub level: Level,
    pub seed: Option<u64>,
    pub graphs: Option<u64>,
    pub p: f64,
    pub budget: SearchBudget,
}

pub fn run(c: &Campaign) -> Run {
    match c.level {
        Level::LemmasN2 => lemmas_n2(&c.budget),
        Level::TheoremN4 => theorem(c, "theorem-n4", 4, 200),
        Level::TheoremN6Sampled => theorem(c, "theorem-n6-sampled", 6, 4),
    }
}

fn core_error(e: bpminlab::Error) -> Failure {
    Failure::Input(anyhow!(e))
}

/// Every oaBP for γ′₂ and for `⋁ y_i ∧ z_i` at `n = 2` against the
/// structural checks.
fn lemmas_n2(budget: &SearchBudget) -> Run {
    let prime = gamma_prime_table(2).map_err(core_error)?;
    let found = oabp_search(&prime, budget);
    let all = oabp_enumerate(&prime, budget);
    let mut violations = Vec::new();
    for (k, bp) in all.programs.iter().enumerate() {
        let rep = check_structural_lemmas(bp, GammaTarget::Prime(2)).map_err(core_error)?;
        violations.extend(rep.violations.iter().map(|v| format!("gamma_prime#{k}:{}:{}", v.lemma, v.detail)));
    }
    let pairs = PartialTruthTable::from_bool_fn(4, |a| (a[0] && a[2]) || (a[1] && a[3]));
    let pair_programs = oabp_enumerate(&pairs, budget);
    for (k, bp) in pair_programs.programs.iter().enumerate() {
        violations.extend(check_or_of_ands_path(bp).iter().map(|v| format!("or_of_ands#{k}:{}:{}", v.lemma, v.detail)));
    }
    let complete = all.complete && pair_programs.complete;
    let mut r = Report::default();
    r.put("level", "lemmas-n2")
        .put("gamma_prime_search", found.verdict_name())
        .put("gamma_prime_programs", all.programs.len())
        .put("or_of_ands_programs", pair_programs.programs.len())
        .put("complete", complete)
        .put("violation_count", violations.len())
        .put("violations", violations.clone());
    let status = if !violations.is_empty() || (complete && (all.programs.is_empty() || !found.is_found())) {
        Status::Disagreement
    } else if !complete || found.is_inconclusive() {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Ok((r, status))
}

#[derive(Default)]
struct Matrix {
    // [solver yes/no][search found/no/inconclusive]
    cells: [[u64; 3]; 2],
}

fn theorem(c: &Campaign, name: &str, n: usize, default_graphs: u64) -> Run {
    let seed = c.seed.ok_or_else(|| Failure::Usage(format!("--seed is required for --level {name}")))?;
    if !(0.0..=1.0).contains(&c.p) {
        return Err(Failure::Usage(format!("--p must lie in [0, 1], got {}", c.p)));
    }
    let count = c.graphs.unwrap_or(default_graphs);
    let mut graphs: Vec<BpisInstance> =
        vec![BpisInstance::empty(n).map_err(core_error)?, BpisInstance::complete(n).map_err(core_error)?];
    for k in 0..count {
        graphs.push(random_instance(n, c.p, seed.wrapping_add(k)).map_err(core_error)?);
    }

    let mut m = Matrix::default();
    let mut disagreements = Vec::new();
    let mut violations = Vec::new();
    for (k, g) in graphs.iter().enumerate() {
        let table = reduce(g).map_err(core_error)?.table;
        let sol = solve_bpis(g).map_err(core_error)?;
        let out = oabp_search(&table, &c.budget);
        let col = if out.is_found() {
            0
        } else if out.is_exhausted_no() {
            1
        } else {
            2
        };
        m.cells[usize::from(sol.is_none())][col] += 1;
        if col != 2 && out.is_found() != sol.is_some() {
            disagreements.push(format!("graph#{k}:solver={}:search={}", sol.is_some(), out.verdict_name()));
        }
        if let Some(p) = &sol {
            let chain = canonical_oabp_from_permutation(p).to_truth_table().map_err(core_error)?;
            if !table.is_extended_by(&chain) {
                disagreements.push(format!("graph#{k}:chain"));
            }
        }
        if let Some(bp) = out.program() {
            let rep = check_structural_lemmas(bp, GammaTarget::Graph(g)).map_err(core_error)?;
            violations.extend(rep.violations.iter().map(|v| format!("graph#{k}:{}:{}", v.lemma, v.detail)));
        }
    }

    let inconclusive = m.cells[0][2] + m.cells[1][2];
    let mut r = Report::default();
    r.put("level", name)
        .put("n", n)
        .put("seed", seed)
        .put("p", c.p)
        .put("graphs", graphs.len());
    for (i, solver) in ["solver_yes", "solver_no"].iter().enumerate() {
        for (j, search) in ["search_found", "search_no", "search_inconclusive"].iter().enumerate() {
            r.put(&format!("{solver}_{search}"), m.cells[i][j]);
        }
    }
    r.put("inconclusive", inconclusive)
        .put("disagreement_count", disagreements.len())
        .put("disagreements", disagreements.clone())
        .put("violation_count", violations.len())
        .put("violations", violations.clone());
    let status = if !disagreements.is_empty() || !violations.is_empty() {
        Status::Disagreement
    } else if inconclusive > 0 {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Ok((r, status))
}
