//! Acceptance campaign. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use bpminlab::bpis::{random_instance, solve_bpis};
use bpminlab::encoders::{clause_chain, encode_gamma_2bp, random_cnf34, sat_to_bp, Cnf34, Literal, MAX_OCCURRENCES};
use bpminlab::gamma::{
    canonical_oabp_from_permutation, case_conflicts, check_or_of_ands_path, check_structural_lemmas, gamma_prime_table,
    reduce, GammaTarget,
};
use bpminlab::search::{
    mbpsp_star, min_bp_size, oabp_enumerate, oabp_search, obdd_minimize, obdd_size_under_order, query_complexity,
    read_once_formula_search, SearchBudget,
};
use bpminlab::{BpisInstance, BranchingProgram, PartialTruthTable, Value};

type Verdict = Result<String, String>;

/// Edge probability of the random graphs in the equivalence campaign.
const CAMPAIGN_P: f64 = 0.3;
const CAMPAIGN_GRAPHS: u64 = 200;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// `⋁ y_i ∧ z_i` over `y_1..y_n, z_1..z_n`.
fn or_of_ands(n: usize) -> PartialTruthTable {
    PartialTruthTable::from_bool_fn(2 * n, |a| (0..n).any(|i| a[i] && a[n + i]))
}

struct Solved {
    graph: BpisInstance,
    table: PartialTruthTable,
    witness: Option<BranchingProgram>,
    independent: Option<bpminlab::HalfPermutationPair>,
}

fn campaign_graphs() -> Vec<BpisInstance> {
    let mut gs = vec![BpisInstance::empty(4).unwrap(), BpisInstance::complete(4).unwrap()];
    gs.extend((0..CAMPAIGN_GRAPHS).map(|seed| random_instance(4, CAMPAIGN_P, seed).unwrap()));
    gs
}

fn equivalence(solved: &mut Vec<Solved>) -> Verdict {
    let budget = SearchBudget::default().with_wall_clock_ms(600_000).with_threads(threads());
    let (mut yes, mut no) = (0, 0);
    for (k, g) in campaign_graphs().into_iter().enumerate() {
        let table = reduce(&g).map_err(|e| e.to_string())?.table;
        let independent = solve_bpis(&g).map_err(|e| e.to_string())?;
        let out = oabp_search(&table, &budget);
        ensure(!out.is_inconclusive(), || format!("graph #{k} inconclusive after {:?}", out.stats.elapsed))?;
        ensure(out.is_found() == independent.is_some(), || {
            format!("graph #{k}: solver says {}, search says {}", independent.is_some(), out.verdict_name())
        })?;
        if independent.is_some() {
            yes += 1;
        } else {
            no += 1;
        }
        solved.push(Solved { graph: g, table, witness: out.program().cloned(), independent });
    }
    Ok(format!("{} graphs, {yes} yes, {no} no", yes + no))
}

fn forward(solved: &[Solved]) -> Verdict {
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for (k, s) in solved.iter().enumerate() {
        let Some(p) = &s.independent else { continue };
        let t = Instant::now();
        let bp = canonical_oabp_from_permutation(p);
        let ok = s.table.is_extended_by(&bp.to_truth_table().map_err(|e| e.to_string())?);
        let dt = t.elapsed();
        ensure(ok, || format!("graph #{k}: chain for π = [{p}] disagrees with γ_G"))?;
        ensure(dt < Duration::from_secs(1), || format!("graph #{k} took {dt:?}"))?;
        slowest = slowest.max(dt);
        count += 1;
    }
    Ok(format!("{count} chains, slowest {slowest:?}"))
}

fn lemmas(solved: &[Solved]) -> Verdict {
    let mut checked = 0;
    for (k, s) in solved.iter().enumerate() {
        let Some(bp) = &s.witness else { continue };
        let r = check_structural_lemmas(bp, GammaTarget::Graph(&s.graph)).map_err(|e| format!("graph #{k}: {e}"))?;
        ensure(r.holds(), || format!("graph #{k}: {:?}", r.violations))?;
        checked += 1;
    }
    let all = oabp_enumerate(&gamma_prime_table(2).unwrap(), &SearchBudget::default().with_threads(threads()));
    ensure(all.complete, || "γ′₂ enumeration ran out of budget".into())?;
    ensure(!all.programs.is_empty(), || "no oaBP for γ′₂".into())?;
    for bp in &all.programs {
        let r = check_structural_lemmas(bp, GammaTarget::Prime(2)).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("γ′₂ program\n{bp}: {:?}", r.violations))?;
    }
    Ok(format!("{checked} witnesses, {} γ′₂ programs", all.programs.len()))
}

fn or_of_ands_exhaustive() -> Verdict {
    let f = or_of_ands(2);
    let all = oabp_enumerate(&f, &SearchBudget::default());
    ensure(all.complete, || "enumeration ran out of budget".into())?;
    ensure(!all.programs.is_empty(), || "no oaBP found".into())?;
    for bp in &all.programs {
        ensure(f.is_extended_by(&bp.to_truth_table().unwrap()), || format!("wrong program\n{bp}"))?;
        let v = check_or_of_ands_path(bp);
        ensure(v.is_empty(), || format!("{v:?}\n{bp}"))?;
    }
    Ok(format!("{} programs, all single pair paths", all.programs.len()))
}

fn queries() -> Verdict {
    for n in 1..=3 {
        let q = query_complexity(&or_of_ands(n)).map_err(|e| e.to_string())?;
        ensure(q == 2 * n, || format!("or-of-ands n={n}: depth {q}"))?;
    }
    for n in 2..=3 {
        let q = query_complexity(&gamma_prime_table(n).unwrap()).map_err(|e| e.to_string())?;
        ensure(q <= 2 * n + 2, || format!("γ′ n={n}: depth {q}"))?;
    }
    Ok("or-of-ands depth 2n for n ≤ 3, γ′ within 2n+2".into())
}

fn separation() -> Verdict {
    for pad in [0, 4] {
        let f = PartialTruthTable::from_bool_fn(3 + pad, |a| (a[1] && a[0]) || (a[2] && !a[0]) || a[3..].iter().any(|&t| t));
        let o = oabp_search(&f, &SearchBudget::default());
        let r = read_once_formula_search(&f, &SearchBudget::default());
        ensure(o.is_found(), || format!("pad {pad}: oaBP search {}", o.verdict_name()))?;
        ensure(r.is_exhausted_no(), || format!("pad {pad}: read-once search {}", r.verdict_name()))?;
    }
    Ok("oaBP found, no read-once formula, with and without 4 padding variables".into())
}

fn obdd() -> Verdict {
    let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for bits in 0u32..256 {
        let f = PartialTruthTable::from_fn(3, |r| Value::from_bool(bits >> r & 1 == 1));
        let (_, best) = obdd_minimize(&f).map_err(|e| e.to_string())?;
        let brute = orders.iter().map(|o| obdd_size_under_order(&f, o)).min().unwrap();
        ensure(best == brute, || format!("function {bits:08b}: {best} vs {brute}"))?;
    }
    Ok("256 functions".into())
}

fn goldens() -> Verdict {
    let size = |n, f: fn(&[bool]) -> bool| min_bp_size(&PartialTruthTable::from_bool_fn(n, f)).map_err(|e| e.to_string());
    ensure(size(2, |_| true)? == 0, || "constant".into())?;
    ensure(size(2, |a| a[1])? == 1, || "literal".into())?;
    ensure(size(2, |a| a[0] ^ a[1])? == 3, || "xor".into())?;
    for bits in 0u32..16 {
        let f = PartialTruthTable::from_fn(2, |r| Value::from_bool(bits >> r & 1 == 1));
        let m = min_bp_size(&f).map_err(|e| e.to_string())?;
        for s in 0..=4 {
            let found = mbpsp_star(&f, s, &SearchBudget::default()).is_found();
            ensure(found == (m <= s), || format!("function {bits:04b}, s={s}: found={found}, minimum {m}"))?;
        }
    }
    Ok("goldens and 16 functions × s ≤ 4".into())
}

fn encoders() -> Verdict {
    let t = Instant::now();
    for n in [4, 6] {
        let mut graphs = vec![BpisInstance::empty(n).unwrap(), BpisInstance::complete(n).unwrap()];
        graphs.extend((0..3).map(|s| random_instance(n, 0.4, s).unwrap()));
        for g in &graphs {
            let bp = encode_gamma_2bp(g).map_err(|e| e.to_string())?;
            let want = reduce(g).map_err(|e| e.to_string())?.table;
            let got = bp.to_truth_table().map_err(|e| e.to_string())?;
            ensure(want == got, || format!("n={n}: 2-BP differs from γ_G at row {:?}", want.first_disagreement(&got)))?;
            ensure(bp.classify().max_reads <= 2, || format!("n={n}: read-{}", bp.classify().max_reads))?;
        }
    }
    let gamma_time = t.elapsed();
    ensure(gamma_time < Duration::from_secs(60), || format!("γ encoder checks took {gamma_time:?}"))?;

    let mut formulas: Vec<Cnf34> = (0..500u64)
        .map(|seed| {
            let n = 3 + (seed % 10) as usize;
            let m = 1 + (seed as usize / 10) % (4 * n / 3);
            random_cnf34(n, m, seed).unwrap()
        })
        .collect();
    let lit = |d: i64| Literal::from_dimacs(d);
    formulas.push(
        Cnf34::new(
            2,
            vec![[lit(1), lit(1), lit(2)], [lit(1), lit(1), lit(-2)], [lit(-1), lit(-1), lit(2)], [lit(-1), lit(-1), lit(-2)]],
        )
        .unwrap(),
    );
    let mut unsat = 0;
    for (k, phi) in formulas.iter().enumerate() {
        let n = phi.n_vars();
        let chain = clause_chain(phi);
        let negated = PartialTruthTable::from_bool_fn(n, |a| !phi.evaluate(a));
        ensure(chain.to_truth_table().unwrap() == negated, || format!("formula #{k}: chain is not ¬φ\n{phi}"))?;
        let bp = sat_to_bp(phi);
        ensure(bp.classify().max_reads <= MAX_OCCURRENCES, || format!("formula #{k}: read-{}", bp.classify().max_reads))?;
        let satisfiable = phi.is_satisfiable().map_err(|e| e.to_string())?;
        let size_zero = mbpsp_star(&bp.to_truth_table().unwrap(), 0, &SearchBudget::default());
        ensure(!size_zero.is_inconclusive(), || format!("formula #{k}: size-0 check inconclusive"))?;
        ensure(size_zero.is_found() == !satisfiable, || {
            format!("formula #{k}: size 0 {}, satisfiable {satisfiable}\n{phi}", size_zero.verdict_name())
        })?;
        unsat += usize::from(!satisfiable);
    }
    Ok(format!("γ 2-BP exact at n=4,6 in {gamma_time:.1?}; {} formulas, {unsat} unsatisfiable", formulas.len()))
}

fn well_defined() -> Verdict {
    for n in [4, 6] {
        for seed in 0..1000u64 {
            let p = (seed % 11) as f64 / 10.0;
            let g = random_instance(n, p, seed).unwrap();
            let c = case_conflicts(&g).map_err(|e| e.to_string())?;
            ensure(c.is_empty(), || format!("n={n} seed {seed}: {} conflicting rows", c.len()))?;
        }
    }
    let small = BpisInstance::new(2, []).map_err(|e| e.to_string())?;
    let msg = reduce(&small).err().map(|e| e.to_string()).unwrap_or_default();
    ensure(msg.contains("(7)") && msg.contains("(1)"), || format!("n=2 diagnostic: {msg:?}"))?;
    Ok("2000 graphs without conflicts; n=2 rejected".into())
}

fn main() {
    let mut solved = Vec::new();
    let mut failures = 0;
    let mut report = |k: usize, name: &str, run: &mut dyn FnMut() -> Verdict| {
        let t = Instant::now();
        let v = run();
        let dt = t.elapsed();
        match v {
            Ok(d) => println!("criterion {k:>2} PASS {name}: {d} [{dt:.1?}]"),
            Err(d) => {
                failures += 1;
                println!("criterion {k:>2} FAIL {name}: {d} [{dt:.1?}]");
            }
        }
    };
    report(1, "oaBP search agrees with the BPIS solver at n=4", &mut || equivalence(&mut solved));
    report(2, "canonical chains compute γ_G", &mut || forward(&solved));
    report(3, "structural lemmas hold on every witness", &mut || lemmas(&solved));
    report(4, "or-of-ands oaBPs are single pair paths", &mut or_of_ands_exhaustive);
    report(5, "query complexity", &mut queries);
    report(6, "oaBP versus read-once formula separation", &mut separation);
    report(7, "OBDD minimizer matches brute force", &mut obdd);
    report(8, "minimum-size goldens", &mut goldens);
    report(9, "encoders", &mut encoders);
    report(10, "γ_G is well defined", &mut well_defined);
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
