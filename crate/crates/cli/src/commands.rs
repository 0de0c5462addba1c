use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};

use bpminlab::encoders::{parse_dimacs, sat_to_bp};
use bpminlab::gamma::{canonical_oabp_from_permutation, gamma_cases, reduce as reduce_graph};
use bpminlab::search::{self, SearchBudget, SearchOutcome};
use bpminlab::{bpis, encoders, BpisInstance, BranchingProgram, Error, PartialTruthTable};

use crate::report::Report;
use crate::{Failure, Run, Status};

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn parse<T: std::str::FromStr<Err = E>, E: std::fmt::Display>(path: &Path) -> anyhow::Result<T> {
    read(path)?.parse().map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn graph(path: &Path) -> anyhow::Result<BpisInstance> {
    parse(path)
}

/// A truth table file, or a program file read as its truth table.
fn table(path: &Path) -> anyhow::Result<PartialTruthTable> {
    let text = read(path)?;
    if text.trim_start().starts_with("bp") {
        let bp: BranchingProgram = text.parse().map_err(|e| anyhow!("{}: {e}", path.display()))?;
        Ok(bp.to_truth_table().map_err(|e| anyhow!("{}: {e}", path.display()))?)
    } else {
        text.parse().map_err(|e| anyhow!("{}: {e}", path.display()))
    }
}

fn input_error(path: &Path, e: Error) -> Failure {
    Failure::Input(anyhow!("{}: {e}", path.display()))
}

fn bits(flag: &str, s: &str, n: usize) -> Result<Vec<bool>, Failure> {
    let v: Option<Vec<bool>> = s
        .chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect();
    match v {
        Some(v) if v.len() == n => Ok(v),
        _ => Err(Failure::Usage(format!("--{flag} must be {n} characters from 0/1, got {s:?}"))),
    }
}

fn meta_path(out: &Path) -> PathBuf {
    let mut p = out.as_os_str().to_owned();
    p.push(".meta");
    PathBuf::from(p)
}

/// Verdict fields shared by the searches.
fn search_fields(r: &mut Report, out: &SearchOutcome) -> Status {
    r.put("verdict", out.verdict_name());
    if let Some(bp) = out.program() {
        r.put("size", bp.size());
    }
    r.put("nodes_expanded", out.stats.nodes_expanded).put("prunes", out.stats.prunes);
    if out.is_inconclusive() {
        Status::Inconclusive
    } else {
        Status::Ok
    }
}

fn save_witness(out: &SearchOutcome, path: Option<&Path>, r: &mut Report) -> anyhow::Result<()> {
    if let (Some(bp), Some(path)) = (out.program(), path) {
        write(path, &bp.to_string())?;
        r.put("program", path.display().to_string());
    }
    Ok(())
}

pub fn reduce(graph_path: &Path, out: &Path) -> Run {
    let g = graph(graph_path)?;
    let red = reduce_graph(&g).map_err(|e| input_error(graph_path, e))?;
    write(out, &red.table.to_string())?;
    let meta = meta_path(out);
    write(&meta, &format!("{}\n", red.meta_line(&graph_path.display().to_string())))?;
    let mut r = Report::default();
    r.put("n", red.n)
        .put("entries", red.table.len())
        .put("defined", red.table.defined_count())
        .put("s_bp", red.s_bp)
        .put("s_formula_gates", red.s_formula_gates)
        .put("table", out.display().to_string())
        .put("meta", meta.display().to_string());
    Ok((r, Status::Ok))
}

pub fn gamma_eval(graph_path: &Path, x: &str, y: &str, z: &str) -> Run {
    let g = graph(graph_path)?;
    let n = g.n();
    let (x, y, z) = (bits("x", x, n)?, bits("y", y, n)?, bits("z", z, n)?);
    let cases = gamma_cases(&g, &x, &y, &z).map_err(|e| input_error(graph_path, e))?;
    let value = cases.first().map_or('*', |c| c.1.symbol());
    let mut r = Report::default();
    r.put("value", value.to_string())
        .put("cases", cases.iter().map(|(c, _)| c.to_string()).collect::<Vec<_>>());
    Ok((r, Status::Ok))
}

pub fn solve_bpis(graph_path: &Path, out: Option<&Path>) -> Run {
    let g = graph(graph_path)?;
    let sol = bpis::solve_bpis(&g).map_err(|e| input_error(graph_path, e))?;
    let mut r = Report::default();
    r.put("n", g.n()).put("edges", g.edge_count()).put("independent", sol.is_some());
    if let Some(p) = &sol {
        r.put("permutation", p.images().to_vec());
        if let Some(path) = out {
            write(path, &canonical_oabp_from_permutation(p).to_string())?;
            r.put("program", path.display().to_string());
        }
    }
    Ok((r, Status::Ok))
}

pub fn oabp_search(input: &Path, out: Option<&Path>, budget: &SearchBudget) -> Run {
    let t = table(input)?;
    let res = search::oabp_search(&t, budget);
    let mut r = Report::default();
    r.put("n_vars", t.n_vars());
    let status = search_fields(&mut r, &res);
    save_witness(&res, out, &mut r)?;
    Ok((r, status))
}

pub fn minimize(input: &Path, s: Option<usize>, budget: &SearchBudget) -> Run {
    let Some(s) = s else {
        let t = table(input)?;
        let mut r = Report::default();
        r.put("n_vars", t.n_vars());
        return match search::min_bp_size(&t) {
            Ok(size) => {
                r.put("verdict", "found").put("size", size);
                Ok((r, Status::Ok))
            }
            Err(e @ Error::TooLarge { .. }) => {
                r.put("verdict", "inconclusive").put("reason", e.to_string());
                Ok((r, Status::Inconclusive))
            }
            Err(e) => Err(input_error(input, e)),
        };
    };
    mbpsp_star(input, s, None, budget)
}

pub fn mbpsp_star(input: &Path, s: usize, out: Option<&Path>, budget: &SearchBudget) -> Run {
    let t = table(input)?;
    let res = search::mbpsp_star(&t, s, budget);
    let mut r = Report::default();
    r.put("n_vars", t.n_vars()).put("s", s);
    let status = search_fields(&mut r, &res);
    save_witness(&res, out, &mut r)?;
    Ok((r, status))
}

pub fn obdd_min(input: &Path) -> Run {
    let t = table(input)?;
    let (order, size) = search::obdd_minimize(&t).map_err(|e| input_error(input, e))?;
    let mut r = Report::default();
    r.put("n_vars", t.n_vars())
        .put("order", order.iter().map(|v| v + 1).collect::<Vec<_>>())
        .put("size", size);
    Ok((r, Status::Ok))
}

pub fn query_complexity(input: &Path) -> Run {
    let t = table(input)?;
    let depth = search::query_complexity(&t).map_err(|e| input_error(input, e))?;
    let mut r = Report::default();
    r.put("n_vars", t.n_vars()).put("depth", depth);
    Ok((r, Status::Ok))
}

pub fn encode_2bp(graph_path: &Path, out: &Path) -> Run {
    let g = graph(graph_path)?;
    let bp = encoders::encode_gamma_2bp(&g).map_err(|e| input_error(graph_path, e))?;
    write(out, &bp.to_string())?;
    let mut r = Report::default();
    r.put("n", g.n())
        .put("nodes", bp.size())
        .put("max_reads", bp.classify().max_reads)
        .put("program", out.display().to_string());
    Ok((r, Status::Ok))
}

pub fn sat2bp(input: &Path, out: &Path) -> Run {
    let phi = parse_dimacs(&read(input)?).map_err(|e| input_error(input, e))?;
    let bp = sat_to_bp(&phi);
    write(out, &bp.to_string())?;
    let zeros = vec![false; phi.n_vars()];
    let mut r = Report::default();
    r.put("n_vars", phi.n_vars())
        .put("clauses", phi.clauses().len())
        .put("zero_assignment_satisfies", phi.evaluate(&zeros))
        .put("nodes", bp.size())
        .put("max_reads", bp.classify().max_reads)
        .put("program", out.display().to_string());
    Ok((r, Status::Ok))
}
