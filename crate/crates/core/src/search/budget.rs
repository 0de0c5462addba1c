use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::bp::BranchingProgram;
use crate::formula::DeMorganFormula;

/// Resource limits for a search. Running out yields
/// [`Verdict::Inconclusive`], never a negative answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes_expanded: u64,
    pub wall_clock_ms: u64,
    pub threads: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes_expanded: 1 << 40,
            wall_clock_ms: 600_000,
            threads: 1,
        }
    }
}

impl SearchBudget {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_wall_clock_ms(mut self, ms: u64) -> Self {
        self.wall_clock_ms = ms;
        self
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes_expanded = nodes;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Program(BranchingProgram),
    Formula(DeMorganFormula),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Found(Witness),
    ExhaustedNo,
    Inconclusive,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub prunes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self.verdict, Verdict::Found(_))
    }

    pub fn is_exhausted_no(&self) -> bool {
        matches!(self.verdict, Verdict::ExhaustedNo)
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.verdict, Verdict::Inconclusive)
    }

    pub fn program(&self) -> Option<&BranchingProgram> {
        match &self.verdict {
            Verdict::Found(Witness::Program(p)) => Some(p),
            _ => None,
        }
    }

    pub fn formula(&self) -> Option<&DeMorganFormula> {
        match &self.verdict {
            Verdict::Found(Witness::Formula(f)) => Some(f),
            _ => None,
        }
    }

    /// `found`, `no` or `inconclusive`.
    pub fn verdict_name(&self) -> &'static str {
        match self.verdict {
            Verdict::Found(_) => "found",
            Verdict::ExhaustedNo => "no",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Shared counters for one search; safe to tick from several threads.
pub(crate) struct Meter {
    start: Instant,
    deadline: Duration,
    max_nodes: u64,
    nodes: AtomicU64,
    prunes: AtomicU64,
    out_of_budget: AtomicBool,
    /// Set by whoever finds a witness so other workers can stop.
    pub(crate) done: AtomicBool,
}

impl Meter {
    pub fn new(budget: &SearchBudget) -> Self {
        Meter {
            start: Instant::now(),
            deadline: Duration::from_millis(budget.wall_clock_ms),
            max_nodes: budget.max_nodes_expanded,
            nodes: AtomicU64::new(0),
            prunes: AtomicU64::new(0),
            out_of_budget: AtomicBool::new(false),
            done: AtomicBool::new(false),
        }
    }

    /// Counts one expansion; false once the budget is spent or the search
    /// was stopped.
    #[inline]
    pub fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.max_nodes || (n % 4096 == 0 && self.start.elapsed() > self.deadline) {
            self.out_of_budget.store(true, Ordering::Relaxed);
        }
        !self.should_stop()
    }

    #[inline]
    pub fn prune(&self) {
        self.prunes.fetch_add(1, Ordering::Relaxed);
    }

    #[inline]
    pub fn should_stop(&self) -> bool {
        self.out_of_budget.load(Ordering::Relaxed) || self.done.load(Ordering::Relaxed)
    }

    pub fn exhausted(&self) -> bool {
        self.out_of_budget.load(Ordering::Relaxed)
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats {
            nodes_expanded: self.nodes.load(Ordering::Relaxed),
            prunes: self.prunes.load(Ordering::Relaxed),
            elapsed: self.start.elapsed(),
        }
    }

    /// Wraps a search result: a witness wins, then budget exhaustion, then a
    /// completed negative search.
    pub fn outcome(&self, witness: Option<Witness>) -> SearchOutcome {
        let verdict = match witness {
            Some(w) => Verdict::Found(w),
            None if self.exhausted() => Verdict::Inconclusive,
            None => Verdict::ExhaustedNo,
        };
        SearchOutcome {
            verdict,
            stats: self.stats(),
        }
    }
}
