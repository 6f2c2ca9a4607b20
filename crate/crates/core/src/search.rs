//! Bounded breadth-first exploration shared by every machine model.
//!
//! The engine deduplicates exact configurations and never reports rejection unless the whole
//! reachable set has been exhausted within budget. Exploration order is fully determined by
//! the order in which [`StepSystem::successors`] lists successors.

use std::collections::VecDeque;
use std::hash::Hash;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

/// A machine bound to one input word.
pub trait StepSystem {
    type Config: Clone + Eq + Hash;
    type Step: Copy + Eq + std::fmt::Debug;

    fn initial(&self) -> Self::Config;

    /// All one-step successors, in the engine's deterministic preference order.
    fn successors(&self, config: &Self::Config) -> Vec<(Self::Config, Self::Step)>;

    fn is_accepting(&self, config: &Self::Config) -> bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_depth: usize,
    pub max_configs: usize,
}

impl SearchBudget {
    pub const DEFAULT_MAX_CONFIGS: usize = 5_000_000;

    pub fn new(max_depth: usize, max_configs: usize) -> Self {
        assert!(max_depth > 0 && max_configs > 0, "budgets must be positive");
        SearchBudget { max_depth, max_configs }
    }

    /// Default budget for a word of length `n`: depth 50·(n+1), five million configurations.
    pub fn for_length(n: usize) -> Self {
        SearchBudget::new(50 * (n + 1), Self::DEFAULT_MAX_CONFIGS)
    }
}

/// Step-by-step run starting at the initial configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace<C, S> {
    pub start: C,
    pub steps: Vec<(S, C)>,
}

impl<C, S> Trace<C, S> {
    pub fn configs(&self) -> impl Iterator<Item = &C> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|(_, c)| c))
    }

    pub fn last(&self) -> &C {
        self.steps.last().map(|(_, c)| c).unwrap_or(&self.start)
    }

    pub fn len(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<C, S> {
    Accepted(Trace<C, S>),
    RejectedExhaustive,
    InconclusiveBudget,
}

impl<C, S> Verdict<C, S> {
    pub fn outcome(&self) -> Outcome {
        match self {
            Verdict::Accepted(_) => Outcome::Accepted,
            Verdict::RejectedExhaustive => Outcome::Rejected,
            Verdict::InconclusiveBudget => Outcome::Inconclusive,
        }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted(_))
    }
}

/// Verdict with the witness stripped; what sweeps compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Accepted,
    Rejected,
    Inconclusive,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Accepted => "accepted",
            Outcome::Rejected => "rejected_exhaustive",
            Outcome::Inconclusive => "inconclusive_budget",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExploreStatus {
    /// An accepting configuration was found (only reported when stopping at acceptance).
    Accepted(usize),
    Exhausted,
    DepthLimited,
    ConfigLimited,
}

/// The explored portion of the step graph as a breadth-first tree.
pub struct Exploration<C, S> {
    pub configs: IndexSet<C>,
    /// Tree parent and the step taken from it; `None` for the initial configuration.
    pub parents: Vec<Option<(usize, S)>>,
    pub depths: Vec<usize>,
    pub status: ExploreStatus,
}

impl<C: Clone + Eq + Hash, S: Copy> Exploration<C, S> {
    /// Reconstructs the tree path from the initial configuration to node `index`.
    pub fn path_to(&self, index: usize) -> Trace<C, S> {
        let mut rev = Vec::new();
        let mut at = index;
        while let Some((parent, step)) = self.parents[at] {
            rev.push((step, self.configs[at].clone()));
            at = parent;
        }
        rev.reverse();
        Trace { start: self.configs[at].clone(), steps: rev }
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }
}

/// Breadth-first exploration under `budget`.
///
/// With `stop_at_accept` the search ends at the first accepting configuration in BFS order;
/// otherwise the whole reachable set (within budget) is collected.
pub fn explore<M: StepSystem>(
    system: &M,
    budget: SearchBudget,
    stop_at_accept: bool,
) -> Exploration<M::Config, M::Step> {
    let mut configs = IndexSet::new();
    let mut parents = Vec::new();
    let mut depths = Vec::new();
    let mut queue = VecDeque::new();
    let mut depth_limited = false;

    configs.insert(system.initial());
    parents.push(None);
    depths.push(0);
    queue.push_back(0usize);

    let finish = |configs, parents, depths, status| Exploration { configs, parents, depths, status };

    if stop_at_accept && system.is_accepting(&configs[0]) {
        return finish(configs, parents, depths, ExploreStatus::Accepted(0));
    }

    while let Some(at) = queue.pop_front() {
        let depth = depths[at];
        let succs = system.successors(&configs[at]);
        for (next, step) in succs {
            if configs.contains(&next) {
                continue;
            }
            if depth >= budget.max_depth {
                depth_limited = true;
                continue;
            }
            if configs.len() >= budget.max_configs {
                return finish(configs, parents, depths, ExploreStatus::ConfigLimited);
            }
            let accepting = stop_at_accept && system.is_accepting(&next);
            let (idx, _) = configs.insert_full(next);
            parents.push(Some((at, step)));
            depths.push(depth + 1);
            if accepting {
                return finish(configs, parents, depths, ExploreStatus::Accepted(idx));
            }
            queue.push_back(idx);
        }
    }

    let status = if depth_limited { ExploreStatus::DepthLimited } else { ExploreStatus::Exhausted };
    finish(configs, parents, depths, status)
}

/// Bounded decision: accepted with a shortest witness, exhaustive rejection, or inconclusive.
pub fn decide<M: StepSystem>(system: &M, budget: SearchBudget) -> Verdict<M::Config, M::Step> {
    let ex = explore(system, budget, true);
    match ex.status {
        ExploreStatus::Accepted(idx) => Verdict::Accepted(ex.path_to(idx)),
        ExploreStatus::Exhausted => Verdict::RejectedExhaustive,
        ExploreStatus::DepthLimited | ExploreStatus::ConfigLimited => Verdict::InconclusiveBudget,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceEnd {
    Accepted,
    Stuck,
    StepLimit,
}

/// Follows the first listed successor at every step until acceptance, stuckness or `max_steps`.
pub fn trace_run<M: StepSystem>(
    system: &M,
    max_steps: usize,
) -> (Trace<M::Config, M::Step>, TraceEnd) {
    let mut trace = Trace { start: system.initial(), steps: Vec::new() };
    loop {
        let current = trace.last();
        if system.is_accepting(current) {
            return (trace, TraceEnd::Accepted);
        }
        if trace.steps.len() >= max_steps {
            return (trace, TraceEnd::StepLimit);
        }
        match system.successors(current).into_iter().next() {
            Some((next, step)) => trace.steps.push((step, next)),
            None => return (trace, TraceEnd::Stuck),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counter walking 0..=limit with optional branching to `x + 2`; accepts `target`.
    struct Walk {
        limit: u32,
        target: Option<u32>,
        branch: bool,
    }

    impl StepSystem for Walk {
        type Config = u32;
        type Step = u8;
        fn initial(&self) -> u32 {
            0
        }
        fn successors(&self, c: &u32) -> Vec<(u32, u8)> {
            let mut out = Vec::new();
            if *c < self.limit {
                out.push((c + 1, 1));
            }
            if self.branch && *c + 2 <= self.limit {
                out.push((c + 2, 2));
            }
            out
        }
        fn is_accepting(&self, c: &u32) -> bool {
            Some(*c) == self.target
        }
    }

    #[test]
    fn accepts_with_shortest_witness() {
        let w = Walk { limit: 10, target: Some(6), branch: true };
        match decide(&w, SearchBudget::new(100, 100)) {
            Verdict::Accepted(t) => {
                assert_eq!(t.steps.len(), 3);
                assert_eq!(*t.last(), 6);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn exhaustion_vs_budget() {
        let w = Walk { limit: 10, target: None, branch: false };
        assert_eq!(decide(&w, SearchBudget::new(10, 100)), Verdict::RejectedExhaustive);
        assert_eq!(decide(&w, SearchBudget::new(9, 100)), Verdict::InconclusiveBudget);
        assert_eq!(decide(&w, SearchBudget::new(100, 5)), Verdict::InconclusiveBudget);
        assert_eq!(decide(&w, SearchBudget::new(100, 11)), Verdict::RejectedExhaustive);
    }

    #[test]
    fn trace_follows_first_successor() {
        let w = Walk { limit: 3, target: None, branch: true };
        let (t, end) = trace_run(&w, 10);
        assert_eq!(end, TraceEnd::Stuck);
        assert_eq!(t.configs().copied().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        let (t, end) = trace_run(&w, 0);
        assert_eq!(end, TraceEnd::StepLimit);
        assert_eq!(t.len(), 1);
    }
}
