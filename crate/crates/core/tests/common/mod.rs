//! Random system generator and step-relation property checks shared by test targets.
#![allow(dead_code)]

use proptest::prelude::*;

use pcpa_core::search::{explore, StepSystem};
use pcpa_core::{
    ComponentSpec, Configuration, Mhpda, Outcome, Pcpa, PcpaSpec, PcpaTransition, SearchBudget, StepKind,
    Sym, Symbol,
};

const INPUT: [&str; 2] = ["a", "b"];

fn bottom(i: usize) -> String {
    format!("Z_{}", i + 1)
}

fn query(i: usize) -> String {
    format!("K_{}", i + 1)
}

/// Raw transition: (from, read 0=ε/1=a/2=b, top index, to, push indices).
type Raw = (usize, usize, usize, usize, Vec<usize>);

fn component_strategy(k: usize, index: usize) -> impl Strategy<Value = (usize, Vec<Raw>, Vec<bool>)> {
    let tops = 2 + k;
    let pushes = 3 + if index == 0 { k - 1 } else { 0 };
    (1..=3usize).prop_flat_map(move |n| {
        let raw = (0..n, 0..3usize, 0..tops, 0..n, prop::collection::vec(0..pushes, 0..=2));
        (Just(n), prop::collection::vec(raw, 1..8), prop::collection::vec(any::<bool>(), n))
    })
}

/// Valid centralized systems of degree 1 to 3 over `{a, b}`, with epsilon moves, queries
/// from component 1 and shared work symbols `X`, `Y`.
pub fn pcpa_spec_strategy() -> impl Strategy<Value = PcpaSpec> {
    (1..=3usize).prop_flat_map(|k| {
        let comps: Vec<_> = (0..k).map(|i| component_strategy(k, i)).collect();
        comps.prop_map(move |comps| build_spec(k, comps))
    })
}

fn build_spec(k: usize, comps: Vec<(usize, Vec<Raw>, Vec<bool>)>) -> PcpaSpec {
    let mut top_pool: Vec<String> = vec!["X".into(), "Y".into()];
    top_pool.extend((0..k).map(bottom));
    let components = comps
        .into_iter()
        .enumerate()
        .map(|(i, (n, raws, finals))| {
            let state = |s: usize| format!("s{s}");
            let mut push_pool: Vec<String> = vec!["X".into(), "Y".into(), bottom(i)];
            if i == 0 {
                push_pool.extend((1..k).map(query));
            }
            let transitions = raws
                .into_iter()
                .map(|(from, read, top, to, push)| PcpaTransition {
                    from: state(from),
                    read: (read > 0).then(|| Symbol::from(INPUT[read - 1])),
                    top: Symbol::new(top_pool[top].clone()),
                    to: state(to),
                    push: push.into_iter().map(|p| Symbol::new(push_pool[p].clone())).collect(),
                })
                .collect();
            ComponentSpec {
                states: (0..n).map(state).collect(),
                initial: state(0),
                bottom: Symbol::new(bottom(i)),
                finals: (0..n).filter(|&s| finals[s]).map(state).collect(),
                transitions,
            }
        })
        .collect();
    let mut stack_alphabet: Vec<Symbol> = vec![Symbol::from("X"), Symbol::from("Y")];
    stack_alphabet.extend((0..k).map(|i| Symbol::new(bottom(i))));
    stack_alphabet.extend((0..k).map(|i| Symbol::new(query(i))));
    PcpaSpec {
        degree: k,
        input_alphabet: INPUT.iter().map(|s| Symbol::from(*s)).collect(),
        stack_alphabet,
        query_symbols: (0..k).map(|i| Symbol::new(query(i))).collect(),
        components,
    }
}

pub fn word_strategy(max_len: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(prop::sample::select(INPUT.to_vec()).prop_map(str::to_string), 0..=max_len)
}

#[derive(Debug, Default, Clone, Copy)]
pub struct StepStats {
    pub edges: usize,
    pub communications: usize,
}

/// Checks every edge leaving every explored configuration of `m` on `word`:
/// communication keeps states and consumed counts and moves stacks exactly as specified,
/// internal and communication successors never mix, and consumed counts grow by at most one.
pub fn check_pcpa_steps(m: &Pcpa, word: &[Sym], budget: SearchBudget) -> Result<StepStats, String> {
    let ex = explore(&m.run(word), budget, false);
    let mut stats = StepStats::default();
    for c in &ex.configs {
        let succs = m.successors(word, c);
        let tops: Vec<Option<Sym>> = c.components.iter().map(|cc| cc.stack.top()).collect();
        let querying = tops.iter().any(|t| t.and_then(|t| m.query_target(t)).is_some());
        if tops.iter().any(Option::is_none) && !succs.is_empty() {
            return Err("a configuration with an empty stack has successors".into());
        }
        if querying && succs.len() > 1 {
            return Err("more than one communication successor".into());
        }
        for (next, kind) in &succs {
            stats.edges += 1;
            match kind {
                StepKind::Communication => {
                    stats.communications += 1;
                    if !querying {
                        return Err("communication without a query on top".into());
                    }
                    check_communication(m, c, next, &tops)?;
                }
                StepKind::Internal => {
                    if querying {
                        return Err("internal step while a query is on top".into());
                    }
                    for (a, b) in c.components.iter().zip(&next.components) {
                        if b.consumed < a.consumed || b.consumed > a.consumed + 1 {
                            return Err("consumed count moved by more than one".into());
                        }
                        if b.consumed > word.len() {
                            return Err("consumed count passed the input".into());
                        }
                    }
                }
            }
        }
    }
    Ok(stats)
}

fn check_communication(
    m: &Pcpa,
    before: &Configuration,
    after: &Configuration,
    tops: &[Option<Sym>],
) -> Result<(), String> {
    for (a, b) in before.components.iter().zip(&after.components) {
        if a.state != b.state || a.consumed != b.consumed {
            return Err("communication changed a state or consumed count".into());
        }
    }
    let target = |i: usize| tops[i].and_then(|t| m.query_target(t));
    for i in 0..before.components.len() {
        let old = before.components[i].stack.to_top_first();
        let new = after.components[i].stack.to_top_first();
        let resolved = target(i).filter(|&j| target(j).is_none());
        let is_sender = (0..before.components.len())
            .any(|r| target(r) == Some(i) && target(i).is_none());
        if let Some(j) = resolved {
            let mut expected = before.components[j].stack.to_top_first();
            expected.extend_from_slice(&old[1..]);
            if new != expected {
                return Err(format!("receiver {} did not get sender {}'s store on top", i + 1, j + 1));
            }
            if new.len() + 1 != old.len() + before.components[j].stack.len() {
                return Err("stack accounting identity violated".into());
            }
        } else if is_sender {
            if new != vec![m.bottom(i)] {
                return Err(format!("sender {} was not reset to its bottom", i + 1));
            }
        } else if new != old {
            return Err(format!("uninvolved component {} changed its store", i + 1));
        }
    }
    Ok(())
}

/// Heads of `m` never move left and move at most one cell per step.
pub fn check_mhpda_steps(m: &Mhpda, word: &[Sym], budget: SearchBudget) -> Result<usize, String> {
    let ex = explore(&m.run(word), budget, false);
    let mut edges = 0;
    for c in &ex.configs {
        for (next, _) in m.successors(word, c) {
            edges += 1;
            for (&p, &q) in c.heads.iter().zip(&next.heads) {
                if q < p || q > p + 1 || q > word.len() {
                    return Err(format!("head moved from {p} to {q}"));
                }
            }
        }
    }
    Ok(edges)
}

/// A definite verdict under `small` is unchanged under the larger `large`.
pub fn check_budget_monotone<M: StepSystem>(
    system: &M,
    small: SearchBudget,
    large: SearchBudget,
) -> Result<(), String> {
    let a = pcpa_core::search::decide(system, small).outcome();
    let b = pcpa_core::search::decide(system, large).outcome();
    if a != Outcome::Inconclusive && a != b {
        return Err(format!("verdict {a} under {small:?} became {b} under {large:?}"));
    }
    Ok(())
}

pub fn small_budget() -> SearchBudget {
    SearchBudget::new(40, 4_000)
}
