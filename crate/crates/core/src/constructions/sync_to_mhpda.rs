//! Compiles a synchronized (epsilon-free) centralized returning PCPA of degree `k` into a
//! pushdown automaton with `k` sensing heads.
//!
//! Head 1 drives component 1 directly on the pushdown store. The other components are
//! simulated lazily: the control remembers each one's state at its last reset and the
//! matching head stays where that reset happened. When component 1 queries component `j`,
//! the query symbol is replaced by a marked copy of `j`'s bottom and component `j` is replayed
//! on top of it with head `j`, until head `j` catches up with head 1. Because every component
//! reads one symbol per step, that is exactly the moment of the query. After component 1
//! finishes, every other component is replayed to the end-marker and must end in a final
//! state.

use std::collections::{HashMap, HashSet, VecDeque};

use super::builder::MhBuilder;
use super::map::{CompilationMap, StateNote};
use crate::error::{Error, Result};
use crate::mhpda::HeadGuard;
use crate::mhpda::HeadMove::{self, Advance, Stay};
use crate::mhpda::MhpdaSpec;
use crate::pcpa::{PcpaSpec, PcpaTransition};

/// Output of [`compile_sync_pcpa_to_mhpda`].
#[derive(Debug, Clone)]
pub struct SyncCompilation {
    pub mhpda: MhpdaSpec,
    pub map: CompilationMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Control {
    Init,
    /// Component 1 state, recorded states of components 2..k.
    Sim(usize, Vec<usize>),
    /// Replaying component `j` (0-based) currently in state `s`.
    Replay { j: usize, q: usize, rec: Vec<usize>, s: usize },
    EndStart { j: usize, rec: Vec<usize> },
    EndRun { j: usize, s: usize, rec: Vec<usize> },
    /// Component `j` emptied its store; only legal on its last step.
    EndEmpty { j: usize, s: usize, rec: Vec<usize> },
    Accept,
}

struct Names<'a> {
    spec: &'a PcpaSpec,
}

impl Names<'_> {
    fn state(&self, comp: usize, s: usize) -> &str {
        &self.spec.components[comp].states[s]
    }

    fn rec(&self, rec: &[usize]) -> String {
        rec.iter().enumerate().map(|(i, &s)| self.state(i + 1, s)).collect::<Vec<_>>().join("|")
    }

    fn control(&self, c: &Control) -> String {
        match c {
            Control::Init => "init".to_string(),
            Control::Accept => "accept".to_string(),
            Control::Sim(q, rec) => format!("sim[{};{}]", self.state(0, *q), self.rec(rec)),
            Control::Replay { j, q, rec, s } => format!(
                "replay{}[{};{};{}]",
                j + 1,
                self.state(0, *q),
                self.rec(rec),
                self.state(*j, *s)
            ),
            Control::EndStart { j, rec } => format!("end{}[{}]", j + 1, self.rec(rec)),
            Control::EndRun { j, s, rec } => {
                format!("endrun{}[{};{}]", j + 1, self.state(*j, *s), self.rec(rec))
            }
            Control::EndEmpty { j, s, rec } => {
                format!("endempty{}[{};{}]", j + 1, self.state(*j, *s), self.rec(rec))
            }
        }
    }

    fn note(&self, c: &Control) -> StateNote {
        let (source, phase) = match c {
            Control::Init => (String::new(), "init"),
            Control::Accept => (String::new(), "accept"),
            Control::Sim(q, _) => (format!("1:{}", self.state(0, *q)), "simulate"),
            Control::Replay { j, s, .. } => (format!("{}:{}", j + 1, self.state(*j, *s)), "replay"),
            Control::EndStart { j, .. } => (format!("{}", j + 1), "finish"),
            Control::EndRun { j, s, .. } | Control::EndEmpty { j, s, .. } => {
                (format!("{}:{}", j + 1, self.state(*j, *s)), "finish")
            }
        };
        StateNote { component: 1, state: self.control(c), source, phase: phase.to_string(), boundary: false }
    }
}

/// Picks `base`, or `base` with primes appended, avoiding every name in `taken`.
fn fresh(base: String, taken: &mut HashSet<String>) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.insert(name.clone());
    name
}

struct Row {
    from: String,
    scan: Vec<Option<String>>,
    guard: Vec<HeadGuard>,
    top: String,
    to: String,
    moves: Vec<HeadMove>,
    push: Vec<String>,
}

struct Generator<'a> {
    spec: &'a PcpaSpec,
    names: Names<'a>,
    k: usize,
    index: Vec<HashMap<&'a str, usize>>,
    finals: Vec<Vec<bool>>,
    queries: Vec<&'a str>,
    /// Segment-bottom copy of every non-query stack symbol.
    marked: HashMap<&'a str, String>,
    gamma: Vec<String>,
    end_marker: String,
    seen: HashSet<Control>,
    queue: VecDeque<Control>,
    notes: Vec<StateNote>,
    rows: Vec<Row>,
}

impl<'a> Generator<'a> {
    fn visit(&mut self, c: Control) -> String {
        let name = self.names.control(&c);
        if self.seen.insert(c.clone()) {
            self.notes.push(self.names.note(&c));
            self.queue.push_back(c);
        }
        name
    }

    fn moves(&self, h: usize, advance: bool) -> Vec<HeadMove> {
        (0..self.k).map(|i| if advance && i == h { Advance } else { Stay }).collect()
    }

    fn scan(&self, h: usize, sym: Option<&str>) -> Vec<Option<String>> {
        (0..self.k).map(|i| if i == h { sym.map(str::to_string) } else { None }).collect()
    }

    fn state(&self, comp: usize, name: &str) -> usize {
        self.index[comp][name]
    }

    #[allow(clippy::too_many_arguments)]
    fn row(
        &mut self,
        from: &str,
        scan: Vec<Option<String>>,
        guard: Vec<HeadGuard>,
        top: &str,
        to: String,
        moves: Vec<HeadMove>,
        push: Vec<String>,
    ) {
        self.rows.push(Row { from: from.to_string(), scan, guard, top: top.to_string(), to, moves, push });
    }

    /// `to` for every top symbol, no head move, store unchanged; optionally head `h` on `$`.
    fn any_top(&mut self, from: &str, h: Option<usize>, guard: Vec<HeadGuard>, to: String) {
        let scan = match h {
            Some(h) => self.scan(h, Some(&self.end_marker.clone())),
            None => self.scan(0, None),
        };
        for top in self.gamma.clone() {
            let moves = self.moves(0, false);
            self.row(from, scan.clone(), guard.clone(), &top, to.clone(), moves, vec![top.clone()]);
        }
    }

    fn after_finish(&self, j: usize, rec: &[usize]) -> Control {
        if j + 1 < self.k {
            Control::EndStart { j: j + 1, rec: rec.to_vec() }
        } else {
            Control::Accept
        }
    }

    /// Moves of component `comp` from state `s` on its own segment with head `comp`.
    /// Popping the segment bottom without replacement goes to `on_empty`, or blocks.
    fn component_steps(
        &mut self,
        from: &str,
        comp: usize,
        s: usize,
        guard: Vec<HeadGuard>,
        next: &dyn Fn(usize) -> Control,
        on_empty: &dyn Fn(usize) -> Option<Control>,
    ) {
        let spec = self.spec;
        let c = &spec.components[comp];
        let transitions: Vec<&PcpaTransition> =
            c.transitions.iter().filter(|t| t.from == c.states[s]).collect();
        for t in transitions {
            let target = self.state(comp, &t.to);
            let read = t.read.as_ref().map(|r| r.as_str());
            let scan = self.scan(comp, read);
            let moves = self.moves(comp, true);
            let push: Vec<String> = t.push.iter().map(|p| p.0.clone()).collect();
            let to = self.visit(next(target));
            self.row(from, scan.clone(), guard.clone(), t.top.as_str(), to.clone(), moves.clone(), push.clone());
            let Some(marked_top) = self.marked.get(t.top.as_str()).cloned() else { continue };
            if let Some((last, rest)) = push.split_last() {
                let mut mpush = rest.to_vec();
                mpush.push(self.marked.get(last.as_str()).cloned().unwrap_or_else(|| last.clone()));
                self.row(from, scan, guard.clone(), &marked_top, to, moves, mpush);
            } else if let Some(target) = on_empty(target) {
                let to = self.visit(target);
                self.row(from, scan, guard.clone(), &marked_top, to, moves, vec![]);
            }
        }
    }

    fn expand(&mut self, c: Control) {
        let from = self.names.control(&c);
        let spec = self.spec;
        match c {
            Control::Init => {
                let rec: Vec<usize> = (1..self.k).map(|j| self.state(j, &spec.components[j].initial)).collect();
                let q0 = self.state(0, &spec.components[0].initial);
                let to = self.visit(Control::Sim(q0, rec));
                let bot = self.gamma[0].clone();
                let (scan, moves) = (self.scan(0, None), self.moves(0, false));
                self.row(&from, scan, vec![], &bot.clone(), to, moves, vec![spec.components[0].bottom.0.clone(), bot]);
            }
            Control::Sim(q, rec) => {
                let c0 = &spec.components[0];
                for t in c0.transitions.iter().filter(|t| t.from == c0.states[q]) {
                    let top = t.top.as_str();
                    if self.queries.contains(&top) {
                        continue;
                    }
                    let target = self.state(0, &t.to);
                    let to = self.visit(Control::Sim(target, rec.clone()));
                    let scan = self.scan(0, t.read.as_ref().map(|r| r.as_str()));
                    let moves = self.moves(0, true);
                    let push: Vec<String> = t.push.iter().map(|p| p.0.clone()).collect();
                    let marked_top = self.marked[top].clone();
                    self.row(&from, scan.clone(), vec![], top, to.clone(), moves.clone(), push.clone());
                    self.row(&from, scan, vec![], &marked_top, to, moves, push);
                }
                for j in 1..self.k {
                    let to = self.visit(Control::Replay { j, q, rec: rec.clone(), s: rec[j - 1] });
                    let segment_bottom = self.marked[spec.components[j].bottom.as_str()].clone();
                    let (scan, moves) = (self.scan(0, None), self.moves(0, false));
                    let query = self.queries[j];
                    self.row(&from, scan, vec![], query, to, moves, vec![segment_bottom]);
                }
                if self.finals[0][q] {
                    let to = self.visit(self.after_finish(0, &rec));
                    self.any_top(&from, Some(0), vec![], to);
                }
            }
            Control::Replay { j, q, rec, s } => {
                let mut done = rec.clone();
                done[j - 1] = s;
                let to = self.visit(Control::Sim(q, done));
                self.any_top(&from, None, vec![HeadGuard::eq(1, j + 1)], to);
                let next = |s2| Control::Replay { j, q, rec: rec.clone(), s: s2 };
                self.component_steps(&from, j, s, vec![HeadGuard::ne(1, j + 1)], &next, &|_| None);
            }
            Control::EndStart { j, rec } => {
                let to = self.visit(Control::EndRun { j, s: rec[j - 1], rec: rec.clone() });
                let segment_bottom = self.marked[spec.components[j].bottom.as_str()].clone();
                for top in self.gamma.clone() {
                    let (scan, moves) = (self.scan(0, None), self.moves(0, false));
                    self.row(&from, scan, vec![], &top, to.clone(), moves, vec![segment_bottom.clone(), top.clone()]);
                }
            }
            Control::EndRun { j, s, rec } => {
                if self.finals[j][s] {
                    let to = self.visit(self.after_finish(j, &rec));
                    self.any_top(&from, Some(j), vec![], to);
                }
                let finals = self.finals[j].clone();
                let next = |s2| Control::EndRun { j, s: s2, rec: rec.clone() };
                let empty = |s2: usize| finals[s2].then(|| Control::EndEmpty { j, s: s2, rec: rec.clone() });
                self.component_steps(&from, j, s, vec![], &next, &empty);
            }
            Control::EndEmpty { j, rec, .. } => {
                let to = self.visit(self.after_finish(j, &rec));
                self.any_top(&from, Some(j), vec![], to);
            }
            Control::Accept => {}
        }
    }
}

/// Builds a `k`-head sensing PDA accepting the language of the synchronized system `spec`.
///
/// Fails with [`Error::Invalid`] on an invalid system and with [`Error::Precondition`] when
/// some transition reads the empty word.
pub fn compile_sync_pcpa_to_mhpda(spec: &PcpaSpec) -> Result<SyncCompilation> {
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    if !spec.is_epsilon_free() {
        return Err(Error::Precondition(
            "every transition must read an input symbol (system is not synchronized)".to_string(),
        ));
    }
    let k = spec.degree;
    let mut taken: HashSet<String> =
        spec.stack_alphabet.iter().chain(&spec.input_alphabet).map(|s| s.0.clone()).collect();
    let bot = fresh("⊥".to_string(), &mut taken);
    let end_marker = fresh("$".to_string(), &mut taken);
    let queries: Vec<&str> = spec.query_symbols.iter().map(|s| s.as_str()).collect();
    let plain: Vec<&str> =
        spec.stack_alphabet.iter().map(|s| s.as_str()).filter(|s| !queries.contains(s)).collect();
    let marked: HashMap<&str, String> =
        plain.iter().map(|&x| (x, fresh(format!("[{x}]"), &mut taken))).collect();
    let mut gamma: Vec<String> = vec![bot.clone()];
    gamma.extend(spec.stack_alphabet.iter().map(|s| s.0.clone()));
    gamma.extend(plain.iter().map(|x| marked[x].clone()));

    let index: Vec<HashMap<&str, usize>> = spec
        .components
        .iter()
        .map(|c| c.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect())
        .collect();
    let finals = spec
        .components
        .iter()
        .zip(&index)
        .map(|(c, idx)| {
            let mut f = vec![false; c.states.len()];
            for s in &c.finals {
                f[idx[s.as_str()]] = true;
            }
            f
        })
        .collect();

    let mut g = Generator {
        spec,
        names: Names { spec },
        k,
        index,
        finals,
        queries,
        marked,
        gamma,
        end_marker,
        seen: HashSet::new(),
        queue: VecDeque::new(),
        notes: Vec::new(),
        rows: Vec::new(),
    };
    let start = g.visit(Control::Init);
    while let Some(c) = g.queue.pop_front() {
        g.expand(c);
    }

    let input: Vec<&str> = spec.input_alphabet.iter().map(|s| s.as_str()).collect();
    let gamma_refs: Vec<&str> = g.gamma.iter().map(String::as_str).collect();
    let mut b = MhBuilder::new(k, k > 1, &input, &g.end_marker, &gamma_refs, &bot);
    b.initial(&start);
    for n in &g.notes {
        b.state(&n.state);
    }
    if g.seen.contains(&Control::Accept) {
        b.final_state(&g.names.control(&Control::Accept));
    }
    for r in &g.rows {
        let scan: Vec<Option<&str>> = r.scan.iter().map(|s| s.as_deref()).collect();
        let push: Vec<&str> = r.push.iter().map(String::as_str).collect();
        b.rule(&r.from, &scan, &r.guard, &r.top, &r.to, &r.moves, &push);
    }
    Ok(SyncCompilation { mhpda: b.finish(), map: CompilationMap { notes: g.notes } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fixtures;
    use crate::constructions::build_power_of_two_pcpa;

    #[test]
    fn compiles_fixtures_to_valid_machines() {
        for spec in [fixtures::palindrome_pcpa(), fixtures::anbn_pcpa()] {
            let out = compile_sync_pcpa_to_mhpda(&spec).unwrap();
            assert!(out.mhpda.validate().is_empty(), "{:?}", out.mhpda.validate());
            assert_eq!(out.mhpda.heads, spec.degree);
        }
    }

    #[test]
    fn refuses_epsilon_moves() {
        let mut spec = fixtures::palindrome_pcpa();
        spec.components[1].transitions[0].read = None;
        assert!(matches!(compile_sync_pcpa_to_mhpda(&spec), Err(Error::Precondition(_))));
    }

    #[test]
    fn power_of_two_system_is_synchronized() {
        assert!(compile_sync_pcpa_to_mhpda(&build_power_of_two_pcpa()).is_ok());
    }
}
