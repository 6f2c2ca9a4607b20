use std::collections::HashMap;

use super::spec::{HeadGuard, HeadMove, MhpdaSpec, Relation};
use crate::error::{Error, Result};
use crate::search::{self, SearchBudget, StepSystem, Trace, TraceEnd, Verdict};
use crate::stack::Stack;
use crate::symbol::{encode_word, render_string, split_word, Sym, SymbolTable};

/// State, head positions and store. Positions are 0-based; position `n` scans the end-marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MhConfiguration {
    pub state: u32,
    pub heads: Vec<usize>,
    pub stack: Stack,
}

#[derive(Debug, Clone)]
struct Rule {
    index: usize,
    scan: Vec<Option<Sym>>,
    guard: Vec<HeadGuard>,
    advance: Vec<bool>,
    to: u32,
    push: Vec<Sym>,
}

#[derive(Debug, Clone)]
pub struct Mhpda {
    spec: MhpdaSpec,
    symbols: SymbolTable,
    input: Vec<Sym>,
    end_marker: Sym,
    initial: u32,
    bottom: Sym,
    finals: Vec<bool>,
    rules: HashMap<(u32, Sym), Vec<Rule>>,
}

impl Mhpda {
    pub fn new(spec: MhpdaSpec) -> Result<Self> {
        let violations = spec.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let mut symbols = SymbolTable::new();
        let input = spec.input_alphabet.iter().map(|s| symbols.intern(s.as_str())).collect();
        let end_marker = symbols.intern(spec.end_marker.as_str());
        for s in &spec.stack_alphabet {
            symbols.intern(s.as_str());
        }
        let index: HashMap<&str, u32> =
            spec.states.iter().enumerate().map(|(i, s)| (s.as_str(), i as u32)).collect();
        let mut rules: HashMap<(u32, Sym), Vec<Rule>> = HashMap::new();
        for (i, t) in spec.transitions.iter().enumerate() {
            let key = (index[t.from.as_str()], symbols.intern(t.top.as_str()));
            let rule = Rule {
                index: i,
                scan: t.scan.iter().map(|s| s.as_ref().map(|s| symbols.intern(s.as_str()))).collect(),
                guard: t.guard.iter().map(|g| HeadGuard { heads: [g.heads[0] - 1, g.heads[1] - 1], ..*g }).collect(),
                advance: t.moves.iter().map(|m| *m == HeadMove::Advance).collect(),
                to: index[t.to.as_str()],
                push: t.push.iter().map(|p| symbols.intern(p.as_str())).collect(),
            };
            rules.entry(key).or_default().push(rule);
        }
        let mut finals = vec![false; spec.states.len()];
        for f in &spec.finals {
            finals[index[f.as_str()] as usize] = true;
        }
        Ok(Mhpda {
            initial: index[spec.initial.as_str()],
            bottom: symbols.intern(spec.bottom.as_str()),
            spec,
            symbols,
            input,
            end_marker,
            finals,
            rules,
        })
    }

    pub fn spec(&self) -> &MhpdaSpec {
        &self.spec
    }

    pub fn heads(&self) -> usize {
        self.spec.heads
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn sym(&self, name: &str) -> Option<Sym> {
        self.symbols.get(name)
    }

    pub fn state_name(&self, state: u32) -> &str {
        &self.spec.states[state as usize]
    }

    pub fn state_index(&self, name: &str) -> Option<u32> {
        self.spec.states.iter().position(|s| s == name).map(|i| i as u32)
    }

    pub fn encode_word<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Sym>> {
        encode_word(&self.symbols, &self.input, names)
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<Sym>> {
        self.encode_word(&split_word(text))
    }

    pub fn initial_configuration(&self) -> MhConfiguration {
        MhConfiguration {
            state: self.initial,
            heads: vec![0; self.spec.heads],
            stack: Stack::with_bottom(self.bottom),
        }
    }

    fn cell(&self, word: &[Sym], pos: usize) -> Sym {
        word.get(pos).copied().unwrap_or(self.end_marker)
    }

    /// Successors paired with the index of the transition that produced them, in declaration order.
    pub fn successors(&self, word: &[Sym], c: &MhConfiguration) -> Vec<(MhConfiguration, usize)> {
        let Some(top) = c.stack.top() else {
            return Vec::new();
        };
        let Some(rules) = self.rules.get(&(c.state, top)) else {
            return Vec::new();
        };
        rules
            .iter()
            .filter(|r| {
                r.scan
                    .iter()
                    .zip(&c.heads)
                    .all(|(s, &p)| s.map_or(true, |s| s == self.cell(word, p)))
                    && r.guard.iter().all(|g| {
                        let same = c.heads[g.heads[0]] == c.heads[g.heads[1]];
                        same == (g.relation == Relation::Eq)
                    })
            })
            .map(|r| {
                let mut stack = c.stack.clone();
                stack.pop();
                stack.push_top_first(&r.push);
                let heads = c
                    .heads
                    .iter()
                    .zip(&r.advance)
                    .map(|(&p, &adv)| p + usize::from(adv))
                    .collect();
                (MhConfiguration { state: r.to, heads, stack }, r.index)
            })
            .collect()
    }

    pub fn is_accepting(&self, c: &MhConfiguration) -> bool {
        self.finals[c.state as usize]
    }

    pub fn run<'a>(&'a self, word: &'a [Sym]) -> MhpdaRun<'a> {
        MhpdaRun { machine: self, word }
    }

    pub fn decide(&self, word: &[Sym], budget: SearchBudget) -> Verdict<MhConfiguration, usize> {
        search::decide(&self.run(word), budget)
    }

    pub fn trace_run(&self, word: &[Sym], max_steps: usize) -> (Trace<MhConfiguration, usize>, TraceEnd) {
        search::trace_run(&self.run(word), max_steps)
    }

    /// `(state, (p1, ..., pk), α)` with 1-based positions; position `n+1` is the end-marker.
    pub fn render_configuration(&self, c: &MhConfiguration) -> String {
        let heads: Vec<String> = c.heads.iter().map(|p| (p + 1).to_string()).collect();
        format!(
            "({}, ({}), {})",
            self.state_name(c.state),
            heads.join(", "),
            render_string(&self.symbols, c.stack.top_first())
        )
    }

    pub fn render_trace(&self, trace: &Trace<MhConfiguration, usize>) -> String {
        trace.configs().map(|c| self.render_configuration(c) + "\n").collect()
    }
}

pub struct MhpdaRun<'a> {
    pub machine: &'a Mhpda,
    pub word: &'a [Sym],
}

impl StepSystem for MhpdaRun<'_> {
    type Config = MhConfiguration;
    type Step = usize;

    fn initial(&self) -> MhConfiguration {
        self.machine.initial_configuration()
    }

    fn successors(&self, c: &MhConfiguration) -> Vec<(MhConfiguration, usize)> {
        self.machine.successors(self.word, c)
    }

    fn is_accepting(&self, c: &MhConfiguration) -> bool {
        self.machine.is_accepting(c)
    }
}
