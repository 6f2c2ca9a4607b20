use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::spec::PcpaSpec;
use crate::error::{Error, Result};
use crate::search::{self, SearchBudget, StepSystem, Trace, TraceEnd, Verdict};
use crate::stack::Stack;
use crate::symbol::{encode_word, render_string, split_word, Sym, SymbolTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Internal,
    Communication,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentConfig {
    /// Index into the component's `states`.
    pub state: u32,
    /// Number of input symbols this component has read.
    pub consumed: usize,
    pub stack: Stack,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub components: Vec<ComponentConfig>,
}

#[derive(Debug, Clone)]
struct Rule {
    read: Option<Sym>,
    to: u32,
    push: Vec<Sym>,
}

#[derive(Debug, Clone)]
struct Component {
    states: Vec<String>,
    initial: u32,
    bottom: Sym,
    finals: Vec<bool>,
    /// Rules keyed by `(state, top)`, each list in declaration order.
    rules: HashMap<(u32, Sym), Vec<Rule>>,
}

/// A validated PCPA with interned symbols and indexed transition tables.
#[derive(Debug, Clone)]
pub struct Pcpa {
    spec: PcpaSpec,
    symbols: SymbolTable,
    input: Vec<Sym>,
    queries: Vec<Sym>,
    components: Vec<Component>,
}

impl Pcpa {
    pub fn new(spec: PcpaSpec) -> Result<Self> {
        let violations = spec.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let mut symbols = SymbolTable::new();
        let input = spec.input_alphabet.iter().map(|s| symbols.intern(s.as_str())).collect();
        for s in &spec.stack_alphabet {
            symbols.intern(s.as_str());
        }
        let queries = spec.query_symbols.iter().map(|s| symbols.intern(s.as_str())).collect();
        let components = spec
            .components
            .iter()
            .map(|c| {
                let index: HashMap<&str, u32> =
                    c.states.iter().enumerate().map(|(i, s)| (s.as_str(), i as u32)).collect();
                let mut rules: HashMap<(u32, Sym), Vec<Rule>> = HashMap::new();
                for t in &c.transitions {
                    let key = (index[t.from.as_str()], symbols.intern(t.top.as_str()));
                    rules.entry(key).or_default().push(Rule {
                        read: t.read.as_ref().map(|r| symbols.intern(r.as_str())),
                        to: index[t.to.as_str()],
                        push: t.push.iter().map(|p| symbols.intern(p.as_str())).collect(),
                    });
                }
                let mut finals = vec![false; c.states.len()];
                for f in &c.finals {
                    finals[index[f.as_str()] as usize] = true;
                }
                Component {
                    states: c.states.clone(),
                    initial: index[c.initial.as_str()],
                    bottom: symbols.intern(c.bottom.as_str()),
                    finals,
                    rules,
                }
            })
            .collect();
        Ok(Pcpa { spec, symbols, input, queries, components })
    }

    pub fn spec(&self) -> &PcpaSpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.components.len()
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn sym(&self, name: &str) -> Option<Sym> {
        self.symbols.get(name)
    }

    /// Index of the component whose query symbol is `sym`.
    pub fn query_target(&self, sym: Sym) -> Option<usize> {
        self.queries.iter().position(|&q| q == sym)
    }

    pub fn state_name(&self, component: usize, state: u32) -> &str {
        &self.components[component].states[state as usize]
    }

    pub fn state_index(&self, component: usize, name: &str) -> Option<u32> {
        self.components[component].states.iter().position(|s| s == name).map(|i| i as u32)
    }

    pub fn bottom(&self, component: usize) -> Sym {
        self.components[component].bottom
    }

    pub fn encode_word<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Sym>> {
        encode_word(&self.symbols, &self.input, names)
    }

    /// Parses textual input (see [`split_word`]) against the input alphabet.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Sym>> {
        self.encode_word(&split_word(text))
    }

    pub fn initial_configuration(&self) -> Configuration {
        Configuration {
            components: self
                .components
                .iter()
                .map(|c| ComponentConfig {
                    state: c.initial,
                    consumed: 0,
                    stack: Stack::with_bottom(c.bottom),
                })
                .collect(),
        }
    }

    /// All successors under the returning-mode step relation, internal steps listed in
    /// lexicographic order of per-component transition choices (component 1 most significant).
    pub fn successors(&self, word: &[Sym], c: &Configuration) -> Vec<(Configuration, StepKind)> {
        let mut tops = Vec::with_capacity(c.components.len());
        for comp in &c.components {
            match comp.stack.top() {
                Some(t) => tops.push(t),
                None => return Vec::new(),
            }
        }
        if tops.iter().any(|&t| self.query_target(t).is_some()) {
            return self.communication(c, &tops).into_iter().collect();
        }
        self.internal(word, c, &tops)
    }

    fn communication(&self, c: &Configuration, tops: &[Sym]) -> Option<(Configuration, StepKind)> {
        let resolved: Vec<(usize, usize)> = tops
            .iter()
            .enumerate()
            .filter_map(|(i, &t)| {
                let j = self.query_target(t)?;
                (self.query_target(tops[j]).is_none()).then_some((i, j))
            })
            .collect();
        if resolved.is_empty() {
            return None;
        }
        let mut next = c.clone();
        for &(i, j) in &resolved {
            // Receiver keeps everything below the query symbol; the sender's store goes on top.
            let mut stack = c.components[i].stack.clone();
            stack.pop();
            stack.push_stack(&c.components[j].stack);
            next.components[i].stack = stack;
        }
        for &(_, j) in &resolved {
            next.components[j].stack = Stack::with_bottom(self.components[j].bottom);
        }
        Some((next, StepKind::Communication))
    }

    fn internal(
        &self,
        word: &[Sym],
        c: &Configuration,
        tops: &[Sym],
    ) -> Vec<(Configuration, StepKind)> {
        let mut choices: Vec<Vec<&Rule>> = Vec::with_capacity(c.components.len());
        for (i, comp) in c.components.iter().enumerate() {
            let next_input = word.get(comp.consumed).copied();
            let applicable: Vec<&Rule> = self.components[i]
                .rules
                .get(&(comp.state, tops[i]))
                .map(|rs| {
                    rs.iter()
                        .filter(|r| r.read.is_none() || r.read == next_input)
                        .collect()
                })
                .unwrap_or_default();
            if applicable.is_empty() {
                return Vec::new();
            }
            choices.push(applicable);
        }
        let mut out = Vec::new();
        let mut pick = vec![0usize; choices.len()];
        loop {
            let components = c
                .components
                .iter()
                .zip(&pick)
                .enumerate()
                .map(|(i, (comp, &p))| {
                    let rule = choices[i][p];
                    let mut stack = comp.stack.clone();
                    stack.pop();
                    stack.push_top_first(&rule.push);
                    ComponentConfig {
                        state: rule.to,
                        consumed: comp.consumed + usize::from(rule.read.is_some()),
                        stack,
                    }
                })
                .collect();
            out.push((Configuration { components }, StepKind::Internal));
            // Odometer increment, last component fastest.
            let mut i = pick.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    /// All components have read the whole word and sit in final states.
    pub fn is_accepting(&self, word: &[Sym], c: &Configuration) -> bool {
        c.components.iter().zip(&self.components).all(|(cc, comp)| {
            cc.consumed == word.len() && comp.finals[cc.state as usize]
        })
    }

    pub fn run<'a>(&'a self, word: &'a [Sym]) -> PcpaRun<'a> {
        PcpaRun { machine: self, word }
    }

    pub fn decide(&self, word: &[Sym], budget: SearchBudget) -> Verdict<Configuration, StepKind> {
        search::decide(&self.run(word), budget)
    }

    pub fn trace_run(
        &self,
        word: &[Sym],
        max_steps: usize,
    ) -> (Trace<Configuration, StepKind>, TraceEnd) {
        search::trace_run(&self.run(word), max_steps)
    }

    /// `(s1, x1, α1, ..., sk, xk, αk)` with unread input and top-first stores, `ε` for empty.
    pub fn render_configuration(&self, word: &[Sym], c: &Configuration) -> String {
        let parts: Vec<String> = c
            .components
            .iter()
            .enumerate()
            .flat_map(|(i, cc)| {
                [
                    self.state_name(i, cc.state).to_string(),
                    render_string(&self.symbols, word[cc.consumed.min(word.len())..].iter().copied()),
                    render_string(&self.symbols, cc.stack.top_first()),
                ]
            })
            .collect();
        format!("({})", parts.join(", "))
    }

    /// One rendered configuration per line, each terminated by a newline.
    pub fn render_trace(&self, word: &[Sym], trace: &Trace<Configuration, StepKind>) -> String {
        trace
            .configs()
            .map(|c| self.render_configuration(word, c) + "\n")
            .collect()
    }
}

/// A [`Pcpa`] bound to an input word.
pub struct PcpaRun<'a> {
    pub machine: &'a Pcpa,
    pub word: &'a [Sym],
}

impl StepSystem for PcpaRun<'_> {
    type Config = Configuration;
    type Step = StepKind;

    fn initial(&self) -> Configuration {
        self.machine.initial_configuration()
    }

    fn successors(&self, c: &Configuration) -> Vec<(Configuration, StepKind)> {
        self.machine.successors(self.word, c)
    }

    fn is_accepting(&self, c: &Configuration) -> bool {
        self.machine.is_accepting(self.word, c)
    }
}
