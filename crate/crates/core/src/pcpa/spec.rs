use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::symbol::Symbol;

/// Serializable description of a PCPA, as stored in machine files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcpaSpec {
    pub degree: usize,
    pub input_alphabet: Vec<Symbol>,
    pub stack_alphabet: Vec<Symbol>,
    /// `K_1 .. K_k`, positional.
    pub query_symbols: Vec<Symbol>,
    pub components: Vec<ComponentSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub states: Vec<String>,
    pub initial: String,
    pub bottom: Symbol,
    pub finals: Vec<String>,
    pub transitions: Vec<PcpaTransition>,
}

/// `(from, read, top) -> (to, push)`; `push[0]` becomes the new top, `read: None` is an epsilon move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcpaTransition {
    pub from: String,
    pub read: Option<Symbol>,
    pub top: Symbol,
    pub to: String,
    pub push: Vec<Symbol>,
}

impl PcpaTransition {
    pub fn new(from: &str, read: Option<&str>, top: &str, to: &str, push: &[&str]) -> Self {
        PcpaTransition {
            from: from.to_string(),
            read: read.map(Symbol::from),
            top: Symbol::from(top),
            to: to.to_string(),
            push: push.iter().map(|s| Symbol::from(*s)).collect(),
        }
    }
}

impl PcpaSpec {
    /// Every violated structural invariant, one message each. Empty means valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let k = self.components.len();
        if k == 0 {
            out.push("system has no components".to_string());
        }
        if self.degree != k {
            out.push(format!("degree {} does not match {} components", self.degree, k));
        }
        for s in self.input_alphabet.iter().chain(&self.stack_alphabet) {
            if !s.is_well_formed() {
                out.push(format!("malformed symbol `{s}`"));
            }
        }
        let input: HashSet<&Symbol> = self.input_alphabet.iter().collect();
        let stack: HashSet<&Symbol> = self.stack_alphabet.iter().collect();
        if input.len() != self.input_alphabet.len() {
            out.push("input alphabet lists a symbol twice".to_string());
        }
        if stack.len() != self.stack_alphabet.len() {
            out.push("stack alphabet lists a symbol twice".to_string());
        }

        if self.query_symbols.len() != k {
            out.push(format!(
                "expected {} query symbols, found {}",
                k,
                self.query_symbols.len()
            ));
        }
        let queries: HashSet<&Symbol> = self.query_symbols.iter().collect();
        if queries.len() != self.query_symbols.len() {
            out.push("query symbols are not pairwise distinct".to_string());
        }
        for q in &self.query_symbols {
            if !stack.contains(q) {
                out.push(format!("query symbol `{q}` is not in the stack alphabet"));
            }
        }

        for (ci, comp) in self.components.iter().enumerate() {
            let n = ci + 1;
            let states: HashSet<&str> = comp.states.iter().map(String::as_str).collect();
            if states.len() != comp.states.len() {
                out.push(format!("component {n}: duplicate state names"));
            }
            if !states.contains(comp.initial.as_str()) {
                out.push(format!("component {n}: initial state `{}` is not a state", comp.initial));
            }
            for f in &comp.finals {
                if !states.contains(f.as_str()) {
                    out.push(format!("component {n}: final state `{f}` is not a state"));
                }
            }
            if !stack.contains(&comp.bottom) {
                out.push(format!("component {n}: bottom `{}` is not a stack symbol", comp.bottom));
            }
            if queries.contains(&comp.bottom) {
                out.push(format!("component {n}: bottom `{}` is a query symbol", comp.bottom));
            }
            for (ti, t) in comp.transitions.iter().enumerate() {
                let at = format!("component {n}, transition {ti}");
                if !states.contains(t.from.as_str()) {
                    out.push(format!("{at}: unknown source state `{}`", t.from));
                }
                if !states.contains(t.to.as_str()) {
                    out.push(format!("{at}: unknown target state `{}`", t.to));
                }
                if let Some(r) = &t.read {
                    if !input.contains(r) {
                        out.push(format!("{at}: reads `{r}` outside the input alphabet"));
                    }
                }
                if !stack.contains(&t.top) {
                    out.push(format!("{at}: top `{}` outside the stack alphabet", t.top));
                }
                for p in &t.push {
                    if !stack.contains(p) {
                        out.push(format!("{at}: pushes `{p}` outside the stack alphabet"));
                    }
                }
                if ci > 0 {
                    if let Some(q) = t.push.iter().find(|p| queries.contains(p)) {
                        out.push(format!(
                            "{at}: pushes query symbol `{q}` (system is not centralized)"
                        ));
                    }
                } else if let Some(k1) = self.query_symbols.first() {
                    if t.push.contains(k1) {
                        out.push(format!("{at}: component 1 pushes its own query symbol `{k1}`"));
                    }
                }
            }
        }
        out
    }

    /// True if no transition of any component reads the empty word.
    pub fn is_epsilon_free(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.transitions.iter().all(|t| t.read.is_some()))
    }
}
