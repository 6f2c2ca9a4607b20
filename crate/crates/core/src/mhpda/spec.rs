use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::symbol::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MhpdaSpec {
    pub states: Vec<String>,
    pub input_alphabet: Vec<Symbol>,
    pub end_marker: Symbol,
    pub stack_alphabet: Vec<Symbol>,
    pub heads: usize,
    pub sensing: bool,
    pub initial: String,
    pub bottom: Symbol,
    pub finals: Vec<String>,
    pub transitions: Vec<MhTransition>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeadMove {
    Stay,
    Advance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Ne,
}

/// Coincidence test between two heads, numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeadGuard {
    pub heads: [usize; 2],
    pub relation: Relation,
}

impl HeadGuard {
    pub fn eq(a: usize, b: usize) -> Self {
        HeadGuard { heads: [a, b], relation: Relation::Eq }
    }

    pub fn ne(a: usize, b: usize) -> Self {
        HeadGuard { heads: [a, b], relation: Relation::Ne }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MhTransition {
    pub from: String,
    /// Symbol required under each head; `None` matches any cell.
    pub scan: Vec<Option<Symbol>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub guard: Vec<HeadGuard>,
    pub top: Symbol,
    pub to: String,
    pub moves: Vec<HeadMove>,
    /// Replaces the top; index 0 becomes the new top.
    pub push: Vec<Symbol>,
}

impl MhpdaSpec {
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let k = self.heads;
        if k == 0 {
            out.push("machine has no heads".to_string());
        }
        let input: HashSet<&Symbol> = self.input_alphabet.iter().collect();
        let stack: HashSet<&Symbol> = self.stack_alphabet.iter().collect();
        let states: HashSet<&str> = self.states.iter().map(String::as_str).collect();
        for s in self
            .input_alphabet
            .iter()
            .chain(&self.stack_alphabet)
            .chain(std::iter::once(&self.end_marker))
        {
            if !s.is_well_formed() {
                out.push(format!("malformed symbol `{s}`"));
            }
        }
        if input.contains(&self.end_marker) {
            out.push(format!("end-marker `{}` is an input symbol", self.end_marker));
        }
        if states.len() != self.states.len() {
            out.push("duplicate state names".to_string());
        }
        if !states.contains(self.initial.as_str()) {
            out.push(format!("initial state `{}` is not a state", self.initial));
        }
        for f in &self.finals {
            if !states.contains(f.as_str()) {
                out.push(format!("final state `{f}` is not a state"));
            }
        }
        if !stack.contains(&self.bottom) {
            out.push(format!("bottom `{}` is not a stack symbol", self.bottom));
        }
        for (ti, t) in self.transitions.iter().enumerate() {
            let at = format!("transition {ti}");
            if !states.contains(t.from.as_str()) {
                out.push(format!("{at}: unknown source state `{}`", t.from));
            }
            if !states.contains(t.to.as_str()) {
                out.push(format!("{at}: unknown target state `{}`", t.to));
            }
            if t.scan.len() != k || t.moves.len() != k {
                out.push(format!("{at}: scan and move tuples must have {k} entries"));
                continue;
            }
            for (h, (scan, mv)) in t.scan.iter().zip(&t.moves).enumerate() {
                match scan {
                    Some(s) if *s != self.end_marker && !input.contains(s) => {
                        out.push(format!("{at}: head {} scans unknown symbol `{s}`", h + 1))
                    }
                    _ => {}
                }
                if *mv == HeadMove::Advance {
                    match scan {
                        Some(s) if *s == self.end_marker => out.push(format!(
                            "{at}: head {} advances past the end-marker",
                            h + 1
                        )),
                        None => out.push(format!(
                            "{at}: head {} advances without scanning a concrete input symbol",
                            h + 1
                        )),
                        _ => {}
                    }
                }
            }
            if !t.guard.is_empty() && !self.sensing {
                out.push(format!("{at}: coincidence guard on a non-sensing machine"));
            }
            for g in &t.guard {
                let [a, b] = g.heads;
                if a == 0 || b == 0 || a > k || b > k || a == b {
                    out.push(format!("{at}: guard names invalid head pair ({a}, {b})"));
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
        }
        out
    }
}
