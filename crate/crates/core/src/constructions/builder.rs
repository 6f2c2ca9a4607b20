use std::collections::HashSet;

use crate::mhpda::{HeadGuard, HeadMove, MhTransition, MhpdaSpec};
use crate::symbol::Symbol;

/// Incremental construction of an [`MhpdaSpec`]; states are registered in first-use order.
pub(crate) struct MhBuilder {
    pub spec: MhpdaSpec,
    seen: HashSet<String>,
}

impl MhBuilder {
    pub fn new(heads: usize, sensing: bool, input: &[&str], end_marker: &str, stack: &[&str], bottom: &str) -> Self {
        MhBuilder {
            spec: MhpdaSpec {
                states: Vec::new(),
                input_alphabet: input.iter().map(|s| Symbol::from(*s)).collect(),
                end_marker: Symbol::from(end_marker),
                stack_alphabet: stack.iter().map(|s| Symbol::from(*s)).collect(),
                heads,
                sensing,
                initial: String::new(),
                bottom: Symbol::from(bottom),
                finals: Vec::new(),
                transitions: Vec::new(),
            },
            seen: HashSet::new(),
        }
    }

    pub fn state(&mut self, name: &str) {
        if self.seen.insert(name.to_string()) {
            self.spec.states.push(name.to_string());
        }
    }

    pub fn initial(&mut self, name: &str) {
        self.state(name);
        self.spec.initial = name.to_string();
    }

    pub fn final_state(&mut self, name: &str) {
        self.state(name);
        self.spec.finals.push(name.to_string());
    }

    #[allow(clippy::too_many_arguments)]
    pub fn rule(
        &mut self,
        from: &str,
        scan: &[Option<&str>],
        guard: &[HeadGuard],
        top: &str,
        to: &str,
        moves: &[HeadMove],
        push: &[&str],
    ) {
        self.state(from);
        self.state(to);
        self.spec.transitions.push(MhTransition {
            from: from.to_string(),
            scan: scan.iter().map(|s| s.map(Symbol::from)).collect(),
            guard: guard.to_vec(),
            top: Symbol::from(top),
            to: to.to_string(),
            moves: moves.to_vec(),
            push: push.iter().map(|s| Symbol::from(*s)).collect(),
        });
    }

    pub fn finish(self) -> MhpdaSpec {
        self.spec
    }
}
