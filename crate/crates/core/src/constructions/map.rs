use serde::{Deserialize, Serialize};

/// Source annotation for every state of a generated machine.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompilationMap {
    pub notes: Vec<StateNote>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateNote {
    /// 1-based component index for PCPA output; always 1 for multi-head output.
    pub component: usize,
    pub state: String,
    /// What the state simulates (program label, source component/state).
    pub source: String,
    pub phase: String,
    /// Instruction-boundary states, where the register invariant is checked.
    #[serde(default)]
    pub boundary: bool,
}

impl CompilationMap {
    pub fn note(&self, component: usize, state: &str) -> Option<&StateNote> {
        self.notes.iter().find(|n| n.component == component && n.state == state)
    }
}
