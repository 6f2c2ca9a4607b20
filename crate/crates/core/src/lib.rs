//! Parallel communicating pushdown automata in returning mode, multi-head pushdown automata,
//! one-register machines, constructions between them and a bounded-search workbench.

pub mod constructions;
pub mod error;
pub mod mhpda;
pub mod pcpa;
pub mod regmachine;
pub mod search;
pub mod stack;
pub mod symbol;
pub mod workbench;

pub use error::{Error, Result};
pub use mhpda::{HeadGuard, HeadMove, MhConfiguration, MhTransition, Mhpda, MhpdaSpec, Relation};
pub use pcpa::{ComponentConfig, ComponentSpec, Configuration, Pcpa, PcpaSpec, PcpaTransition, StepKind};
pub use regmachine::{Instruction, RegisterMachine, RmProgram, RunOutcome};
pub use search::{Outcome, SearchBudget, Trace, TraceEnd, Verdict};
pub use stack::Stack;
pub use symbol::{Sym, Symbol, SymbolTable};
