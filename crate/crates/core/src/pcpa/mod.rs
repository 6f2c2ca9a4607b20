//! Parallel communicating systems of pushdown automata in returning mode.
//!
//! A system of degree `k` runs `k` pushdown components in lockstep over one shared input.
//! Internal steps move every component at once; when a query symbol `K_j` surfaces on some
//! store, a communication step copies component `j`'s whole store in its place and resets
//! component `j` to its bottom symbol.

mod machine;
mod spec;

pub use machine::{ComponentConfig, Configuration, Pcpa, PcpaRun, StepKind};
pub use spec::{ComponentSpec, PcpaSpec, PcpaTransition};
