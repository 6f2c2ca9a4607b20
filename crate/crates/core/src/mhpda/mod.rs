//! One-way multi-head pushdown automata with a right end-marker and optional sensing heads.
//!
//! All heads start on the first input cell and only move right. A transition inspects the
//! symbol under every head (a `None` scan matches anything, including the end-marker), an
//! optional set of head-coincidence guards when the heads are sensing, and the stack top.
//! Acceptance is by final state alone; machines check the end-marker themselves.

mod machine;
mod spec;

pub use machine::{MhConfiguration, Mhpda, MhpdaRun};
pub use spec::{HeadGuard, HeadMove, MhTransition, MhpdaSpec, Relation};
