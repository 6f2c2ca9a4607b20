//! Inputs shared by the criterion benches.

use pcpa_core::constructions::{compile_rm_to_pcpa, compile_sync_pcpa_to_mhpda, fixtures};
use pcpa_core::{Mhpda, Pcpa, SearchBudget};

/// Budget large enough for compiled register machines on short words.
pub const COMPILED_BUDGET: SearchBudget = SearchBudget { max_depth: 1_000_000, max_configs: 5_000_000 };

pub fn unary(n: usize) -> String {
    "a".repeat(n)
}

pub fn compiled_doubling_program() -> Pcpa {
    Pcpa::new(compile_rm_to_pcpa(&fixtures::doubling_program()).expect("fixture is valid").pcpa)
        .expect("compiler output is valid")
}

pub fn compiled_palindrome() -> Mhpda {
    Mhpda::new(compile_sync_pcpa_to_mhpda(&fixtures::palindrome_pcpa()).expect("fixture is synchronized").mhpda)
        .expect("compiler output is valid")
}
