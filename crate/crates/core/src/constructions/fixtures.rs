//! Test machines that do not come from the literature: synchronous PCPA fixtures for the
//! multi-head compiler and register-machine programs for the register compiler.

use crate::pcpa::{ComponentSpec, PcpaSpec, PcpaTransition};
use crate::regmachine::{Instruction, RmProgram};
use crate::symbol::Symbol;

fn syms(names: &[&str]) -> Vec<Symbol> {
    names.iter().map(|s| Symbol::from(*s)).collect()
}

/// Degree-2 system without epsilon reads accepting even palindromes `{ u u^R | u ≠ ε }`.
///
/// Component 2 pushes every symbol it reads, marking the first one after each reset.
/// Component 1 guesses the midpoint, queries component 2 in the same step, and matches the
/// copied store against the rest of the input; consuming the marked symbol finishes.
pub fn palindrome_pcpa() -> PcpaSpec {
    let t = PcpaTransition::new;
    let mut first = vec![];
    let mut second = vec![];
    for (s, plain, marked) in [("a", "A", "A0"), ("b", "B", "B0")] {
        first.push(t("guess", Some(s), "Z_1", "guess", &["Z_1"]));
        first.push(t("guess", Some(s), "Z_1", "match", &["K_2", "Z_1"]));
        first.push(t("match", Some(s), plain, "match", &[]));
        first.push(t("match", Some(s), marked, "done", &[]));
        second.push(t("copy", Some(s), "Z_2", "copy", &[marked, "Z_2"]));
        for below in ["A", "B", "A0", "B0"] {
            second.push(t("copy", Some(s), below, "copy", &[plain, below]));
        }
    }
    PcpaSpec {
        degree: 2,
        input_alphabet: syms(&["a", "b"]),
        stack_alphabet: syms(&["Z_1", "Z_2", "A", "B", "A0", "B0", "K_1", "K_2"]),
        query_symbols: syms(&["K_1", "K_2"]),
        components: vec![
            ComponentSpec {
                states: vec!["guess".into(), "match".into(), "done".into()],
                initial: "guess".into(),
                bottom: Symbol::from("Z_1"),
                finals: vec!["done".into()],
                transitions: first,
            },
            ComponentSpec {
                states: vec!["copy".into()],
                initial: "copy".into(),
                bottom: Symbol::from("Z_2"),
                finals: vec!["copy".into()],
                transitions: second,
            },
        ],
    }
}

/// Degree-1 system without epsilon reads accepting `{ a^n b^n | n ≥ 1 }`.
pub fn anbn_pcpa() -> PcpaSpec {
    let t = PcpaTransition::new;
    PcpaSpec {
        degree: 1,
        input_alphabet: syms(&["a", "b"]),
        stack_alphabet: syms(&["Z", "A", "A0", "K_1"]),
        query_symbols: syms(&["K_1"]),
        components: vec![ComponentSpec {
            states: vec!["s".into(), "t".into(), "f".into()],
            initial: "s".into(),
            bottom: Symbol::from("Z"),
            finals: vec!["f".into()],
            transitions: vec![
                t("s", Some("a"), "Z", "s", &["A0", "Z"]),
                t("s", Some("a"), "A", "s", &["A", "A"]),
                t("s", Some("a"), "A0", "s", &["A", "A0"]),
                t("s", Some("b"), "A", "t", &[]),
                t("s", Some("b"), "A0", "f", &[]),
                t("t", Some("b"), "A", "t", &[]),
                t("t", Some("b"), "A0", "f", &[]),
            ],
        }],
    }
}

fn program(entry: &str, input: &[&str], ins: Vec<(&str, Instruction)>) -> RmProgram {
    RmProgram {
        entry: entry.to_string(),
        input_alphabet: syms(input),
        instructions: ins.into_iter().map(|(l, i)| (l.to_string(), i)).collect(),
    }
}

fn read(branch: &[(&str, &str)], at_end: &str) -> Instruction {
    Instruction::Read {
        branch: branch.iter().map(|(s, l)| (Symbol::from(*s), l.to_string())).collect(),
        at_end: at_end.to_string(),
    }
}

fn divmod(by: u8, branch: &[&str]) -> Instruction {
    Instruction::Divmod { by, branch: branch.iter().map(|s| s.to_string()).collect() }
}

/// Two alternating READ labels: accepts `a^n` for even `n`.
pub fn parity_program() -> RmProgram {
    program(
        "even",
        &["a"],
        vec![
            ("even", read(&[("a", "odd")], "acc")),
            ("odd", read(&[("a", "even")], "rej")),
            ("acc", Instruction::Accept),
            ("rej", Instruction::Reject),
        ],
    )
}

/// Doubles the register per `a`, then halves it until the remainder is 1, tracking the
/// parity of the number of halvings in the labels: accepts `a^n` for even `n`.
pub fn doubling_program() -> RmProgram {
    program(
        "read",
        &["a"],
        vec![
            ("read", read(&[("a", "double")], "halve_even")),
            ("double", Instruction::Mul { by: 2, next: "read".into() }),
            ("halve_even", divmod(2, &["halve_odd", "acc"])),
            ("halve_odd", divmod(2, &["halve_even", "rej"])),
            ("acc", Instruction::Accept),
            ("rej", Instruction::Reject),
        ],
    )
}

/// Multiplies by 2 per `a` and by 3 per `b`, then divides out every factor 3 and branches
/// three ways on the remainder mod 3: accepts words with an even number of `a`s.
pub fn mod3_program() -> RmProgram {
    program(
        "read",
        &["a", "b"],
        vec![
            ("read", read(&[("a", "times2"), ("b", "times3")], "classify")),
            ("times2", Instruction::Mul { by: 2, next: "read".into() }),
            ("times3", Instruction::Mul { by: 3, next: "read".into() }),
            ("classify", divmod(3, &["classify", "acc", "rej"])),
            ("acc", Instruction::Accept),
            ("rej", Instruction::Reject),
        ],
    )
}

/// The single instruction ACCEPT.
pub fn accept_program() -> RmProgram {
    program("acc", &["a"], vec![("acc", Instruction::Accept)])
}
