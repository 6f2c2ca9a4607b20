//! One-register machines with an input tape.
//!
//! The register holds a positive integer, starts at 1 and is only changed by multiplying by
//! 2 or 3 or by dividing by 2 or 3 when the division is exact. `READ` branches on the next
//! input symbol or on the end of input; `ACCEPT` succeeds only once the input is consumed.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::{encode_word, split_word, Sym, Symbol, SymbolTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Instruction {
    Read { branch: BTreeMap<Symbol, String>, at_end: String },
    Mul { by: u8, next: String },
    /// `branch[r]` is taken for remainder `r`; the register is divided only when `r = 0`.
    Divmod { by: u8, branch: Vec<String> },
    Accept,
    Reject,
}

/// Serializable program: `{entry, input_alphabet, instructions: {label: {op, ...}}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RmProgram {
    pub entry: String,
    pub input_alphabet: Vec<Symbol>,
    pub instructions: BTreeMap<String, Instruction>,
}

impl RmProgram {
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let known = |l: &String| self.instructions.contains_key(l);
        if !known(&self.entry) {
            out.push(format!("entry label `{}` does not exist", self.entry));
        }
        for (label, ins) in &self.instructions {
            let mut targets: Vec<&String> = Vec::new();
            match ins {
                Instruction::Read { branch, at_end } => {
                    for (sym, t) in branch {
                        if !self.input_alphabet.contains(sym) {
                            out.push(format!("{label}: branch on `{sym}` outside the input alphabet"));
                        }
                        targets.push(t);
                    }
                    targets.push(at_end);
                }
                Instruction::Mul { by, next } => {
                    if !matches!(by, 2 | 3) {
                        out.push(format!("{label}: multiplier {by} is not 2 or 3"));
                    }
                    targets.push(next);
                }
                Instruction::Divmod { by, branch } => {
                    if !matches!(by, 2 | 3) {
                        out.push(format!("{label}: divisor {by} is not 2 or 3"));
                    } else if branch.len() != *by as usize {
                        out.push(format!("{label}: divmod by {by} needs {by} branches"));
                    }
                    targets.extend(branch);
                }
                Instruction::Accept | Instruction::Reject => {}
            }
            for t in targets {
                if !known(t) {
                    out.push(format!("{label}: jump to unknown label `{t}`"));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RmState {
    /// Index into [`RegisterMachine::labels`].
    pub pc: u32,
    pub register: u64,
    pub consumed: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepResult {
    Continue(RmState),
    Halt { accepted: bool },
    /// The register left the `u64` range.
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    Accepted,
    Rejected,
    Timeout,
}

#[derive(Debug, Clone)]
pub struct RmRun {
    pub outcome: RunOutcome,
    /// Every state visited, starting with the initial one.
    pub states: Vec<RmState>,
}

#[derive(Debug, Clone)]
enum Op {
    Read { branch: HashMap<Sym, u32>, at_end: u32 },
    Mul { by: u64, next: u32 },
    Divmod { by: u64, branch: Vec<u32> },
    Accept,
    Reject,
}

/// Validated program with resolved labels.
#[derive(Debug, Clone)]
pub struct RegisterMachine {
    program: RmProgram,
    symbols: SymbolTable,
    input: Vec<Sym>,
    labels: Vec<String>,
    ops: Vec<Op>,
    entry: u32,
}

impl RegisterMachine {
    pub fn new(program: RmProgram) -> Result<Self> {
        let violations = program.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let mut symbols = SymbolTable::new();
        let input = program.input_alphabet.iter().map(|s| symbols.intern(s.as_str())).collect();
        let labels: Vec<String> = program.instructions.keys().cloned().collect();
        let at = |l: &String| labels.iter().position(|x| x == l).unwrap() as u32;
        let ops = program
            .instructions
            .values()
            .map(|ins| match ins {
                Instruction::Read { branch, at_end } => Op::Read {
                    branch: branch
                        .iter()
                        .map(|(s, t)| (symbols.get(s.as_str()).unwrap(), at(t)))
                        .collect(),
                    at_end: at(at_end),
                },
                Instruction::Mul { by, next } => Op::Mul { by: *by as u64, next: at(next) },
                Instruction::Divmod { by, branch } => {
                    Op::Divmod { by: *by as u64, branch: branch.iter().map(at).collect() }
                }
                Instruction::Accept => Op::Accept,
                Instruction::Reject => Op::Reject,
            })
            .collect();
        let entry = at(&program.entry);
        Ok(RegisterMachine { program, symbols, input, labels, ops, entry })
    }

    pub fn program(&self) -> &RmProgram {
        &self.program
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    pub fn instruction(&self, pc: u32) -> &Instruction {
        &self.program.instructions[&self.labels[pc as usize]]
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn encode_word<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Sym>> {
        encode_word(&self.symbols, &self.input, names)
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<Sym>> {
        self.encode_word(&split_word(text))
    }

    pub fn initial_state(&self) -> RmState {
        RmState { pc: self.entry, register: 1, consumed: 0 }
    }

    pub fn step(&self, word: &[Sym], s: &RmState) -> StepResult {
        let next = |pc: u32, register: u64, consumed: usize| {
            StepResult::Continue(RmState { pc, register, consumed })
        };
        match &self.ops[s.pc as usize] {
            Op::Read { branch, at_end } => match word.get(s.consumed) {
                None => next(*at_end, s.register, s.consumed),
                Some(sym) => match branch.get(sym) {
                    Some(&t) => next(t, s.register, s.consumed + 1),
                    None => StepResult::Halt { accepted: false },
                },
            },
            Op::Mul { by, next: t } => match s.register.checked_mul(*by) {
                Some(r) => next(*t, r, s.consumed),
                None => StepResult::Overflow,
            },
            Op::Divmod { by, branch } => {
                let rem = s.register % by;
                let register = if rem == 0 { s.register / by } else { s.register };
                next(branch[rem as usize], register, s.consumed)
            }
            Op::Accept => StepResult::Halt { accepted: s.consumed == word.len() },
            Op::Reject => StepResult::Halt { accepted: false },
        }
    }

    pub fn run(&self, word: &[Sym], max_steps: usize) -> RmRun {
        let mut states = vec![self.initial_state()];
        for _ in 0..max_steps {
            match self.step(word, states.last().unwrap()) {
                StepResult::Continue(s) => states.push(s),
                StepResult::Halt { accepted } => {
                    let outcome = if accepted { RunOutcome::Accepted } else { RunOutcome::Rejected };
                    return RmRun { outcome, states };
                }
                StepResult::Overflow => break,
            }
        }
        RmRun { outcome: RunOutcome::Timeout, states }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prog(entry: &str, ins: &[(&str, Instruction)]) -> RegisterMachine {
        RegisterMachine::new(RmProgram {
            entry: entry.to_string(),
            input_alphabet: vec![Symbol::from("a")],
            instructions: ins.iter().map(|(l, i)| (l.to_string(), i.clone())).collect(),
        })
        .unwrap()
    }

    fn at(m: &RegisterMachine, label: &str, register: u64) -> RmState {
        RmState { pc: m.label_index(label).unwrap(), register, consumed: 0 }
    }

    #[test]
    fn mul_and_divmod_steps() {
        let m = prog(
            "m",
            &[
                ("m", Instruction::Mul { by: 2, next: "acc".into() }),
                ("d3", Instruction::Divmod { by: 3, branch: vec!["r0".into(), "r1".into(), "r2".into()] }),
                ("d2", Instruction::Divmod { by: 2, branch: vec!["r0".into(), "r1".into()] }),
                ("r0", Instruction::Accept),
                ("r1", Instruction::Accept),
                ("r2", Instruction::Accept),
                ("acc", Instruction::Accept),
            ],
        );
        let StepResult::Continue(s) = m.step(&[], &at(&m, "m", 5)) else { panic!() };
        assert_eq!(s.register, 10);
        let StepResult::Continue(s) = m.step(&[], &at(&m, "d3", 7)) else { panic!() };
        assert_eq!((s.register, m.labels()[s.pc as usize].as_str()), (7, "r1"));
        let StepResult::Continue(s) = m.step(&[], &at(&m, "d2", 6)) else { panic!() };
        assert_eq!((s.register, m.labels()[s.pc as usize].as_str()), (3, "r0"));
    }

    #[test]
    fn accept_requires_consumed_input() {
        let m = prog("acc", &[("acc", Instruction::Accept)]);
        let a = m.parse_word("a").unwrap();
        assert_eq!(m.run(&[], 10).outcome, RunOutcome::Accepted);
        assert_eq!(m.run(&a, 10).outcome, RunOutcome::Rejected);
    }

    #[test]
    fn validation_catches_dangling_labels() {
        let p = RmProgram {
            entry: "x".into(),
            input_alphabet: vec![Symbol::from("a")],
            instructions: [
                ("y".to_string(), Instruction::Mul { by: 5, next: "nowhere".into() }),
                ("z".to_string(), Instruction::Divmod { by: 3, branch: vec!["y".into()] }),
            ]
            .into_iter()
            .collect(),
        };
        let v = p.validate();
        assert_eq!(v.len(), 4, "{v:?}");
        assert!(RegisterMachine::new(p).is_err());
    }

    #[test]
    fn loops_time_out() {
        let m = prog("l", &[("l", Instruction::Mul { by: 2, next: "d".into() }), ("d", Instruction::Divmod { by: 2, branch: vec!["l".into(), "l".into()] })]);
        let run = m.run(&[], 100);
        assert_eq!(run.outcome, RunOutcome::Timeout);
        assert!(run.states.iter().all(|s| s.register >= 1));
    }
}
