//! Machine files, builtins, enumeration and bounded equivalence sweeps.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::constructions::{self, fixtures, CompilationMap, Oracle};
use crate::error::{Error, Result};
use crate::mhpda::{Mhpda, MhpdaSpec};
use crate::pcpa::{Pcpa, PcpaSpec};
use crate::regmachine::{RegisterMachine, RmProgram, RunOutcome};
use crate::search::{Outcome, SearchBudget, TraceEnd, Verdict};
use crate::symbol::{split_word, Symbol};

pub const BUILTINS: [&str; 4] = ["power-of-two-pcpa", "otto-2head", "doubling-2head", "palindrome-pcpa"];

/// Input word used by the golden trace.
pub const GOLDEN_LENGTH: usize = 8;

/// Steps followed by `trace_run` when no witness exists.
const TRACE_STEPS: usize = 10_000;

/// Any of the three machine models, as stored in a machine file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum MachineSpec {
    Pcpa(PcpaSpec),
    Mhpda(MhpdaSpec),
    Rm(RmProgram),
}

/// A machine file: the machine's own fields plus an optional `compilation_map` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineFile {
    pub machine: MachineSpec,
    pub compilation_map: Option<CompilationMap>,
}

impl MachineFile {
    pub fn new(machine: MachineSpec) -> Self {
        MachineFile { machine, compilation_map: None }
    }

    /// Detects the model by its distinguishing field: `components`, `heads` or `instructions`.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut value: Value = serde_json::from_str(text)?;
        let Some(obj) = value.as_object_mut() else {
            return Err(Error::Invalid(vec!["machine file must be a JSON object".to_string()]));
        };
        let compilation_map = match obj.remove("compilation_map") {
            Some(m) => Some(serde_json::from_value(m)?),
            None => None,
        };
        let machine = if obj.contains_key("components") {
            MachineSpec::Pcpa(serde_json::from_value(value)?)
        } else if obj.contains_key("heads") {
            MachineSpec::Mhpda(serde_json::from_value(value)?)
        } else if obj.contains_key("instructions") {
            MachineSpec::Rm(serde_json::from_value(value)?)
        } else {
            return Err(Error::Invalid(vec![
                "cannot tell the machine kind: expected `components`, `heads` or `instructions`"
                    .to_string(),
            ]));
        };
        Ok(MachineFile { machine, compilation_map })
    }

    pub fn to_json(&self) -> String {
        let mut value = serde_json::to_value(&self.machine).expect("specs serialize");
        if let (Some(map), Some(obj)) = (&self.compilation_map, value.as_object_mut()) {
            obj.insert("compilation_map".to_string(), serde_json::to_value(map).expect("map serializes"));
        }
        serde_json::to_string_pretty(&value).expect("json value serializes") + "\n"
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// The machines of the literature plus the palindrome fixture.
pub fn builtin(name: &str) -> Result<MachineFile> {
    let machine = match name {
        "power-of-two-pcpa" => MachineSpec::Pcpa(constructions::build_power_of_two_pcpa()),
        "otto-2head" => MachineSpec::Mhpda(constructions::build_otto_acceptor()),
        "doubling-2head" => MachineSpec::Mhpda(constructions::build_doubling_sensing_pda()),
        "palindrome-pcpa" => MachineSpec::Pcpa(fixtures::palindrome_pcpa()),
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    };
    Ok(MachineFile::new(machine))
}

/// `builtin:<name>` or a path to a machine file.
pub fn load_machine_file(reference: &str) -> Result<MachineFile> {
    match reference.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None => MachineFile::load(reference),
    }
}

/// A validated machine ready to decide words.
#[derive(Debug, Clone)]
pub enum Machine {
    Pcpa(Pcpa),
    Mhpda(Mhpda),
    Rm(RegisterMachine),
}

/// Verdict on one word, with a rendered trace when requested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub word: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<String>,
}

impl Machine {
    pub fn new(spec: MachineSpec) -> Result<Self> {
        Ok(match spec {
            MachineSpec::Pcpa(s) => Machine::Pcpa(Pcpa::new(s)?),
            MachineSpec::Mhpda(s) => Machine::Mhpda(Mhpda::new(s)?),
            MachineSpec::Rm(p) => Machine::Rm(RegisterMachine::new(p)?),
        })
    }

    pub fn load(reference: &str) -> Result<Self> {
        Self::new(load_machine_file(reference)?.machine)
    }

    pub fn input_alphabet(&self) -> Vec<Symbol> {
        match self {
            Machine::Pcpa(m) => m.spec().input_alphabet.clone(),
            Machine::Mhpda(m) => m.spec().input_alphabet.clone(),
            Machine::Rm(m) => m.program().input_alphabet.clone(),
        }
    }

    /// Decides `word` (symbol names). `None` uses the default budget for its length; a
    /// register machine gets `max_depth` interpreter steps.
    pub fn decide<S: AsRef<str>>(&self, word: &[S], budget: Option<SearchBudget>) -> Result<Outcome> {
        Ok(self.run(word, budget, false)?.outcome)
    }

    /// Like [`Machine::decide`], optionally rendering the accepting witness, or the
    /// first-successor run when there is none.
    pub fn run<S: AsRef<str>>(
        &self,
        word: &[S],
        budget: Option<SearchBudget>,
        with_trace: bool,
    ) -> Result<RunReport> {
        let budget = budget.unwrap_or_else(|| SearchBudget::for_length(word.len()));
        let names: Vec<&str> = word.iter().map(AsRef::as_ref).collect();
        let shown = render_word(&names);
        let (outcome, trace) = match self {
            Machine::Pcpa(m) => {
                let w = m.encode_word(&names)?;
                let verdict = m.decide(&w, budget);
                let trace = with_trace.then(|| match &verdict {
                    Verdict::Accepted(t) => m.render_trace(&w, t),
                    _ => m.render_trace(&w, &m.trace_run(&w, TRACE_STEPS).0),
                });
                (verdict.outcome(), trace)
            }
            Machine::Mhpda(m) => {
                let w = m.encode_word(&names)?;
                let verdict = m.decide(&w, budget);
                let trace = with_trace.then(|| match &verdict {
                    Verdict::Accepted(t) => m.render_trace(t),
                    _ => m.render_trace(&m.trace_run(&w, TRACE_STEPS).0),
                });
                (verdict.outcome(), trace)
            }
            Machine::Rm(m) => {
                let w = m.encode_word(&names)?;
                let run = m.run(&w, budget.max_depth);
                let outcome = match run.outcome {
                    RunOutcome::Accepted => Outcome::Accepted,
                    RunOutcome::Rejected => Outcome::Rejected,
                    RunOutcome::Timeout => Outcome::Inconclusive,
                };
                let trace = with_trace.then(|| {
                    run.states
                        .iter()
                        .map(|s| format!("({}, {}, {})\n", m.labels()[s.pc as usize], s.register, s.consumed))
                        .collect()
                });
                (outcome, trace)
            }
        };
        Ok(RunReport { word: shown, outcome, trace })
    }
}

/// Either side of an equivalence check.
pub enum Decider {
    Machine(Machine),
    Oracle(Oracle),
}

impl Decider {
    /// `oracle:<name>`, `builtin:<name>` or a machine file path.
    pub fn load(reference: &str) -> Result<Self> {
        if let Some(name) = reference.strip_prefix("oracle:") {
            return Oracle::from_name(name)
                .map(Decider::Oracle)
                .ok_or_else(|| Error::UnknownBuiltin(reference.to_string()));
        }
        Machine::load(reference).map(Decider::Machine)
    }

    pub fn decide<S: AsRef<str>>(&self, word: &[S], budget: Option<SearchBudget>) -> Result<Outcome> {
        match self {
            Decider::Machine(m) => m.decide(word, budget),
            Decider::Oracle(o) => {
                let names: Vec<&str> = word.iter().map(AsRef::as_ref).collect();
                Ok(if o.accepts(&names) { Outcome::Accepted } else { Outcome::Rejected })
            }
        }
    }
}

/// Concatenation for single-character symbols, comma-separated otherwise, `ε` when empty.
pub fn render_word<S: AsRef<str>>(word: &[S]) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    let names: Vec<&str> = word.iter().map(AsRef::as_ref).collect();
    if names.iter().all(|s| s.chars().count() == 1) {
        names.concat()
    } else {
        names.join(",")
    }
}

/// Parses an alphabet given as `ab`, `a,b` or `a b`.
pub fn parse_alphabet(text: &str) -> Vec<String> {
    split_word(text)
}

/// All words over `alphabet` of length at most `max_len`, shortest first, then in the
/// lexicographic order induced by the order of `alphabet`.
pub fn words_up_to(alphabet: &[String], max_len: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..max_len {
        if alphabet.is_empty() {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for s in alphabet {
                let mut v = w.clone();
                v.push(s.clone());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub accepted: Vec<String>,
    pub inconclusive: Vec<String>,
}

/// Accepted words of length at most `max_len` in length-lexicographic order; words whose
/// search ran out of budget are listed separately.
pub fn enumerate_accepted(
    machine: &Machine,
    alphabet: &[String],
    max_len: usize,
    budget: Option<SearchBudget>,
) -> Result<Enumeration> {
    let words = words_up_to(alphabet, max_len);
    let outcomes: Vec<Outcome> =
        words.par_iter().map(|w| machine.decide(w, budget)).collect::<Result<_>>()?;
    let mut result = Enumeration { accepted: Vec::new(), inconclusive: Vec::new() };
    for (w, o) in words.iter().zip(outcomes) {
        match o {
            Outcome::Accepted => result.accepted.push(render_word(w)),
            Outcome::Inconclusive => result.inconclusive.push(render_word(w)),
            Outcome::Rejected => {}
        }
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EquivStatus {
    Pass,
    Fail { word: String, a: Outcome, b: Outcome },
    Inconclusive { words: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivReport {
    #[serde(flatten)]
    pub status: EquivStatus,
    pub alphabet: Vec<String>,
    pub max_len: usize,
    /// `None` when the per-length default was used.
    pub budget: Option<SearchBudget>,
    pub words_checked: usize,
}

/// Compares verdicts on every word up to `max_len`. A definite disagreement wins over
/// inconclusive words and reports the first diverging word in length-lexicographic order.
pub fn equiv_check(
    a: &Decider,
    b: &Decider,
    alphabet: &[String],
    max_len: usize,
    budget: Option<SearchBudget>,
) -> Result<EquivReport> {
    let words = words_up_to(alphabet, max_len);
    let pairs: Vec<(Outcome, Outcome)> = words
        .par_iter()
        .map(|w| Ok((a.decide(w, budget)?, b.decide(w, budget)?)))
        .collect::<Result<_>>()?;
    let mut inconclusive = Vec::new();
    let mut status = None;
    for (w, (va, vb)) in words.iter().zip(&pairs) {
        if *va == Outcome::Inconclusive || *vb == Outcome::Inconclusive {
            inconclusive.push(render_word(w));
        } else if va != vb {
            status = Some(EquivStatus::Fail { word: render_word(w), a: *va, b: *vb });
            break;
        }
    }
    let status = status.unwrap_or(if inconclusive.is_empty() {
        EquivStatus::Pass
    } else {
        EquivStatus::Inconclusive { words: inconclusive }
    });
    Ok(EquivReport { status, alphabet: alphabet.to_vec(), max_len, budget, words_checked: words.len() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GoldenResult {
    Pass,
    /// First differing line (1-based); a missing line renders as an empty string.
    Diff { line: usize, expected: String, actual: String },
}

/// Rendering of `trace_run` of the power-of-two system on `a^n`.
pub fn power_of_two_trace(n: usize) -> (String, TraceEnd) {
    let m = Pcpa::new(constructions::build_power_of_two_pcpa()).expect("builtin is valid");
    let w = m.parse_word(&"a".repeat(n)).expect("unary word");
    let (trace, end) = m.trace_run(&w, TRACE_STEPS);
    (m.render_trace(&w, &trace), end)
}

/// Byte comparison of the stored golden trace against the run on `a^8`.
pub fn golden_trace_check(path: impl AsRef<Path>) -> Result<GoldenResult> {
    golden_trace_check_len(path, GOLDEN_LENGTH)
}

pub fn golden_trace_check_len(path: impl AsRef<Path>, n: usize) -> Result<GoldenResult> {
    let path = path.as_ref();
    let expected = std::fs::read_to_string(path)
        .map_err(|_| Error::MissingGolden { path: path.display().to_string() })?;
    Ok(compare_text(&expected, &power_of_two_trace(n).0))
}

/// Line-by-line comparison; `Pass` only for byte-identical text.
pub fn compare_text(expected: &str, actual: &str) -> GoldenResult {
    if expected == actual {
        return GoldenResult::Pass;
    }
    let e: Vec<&str> = expected.split('\n').collect();
    let a: Vec<&str> = actual.split('\n').collect();
    let line = (0..e.len().max(a.len()))
        .find(|&i| e.get(i) != a.get(i))
        .unwrap_or(0);
    GoldenResult::Diff {
        line: line + 1,
        expected: e.get(line).unwrap_or(&"").to_string(),
        actual: a.get(line).unwrap_or(&"").to_string(),
    }
}
