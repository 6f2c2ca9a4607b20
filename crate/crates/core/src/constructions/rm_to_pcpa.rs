//! Compiles a one-register machine into a returning, centralized PCPA of degree 2.
//!
//! Component 2 is a clock: it steps through six phases and pushes one `c` every sixth step,
//! reading input whenever it likes. Component 1 keeps the register in unary as `c`s above a
//! bottom symbol and tracks the clock phase (internal step count mod 6) in its control.
//!
//! Multiplying by `m` resets the clock, then pops one `c` every `6m` steps; when the
//! register is gone it queries the clock, whose store now holds `m·r` plus at most one extra
//! `c`, and pops the extra ones. Division pops one `c` every `6/m` steps counting the
//! remainder mod `m`; a nonzero remainder is undone by multiplying back and pushing it.
//!
//! A reset queries the clock and discards what arrives. Discarding `g` symbols takes `g + 1`
//! steps, during which at most `⌈(g+1)/6⌉` new ones accumulate, so resets repeat until the
//! clock hands over an empty store.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::map::{CompilationMap, StateNote};
use crate::error::{Error, Result};
use crate::pcpa::{ComponentSpec, Configuration, Pcpa, PcpaSpec, PcpaTransition, StepKind};
use crate::regmachine::{Instruction, RegisterMachine, RmProgram, RmState};
use crate::search::Exploration;
use crate::symbol::{Sym, Symbol};

const PHASES: u8 = 6;
const COUNTER: &str = "c";
const BOTTOM_1: &str = "Z_1";
const BOTTOM_2: &str = "Z_2";
const QUERY_2: &str = "K_2";
const TOPS: [&str; 3] = [COUNTER, BOTTOM_1, BOTTOM_2];
const BOTTOMS: [&str; 2] = [BOTTOM_1, BOTTOM_2];

/// What a component-1 state is doing; aligned with the component's state list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum ControlRole {
    Init,
    /// About to execute `label`; the store holds exactly the register in `c`s.
    Boundary { label: String, ended: bool },
    /// Just queried the clock to discard its store.
    ResetQuery,
    ResetDrain,
    Drain,
    Trim,
}

/// Output of [`compile_rm_to_pcpa`].
#[derive(Debug, Clone)]
pub struct RmCompilation {
    pub pcpa: PcpaSpec,
    pub map: CompilationMap,
    /// Role of each component-1 state, indexed like `pcpa.components[0].states`.
    pub roles: Vec<ControlRole>,
}

/// Summary of the reset chains seen in an exploration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResetSummary {
    pub chains: usize,
    /// Longest run of consecutive reset queries.
    pub longest: usize,
    pub largest_garbage: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Job {
    Mul(String),
    Div(String),
    Restore(String, u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Stage {
    Init,
    Boundary(String),
    ResetQuery(Job),
    ResetDrain(Job),
    Drain { job: Job, slot: u8, rem: u8, phase0: u8 },
    Trim { job: Job, left: u8, rem: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Key {
    stage: Stage,
    t: u8,
    ended: bool,
}

impl Job {
    fn label(&self) -> &str {
        match self {
            Job::Mul(l) | Job::Div(l) | Job::Restore(l, _) => l,
        }
    }

    fn name(&self) -> String {
        match self {
            Job::Mul(l) => format!("mul.{l}"),
            Job::Div(l) => format!("div.{l}"),
            Job::Restore(l, r) => format!("restore.{l}.{r}"),
        }
    }
}

impl Key {
    fn name(&self) -> String {
        let stage = match &self.stage {
            Stage::Init => "init".to_string(),
            Stage::Boundary(l) => format!("L:{l}"),
            Stage::ResetQuery(j) => format!("reset:{}", j.name()),
            Stage::ResetDrain(j) => format!("reset-drain:{}", j.name()),
            Stage::Drain { job, slot, rem, phase0 } => {
                format!("drain:{}:s{slot}r{rem}f{phase0}", job.name())
            }
            Stage::Trim { job, left, rem } => format!("trim:{}:e{left}r{rem}", job.name()),
        };
        let end = if self.ended { "/end" } else { "" };
        format!("{stage}@{}{end}", self.t)
    }

    fn role(&self) -> ControlRole {
        match &self.stage {
            Stage::Init => ControlRole::Init,
            Stage::Boundary(l) => ControlRole::Boundary { label: l.clone(), ended: self.ended },
            Stage::ResetQuery(_) => ControlRole::ResetQuery,
            Stage::ResetDrain(_) => ControlRole::ResetDrain,
            Stage::Drain { .. } => ControlRole::Drain,
            Stage::Trim { .. } => ControlRole::Trim,
        }
    }

    fn note(&self) -> StateNote {
        let (source, phase) = match &self.stage {
            Stage::Init => ("entry".to_string(), "init"),
            Stage::Boundary(l) => (l.clone(), "boundary"),
            Stage::ResetQuery(j) => (j.label().to_string(), "reset"),
            Stage::ResetDrain(j) => (j.label().to_string(), "reset-drain"),
            Stage::Drain { job, .. } => (job.label().to_string(), "drain"),
            Stage::Trim { job, .. } => (job.label().to_string(), "trim"),
        };
        StateNote {
            component: 1,
            state: self.name(),
            source,
            phase: phase.to_string(),
            boundary: matches!(self.stage, Stage::Boundary(_)),
        }
    }
}

struct Emit {
    read: Option<String>,
    top: &'static str,
    next: Stage,
    ended: bool,
    push: Vec<&'static str>,
}

struct Compiler<'a> {
    program: &'a RmProgram,
}

impl Compiler<'_> {
    fn ins(&self, label: &str) -> &Instruction {
        &self.program.instructions[label]
    }

    fn factor(&self, job: &Job) -> u8 {
        match self.ins(job.label()) {
            Instruction::Mul { by, .. } | Instruction::Divmod { by, .. } => *by,
            _ => unreachable!("jobs only come from MUL and DIVMOD"),
        }
    }

    /// Steps between two pops while draining.
    fn period(&self, job: &Job) -> u8 {
        let m = self.factor(job);
        match job {
            Job::Div(_) => PHASES / m,
            _ => PHASES * m,
        }
    }

    fn start_job(&self, label: &str) -> Option<Job> {
        match self.ins(label) {
            Instruction::Mul { .. } => Some(Job::Mul(label.to_string())),
            Instruction::Divmod { .. } => Some(Job::Div(label.to_string())),
            _ => None,
        }
    }

    fn after_trim(&self, job: &Job, rem: u8) -> (Stage, Vec<&'static str>) {
        match (job, self.ins(job.label())) {
            (Job::Mul(_), Instruction::Mul { next, .. }) => (Stage::Boundary(next.clone()), vec![]),
            (Job::Div(l), Instruction::Divmod { branch, .. }) => {
                if rem == 0 {
                    (Stage::Boundary(branch[0].clone()), vec![])
                } else {
                    (Stage::ResetQuery(Job::Restore(l.clone(), rem)), vec![QUERY_2])
                }
            }
            (Job::Restore(_, r), Instruction::Divmod { branch, .. }) => {
                (Stage::Boundary(branch[*r as usize].clone()), vec![COUNTER; *r as usize])
            }
            _ => unreachable!("job does not match its instruction"),
        }
    }

    fn emit(&self, key: &Key) -> Vec<Emit> {
        let ended = key.ended;
        let go = |read: Option<String>, top: &'static str, next: Stage, push: Vec<&'static str>| Emit {
            read,
            top,
            next,
            ended,
            push,
        };
        let keep = |top: &'static str| vec![top];
        let mut out = Vec::new();
        match &key.stage {
            Stage::Init => {
                out.push(go(None, BOTTOM_1, Stage::Boundary(self.program.entry.clone()), vec![COUNTER, BOTTOM_1]));
            }
            Stage::Boundary(label) => match self.ins(label) {
                Instruction::Read { branch, at_end } => {
                    for top in TOPS {
                        if !ended {
                            for (sym, target) in branch {
                                out.push(go(Some(sym.0.clone()), top, Stage::Boundary(target.clone()), keep(top)));
                            }
                        }
                        out.push(Emit {
                            read: None,
                            top,
                            next: Stage::Boundary(at_end.clone()),
                            ended: true,
                            push: keep(top),
                        });
                    }
                }
                Instruction::Mul { .. } | Instruction::Divmod { .. } => {
                    let job = self.start_job(label).unwrap();
                    for top in TOPS {
                        out.push(go(None, top, Stage::ResetQuery(job.clone()), vec![QUERY_2, top]));
                    }
                }
                Instruction::Accept | Instruction::Reject => {}
            },
            Stage::ResetQuery(job) => {
                let drain = Stage::Drain { job: job.clone(), slot: 0, rem: 0, phase0: key.t };
                out.push(go(None, BOTTOM_2, drain, vec![]));
                out.push(go(None, COUNTER, Stage::ResetDrain(job.clone()), vec![]));
            }
            Stage::ResetDrain(job) => {
                out.push(go(None, COUNTER, Stage::ResetDrain(job.clone()), vec![]));
                out.push(go(None, BOTTOM_2, Stage::ResetQuery(job.clone()), vec![QUERY_2]));
            }
            Stage::Drain { job, slot, rem, phase0 } => {
                let p = self.period(job);
                let next_slot = (slot + 1) % p;
                if *slot == 0 {
                    let is_div = matches!(job, Job::Div(_));
                    let next_rem = if is_div { (rem + 1) % self.factor(job) } else { *rem };
                    let drain = Stage::Drain { job: job.clone(), slot: next_slot, rem: next_rem, phase0: *phase0 };
                    out.push(go(None, COUNTER, drain, vec![]));
                    let shift = if is_div { rem * p } else { 0 };
                    let extra = (phase0 + 2 + shift) / PHASES;
                    for bottom in BOTTOMS {
                        let trim = Stage::Trim { job: job.clone(), left: extra, rem: *rem };
                        out.push(go(None, bottom, trim, vec![QUERY_2]));
                    }
                } else {
                    for top in TOPS {
                        let drain = Stage::Drain { job: job.clone(), slot: next_slot, rem: *rem, phase0: *phase0 };
                        out.push(go(None, top, drain, keep(top)));
                    }
                }
            }
            Stage::Trim { job, left, rem } => {
                if *left > 0 {
                    let trim = Stage::Trim { job: job.clone(), left: left - 1, rem: *rem };
                    out.push(go(None, COUNTER, trim, vec![]));
                } else {
                    let (next, prefix) = self.after_trim(job, *rem);
                    for top in TOPS {
                        let mut push = prefix.clone();
                        push.push(top);
                        out.push(go(None, top, next.clone(), push));
                    }
                }
            }
        }
        out
    }
}

fn clock(input: &[Symbol]) -> ComponentSpec {
    let phase = |j: u8| format!("p{j}");
    let mut transitions = Vec::new();
    for j in 0..PHASES {
        let to = phase((j + 1) % PHASES);
        for top in [BOTTOM_2, COUNTER] {
            let push: Vec<&str> = if j == PHASES - 1 { vec![COUNTER, top] } else { vec![top] };
            for read in std::iter::once(None).chain(input.iter().map(|s| Some(s.as_str()))) {
                transitions.push(PcpaTransition::new(&phase(j), read, top, &to, &push));
            }
        }
    }
    let states: Vec<String> = (0..PHASES).map(phase).collect();
    ComponentSpec {
        initial: states[0].clone(),
        finals: states.clone(),
        states,
        bottom: Symbol::from(BOTTOM_2),
        transitions,
    }
}

/// Builds the degree-2 PCPA simulating `program`, with a state map and role table.
pub fn compile_rm_to_pcpa(program: &RmProgram) -> Result<RmCompilation> {
    let violations = program.validate();
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let compiler = Compiler { program };
    let start = Key { stage: Stage::Init, t: 0, ended: false };
    let mut names: HashMap<Key, String> = HashMap::new();
    let mut order: Vec<Key> = Vec::new();
    let mut queue = VecDeque::new();
    names.insert(start.clone(), start.name());
    order.push(start.clone());
    queue.push_back(start);

    let mut transitions = Vec::new();
    while let Some(key) = queue.pop_front() {
        for e in compiler.emit(&key) {
            let next = Key { stage: e.next, t: (key.t + 1) % PHASES, ended: e.ended };
            if !names.contains_key(&next) {
                names.insert(next.clone(), next.name());
                order.push(next.clone());
                queue.push_back(next.clone());
            }
            transitions.push(PcpaTransition::new(
                &names[&key],
                e.read.as_deref(),
                e.top,
                &names[&next],
                &e.push,
            ));
        }
    }

    let finals = order
        .iter()
        .filter(|k| matches!(&k.stage, Stage::Boundary(l) if matches!(program.instructions[l], Instruction::Accept)))
        .map(|k| names[k].clone())
        .collect();
    let control = ComponentSpec {
        states: order.iter().map(|k| names[k].clone()).collect(),
        initial: names[&order[0]].clone(),
        bottom: Symbol::from(BOTTOM_1),
        finals,
        transitions,
    };
    let clock = clock(&program.input_alphabet);

    let mut notes: Vec<StateNote> = order.iter().map(Key::note).collect();
    notes.extend(clock.states.iter().map(|s| StateNote {
        component: 2,
        state: s.clone(),
        source: "clock".to_string(),
        phase: s.clone(),
        boundary: false,
    }));

    let pcpa = PcpaSpec {
        degree: 2,
        input_alphabet: program.input_alphabet.clone(),
        stack_alphabet: [COUNTER, BOTTOM_1, BOTTOM_2, "K_1", QUERY_2].into_iter().map(Symbol::from).collect(),
        query_symbols: vec![Symbol::from("K_1"), Symbol::from(QUERY_2)],
        components: vec![control, clock],
    };
    Ok(RmCompilation {
        pcpa,
        map: CompilationMap { notes },
        roles: order.iter().map(Key::role).collect(),
    })
}

fn leading(stack: impl Iterator<Item = Sym>, sym: Sym) -> usize {
    stack.take_while(|&s| s == sym).count()
}

impl RmCompilation {
    /// Checks that at every reached instruction boundary the number of `c`s equals the
    /// register of the source machine at the same label and input position. Returns the
    /// number of boundary configurations checked.
    ///
    /// `pcpa` must be built from `self.pcpa`, `word` encoded for it, and `exploration` a
    /// search of `pcpa` on `word`. Boundaries reached after guessing the end of input are
    /// compared against a run on the consumed prefix. `max_steps` bounds those runs.
    pub fn check_register_fidelity(
        &self,
        pcpa: &Pcpa,
        rm: &RegisterMachine,
        word: &[Sym],
        exploration: &Exploration<Configuration, StepKind>,
        max_steps: usize,
    ) -> std::result::Result<usize, String> {
        let names: Vec<&str> = word.iter().map(|&s| pcpa.symbols().name(s)).collect();
        let rm_word = rm.encode_word(&names).map_err(|e| e.to_string())?;
        let counter = pcpa.sym(COUNTER).expect("counter symbol");
        let mut runs: HashMap<(usize, bool), HashSet<RmState>> = HashMap::new();
        let mut checked = 0;
        for c in &exploration.configs {
            let control = &c.components[0];
            let ControlRole::Boundary { label, ended } = &self.roles[control.state as usize] else {
                continue;
            };
            let prefix = if *ended { control.consumed } else { word.len() };
            let reachable = runs.entry((prefix, *ended)).or_insert_with(|| {
                rm.run(&rm_word[..prefix], max_steps).states.into_iter().collect()
            });
            let register = leading(control.stack.top_first(), counter) as u64;
            let pc = rm.label_index(label).expect("label of the source program");
            let expected = RmState { pc, register, consumed: control.consumed };
            if !reachable.contains(&expected) {
                return Err(format!(
                    "at `{}` after {} symbols the store holds {} but the register machine never does",
                    pcpa.state_name(0, control.state),
                    control.consumed,
                    register
                ));
            }
            checked += 1;
        }
        Ok(checked)
    }

    /// Checks every chain of consecutive reset queries in `exploration`: the garbage handed
    /// over by each query is at most `⌈(g+1)/6⌉` where `g` is the previous one's, and a
    /// chain is only left after an empty hand-over.
    pub fn check_reset_convergence(
        &self,
        pcpa: &Pcpa,
        exploration: &Exploration<Configuration, StepKind>,
    ) -> std::result::Result<ResetSummary, String> {
        let counter = pcpa.sym(COUNTER).expect("counter symbol");
        // (garbage of the latest query in the chain, queries so far)
        let mut chain: Vec<Option<(usize, usize)>> = Vec::with_capacity(exploration.len());
        let mut summary = ResetSummary::default();
        for (idx, c) in exploration.configs.iter().enumerate() {
            let role = &self.roles[c.components[0].state as usize];
            let parent = exploration.parents[idx];
            let inherited = parent.and_then(|(p, _)| chain[p]);
            let entry = match (role, parent) {
                (ControlRole::ResetQuery, Some((_, StepKind::Communication))) => {
                    let g = leading(c.components[0].stack.top_first(), counter);
                    let length = match inherited {
                        Some((prev, n)) => {
                            let bound = (prev + 1).div_ceil(PHASES as usize);
                            if g > bound {
                                return Err(format!(
                                    "reset handed over {g} after {prev}, bound is {bound}"
                                ));
                            }
                            n + 1
                        }
                        None => {
                            summary.chains += 1;
                            1
                        }
                    };
                    summary.longest = summary.longest.max(length);
                    summary.largest_garbage = summary.largest_garbage.max(g);
                    Some((g, length))
                }
                (ControlRole::ResetQuery | ControlRole::ResetDrain, _) => inherited,
                (ControlRole::Drain, _) => {
                    if let Some((g, _)) = inherited {
                        if g != 0 {
                            return Err(format!("drain started after a reset that handed over {g}"));
                        }
                    }
                    None
                }
                _ => None,
            };
            chain.push(entry);
        }
        Ok(summary)
    }
}
