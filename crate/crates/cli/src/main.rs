use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pcpa_core::constructions::{compile_rm_to_pcpa, compile_sync_pcpa_to_mhpda};
use pcpa_core::workbench::{
    self, enumerate_accepted, equiv_check, load_machine_file, parse_alphabet, Decider, EquivStatus, Machine,
    MachineFile, MachineSpec,
};
use pcpa_core::{Outcome, SearchBudget};

const ACCEPTED: u8 = 0;
const REJECTED: u8 = 1;
const INCONCLUSIVE: u8 = 2;
const USAGE: u8 = 3;

/// Run, enumerate, compare and compile PCPA, multi-head PDA and register machine files.
///
/// Machines are JSON files or `builtin:<name>`. Exit status: 0 accepted/pass,
/// 1 rejected/fail, 2 inconclusive, 3 usage or validation error.
#[derive(Parser)]
#[command(name = "pcpa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one input word.
    Run {
        machine: String,
        /// Input word: `aab`, `a,a,b` or `a a b`; empty or `ε` for the empty word.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// Print the accepting witness (or the first-successor run) instead of the verdict.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// List accepted words up to a length, shortest first.
    Enumerate {
        machine: String,
        /// Defaults to the machine's input alphabet.
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        max_len: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Compare two machines, or a machine and `oracle:otto` / `oracle:power-of-two`.
    Equiv {
        a: String,
        b: String,
        /// Defaults to the first machine's input alphabet.
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        max_len: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Compile a machine file into another model.
    #[command(subcommand)]
    Compile(CompileCommand),
    /// Write a builtin machine file to standard output or a file.
    Builtin {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CompileCommand {
    /// Register machine program to a degree-2 PCPA.
    RmToPcpa {
        program: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Synchronized centralized PCPA to a multi-head sensing PDA.
    PcpaToMhpda {
        pcpa: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct BudgetArgs {
    /// Search depth limit; defaults to 50·(n+1) for a word of length n.
    #[arg(long)]
    max_depth: Option<usize>,
    /// Distinct configuration limit; defaults to 5000000.
    #[arg(long)]
    max_configs: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Option<SearchBudget>> {
        if self.max_depth == Some(0) || self.max_configs == Some(0) {
            bail!("budgets must be positive");
        }
        Ok(match (self.max_depth, self.max_configs) {
            (None, None) => None,
            (depth, configs) => Some(SearchBudget::new(
                depth.unwrap_or(usize::MAX / 2),
                configs.unwrap_or(SearchBudget::DEFAULT_MAX_CONFIGS),
            )),
        })
    }
}

fn outcome_code(o: Outcome) -> u8 {
    match o {
        Outcome::Accepted => ACCEPTED,
        Outcome::Rejected => REJECTED,
        Outcome::Inconclusive => INCONCLUSIVE,
    }
}

fn alphabet_of(machine: &Machine, given: Option<&str>) -> Vec<String> {
    match given {
        Some(text) => parse_alphabet(text),
        None => machine.input_alphabet().into_iter().map(|s| s.0).collect(),
    }
}

fn execute(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Run { machine, input, trace, budget, json } => {
            let m = Machine::load(&machine)?;
            let word = pcpa_core::symbol::split_word(&input);
            let report = m.run(&word, budget.budget()?, trace)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else if let Some(t) = &report.trace {
                print!("{t}");
                eprintln!("{}", report.outcome);
            } else {
                println!("{}", report.outcome);
            }
            Ok(outcome_code(report.outcome))
        }
        Command::Enumerate { machine, alphabet, max_len, budget, json } => {
            let m = Machine::load(&machine)?;
            let alphabet = alphabet_of(&m, alphabet.as_deref());
            let result = enumerate_accepted(&m, &alphabet, max_len, budget.budget()?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&result)?);
            } else {
                for w in &result.accepted {
                    println!("{w}");
                }
                for w in &result.inconclusive {
                    println!("inconclusive: {w}");
                }
            }
            Ok(if result.inconclusive.is_empty() { ACCEPTED } else { INCONCLUSIVE })
        }
        Command::Equiv { a, b, alphabet, max_len, budget, json } => {
            let left = Decider::load(&a)?;
            let right = Decider::load(&b)?;
            let alphabet = match (&left, alphabet.as_deref()) {
                (_, Some(text)) => parse_alphabet(text),
                (Decider::Machine(m), None) => alphabet_of(m, None),
                (Decider::Oracle(_), None) => match &right {
                    Decider::Machine(m) => alphabet_of(m, None),
                    Decider::Oracle(_) => bail!("--alphabet is required when comparing two oracles"),
                },
            };
            let report = equiv_check(&left, &right, &alphabet, max_len, budget.budget()?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            }
            let code = match &report.status {
                EquivStatus::Pass => {
                    if !json {
                        println!("pass ({} words)", report.words_checked);
                    }
                    ACCEPTED
                }
                EquivStatus::Fail { word, a: va, b: vb } => {
                    if !json {
                        println!("fail at {word}: {a} {va}, {b} {vb}");
                    }
                    REJECTED
                }
                EquivStatus::Inconclusive { words } => {
                    if !json {
                        println!("inconclusive on {} words: {}", words.len(), words.join(" "));
                    }
                    INCONCLUSIVE
                }
            };
            Ok(code)
        }
        Command::Compile(CompileCommand::RmToPcpa { program, output }) => {
            let file = load_machine_file(&program)?;
            let MachineSpec::Rm(p) = file.machine else {
                bail!("{program} is not a register machine program");
            };
            let out = compile_rm_to_pcpa(&p)?;
            let states: usize = out.pcpa.components.iter().map(|c| c.states.len()).sum();
            MachineFile { machine: MachineSpec::Pcpa(out.pcpa), compilation_map: Some(out.map) }
                .save(&output)
                .with_context(|| format!("writing {}", output.display()))?;
            println!("wrote {} ({states} states)", output.display());
            Ok(ACCEPTED)
        }
        Command::Compile(CompileCommand::PcpaToMhpda { pcpa, output }) => {
            let file = load_machine_file(&pcpa)?;
            let MachineSpec::Pcpa(spec) = file.machine else {
                bail!("{pcpa} is not a PCPA");
            };
            let out = compile_sync_pcpa_to_mhpda(&spec)?;
            let states = out.mhpda.states.len();
            MachineFile { machine: MachineSpec::Mhpda(out.mhpda), compilation_map: Some(out.map) }
                .save(&output)
                .with_context(|| format!("writing {}", output.display()))?;
            println!("wrote {} ({states} states)", output.display());
            Ok(ACCEPTED)
        }
        Command::Builtin { name, output } => {
            let file = workbench::builtin(&name)?;
            match output {
                Some(path) => file.save(&path).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{}", file.to_json()),
            }
            Ok(ACCEPTED)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { ACCEPTED };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
