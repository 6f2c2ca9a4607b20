use pcpa_core::constructions::{
    build_doubling_sensing_pda, build_otto_acceptor, build_power_of_two_pcpa, compile_rm_to_pcpa,
    compile_sync_pcpa_to_mhpda, fixtures, oracle_otto, oracle_power_of_two,
};
use pcpa_core::search::{explore, ExploreStatus};
use pcpa_core::workbench::{power_of_two_trace, words_up_to};
use pcpa_core::{Mhpda, Outcome, Pcpa, RegisterMachine, RunOutcome, SearchBudget, TraceEnd};

fn unary(n: usize) -> String {
    "a".repeat(n)
}

#[test]
fn power_of_two_system_decides_small_lengths() {
    let m = Pcpa::new(build_power_of_two_pcpa()).unwrap();
    for n in 0..=20 {
        let w = m.parse_word(&unary(n)).unwrap();
        let v = m.decide(&w, SearchBudget::for_length(n)).outcome();
        let expected = if oracle_power_of_two(&vec!["a"; n]) { Outcome::Accepted } else { Outcome::Rejected };
        assert_eq!(v, expected, "a^{n}");
    }
}

#[test]
fn short_power_of_two_trace_is_stuck() {
    let (text, end) = power_of_two_trace(1);
    assert_eq!(end, TraceEnd::Stuck);
    assert_eq!(text.lines().count(), 2);
    let (text, end) = power_of_two_trace(7);
    assert_eq!(end, TraceEnd::Stuck);
    assert!(!text.is_empty());
}

#[test]
fn otto_examples() {
    let m = Mhpda::new(build_otto_acceptor()).unwrap();
    for (w, expected) in [("ababa", true), ("aaaaa", true), ("aabba", false), ("aabbaabbaa", true), ("", false)] {
        let word = m.parse_word(w).unwrap();
        assert_eq!(m.decide(&word, SearchBudget::for_length(word.len())).is_accepted(), expected, "{w}");
    }
}

#[test]
fn otto_matches_oracle_up_to_ten() {
    let m = Mhpda::new(build_otto_acceptor()).unwrap();
    let alphabet = vec!["a".to_string(), "b".to_string()];
    for w in words_up_to(&alphabet, 10) {
        let word = m.encode_word(&w).unwrap();
        let v = m.decide(&word, SearchBudget::for_length(w.len())).outcome();
        let expected = if oracle_otto(&w) { Outcome::Accepted } else { Outcome::Rejected };
        assert_eq!(v, expected, "{w:?}");
    }
}

#[test]
fn doubling_machine_examples() {
    let m = Mhpda::new(build_doubling_sensing_pda()).unwrap();
    for n in 0..=130 {
        let w = m.parse_word(&unary(n)).unwrap();
        let v = m.decide(&w, SearchBudget::for_length(n)).outcome();
        let expected = if oracle_power_of_two(&vec!["a"; n]) { Outcome::Accepted } else { Outcome::Rejected };
        assert_eq!(v, expected, "a^{n}");
    }
}

fn rm_verdict(rm: &RegisterMachine, w: &str) -> Outcome {
    let word = rm.parse_word(w).unwrap();
    match rm.run(&word, 100_000).outcome {
        RunOutcome::Accepted => Outcome::Accepted,
        RunOutcome::Rejected => Outcome::Rejected,
        RunOutcome::Timeout => Outcome::Inconclusive,
    }
}

#[test]
fn fixture_programs_compute_their_languages() {
    let parity = RegisterMachine::new(fixtures::parity_program()).unwrap();
    let doubling = RegisterMachine::new(fixtures::doubling_program()).unwrap();
    for n in 0..8 {
        let expected = if n % 2 == 0 { Outcome::Accepted } else { Outcome::Rejected };
        assert_eq!(rm_verdict(&parity, &unary(n)), expected);
        assert_eq!(rm_verdict(&doubling, &unary(n)), expected);
    }
    let mod3 = RegisterMachine::new(fixtures::mod3_program()).unwrap();
    assert_eq!(rm_verdict(&mod3, "abba"), Outcome::Accepted);
    assert_eq!(rm_verdict(&mod3, "abb"), Outcome::Rejected);
    assert_eq!(rm_verdict(&mod3, ""), Outcome::Accepted);
}

const RM_BUDGET: SearchBudget = SearchBudget { max_depth: 1_000_000, max_configs: 5_000_000 };

#[test]
fn compiled_parity_agrees_with_interpreter() {
    let program = fixtures::parity_program();
    let rm = RegisterMachine::new(program.clone()).unwrap();
    let compiled = compile_rm_to_pcpa(&program).unwrap();
    let pcpa = Pcpa::new(compiled.pcpa.clone()).unwrap();
    for n in 0..=6 {
        let w = pcpa.parse_word(&unary(n)).unwrap();
        assert_eq!(pcpa.decide(&w, RM_BUDGET).outcome(), rm_verdict(&rm, &unary(n)), "a^{n}");
    }
}

#[test]
fn compiled_doubling_carries_register_in_counters() {
    let program = fixtures::doubling_program();
    let rm = RegisterMachine::new(program.clone()).unwrap();
    let compiled = compile_rm_to_pcpa(&program).unwrap();
    let pcpa = Pcpa::new(compiled.pcpa.clone()).unwrap();
    let w = pcpa.parse_word("aaa").unwrap();
    let ex = explore(&pcpa.run(&w), RM_BUDGET, false);
    assert_eq!(ex.status, ExploreStatus::Exhausted);
    let checked = compiled.check_register_fidelity(&pcpa, &rm, &w, &ex, 100_000).unwrap();
    assert!(checked > 0);
    compiled.check_reset_convergence(&pcpa, &ex).unwrap();

    let c = pcpa.sym("c").unwrap();
    let at_halve: Vec<usize> = ex
        .configs
        .iter()
        .filter(|cfg| {
            let control = &cfg.components[0];
            control.consumed == 3 && pcpa.state_name(0, control.state).starts_with("L:halve_even@")
        })
        .map(|cfg| cfg.components[0].stack.top_first().take_while(|&s| s == c).count())
        .collect();
    // First arrival carries 2^3; the loop revisits the label after every second halving.
    assert!(at_halve.contains(&8));
    assert!(at_halve.iter().all(|&r| r == 8 || r == 2), "{at_halve:?}");
}

#[test]
fn compiled_accept_only_program_accepts_empty_word() {
    let compiled = compile_rm_to_pcpa(&fixtures::accept_program()).unwrap();
    let pcpa = Pcpa::new(compiled.pcpa).unwrap();
    assert!(pcpa.decide(&[], SearchBudget::for_length(0)).is_accepted());
    let a = pcpa.parse_word("a").unwrap();
    assert_eq!(pcpa.decide(&a, RM_BUDGET).outcome(), Outcome::Rejected);
}

#[test]
fn compiled_palindrome_system_examples() {
    let source = Pcpa::new(fixtures::palindrome_pcpa()).unwrap();
    let compiled = Mhpda::new(compile_sync_pcpa_to_mhpda(&fixtures::palindrome_pcpa()).unwrap().mhpda).unwrap();
    for (w, expected) in [("abba", true), ("ab", false), ("aa", true), ("", false), ("abab", false)] {
        let sw = source.parse_word(w).unwrap();
        let cw = compiled.parse_word(w).unwrap();
        assert_eq!(source.decide(&sw, SearchBudget::for_length(sw.len())).is_accepted(), expected, "{w}");
        assert_eq!(compiled.decide(&cw, SearchBudget::for_length(cw.len())).is_accepted(), expected, "{w}");
    }
}

#[test]
fn compiled_degree_one_system_has_one_head() {
    let out = compile_sync_pcpa_to_mhpda(&fixtures::anbn_pcpa()).unwrap();
    assert_eq!(out.mhpda.heads, 1);
    assert!(!out.mhpda.sensing);
    let m = Mhpda::new(out.mhpda).unwrap();
    for (w, expected) in [("ab", true), ("aabb", true), ("aab", false), ("", false), ("ba", false)] {
        let word = m.parse_word(w).unwrap();
        assert_eq!(m.decide(&word, SearchBudget::for_length(word.len())).is_accepted(), expected, "{w}");
    }
}
