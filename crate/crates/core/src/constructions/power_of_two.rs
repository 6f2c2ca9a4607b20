use crate::pcpa::{ComponentSpec, PcpaSpec, PcpaTransition};
use crate::symbol::Symbol;

/// Centralized returning PCPA of degree 2 for `{ a^(2^n) | n ≥ 1 }`.
///
/// Component 1 reads as many symbols as its store holds, then queries component 2, which has
/// meanwhile pushed roughly twice as many. The published table has two corrections applied:
/// the two rows labelled as `f_1` on state `q_0^2` belong to `f_2`, and both components share
/// the bottom symbol `Z`, since component 1 must match transitions on the copied bottom.
pub fn build_power_of_two_pcpa() -> PcpaSpec {
    let t = PcpaTransition::new;
    let first = ComponentSpec {
        states: vec!["q_0^1".into(), "q_1^1".into(), "q_2^1".into()],
        initial: "q_0^1".into(),
        bottom: Symbol::from("Z"),
        finals: vec!["q_2^1".into()],
        transitions: vec![
            t("q_0^1", Some("a"), "Z", "q_1^1", &["Z"]),
            t("q_0^1", Some("a"), "a", "q_1^1", &["a"]),
            t("q_1^1", Some("a"), "Z", "q_2^1", &["K_2"]),
            t("q_1^1", Some("a"), "a", "q_1^1", &[]),
            t("q_2^1", Some("a"), "Z", "q_1^1", &["K_2"]),
            t("q_2^1", Some("a"), "a", "q_1^1", &[]),
        ],
    };
    let second = ComponentSpec {
        states: vec!["q_0^2".into(), "q_1^2".into()],
        initial: "q_0^2".into(),
        bottom: Symbol::from("Z"),
        finals: vec!["q_1^2".into()],
        transitions: vec![
            t("q_0^2", Some("a"), "Z", "q_1^2", &["Z"]),
            t("q_0^2", Some("a"), "a", "q_1^2", &["a"]),
            t("q_1^2", Some("a"), "Z", "q_1^2", &["a", "Z"]),
            t("q_1^2", Some("a"), "a", "q_1^2", &["a", "a", "a"]),
        ],
    };
    PcpaSpec {
        degree: 2,
        input_alphabet: vec![Symbol::from("a")],
        stack_alphabet: ["a", "Z", "K_1", "K_2"].into_iter().map(Symbol::from).collect(),
        query_symbols: vec![Symbol::from("K_1"), Symbol::from("K_2")],
        components: vec![first, second],
    }
}
