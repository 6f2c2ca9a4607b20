use super::builder::MhBuilder;
use crate::mhpda::HeadMove::{Advance as Adv, Stay};
use crate::mhpda::MhpdaSpec;

const INPUT: [&str; 2] = ["a", "b"];

fn stored(sym: &str) -> &'static str {
    if sym == "a" {
        "A"
    } else {
        "B"
    }
}

/// Nondeterministic two-head PDA for `{ u v u^R v^R u^R | u, v ∈ {a,b}+, |u| = |v| }`.
///
/// 1. Head 1 pushes a guessed non-empty prefix `x`.
/// 2. Head 2 walks from the start pushing one `C` per cell and stops at a guessed cell.
/// 3. Both heads advance together comparing symbols; each joint step pops four `C`s (one on
///    the move, three in the `pop*` states). Running out of `C`s mid-step, a head reaching
///    the end-marker early, or head 2 not on the end-marker when the `C`s are gone, blocks.
/// 4. Head 1 matches the stored prefix, top first, against the rest of the input.
/// 5. The bottom must surface exactly at the end-marker.
///
/// On accepting runs head 1 stops after `2n/5` cells and head 2 after `4n/5`.
pub fn build_otto_acceptor() -> MhpdaSpec {
    let mut b = MhBuilder::new(2, false, &INPUT, "$", &["Z", "A", "B", "C"], "Z");
    b.initial("push_first");
    for s in INPUT {
        b.rule("push_first", &[Some(s), None], &[], "Z", "push", &[Adv, Stay], &[stored(s), "Z"]);
    }
    for x in ["A", "B"] {
        for s in INPUT {
            b.rule("push", &[Some(s), None], &[], x, "push", &[Adv, Stay], &[stored(s), x]);
        }
        b.rule("push", &[None, None], &[], x, "count", &[Stay, Stay], &[x]);
    }
    for x in ["A", "B", "C"] {
        for s in INPUT {
            b.rule("count", &[None, Some(s)], &[], x, "count", &[Stay, Adv], &["C", x]);
        }
        b.rule("count", &[None, None], &[], x, "compare", &[Stay, Stay], &[x]);
    }
    for s in INPUT {
        b.rule("compare", &[Some(s), Some(s)], &[], "C", "pop1", &[Adv, Adv], &[]);
        b.rule("check", &[Some(s), Some(s)], &[], "C", "pop1", &[Adv, Adv], &[]);
    }
    b.rule("pop1", &[None, None], &[], "C", "pop2", &[Stay, Stay], &[]);
    b.rule("pop2", &[None, None], &[], "C", "pop3", &[Stay, Stay], &[]);
    b.rule("pop3", &[None, None], &[], "C", "check", &[Stay, Stay], &[]);
    for x in ["A", "B"] {
        b.rule("check", &[None, Some("$")], &[], x, "match", &[Stay, Stay], &[x]);
    }
    for s in INPUT {
        b.rule("match", &[Some(s), None], &[], stored(s), "match", &[Adv, Stay], &[]);
    }
    b.rule("match", &[Some("$"), None], &[], "Z", "accept", &[Stay, Stay], &["Z"]);
    b.final_state("accept");
    b.finish()
}
