use super::builder::MhBuilder;
use crate::mhpda::HeadGuard;
use crate::mhpda::HeadMove::{Advance as Adv, Stay};
use crate::mhpda::MhpdaSpec;

/// Deterministic PDA with two sensing heads for `{ a^(2^n) | n ≥ 1 }`.
///
/// At every phase boundary both heads sit on cell `P` (a power of two, `P ≥ 2`) and the
/// store holds `P/2` counters. Draining moves head 2 two cells per popped counter, so it
/// lands on `2P`; refilling moves head 1 up to head 2 pushing one counter per cell, which
/// restores the boundary invariant at `2P`. Head 2 scanning the end-marker at a boundary
/// accepts; hitting it in mid-drain blocks.
pub fn build_doubling_sensing_pda() -> MhpdaSpec {
    let mut b = MhBuilder::new(2, true, &["a"], "$", &["Z", "C"], "Z");
    let any = None;
    let a = Some("a");
    b.initial("init");
    b.rule("init", &[a, a], &[], "Z", "boot", &[Adv, Adv], &["Z"]);
    b.rule("boot", &[a, a], &[], "Z", "boundary", &[Adv, Adv], &["C", "Z"]);
    b.rule("boundary", &[any, Some("$")], &[], "C", "accept", &[Stay, Stay], &["C"]);
    b.rule("boundary", &[any, a], &[], "C", "drain_half", &[Stay, Adv], &[]);
    b.rule("drain", &[any, a], &[], "C", "drain_half", &[Stay, Adv], &[]);
    b.rule("drain", &[any, any], &[], "Z", "refill", &[Stay, Stay], &["Z"]);
    for top in ["C", "Z"] {
        b.rule("drain_half", &[any, a], &[], top, "drain", &[Stay, Adv], &[top]);
        b.rule("refill", &[a, any], &[HeadGuard::ne(1, 2)], top, "refill", &[Adv, Stay], &["C", top]);
        b.rule("refill", &[any, any], &[HeadGuard::eq(1, 2)], top, "boundary", &[Stay, Stay], &[top]);
    }
    b.final_state("accept");
    b.finish()
}
