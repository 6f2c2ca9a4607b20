use criterion::{black_box, criterion_group, criterion_main, Criterion};

use pcpa_bench::{compiled_doubling_program, compiled_palindrome, unary, COMPILED_BUDGET};
use pcpa_core::constructions::{build_doubling_sensing_pda, build_otto_acceptor, build_power_of_two_pcpa};
use pcpa_core::{Mhpda, Pcpa, SearchBudget};

fn pcpa(c: &mut Criterion) {
    let m = Pcpa::new(build_power_of_two_pcpa()).unwrap();
    let w = m.parse_word(&unary(64)).unwrap();
    c.bench_function("power_of_two_a64", |b| {
        b.iter(|| m.decide(black_box(&w), SearchBudget::for_length(64)))
    });

    let m = compiled_doubling_program();
    let w = m.parse_word(&unary(4)).unwrap();
    c.bench_function("compiled_register_machine_a4", |b| {
        b.iter(|| m.decide(black_box(&w), COMPILED_BUDGET))
    });
}

fn mhpda(c: &mut Criterion) {
    let m = Mhpda::new(build_otto_acceptor()).unwrap();
    let w = m.parse_word("abbbaabbaa").unwrap();
    c.bench_function("otto_len10_reject", |b| {
        b.iter(|| m.decide(black_box(&w), SearchBudget::for_length(10)))
    });

    let m = Mhpda::new(build_doubling_sensing_pda()).unwrap();
    let w = m.parse_word(&unary(1024)).unwrap();
    c.bench_function("doubling_a1024", |b| {
        b.iter(|| m.decide(black_box(&w), SearchBudget::for_length(1024)))
    });

    let m = compiled_palindrome();
    let w = m.parse_word("abbaabbaab").unwrap();
    c.bench_function("compiled_palindrome_len10", |b| {
        b.iter(|| m.decide(black_box(&w), SearchBudget::for_length(10)))
    });
}

criterion_group!(benches, pcpa, mhpda);
criterion_main!(benches);
