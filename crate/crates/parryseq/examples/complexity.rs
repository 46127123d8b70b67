//! Factor complexity: exact counts via a suffix automaton and growth
//! diagnostics for words on both sides of the linear/superlinear divide.

use parryseq::sequences::complexity::{factor_counts, growth_diagnostic};
use parryseq::Substitution;

fn main() {
    // Fibonacci word: p(n) = n + 1, the slowest aperiodic growth.
    let fib = Substitution::new(vec![vec![0, 1], vec![0]], 0).unwrap();
    let word: Vec<u32> = fib
        .fixed_point(100_000)
        .unwrap()
        .into_iter()
        .map(|l| l as u32)
        .collect();
    let table = factor_counts(&word, 20);
    println!("fibonacci word p(1..=20): {table:?}");
    println!("diagnostic: {:?}", growth_diagnostic(&table).evidence);

    // Fixed point of a -> aaab, b -> b: runs of b of every length appear,
    // pushing the complexity above every linear bound.
    let sub = Substitution::new(vec![vec![0, 0, 0, 1], vec![1]], 0).unwrap();
    let word: Vec<u32> = sub
        .fixed_point(500_000)
        .unwrap()
        .into_iter()
        .map(|l| l as u32)
        .collect();
    let table = factor_counts(&word, 40);
    println!("aaab-word p(1..=40): {table:?}");
    println!("diagnostic: {:?}", growth_diagnostic(&table).evidence);
}
