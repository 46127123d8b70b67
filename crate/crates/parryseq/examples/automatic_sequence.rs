//! An automatic sequence over a non-standard numeration system: the
//! characteristic sequence of the terms {U_n}, its generating substitution,
//! and a two-dimensional product.

use num::bigint::BigInt;
use parryseq::{
    char_sequence_from_regular_set, grid_from_machine, language_dfa, pair_product_dfao, Dfa,
    NumerationSystem,
};

fn main() {
    let sys = NumerationSystem::from_recurrence(
        vec![BigInt::from(1), BigInt::from(1)],
        vec![BigInt::from(1), BigInt::from(2)],
    )
    .unwrap();
    let language = language_dfa(&sys, 12).unwrap();
    // Representations of the terms themselves are exactly 1 0^*.
    let set = Dfa::new(
        sys.alphabet(),
        0,
        vec![false, true],
        vec![vec![(1, 1)], vec![(0, 1)]],
    )
    .unwrap();
    let seq = char_sequence_from_regular_set(sys.clone(), language, &set).unwrap();

    let prefix = seq.prefix(40);
    println!("first 40 values: {prefix:?}");

    let (sub, coding) = seq.substitution().unwrap();
    for q in 0..sub.alphabet_len() {
        println!("sigma({q}) = {:?}   coded as {}", sub.image(q), coding[q]);
    }

    // XOR of the sequence with itself along two coordinates.
    let machine2d = pair_product_dfao(seq.machine(), seq.machine(), |a, b| a ^ b).unwrap();
    let grid = grid_from_machine(&machine2d, &sys, 12, 12);
    println!("x XOR y on [0,12)^2:");
    print!("{}", grid.to_compact_rows());
}
