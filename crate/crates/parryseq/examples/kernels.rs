//! U-kernels: the one-dimensional kernel of an automatic sequence and a
//! two-dimensional kernel round trip back to a machine.

use num::bigint::BigInt;
use parryseq::{
    char_sequence_from_regular_set, grid_from_machine, kernel, kernel2d,
    kernel2d_to_forward_dfao, kernel_finiteness, language_dfa, pair_product_dfao,
    right_quotients, Dfa, NumerationSystem,
};

fn main() {
    let sys = NumerationSystem::from_recurrence(
        vec![BigInt::from(1), BigInt::from(1)],
        vec![BigInt::from(1), BigInt::from(2)],
    )
    .unwrap();
    let language = language_dfa(&sys, 12).unwrap();
    let set = Dfa::new(
        sys.alphabet(),
        0,
        vec![false, true],
        vec![vec![(1, 1)], vec![(0, 1)]],
    )
    .unwrap();
    let seq = char_sequence_from_regular_set(sys.clone(), language.clone(), &set).unwrap();

    println!("kernel closure: {} classes", kernel_finiteness(&seq).unwrap());
    let table = kernel(&seq, 2, 8).unwrap();
    println!("{}", table.to_json());

    // Two-dimensional kernel of x XOR y, then back to a forward machine.
    let machine2d = pair_product_dfao(seq.machine(), seq.machine(), |a, b| a ^ b).unwrap();
    let table2d = kernel2d(&machine2d, &sys, &language, 2, 4).unwrap();
    let quotients = right_quotients(&language);
    let forward = kernel2d_to_forward_dfao(&table2d, &quotients).unwrap();
    let original = grid_from_machine(&machine2d, &sys, 20, 20);
    let rebuilt = grid_from_machine(&forward, &sys, 20, 20);
    println!("2D kernel round trip on [0,20)^2: {}", original == rebuilt);
}
