//! Greedy representations in a linear numeration system: rep/val round
//! trips and genealogical enumeration.

use num::bigint::BigInt;
use parryseq::NumerationSystem;

fn main() {
    // U_n = 3U_{n-1} + 2U_{n-2} + 3U_{n-4} with U_0..U_3 = 1, 4, 15, 54.
    let sys = NumerationSystem::from_recurrence(
        vec![3, 2, 0, 3].into_iter().map(BigInt::from).collect(),
        vec![1, 4, 15, 54].into_iter().map(BigInt::from).collect(),
    )
    .unwrap();

    println!("terms: {:?}", (0..8).map(|n| sys.term(n)).collect::<Vec<_>>());
    println!("alphabet: {:?}", sys.alphabet());
    for n in [0u32, 1, 16, 54, 100, 2023] {
        let rep = sys.rep(&BigInt::from(n));
        println!("rep({n}) = {rep}, val back = {}", sys.val(&rep));
    }
    println!("first representations in genealogical order:");
    for n in 0..12u32 {
        print!("{} ", sys.rep(&BigInt::from(n)));
    }
    println!();
}
