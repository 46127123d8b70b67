//! The canonical automaton of a Parry number, its DOT export, and the
//! Bertrand language identity (including a failing case).

use std::sync::Arc;

use num::bigint::BigInt;
use parryseq::{
    bertrand_language_check, canonical_parry_automaton, canonical_system, is_primitive,
    isolate_real_roots, quasi_greedy, IntPoly, NumerationSystem,
};

fn main() {
    let roots = isolate_real_roots(&IntPoly::from_i64(&[-1, -1, 1])).unwrap();
    let golden = Arc::new(roots.into_iter().nth(1).unwrap());
    let qg = quasi_greedy(&golden, 50).unwrap();
    println!("quasi-greedy expansion of 1: {}", qg.periodic().unwrap());

    let aut = canonical_parry_automaton(&qg).unwrap();
    println!("canonical automaton, primitive = {}:", is_primitive(&aut));
    println!("{}", aut.to_dot());

    // The canonical system satisfies Bertrand's identity...
    let canonical = canonical_system(&qg).unwrap();
    let (ok, _) = bertrand_language_check(&qg, &canonical, 6);
    println!("canonical initial conditions: identity holds = {ok}");

    // ...but shifting the initial conditions to 1, 3 breaks it.
    let modified = NumerationSystem::from_recurrence(
        vec![BigInt::from(1), BigInt::from(1)],
        vec![BigInt::from(1), BigInt::from(3)],
    )
    .unwrap();
    let (ok, witness) = bertrand_language_check(&qg, &modified, 6);
    println!(
        "initial conditions 1, 3: identity holds = {ok}, least counterexample = {}",
        witness.unwrap()
    );
}
