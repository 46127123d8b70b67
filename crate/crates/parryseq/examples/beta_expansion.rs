//! Exact beta-expansions in Q(beta): finite, eventually periodic, and
//! (apparently) aperiodic expansions for the same quartic Parry number.

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use parryseq::{beta_expand, isolate_real_roots, FieldElement, IntPoly, PeriodicWord};

fn main() {
    // beta is the dominant root of X^4 - 3X^3 - 2X^2 - 3.
    let roots = isolate_real_roots(&IntPoly::from_i64(&[-3, 0, -2, -3, 1])).unwrap();
    let beta = Arc::new(roots.into_iter().nth(1).unwrap());
    println!("beta = {}", beta.decimal_string(12));

    for (label, p, q) in [("1", 1, 1), ("1/3", 1, 3), ("1/2", 1, 2)] {
        let x = FieldElement::from_rational(
            beta.clone(),
            BigRational::new(BigInt::from(p), BigInt::from(q)),
        );
        let mut exp = beta_expand(&beta, x).unwrap();
        let (digits, cycle) = exp.detect_cycle(40);
        match cycle {
            Some((pre, _)) if exp.remainder().is_zero() => {
                let w = PeriodicWord::new(digits[..pre].to_vec(), vec![0]);
                println!("d_beta({label}) = {w} (finite)");
            }
            Some((pre, per)) => {
                let w = PeriodicWord::new(digits[..pre].to_vec(), digits[pre..pre + per].to_vec());
                println!("d_beta({label}) = {w} (eventually periodic)");
            }
            None => {
                let s: String = digits.iter().map(|d| d.to_string()).collect();
                println!("d_beta({label}) = {s}... (no cycle within 40 exact steps)");
            }
        }
    }
}
