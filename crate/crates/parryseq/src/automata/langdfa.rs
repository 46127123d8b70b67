//! Construction of the language automaton of `0^* rep_U(N)` for a general
//! linear numeration system, where no closed-form recipe (such as the
//! canonical Parry automaton) applies.
//!
//! States are discovered as equivalence classes of word suffixes under a
//! finite battery of left-extension membership tests, answered exactly by the
//! greedy validity predicate. A finite test battery can over-merge, so the
//! candidate automaton is then verified against the predicate: exhaustively
//! word by word up to a budget, by an exact census of accepted words per
//! length against the terms of the recurrence, and against the greedy
//! representations themselves in genealogical order; on failure the battery
//! grows and the construction retries. The result is therefore exact on every
//! word inside the verification budget and comes with no proof beyond it.

use std::collections::{BTreeSet, HashMap};

use num::bigint::BigInt;
use num::{One, Zero};

use super::{enumerate_genealogical, AutomataError, Dfa};
use crate::numsys::{DigitWord, NumerationSystem};

/// Build a minimal DFA for `0^* rep_U(N)`. `verify_len` bounds the
/// word-by-word exhaustive check against the greedy validity predicate
/// (internally capped so the check stays near 10^5 words on wide alphabets)
/// and the depth of the exact census: for every length up to
/// `max(verify_len, 24)` the number of accepted zero-stripped words must
/// equal `U_m - U_{m-1}`, the number of integers whose representation has
/// length `m`.
pub fn language_dfa(
    system: &NumerationSystem,
    verify_len: usize,
) -> Result<Dfa<u32>, AutomataError> {
    let alphabet: Vec<u32> = system.alphabet();
    let k = alphabet.len();
    // Test battery depth chosen so the battery stays around 30k words.
    let mut depth = 1usize;
    while battery_size(k, depth + 1) <= 30_000 {
        depth += 1;
    }
    let mut exhaustive = 1usize;
    while exhaustive < verify_len && battery_size(k, exhaustive + 1) <= 100_000 {
        exhaustive += 1;
    }
    for attempt in 0..3 {
        let t = depth + 2 * attempt;
        if let Some(dfa) = learn(system, &alphabet, t)? {
            if verify(system, &dfa, exhaustive, verify_len.max(24)) {
                return Ok(dfa);
            }
        }
    }
    Err(AutomataError::LanguageNotStabilized)
}

fn battery_size(k: usize, depth: usize) -> usize {
    let mut total = 0usize;
    let mut layer = 1usize;
    for _ in 0..=depth {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(k);
    }
    total
}

/// All words over the alphabet of length at most `depth`, shortest first.
fn battery(alphabet: &[u32], depth: usize) -> Vec<Vec<u32>> {
    let mut all: Vec<Vec<u32>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &frontier {
            for &a in alphabet {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Learn the automaton that reads words least-significant-digit first, then
/// reverse-determinize it into the most-significant-first DFA.
fn learn(
    system: &NumerationSystem,
    alphabet: &[u32],
    test_depth: usize,
) -> Result<Option<Dfa<u32>>, AutomataError> {
    const MAX_STATES: usize = 200;
    let tests = battery(alphabet, test_depth);
    let signature = |suffix: &[u32]| -> Vec<bool> {
        tests
            .iter()
            .map(|z| {
                let mut w = z.clone();
                w.extend_from_slice(suffix);
                system.is_valid_padded(&DigitWord(w))
            })
            .collect()
    };

    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut reps: Vec<Vec<u32>> = Vec::new();
    let mut accepting: Vec<bool> = Vec::new();
    let mut delta: Vec<Vec<(u32, usize)>> = Vec::new();
    let eps_sig = signature(&[]);
    accepting.push(eps_sig[0]);
    index.insert(eps_sig, 0);
    reps.push(Vec::new());
    let mut at = 0;
    while at < reps.len() {
        let rep = reps[at].clone();
        let mut row = Vec::new();
        for &a in alphabet {
            // Reading least-significant first: the next digit is one position
            // more significant, i.e. prepended to the suffix.
            let mut v = vec![a];
            v.extend_from_slice(&rep);
            let sig = signature(&v);
            let accept = sig[0];
            let next = match index.get(&sig) {
                Some(&i) => i,
                None => {
                    index.insert(sig, reps.len());
                    reps.push(v);
                    accepting.push(accept);
                    reps.len() - 1
                }
            };
            row.push((a, next));
        }
        delta.push(row);
        at += 1;
        if reps.len() > MAX_STATES {
            return Ok(None);
        }
    }
    let lsf = Dfa::new(alphabet.to_vec(), 0, accepting, delta)?;
    Ok(Some(reverse_determinize(&lsf).minimized()))
}

/// The DFA of the reversed language: subset construction on the reversed
/// transition relation, starting from the final states.
fn reverse_determinize(dfa: &Dfa<u32>) -> Dfa<u32> {
    let start: BTreeSet<usize> = (0..dfa.num_states())
        .filter(|&q| dfa.is_final(q))
        .collect();
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut delta: Vec<Vec<(u32, usize)>> = Vec::new();
    let mut accepting = Vec::new();
    let mut at = 0;
    while at < subsets.len() {
        let current = subsets[at].clone();
        accepting.push(current.contains(&dfa.initial()));
        let mut row = Vec::new();
        for &a in dfa.alphabet() {
            let pre: BTreeSet<usize> = (0..dfa.num_states())
                .filter(|&q| dfa.step(q, a).map(|t| current.contains(&t)).unwrap_or(false))
                .collect();
            let next = *index.entry(pre.clone()).or_insert_with(|| {
                subsets.push(pre);
                subsets.len() - 1
            });
            row.push((a, next));
        }
        delta.push(row);
        at += 1;
    }
    Dfa::new(dfa.alphabet().to_vec(), 0, accepting, delta).expect("subset construction is valid")
}

fn verify(system: &NumerationSystem, dfa: &Dfa<u32>, exhaustive_len: usize, count_len: usize) -> bool {
    // Exhaustive agreement with the validity predicate up to the budget.
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if dfa.accepts(&w) != system.is_valid_padded(&DigitWord(w.clone())) {
            return false;
        }
        if w.len() < exhaustive_len {
            for &a in dfa.alphabet() {
                let mut v = w.clone();
                v.push(a);
                stack.push(v);
            }
        }
    }
    // Exact census: the integers whose representation has length m are
    // exactly those in [U_{m-1}, U_m), so the stripped automaton must accept
    // exactly U_m - U_{m-1} words of each length m.
    let stripped = dfa.zero_stripped(0);
    let mut dist = vec![BigInt::zero(); stripped.num_states()];
    dist[stripped.initial()] = BigInt::one();
    for m in 1..=count_len {
        let mut next = vec![BigInt::zero(); stripped.num_states()];
        for q in 0..stripped.num_states() {
            if dist[q].is_zero() {
                continue;
            }
            for &a in stripped.alphabet() {
                if let Some(t) = stripped.step(q, a) {
                    next[t] += &dist[q];
                }
            }
        }
        dist = next;
        let accepted: BigInt = (0..stripped.num_states())
            .filter(|&q| stripped.is_final(q))
            .map(|q| dist[q].clone())
            .sum();
        if accepted != system.term(m) - system.term(m - 1) {
            return false;
        }
    }
    // The zero-stripped language must enumerate the greedy representations.
    for (n, w) in enumerate_genealogical(&stripped, 2000).iter().enumerate() {
        if DigitWord(w.clone()) != system.rep_u64(n as u64) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{equivalent, is_bertrand_regular, canonical_parry_automaton};
    use crate::beta::quasi_greedy;
    use crate::algebraic::{isolate_real_roots, IntPoly};
    use num::bigint::BigInt;
    use std::sync::Arc;

    fn modified_fibonacci() -> NumerationSystem {
        NumerationSystem::from_recurrence(
            vec![BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3)],
        )
        .unwrap()
    }

    #[test]
    fn modified_fibonacci_language() {
        let sys = modified_fibonacci();
        let dfa = language_dfa(&sys, 10).unwrap();
        // Digit 2 is allowed only as the final digit, preceded by 0 or alone.
        assert!(dfa.accepts(&[2]));
        assert!(dfa.accepts(&[1, 0, 2]));
        assert!(!dfa.accepts(&[2, 0]));
        assert!(!dfa.accepts(&[1, 2]));
        let (bertrand, cex) = is_bertrand_regular(&dfa);
        assert!(!bertrand);
        assert_eq!(cex.unwrap().to_string(), "2");
    }

    #[test]
    fn example_23_language_matches_figure_1() {
        // U_n = (3^{n+1} - 1)/2: 1, 4, 13, 40, ...
        let sys = NumerationSystem::from_recurrence_affine(
            vec![BigInt::from(3)],
            BigInt::from(1),
            vec![BigInt::from(1)],
        )
        .unwrap();
        let dfa = language_dfa(&sys, 8).unwrap();
        let figure1 = Dfa::new(
            vec![0, 1, 2, 3],
            0,
            vec![true, true],
            vec![vec![(0, 0), (1, 0), (2, 0), (3, 1)], vec![(0, 1)]],
        )
        .unwrap();
        let (eq, cex) = equivalent(&dfa, &figure1).unwrap();
        assert!(eq, "difference at {cex:?}");
        let (bertrand, _) = is_bertrand_regular(&dfa);
        assert!(bertrand);
    }

    #[test]
    fn fibonacci_language_matches_canonical_automaton() {
        let phi = Arc::new(
            isolate_real_roots(&IntPoly::from_i64(&[-1, -1, 1]))
                .unwrap()
                .remove(1),
        );
        let qg = quasi_greedy(&phi, 100).unwrap();
        let canonical = canonical_parry_automaton(&qg).unwrap();
        let sys = crate::beta::canonical_system(&qg).unwrap();
        let learned = language_dfa(&sys, 12).unwrap();
        let (eq, cex) = equivalent(&learned, &canonical).unwrap();
        assert!(eq, "difference at {cex:?}");
    }
}
