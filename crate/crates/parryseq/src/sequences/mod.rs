//! Automatic sequences over a numeration system, in one and two dimensions:
//! evaluation through the machine, characteristic sequences of recognizable
//! sets, the substitution construction, factor complexity, and U-kernels.

pub mod complexity;
pub mod kernel;
pub mod substitution;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Mutex;

use num::bigint::BigInt;
use thiserror::Error;

use crate::automata::{product_dfao, AutomataError, Dfa, Dfao};
use crate::numsys::{NumerationSystem, NumsysError};
use substitution::{automaton_to_substitution, Substitution};

#[derive(Debug, Error)]
pub enum SeqError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("substitution is not prolongable at its seed")]
    NotProlongable,
    #[error("substitution is not uniform")]
    NotUniform,
    #[error("prefix too short: counts stable only up to length {stable}")]
    InsufficientPrefix { stable: usize },
    #[error("kernel table is not closed under one-digit extensions")]
    IncompleteKernel,
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Numsys(#[from] NumsysError),
}

/// A U-automatic sequence: a numeration system with a regular numeration
/// language, and a complete machine with a zero loop evaluated on greedy
/// representations.
#[derive(Debug)]
pub struct AutomaticSequence {
    system: NumerationSystem,
    language: Dfa<u32>,
    machine: Dfao<u32>,
    prefix: Mutex<Vec<u32>>,
}

impl AutomaticSequence {
    pub fn new(
        system: NumerationSystem,
        language: Dfa<u32>,
        machine: Dfao<u32>,
    ) -> Result<Self, SeqError> {
        if !machine.is_complete() {
            return Err(SeqError::InvalidInput("machine must be complete".into()));
        }
        if !machine.has_zero_loop(0) {
            return Err(SeqError::InvalidInput(
                "machine must fix the initial state on digit 0".into(),
            ));
        }
        let alphabet = system.alphabet();
        if machine.alphabet() != alphabet || language.alphabet() != alphabet {
            return Err(SeqError::Automata(AutomataError::AlphabetMismatch));
        }
        Ok(AutomaticSequence {
            system,
            language,
            machine,
            prefix: Mutex::new(Vec::new()),
        })
    }

    pub fn system(&self) -> &NumerationSystem {
        &self.system
    }

    pub fn language(&self) -> &Dfa<u32> {
        &self.language
    }

    pub fn machine(&self) -> &Dfao<u32> {
        &self.machine
    }

    pub fn evaluate(&self, n: u64) -> u32 {
        let rep = self.system.rep_u64(n);
        self.machine.evaluate(&rep.0).expect("machine is complete")
    }

    pub fn evaluate_big(&self, n: &BigInt) -> u32 {
        let rep = self.system.rep(n);
        self.machine.evaluate(&rep.0).expect("machine is complete")
    }

    /// First `len` values, cached across calls.
    pub fn prefix(&self, len: usize) -> Vec<u32> {
        let mut cache = self.prefix.lock().unwrap();
        while cache.len() < len {
            let n = cache.len() as u64;
            let rep = self.system.rep_u64(n);
            cache.push(self.machine.evaluate(&rep.0).expect("machine is complete"));
        }
        cache[..len].to_vec()
    }

    /// Product of the numeration language with the machine; partial exactly
    /// where the language automaton is.
    pub fn product(&self) -> Result<Dfao<u32>, SeqError> {
        Ok(product_dfao(&self.language, &self.machine)?)
    }

    /// The substitution and coding of the product automaton.
    pub fn substitution(&self) -> Result<(Substitution, Vec<u32>), SeqError> {
        automaton_to_substitution(&self.product()?)
    }
}

/// 0/1 sequence whose 1-fiber is `val(0^* rep_U(N) ∩ set_language)`. The
/// machine quantifies over leading-zero paddings of the representation, so
/// the zero-loop invariant holds by construction.
pub fn char_sequence_from_regular_set(
    system: NumerationSystem,
    language: Dfa<u32>,
    set_language: &Dfa<u32>,
) -> Result<AutomaticSequence, SeqError> {
    if set_language.alphabet() != system.alphabet() {
        return Err(SeqError::Automata(AutomataError::AlphabetMismatch));
    }
    let machine = indicator_machine(set_language);
    AutomaticSequence::new(system, language, machine)
}

/// Complete DFAO with output 1 on words `w` such that `0^k w` is accepted for
/// some `k >= 0`. Subset construction over all padding choices; the initial
/// subset absorbs digit 0.
fn indicator_machine(set_language: &Dfa<u32>) -> Dfao<u32> {
    let dfa = set_language.completed();
    // All states reachable from the initial state by zeros.
    let mut closure = vec![dfa.initial()];
    loop {
        let next = dfa.step(*closure.last().unwrap(), 0).unwrap();
        if closure.contains(&next) {
            break;
        }
        closure.push(next);
    }
    let start: Vec<usize> = {
        let mut s = closure.clone();
        s.sort();
        s.dedup();
        s
    };
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start.clone()];
    let mut delta: Vec<Vec<(u32, usize)>> = Vec::new();
    let mut at = 0;
    while at < subsets.len() {
        let current = subsets[at].clone();
        let mut row = Vec::new();
        for &a in dfa.alphabet() {
            let target: Vec<usize> = if at == 0 && a == 0 {
                // More leading zeros: already quantified over.
                start.clone()
            } else {
                let mut t: Vec<usize> =
                    current.iter().map(|&q| dfa.step(q, a).unwrap()).collect();
                t.sort();
                t.dedup();
                t
            };
            let next = *index.entry(target.clone()).or_insert_with(|| {
                subsets.push(target);
                subsets.len() - 1
            });
            row.push((a, next));
        }
        delta.push(row);
        at += 1;
    }
    let outputs = subsets
        .iter()
        .map(|s| u32::from(s.iter().any(|&q| dfa.is_final(q))))
        .collect();
    Dfao::new(dfa.alphabet().to_vec(), 0, outputs, delta).expect("subset construction is valid")
}

/// Two-dimensional evaluation: both representations are padded with leading
/// zeroes to a common length and read as a word of digit pairs.
pub fn evaluate2d(
    machine: &Dfao<(u32, u32)>,
    system: &NumerationSystem,
    m: &BigInt,
    n: &BigInt,
) -> u32 {
    let rm = system.rep(m);
    let rn = system.rep(n);
    let l = rm.len().max(rn.len());
    let pm = rm.padded(l);
    let pn = rn.padded(l);
    let word: Vec<(u32, u32)> = pm.0.iter().zip(&pn.0).map(|(&a, &b)| (a, b)).collect();
    machine.evaluate(&word).expect("machine is complete")
}

pub fn evaluate2d_u64(machine: &Dfao<(u32, u32)>, system: &NumerationSystem, m: u64, n: u64) -> u32 {
    evaluate2d(machine, system, &BigInt::from(m), &BigInt::from(n))
}

/// Combine two complete 1D machines into a pair-reading machine with
/// `combine` applied to the two outputs.
pub fn pair_product_dfao(
    left: &Dfao<u32>,
    right: &Dfao<u32>,
    combine: impl Fn(u32, u32) -> u32,
) -> Result<Dfao<(u32, u32)>, SeqError> {
    if !left.is_complete() || !right.is_complete() {
        return Err(SeqError::Automata(AutomataError::NotComplete));
    }
    let alphabet: Vec<(u32, u32)> = left
        .alphabet()
        .iter()
        .flat_map(|&a| right.alphabet().iter().map(move |&b| (a, b)))
        .collect();
    let n_left = left.num_states();
    let n_right = right.num_states();
    let mut delta = Vec::with_capacity(n_left * n_right);
    let mut outputs = Vec::with_capacity(n_left * n_right);
    for ql in 0..n_left {
        for qr in 0..n_right {
            let row = alphabet
                .iter()
                .map(|&(a, b)| {
                    let tl = left.step(ql, a).unwrap();
                    let tr = right.step(qr, b).unwrap();
                    ((a, b), tl * n_right + tr)
                })
                .collect();
            delta.push(row);
            outputs.push(combine(left.output(ql), right.output(qr)));
        }
    }
    Ok(Dfao::new(
        alphabet,
        left.initial() * n_right + right.initial(),
        outputs,
        delta,
    )?)
}

/// A finite window of a two-dimensional sequence, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid2D {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Grid2D {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(u64, u64) -> u32) -> Grid2D {
        let mut data = Vec::with_capacity(rows * cols);
        for m in 0..rows {
            for n in 0..cols {
                data.push(f(m as u64, n as u64));
            }
        }
        Grid2D { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, m: usize, n: usize) -> u32 {
        self.data[m * self.cols + n]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for m in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|n| self.get(m, n).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    /// Compact rendering, one concatenated row per line.
    pub fn to_compact_rows(&self) -> String {
        let mut out = String::new();
        for m in 0..self.rows {
            for n in 0..self.cols {
                let _ = write!(out, "{}", self.get(m, n));
            }
            out.push('\n');
        }
        out
    }
}

/// Evaluate a 2D machine over a rectangular window.
pub fn grid_from_machine(
    machine: &Dfao<(u32, u32)>,
    system: &NumerationSystem,
    rows: usize,
    cols: usize,
) -> Grid2D {
    Grid2D::from_fn(rows, cols, |m, n| evaluate2d_u64(machine, system, m, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{isolate_real_roots, IntPoly};
    use crate::automata::{canonical_parry_automaton, path_counts, Dfa};
    use crate::beta::{canonical_system, quasi_greedy, QuasiGreedy};
    use std::sync::Arc;

    fn parry(poly: &[i64], root_index: usize) -> QuasiGreedy {
        let beta = Arc::new(
            isolate_real_roots(&IntPoly::from_i64(poly))
                .unwrap()
                .remove(root_index),
        );
        quasi_greedy(&beta, 100).unwrap()
    }

    fn eq41_parts() -> (crate::numsys::NumerationSystem, Dfa<u32>) {
        let qg = parry(&[-3, 0, -2, -3, 1], 1);
        let sys = canonical_system(&qg).unwrap();
        let lang = canonical_parry_automaton(&qg).unwrap();
        (sys, lang)
    }

    fn golden_parts() -> (crate::numsys::NumerationSystem, Dfa<u32>) {
        let qg = parry(&[-1, -1, 1], 1);
        (
            canonical_system(&qg).unwrap(),
            canonical_parry_automaton(&qg).unwrap(),
        )
    }

    /// DFA for the set language `j 0^*`.
    fn j_zero_star(alphabet: Vec<u32>, j: u32) -> Dfa<u32> {
        Dfa::new(
            alphabet,
            0,
            vec![false, true],
            vec![vec![(j, 1)], vec![(0, 1)]],
        )
        .unwrap()
    }

    #[test]
    fn char_sequence_of_terms() {
        let (sys, lang) = eq41_parts();
        let alphabet = sys.alphabet();
        let seq =
            char_sequence_from_regular_set(sys, lang, &j_zero_star(alphabet, 1)).unwrap();
        for (n, expect) in [(0u64, 0), (1, 1), (2, 0), (4, 1), (15, 1), (16, 0), (54, 1)] {
            assert_eq!(seq.evaluate(n), expect, "n = {n}");
        }
        let x: String = seq.prefix(28).iter().map(|v| v.to_string()).collect();
        assert_eq!(x, "0100100000000001000000000000");
    }

    #[test]
    fn char_sequence_of_doubled_terms() {
        let (sys, lang) = eq41_parts();
        let alphabet = sys.alphabet();
        let terms: Vec<u64> = (0..5)
            .map(|k| u64::try_from(&sys.term(k)).unwrap())
            .collect();
        let seq =
            char_sequence_from_regular_set(sys, lang, &j_zero_star(alphabet, 2)).unwrap();
        for n in 0..200u64 {
            let expect = u32::from(terms.iter().any(|&t| 2 * t == n));
            assert_eq!(seq.evaluate(n), expect, "n = {n}");
        }
    }

    #[test]
    fn full_set_gives_constant_one() {
        let (sys, lang) = golden_parts();
        let full = Dfa::new(vec![0, 1], 0, vec![true], vec![vec![(0, 0), (1, 0)]]).unwrap();
        let seq = char_sequence_from_regular_set(sys, lang, &full).unwrap();
        assert!(seq.prefix(100).iter().all(|&v| v == 1));
    }

    #[test]
    fn padding_invariance() {
        let (sys, lang) = eq41_parts();
        let alphabet = sys.alphabet();
        let seq = char_sequence_from_regular_set(sys, lang, &j_zero_star(alphabet, 1)).unwrap();
        for n in [1u64, 4, 7, 15] {
            let rep = seq.system().rep_u64(n);
            let bare = seq.machine().evaluate(&rep.0).unwrap();
            let mut padded = vec![0, 0, 0];
            padded.extend_from_slice(&rep.0);
            assert_eq!(seq.machine().evaluate(&padded), Some(bare));
        }
    }

    #[test]
    fn substitution_of_golden_product() {
        let (sys, lang) = golden_parts();
        // Trivial machine: outputs constant, so the product is the canonical
        // automaton itself.
        let trivial = Dfao::new(vec![0, 1], 0, vec![0], vec![vec![(0, 0), (1, 0)]]).unwrap();
        let seq = AutomaticSequence::new(sys, lang, trivial).unwrap();
        let (sub, _) = seq.substitution().unwrap();
        // a -> ab, b -> a up to state naming.
        assert_eq!(sub.image(0), &[0, 1]);
        assert_eq!(sub.image(1), &[0]);
    }

    #[test]
    fn substitution_fixed_point_matches_evaluation() {
        let (sys, lang) = eq41_parts();
        let alphabet = sys.alphabet();
        let seq = char_sequence_from_regular_set(sys, lang, &j_zero_star(alphabet, 1)).unwrap();
        let (sub, coding) = seq.substitution().unwrap();
        let fp = sub.fixed_point(2000).unwrap();
        let through_sub: Vec<u32> = fp.iter().map(|&l| coding[l]).collect();
        assert_eq!(through_sub, seq.prefix(2000));
    }

    #[test]
    fn image_lengths_equal_path_counts() {
        let (sys, lang) = eq41_parts();
        let alphabet = sys.alphabet();
        let seq = char_sequence_from_regular_set(sys, lang, &j_zero_star(alphabet, 1)).unwrap();
        let product = seq.product().unwrap();
        let (sub, _) = seq.substitution().unwrap();
        for n in 0..=20 {
            let counts = path_counts(&product.support_dfa(), n);
            for q in 0..sub.alphabet_len() {
                assert_eq!(sub.image_lengths(q, n), counts[q], "state {q}, n {n}");
            }
        }
    }

    #[test]
    fn quasi_uniform_growth() {
        let (sys, lang) = eq41_parts();
        let alphabet = sys.alphabet();
        let seq = char_sequence_from_regular_set(sys, lang, &j_zero_star(alphabet, 1)).unwrap();
        let (sub, _) = seq.substitution().unwrap();
        // |sigma^{n+1}(q)| / |sigma^n(q)| converges to one alpha across all
        // states; compare against the Perron estimate beta ~ 3.6164.
        let mut ratios = Vec::new();
        for q in 0..sub.alphabet_len() {
            let a = sub.image_lengths(q, 25);
            let b = sub.image_lengths(q, 26);
            let r = u128::try_from(&b).unwrap() as f64 / u128::try_from(&a).unwrap() as f64;
            ratios.push(r);
        }
        for r in &ratios {
            assert!((r - 3.61645).abs() / 3.61645 < 0.01, "ratio {r}");
        }
    }

    #[test]
    fn uniform_substitution_from_integer_base() {
        let qg = parry(&[-2, 1], 0);
        let sys = canonical_system(&qg).unwrap();
        let lang = canonical_parry_automaton(&qg).unwrap();
        let trivial = Dfao::new(vec![0, 1], 0, vec![0], vec![vec![(0, 0), (1, 0)]]).unwrap();
        let seq = AutomaticSequence::new(sys, lang, trivial).unwrap();
        let (sub, _) = seq.substitution().unwrap();
        assert_eq!(sub.uniform_length(), Some(2));
    }

    #[test]
    fn evaluate2d_pads_to_common_length() {
        let (sys, _) = golden_parts();
        // Machine over pairs: outputs 1 iff the two padded representations
        // are equal, i.e. on the diagonal.
        let alphabet: Vec<(u32, u32)> = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
        let machine = Dfao::new(
            alphabet.clone(),
            0,
            vec![1, 0],
            vec![
                vec![((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 0)],
                vec![((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)],
            ],
        )
        .unwrap();
        for m in 0..20u64 {
            for n in 0..20u64 {
                let expect = u32::from(m == n);
                assert_eq!(evaluate2d_u64(&machine, &sys, m, n), expect);
            }
        }
        // Extra common leading zero pairs do not change the output.
        let rep = sys.rep_u64(4);
        let mut word: Vec<(u32, u32)> = rep.0.iter().map(|&a| (a, a)).collect();
        let bare = machine.evaluate(&word).unwrap();
        word.insert(0, (0, 0));
        word.insert(0, (0, 0));
        assert_eq!(machine.evaluate(&word), Some(bare));
    }

    #[test]
    fn grid_exports() {
        let grid = Grid2D::from_fn(2, 3, |m, n| u32::from(m == n));
        assert_eq!(grid.to_csv(), "1,0,0\n0,1,0\n");
        assert_eq!(grid.to_compact_rows(), "100\n010\n");
    }
}
