//! Deterministic finite automata and automata with output (DFAOs) over digit
//! alphabets and digit pairs: the canonical Parry automaton, products, right
//! quotients, language equivalence with genealogically least counterexamples,
//! the Bertrand-property decision, genealogical enumeration, path counting,
//! primitivity, and DFAO reversal.
//!
//! Numeration automata are partial by design; [`Dfa::completed`] adds an
//! explicit sink where a total machine is required. All automata are immutable
//! after construction.

pub mod langdfa;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;
use std::hash::Hash;

use num::bigint::BigInt;
use num::{One, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::beta::{BetaError, QuasiGreedy};
use crate::numsys::DigitWord;

#[derive(Debug, Error)]
pub enum AutomataError {
    #[error("automata have different alphabets")]
    AlphabetMismatch,
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("operation requires a complete automaton")]
    NotComplete,
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error("could not stabilize a finite language automaton")]
    LanguageNotStabilized,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Beta(#[from] BetaError),
}

/// Transition labels: plain digits in one dimension, ordered digit pairs in
/// two dimensions.
pub trait Symbol: Copy + Ord + Eq + Hash + fmt::Debug + 'static {
    fn label(&self) -> String;
}

impl Symbol for u32 {
    fn label(&self) -> String {
        self.to_string()
    }
}

impl Symbol for (u32, u32) {
    fn label(&self) -> String {
        format!("{},{}", self.0, self.1)
    }
}

/// A deterministic finite automaton with a possibly partial transition map.
/// Missing transitions reject.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dfa<S: Symbol> {
    alphabet: Vec<S>,
    initial: usize,
    finals: Vec<bool>,
    /// Per state, sorted `(symbol, target)` pairs.
    delta: Vec<Vec<(S, usize)>>,
}

impl<S: Symbol> Dfa<S> {
    pub fn new(
        alphabet: Vec<S>,
        initial: usize,
        finals: Vec<bool>,
        transitions: Vec<Vec<(S, usize)>>,
    ) -> Result<Self, AutomataError> {
        let mut alphabet = alphabet;
        alphabet.sort();
        alphabet.dedup();
        let n = finals.len();
        if n == 0 || initial >= n || transitions.len() != n {
            return Err(AutomataError::InvalidAutomaton(
                "state counts are inconsistent".into(),
            ));
        }
        let mut delta = transitions;
        for row in &mut delta {
            row.sort();
            for w in row.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(AutomataError::InvalidAutomaton(
                        "duplicate transition".into(),
                    ));
                }
            }
            for &(s, t) in row.iter() {
                if t >= n || alphabet.binary_search(&s).is_err() {
                    return Err(AutomataError::InvalidAutomaton(
                        "transition out of range".into(),
                    ));
                }
            }
        }
        Ok(Dfa {
            alphabet,
            initial,
            finals,
            delta,
        })
    }

    pub fn alphabet(&self) -> &[S] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn step(&self, q: usize, s: S) -> Option<usize> {
        self.delta[q]
            .binary_search_by(|probe| probe.0.cmp(&s))
            .ok()
            .map(|i| self.delta[q][i].1)
    }

    pub fn run(&self, word: &[S]) -> Option<usize> {
        word.iter()
            .try_fold(self.initial, |q, &s| self.step(q, s))
    }

    pub fn accepts(&self, word: &[S]) -> bool {
        self.run(word).map(|q| self.finals[q]).unwrap_or(false)
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.len() == self.alphabet.len())
    }

    /// Total version: missing transitions routed to a fresh non-final sink.
    pub fn completed(&self) -> Dfa<S> {
        if self.is_complete() {
            return self.clone();
        }
        let sink = self.num_states();
        let mut delta = self.delta.clone();
        for row in &mut delta {
            let missing: Vec<S> = self
                .alphabet
                .iter()
                .copied()
                .filter(|&s| row.binary_search_by(|p| p.0.cmp(&s)).is_err())
                .collect();
            row.extend(missing.into_iter().map(|s| (s, sink)));
            row.sort();
        }
        delta.push(self.alphabet.iter().map(|&s| (s, sink)).collect());
        let mut finals = self.finals.clone();
        finals.push(false);
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            finals,
            delta,
        }
    }

    /// Hopcroft-style minimization by iterated refinement; the result is
    /// complete, with unreachable states dropped first.
    pub fn minimized(&self) -> Dfa<S> {
        let c = self.completed().reachable();
        let labels: Vec<usize> = c.finals.iter().map(|&f| usize::from(f)).collect();
        let classes = moore_refine(&c.delta, &c.alphabet, labels);
        c.quotient(&classes, |reps| c.finals[reps[0]])
    }

    /// Restriction to states reachable from the initial state.
    fn reachable(&self) -> Dfa<S> {
        let order = reachable_order(self.num_states(), self.initial, |q| {
            self.delta[q].iter().map(|&(_, t)| t).collect()
        });
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            finals: order.iter().map(|&q| self.finals[q]).collect(),
            delta: order
                .iter()
                .map(|&q| {
                    self.delta[q]
                        .iter()
                        .map(|&(s, t)| (s, index[t]))
                        .collect()
                })
                .collect(),
        }
    }

    fn quotient(&self, classes: &[usize], is_final: impl Fn(&[usize]) -> bool) -> Dfa<S> {
        let k = classes.iter().max().map(|m| m + 1).unwrap_or(0);
        let mut reps: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (q, &c) in classes.iter().enumerate() {
            reps[c].push(q);
        }
        let delta = reps
            .iter()
            .map(|r| {
                self.delta[r[0]]
                    .iter()
                    .map(|&(s, t)| (s, classes[t]))
                    .collect()
            })
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: classes[self.initial],
            finals: reps.iter().map(|r| is_final(r)).collect(),
            delta,
        }
    }

    /// The language with leading zeros removed: `rep` words instead of
    /// `0^* rep` words. A fresh initial state drops the zero self-entry.
    pub fn zero_stripped(&self, zero: S) -> Dfa<S> {
        let fresh = self.num_states();
        let mut delta = self.delta.clone();
        delta.push(
            self.delta[self.initial]
                .iter()
                .filter(|&&(s, _)| s != zero)
                .cloned()
                .collect(),
        );
        let mut finals = self.finals.clone();
        finals.push(self.finals[self.initial]);
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: fresh,
            finals,
            delta,
        }
    }

    /// GraphViz rendering; final states are double-circled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n");
        for q in 0..self.num_states() {
            let shape = if self.finals[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{q} [shape={shape}, label=\"q{q}\"];");
        }
        let _ = writeln!(out, "  init -> q{};", self.initial);
        for (q, row) in self.delta.iter().enumerate() {
            for &(s, t) in row {
                let _ = writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", s.label());
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Result<String, AutomataError>
    where
        S: Serialize,
    {
        Ok(serde_json::to_string_pretty(&Envelope {
            schema_version: SCHEMA_VERSION,
            automaton: self.clone(),
        })?)
    }

    pub fn from_json(s: &str) -> Result<Self, AutomataError>
    where
        S: DeserializeOwned,
    {
        let env: Envelope<Dfa<S>> = serde_json::from_str(s)?;
        if env.schema_version != SCHEMA_VERSION {
            return Err(AutomataError::SchemaVersion(env.schema_version));
        }
        Ok(env.automaton)
    }
}

const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    schema_version: u32,
    automaton: T,
}

/// A deterministic automaton with output. Transitions may be partial (a
/// product with a partial numeration automaton stays partial); operations
/// that require totality say so.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dfao<S: Symbol> {
    alphabet: Vec<S>,
    initial: usize,
    outputs: Vec<u32>,
    delta: Vec<Vec<(S, usize)>>,
}

impl<S: Symbol> Dfao<S> {
    pub fn new(
        alphabet: Vec<S>,
        initial: usize,
        outputs: Vec<u32>,
        transitions: Vec<Vec<(S, usize)>>,
    ) -> Result<Self, AutomataError> {
        let finals = vec![true; outputs.len()];
        let dfa = Dfa::new(alphabet, initial, finals, transitions)?;
        Ok(Dfao {
            alphabet: dfa.alphabet,
            initial: dfa.initial,
            outputs,
            delta: dfa.delta,
        })
    }

    pub fn alphabet(&self) -> &[S] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.outputs.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn output(&self, q: usize) -> u32 {
        self.outputs[q]
    }

    pub fn step(&self, q: usize, s: S) -> Option<usize> {
        self.delta[q]
            .binary_search_by(|probe| probe.0.cmp(&s))
            .ok()
            .map(|i| self.delta[q][i].1)
    }

    pub fn run(&self, word: &[S]) -> Option<usize> {
        word.iter()
            .try_fold(self.initial, |q, &s| self.step(q, s))
    }

    /// Output after reading `word` from the initial state; `None` on a
    /// missing transition.
    pub fn evaluate(&self, word: &[S]) -> Option<u32> {
        self.run(word).map(|q| self.outputs[q])
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.len() == self.alphabet.len())
    }

    /// Whether reading `zero` loops on the initial state (leading-zero
    /// invariance of forward machines).
    pub fn has_zero_loop(&self, zero: S) -> bool {
        self.step(self.initial, zero) == Some(self.initial)
    }

    /// Underlying automaton with every state final.
    pub fn support_dfa(&self) -> Dfa<S> {
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            finals: vec![true; self.num_states()],
            delta: self.delta.clone(),
        }
    }

    /// Minimal complete machine with the same output function. Requires
    /// completeness.
    pub fn minimized(&self) -> Result<Dfao<S>, AutomataError> {
        if !self.is_complete() {
            return Err(AutomataError::NotComplete);
        }
        let reach = reachable_order(self.num_states(), self.initial, |q| {
            self.delta[q].iter().map(|&(_, t)| t).collect()
        });
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &q) in reach.iter().enumerate() {
            index[q] = i;
        }
        let delta: Vec<Vec<(S, usize)>> = reach
            .iter()
            .map(|&q| self.delta[q].iter().map(|&(s, t)| (s, index[t])).collect())
            .collect();
        let outputs: Vec<u32> = reach.iter().map(|&q| self.outputs[q]).collect();
        let labels: Vec<usize> = outputs.iter().map(|&o| o as usize).collect();
        let classes = moore_refine(&delta, &self.alphabet, labels);
        let k = classes.iter().max().map(|m| m + 1).unwrap_or(0);
        let mut rep = vec![usize::MAX; k];
        for (q, &c) in classes.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = q;
            }
        }
        Dfao::new(
            self.alphabet.clone(),
            classes[index[self.initial]],
            rep.iter().map(|&q| outputs[q]).collect(),
            rep.iter()
                .map(|&q| delta[q].iter().map(|&(s, t)| (s, classes[t])).collect())
                .collect(),
        )
    }

    /// GraphViz rendering with outputs as state labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfao {\n  rankdir=LR;\n  init [shape=point];\n");
        for q in 0..self.num_states() {
            let _ = writeln!(
                out,
                "  q{q} [shape=circle, label=\"q{q}/{}\"];",
                self.outputs[q]
            );
        }
        let _ = writeln!(out, "  init -> q{};", self.initial);
        for (q, row) in self.delta.iter().enumerate() {
            for &(s, t) in row {
                let _ = writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", s.label());
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Result<String, AutomataError>
    where
        S: Serialize,
    {
        Ok(serde_json::to_string_pretty(&Envelope {
            schema_version: SCHEMA_VERSION,
            automaton: self.clone(),
        })?)
    }

    pub fn from_json(s: &str) -> Result<Self, AutomataError>
    where
        S: DeserializeOwned,
    {
        let env: Envelope<Dfao<S>> = serde_json::from_str(s)?;
        if env.schema_version != SCHEMA_VERSION {
            return Err(AutomataError::SchemaVersion(env.schema_version));
        }
        Ok(env.automaton)
    }
}

fn reachable_order(n: usize, initial: usize, succ: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([initial]);
    seen[initial] = true;
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for t in succ(q) {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    order
}

/// Partition refinement on a complete transition table starting from the
/// given state labels. Returns the final class of each state.
fn moore_refine<S: Symbol>(
    delta: &[Vec<(S, usize)>],
    alphabet: &[S],
    labels: Vec<usize>,
) -> Vec<usize> {
    let mut classes = relabel(labels);
    loop {
        let mut sig: Vec<(usize, Vec<usize>)> = Vec::with_capacity(delta.len());
        for (q, row) in delta.iter().enumerate() {
            let succ = alphabet
                .iter()
                .map(|&s| {
                    let i = row.binary_search_by(|p| p.0.cmp(&s)).unwrap();
                    classes[row[i].1]
                })
                .collect();
            sig.push((classes[q], succ));
        }
        let mut index = HashMap::new();
        let next: Vec<usize> = sig
            .iter()
            .map(|s| {
                let n = index.len();
                *index.entry(s.clone()).or_insert(n)
            })
            .collect();
        if next == classes {
            return classes;
        }
        classes = next;
    }
}

fn relabel(labels: Vec<usize>) -> Vec<usize> {
    let mut index = HashMap::new();
    labels
        .into_iter()
        .map(|l| {
            let n = index.len();
            *index.entry(l).or_insert(n)
        })
        .collect()
}

/// The canonical automaton of a Parry number, built from the quasi-greedy
/// expansion `t_1 ... t_i (t_{i+1} ... t_{i+p})^omega`: from state `j-1` digit
/// `t_j` advances, smaller digits reset to the initial state, larger digits
/// reject; the advance from the last state wraps to state `i`. Every state is
/// final.
pub fn canonical_parry_automaton(qg: &QuasiGreedy) -> Result<Dfa<u32>, AutomataError> {
    let word = qg.periodic().ok_or(BetaError::NotParry)?;
    let (i, p) = (word.preperiod(), word.period());
    let n = i + p;
    let max_digit = (1..=n).map(|j| word.digit(j)).max().unwrap_or(0);
    let alphabet: Vec<u32> = (0..=max_digit).collect();
    let mut delta = Vec::with_capacity(n);
    for j in 1..=n {
        let t = word.digit(j);
        let advance = if j == n { i } else { j };
        let mut row: Vec<(u32, usize)> = (0..t).map(|d| (d, 0)).collect();
        row.push((t, advance));
        delta.push(row);
    }
    Ok(Dfa::new(alphabet, 0, vec![true; n], delta)?)
}

/// Product of a (possibly partial) numeration automaton with a complete
/// machine; outputs come from the machine component. Only reachable pairs are
/// kept, so the product stays partial exactly where the numeration automaton
/// is.
pub fn product_dfao<S: Symbol>(
    numeration: &Dfa<S>,
    machine: &Dfao<S>,
) -> Result<Dfao<S>, AutomataError> {
    if numeration.alphabet() != machine.alphabet() {
        return Err(AutomataError::AlphabetMismatch);
    }
    if !machine.is_complete() {
        return Err(AutomataError::NotComplete);
    }
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let start = (numeration.initial(), machine.initial());
    index.insert(start, 0);
    order.push(start);
    let mut delta: Vec<Vec<(S, usize)>> = Vec::new();
    let mut at = 0;
    while at < order.len() {
        let (qa, qb) = order[at];
        let mut row = Vec::new();
        for &s in numeration.alphabet() {
            if let Some(ta) = numeration.step(qa, s) {
                let tb = machine.step(qb, s).unwrap();
                let key = (ta, tb);
                let next = *index.entry(key).or_insert_with(|| {
                    order.push(key);
                    order.len() - 1
                });
                row.push((s, next));
            }
        }
        delta.push(row);
        at += 1;
    }
    Dfao::new(
        numeration.alphabet().to_vec(),
        0,
        order.iter().map(|&(_, qb)| machine.output(qb)).collect(),
        delta,
    )
}

/// The right quotients `L s^{-1} = {w : ws in L}` of a regular language,
/// computed as the subsets of states from which the suffix leads to a final
/// state. Finitely many subsets are reachable; each is one quotient class.
pub struct RightQuotients<S: Symbol> {
    base: Dfa<S>,
    classes: Vec<BTreeSet<usize>>,
    /// `delta[class][k]` = class of `s' = symbol_k . s`, i.e. the effect of
    /// prepending one digit to the suffix.
    delta: Vec<Vec<usize>>,
    eps: usize,
}

pub fn right_quotients<S: Symbol>(language: &Dfa<S>) -> RightQuotients<S> {
    let base = language.clone();
    let final_set: BTreeSet<usize> = (0..base.num_states())
        .filter(|&q| base.is_final(q))
        .collect();
    let mut classes = vec![final_set.clone()];
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::from([(final_set, 0)]);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut at = 0;
    while at < classes.len() {
        let current = classes[at].clone();
        let mut row = Vec::new();
        for &s in base.alphabet() {
            let pre: BTreeSet<usize> = (0..base.num_states())
                .filter(|&q| base.step(q, s).map(|t| current.contains(&t)).unwrap_or(false))
                .collect();
            let next = *index.entry(pre.clone()).or_insert_with(|| {
                classes.push(pre);
                classes.len() - 1
            });
            row.push(next);
        }
        delta.push(row);
        at += 1;
    }
    RightQuotients {
        base,
        classes,
        delta,
        eps: 0,
    }
}

impl<S: Symbol> RightQuotients<S> {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn alphabet(&self) -> &[S] {
        self.base.alphabet()
    }

    pub fn epsilon_class(&self) -> usize {
        self.eps
    }

    /// The state subset representing a class.
    pub fn class_states(&self, class: usize) -> &BTreeSet<usize> {
        &self.classes[class]
    }

    /// Class of `L s^{-1}`, folding the suffix from its last symbol inward.
    pub fn classify(&self, suffix: &[S]) -> usize {
        let mut class = self.eps;
        for &s in suffix.iter().rev() {
            class = self.extend(class, s);
        }
        class
    }

    /// Class of the suffix `s . old`, one digit longer at the front.
    pub fn extend(&self, class: usize, symbol: S) -> usize {
        let k = self
            .base
            .alphabet()
            .binary_search(&symbol)
            .expect("symbol not in alphabet");
        self.delta[class][k]
    }

    /// The quotient language as an automaton: same structure, finals replaced
    /// by the class's state subset.
    pub fn class_dfa(&self, class: usize) -> Dfa<S> {
        let mut dfa = self.base.clone();
        dfa.finals = (0..dfa.num_states())
            .map(|q| self.classes[class].contains(&q))
            .collect();
        dfa
    }
}

/// Language equivalence; on failure the genealogically least distinguishing
/// word is returned.
pub fn equivalent<S: Symbol>(
    a: &Dfa<S>,
    b: &Dfa<S>,
) -> Result<(bool, Option<Vec<S>>), AutomataError> {
    if a.alphabet() != b.alphabet() {
        return Err(AutomataError::AlphabetMismatch);
    }
    let ca = a.completed();
    let cb = b.completed();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    // Parent pointers reconstruct the witness word.
    let mut parents: Vec<(usize, Option<S>)> = Vec::new();
    let start = (ca.initial(), cb.initial());
    seen.insert(start, 0);
    parents.push((0, None));
    let mut queue = VecDeque::from([start]);
    let mut order = vec![start];
    while let Some((qa, qb)) = queue.pop_front() {
        let id = seen[&(qa, qb)];
        if ca.is_final(qa) != cb.is_final(qb) {
            let mut word = Vec::new();
            let mut at = id;
            while let (p, Some(s)) = parents[at] {
                word.push(s);
                at = p;
            }
            word.reverse();
            return Ok((false, Some(word)));
        }
        for &s in ca.alphabet() {
            let next = (ca.step(qa, s).unwrap(), cb.step(qb, s).unwrap());
            if !seen.contains_key(&next) {
                seen.insert(next, order.len());
                parents.push((id, Some(s)));
                order.push(next);
                queue.push_back(next);
            }
        }
    }
    Ok((true, None))
}

/// Decide the Bertrand property of a language `L = 0^* rep_U(N)`: membership
/// must be preserved by appending one zero, in both directions. Compares `L`
/// against `L 0^{-1}` and reports the genealogically least counterexample.
pub fn is_bertrand_regular(language: &Dfa<u32>) -> (bool, Option<DigitWord>) {
    let mut shifted = language.clone();
    shifted.finals = (0..language.num_states())
        .map(|q| {
            language
                .step(q, 0)
                .map(|t| language.is_final(t))
                .unwrap_or(false)
        })
        .collect();
    let (eq, cex) = equivalent(language, &shifted).expect("same alphabet by construction");
    (eq, cex.map(DigitWord))
}

/// The first `count` accepted words in genealogical order (shorter first,
/// lexicographic within a length).
pub fn enumerate_genealogical<S: Symbol>(language: &Dfa<S>, count: usize) -> Vec<Vec<S>> {
    let mut out = Vec::new();
    if count == 0 {
        return out;
    }
    // Prune states that cannot reach a final state, so the frontier never
    // wanders into dead ends.
    let n = language.num_states();
    let mut alive = language.finals.clone();
    loop {
        let mut changed = false;
        for q in 0..n {
            if !alive[q]
                && language
                    .alphabet()
                    .iter()
                    .any(|&s| language.step(q, s).map(|t| alive[t]).unwrap_or(false))
            {
                alive[q] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if !alive[language.initial()] {
        return out;
    }
    let mut frontier: Vec<(usize, Vec<S>)> = vec![(language.initial(), Vec::new())];
    loop {
        for (q, w) in &frontier {
            if language.is_final(*q) {
                out.push(w.clone());
                if out.len() == count {
                    return out;
                }
            }
        }
        let mut next = Vec::new();
        for (q, w) in &frontier {
            for &s in language.alphabet() {
                if let Some(t) = language.step(*q, s) {
                    if alive[t] {
                        let mut v = w.clone();
                        v.push(s);
                        next.push((t, v));
                    }
                }
            }
        }
        if next.is_empty() {
            return out;
        }
        frontier = next;
    }
}

/// Exact counts of length-`n` paths out of each state: the row sums of the
/// n-th power of the adjacency matrix, with edge multiplicities.
pub fn path_counts<S: Symbol>(dfa: &Dfa<S>, n: usize) -> Vec<BigInt> {
    let mut counts = vec![BigInt::one(); dfa.num_states()];
    for _ in 0..n {
        counts = (0..dfa.num_states())
            .map(|q| {
                let mut acc = BigInt::zero();
                for &(_, t) in &dfa.delta[q] {
                    acc += &counts[t];
                }
                acc
            })
            .collect();
    }
    counts
}

/// Primitivity of the transition graph: strongly connected with cycle-length
/// gcd one.
pub fn is_primitive<S: Symbol>(dfa: &Dfa<S>) -> bool {
    let n = dfa.num_states();
    let succ = |q: usize| -> Vec<usize> { dfa.delta[q].iter().map(|&(_, t)| t).collect() };
    let fwd = reachable_order(n, 0, succ);
    if fwd.len() != n {
        return false;
    }
    let mut back = vec![Vec::new(); n];
    for q in 0..n {
        for &(_, t) in &dfa.delta[q] {
            back[t].push(q);
        }
    }
    let bwd = reachable_order(n, 0, |q| back[q].clone());
    if bwd.len() != n {
        return false;
    }
    // BFS levels from state 0; the gcd of dist(u) + 1 - dist(v) over edges
    // (u, v) is the period.
    let mut dist = vec![usize::MAX; n];
    dist[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        for &(_, t) in &dfa.delta[q] {
            if dist[t] == usize::MAX {
                dist[t] = dist[q] + 1;
                queue.push_back(t);
            }
        }
    }
    let mut g: u64 = 0;
    for q in 0..n {
        for &(_, t) in &dfa.delta[q] {
            let diff = (dist[q] as i64 + 1 - dist[t] as i64).unsigned_abs();
            g = gcd(g, diff);
        }
    }
    g == 1
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A complete machine computing the same outputs on reversed input. States
/// are the distinct transition functions of reversed prefixes; the output of
/// a function `h` is the machine output at `h(q_0)`. The result is minimized.
pub fn reverse_dfao<S: Symbol>(machine: &Dfao<S>) -> Result<Dfao<S>, AutomataError> {
    if !machine.is_complete() {
        return Err(AutomataError::NotComplete);
    }
    let n = machine.num_states();
    let identity: Vec<usize> = (0..n).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut funcs = vec![identity];
    let mut delta: Vec<Vec<(S, usize)>> = Vec::new();
    let mut at = 0;
    while at < funcs.len() {
        let h = funcs[at].clone();
        let mut row = Vec::new();
        for &s in machine.alphabet() {
            // Reading the next-reversed symbol prepends the digit to the
            // original word: compose on the inside.
            let composed: Vec<usize> = (0..n).map(|q| h[machine.step(q, s).unwrap()]).collect();
            let next = *index.entry(composed.clone()).or_insert_with(|| {
                funcs.push(composed);
                funcs.len() - 1
            });
            row.push((s, next));
        }
        delta.push(row);
        at += 1;
    }
    let outputs = funcs
        .iter()
        .map(|h| machine.output(h[machine.initial()]))
        .collect();
    Dfao::new(machine.alphabet().to_vec(), 0, outputs, delta)?.minimized()
}
