//! U-kernels: for each digit word `s`, the index set `I_s` of integers whose
//! zero-padded representation ends with `s`, and the subsequence of the
//! automatic sequence along it. Kernel entries are identified by exact
//! automaton signatures (right-quotient class of the suffix, state of the
//! reversal machine), with value windows as a cross-check. The 2D kernel
//! over suffix pairs of equal length supports the kernel-to-machine
//! construction; the 1D direction is its degenerate case.

use std::collections::{HashMap, HashSet};

use num::bigint::BigInt;
use serde_json::{json, Value};

use super::{evaluate2d, AutomaticSequence, SeqError};
use crate::automata::{
    enumerate_genealogical, reverse_dfao, right_quotients, Dfa, Dfao, RightQuotients,
};
use crate::numsys::{DigitWord, NumerationSystem};

#[derive(Debug, Clone)]
pub struct KernelEntry {
    pub suffix: DigitWord,
    /// Second suffix of a 2D pair; `None` in one dimension.
    pub suffix2: Option<DigitWord>,
    /// Exact signature class of this entry.
    pub class: usize,
    /// First `window` elements of `I_s` (row index set in 2D).
    pub indices: Vec<BigInt>,
    /// Column index set in 2D.
    pub indices2: Option<Vec<BigInt>>,
    /// 1D: values along `I_s`. 2D: row-major `indices x indices2` window.
    pub values: Vec<u32>,
    /// Total size of `I_s` when it is finite and exhausted below the window.
    pub finite: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct KernelTable {
    pub entries: Vec<KernelEntry>,
    /// Number of distinct signature classes among the entries.
    pub num_classes: usize,
    pub window: usize,
}

impl KernelTable {
    /// JSON rendering keyed by suffix (pair suffixes join with `|`).
    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        for e in &self.entries {
            let key = match &e.suffix2 {
                Some(t) => format!("{}|{}", e.suffix, t),
                None => e.suffix.to_string(),
            };
            map.insert(
                key,
                json!({
                    "class": e.class,
                    "indices": e.indices.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
                    "indices2": e.indices2.as_ref().map(|v| {
                        v.iter().map(|i| i.to_string()).collect::<Vec<_>>()
                    }),
                    "values": e.values,
                    "finite": e.finite,
                }),
            );
        }
        serde_json::to_string_pretty(&Value::Object(map)).expect("serializable")
    }
}

/// First `window` elements of `I_s` for a suffix `s`, with finiteness
/// detection, via the intersection of the numeration language with `A^* s`.
pub fn index_set(
    system: &NumerationSystem,
    language: &Dfa<u32>,
    s: &[u32],
    window: usize,
) -> (Vec<BigInt>, Option<usize>) {
    let mut out = Vec::new();
    // Values whose representation is shorter than |s| only appear through
    // padding: check them directly against the zero-extended suffix.
    if !s.is_empty() {
        let cap = system.term(s.len() - 1);
        let mut n = BigInt::from(0);
        while n < cap {
            let rep = system.rep(&n);
            let pad = s.len() - rep.len();
            if s[..pad].iter().all(|&d| d == 0) && s[pad..] == rep.0[..] {
                out.push(n.clone());
            }
            n += 1;
        }
    }
    // Longer values: enumerate the zero-stripped intersection genealogically.
    let inter = intersect(language, &suffix_dfa(language.alphabet(), s)).zero_stripped(0);
    let finite = !language_infinite(&inter);
    let listed = if finite {
        enumerate_genealogical(&inter, usize::MAX)
    } else {
        enumerate_genealogical(&inter, window.saturating_sub(out.len().min(window)))
    };
    for w in listed {
        if w.is_empty() && !s.is_empty() {
            continue;
        }
        out.push(system.val(&DigitWord(w)));
    }
    if finite {
        let total = out.len();
        out.truncate(window);
        (out, Some(total))
    } else {
        out.truncate(window);
        (out, None)
    }
}

/// Complete DFA accepting words that end with `s` (all of `A^*` when `s` is
/// empty), via the prefix-function automaton of the pattern.
fn suffix_dfa(alphabet: &[u32], s: &[u32]) -> Dfa<u32> {
    let m = s.len();
    // delta[k][a] = longest suffix of (s[..k] a) that is a prefix of s.
    let mut delta: Vec<Vec<(u32, usize)>> = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let row = alphabet
            .iter()
            .map(|&a| {
                let mut cand = (k + 1).min(m);
                // After a full match, stay in the "matched" state on a
                // re-extension of the pattern.
                let text: Vec<u32> = s[..k.min(m)].iter().copied().chain([a]).collect();
                loop {
                    if cand == 0 || text[text.len() - cand..] == s[..cand] {
                        break;
                    }
                    cand -= 1;
                }
                (a, if k == m && cand < m { longest_with(s, a, alphabet) } else { cand })
            })
            .collect();
        delta.push(row);
    }
    let mut finals = vec![false; m + 1];
    finals[m] = true;
    Dfa::new(alphabet.to_vec(), 0, finals, delta).expect("pattern automaton is valid")
}

/// From the full-match state, reading `a` lands on the longest suffix of
/// `s a` that is a prefix of `s`.
fn longest_with(s: &[u32], a: u32, _alphabet: &[u32]) -> usize {
    let text: Vec<u32> = s.iter().copied().chain([a]).collect();
    let mut cand = s.len();
    loop {
        if cand == 0 || text[text.len() - cand..] == s[..cand] {
            return cand;
        }
        cand -= 1;
    }
}

/// Product automaton accepting the intersection.
fn intersect(a: &Dfa<u32>, b: &Dfa<u32>) -> Dfa<u32> {
    assert_eq!(a.alphabet(), b.alphabet());
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let start = (a.initial(), b.initial());
    index.insert(start, 0);
    let mut order = vec![start];
    let mut delta: Vec<Vec<(u32, usize)>> = Vec::new();
    let mut at = 0;
    while at < order.len() {
        let (qa, qb) = order[at];
        let mut row = Vec::new();
        for &s in a.alphabet() {
            if let (Some(ta), Some(tb)) = (a.step(qa, s), b.step(qb, s)) {
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
    let finals = order
        .iter()
        .map(|&(qa, qb)| a.is_final(qa) && b.is_final(qb))
        .collect();
    Dfa::new(a.alphabet().to_vec(), 0, finals, delta).expect("product is valid")
}

/// Whether the accepted language is infinite: a cycle among states that are
/// both reachable and co-reachable.
fn language_infinite(dfa: &Dfa<u32>) -> bool {
    let n = dfa.num_states();
    let mut reach = vec![false; n];
    let mut stack = vec![dfa.initial()];
    reach[dfa.initial()] = true;
    while let Some(q) = stack.pop() {
        for &s in dfa.alphabet() {
            if let Some(t) = dfa.step(q, s) {
                if !reach[t] {
                    reach[t] = true;
                    stack.push(t);
                }
            }
        }
    }
    let mut alive: Vec<bool> = (0..n).map(|q| dfa.is_final(q)).collect();
    loop {
        let mut changed = false;
        for q in 0..n {
            if !alive[q]
                && dfa
                    .alphabet()
                    .iter()
                    .any(|&s| dfa.step(q, s).map(|t| alive[t]).unwrap_or(false))
            {
                alive[q] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let trimmed: Vec<bool> = (0..n).map(|q| reach[q] && alive[q]).collect();
    // Cycle detection on the trimmed subgraph.
    let mut color = vec![0u8; n];
    fn dfs(q: usize, dfa: &Dfa<u32>, trimmed: &[bool], color: &mut [u8]) -> bool {
        color[q] = 1;
        for &s in dfa.alphabet().to_vec().iter() {
            if let Some(t) = dfa.step(q, s) {
                if !trimmed[t] {
                    continue;
                }
                if color[t] == 1 {
                    return true;
                }
                if color[t] == 0 && dfs(t, dfa, trimmed, color) {
                    return true;
                }
            }
        }
        color[q] = 2;
        false
    }
    trimmed[dfa.initial()] && dfs(dfa.initial(), dfa, &trimmed, &mut color)
}

/// Signature machinery shared by the 1D and 2D kernels: the quotient classes
/// of the numeration language plus the reversal machine of the sequence's
/// machine.
struct SignatureSpace<S: crate::automata::Symbol> {
    quotients: RightQuotients<u32>,
    reversal: Dfao<S>,
}

/// The 1D U-kernel up to suffix length `suffix_len_max`, windows of `window`
/// values per entry.
pub fn kernel(
    seq: &AutomaticSequence,
    suffix_len_max: usize,
    window: usize,
) -> Result<KernelTable, SeqError> {
    let space = SignatureSpace {
        quotients: right_quotients(seq.language()),
        reversal: reverse_dfao(seq.machine())?,
    };
    let mut class_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut entries = Vec::new();
    // Suffixes in genealogical order, carrying (quotient class, reversal
    // state) incrementally: prepending digit a maps both components forward.
    let mut frontier: Vec<(Vec<u32>, usize, usize)> = vec![(
        Vec::new(),
        space.quotients.epsilon_class(),
        space.reversal.initial(),
    )];
    for len in 0..=suffix_len_max {
        for (s, qclass, rstate) in &frontier {
            let sig = (*qclass, *rstate);
            let n_classes = class_index.len();
            let class = *class_index.entry(sig).or_insert(n_classes);
            let (indices, finite) = index_set(seq.system(), seq.language(), s, window);
            let values = indices.iter().map(|i| seq.evaluate_big(i)).collect();
            entries.push(KernelEntry {
                suffix: DigitWord(s.clone()),
                suffix2: None,
                class,
                indices,
                indices2: None,
                values,
                finite,
            });
        }
        if len == suffix_len_max {
            break;
        }
        let mut next = Vec::new();
        for (s, qclass, rstate) in &frontier {
            for &a in seq.language().alphabet() {
                let mut v = vec![a];
                v.extend_from_slice(s);
                next.push((
                    v,
                    space.quotients.extend(*qclass, a),
                    space.reversal.step(*rstate, a).unwrap(),
                ));
            }
        }
        frontier = next;
    }
    let num_classes = class_index.len();
    Ok(KernelTable {
        entries,
        num_classes,
        window,
    })
}

/// Exact number of kernel signature classes: the closure of
/// (quotient class, reversal state) pairs under digit prepending.
pub fn kernel_finiteness(seq: &AutomaticSequence) -> Result<usize, SeqError> {
    let quotients = right_quotients(seq.language());
    let reversal = reverse_dfao(seq.machine())?;
    let start = (quotients.epsilon_class(), reversal.initial());
    let mut seen = HashMap::from([(start, 0usize)]);
    let mut stack = vec![start];
    while let Some((qc, rs)) = stack.pop() {
        for &a in seq.language().alphabet() {
            let next = (quotients.extend(qc, a), reversal.step(rs, a).unwrap());
            if !seen.contains_key(&next) {
                let n = seen.len();
                seen.insert(next, n);
                stack.push(next);
            }
        }
    }
    Ok(seen.len())
}

/// The 2D U-kernel over suffix pairs of equal length: all pairs up to length
/// `suffix_len_max`, plus the extra pairs needed to close every signature
/// class under one-pair extensions (so [`kernel2d_to_dfao`] always applies).
pub fn kernel2d(
    machine: &Dfao<(u32, u32)>,
    system: &NumerationSystem,
    language: &Dfa<u32>,
    suffix_len_max: usize,
    window: usize,
) -> Result<KernelTable, SeqError> {
    let quotients = right_quotients(language);
    let reversal = reverse_dfao(machine)?;
    let mut class_index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut entries: Vec<KernelEntry> = Vec::new();
    let mut index_cache: HashMap<Vec<u32>, (Vec<BigInt>, Option<usize>)> = HashMap::new();
    let mut present: HashSet<(Vec<u32>, Vec<u32>)> = HashSet::new();
    // First-seen (shortest) representative of each signature, and the queue
    // of signatures whose extensions still need to be materialized.
    type Rep = (Vec<u32>, Vec<u32>, usize, usize, usize);
    let mut sig_rep: HashMap<(usize, usize, usize), Rep> = HashMap::new();
    let mut pending: Vec<(usize, usize, usize)> = Vec::new();

    let record = |s: &[u32],
                      t: &[u32],
                      sig: (usize, usize, usize),
                      class_index: &mut HashMap<(usize, usize, usize), usize>,
                      entries: &mut Vec<KernelEntry>,
                      index_cache: &mut HashMap<Vec<u32>, (Vec<BigInt>, Option<usize>)>| {
        let n_classes = class_index.len();
        let class = *class_index.entry(sig).or_insert(n_classes);
        let (rows, finite_rows) = index_cache
            .entry(s.to_vec())
            .or_insert_with(|| index_set(system, language, s, window))
            .clone();
        let (cols, _) = index_cache
            .entry(t.to_vec())
            .or_insert_with(|| index_set(system, language, t, window))
            .clone();
        let mut values = Vec::with_capacity(rows.len() * cols.len());
        for i in &rows {
            for j in &cols {
                values.push(evaluate2d(machine, system, i, j));
            }
        }
        entries.push(KernelEntry {
            suffix: DigitWord(s.to_vec()),
            suffix2: Some(DigitWord(t.to_vec())),
            class,
            indices: rows,
            indices2: Some(cols),
            values,
            finite: finite_rows,
        });
    };

    let mut frontier: Vec<Rep> = vec![(
        Vec::new(),
        Vec::new(),
        quotients.epsilon_class(),
        quotients.epsilon_class(),
        reversal.initial(),
    )];
    for len in 0..=suffix_len_max {
        for (s, t, qs, qt, rstate) in &frontier {
            let sig = (*qs, *qt, *rstate);
            record(s, t, sig, &mut class_index, &mut entries, &mut index_cache);
            present.insert((s.clone(), t.clone()));
            if !sig_rep.contains_key(&sig) {
                sig_rep.insert(sig, (s.clone(), t.clone(), *qs, *qt, *rstate));
                pending.push(sig);
            }
        }
        if len == suffix_len_max {
            break;
        }
        let mut next = Vec::new();
        for (s, t, qs, qt, rstate) in &frontier {
            for &a in language.alphabet() {
                for &b in language.alphabet() {
                    let mut vs = vec![a];
                    vs.extend_from_slice(s);
                    let mut vt = vec![b];
                    vt.extend_from_slice(t);
                    next.push((
                        vs,
                        vt,
                        quotients.extend(*qs, a),
                        quotients.extend(*qt, b),
                        reversal.step(*rstate, (a, b)).unwrap(),
                    ));
                }
            }
        }
        frontier = next;
    }

    // Closure pass: the one-pair extensions of each signature's shortest
    // representative must all be in the table. Signatures live in the finite
    // space (quotient class, quotient class, reversal state), so this ends.
    let mut at = 0;
    while at < pending.len() {
        let (s, t, qs, qt, rstate) = sig_rep[&pending[at]].clone();
        at += 1;
        for &a in language.alphabet() {
            for &b in language.alphabet() {
                let mut vs = vec![a];
                vs.extend_from_slice(&s);
                let mut vt = vec![b];
                vt.extend_from_slice(&t);
                let sig = (
                    quotients.extend(qs, a),
                    quotients.extend(qt, b),
                    reversal.step(rstate, (a, b)).unwrap(),
                );
                if present.insert((vs.clone(), vt.clone())) {
                    record(&vs, &vt, sig, &mut class_index, &mut entries, &mut index_cache);
                }
                if !sig_rep.contains_key(&sig) {
                    sig_rep.insert(sig, (vs, vt, sig.0, sig.1, sig.2));
                    pending.push(sig);
                }
            }
        }
    }

    let num_classes = class_index.len();
    Ok(KernelTable {
        entries,
        num_classes,
        window,
    })
}

/// Rebuild a reversal-reading pair machine from a finite 2D kernel table: one
/// state per signature class, transitions by digit-pair prepending, output
/// `x_{i(s,0), i(t,0)}` of a representative. The table must contain every
/// one-pair extension of some shortest representative of each class.
pub fn kernel2d_to_dfao(
    table: &KernelTable,
    quotients: &RightQuotients<u32>,
) -> Result<Dfao<(u32, u32)>, SeqError> {
    // Shortest representative per class, plus a pair-key lookup.
    let mut lookup: HashMap<(Vec<u32>, Vec<u32>), usize> = HashMap::new();
    let mut rep: Vec<Option<usize>> = Vec::new();
    for (idx, e) in table.entries.iter().enumerate() {
        let t = e
            .suffix2
            .as_ref()
            .ok_or(SeqError::IncompleteKernel)?
            .0
            .clone();
        lookup.insert((e.suffix.0.clone(), t), idx);
        if e.class >= rep.len() {
            rep.resize(e.class + 1, None);
        }
        let better = match rep[e.class] {
            None => true,
            Some(r) => table.entries[r].suffix.len() > e.suffix.len(),
        };
        if better {
            rep[e.class] = Some(idx);
        }
    }
    let eps = *lookup
        .get(&(Vec::new(), Vec::new()))
        .ok_or(SeqError::IncompleteKernel)?;
    let digits: Vec<u32> = quotients.alphabet().to_vec();
    let alphabet: Vec<(u32, u32)> = digits
        .iter()
        .flat_map(|&a| digits.iter().map(move |&b| (a, b)))
        .collect();
    // Reachable classes from (eps, eps).
    let start_class = table.entries[eps].class;
    let mut state_of_class: HashMap<usize, usize> = HashMap::from([(start_class, 0)]);
    let mut order = vec![start_class];
    let mut delta: Vec<Vec<((u32, u32), usize)>> = Vec::new();
    let mut outputs: Vec<u32> = Vec::new();
    let mut at = 0;
    while at < order.len() {
        let class = order[at];
        let ridx = rep[class].ok_or(SeqError::IncompleteKernel)?;
        let entry = &table.entries[ridx];
        // An empty entry means no representation ends with this suffix pair;
        // since admissibility is suffix-closed, the state is unreachable on
        // valid words and its output is arbitrary.
        outputs.push(entry.values.first().copied().unwrap_or(0));
        let s = entry.suffix.0.clone();
        let t = entry.suffix2.as_ref().unwrap().0.clone();
        let mut row = Vec::new();
        for &a in &digits {
            for &b in &digits {
                let mut vs = vec![a];
                vs.extend_from_slice(&s);
                let mut vt = vec![b];
                vt.extend_from_slice(&t);
                let next_idx = *lookup
                    .get(&(vs, vt))
                    .ok_or(SeqError::IncompleteKernel)?;
                let next_class = table.entries[next_idx].class;
                let n_states = order.len();
                let next_state = *state_of_class.entry(next_class).or_insert_with(|| {
                    order.push(next_class);
                    n_states
                });
                row.push(((a, b), next_state));
            }
        }
        delta.push(row);
        at += 1;
    }
    Ok(Dfao::new(alphabet, 0, outputs, delta)?)
}

/// Forward pair machine recovered from a 2D kernel: the reversal-reading
/// machine of [`kernel2d_to_dfao`] composed with DFAO reversal.
pub fn kernel2d_to_forward_dfao(
    table: &KernelTable,
    quotients: &RightQuotients<u32>,
) -> Result<Dfao<(u32, u32)>, SeqError> {
    Ok(reverse_dfao(&kernel2d_to_dfao(table, quotients)?)?)
}
