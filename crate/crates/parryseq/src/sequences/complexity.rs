//! Factor complexity of a finite prefix, counted exactly with a suffix
//! automaton, plus a growth diagnostic that reports evidence (never a proof)
//! about the asymptotic class.

use std::collections::HashMap;

use super::SeqError;

/// Exact number of distinct factors of each length `1..=n_max` occurring in
/// `word`, via the suffix automaton: every state contributes one factor per
/// length in its `[link_len + 1, len]` range.
pub fn factor_counts(word: &[u32], n_max: usize) -> Vec<usize> {
    let sam = SuffixAutomaton::build(word);
    let mut diff = vec![0isize; n_max + 2];
    for q in 1..sam.states.len() {
        let lo = sam.states[sam.states[q].link].len + 1;
        let hi = sam.states[q].len.min(n_max);
        if lo <= hi {
            diff[lo] += 1;
            diff[hi + 1] -= 1;
        }
    }
    let mut out = Vec::with_capacity(n_max);
    let mut acc = 0isize;
    for n in 1..=n_max {
        acc += diff[n];
        out.push(acc as usize);
    }
    out
}

/// Factor counts `p(1..=n_max)` with a stabilization check: the counts must
/// agree with the ones computed on the first half of the prefix, otherwise
/// the prefix is too short to trust them.
pub fn factor_complexity(prefix: &[u32], n_max: usize) -> Result<Vec<usize>, SeqError> {
    if prefix.is_empty() {
        return Err(SeqError::InsufficientPrefix { stable: 0 });
    }
    let full = factor_counts(prefix, n_max);
    let half = factor_counts(&prefix[..prefix.len() / 2], n_max);
    let stable = full
        .iter()
        .zip(&half)
        .take_while(|(a, b)| a == b)
        .count();
    if stable < n_max {
        return Err(SeqError::InsufficientPrefix { stable });
    }
    Ok(full)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthEvidence {
    Bounded,
    Sublinear,
    Superlinear,
}

#[derive(Debug, Clone)]
pub struct GrowthDiagnostic {
    pub evidence: GrowthEvidence,
    /// max over the inspected window of p(n)/n.
    pub max_ratio: f64,
    /// p(n)/n strictly increasing over the inspected window.
    pub ratio_increasing: bool,
}

/// Classify the observed growth of a complexity table. This inspects the
/// second half of the table: constant counts are bounded evidence, a strictly
/// increasing p(n)/n is superlinear evidence, anything else sublinear.
pub fn growth_diagnostic(table: &[usize]) -> GrowthDiagnostic {
    let len = table.len();
    let lo = (len / 2).max(1);
    let window: Vec<(usize, usize)> = (lo..=len).map(|n| (n, table[n - 1])).collect();
    let ratios: Vec<f64> = window.iter().map(|&(n, p)| p as f64 / n as f64).collect();
    let max_ratio = ratios.iter().cloned().fold(0.0, f64::max);
    let constant = window.windows(2).all(|w| w[0].1 == w[1].1);
    let ratio_increasing = ratios.windows(2).all(|w| w[1] > w[0]);
    let evidence = if constant {
        GrowthEvidence::Bounded
    } else if ratio_increasing {
        GrowthEvidence::Superlinear
    } else {
        GrowthEvidence::Sublinear
    };
    GrowthDiagnostic {
        evidence,
        max_ratio,
        ratio_increasing,
    }
}

struct SamState {
    len: usize,
    link: usize,
    next: HashMap<u32, usize>,
}

struct SuffixAutomaton {
    states: Vec<SamState>,
}

impl SuffixAutomaton {
    fn build(word: &[u32]) -> SuffixAutomaton {
        let mut sam = SuffixAutomaton {
            states: vec![SamState {
                len: 0,
                link: 0,
                next: HashMap::new(),
            }],
        };
        let mut last = 0;
        for &c in word {
            last = sam.extend(last, c);
        }
        sam
    }

    fn extend(&mut self, last: usize, c: u32) -> usize {
        let cur = self.states.len();
        self.states.push(SamState {
            len: self.states[last].len + 1,
            link: 0,
            next: HashMap::new(),
        });
        let mut p = Some(last);
        while let Some(q) = p {
            if self.states[q].next.contains_key(&c) {
                break;
            }
            self.states[q].next.insert(c, cur);
            p = (q != 0).then(|| self.states[q].link);
        }
        if let Some(q) = p {
            let t = self.states[q].next[&c];
            if self.states[t].len == self.states[q].len + 1 {
                self.states[cur].link = t;
            } else {
                let clone = self.states.len();
                self.states.push(SamState {
                    len: self.states[q].len + 1,
                    link: self.states[t].link,
                    next: self.states[t].next.clone(),
                });
                let mut r = Some(q);
                while let Some(s) = r {
                    if self.states[s].next.get(&c) == Some(&t) {
                        self.states[s].next.insert(c, clone);
                    } else {
                        break;
                    }
                    r = (s != 0).then(|| self.states[s].link);
                }
                self.states[t].link = clone;
                self.states[cur].link = clone;
            }
        }
        cur
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::substitution::Substitution;
    use std::collections::HashSet;

    fn brute_counts(word: &[u32], n_max: usize) -> Vec<usize> {
        (1..=n_max)
            .map(|n| {
                let mut set = HashSet::new();
                for w in word.windows(n) {
                    set.insert(w.to_vec());
                }
                set.len()
            })
            .collect()
    }

    #[test]
    fn agrees_with_brute_force() {
        let words: Vec<Vec<u32>> = vec![
            vec![0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1],
            vec![0; 20],
            vec![0, 1, 2, 0, 1, 2, 2, 1, 0],
        ];
        for w in words {
            assert_eq!(factor_counts(&w, 8), brute_counts(&w, 8));
        }
    }

    #[test]
    fn fibonacci_word_complexity_is_n_plus_one() {
        let s = Substitution::new(vec![vec![0, 1], vec![0]], 0).unwrap();
        let prefix: Vec<u32> = s
            .fixed_point(20_000)
            .unwrap()
            .into_iter()
            .map(|l| l as u32)
            .collect();
        let table = factor_complexity(&prefix, 40).unwrap();
        for (i, &p) in table.iter().enumerate() {
            assert_eq!(p, i + 2, "p({}) = {}", i + 1, p);
        }
        let diag = growth_diagnostic(&table);
        assert_eq!(diag.evidence, GrowthEvidence::Sublinear);
    }

    #[test]
    fn constant_word_is_bounded() {
        let table = factor_complexity(&vec![3u32; 4000], 30).unwrap();
        assert!(table.iter().all(|&p| p == 1));
        assert_eq!(growth_diagnostic(&table).evidence, GrowthEvidence::Bounded);
    }

    #[test]
    fn figure1_fixed_point_is_superlinear_evidence() {
        let s = Substitution::new(vec![vec![0, 0, 0, 1], vec![1]], 0).unwrap();
        // This word reveals new factors at geometrically spaced positions
        // (runs of the second letter of every length), so counts never pass
        // the stability check; use the raw counts on a long prefix.
        let prefix: Vec<u32> = s
            .fixed_point(2_000_000)
            .unwrap()
            .into_iter()
            .map(|l| l as u32)
            .collect();
        let table = factor_counts(&prefix, 60);
        // p(n)/n strictly increasing over n = 10..60.
        for n in 10..60 {
            let a = table[n - 1] as f64 / n as f64;
            let b = table[n] as f64 / (n + 1) as f64;
            assert!(b > a, "ratio fell at n = {n}");
        }
        assert_eq!(
            growth_diagnostic(&table).evidence,
            GrowthEvidence::Superlinear
        );
    }

    #[test]
    fn short_prefix_signals_insufficient() {
        let s = Substitution::new(vec![vec![0, 1], vec![0]], 0).unwrap();
        let prefix: Vec<u32> = s
            .fixed_point(60)
            .unwrap()
            .into_iter()
            .map(|l| l as u32)
            .collect();
        match factor_complexity(&prefix, 40) {
            Err(SeqError::InsufficientPrefix { stable }) => assert!(stable < 40),
            other => panic!("expected insufficiency, got {other:?}"),
        }
    }
}
