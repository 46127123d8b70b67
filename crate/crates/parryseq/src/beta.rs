//! Exact beta-expansions and the combinatorics around Parry numbers: the
//! quasi-greedy expansion of 1, the canonical numeration system, Parry's
//! admissibility criterion, Bertrand's language identity at bounded length,
//! and the conjugate sums used by the aperiodicity arguments.
//!
//! All digit decisions go through exact sign tests in Q(beta); cycle detection
//! works on exact remainders, so a reported period is a certificate while a
//! missing one only means "no cycle within the step budget".

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

use crate::algebraic::{AlgebraicReal, FieldElement, Sign};
use crate::numsys::{genealogical_cmp, DigitWord, NumerationSystem, NumsysError};

#[derive(Debug, Error)]
pub enum BetaError {
    #[error("x lies outside [0, 1]")]
    OutOfRange,
    #[error("beta is not known to be Parry (no period within the step budget)")]
    NotParry,
    #[error(transparent)]
    Numsys(#[from] NumsysError),
}

/// Greedy beta-expansion digit stream of some x in [0, 1]. Single-consumer
/// stateful iterator; cloning snapshots the current remainder.
#[derive(Debug, Clone)]
pub struct BetaExpansion {
    beta: FieldElement,
    remainder: FieldElement,
    emitted: usize,
}

impl BetaExpansion {
    /// The exact remainder after the digits emitted so far.
    pub fn remainder(&self) -> &FieldElement {
        &self.remainder
    }

    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// Take the next `k` digits.
    pub fn digits(&mut self, k: usize) -> Vec<u32> {
        (0..k).map(|_| self.next_digit()).collect()
    }

    fn next_digit(&mut self) -> u32 {
        let scaled = &self.beta * &self.remainder;
        let d = scaled.floor();
        let digit = u32::try_from(&d).expect("beta-expansion digit exceeds u32");
        self.remainder = &scaled
            - &FieldElement::from_rational(
                self.beta.generator().clone(),
                BigRational::from(d),
            );
        self.emitted += 1;
        digit
    }

    /// Run until the remainder repeats, the remainder vanishes, or `max_steps`
    /// digits have been emitted. Returns the digits seen and, on success, the
    /// (preperiod, period) pair on the digit sequence, already minimized.
    /// A vanishing remainder reports period `(len, 1)` with an implicit 0 tail.
    pub fn detect_cycle(&mut self, max_steps: usize) -> (Vec<u32>, Option<(usize, usize)>) {
        // An algebraic-integer beta admits an exact integer-vector engine
        // that avoids per-step rational normalization; anything else takes
        // the generic field-element path.
        if self.beta.generator().min_poly().leading() == &BigInt::one()
            && self.beta.generator().degree() >= 1
        {
            self.detect_cycle_integer(max_steps)
        } else {
            self.detect_cycle_generic(max_steps)
        }
    }

    fn detect_cycle_generic(&mut self, max_steps: usize) -> (Vec<u32>, Option<(usize, usize)>) {
        let mut seen: HashMap<FieldElement, usize> = HashMap::new();
        let mut digits = Vec::new();
        for step in 0..max_steps {
            if self.remainder.is_zero() {
                return (digits, Some((step, 1)));
            }
            if let Some(&first) = seen.get(&self.remainder) {
                let (pre, per) = minimize_periodicity(&digits, first, step - first);
                return (digits, Some((pre, per)));
            }
            seen.insert(self.remainder.clone(), step);
            digits.push(self.next_digit());
        }
        (digits, None)
    }

    /// Exact cycle detection over remainders written as integer coordinate
    /// vectors with one fixed denominator (the map x -> beta x - d preserves
    /// the denominator when beta is an algebraic integer). Digits come from a
    /// dyadic enclosure of beta that is refined until the floor is
    /// unambiguous, so they agree with the exact greedy digits.
    fn detect_cycle_integer(&mut self, max_steps: usize) -> (Vec<u32>, Option<(usize, usize)>) {
        use num::Integer;

        let gen = self.remainder.generator().clone();
        let d = gen.degree();
        let mp: Vec<BigInt> = gen.min_poly().coeffs().to_vec();
        let q = self
            .remainder
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut a: Vec<BigInt> = self
            .remainder
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from(q.clone())).to_integer())
            .collect();
        let mut approx = DyadicPowers::new(&gen, 64);
        let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
        let mut digits: Vec<u32> = Vec::new();

        let finish = |this: &mut Self, a: &[BigInt], taken: usize| {
            let coeffs = a
                .iter()
                .map(|ai| BigRational::new(ai.clone(), q.clone()))
                .collect();
            this.remainder =
                FieldElement::from_coeffs(gen.clone(), coeffs).expect("degree-matched coords");
            this.emitted += taken;
        };

        for step in 0..max_steps {
            if a.iter().all(|ai| ai.is_zero()) {
                finish(self, &a, step);
                return (digits, Some((step, 1)));
            }
            if let Some(&first) = seen.get(&a) {
                finish(self, &a, step);
                let (pre, per) = minimize_periodicity(&digits, first, step - first);
                return (digits, Some((pre, per)));
            }
            seen.insert(a.clone(), step);
            // b = beta * a in the power basis, using beta^d = -sum mp_i beta^i.
            let top = a[d - 1].clone();
            let mut b = vec![BigInt::zero(); d];
            for i in 1..d {
                b[i] = a[i - 1].clone();
            }
            for (i, c) in mp.iter().take(d).enumerate() {
                b[i] -= &top * c;
            }
            let dig = approx.floor_value(&b, &q);
            b[0] -= &dig * &q;
            digits.push(u32::try_from(&dig).expect("beta-expansion digit exceeds u32"));
            a = b;
        }
        finish(self, &a, max_steps);
        (digits, None)
    }
}

/// Dyadic enclosures `[lo_i, hi_i] / 2^p` of the powers beta^0..beta^{d-1}.
/// Refinement bisects the minimal polynomial in pure integer arithmetic, so
/// deep precision stays cheap.
struct DyadicPowers {
    p: u64,
    /// beta in [l, h] / 2^p with h - l <= 2.
    l: BigInt,
    h: BigInt,
    /// Minimal polynomial of the generator, constant term first (monic).
    mp: Vec<BigInt>,
    /// Sign of the minimal polynomial at the left endpoint.
    left_negative: bool,
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
}

impl DyadicPowers {
    fn new(gen: &Arc<AlgebraicReal>, p: u64) -> DyadicPowers {
        let width = BigRational::new(BigInt::one(), BigInt::one() << p);
        let (rlo, rhi) = gen.refine_to(&width);
        let scale = BigRational::from(BigInt::one() << p);
        let l = (rlo * &scale).floor().to_integer();
        let h = (rhi * &scale).ceil().to_integer();
        let mp = gen.min_poly().coeffs().to_vec();
        let left_negative = poly_at_dyadic(&mp, &l, p) < BigInt::zero();
        let mut this = DyadicPowers {
            p,
            l,
            h,
            mp,
            left_negative,
            lo: Vec::new(),
            hi: Vec::new(),
        };
        this.rebuild_powers();
        this
    }

    /// `2^{pd} f(m / 2^p)` for the stored minimal polynomial: an integer with
    /// the sign of f at the dyadic point.
    fn rebuild_powers(&mut self) {
        let d = self.mp.len() - 1;
        let mut lo = vec![BigInt::one() << self.p];
        let mut hi = vec![BigInt::one() << self.p];
        // beta > 0, so interval powers multiply endpointwise; shift back to
        // precision p with outward rounding each time.
        for i in 1..d.max(1) {
            lo.push((&lo[i - 1] * &self.l) >> self.p);
            hi.push(((&hi[i - 1] * &self.h) >> self.p) + 1);
        }
        self.lo = lo;
        self.hi = hi;
    }

    /// Double the precision by integer bisection of the minimal polynomial.
    fn refine(&mut self) {
        let old_p = self.p;
        self.p *= 2;
        self.l = &self.l << old_p;
        self.h = &self.h << old_p;
        let two = BigInt::from(2);
        while &self.h - &self.l > two {
            let m = (&self.l + &self.h) >> 1;
            let negative = poly_at_dyadic(&self.mp, &m, self.p) < BigInt::zero();
            if negative == self.left_negative {
                self.l = m;
            } else {
                self.h = m;
            }
        }
        self.rebuild_powers();
    }

    /// Exact floor of `(sum a_i beta^i) / q`, refining beta as needed.
    fn floor_value(&mut self, a: &[BigInt], q: &BigInt) -> BigInt {
        use num::Integer;
        if a[1..].iter().all(|ai| ai.is_zero()) {
            return a[0].div_floor(q);
        }
        loop {
            let mut lo = BigInt::zero();
            let mut hi = BigInt::zero();
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                if ai.sign() == num::bigint::Sign::Plus {
                    lo += ai * &self.lo[i];
                    hi += ai * &self.hi[i];
                } else {
                    lo += ai * &self.hi[i];
                    hi += ai * &self.lo[i];
                }
            }
            let denom = q << self.p;
            let flo = lo.div_floor(&denom);
            let fhi = hi.div_floor(&denom);
            if flo == fhi {
                return flo;
            }
            // Ambiguous floor: the value is irrational here (some higher
            // coordinate is nonzero), so enough refinement always decides.
            self.refine();
        }
    }
}

/// `2^{pd} f(m / 2^p)` as an exact integer, `f` given constant term first.
fn poly_at_dyadic(coeffs: &[BigInt], m: &BigInt, p: u64) -> BigInt {
    let d = coeffs.len() - 1;
    let mut acc = coeffs[d].clone();
    for i in (0..d).rev() {
        acc = acc * m + (&coeffs[i] << (p * (d - i) as u64));
    }
    acc
}

/// Greedy beta-expansion of `x` in [0, 1] with exact digit extraction.
pub fn beta_expand(
    beta: &Arc<AlgebraicReal>,
    x: FieldElement,
) -> Result<BetaExpansion, BetaError> {
    let zero = FieldElement::zero(beta.clone());
    let one = FieldElement::from_rational(beta.clone(), BigRational::one());
    if (&x - &zero).sign() == Sign::Negative || (&x - &one).sign() == Sign::Positive {
        return Err(BetaError::OutOfRange);
    }
    Ok(BetaExpansion {
        beta: FieldElement::generator_element(beta.clone()),
        remainder: x,
        emitted: 0,
    })
}

/// An eventually periodic digit word `pre (per)^omega`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicWord {
    pub pre: Vec<u32>,
    pub per: Vec<u32>,
}

impl PeriodicWord {
    pub fn new(pre: Vec<u32>, per: Vec<u32>) -> Self {
        assert!(!per.is_empty());
        let (pre, per) = minimize_parts(pre, per);
        PeriodicWord { pre, per }
    }

    /// 1-indexed digit access, matching the paper's `t_1 t_2 ...` convention.
    pub fn digit(&self, i: usize) -> u32 {
        assert!(i >= 1);
        let idx = i - 1;
        if idx < self.pre.len() {
            self.pre[idx]
        } else {
            self.per[(idx - self.pre.len()) % self.per.len()]
        }
    }

    pub fn preperiod(&self) -> usize {
        self.pre.len()
    }

    pub fn period(&self) -> usize {
        self.per.len()
    }

    pub fn prefix(&self, len: usize) -> Vec<u32> {
        (1..=len).map(|i| self.digit(i)).collect()
    }
}

impl fmt::Display for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.pre {
            write!(f, "{d}")?;
        }
        write!(f, "(")?;
        for d in &self.per {
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// The quasi-greedy expansion `d*_beta(1)`.
#[derive(Debug, Clone)]
pub enum QuasiGreedy {
    /// Ultimately periodic: beta is a Parry number.
    Periodic {
        word: PeriodicWord,
        finite_d_beta_1: bool,
    },
    /// No cycle found within the step budget; the prefix is still exact.
    Unknown { prefix: Vec<u32> },
}

impl QuasiGreedy {
    pub fn periodic(&self) -> Option<&PeriodicWord> {
        match self {
            QuasiGreedy::Periodic { word, .. } => Some(word),
            QuasiGreedy::Unknown { .. } => None,
        }
    }

    pub fn digit(&self, i: usize) -> u32 {
        match self {
            QuasiGreedy::Periodic { word, .. } => word.digit(i),
            QuasiGreedy::Unknown { prefix } => prefix[i - 1],
        }
    }
}

/// Compute `d*_beta(1)`: the rewriting of a finite `d_beta(1)`, otherwise
/// `d_beta(1)` itself with cycle detection on exact remainders.
pub fn quasi_greedy(beta: &Arc<AlgebraicReal>, max_steps: usize) -> Result<QuasiGreedy, BetaError> {
    let one = FieldElement::from_rational(beta.clone(), BigRational::one());
    let mut exp = beta_expand(beta, one)?;
    let (digits, cycle) = exp.detect_cycle(max_steps);
    match cycle {
        Some((pre, 1)) if digits.len() == pre && pre > 0 && exp.remainder().is_zero() => {
            // d_beta(1) = t_1 ... t_m 0^omega with t_m != 0: rewrite to
            // (t_1 ... t_{m-1} (t_m - 1))^omega.
            let mut per = digits;
            let last = per.last_mut().unwrap();
            debug_assert!(*last > 0);
            *last -= 1;
            Ok(QuasiGreedy::Periodic {
                word: PeriodicWord::new(Vec::new(), per),
                finite_d_beta_1: true,
            })
        }
        Some((pre, per_len)) => {
            let word = PeriodicWord::new(
                digits[..pre].to_vec(),
                digits[pre..pre + per_len].to_vec(),
            );
            Ok(QuasiGreedy::Periodic {
                word,
                finite_d_beta_1: false,
            })
        }
        None => Ok(QuasiGreedy::Unknown { prefix: digits }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParryStatus {
    Parry { preperiod: usize, period: usize },
    Unknown,
}

pub fn is_parry(beta: &Arc<AlgebraicReal>, max_steps: usize) -> Result<ParryStatus, BetaError> {
    Ok(match quasi_greedy(beta, max_steps)? {
        QuasiGreedy::Periodic { word, .. } => ParryStatus::Parry {
            preperiod: word.preperiod(),
            period: word.period(),
        },
        QuasiGreedy::Unknown { .. } => ParryStatus::Unknown,
    })
}

/// The canonical numeration system `U_n = t_1 U_{n-1} + ... + t_n U_0 + 1`
/// closed into a homogeneous linear recurrence of order preperiod + period.
pub fn canonical_system(qg: &QuasiGreedy) -> Result<NumerationSystem, BetaError> {
    let word = qg.periodic().ok_or(BetaError::NotParry)?;
    let (i, p) = (word.preperiod(), word.period());
    let order = i + p;
    // U_n = sum_{j=1}^{i+p} t_j U_{n-j} + U_{n-p} - sum_{j=1}^{i} t_j U_{n-p-j}.
    let mut coeffs = vec![BigInt::zero(); order];
    for j in 1..=order {
        coeffs[j - 1] += BigInt::from(word.digit(j));
        if j == p {
            coeffs[j - 1] += BigInt::one();
        }
        if j > p {
            coeffs[j - 1] -= BigInt::from(word.digit(j - p));
        }
    }
    // Initial terms straight from the defining equation.
    let mut initial = vec![BigInt::one()];
    for n in 1..order.max(2) {
        let mut u = BigInt::one();
        for k in 1..=n {
            u += BigInt::from(word.digit(k)) * &initial[n - k];
        }
        initial.push(u);
    }
    // Recurrences of order one still need two initial terms for validation;
    // the extra term must satisfy the recurrence, which it does by
    // construction for p = 1, i = 0.
    if order == 1 {
        let c = coeffs[0].clone();
        let expect = &c * &initial[0];
        if initial.len() > 1 && initial[1] != expect {
            return Err(BetaError::NotParry);
        }
    }
    Ok(NumerationSystem::from_recurrence(coeffs, initial)?)
}

/// Lexicographic comparison of a finite word against an eventually periodic
/// one; a proper prefix counts as smaller.
fn lex_less_than_periodic(word: &[u32], bound: &PeriodicWord) -> bool {
    for (idx, &d) in word.iter().enumerate() {
        let b = bound.digit(idx + 1);
        if d < b {
            return true;
        }
        if d > b {
            return false;
        }
    }
    true
}

/// Parry's criterion at every shift. Exact for finite words.
pub fn parry_admissible(word: &DigitWord, qg: &QuasiGreedy, depth: usize) -> bool {
    let bound = match qg {
        QuasiGreedy::Periodic { word, .. } => word.clone(),
        QuasiGreedy::Unknown { prefix } => {
            // Bounded-depth comparison against the known prefix only.
            let cut = prefix.len().min(depth);
            PeriodicWord {
                pre: prefix[..cut].to_vec(),
                per: vec![0],
            }
        }
    };
    let n = word.len().min(depth);
    (0..word.len()).all(|shift| lex_less_than_periodic(&word.0[shift..n.max(shift)], &bound))
}

/// Compare `0^* rep_U(N)` with the admissible words of `D_beta` on all words
/// of length at most `max_len`. Returns the verdict and the genealogically
/// least counterexample, if any.
pub fn bertrand_language_check(
    qg: &QuasiGreedy,
    system: &NumerationSystem,
    max_len: usize,
) -> (bool, Option<DigitWord>) {
    // Enumerate over the union of both digit alphabets: a digit legal in one
    // language but not the other is exactly the kind of counterexample sought.
    let beta_alphabet: u32 = match qg {
        QuasiGreedy::Periodic { word, .. } => {
            let mut m = 0;
            for i in 1..=(word.preperiod() + word.period()) {
                m = m.max(word.digit(i));
            }
            m + 1
        }
        QuasiGreedy::Unknown { prefix } => prefix.iter().copied().max().unwrap_or(0) + 1,
    };
    let alphabet = beta_alphabet.max(system.digit_bound());
    let mut words: Vec<DigitWord> = vec![DigitWord::empty()];
    let mut frontier = vec![DigitWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for d in 0..alphabet {
                let mut v = w.0.clone();
                v.push(d);
                next.push(DigitWord(v));
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words.sort_by(genealogical_cmp);
    for w in &words {
        let in_system = system.is_valid_padded(w);
        let admissible = parry_admissible(w, qg, w.len());
        if in_system != admissible {
            return (false, Some(w.clone()));
        }
    }
    (true, None)
}

/// Exact conjugate sum `S_{m,n} = sum_{i=m}^{n} d_i gamma^{-i+r}` in Q(gamma).
pub fn conjugate_sum(
    digits: &[u32],
    gamma: &Arc<AlgebraicReal>,
    m: usize,
    n: usize,
    r: i64,
) -> FieldElement {
    assert!(m >= 1 && n >= m && digits.len() >= n);
    let g = FieldElement::generator_element(gamma.clone());
    let mut acc = FieldElement::zero(gamma.clone());
    for i in m..=n {
        let d = digits[i - 1];
        if d == 0 {
            continue;
        }
        let term = g.pow_i64(-(i as i64) + r);
        acc += &(&FieldElement::from_integer(gamma.clone(), d as i64) * &term);
    }
    acc
}

/// Geometric tail estimate `digit_max * gamma^{e} / (1 - gamma^{-2})` with `e`
/// the largest even integer at most `max_exponent`. For gamma < -1 and digits
/// bounded by `digit_max` this dominates `sum_{i>=m} d_i gamma^{-i+r}`
/// whenever `max_exponent >= r - m`, because only even exponents contribute
/// positively.
pub fn conjugate_tail_bound(
    gamma: &Arc<AlgebraicReal>,
    max_exponent: i64,
    digit_max: u32,
) -> FieldElement {
    let e = if max_exponent % 2 == 0 {
        max_exponent
    } else {
        max_exponent - 1
    };
    let g = FieldElement::generator_element(gamma.clone());
    let one = FieldElement::from_rational(gamma.clone(), BigRational::one());
    let denom = &one - &g.pow_i64(-2);
    &(&FieldElement::from_integer(gamma.clone(), digit_max as i64) * &g.pow_i64(e)) / &denom
}

/// Partial sum `sum_{i<=k} d_i beta^{-i}` of an expansion prefix.
pub fn partial_value(digits: &[u32], beta: &Arc<AlgebraicReal>) -> FieldElement {
    let b = FieldElement::generator_element(beta.clone());
    let mut acc = FieldElement::zero(beta.clone());
    for (idx, &d) in digits.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let term = b.pow_i64(-(idx as i64) - 1);
        acc += &(&FieldElement::from_integer(beta.clone(), d as i64) * &term);
    }
    acc
}

/// Minimal (preperiod, period) of an eventually periodic digit sequence known
/// to repeat with `digits[pre..pre+per]` cycling.
fn minimize_periodicity(digits: &[u32], pre: usize, per: usize) -> (usize, usize) {
    let parts = minimize_parts(digits[..pre].to_vec(), digits[pre..pre + per].to_vec());
    (parts.0.len(), parts.1.len())
}

fn minimize_parts(mut pre: Vec<u32>, mut per: Vec<u32>) -> (Vec<u32>, Vec<u32>) {
    // Minimal cycle length: smallest divisor d with rotation-by-d invariance.
    let len = per.len();
    for d in 1..=len {
        if len % d != 0 {
            continue;
        }
        if (0..len).all(|j| per[j] == per[(j + d) % len]) {
            per.truncate(d);
            break;
        }
    }
    // Pull the preperiod back while its last digit matches the cycle's last.
    while let Some(&last) = pre.last() {
        if last == *per.last().unwrap() {
            pre.pop();
            per.rotate_right(1);
        } else {
            break;
        }
    }
    (pre, per)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{isolate_real_roots, IntPoly};

    fn golden() -> Arc<AlgebraicReal> {
        Arc::new(
            isolate_real_roots(&IntPoly::from_i64(&[-1, -1, 1]))
                .unwrap()
                .remove(1),
        )
    }

    fn eq41_beta() -> Arc<AlgebraicReal> {
        Arc::new(
            isolate_real_roots(&IntPoly::from_i64(&[-3, 0, -2, -3, 1]))
                .unwrap()
                .remove(1),
        )
    }

    fn eq41_gamma() -> Arc<AlgebraicReal> {
        Arc::new(
            isolate_real_roots(&IntPoly::from_i64(&[-3, 0, -2, -3, 1]))
                .unwrap()
                .remove(0),
        )
    }

    fn base3() -> Arc<AlgebraicReal> {
        Arc::new(
            isolate_real_roots(&IntPoly::from_i64(&[-3, 1]))
                .unwrap()
                .remove(0),
        )
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn expansion_of_zero_and_one() {
        let phi = golden();
        let mut z = beta_expand(&phi, FieldElement::zero(phi.clone())).unwrap();
        assert_eq!(z.digits(5), vec![0; 5]);
        let mut one = beta_expand(
            &phi,
            FieldElement::from_rational(phi.clone(), BigRational::one()),
        )
        .unwrap();
        assert_eq!(one.digits(5), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn d_beta_one_for_eq41() {
        let beta = eq41_beta();
        let mut e = beta_expand(
            &beta,
            FieldElement::from_rational(beta.clone(), BigRational::one()),
        )
        .unwrap();
        assert_eq!(e.digits(8), vec![3, 2, 0, 3, 0, 0, 0, 0]);
    }

    #[test]
    fn quasi_greedy_examples() {
        let phi = golden();
        let qg = quasi_greedy(&phi, 100).unwrap();
        let word = qg.periodic().unwrap();
        assert_eq!(word.pre, Vec::<u32>::new());
        assert_eq!(word.per, vec![1, 0]);

        let qg3 = quasi_greedy(&base3(), 100).unwrap();
        assert_eq!(qg3.periodic().unwrap().per, vec![2]);

        let qg41 = quasi_greedy(&eq41_beta(), 100).unwrap();
        let w = qg41.periodic().unwrap();
        assert_eq!(w.pre, Vec::<u32>::new());
        assert_eq!(w.per, vec![3, 2, 0, 2]);
    }

    #[test]
    fn parry_detection() {
        assert_eq!(
            is_parry(&golden(), 100).unwrap(),
            ParryStatus::Parry { preperiod: 0, period: 2 }
        );
        assert_eq!(
            is_parry(&base3(), 100).unwrap(),
            ParryStatus::Parry { preperiod: 0, period: 1 }
        );
        assert_eq!(
            is_parry(&eq41_beta(), 100).unwrap(),
            ParryStatus::Parry { preperiod: 0, period: 4 }
        );
    }

    #[test]
    fn canonical_systems() {
        let fib = canonical_system(&quasi_greedy(&golden(), 100).unwrap()).unwrap();
        let terms: Vec<i64> = (0..6).map(|n| i64::try_from(&fib.term(n)).unwrap()).collect();
        assert_eq!(terms, [1, 2, 3, 5, 8, 13]);

        let b3 = canonical_system(&quasi_greedy(&base3(), 100).unwrap()).unwrap();
        let terms: Vec<i64> = (0..5).map(|n| i64::try_from(&b3.term(n)).unwrap()).collect();
        assert_eq!(terms, [1, 3, 9, 27, 81]);

        let u = canonical_system(&quasi_greedy(&eq41_beta(), 100).unwrap()).unwrap();
        let terms: Vec<i64> = (0..5).map(|n| i64::try_from(&u.term(n)).unwrap()).collect();
        assert_eq!(terms, [1, 4, 15, 54, 195]);
        // Cross-check the closed recurrence against the defining equation.
        let qg = quasi_greedy(&eq41_beta(), 100).unwrap();
        for n in 1..30usize {
            let mut expect = BigInt::one();
            for k in 1..=n {
                expect += BigInt::from(qg.digit(k)) * u.term(n - k);
            }
            assert_eq!(u.term(n), expect);
        }
    }

    #[test]
    fn admissibility_examples() {
        let qg = quasi_greedy(&golden(), 100).unwrap();
        assert!(!parry_admissible(&"11".parse().unwrap(), &qg, 10));
        assert!(parry_admissible(&"1010".parse().unwrap(), &qg, 10));
        assert!(parry_admissible(&"0000".parse().unwrap(), &qg, 10));
    }

    #[test]
    fn bertrand_check_examples() {
        let qg = quasi_greedy(&golden(), 100).unwrap();
        let fib = canonical_system(&qg).unwrap();
        let (ok, cex) = bertrand_language_check(&qg, &fib, 10);
        assert!(ok, "counterexample: {cex:?}");

        let modified = NumerationSystem::from_recurrence(
            vec![BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3)],
        )
        .unwrap();
        let (ok, cex) = bertrand_language_check(&qg, &modified, 4);
        assert!(!ok);
        assert_eq!(cex.unwrap().to_string(), "2");

        let qg41 = quasi_greedy(&eq41_beta(), 100).unwrap();
        let u = canonical_system(&qg41).unwrap();
        let (ok, cex) = bertrand_language_check(&qg41, &u, 6);
        assert!(ok, "counterexample: {cex:?}");
    }

    #[test]
    fn expansion_reconstruction_brackets_x() {
        let beta = eq41_beta();
        let x = FieldElement::from_rational(beta.clone(), rat(1, 2));
        let mut e = beta_expand(&beta, x.clone()).unwrap();
        let digits = e.digits(50);
        for k in [1usize, 5, 20, 50] {
            let partial = partial_value(&digits[..k], &beta);
            let diff = &x - &partial;
            assert_ne!(diff.sign(), Sign::Negative);
            let b = FieldElement::generator_element(beta.clone());
            let gap = &diff - &b.pow_i64(-(k as i64));
            assert_eq!(gap.sign(), Sign::Negative);
        }
    }

    #[test]
    fn one_third_expansion_is_periodic() {
        let beta = eq41_beta();
        let x = FieldElement::from_rational(beta.clone(), rat(1, 3));
        let mut e = beta_expand(&beta, x).unwrap();
        let (digits, cycle) = e.detect_cycle(100);
        let (pre, per) = cycle.unwrap();
        assert_eq!((pre, per), (2, 4));
        assert_eq!(&digits[..6], &[1, 0, 2, 2, 1, 2]);
        let word = PeriodicWord::new(digits[..pre].to_vec(), digits[pre..pre + per].to_vec());
        assert_eq!(word.to_string(), "10(2212)");
    }

    #[test]
    fn conjugate_sums_match_paper_constants() {
        let beta = eq41_beta();
        let gamma = eq41_gamma();
        // d_beta(1/2) first 21 digits.
        let x = FieldElement::from_rational(beta.clone(), rat(1, 2));
        let digits = beta_expand(&beta, x).unwrap().digits(21);
        let expect: Vec<u32> = "123102303001010220123"
            .chars()
            .map(|c| c.to_digit(10).unwrap())
            .collect();
        assert_eq!(digits, expect);
        // S_{1,21} < -2.20 exactly in Q(gamma).
        let s = conjugate_sum(&digits, &gamma, 1, 21, 0);
        let bound = FieldElement::from_rational(gamma.clone(), rat(-220, 100));
        assert_eq!((&s - &bound).sign(), Sign::Negative);
        // Tail: 3 gamma^{-22} / (1 - gamma^{-2}) < 2.33.
        let tail = conjugate_tail_bound(&gamma, -22, 3);
        let lim = FieldElement::from_rational(gamma.clone(), rat(233, 100));
        assert_eq!((&tail - &lim).sign(), Sign::Negative);
        // And the tail bound is positive.
        assert_eq!(tail.sign(), Sign::Positive);
    }

    #[test]
    fn tail_bound_dominates_finite_sums() {
        // Any digit word bounded by 3 has its even-position sum below the
        // geometric estimate: spot-check against explicit sums.
        let gamma = eq41_gamma();
        let digits = vec![3u32; 40];
        let s = conjugate_sum(&digits, &gamma, 13, 40, 2);
        let bound = conjugate_tail_bound(&gamma, 2 - 13, 3);
        assert_eq!((&s - &bound).sign(), Sign::Negative);
    }

    #[test]
    fn minimize_parts_examples() {
        assert_eq!(
            minimize_parts(vec![], vec![1, 0, 1, 0]),
            (vec![], vec![1, 0])
        );
        // 1 (0 1)^omega = (1 0)^omega.
        assert_eq!(minimize_parts(vec![1], vec![0, 1]), (vec![], vec![1, 0]));
        assert_eq!(
            minimize_parts(vec![1, 0], vec![2, 2, 1, 2]),
            (vec![1, 0], vec![2, 2, 1, 2])
        );
    }
}
