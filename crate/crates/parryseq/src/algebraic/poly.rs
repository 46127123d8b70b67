//! Integer and rational polynomials: just enough for Sturm-based root
//! isolation and arithmetic modulo a minimal polynomial.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Integer-coefficient polynomial, constant term first. Trailing zeroes are
/// trimmed; the zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from(c.clone())).collect())
    }

    /// Squarefree part `p / gcd(p, p')`, primitive with positive leading
    /// coefficient.
    pub fn squarefree(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.to_rational().gcd(&self.derivative().to_rational());
        if g.degree() == 0 {
            return self.primitive();
        }
        let (q, r) = self.to_rational().div_rem(&g);
        debug_assert!(r.is_zero());
        q.clear_denominators().primitive()
    }

    /// Divide out the content and normalize the sign of the leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut content = BigInt::zero();
        for c in &self.coeffs {
            content = num::integer::gcd(content, c.clone());
        }
        if self.leading().is_negative() {
            content = -content;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &content).collect())
    }

    /// Cauchy bound: all real roots lie in (-b, b).
    pub fn root_bound(&self) -> BigRational {
        let lead = BigRational::from(self.leading().clone());
        let mut max = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = (BigRational::from(c.clone()) / &lead).abs();
            if q > max {
                max = q;
            }
        }
        max + BigRational::one()
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "X")?,
                1 => write!(f, "{a}*X")?,
                _ if a.is_one() => write!(f, "X^{i}")?,
                _ => write!(f, "{a}*X^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Rational-coefficient polynomial, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigRational {
        self.coeffs.last().expect("zero polynomial")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        RatPoly::new(out)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, k: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len()];
        while !rem.is_zero() && rem.degree() >= divisor.degree() {
            let shift = rem.degree() - divisor.degree();
            let factor = rem.leading() / divisor.leading();
            quot[shift] = factor.clone();
            let mut sub = vec![BigRational::zero(); shift];
            sub.extend(divisor.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&RatPoly::new(sub));
        }
        (RatPoly::new(quot), rem)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading().clone();
            a.scale(&(BigRational::one() / lead))
        }
    }

    /// Extended gcd: returns (g, s, t) with g = s*self + t*other, g monic.
    pub fn ext_gcd(&self, other: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            (r0, s0, t0)
        } else {
            let inv = BigRational::one() / r0.leading().clone();
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
    }

    /// Multiply by the lcm of the denominators to obtain an integer polynomial.
    pub fn clear_denominators(&self) -> IntPoly {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
    }
}

/// Sturm chain of a squarefree polynomial.
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(poly: &IntPoly) -> SturmChain {
        let p0 = poly.to_rational();
        let p1 = poly.derivative().to_rational();
        let mut chain = vec![p0, p1];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            chain.push(r.neg());
        }
        SturmChain { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let sign = v.is_positive();
            if let Some(prev) = last {
                if prev != sign {
                    count += 1;
                }
            }
            last = Some(sign);
        }
        count
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        assert!(a <= b);
        self.variations(a) - self.variations(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn eval_and_derivative() {
        let p = IntPoly::from_i64(&[-1, -1, 1]); // X^2 - X - 1
        assert_eq!(p.eval(&rat(2, 1)), rat(1, 1));
        assert_eq!(p.derivative(), IntPoly::from_i64(&[-1, 2]));
    }

    #[test]
    fn sturm_counts_golden_mean_roots() {
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let chain = SturmChain::new(&p);
        assert_eq!(chain.count_roots(&rat(-2, 1), &rat(2, 1)), 2);
        assert_eq!(chain.count_roots(&rat(0, 1), &rat(2, 1)), 1);
        assert_eq!(chain.count_roots(&rat(1, 1), &rat(2, 1)), 1);
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        // (X-1)^2 (X+2) = X^3 - 3X + 2
        let p = IntPoly::from_i64(&[2, -3, 0, 1]);
        let sf = p.squarefree();
        // (X-1)(X+2) = X^2 + X - 2
        assert_eq!(sf, IntPoly::from_i64(&[-2, 1, 1]));
    }

    #[test]
    fn ext_gcd_inverts_modulo() {
        // Invert X (i.e. beta) modulo X^2 - X - 1: beta^{-1} = beta - 1.
        let m = IntPoly::from_i64(&[-1, -1, 1]).to_rational();
        let x = RatPoly::new(vec![BigRational::zero(), BigRational::one()]);
        let (g, s, _) = x.ext_gcd(&m);
        assert_eq!(g.degree(), 0);
        let (_, prod) = x.mul(&s).div_rem(&m);
        assert_eq!(prod, RatPoly::one());
    }
}
