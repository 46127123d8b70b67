//! Exact arithmetic in Q(beta) for a real algebraic generator. Elements are
//! rational coefficient vectors in the power basis 1, beta, ..., beta^{d-1};
//! sign determination combines a gcd-based zero test with interval refinement,
//! so it is exact and always terminates.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::poly::{RatPoly, SturmChain};
use super::real::AlgebraicReal;
use super::AlgebraicError;

#[derive(Debug, Clone)]
pub struct FieldElement {
    generator: Arc<AlgebraicReal>,
    coeffs: Vec<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(q: &BigRational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl FieldElement {
    pub fn zero(generator: Arc<AlgebraicReal>) -> FieldElement {
        let d = generator.degree().max(1);
        FieldElement {
            generator,
            coeffs: vec![BigRational::zero(); d],
        }
    }

    pub fn from_rational(generator: Arc<AlgebraicReal>, q: BigRational) -> FieldElement {
        let mut e = FieldElement::zero(generator);
        e.coeffs[0] = q;
        e
    }

    pub fn from_integer(generator: Arc<AlgebraicReal>, n: i64) -> FieldElement {
        FieldElement::from_rational(generator, BigRational::from(BigInt::from(n)))
    }

    /// The generator itself as an element of its own field.
    pub fn generator_element(generator: Arc<AlgebraicReal>) -> FieldElement {
        let mut e = FieldElement::zero(generator);
        if e.coeffs.len() > 1 {
            e.coeffs[1] = BigRational::one();
        } else {
            // Degree-one generator: beta is the rational root itself.
            let root = e
                .generator
                .is_rational()
                .expect("degree-one generator must be rational");
            e.coeffs[0] = root;
        }
        e
    }

    pub fn from_coeffs(
        generator: Arc<AlgebraicReal>,
        coeffs: Vec<BigRational>,
    ) -> Result<FieldElement, AlgebraicError> {
        let d = generator.degree().max(1);
        if coeffs.len() > d {
            return Err(AlgebraicError::InvalidInput(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                d
            )));
        }
        let mut c = coeffs;
        c.resize(d, BigRational::zero());
        Ok(FieldElement {
            generator,
            coeffs: c,
        })
    }

    pub fn generator(&self) -> &Arc<AlgebraicReal> {
        &self.generator
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_field(&self, other: &FieldElement) -> bool {
        Arc::ptr_eq(&self.generator, &other.generator)
            || self.generator.as_ref() == other.generator.as_ref()
    }

    fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }

    fn reduce(generator: Arc<AlgebraicReal>, poly: RatPoly) -> FieldElement {
        let m = generator.min_poly().to_rational();
        let (_, r) = poly.div_rem(&m);
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(generator.degree().max(1), BigRational::zero());
        FieldElement { generator, coeffs }
    }

    /// Multiplicative inverse. Requires the minimal polynomial to be
    /// irreducible (the caller's responsibility); panics on a zero divisor.
    pub fn inverse(&self) -> FieldElement {
        assert!(!self.is_zero(), "division by zero in Q(beta)");
        let m = self.generator.min_poly().to_rational();
        let (g, s, _) = self.as_poly().ext_gcd(&m);
        assert!(
            g.degree() == 0,
            "minimal polynomial is reducible: cannot invert"
        );
        Self::reduce(self.generator.clone(), s)
    }

    pub fn pow(&self, mut n: u32) -> FieldElement {
        let mut acc = FieldElement::from_rational(self.generator.clone(), BigRational::one());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// beta^n for possibly negative n.
    pub fn pow_i64(&self, n: i64) -> FieldElement {
        if n >= 0 {
            self.pow(n as u32)
        } else {
            self.inverse().pow((-n) as u32)
        }
    }

    /// Exact sign. Interval refinement decides every nonzero element, so it
    /// is tried first; zero is settled by a Sturm count of gcd(p, min_poly)
    /// inside the isolating interval, never by interval arithmetic alone.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        if let Some(q) = self.is_rational() {
            return Sign::of_rational(q);
        }
        // Enough halvings to separate any nonzero value of this coefficient
        // size from zero; only an exactly-zero element survives them all.
        let budget = 64 + 4 * self.coeff_bits();
        if let Some(sign) = self.refine_sign(Some(budget)) {
            return sign;
        }
        let m = self.generator.min_poly().to_rational();
        let g = self.as_poly().gcd(&m);
        if g.degree() > 0 {
            let g_int = g.clear_denominators();
            let chain = SturmChain::new(&g_int);
            let (lo, hi) = self.generator.interval();
            if lo == hi {
                if g_int.eval(&lo).is_zero() {
                    return Sign::Zero;
                }
            } else if chain.count_roots(&lo, &hi) > 0 {
                // The only root of min_poly in the interval is the generator,
                // so the gcd vanishing there means the element is zero.
                return Sign::Zero;
            }
        }
        self.refine_sign(None).expect("nonzero element decides")
    }

    /// Largest bit length over the coefficient numerators and denominators.
    fn coeff_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .flat_map(|c| [c.numer().bits(), c.denom().bits()])
            .max()
            .unwrap_or(0)
    }

    /// Refine the generator interval until the element's sign is decided,
    /// giving up after `rounds` halvings when a budget is supplied.
    fn refine_sign(&self, rounds: Option<u64>) -> Option<Sign> {
        let mut width = {
            let (lo, hi) = self.generator.interval();
            if lo == hi {
                return Some(Sign::of_rational(&self.as_poly().eval(&lo)));
            }
            hi - lo
        };
        let two = BigRational::from(BigInt::from(2));
        let mut round = 0u64;
        loop {
            let (lo, hi) = self.generator.refine_to(&width);
            if lo == hi {
                return Some(Sign::of_rational(&self.as_poly().eval(&lo)));
            }
            let (min, max) = interval_eval(&self.coeffs, &lo, &hi);
            if min.is_positive() {
                return Some(Sign::Positive);
            }
            if max.is_negative() {
                return Some(Sign::Negative);
            }
            round += 1;
            if rounds.map(|r| round >= r).unwrap_or(false) {
                return None;
            }
            width /= &two;
        }
    }

    pub fn cmp_elem(&self, other: &FieldElement) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    /// Largest integer at most the element.
    pub fn floor(&self) -> BigInt {
        if let Some(q) = self.is_rational() {
            return q.floor().to_integer();
        }
        // Start from an interval estimate, then correct with exact signs.
        let two = BigRational::from(BigInt::from(2));
        let mut width = BigRational::one();
        let mut guess = loop {
            let (lo, hi) = self.generator.refine_to(&width);
            let (min, max) = interval_eval(&self.coeffs, &lo, &hi);
            let fmin = min.floor().to_integer();
            let fmax = max.floor().to_integer();
            if fmin == fmax {
                break fmin;
            }
            width /= &two;
        };
        loop {
            let g = FieldElement::from_rational(
                self.generator.clone(),
                BigRational::from(guess.clone()),
            );
            match (self - &g).sign() {
                Sign::Negative => guess -= 1,
                _ => {
                    let g1 = FieldElement::from_rational(
                        self.generator.clone(),
                        BigRational::from(&guess + 1),
                    );
                    match (self - &g1).sign() {
                        Sign::Negative => return guess,
                        _ => guess += 1,
                    }
                }
            }
        }
    }

    /// Reinterpret the same coefficient vector over a conjugate root of the
    /// same minimal polynomial.
    pub fn evaluate_at_conjugate(
        &self,
        target: &Arc<AlgebraicReal>,
    ) -> Result<FieldElement, AlgebraicError> {
        if target.min_poly() != self.generator.min_poly() {
            return Err(AlgebraicError::FieldMismatch);
        }
        Ok(FieldElement {
            generator: target.clone(),
            coeffs: self.coeffs.clone(),
        })
    }

    /// Enclosing rational interval of width at most `width`.
    pub fn enclosure(&self, width: &BigRational) -> (BigRational, BigRational) {
        if let Some(q) = self.is_rational() {
            return (q.clone(), q.clone());
        }
        let two = BigRational::from(BigInt::from(2));
        let mut w = width.clone();
        loop {
            let (lo, hi) = self.generator.refine_to(&w);
            if lo == hi {
                let v = self.as_poly().eval(&lo);
                return (v.clone(), v);
            }
            let (min, max) = interval_eval(&self.coeffs, &lo, &hi);
            if &max - &min <= *width {
                return (min, max);
            }
            w /= &two;
        }
    }

    /// Decimal rendering with `digits` places (value truncated towards zero).
    pub fn decimal_string(&self, digits: u32) -> String {
        let scale = BigInt::from(10).pow(digits + 2);
        let (lo, hi) = self.enclosure(&BigRational::new(BigInt::one(), scale));
        let mid = (lo + hi) / BigRational::from(BigInt::from(2));
        super::decimal_of_rational(&mid, digits)
    }
}

/// Interval image of a polynomial (power-basis coefficients) over [lo, hi].
fn interval_eval(
    coeffs: &[BigRational],
    lo: &BigRational,
    hi: &BigRational,
) -> (BigRational, BigRational) {
    let mut min = BigRational::zero();
    let mut max = BigRational::zero();
    // Powers of the interval, computed by repeated interval multiplication.
    let (mut plo, mut phi) = (BigRational::one(), BigRational::one());
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            let candidates = [&plo * lo, &plo * hi, &phi * lo, &phi * hi];
            plo = candidates.iter().min().unwrap().clone();
            phi = candidates.iter().max().unwrap().clone();
        }
        if c.is_zero() {
            continue;
        }
        let (a, b) = (c * &plo, c * &phi);
        if a <= b {
            min += a;
            max += b;
        } else {
            min += b;
            max += a;
        }
    }
    (min, max)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for c in &self.coeffs {
            c.numer().hash(state);
            c.denom().hash(state);
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(self.same_field(rhs), "field mismatch");
                FieldElement::$method(self, rhs)
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

impl FieldElement {
    fn add(&self, rhs: &FieldElement) -> FieldElement {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            generator: self.generator.clone(),
            coeffs,
        }
    }

    fn sub(&self, rhs: &FieldElement) -> FieldElement {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            generator: self.generator.clone(),
            coeffs,
        }
    }

    fn mul(&self, rhs: &FieldElement) -> FieldElement {
        Self::reduce(self.generator.clone(), self.as_poly().mul(&rhs.as_poly()))
    }

    fn div(&self, rhs: &FieldElement) -> FieldElement {
        self.mul(&rhs.inverse())
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            generator: self.generator.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = FieldElement::add(self, rhs);
    }
}
