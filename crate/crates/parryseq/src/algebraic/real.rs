//! Real algebraic numbers as a squarefree integer polynomial together with an
//! isolating rational interval. Refinements are cached; the represented root
//! never changes.

use std::sync::Mutex;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::poly::{IntPoly, SturmChain};
use super::AlgebraicError;

#[derive(Debug)]
pub struct AlgebraicReal {
    min_poly: IntPoly,
    interval: Mutex<(BigRational, BigRational)>,
}

impl Clone for AlgebraicReal {
    fn clone(&self) -> Self {
        let iv = self.interval.lock().unwrap().clone();
        AlgebraicReal {
            min_poly: self.min_poly.clone(),
            interval: Mutex::new(iv),
        }
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        if self.min_poly != other.min_poly {
            return false;
        }
        let a = self.interval.lock().unwrap().clone();
        let b = other.interval.lock().unwrap().clone();
        // Same squarefree polynomial: equal iff the isolating intervals overlap.
        a.0 <= b.1 && b.0 <= a.1
    }
}
impl Eq for AlgebraicReal {}

/// Isolate the distinct real roots of `poly`, ordered increasingly. The
/// polynomial is made squarefree internally.
pub fn isolate_real_roots(poly: &IntPoly) -> Result<Vec<AlgebraicReal>, AlgebraicError> {
    if poly.is_zero() {
        return Err(AlgebraicError::InvalidInput("zero polynomial".into()));
    }
    let sf = poly.squarefree();
    if sf.degree() == 0 {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&sf);
    let bound = sf.root_bound();
    let mut lo = -bound.clone();
    // Nudge the endpoints off any root.
    while sf.eval(&lo).is_zero() {
        lo -= BigRational::one();
    }
    let mut hi = bound;
    while sf.eval(&hi).is_zero() {
        hi += BigRational::one();
    }
    let mut stack = vec![(lo, hi)];
    let mut isolated = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let n = chain.count_roots(&a, &b);
        match n {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let mut mid = (&a + &b) / BigRational::from(BigInt::from(2));
                while sf.eval(&mid).is_zero() {
                    // Exact root hit: isolate it as a degenerate interval and
                    // bisect around it.
                    isolated.push((mid.clone(), mid.clone()));
                    mid = (&a + &mid) / BigRational::from(BigInt::from(2));
                    if sf.eval(&mid).is_zero() {
                        continue;
                    }
                    break;
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    isolated.sort_by(|x, y| x.0.cmp(&y.0));
    if sf.degree() == 1 {
        // Linear polynomials have an exact rational root.
        let root = BigRational::new(-sf.coeffs()[0].clone(), sf.coeffs()[1].clone());
        isolated = vec![(root.clone(), root)];
    }
    Ok(isolated
        .into_iter()
        .map(|(a, b)| AlgebraicReal {
            min_poly: sf.clone(),
            interval: Mutex::new((a, b)),
        })
        .collect())
}

impl AlgebraicReal {
    pub fn from_rational(q: BigRational) -> AlgebraicReal {
        let poly = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]).primitive();
        AlgebraicReal {
            min_poly: poly,
            interval: Mutex::new((q.clone(), q)),
        }
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree()
    }

    pub fn interval(&self) -> (BigRational, BigRational) {
        self.interval.lock().unwrap().clone()
    }

    pub fn is_rational(&self) -> Option<BigRational> {
        let iv = self.interval.lock().unwrap();
        if iv.0 == iv.1 {
            Some(iv.0.clone())
        } else {
            None
        }
    }

    /// Shrink the cached isolating interval to width at most `width` and
    /// return it. Refinements nest: the result is contained in every interval
    /// returned before.
    pub fn refine_to(&self, width: &BigRational) -> (BigRational, BigRational) {
        assert!(width.is_positive(), "width must be positive");
        let mut iv = self.interval.lock().unwrap();
        if iv.0 == iv.1 {
            return iv.clone();
        }
        let sign_lo = self.min_poly.eval(&iv.0).is_positive();
        let two = BigRational::from(BigInt::from(2));
        while &iv.1 - &iv.0 > *width {
            let mid = (&iv.0 + &iv.1) / &two;
            let v = self.min_poly.eval(&mid);
            if v.is_zero() {
                *iv = (mid.clone(), mid);
                break;
            }
            if v.is_positive() == sign_lo {
                iv.0 = mid;
            } else {
                iv.1 = mid;
            }
        }
        iv.clone()
    }

    /// A rational approximation within `width` of the root.
    pub fn approx(&self, width: &BigRational) -> BigRational {
        let (lo, hi) = self.refine_to(width);
        (lo + hi) / BigRational::from(BigInt::from(2))
    }

    /// Decimal rendering with `digits` places, truncated towards zero.
    pub fn decimal_string(&self, digits: u32) -> String {
        let scale = BigInt::from(10).pow(digits + 2);
        let width = BigRational::new(BigInt::one(), scale);
        let x = self.approx(&width);
        super::decimal_of_rational(&x, digits)
    }

    /// Exact comparison with a rational point.
    pub fn cmp_rational(&self, q: &BigRational) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if self.min_poly.eval(q).is_zero() {
            // q is a root of the minimal polynomial; it is our root iff it
            // lies in the isolating interval.
            let (lo, hi) = self.interval();
            if lo <= *q && *q <= hi {
                return Ordering::Equal;
            }
        }
        loop {
            let (lo, hi) = self.interval();
            if *q < lo || (lo == hi && *q < lo) {
                return Ordering::Greater;
            }
            if *q > hi || (lo == hi && *q > hi) {
                return Ordering::Less;
            }
            if lo == hi {
                return Ordering::Equal;
            }
            let w = (&hi - &lo) / BigRational::from(BigInt::from(2));
            self.refine_to(&w);
        }
    }

    /// Smallest integer strictly greater than the root minus one, i.e. ⌈root⌉.
    pub fn ceil(&self) -> BigInt {
        let one = BigRational::one();
        let (lo, hi) = self.refine_to(&one);
        let mut k = lo.floor().to_integer();
        loop {
            let q = BigRational::from(k.clone());
            match self.cmp_rational(&q) {
                std::cmp::Ordering::Greater => k += 1,
                _ => {
                    let _ = hi;
                    return k;
                }
            }
        }
    }
}
