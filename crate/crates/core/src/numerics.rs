//! Exact rational arithmetic, integer and rational polynomials, and real-root
//! isolation by Sturm sequences.
//!
//! Nothing in here touches floating point. Every sign that a decision depends
//! on is computed exactly over `BigRational`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("polynomial has no positive root in (0, 1]")]
    NoPositiveRootInUnitInterval,
    #[error("polynomial must be positive at zero")]
    NotPositiveAtZero,
}

/// Shorthand for `p/q` as a [`Rational`]. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q` or a bare integer into a reduced [`Rational`].
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Formats a rational as `p/q`; integers are printed as `p/1`.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Decimal expansion of `x` truncated toward zero after `digits` places.
/// Display only.
pub fn format_decimal(x: &Rational, digits: usize) -> String {
    let neg = x.is_negative();
    let x = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (x * Rational::from_integer(scale.clone())).to_integer();
    let (int, frac) = scaled.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// `2^(-bits)` as an exact rational.
pub fn dyadic_width(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// The integer closest to `x`; ties round up.
pub fn nearest_integer(x: &Rational) -> BigInt {
    (x + Rational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer()
}

/// Least common multiple of a non-empty list. Panics on an empty list.
pub fn lcm_list(values: &[BigUint]) -> BigUint {
    assert!(!values.is_empty(), "lcm of an empty list");
    values
        .iter()
        .skip(1)
        .fold(values[0].clone(), |acc, v| acc.lcm(v))
}

/// Polynomial with integer coefficients, constant term first.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::from_integer(c.clone())
        })
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(
            self.coeffs
                .iter()
                .cloned()
                .map(Rational::from_integer)
                .collect(),
        )
    }
}

impl fmt::Display for IntPolynomial {
    /// Coefficients constant-first, separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Exact Horner evaluation; free-function form of [`IntPolynomial::eval`].
pub fn eval_poly(p: &IntPolynomial, x: &Rational) -> Rational {
    p.eval(x)
}

/// Polynomial with rational coefficients, constant term first, trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn leading(&self) -> &Rational {
        self.coeffs
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// `p(c·x)`.
    pub fn scale_argument(&self, c: &Rational) -> Self {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::new(out)
    }

    /// Euclidean division; panics when dividing by the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Divides by the absolute value of the leading coefficient. Signs at
    /// every point are unchanged.
    fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading().abs();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }
}

/// Canonical Sturm chain `p, p', -rem(p, p'), ...` for a polynomial, built
/// from its square-free part so that the chain counts distinct roots and stays
/// valid at points that are themselves roots.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<RatPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &RatPolynomial) -> Self {
        let first = Self::raw_chain(p);
        let gcd = first.last().cloned().unwrap_or_else(|| p.clone());
        if gcd.degree().unwrap_or(0) == 0 {
            return Self { chain: first };
        }
        let (square_free, _) = p.div_rem(&gcd);
        Self {
            chain: Self::raw_chain(&square_free),
        }
    }

    fn raw_chain(p: &RatPolynomial) -> Vec<RatPolynomial> {
        let mut chain = vec![p.normalized()];
        if p.degree().unwrap_or(0) == 0 {
            return chain;
        }
        chain.push(p.derivative().normalized());
        loop {
            let n = chain.len();
            let (_, rem) = chain[n - 2].div_rem(&chain[n - 1]);
            if rem.is_zero() {
                break;
            }
            let neg = RatPolynomial::new(rem.coeffs.iter().map(|c| -c).collect());
            chain.push(neg.normalized());
        }
        chain
    }

    /// The square-free polynomial at the head of the chain.
    pub fn head(&self) -> &RatPolynomial {
        &self.chain[0]
    }

    /// Number of sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for q in &self.chain {
            let v = q.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    /// Requires `a < b` and `a` not a root.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// A closed interval `[lo, hi]` of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: Rational,
    pub hi: Rational,
}

impl Bracket {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }
}

/// Brackets the smallest positive root of `p` to width `2^(-precision_bits)`.
///
/// The returned `[lo, hi]` satisfies `p(lo) > 0` with no root in `(0, lo]`, and
/// the root lies in `(lo, hi]`. When that root has odd multiplicity,
/// `p(hi) <= 0`.
pub fn smallest_positive_root(
    p: &IntPolynomial,
    precision_bits: u32,
) -> Result<Bracket, NumericsError> {
    smallest_positive_root_rat(&p.to_rational(), precision_bits)
}

/// [`smallest_positive_root`] for rational coefficients.
pub fn smallest_positive_root_rat(
    p: &RatPolynomial,
    precision_bits: u32,
) -> Result<Bracket, NumericsError> {
    let zero = Rational::zero();
    if !p.eval(&zero).is_positive() {
        return Err(NumericsError::NotPositiveAtZero);
    }
    let sturm = SturmSequence::new(p);
    let base = sturm.variations(&zero);
    let mut lo = zero;
    let mut hi = Rational::one();
    if base.saturating_sub(sturm.variations(&hi)) == 0 {
        return Err(NumericsError::NoPositiveRootInUnitInterval);
    }
    let target = dyadic_width(precision_bits);
    let two = Rational::from_integer(BigInt::from(2));
    // Sturm bisection until the bracket isolates one simple sign change, then
    // plain sign bisection on the square-free head.
    let head = sturm.head();
    let mut sign_mode = false;
    while &hi - &lo > target {
        if !sign_mode
            && sturm.count_roots(&lo, &hi) == 1
            && head.eval(&hi).is_negative() != head.eval(&lo).is_negative()
        {
            sign_mode = true;
        }
        let mid = (&lo + &hi) / &two;
        let left_has_root = if sign_mode {
            let v = head.eval(&mid);
            v.is_zero() || v.is_negative() != head.eval(&lo).is_negative()
        } else {
            base - sturm.variations(&mid) > 0
        };
        if left_has_root {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Bracket { lo, hi })
}

/// Decides exactly whether `p(λ) > 0` for every `λ ∈ [0, 1]`.
///
/// Callers guarantee `p(0) > 0`; a polynomial violating that is reported as
/// not positive.
pub fn sturm_positive_on_unit_interval(p: &RatPolynomial) -> bool {
    let zero = Rational::zero();
    let one = Rational::one();
    if !p.eval(&zero).is_positive() || !p.eval(&one).is_positive() {
        return false;
    }
    if p.degree().unwrap_or(0) == 0 {
        return true;
    }
    SturmSequence::new(p).count_roots(&zero, &one) == 0
}
