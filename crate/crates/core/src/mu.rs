//! The fractional hat chromatic number of chordal graphs.
//!
//! Bisection over uniform ratios `r`, asking the chordal decision whether the
//! uniform game with ratio `r` can be won. The bracket `[lo, hi]` always has an
//! unwinnable `lo` and a winnable `hi`, so it encloses `1/μ̂`.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{is_chordal, Graph};
use crate::numerics::{smallest_positive_root, Bracket, IntPolynomial, NumericsError, Rational};
use crate::polynomial::{univariate_polynomial, PolynomialError};
use crate::synthesis::{chordal_z_eval, decide_region, SynthesisError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MuError {
    #[error("graph is not chordal")]
    NotChordal,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("precision must be at least one bit")]
    InvalidPrecision,
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuResult {
    /// `μ̂ = q` exactly.
    Exact(BigUint),
    /// `μ̂ ≈ t`, with `1/μ̂` and `1/t` both inside `[lo, hi]`.
    Approx {
        t: Rational,
        lo: Rational,
        hi: Rational,
    },
}

fn check(g: &Graph) -> Result<(), MuError> {
    if g.vertex_count() == 0 {
        return Err(MuError::EmptyGraph);
    }
    if !is_chordal(g) {
        return Err(MuError::NotChordal);
    }
    Ok(())
}

/// All brackets of the bisection, starting from `[0, 1]`; entry `i` has width
/// `2^-i`.
pub fn bisection(g: &Graph, steps: usize) -> Result<Vec<Bracket>, MuError> {
    check(g)?;
    let n = g.vertex_count();
    let two = Rational::from_integer(2.into());
    let mut b = Bracket {
        lo: Rational::zero(),
        hi: Rational::one(),
    };
    let mut out = vec![b.clone()];
    for _ in 0..steps {
        let mid = (&b.lo + &b.hi) / &two;
        if decide_region(g, &vec![mid.clone(); n])? {
            b.hi = mid;
        } else {
            b.lo = mid;
        }
        out.push(b.clone());
    }
    Ok(out)
}

/// `μ̂(G)` to within `2^-k`, exact when it is an integer.
pub fn approximate_mu(g: &Graph, k: u32) -> Result<MuResult, MuError> {
    if k == 0 {
        return Err(MuError::InvalidPrecision);
    }
    check(g)?;
    let n = g.vertex_count();
    let steps = (2 * k as usize).max(3 * n);
    let b = bisection(g, steps)?.pop().unwrap();
    let first = (Rational::one() / &b.hi).ceil().to_integer();
    let cap = BigInt::one() << n;
    let last = if b.lo.is_zero() {
        cap
    } else {
        (Rational::one() / &b.lo).floor().to_integer().min(cap)
    };
    let mut q = first;
    while q <= last {
        let w = vec![Rational::new(BigInt::one(), q.clone()); n];
        if chordal_z_eval(g, &w)?.is_zero() {
            return Ok(MuResult::Exact(q.to_biguint().expect("positive")));
        }
        q += 1;
    }
    let t = Rational::from_integer(2.into()) / (&b.lo + &b.hi);
    Ok(MuResult::Approx {
        t,
        lo: b.lo,
        hi: b.hi,
    })
}

/// Smallest positive root of `U_G`, to `precision_bits`.
pub fn independence_root(g: &Graph, precision_bits: u32) -> Result<Bracket, MuError> {
    if g.vertex_count() == 0 {
        return Err(MuError::EmptyGraph);
    }
    let p = univariate_polynomial(g)?;
    Ok(smallest_positive_root(&p, precision_bits)?)
}

fn invert(b: &Bracket) -> Bracket {
    Bracket {
        lo: b.hi.recip(),
        hi: b.lo.recip(),
    }
}

/// Bracket on `1/root` for the smallest positive root of `U_G`. This is `μ̂`
/// for chordal graphs and an upper bound on it in general.
pub fn mu_upper_bound_root(g: &Graph, precision_bits: u32) -> Result<Bracket, MuError> {
    let mut bits = precision_bits.max(1);
    loop {
        let b = independence_root(g, bits)?;
        if !b.lo.is_zero() {
            return Ok(invert(&b));
        }
        bits *= 2;
    }
}

/// Root of `(1 - x)^Δ = x` in `(0, 1)`.
pub fn star_root(delta: u32, precision_bits: u32) -> Result<Bracket, MuError> {
    assert!(delta >= 1, "degree must be positive");
    let mut coeffs: Vec<BigInt> = (0..=delta)
        .map(|i| {
            let c = BigInt::from(binomial(delta as u64, i as u64));
            if i % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    coeffs[1] -= 1;
    Ok(smallest_positive_root(
        &IntPolynomial::new(coeffs),
        precision_bits,
    )?)
}

/// `r` as a float, for display and coarse comparisons only.
pub fn approx_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
