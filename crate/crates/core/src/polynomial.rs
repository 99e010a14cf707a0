//! Signed independence polynomials by brute-force subset recursion.
//!
//! These are validation oracles: exponential in the worst case, capped at
//! [`MAX_ENUMERATION_VERTICES`]. The polynomial-time path for chordal graphs
//! lives in [`crate::synthesis`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{induced_subgraph, Graph};
use crate::numerics::{sturm_positive_on_unit_interval, IntPolynomial, RatPolynomial, Rational};

pub const MAX_ENUMERATION_VERTICES: usize = 30;
pub const MAX_REGION_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolynomialError {
    #[error("graph has {n} vertices, enumeration is capped at {max}")]
    GraphTooLarge { n: usize, max: usize },
    #[error("expected {expected} per-vertex values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ratio of vertex {0} is outside [0, 1]")]
    RatioOutOfRange(usize),
}

fn check_size(g: &Graph, max: usize) -> Result<(), PolynomialError> {
    let n = g.vertex_count();
    if n > max {
        Err(PolynomialError::GraphTooLarge { n, max })
    } else {
        Ok(())
    }
}

fn check_len(g: &Graph, len: usize) -> Result<(), PolynomialError> {
    if g.vertex_count() != len {
        Err(PolynomialError::LengthMismatch {
            expected: g.vertex_count(),
            got: len,
        })
    } else {
        Ok(())
    }
}

/// Closed-neighborhood bitmasks.
fn closed_neighborhoods(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &u| m | 1u64 << u))
        .collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Memoized expansion `F(S) = F(S - v) ⊕ F(S - N⁺(v))` over vertex subsets,
/// branching on the lowest vertex of `S`.
struct Expansion<T, C> {
    closed: Vec<u64>,
    memo: HashMap<u64, T>,
    combine: C,
}

impl<T: Clone, C: Fn(usize, &T, &T) -> T> Expansion<T, C> {
    fn new(g: &Graph, empty: T, combine: C) -> Self {
        let mut memo = HashMap::new();
        memo.insert(0, empty);
        Self {
            closed: closed_neighborhoods(g),
            memo,
            combine,
        }
    }

    fn eval(&mut self, mask: u64) -> T {
        if let Some(t) = self.memo.get(&mask) {
            return t.clone();
        }
        let v = mask.trailing_zeros() as usize;
        let without = self.eval(mask & !(1u64 << v));
        let with = self.eval(mask & !self.closed[v]);
        let out = (self.combine)(v, &without, &with);
        self.memo.insert(mask, out.clone());
        out
    }
}

/// Number of independent sets of each size, index = size.
pub fn independent_set_counts(g: &Graph) -> Result<Vec<u64>, PolynomialError> {
    check_size(g, MAX_ENUMERATION_VERTICES)?;
    let mut exp = Expansion::new(g, vec![1u64], |_, a: &Vec<u64>, b: &Vec<u64>| {
        let mut out = a.clone();
        out.resize(a.len().max(b.len() + 1), 0);
        for (k, c) in b.iter().enumerate() {
            out[k + 1] += c;
        }
        out
    });
    Ok(exp.eval(full_mask(g.vertex_count())))
}

/// `U_G(x)`: coefficient of `x^k` is `(-1)^k` times the number of independent
/// sets of size `k`.
pub fn univariate_polynomial(g: &Graph) -> Result<IntPolynomial, PolynomialError> {
    let counts = independent_set_counts(g)?;
    Ok(IntPolynomial::new(
        counts
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let c = BigInt::from(c);
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect(),
    ))
}

/// Every independent set as a bitmask, in increasing numeric order.
pub fn independent_sets(g: &Graph) -> Result<Vec<u64>, PolynomialError> {
    check_size(g, MAX_REGION_VERTICES)?;
    let closed = closed_neighborhoods(g);
    let mut out = Vec::new();
    fn rec(closed: &[u64], avail: u64, chosen: u64, out: &mut Vec<u64>) {
        if avail == 0 {
            out.push(chosen);
            return;
        }
        let v = avail.trailing_zeros() as usize;
        rec(closed, avail & !(1u64 << v), chosen, out);
        rec(closed, avail & !closed[v], chosen | 1u64 << v, out);
    }
    rec(&closed, full_mask(g.vertex_count()), 0, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// Exact multivariate `Z_G(x) = Σ_I (-1)^|I| Π_{v∈I} x_v` over independent
/// sets `I`.
pub fn z_eval(g: &Graph, x: &[Rational]) -> Result<Rational, PolynomialError> {
    check_size(g, MAX_ENUMERATION_VERTICES)?;
    check_len(g, x.len())?;
    let mut exp = Expansion::new(g, Rational::one(), |v, a: &Rational, b: &Rational| {
        a - &x[v] * b
    });
    Ok(exp.eval(full_mask(g.vertex_count())))
}

/// Checks `Z_G(x) = Z_{G-v}(x) - x_v Z_{G-N⁺(v)}(x)` by evaluating all three
/// polynomials on genuinely smaller graphs.
pub fn expansion_check(g: &Graph, x: &[Rational], v: usize) -> Result<bool, PolynomialError> {
    check_len(g, x.len())?;
    let restricted = |remove: &[usize]| -> Result<Rational, PolynomialError> {
        let keep: Vec<usize> = (0..g.vertex_count())
            .filter(|u| !remove.contains(u))
            .collect();
        if keep.is_empty() {
            return Ok(Rational::one());
        }
        let sub = induced_subgraph(g, &keep).expect("non-empty keep set");
        let xs: Vec<Rational> = sub.new_to_old.iter().map(|&u| x[u].clone()).collect();
        z_eval(&sub.graph, &xs)
    };
    let whole = z_eval(g, x)?;
    let minus_v = restricted(&[v])?;
    let mut closed = g.neighbors(v).to_vec();
    closed.push(v);
    let minus_closed = restricted(&closed)?;
    Ok(whole == minus_v - &x[v] * minus_closed)
}

/// A ratio vector on a graph; membership asks whether it lies in the region
/// where `Z_G` stays positive on the whole box below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionQuery {
    pub graph: Graph,
    pub ratios: Vec<Rational>,
}

impl RegionQuery {
    pub fn new(graph: Graph, ratios: Vec<Rational>) -> Result<Self, PolynomialError> {
        check_len(&graph, ratios.len())?;
        if let Some(v) = ratios
            .iter()
            .position(|r| r.is_negative() || *r > Rational::one())
        {
            return Err(PolynomialError::RatioOutOfRange(v));
        }
        Ok(Self { graph, ratios })
    }

    pub fn uniform(graph: Graph, r: Rational) -> Result<Self, PolynomialError> {
        let n = graph.vertex_count();
        Self::new(graph, vec![r; n])
    }
}

/// `p(λ) = Z_G(λ·r)` as a univariate polynomial with exact coefficients.
pub fn ray_polynomial(g: &Graph, r: &[Rational]) -> Result<RatPolynomial, PolynomialError> {
    check_size(g, MAX_REGION_VERTICES)?;
    check_len(g, r.len())?;
    let mut exp = Expansion::new(
        g,
        vec![Rational::one()],
        |v, a: &Vec<Rational>, b: &Vec<Rational>| {
            let mut out = a.clone();
            out.resize(a.len().max(b.len() + 1), Rational::zero());
            for (k, c) in b.iter().enumerate() {
                out[k + 1] -= &r[v] * c;
            }
            out
        },
    );
    Ok(RatPolynomial::new(exp.eval(full_mask(g.vertex_count()))))
}

/// True iff the ratio vector lies in the region, i.e. `Z_G(λ·r) > 0` for every
/// `λ ∈ [0, 1]`, decided by Sturm root counting.
pub fn region_oracle(q: &RegionQuery) -> Result<bool, PolynomialError> {
    let p = ray_polynomial(&q.graph, &q.ratios)?;
    Ok(sturm_positive_on_unit_interval(&p))
}
