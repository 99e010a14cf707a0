//! Demon simulation: exhaustive and randomized search for arrangements in
//! which every bear guesses wrong.

use std::collections::HashMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::numerics::Rational;
use crate::polynomial::{independent_sets, z_eval, PolynomialError};
use crate::strategy::{game_of, Arrangement, CompiledStrategy, GameSpec, Strategy, StrategyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifierError {
    #[error("{states} arrangements exceed the limit of {max}")]
    StateSpaceTooLarge { states: String, max: u64 },
    #[error("{profiles} strategy profiles exceed the limit of {max}")]
    StrategySpaceTooLarge { profiles: String, max: u64 },
    #[error("strategy does not fit the game: {0}")]
    GameMismatch(String),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationResult {
    Winning,
    Counterexample(Arrangement),
    Inconclusive(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_states: u64,
    pub max_profiles: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_states: 100_000_000,
            max_profiles: 10_000_000,
            threads: None,
        }
    }
}

const CHUNK: u64 = 1 << 14;

fn state_count(spec: &GameSpec, max: u64) -> Result<u64, VerifierError> {
    match spec.arrangement_count() {
        Some(m) if m <= max => Ok(m),
        Some(m) => Err(VerifierError::StateSpaceTooLarge {
            states: m.to_string(),
            max,
        }),
        None => Err(VerifierError::StateSpaceTooLarge {
            states: "more than 2^64".into(),
            max,
        }),
    }
}

/// Compiles `s` and checks it is valid for `spec`: same hatness everywhere
/// and no more guesses than allowed.
fn prepare(spec: &GameSpec, s: &Strategy) -> Result<CompiledStrategy, VerifierError> {
    let own = game_of(s, spec.graph())?;
    for v in 0..spec.vertex_count() {
        if own.hatness()[v] != spec.hatness()[v] || own.guesses()[v] > spec.guesses()[v] {
            return Err(VerifierError::GameMismatch(format!(
                "vertex {v}: strategy plays ({}, {}), game is ({}, {})",
                own.hatness()[v],
                own.guesses()[v],
                spec.hatness()[v],
                spec.guesses()[v]
            )));
        }
    }
    Ok(CompiledStrategy::compile(s)?)
}

/// Mixed-radix digits of `index`, vertex 0 most significant.
fn decode(mut index: u64, h: &[u64], out: &mut [u64]) {
    for v in (0..h.len()).rev() {
        out[v] = index % h[v];
        index /= h[v];
    }
}

fn increment(colors: &mut [u64], h: &[u64]) {
    for v in (0..h.len()).rev() {
        colors[v] += 1;
        if colors[v] < h[v] {
            return;
        }
        colors[v] = 0;
    }
}

fn run_in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Calls `visit` on every arrangement in index order within disjoint chunks
/// processed in parallel; returns the first `Some` by index.
fn scan<T: Send>(
    spec: &GameSpec,
    cfg: &VerifyConfig,
    visit: impl Fn(&[u64]) -> Result<Option<T>, VerifierError> + Sync,
) -> Result<Option<T>, VerifierError> {
    let total = state_count(spec, cfg.max_states)?;
    let h = spec.hatness();
    let chunks = total.div_ceil(CHUNK);
    run_in_pool(cfg.threads, || {
        (0..chunks)
            .into_par_iter()
            .find_map_first(|ci| {
                let start = ci * CHUNK;
                let end = (start + CHUNK).min(total);
                let mut colors = vec![0u64; h.len()];
                decode(start, h, &mut colors);
                for _ in start..end {
                    match visit(&colors) {
                        Ok(None) => {}
                        Ok(Some(t)) => return Some(Ok(t)),
                        Err(e) => return Some(Err(e)),
                    }
                    increment(&mut colors, h);
                }
                None
            })
            .transpose()
    })
}

fn someone_correct(
    spec: &GameSpec,
    c: &CompiledStrategy,
    players: &[usize],
    colors: &[u64],
) -> Result<bool, VerifierError> {
    for &v in players {
        if c.is_correct(spec.graph(), colors, v)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn players(spec: &GameSpec) -> Vec<usize> {
    (0..spec.vertex_count())
        .filter(|&v| spec.guesses()[v] > 0)
        .collect()
}

pub fn exhaustive_verify(
    spec: &GameSpec,
    s: &Strategy,
) -> Result<VerificationResult, VerifierError> {
    exhaustive_verify_with(spec, s, &VerifyConfig::default())
}

/// `Winning` iff every arrangement has a correct bear, otherwise the first
/// losing arrangement in index order (vertex 0 most significant).
pub fn exhaustive_verify_with(
    spec: &GameSpec,
    s: &Strategy,
    cfg: &VerifyConfig,
) -> Result<VerificationResult, VerifierError> {
    let c = prepare(spec, s)?;
    let players = players(spec);
    let found = scan(spec, cfg, |colors| {
        Ok((!someone_correct(spec, &c, &players, colors)?).then(|| colors.to_vec()))
    })?;
    Ok(match found {
        Some(colors) => VerificationResult::Counterexample(Arrangement::new(colors)),
        None => VerificationResult::Winning,
    })
}

fn correct_mask(
    spec: &GameSpec,
    c: &CompiledStrategy,
    players: &[usize],
    colors: &[u64],
) -> Result<u64, VerifierError> {
    let mut mask = 0u64;
    for &v in players {
        if c.is_correct(spec.graph(), colors, v)? {
            mask |= 1 << v;
        }
    }
    Ok(mask)
}

fn check_mask_size(spec: &GameSpec) -> Result<(), VerifierError> {
    let n = spec.vertex_count();
    if n > 64 {
        return Err(VerifierError::StateSpaceTooLarge {
            states: format!("{n} vertices"),
            max: 64,
        });
    }
    Ok(())
}

/// True iff the strategy wins and in every arrangement the correct bears
/// form an independent set.
pub fn is_perfect(
    spec: &GameSpec,
    s: &Strategy,
    cfg: &VerifyConfig,
) -> Result<bool, VerifierError> {
    check_mask_size(spec)?;
    let c = prepare(spec, s)?;
    let players = players(spec);
    let g = spec.graph();
    let bad = scan(spec, cfg, |colors| {
        let mask = correct_mask(spec, &c, &players, colors)?;
        let adjacent = g
            .edges()
            .iter()
            .any(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1);
        Ok((mask == 0 || adjacent).then_some(()))
    })?;
    Ok(bad.is_none())
}

/// Counting identities of a perfect strategy with `m` arrangements: for every
/// independent set `I`, the number of arrangements where all of `I` guess
/// right is `m·Π_{v∈I} g_v/h_v`; inclusion–exclusion over those counts gives
/// `m`; and `Z_G(g/h) = 0`.
pub fn perfect_count_check(
    spec: &GameSpec,
    s: &Strategy,
    cfg: &VerifyConfig,
) -> Result<bool, VerifierError> {
    check_mask_size(spec)?;
    let m = state_count(spec, cfg.max_states)?;
    let c = prepare(spec, s)?;
    let players = players(spec);
    let h = spec.hatness();
    let mut hist: HashMap<u64, u64> = HashMap::new();
    let mut colors = vec![0u64; h.len()];
    for _ in 0..m {
        *hist
            .entry(correct_mask(spec, &c, &players, &colors)?)
            .or_default() += 1;
        increment(&mut colors, h);
    }
    let sets = independent_sets(spec.graph())?;
    let mut signed_total: i128 = 0;
    for &set in &sets {
        let n_i: u64 = hist
            .iter()
            .filter(|&(&mask, _)| mask & set == set)
            .map(|(_, &k)| k)
            .sum();
        let (mut lhs, mut rhs) = (n_i as u128, m as u128);
        for v in (0..h.len()).filter(|&v| set >> v & 1 == 1) {
            lhs *= h[v] as u128;
            rhs *= spec.guesses()[v] as u128;
        }
        if lhs != rhs {
            return Ok(false);
        }
        if set != 0 {
            let sign = if set.count_ones() % 2 == 1 { 1 } else { -1 };
            signed_total += sign * n_i as i128;
        }
    }
    let z: Rational = z_eval(spec.graph(), &spec.ratios())?;
    Ok(signed_total == m as i128 && z.is_zero())
}

/// Samples arrangements from a seeded generator; never returns `Winning`.
pub fn random_falsify(
    spec: &GameSpec,
    s: &Strategy,
    samples: u64,
    seed: u64,
) -> Result<VerificationResult, VerifierError> {
    let c = prepare(spec, s)?;
    let players = players(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors = vec![0u64; spec.vertex_count()];
    for _ in 0..samples {
        for (x, &h) in colors.iter_mut().zip(spec.hatness()) {
            *x = rng.gen_range(0..h);
        }
        if !someone_correct(spec, &c, &players, &colors)? {
            return Ok(VerificationResult::Counterexample(Arrangement::new(colors)));
        }
    }
    Ok(VerificationResult::Inconclusive(samples))
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// True iff no strategy profile at all wins the game, by enumerating every
/// guess function of every bear. Only feasible for tiny games.
pub fn brute_force_losing(spec: &GameSpec, cfg: &VerifyConfig) -> Result<bool, VerifierError> {
    let n = spec.vertex_count();
    let h = spec.hatness();
    let g = spec.guesses();
    let graph = spec.graph();
    let too_large = |profiles: String| VerifierError::StrategySpaceTooLarge {
        profiles,
        max: cfg.max_profiles,
    };
    // Per bear: number of visible tuples and the admissible guess sets.
    let mut tuples = Vec::with_capacity(n);
    let mut choices: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut total: u128 = 1;
    for v in 0..n {
        if h[v] > 63 {
            return Err(too_large(format!("hatness {}", h[v])));
        }
        let t: u128 = graph.neighbors(v).iter().map(|&u| h[u] as u128).product();
        let per = binomial(h[v], g[v]);
        let count = (0..t).try_fold(1u128, |acc, _| {
            acc.checked_mul(per)
                .filter(|&x| x <= cfg.max_profiles as u128)
        });
        total = count
            .and_then(|c| total.checked_mul(c))
            .filter(|&x| x <= cfg.max_profiles as u128)
            .ok_or_else(|| too_large("too many".into()))?;
        tuples.push(t as usize);
        choices.push(
            (0u64..1 << h[v])
                .filter(|m| m.count_ones() as u64 == g[v])
                .collect(),
        );
    }
    let m = state_count(spec, cfg.max_states)?;
    // Visible-tuple index of each bear in each arrangement.
    let mut arrangements = Vec::with_capacity(m as usize);
    let mut colors = vec![0u64; n];
    for _ in 0..m {
        let idx: Vec<usize> = (0..n)
            .map(|v| {
                graph
                    .neighbors(v)
                    .iter()
                    .fold(0usize, |acc, &u| acc * h[u] as usize + colors[u] as usize)
            })
            .collect();
        arrangements.push((colors.clone(), idx));
        increment(&mut colors, h);
    }
    // Profile digits: one choice index per (bear, visible tuple).
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| (0..tuples[v]).map(move |t| (v, t)))
        .collect();
    let offsets: Vec<usize> = (0..n)
        .scan(0, |acc, v| {
            let o = *acc;
            *acc += tuples[v];
            Some(o)
        })
        .collect();
    let mut digits = vec![0usize; slots.len()];
    for _ in 0..total {
        let wins = arrangements.iter().all(|(colors, idx)| {
            (0..n).any(|v| {
                let mask = choices[v][digits[offsets[v] + idx[v]]];
                mask >> colors[v] & 1 == 1
            })
        });
        if wins {
            return Ok(false);
        }
        for (d, &(v, _)) in digits.iter_mut().zip(&slots).rev() {
            *d += 1;
            if *d < choices[v].len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(true)
}
