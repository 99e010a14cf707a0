//! Command-line front end.
//!
//! Exit codes: 0 success or winning, 1 losing or in-region, 2 usage or input
//! error, 3 inconclusive or over a configured limit.

use std::io::{Read, Write};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use crate::graph::{is_chordal, make_clique, make_cycle, make_path, make_star, Graph};
use crate::mu::{approximate_mu, MuResult};
use crate::numerics::{format_decimal, format_rational, parse_rational, Rational};
use crate::polynomial::univariate_polynomial;
use crate::strategy::{deserialize, game_of, serialize, GameSpec, Strategy};
use crate::synthesis::{
    chordal_synthesize, decide_region, fibonacci_game, p3_strategy, path_game, SynthesisResult,
};
use crate::verifier::{
    exhaustive_verify_with, random_falsify, VerificationResult, VerifierError, VerifyConfig,
};

#[derive(Parser, Debug)]
#[command(name = "hatguess", about = "Hat guessing games on graphs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    Path,
    Cycle,
    Clique,
    Star,
}

#[derive(clap::Args, Debug)]
struct RatioArgs {
    /// Uniform guess ratio `p/q`.
    #[arg(long, conflicts_with = "ratios", required_unless_present = "ratios")]
    ratio: Option<String>,
    /// File with one `v p/q` line per vertex.
    #[arg(long)]
    ratios: Option<String>,
}

#[derive(clap::Args, Debug)]
struct Limits {
    /// Largest number of arrangements to enumerate.
    #[arg(long, default_value_t = VerifyConfig::default().max_states)]
    max_states: u64,
    /// Worker threads for verification.
    #[arg(long)]
    threads: Option<usize>,
}

impl Limits {
    fn config(&self) -> VerifyConfig {
        VerifyConfig {
            max_states: self.max_states,
            threads: self.threads,
            ..VerifyConfig::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a graph from a standard family (`star n` has n leaves).
    Gen { family: Family, n: usize },
    /// Coefficients of the signed independence polynomial, constant first.
    Poly { graph: Option<String> },
    /// Decide whether a ratio vector admits a winning game on a chordal graph.
    Decide {
        graph: Option<String>,
        #[command(flatten)]
        ratio: RatioArgs,
    },
    /// Synthesize a winning strategy on a chordal graph.
    Synth {
        graph: Option<String>,
        #[command(flatten)]
        ratio: RatioArgs,
        /// Write the strategy here instead of stdout.
        #[arg(short = 'o')]
        output: Option<String>,
    },
    /// Check a strategy against every arrangement, or a random sample.
    Verify {
        graph: String,
        strategy: String,
        #[command(flatten)]
        limits: Limits,
        /// Sample this many random arrangements instead.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fractional hat chromatic number of a chordal graph.
    Mu {
        graph: Option<String>,
        /// Precision in bits.
        #[arg(short = 'k', default_value_t = 20)]
        bits: u32,
        /// Also print decimal approximations with this many digits.
        #[arg(long)]
        decimal: Option<usize>,
    },
    /// Fibonacci game on the three-vertex path, with strategy and check.
    P3 {
        #[arg(short = 'i')]
        index: usize,
        #[command(flatten)]
        limits: Limits,
    },
    /// Path game built from a single edge, with strategy and check.
    Pathgame {
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        limits: Limits,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_graph(&mut self, path: Option<&str>) -> Result<Graph> {
        let text = match path {
            None | Some("-") => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).context("reading stdin")?;
                s
            }
            Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {p}"))?,
        };
        Ok(Graph::parse(&text)?)
    }
}

fn parse_ratio(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| anyhow!("invalid rational {s:?}"))
}

fn read_ratios(args: &RatioArgs, n: usize) -> Result<Vec<Rational>> {
    if let Some(r) = &args.ratio {
        return Ok(vec![parse_ratio(r)?; n]);
    }
    let path = args
        .ratios
        .as_deref()
        .expect("clap enforces one of the two");
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let mut out: Vec<Option<Rational>> = vec![None; n];
    for (i, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let (v, r) = line
            .split_once(' ')
            .ok_or_else(|| anyhow!("{path}:{}: expected `v p/q`", i + 1))?;
        let v: usize = v
            .parse()
            .map_err(|_| anyhow!("{path}:{}: bad vertex {v:?}", i + 1))?;
        if v >= n || out[v].is_some() {
            bail!("{path}:{}: vertex {v} out of range or repeated", i + 1);
        }
        out[v] = Some(parse_ratio(r)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| anyhow!("{path}: no ratio for vertex {v}")))
        .collect()
}

fn join_u64(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// Verifies and prints one summary line; returns the exit code.
fn summary(out: &mut dyn Write, spec: &GameSpec, s: &Strategy, cfg: &VerifyConfig) -> Result<i32> {
    match exhaustive_verify_with(spec, s, cfg) {
        Ok(VerificationResult::Winning) => {
            writeln!(out, "winning {}", spec.arrangement_count().unwrap_or(0))?;
            Ok(0)
        }
        Ok(VerificationResult::Counterexample(a)) => {
            writeln!(out, "counterexample {a}")?;
            Ok(1)
        }
        Ok(VerificationResult::Inconclusive(k)) => {
            writeln!(out, "inconclusive {k}")?;
            Ok(3)
        }
        Err(e @ VerifierError::StateSpaceTooLarge { .. }) => {
            writeln!(out, "unverified: {e}")?;
            Ok(3)
        }
        Err(e) => Err(e.into()),
    }
}

fn execute(cmd: Command, io: &mut Io<'_>) -> Result<i32> {
    match cmd {
        Command::Gen { family, n } => {
            let g = match family {
                Family::Path => make_path(n),
                Family::Cycle => make_cycle(n),
                Family::Clique => make_clique(n),
                Family::Star => make_star(n),
            }?;
            write!(io.out, "{}", g.to_text())?;
            Ok(0)
        }
        Command::Poly { graph } => {
            let g = io.read_graph(graph.as_deref())?;
            writeln!(io.out, "{}", univariate_polynomial(&g)?)?;
            Ok(0)
        }
        Command::Decide { graph, ratio } => {
            let g = io.read_graph(graph.as_deref())?;
            let r = read_ratios(&ratio, g.vertex_count())?;
            if decide_region(&g, &r)? {
                writeln!(io.out, "winning")?;
                Ok(0)
            } else {
                writeln!(io.out, "in-region")?;
                Ok(1)
            }
        }
        Command::Synth {
            graph,
            ratio,
            output,
        } => {
            let g = io.read_graph(graph.as_deref())?;
            let r = read_ratios(&ratio, g.vertex_count())?;
            match chordal_synthesize(&g, &r)? {
                SynthesisResult::InRegion => {
                    writeln!(io.out, "in-region")?;
                    Ok(1)
                }
                SynthesisResult::Winning {
                    hatness,
                    guesses,
                    strategy,
                } => {
                    writeln!(io.out, "h {}", join_u64(&hatness))?;
                    writeln!(io.out, "g {}", join_u64(&guesses))?;
                    let text = serialize(&strategy);
                    match output {
                        Some(p) => {
                            std::fs::write(&p, text).with_context(|| format!("writing {p}"))?
                        }
                        None => write!(io.out, "{text}")?,
                    }
                    Ok(0)
                }
            }
        }
        Command::Verify {
            graph,
            strategy,
            limits,
            samples,
            seed,
        } => {
            let g = io.read_graph(Some(&graph))?;
            let text = std::fs::read_to_string(&strategy)
                .with_context(|| format!("reading {strategy}"))?;
            let s = deserialize(&text)?;
            let spec = game_of(&s, &g)?;
            match samples {
                Some(k) => match random_falsify(&spec, &s, k, seed)? {
                    VerificationResult::Counterexample(a) => {
                        writeln!(io.out, "counterexample {a}")?;
                        Ok(1)
                    }
                    _ => {
                        writeln!(io.out, "inconclusive {k}")?;
                        Ok(3)
                    }
                },
                None => summary(io.out, &spec, &s, &limits.config()),
            }
        }
        Command::Mu {
            graph,
            bits,
            decimal,
        } => {
            let g = io.read_graph(graph.as_deref())?;
            if !is_chordal(&g) {
                bail!("graph is not chordal");
            }
            match approximate_mu(&g, bits)? {
                MuResult::Exact(q) => writeln!(io.out, "exact {q}")?,
                MuResult::Approx { t, lo, hi } => {
                    let show = |x: &Rational| match decimal {
                        Some(d) => format_decimal(x, d),
                        None => format_rational(x),
                    };
                    writeln!(io.out, "approx {} {} {}", show(&t), show(&lo), show(&hi))?;
                }
            }
            Ok(0)
        }
        Command::P3 { index, limits } => {
            if index == 0 {
                bail!("index starts at 1");
            }
            let (h, g) = fibonacci_game(index);
            writeln!(io.out, "h={h} g={g}")?;
            let (Some(h), Some(g)) = (h.to_u64(), g.to_u64()) else {
                writeln!(io.out, "unverified: hatness does not fit in 64 bits")?;
                return Ok(3);
            };
            let s = p3_strategy(h, g)?;
            write!(io.out, "{}", serialize(&s))?;
            let spec = game_of(&s, &make_path(3)?)?;
            summary(io.out, &spec, &s, &limits.config())
        }
        Command::Pathgame {
            epsilon,
            steps,
            limits,
        } => {
            let game = path_game(&parse_ratio(&epsilon)?, steps)?;
            let spec = game_of(&game.strategy, &game.graph)?;
            writeln!(io.out, "h {}", join_u64(spec.hatness()))?;
            writeln!(io.out, "g {}", join_u64(spec.guesses()))?;
            write!(io.out, "{}", serialize(&game.strategy))?;
            summary(io.out, &spec, &game.strategy, &limits.config())
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run(
    argv: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                2
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
            return code;
        }
    };
    let mut io = Io { stdin, out: stdout };
    match execute(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}
