//! Command-line front end.
//!
//! Exit status: 0 on success, 1 for bad input or unmet preconditions, 2 when
//! a computed certificate fails its own checks.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::arith::{format_rat, parse_rat, QuadNum, Rat, Surd};
use crate::cayley::{self, GenSet};
use crate::cf::{self, CfExpansion, DEFAULT_MAX_STATES};
use crate::error::{Error, Result};
use crate::lacunary::{self, LacunarySeq, StageRecord};
use crate::projective;
use crate::witness::{self, WitnessRecord};

/// Environment variable holding the number of worker threads for sweeps.
pub const THREADS_ENV: &str = "DIOPHCOLOR_THREADS";

#[derive(Debug, Parser)]
#[command(name = "diophcolor", version, about = "Exact Diophantine and Cayley-graph computations")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// A surd `(P + sqrt D) / Q`.
#[derive(Debug, Args)]
struct SurdArgs {
    /// Integer part of the numerator
    #[arg(long = "P", value_name = "P", allow_negative_numbers = true)]
    big_p: BigInt,
    /// Radicand, not a perfect square
    #[arg(long = "D", value_name = "D", allow_negative_numbers = true)]
    big_d: BigInt,
    /// Denominator
    #[arg(long = "Q", value_name = "Q", allow_negative_numbers = true)]
    big_q: BigInt,
}

impl SurdArgs {
    fn surd(&self) -> Result<Surd> {
        Surd::new(self.big_p.clone(), self.big_d.clone(), self.big_q.clone())
    }

    /// Expansion of the fractional part.
    fn expansion(&self) -> Result<CfExpansion> {
        let x = self.surd()?;
        if x.is_rational() {
            return Err(Error::RationalInput);
        }
        let frac = x.value().fract();
        cf::cf_expand(&Surd::from_quad(&frac), DEFAULT_MAX_STATES)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Periodic continued fraction of a surd in (0, 1)
    CfExpand {
        #[command(flatten)]
        x: SurdArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Convergents p_k/q_k for k = 1..=kmax
    Convergents {
        #[command(flatten)]
        x: SurdArgs,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// Look-ahead depth, interval scale and avoidance level for lambda
    LacunaryParams {
        #[arg(long)]
        lambda: String,
    },
    /// Nested-interval construction for a lacunary sequence
    LacunaryConstruct {
        #[arg(long)]
        lambda: String,
        /// Comma separated terms n_1, n_2, ...
        #[arg(long)]
        terms: String,
        /// Number of stages (default: as many as the terms allow)
        #[arg(long)]
        stages: Option<usize>,
    },
    /// Exact chromatic number of the window 0..=M
    CayleyChi {
        #[arg(long)]
        gens: String,
        #[arg(long, alias = "M")]
        window: u64,
        #[arg(long, default_value_t = cayley::DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Print the edge list instead
        #[arg(long)]
        edges: bool,
    },
    /// Rotation coloring of the window 0..=M by the angle alpha
    CayleyColor {
        #[arg(long)]
        gens: String,
        #[arg(long, alias = "M")]
        window: u64,
        #[arg(long = "N")]
        n: u64,
        /// Rational angle `a/b`; otherwise give --P --D --Q
        #[arg(long, conflicts_with_all = ["big_p", "big_d", "big_q"])]
        alpha: Option<String>,
        #[arg(long = "P", value_name = "P", allow_negative_numbers = true, requires_all = ["big_d", "big_q"])]
        big_p: Option<BigInt>,
        #[arg(long = "D", value_name = "D", allow_negative_numbers = true)]
        big_d: Option<BigInt>,
        #[arg(long = "Q", value_name = "Q", allow_negative_numbers = true)]
        big_q: Option<BigInt>,
    },
    /// Smallest m <= M with ||m alpha|| <= 1/M
    Dirichlet {
        #[command(flatten)]
        x: SurdArgs,
        #[arg(long = "M")]
        m: u64,
    },
    /// Ball centers covering the primitive vectors at scale 1/N
    PadicCover {
        /// Prime
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "N")]
        n: u64,
    },
    /// Witnesses for N = 2, 4, ..., Nmax
    WitnessSweep {
        #[command(flatten)]
        x: SurdArgs,
        /// Prime
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "Nmax")]
        nmax: u64,
    },
    /// Exhaustive minimum of n |n|_p ||n alpha|| over n <= nmax
    BruteInf {
        #[command(flatten)]
        x: SurdArgs,
        /// Prime
        #[arg(long = "p")]
        p: u64,
        #[arg(long)]
        nmax: u64,
        /// Multiply by log n
        #[arg(long)]
        weighted: bool,
    },
}

/// Runs the command line `argv` (program name first) and returns the exit
/// status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Same as [`run`], with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let text = match execute(&cli) {
        Ok(text) => text,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return if e.is_internal() { 2 } else { 1 };
        }
    };
    let written = match &cli.output {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())),
        None => out.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            1
        }
    }
}

fn threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1)
}

fn lines<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> String) -> String {
    items.into_iter().map(|x| f(x) + "\n").collect()
}

fn execute(cli: &Cli) -> Result<String> {
    let format = cli.format;
    match &cli.command {
        Command::CfExpand { x, max_states } => {
            let e = cf::cf_expand(&x.surd()?, *max_states)?;
            Ok(match format {
                Format::Json => json!({"preperiod": e.preperiod(), "period": e.period()}).to_string() + "\n",
                Format::Csv => format!(
                    "part,digits\npreperiod,{}\nperiod,{}\n",
                    join(e.preperiod(), " "),
                    join(e.period(), " ")
                ),
                Format::Text => format!("{e}\n"),
            })
        }
        Command::Convergents { x, kmax } => {
            let e = cf::cf_expand(&x.surd()?, DEFAULT_MAX_STATES)?;
            let cs = cf::convergents(&e, *kmax);
            Ok(match format {
                Format::Json => lines(&cs, |c| serde_json::to_string(c).expect("serializable")),
                Format::Csv => "k,p,q\n".to_string() + &lines(&cs, |c| format!("{},{},{}", c.k, c.p, c.q)),
                Format::Text => lines(&cs, |c| format!("{} {}/{}", c.k, c.p, c.q)),
            })
        }
        Command::LacunaryParams { lambda } => {
            let params = lacunary::choose_params(&parse_rat(lambda)?)?;
            Ok(match format {
                Format::Json => serde_json::to_string(&params).expect("serializable") + "\n",
                Format::Csv => format!("K,Delta,N\n{},{},{}\n", params.k, format_rat(&params.delta), params.n),
                Format::Text => format!("K = {}\nDelta = {}\nN = {}\n", params.k, format_rat(&params.delta), params.n),
            })
        }
        Command::LacunaryConstruct { lambda, terms, stages } => lacunary_construct(format, lambda, terms, *stages),
        Command::CayleyChi { gens, window, budget, edges } => {
            let g = cayley::window_graph(&GenSet::parse(gens)?, *window);
            if *edges {
                return Ok(g.to_edge_list());
            }
            let (chi, coloring) = cayley::chromatic_number_with_budget(&g, *budget)?;
            if !coloring.is_proper(&g) {
                return Err(Error::Inconsistency("optimal coloring is not proper".into()));
            }
            Ok(match format {
                Format::Json => json!({"gens": g.gens().gens(), "window": window, "chi": chi}).to_string() + "\n",
                Format::Csv => format!("window,chi\n{window},{chi}\n"),
                Format::Text => format!("{chi}\n"),
            })
        }
        Command::CayleyColor { gens, window, n, alpha, big_p, big_d, big_q } => {
            let angle = match (alpha, big_p, big_d, big_q) {
                (Some(a), _, _, _) => QuadNum::from_rat(&parse_rat(a)?),
                (None, Some(p), Some(d), Some(q)) => Surd::new(p.clone(), d.clone(), q.clone())?.value(),
                _ => return Err(Error::OutOfRange("give --alpha or --P --D --Q".into())),
            };
            let c = cayley::rotation_coloring(&GenSet::parse(gens)?, &angle, *n, *window)?;
            Ok(match format {
                Format::Json => lines(c.colors().iter().enumerate(), |(v, col)| {
                    json!({"vertex": v, "color": col}).to_string()
                }),
                Format::Csv => "vertex,color\n".to_string()
                    + &lines(c.colors().iter().enumerate(), |(v, col)| format!("{v},{col}")),
                Format::Text => c.to_text(),
            })
        }
        Command::Dirichlet { x, m } => {
            let (k, v) = cayley::dirichlet_witness(&x.surd()?, *m)?;
            let value = v.value();
            Ok(match format {
                Format::Json => json!({"m": k, "distance": value.to_string()}).to_string() + "\n",
                Format::Csv => format!("m,distance\n{k},{value}\n"),
                Format::Text => format!("{k} {value}\n"),
            })
        }
        Command::PadicCover { p, n } => {
            let cover = projective::build_cover(*p, *n)?;
            Ok(match format {
                Format::Json => serde_json::to_string(&cover).expect("serializable") + "\n",
                Format::Csv => "n1,n2\n".to_string()
                    + &lines(&cover.centers, |c| format!("{},{}", c.n1(), c.n2())),
                Format::Text => cover.to_text(),
            })
        }
        Command::WitnessSweep { x, p, nmax } => {
            let e = x.expansion()?;
            let cert = witness::liminf_certificate_with_threads(&e, *p, *nmax, threads())?;
            Ok(match format {
                Format::Json => lines(&cert.records, WitnessRecord::to_json) + &cert.summary_json() + "\n",
                Format::Csv => format!("{}\n", WitnessRecord::CSV_HEADER) + &lines(&cert.records, WitnessRecord::to_csv),
                Format::Text => {
                    let mut s = lines(&cert.records, |r| {
                        format!("N={} i={} nN={} productLog<={}", r.n, r.i, r.n_n, r.product_log.hi_decimal(12))
                    });
                    s += &format!(
                        "b={} C={} bound>={} holds={}\n",
                        cert.b,
                        cert.c,
                        cert.bound.lo_decimal(12),
                        cert.holds()
                    );
                    s
                }
            })
        }
        Command::BruteInf { x, p, nmax, weighted } => {
            let e = x.expansion()?;
            let r = witness::brute_force_inf_with_threads(&e, *p, *nmax, *weighted, threads())?;
            let (lo, hi) = (r.value.lo_decimal(30), r.value.hi_decimal(30));
            Ok(match format {
                Format::Json => json!({"n": r.n, "valueLo": lo, "valueHi": hi}).to_string() + "\n",
                Format::Csv => format!("n,valueLo,valueHi\n{},{lo},{hi}\n", r.n),
                Format::Text => format!("{} [{lo}, {hi}]\n", r.n),
            })
        }
    }
}

fn lacunary_construct(format: Format, lambda: &str, terms: &str, stages: Option<usize>) -> Result<String> {
    let lambda: Rat = parse_rat(lambda)?;
    let terms = terms
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::OutOfRange(format!("bad term '{t}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    let seq = lacunary::densify(&LacunarySeq::new(terms, lambda.clone())?);
    let params = lacunary::choose_params(&lambda)?;
    let stages = stages.unwrap_or((seq.len() - 1) / params.k);
    let c = lacunary::construct_full(&seq, &params, stages)?;
    let mid = c.interval.midpoint();
    if !lacunary::verify_avoidance(&mid, &seq, c.covered, &params.n) {
        return Err(Error::Inconsistency("midpoint fails the avoidance check".into()));
    }
    Ok(match format {
        Format::Json => {
            lines(&c.trace, StageRecord::to_json)
                + &json!({
                    "terms": seq.terms().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    "params": params,
                    "interval": c.interval,
                    "midpoint": format_rat(&mid),
                    "covered": c.covered,
                })
                .to_string()
                + "\n"
        }
        Format::Csv => format!("{}\n", StageRecord::CSV_HEADER) + &lines(&c.trace, |r| r.to_csv()),
        Format::Text => format!(
            "terms = {}\nK = {} Delta = {} N = {}\ninterval = {}\nmidpoint = {}\ncovered = {}\n",
            join(seq.terms(), ","),
            params.k,
            format_rat(&params.delta),
            params.n,
            c.interval,
            format_rat(&mid),
            c.covered
        ),
    })
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}
