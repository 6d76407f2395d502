use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use heun_ghf::two_state::Sign;
use heun_ghf::{CheParams, Complex64};

use crate::complex_arg::{parse_complex, GRAMMAR};

#[derive(Debug, Parser)]
#[command(
    name = "heun-ghf",
    version,
    about = "Generalized hypergeometric solutions of the confluent Heun equation",
    long_about = "Generalized hypergeometric solutions of the confluent Heun equation\n\n    \
                  u'' + (gamma/z + delta/(z-1) + epsilon) u' + (alpha z - q)/(z(z-1)) u = 0\n\n\
                  Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 unsupported or exceptional case.",
    after_help = GRAMMAR
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Accessory polynomial, its roots and the auxiliary parameters of each root.
    #[command(after_help = GRAMMAR)]
    Spectrum(EquationArgs),
    /// Evaluate one solution on a straight-line grid and write CSV.
    #[command(after_help = GRAMMAR)]
    Eval(EvalArgs),
    /// Check every root against the Frobenius recurrence and the ODE.
    #[command(after_help = GRAMMAR)]
    Verify(VerifyArgs),
    /// Driven two-state system with a Lambert-W level crossing; writes CSV.
    Demo(DemoArgs),
}

#[derive(Debug, Clone, Args)]
pub struct EquationArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub gamma: Complex64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub delta: Complex64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub epsilon: Complex64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub alpha: Complex64,
}

impl EquationArgs {
    pub fn params(&self) -> CheParams {
        CheParams::new(self.gamma, self.delta, self.epsilon, self.alpha)
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub equation: EquationArgs,
    /// Check this q instead of the spectrum, e.g. a perturbed root.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub q_override: Option<Complex64>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Solution descriptor as written by `spectrum` or `verify`.
    #[arg(long, conflicts_with_all = ["gamma", "delta", "epsilon", "alpha", "root", "q"])]
    pub descriptor: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub gamma: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub delta: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub epsilon: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub alpha: Option<Complex64>,
    /// Index among the valid roots, in spectrum order.
    #[arg(long, conflicts_with = "q")]
    pub root: Option<usize>,
    /// Accessory parameter; need not lie in the spectrum.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub q: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "0.1")]
    pub start: Complex64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "0.9")]
    pub stop: Complex64,
    #[arg(long, default_value_t = 41, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
}

impl EvalArgs {
    /// Inline equation, if all four parameters were given.
    pub fn params(&self) -> Option<CheParams> {
        Some(CheParams::new(
            self.gamma?,
            self.delta?,
            self.epsilon?,
            self.alpha?,
        ))
    }

    pub fn grid(&self) -> Vec<Complex64> {
        let n = self.count as usize;
        if n == 1 {
            return vec![self.start];
        }
        (0..n)
            .map(|k| self.start + (self.stop - self.start) * (k as f64 / (n - 1) as f64))
            .collect()
    }
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
        "-" | "minus" | "-1" => Ok(Sign::Minus),
        _ => Err(format!("`{s}` is not a sign; use + or -")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct DemoArgs {
    #[arg(long, default_value_t = 1.0)]
    pub u0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
    pub delta0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub delta1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    /// Root sign in α1.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign, default_value = "+")]
    pub sign1: Sign,
    /// Root sign in α0.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign, default_value = "+")]
    pub sign0: Sign,
    /// Grid start, in units of τ.
    #[arg(long, allow_hyphen_values = true, default_value_t = -10.0)]
    pub t_start: f64,
    /// Grid end, in units of τ.
    #[arg(long, allow_hyphen_values = true, default_value_t = 10.0)]
    pub t_stop: f64,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(2..))]
    pub count: u64,
    /// Superpose two fundamental solutions so that a1 = 1, a2 = 0 at this
    /// absolute time.
    #[arg(long, allow_hyphen_values = true)]
    pub ground_at: Option<f64>,
}

impl DemoArgs {
    /// Absolute sample times.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.count as usize;
        (0..n)
            .map(|k| {
                self.tau * (self.t_start + (self.t_stop - self.t_start) * k as f64 / (n - 1) as f64)
            })
            .collect()
    }
}
