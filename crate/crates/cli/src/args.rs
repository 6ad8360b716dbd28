use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kronrec::{BaseStrategy, ExponentConvention};

#[derive(Debug, Parser)]
#[command(
    name = "kronrec",
    version,
    about = "Closed-form arithmetic terms for C-recursive sequences via quotient rings and Kronecker substitution"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Emit line-delimited JSON records instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Decimal digits for root values and errors.
    #[arg(long, global = true, default_value_t = kronrec::roots::DEFAULT_PRECISION,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub precision: u32,

    /// Cap on the decimal digits of scan moduli.
    #[arg(long, global = true, default_value_t = kronrec::roots::DEFAULT_DIGIT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1000..))]
    pub budget: u64,

    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the Pell closed form against the recurrence.
    Pell {
        /// Index or inclusive range, e.g. `5` or `1..16`.
        #[arg(long)]
        n: IndexRange,
    },
    /// Verify the central binomial closed form against C(2n, n).
    Cbc {
        #[arg(long)]
        n: IndexRange,
    },
    /// Synthesize and verify the closed form of a recurrence.
    ///
    /// `--coeffs 2,1` means A(n) = 2 A(n-1) + 1 A(n-2): coefficients are given
    /// high-to-low in the order they appear in the recurrence.
    Seq {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coeffs: Vec<i64>,
        /// Initial values A(0), ..., A(d-1); all ones when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        initials: Option<Vec<i64>>,
        #[arg(long)]
        n: IndexRange,
        #[arg(long, value_enum, default_value_t = StrategyArg::Apriori)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value_t = ExponentArg::N)]
        exponent: ExponentArg,
    },
    /// Root-convergence scan of the modular-exponentiation quotient.
    Root {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k_min: u64,
        #[arg(long, default_value_t = 10)]
        k_max: u64,
        /// Second-reduction offsets c >= -1 for the reduced variant.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Vec<i64>,
    },
    /// Check the floor-root conjecture for every valid (a, n) with a <= a_max.
    Conjecture {
        #[arg(long)]
        a_max: u64,
    },
    /// Time closed-form evaluation against the reference computations.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 5)]
        reps: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Oracle,
    Apriori,
}

impl From<StrategyArg> for BaseStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Oracle => BaseStrategy::OracleMinimal,
            StrategyArg::Apriori => BaseStrategy::AprioriBound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExponentArg {
    #[value(name = "n")]
    N,
    #[value(name = "n-1")]
    NMinusOne,
}

impl From<ExponentArg> for ExponentConvention {
    fn from(e: ExponentArg) -> Self {
        match e {
            ExponentArg::N => ExponentConvention::N,
            ExponentArg::NMinusOne => ExponentConvention::NMinusOne,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Pell,
    Cbc,
    Substitution,
}

/// Inclusive index range `lo..=hi`, written `N`, `LO..HI` or `LO..=HI`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub lo: u64,
    pub hi: u64,
}

impl IndexRange {
    pub fn iter(self) -> std::ops::RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("invalid index {t:?}: {e}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(IndexRange { lo, hi })
    }
}
