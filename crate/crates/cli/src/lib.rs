//! Command-line front end for `gft-core`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

pub mod render;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gft_core::{
    best_of_demo, er_buyer, er_seller, evaluate, hard_buyer, hard_seller, parse_distribution,
    parse_rational, sweep, to_decimal, to_exact_string, verify_range, BuyerPricer, ClosedFormSet,
    PriceQuote, Rational, RationalDistribution, SellerPricer, Source,
};
use num_traits::Signed;

use crate::render::{render_best_of, render_report, render_sweep_csv, Format, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gft",
    version,
    about = "Exact gains from trade of posted-price bilateral trade mechanisms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every mechanism on one (seller, buyer) instance.
    Report(ReportArgs),
    /// Tabulate the hard-family ratio over a range of H as CSV.
    Sweep(SweepArgs),
    /// Check the closed forms against the brute-force oracle.
    Verify(VerifyArgs),
    /// Best-of versus second-best on the equal-revenue pair with H = 2.
    Bestof,
    /// Optimal take-it-or-leave-it offer for one value.
    Quote(QuoteArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Er,
    Hard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Seller,
    Buyer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Closed,
    Oracle,
}

impl From<SourceArg> for Source {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::Closed => Source::ClosedForm,
            SourceArg::Oracle => Source::Oracle,
        }
    }
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Built-in distribution family.
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Scale parameter H of the family.
    #[arg(long = "h")]
    pub h: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Seller value distribution file (`<value> <mass>` per line).
    #[arg(long)]
    pub seller_dist: Option<PathBuf>,
    /// Buyer value distribution file.
    #[arg(long)]
    pub buyer_dist: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Fractional digits of decimal output.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(0..=50))]
    pub digits: u32,
    /// Also print exact `p/q` values.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 100)]
    pub h_min: u64,
    #[arg(long, default_value_t = 4000)]
    pub h_max: u64,
    #[arg(long, default_value_t = 10)]
    pub step: u64,
    #[arg(long, value_enum, default_value_t = SourceArg::Closed)]
    pub source: SourceArg,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(0..=50))]
    pub digits: u32,
    /// Append `*_exact` rational columns.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    pub h_min: u64,
    #[arg(long, default_value_t = 128)]
    pub h_max: u64,
}

#[derive(Debug, Args)]
pub struct QuoteArgs {
    #[arg(long, value_enum)]
    pub side: Side,
    /// The offering agent's own value, an integer or `p/q`.
    #[arg(long)]
    pub value: String,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Counterparty distribution file.
    #[arg(long)]
    pub dist: Option<PathBuf>,
}

/// An error that maps to a specific exit code.
#[derive(Debug)]
struct Exit(i32, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    execute(cli.command, out, err)
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match command {
        Command::Report(args) => cmd_report(&args, out),
        Command::Sweep(args) => cmd_sweep(&args, out),
        Command::Verify(args) => cmd_verify(&args, &ClosedFormSet::default(), out),
        Command::Bestof => cmd_bestof(out),
        Command::Quote(args) => cmd_quote(&args, out),
    };
    finish(result, err)
}

/// `verify` with caller-supplied closed forms, mapped to an exit code.
pub fn execute_verify_with(
    args: &VerifyArgs,
    forms: &ClosedFormSet<Rational>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    finish(cmd_verify(args, forms, out), err)
}

fn finish(result: anyhow::Result<i32>, err: &mut dyn Write) -> i32 {
    match result {
        Ok(code) => code,
        Err(e) => {
            let code = e.downcast_ref::<Exit>().map_or(EXIT_USAGE, |x| x.0);
            let _ = writeln!(err, "error: {e:#}");
            code
        }
    }
}

fn read_distribution(path: &Path) -> anyhow::Result<RationalDistribution> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_distribution(&text).with_context(|| format!("in {}", path.display()))
}

fn family_pair(
    family: &FamilyArgs,
) -> anyhow::Result<Option<(RationalDistribution, RationalDistribution)>> {
    match (family.family, family.h) {
        (None, None) => Ok(None),
        (Some(_), None) => bail!("--family requires --h"),
        (None, Some(_)) => bail!("--h requires --family"),
        (Some(Family::Er), Some(h)) => Ok(Some((er_seller(h)?, er_buyer(h)?))),
        (Some(Family::Hard), Some(h)) => Ok(Some((hard_seller(h)?, hard_buyer(h)?))),
    }
}

pub fn cmd_report(args: &ReportArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let from_family = family_pair(&args.family)?;
    let (seller, buyer) = match (from_family, &args.seller_dist, &args.buyer_dist) {
        (Some(pair), None, None) => pair,
        (None, Some(s), Some(b)) => (read_distribution(s)?, read_distribution(b)?),
        (Some(_), _, _) => {
            bail!("give either --family/--h or --seller-dist/--buyer-dist, not both")
        }
        _ => bail!("need --family with --h, or both --seller-dist and --buyer-dist"),
    };
    let report = evaluate(&seller, &buyer);
    let fmt = OutputFormat {
        kind: args.format,
        digits: args.digits as usize,
        exact: args.exact,
    };
    out.write_all(render_report(&report, fmt).as_bytes())?;
    Ok(EXIT_OK)
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let rows = sweep::<Rational>(args.h_min, args.h_max, args.step, args.source.into())?;
    let csv = render_sweep_csv(&rows, args.digits as usize, args.exact);
    match &args.out {
        Some(path) => {
            fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?
        }
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(EXIT_OK)
}

/// Runs the oracle comparison with the given closed forms.
pub fn cmd_verify(
    args: &VerifyArgs,
    forms: &ClosedFormSet<Rational>,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let report = verify_range(args.h_min, args.h_max, forms)?;
    match &report.first_failure {
        None => {
            writeln!(
                out,
                "ok: H = {}..={}, {} exact comparisons (OPT_ER, OPT_hard, BO_hard, SO_hard, BO=SO)",
                report.h_min, report.h_max, report.checks
            )?;
            Ok(EXIT_OK)
        }
        Some(m) => Err(Exit(
            EXIT_VERIFY_FAILED,
            format!(
                "verification failed at H = {}: {} closed form {} != oracle {}",
                m.h,
                m.quantity,
                to_exact_string(&m.closed_form),
                to_exact_string(&m.oracle)
            ),
        )
        .into()),
    }
}

pub fn cmd_bestof(out: &mut dyn Write) -> anyhow::Result<i32> {
    let report = best_of_demo::<Rational>()?;
    let three_quarters = Rational::new(3.into(), 4.into());
    if report.second_best != report.opt || report.best_of_fraction != three_quarters {
        return Err(Exit(
            EXIT_VERIFY_FAILED,
            format!(
                "unexpected best-of result: second_best {} opt {} fraction {}",
                to_exact_string(&report.second_best),
                to_exact_string(&report.opt),
                to_exact_string(&report.best_of_fraction)
            ),
        )
        .into());
    }
    out.write_all(render_best_of(&report).as_bytes())?;
    Ok(EXIT_OK)
}

pub fn cmd_quote(args: &QuoteArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let value = parse_rational(&args.value).context("--value")?;
    if value.is_negative() {
        bail!("--value must be nonnegative");
    }
    let counterparty = match (family_pair(&args.family)?, &args.dist) {
        (Some((seller, buyer)), None) => match args.side {
            Side::Seller => buyer,
            Side::Buyer => seller,
        },
        (None, Some(path)) => read_distribution(path)?,
        (Some(_), Some(_)) => bail!("give either --family/--h or --dist, not both"),
        (None, None) => bail!("need --family with --h, or --dist"),
    };
    let (offer, payoff_name) = match args.side {
        Side::Seller => (
            SellerPricer::new(&counterparty).offer(&value),
            "expected_profit",
        ),
        Side::Buyer => (
            BuyerPricer::new(&counterparty).offer(&value),
            "expected_utility",
        ),
    };
    let price = match &offer.quote {
        PriceQuote::Finite(p) => to_exact_string(p),
        PriceQuote::NeverTrade => "never (no price yields positive profit)".to_owned(),
    };
    writeln!(out, "price = {price}")?;
    writeln!(
        out,
        "{payoff_name} = {} ({})",
        to_exact_string(&offer.expected_payoff),
        to_decimal(&offer.expected_payoff, 12)
    )?;
    Ok(EXIT_OK)
}
