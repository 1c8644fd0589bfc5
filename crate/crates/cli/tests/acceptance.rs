//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p gft-cli --test acceptance`.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use gft_core::{
    buyer_optimal_price, closed_bo_hard, closed_opt_hard, closed_ratio, evaluate, gft_fixed_price,
    hard_buyer, hard_seller, ratio_lower_bound, ratio_upper_bound, seller_optimal_price,
    to_decimal, verify_range, ClosedFormSet, HarmonicTable, PriceQuote, Rational,
    RationalDistribution, Scalar,
};
use num_traits::One;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn int(n: u64) -> Rational {
    Rational::from_u64_lossy(n)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Random-offerer fraction below 0.495 at H = 1000, closed form and full oracle.
fn ac1_counterexample() -> Outcome {
    let h = 1000;
    let table = HarmonicTable::<Rational>::up_to(h);
    let closed_opt = closed_opt_hard(h, &table).map_err(err)?;
    let closed_bo = closed_bo_hard(h, &table).map_err(err)?;
    // (BO + SO) / (2 OPT) with SO = BO
    let closed = (&closed_bo + &closed_bo) / (int(2) * &closed_opt);
    ensure(closed < q(495, 1000), || {
        format!("closed-form ratio {} >= 0.495", to_decimal(&closed, 12))
    })?;

    let seller: RationalDistribution = hard_seller(h).map_err(err)?;
    let buyer: RationalDistribution = hard_buyer(h).map_err(err)?;
    let report = evaluate(&seller, &buyer);
    ensure(report.opt == closed_opt, || {
        "oracle OPT differs from closed form".into()
    })?;
    ensure(report.bo == closed_bo, || {
        "oracle BO differs from closed form".into()
    })?;
    ensure(report.so == closed_bo, || {
        "oracle SO differs from closed form".into()
    })?;
    ensure(report.ratio.as_ref() == Some(&closed), || {
        "oracle ratio differs from closed form".into()
    })?;
    Ok(format!(
        "H=1000 ratio = {} < 0.495; oracle reproduces OPT, BO, SO exactly",
        to_decimal(&closed, 12)
    ))
}

/// Exact oracle/closed-form equality on H = 4..=128.
fn ac2_oracle_equivalence() -> Outcome {
    let report = verify_range::<Rational>(4, 128, &ClosedFormSet::default()).map_err(err)?;
    match report.first_failure {
        None => Ok(format!(
            "{} exact comparisons on H = 4..=128",
            report.checks
        )),
        Some(m) => Err(format!("H={} {} mismatch", m.h, m.quantity)),
    }
}

/// Hand-checkable instance H = 4.
fn ac3_hand_instance() -> Outcome {
    let seller: RationalDistribution = hard_seller(4).map_err(err)?;
    let buyer: RationalDistribution = hard_buyer(4).map_err(err)?;
    let report = evaluate(&seller, &buyer);
    ensure(report.opt == q(2, 3), || format!("OPT = {}", report.opt))?;
    ensure(report.bo == q(17, 36), || format!("BO = {}", report.bo))?;
    ensure(report.so == q(17, 36), || format!("SO = {}", report.so))?;
    ensure(report.ratio == Some(q(17, 24)), || {
        format!("ratio = {:?}", report.ratio)
    })?;
    let table = HarmonicTable::<Rational>::up_to(4);
    ensure(closed_ratio(4, &table).map_err(err)? == q(17, 24), || {
        "closed ratio != 17/24".into()
    })?;
    Ok("OPT = 2/3, BO = SO = 17/36, ratio = 17/24".into())
}

/// Best-of at 3/4 of second-best on the equal-revenue pair, H = 2.
fn ac4_best_of() -> Outcome {
    let r = gft_core::best_of_demo::<Rational>().map_err(err)?;
    ensure(r.opt.is_one(), || format!("OPT = {}", r.opt))?;
    let seller: RationalDistribution = gft_core::er_seller(2).map_err(err)?;
    let buyer: RationalDistribution = gft_core::er_buyer(2).map_err(err)?;
    ensure(gft_fixed_price(&int(1), &seller, &buyer).is_one(), || {
        "fixed price 1 GFT != 1".into()
    })?;
    ensure(r.second_best.is_one(), || {
        format!("second best = {}", r.second_best)
    })?;
    ensure(r.so == q(3, 4) && r.bo == q(3, 4), || {
        format!("SO = {}, BO = {}", r.so, r.bo)
    })?;
    ensure(r.best_of_fraction == q(3, 4), || {
        format!("fraction = {}", r.best_of_fraction)
    })?;
    Ok("OPT = fixed-price(1) = 1, SO = BO = 3/4, best-of fraction = 3/4".into())
}

/// Upper bound below 1/2 on 121..=4000, sandwich on 4..=4000, above half at H = 4.
fn ac5_bounds() -> Outcome {
    let table = HarmonicTable::<Rational>::up_to(4000);
    let half = q(1, 2);
    for h in 4..=4000u64 {
        let ratio = closed_ratio(h, &table).map_err(err)?;
        let upper = ratio_upper_bound(h, &table).map_err(err)?;
        let lower = ratio_lower_bound(h, &table).map_err(err)?;
        ensure(lower <= ratio && ratio <= upper, || {
            format!("sandwich fails at H={h}")
        })?;
        if h >= 121 {
            ensure(upper < half, || format!("upper bound >= 1/2 at H={h}"))?;
        }
    }
    let at_four = closed_ratio(4, &table).map_err(err)?;
    ensure(at_four == q(17, 24) && at_four >= half, || {
        format!("ratio(4) = {at_four}")
    })?;
    Ok("sandwich holds on 4..=4000, upper < 1/2 on 121..=4000, ratio(4) = 17/24".into())
}

/// Offer tables of the hard family at H in {4, 10, 1000}.
fn ac6_offer_table() -> Outcome {
    for h in [4u64, 10, 1000] {
        let seller: RationalDistribution = hard_seller(h).map_err(err)?;
        let buyer: RationalDistribution = hard_buyer(h).map_err(err)?;
        let seller_pricer = gft_core::SellerPricer::new(&buyer);
        let buyer_pricer = gft_core::BuyerPricer::new(&seller);
        for s in 0..h {
            let want = if s <= h - 3 { h - 1 } else { h };
            let got = seller_pricer.offer(&int(s)).quote;
            ensure(got == PriceQuote::Finite(int(want)), || {
                format!("H={h} seller s={s}: {got:?}")
            })?;
        }
        for b in 1..=h {
            let want = if b >= 3 { 1 } else { 0 };
            let got = buyer_pricer.offer(&int(b)).quote;
            ensure(got == PriceQuote::Finite(int(want)), || {
                format!("H={h} buyer b={b}: {got:?}")
            })?;
        }
        // the one-shot entry points agree with the cached pricers
        ensure(
            seller_optimal_price(&int(0), &buyer) == PriceQuote::Finite(int(h - 1))
                && buyer_optimal_price(&int(h), &seller) == PriceQuote::Finite(int(1)),
            || format!("H={h}: one-shot quotes disagree"),
        )?;
    }
    Ok("seller: H-1 on 0..=H-3, H on {H-2, H-1}; buyer: 1 on 3..=H, 0 on {1, 2}".into())
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut errs = Vec::new();
    let mut argv = vec!["gft"];
    argv.extend_from_slice(args);
    let code = gft_cli::run(argv, &mut out, &mut errs);
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&errs)));
    }
    String::from_utf8(out).map_err(err)
}

/// Sweep data over H = 100..=4000 step 10.
fn ac7_figure_sweep() -> Outcome {
    let args = ["sweep", "--h-min", "100", "--h-max", "4000", "--step", "10"];
    let first = run_cli(&args)?;
    let second = run_cli(&args)?;
    ensure(first == second, || {
        "sweep output differs between runs".into()
    })?;

    let mut lines = first.lines();
    ensure(
        lines.next() == Some("H,opt,bo,so,ratio,ratio_lower,ratio_upper"),
        || "unexpected CSV header".into(),
    )?;
    let mut rows = Vec::new();
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        let h: u64 = cols[0].parse().map_err(err)?;
        let ratio: f64 = cols[4].parse().map_err(err)?;
        rows.push((h, ratio));
    }
    ensure(rows.len() == 391, || {
        format!("{} rows, expected 391", rows.len())
    })?;
    for &(h, ratio) in &rows {
        if h > 120 {
            ensure(ratio < 0.5, || format!("ratio {ratio} >= 0.5 at H={h}"))?;
        }
    }
    let tail: Vec<f64> = [2000u64, 3000, 4000]
        .iter()
        .map(|t| {
            rows.iter()
                .find(|(h, _)| h == t)
                .map(|r| r.1)
                .unwrap_or(f64::NAN)
        })
        .collect();
    ensure(
        tail[0] < tail[1] && tail[1] < tail[2] && tail[2] < 0.5,
        || format!("tail not increasing toward 1/2: {tail:?}"),
    )?;

    // the same property on exact values
    let table = HarmonicTable::<Rational>::up_to(4000);
    let exact: Vec<Rational> = [2000u64, 3000, 4000]
        .iter()
        .map(|&h| closed_ratio(h, &table).map_err(err))
        .collect::<Result<_, _>>()?;
    ensure(
        exact[0] < exact[1] && exact[1] < exact[2] && exact[2] < q(1, 2),
        || "exact tail not increasing toward 1/2".into(),
    )?;
    Ok(format!(
        "391 deterministic rows; ratio < 0.5 for H > 120; tail {:.6} < {:.6} < {:.6} < 0.5",
        tail[0], tail[1], tail[2]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "AC1",
            "counterexample below 0.495 at H=1000",
            ac1_counterexample,
        ),
        (
            "AC2",
            "oracle equals closed forms on H=4..=128",
            ac2_oracle_equivalence,
        ),
        ("AC3", "hand-verified instance H=4", ac3_hand_instance),
        ("AC4", "best-of vs second-best at ER H=2", ac4_best_of),
        ("AC5", "ratio bounds and below-half regime", ac5_bounds),
        ("AC6", "offer-table conformance", ac6_offer_table),
        ("AC7", "Figure sweep data properties", ac7_figure_sweep),
    ];

    // keep panics from individual criteria off the report
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (id, name, check) in criteria {
        let started = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{id} PASS {name}: {detail} [{secs:.1}s]"),
            Err(reason) => {
                failures += 1;
                println!("{id} FAIL {name}: {reason} [{secs:.1}s]");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
