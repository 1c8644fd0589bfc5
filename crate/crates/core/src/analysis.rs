//! Sweeps over the hard family, the below-half scan, oracle verification and
//! the best-of comparison on the two-point equal-revenue instance.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::closedform::{
    closed_bo_hard, closed_opt_er, closed_opt_hard, ratio_lower_bound, ratio_upper_bound,
};
use crate::distribution::{er_buyer, er_seller, hard_buyer, hard_seller};
use crate::error::{Error, Result};
use crate::exactnum::HarmonicTable;
use crate::mechanisms::{gft_buyer_offering, gft_first_best, gft_fixed_price, gft_seller_offering};
use crate::scalar::Scalar;

/// Where the OPT / BO / SO columns of a sweep row come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    ClosedForm,
    Oracle,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::ClosedForm => "closed_form",
            Source::Oracle => "oracle",
        })
    }
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" | "closed_form" => Ok(Source::ClosedForm),
            "oracle" => Ok(Source::Oracle),
            other => Err(Error::domain(format!("unknown source `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub h: u64,
    pub opt: T,
    pub bo: T,
    pub so: T,
    pub ratio: T,
    pub ratio_upper: T,
    pub ratio_lower: T,
    pub source: Source,
}

fn check_sweep_range(h_min: u64, h_max: u64) -> Result<()> {
    if h_min < 4 {
        return Err(Error::domain(format!(
            "hard family needs H >= 4, got h_min = {h_min}"
        )));
    }
    if h_min > h_max {
        return Err(Error::domain(format!(
            "h_min = {h_min} exceeds h_max = {h_max}"
        )));
    }
    Ok(())
}

/// One row per `H` in `h_min, h_min + step, ..., <= h_max`, ordered by `H`.
pub fn sweep<T: Scalar>(
    h_min: u64,
    h_max: u64,
    step: u64,
    source: Source,
) -> Result<Vec<SweepRow<T>>> {
    check_sweep_range(h_min, h_max)?;
    if step == 0 {
        return Err(Error::domain("sweep step must be positive"));
    }
    let table = HarmonicTable::<T>::up_to(h_max);
    let hs: Vec<u64> = (h_min..=h_max).step_by(step as usize).collect();
    hs.par_iter()
        .map(|&h| sweep_row(h, source, &table))
        .collect()
}

fn sweep_row<T: Scalar>(h: u64, source: Source, table: &HarmonicTable<T>) -> Result<SweepRow<T>> {
    let (opt, bo, so) = match source {
        Source::ClosedForm => {
            let bo = closed_bo_hard(h, table)?;
            (closed_opt_hard(h, table)?, bo.clone(), bo)
        }
        Source::Oracle => {
            let seller = hard_seller::<T>(h)?;
            let buyer = hard_buyer::<T>(h)?;
            (
                gft_first_best(&seller, &buyer),
                gft_buyer_offering(&seller, &buyer),
                gft_seller_offering(&seller, &buyer),
            )
        }
    };
    let ratio = (bo.clone() + so.clone()) / (T::from_u64_lossy(2) * opt.clone());
    Ok(SweepRow {
        h,
        opt,
        bo,
        so,
        ratio,
        ratio_upper: ratio_upper_bound(h, table)?,
        ratio_lower: ratio_lower_bound(h, table)?,
        source,
    })
}

/// Result of scanning `H = 4..=h_max` for the below-half regime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BelowHalf {
    /// Smallest tested `H` from which the ratio stays below 1/2 through `h_max`.
    pub threshold: u64,
    /// Every tested `H` whose ratio is at least 1/2.
    pub above_half: Vec<u64>,
    pub h_max: u64,
}

/// Scans the closed-form ratio on `4..=h_max`.
///
/// The threshold is an observation over the tested range, not a proven
/// crossing point.
pub fn find_below_half<T: Scalar>(h_max: u64) -> Result<BelowHalf> {
    if h_max < 121 {
        return Err(Error::domain(format!(
            "h_max must be at least 121, got {h_max}"
        )));
    }
    let table = HarmonicTable::<T>::up_to(h_max);
    let half = T::ratio(1, 2);
    let flags: Vec<bool> = (4..=h_max)
        .into_par_iter()
        .map(|h| {
            let ratio = closed_bo_hard(h, &table)? / closed_opt_hard(h, &table)?;
            Ok(ratio >= half)
        })
        .collect::<Result<_>>()?;
    let above_half: Vec<u64> = (4..=h_max)
        .zip(flags)
        .filter_map(|(h, above)| above.then_some(h))
        .collect();
    let threshold = above_half.last().map_or(4, |h| h + 1);
    Ok(BelowHalf {
        threshold,
        above_half,
        h_max,
    })
}

/// Best-of versus second-best on the equal-revenue pair with `H = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BestOfReport<T> {
    pub fixed_price: T,
    pub opt: T,
    /// GFT of the fixed-price mechanism, which already attains `opt` here.
    pub second_best: T,
    pub so: T,
    pub bo: T,
    pub best_of_fraction: T,
}

pub fn best_of_demo<T: Scalar>() -> Result<BestOfReport<T>> {
    let seller = er_seller::<T>(2)?;
    let buyer = er_buyer::<T>(2)?;
    let fixed_price = T::one();
    let opt = gft_first_best(&seller, &buyer);
    let second_best = gft_fixed_price(&fixed_price, &seller, &buyer);
    let so = gft_seller_offering(&seller, &buyer);
    let bo = gft_buyer_offering(&seller, &buyer);
    let best_of_fraction = T::max_of(so.clone(), bo.clone()) / second_best.clone();
    Ok(BestOfReport {
        fixed_price,
        opt,
        second_best,
        so,
        bo,
        best_of_fraction,
    })
}

/// A quantity compared between the closed forms and the brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    OptEr,
    OptHard,
    BoHard,
    SoHard,
    /// Oracle BO equals oracle SO on the hard family.
    Symmetry,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::OptEr => "OPT_ER",
            Quantity::OptHard => "OPT_hard",
            Quantity::BoHard => "BO_hard",
            Quantity::SoHard => "SO_hard",
            Quantity::Symmetry => "BO=SO",
        })
    }
}

pub type ClosedFormFn<T> = fn(u64, &HarmonicTable<T>) -> Result<T>;

/// The closed forms under verification. Swappable so the failure path can
/// be exercised with a deliberately broken formula.
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormSet<T> {
    pub opt_er: ClosedFormFn<T>,
    pub opt_hard: ClosedFormFn<T>,
    pub bo_hard: ClosedFormFn<T>,
}

impl<T: Scalar> Default for ClosedFormSet<T> {
    fn default() -> Self {
        Self {
            opt_er: closed_opt_er,
            opt_hard: closed_opt_hard,
            bo_hard: closed_bo_hard,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch<T> {
    pub h: u64,
    pub quantity: Quantity,
    pub closed_form: T,
    pub oracle: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport<T> {
    pub h_min: u64,
    pub h_max: u64,
    /// Number of (H, quantity) comparisons performed.
    pub checks: usize,
    /// Lowest-`H` failure, in the order OPT_ER, OPT_hard, BO_hard, SO_hard, BO=SO.
    pub first_failure: Option<Mismatch<T>>,
}

impl<T> VerifyReport<T> {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Compares closed forms against the double-sum oracle for every `H` in range.
pub fn verify_range<T: Scalar>(
    h_min: u64,
    h_max: u64,
    forms: &ClosedFormSet<T>,
) -> Result<VerifyReport<T>> {
    check_sweep_range(h_min, h_max)?;
    let table = HarmonicTable::<T>::up_to(h_max);
    let per_h: Vec<Vec<Mismatch<T>>> = (h_min..=h_max)
        .into_par_iter()
        .map(|h| verify_one(h, forms, &table))
        .collect::<Result<_>>()?;
    let checks = per_h.len() * 5;
    let first_failure = per_h.into_iter().flatten().next();
    Ok(VerifyReport {
        h_min,
        h_max,
        checks,
        first_failure,
    })
}

fn verify_one<T: Scalar>(
    h: u64,
    forms: &ClosedFormSet<T>,
    table: &HarmonicTable<T>,
) -> Result<Vec<Mismatch<T>>> {
    let er_opt = gft_first_best(&er_seller::<T>(h)?, &er_buyer::<T>(h)?);
    let seller = hard_seller::<T>(h)?;
    let buyer = hard_buyer::<T>(h)?;
    let hard_opt = gft_first_best(&seller, &buyer);
    let bo = gft_buyer_offering(&seller, &buyer);
    let so = gft_seller_offering(&seller, &buyer);
    let closed_bo = (forms.bo_hard)(h, table)?;

    let checks = [
        (Quantity::OptEr, (forms.opt_er)(h, table)?, er_opt),
        (Quantity::OptHard, (forms.opt_hard)(h, table)?, hard_opt),
        (Quantity::BoHard, closed_bo.clone(), bo.clone()),
        (Quantity::SoHard, closed_bo, so.clone()),
        (Quantity::Symmetry, bo, so),
    ];
    Ok(checks
        .into_iter()
        .filter(|(_, closed, oracle)| closed != oracle)
        .map(|(quantity, closed_form, oracle)| Mismatch {
            h,
            quantity,
            closed_form,
            oracle,
        })
        .collect())
}
