//! Closed-form GFT expressions for the equal-revenue and hard families, plus
//! the explicit upper and lower bounds on the hard-family ratio.
//!
//! All functions read harmonic numbers from a pre-warmed [`HarmonicTable`];
//! they fail with [`Error::HarmonicNotCached`] rather than growing it, so a
//! shared table can be used from many threads.

use crate::error::{Error, Result};
use crate::exactnum::HarmonicTable;
use crate::scalar::Scalar;

fn at_least(h: u64, min: u64, what: &str) -> Result<()> {
    if h < min {
        Err(Error::domain(format!("{what} needs H >= {min}, got {h}")))
    } else {
        Ok(())
    }
}

fn int<T: Scalar>(n: u64) -> T {
    T::from_u64_lossy(n)
}

/// First-best GFT of the equal-revenue pair: `2 H_H / (H + 1)`.
pub fn closed_opt_er<T: Scalar>(h: u64, table: &HarmonicTable<T>) -> Result<T> {
    at_least(h, 2, "equal-revenue OPT")?;
    Ok(int::<T>(2) * table.get(h)?.clone() / int(h + 1))
}

/// First-best GFT of the hard pair: the equal-revenue value minus `(H - 2) / (H (H - 1))`.
pub fn closed_opt_hard<T: Scalar>(h: u64, table: &HarmonicTable<T>) -> Result<T> {
    at_least(h, 4, "hard-family OPT")?;
    Ok(closed_opt_er(h, table)? - T::ratio(h - 2, h * (h - 1)))
}

/// Buyer-offering (and, by symmetry, seller-offering) GFT of the hard pair:
/// `H_{H-1} / (H - 1) - 7 / (12 (H - 1)) + 1 / (2 (H - 1)^2)`.
pub fn closed_bo_hard<T: Scalar>(h: u64, table: &HarmonicTable<T>) -> Result<T> {
    at_least(h, 4, "hard-family BO")?;
    let k = h - 1;
    Ok(table.get(k)?.clone() / int(k) - T::ratio(7, 12 * k) + T::ratio(1, 2 * k * k))
}

/// Random-offerer over first-best on the hard pair, `BO / OPT`.
pub fn closed_ratio<T: Scalar>(h: u64, table: &HarmonicTable<T>) -> Result<T> {
    Ok(closed_bo_hard(h, table)? / closed_opt_hard(h, table)?)
}

/// Upper bound on [`closed_ratio`]:
/// `1/2 + 1/(H-1) - 1/(12(2H_H - 1)) - 1/(12(H-1)(2H_H - 1))`.
pub fn ratio_upper_bound<T: Scalar>(h: u64, table: &HarmonicTable<T>) -> Result<T> {
    at_least(h, 3, "ratio upper bound")?;
    let k = int::<T>(h - 1);
    let twice_h_minus_one = int::<T>(2) * table.get(h)?.clone() - T::one();
    let twelve = int::<T>(12);
    Ok(T::ratio(1, 2) + T::one() / k.clone()
        - T::one() / (twelve.clone() * twice_h_minus_one.clone())
        - T::one() / (twelve * k * twice_h_minus_one))
}

/// Lower bound on [`closed_ratio`]:
/// `1/2 - (1/H + 7/12 + (H-2)/(2H(H-1))) / (2H_H + 2/H)`.
pub fn ratio_lower_bound<T: Scalar>(h: u64, table: &HarmonicTable<T>) -> Result<T> {
    at_least(h, 3, "ratio lower bound")?;
    let numer = T::ratio(1, h) + T::ratio(7, 12) + T::ratio(h - 2, 2 * h * (h - 1));
    let denom = int::<T>(2) * table.get(h)?.clone() + T::ratio(2, h);
    Ok(T::ratio(1, 2) - numer / denom)
}

/// Every closed-form quantity for one `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForms<T> {
    pub h: u64,
    pub opt_er: T,
    pub opt_hard: T,
    pub bo_hard: T,
    pub ratio: T,
    pub ratio_upper: T,
    pub ratio_lower: T,
}

impl<T: Scalar> ClosedForms<T> {
    pub fn compute(h: u64, table: &HarmonicTable<T>) -> Result<Self> {
        let opt_hard = closed_opt_hard(h, table)?;
        let bo_hard = closed_bo_hard(h, table)?;
        Ok(Self {
            h,
            opt_er: closed_opt_er(h, table)?,
            ratio: bo_hard.clone() / opt_hard.clone(),
            opt_hard,
            bo_hard,
            ratio_upper: ratio_upper_bound(h, table)?,
            ratio_lower: ratio_lower_bound(h, table)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::harmonic;
    use crate::Rational;
    use num_traits::One;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn small_values() {
        let t = HarmonicTable::<Rational>::up_to(10);
        assert!(closed_opt_er(2, &t).unwrap().is_one());
        // 2 * (25/12) / 5
        assert_eq!(closed_opt_er(4, &t).unwrap(), q(5, 6));
        // 5/6 - 2/12
        assert_eq!(closed_opt_hard(4, &t).unwrap(), q(2, 3));
        // (11/6)/3 - 7/36 + 1/18
        assert_eq!(closed_bo_hard(4, &t).unwrap(), q(17, 36));
        assert_eq!(closed_ratio(4, &t).unwrap(), q(17, 24));
    }

    #[test]
    fn bounds_at_four() {
        let t = HarmonicTable::<Rational>::up_to(4);
        let ratio = closed_ratio(4, &t).unwrap();
        assert!(ratio_upper_bound(4, &t).unwrap() >= ratio);
        assert!(ratio_lower_bound(4, &t).unwrap() < q(17, 24));
    }

    #[test]
    fn domains() {
        let t = HarmonicTable::<Rational>::up_to(10);
        assert!(closed_opt_er(1, &t).is_err());
        assert!(closed_opt_hard(3, &t).is_err());
        assert!(closed_bo_hard(3, &t).is_err());
        assert!(closed_ratio(3, &t).is_err());
        assert!(ratio_upper_bound(2, &t).is_err());
        assert!(ratio_lower_bound(2, &t).is_err());
        assert!(matches!(
            closed_opt_er(11, &t),
            Err(Error::HarmonicNotCached { requested: 11, .. })
        ));
    }

    #[test]
    fn values_at_1000() {
        let t = HarmonicTable::<Rational>::up_to(1000);
        assert_eq!(
            closed_opt_hard(1000, &t).unwrap(),
            closed_opt_er(1000, &t).unwrap() - q(998, 999_000)
        );
        let h999 = harmonic::<Rational>(999).unwrap();
        assert_eq!(
            closed_bo_hard(1000, &t).unwrap(),
            h999 / q(999, 1) - q(7, 11_988) + q(1, 2 * 999 * 999)
        );
        assert!(closed_ratio(1000, &t).unwrap() < q(495, 1000));
        assert!(ratio_upper_bound(1000, &t).unwrap() < q(1, 2));
        assert!(ratio_upper_bound(121, &t).unwrap() < q(1, 2));
    }

    #[test]
    fn mass_shift_loss() {
        let t = HarmonicTable::<Rational>::up_to(300);
        for h in 4..=300u64 {
            let hi = h as i64;
            let loss = closed_opt_er(h, &t).unwrap() - closed_opt_hard(h, &t).unwrap();
            assert_eq!(loss, q(2, 1) * (q(1, hi) - q(1, 2 * (hi - 1))));
            assert_eq!(loss, q(hi - 2, hi * (hi - 1)));
        }
    }

    #[test]
    fn sandwich_and_lower_bound_tends_to_half() {
        let t = HarmonicTable::<Rational>::up_to(600);
        for h in 4..=600u64 {
            let f = ClosedForms::compute(h, &t).unwrap();
            assert!(
                f.ratio_lower <= f.ratio && f.ratio <= f.ratio_upper,
                "H={h}"
            );
        }
        let gap = |h| q(1, 2) - ratio_lower_bound(h, &t).unwrap();
        assert!(gap(600) < gap(100));
        assert!(gap(100) < gap(10));
    }
}
