//! Exact evaluation of posted-price bilateral trade mechanisms.
//!
//! A seller holding one item and a buyer each draw a private value from a
//! known discrete distribution. This crate computes, by exact summation over
//! the supports, the expected gains from trade (GFT) of
//!
//! - the first-best benchmark (trade whenever `b >= s`),
//! - the seller-offering and buyer-offering take-it-or-leave-it mechanisms,
//! - the random-offerer mechanism (a fair coin between the two),
//! - fixed-price mechanisms,
//!
//! together with closed forms for the equal-revenue and "hard" distribution
//! families on which the random-offerer mechanism earns less than half of the
//! first-best GFT.
//!
//! Everything is generic over [`Scalar`]. Use [`Rational`] for exact results;
//! `f64` works for quick approximate exploration.

pub mod analysis;
pub mod closedform;
pub mod distribution;
pub mod error;
pub mod exactnum;
pub mod mechanisms;
pub mod scalar;

pub use analysis::{
    best_of_demo, find_below_half, sweep, verify_range, BelowHalf, BestOfReport, ClosedFormSet,
    Mismatch, Quantity, Source, SweepRow, VerifyReport,
};
pub use closedform::{
    closed_bo_hard, closed_opt_er, closed_opt_hard, closed_ratio, ratio_lower_bound,
    ratio_upper_bound, ClosedForms,
};
pub use distribution::{
    er_buyer, er_seller, hard_buyer, hard_seller, parse_distribution, DiscreteDistribution,
};
pub use error::{Error, Result};
pub use exactnum::{harmonic, parse_rational, to_decimal, to_exact_string, HarmonicTable};
pub use mechanisms::{
    buyer_optimal_price, evaluate, gft_buyer_offering, gft_first_best, gft_fixed_price,
    gft_random_offerer, gft_seller_offering, seller_optimal_price, BuyerPricer, GftReport, Offer,
    PriceQuote, SellerPricer,
};
pub use scalar::Scalar;

/// Arbitrary-precision rational, the number type for every exact result.
pub type Rational = num_rational::BigRational;

pub type RationalDistribution = DiscreteDistribution<Rational>;
pub type RationalReport = GftReport<Rational>;
pub type RationalHarmonicTable = HarmonicTable<Rational>;

pub type F64Distribution = DiscreteDistribution<f64>;
pub type F64Report = GftReport<f64>;
