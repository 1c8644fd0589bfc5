//! Take-it-or-leave-it offers and the gains from trade of each mechanism.
//!
//! Every GFT here is an explicit double sum over the two supports. These sums
//! are the brute-force reference that the closed forms are checked against,
//! so they deliberately avoid any algebraic shortcut.
//!
//! Offers are searched over the positive-mass support of the counterparty:
//! between two consecutive support points the acceptance probability is
//! constant and the offerer's payoff is monotone in the price, so an optimum
//! is always attained on the support.

use rayon::prelude::*;

use crate::distribution::DiscreteDistribution;
use crate::scalar::Scalar;

/// A posted price, or the seller's refusal to sell at any price.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PriceQuote<T> {
    Finite(T),
    NeverTrade,
}

impl<T> PriceQuote<T> {
    pub fn price(&self) -> Option<&T> {
        match self {
            PriceQuote::Finite(p) => Some(p),
            PriceQuote::NeverTrade => None,
        }
    }
}

/// An optimal quote together with the expected payoff it earns the offerer.
#[derive(Debug, Clone, PartialEq)]
pub struct Offer<T> {
    pub quote: PriceQuote<T>,
    pub expected_payoff: T,
}

/// Seller-side pricing against a fixed buyer distribution.
///
/// Holds the buyer's survival table so that each quote costs `O(|support|)`.
#[derive(Debug, Clone)]
pub struct SellerPricer<'a, T> {
    buyer: &'a DiscreteDistribution<T>,
    survival: Vec<T>,
}

impl<'a, T: Scalar> SellerPricer<'a, T> {
    pub fn new(buyer: &'a DiscreteDistribution<T>) -> Self {
        Self {
            buyer,
            survival: buyer.survival_table(),
        }
    }

    /// Maximizes `(p - s) * Pr[b >= p]`; ties go to the highest price, and
    /// no strictly positive profit means [`PriceQuote::NeverTrade`].
    pub fn offer(&self, seller_value: &T) -> Offer<T> {
        let mut best: Option<(usize, T)> = None;
        for (i, (price, surv)) in self.buyer.support().iter().zip(&self.survival).enumerate() {
            let profit = (price.clone() - seller_value.clone()) * surv.clone();
            if !profit.is_positive() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| profit >= *b) {
                best = Some((i, profit));
            }
        }
        match best {
            Some((i, profit)) => Offer {
                quote: PriceQuote::Finite(self.buyer.support()[i].clone()),
                expected_payoff: profit,
            },
            None => Offer {
                quote: PriceQuote::NeverTrade,
                expected_payoff: T::zero(),
            },
        }
    }
}

/// Buyer-side pricing against a fixed seller distribution.
#[derive(Debug, Clone)]
pub struct BuyerPricer<'a, T> {
    seller: &'a DiscreteDistribution<T>,
    cdf: Vec<T>,
}

impl<'a, T: Scalar> BuyerPricer<'a, T> {
    pub fn new(seller: &'a DiscreteDistribution<T>) -> Self {
        Self {
            seller,
            cdf: seller.cdf_table(),
        }
    }

    /// Maximizes `(b - p) * Pr[s <= p]`; ties go to the lowest price, and
    /// no strictly positive utility means a price of zero.
    pub fn offer(&self, buyer_value: &T) -> Offer<T> {
        let mut best: Option<(usize, T)> = None;
        for (i, (price, cdf)) in self.seller.support().iter().zip(&self.cdf).enumerate() {
            let utility = (buyer_value.clone() - price.clone()) * cdf.clone();
            if !utility.is_positive() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| utility > *b) {
                best = Some((i, utility));
            }
        }
        match best {
            Some((i, utility)) => Offer {
                quote: PriceQuote::Finite(self.seller.support()[i].clone()),
                expected_payoff: utility,
            },
            None => Offer {
                quote: PriceQuote::Finite(T::zero()),
                expected_payoff: T::zero(),
            },
        }
    }
}

pub fn seller_optimal_price<T: Scalar>(
    seller_value: &T,
    buyer: &DiscreteDistribution<T>,
) -> PriceQuote<T> {
    SellerPricer::new(buyer).offer(seller_value).quote
}

pub fn buyer_optimal_price<T: Scalar>(
    buyer_value: &T,
    seller: &DiscreteDistribution<T>,
) -> PriceQuote<T> {
    BuyerPricer::new(seller).offer(buyer_value).quote
}

/// Sums `f(row)` over `rows` in parallel, then adds the partial results in
/// row order so the total does not depend on scheduling.
fn ordered_sum<T, I, F>(rows: &[I], f: F) -> T
where
    T: Scalar,
    I: Sync,
    F: Fn(&I) -> T + Sync + Send,
{
    let parts: Vec<T> = rows.par_iter().map(f).collect();
    parts.into_iter().fold(T::zero(), |acc, x| acc + x)
}

fn pairs<T: Scalar>(d: &DiscreteDistribution<T>) -> Vec<(T, T)> {
    d.support()
        .iter()
        .cloned()
        .zip(d.masses().iter().cloned())
        .collect()
}

/// First-best GFT, `E[max(b - s, 0)]`.
pub fn gft_first_best<T: Scalar>(
    seller: &DiscreteDistribution<T>,
    buyer: &DiscreteDistribution<T>,
) -> T {
    ordered_sum(&pairs(seller), |(s, ms)| {
        let inner = buyer.iter().fold(T::zero(), |acc, (b, mb)| {
            let gain = T::max_of(b.clone() - s.clone(), T::zero());
            acc + mb.clone() * gain
        });
        ms.clone() * inner
    })
}

/// GFT of the seller-offering mechanism.
pub fn gft_seller_offering<T: Scalar>(
    seller: &DiscreteDistribution<T>,
    buyer: &DiscreteDistribution<T>,
) -> T {
    let pricer = SellerPricer::new(buyer);
    ordered_sum(&pairs(seller), |(s, ms)| {
        let PriceQuote::Finite(p) = pricer.offer(s).quote else {
            return T::zero();
        };
        if *s > p {
            return T::zero();
        }
        let inner = buyer
            .iter()
            .filter(|(b, _)| **b >= p)
            .fold(T::zero(), |acc, (b, mb)| {
                acc + mb.clone() * (b.clone() - s.clone())
            });
        ms.clone() * inner
    })
}

/// GFT of the buyer-offering mechanism.
pub fn gft_buyer_offering<T: Scalar>(
    seller: &DiscreteDistribution<T>,
    buyer: &DiscreteDistribution<T>,
) -> T {
    let pricer = BuyerPricer::new(seller);
    ordered_sum(&pairs(buyer), |(b, mb)| {
        let PriceQuote::Finite(p) = pricer.offer(b).quote else {
            return T::zero();
        };
        let inner = seller
            .iter()
            .filter(|(s, _)| **s <= p)
            .fold(T::zero(), |acc, (s, ms)| {
                acc + ms.clone() * (b.clone() - s.clone())
            });
        mb.clone() * inner
    })
}

/// GFT of the mechanism that picks the offering side with a fair coin.
pub fn gft_random_offerer<T: Scalar>(
    seller: &DiscreteDistribution<T>,
    buyer: &DiscreteDistribution<T>,
) -> T {
    (gft_seller_offering(seller, buyer) + gft_buyer_offering(seller, buyer)) / T::ratio(2, 1)
}

/// GFT of posting the exogenous price `price`; trade iff `b >= price >= s`.
pub fn gft_fixed_price<T: Scalar>(
    price: &T,
    seller: &DiscreteDistribution<T>,
    buyer: &DiscreteDistribution<T>,
) -> T {
    ordered_sum(&pairs(seller), |(s, ms)| {
        if s > price {
            return T::zero();
        }
        let inner = buyer
            .iter()
            .filter(|(b, _)| *b >= price)
            .fold(T::zero(), |acc, (b, mb)| {
                acc + mb.clone() * (b.clone() - s.clone())
            });
        ms.clone() * inner
    })
}

/// All mechanism GFTs for one (seller, buyer) instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GftReport<T> {
    pub opt: T,
    pub so: T,
    pub bo: T,
    pub random_offerer: T,
    pub best_of: T,
    /// `random_offerer / opt`; `None` when `opt` is zero.
    pub ratio: Option<T>,
}

pub fn evaluate<T: Scalar>(
    seller: &DiscreteDistribution<T>,
    buyer: &DiscreteDistribution<T>,
) -> GftReport<T> {
    let opt = gft_first_best(seller, buyer);
    let so = gft_seller_offering(seller, buyer);
    let bo = gft_buyer_offering(seller, buyer);
    let random_offerer = (so.clone() + bo.clone()) / T::ratio(2, 1);
    let best_of = T::max_of(so.clone(), bo.clone());
    let ratio = if opt.is_zero() {
        None
    } else {
        Some(random_offerer.clone() / opt.clone())
    };
    GftReport {
        opt,
        so,
        bo,
        random_offerer,
        best_of,
        ratio,
    }
}
