//! Finite discrete value distributions and the equal-revenue / hard families.

use crate::error::{Error, Result};
use crate::exactnum::parse_rational;
use crate::scalar::Scalar;
use crate::Rational;
use num_traits::Signed;

/// A distribution over finitely many nonnegative values.
///
/// Invariants, enforced by every constructor:
/// - support values are strictly increasing and nonnegative;
/// - every stored mass is strictly positive (zero-mass points are dropped);
/// - the masses sum to one (exactly, for rationals).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution<T> {
    support: Vec<T>,
    masses: Vec<T>,
}

impl<T: Scalar> DiscreteDistribution<T> {
    /// Builds a distribution from `(value, mass)` pairs in any order.
    pub fn new(pairs: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        let mut pairs: Vec<(T, T)> = pairs.into_iter().collect();
        for (value, mass) in &pairs {
            if value.is_negative() {
                return Err(Error::domain(format!("negative support value {value:?}")));
            }
            if mass.is_negative() {
                return Err(Error::domain(format!(
                    "negative mass {mass:?} at value {value:?}"
                )));
            }
        }
        pairs.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .expect("support values must be totally ordered")
        });
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::domain(format!(
                "duplicate support value {:?}",
                w[0].0
            )));
        }
        let total = pairs.iter().fold(T::zero(), |acc, (_, m)| acc + m.clone());
        if !total.is_unit_total() {
            return Err(Error::domain(format!("masses sum to {total:?}, not 1")));
        }
        let (support, masses) = pairs.into_iter().filter(|(_, m)| !m.is_zero()).unzip();
        Ok(Self { support, masses })
    }

    /// A distribution putting all mass on `value`.
    pub fn point_mass(value: T) -> Result<Self> {
        Self::new([(value, T::one())])
    }

    pub fn support(&self) -> &[T] {
        &self.support
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &T)> {
        self.support.iter().zip(&self.masses)
    }

    /// Mass at `value`, zero off the support.
    pub fn mass_at(&self, value: &T) -> T {
        self.position(value)
            .map(|i| self.masses[i].clone())
            .unwrap_or_else(T::zero)
    }

    pub fn min_value(&self) -> &T {
        self.support
            .first()
            .expect("distribution has nonempty support")
    }

    pub fn max_value(&self) -> &T {
        self.support
            .last()
            .expect("distribution has nonempty support")
    }

    /// `Pr[value <= x]`.
    pub fn cdf(&self, x: &T) -> T {
        self.iter()
            .take_while(|(v, _)| *v <= x)
            .fold(T::zero(), |acc, (_, m)| acc + m.clone())
    }

    /// `Pr[value >= x]`.
    pub fn survival(&self, x: &T) -> T {
        self.iter()
            .filter(|(v, _)| *v >= x)
            .fold(T::zero(), |acc, (_, m)| acc + m.clone())
    }

    /// `Pr[value <= support[i]]` for every support index.
    pub fn cdf_table(&self) -> Vec<T> {
        let mut acc = T::zero();
        self.masses
            .iter()
            .map(|m| {
                acc = acc.clone() + m.clone();
                acc.clone()
            })
            .collect()
    }

    /// `Pr[value >= support[i]]` for every support index.
    pub fn survival_table(&self) -> Vec<T> {
        let mut acc = T::zero();
        let mut out: Vec<T> = self
            .masses
            .iter()
            .rev()
            .map(|m| {
                acc = acc.clone() + m.clone();
                acc.clone()
            })
            .collect();
        out.reverse();
        out
    }

    /// Moves `amount` of probability from `from` to `to`.
    pub fn shift_mass(&self, from: &T, to: &T, amount: &T) -> Result<Self> {
        let idx = self
            .position(from)
            .ok_or_else(|| Error::domain(format!("{from:?} is not in the support")))?;
        if amount.is_negative() {
            return Err(Error::domain(format!(
                "cannot move a negative mass {amount:?}"
            )));
        }
        if *amount > self.masses[idx] {
            return Err(Error::domain(format!(
                "cannot move {amount:?} from {from:?}, which only holds {:?}",
                self.masses[idx]
            )));
        }
        if from == to || amount.is_zero() {
            return Ok(self.clone());
        }
        let mut pairs: Vec<(T, T)> = self.iter().map(|(v, m)| (v.clone(), m.clone())).collect();
        pairs[idx].1 = pairs[idx].1.clone() - amount.clone();
        match pairs.iter_mut().find(|(v, _)| v == to) {
            Some(entry) => entry.1 = entry.1.clone() + amount.clone(),
            None => pairs.push((to.clone(), amount.clone())),
        }
        Self::new(pairs)
    }

    /// The distribution of `pivot - X`; requires `pivot >= max value`.
    pub fn reflect(&self, pivot: &T) -> Result<Self> {
        if pivot < self.max_value() {
            return Err(Error::domain(format!(
                "reflection pivot {pivot:?} is below the largest value {:?}",
                self.max_value()
            )));
        }
        Self::new(
            self.iter()
                .map(|(v, m)| (pivot.clone() - v.clone(), m.clone())),
        )
    }

    fn position(&self, value: &T) -> Option<usize> {
        self.support.iter().position(|v| v == value)
    }
}

fn check_scale(h: u64, min: u64, family: &str) -> Result<()> {
    if h < min {
        Err(Error::domain(format!(
            "{family} family needs H >= {min}, got {h}"
        )))
    } else {
        Ok(())
    }
}

/// Discrete equal-revenue seller distribution on `{0, ..., H-1}` with `Pr[s <= m] = 1/(H-m)`.
pub fn er_seller<T: Scalar>(h: u64) -> Result<DiscreteDistribution<T>> {
    check_scale(h, 2, "equal-revenue")?;
    let pairs = (0..h).map(|y| {
        let mass = if y == 0 {
            T::ratio(1, h)
        } else {
            T::ratio(1, (h - y) * (h - y + 1))
        };
        (T::from_u64_lossy(y), mass)
    });
    DiscreteDistribution::new(pairs)
}

/// Discrete equal-revenue buyer distribution on `{1, ..., H}` with `Pr[b >= m] = 1/m`.
pub fn er_buyer<T: Scalar>(h: u64) -> Result<DiscreteDistribution<T>> {
    check_scale(h, 2, "equal-revenue")?;
    let pairs = (1..=h).map(|x| {
        let mass = if x == h {
            T::ratio(1, h)
        } else {
            T::ratio(1, x * (x + 1))
        };
        (T::from_u64_lossy(x), mass)
    });
    DiscreteDistribution::new(pairs)
}

/// The hard seller distribution: equal-revenue with the atom at 0 cut to `1/(2(H-1))`,
/// the removed mass landing on 1.
pub fn hard_seller<T: Scalar>(h: u64) -> Result<DiscreteDistribution<T>> {
    check_scale(h, 4, "hard")?;
    let edge = T::ratio(1, 2 * (h - 1));
    let pairs = (0..h).map(|m| {
        let mass = match m {
            0 | 1 => edge.clone(),
            _ => T::ratio(1, (h - m) * (h - m + 1)),
        };
        (T::from_u64_lossy(m), mass)
    });
    DiscreteDistribution::new(pairs)
}

/// The hard buyer distribution, the mirror image of [`hard_seller`] around `H/2`.
pub fn hard_buyer<T: Scalar>(h: u64) -> Result<DiscreteDistribution<T>> {
    check_scale(h, 4, "hard")?;
    let edge = T::ratio(1, 2 * (h - 1));
    let pairs = (1..=h).map(|m| {
        let mass = if m == h {
            edge.clone()
        } else if m == h - 1 {
            T::ratio(1, h - 1) - edge.clone()
        } else {
            T::ratio(1, m * (m + 1))
        };
        (T::from_u64_lossy(m), mass)
    });
    DiscreteDistribution::new(pairs)
}

/// Parses the `<value> <mass>` line format.
///
/// `#` starts a comment, blank lines are skipped, and the masses must already
/// sum to exactly one.
pub fn parse_distribution(text: &str) -> Result<DiscreteDistribution<Rational>> {
    let mut pairs: Vec<(Rational, Rational, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [value, mass] = tokens[..] else {
            return Err(Error::parse(
                Some(line_no),
                format!("expected `<value> <mass>`, found {} token(s)", tokens.len()),
            ));
        };
        let at_line = |e: Error| match e {
            Error::Parse { message, .. } => Error::parse(Some(line_no), message),
            other => other,
        };
        let value = parse_rational(value).map_err(at_line)?;
        let mass = parse_rational(mass).map_err(at_line)?;
        if value.is_negative() {
            return Err(Error::parse(
                Some(line_no),
                format!("negative value {value}"),
            ));
        }
        if mass.is_negative() {
            return Err(Error::parse(Some(line_no), format!("negative mass {mass}")));
        }
        if let Some((_, _, first)) = pairs.iter().find(|(v, _, _)| *v == value) {
            return Err(Error::parse(
                Some(line_no),
                format!("duplicate value {value} (first seen at line {first})"),
            ));
        }
        pairs.push((value, mass, line_no));
    }
    if pairs.is_empty() {
        return Err(Error::parse(None, "no `<value> <mass>` lines found"));
    }
    let total: Rational = pairs.iter().map(|(_, m, _)| m.clone()).sum();
    if !total.is_unit_total() {
        return Err(Error::parse(None, format!("masses sum to {total}, not 1")));
    }
    DiscreteDistribution::new(pairs.into_iter().map(|(v, m, _)| (v, m)))
        .map_err(|e| Error::parse(None, e.to_string()))
}
