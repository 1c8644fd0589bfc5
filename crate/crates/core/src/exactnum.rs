//! Exact rational helpers: harmonic numbers, decimal rendering and parsing.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// Cache of harmonic numbers `H_1, H_2, ...`.
///
/// The table only ever grows. Call [`HarmonicTable::warm_up`] once with the
/// largest index a computation needs, then share `&HarmonicTable` freely
/// across threads and read with [`HarmonicTable::get`].
#[derive(Debug, Clone)]
pub struct HarmonicTable<T> {
    // values[n - 1] = H_n
    values: Vec<T>,
}

impl<T: Scalar> Default for HarmonicTable<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> HarmonicTable<T> {
    pub fn new() -> Self {
        Self { values: Vec::new() }
    }

    /// A table already holding `H_1..=H_n`.
    pub fn up_to(n: u64) -> Self {
        let mut table = Self::new();
        table.warm_up(n);
        table
    }

    /// Number of cached entries; `H_1..=H_len` are available.
    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Extends the cache so that `H_1..=H_n` are available.
    pub fn warm_up(&mut self, n: u64) {
        let n = n as usize;
        if n <= self.values.len() {
            return;
        }
        self.values.reserve(n - self.values.len());
        while self.values.len() < n {
            let next = self.values.len() as u64 + 1;
            let term = T::ratio(1, next);
            let value = match self.values.last() {
                Some(prev) => prev.clone() + term,
                None => term,
            };
            self.values.push(value);
        }
    }

    /// `H_n`, extending the cache if needed.
    pub fn harmonic(&mut self, n: u64) -> Result<T> {
        if n == 0 {
            return Err(Error::domain(
                "harmonic number H_0 is not defined here; n must be >= 1",
            ));
        }
        self.warm_up(n);
        Ok(self.values[n as usize - 1].clone())
    }

    /// Read-only lookup of `H_n`; fails if the table was not warmed up to `n`.
    pub fn get(&self, n: u64) -> Result<&T> {
        if n == 0 {
            return Err(Error::domain(
                "harmonic number H_0 is not defined here; n must be >= 1",
            ));
        }
        self.values
            .get(n as usize - 1)
            .ok_or(Error::HarmonicNotCached {
                requested: n,
                cached: self.len(),
            })
    }
}

/// `H_n = 1 + 1/2 + ... + 1/n` computed from scratch.
pub fn harmonic<T: Scalar>(n: u64) -> Result<T> {
    if n == 0 {
        return Err(Error::domain(
            "harmonic number H_0 is not defined here; n must be >= 1",
        ));
    }
    Ok((1..=n).fold(T::zero(), |acc, i| acc + T::ratio(1, i)))
}

/// Renders `x` with exactly `digits` fractional digits, rounding half to even.
///
/// Output only. Never compare the rendered strings.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let magnitude = x.numer().abs() * &scale;
    let denom = x.denom();
    let (mut quotient, remainder) = magnitude.div_rem(denom);
    let twice: BigInt = remainder * 2;
    match twice.cmp(denom) {
        Ordering::Greater => quotient += 1,
        Ordering::Equal if quotient.is_odd() => quotient += 1,
        _ => {}
    }

    let mut body = quotient.to_str_radix(10);
    if body.len() <= digits {
        body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
    }
    let split = body.len() - digits;
    let mut out = String::with_capacity(body.len() + 2);
    if x.numer().sign() == Sign::Minus && !quotient.is_zero() {
        out.push('-');
    }
    out.push_str(&body[..split]);
    if digits > 0 {
        out.push('.');
        out.push_str(&body[split..]);
    }
    out
}

/// Canonical `p/q` form, or just `p` when the denominator is one.
pub fn to_exact_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses an integer (`7`, `-3`) or a fraction `p/q` with `q > 0`.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let token = token.trim();
    let bad = || Error::parse(None, format!("malformed rational `{token}`"));
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match token.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(token)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            if den.starts_with(['+', '-']) {
                return Err(bad());
            }
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::parse(None, format!("zero denominator in `{token}`")));
            }
            Ok(Rational::new(num, den))
        }
    }
}
