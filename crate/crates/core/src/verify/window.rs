use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::monoid::{Monoid, MonoidElement};
use crate::series::{CoefficientSpace, Series};

/// Default number of evaluations a verifier may spend.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A finite slice of `R[S]` or `M[S]`: every coefficient assignment over a
/// fixed list of exponents, optionally limited to `max_support` nonzero
/// terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportWindow {
    exponents: Vec<MonoidElement>,
    max_support: Option<usize>,
}

impl SupportWindow {
    pub fn new(exponents: Vec<MonoidElement>, max_support: Option<usize>) -> Result<Self> {
        for (i, e) in exponents.iter().enumerate() {
            if exponents[..i].contains(e) {
                return Err(Error::InvalidArgument(format!("exponent {e} repeated in window")));
            }
        }
        Ok(Self { exponents, max_support })
    }

    /// `{0, 1, ..., degree}` in `N`.
    pub fn polynomial(degree: usize) -> Self {
        Self {
            exponents: (0..=degree as i64).map(|i| MonoidElement::Vector(vec![i])).collect(),
            max_support: None,
        }
    }

    pub fn exponents(&self) -> &[MonoidElement] {
        &self.exponents
    }

    pub fn max_support(&self) -> Option<usize> {
        self.max_support
    }

    pub fn check(&self, monoid: &Monoid) -> Result<()> {
        self.exponents.iter().try_for_each(|e| monoid.check(e))
    }

    /// Number of window series whose coefficients come from a set of
    /// `values` elements containing zero.
    pub fn cardinality_with(&self, values: usize) -> u128 {
        let len = self.exponents.len();
        let cap = self.max_support.unwrap_or(len).min(len);
        let nonzero = values.saturating_sub(1) as u128;
        (0..=cap)
            .map(|j| binomial(len, j).saturating_mul(nonzero.saturating_pow(j as u32)))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    /// Number of window series over a coefficient space of `size` elements.
    pub fn cardinality(&self, size: usize) -> u128 {
        self.cardinality_with(size)
    }

    /// All window series with coefficients in `space`. The coefficient
    /// tuple runs as an odometer with the first exponent turning fastest, so
    /// the zero series comes first and constants precede `X`-terms.
    pub fn enumerate<C: CoefficientSpace + ?Sized>(&self, space: &C) -> Vec<Series> {
        let all: Vec<usize> = (0..space.size()).collect();
        self.enumerate_values(space, &all)
    }

    /// Window series with every coefficient in `allowed` (zero is always
    /// allowed).
    pub fn enumerate_within<C: CoefficientSpace + ?Sized>(&self, space: &C, allowed: &ElementSet) -> Vec<Series> {
        let mut values: Vec<usize> = allowed.iter().collect();
        if !allowed.contains(space.zero()) {
            values.push(space.zero());
            values.sort_unstable();
        }
        self.enumerate_values(space, &values)
    }

    fn enumerate_values<C: CoefficientSpace + ?Sized>(&self, space: &C, values: &[usize]) -> Vec<Series> {
        let len = self.exponents.len();
        let cap = self.max_support.unwrap_or(len);
        let zero = space.zero();
        let mut out = Vec::new();
        let mut digits = vec![0usize; len];
        loop {
            let coeffs = digits.iter().map(|&d| values[d]);
            if coeffs.clone().filter(|&c| c != zero).count() <= cap {
                let mut s = Series::zero();
                for (e, c) in self.exponents.iter().zip(coeffs) {
                    if c != zero {
                        s = s.add(&Series::from_raw_term(e.clone(), c), space);
                    }
                }
                out.push(s);
            }
            // odometer, first exponent least significant, so lower-support
            // series on early exponents come first
            let mut pos = 0;
            loop {
                if pos == len {
                    return out;
                }
                digits[pos] += 1;
                if digits[pos] < values.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteRing;

    #[test]
    fn cardinalities_match_enumeration() {
        let r = FiniteRing::zmod(6).unwrap();
        let w = SupportWindow::polynomial(2);
        assert_eq!(w.cardinality(6), 216);
        assert_eq!(w.enumerate(&r).len(), 216);
        let w = SupportWindow::new(w.exponents().to_vec(), Some(1)).unwrap();
        assert_eq!(w.cardinality(6), 1 + 3 * 5);
        assert_eq!(w.enumerate(&r).len(), 16);
        let allowed = ElementSet::from_iter_in(6, [2, 4]);
        let w = SupportWindow::polynomial(1);
        assert_eq!(w.enumerate_within(&r, &allowed).len(), 9);
        assert_eq!(w.cardinality_with(3), 9);
    }

    #[test]
    fn enumeration_is_distinct_and_ordered() {
        let r = FiniteRing::zmod(3).unwrap();
        let all = SupportWindow::polynomial(2).enumerate(&r);
        assert!(all[0].is_zero());
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }

    #[test]
    fn repeated_exponent_rejected() {
        let e = MonoidElement::Index(0);
        assert!(SupportWindow::new(vec![e.clone(), e], None).is_err());
    }
}
