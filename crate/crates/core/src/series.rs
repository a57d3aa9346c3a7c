//! Finite-support series `Σ c_s X^s` over a monoid, with coefficients in a
//! ring or a module.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::module::FiniteModule;
use crate::monoid::{Monoid, MonoidElement};
use crate::ring::{Elem, FiniteRing};

/// Anything a series can take coefficients in: an abelian group with an
/// action of a base ring.
pub trait CoefficientSpace {
    fn base_ring(&self) -> &FiniteRing;
    fn size(&self) -> usize;
    fn zero(&self) -> Elem;
    fn add(&self, a: Elem, b: Elem) -> Elem;
    fn neg(&self, a: Elem) -> Elem;
    fn act(&self, r: Elem, x: Elem) -> Elem;
    fn name(&self, x: Elem) -> &str;
}

impl CoefficientSpace for FiniteRing {
    fn base_ring(&self) -> &FiniteRing {
        self
    }
    fn size(&self) -> usize {
        FiniteRing::size(self)
    }
    fn zero(&self) -> Elem {
        FiniteRing::zero(self)
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        FiniteRing::add(self, a, b)
    }
    fn neg(&self, a: Elem) -> Elem {
        FiniteRing::neg(self, a)
    }
    fn act(&self, r: Elem, x: Elem) -> Elem {
        self.mul(r, x)
    }
    fn name(&self, x: Elem) -> &str {
        FiniteRing::name(self, x)
    }
}

impl CoefficientSpace for FiniteModule {
    fn base_ring(&self) -> &FiniteRing {
        self.ring()
    }
    fn size(&self) -> usize {
        FiniteModule::size(self)
    }
    fn zero(&self) -> Elem {
        FiniteModule::zero(self)
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        FiniteModule::add(self, a, b)
    }
    fn neg(&self, a: Elem) -> Elem {
        FiniteModule::neg(self, a)
    }
    fn act(&self, r: Elem, x: Elem) -> Elem {
        FiniteModule::act(self, r, x)
    }
    fn name(&self, x: Elem) -> &str {
        FiniteModule::name(self, x)
    }
}

/// A normalized finite-support series: no stored coefficient is zero, and
/// exponents are distinct. The empty map is the zero series.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Series {
    terms: BTreeMap<MonoidElement, Elem>,
}

impl Series {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Collects `(exponent, coefficient)` pairs, summing repeated exponents
    /// and dropping zero coefficients.
    pub fn from_terms<C: CoefficientSpace + ?Sized>(
        space: &C,
        monoid: &Monoid,
        terms: impl IntoIterator<Item = (MonoidElement, Elem)>,
    ) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in terms {
            monoid.check(&e)?;
            if c >= space.size() {
                return Err(Error::ElementOutOfRange { element: c, size: space.size() });
            }
            out.accumulate(space, e, c);
        }
        Ok(out)
    }

    /// `c X^e`.
    pub fn monomial<C: CoefficientSpace + ?Sized>(space: &C, monoid: &Monoid, e: MonoidElement, c: Elem) -> Result<Self> {
        Self::from_terms(space, monoid, [(e, c)])
    }

    /// `c X^0`.
    pub fn constant<C: CoefficientSpace + ?Sized>(space: &C, monoid: &Monoid, c: Elem) -> Result<Self> {
        Self::monomial(space, monoid, monoid.identity(), c)
    }

    /// A single term with no validation; `c` must be nonzero.
    pub(crate) fn from_raw_term(e: MonoidElement, c: Elem) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(e, c);
        Self { terms }
    }

    fn accumulate<C: CoefficientSpace + ?Sized>(&mut self, space: &C, e: MonoidElement, c: Elem) {
        if c == space.zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = space.add(*o.get(), c);
                if sum == space.zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Checks that every term lives in `space` and `monoid`.
    pub fn validate<C: CoefficientSpace + ?Sized>(&self, space: &C, monoid: &Monoid) -> Result<()> {
        for (e, &c) in &self.terms {
            monoid.check(e)?;
            if c >= space.size() || c == space.zero() {
                return Err(Error::ElementOutOfRange { element: c, size: space.size() });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoidElement, Elem)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coefficients(&self) -> impl Iterator<Item = Elem> + '_ {
        self.terms.values().copied()
    }

    pub fn coefficient(&self, e: &MonoidElement) -> Option<Elem> {
        self.terms.get(e).copied()
    }

    /// The distinct coefficients as a subset of the coefficient space.
    pub fn coefficient_set(&self, domain: usize) -> ElementSet {
        ElementSet::from_iter_in(domain, self.coefficients())
    }

    pub fn add<C: CoefficientSpace + ?Sized>(&self, other: &Series, space: &C) -> Series {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.accumulate(space, e.clone(), c);
        }
        out
    }

    pub fn neg<C: CoefficientSpace + ?Sized>(&self, space: &C) -> Series {
        Series {
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), space.neg(c))).collect(),
        }
    }

    pub fn sub<C: CoefficientSpace + ?Sized>(&self, other: &Series, space: &C) -> Series {
        self.add(&other.neg(space), space)
    }

    /// Renders the series using the space's element names, lowest exponent
    /// first.
    pub fn display<'a, C: CoefficientSpace + ?Sized>(&'a self, space: &'a C) -> impl fmt::Display + 'a {
        SeriesDisplay { series: self, space }
    }
}

/// Convolution `f · h`: `f` has coefficients in the base ring of `space`,
/// `h` in `space` itself.
pub fn multiply<C: CoefficientSpace + ?Sized>(monoid: &Monoid, f: &Series, space: &C, h: &Series) -> Series {
    let mut out = Series::zero();
    for (s, &a) in &f.terms {
        for (t, &x) in &h.terms {
            out.accumulate(space, monoid.add_unchecked(s, t), space.act(a, x));
        }
    }
    out
}

/// `f · x` for a single coefficient-space element `x`, i.e. `f` acting on
/// the constant `x X^0`. Zero iff every coefficient of `f` kills `x`.
pub fn scale_constant<C: CoefficientSpace + ?Sized>(f: &Series, space: &C, x: Elem) -> Series {
    let mut out = Series::zero();
    for (s, &a) in &f.terms {
        out.accumulate(space, s.clone(), space.act(a, x));
    }
    out
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}X^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

struct SeriesDisplay<'a, C: ?Sized> {
    series: &'a Series,
    space: &'a C,
}

impl<C: CoefficientSpace + ?Sized> fmt::Display for SeriesDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.series.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .series
            .terms()
            .map(|(e, c)| format!("({})X^{e}", self.space.name(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TermRecord<'a> {
    exponent: &'a MonoidElement,
    coefficient: Elem,
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (exponent, &coefficient) in &self.terms {
            seq.serialize_element(&TermRecord { exponent, coefficient })?;
        }
        seq.end()
    }
}
