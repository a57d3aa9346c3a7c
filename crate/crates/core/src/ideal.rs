//! Ideals of finite rings: generation, products, primality and prime
//! avoidance.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing};

/// Additive subgroup generated by `gens` under the group law `add`.
pub(crate) fn additive_span(
    size: usize,
    zero: Elem,
    gens: &ElementSet,
    add: impl Fn(Elem, Elem) -> Elem,
) -> ElementSet {
    let gens: Vec<Elem> = gens.iter().filter(|&g| g != zero).collect();
    let mut span = ElementSet::empty(size);
    span.insert(zero);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = add(x, g);
            if span.insert(y) {
                frontier.push(y);
            }
        }
    }
    span
}

pub(crate) fn same_ring(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> bool {
    Arc::ptr_eq(a, b) || a.same_tables(b)
}

/// An ideal of a [`FiniteRing`], stored as its member set.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    members: ElementSet,
}

/// Outcome of a primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum PrimeCheck {
    Prime,
    NotProper,
    /// `a * b` lies in the ideal while neither factor does.
    Violation { a: Elem, b: Elem },
}

impl PrimeCheck {
    pub fn is_prime(&self) -> bool {
        matches!(self, PrimeCheck::Prime)
    }
}

/// Where an ideal sits relative to a finite union of primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Coverage {
    /// Least index `i` with `I ⊆ p_i`.
    Inside { index: usize },
    /// An element of `I` outside every prime.
    NotCovered { witness: Elem },
}

impl Ideal {
    /// Wraps a member set after checking the ideal axioms.
    pub fn from_members(ring: &Arc<FiniteRing>, members: ElementSet) -> Result<Self> {
        if members.domain() != ring.size() {
            return Err(Error::Mismatch("member set domain differs from ring size"));
        }
        if !members.contains(ring.zero()) {
            return Err(Error::NotAnIdeal("missing zero".into()));
        }
        for a in members.iter() {
            for b in members.iter() {
                if !members.contains(ring.add(a, b)) {
                    return Err(Error::NotAnIdeal(format!("{a} + {b} escapes")));
                }
            }
            for r in ring.elements() {
                if !members.contains(ring.mul(r, a)) {
                    return Err(Error::NotAnIdeal(format!("{r} * {a} escapes")));
                }
            }
        }
        Ok(Self { ring: Arc::clone(ring), members })
    }

    pub(crate) fn from_members_unchecked(ring: &Arc<FiniteRing>, members: ElementSet) -> Self {
        Self { ring: Arc::clone(ring), members }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        Self::from_members_unchecked(ring, ElementSet::from_iter_in(ring.size(), [ring.zero()]))
    }

    pub fn unit(ring: &Arc<FiniteRing>) -> Self {
        Self::from_members_unchecked(ring, ElementSet::full(ring.size()))
    }

    /// Smallest ideal containing `gens`. An empty list gives `(0)`.
    pub fn generated(ring: &Arc<FiniteRing>, gens: &[Elem]) -> Result<Self> {
        let mut products = ElementSet::empty(ring.size());
        for &g in gens {
            if g >= ring.size() {
                return Err(Error::ElementOutOfRange { element: g, size: ring.size() });
            }
            for r in ring.elements() {
                products.insert(ring.mul(r, g));
            }
        }
        Ok(Self::span_of(ring, &products))
    }

    /// Additive span of a multiplicatively closed set of products.
    fn span_of(ring: &Arc<FiniteRing>, products: &ElementSet) -> Self {
        let members = additive_span(ring.size(), ring.zero(), products, |a, b| ring.add(a, b));
        Self::from_members_unchecked(ring, members)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(self.ring.one())
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Mismatch("ideals of different rings"))
        }
    }

    /// The ideal generated by all products `a * b`, `a ∈ self`, `b ∈ other`.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut products = ElementSet::empty(self.ring.size());
        for a in self.members.iter() {
            for b in other.members.iter() {
                products.insert(self.ring.mul(a, b));
            }
        }
        Ok(Self::span_of(&self.ring, &products))
    }

    /// `self^k`, with `self^0 = R`.
    pub fn power(&self, k: usize) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        Ok(Self::from_members_unchecked(&self.ring, self.members.intersection(&other.members)))
    }

    /// Primality by exhaustive scan; a violation reports the least pair.
    pub fn prime_check(&self) -> PrimeCheck {
        if !self.is_proper() {
            return PrimeCheck::NotProper;
        }
        let r = &self.ring;
        for a in r.elements().filter(|&a| !self.contains(a)) {
            for b in r.elements().filter(|&b| !self.contains(b)) {
                if self.contains(r.mul(a, b)) {
                    return PrimeCheck::Violation { a, b };
                }
            }
        }
        PrimeCheck::Prime
    }

    pub fn is_prime(&self) -> bool {
        self.prime_check().is_prime()
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.members == other.members
    }
}

impl Eq for Ideal {}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.members)
    }
}

impl Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

/// Locates `ideal` inside one of `primes`, or exhibits an element outside
/// their union.
///
/// Every entry of `primes` must be prime. By prime avoidance, an ideal
/// inside the union lies inside a single member; failing that is reported
/// as [`Error::Precondition`].
pub fn prime_avoidance_locate(ideal: &Ideal, primes: &[Ideal]) -> Result<Coverage> {
    for (i, p) in primes.iter().enumerate() {
        ideal.check_same(p)?;
        if !p.is_prime() {
            return Err(Error::NotPrimeIdeal(i));
        }
    }
    if let Some(i) = primes.iter().position(|p| ideal.is_subset(p)) {
        return Ok(Coverage::Inside { index: i });
    }
    let witness = ideal.members.iter().find(|&a| !primes.iter().any(|p| p.contains(a)));
    match witness {
        Some(witness) => Ok(Coverage::NotCovered { witness }),
        None => Err(Error::Precondition(
            "ideal covered by the union but by no single prime".into(),
        )),
    }
}

/// Maximal ideals among those contained in `bound`, found by greedy
/// saturation from every principal ideal `(z) ⊆ bound`.
///
/// Each run adds any `z' ∈ bound` keeping the generated ideal inside
/// `bound`; a single pass in index order reaches a maximal element because a
/// rejected `z'` stays rejected as the ideal grows. Results are deduplicated,
/// restricted to inclusion-maximal ones and sorted.
pub fn maximal_ideals_inside(ring: &Arc<FiniteRing>, bound: &ElementSet) -> Vec<Ideal> {
    let mut found: Vec<Ideal> = Vec::new();
    for z in bound.iter() {
        let mut current = Ideal::generated(ring, &[z]).expect("in range");
        if !current.members.is_subset(bound) {
            continue;
        }
        for w in bound.iter() {
            if current.contains(w) {
                continue;
            }
            let mut gens: Vec<Elem> = current.members.iter().collect();
            gens.push(w);
            let grown = Ideal::generated(ring, &gens).expect("in range");
            if grown.members.is_subset(bound) {
                current = grown;
            }
        }
        if !found.contains(&current) {
            found.push(current);
        }
    }
    let maximal: Vec<Ideal> = found
        .iter()
        .filter(|i| !found.iter().any(|j| j != *i && i.is_subset(j)))
        .cloned()
        .collect();
    let mut maximal = maximal;
    maximal.sort();
    maximal
}

/// All prime ideals of a finite ring. In a finite ring these are exactly the
/// maximal ideals, i.e. the maximal ideals inside the set of non-units.
pub fn prime_ideals(ring: &Arc<FiniteRing>) -> Vec<Ideal> {
    let nonunits = ElementSet::from_iter_in(
        ring.size(),
        ring.elements()
            .filter(|&a| !ring.elements().any(|b| ring.mul(a, b) == ring.one())),
    );
    maximal_ideals_inside(ring, &nonunits)
        .into_iter()
        .filter(|p| p.is_prime())
        .collect()
}

impl FiniteRing {
    /// `R / I`; elements are the additive cosets of `I`, indexed in order of
    /// their least representative.
    pub fn quotient(&self, ideal: &Ideal) -> Result<FiniteRing> {
        if !ideal.ring.same_tables(self) {
            return Err(Error::Mismatch("ideal of a different ring"));
        }
        Ideal::from_members(ideal.ring(), ideal.members.clone())?;
        let n = self.size();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in self.elements() {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(a);
            for i in ideal.members.iter() {
                coset_of[self.add(a, i)] = idx;
            }
        }
        let q = reps.len();
        let mut add = Vec::with_capacity(q * q);
        let mut mul = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                add.push(coset_of[self.add(a, b)] as u32);
                mul.push(coset_of[self.mul(a, b)] as u32);
            }
        }
        let names = reps.iter().map(|&a| self.name(a).to_string()).collect();
        let members: Vec<String> = ideal.members.iter().map(|a| self.name(a).to_string()).collect();
        let ring = FiniteRing::from_flat_unchecked(
            q,
            add,
            mul,
            coset_of[self.zero()],
            coset_of[self.one()],
            format!("{}/({})", self.label(), members.join(",")),
            names,
        );
        ring.audit()?;
        Ok(ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zmod(n).unwrap())
    }

    fn set(ring: &Arc<FiniteRing>, xs: &[usize]) -> ElementSet {
        ElementSet::from_iter_in(ring.size(), xs.iter().copied())
    }

    #[test]
    fn generation_examples() {
        let r = z(6);
        assert_eq!(Ideal::generated(&r, &[2, 3]).unwrap().len(), 6);
        assert_eq!(Ideal::generated(&r, &[2]).unwrap().members().to_vec(), vec![0, 2, 4]);
        assert_eq!(Ideal::generated(&r, &[]).unwrap().members().to_vec(), vec![0]);
        assert!(Ideal::generated(&r, &[6]).is_err());
    }

    #[test]
    fn products() {
        let r = z(6);
        let two = Ideal::generated(&r, &[2]).unwrap();
        let three = Ideal::generated(&r, &[3]).unwrap();
        assert_eq!(two.product(&three).unwrap(), Ideal::zero(&r));
        assert_eq!(two.product(&Ideal::unit(&r)).unwrap(), two);
        assert_eq!(two.power(0), Ideal::unit(&r));
        let other = z(4);
        assert!(two.product(&Ideal::zero(&other)).is_err());
    }

    #[test]
    fn truncated_square_of_maximal() {
        let t = Arc::new(FiniteRing::truncated_poly(2, 2, 3).unwrap());
        let a = t.element_by_name("a").unwrap();
        let b = t.element_by_name("b").unwrap();
        let m = Ideal::generated(&t, &[a, b]).unwrap();
        let m2 = m.product(&m).unwrap();
        assert_eq!(m2.len(), 8);
        let expected = Ideal::generated(
            &t,
            &["a^2", "ab", "b^2"].map(|s| t.element_by_name(s).unwrap()),
        )
        .unwrap();
        assert_eq!(m2, expected);
        assert_eq!(m2.product(&m).unwrap(), Ideal::zero(&t));
    }

    #[test]
    fn primality() {
        let r = z(6);
        assert!(Ideal::generated(&r, &[2]).unwrap().is_prime());
        assert_eq!(Ideal::zero(&r).prime_check(), PrimeCheck::Violation { a: 2, b: 3 });
        assert_eq!(Ideal::unit(&r).prime_check(), PrimeCheck::NotProper);
        assert!(Ideal::zero(&z(5)).is_prime());
    }

    #[test]
    fn from_members_rejects_non_ideals() {
        let r = z(6);
        assert!(Ideal::from_members(&r, set(&r, &[0, 2])).is_err());
        assert!(Ideal::from_members(&r, set(&r, &[2, 4])).is_err());
        assert!(Ideal::from_members(&r, set(&r, &[0, 3])).is_ok());
    }

    #[test]
    fn prime_avoidance_examples() {
        let r = z(6);
        let p2 = Ideal::generated(&r, &[2]).unwrap();
        let p3 = Ideal::generated(&r, &[3]).unwrap();
        let primes = [p2.clone(), p3.clone()];
        assert_eq!(prime_avoidance_locate(&p2, &primes).unwrap(), Coverage::Inside { index: 0 });
        assert_eq!(
            prime_avoidance_locate(&Ideal::unit(&r), &primes).unwrap(),
            Coverage::NotCovered { witness: 1 }
        );
        let r12 = z(12);
        let primes12 = [Ideal::generated(&r12, &[2]).unwrap(), Ideal::generated(&r12, &[3]).unwrap()];
        let i3 = Ideal::generated(&r12, &[3]).unwrap();
        assert_eq!(prime_avoidance_locate(&i3, &primes12).unwrap(), Coverage::Inside { index: 1 });
        assert_eq!(
            prime_avoidance_locate(&p2, &[Ideal::zero(&r)]).unwrap_err(),
            Error::NotPrimeIdeal(0)
        );
    }

    #[test]
    fn quotients() {
        let r = z(6);
        let q = r.quotient(&Ideal::generated(&r, &[3]).unwrap()).unwrap();
        assert_eq!(q.size(), 3);
        assert!(q.same_tables(&FiniteRing::zmod(3).unwrap()));
        assert!(r.quotient(&Ideal::zero(&r)).unwrap().same_tables(&r));
        assert!(r.quotient(&Ideal::unit(&r)).unwrap().is_zero_ring());
    }

    #[test]
    fn prime_ideals_of_small_rings() {
        let r = z(12);
        let primes: Vec<Vec<usize>> = prime_ideals(&r).iter().map(|p| p.members().to_vec()).collect();
        assert_eq!(primes, vec![vec![0, 2, 4, 6, 8, 10], vec![0, 3, 6, 9]]);
        assert_eq!(prime_ideals(&z(5)), vec![Ideal::zero(&z(5))]);
        assert!(prime_ideals(&z(1)).is_empty());
        let t = Arc::new(FiniteRing::truncated_poly(2, 2, 3).unwrap());
        assert_eq!(prime_ideals(&t).len(), 1);
        assert_eq!(prime_ideals(&t)[0].len(), 32);
    }
}
