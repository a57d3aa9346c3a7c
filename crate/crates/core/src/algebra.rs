//! Semigroup rings `R[S]` and semigroup modules `M[S]`: products, contents,
//! Dedekind–Mertens exponents, McCoy witnesses, the content test for
//! zero-divisors, extended ideals and the two counterexample constructions
//! for monoids that are not cancellative or not torsion-free.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{same_ring, Ideal};
use crate::module::{FiniteModule, Submodule};
use crate::monoid::{Cancellation, Monoid, MonoidElement};
use crate::ring::{Elem, FiniteRing};
use crate::series::{multiply, scale_constant, Series};

/// The semigroup ring `R[S]`.
#[derive(Clone, Debug)]
pub struct SemigroupRing {
    ring: Arc<FiniteRing>,
    monoid: Arc<Monoid>,
}

impl SemigroupRing {
    pub fn new(ring: &Arc<FiniteRing>, monoid: &Arc<Monoid>) -> Self {
        Self { ring: Arc::clone(ring), monoid: Arc::clone(monoid) }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn series(&self, terms: impl IntoIterator<Item = (MonoidElement, Elem)>) -> Result<Series> {
        Series::from_terms(&*self.ring, &self.monoid, terms)
    }

    pub fn constant(&self, c: Elem) -> Result<Series> {
        Series::constant(&*self.ring, &self.monoid, c)
    }

    pub fn validate(&self, f: &Series) -> Result<()> {
        f.validate(&*self.ring, &self.monoid)
    }

    pub fn multiply(&self, f: &Series, g: &Series) -> Result<Series> {
        self.validate(f)?;
        self.validate(g)?;
        Ok(multiply(&self.monoid, f, &*self.ring, g))
    }

    pub fn add(&self, f: &Series, g: &Series) -> Series {
        f.add(g, &*self.ring)
    }

    pub fn neg(&self, f: &Series) -> Series {
        f.neg(&*self.ring)
    }

    /// `c(f)`: the ideal generated by the coefficients.
    pub fn content(&self, f: &Series) -> Result<Ideal> {
        self.validate(f)?;
        let gens: Vec<Elem> = f.coefficients().collect();
        Ideal::generated(&self.ring, &gens)
    }

    pub fn extend(&self, base: &Ideal) -> Result<ExtendedIdeal> {
        if !same_ring(base.ring(), &self.ring) {
            return Err(Error::Mismatch("ideal of a different ring"));
        }
        Ok(ExtendedIdeal { base: base.clone(), monoid: Arc::clone(&self.monoid) })
    }
}

/// `p[S]`: series whose coefficients all lie in `p`.
#[derive(Clone, Debug)]
pub struct ExtendedIdeal {
    base: Ideal,
    monoid: Arc<Monoid>,
}

impl ExtendedIdeal {
    pub fn base(&self) -> &Ideal {
        &self.base
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn contains(&self, f: &Series) -> Result<bool> {
        f.validate(&**self.base.ring(), &self.monoid)?;
        Ok(self.contains_unchecked(f))
    }

    pub(crate) fn contains_unchecked(&self, f: &Series) -> bool {
        f.coefficients().all(|c| self.base.contains(c))
    }
}

/// One step of the Dedekind–Mertens search.
#[derive(Debug, Clone, Serialize)]
pub struct DmStep {
    pub k: usize,
    /// `c(f)^k c(g)`
    pub lhs: Submodule,
    /// `c(f)^(k-1) c(fg)`
    pub rhs: Submodule,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DmResult {
    /// Least `k` with equality; `None` if the cap ran out first.
    pub k_min: Option<usize>,
    pub chain: Vec<DmStep>,
    pub cap_used: usize,
}

/// Outcome of the content test for `f ∈ Z_{R[S]}(M[S])`.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum ZeroDivisorVerdict {
    /// `Ann_M(c(f)) ≠ 0`; `witness` is its least nonzero member and
    /// satisfies `f · witness = 0`.
    ZeroDivisor { witness: Elem, annihilator: Submodule },
    /// `Ann_M(c(f)) = 0`.
    Regular { annihilator: Submodule },
}

impl ZeroDivisorVerdict {
    pub fn is_zero_divisor(&self) -> bool {
        matches!(self, ZeroDivisorVerdict::ZeroDivisor { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonCancellativeCounterexample {
    pub s: MonoidElement,
    pub t: MonoidElement,
    pub u: MonoidElement,
    pub q: Elem,
    /// `X^s`
    pub f: Series,
    /// `q X^t - q X^u`
    pub g: Series,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionCounterexample {
    pub s: MonoidElement,
    pub t: MonoidElement,
    pub q: Elem,
    /// Least `k` with `k·s = k·t`.
    pub k: usize,
    /// `Σ_{i<k} X^{(k-i-1)s + it}`
    pub h: Series,
    /// `q X^s - q X^t`
    pub g: Series,
    /// The `k` exponents of `h`, in construction order.
    pub exponents: Vec<MonoidElement>,
}

/// The semigroup module `M[S]` over `R[S]`.
#[derive(Clone, Debug)]
pub struct SemigroupModule {
    module: Arc<FiniteModule>,
    monoid: Arc<Monoid>,
    hypotheses: std::result::Result<(), Error>,
}

impl SemigroupModule {
    pub fn new(module: &Arc<FiniteModule>, monoid: &Arc<Monoid>) -> Self {
        Self {
            module: Arc::clone(module),
            monoid: Arc::clone(monoid),
            hypotheses: monoid.require_cancellative_torsion_free(),
        }
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.module.ring()
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn scalars(&self) -> SemigroupRing {
        SemigroupRing::new(self.ring(), &self.monoid)
    }

    /// Whether the monoid is cancellative and torsion-free.
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.is_ok()
    }

    pub fn require_hypotheses(&self) -> Result<()> {
        self.hypotheses.clone()
    }

    fn require_nonzero(&self) -> Result<()> {
        if self.module.is_zero_module() {
            Err(Error::ZeroModule)
        } else {
            Ok(())
        }
    }

    /// A series with module coefficients.
    pub fn series(&self, terms: impl IntoIterator<Item = (MonoidElement, Elem)>) -> Result<Series> {
        Series::from_terms(&*self.module, &self.monoid, terms)
    }

    /// A series with ring coefficients.
    pub fn ring_series(&self, terms: impl IntoIterator<Item = (MonoidElement, Elem)>) -> Result<Series> {
        Series::from_terms(&**self.ring(), &self.monoid, terms)
    }

    pub fn validate(&self, g: &Series) -> Result<()> {
        g.validate(&*self.module, &self.monoid)
    }

    pub fn validate_scalar(&self, f: &Series) -> Result<()> {
        f.validate(&**self.ring(), &self.monoid)
    }

    /// `f · g` for `f ∈ R[S]`, `g ∈ M[S]`.
    pub fn act(&self, f: &Series, g: &Series) -> Result<Series> {
        self.validate_scalar(f)?;
        self.validate(g)?;
        Ok(self.act_unchecked(f, g))
    }

    pub(crate) fn act_unchecked(&self, f: &Series, g: &Series) -> Series {
        multiply(&self.monoid, f, &*self.module, g)
    }

    pub fn add(&self, g: &Series, h: &Series) -> Series {
        g.add(h, &*self.module)
    }

    pub fn neg(&self, g: &Series) -> Series {
        g.neg(&*self.module)
    }

    /// Whether `f · m = 0`, i.e. every coefficient of `f` kills `m`.
    pub fn kills(&self, f: &Series, m: Elem) -> bool {
        scale_constant(f, &*self.module, m).is_zero()
    }

    /// `c(g)`: the submodule generated by the coefficients.
    pub fn content(&self, g: &Series) -> Result<Submodule> {
        self.validate(g)?;
        Ok(self.content_unchecked(g))
    }

    pub(crate) fn content_unchecked(&self, g: &Series) -> Submodule {
        let gens: Vec<Elem> = g.coefficients().collect();
        Submodule::generated(&self.module, &gens).expect("validated coefficients")
    }

    pub(crate) fn scalar_content_unchecked(&self, f: &Series) -> Ideal {
        let gens: Vec<Elem> = f.coefficients().collect();
        Ideal::generated(self.ring(), &gens).expect("validated coefficients")
    }

    /// Least `k ≥ 1` with `c(f)^k c(g) = c(f)^(k-1) c(fg)`.
    ///
    /// The default cap is `|support(g)| + 1`. Running out of cap yields
    /// `k_min = None`, which is inconclusive.
    pub fn dedekind_mertens(&self, f: &Series, g: &Series, cap: Option<usize>) -> Result<DmResult> {
        self.require_hypotheses()?;
        self.validate_scalar(f)?;
        self.validate(g)?;
        let cap = cap.unwrap_or(g.support_len() + 1);
        let fg = self.act_unchecked(f, g);
        Ok(dedekind_mertens_chain(
            &self.scalar_content_unchecked(f),
            &self.content_unchecked(g),
            &self.content_unchecked(&fg),
            cap,
        ))
    }

    /// A nonzero `m ∈ M` with `f · m = 0`, given `f g = 0` for some `g ≠ 0`.
    ///
    /// Takes the least `t` with `c(f)^t c(g) = 0` and returns the least
    /// nonzero member of `c(f)^(t-1) c(g)`.
    ///
    /// # Panics
    ///
    /// If the returned element fails to satisfy `f · m = 0`, which cannot
    /// happen for a cancellative torsion-free monoid.
    pub fn mccoy_witness(&self, f: &Series, g: &Series) -> Result<Elem> {
        self.require_hypotheses()?;
        self.validate_scalar(f)?;
        self.validate(g)?;
        if g.is_zero() {
            return Err(Error::Precondition("g must be nonzero".into()));
        }
        if !self.act_unchecked(f, g).is_zero() {
            return Err(Error::Precondition("f g is not zero".into()));
        }
        Ok(self.mccoy_unchecked(&self.scalar_content_unchecked(f), &self.content_unchecked(g), f))
    }

    pub(crate) fn mccoy_unchecked(&self, cf: &Ideal, cg: &Submodule, f: &Series) -> Elem {
        match self.mccoy_search(cf, cg, f) {
            Some(m) => m,
            None => panic!("McCoy recipe failed although f g = 0"),
        }
    }

    /// The recipe behind [`Self::mccoy_witness`]; `None` if the chain
    /// `c(f)^t c(g)` stabilises away from zero or the candidate does not
    /// annihilate `f`.
    pub(crate) fn mccoy_search(&self, cf: &Ideal, cg: &Submodule, f: &Series) -> Option<Elem> {
        let mut current = cg.clone();
        // c(f)^t c(g) is a descending chain; it stabilises within |M| steps
        for _ in 0..=self.module.size() {
            let next = current.scaled_by(cf).expect("same ring");
            if next.is_zero() {
                let m = current.first_nonzero()?;
                return self.kills(f, m).then_some(m);
            }
            if next == current {
                return None;
            }
            current = next;
        }
        None
    }

    /// Least nonzero `m` with `f · m = 0`, by exhausting `M`.
    pub fn search_annihilated_element(&self, f: &Series) -> Option<Elem> {
        self.module.nonzero_elements().find(|&m| self.kills(f, m))
    }

    /// Decides `f ∈ Z_{R[S]}(M[S])` through `Ann_M(c(f))`.
    pub fn zero_divisor_test(&self, f: &Series) -> Result<ZeroDivisorVerdict> {
        self.require_hypotheses()?;
        self.require_nonzero()?;
        self.validate_scalar(f)?;
        Ok(self.zero_divisor_unchecked(f))
    }

    pub(crate) fn zero_divisor_unchecked(&self, f: &Series) -> ZeroDivisorVerdict {
        // Ann of the coefficients equals Ann of the ideal they generate
        let annihilator = self.module.annihilator_of(&f.coefficient_set(self.ring().size()));
        match annihilator.first_nonzero() {
            Some(witness) => {
                assert!(self.kills(f, witness), "content annihilator {witness} does not kill f");
                ZeroDivisorVerdict::ZeroDivisor { witness, annihilator }
            }
            None => ZeroDivisorVerdict::Regular { annihilator },
        }
    }

    /// `f = X^s`, `g = q X^t - q X^u` from a cancellation failure
    /// `s + t = s + u`, `t ≠ u`. Then `f g = 0` while `f · m ≠ 0` for every
    /// nonzero `m`; both facts are replayed before returning.
    pub fn noncancellative_counterexample(
        &self,
        s: &MonoidElement,
        t: &MonoidElement,
        u: &MonoidElement,
        q: Elem,
    ) -> Result<NonCancellativeCounterexample> {
        let monoid = &self.monoid;
        if monoid.add(s, t)? != monoid.add(s, u)? {
            return Err(Error::Precondition(format!("{s}+{t} differs from {s}+{u}")));
        }
        if t == u {
            return Err(Error::Precondition("t and u must differ".into()));
        }
        self.check_q(q)?;
        let f = self.ring_series([(s.clone(), self.ring().one())])?;
        let g = self.series([(t.clone(), q), (u.clone(), self.module.neg(q))])?;
        assert!(!g.is_zero(), "g vanished");
        assert!(self.act_unchecked(&f, &g).is_zero(), "X^s (qX^t - qX^u) is not zero");
        assert!(
            self.search_annihilated_element(&f).is_none(),
            "X^s annihilates a nonzero element"
        );
        Ok(NonCancellativeCounterexample { s: s.clone(), t: t.clone(), u: u.clone(), q, f, g })
    }

    /// The factorisation `q X^{ks} - q X^{kt} = h · (q X^s - q X^t)` for a
    /// cancellative monoid with `k·s = k·t`, `s ≠ t`. Replays that `h` has
    /// `k` distinct exponents, `g ≠ 0` and `h g = 0`.
    pub fn torsion_counterexample(&self, s: &MonoidElement, t: &MonoidElement, q: Elem) -> Result<TorsionCounterexample> {
        let monoid = &self.monoid;
        monoid.check(s)?;
        monoid.check(t)?;
        if s == t {
            return Err(Error::Precondition("s and t must differ".into()));
        }
        if let Cancellation::Collision { .. } = monoid.cancellation() {
            return Err(Error::Hypothesis("torsion construction needs a cancellative monoid".into()));
        }
        self.check_q(q)?;
        let bound = monoid.order().map(|o| o * o).unwrap_or(0);
        let k = (1..=bound)
            .find(|&k| monoid.multiple(k, s).ok() == monoid.multiple(k, t).ok())
            .ok_or_else(|| Error::Precondition(format!("no k <= {bound} with k·{s} = k·{t}")))?;
        let exponents: Vec<MonoidElement> = (0..k)
            .map(|i| {
                let a = monoid.multiple(k - i - 1, s).expect("checked");
                let b = monoid.multiple(i, t).expect("checked");
                monoid.add_unchecked(&a, &b)
            })
            .collect();
        let one = self.ring().one();
        let h = self.ring_series(exponents.iter().map(|e| (e.clone(), one)))?;
        let g = self.series([(s.clone(), q), (t.clone(), self.module.neg(q))])?;
        assert_eq!(h.support_len(), k, "exponents of h collide");
        assert!(!g.is_zero(), "g vanished");
        assert!(self.act_unchecked(&h, &g).is_zero(), "h (qX^s - qX^t) is not zero");
        Ok(TorsionCounterexample { s: s.clone(), t: t.clone(), q, k, h, g, exponents })
    }

    fn check_q(&self, q: Elem) -> Result<()> {
        if q >= self.module.size() {
            return Err(Error::ElementOutOfRange { element: q, size: self.module.size() });
        }
        if q == self.module.zero() {
            return Err(Error::Precondition("q must be nonzero".into()));
        }
        Ok(())
    }
}

/// The Dedekind–Mertens chain from precomputed contents.
pub fn dedekind_mertens_chain(cf: &Ideal, cg: &Submodule, cfg: &Submodule, cap: usize) -> DmResult {
    let mut chain = Vec::new();
    // lhs_k = c(f)^k c(g), rhs_k = c(f)^(k-1) c(fg)
    let mut lhs = cg.scaled_by(cf).expect("same ring");
    let mut rhs = cfg.clone();
    for k in 1..=cap {
        let equal = lhs == rhs;
        chain.push(DmStep { k, lhs: lhs.clone(), rhs: rhs.clone(), equal });
        if equal {
            return DmResult { k_min: Some(k), chain, cap_used: cap };
        }
        lhs = lhs.scaled_by(cf).expect("same ring");
        rhs = rhs.scaled_by(cf).expect("same ring");
    }
    DmResult { k_min: None, chain, cap_used: cap }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: i64) -> MonoidElement {
        MonoidElement::vector([i])
    }

    fn idx(i: usize) -> MonoidElement {
        MonoidElement::Index(i)
    }

    fn over(ring: FiniteRing, monoid: Monoid) -> SemigroupModule {
        let ring = Arc::new(ring);
        let module = Arc::new(FiniteModule::ring_as_module(&ring));
        SemigroupModule::new(&module, &Arc::new(monoid))
    }

    fn z6n() -> SemigroupModule {
        over(FiniteRing::zmod(6).unwrap(), Monoid::free(1).unwrap())
    }

    fn truncated() -> SemigroupModule {
        over(FiniteRing::truncated_poly(2, 2, 3).unwrap(), Monoid::free(1).unwrap())
    }

    #[test]
    fn contents() {
        let ms = z6n();
        let rs = ms.scalars();
        let f = rs.series([(x(0), 2), (x(1), 3)]).unwrap();
        assert_eq!(rs.content(&f).unwrap(), Ideal::unit(ms.ring()));
        assert_eq!(rs.content(&Series::zero()).unwrap(), Ideal::zero(ms.ring()));
        let g = ms.series([(x(1), 2), (x(3), 4)]).unwrap();
        assert_eq!(ms.content(&g).unwrap().members().to_vec(), vec![0, 2, 4]);
    }

    #[test]
    fn dm_examples() {
        let ms = z6n();
        let f = ms.ring_series([(x(0), 2), (x(1), 2)]).unwrap();
        let g = ms.series([(x(0), 3)]).unwrap();
        let dm = ms.dedekind_mertens(&f, &g, None).unwrap();
        assert_eq!(dm.k_min, Some(1));
        assert!(dm.chain[0].lhs.is_zero());

        let one = ms.ring_series([(x(0), 1)]).unwrap();
        let g = ms.series([(x(0), 2), (x(4), 3)]).unwrap();
        assert_eq!(ms.dedekind_mertens(&one, &g, None).unwrap().k_min, Some(1));
    }

    #[test]
    fn dm_truncated_needs_two() {
        let ms = truncated();
        let t = ms.ring();
        let a = t.element_by_name("a").unwrap();
        let b = t.element_by_name("b").unwrap();
        let f = ms.ring_series([(x(0), a), (x(1), b)]).unwrap();
        let g = ms.series([(x(0), a), (x(1), b)]).unwrap();
        let dm = ms.dedekind_mertens(&f, &g, None).unwrap();
        assert_eq!(dm.k_min, Some(2));
        assert_eq!(dm.chain.len(), 2);
        let ab = t.element_by_name("ab").unwrap();
        assert!(dm.chain[0].lhs.contains(ab));
        assert!(!dm.chain[0].rhs.contains(ab));
        assert!(!dm.chain[0].equal);
        assert!(dm.chain[1].lhs.is_zero() && dm.chain[1].rhs.is_zero());

        let capped = ms.dedekind_mertens(&f, &g, Some(1)).unwrap();
        assert_eq!(capped.k_min, None);
        assert_eq!(capped.chain.len(), 1);
    }

    #[test]
    fn dm_rejects_bad_monoid() {
        let ms = over(FiniteRing::zmod(6).unwrap(), Monoid::saturating(2).unwrap());
        let f = ms.ring_series([(idx(0), 1)]).unwrap();
        assert!(matches!(ms.dedekind_mertens(&f, &f, None), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn mccoy_examples() {
        let ms = z6n();
        let f = ms.ring_series([(x(0), 2), (x(1), 2)]).unwrap();
        let g = ms.series([(x(0), 3)]).unwrap();
        assert_eq!(ms.mccoy_witness(&f, &g).unwrap(), 3);
        let f = ms.ring_series([(x(0), 3), (x(1), 3)]).unwrap();
        let g = ms.series([(x(0), 2)]).unwrap();
        assert_eq!(ms.mccoy_witness(&f, &g).unwrap(), 2);
        assert!(ms.mccoy_witness(&f, &Series::zero()).is_err());
        let unit = ms.ring_series([(x(0), 1)]).unwrap();
        assert!(ms.mccoy_witness(&unit, &g).is_err());

        let ms = truncated();
        let t = ms.ring();
        let name = |s| t.element_by_name(s).unwrap();
        let f = ms.ring_series([(x(0), name("a")), (x(1), name("b"))]).unwrap();
        let g = ms.series([(x(0), name("ab"))]).unwrap();
        assert_eq!(ms.mccoy_witness(&f, &g).unwrap(), name("ab"));
    }

    #[test]
    fn zero_divisor_test_examples() {
        let ms = z6n();
        let f = ms.ring_series([(x(0), 2), (x(1), 4)]).unwrap();
        match ms.zero_divisor_test(&f).unwrap() {
            ZeroDivisorVerdict::ZeroDivisor { witness, .. } => assert_eq!(witness, 3),
            other => panic!("{other:?}"),
        }
        let f = ms.ring_series([(x(0), 1), (x(1), 2)]).unwrap();
        assert!(!ms.zero_divisor_test(&f).unwrap().is_zero_divisor());

        let ms = over(FiniteRing::zmod(4).unwrap(), Monoid::free(1).unwrap());
        let f = ms.ring_series([(x(0), 2)]).unwrap();
        match ms.zero_divisor_test(&f).unwrap() {
            ZeroDivisorVerdict::ZeroDivisor { witness, .. } => assert_eq!(witness, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn extended_ideal_membership() {
        let ms = z6n();
        let rs = ms.scalars();
        let p = rs.extend(&Ideal::generated(ms.ring(), &[2]).unwrap()).unwrap();
        assert!(p.contains(&rs.series([(x(0), 2), (x(1), 4)]).unwrap()).unwrap());
        assert!(!p.contains(&rs.series([(x(0), 2), (x(1), 3)]).unwrap()).unwrap());
        assert!(p.contains(&Series::zero()).unwrap());
    }

    #[test]
    fn noncancellative_construction() {
        let ms = over(FiniteRing::zmod(6).unwrap(), Monoid::saturating(2).unwrap());
        let ce = ms.noncancellative_counterexample(&idx(2), &idx(0), &idx(1), 1).unwrap();
        assert_eq!(ce.f, ms.ring_series([(idx(2), 1)]).unwrap());
        assert_eq!(ce.g, ms.series([(idx(0), 1), (idx(1), 5)]).unwrap());
        let ce3 = ms.noncancellative_counterexample(&idx(2), &idx(0), &idx(1), 3).unwrap();
        assert_eq!(ce3.g, ms.series([(idx(0), 3), (idx(1), 3)]).unwrap());
        assert!(ms.noncancellative_counterexample(&idx(0), &idx(0), &idx(1), 1).is_err());
        assert!(ms.noncancellative_counterexample(&idx(2), &idx(0), &idx(1), 0).is_err());
    }

    #[test]
    fn torsion_construction() {
        let ms = over(FiniteRing::zmod(6).unwrap(), Monoid::cyclic_group(2).unwrap());
        let ce = ms.torsion_counterexample(&idx(1), &idx(0), 1).unwrap();
        assert_eq!(ce.k, 2);
        assert_eq!(ce.h, ms.ring_series([(idx(0), 1), (idx(1), 1)]).unwrap());
        assert_eq!(ce.g, ms.series([(idx(1), 1), (idx(0), 5)]).unwrap());

        let ms3 = over(FiniteRing::zmod(6).unwrap(), Monoid::cyclic_group(3).unwrap());
        let ce = ms3.torsion_counterexample(&idx(1), &idx(0), 1).unwrap();
        assert_eq!(ce.k, 3);
        assert_eq!(ce.exponents, vec![idx(2), idx(1), idx(0)]);
        assert!(ms3.torsion_counterexample(&idx(1), &idx(1), 1).is_err());
    }
}
