use std::fmt;
use std::time::Duration;

use serde::Serialize;

use crate::algebra::{dedekind_mertens_chain, NonCancellativeCounterexample, SemigroupModule, TorsionCounterexample};
use crate::analysis::{PropertyAReport, Separation};
use crate::ideal::Ideal;
use crate::module::{AssociatedPrime, Submodule, SubmoduleClassification};
use crate::ring::Elem;
use crate::series::Series;

use super::window::SupportWindow;

/// The statements the verifiers check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statement {
    /// Cancellative + torsion-free ⟺ Dedekind–Mertens ⟺ McCoy ⟺ content test.
    MonoidEquivalence,
    /// Domains, primes and associated primes extend to `R[S]`, `M[S]`.
    ExtendedPrimes,
    /// Prime and primary submodules extend to `M[S]`.
    SubmoduleExtension,
    /// `f` is `M[S]`-regular iff `c(f)` is `M`-regular.
    ContentRegularity,
    /// `Z(M[S]) = ∪ p_i[S]`, degree and primality preserved.
    ZeroDivisorTransfer,
    /// Noetherian ⟹ very few ⟹ few zero-divisors, on a finite ring.
    FiniteRingChain,
}

impl Statement {
    pub const ALL: [Statement; 6] = [
        Statement::MonoidEquivalence,
        Statement::ExtendedPrimes,
        Statement::SubmoduleExtension,
        Statement::ContentRegularity,
        Statement::ZeroDivisorTransfer,
        Statement::FiniteRingChain,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Statement::MonoidEquivalence => "monoid-equivalence",
            Statement::ExtendedPrimes => "extended-primes",
            Statement::SubmoduleExtension => "submodule-extension",
            Statement::ContentRegularity => "content-regularity",
            Statement::ZeroDivisorTransfer => "zero-divisor-transfer",
            Statement::FiniteRingChain => "finite-ring-chain",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.id() == id)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A concrete failure of a statement on the window. Each variant replays
/// through the public operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Counterexample {
    /// No `k ≤ cap` with `c(f)^k c(g) = c(f)^(k-1) c(fg)`.
    DedekindMertens { f: Series, g: Series, cap: usize },
    /// `f g = 0`, `g ≠ 0`, yet the content recipe yields no nonzero `m`
    /// with `f · m = 0`.
    McCoy { f: Series, g: Series },
    /// `Ann_M(c(f)) = 0` but `f g = 0` with `g ≠ 0`.
    RegularContentAnnihilates { f: Series, g: Series },
    /// Nonzero `f, g` over a domain with `f g = 0`.
    DomainProduct { f: Series, g: Series },
    /// `f, g ∉ p[S]` but `f g ∈ p[S]`.
    PrimeExtension { prime: Vec<Elem>, f: Series, g: Series },
    /// `f · m = 0` disagrees with `f ∈ p[S]` for an associated pair `(p, m)`.
    AssociatedExtension { prime: Vec<Elem>, witness: Elem, f: Series },
    /// `r x ∈ P[S]`, `x ∉ P[S]`, and the prime (or primary) escape fails.
    SubmoduleExtension { primary: bool, r: Series, x: Series },
    /// Content regularity and the content test disagree, or a window `g`
    /// with `f g = 0` exists for a content-regular `f`.
    Regularity { f: Series, g: Option<Series> },
    /// Content test disagrees with membership in `∪ p_i[S]`.
    ZeroDivisorMembership { f: Series, primes: Vec<Vec<Elem>> },
    /// A finite ring without very few zero-divisors or without a cover.
    FiniteRingChain { very_few: bool, decomposed: bool },
}

impl Counterexample {
    /// Recomputes the violation. `submodule` is required for the
    /// submodule-extension variant.
    pub fn replay(&self, ms: &SemigroupModule, submodule: Option<&Submodule>) -> bool {
        let module = ms.module();
        let ring = ms.ring();
        let rs = ms.scalars();
        let ideal_of = |members: &[Elem]| Ideal::generated(ring, members).ok();
        match self {
            Counterexample::DedekindMertens { f, g, cap } => {
                let Ok(fg) = ms.act(f, g) else { return false };
                let (Ok(cf), Ok(cg), Ok(cfg)) = (rs.content(f), ms.content(g), ms.content(&fg)) else {
                    return false;
                };
                dedekind_mertens_chain(&cf, &cg, &cfg, *cap).k_min.is_none()
            }
            Counterexample::McCoy { f, g } => {
                let (Ok(cf), Ok(cg)) = (rs.content(f), ms.content(g)) else { return false };
                !g.is_zero() && ms.act(f, g).is_ok_and(|p| p.is_zero()) && ms.mccoy_search(&cf, &cg, f).is_none()
            }
            Counterexample::RegularContentAnnihilates { f, g } => {
                !g.is_zero()
                    && ms.act(f, g).is_ok_and(|p| p.is_zero())
                    && rs.content(f).is_ok_and(|c| module.annihilator_of(c.members()).is_zero())
            }
            Counterexample::DomainProduct { f, g } => {
                ring.is_domain() && !f.is_zero() && !g.is_zero() && rs.multiply(f, g).is_ok_and(|p| p.is_zero())
            }
            Counterexample::PrimeExtension { prime, f, g } => {
                let Some(p) = ideal_of(prime) else { return false };
                let Ok(ext) = rs.extend(&p) else { return false };
                let Ok(fg) = rs.multiply(f, g) else { return false };
                p.is_prime()
                    && !ext.contains_unchecked(f)
                    && !ext.contains_unchecked(g)
                    && ext.contains_unchecked(&fg)
            }
            Counterexample::AssociatedExtension { prime, witness, f } => {
                let Some(p) = ideal_of(prime) else { return false };
                let Ok(ext) = rs.extend(&p) else { return false };
                module.annihilator_of_element(*witness).is_ok_and(|a| a == p)
                    && ms.kills(f, *witness) != ext.contains_unchecked(f)
            }
            Counterexample::SubmoduleExtension { primary, r, x } => {
                let Some(sub) = submodule else { return false };
                let Ok(rx) = ms.act(r, x) else { return false };
                let inside = |s: &Series| s.coefficients().all(|c| sub.contains(c));
                if !inside(&rx) || inside(x) {
                    return false;
                }
                let Ok(cr) = rs.content(r) else { return false };
                if *primary {
                    (1..=ring.size()).all(|n| !sub.absorbs_ideal(&cr.power(n)))
                } else {
                    !sub.absorbs_ideal(&cr)
                }
            }
            Counterexample::Regularity { f, g } => {
                let Ok(cf) = rs.content(f) else { return false };
                let content_regular = module.annihilator_of(cf.members()).is_zero();
                let Ok(verdict) = ms.zero_divisor_test(f) else { return false };
                let test_regular = !verdict.is_zero_divisor();
                match g {
                    Some(g) => content_regular && !g.is_zero() && ms.act(f, g).is_ok_and(|p| p.is_zero()),
                    None => content_regular != test_regular,
                }
            }
            Counterexample::ZeroDivisorMembership { f, primes } => {
                let Ok(verdict) = ms.zero_divisor_test(f) else { return false };
                let member = primes.iter().any(|p| f.coefficients().all(|c| p.contains(&c)));
                verdict.is_zero_divisor() != member
            }
            Counterexample::FiniteRingChain { .. } => {
                let very_few = crate::analysis::has_very_few_zero_divisors(module).is_ok_and(|r| r.holds);
                let decomposed = crate::analysis::decompose_zero_divisors(module)
                    .is_ok_and(|d| d.cover().is_some());
                !(very_few && decomposed)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Outcome {
    Pass,
    Counterexample { counterexample: Box<Counterexample> },
    /// The window needs more evaluations than the budget allows.
    Skipped { required: u128, budget: u64 },
}

/// Which side of the monoid equivalence was exercised.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "branch")]
pub enum EquivalenceBranch {
    /// The monoid is cancellative and torsion-free; the content statements
    /// were checked on every window pair.
    HypothesesHold {
        max_dm_exponent: usize,
        pairs_beyond_default_cap: u64,
        annihilating_pairs: u64,
        mccoy_witnesses_verified: u64,
        content_zero_divisors: u64,
    },
    /// `X^s (qX^t - qX^u) = 0` with no McCoy witness, for every `q ≠ 0`.
    NonCancellative { constructions: Vec<NonCancellativeCounterexample> },
    /// `h (qX^s - qX^t) = 0` with no McCoy witness, for every `q ≠ 0`.
    Torsion { constructions: Vec<TorsionCounterexample> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyTransfer {
    /// Whether the classification of `P` in `M` promises the property.
    pub promised: bool,
    /// First window pair `(r, x)` violating the property in `M[S]`.
    pub window_violation: Option<(Series, Series)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "statement")]
pub enum Details {
    MonoidEquivalence(EquivalenceBranch),
    ExtendedPrimes {
        domain: bool,
        /// Nonzero constants with zero product, when `R` is not a domain.
        zero_divisor_constants: Option<(Elem, Elem)>,
        primes: Vec<Ideal>,
        associated: Vec<AssociatedPrime>,
        domain_pairs: u64,
        prime_pairs: u64,
        associated_checks: u64,
    },
    SubmoduleExtension {
        classification: SubmoduleClassification,
        prime: PropertyTransfer,
        primary: PropertyTransfer,
    },
    ContentRegularity {
        property_a: PropertyAReport,
        regular: u64,
        zero_divisors: u64,
        /// Window `f` for which the `g`-search found an annihilated `g`.
        oracle_fired: u64,
    },
    ZeroDivisorTransfer {
        degree: usize,
        primes: Vec<Ideal>,
        very_few: bool,
        property_a: bool,
        primal: bool,
        window_zero_divisors: u64,
        /// Constant witnesses `a X^0 ∈ p_i[S] \ p_j[S]`.
        separations: Vec<Separation>,
        /// `(prime index, m)` pairs with `p_i[S] = Ann(m X^0)` on the window.
        associated_witnesses: Vec<(usize, Elem)>,
    },
    FiniteRingChain {
        very_few: bool,
        degree: Option<usize>,
        /// The converse implications need infinite rings and are not tested.
        irreversibility_tested: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub ring: String,
    pub module: Option<String>,
    pub monoid: Option<String>,
    pub window: Option<SupportWindow>,
    pub budget: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub statement: Statement,
    pub instances_checked: u64,
    /// Instance count predicted from the window before running.
    pub predicted_instances: u64,
    pub outcome: Outcome,
    pub details: Option<Details>,
    pub configuration: Configuration,
    /// Wall time; kept out of serialized payloads.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.outcome {
            Outcome::Counterexample { counterexample } => Some(counterexample),
            _ => None,
        }
    }

    pub fn skipped(&self) -> bool {
        matches!(self.outcome, Outcome::Skipped { .. })
    }
}
