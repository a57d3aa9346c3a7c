//! Zero-divisor structure of a finite module: the incomparable prime cover
//! of `Z_R(M)`, very few zero-divisors, Property (A) and primality.

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::ideal::{maximal_ideals_inside, Ideal};
use crate::module::{AssociatedPrime, FiniteModule};
use crate::ring::Elem;

/// Evidence attached to one prime of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeEvidence {
    /// A nonzero module element whose annihilator is exactly this prime,
    /// when one exists.
    pub associated_witness: Option<Elem>,
    /// Least element of the prime lying in no other prime of the cover.
    pub private_element: Option<Elem>,
}

/// An element of `p_i` outside `p_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub i: usize,
    pub j: usize,
    pub element: Elem,
}

/// `Z_R(M) = p_1 ∪ … ∪ p_n` with pairwise incomparable primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeDecomposition {
    pub primes: Vec<Ideal>,
    pub degree: usize,
    pub covers: bool,
    pub incomparable: bool,
    pub evidence: Vec<PrimeEvidence>,
    pub separations: Vec<Separation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Decomposition {
    Cover(PrimeDecomposition),
    /// The candidate primes miss `uncovered ∈ Z_R(M)`.
    NoPrimeCover { uncovered: Elem },
}

impl Decomposition {
    pub fn cover(&self) -> Option<&PrimeDecomposition> {
        match self {
            Decomposition::Cover(d) => Some(d),
            Decomposition::NoPrimeCover { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeryFewReport {
    pub holds: bool,
    pub associated: Vec<AssociatedPrime>,
    /// Least zero-divisor outside every associated prime, when `!holds`.
    pub uncovered: Option<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilatorWitness {
    pub ideal: Ideal,
    pub element: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyAReport {
    pub holds: bool,
    pub checked_ideals: usize,
    pub witnesses: Vec<AnnihilatorWitness>,
    pub failure: Option<Ideal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Primality {
    /// `Z_R(M)` is an ideal, necessarily prime.
    Primal { zero_divisors: Ideal },
    /// `a + b ∉ Z_R(M)` for `a, b ∈ Z_R(M)`.
    NotPrimal { a: Elem, b: Elem },
}

impl Primality {
    pub fn is_primal(&self) -> bool {
        matches!(self, Primality::Primal { .. })
    }
}

/// Candidate primes: prime annihilators of nonzero elements, plus the prime
/// ideals among the maximal ideals inside `Z_R(M)`.
fn candidate_primes(module: &FiniteModule, zero_divisors: &ElementSet) -> Result<Vec<Ideal>> {
    let mut candidates: Vec<Ideal> = module.associated_primes()?.into_iter().map(|a| a.prime).collect();
    for ideal in maximal_ideals_inside(module.ring(), zero_divisors) {
        if ideal.is_prime() && !candidates.contains(&ideal) {
            candidates.push(ideal);
        }
    }
    Ok(candidates)
}

/// The unique cover of `Z_R(M)` by pairwise incomparable primes.
pub fn decompose_zero_divisors(module: &FiniteModule) -> Result<Decomposition> {
    let z = module.zero_divisors()?;
    let candidates = candidate_primes(module, &z)?;
    let mut primes: Vec<Ideal> = candidates
        .iter()
        .filter(|p| !candidates.iter().any(|q| q != *p && p.is_subset(q)))
        .cloned()
        .collect();
    primes.sort();
    primes.dedup();

    let mut union = ElementSet::empty(module.ring().size());
    for p in &primes {
        union.union_with(p.members());
    }
    if let Some(uncovered) = z.first_outside(&union) {
        return Ok(Decomposition::NoPrimeCover { uncovered });
    }
    debug_assert!(union.is_subset(&z));

    let associated = module.associated_primes()?;
    let evidence = primes
        .iter()
        .enumerate()
        .map(|(i, p)| PrimeEvidence {
            associated_witness: associated.iter().find(|a| a.prime == *p).map(|a| a.witness),
            private_element: p
                .members()
                .iter()
                .find(|&a| primes.iter().enumerate().all(|(j, q)| j == i || !q.contains(a))),
        })
        .collect();
    let mut separations = Vec::new();
    for (i, p) in primes.iter().enumerate() {
        for (j, q) in primes.iter().enumerate() {
            if i != j {
                if let Some(element) = p.members().first_outside(q.members()) {
                    separations.push(Separation { i, j, element });
                }
            }
        }
    }
    let n = primes.len();
    let incomparable = separations.len() == n * (n.saturating_sub(1));
    Ok(Decomposition::Cover(PrimeDecomposition {
        degree: n,
        primes,
        covers: true,
        incomparable,
        evidence,
        separations,
    }))
}

/// Whether `Z_R(M)` is the union of the associated primes.
pub fn has_very_few_zero_divisors(module: &FiniteModule) -> Result<VeryFewReport> {
    let z = module.zero_divisors()?;
    let associated = module.associated_primes()?;
    let mut union = ElementSet::empty(module.ring().size());
    for a in &associated {
        union.union_with(a.prime.members());
    }
    let uncovered = z.first_outside(&union);
    Ok(VeryFewReport { holds: uncovered.is_none(), associated, uncovered })
}

/// Property (A): every (finitely generated) ideal inside `Z_R(M)` has a
/// nonzero annihilator in `M`. Checking the maximal ideals inside `Z_R(M)`
/// suffices, since `I ⊆ J` implies `Ann(J) ⊆ Ann(I)`.
pub fn check_property_a(module: &std::sync::Arc<FiniteModule>) -> Result<PropertyAReport> {
    let z = module.zero_divisors()?;
    let maximal = maximal_ideals_inside(module.ring(), &z);
    let mut witnesses = Vec::new();
    let mut failure = None;
    for ideal in &maximal {
        match module.annihilator_of(ideal.members()).first_nonzero() {
            Some(element) => witnesses.push(AnnihilatorWitness { ideal: ideal.clone(), element }),
            None => {
                failure = Some(ideal.clone());
                break;
            }
        }
    }
    Ok(PropertyAReport {
        holds: failure.is_none(),
        checked_ideals: maximal.len(),
        witnesses,
        failure,
    })
}

/// Whether `Z_R(M)` is an ideal. When it is, it is asserted to be prime and
/// the decomposition is cross-checked to have degree one.
pub fn primality(module: &FiniteModule) -> Result<Primality> {
    let z = module.zero_divisors()?;
    let ring = module.ring();
    for a in z.iter() {
        for b in z.iter() {
            if !z.contains(ring.add(a, b)) {
                return Ok(Primality::NotPrimal { a, b });
            }
        }
    }
    // closure under the ring action is automatic: r·a kills what a kills
    let ideal = Ideal::from_members(ring, z)?;
    if !ideal.is_prime() {
        return Err(Error::Precondition("zero-divisor ideal is not prime".into()));
    }
    match decompose_zero_divisors(module)? {
        Decomposition::Cover(d) if d.degree == 1 && d.primes[0] == ideal => {}
        other => {
            return Err(Error::Precondition(format!(
                "primal module without a degree-one decomposition: {other:?}"
            )))
        }
    }
    Ok(Primality::Primal { zero_divisors: ideal })
}
