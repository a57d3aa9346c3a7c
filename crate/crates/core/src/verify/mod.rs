//! Exhaustive checks of the transfer statements on finite windows of
//! `R[S]` and `M[S]`.
//!
//! Each verifier predicts its evaluation count from the window before doing
//! any work and returns a skipped report when the count exceeds the budget.
//! Inner loops run in parallel over the first series of each pair; the
//! reported counterexample is always the least one in window order, so
//! reports do not depend on scheduling.

mod report;
mod window;

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

pub use report::{
    Configuration, Counterexample, Details, EquivalenceBranch, Outcome, PropertyTransfer, Statement,
    VerificationReport,
};
pub use window::{SupportWindow, DEFAULT_BUDGET};

use crate::algebra::{dedekind_mertens_chain, ExtendedIdeal, SemigroupModule};
use crate::analysis::{check_property_a, decompose_zero_divisors, has_very_few_zero_divisors, primality};
use crate::error::{Error, Result};
use crate::ideal::{prime_ideals, Ideal};
use crate::module::{same_module, FiniteModule, Submodule};
use crate::monoid::{Cancellation, Torsion};
use crate::ring::{Elem, FiniteRing};
use crate::series::Series;

fn configuration(ms: &SemigroupModule, window: Option<&SupportWindow>, budget: u64) -> Configuration {
    Configuration {
        ring: ms.ring().label().to_string(),
        module: Some(ms.module().label().to_string()),
        monoid: Some(ms.monoid().label().to_string()),
        window: window.cloned(),
        budget,
    }
}

struct Draft {
    statement: Statement,
    configuration: Configuration,
    started: Instant,
}

impl Draft {
    fn new(statement: Statement, configuration: Configuration) -> Self {
        Self { statement, configuration, started: Instant::now() }
    }

    fn skipped(self, required: u128) -> VerificationReport {
        let budget = self.configuration.budget;
        self.finish(0, 0, Outcome::Skipped { required, budget }, None)
    }

    fn finish(
        self,
        predicted: u64,
        instances: u64,
        outcome: Outcome,
        details: Option<Details>,
    ) -> VerificationReport {
        VerificationReport {
            statement: self.statement,
            instances_checked: instances,
            predicted_instances: predicted,
            outcome,
            details,
            configuration: self.configuration,
            elapsed: self.started.elapsed(),
        }
    }
}

fn outcome_of(counterexample: Option<Counterexample>) -> Outcome {
    match counterexample {
        Some(c) => Outcome::Counterexample { counterexample: Box::new(c) },
        None => Outcome::Pass,
    }
}

fn require_nonzero(module: &FiniteModule) -> Result<()> {
    if module.is_zero_module() {
        return Err(Error::ZeroModule);
    }
    Ok(())
}

fn members(ideal: &Ideal) -> Vec<Elem> {
    ideal.members().to_vec()
}

/// Per-row tallies for the equivalence scan.
#[derive(Default)]
struct EquivalenceRow {
    pairs: u64,
    max_k: usize,
    beyond_default: u64,
    annihilating: u64,
    witnesses: u64,
    content_zero_divisor: bool,
    counterexample: Option<Counterexample>,
}

/// Checks that cancellation and torsion-freeness of the monoid line up with
/// the Dedekind–Mertens, McCoy and content-test properties of `M[S]`.
///
/// When the monoid satisfies both predicates every window pair `(f, g)` is
/// checked for a finite Dedekind–Mertens exponent, a verified McCoy witness
/// whenever `f g = 0`, and for `Ann_M(c(f)) = 0` ruling out `f g = 0`.
/// Otherwise the matching construction is run for every nonzero `q` and must
/// exhibit `f g = 0` with `f` killing no nonzero element.
pub fn verify_monoid_equivalence(
    ms: &SemigroupModule,
    window: &SupportWindow,
    budget: u64,
) -> Result<VerificationReport> {
    let module = ms.module();
    let ring = ms.ring();
    require_nonzero(module)?;
    window.check(ms.monoid())?;
    let draft = Draft::new(Statement::MonoidEquivalence, configuration(ms, Some(window), budget));
    if !ms.hypotheses_hold() {
        return equivalence_failure_branch(ms, draft);
    }

    let required = window.cardinality(ring.size()).saturating_mul(window.cardinality(module.size()));
    if required > budget as u128 {
        return Ok(draft.skipped(required));
    }
    let fs = window.enumerate(&**ring);
    let gs = window.enumerate(&**module);
    let cfs: Vec<Ideal> = fs.par_iter().map(|f| ms.scalar_content_unchecked(f)).collect();
    let cgs: Vec<Submodule> = gs.par_iter().map(|g| ms.content_unchecked(g)).collect();
    let extra = module.size();

    let rows: Vec<EquivalenceRow> = (0..fs.len())
        .into_par_iter()
        .map(|i| {
            let (f, cf) = (&fs[i], &cfs[i]);
            let mut row = EquivalenceRow::default();
            let regular_content = module.annihilator_of(cf.members()).is_zero();
            if !regular_content {
                // the content test asserts its witness kills f
                row.content_zero_divisor = ms.zero_divisor_unchecked(f).is_zero_divisor();
            }
            for (g, cg) in gs.iter().zip(&cgs) {
                row.pairs += 1;
                let fg = ms.act_unchecked(f, g);
                let cfg = ms.content_unchecked(&fg);
                let default_cap = g.support_len() + 1;
                let cap = default_cap + extra;
                match dedekind_mertens_chain(cf, cg, &cfg, cap).k_min {
                    Some(k) => {
                        row.max_k = row.max_k.max(k);
                        row.beyond_default += u64::from(k > default_cap);
                    }
                    None => {
                        row.counterexample =
                            Some(Counterexample::DedekindMertens { f: f.clone(), g: g.clone(), cap });
                        break;
                    }
                }
                if fg.is_zero() && !g.is_zero() {
                    row.annihilating += 1;
                    if regular_content {
                        row.counterexample =
                            Some(Counterexample::RegularContentAnnihilates { f: f.clone(), g: g.clone() });
                        break;
                    }
                    if ms.mccoy_search(cf, cg, f).is_none() {
                        row.counterexample = Some(Counterexample::McCoy { f: f.clone(), g: g.clone() });
                        break;
                    }
                    row.witnesses += 1;
                }
            }
            row
        })
        .collect();

    let mut instances = 0;
    let mut max_dm_exponent = 0;
    let mut pairs_beyond_default_cap = 0;
    let mut annihilating_pairs = 0;
    let mut mccoy_witnesses_verified = 0;
    let mut content_zero_divisors = 0;
    let mut counterexample = None;
    for row in rows {
        instances += row.pairs;
        max_dm_exponent = max_dm_exponent.max(row.max_k);
        pairs_beyond_default_cap += row.beyond_default;
        annihilating_pairs += row.annihilating;
        mccoy_witnesses_verified += row.witnesses;
        content_zero_divisors += u64::from(row.content_zero_divisor);
        if counterexample.is_none() {
            counterexample = row.counterexample;
        }
    }
    let details = Details::MonoidEquivalence(EquivalenceBranch::HypothesesHold {
        max_dm_exponent,
        pairs_beyond_default_cap,
        annihilating_pairs,
        mccoy_witnesses_verified,
        content_zero_divisors,
    });
    Ok(draft.finish(required as u64, instances, outcome_of(counterexample), Some(details)))
}

fn equivalence_failure_branch(ms: &SemigroupModule, draft: Draft) -> Result<VerificationReport> {
    let module = ms.module();
    let predicted = (module.size() - 1) as u64;
    let monoid = ms.monoid();
    let branch = match monoid.cancellation() {
        Cancellation::Collision { s, t, u } => EquivalenceBranch::NonCancellative {
            constructions: module
                .nonzero_elements()
                .map(|q| ms.noncancellative_counterexample(&s, &t, &u, q))
                .collect::<Result<_>>()?,
        },
        Cancellation::Cancellative => match monoid.torsion() {
            Torsion::Torsion { s, t, .. } => {
                let constructions = module
                    .nonzero_elements()
                    .map(|q| ms.torsion_counterexample(&s, &t, q))
                    .collect::<Result<Vec<_>>>()?;
                for c in &constructions {
                    // h has unit coefficients on distinct exponents
                    assert!(
                        ms.search_annihilated_element(&c.h).is_none(),
                        "torsion factor h kills a nonzero element"
                    );
                }
                EquivalenceBranch::Torsion { constructions }
            }
            Torsion::TorsionFree => unreachable!("hypotheses fail for a cancellative torsion-free monoid"),
        },
    };
    let instances = predicted;
    Ok(draft.finish(predicted, instances, Outcome::Pass, Some(Details::MonoidEquivalence(branch))))
}

/// Window check that domains stay domains, primes extend to primes and
/// associated primes `Ann(m)` extend to `Ann(m X^0)` on `R[S]`.
///
/// This is window-exhaustive evidence, not a proof.
pub fn verify_extended_primes(
    ms: &SemigroupModule,
    window: &SupportWindow,
    budget: u64,
) -> Result<VerificationReport> {
    ms.require_hypotheses()?;
    window.check(ms.monoid())?;
    let ring = ms.ring();
    let module = ms.module();
    let rs = ms.scalars();
    let draft = Draft::new(Statement::ExtendedPrimes, configuration(ms, Some(window), budget));

    let domain = ring.is_domain();
    let primes = prime_ideals(ring);
    let associated = if module.is_zero_module() { Vec::new() } else { module.associated_primes()? };
    let n = window.cardinality(ring.size());
    let domain_cost = if domain { (n - 1) * (n - 1) } else { 1 };
    let prime_cost: u128 = primes
        .iter()
        .map(|p| {
            let outside = n - window.cardinality_with(p.len());
            outside * outside
        })
        .sum();
    let required = domain_cost + prime_cost + n * associated.len() as u128;
    if required > budget as u128 {
        return Ok(draft.skipped(required));
    }
    let fs = window.enumerate(&**ring);

    // domain clause
    let mut counterexample = None;
    let mut domain_pairs = 0u64;
    let mut zero_divisor_constants = None;
    if domain {
        let nonzero: Vec<&Series> = fs.iter().filter(|f| !f.is_zero()).collect();
        let rows: Vec<(u64, Option<Counterexample>)> = nonzero
            .par_iter()
            .map(|f| {
                let mut pairs = 0;
                for g in &nonzero {
                    pairs += 1;
                    if rs.multiply(f, g).expect("window series").is_zero() {
                        let c = Counterexample::DomainProduct { f: (*f).clone(), g: (*g).clone() };
                        return (pairs, Some(c));
                    }
                }
                (pairs, None)
            })
            .collect();
        for (pairs, c) in rows {
            domain_pairs += pairs;
            counterexample = counterexample.or(c);
        }
    } else {
        domain_pairs = 1;
        if let Some((a, b)) = ring.zero_divisor_pair() {
            let product = rs.multiply(&rs.constant(a)?, &rs.constant(b)?)?;
            assert!(product.is_zero(), "constants {a}, {b} do not multiply to zero");
            zero_divisor_constants = Some((a, b));
        }
    }

    // prime clause
    let mut prime_pairs = 0u64;
    for p in &primes {
        let ext = rs.extend(p)?;
        let outside: Vec<&Series> = fs.iter().filter(|f| !ext.contains_unchecked(f)).collect();
        let rows: Vec<(u64, Option<Counterexample>)> = outside
            .par_iter()
            .map(|f| {
                let mut pairs = 0;
                for g in &outside {
                    pairs += 1;
                    let fg = rs.multiply(f, g).expect("window series");
                    if ext.contains_unchecked(&fg) {
                        let c = Counterexample::PrimeExtension {
                            prime: members(p),
                            f: (*f).clone(),
                            g: (*g).clone(),
                        };
                        return (pairs, Some(c));
                    }
                }
                (pairs, None)
            })
            .collect();
        for (pairs, c) in rows {
            prime_pairs += pairs;
            counterexample = counterexample.or(c);
        }
    }

    // associated clause
    let mut associated_checks = 0u64;
    for a in &associated {
        let ext = rs.extend(&a.prime)?;
        associated_checks += fs.len() as u64;
        let bad = fs
            .par_iter()
            .find_first(|f| ms.kills(f, a.witness) != ext.contains_unchecked(f));
        if let Some(f) = bad {
            counterexample = counterexample.or(Some(Counterexample::AssociatedExtension {
                prime: members(&a.prime),
                witness: a.witness,
                f: f.clone(),
            }));
        }
    }

    let instances = domain_pairs + prime_pairs + associated_checks;
    let details = Details::ExtendedPrimes {
        domain,
        zero_divisor_constants,
        primes,
        associated,
        domain_pairs,
        prime_pairs,
        associated_checks,
    };
    Ok(draft.finish(required as u64, instances, outcome_of(counterexample), Some(details)))
}

/// `P[S]` is the set of series with every coefficient in `P`.
fn in_extended_submodule(sub: &Submodule, x: &Series) -> bool {
    x.coefficients().all(|c| sub.contains(c))
}

/// Whether `c(r)^n M ⊆ P` for some `n ≤ |R|`.
fn some_power_absorbs(sub: &Submodule, content: &Ideal) -> bool {
    let mut power = content.clone();
    for _ in 0..content.ring().size() {
        if sub.absorbs_ideal(&power) {
            return true;
        }
        let next = power.product(content).expect("same ring");
        if next == power {
            return false;
        }
        power = next;
    }
    sub.absorbs_ideal(&power)
}

type Violation = Option<(usize, usize)>;

/// Window check that a prime (primary) submodule `P` of `M` extends to a
/// prime (primary) submodule `P[S]` of `M[S]`.
///
/// Both properties are scanned on every pair; a violation only counts as a
/// counterexample when the classification of `P` promised that property.
pub fn verify_submodule_extension(
    ms: &SemigroupModule,
    sub: &Submodule,
    window: &SupportWindow,
    budget: u64,
) -> Result<VerificationReport> {
    ms.require_hypotheses()?;
    window.check(ms.monoid())?;
    let module = ms.module();
    let ring = ms.ring();
    if !same_module(sub.module(), module) {
        return Err(Error::Mismatch("submodule belongs to a different module"));
    }
    let rs = ms.scalars();
    let mut configuration = configuration(ms, Some(window), budget);
    configuration.module = Some(format!("{} ⊇ {:?}", module.label(), sub.members()));
    let draft = Draft::new(Statement::SubmoduleExtension, configuration);
    let classification = sub.classify();

    let required = window.cardinality(ring.size()).saturating_mul(window.cardinality(module.size()));
    if required > budget as u128 {
        return Ok(draft.skipped(required));
    }
    let rs_all = window.enumerate(&**ring);
    let xs = window.enumerate(&**module);
    let escapes: Vec<(bool, bool)> = rs_all
        .par_iter()
        .map(|r| {
            let content = rs.content(r).expect("window series");
            (sub.absorbs_ideal(&content), some_power_absorbs(sub, &content))
        })
        .collect();
    let x_inside: Vec<bool> = xs.iter().map(|x| in_extended_submodule(sub, x)).collect();

    let rows: Vec<(Violation, Violation)> = (0..rs_all.len())
        .into_par_iter()
        .map(|i| {
            let (prime_escape, primary_escape) = escapes[i];
            let (mut prime, mut primary) = (None, None);
            if prime_escape && primary_escape {
                return (prime, primary);
            }
            for (j, x) in xs.iter().enumerate() {
                if x_inside[j] || !in_extended_submodule(sub, &ms.act_unchecked(&rs_all[i], x)) {
                    continue;
                }
                if !prime_escape && prime.is_none() {
                    prime = Some((i, j));
                }
                if !primary_escape && primary.is_none() {
                    primary = Some((i, j));
                }
            }
            (prime, primary)
        })
        .collect();
    let (mut prime, mut primary): (Violation, Violation) = (None, None);
    for (p, q) in rows {
        prime = prime.or(p);
        primary = primary.or(q);
    }
    let pair = |v: Violation| v.map(|(i, j)| (rs_all[i].clone(), xs[j].clone()));
    let counterexample = if classification.is_prime && prime.is_some() {
        pair(prime).map(|(r, x)| Counterexample::SubmoduleExtension { primary: false, r, x })
    } else if classification.is_primary && primary.is_some() {
        pair(primary).map(|(r, x)| Counterexample::SubmoduleExtension { primary: true, r, x })
    } else {
        None
    };
    let details = Details::SubmoduleExtension {
        prime: PropertyTransfer { promised: classification.is_prime, window_violation: pair(prime) },
        primary: PropertyTransfer { promised: classification.is_primary, window_violation: pair(primary) },
        classification,
    };
    // every pair is examined, even after a violation
    let instances = required as u64;
    Ok(draft.finish(required as u64, instances, outcome_of(counterexample), Some(details)))
}

/// Three-way agreement on every window `f`: `Ann_M(c(f)) = 0`, the content
/// zero-divisor test, and a search for `g ≠ 0` in the window with `f g = 0`.
///
/// The search is one-sided: a found `g` must match a zero-divisor verdict,
/// while finding none proves nothing.
pub fn verify_content_regularity(
    ms: &SemigroupModule,
    window: &SupportWindow,
    budget: u64,
) -> Result<VerificationReport> {
    ms.require_hypotheses()?;
    let module = ms.module();
    let ring = ms.ring();
    require_nonzero(module)?;
    window.check(ms.monoid())?;
    let rs = ms.scalars();
    let draft = Draft::new(Statement::ContentRegularity, configuration(ms, Some(window), budget));
    let property_a = check_property_a(module)?;
    if !property_a.holds {
        return Err(Error::Hypothesis(format!(
            "Property (A) fails for {}: {:?} has zero annihilator",
            module.label(),
            property_a.failure
        )));
    }

    let n = window.cardinality(ring.size());
    let required = n.saturating_mul(window.cardinality(module.size()));
    if required > budget as u128 {
        return Ok(draft.skipped(required));
    }
    let fs = window.enumerate(&**ring);
    let gs: Vec<Series> = window.enumerate(&**module).into_iter().filter(|g| !g.is_zero()).collect();

    // (regular, fired, counterexample) per f
    let rows: Vec<(bool, bool, Option<Counterexample>)> = fs
        .par_iter()
        .map(|f| {
            let content = rs.content(f).expect("window series");
            let content_regular = module.annihilator_of(content.members()).is_zero();
            let test_regular = !ms.zero_divisor_unchecked(f).is_zero_divisor();
            let found = gs.iter().find(|g| ms.act_unchecked(f, g).is_zero());
            let counterexample = if content_regular != test_regular {
                Some(Counterexample::Regularity { f: f.clone(), g: None })
            } else if content_regular && found.is_some() {
                Some(Counterexample::Regularity { f: f.clone(), g: found.cloned() })
            } else {
                None
            };
            (content_regular, found.is_some(), counterexample)
        })
        .collect();

    let mut regular = 0;
    let mut oracle_fired = 0;
    let mut counterexample = None;
    for (r, fired, c) in rows {
        regular += u64::from(r);
        oracle_fired += u64::from(fired);
        counterexample = counterexample.or(c);
    }
    let instances = fs.len() as u64;
    let details = Details::ContentRegularity {
        property_a,
        regular,
        zero_divisors: instances - regular,
        oracle_fired,
    };
    Ok(draft.finish(n as u64, instances, outcome_of(counterexample), Some(details)))
}

/// Window check of `Z(M[S]) = p_1[S] ∪ … ∪ p_n[S]` for the prime cover of
/// `Z_R(M)`, with constant separations showing the extended primes stay
/// incomparable, and `p_i[S] = Ann(m_i X^0)` when the cover is made of
/// associated primes.
pub fn verify_zero_divisor_transfer(
    ms: &SemigroupModule,
    window: &SupportWindow,
    budget: u64,
) -> Result<VerificationReport> {
    ms.require_hypotheses()?;
    let module = ms.module();
    let ring = ms.ring();
    require_nonzero(module)?;
    window.check(ms.monoid())?;
    let rs = ms.scalars();
    let draft = Draft::new(Statement::ZeroDivisorTransfer, configuration(ms, Some(window), budget));

    let decomposition = decompose_zero_divisors(module)?;
    let Some(cover) = decomposition.cover() else {
        return Err(Error::Precondition(format!("{} has no prime cover of its zero-divisors", module.label())));
    };
    let very_few = has_very_few_zero_divisors(module)?.holds;
    let property_a = check_property_a(module)?.holds;
    let primal = primality(module)?.is_primal();
    let n = window.cardinality(ring.size());
    let extra = if very_few { n * cover.degree as u128 } else { 0 };
    let required = n + extra;
    if required > budget as u128 {
        return Ok(draft.skipped(required));
    }
    let exts: Vec<ExtendedIdeal> = cover.primes.iter().map(|p| rs.extend(p)).collect::<Result<_>>()?;
    let prime_members: Vec<Vec<Elem>> = cover.primes.iter().map(members).collect();
    let fs = window.enumerate(&**ring);

    // separations, as constant series
    for s in &cover.separations {
        let a = rs.constant(s.element)?;
        assert!(
            exts[s.i].contains_unchecked(&a) && !exts[s.j].contains_unchecked(&a),
            "constant {} does not separate extended primes {} and {}",
            s.element,
            s.i,
            s.j
        );
    }

    let verdicts: Vec<bool> = fs.par_iter().map(|f| ms.zero_divisor_unchecked(f).is_zero_divisor()).collect();
    let mut counterexample = fs.iter().zip(&verdicts).find_map(|(f, &zd)| {
        let member = exts.iter().any(|e| e.contains_unchecked(f));
        (member != zd).then(|| Counterexample::ZeroDivisorMembership { f: f.clone(), primes: prime_members.clone() })
    });
    let window_zero_divisors = verdicts.iter().filter(|&&zd| zd).count() as u64;

    let mut associated_witnesses = Vec::new();
    if very_few {
        for (i, evidence) in cover.evidence.iter().enumerate() {
            let Some(m) = evidence.associated_witness else { continue };
            let bad = fs.par_iter().find_first(|f| ms.kills(f, m) != exts[i].contains_unchecked(f));
            match bad {
                Some(f) => {
                    counterexample = counterexample.or(Some(Counterexample::AssociatedExtension {
                        prime: prime_members[i].clone(),
                        witness: m,
                        f: f.clone(),
                    }))
                }
                None => associated_witnesses.push((i, m)),
            }
        }
    }
    if cover.degree == 1 {
        assert!(primal, "degree-one cover on a non-primal module");
    }

    let instances = fs.len() as u64;
    let details = Details::ZeroDivisorTransfer {
        degree: cover.degree,
        primes: cover.primes.clone(),
        very_few,
        property_a,
        primal,
        window_zero_divisors,
        separations: cover.separations.clone(),
        associated_witnesses,
    };
    Ok(draft.finish(n as u64, instances, outcome_of(counterexample), Some(details)))
}

/// On a finite (hence Noetherian) ring, checks that the ring has very few
/// zero-divisors and that its zero-divisors have a prime cover. The
/// converse implications need infinite rings and are not tested.
pub fn verify_finite_ring_chain(ring: &Arc<FiniteRing>) -> Result<VerificationReport> {
    let configuration = Configuration {
        ring: ring.label().to_string(),
        module: None,
        monoid: None,
        window: None,
        budget: 1,
    };
    let draft = Draft::new(Statement::FiniteRingChain, configuration);
    if ring.is_zero_ring() {
        // no zero-divisors to cover
        let details = Details::FiniteRingChain { very_few: true, degree: Some(0), irreversibility_tested: false };
        return Ok(draft.finish(1, 1, Outcome::Pass, Some(details)));
    }
    let module = FiniteModule::ring_as_module(ring);
    let very_few = has_very_few_zero_divisors(&module)?.holds;
    let degree = decompose_zero_divisors(&module)?.cover().map(|c| c.degree);
    let counterexample = (!very_few || degree.is_none())
        .then_some(Counterexample::FiniteRingChain { very_few, decomposed: degree.is_some() });
    let details = Details::FiniteRingChain { very_few, degree, irreversibility_tested: false };
    Ok(draft.finish(1, 1, outcome_of(counterexample), Some(details)))
}
