//! Whole-fleet checks: axiom audits, relabelling invariance, window
//! consistency and the content criterion against brute force.

use std::sync::Arc;

use semizd_core::analysis::decompose_zero_divisors;
use semizd_core::module::{FiniteModule, Submodule};
use semizd_core::monoid::Monoid;
use semizd_core::ring::FiniteRing;
use semizd_core::verify::SupportWindow;
use semizd_core::{Ideal, SemigroupModule};

fn fleet_rings() -> Vec<Arc<FiniteRing>> {
    let mut rings: Vec<_> = (2..=12).map(|n| FiniteRing::zmod(n).unwrap()).collect();
    rings.push(FiniteRing::truncated_poly(2, 1, 2).unwrap());
    rings.push(FiniteRing::truncated_poly(2, 2, 3).unwrap());
    rings.into_iter().map(Arc::new).collect()
}

#[test]
fn fleet_passes_axiom_audits() {
    for ring in fleet_rings() {
        ring.audit().unwrap();
        let module = Arc::new(FiniteModule::ring_as_module(&ring));
        module.audit().unwrap();
        if ring.size() <= 12 {
            FiniteModule::direct_sum(&module, &module).unwrap().audit().unwrap();
        }
        for z in ring.elements() {
            let ideal = Ideal::generated(&ring, &[z]).unwrap();
            ring.quotient(&ideal).unwrap().audit().unwrap();
            let sub = Submodule::generated(&module, &[z]).unwrap();
            module.quotient(&sub).unwrap().audit().unwrap();
        }
    }
    let mut monoids = vec![Monoid::free(1).unwrap(), Monoid::free(2).unwrap()];
    monoids.extend((2..=6).map(|k| Monoid::cyclic_group(k).unwrap()));
    monoids.extend((1..=3).map(|c| Monoid::saturating(c).unwrap()));
    for m in monoids {
        m.audit().unwrap();
    }
}

/// A fixed-point-free-ish permutation of `0..n` keeping 0 in place.
fn shuffle(n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm[1..].reverse();
    perm
}

fn prime_sets(module: &FiniteModule) -> Vec<Vec<usize>> {
    let d = decompose_zero_divisors(module).unwrap();
    d.cover().unwrap().primes.iter().map(|p| p.members().to_vec()).collect()
}

#[test]
fn decomposition_is_invariant_under_relabelling() {
    for ring in fleet_rings() {
        let module = FiniteModule::ring_as_module(&ring);
        let expected = prime_sets(&module);

        // module labels only: the primes are ring ideals and stay put
        let relabelled = module.permuted(&shuffle(module.size())).unwrap();
        assert_eq!(prime_sets(&relabelled), expected, "{}", ring.label());

        // ring labels: primes move along the permutation
        let perm = shuffle(ring.size());
        let new_ring = Arc::new(ring.permuted(&perm).unwrap());
        let moved = module.over_relabelled_ring(&new_ring, &perm).unwrap();
        let mut mapped: Vec<Vec<usize>> = expected
            .iter()
            .map(|p| {
                let mut q: Vec<usize> = p.iter().map(|&x| perm[x]).collect();
                q.sort_unstable();
                q
            })
            .collect();
        mapped.sort();
        let mut got = prime_sets(&moved);
        got.sort();
        assert_eq!(got, mapped, "{}", ring.label());
    }
}

#[test]
fn zero_divisor_verdicts_agree_across_nested_windows() {
    for n in [4, 6, 8, 12] {
        let ring = Arc::new(FiniteRing::zmod(n).unwrap());
        let module = Arc::new(FiniteModule::ring_as_module(&ring));
        let ms = SemigroupModule::new(&module, &Arc::new(Monoid::free(1).unwrap()));
        let small = SupportWindow::polynomial(1).enumerate(&*ring);
        let large = SupportWindow::polynomial(2).enumerate(&*ring);
        let verdict = |f| ms.zero_divisor_test(f).unwrap().is_zero_divisor();
        for f in &small {
            let again = large.iter().find(|g| *g == f).expect("nested window");
            assert_eq!(verdict(f), verdict(again));
        }
    }
}

#[test]
fn content_criterion_matches_window_search() {
    // over N every zero-divisor f has a constant g = m with f m = 0, so on a
    // window containing 0 the search is exact
    for ring in fleet_rings().into_iter().filter(|r| r.size() <= 12) {
        let module = Arc::new(FiniteModule::ring_as_module(&ring));
        let ms = SemigroupModule::new(&module, &Arc::new(Monoid::free(1).unwrap()));
        let w = SupportWindow::polynomial(1);
        let gs: Vec<_> = w.enumerate(&*module).into_iter().filter(|g| !g.is_zero()).collect();
        for f in w.enumerate(&*ring) {
            let found = gs.iter().any(|g| ms.act(&f, g).unwrap().is_zero());
            assert_eq!(ms.zero_divisor_test(&f).unwrap().is_zero_divisor(), found, "{} {:?}", ring.label(), f);
        }
    }
}
