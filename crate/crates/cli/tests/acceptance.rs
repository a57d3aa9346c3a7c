//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p semizd-cli --test acceptance`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use semizd_cli::{output, run_commands, Session};
use semizd_core::analysis::{check_property_a, decompose_zero_divisors, has_very_few_zero_divisors, primality};
use semizd_core::module::{FiniteModule, Submodule};
use semizd_core::monoid::{Cancellation, Monoid, MonoidElement};
use semizd_core::ring::FiniteRing;
use semizd_core::verify::{self, Details, EquivalenceBranch, SupportWindow, DEFAULT_BUDGET};
use semizd_core::{Ideal, SemigroupModule};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zmod(n: usize) -> Arc<FiniteRing> {
    Arc::new(FiniteRing::zmod(n).unwrap())
}

fn t_ring() -> Arc<FiniteRing> {
    Arc::new(FiniteRing::truncated_poly(2, 2, 3).unwrap())
}

fn fleet_rings() -> Vec<Arc<FiniteRing>> {
    let mut rings: Vec<_> = (2..=12).map(zmod).collect();
    rings.push(Arc::new(FiniteRing::truncated_poly(2, 1, 2).unwrap()));
    rings.push(t_ring());
    rings
}

fn over_itself(ring: &Arc<FiniteRing>, monoid: Monoid) -> SemigroupModule {
    SemigroupModule::new(&Arc::new(FiniteModule::ring_as_module(ring)), &Arc::new(monoid))
}

fn members(i: &Ideal) -> Vec<usize> {
    i.members().to_vec()
}

fn structure_audit() -> Outcome {
    let mut audited = 0;
    for ring in fleet_rings() {
        ring.audit().map_err(|e| format!("{}: {e}", ring.label()))?;
        let module = Arc::new(FiniteModule::ring_as_module(&ring));
        module.audit().map_err(|e| format!("{}: {e}", ring.label()))?;
        audited += 2;
        for z in ring.elements() {
            let ideal = Ideal::generated(&ring, &[z]).unwrap();
            ring.quotient(&ideal).and_then(|q| q.audit()).map_err(|e| format!("{} / ({z}): {e}", ring.label()))?;
            let sub = Submodule::generated(&module, &[z]).unwrap();
            module.quotient(&sub).and_then(|q| q.audit()).map_err(|e| format!("{} / ({z}): {e}", ring.label()))?;
            audited += 2;
        }
    }
    for n in [2, 4, 6, 12] {
        let m = FiniteModule::ring_as_module(&zmod(n));
        for k in [2, 3] {
            let other = FiniteModule::ring_as_module(&zmod(n));
            let quotient = other.quotient(&Submodule::generated(&Arc::new(other.clone()), &[k % n]).unwrap()).unwrap();
            FiniteModule::direct_sum(&m, &quotient)
                .and_then(|d| d.audit())
                .map_err(|e| format!("Z/{n} direct sum: {e}"))?;
            audited += 1;
        }
    }
    let mut monoids = vec![Monoid::free(1).unwrap(), Monoid::free(2).unwrap()];
    monoids.extend((2..=6).map(|k| Monoid::cyclic_group(k).unwrap()));
    monoids.extend((1..=3).map(|c| Monoid::saturating(c).unwrap()));
    for m in &monoids {
        m.audit().map_err(|e| format!("{}: {e}", m.label()))?;
        audited += 1;
    }
    Ok(format!("{audited} structures audited"))
}

fn analysis_z6() -> Outcome {
    let m = FiniteModule::ring_as_module(&zmod(6));
    let z = m.zero_divisors().unwrap().to_vec();
    ensure(z == [0, 2, 3, 4], || format!("Z = {z:?}"))?;
    let d = decompose_zero_divisors(&m).unwrap();
    let cover = d.cover().ok_or("no cover")?;
    let primes: Vec<_> = cover.primes.iter().map(members).collect();
    ensure(primes == [vec![0, 2, 4], vec![0, 3]], || format!("primes {primes:?}"))?;
    ensure(cover.degree == 2, || format!("degree {}", cover.degree))?;
    ensure(has_very_few_zero_divisors(&m).unwrap().holds, || "very few".into())?;
    ensure(check_property_a(&Arc::new(m.clone())).unwrap().holds, || "property (A)".into())?;
    ensure(!primality(&m).unwrap().is_primal(), || "primal".into())?;
    Ok("Z = {0,2,3,4} = (2) ∪ (3), degree 2, very few, (A), not primal".into())
}

fn analysis_z4() -> Outcome {
    let m = FiniteModule::ring_as_module(&zmod(4));
    let cover = decompose_zero_divisors(&m).unwrap().cover().cloned().ok_or("no cover")?;
    ensure(cover.degree == 1, || format!("degree {}", cover.degree))?;
    ensure(members(&cover.primes[0]) == [0, 2], || format!("{:?}", cover.primes))?;
    ensure(primality(&m).unwrap().is_primal(), || "not primal".into())?;
    Ok("Z = (2), degree 1, primal".into())
}

fn dedekind_mertens() -> Outcome {
    let ms = over_itself(&zmod(6), Monoid::free(1).unwrap());
    let w = SupportWindow::polynomial(2);
    let fs = w.enumerate(&**ms.ring());
    let gs = w.enumerate(&**ms.module());
    let mut pairs = 0;
    for f in &fs {
        for g in &gs {
            pairs += 1;
            let dm = ms.dedekind_mertens(f, g, None).unwrap();
            let k = dm.k_min.ok_or_else(|| format!("no exponent within cap for f={f:?} g={g:?}"))?;
            ensure(k <= g.support_len() + 1, || format!("k={k} for g={g:?}"))?;
            ensure(dm.chain[k - 1].equal && dm.chain[k - 1].lhs == dm.chain[k - 1].rhs, || "equality at k".into())?;
            if k > 1 {
                ensure(dm.chain[k - 2].lhs != dm.chain[k - 2].rhs, || "equality before k".into())?;
            }
        }
    }
    let t = over_itself(&t_ring(), Monoid::free(1).unwrap());
    let (a, b) = (t.ring().element_by_name("a").unwrap(), t.ring().element_by_name("b").unwrap());
    let e = |i| MonoidElement::Vector(vec![i]);
    let f = t.ring_series([(e(0), a), (e(1), b)]).unwrap();
    let g = t.series([(e(0), a), (e(1), b)]).unwrap();
    let k = t.dedekind_mertens(&f, &g, None).unwrap().k_min;
    ensure(k == Some(2), || format!("T pair gave {k:?}"))?;
    Ok(format!("{pairs} pairs over Z/6[N] within cap; T pair k_min = 2"))
}

fn mccoy() -> Outcome {
    let ms = over_itself(&zmod(6), Monoid::free(1).unwrap());
    let w = SupportWindow::polynomial(2);
    let fs = w.enumerate(&**ms.ring());
    let gs = w.enumerate(&**ms.module());
    let (mut pairs, mut annihilating) = (0, 0);
    for f in &fs {
        for g in &gs {
            pairs += 1;
            if g.is_zero() || !ms.act(f, g).unwrap().is_zero() {
                continue;
            }
            annihilating += 1;
            let m = ms.mccoy_witness(f, g).map_err(|e| e.to_string())?;
            ensure(m != 0 && ms.kills(f, m), || format!("bad witness {m} for f={f:?}"))?;
        }
    }
    ensure(pairs == 46_656, || format!("{pairs} pairs"))?;
    Ok(format!("{pairs} pairs, {annihilating} with fg = 0, every witness verified"))
}

fn failure_branches() -> Outcome {
    let ms = over_itself(&zmod(6), Monoid::saturating(2).unwrap());
    let Cancellation::Collision { s, t, u } = ms.monoid().cancellation() else {
        return Err("saturating(2) reported cancellative".into());
    };
    let idx = MonoidElement::Index;
    ensure((s.clone(), t.clone(), u.clone()) == (idx(2), idx(0), idx(1)), || format!("collision {s} {t} {u}"))?;
    for q in 1..6 {
        let c = ms.noncancellative_counterexample(&s, &t, &u, q).map_err(|e| e.to_string())?;
        ensure(c.f.terms().eq([(&idx(2), 1)]), || format!("f = {:?}", c.f))?;
        ensure(c.g.terms().eq([(&idx(0), q), (&idx(1), (6 - q) % 6)]), || format!("g = {:?}", c.g))?;
        ensure(ms.act(&c.f, &c.g).unwrap().is_zero(), || "fg != 0".into())?;
        ensure(ms.search_annihilated_element(&c.f).is_none(), || "X^2 kills something".into())?;
    }
    for k in [2, 3, 4] {
        let ms = over_itself(&zmod(6), Monoid::cyclic_group(k).unwrap());
        let report = verify::verify_monoid_equivalence(&ms, &SupportWindow::new(vec![idx(0)], None).unwrap(), DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?;
        let Some(Details::MonoidEquivalence(EquivalenceBranch::Torsion { constructions })) = report.details else {
            return Err(format!("cyclic {k}: wrong branch"));
        };
        ensure(constructions.len() == 5, || format!("cyclic {k}: {} constructions", constructions.len()))?;
        for c in constructions {
            let mut exps = c.exponents.clone();
            exps.sort();
            exps.dedup();
            ensure(c.k == k && exps.len() == k, || format!("cyclic {k}: exponents {:?}", c.exponents))?;
            ensure(!c.h.is_zero() && !c.g.is_zero() && ms.act(&c.h, &c.g).unwrap().is_zero(), || "h g != 0".into())?;
        }
    }
    Ok("saturating(2): f = X^2, g = q - qX for q = 1..5; cyclic 2, 3, 4: h g = 0 with k exponents".into())
}

fn zero_divisor_transfer() -> Outcome {
    let mut lines = Vec::new();
    for (ring, expected) in [(zmod(6), 2), (zmod(12), 2), (zmod(4), 1), (t_ring(), 1)] {
        for degree in [1, 2] {
            let ms = over_itself(&ring, Monoid::free(1).unwrap());
            let report = verify::verify_zero_divisor_transfer(&ms, &SupportWindow::polynomial(degree), DEFAULT_BUDGET)
                .map_err(|e| e.to_string())?;
            if report.skipped() {
                lines.push(format!("{} window 0..={degree} skipped", ring.label()));
                continue;
            }
            ensure(report.passed(), || format!("{} window 0..={degree}: {:?}", ring.label(), report.outcome))?;
            let Some(Details::ZeroDivisorTransfer { degree: got, primal, .. }) = report.details else {
                return Err("missing details".into());
            };
            ensure(got == expected && primal == (expected == 1), || format!("{}: degree {got}", ring.label()))?;
            lines.push(format!("{} 0..={degree}: {} series", ring.label(), report.instances_checked));
        }
    }
    Ok(format!("degrees 2, 2, 1, 1; {}", lines.join(", ")))
}

fn submodule_extension() -> Outcome {
    let w = SupportWindow::polynomial(1);
    let ms = over_itself(&zmod(4), Monoid::free(1).unwrap());
    let zero = Submodule::zero(ms.module());
    let report = verify::verify_submodule_extension(&ms, &zero, &w, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("Z/4 (0): {:?}", report.outcome))?;
    let Some(Details::SubmoduleExtension { prime, primary, .. }) = &report.details else {
        return Err("missing details".into());
    };
    ensure(primary.promised && primary.window_violation.is_none(), || "primary transfer".into())?;
    ensure(!prime.promised && prime.window_violation.is_some(), || "(0)[S] should not be prime".into())?;

    let ms = over_itself(&zmod(6), Monoid::free(1).unwrap());
    let three = Submodule::generated(ms.module(), &[3]).unwrap();
    let report = verify::verify_submodule_extension(&ms, &three, &w, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let Some(Details::SubmoduleExtension { prime, .. }) = &report.details else {
        return Err("missing details".into());
    };
    ensure(report.passed() && prime.promised && prime.window_violation.is_none(), || "Z/6 (3) prime transfer".into())?;
    Ok("Z/4 (0) primary and not prime in the window; Z/6 (3) prime".into())
}

fn regularity() -> Outcome {
    let mut checked = 0;
    let mut fired = 0;
    for ring in fleet_rings() {
        let ms = over_itself(&ring, Monoid::free(1).unwrap());
        // the 64-element ring needs 4096^2 searches on this window
        let report = verify::verify_content_regularity(&ms, &SupportWindow::polynomial(1), 2 * DEFAULT_BUDGET)
            .map_err(|e| format!("{}: {e}", ring.label()))?;
        ensure(report.passed(), || format!("{}: {:?}", ring.label(), report.outcome))?;
        let Some(Details::ContentRegularity { oracle_fired, zero_divisors, .. }) = report.details else {
            return Err("missing details".into());
        };
        ensure(oracle_fired <= zero_divisors, || format!("{}: oracle fired on a regular f", ring.label()))?;
        checked += report.instances_checked;
        fired += oracle_fired;
    }
    Ok(format!("{checked} series across the fleet, oracle fired {fired} times, no disagreement"))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semizd"))
}

fn demo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../sessions/demo.json")
}

fn determinism() -> Outcome {
    let session = Session::load(&demo()).map_err(|e| e.to_string())?;
    let first = output::payload_hash(&run_commands(&session, None));
    let second = output::payload_hash(&run_commands(&session, None));
    ensure(first == second, || "payload hashes differ".into())?;
    let runs: Vec<_> = (0..2).map(|_| bin().arg("run").arg(demo()).output().unwrap()).collect();
    let last = |o: &std::process::Output| String::from_utf8_lossy(&o.stdout).lines().last().unwrap_or_default().to_string();
    ensure(last(&runs[0]) == last(&runs[1]), || "summary lines differ between runs".into())?;
    ensure(runs[0].status.code() == Some(0), || format!("demo exit {:?}", runs[0].status.code()))?;

    // relabel module elements, then ring elements
    for ring in fleet_rings() {
        let module = FiniteModule::ring_as_module(&ring);
        let cover = |m: &FiniteModule| {
            let mut p: Vec<Vec<usize>> = decompose_zero_divisors(m).unwrap().cover().unwrap().primes.iter().map(members).collect();
            p.sort();
            p
        };
        let expected = cover(&module);
        let mut perm: Vec<usize> = (0..ring.size()).collect();
        perm[1..].rotate_left(1);
        ensure(cover(&module.permuted(&perm).unwrap()) == expected, || format!("{}: module relabel", ring.label()))?;
        let relabelled = Arc::new(ring.permuted(&perm).unwrap());
        let moved = module.over_relabelled_ring(&relabelled, &perm).unwrap();
        let mut mapped: Vec<Vec<usize>> = expected
            .iter()
            .map(|p| {
                let mut q: Vec<usize> = p.iter().map(|&x| perm[x]).collect();
                q.sort_unstable();
                q
            })
            .collect();
        mapped.sort();
        ensure(cover(&moved) == mapped, || format!("{}: ring relabel", ring.label()))?;
    }

    // exit codes end to end; code 1 needs a failing theorem and is
    // covered by the precedence unit test instead
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"rings": {"x": {"table": {"add": [[0,1],[1,1]], "mul": [[0,0],[0,1]], "zero": 0, "one": 1}}}}"#)
        .unwrap();
    let code = bin().arg("run").arg(&bad).output().unwrap().status.code();
    ensure(code == Some(2), || format!("malformed table exit {code:?}"))?;
    let big = dir.path().join("big.json");
    std::fs::write(
        &big,
        r#"{"rings": {"R": {"zmod": 12}}, "monoids": {"N": {"free": 1}},
            "commands": [{"command": "verify", "statement": "monoid-equivalence", "ring": "R", "monoid": "N",
                          "window": {"degree": 5}}]}"#,
    )
    .unwrap();
    let code = bin().arg("run").arg(&big).output().unwrap().status.code();
    ensure(code == Some(3), || format!("oversized window exit {code:?}"))?;
    Ok("identical payload hashes, relabelling invariant across the fleet, exits 0/2/3 observed".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("structure audit", Duration::from_secs(10), structure_audit),
        ("Z/6 analysis", Duration::MAX, analysis_z6),
        ("Z/4 analysis", Duration::MAX, analysis_z4),
        ("Dedekind-Mertens", Duration::from_secs(120), dedekind_mertens),
        ("McCoy exhaustive", Duration::from_secs(120), mccoy),
        ("monoid failure branches", Duration::MAX, failure_branches),
        ("zero-divisor transfer", Duration::from_secs(300), zero_divisor_transfer),
        ("submodule extension", Duration::MAX, submodule_extension),
        ("regularity agreement", Duration::MAX, regularity),
        ("determinism and exit codes", Duration::MAX, determinism),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = started.elapsed();
        let result = match result {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.1?}, limit {limit:.0?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} ({elapsed:.2?}): {detail}", i + 1);
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
