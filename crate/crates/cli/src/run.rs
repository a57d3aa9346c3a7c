//! Command execution. Each command yields one [`Record`]; failures become
//! error records and the run moves on.

use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use semizd_core::monoid::{Cancellation, MonoidKind, Torsion};
use semizd_core::verify::{self, Outcome, Statement, SupportWindow, VerificationReport};
use semizd_core::{
    check_property_a, decompose_zero_divisors, has_very_few_zero_divisors, primality, FiniteModule, FiniteRing, Monoid,
    MonoidElement, SemigroupModule,
};

use crate::session::{
    resolve_element, resolve_exponent, CommandDef, Session, SessionError, SeriesEntry, Space, WindowDef,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Counterexample,
    Skipped,
    Error,
}

#[derive(Debug, Clone)]
pub struct Record {
    pub index: usize,
    pub command: CommandDef,
    pub status: Status,
    pub result: Value,
    pub elapsed: Duration,
}

impl Record {
    /// The deterministic part of the record.
    pub fn payload(&self) -> Value {
        let key = if self.status == Status::Error { "error" } else { "result" };
        json!({
            "index": self.index,
            "command": self.command,
            "status": self.status,
            key: self.result,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error(transparent)]
    Algebra(#[from] semizd_core::Error),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CommandError>;

/// Runs every command in file order.
pub fn run_commands(session: &Session, budget_override: Option<u64>) -> Vec<Record> {
    let budget = budget_override.unwrap_or_else(|| session.budget_default());
    session
        .file
        .commands
        .iter()
        .enumerate()
        .map(|(index, command)| {
            let started = Instant::now();
            let path = format!("commands[{index}]");
            let (status, result) = match execute(session, command, budget, &path) {
                Ok(pair) => pair,
                Err(e) => (Status::Error, Value::String(e.to_string())),
            };
            Record { index, command: command.clone(), status, result, elapsed: started.elapsed() }
        })
        .collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn execute(session: &Session, command: &CommandDef, budget: u64, path: &str) -> Result<(Status, Value)> {
    match command {
        CommandDef::Analyze { module } => {
            let module = &session.module(module, path)?.module;
            Ok((Status::Ok, analyze(module)?))
        }
        CommandDef::Dm { f, g, module, cap } => {
            let (ms, f, g) = pair_context(session, f, Some(g), module.as_deref(), path)?;
            let g = g.expect("g given");
            let result = ms.dedekind_mertens(&f.series, &g.series, *cap)?;
            Ok((Status::Ok, to_value(&result)))
        }
        CommandDef::Mccoy { f, g, module } => {
            let (ms, f, g) = pair_context(session, f, Some(g), module.as_deref(), path)?;
            let g = g.expect("g given");
            let m = ms.mccoy_witness(&f.series, &g.series)?;
            let value = json!({
                "witness": m,
                "witness_name": ms.module().name(m),
                "verified": ms.kills(&f.series, m),
            });
            Ok((Status::Ok, value))
        }
        CommandDef::Zdtest { f, module } => {
            let (ms, f, _) = pair_context(session, f, None, module.as_deref(), path)?;
            let verdict = ms.zero_divisor_test(&f.series)?;
            let mut value = to_value(&verdict);
            value["is_zero_divisor"] = json!(verdict.is_zero_divisor());
            Ok((Status::Ok, value))
        }
        CommandDef::Counterexample { module, monoid, q } => {
            let module = &session.module(module, path)?.module;
            let monoid = session.monoid(monoid, path)?;
            let ms = SemigroupModule::new(module, monoid);
            let qs: Vec<usize> = match q {
                Some(q) => vec![resolve_element(q, &|n| module.element_by_name(n), module.size(), path)?],
                None => module.nonzero_elements().collect(),
            };
            Ok((Status::Ok, counterexample(&ms, &qs)?))
        }
        CommandDef::Verify { statement, ring, module, monoid, submodule, window, max_support } => {
            let id = Statement::from_id(statement).ok_or_else(|| {
                let known: Vec<&str> = Statement::ALL.iter().map(|s| s.id()).collect();
                CommandError::Usage(format!("unknown statement \"{statement}\"; expected one of {}", known.join(", ")))
            })?;
            let args = VerifyArgs {
                ring: ring.as_deref(),
                module: module.as_deref(),
                monoid: monoid.as_deref(),
                submodule: submodule.as_deref(),
                window: window.as_ref(),
                max_support: *max_support,
            };
            let report = run_verify(session, id, &args, budget, path)?;
            let status = match report.outcome {
                Outcome::Pass => Status::Ok,
                Outcome::Counterexample { .. } => Status::Counterexample,
                Outcome::Skipped { .. } => Status::Skipped,
            };
            Ok((status, report_value(session, &args, &report, path)?))
        }
    }
}

fn analyze(module: &Arc<FiniteModule>) -> Result<Value> {
    let zero_divisors = module.zero_divisors()?;
    let decomposition = decompose_zero_divisors(module)?;
    let very_few = has_very_few_zero_divisors(module)?;
    let property_a = check_property_a(module)?;
    let primal = primality(module)?;
    Ok(json!({
        "module": module.label(),
        "zero_divisors": zero_divisors,
        "decomposition": decomposition,
        "degree": decomposition.cover().map(|c| c.degree),
        "very_few": very_few.holds,
        "associated_primes": very_few.associated,
        "property_a": property_a,
        "primal": primal.is_primal(),
        "primality": primal,
    }))
}

/// Resolves `f` (over a ring), an optional `g`, and the module they act on.
fn pair_context<'a>(
    session: &'a Session,
    f: &str,
    g: Option<&str>,
    module: Option<&str>,
    path: &str,
) -> Result<(SemigroupModule, &'a SeriesEntry, Option<&'a SeriesEntry>)> {
    let f_entry = session.series_entry(f, path)?;
    let Space::Ring(ring_name) = &f_entry.space else {
        return Err(CommandError::Usage(format!("series \"{f}\" must have ring coefficients")));
    };
    let g_entry = g.map(|g| session.series_entry(g, path)).transpose()?;
    let g_module = g_entry.and_then(|e| match &e.space {
        Space::Module(m) => Some(m.as_str()),
        Space::Ring(_) => None,
    });
    let module = match module.or(g_module) {
        Some(name) => Arc::clone(&session.module(name, path)?.module),
        None => Arc::new(FiniteModule::ring_as_module(session.ring(ring_name, path)?)),
    };
    let ring = session.ring(ring_name, path)?;
    if !module.ring().same_tables(ring) {
        return Err(CommandError::Usage(format!("module {} is not over the ring of \"{f}\"", module.label())));
    }
    if let Some(g_entry) = g_entry {
        let fits = match &g_entry.space {
            Space::Module(m) => session.module(m, path)?.module.same_tables(&module),
            Space::Ring(r) => FiniteModule::ring_as_module(session.ring(r, path)?).same_tables(&module),
        };
        if !fits {
            return Err(CommandError::Usage(format!("series \"{}\" is not over {}", g.unwrap_or(""), module.label())));
        }
        if g_entry.monoid != f_entry.monoid {
            return Err(CommandError::Usage("f and g live over different monoids".into()));
        }
    }
    let monoid = session.monoid(&f_entry.monoid, path)?;
    Ok((SemigroupModule::new(&module, monoid), f_entry, g_entry))
}

fn counterexample(ms: &SemigroupModule, qs: &[usize]) -> Result<Value> {
    let monoid = ms.monoid();
    if let Cancellation::Collision { s, t, u } = monoid.cancellation() {
        let built = qs
            .iter()
            .map(|&q| ms.noncancellative_counterexample(&s, &t, &u, q))
            .collect::<semizd_core::Result<Vec<_>>>()?;
        return Ok(json!({ "failure": "cancellation", "constructions": built }));
    }
    if let Torsion::Torsion { s, t, .. } = monoid.torsion() {
        let built = qs
            .iter()
            .map(|&q| ms.torsion_counterexample(&s, &t, q))
            .collect::<semizd_core::Result<Vec<_>>>()?;
        return Ok(json!({ "failure": "torsion", "constructions": built }));
    }
    Err(CommandError::Usage(format!(
        "{} is cancellative and torsion-free; no construction applies",
        monoid.label()
    )))
}

struct VerifyArgs<'a> {
    ring: Option<&'a str>,
    module: Option<&'a str>,
    monoid: Option<&'a str>,
    submodule: Option<&'a str>,
    window: Option<&'a WindowDef>,
    max_support: Option<usize>,
}

/// `{0, 1, 2}` for `N`; zero and the unit vectors for `N^d`; every element
/// of a finite monoid.
pub fn default_window(monoid: &Monoid) -> Vec<MonoidElement> {
    match monoid.kind() {
        MonoidKind::Affine { dim: 1 } => (0..=2).map(|i| MonoidElement::Vector(vec![i])).collect(),
        MonoidKind::Affine { dim } => {
            let mut out = vec![MonoidElement::Vector(vec![0; *dim])];
            out.extend((0..*dim).map(|i| {
                let mut v = vec![0; *dim];
                v[i] = 1;
                MonoidElement::Vector(v)
            }));
            out
        }
        MonoidKind::Finite { order, .. } => (0..*order).map(MonoidElement::Index).collect(),
    }
}

fn window_for(monoid: &Monoid, args: &VerifyArgs, path: &str) -> Result<SupportWindow> {
    let exponents = match args.window {
        None => default_window(monoid),
        Some(WindowDef::Degree { degree }) => {
            if !matches!(monoid.kind(), MonoidKind::Affine { dim: 1 }) {
                return Err(CommandError::Usage("a degree window needs the monoid N".into()));
            }
            (0..=*degree as i64).map(|i| MonoidElement::Vector(vec![i])).collect()
        }
        Some(WindowDef::Exponents(list)) => list
            .iter()
            .map(|e| resolve_exponent(e, monoid, path))
            .collect::<std::result::Result<_, _>>()?,
    };
    Ok(SupportWindow::new(exponents, args.max_support)?)
}

fn module_arg(session: &Session, args: &VerifyArgs, path: &str) -> Result<Arc<FiniteModule>> {
    match (args.module, args.ring) {
        (Some(m), _) => Ok(Arc::clone(&session.module(m, path)?.module)),
        (None, Some(r)) => Ok(Arc::new(FiniteModule::ring_as_module(session.ring(r, path)?))),
        (None, None) => Err(CommandError::Usage("verify needs a \"module\" or a \"ring\"".into())),
    }
}

fn chain_ring(session: &Session, args: &VerifyArgs, path: &str) -> Result<Arc<FiniteRing>> {
    match (args.ring, args.module) {
        (Some(r), _) => Ok(Arc::clone(session.ring(r, path)?)),
        (None, Some(m)) => Ok(Arc::clone(session.module(m, path)?.module.ring())),
        (None, None) => Err(CommandError::Usage("verify needs a \"ring\"".into())),
    }
}

fn run_verify(session: &Session, id: Statement, args: &VerifyArgs, budget: u64, path: &str) -> Result<VerificationReport> {
    if id == Statement::FiniteRingChain {
        return Ok(verify::verify_finite_ring_chain(&chain_ring(session, args, path)?)?);
    }
    let monoid_name = args.monoid.ok_or_else(|| CommandError::Usage("verify needs a \"monoid\"".into()))?;
    let monoid = session.monoid(monoid_name, path)?;
    let window = window_for(monoid, args, path)?;
    if id == Statement::SubmoduleExtension {
        let name = args.submodule.ok_or_else(|| CommandError::Usage("verify needs a \"submodule\"".into()))?;
        let sub = &session.submodule(name, path)?.submodule;
        let ms = SemigroupModule::new(sub.module(), monoid);
        return Ok(verify::verify_submodule_extension(&ms, sub, &window, budget)?);
    }
    let ms = SemigroupModule::new(&module_arg(session, args, path)?, monoid);
    let report = match id {
        Statement::MonoidEquivalence => verify::verify_monoid_equivalence(&ms, &window, budget),
        Statement::ExtendedPrimes => verify::verify_extended_primes(&ms, &window, budget),
        Statement::ContentRegularity => verify::verify_content_regularity(&ms, &window, budget),
        Statement::ZeroDivisorTransfer => verify::verify_zero_divisor_transfer(&ms, &window, budget),
        Statement::SubmoduleExtension | Statement::FiniteRingChain => unreachable!("handled above"),
    };
    Ok(report?)
}

/// The report plus a replay flag for any counterexample.
fn report_value(session: &Session, args: &VerifyArgs, report: &VerificationReport, path: &str) -> Result<Value> {
    let mut value = to_value(report);
    if let Some(c) = report.counterexample() {
        let replayed = match report.statement {
            Statement::FiniteRingChain => {
                let ring = chain_ring(session, args, path)?;
                let module = Arc::new(FiniteModule::ring_as_module(&ring));
                let monoid = Arc::new(Monoid::free(1)?);
                c.replay(&SemigroupModule::new(&module, &monoid), None)
            }
            _ => {
                let monoid = session.monoid(args.monoid.unwrap_or_default(), path)?;
                match args.submodule {
                    Some(name) => {
                        let sub = &session.submodule(name, path)?.submodule;
                        c.replay(&SemigroupModule::new(sub.module(), monoid), Some(sub))
                    }
                    None => c.replay(&SemigroupModule::new(&module_arg(session, args, path)?, monoid), None),
                }
            }
        };
        value["replayed"] = json!(replayed);
    }
    Ok(value)
}

/// 1 for a counterexample, else 2 for an error, else 3 for a skipped
/// verification, else 0.
pub fn exit_code(records: &[Record]) -> i32 {
    let has = |s| records.iter().any(|r| r.status == s);
    if has(Status::Counterexample) {
        1
    } else if has(Status::Error) {
        2
    } else if has(Status::Skipped) {
        3
    } else {
        0
    }
}
