//! Session files: named rings, monoids, modules, submodules and series,
//! plus the commands to run on them.

use std::collections::HashSet;
use std::fmt;
use std::marker::PhantomData;
use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use semizd_core::monoid::MonoidKind;
use semizd_core::verify::DEFAULT_BUDGET;
use semizd_core::{ElementSet, Elem, FiniteModule, FiniteRing, Monoid, MonoidElement, Series, Submodule};

/// Environment variable overriding the default verification budget.
pub const BUDGET_ENV: &str = "SEMIZD_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("{path}: {source}")]
    Invalid { path: String, source: semizd_core::Error },

    #[error("{path}: unresolved reference to {kind} \"{name}\"")]
    Unresolved { path: String, kind: &'static str, name: String },

    #[error("{path}: definition cycle {cycle}")]
    Cycle { path: String, cycle: String },

    #[error("{path}: {message}")]
    Semantic { path: String, message: String },
}

impl SessionError {
    fn semantic(path: impl Into<String>, message: impl Into<String>) -> Self {
        SessionError::Semantic { path: path.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, SessionError>;

type ElementLookup<'a> = dyn Fn(&str) -> Option<Elem> + 'a;

/// An element given by index or by display name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Name(String),
}

/// A monoid element: an index for finite monoids, an integer or integer
/// vector for `N^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExponentRef {
    Scalar(i64),
    Vector(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default = "default_cap")]
    pub ring_cap: usize,
    #[serde(default = "default_cap")]
    pub module_cap: usize,
}

fn default_cap() -> usize {
    semizd_core::ring::RING_CAP
}

impl Default for Settings {
    fn default() -> Self {
        Self { budget: None, ring_cap: default_cap(), module_cap: default_cap() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDef {
    Zmod(usize),
    TruncatedPoly {
        p: u64,
        nvars: usize,
        cap: usize,
    },
    Quotient {
        ring: String,
        generators: Vec<ElementRef>,
    },
    Table {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MonoidDef {
    Free(usize),
    CyclicGroup(usize),
    Saturating(usize),
    Table {
        rows: Vec<Vec<usize>>,
        identity: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDef {
    RingAsModule(String),
    QuotientModule {
        module: String,
        generators: Vec<ElementRef>,
    },
    DirectSum(Vec<String>),
    Table {
        ring: String,
        add: Vec<Vec<usize>>,
        action: Vec<Vec<usize>>,
        zero: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmoduleDef {
    pub module: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<ElementRef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<ElementRef>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDef {
    pub exponent: ExponentRef,
    pub coefficient: ElementRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    pub monoid: String,
    pub terms: Vec<TermDef>,
}

/// A window: explicit exponents, or `{0..=degree}` in `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WindowDef {
    Exponents(Vec<ExponentRef>),
    Degree { degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case", deny_unknown_fields)]
pub enum CommandDef {
    Analyze {
        module: String,
    },
    Dm {
        f: String,
        g: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        module: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cap: Option<usize>,
    },
    Mccoy {
        f: String,
        g: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        module: Option<String>,
    },
    Zdtest {
        f: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        module: Option<String>,
    },
    Counterexample {
        module: String,
        monoid: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<ElementRef>,
    },
    Verify {
        statement: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ring: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        module: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        monoid: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        submodule: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<WindowDef>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_support: Option<usize>,
    },
}

impl CommandDef {
    pub fn name(&self) -> &'static str {
        match self {
            CommandDef::Analyze { .. } => "analyze",
            CommandDef::Dm { .. } => "dm",
            CommandDef::Mccoy { .. } => "mccoy",
            CommandDef::Zdtest { .. } => "zdtest",
            CommandDef::Counterexample { .. } => "counterexample",
            CommandDef::Verify { .. } => "verify",
        }
    }
}

/// The document as written.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionFile {
    #[serde(default)]
    pub settings: Settings,
    #[serde(default, deserialize_with = "unique_names")]
    pub rings: IndexMap<String, RingDef>,
    #[serde(default, deserialize_with = "unique_names")]
    pub monoids: IndexMap<String, MonoidDef>,
    #[serde(default, deserialize_with = "unique_names")]
    pub modules: IndexMap<String, ModuleDef>,
    #[serde(default, deserialize_with = "unique_names")]
    pub submodules: IndexMap<String, SubmoduleDef>,
    #[serde(default, deserialize_with = "unique_names")]
    pub series: IndexMap<String, SeriesDef>,
    #[serde(default)]
    pub commands: Vec<CommandDef>,
}

/// Rejects repeated keys, which plain map deserialization would overwrite.
fn unique_names<'de, D, T>(deserializer: D) -> std::result::Result<IndexMap<String, T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    struct UniqueVisitor<T>(PhantomData<T>);

    impl<'de, T: Deserialize<'de>> Visitor<'de> for UniqueVisitor<T> {
        type Value = IndexMap<String, T>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map of uniquely named definitions")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
            let mut out = IndexMap::new();
            while let Some(key) = map.next_key::<String>()? {
                if out.contains_key(&key) {
                    return Err(de::Error::custom(format!("duplicate name \"{key}\"")));
                }
                let value = map.next_value()?;
                out.insert(key, value);
            }
            Ok(out)
        }
    }

    deserializer.deserialize_map(UniqueVisitor(PhantomData))
}

/// Which coefficient space a series lives over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Space {
    Ring(String),
    Module(String),
}

#[derive(Debug, Clone)]
pub struct ModuleEntry {
    pub module: Arc<FiniteModule>,
    pub ring: String,
}

#[derive(Debug, Clone)]
pub struct SubmoduleEntry {
    pub submodule: Submodule,
    pub module: String,
}

#[derive(Debug, Clone)]
pub struct SeriesEntry {
    pub series: Series,
    pub space: Space,
    pub monoid: String,
}

/// A session with every object constructed and validated.
#[derive(Debug, Clone)]
pub struct Session {
    pub file: SessionFile,
    pub rings: IndexMap<String, Arc<FiniteRing>>,
    pub monoids: IndexMap<String, Arc<Monoid>>,
    pub modules: IndexMap<String, ModuleEntry>,
    pub submodules: IndexMap<String, SubmoduleEntry>,
    pub series: IndexMap<String, SeriesEntry>,
}

impl Session {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SessionError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: SessionFile = serde_json::from_str(text).map_err(|e| SessionError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::build(file)
    }

    pub fn build(file: SessionFile) -> Result<Self> {
        let mut builder = Builder {
            file: &file,
            rings: IndexMap::new(),
            monoids: IndexMap::new(),
            modules: IndexMap::new(),
            visiting: HashSet::new(),
            stack: Vec::new(),
        };
        for name in file.rings.keys() {
            builder.ring(name, "rings")?;
        }
        for (name, def) in &file.monoids {
            let monoid = build_monoid(def).map_err(|source| SessionError::Invalid { path: format!("monoids.{name}"), source })?;
            builder.monoids.insert(name.clone(), Arc::new(monoid));
        }
        for name in file.modules.keys() {
            builder.module(name, "modules")?;
        }
        let Builder { rings, monoids, modules, .. } = builder;
        let mut session = Session {
            file: file.clone(),
            rings: file.rings.keys().map(|k| (k.clone(), Arc::clone(&rings[k]))).collect(),
            monoids,
            modules: file.modules.keys().map(|k| (k.clone(), modules[k].clone())).collect(),
            submodules: IndexMap::new(),
            series: IndexMap::new(),
        };
        for (name, def) in &file.submodules {
            let entry = session.build_submodule(name, def)?;
            session.submodules.insert(name.clone(), entry);
        }
        for (name, def) in &file.series {
            let entry = session.build_series(name, def)?;
            session.series.insert(name.clone(), entry);
        }
        Ok(session)
    }

    pub fn budget_default(&self) -> u64 {
        self.file
            .settings
            .budget
            .or_else(|| std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()))
            .unwrap_or(DEFAULT_BUDGET)
    }

    pub fn ring(&self, name: &str, path: &str) -> Result<&Arc<FiniteRing>> {
        self.rings
            .get(name)
            .ok_or_else(|| SessionError::Unresolved { path: path.into(), kind: "ring", name: name.into() })
    }

    pub fn monoid(&self, name: &str, path: &str) -> Result<&Arc<Monoid>> {
        self.monoids
            .get(name)
            .ok_or_else(|| SessionError::Unresolved { path: path.into(), kind: "monoid", name: name.into() })
    }

    pub fn module(&self, name: &str, path: &str) -> Result<&ModuleEntry> {
        self.modules
            .get(name)
            .ok_or_else(|| SessionError::Unresolved { path: path.into(), kind: "module", name: name.into() })
    }

    pub fn submodule(&self, name: &str, path: &str) -> Result<&SubmoduleEntry> {
        self.submodules
            .get(name)
            .ok_or_else(|| SessionError::Unresolved { path: path.into(), kind: "submodule", name: name.into() })
    }

    pub fn series_entry(&self, name: &str, path: &str) -> Result<&SeriesEntry> {
        self.series
            .get(name)
            .ok_or_else(|| SessionError::Unresolved { path: path.into(), kind: "series", name: name.into() })
    }

    fn build_submodule(&self, name: &str, def: &SubmoduleDef) -> Result<SubmoduleEntry> {
        let path = format!("submodules.{name}");
        let entry = self.module(&def.module, &path)?;
        let module = &entry.module;
        let invalid = |source| SessionError::Invalid { path: path.clone(), source };
        let submodule = match (&def.generators, &def.members) {
            (Some(gens), None) => {
                let gens = resolve_all(gens, |n| module.element_by_name(n), module.size(), &path)?;
                Submodule::generated(module, &gens).map_err(invalid)?
            }
            (None, Some(members)) => {
                let members = resolve_all(members, |n| module.element_by_name(n), module.size(), &path)?;
                Submodule::from_members(module, ElementSet::from_iter_in(module.size(), members)).map_err(invalid)?
            }
            _ => return Err(SessionError::semantic(path, "give exactly one of \"generators\" or \"members\"")),
        };
        Ok(SubmoduleEntry { submodule, module: def.module.clone() })
    }

    fn build_series(&self, name: &str, def: &SeriesDef) -> Result<SeriesEntry> {
        let path = format!("series.{name}");
        let monoid = self.monoid(&def.monoid, &path)?;
        let (space, size, lookup): (Space, usize, Box<ElementLookup<'_>>) =
            match (&def.ring, &def.module) {
                (Some(r), None) => {
                    let ring = self.ring(r, &path)?;
                    (Space::Ring(r.clone()), ring.size(), Box::new(move |n| ring.element_by_name(n)))
                }
                (None, Some(m)) => {
                    let module = &self.module(m, &path)?.module;
                    (Space::Module(m.clone()), module.size(), Box::new(move |n| module.element_by_name(n)))
                }
                _ => return Err(SessionError::semantic(path, "give exactly one of \"ring\" or \"module\"")),
            };
        let mut terms = Vec::with_capacity(def.terms.len());
        for (i, term) in def.terms.iter().enumerate() {
            let term_path = format!("{path}.terms[{i}]");
            let exponent = resolve_exponent(&term.exponent, monoid, &term_path)?;
            let coefficient = resolve_element(&term.coefficient, &*lookup, size, &term_path)?;
            terms.push((exponent, coefficient));
        }
        let invalid = |source| SessionError::Invalid { path: path.clone(), source };
        let series = match &space {
            Space::Ring(r) => Series::from_terms(&*self.rings[r], monoid, terms),
            Space::Module(m) => Series::from_terms(&*self.modules[m].module, monoid, terms),
        }
        .map_err(invalid)?;
        Ok(SeriesEntry { series, space, monoid: def.monoid.clone() })
    }

    /// A self-contained session whose objects are all explicit tables.
    pub fn export(&self) -> SessionFile {
        let rings = self
            .rings
            .iter()
            .map(|(name, r)| {
                let def = RingDef::Table {
                    add: r.add_rows(),
                    mul: r.mul_rows(),
                    zero: r.zero(),
                    one: r.one(),
                    names: Some(r.names().to_vec()),
                    label: Some(r.label().to_string()),
                };
                (name.clone(), def)
            })
            .collect();
        let monoids = self
            .monoids
            .iter()
            .map(|(name, m)| {
                let def = match m.kind() {
                    MonoidKind::Affine { dim } => MonoidDef::Free(*dim),
                    MonoidKind::Finite { identity, .. } => MonoidDef::Table {
                        rows: m.cayley_rows().expect("finite monoid"),
                        identity: *identity,
                        label: Some(m.label().to_string()),
                    },
                };
                (name.clone(), def)
            })
            .collect();
        let modules = self
            .modules
            .iter()
            .map(|(name, e)| {
                let m = &e.module;
                let def = ModuleDef::Table {
                    ring: e.ring.clone(),
                    add: m.add_rows(),
                    action: m.action_rows(),
                    zero: m.zero(),
                    names: Some(m.names().to_vec()),
                    label: Some(m.label().to_string()),
                };
                (name.clone(), def)
            })
            .collect();
        let submodules = self
            .submodules
            .iter()
            .map(|(name, e)| {
                let members = e.submodule.members().iter().map(ElementRef::Index).collect();
                (name.clone(), SubmoduleDef { module: e.module.clone(), generators: None, members: Some(members) })
            })
            .collect();
        let series = self
            .series
            .iter()
            .map(|(name, e)| {
                let terms = e
                    .series
                    .terms()
                    .map(|(exp, c)| TermDef {
                        exponent: match exp {
                            MonoidElement::Index(i) => ExponentRef::Scalar(*i as i64),
                            MonoidElement::Vector(v) => ExponentRef::Vector(v.clone()),
                        },
                        coefficient: ElementRef::Index(c),
                    })
                    .collect();
                let (ring, module) = match &e.space {
                    Space::Ring(r) => (Some(r.clone()), None),
                    Space::Module(m) => (None, Some(m.clone())),
                };
                (name.clone(), SeriesDef { ring, module, monoid: e.monoid.clone(), terms })
            })
            .collect();
        SessionFile {
            settings: self.file.settings.clone(),
            rings,
            monoids,
            modules,
            submodules,
            series,
            commands: self.file.commands.clone(),
        }
    }
}

/// Resolves rings and modules on demand so definitions may appear in any
/// order; `visiting` catches cycles.
struct Builder<'a> {
    file: &'a SessionFile,
    rings: IndexMap<String, Arc<FiniteRing>>,
    monoids: IndexMap<String, Arc<Monoid>>,
    modules: IndexMap<String, ModuleEntry>,
    visiting: HashSet<(&'static str, String)>,
    stack: Vec<String>,
}

impl Builder<'_> {
    fn enter(&mut self, kind: &'static str, name: &str, path: &str) -> Result<()> {
        if !self.visiting.insert((kind, name.to_string())) {
            let mut cycle = self.stack.clone();
            cycle.push(format!("{kind}.{name}"));
            return Err(SessionError::Cycle { path: path.into(), cycle: cycle.join(" -> ") });
        }
        self.stack.push(format!("{kind}.{name}"));
        Ok(())
    }

    fn leave(&mut self, kind: &'static str, name: &str) {
        self.visiting.remove(&(kind, name.to_string()));
        self.stack.pop();
    }

    fn ring(&mut self, name: &str, path: &str) -> Result<Arc<FiniteRing>> {
        if let Some(r) = self.rings.get(name) {
            return Ok(Arc::clone(r));
        }
        let def = self
            .file
            .rings
            .get(name)
            .ok_or_else(|| SessionError::Unresolved { path: path.into(), kind: "ring", name: name.into() })?;
        self.enter("rings", name, path)?;
        let here = format!("rings.{name}");
        let cap = self.file.settings.ring_cap;
        let invalid = |source| SessionError::Invalid { path: here.clone(), source };
        let ring = match def {
            RingDef::Zmod(n) => FiniteRing::zmod_capped(*n, cap).map_err(invalid)?,
            RingDef::TruncatedPoly { p, nvars, cap: degree } => {
                FiniteRing::truncated_poly_capped(*p, *nvars, *degree, cap).map_err(invalid)?
            }
            RingDef::Quotient { ring, generators } => {
                let base = self.ring(ring, &here)?;
                let gens = resolve_all(generators, |n| base.element_by_name(n), base.size(), &here)?;
                let ideal = semizd_core::Ideal::generated(&base, &gens).map_err(invalid)?;
                let mut q = base.quotient(&ideal).map_err(invalid)?;
                q.set_label(format!("{}/{:?}", base.label(), ideal.members()));
                q
            }
            RingDef::Table { add, mul, zero, one, names, label } => {
                let label = label.clone().unwrap_or_else(|| name.to_string());
                let r = FiniteRing::from_tables_capped(add, mul, *zero, *one, label, cap).map_err(invalid)?;
                match names {
                    Some(names) => r.with_names(names.clone()).map_err(invalid)?,
                    None => r,
                }
            }
        };
        self.leave("rings", name);
        let ring = Arc::new(ring);
        self.rings.insert(name.to_string(), Arc::clone(&ring));
        Ok(ring)
    }

    fn module(&mut self, name: &str, path: &str) -> Result<ModuleEntry> {
        if let Some(m) = self.modules.get(name) {
            return Ok(m.clone());
        }
        let def = self
            .file
            .modules
            .get(name)
            .ok_or_else(|| SessionError::Unresolved { path: path.into(), kind: "module", name: name.into() })?;
        self.enter("modules", name, path)?;
        let here = format!("modules.{name}");
        let cap = self.file.settings.module_cap;
        let invalid = |source| SessionError::Invalid { path: here.clone(), source };
        let entry = match def {
            ModuleDef::RingAsModule(r) => {
                let ring = self.ring(r, &here)?;
                ModuleEntry { module: Arc::new(FiniteModule::ring_as_module(&ring)), ring: r.clone() }
            }
            ModuleDef::QuotientModule { module, generators } => {
                let base = self.module(module, &here)?;
                let m = &base.module;
                let gens = resolve_all(generators, |n| m.element_by_name(n), m.size(), &here)?;
                let sub = Submodule::generated(m, &gens).map_err(invalid)?;
                let mut q = m.quotient(&sub).map_err(invalid)?;
                q.set_label(format!("{}/{:?}", m.label(), sub.members()));
                ModuleEntry { module: Arc::new(q), ring: base.ring }
            }
            ModuleDef::DirectSum(parts) => {
                let Some((first, rest)) = parts.split_first() else {
                    return Err(SessionError::semantic(here, "direct_sum needs at least one module"));
                };
                let first = self.module(first, &here)?;
                let mut acc = (*first.module).clone();
                for part in rest {
                    let next = self.module(part, &here)?;
                    acc = FiniteModule::direct_sum(&acc, &next.module).map_err(invalid)?;
                }
                if acc.size() > cap {
                    return Err(invalid(semizd_core::Error::SizeCap { requested: acc.size() as u128, cap }));
                }
                ModuleEntry { module: Arc::new(acc), ring: first.ring }
            }
            ModuleDef::Table { ring, add, action, zero, names, label } => {
                let r = self.ring(ring, &here)?;
                let label = label.clone().unwrap_or_else(|| name.to_string());
                let m = FiniteModule::from_tables_capped(&r, add, action, *zero, label, cap).map_err(invalid)?;
                let m = match names {
                    Some(names) => m.with_names(names.clone()).map_err(invalid)?,
                    None => m,
                };
                ModuleEntry { module: Arc::new(m), ring: ring.clone() }
            }
        };
        self.leave("modules", name);
        self.modules.insert(name.to_string(), entry.clone());
        Ok(entry)
    }
}

fn build_monoid(def: &MonoidDef) -> semizd_core::Result<Monoid> {
    match def {
        MonoidDef::Free(d) => Monoid::free(*d),
        MonoidDef::CyclicGroup(k) => Monoid::cyclic_group(*k),
        MonoidDef::Saturating(c) => Monoid::saturating(*c),
        MonoidDef::Table { rows, identity, label } => {
            Monoid::from_table(rows, *identity, label.clone().unwrap_or_else(|| "table".into()))
        }
    }
}

pub fn resolve_element(r: &ElementRef, lookup: &dyn Fn(&str) -> Option<Elem>, size: usize, path: &str) -> Result<Elem> {
    match r {
        ElementRef::Index(i) if *i < size => Ok(*i),
        ElementRef::Index(i) => Err(SessionError::Invalid {
            path: path.into(),
            source: semizd_core::Error::ElementOutOfRange { element: *i, size },
        }),
        ElementRef::Name(n) => {
            lookup(n).ok_or_else(|| SessionError::semantic(path, format!("no element named \"{n}\"")))
        }
    }
}

fn resolve_all(refs: &[ElementRef], lookup: impl Fn(&str) -> Option<Elem>, size: usize, path: &str) -> Result<Vec<Elem>> {
    refs.iter().map(|r| resolve_element(r, &lookup, size, path)).collect()
}

pub fn resolve_exponent(e: &ExponentRef, monoid: &Monoid, path: &str) -> Result<MonoidElement> {
    let element = match (monoid.kind(), e) {
        (MonoidKind::Finite { .. }, ExponentRef::Scalar(i)) if *i >= 0 => MonoidElement::Index(*i as usize),
        (MonoidKind::Affine { dim: 1 }, ExponentRef::Scalar(i)) => MonoidElement::Vector(vec![*i]),
        (MonoidKind::Affine { .. }, ExponentRef::Vector(v)) => MonoidElement::Vector(v.clone()),
        _ => {
            return Err(SessionError::semantic(
                path,
                format!("exponent {e:?} does not name an element of {}", monoid.label()),
            ))
        }
    };
    monoid
        .check(&element)
        .map_err(|source| SessionError::Invalid { path: path.into(), source })?;
    Ok(element)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_session_loads() {
        let s = Session::parse(r#"{"rings": {"R6": {"zmod": 6}}, "modules": {"M": {"ring_as_module": "R6"}}}"#)
            .unwrap();
        assert_eq!(s.rings.len() + s.modules.len(), 2);
        assert_eq!(s.modules["M"].module.size(), 6);
    }

    #[test]
    fn forward_references_resolve() {
        let s = Session::parse(
            r#"{"modules": {"Q": {"quotient_module": {"module": "M", "generators": [3]}},
                            "M": {"ring_as_module": "R"}},
                "rings": {"R": {"zmod": 6}}}"#,
        )
        .unwrap();
        assert_eq!(s.modules["Q"].module.size(), 3);
        assert_eq!(s.modules.keys().collect::<Vec<_>>(), ["Q", "M"]);
    }

    #[test]
    fn failing_associativity_names_the_triple() {
        // 0 is the identity, 1+1 = 2, 1+2 = 2, 2+2 = 0: (1+1)+2 = 0 but 1+(1+2) = 2
        let text = r#"{"rings": {"bad": {"table": {
            "add": [[0,1,2],[1,2,2],[2,2,0]],
            "mul": [[0,0,0],[0,1,2],[0,2,1]], "zero": 0, "one": 1}}}}"#;
        let err = Session::parse(text).unwrap_err();
        let SessionError::Invalid { path, source } = &err else { panic!("{err}") };
        assert_eq!(path, "rings.bad");
        assert!(matches!(source, semizd_core::Error::AxiomViolation { .. }), "{source}");
    }

    #[test]
    fn unresolved_and_cyclic_references() {
        let text = r#"{"rings": {"R": {"zmod": 2}},
            "series": {"f": {"ring": "R", "monoid": "S9", "terms": []}}}"#;
        let err = Session::parse(text).unwrap_err();
        assert!(matches!(&err, SessionError::Unresolved { kind: "monoid", name, .. } if name == "S9"), "{err}");

        let text = r#"{"rings": {"A": {"quotient": {"ring": "B", "generators": []}},
                                  "B": {"quotient": {"ring": "A", "generators": []}}}}"#;
        assert!(matches!(Session::parse(text).unwrap_err(), SessionError::Cycle { .. }));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Session::parse("{\n  \"rings\": {\"R\": {\"zmod\": }}\n}").unwrap_err();
        let SessionError::Parse { line, .. } = err else { panic!("{err}") };
        assert_eq!(line, 2);
        let err = Session::parse(r#"{"rings": {"R": {"zmod": 2}, "R": {"zmod": 3}}}"#).unwrap_err();
        assert!(err.to_string().contains("duplicate name"), "{err}");
    }

    #[test]
    fn named_coefficients_and_exponents() {
        let text = r#"{"rings": {"T": {"truncated_poly": {"p": 2, "nvars": 2, "cap": 3}}},
            "monoids": {"N": {"free": 1}, "C": {"cyclic_group": 3}},
            "series": {"f": {"ring": "T", "monoid": "N",
                             "terms": [{"exponent": 0, "coefficient": "a"}, {"exponent": 1, "coefficient": "b"}]},
                       "h": {"ring": "T", "monoid": "C", "terms": [{"exponent": 2, "coefficient": 1}]}}}"#;
        let s = Session::parse(text).unwrap();
        assert_eq!(s.series["f"].series.support_len(), 2);
        let bad = text.replace("\"exponent\": 2", "\"exponent\": 3");
        assert!(Session::parse(&bad).is_err());
    }
}
