//! Finite unital modules over finite rings, submodules, annihilators and
//! zero-divisor primitives.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::ideal::{additive_span, same_ring, Ideal};
use crate::ring::{Elem, FiniteRing, RING_CAP};
use crate::table::{abelian_group, flatten, invert_permutation, unflatten};

/// Default cap on the number of module elements.
pub const MODULE_CAP: usize = RING_CAP;

/// A finite unital module over a [`FiniteRing`], given by its addition table
/// and the action table (`ring element × module element`).
#[derive(Clone)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    action: Vec<u32>,
    zero: Elem,
    label: String,
    names: Vec<String>,
}

impl FiniteModule {
    /// `R` as a module over itself.
    pub fn ring_as_module(ring: &Arc<FiniteRing>) -> Self {
        let n = ring.size();
        let mut add = Vec::with_capacity(n * n);
        let mut action = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(ring.add(a, b) as u32);
                action.push(ring.mul(a, b) as u32);
            }
        }
        Self {
            ring: Arc::clone(ring),
            size: n,
            neg: (0..n).map(|a| ring.neg(a) as u32).collect(),
            add,
            action,
            zero: ring.zero(),
            label: ring.label().to_string(),
            names: ring.names().to_vec(),
        }
    }

    /// Builds a module from tables and audits every axiom.
    pub fn from_tables(
        ring: &Arc<FiniteRing>,
        add: &[Vec<usize>],
        action: &[Vec<usize>],
        zero: Elem,
        label: impl Into<String>,
    ) -> Result<Self> {
        Self::from_tables_capped(ring, add, action, zero, label, MODULE_CAP)
    }

    pub fn from_tables_capped(
        ring: &Arc<FiniteRing>,
        add: &[Vec<usize>],
        action: &[Vec<usize>],
        zero: Elem,
        label: impl Into<String>,
        cap: usize,
    ) -> Result<Self> {
        let m = add.len();
        if m == 0 {
            return Err(Error::TableShape("module must have at least one element".into()));
        }
        if m > cap {
            return Err(Error::SizeCap { requested: m as u128, cap });
        }
        let add = flatten(add, m, m, m, "add table")?;
        let action = flatten(action, m, ring.size(), m, "action table")?;
        let neg = abelian_group(m, &add, zero)?;
        let module = Self {
            ring: Arc::clone(ring),
            size: m,
            add,
            neg,
            action,
            zero,
            label: label.into(),
            names: (0..m).map(|i| i.to_string()).collect(),
        };
        module.audit_action()?;
        Ok(module)
    }

    /// Componentwise direct sum; element `(a, b)` has index `a * |M2| + b`.
    pub fn direct_sum(first: &FiniteModule, second: &FiniteModule) -> Result<Self> {
        if !same_ring(&first.ring, &second.ring) {
            return Err(Error::Mismatch("direct sum of modules over different rings"));
        }
        let (m1, m2) = (first.size, second.size);
        let size = m1 * m2;
        if size > MODULE_CAP {
            return Err(Error::SizeCap { requested: size as u128, cap: MODULE_CAP });
        }
        let split = |x: usize| (x / m2, x % m2);
        let join = |a: usize, b: usize| (a * m2 + b) as u32;
        let mut add = Vec::with_capacity(size * size);
        for x in 0..size {
            let (a, b) = split(x);
            for y in 0..size {
                let (c, d) = split(y);
                add.push(join(first.add(a, c), second.add(b, d)));
            }
        }
        let mut action = Vec::with_capacity(first.ring.size() * size);
        for r in first.ring.elements() {
            for x in 0..size {
                let (a, b) = split(x);
                action.push(join(first.act(r, a), second.act(r, b)));
            }
        }
        let neg = (0..size)
            .map(|x| {
                let (a, b) = split(x);
                join(first.neg(a), second.neg(b))
            })
            .collect();
        let names = (0..size)
            .map(|x| {
                let (a, b) = split(x);
                format!("({},{})", first.name(a), second.name(b))
            })
            .collect();
        Ok(Self {
            ring: Arc::clone(&first.ring),
            size,
            add,
            neg,
            action,
            zero: join(first.zero, second.zero) as usize,
            label: format!("{} + {}", first.label, second.label),
            names,
        })
    }

    /// `M / N`; elements are cosets indexed by least representative.
    pub fn quotient(&self, sub: &Submodule) -> Result<Self> {
        if !same_module(&sub.module, self) {
            return Err(Error::Mismatch("submodule of a different module"));
        }
        let mut coset_of = vec![usize::MAX; self.size];
        let mut reps = Vec::new();
        for x in 0..self.size {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for n in sub.members.iter() {
                coset_of[self.add(x, n)] = idx;
            }
        }
        let q = reps.len();
        let mut add = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                add.push(coset_of[self.add(a, b)] as u32);
            }
        }
        let mut action = Vec::with_capacity(self.ring.size() * q);
        for r in self.ring.elements() {
            for &a in &reps {
                action.push(coset_of[self.act(r, a)] as u32);
            }
        }
        let neg = reps.iter().map(|&a| coset_of[self.neg(a)] as u32).collect();
        let members: Vec<&str> = sub.members.iter().map(|x| self.name(x)).collect();
        Ok(Self {
            ring: Arc::clone(&self.ring),
            size: q,
            add,
            neg,
            action,
            zero: coset_of[self.zero],
            label: format!("{}/({})", self.label, members.join(",")),
            names: reps.iter().map(|&a| self.names[a].clone()).collect(),
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn is_zero_module(&self) -> bool {
        self.size == 1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&x| x != self.zero)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a] as usize
    }

    /// The ring action `r · x`.
    #[inline]
    pub fn act(&self, r: Elem, x: Elem) -> Elem {
        self.action[r * self.size + x] as usize
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::TableShape(format!("{} names for {} elements", names.len(), self.size)));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidArgument("element names must be distinct".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        unflatten(&self.add, self.size)
    }

    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        unflatten(&self.action, self.size)
    }

    /// Table equality (including the base ring), ignoring labels and names.
    pub fn same_tables(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.size == other.size
            && self.zero == other.zero
            && self.add == other.add
            && self.action == other.action
    }

    /// Full scan of the module axioms.
    pub fn audit(&self) -> Result<()> {
        abelian_group(self.size, &self.add, self.zero)?;
        self.audit_action()
    }

    fn audit_action(&self) -> Result<()> {
        let ring = &*self.ring;
        let m = self.size;
        for x in 0..m {
            if self.act(ring.one(), x) != x {
                return Err(Error::AxiomViolation { axiom: "unital action", elements: vec![x] });
            }
        }
        for r in ring.elements() {
            for x in 0..m {
                for y in 0..m {
                    if self.act(r, self.add(x, y)) != self.add(self.act(r, x), self.act(r, y)) {
                        return Err(Error::AxiomViolation { axiom: "r(x+y) = rx+ry", elements: vec![r, x, y] });
                    }
                }
            }
            for s in ring.elements() {
                for x in 0..m {
                    if self.act(ring.add(r, s), x) != self.add(self.act(r, x), self.act(s, x)) {
                        return Err(Error::AxiomViolation { axiom: "(r+s)x = rx+sx", elements: vec![r, s, x] });
                    }
                    if self.act(ring.mul(r, s), x) != self.act(r, self.act(s, x)) {
                        return Err(Error::AxiomViolation { axiom: "(rs)x = r(sx)", elements: vec![r, s, x] });
                    }
                }
            }
        }
        Ok(())
    }

    /// Relabels module elements: old `i` becomes `perm[i]`. The ring is kept.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let inv = invert_permutation(perm, self.size)?;
        let m = self.size;
        let mut add = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                add[perm[a] * m + perm[b]] = perm[self.add(a, b)] as u32;
            }
        }
        let mut action = vec![0u32; self.ring.size() * m];
        for r in self.ring.elements() {
            for x in 0..m {
                action[r * m + perm[x]] = perm[self.act(r, x)] as u32;
            }
        }
        Ok(Self {
            ring: Arc::clone(&self.ring),
            size: m,
            neg: (0..m).map(|y| perm[self.neg(inv[y])] as u32).collect(),
            add,
            action,
            zero: perm[self.zero],
            label: self.label.clone(),
            names: (0..m).map(|y| self.names[inv[y]].clone()).collect(),
        })
    }

    /// Moves the module onto an isomorphic copy of its ring: ring element
    /// `r` of the old ring is `ring_perm[r]` in `new_ring`.
    pub fn over_relabelled_ring(&self, new_ring: &Arc<FiniteRing>, ring_perm: &[usize]) -> Result<Self> {
        invert_permutation(ring_perm, self.ring.size())?;
        let m = self.size;
        let mut action = vec![0u32; self.ring.size() * m];
        for r in self.ring.elements() {
            for x in 0..m {
                action[ring_perm[r] * m + x] = self.act(r, x) as u32;
            }
        }
        let module = Self {
            ring: Arc::clone(new_ring),
            action,
            ..self.clone()
        };
        module.audit_action()?;
        Ok(module)
    }

    fn require_nonzero(&self) -> Result<()> {
        if self.is_zero_module() {
            Err(Error::ZeroModule)
        } else {
            Ok(())
        }
    }

    /// `Ann(m) = {r : r·m = 0}`.
    pub fn annihilator_of_element(&self, m: Elem) -> Result<Ideal> {
        if m >= self.size {
            return Err(Error::ElementOutOfRange { element: m, size: self.size });
        }
        let members = ElementSet::from_iter_in(
            self.ring.size(),
            self.ring.elements().filter(|&r| self.act(r, m) == self.zero),
        );
        Ok(Ideal::from_members_unchecked(&self.ring, members))
    }

    /// `Ann_M(subset) = {m : a·m = 0 for every a in subset}`. Equal to the
    /// annihilator of the ideal the subset generates.
    pub fn annihilator_of(self: &Arc<Self>, subset: &ElementSet) -> Submodule {
        let members = ElementSet::from_iter_in(
            self.size,
            self.elements()
                .filter(|&m| subset.iter().all(|a| self.act(a, m) == self.zero)),
        );
        Submodule::from_members_unchecked(self, members)
    }

    /// `Z_R(M) = {r : r·m = 0 for some m ≠ 0}`.
    pub fn zero_divisors(&self) -> Result<ElementSet> {
        self.require_nonzero()?;
        Ok(ElementSet::from_iter_in(
            self.ring.size(),
            self.ring
                .elements()
                .filter(|&r| self.nonzero_elements().any(|m| self.act(r, m) == self.zero)),
        ))
    }

    /// Prime ideals of the form `Ann(m)`, `m ≠ 0`, each with its least
    /// witness, sorted canonically.
    pub fn associated_primes(&self) -> Result<Vec<AssociatedPrime>> {
        self.require_nonzero()?;
        let mut out: Vec<AssociatedPrime> = Vec::new();
        for m in self.nonzero_elements() {
            let ann = self.annihilator_of_element(m)?;
            if out.iter().any(|p| p.prime == ann) || !ann.is_prime() {
                continue;
            }
            out.push(AssociatedPrime { prime: ann, witness: m });
        }
        out.sort_by(|a, b| a.prime.cmp(&b.prime));
        Ok(out)
    }
}

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        self.same_tables(other) && self.label == other.label && self.names == other.names
    }
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModule({} over {}, {} elements)", self.label, self.ring.label(), self.size)
    }
}

pub(crate) fn same_module(a: &FiniteModule, b: &FiniteModule) -> bool {
    std::ptr::eq(a, b) || a.same_tables(b)
}

/// An associated prime together with an element it annihilates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatedPrime {
    pub prime: Ideal,
    pub witness: Elem,
}

/// A submodule, stored as its member set.
#[derive(Clone)]
pub struct Submodule {
    module: Arc<FiniteModule>,
    members: ElementSet,
}

impl Submodule {
    pub fn from_members(module: &Arc<FiniteModule>, members: ElementSet) -> Result<Self> {
        if members.domain() != module.size() {
            return Err(Error::Mismatch("member set domain differs from module size"));
        }
        if !members.contains(module.zero()) {
            return Err(Error::NotASubmodule("missing zero".into()));
        }
        for x in members.iter() {
            for y in members.iter() {
                if !members.contains(module.add(x, y)) {
                    return Err(Error::NotASubmodule(format!("{x} + {y} escapes")));
                }
            }
            for r in module.ring().elements() {
                if !members.contains(module.act(r, x)) {
                    return Err(Error::NotASubmodule(format!("{r} · {x} escapes")));
                }
            }
        }
        Ok(Self { module: Arc::clone(module), members })
    }

    pub(crate) fn from_members_unchecked(module: &Arc<FiniteModule>, members: ElementSet) -> Self {
        Self { module: Arc::clone(module), members }
    }

    pub fn zero(module: &Arc<FiniteModule>) -> Self {
        Self::from_members_unchecked(module, ElementSet::from_iter_in(module.size(), [module.zero()]))
    }

    pub fn full(module: &Arc<FiniteModule>) -> Self {
        Self::from_members_unchecked(module, ElementSet::full(module.size()))
    }

    /// Closure of `gens` under addition and the ring action.
    pub fn generated(module: &Arc<FiniteModule>, gens: &[Elem]) -> Result<Self> {
        let mut orbit = ElementSet::empty(module.size());
        for &g in gens {
            if g >= module.size() {
                return Err(Error::ElementOutOfRange { element: g, size: module.size() });
            }
            for r in module.ring().elements() {
                orbit.insert(module.act(r, g));
            }
        }
        Ok(Self::span_of(module, &orbit))
    }

    fn span_of(module: &Arc<FiniteModule>, closed_under_action: &ElementSet) -> Self {
        let members = additive_span(module.size(), module.zero(), closed_under_action, |a, b| module.add(a, b));
        Self::from_members_unchecked(module, members)
    }

    /// `I·N`: the submodule generated by `a·x`, `a ∈ I`, `x ∈ N`.
    pub fn scaled_by(&self, ideal: &Ideal) -> Result<Self> {
        if !same_ring(ideal.ring(), self.module.ring()) {
            return Err(Error::Mismatch("ideal and submodule over different rings"));
        }
        let mut products = ElementSet::empty(self.module.size());
        for a in ideal.members().iter() {
            for x in self.members.iter() {
                products.insert(self.module.act(a, x));
            }
        }
        Ok(Self::span_of(&self.module, &products))
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Least nonzero member.
    pub fn first_nonzero(&self) -> Option<Elem> {
        self.members.iter().find(|&x| x != self.module.zero())
    }

    /// Whether `r·M ⊆ self`.
    pub fn absorbs_scalar(&self, r: Elem) -> bool {
        self.module.elements().all(|m| self.contains(self.module.act(r, m)))
    }

    /// Whether `I·M ⊆ self`.
    pub fn absorbs_ideal(&self, ideal: &Ideal) -> bool {
        ideal.members().iter().all(|r| self.absorbs_scalar(r))
    }

    /// Decides primeness and primaryness by exhaustive scan over `(r, x)`.
    ///
    /// The primary exponent search runs `n = 1..=|R|`: the powers of `r`
    /// are eventually periodic with preperiod plus period at most `|R|`, so
    /// every power of `r` already appears among them.
    pub fn classify(&self) -> SubmoduleClassification {
        let module = &self.module;
        let ring = module.ring();
        if self.members.len() == module.size() {
            return SubmoduleClassification {
                is_proper: false,
                is_prime: false,
                is_primary: false,
                prime_violation: Some(SubmoduleViolation::NotProper),
                primary_violation: Some(SubmoduleViolation::NotProper),
            };
        }
        let absorbs: Vec<bool> = ring.elements().map(|r| self.absorbs_scalar(r)).collect();
        let bound = ring.size();
        let power_absorbs: Vec<bool> = ring
            .elements()
            .map(|r| (1..=bound).any(|n| absorbs[ring.pow(r, n)]))
            .collect();
        let mut prime_violation = None;
        let mut primary_violation = None;
        'scan: for r in ring.elements() {
            for x in module.elements() {
                if self.contains(x) || !self.contains(module.act(r, x)) {
                    continue;
                }
                if prime_violation.is_none() && !absorbs[r] {
                    prime_violation = Some(SubmoduleViolation::Prime { r, x });
                }
                if primary_violation.is_none() && !power_absorbs[r] {
                    primary_violation = Some(SubmoduleViolation::Primary { r, x, exponent_bound: bound });
                }
                if prime_violation.is_some() && primary_violation.is_some() {
                    break 'scan;
                }
            }
        }
        SubmoduleClassification {
            is_proper: true,
            is_prime: prime_violation.is_none(),
            is_primary: primary_violation.is_none(),
            prime_violation,
            primary_violation,
        }
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        same_module(&self.module, &other.module) && self.members == other.members
    }
}

impl Eq for Submodule {}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule{:?}", self.members)
    }
}

impl Serialize for Submodule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

/// Why a submodule fails to be prime or primary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SubmoduleViolation {
    NotProper,
    /// `r·x ∈ P`, `x ∉ P`, `r·M ⊄ P`.
    Prime { r: Elem, x: Elem },
    /// `r·x ∈ P`, `x ∉ P`, and `r^n·M ⊄ P` for every `n ≤ exponent_bound`.
    Primary { r: Elem, x: Elem, exponent_bound: usize },
}

impl SubmoduleViolation {
    /// Re-checks the violation against `sub`.
    pub fn replay(&self, sub: &Submodule) -> bool {
        let module = sub.module();
        let ring = module.ring();
        match *self {
            SubmoduleViolation::NotProper => sub.len() == module.size(),
            SubmoduleViolation::Prime { r, x } => {
                sub.contains(module.act(r, x)) && !sub.contains(x) && !sub.absorbs_scalar(r)
            }
            SubmoduleViolation::Primary { r, x, exponent_bound } => {
                sub.contains(module.act(r, x))
                    && !sub.contains(x)
                    && (1..=exponent_bound).all(|n| !sub.absorbs_scalar(ring.pow(r, n)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubmoduleClassification {
    pub is_proper: bool,
    pub is_prime: bool,
    pub is_primary: bool,
    pub prime_violation: Option<SubmoduleViolation>,
    pub primary_violation: Option<SubmoduleViolation>,
}
