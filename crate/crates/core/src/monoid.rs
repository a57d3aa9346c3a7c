//! Commutative monoids: finite Cayley tables and affine (lattice) monoids.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::{flatten, unflatten};

/// An element of a [`Monoid`]: a table index for finite monoids, an integer
/// vector for affine ones.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum MonoidElement {
    Index(usize),
    Vector(Vec<i64>),
}

impl MonoidElement {
    pub fn vector(v: impl Into<Vec<i64>>) -> Self {
        MonoidElement::Vector(v.into())
    }
}

impl fmt::Debug for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidElement::Index(i) => write!(f, "{i}"),
            MonoidElement::Vector(v) if v.len() == 1 => write!(f, "{}", v[0]),
            MonoidElement::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidKind {
    Finite {
        order: usize,
        table: Vec<u32>,
        identity: usize,
    },
    /// A submonoid of `Z^dim`. Elements are arbitrary integer vectors.
    Affine { dim: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Monoid {
    kind: MonoidKind,
    label: String,
}

/// Result of the cancellativity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Cancellation {
    Cancellative,
    /// `s + t = s + u` with `t ≠ u`.
    Collision { s: MonoidElement, t: MonoidElement, u: MonoidElement },
}

/// Result of the torsion test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Torsion {
    TorsionFree,
    /// `n·s = n·t` with `s ≠ t`.
    Torsion { s: MonoidElement, t: MonoidElement, n: usize },
}

impl Cancellation {
    pub fn holds(&self) -> bool {
        matches!(self, Cancellation::Cancellative)
    }
}

impl Torsion {
    pub fn holds(&self) -> bool {
        matches!(self, Torsion::TorsionFree)
    }
}

impl Monoid {
    /// `N^d`, represented in the ambient lattice `Z^d`.
    pub fn free(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("free monoid rank must be positive".into()));
        }
        Ok(Self {
            kind: MonoidKind::Affine { dim: d },
            label: if d == 1 { "N".into() } else { format!("N^{d}") },
        })
    }

    /// Additive `Z/k`.
    pub fn cyclic_group(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("cyclic group order must be positive".into()));
        }
        let table = (0..k * k).map(|i| ((i / k + i % k) % k) as u32).collect();
        Ok(Self {
            kind: MonoidKind::Finite { order: k, table, identity: 0 },
            label: format!("C{k}"),
        })
    }

    /// `{0..c}` with `s ⊕ t = min(s + t, c)`.
    pub fn saturating(c: usize) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidArgument("saturation bound must be positive".into()));
        }
        let order = c + 1;
        let table = (0..order * order)
            .map(|i| (i / order + i % order).min(c) as u32)
            .collect();
        Ok(Self {
            kind: MonoidKind::Finite { order, table, identity: 0 },
            label: format!("Sat{c}"),
        })
    }

    /// A finite monoid from its Cayley table; audits commutativity,
    /// associativity and the identity law.
    pub fn from_table(rows: &[Vec<usize>], identity: usize, label: impl Into<String>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::TableShape("monoid must have at least one element".into()));
        }
        if identity >= order {
            return Err(Error::ElementOutOfRange { element: identity, size: order });
        }
        let table = flatten(rows, order, order, order, "cayley table")?;
        let m = Self {
            kind: MonoidKind::Finite { order, table, identity },
            label: label.into(),
        };
        m.audit()?;
        Ok(m)
    }

    pub fn kind(&self) -> &MonoidKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, MonoidKind::Finite { .. })
    }

    /// Number of elements of a finite monoid.
    pub fn order(&self) -> Option<usize> {
        match self.kind {
            MonoidKind::Finite { order, .. } => Some(order),
            MonoidKind::Affine { .. } => None,
        }
    }

    pub fn cayley_rows(&self) -> Option<Vec<Vec<usize>>> {
        match &self.kind {
            MonoidKind::Finite { order, table, .. } => Some(unflatten(table, *order)),
            MonoidKind::Affine { .. } => None,
        }
    }

    pub fn identity(&self) -> MonoidElement {
        match self.kind {
            MonoidKind::Finite { identity, .. } => MonoidElement::Index(identity),
            MonoidKind::Affine { dim } => MonoidElement::Vector(vec![0; dim]),
        }
    }

    pub fn contains(&self, e: &MonoidElement) -> bool {
        match (&self.kind, e) {
            (MonoidKind::Finite { order, .. }, MonoidElement::Index(i)) => i < order,
            (MonoidKind::Affine { dim }, MonoidElement::Vector(v)) => v.len() == *dim,
            _ => false,
        }
    }

    pub fn check(&self, e: &MonoidElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::Mismatch("monoid element does not belong to the monoid"))
        }
    }

    /// `s + t`, checking membership.
    pub fn add(&self, s: &MonoidElement, t: &MonoidElement) -> Result<MonoidElement> {
        self.check(s)?;
        self.check(t)?;
        Ok(self.add_unchecked(s, t))
    }

    pub(crate) fn add_unchecked(&self, s: &MonoidElement, t: &MonoidElement) -> MonoidElement {
        match (&self.kind, s, t) {
            (MonoidKind::Finite { order, table, .. }, MonoidElement::Index(a), MonoidElement::Index(b)) => {
                MonoidElement::Index(table[a * order + b] as usize)
            }
            (MonoidKind::Affine { .. }, MonoidElement::Vector(a), MonoidElement::Vector(b)) => {
                MonoidElement::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => unreachable!("element variant checked by caller"),
        }
    }

    /// `n·s` (with `0·s` the identity).
    pub fn multiple(&self, n: usize, s: &MonoidElement) -> Result<MonoidElement> {
        self.check(s)?;
        let mut acc = self.identity();
        for _ in 0..n {
            acc = self.add_unchecked(&acc, s);
        }
        Ok(acc)
    }

    fn finite_op(&self) -> Option<(usize, impl Fn(usize, usize) -> usize + '_, usize)> {
        match &self.kind {
            MonoidKind::Finite { order, table, identity } => {
                let order = *order;
                Some((order, move |a: usize, b: usize| table[a * order + b] as usize, *identity))
            }
            MonoidKind::Affine { .. } => None,
        }
    }

    /// Full scan of the commutative monoid axioms.
    pub fn audit(&self) -> Result<()> {
        let Some((order, op, e)) = self.finite_op() else {
            return Ok(());
        };
        for a in 0..order {
            if op(e, a) != a {
                return Err(Error::AxiomViolation { axiom: "monoid identity", elements: vec![a] });
            }
            for b in 0..a {
                if op(a, b) != op(b, a) {
                    return Err(Error::AxiomViolation { axiom: "monoid commutativity", elements: vec![a, b] });
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if op(op(a, b), c) != op(a, op(b, c)) {
                        return Err(Error::AxiomViolation { axiom: "monoid associativity", elements: vec![a, b, c] });
                    }
                }
            }
        }
        Ok(())
    }

    /// Affine monoids are always cancellative. For a finite table, the
    /// reported collision minimises the pair `(t, u)` first, then `s`.
    pub fn cancellation(&self) -> Cancellation {
        let Some((order, op, _)) = self.finite_op() else {
            return Cancellation::Cancellative;
        };
        for t in 0..order {
            for u in t + 1..order {
                if let Some(s) = (0..order).find(|&s| op(s, t) == op(s, u)) {
                    return Cancellation::Collision {
                        s: MonoidElement::Index(s),
                        t: MonoidElement::Index(t),
                        u: MonoidElement::Index(u),
                    };
                }
            }
        }
        Cancellation::Cancellative
    }

    pub fn is_cancellative(&self) -> bool {
        self.cancellation().holds()
    }

    /// Affine monoids are torsion-free. For a finite table the search scans
    /// `s` over non-identity elements, then `t ≠ s`, each in index order,
    /// and reports the least `n`. Any torsion pair has a non-identity
    /// member, so this ordering loses nothing. The bound `n ≤ order²` is
    /// exhaustive: the pairs `(n·s, n·t)` live in a set of size `order²`.
    pub fn torsion(&self) -> Torsion {
        let Some((order, op, e)) = self.finite_op() else {
            return Torsion::TorsionFree;
        };
        let bound = order * order;
        for s in (0..order).filter(|&s| s != e) {
            for t in (0..order).filter(|&t| t != s) {
                let (mut ns, mut nt) = (s, t);
                for n in 1..=bound {
                    if ns == nt {
                        return Torsion::Torsion {
                            s: MonoidElement::Index(s),
                            t: MonoidElement::Index(t),
                            n,
                        };
                    }
                    ns = op(ns, s);
                    nt = op(nt, t);
                }
            }
        }
        Torsion::TorsionFree
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion().holds()
    }

    /// Both hypotheses under which content arguments over `R[S]` work.
    pub fn require_cancellative_torsion_free(&self) -> Result<()> {
        if let Cancellation::Collision { s, t, u } = self.cancellation() {
            return Err(Error::Hypothesis(format!(
                "{} is not cancellative: {s}+{t} = {s}+{u}",
                self.label
            )));
        }
        if let Torsion::Torsion { s, t, n } = self.torsion() {
            return Err(Error::Hypothesis(format!(
                "{} is not torsion-free: {n}·{s} = {n}·{t}",
                self.label
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MonoidKind::Finite { order, .. } => write!(f, "Monoid({}, finite of order {order})", self.label),
            MonoidKind::Affine { dim } => write!(f, "Monoid({}, affine of dim {dim})", self.label),
        }
    }
}
