//! Finite commutative rings with identity, given by explicit tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::table::{abelian_group, flatten, invert_permutation, unflatten};

/// Index of an element inside its ring or module.
pub type Elem = usize;

/// Default cap on the modulus accepted by [`FiniteRing::zmod`].
pub const ZMOD_CAP: usize = 256;
/// Default cap on the number of elements of any table ring.
pub const RING_CAP: usize = 4096;

/// A finite commutative ring with identity. Elements are the indices
/// `0..size`; addition and multiplication are full lookup tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: Elem,
    one: Elem,
    label: String,
    names: Vec<String>,
}

impl FiniteRing {
    /// Builds a ring from raw tables and audits every axiom.
    pub fn from_tables(
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: Elem,
        one: Elem,
        label: impl Into<String>,
    ) -> Result<Self> {
        Self::from_tables_capped(add, mul, zero, one, label, RING_CAP)
    }

    pub fn from_tables_capped(
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: Elem,
        one: Elem,
        label: impl Into<String>,
        cap: usize,
    ) -> Result<Self> {
        let size = add.len();
        if size == 0 {
            return Err(Error::TableShape("ring must have at least one element".into()));
        }
        if size > cap {
            return Err(Error::SizeCap { requested: size as u128, cap });
        }
        if one >= size {
            return Err(Error::ElementOutOfRange { element: one, size });
        }
        let add = flatten(add, size, size, size, "add table")?;
        let mul = flatten(mul, size, size, size, "mul table")?;
        let neg = abelian_group(size, &add, zero)?;
        let ring = Self {
            size,
            add,
            mul,
            neg,
            zero,
            one,
            label: label.into(),
            names: (0..size).map(|i| i.to_string()).collect(),
        };
        ring.audit_multiplication()?;
        Ok(ring)
    }

    /// Internal constructor for tables that are correct by construction.
    pub(crate) fn from_flat_unchecked(
        size: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: Elem,
        one: Elem,
        label: String,
        names: Vec<String>,
    ) -> Self {
        let mut neg = vec![0u32; size];
        for a in 0..size {
            neg[a] = (0..size).find(|&b| add[a * size + b] as usize == zero).expect("additive inverse") as u32;
        }
        Self { size, add, mul, neg, zero, one, label, names }
    }

    /// `Z/n` with the usual residue tables.
    pub fn zmod(n: usize) -> Result<Self> {
        Self::zmod_capped(n, ZMOD_CAP)
    }

    pub fn zmod_capped(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if n > cap {
            return Err(Error::SizeCap { requested: n as u128, cap });
        }
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                add.push(((i + j) % n) as u32);
                mul.push(((i * j) % n) as u32);
            }
        }
        Ok(Self::from_flat_unchecked(
            n,
            add,
            mul,
            0,
            1 % n,
            format!("Z/{n}"),
            (0..n).map(|i| i.to_string()).collect(),
        ))
    }

    /// `F_p[x_1..x_nvars] / (monomials of degree >= degree_cap)`.
    ///
    /// Elements are coefficient vectors over the monomial basis ordered by
    /// total degree, then by descending exponent of the first variable. The
    /// index of an element is its coefficient vector read in base `p`, first
    /// basis monomial least significant; so for `(2, 1, 2)` the elements are
    /// `0, 1, x, 1+x`.
    pub fn truncated_poly(p: u64, nvars: usize, degree_cap: usize) -> Result<Self> {
        Self::truncated_poly_capped(p, nvars, degree_cap, RING_CAP)
    }

    pub fn truncated_poly_capped(p: u64, nvars: usize, degree_cap: usize, max_size: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if nvars == 0 || degree_cap == 0 {
            return Err(Error::InvalidArgument("nvars and degree cap must be positive".into()));
        }
        if nvars > 26 {
            return Err(Error::InvalidArgument("at most 26 variables".into()));
        }
        let basis = monomials_below(nvars, degree_cap);
        let dim = basis.len();
        let mut size: u128 = 1;
        for _ in 0..dim {
            size = size.saturating_mul(p as u128);
            if size > max_size as u128 {
                return Err(Error::SizeCap { requested: size, cap: max_size });
            }
        }
        let size = size as usize;
        let p = p as usize;

        // Product of basis monomials, or None once the degree reaches the cap.
        let mut mono_mul = vec![None; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let prod: Vec<usize> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
                mono_mul[i * dim + j] = basis.iter().position(|m| *m == prod);
            }
        }

        let digits: Vec<Vec<usize>> = (0..size)
            .map(|mut idx| {
                let mut d = vec![0; dim];
                for slot in d.iter_mut() {
                    *slot = idx % p;
                    idx /= p;
                }
                d
            })
            .collect();
        let encode = |d: &[usize]| d.iter().rev().fold(0usize, |acc, &c| acc * p + c);

        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        let mut buf = vec![0usize; dim];
        for a in 0..size {
            for b in 0..size {
                for k in 0..dim {
                    buf[k] = (digits[a][k] + digits[b][k]) % p;
                }
                add.push(encode(&buf) as u32);
                buf.iter_mut().for_each(|c| *c = 0);
                for i in (0..dim).filter(|&i| digits[a][i] != 0) {
                    for j in (0..dim).filter(|&j| digits[b][j] != 0) {
                        if let Some(k) = mono_mul[i * dim + j] {
                            buf[k] = (buf[k] + digits[a][i] * digits[b][j]) % p;
                        }
                    }
                }
                mul.push(encode(&buf) as u32);
            }
        }

        let vars: Vec<String> = if nvars == 1 {
            vec!["x".into()]
        } else {
            (0..nvars).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        };
        let names = digits.iter().map(|d| poly_name(d, &basis, &vars)).collect();
        let label = format!("F{p}[{}]/({})^{degree_cap}", vars.join(","), vars.join(","));
        let one = if dim > 0 { 1 % size } else { 0 };
        Ok(Self::from_flat_unchecked(size, add, mul, 0, one, label, names))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn is_zero_ring(&self) -> bool {
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

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `a^n`, with `a^0 = 1`.
    pub fn pow(&self, a: Elem, n: usize) -> Elem {
        (0..n).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    /// Replaces the display names. Names must be distinct.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::TableShape(format!(
                "{} names for {} elements",
                names.len(),
                self.size
            )));
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

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        unflatten(&self.mul, self.size)
    }

    /// Table equality, ignoring label and names.
    pub fn same_tables(&self, other: &Self) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }

    /// Full scan of every ring axiom.
    pub fn audit(&self) -> Result<()> {
        abelian_group(self.size, &self.add, self.zero)?;
        self.audit_multiplication()
    }

    fn audit_multiplication(&self) -> Result<()> {
        let n = self.size;
        for a in 0..n {
            if self.mul(self.one, a) != a {
                return Err(Error::AxiomViolation { axiom: "multiplicative identity", elements: vec![a] });
            }
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::AxiomViolation { axiom: "multiplicative commutativity", elements: vec![a, b] });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                let a_plus_b = self.add(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::AxiomViolation { axiom: "multiplicative associativity", elements: vec![a, b, c] });
                    }
                    if self.mul(a_plus_b, c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Err(Error::AxiomViolation { axiom: "distributivity", elements: vec![a, b, c] });
                    }
                }
            }
        }
        Ok(())
    }

    /// Least pair of nonzero elements with zero product, if any.
    pub fn zero_divisor_pair(&self) -> Option<(Elem, Elem)> {
        let nz = || self.elements().filter(|&a| a != self.zero);
        nz().flat_map(|a| nz().map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) == self.zero)
    }

    /// A nonzero ring without zero divisors.
    pub fn is_domain(&self) -> bool {
        !self.is_zero_ring() && self.zero_divisor_pair().is_none()
    }

    /// Relabels elements: old element `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let inv = invert_permutation(perm, self.size)?;
        let n = self.size;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                add[perm[a] * n + perm[b]] = perm[self.add(a, b)] as u32;
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u32;
            }
        }
        let names = (0..n).map(|i| self.names[inv[i]].clone()).collect();
        Ok(Self::from_flat_unchecked(
            n,
            add,
            mul,
            perm[self.zero],
            perm[self.one],
            self.label.clone(),
            names,
        ))
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.label, self.size)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent vectors of total degree below `cap`, ordered by degree and then
/// descending lexicographically (a^2, ab, b^2).
fn monomials_below(nvars: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: usize, remaining_vars: usize, out: &mut Vec<Vec<usize>>) {
        if remaining_vars == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(prefix, left - e, remaining_vars - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for deg in 0..cap {
        rec(&mut Vec::new(), deg, nvars, &mut out);
    }
    out
}

fn poly_name(coeffs: &[usize], basis: &[Vec<usize>], vars: &[String]) -> String {
    let mut terms = Vec::new();
    for (c, mono) in coeffs.iter().zip(basis) {
        if *c == 0 {
            continue;
        }
        let mut m = String::new();
        for (v, &e) in vars.iter().zip(mono) {
            match e {
                0 => {}
                1 => m.push_str(v),
                _ => m.push_str(&format!("{v}^{e}")),
            }
        }
        terms.push(match (c, m.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => m,
            (_, false) => format!("{c}{m}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_small_cases() {
        let z1 = FiniteRing::zmod(1).unwrap();
        assert_eq!(z1.zero(), 0);
        assert_eq!(z1.one(), 0);
        assert!(z1.is_zero_ring());

        let z6 = FiniteRing::zmod(6).unwrap();
        assert_eq!(z6.mul(2, 3), 0);
        let z4 = FiniteRing::zmod(4).unwrap();
        assert_eq!(z4.mul(2, 2), 0);
        z6.audit().unwrap();
    }

    #[test]
    fn zmod_cap() {
        assert!(matches!(FiniteRing::zmod(257), Err(Error::SizeCap { .. })));
        assert!(FiniteRing::zmod_capped(300, 512).is_ok());
        assert!(FiniteRing::zmod(0).is_err());
    }

    #[test]
    fn truncated_dual_numbers() {
        let r = FiniteRing::truncated_poly(2, 1, 2).unwrap();
        assert_eq!(r.size(), 4);
        assert_eq!(r.names(), &["0", "1", "x", "1+x"]);
        let x = r.element_by_name("x").unwrap();
        assert_eq!(r.mul(x, x), r.zero());
        // (1+x)^2 = 1 in characteristic 2
        assert_eq!(r.mul(3, 3), r.one());
        r.audit().unwrap();
    }

    #[test]
    fn truncated_two_variables() {
        let t = FiniteRing::truncated_poly(2, 2, 3).unwrap();
        assert_eq!(t.size(), 64);
        let a = t.element_by_name("a").unwrap();
        let b = t.element_by_name("b").unwrap();
        let ab = t.element_by_name("ab").unwrap();
        assert_eq!(t.mul(a, b), ab);
        assert_eq!(t.name(t.mul(a, a)), "a^2");
        assert_eq!(t.mul(ab, a), t.zero());
        assert_eq!(t.names()[1..7].to_vec(), vec!["1", "a", "1+a", "b", "1+b", "a+b"]);
        t.audit().unwrap();
    }

    #[test]
    fn truncated_degree_one_is_prime_field() {
        let r = FiniteRing::truncated_poly(3, 1, 1).unwrap();
        let z3 = FiniteRing::zmod(3).unwrap();
        assert!(r.same_tables(&z3));
    }

    #[test]
    fn truncated_errors() {
        assert_eq!(FiniteRing::truncated_poly(4, 1, 2).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FiniteRing::truncated_poly(2, 3, 4),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn table_validation_reports_triple() {
        let add = vec![vec![0, 1], vec![1, 0]];
        // multiplication with 1*1 = 0 breaks the identity law
        let mul = vec![vec![0, 0], vec![0, 0]];
        let err = FiniteRing::from_tables(&add, &mul, 0, 1, "bad").unwrap_err();
        assert_eq!(err, Error::AxiomViolation { axiom: "multiplicative identity", elements: vec![1] });
        let good = vec![vec![0, 0], vec![0, 1]];
        FiniteRing::from_tables(&add, &good, 0, 1, "F2").unwrap();
    }

    #[test]
    fn permutation_preserves_structure() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let p = z6.permuted(&[3, 5, 0, 1, 4, 2]).unwrap();
        p.audit().unwrap();
        assert_eq!(p.mul(5, 0), 0); // 1 * 2 = 2, relabelled
        assert_eq!(p.name(0), "2");
    }
}
