//! Shared helpers for structures given by index tables.

use crate::error::{Error, Result};

/// Flattens a square table, checking shape and index range.
pub(crate) fn flatten(rows: &[Vec<usize>], width: usize, height: usize, range: usize, what: &str) -> Result<Vec<u32>> {
    if rows.len() != height {
        return Err(Error::TableShape(format!(
            "{what} has {} rows, expected {height}",
            rows.len()
        )));
    }
    let mut flat = Vec::with_capacity(width * height);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::TableShape(format!(
                "{what} row {i} has {} entries, expected {width}",
                row.len()
            )));
        }
        for &v in row {
            if v >= range {
                return Err(Error::ElementOutOfRange { element: v, size: range });
            }
            flat.push(v as u32);
        }
    }
    Ok(flat)
}

pub(crate) fn unflatten(flat: &[u32], width: usize) -> Vec<Vec<usize>> {
    flat.chunks(width.max(1))
        .map(|row| row.iter().map(|&v| v as usize).collect())
        .collect()
}

/// Checks that `add` (size × size) is a commutative group law with identity
/// `zero` and returns the negation table.
pub(crate) fn abelian_group(size: usize, add: &[u32], zero: usize) -> Result<Vec<u32>> {
    let op = |a: usize, b: usize| add[a * size + b] as usize;
    if zero >= size {
        return Err(Error::ElementOutOfRange { element: zero, size });
    }
    for a in 0..size {
        if op(zero, a) != a {
            return Err(Error::AxiomViolation { axiom: "additive identity", elements: vec![a] });
        }
        for b in 0..a {
            if op(a, b) != op(b, a) {
                return Err(Error::AxiomViolation { axiom: "additive commutativity", elements: vec![a, b] });
            }
        }
    }
    for a in 0..size {
        for b in 0..size {
            let ab = op(a, b);
            for c in 0..size {
                if op(ab, c) != op(a, op(b, c)) {
                    return Err(Error::AxiomViolation { axiom: "additive associativity", elements: vec![a, b, c] });
                }
            }
        }
    }
    (0..size)
        .map(|a| match (0..size).find(|&b| op(a, b) == zero) {
            Some(b) => Ok(b as u32),
            None => Err(Error::AxiomViolation { axiom: "additive inverse", elements: vec![a] }),
        })
        .collect()
}

/// Checks that `perm` is a permutation of `0..size`; returns its inverse.
pub(crate) fn invert_permutation(perm: &[usize], size: usize) -> Result<Vec<usize>> {
    if perm.len() != size {
        return Err(Error::InvalidArgument(format!(
            "permutation has length {}, expected {size}",
            perm.len()
        )));
    }
    let mut inv = vec![usize::MAX; size];
    for (i, &p) in perm.iter().enumerate() {
        if p >= size || inv[p] != usize::MAX {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        inv[p] = i;
    }
    Ok(inv)
}
