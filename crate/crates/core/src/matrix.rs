//! Dense square integer matrices with overflow-checked arithmetic.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(order: usize) -> Self {
        IntMatrix { order, entries: vec![0; order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, 1);
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(order: usize) -> Self {
        IntMatrix { order, entries: vec![1; order * order] }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let entries = (0..order * order).map(|ix| f(ix / order, ix % order)).collect();
        IntMatrix { order, entries }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let order = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != order) {
            return Err(Error::InvalidMatrix(format!(
                "row {bad} has {} entries, expected {order}",
                rows[bad].len()
            )));
        }
        Ok(IntMatrix { order, entries: rows.into_iter().flatten().collect() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.order + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.order.max(1)).take(self.order)
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> Result<i64> {
        (0..self.order).try_fold(0i64, |acc, i| {
            acc.checked_add(self.get(i, i)).ok_or(Error::Overflow("trace"))
        })
    }

    fn same_order(&self, other: &Self, what: &str) -> Result<()> {
        if self.order != other.order {
            return Err(Error::InvalidMatrix(format!(
                "{what}: orders {} and {} differ",
                self.order, other.order
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, what: &'static str, f: fn(i64, i64) -> Option<i64>) -> Result<Self> {
        self.same_order(other, what)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow(what)))
            .collect::<Result<_>>()?;
        Ok(IntMatrix { order: self.order, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "matrix addition", i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "matrix subtraction", i64::checked_sub)
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(Error::Overflow("matrix scaling")))
            .collect::<Result<_>>()?;
        Ok(IntMatrix { order: self.order, entries })
    }

    /// Exact product; rows are computed in parallel.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other, "matrix product")?;
        let n = self.order;
        let rows: Vec<Vec<i64>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0i64; n];
                for (l, &a) in self.row(i).iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (j, &b) in other.row(l).iter().enumerate() {
                        let term = a.checked_mul(b).ok_or(Error::Overflow("matrix product"))?;
                        row[j] = row[j].checked_add(term).ok_or(Error::Overflow("matrix product"))?;
                    }
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        Ok(IntMatrix { order: n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn square(&self) -> Result<Self> {
        self.mul(self)
    }

    /// Block matrix `(a_ij · B)`.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        let (p, q) = (self.order, other.order);
        let n = p.checked_mul(q).ok_or(Error::Overflow("kronecker order"))?;
        let mut out = Self::zeros(n);
        for i in 0..p {
            for j in 0..p {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..q {
                    for l in 0..q {
                        let v = a.checked_mul(other.get(k, l)).ok_or(Error::Overflow("kronecker product"))?;
                        out.set(i * q + k, j * q + l, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// If every entry equals the same value, returns it.
    pub fn constant_value(&self) -> Option<i64> {
        let first = *self.entries.first()?;
        self.entries.iter().all(|&x| x == first).then_some(first)
    }

    /// Number of `z` with `a_xz · a_zy ≠ 0`, counted with multiplicity,
    /// by direct enumeration rather than via the matrix square.
    pub fn count_paths2(&self, x: usize, y: usize) -> i64 {
        (0..self.order).map(|z| self.get(x, z) * self.get(z, y)).sum()
    }

    /// Characteristic polynomial `det(γI − A)` reduced mod a prime `p < 2^62`,
    /// coefficients listed from the constant term upwards (monic, length `n + 1`).
    pub fn charpoly_mod(&self, p: u64) -> Vec<u64> {
        let n = self.order;
        let p128 = p as u128;
        let red = |x: i64| x.rem_euclid(p as i64) as u64;
        let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % p128) as u64;
        let subm = |a: u64, b: u64| if a >= b { a - b } else { a + p - b };
        let addm = |a: u64, b: u64| {
            let s = a as u128 + b as u128;
            (s % p128) as u64
        };
        let mut h: Vec<Vec<u64>> = (0..n).map(|i| self.row(i).iter().map(|&x| red(x)).collect()).collect();
        // reduce to upper Hessenberg form by similarity transforms
        for col in 0..n.saturating_sub(2) {
            let Some(piv) = (col + 1..n).find(|&r| h[r][col] != 0) else {
                continue;
            };
            if piv != col + 1 {
                h.swap(piv, col + 1);
                for row in h.iter_mut() {
                    row.swap(piv, col + 1);
                }
            }
            let inv = pow_mod(h[col + 1][col], p - 2, p);
            for r in col + 2..n {
                if h[r][col] == 0 {
                    continue;
                }
                let f = mulm(h[r][col], inv);
                let (top, bottom) = h.split_at_mut(r);
                for (x, &y) in bottom[0].iter_mut().zip(&top[col + 1]) {
                    *x = subm(*x, mulm(f, y));
                }
                for row in h.iter_mut() {
                    let v = mulm(f, row[r]);
                    row[col + 1] = addm(row[col + 1], v);
                }
            }
        }
        // Hessenberg recurrence: polys[i] = charpoly of the leading i x i block
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for i in 0..n {
            let prev = &polys[i];
            let mut next = vec![0u64; i + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = addm(next[d + 1], c);
                next[d] = subm(next[d], mulm(h[i][i], c));
            }
            let mut prod = 1u64;
            for j in (0..i).rev() {
                prod = mulm(prod, h[j + 1][j]);
                if prod == 0 {
                    break;
                }
                let f = mulm(prod, h[j][i]);
                for (d, &c) in polys[j].iter().enumerate() {
                    next[d] = subm(next[d], mulm(f, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap_or_else(|| vec![1])
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Primes just below 2^61 used for multi-modular characteristic polynomials.
pub const CHARPOLY_PRIMES: [u64; 6] = [
    2305843009213693951,
    2305843009213693921,
    2305843009213693907,
    2305843009213693669,
    2305843009213693613,
    2305843009213693557,
];

/// Coefficients of `∏ (γ − λ_i)` mod `p`, constant term first.
pub fn poly_from_roots_mod(roots: &[(i64, i64)], p: u64) -> Vec<u64> {
    let mut poly = vec![1u64];
    for &(root, mult) in roots {
        let r = root.rem_euclid(p as i64) as u64;
        for _ in 0..mult {
            let mut next = vec![0u64; poly.len() + 1];
            for (d, &c) in poly.iter().enumerate() {
                next[d + 1] = ((next[d + 1] as u128 + c as u128) % p as u128) as u64;
                let prod = ((c as u128 * r as u128) % p as u128) as u64;
                next[d] = (next[d] + p - prod) % p;
            }
            poly = next;
        }
    }
    poly
}

/// Exact test that `A` has exactly the integer eigenvalue multiset `roots`.
///
/// Compares `det(γI − A)` with `∏(γ − λ)` modulo enough 61-bit primes that
/// their product exceeds twice the coefficient bound `2^n · ρ^n`, where `ρ`
/// bounds every eigenvalue modulus (the largest absolute row sum). Agreement
/// modulo all of them therefore implies equality over the integers.
pub fn has_integer_spectrum(a: &IntMatrix, roots: &[(i64, i64)]) -> bool {
    let n = a.order();
    let total: i64 = roots.iter().map(|r| r.1).sum();
    if total != n as i64 {
        return false;
    }
    let row_bound = a
        .rows()
        .map(|r| r.iter().map(|x| x.unsigned_abs() as f64).sum::<f64>())
        .fold(1.0f64, f64::max);
    let root_bound = roots.iter().map(|r| r.0.unsigned_abs() as f64).fold(row_bound, f64::max);
    let bits = n as f64 * (1.0 + root_bound.max(1.0).log2()) + 2.0;
    let needed = (bits / 60.0).ceil() as usize;
    if needed > CHARPOLY_PRIMES.len() {
        // beyond this crate's desk-scale orders; fall back to all primes
        return CHARPOLY_PRIMES
            .iter()
            .all(|&p| a.charpoly_mod(p) == poly_from_roots_mod(roots, p));
    }
    CHARPOLY_PRIMES[..needed.max(1)]
        .iter()
        .all(|&p| a.charpoly_mod(p) == poly_from_roots_mod(roots, p))
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix({})", self.order)?;
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_identity_blocks() {
        let k = IntMatrix::identity(2).kronecker(&IntMatrix::ones(2)).unwrap();
        let expected = IntMatrix::from_rows(vec![
            vec![1, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 1],
            vec![0, 0, 1, 1],
        ])
        .unwrap();
        assert_eq!(k, expected);
        assert_eq!(IntMatrix::ones(2).kronecker(&IntMatrix::ones(3)).unwrap(), IntMatrix::ones(6));
    }

    #[test]
    fn overflow_is_reported() {
        let big = IntMatrix::from_fn(2, |_, _| i64::MAX / 2 + 1);
        assert_eq!(big.mul(&big), Err(Error::Overflow("matrix product")));
        assert!(big.add(&big).is_err());
        assert!(big.kronecker(&big).is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(IntMatrix::from_rows(vec![vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn charpoly_of_small_matrices() {
        let p = CHARPOLY_PRIMES[0];
        // directed 3-cycle: γ^3 − 1
        let c3 = IntMatrix::from_fn(3, |i, j| (j == (i + 1) % 3) as i64);
        assert_eq!(c3.charpoly_mod(p), vec![p - 1, 0, 0, 1]);
        // J_3 − I_3 has eigenvalues 2, −1, −1
        let k3 = IntMatrix::from_fn(3, |i, j| (i != j) as i64);
        assert!(has_integer_spectrum(&k3, &[(2, 1), (-1, 2)]));
        assert!(!has_integer_spectrum(&k3, &[(2, 1), (-1, 1), (0, 1)]));
        assert_eq!(IntMatrix::zeros(0).charpoly_mod(p), vec![1]);
    }

    #[test]
    fn charpoly_needs_pivoting() {
        // zero subdiagonal entries force row/column swaps in the reduction
        let a = IntMatrix::from_rows(vec![
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        assert!(has_integer_spectrum(&a, &[(1, 2), (-1, 2)]));
    }
}
