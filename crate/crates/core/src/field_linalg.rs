//! Exact dense linear algebra over a prime field F_p.
//!
//! Vectors are rows and matrices act on the right. Every matrix and subspace
//! carries its own modulus; binary operations on mismatched moduli fail.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `h` with `q = p^h`, `h >= 1`.
pub fn prime_power_exponent(q: u64, p: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let p64 = p as u64;
    let mut rest = q;
    let mut h = 0;
    while rest > 1 && rest.is_multiple_of(p64) {
        rest /= p64;
        h += 1;
    }
    if rest != 1 || h == 0 {
        return Err(Error::NotPrimePower { q, p });
    }
    Ok(h)
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(x: u32, p: u32) -> u32 {
    debug_assert!(!x.is_multiple_of(p));
    pow_mod(x as u64, p as u64 - 2, p as u64) as u32
}

/// A fully reduced residue modulo a prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FpScalar {
    value: u32,
    modulus: u32,
}

impl FpScalar {
    pub fn new(value: i64, modulus: u32) -> Self {
        let m = modulus as i64;
        FpScalar { value: value.rem_euclid(m) as u32, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar { value: inv_mod(self.value, self.modulus), modulus: self.modulus })
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        FpScalar { value: (self.value + rhs.value) % self.modulus, modulus: self.modulus }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> Self {
        FpScalar { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        let v = (self.value as u64 * rhs.value as u64) % self.modulus as u64;
        FpScalar { value: v as u32, modulus: self.modulus }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        FpMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(p: u32, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(r.iter().map(|&x| x.rem_euclid(p as i64) as u32));
        }
        Ok(FpMatrix { rows: rows.len(), cols, p, data })
    }

    /// Builds a matrix from already reduced residues.
    pub fn from_reduced(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|&x| x >= p) {
            return Err(Error::DimensionMismatch("entry not reduced".into()));
        }
        Ok(FpMatrix { rows, cols, p, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn scalar(&self, r: usize, c: usize) -> FpScalar {
        FpScalar { value: self.get(r, c), modulus: self.p }
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v.rem_euclid(self.p as i64) as u32;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows, self.p)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("add".into()));
        }
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| (x + y) % p).collect();
        Ok(FpMatrix { data, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("sub".into()));
        }
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| (x + p - y) % p).collect();
        Ok(FpMatrix { data, ..*self })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let acc = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
        }
        Ok(FpMatrix { rows: self.rows, cols: other.cols, p: self.p, data: out.into_iter().map(|x| x as u32).collect() })
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (slot, &b) in out.iter_mut().zip(self.row(k)) {
                *slot = (*slot + a as u64 * b as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("pow of non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows, self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Canonical reduced row-echelon form (same shape, zero rows last) and rank.
    pub fn rref(&self) -> (FpMatrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (m, rank)
    }

    fn rref_in_place(&mut self) -> usize {
        let p = self.p as u64;
        let cols = self.cols;
        let mut pivot_row = 0;
        for c in 0..cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if found != pivot_row {
                for k in 0..cols {
                    self.data.swap(found * cols + k, pivot_row * cols + k);
                }
            }
            let inv = inv_mod(self.get(pivot_row, c), self.p) as u64;
            for k in c..cols {
                let idx = pivot_row * cols + k;
                self.data[idx] = (self.data[idx] as u64 * inv % p) as u32;
            }
            let pivot: Vec<u32> = self.row(pivot_row).to_vec();
            for r in 0..self.rows {
                if r == pivot_row {
                    continue;
                }
                let f = self.get(r, c) as u64;
                if f == 0 {
                    continue;
                }
                let row = &mut self.data[r * cols..(r + 1) * cols];
                for k in c..cols {
                    row[k] = ((row[k] as u64 + (p - f) * pivot[k] as u64) % p) as u32;
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, self.p);
        for r in 0..n {
            aug.data[r * 2 * n..r * 2 * n + n].copy_from_slice(self.row(r));
            aug.data[r * 2 * n + n + r] = 1 % self.p;
        }
        let rank = aug.rref_in_place();
        if rank < n || (0..n).any(|r| aug.get(r, r) != 1) {
            return None;
        }
        let mut inv = Self::zeros(n, n, self.p);
        for r in 0..n {
            inv.data[r * n..(r + 1) * n].copy_from_slice(&aug.row(r)[n..]);
        }
        Some(inv)
    }
}

/// Kronecker product: block (i, j) of the result is `a[i][j] * b`.
pub fn kron(a: &FpMatrix, b: &FpMatrix) -> Result<FpMatrix> {
    a.same_field(b)?;
    let p = a.p as u64;
    let (rows, cols) = (a.rows * b.rows, a.cols * b.cols);
    let mut out = FpMatrix::zeros(rows, cols, a.p);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j) as u64;
            if x == 0 {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.data[(i * b.rows + k) * cols + j * b.cols + l] = (x * b.get(k, l) as u64 % p) as u32;
                }
            }
        }
    }
    Ok(out)
}

/// The q x q unipotent Jordan block (ones on the diagonal and superdiagonal),
/// for `q` a power of the prime `p`.
pub fn unipotent_matrix(q: usize, p: u32) -> Result<FpMatrix> {
    prime_power_exponent(q as u64, p)?;
    let mut m = FpMatrix::identity(q, p);
    for i in 0..q.saturating_sub(1) {
        m.set(i, i + 1, 1);
    }
    Ok(m)
}

/// A subspace of F_p^n, stored as its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpSubspace {
    ambient_dim: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl FpSubspace {
    pub fn zero(ambient_dim: usize, p: u32) -> Self {
        FpSubspace { ambient_dim, basis: FpMatrix::zeros(0, ambient_dim, p), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize, p: u32) -> Self {
        Self::span(&FpMatrix::identity(ambient_dim, p))
    }

    /// Row space of `m`.
    pub fn span(m: &FpMatrix) -> Self {
        let (r, rank) = m.rref();
        let cols = m.cols;
        let data = r.data[..rank * cols].to_vec();
        let pivots = (0..rank).map(|i| r.row(i).iter().position(|&x| x != 0).unwrap()).collect();
        FpSubspace { ambient_dim: cols, basis: FpMatrix { rows: rank, cols, p: m.p, data }, pivots }
    }

    pub fn span_vectors(ambient_dim: usize, p: u32, vectors: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * ambient_dim);
        for v in vectors {
            assert_eq!(v.len(), ambient_dim);
            data.extend(v.iter().map(|&x| x % p));
        }
        Self::span(&FpMatrix { rows: vectors.len(), cols: ambient_dim, p, data })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn modulus(&self) -> u32 {
        self.basis.p
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.dim()).map(move |r| self.basis.row(r))
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient_dim);
        let p = self.basis.p as u64;
        let mut w: Vec<u32> = v.iter().map(|&x| x % self.basis.p).collect();
        for (r, &c) in self.pivots.iter().enumerate() {
            let f = w[c] as u64;
            if f == 0 {
                continue;
            }
            for (slot, &b) in w.iter_mut().zip(self.basis.row(r)) {
                *slot = ((*slot as u64 + (p - f) * b as u64) % p) as u32;
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.basis_vectors().all(|v| other.contains(v)))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        self.basis.same_field(&other.basis)?;
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!("ambient {} vs {}", self.ambient_dim, other.ambient_dim)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut data = self.basis.data.clone();
        data.extend_from_slice(&other.basis.data);
        Ok(Self::span(&FpMatrix { rows: self.dim() + other.dim(), cols: self.ambient_dim, p: self.basis.p, data }))
    }

    /// Image of the subspace under right multiplication by `m`.
    pub fn image(&self, m: &FpMatrix) -> Result<Self> {
        self.basis.same_field(m)?;
        Ok(Self::span(&self.basis.mul(m)?))
    }
}

/// dim(outer / inner); fails unless `inner` is contained in `outer`.
pub fn quotient_dim(inner: &FpSubspace, outer: &FpSubspace) -> Result<usize> {
    if !inner.is_subspace_of(outer)? {
        return Err(Error::NotContained);
    }
    Ok(outer.dim() - inner.dim())
}
