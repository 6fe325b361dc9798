//! The group H = C_q x C_q (q = p^h), its group algebra F_p[H], the
//! descending filtration by powers of the augmentation ideal, and the action
//! of the outer automorphisms φ: a ↔ b and ψ: a ↦ a⁻¹, b ↦ b⁻¹.
//!
//! Two bases are used. The natural basis lists a^i b^j at index `i*q + j`.
//! The e-basis lists e_xy = (a-1)^x (b-1)^y at index `x*q + y`. Elements are
//! row vectors and H acts by right multiplication.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field_linalg::{prime_power_exponent, FpMatrix, FpSubspace};

/// The abelian group C_q x C_q with q = p^h.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AbelianH {
    p: u32,
    h: u32,
    q: usize,
}

/// The element a^i b^j of H.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct HElem {
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    A,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Outer {
    /// a ↦ b, b ↦ a
    Phi,
    /// a ↦ a⁻¹, b ↦ b⁻¹
    Psi,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Basis {
    Natural,
    E,
}

impl AbelianH {
    pub fn new(p: u32, h: u32) -> Result<Self> {
        if h == 0 {
            return Err(Error::NotPrimePower { q: 1, p });
        }
        let q = (p as u64).checked_pow(h).ok_or(Error::NotPrimePower { q: u64::MAX, p })?;
        prime_power_exponent(q, p)?;
        Ok(AbelianH { p, h, q: q as usize })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn order(&self) -> usize {
        self.q * self.q
    }

    pub fn index(&self, x: HElem) -> usize {
        x.i * self.q + x.j
    }

    pub fn elem(&self, index: usize) -> HElem {
        HElem { i: index / self.q, j: index % self.q }
    }

    pub fn elements(&self) -> impl Iterator<Item = HElem> + '_ {
        (0..self.order()).map(|k| self.elem(k))
    }

    pub fn identity(&self) -> HElem {
        HElem { i: 0, j: 0 }
    }

    pub fn gen(&self, g: Generator) -> HElem {
        match g {
            Generator::A => HElem { i: 1 % self.q, j: 0 },
            Generator::B => HElem { i: 0, j: 1 % self.q },
        }
    }

    pub fn mul(&self, x: HElem, y: HElem) -> HElem {
        HElem { i: (x.i + y.i) % self.q, j: (x.j + y.j) % self.q }
    }

    pub fn inv(&self, x: HElem) -> HElem {
        HElem { i: (self.q - x.i) % self.q, j: (self.q - x.j) % self.q }
    }

    pub fn apply_outer(&self, x: HElem, s: Outer) -> HElem {
        match s {
            Outer::Phi => HElem { i: x.j, j: x.i },
            Outer::Psi => self.inv(x),
        }
    }

    fn permutation_matrix(&self, f: impl Fn(HElem) -> HElem) -> FpMatrix {
        let n = self.order();
        let mut m = FpMatrix::zeros(n, n, self.p);
        for x in self.elements() {
            m.set(self.index(x), self.index(f(x)), 1);
        }
        m
    }
}

/// Binomial coefficients C(n, k) mod p for 0 <= k <= n < size, via Pascal's triangle.
fn pascal_mod(size: usize, p: u32) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(size);
    for n in 0..size {
        let mut row = vec![0u32; n + 1];
        row[0] = 1 % p;
        row[n] = 1 % p;
        for k in 1..n {
            row[k] = (rows[n - 1][k - 1] + rows[n - 1][k]) % p;
        }
        rows.push(row);
    }
    rows
}

/// An element of F_p[H] in natural coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupAlgebraElement {
    group: AbelianH,
    coeffs: Vec<u32>,
}

impl GroupAlgebraElement {
    pub fn zero(group: AbelianH) -> Self {
        GroupAlgebraElement { group, coeffs: vec![0; group.order()] }
    }

    pub fn from_coeffs(group: AbelianH, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch(format!("{} coefficients for |H| = {}", coeffs.len(), group.order())));
        }
        let p = group.p;
        Ok(GroupAlgebraElement { group, coeffs: coeffs.into_iter().map(|c| c % p).collect() })
    }

    pub fn group_element(group: AbelianH, x: HElem) -> Self {
        let mut v = Self::zero(group);
        v.coeffs[group.index(x)] = 1 % group.p;
        v
    }

    /// e_xy = (a-1)^x (b-1)^y expanded in the natural basis.
    pub fn e(group: AbelianH, x: usize, y: usize) -> Self {
        let q = group.q;
        let p = group.p;
        let binom = pascal_mod(q, p);
        let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { p - 1 };
        let mut v = Self::zero(group);
        for i in 0..=x {
            for j in 0..=y {
                let c = binom[x][i] as u64 * binom[y][j] as u64 % p as u64 * sign(x - i + y - j) as u64;
                v.coeffs[i * q + j] = (c % p as u64) as u32;
            }
        }
        v
    }

    pub fn group(&self) -> AbelianH {
        self.group
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, x: HElem) -> u32 {
        self.coeffs[self.group.index(x)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.group.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&x, &y)| (x + y) % p).collect();
        GroupAlgebraElement { group: self.group, coeffs }
    }

    /// Right multiplication by a group element: Σ λ_x x ↦ Σ λ_x (x·g).
    pub fn mul_elem(&self, g: HElem) -> Self {
        let mut out = Self::zero(self.group);
        for x in self.group.elements() {
            out.coeffs[self.group.index(self.group.mul(x, g))] = self.coeff(x);
        }
        out
    }

    /// Σ λ_x x ↦ Σ λ_x x^s.
    pub fn apply_outer(&self, s: Outer) -> Self {
        let mut out = Self::zero(self.group);
        for x in self.group.elements() {
            out.coeffs[self.group.index(self.group.apply_outer(x, s))] = self.coeff(x);
        }
        out
    }

    /// Coordinates in the e-basis: the coefficient of e_xy is
    /// Σ_{i,j} λ_ij C(i,x) C(j,y), computed one axis at a time.
    pub fn e_coords(&self) -> Vec<u32> {
        let q = self.group.q;
        let p = self.group.p as u64;
        let binom = pascal_mod(q, self.group.p);
        let c = |n: usize, k: usize| if k <= n { binom[n][k] as u64 } else { 0 };
        let mut half = vec![0u64; q * q];
        for x in 0..q {
            for j in 0..q {
                half[x * q + j] = (0..q).map(|i| self.coeffs[i * q + j] as u64 * c(i, x)).sum::<u64>() % p;
            }
        }
        let mut out = vec![0u32; q * q];
        for x in 0..q {
            for y in 0..q {
                out[x * q + y] = ((0..q).map(|j| half[x * q + j] * c(j, y)).sum::<u64>() % p) as u32;
            }
        }
        out
    }

    /// Whether the element lies in γ_i = span{e_xy : x + y >= i}.
    pub fn in_gamma(&self, i: usize) -> bool {
        let q = self.group.q;
        self.e_coords().iter().enumerate().all(|(k, &c)| c == 0 || k / q + k % q >= i)
    }

    /// Product in F_p[H].
    pub fn mul(&self, other: &Self) -> Self {
        let p = self.group.p as u64;
        let mut acc = vec![0u64; self.group.order()];
        for x in self.group.elements() {
            let cx = self.coeff(x) as u64;
            if cx == 0 {
                continue;
            }
            for y in self.group.elements() {
                let cy = other.coeff(y) as u64;
                if cy != 0 {
                    let k = self.group.index(self.group.mul(x, y));
                    acc[k] = (acc[k] + cx * cy) % p;
                }
            }
        }
        GroupAlgebraElement { group: self.group, coeffs: acc.into_iter().map(|c| c as u32).collect() }
    }
}

/// Change of basis between natural coordinates and e-coordinates.
///
/// Row `x*q + y` of `from_e` is e_xy in natural coordinates, so a row vector
/// of e-coordinates `c` has natural coordinates `c · from_e`, and
/// `v_e = v_nat · to_e`.
#[derive(Clone, Debug)]
pub struct EBasisChange {
    pub to_e: FpMatrix,
    pub from_e: FpMatrix,
}

pub fn build_e_basis(group: AbelianH) -> Result<EBasisChange> {
    let q = group.q;
    let n = group.order();
    let p = group.p;
    let mut from_e = FpMatrix::zeros(n, n, p);
    for x in 0..q {
        for y in 0..q {
            let e = GroupAlgebraElement::e(group, x, y);
            for (k, &c) in e.coeffs.iter().enumerate() {
                if c != 0 {
                    from_e.set(x * q + y, k, c as i64);
                }
            }
        }
    }
    // a^i b^j = (1 + (a-1))^i (1 + (b-1))^j = Σ C(i,x) C(j,y) e_xy
    let binom = pascal_mod(q, p);
    let mut to_e = FpMatrix::zeros(n, n, p);
    for i in 0..q {
        for j in 0..q {
            for x in 0..=i {
                for y in 0..=j {
                    let c = binom[i][x] as u64 * binom[j][y] as u64 % p as u64;
                    if c != 0 {
                        to_e.set(i * q + j, x * q + y, c as i64);
                    }
                }
            }
        }
    }
    if !to_e.mul(&from_e)?.is_identity() {
        return Err(Error::Invariant("e-basis change matrices are not mutually inverse".into()));
    }
    Ok(EBasisChange { to_e, from_e })
}

impl EBasisChange {
    pub fn to_e_coords(&self, v: &[u32]) -> Vec<u32> {
        self.to_e.apply_row(v)
    }

    pub fn from_e_coords(&self, v: &[u32]) -> Vec<u32> {
        self.from_e.apply_row(v)
    }

    /// Conjugates a natural-basis operator into the e-basis.
    pub fn to_e_operator(&self, natural: &FpMatrix) -> Result<FpMatrix> {
        self.from_e.mul(natural)?.mul(&self.to_e)
    }
}

/// Matrix of right multiplication by a generator in the chosen basis.
pub fn action_matrix(group: AbelianH, gen: Generator, basis: Basis) -> Result<FpMatrix> {
    let g = group.gen(gen);
    let natural = group.permutation_matrix(|x| group.mul(x, g));
    match basis {
        Basis::Natural => Ok(natural),
        Basis::E => build_e_basis(group)?.to_e_operator(&natural),
    }
}

/// The filtration γ_0 = F_p[H] ⊋ γ_1 ⊋ … ⊋ γ_{2q-1} = 0, stored in e-coordinates.
#[derive(Clone, Debug)]
pub struct GammaChain {
    group: AbelianH,
    chain: Vec<FpSubspace>,
}

/// span{e_xy : x + y >= i} in e-coordinates.
pub fn e_span_at_least(group: AbelianH, i: usize) -> FpSubspace {
    let q = group.q;
    let vecs: Vec<Vec<u32>> = (0..q)
        .flat_map(|x| (0..q).map(move |y| (x, y)))
        .filter(|&(x, y)| x + y >= i)
        .map(|(x, y)| {
            let mut v = vec![0u32; q * q];
            v[x * q + y] = 1;
            v
        })
        .collect();
    FpSubspace::span_vectors(q * q, group.p, &vecs)
}

/// Computes γ_i = γ_{i-1}(a-1) + γ_{i-1}(b-1) in natural coordinates, then
/// checks it against span{e_xy : x+y >= i}.
pub fn gamma_chain(group: AbelianH, caps: &Caps) -> Result<GammaChain> {
    let n = group.order();
    caps.check_algebra_dim(n)?;
    let basis = build_e_basis(group)?;
    let p = group.p;
    let q = group.q;
    let gens = [group.gen(Generator::A), group.gen(Generator::B)];

    let mut current = FpSubspace::full(n, p);
    let mut chain = Vec::with_capacity(2 * q);
    for i in 0..2 * q {
        caps.check_time()?;
        let in_e: Vec<Vec<u32>> = current.basis_vectors().map(|v| basis.to_e_coords(v)).collect();
        let gamma_e = FpSubspace::span_vectors(n, p, &in_e);
        if gamma_e != e_span_at_least(group, i) {
            return Err(Error::Invariant(format!("gamma_{i} differs from span{{e_xy : x+y >= {i}}}")));
        }
        chain.push(gamma_e);

        let mut next = Vec::with_capacity(2 * current.dim());
        for v in current.basis_vectors() {
            let elem = GroupAlgebraElement { group, coeffs: v.to_vec() };
            for &g in &gens {
                let moved = elem.mul_elem(g);
                next.push(moved.coeffs.iter().zip(v).map(|(&x, &y)| (x + p - y) % p).collect());
            }
        }
        current = FpSubspace::span_vectors(n, p, &next);
    }
    if chain.last().map(|s| s.dim()) != Some(0) {
        return Err(Error::Invariant("filtration does not reach zero at index 2q-1".into()));
    }
    if current.dim() != 0 {
        return Err(Error::Invariant("filtration continues past index 2q-1".into()));
    }
    Ok(GammaChain { group, chain })
}

impl GammaChain {
    pub fn group(&self) -> AbelianH {
        self.group
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn get(&self, i: usize) -> &FpSubspace {
        &self.chain[i]
    }

    pub fn subspaces(&self) -> &[FpSubspace] {
        &self.chain
    }

    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(FpSubspace::dim).collect()
    }

    /// dim γ_i/γ_{i+1} for 0 <= i <= 2q-2.
    pub fn section_dims(&self) -> Result<Vec<usize>> {
        let dims = self
            .chain
            .windows(2)
            .map(|w| crate::field_linalg::quotient_dim(&w[1], &w[0]))
            .collect::<Result<Vec<_>>>()?;
        if dims != expected_section_dims(self.group.q) {
            return Err(Error::Invariant(format!("section dimensions {dims:?} violate min{{i+1, 2q-1-i}}")));
        }
        Ok(dims)
    }

    /// γ_i as a subspace of natural coordinates.
    pub fn natural(&self, i: usize, basis: &EBasisChange) -> FpSubspace {
        let vecs: Vec<Vec<u32>> = self.chain[i].basis_vectors().map(|v| basis.from_e_coords(v)).collect();
        FpSubspace::span_vectors(self.group.order(), self.group.p, &vecs)
    }

    /// The elements e_xy with x + y = i, in natural coordinates; together with
    /// γ_{i+1} they span γ_i.
    pub fn layer_elements(&self, i: usize) -> Vec<GroupAlgebraElement> {
        let q = self.group.q;
        (0..q).filter(|&x| i >= x && i - x < q).map(|x| GroupAlgebraElement::e(self.group, x, i - x)).collect()
    }

    /// e-basis elements spanning γ_i, in natural coordinates.
    pub fn spanning_elements(&self, i: usize) -> Vec<GroupAlgebraElement> {
        let q = self.group.q;
        (0..q)
            .flat_map(|x| (0..q).map(move |y| (x, y)))
            .filter(|&(x, y)| x + y >= i)
            .map(|(x, y)| GroupAlgebraElement::e(self.group, x, y))
            .collect()
    }
}

pub fn expected_section_dims(q: usize) -> Vec<usize> {
    (0..2 * q - 1).map(|i| (i + 1).min(2 * q - 1 - i)).collect()
}

/// Minimal number of generators of V as a module for a unipotent group:
/// dim V/Σ_g V(g - 1). Each action matrix must be unipotent and leave V invariant.
pub fn min_generators_local(v: &FpSubspace, actions: &[FpMatrix]) -> Result<usize> {
    let n = v.ambient_dim();
    let p = v.modulus();
    let id = FpMatrix::identity(n, p);
    let mut radical_rows = Vec::new();
    for g in actions {
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch(format!("action matrix {}x{} on F_p^{n}", g.rows(), g.cols())));
        }
        let nil = g.sub(&id)?;
        if !nil.pow(n.max(1) as u64)?.is_zero() {
            return Err(Error::NotUnipotent);
        }
        if !v.image(g)?.is_subspace_of(v)? {
            return Err(Error::Invariant("subspace is not invariant under the action".into()));
        }
        for row in v.basis_vectors() {
            radical_rows.push(nil.apply_row(row));
        }
    }
    let radical = FpSubspace::span_vectors(n, p, &radical_rows);
    crate::field_linalg::quotient_dim(&radical, v)
}

/// φ and ψ as natural-basis permutation matrices.
#[derive(Clone, Debug)]
pub struct OuterAction {
    pub phi: FpMatrix,
    pub psi: FpMatrix,
}

pub fn outer_action(group: AbelianH) -> Result<OuterAction> {
    let phi = group.permutation_matrix(|x| group.apply_outer(x, Outer::Phi));
    let psi = group.permutation_matrix(|x| group.apply_outer(x, Outer::Psi));
    if !phi.mul(&phi)?.is_identity() || !psi.mul(&psi)?.is_identity() {
        return Err(Error::Invariant("outer automorphisms are not involutions".into()));
    }
    if phi.mul(&psi)? != psi.mul(&phi)? {
        return Err(Error::Invariant("outer automorphisms do not commute".into()));
    }
    Ok(OuterAction { phi, psi })
}

impl OuterAction {
    pub fn get(&self, s: Outer) -> &FpMatrix {
        match s {
            Outer::Phi => &self.phi,
            Outer::Psi => &self.psi,
        }
    }

    /// Whether every γ_i is mapped into itself by both φ and ψ.
    pub fn preserves_chain(&self, chain: &GammaChain, basis: &EBasisChange) -> Result<bool> {
        for s in [Outer::Phi, Outer::Psi] {
            let in_e = basis.to_e_operator(self.get(s))?;
            for gamma in chain.subspaces() {
                if !gamma.image(&in_e)?.is_subspace_of(gamma)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Lower bound for the generator count over a group containing H with the
/// given index: ceil(d_H / index).
pub fn index_lower_bound(d_h: usize, index: usize) -> usize {
    assert!(index >= 1, "index must be positive");
    d_h.div_ceil(index)
}
