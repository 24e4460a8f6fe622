//! Exact linear algebra over the rationals.
//!
//! Sparse matrices with [`Rational`] entries, rank, kernel bases, span
//! membership, subspace intersection — the computational substrate for every
//! homology dimension in this crate.
//!
//! Two elimination strategies sit behind one exact interface:
//!
//! * a pivoted rational Gaussian elimination (pivot = smallest bit-size entry
//!   in the column, ties broken by lowest row index) used directly on small
//!   matrices and as the fallback everywhere;
//! * for large matrices, a modular fast path: row-reduce modulo word-size
//!   primes, CRT-lift and rationally reconstruct a kernel basis, then *certify*
//!   it with exact arithmetic (`rank mod p` is a lower bound for the rational
//!   rank, and a verified kernel basis gives the matching upper bound). If
//!   certification fails the exact elimination runs instead, so results are
//!   always exact.
//!
//! No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::error::Error;

/// Exact arbitrary-precision rational scalar — the only scalar type in the crate.
///
/// `num_rational::BigRational` keeps every value reduced with a positive
/// denominator, which is exactly the invariant we need.
pub type Rational = BigRational;

/// Sparse vector: coordinate index to nonzero rational entry.
pub type SparseVec = BTreeMap<usize, Rational>;

/// Parse a rational from `"p"` or `"p/q"` (signs allowed on the numerator).
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> crate::Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::ParseRational(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::ParseRational(s.to_string()));
            }
            Ok(Rational::new(parse_int(n)?, den))
        }
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Bit size of a rational (numerator bits + denominator bits); the pivot metric.
fn bit_size(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// `target += s * src` on sparse vectors, dropping entries that cancel to zero.
pub fn axpy(target: &mut SparseVec, src: &SparseVec, s: &Rational) {
    if s.is_zero() {
        return;
    }
    for (k, v) in src {
        let nv = match target.get(k) {
            Some(t) => t + v * s,
            None => v * s,
        };
        if nv.is_zero() {
            target.remove(k);
        } else {
            target.insert(*k, nv);
        }
    }
}

/// A sparse matrix over the rationals. All stored entries are nonzero and all
/// indices are in range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Build from column vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, v) in col {
                assert!(i < rows, "row index {i} out of range {rows}");
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut m = Self::zero(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            m.entries.insert((j, i), v.clone());
        }
        m
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> crate::Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        // rhs by rows for the sparse traversal
        let mut rhs_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); rhs.rows];
        for (&(i, j), v) in &rhs.entries {
            rhs_rows[i].push((j, v));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &rhs_rows[k] {
                let key = (i, j);
                let nv = match out.entries.get(&key) {
                    Some(t) => t + a * b,
                    None => a * b,
                };
                if nv.is_zero() {
                    out.entries.remove(&key);
                } else {
                    out.entries.insert(key, nv);
                }
            }
        }
        Ok(out)
    }

    /// Apply to a sparse (column) vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&(i, j), a) in &self.entries {
            if let Some(x) = v.get(&j) {
                let nv = match out.get(&i) {
                    Some(t) => t + a * x,
                    None => a * x,
                };
                if nv.is_zero() {
                    out.remove(&i);
                } else {
                    out.insert(i, nv);
                }
            }
        }
        out
    }

    fn rows_as_sparse(&self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = vec![SparseVec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            rows[i].insert(j, v.clone());
        }
        rows
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        if self.prefer_modular() {
            if let Some(kernel) = modular::certified_kernel(self) {
                return self.cols - kernel.len();
            }
        }
        self.rank_exact()
    }

    /// Basis of `{v : self * v = 0}`; dimension is `cols - rank`.
    pub fn kernel_basis(&self) -> Subspace {
        let basis = if self.prefer_modular() {
            modular::certified_kernel(self).unwrap_or_else(|| self.kernel_exact())
        } else {
            self.kernel_exact()
        };
        Subspace { ambient_dim: self.cols, basis }
    }

    fn prefer_modular(&self) -> bool {
        self.rows * self.cols > 40_000
    }

    /// Pivoted rational Gaussian elimination; pivot = smallest bit-size entry
    /// in the column, ties broken by lowest row index.
    pub(crate) fn rank_exact(&self) -> usize {
        self.eliminate().len()
    }

    /// Forward elimination; returns the pivot rows as (pivot column, row) pairs
    /// in pivot order. Rows keep their original index for the tie-break.
    fn eliminate(&self) -> Vec<(usize, SparseVec)> {
        let mut active: Vec<(usize, SparseVec)> = self
            .rows_as_sparse()
            .into_iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .collect();
        let mut pivots: Vec<(usize, SparseVec)> = Vec::new();
        for col in 0..self.cols {
            let mut best: Option<(u64, usize, usize)> = None; // (bits, orig_row, position)
            for (pos, (orig, row)) in active.iter().enumerate() {
                if let Some(v) = row.get(&col) {
                    let key = (bit_size(v), *orig, pos);
                    if best.map_or(true, |b| (key.0, key.1) < (b.0, b.1)) {
                        best = Some(key);
                    }
                }
            }
            let Some((_, _, pos)) = best else { continue };
            let (_, mut prow) = active.swap_remove(pos);
            let pivot = prow[&col].clone();
            if !pivot.is_one() {
                for v in prow.values_mut() {
                    *v /= &pivot;
                }
            }
            active.retain_mut(|(_, row)| {
                if let Some(f) = row.get(&col).cloned() {
                    axpy(row, &prow, &(-f));
                }
                !row.is_empty()
            });
            pivots.push((col, prow));
        }
        pivots
    }

    fn kernel_exact(&self) -> Vec<SparseVec> {
        let mut pivots = self.eliminate();
        // back-substitute to reduced form
        for i in (0..pivots.len()).rev() {
            let (col, row) = pivots[i].clone();
            for (pcol, prow) in pivots.iter_mut().take(i) {
                debug_assert!(*pcol < col);
                if let Some(f) = prow.get(&col).cloned() {
                    axpy(prow, &row, &(-f));
                }
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
        let is_pivot: BTreeMap<usize, usize> =
            pivot_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot.contains_key(&free) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(free, Rational::one());
            for (pcol, prow) in &pivots {
                if let Some(c) = prow.get(&free) {
                    v.insert(*pcol, -c.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// A coordinate subspace of `Q^ambient_dim`, stored as a list of linearly
/// independent basis vectors.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    /// Full space of the given dimension (standard basis).
    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = SparseVec::new();
                v.insert(i, Rational::one());
                v
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    /// Build from spanning vectors; dependent vectors are dropped (echelon pass),
    /// so the stored basis is always independent.
    pub fn from_span(ambient_dim: usize, span: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut ech = Echelon::new();
        let mut basis = Vec::new();
        for v in span {
            debug_assert!(v.keys().all(|&k| k < ambient_dim));
            if ech.insert(v.clone()).is_some() {
                basis.push(v);
            }
        }
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut ech = Echelon::new();
        for b in &self.basis {
            ech.insert(b.clone());
        }
        ech.reduce(v.clone()).is_empty()
    }

    /// Basis of `self ∩ other`.
    pub fn intersect(&self, other: &Subspace) -> crate::Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let na = self.basis.len();
        let mut cols: Vec<SparseVec> = self.basis.clone();
        for b in &other.basis {
            let neg: SparseVec = b.iter().map(|(k, v)| (*k, -v.clone())).collect();
            cols.push(neg);
        }
        let stacked = SparseMatrix::from_columns(self.ambient_dim, &cols);
        let kernel = stacked.kernel_basis();
        let mut basis = Vec::new();
        for x in kernel.basis() {
            let mut v = SparseVec::new();
            for (&j, c) in x.iter().take_while(|(&j, _)| j < na) {
                axpy(&mut v, &self.basis[j], c);
            }
            if !v.is_empty() {
                basis.push(v);
            }
        }
        Ok(Subspace { ambient_dim: self.ambient_dim, basis })
    }
}

/// Dimension of `ker(d_out) / im(d_in)` at one spot of a chain complex.
///
/// `d_in` maps into the domain of `d_out`; the composite is checked to vanish
/// and the result is `dim ker(d_out) - rank(d_in)`.
pub fn homology_dim(d_in: &SparseMatrix, d_out: &SparseMatrix) -> crate::Result<usize> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::ShapeMismatch(format!(
            "d_out is {}x{} but d_in maps into dimension {}",
            d_out.rows(),
            d_out.cols(),
            d_in.rows()
        )));
    }
    let composite = d_out.mul(d_in)?;
    if let Some((&(row, col), _)) = composite.entries().next() {
        return Err(Error::CompositeNonzero { row, col });
    }
    let ker = d_out.cols() - d_out.rank();
    let rk_in = d_in.rank();
    debug_assert!(rk_in <= ker);
    Ok(ker - rk_in)
}

/// Incremental row echelon over the rationals, keyed by the smallest nonzero
/// coordinate. Used for span building and membership tests.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current rows.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        loop {
            let hit = v.keys().find(|k| self.rows.contains_key(k)).copied();
            match hit {
                None => return v,
                Some(k) => {
                    let f = -v[&k].clone();
                    axpy(&mut v, &self.rows[&k], &f);
                }
            }
        }
    }

    /// Insert `v`; returns the new pivot coordinate if `v` was independent.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let v = self.reduce(v);
        if v.is_empty() {
            return None;
        }
        let piv = *v.keys().next().unwrap();
        let p = v[&piv].clone();
        let row: SparseVec = v.into_iter().map(|(k, x)| (k, x / &p)).collect();
        self.rows.insert(piv, row);
        Some(piv)
    }
}

/// Quotient of `Q^dim` by the span of the given vectors, presented on
/// coordinate lines: returns the ascending list of coordinate positions whose
/// images form a basis of the quotient (the lexicographically first such
/// set), and for *every* position the expression of its image over the kept
/// positions (indexed by their rank in the kept list).
///
/// A position `q` falls out of the kept set exactly when the span contains a
/// vector with largest coordinate `q`, so one Gauss–Jordan pass with
/// largest-coordinate pivoting produces both outputs at once.
pub fn quotient_by_span(
    dim: usize,
    span: impl IntoIterator<Item = SparseVec>,
) -> (Vec<usize>, Vec<SparseVec>) {
    // forward pass, pivot = largest coordinate
    let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for mut v in span {
        loop {
            let Some((&mx, _)) = v.iter().next_back() else { break };
            if rows.contains_key(&mx) {
                let f = -v[&mx].clone();
                axpy(&mut v, &rows[&mx], &f);
            } else {
                let p = v[&mx].clone();
                let norm: SparseVec = v.into_iter().map(|(k, x)| (k, x / &p)).collect();
                rows.insert(mx, norm);
                break;
            }
        }
    }
    // backward pass: ascending pivots; afterwards every row is supported on
    // its own pivot and kept positions only
    let pivots: Vec<usize> = rows.keys().copied().collect();
    for &q in &pivots {
        let row_q = rows[&q].clone();
        for &p in &pivots {
            if p <= q {
                continue;
            }
            let row_p = rows.get_mut(&p).unwrap();
            if let Some(f) = row_p.get(&q).cloned() {
                axpy(row_p, &row_q, &-f);
            }
        }
    }
    let kept: Vec<usize> = (0..dim).filter(|q| !rows.contains_key(q)).collect();
    let kept_rank: BTreeMap<usize, usize> =
        kept.iter().enumerate().map(|(r, &q)| (q, r)).collect();
    let expr: Vec<SparseVec> = (0..dim)
        .map(|q| match rows.get(&q) {
            None => [(kept_rank[&q], Rational::one())].into_iter().collect(),
            Some(row) => row
                .iter()
                .filter(|(&j, _)| j != q)
                .map(|(j, c)| (kept_rank[j], -c.clone()))
                .collect(),
        })
        .collect();
    (kept, expr)
}

/// Expresses vectors in a fixed basis: prepared once, then `solve` finds the
/// coordinates of any vector in the span (or reports it lies outside).
pub struct LinearSolver {
    // echelon rows over the ambient coordinates, each paired with its
    // expression in terms of the original basis vectors
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    n: usize,
}

impl LinearSolver {
    pub fn new(basis: &[SparseVec]) -> Self {
        let mut rows: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
        for (idx, b) in basis.iter().enumerate() {
            let mut v = b.clone();
            let mut expr = SparseVec::new();
            expr.insert(idx, Rational::one());
            loop {
                let hit = v.keys().find(|k| rows.contains_key(k)).copied();
                match hit {
                    None => break,
                    Some(k) => {
                        let f = -v[&k].clone();
                        let (rv, re) = rows[&k].clone();
                        axpy(&mut v, &rv, &f);
                        axpy(&mut expr, &re, &f);
                    }
                }
            }
            assert!(!v.is_empty(), "LinearSolver basis vectors must be independent");
            let piv = *v.keys().next().unwrap();
            let p = v[&piv].clone();
            let v: SparseVec = v.into_iter().map(|(k, x)| (k, x / &p)).collect();
            let expr: SparseVec = expr.into_iter().map(|(k, x)| (k, x / &p)).collect();
            rows.insert(piv, (v, expr));
        }
        LinearSolver { rows, n: basis.len() }
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is outside the span.
    pub fn solve(&self, mut v: SparseVec) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.n];
        loop {
            let hit = v.keys().find(|k| self.rows.contains_key(k)).copied();
            match hit {
                None => break,
                Some(k) => {
                    let f = v[&k].clone();
                    let (rv, re) = &self.rows[&k];
                    axpy(&mut v, rv, &-f.clone());
                    for (j, c) in re {
                        out[*j] += c * &f;
                    }
                }
            }
        }
        if v.is_empty() {
            Some(out)
        } else {
            None
        }
    }
}

/// Modular fast path with exact certification.
mod modular {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    /// Prime budget: entry sizes can force large CRT moduli before the
    /// rational reconstruction lands, so the prime stream is generated on
    /// demand (descending from 2^31 so products fit in u64).
    const PRIME_BUDGET: usize = 220;

    /// Deterministic Miller–Rabin; bases {2, 3, 5, 7} decide primality for
    /// everything below 3,215,031,751 > 2^31.
    fn is_prime_u64(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        for p in [2u64, 3, 5, 7] {
            if n % p == 0 {
                return n == p;
            }
        }
        let mut d = n - 1;
        let mut s = 0u32;
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        'witness: for a in [2u64, 3, 5, 7] {
            let mut x = pow_mod(a, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = x * x % n;
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }

    fn prime_stream() -> impl Iterator<Item = u64> {
        ((0u64..).map(|k| 2147483647 - 2 * k)).filter(|&n| is_prime_u64(n))
    }

    fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        acc
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    fn rational_mod(q: &Rational, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let den = q.denom().mod_floor(&pb).to_u64().unwrap();
        if den == 0 {
            return None;
        }
        let num = q.numer().mod_floor(&pb).to_u64().unwrap();
        Some(num * inv_mod(den, p) % p)
    }

    struct Rref {
        rank: usize,
        pivot_cols: Vec<usize>,
        free_cols: Vec<usize>,
        /// rank x free block of the reduced form (row-major)
        block: Vec<u64>,
    }

    /// Dense row reduction mod p. Returns `None` if an entry denominator
    /// vanishes mod p.
    fn rref_mod(m: &SparseMatrix, p: u64) -> Option<Rref> {
        let (rows, cols) = (m.rows(), m.cols());
        let mut a = vec![0u64; rows * cols];
        for (&(i, j), v) in m.entries() {
            a[i * cols + j] = rational_mod(v, p)?;
        }
        let mut rank = 0usize;
        let mut pivot_cols = Vec::new();
        for col in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            a.swap_chunks(pr * cols, rank * cols, cols);
            let inv = inv_mod(a[rank * cols + col], p);
            for j in col..cols {
                a[rank * cols + j] = a[rank * cols + j] * inv % p;
            }
            for r in 0..rows {
                if r == rank {
                    continue;
                }
                let f = a[r * cols + col];
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                for j in col..cols {
                    let t = a[rank * cols + j];
                    if t != 0 {
                        a[r * cols + j] = (a[r * cols + j] + neg * t) % p;
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
            if rank == rows {
                break;
            }
        }
        let is_pivot: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
        let free_cols: Vec<usize> = (0..cols).filter(|c| !is_pivot.contains(c)).collect();
        let mut block = Vec::with_capacity(rank * free_cols.len());
        for r in 0..rank {
            for &f in &free_cols {
                block.push(a[r * cols + f]);
            }
        }
        Some(Rref { rank, pivot_cols, free_cols, block })
    }

    trait SwapChunks {
        fn swap_chunks(&mut self, a: usize, b: usize, len: usize);
    }
    impl SwapChunks for Vec<u64> {
        fn swap_chunks(&mut self, a: usize, b: usize, len: usize) {
            if a == b {
                return;
            }
            for k in 0..len {
                self.swap(a + k, b + k);
            }
        }
    }

    /// Rational reconstruction of `r mod m` with the standard sqrt bound.
    fn reconstruct(r: &BigInt, m: &BigInt) -> Option<Rational> {
        let bound = (m / BigInt::from(2)).sqrt();
        let (mut r0, mut r1) = (m.clone(), r.clone());
        let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
        while r1 > bound {
            let q = &r0 / &r1;
            let nr = &r0 - &q * &r1;
            r0 = std::mem::replace(&mut r1, nr);
            let nt = &t0 - &q * &t1;
            t0 = std::mem::replace(&mut t1, nt);
        }
        if t1.is_zero() || t1.abs() > bound {
            return None;
        }
        if t1.is_negative() {
            r1 = -r1;
            t1 = -t1;
        }
        if r1.gcd(&t1) != BigInt::one() {
            return None;
        }
        Some(Rational::new(r1, t1))
    }

    /// Certified exact kernel basis via the modular path, or `None` when the
    /// certification does not land within the prime budget.
    pub(super) fn certified_kernel(m: &SparseMatrix) -> Option<Vec<SparseVec>> {
        let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None; // rank, pivots, free
        let mut modulus = BigInt::one();
        let mut combined: Vec<BigInt> = Vec::new();
        let mut count = 0usize;
        let mut next_attempt = 1usize;
        for p in prime_stream().take(PRIME_BUDGET) {
            let Some(rref) = rref_mod(m, p) else { continue };
            match &best {
                Some((r, pc, _)) if rref.rank < *r || (rref.rank == *r && rref.pivot_cols > *pc) => {
                    continue; // unlucky prime
                }
                Some((r, pc, _)) if rref.rank == *r && rref.pivot_cols == *pc => {}
                _ => {
                    // strictly better structure: restart accumulation
                    best = Some((rref.rank, rref.pivot_cols.clone(), rref.free_cols.clone()));
                    modulus = BigInt::one();
                    combined = vec![BigInt::zero(); rref.block.len()];
                    count = 0;
                    next_attempt = 1;
                }
            }
            // fold the new residues into the CRT accumulator
            let pb = BigInt::from(p);
            if modulus.is_one() {
                for (c, &b) in combined.iter_mut().zip(rref.block.iter()) {
                    *c = BigInt::from(b);
                }
            } else {
                let minv = {
                    let mm = modulus.mod_floor(&pb).to_u64().unwrap();
                    BigInt::from(inv_mod(mm, p))
                };
                for (c, &b) in combined.iter_mut().zip(rref.block.iter()) {
                    let delta = (BigInt::from(b) - &*c).mod_floor(&pb);
                    let k = (delta * &minv).mod_floor(&pb);
                    *c += &modulus * k;
                }
            }
            modulus *= pb;
            count += 1;
            if count >= next_attempt {
                next_attempt = count * 2;
                if let Some(kernel) =
                    try_lift(m, best.as_ref().unwrap(), &combined, &modulus)
                {
                    return Some(kernel);
                }
            }
        }
        None
    }

    fn try_lift(
        m: &SparseMatrix,
        structure: &(usize, Vec<usize>, Vec<usize>),
        combined: &[BigInt],
        modulus: &BigInt,
    ) -> Option<Vec<SparseVec>> {
        let (rank, pivot_cols, free_cols) = structure;
        let nf = free_cols.len();
        let mut vectors = Vec::with_capacity(nf);
        for (fi, &fcol) in free_cols.iter().enumerate() {
            let mut v = SparseVec::new();
            v.insert(fcol, Rational::one());
            for (ri, &pcol) in pivot_cols.iter().enumerate().take(*rank) {
                let r = &combined[ri * nf + fi];
                if r.is_zero() {
                    continue;
                }
                let q = reconstruct(r, modulus)?;
                v.insert(pcol, -q);
            }
            vectors.push(v);
        }
        // exact certification: every lifted vector must be killed by m
        for v in &vectors {
            if !m.apply(v).is_empty() {
                return None;
            }
        }
        // rank mod p <= rank over Q, and the verified vectors force
        // rank over Q <= cols - nf = rank mod p, so this is exact.
        Some(vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn dense(rows: usize, cols: usize, data: &[i64]) -> SparseMatrix {
        let mut m = SparseMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, rat(data[i * cols + j]));
            }
        }
        m
    }

    /// Brute-force rank oracle: largest k with a nonvanishing k x k minor,
    /// found by exhaustive determinant search (cofactor expansion).
    fn det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()
                })
                .collect();
            let term = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn rank_by_minors(m: &SparseMatrix) -> usize {
        let rows: Vec<Vec<Rational>> =
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect();
        let n = m.rows().min(m.cols());
        for k in (1..=n).rev() {
            // all k-subsets of rows and cols
            let row_sets = subsets(m.rows(), k);
            let col_sets = subsets(m.cols(), k);
            for rs in &row_sets {
                for cs in &col_sets {
                    let sub: Vec<Vec<Rational>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                    if !det(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(SparseMatrix::identity(4).rank(), 4);
        assert_eq!(SparseMatrix::zero(3, 5).rank(), 0);
    }

    #[test]
    fn rank_matches_minor_expansion_oracle() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..6 {
            let mut m = SparseMatrix::zero(6, 6);
            for i in 0..6 {
                for j in 0..6 {
                    m.set(i, j, rat(rng.gen_range(-3..=3)));
                }
            }
            assert_eq!(m.rank(), rank_by_minors(&m));
        }
    }

    #[test]
    fn kernel_trivial_cases() {
        assert_eq!(SparseMatrix::identity(3).kernel_basis().dim(), 0);
        let z = SparseMatrix::zero(2, 3);
        assert_eq!(z.kernel_basis().dim(), 3);
        // 1x2 matrix [1 1] -> span{(1, -1)}
        let m = dense(1, 2, &[1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        let v = &k.basis()[0];
        assert_eq!(v.get(&0).unwrap() + v.get(&1).unwrap(), Rational::zero());
    }

    #[test]
    fn intersect_cases() {
        let a = Subspace::from_span(4, vec![svec(&[(0, 1)]), svec(&[(1, 1)])]);
        let same = a.intersect(&a).unwrap();
        assert_eq!(same.dim(), 2);
        let b = Subspace::from_span(4, vec![svec(&[(2, 1)]), svec(&[(3, 1)])]);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        // ambient mismatch
        let c = Subspace::full(3);
        assert!(a.intersect(&c).is_err());
    }

    fn svec(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, v)| (k, rat(v))).collect()
    }

    #[test]
    fn intersect_random_matches_rank_oracle() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10 {
            let rand_span = |rng: &mut StdRng| -> Vec<SparseVec> {
                (0..3)
                    .map(|_| (0..4).map(|i| (i, rat(rng.gen_range(-4..=4)))).collect::<SparseVec>())
                    .map(|v: SparseVec| v.into_iter().filter(|(_, x)| !x.is_zero()).collect())
                    .collect()
            };
            let a = Subspace::from_span(4, rand_span(&mut rng));
            let b = Subspace::from_span(4, rand_span(&mut rng));
            // oracle: dim(a ∩ b) = dim a + dim b - rank [A | B]
            let mut cols = a.basis().to_vec();
            cols.extend(b.basis().to_vec());
            let stacked = SparseMatrix::from_columns(4, &cols);
            let expected = a.dim() + b.dim() - stacked.rank();
            assert_eq!(a.intersect(&b).unwrap().dim(), expected);
        }
    }

    #[test]
    fn homology_dim_cases() {
        let z5 = SparseMatrix::zero(5, 5);
        assert_eq!(homology_dim(&z5, &z5).unwrap(), 5);
        // d_out injective (identity), d_in = 0
        let id = SparseMatrix::identity(4);
        let zin = SparseMatrix::zero(4, 2);
        assert_eq!(homology_dim(&zin, &id).unwrap(), 0);
        // composite nonzero must error
        let m = dense(2, 2, &[1, 0, 0, 1]);
        assert!(matches!(homology_dim(&m, &m), Err(Error::CompositeNonzero { .. })));
    }

    #[test]
    fn homology_dim_exact_pair_is_zero() {
        // construct d_in with image = ker(d_out) via kernel_basis
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..5 {
            let mut d_out = SparseMatrix::zero(3, 6);
            for i in 0..3 {
                for j in 0..6 {
                    d_out.set(i, j, rat(rng.gen_range(-2..=2)));
                }
            }
            let ker = d_out.kernel_basis();
            let d_in = SparseMatrix::from_columns(6, ker.basis());
            assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 0);
        }
    }

    #[test]
    fn homology_invariant_under_change_of_basis() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..5 {
            let mut d_out = SparseMatrix::zero(4, 5);
            for i in 0..4 {
                for j in 0..5 {
                    d_out.set(i, j, rat(rng.gen_range(-2..=2)));
                }
            }
            let ker = d_out.kernel_basis();
            // d_in: random combinations of a subset of kernel vectors
            let cols: Vec<SparseVec> = (0..3)
                .map(|_| {
                    let mut v = SparseVec::new();
                    for b in ker.basis() {
                        axpy(&mut v, b, &rat(rng.gen_range(-2..=2)));
                    }
                    v
                })
                .collect();
            let d_in = SparseMatrix::from_columns(5, &cols);
            let h = homology_dim(&d_in, &d_out).unwrap();
            // conjugate by unit upper/lower triangular matrices
            let tri = |rng: &mut StdRng, n: usize, upper: bool| {
                let mut t = SparseMatrix::identity(n);
                for i in 0..n {
                    for j in (i + 1)..n {
                        let (a, b) = if upper { (i, j) } else { (j, i) };
                        t.set(a, b, rat(rng.gen_range(-2..=2)));
                    }
                }
                t
            };
            let p = tri(&mut rng, 3, true);
            let q_up = tri(&mut rng, 5, true);
            let s = tri(&mut rng, 4, false);
            // d_in' = Q d_in P ; d_out' = S d_out Q^{-1}; use Q unit triangular
            // and exploit (S d_out) (Q Q^{-1}) ... keep it simple: conjugate the
            // middle space by Q on both sides.
            let q_inv = invert_unit_upper(&q_up);
            let d_in2 = q_up.mul(&d_in).unwrap().mul(&p).unwrap();
            let d_out2 = s.mul(&d_out).unwrap().mul(&q_inv).unwrap();
            assert_eq!(homology_dim(&d_in2, &d_out2).unwrap(), h);
        }
    }

    fn invert_unit_upper(m: &SparseMatrix) -> SparseMatrix {
        // Gauss-Jordan on [m | I]; m is unit upper triangular so this is exact
        let n = m.rows();
        let mut aug: Vec<SparseVec> = (0..n)
            .map(|i| {
                let mut r: SparseVec = (0..n)
                    .filter_map(|j| {
                        let v = m.get(i, j);
                        (!v.is_zero()).then_some((j, v))
                    })
                    .collect();
                r.insert(n + i, Rational::one());
                r
            })
            .collect();
        for col in (0..n).rev() {
            let prow = aug[col].clone();
            for (i, row) in aug.iter_mut().enumerate().take(col) {
                let _ = i;
                if let Some(f) = row.get(&col).cloned() {
                    axpy(row, &prow, &(-f));
                }
            }
        }
        let mut out = SparseMatrix::zero(n, n);
        for (i, row) in aug.iter().enumerate() {
            for (&j, v) in row.range(n..) {
                out.set(i, j - n, v.clone());
            }
        }
        out
    }

    #[test]
    fn certified_modular_agrees_with_exact() {
        let mut rng = StdRng::seed_from_u64(23);
        for trial in 0..8 {
            let rows = 12 + trial;
            let cols = 15;
            let mut m = SparseMatrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    if rng.gen_bool(0.4) {
                        m.set(i, j, ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
                    }
                }
            }
            let exact = m.rank_exact();
            let modular = super::modular::certified_kernel(&m)
                .map(|k| cols - k.len())
                .expect("modular path should certify on benign input");
            assert_eq!(exact, modular);
            // and the lifted kernel really is a kernel basis
            let k = m.kernel_basis();
            assert_eq!(k.dim(), cols - exact);
            for v in k.basis() {
                assert!(m.apply(v).is_empty());
            }
        }
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-13/37").unwrap(), ratio(-13, 37));
        assert_eq!(parse_rational(" 1/4 ").unwrap(), ratio(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn rank_plus_kernel_is_cols(seed in 0u64..1000, rows in 1usize..8, cols in 1usize..8) {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut m = SparseMatrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    if rng.gen_bool(0.5) {
                        m.set(i, j, rat(rng.gen_range(-5..=5)));
                    }
                }
            }
            prop_assert_eq!(m.rank() + m.kernel_basis().dim(), cols);
        }

        #[test]
        fn rank_equals_rank_of_transpose(seed in 0u64..1000, rows in 1usize..8, cols in 1usize..8) {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut m = SparseMatrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    if rng.gen_bool(0.5) {
                        m.set(i, j, rat(rng.gen_range(-5..=5)));
                    }
                }
            }
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
