//! Graded commutative polynomials and antisymmetric differential forms with
//! polynomial coefficients, over exact rationals.

use num_traits::Zero;
use std::collections::BTreeMap;

use crate::error::Error;
use crate::linalg::Rational;

/// Commutative polynomial in `num_vars` variables: exponent vector to nonzero
/// coefficient. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommPoly {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl CommPoly {
    pub fn zero(num_vars: usize) -> Self {
        CommPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::from_integer(1.into()))
    }

    pub fn variable(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars);
        let mut e = vec![0u32; num_vars];
        e[i] = 1;
        let mut p = Self::zero(num_vars);
        p.terms.insert(e, Rational::from_integer(1.into()));
        p
    }

    pub fn monomial(num_vars: usize, exps: &[u32], c: Rational) -> Self {
        assert_eq!(exps.len(), num_vars);
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &Rational) {
        debug_assert_eq!(exps.len(), self.num_vars);
        if c.is_zero() {
            return;
        }
        let nv = match self.terms.get(&exps) {
            Some(t) => t + c,
            None => c.clone(),
        };
        if nv.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, nv);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &CommPoly, s: &Rational) {
        debug_assert_eq!(self.num_vars, other.num_vars);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), &(c * s));
        }
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::from_integer(1.into()));
        out
    }

    pub fn sub(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::from_integer((-1).into()));
        out
    }

    pub fn scale(&self, s: &Rational) -> CommPoly {
        let mut out = Self::zero(self.num_vars);
        out.add_assign_scaled(self, s);
        out
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        debug_assert_eq!(self.num_vars, other.num_vars);
        let mut out = Self::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> CommPoly {
        let mut out = Self::one(self.num_vars);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> CommPoly {
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, &(c * Rational::from_integer(e[i].into())));
            }
        }
        out
    }

    /// Total degree if homogeneous (`Some(0)` for nonzero constants, `None`
    /// for zero or mixed-degree polynomials).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d = e.iter().map(|&x| x as usize).sum();
            match deg {
                None => deg = Some(d),
                Some(old) if old != d => return None,
                _ => {}
            }
        }
        deg
    }
}

/// Antisymmetric differential `k`-form with [`CommPoly`] coefficients, stored
/// on the canonical strictly-increasing index basis `dx_{i1} ∧ … ∧ dx_{ik}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffForm {
    num_vars: usize,
    form_degree: usize,
    components: BTreeMap<Vec<u8>, CommPoly>,
}

/// Sort an index tuple into increasing order; returns the permutation sign,
/// or `None` if an index repeats (the form component vanishes).
pub fn sort_indices(idx: &[u8]) -> Option<(Vec<u8>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1i64;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            match v[j].cmp(&v[j + 1]) {
                std::cmp::Ordering::Greater => {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some((v, sign))
}

impl DiffForm {
    pub fn zero(num_vars: usize, form_degree: usize) -> Self {
        assert!(form_degree <= num_vars);
        DiffForm { num_vars, form_degree, components: BTreeMap::new() }
    }

    /// Degree-0 form from a polynomial.
    pub fn from_poly(p: CommPoly) -> Self {
        let mut f = Self::zero(p.num_vars(), 0);
        if !p.is_zero() {
            f.components.insert(Vec::new(), p);
        }
        f
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn form_degree(&self) -> usize {
        self.form_degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<u8>, &CommPoly)> {
        self.components.iter()
    }

    pub fn component(&self, idx: &[u8]) -> CommPoly {
        self.components.get(idx).cloned().unwrap_or_else(|| CommPoly::zero(self.num_vars))
    }

    /// Add `s * p dx_idx`, normalizing the index tuple via antisymmetry.
    pub fn add_component(&mut self, idx: &[u8], p: &CommPoly, s: &Rational) {
        debug_assert_eq!(idx.len(), self.form_degree);
        if p.is_zero() || s.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_indices(idx) else { return };
        let s = s * Rational::from_integer(sign.into());
        let entry = self.components.entry(sorted.clone()).or_insert_with(|| CommPoly::zero(self.num_vars));
        entry.add_assign_scaled(p, &s);
        if entry.is_zero() {
            self.components.remove(&sorted);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &DiffForm, s: &Rational) {
        debug_assert_eq!(self.form_degree, other.form_degree);
        for (idx, p) in &other.components {
            self.add_component(idx, p, s);
        }
    }

    pub fn add(&self, other: &DiffForm) -> DiffForm {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::from_integer(1.into()));
        out
    }

    pub fn scale(&self, s: &Rational) -> DiffForm {
        let mut out = Self::zero(self.num_vars, self.form_degree);
        out.add_assign_scaled(self, s);
        out
    }

    /// Multiply every component by a polynomial.
    pub fn mul_poly(&self, p: &CommPoly) -> DiffForm {
        let mut out = Self::zero(self.num_vars, self.form_degree);
        for (idx, q) in &self.components {
            let prod = q.mul(p);
            out.add_component(idx, &prod, &Rational::from_integer(1.into()));
        }
        out
    }

    /// Exterior product.
    pub fn wedge(&self, other: &DiffForm) -> DiffForm {
        assert_eq!(self.num_vars, other.num_vars);
        let k = self.form_degree + other.form_degree;
        let mut out = Self::zero(self.num_vars, k);
        if k > self.num_vars {
            return out;
        }
        for (i1, p1) in &self.components {
            for (i2, p2) in &other.components {
                let mut idx = i1.clone();
                idx.extend_from_slice(i2);
                let prod = p1.mul(p2);
                out.add_component(&idx, &prod, &Rational::from_integer(1.into()));
            }
        }
        out
    }

    /// Contraction with the Euler vector field `Σ x_i ∂_i`.
    pub fn euler_contraction(&self) -> DiffForm {
        let mut out = Self::zero(self.num_vars, self.form_degree.saturating_sub(1));
        if self.form_degree == 0 {
            return out;
        }
        for (idx, p) in &self.components {
            for (pos, &i) in idx.iter().enumerate() {
                let rest: Vec<u8> = idx.iter().enumerate().filter(|(a, _)| *a != pos).map(|(_, &b)| b).collect();
                let xi = CommPoly::variable(self.num_vars, i as usize);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                out.add_component(&rest, &p.mul(&xi), &Rational::from_integer(sign.into()));
            }
        }
        out
    }

    /// Weight of the form (coefficient degree + form degree) if homogeneous.
    pub fn weight(&self) -> Option<usize> {
        let mut w = None;
        for p in self.components.values() {
            let d = p.homogeneous_degree()? + self.form_degree;
            match w {
                None => w = Some(d),
                Some(old) if old != d => return None,
                _ => {}
            }
        }
        w
    }
}

/// Exterior derivative; `d ∘ d = 0`. The derivative of a top form is zero.
pub fn de_rham(w: &DiffForm) -> DiffForm {
    let n = w.num_vars();
    let k = w.form_degree();
    if k >= n {
        return DiffForm::zero(n, n.min(k + 1));
    }
    let mut out = DiffForm::zero(n, k + 1);
    for (idx, p) in w.components() {
        for i in 0..n {
            let dp = p.partial(i);
            if dp.is_zero() {
                continue;
            }
            let mut nidx = Vec::with_capacity(k + 1);
            nidx.push(i as u8);
            nidx.extend_from_slice(idx);
            out.add_component(&nidx, &dp, &Rational::from_integer(1.into()));
        }
    }
    out
}

/// All exponent vectors of total degree `deg` in `num_vars` variables,
/// lexicographic order. Deterministic basis enumeration for matrix assembly.
pub fn monomials(num_vars: usize, deg: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; num_vars];
    fn rec(pos: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u32;
            out.push(cur.clone());
            return;
        }
        for take in (0..=left).rev() {
            cur[pos] = take as u32;
            rec(pos + 1, left - take, cur, out);
        }
        cur[pos] = 0;
    }
    if num_vars == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

/// Strictly increasing `k`-tuples from `0..n`, lexicographic order.
pub fn index_tuples(n: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i as u8);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Require `p` homogeneous of the given degree.
pub fn expect_homogeneous(p: &CommPoly, degree: usize) -> crate::Result<()> {
    match p.homogeneous_degree() {
        Some(d) if d == degree => Ok(()),
        found => Err(Error::NotHomogeneous { expected: degree, found }),
    }
}
