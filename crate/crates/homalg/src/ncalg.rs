//! Finitely presented quadratic algebras over the rationals.
//!
//! Graded components are computed by plain linear algebra on tensor degrees:
//! `A_n = (A_{n-1} ⊗ V) / image(A_{n-2} ⊗ W)`, with representative words
//! chosen greedily in lexicographic order. No Gröbner machinery — correctness
//! reduces to exact rank, and flatness is checkable rather than assumed.

use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::error::Error;
use crate::linalg::{axpy, quotient_by_span, rat, Rational, SparseVec, Subspace};

/// A word in the tensor algebra: a list of generator indices. The empty word
/// is the unit.
pub type TensorWord = Vec<u8>;

/// Element of the tensor algebra: word to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<TensorWord, Rational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: &[u8]) -> Self {
        let mut p = Self::zero();
        p.terms.insert(w.to_vec(), Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u8]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: TensorWord, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let nv = match self.terms.get(&w) {
            Some(t) => t + c,
            None => c.clone(),
        };
        if nv.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, nv);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &NCPoly, s: &Rational) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), &(c * s));
        }
    }

    pub fn scale(&self, s: &Rational) -> NCPoly {
        let mut out = Self::zero();
        out.add_assign_scaled(self, s);
        out
    }

    /// Concatenation product in the tensor algebra.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, &(c1 * c2));
            }
        }
        out
    }

    /// Common word length if the element is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for w in self.terms.keys() {
            match deg {
                None => deg = Some(w.len()),
                Some(d) if d != w.len() => return None,
                _ => {}
            }
        }
        deg
    }
}

/// Pack a word over `gens` generators into a base-`gens` integer (big-endian).
pub fn word_index(gens: usize, w: &[u8]) -> usize {
    w.iter().fold(0usize, |acc, &c| acc * gens + c as usize)
}

/// Inverse of [`word_index`] for words of known length.
pub fn index_word(gens: usize, len: usize, mut idx: usize) -> TensorWord {
    let mut w = vec![0u8; len];
    for pos in (0..len).rev() {
        w[pos] = (idx % gens) as u8;
        idx /= gens;
    }
    w
}

/// Degree-2 element as a coordinate vector in `V ⊗ V`.
pub fn degree2_vector(gens: usize, p: &NCPoly) -> SparseVec {
    let mut v = SparseVec::new();
    for (w, c) in p.terms() {
        assert_eq!(w.len(), 2, "relation must be quadratic");
        v.insert(word_index(gens, w), c.clone());
    }
    v
}

/// Parameters of the Sklyanin presentation: `(α_1, α_2, α_3)` with
/// `α_1 + α_2 + α_3 + α_1 α_2 α_3 = 0`, the third parameter determined by the
/// first two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SklyaninParams {
    alpha1: Rational,
    alpha2: Rational,
    alpha3: Rational,
}

impl SklyaninParams {
    /// `α_3 = -(α_1 + α_2) / (1 + α_1 α_2)`; errors when the denominator vanishes.
    pub fn new(alpha1: Rational, alpha2: Rational) -> crate::Result<Self> {
        let den = Rational::one() + &alpha1 * &alpha2;
        if den.is_zero() {
            return Err(Error::InvalidParams("1 + alpha1*alpha2 = 0".into()));
        }
        let alpha3 = -(&alpha1 + &alpha2) / den;
        let p = SklyaninParams { alpha1, alpha2, alpha3 };
        debug_assert!(p.constraint_holds());
        Ok(p)
    }

    /// Like [`SklyaninParams::new`] but also rejects the degenerate locus
    /// `α_i ∈ {0, ±1}`.
    pub fn new_generic(alpha1: Rational, alpha2: Rational) -> crate::Result<Self> {
        let p = Self::new(alpha1, alpha2)?;
        if !p.is_generic() {
            return Err(Error::InvalidParams(format!(
                "parameters on the degenerate locus: alpha = ({}, {}, {})",
                p.alpha1, p.alpha2, p.alpha3
            )));
        }
        Ok(p)
    }

    pub fn alphas(&self) -> [&Rational; 3] {
        [&self.alpha1, &self.alpha2, &self.alpha3]
    }

    pub fn constraint_holds(&self) -> bool {
        (&self.alpha1 + &self.alpha2 + &self.alpha3 + &self.alpha1 * &self.alpha2 * &self.alpha3)
            .is_zero()
    }

    /// Genericity guard: every `α_i` outside `{0, ±1}`.
    pub fn is_generic(&self) -> bool {
        self.alphas()
            .into_iter()
            .all(|a| !a.is_zero() && *a != rat(1) && *a != rat(-1))
    }
}

/// A quadratic algebra `T(V)/(W)` presented by the relation subspace
/// `W ⊂ V ⊗ V`.
#[derive(Debug, Clone)]
pub struct QuadraticAlgebra {
    num_gens: usize,
    relations: Subspace,
}

impl QuadraticAlgebra {
    pub fn new(num_gens: usize, relation_vectors: Vec<SparseVec>) -> Self {
        let relations = Subspace::from_span(num_gens * num_gens, relation_vectors);
        QuadraticAlgebra { num_gens, relations }
    }

    pub fn num_gens(&self) -> usize {
        self.num_gens
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Serialize the presentation: generator count plus dense vectors for each
    /// relation in the `V ⊗ V` coordinate order.
    pub fn to_json(&self) -> String {
        let dim = self.num_gens * self.num_gens;
        let rels: Vec<Vec<String>> = self
            .relations
            .basis()
            .iter()
            .map(|v| (0..dim).map(|i| v.get(&i).cloned().unwrap_or_else(Rational::zero).to_string()).collect())
            .collect();
        serde_json::json!({ "generators": self.num_gens, "relations": rels }).to_string()
    }
}

/// The six Sklyanin relations
/// `f_{0i} = [S_0, S_i] - α_i (S_j S_k + S_k S_j)` and
/// `f_{jk} = [S_j, S_k] - (S_0 S_i + S_i S_0)`, `(i, j, k)` cyclic in `(1,2,3)`,
/// as elements of `V ⊗ V`.
pub fn sklyanin_relation_polys(p: &SklyaninParams) -> Vec<NCPoly> {
    let alphas = [p.alpha1.clone(), p.alpha2.clone(), p.alpha3.clone()];
    let cyc = |i: usize| -> (u8, u8) {
        match i {
            1 => (2, 3),
            2 => (3, 1),
            _ => (1, 2),
        }
    };
    let mut rels = Vec::with_capacity(6);
    for i in 1..=3usize {
        let (j, k) = cyc(i);
        let mut f = NCPoly::zero();
        f.add_term(vec![0, i as u8], &rat(1));
        f.add_term(vec![i as u8, 0], &rat(-1));
        f.add_term(vec![j, k], &(-&alphas[i - 1]));
        f.add_term(vec![k, j], &(-&alphas[i - 1]));
        rels.push(f);
    }
    for i in 1..=3usize {
        let (j, k) = cyc(i);
        let mut f = NCPoly::zero();
        f.add_term(vec![j, k], &rat(1));
        f.add_term(vec![k, j], &rat(-1));
        f.add_term(vec![0, i as u8], &rat(-1));
        f.add_term(vec![i as u8, 0], &rat(-1));
        rels.push(f);
    }
    rels
}

/// The Sklyanin algebra on four generators with the six relations above.
pub fn sklyanin_algebra(p: &SklyaninParams) -> QuadraticAlgebra {
    let rels = sklyanin_relation_polys(p)
        .iter()
        .map(|f| degree2_vector(4, f))
        .collect();
    QuadraticAlgebra::new(4, rels)
}

/// One graded component with its normal-form data: representative words whose
/// images form a basis of `A_n`, plus the reduction step from
/// `A_{n-1} ⊗ V` coordinates onto this basis.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    reps: Vec<TensorWord>,
    /// `step[a * num_gens + c]` = coordinates of (basis element `a` of the
    /// previous degree) times generator `c`.
    step: Vec<SparseVec>,
    /// for each representative, the index of its length-(n-1) prefix in the
    /// previous level plus the final letter (the basis is prefix-closed)
    parents: Vec<(usize, u8)>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representative_words(&self) -> &[TensorWord] {
        &self.reps
    }

    pub fn parents(&self) -> &[(usize, u8)] {
        &self.parents
    }
}

/// All graded components of a quadratic algebra up to a fixed degree,
/// immutable once built.
#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    algebra: QuadraticAlgebra,
    levels: Vec<GradedBasis>,
}

impl GradedAlgebra {
    /// Build the graded components `A_0 .. A_max_degree`.
    pub fn new(algebra: QuadraticAlgebra, max_degree: usize) -> Self {
        let g = algebra.num_gens();
        let mut levels = Vec::with_capacity(max_degree + 1);
        levels.push(GradedBasis { reps: vec![Vec::new()], step: Vec::new(), parents: Vec::new() });
        if max_degree >= 1 {
            let reps = (0..g).map(|c| vec![c as u8]).collect();
            let step = (0..g)
                .map(|c| {
                    let mut v = SparseVec::new();
                    v.insert(c, Rational::one());
                    v
                })
                .collect();
            let parents = (0..g).map(|c| (0usize, c as u8)).collect();
            levels.push(GradedBasis { reps, step, parents });
        }
        let mut out = GradedAlgebra { algebra, levels };
        for n in 2..=max_degree {
            let next = out.build_level(n);
            out.levels.push(next);
        }
        out
    }

    fn build_level(&self, n: usize) -> GradedBasis {
        let g = self.algebra.num_gens();
        let prev = &self.levels[n - 1];
        let prev2 = &self.levels[n - 2];
        // spanning set of the subspace of A_{n-1} ⊗ V to kill:
        // images of (basis of A_{n-2}) ⊗ (relation vectors)
        let mut kill = Vec::with_capacity(prev2.dim() * self.algebra.relations().dim());
        for a in 0..prev2.dim() {
            for w in self.algebra.relations().basis() {
                let mut vec = SparseVec::new();
                for (key, coef) in w {
                    let (i, c) = (key / g, key % g);
                    let img = &prev.step[a * g + i];
                    for (j, cc) in img {
                        let pos = j * g + c;
                        let nv = match vec.get(&pos) {
                            Some(t) => t + coef * cc,
                            None => coef * cc,
                        };
                        if nv.is_zero() {
                            vec.remove(&pos);
                        } else {
                            vec.insert(pos, nv);
                        }
                    }
                }
                kill.push(vec);
            }
        }
        // a coordinate position survives the quotient exactly when the killed
        // span has no vector with that largest coordinate, so the kept set is
        // the greedy-lexicographic representative choice and the reduction of
        // every candidate (A_{n-1} basis) x (generator) falls out of the same
        // elimination
        let (kept, step) = quotient_by_span(prev.dim() * g, kill);
        let reps = kept
            .iter()
            .map(|&pos| {
                let mut w = prev.reps[pos / g].clone();
                w.push((pos % g) as u8);
                w
            })
            .collect();
        GradedBasis { reps, step, parents: kept.iter().map(|&pos| (pos / g, (pos % g) as u8)).collect() }
    }

    pub fn algebra(&self) -> &QuadraticAlgebra {
        &self.algebra
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.levels[n].dim()
    }

    pub fn basis(&self, n: usize) -> &GradedBasis {
        &self.levels[n]
    }

    /// Coordinates of (element of `A_n` given by `coords`) multiplied by
    /// generator `c`, in `A_{n+1}`.
    pub fn step(&self, n: usize, coords: &SparseVec, c: u8) -> SparseVec {
        let g = self.algebra.num_gens();
        let level = &self.levels[n + 1];
        let mut out = SparseVec::new();
        for (j, v) in coords {
            axpy(&mut out, &level.step[j * g + c as usize], v);
        }
        out
    }

    /// Reduce a homogeneous tensor element of degree `n <= max_degree` to
    /// coordinates on the `A_n` basis (the coordinate map of the graded basis).
    pub fn reduce(&self, p: &NCPoly) -> crate::Result<SparseVec> {
        let Some(n) = p.homogeneous_degree() else {
            return Err(Error::NotHomogeneous { expected: 0, found: None });
        };
        if n > self.max_degree() {
            return Err(Error::InvalidParams(format!(
                "degree {n} exceeds built degree {}",
                self.max_degree()
            )));
        }
        let mut out = SparseVec::new();
        for (w, coef) in p.terms() {
            let mut cur = SparseVec::new();
            cur.insert(0usize, Rational::one());
            for (k, &c) in w.iter().enumerate() {
                cur = self.step(k, &cur, c);
            }
            axpy(&mut out, &cur, coef);
        }
        Ok(out)
    }

    /// Product `A_m x A_n -> A_{m+n}` in basis coordinates.
    pub fn multiply(&self, u: &SparseVec, du: usize, v: &SparseVec, dv: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (b, cb) in v {
            let word = self.levels[dv].reps[*b].clone();
            let mut cur = u.clone();
            for (k, &c) in word.iter().enumerate() {
                cur = self.step(du + k, &cur, c);
            }
            axpy(&mut out, &cur, cb);
        }
        out
    }
}

/// `dim A_n` computed from scratch (builds graded bases up to `n`).
pub fn graded_dim(a: &QuadraticAlgebra, n: usize) -> usize {
    GradedAlgebra::new(a.clone(), n).dim(n)
}

/// Basis of `(A^!_m)^* = ∩_{i+j+2=m} V^{⊗i} ⊗ W ⊗ V^{⊗j}` inside `V^{⊗m}`.
/// For `m = 0, 1` this is the full scalar / `V` space.
pub fn koszul_subspace(a: &QuadraticAlgebra, m: usize) -> Subspace {
    let g = a.num_gens();
    if m == 0 {
        return Subspace::full(1);
    }
    if m == 1 {
        return Subspace::full(g);
    }
    let ambient = g.pow(m as u32);
    let placed = |pos: usize| -> Subspace {
        let mut span = Vec::new();
        for w in a.relations().basis() {
            for pre in 0..g.pow(pos as u32) {
                for suf in 0..g.pow((m - 2 - pos) as u32) {
                    let mut v = SparseVec::new();
                    for (key, c) in w {
                        let idx = (pre * g * g + key) * g.pow((m - 2 - pos) as u32) + suf;
                        v.insert(idx, c.clone());
                    }
                    span.push(v);
                }
            }
        }
        Subspace::from_span(ambient, span)
    };
    let mut cur = placed(0);
    for pos in 1..=(m - 2) {
        cur = cur.intersect(&placed(pos)).expect("equal ambient dimensions");
    }
    cur
}

/// `dim A^!_m` for the Koszul dual `A^! = T(V^*)/(W^⊥)`, computed from the
/// orthogonal complement of the relations in the factorwise dual pairing.
pub fn koszul_dual_dim(a: &QuadraticAlgebra, m: usize) -> usize {
    graded_dim(&koszul_dual(a), m)
}

/// The Koszul dual presentation: relations are a basis of `W^⊥`.
pub fn koszul_dual(a: &QuadraticAlgebra) -> QuadraticAlgebra {
    let g = a.num_gens();
    let dim = g * g;
    // rows = relations, pairing is coordinatewise in the same order
    let mut mat = crate::linalg::SparseMatrix::zero(a.relations().dim(), dim);
    for (r, w) in a.relations().basis().iter().enumerate() {
        for (c, v) in w {
            mat.set(r, *c, v.clone());
        }
    }
    let perp = mat.kernel_basis();
    QuadraticAlgebra::new(g, perp.basis().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn params() -> SklyaninParams {
        SklyaninParams::new(ratio(1, 4), ratio(1, 9)).unwrap()
    }

    #[test]
    fn params_constraint_and_guard() {
        let p = params();
        assert_eq!(p.alphas()[2], &ratio(-13, 37));
        assert!(p.constraint_holds());
        assert!(p.is_generic());
        // (0, 0) gives alpha3 = 0: constraint holds but the guard rejects it
        let degenerate = SklyaninParams::new(rat(0), rat(0)).unwrap();
        assert!(degenerate.constraint_holds());
        assert!(!degenerate.is_generic());
        assert!(SklyaninParams::new_generic(rat(0), rat(0)).is_err());
        // 1 + a1 a2 = 0 is a hard error
        assert!(SklyaninParams::new(rat(1), rat(-1)).is_err());
    }

    #[test]
    fn params_constraint_random() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..30 {
            let a1 = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7));
            let a2 = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7));
            if let Ok(p) = SklyaninParams::new(a1, a2) {
                assert!(p.constraint_holds());
            }
        }
    }

    #[test]
    fn relations_shape() {
        let p = params();
        let rels = sklyanin_relation_polys(&p);
        assert_eq!(rels.len(), 6);
        // f_{01}: +1 on S0 S1, -1 on S1 S0, -alpha1 on S2 S3 and S3 S2
        let f01 = &rels[0];
        assert_eq!(f01.coeff(&[0, 1]), rat(1));
        assert_eq!(f01.coeff(&[1, 0]), rat(-1));
        assert_eq!(f01.coeff(&[2, 3]), -ratio(1, 4));
        assert_eq!(f01.coeff(&[3, 2]), -ratio(1, 4));
        assert_eq!(f01.terms().count(), 4);
        // the six relation vectors are independent
        let alg = sklyanin_algebra(&p);
        assert_eq!(alg.relations().dim(), 6);
    }

    #[test]
    fn graded_dims_are_flat() {
        let alg = sklyanin_algebra(&params());
        let graded = GradedAlgebra::new(alg, 5);
        let binom = |n: usize| (n + 1) * (n + 2) * (n + 3) / 6;
        for n in 0..=5 {
            assert_eq!(graded.dim(n), binom(n), "dim A_{n}");
        }
    }

    #[test]
    fn graded_basis_reduction() {
        let alg = sklyanin_algebra(&params());
        let graded = GradedAlgebra::new(alg, 4);
        assert_eq!(
            graded.basis(1).representative_words(),
            &[vec![0], vec![1], vec![2], vec![3]]
        );
        assert_eq!(graded.basis(2).dim(), 10);
        // image of S1 S0 = image of S0 S1 minus alpha1 (S2 S3 + S3 S2)
        let r = |w: &[u8]| graded.reduce(&NCPoly::word(w)).unwrap();
        let mut expect = r(&[0, 1]);
        axpy(&mut expect, &r(&[2, 3]), &(-ratio(1, 4)));
        axpy(&mut expect, &r(&[3, 2]), &(-ratio(1, 4)));
        assert_eq!(r(&[1, 0]), expect);
        // every relation vector placed in any slot reduces to zero
        let p = params();
        for rel in sklyanin_relation_polys(&p) {
            for pre in 0..4u8 {
                for suf in 0..4u8 {
                    let placed = NCPoly::word(&[pre]).mul(&rel).mul(&NCPoly::word(&[suf]));
                    assert!(graded.reduce(&placed).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn multiply_unit_associativity_relation() {
        let alg = sklyanin_algebra(&params());
        let graded = GradedAlgebra::new(alg, 3);
        let unit: SparseVec = [(0usize, rat(1))].into_iter().collect();
        let e = |c: usize| -> SparseVec { [(c, rat(1))].into_iter().collect() };
        // 1 * v = v
        let v = graded.reduce(&NCPoly::word(&[2, 1])).unwrap();
        assert_eq!(graded.multiply(&unit, 0, &v, 2), v);
        // associativity on all generator triples
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let ab = graded.multiply(&e(a), 1, &e(b), 1);
                    let bc = graded.multiply(&e(b), 1, &e(c), 1);
                    assert_eq!(
                        graded.multiply(&ab, 2, &e(c), 1),
                        graded.multiply(&e(a), 1, &bc, 2),
                        "associativity at ({a},{b},{c})"
                    );
                }
            }
        }
        // S0 S1 - S1 S0 = alpha1 (S2 S3 + S3 S2) in A_2 coordinates
        let lhs = {
            let mut x = graded.multiply(&e(0), 1, &e(1), 1);
            axpy(&mut x, &graded.multiply(&e(1), 1, &e(0), 1), &rat(-1));
            x
        };
        let rhs = {
            let mut x = graded.multiply(&e(2), 1, &e(3), 1);
            axpy(&mut x, &graded.multiply(&e(3), 1, &e(2), 1), &rat(1));
            let mut out = SparseVec::new();
            axpy(&mut out, &x, &ratio(1, 4));
            out
        };
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_dims() {
        let alg = sklyanin_algebra(&params());
        let expected = [1usize, 4, 6, 4, 1, 0, 0];
        for (m, &e) in expected.iter().enumerate() {
            assert_eq!(koszul_dual_dim(&alg, m), e, "dim A!_{m}");
        }
    }

    #[test]
    fn koszul_subspace_dims_match_dual() {
        let alg = sklyanin_algebra(&params());
        assert_eq!(koszul_subspace(&alg, 0).dim(), 1);
        assert_eq!(koszul_subspace(&alg, 1).dim(), 4);
        let k2 = koszul_subspace(&alg, 2);
        assert_eq!(k2.dim(), 6);
        // m = 2 is the relation space itself
        for w in alg.relations().basis() {
            assert!(k2.contains(w));
        }
        assert_eq!(koszul_subspace(&alg, 3).dim(), 4);
        assert_eq!(koszul_subspace(&alg, 4).dim(), 1);
    }

    #[test]
    fn presentation_serializes() {
        let alg = sklyanin_algebra(&params());
        let json = alg.to_json();
        assert!(json.contains("\"generators\":4"));
    }
}
