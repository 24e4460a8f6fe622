//! Exact rational generating functions in one variable `t`.
//!
//! [`RationalSeries`] is a quotient of integer polynomials with Taylor
//! expansion; this module also holds the closed-form reference series for the
//! homology of the generic Sklyanin structure and the table-vs-series
//! comparison report.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::linalg::Rational;
use crate::table::{DimTable, Side};

/// Integer polynomial in `t`, low degree first, no trailing zeros.
type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_from(coeffs: &[i64]) -> Poly {
    trim(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    trim(out)
}

/// Monic-free Euclidean gcd over Q, returned as a primitive integer polynomial
/// with positive leading coefficient.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Poly {
    let to_q = |p: &[BigInt]| -> Vec<Rational> { p.iter().map(|c| Rational::from(c.clone())).collect() };
    let mut r0 = to_q(a);
    let mut r1 = to_q(b);
    let trim_q = |p: &mut Vec<Rational>| {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    };
    trim_q(&mut r0);
    trim_q(&mut r1);
    while !r1.is_empty() {
        // r0 mod r1
        while r0.len() >= r1.len() && !r0.is_empty() {
            let f = r0.last().unwrap() / r1.last().unwrap();
            let shift = r0.len() - r1.len();
            for (i, c) in r1.iter().enumerate() {
                let v = &r0[shift + i] - c * &f;
                r0[shift + i] = v;
            }
            trim_q(&mut r0);
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    if r0.is_empty() {
        return Vec::new();
    }
    // clear denominators, divide by content, fix sign
    let mut den_lcm = BigInt::one();
    for c in &r0 {
        den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = r0.iter().map(|c| c.numer() * (&den_lcm / c.denom())).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = num_integer::gcd(content, c.clone());
    }
    let mut out: Poly = ints.iter().map(|c| c / &content).collect();
    if out.last().unwrap().is_negative() {
        for c in &mut out {
            *c = -&*c;
        }
    }
    out
}

/// Exact division `a / b` in Z[t]; panics unless the division is exact.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut rem: Vec<Rational> = a.iter().map(|c| Rational::from(c.clone())).collect();
    let bq: Vec<Rational> = b.iter().map(|c| Rational::from(c.clone())).collect();
    assert!(!bq.is_empty(), "division by zero polynomial");
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(bq.len()) + 1];
    let trim_q = |p: &mut Vec<Rational>| {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    };
    trim_q(&mut rem);
    while rem.len() >= bq.len() && !rem.is_empty() {
        let f = rem.last().unwrap() / bq.last().unwrap();
        let shift = rem.len() - bq.len();
        quot[shift] = f.clone();
        for (i, c) in bq.iter().enumerate() {
            let v = &rem[shift + i] - c * &f;
            rem[shift + i] = v;
        }
        trim_q(&mut rem);
    }
    assert!(rem.is_empty(), "polynomial division was not exact");
    trim(
        quot.iter()
            .map(|c| {
                assert!(c.denom().is_one(), "quotient not integral");
                c.numer().clone()
            })
            .collect(),
    )
}

/// A quotient of integer polynomials in `t` with nonzero constant term in the
/// denominator, stored in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    num: Poly,
    den: Poly,
}

impl RationalSeries {
    /// Build `num/den` from integer coefficient lists (low degree first).
    /// Reduces to lowest terms and normalizes the denominator's constant term
    /// to be positive. Errors if `den(0) == 0`.
    pub fn new(num: &[i64], den: &[i64]) -> crate::Result<Self> {
        Self::from_polys(poly_from(num), poly_from(den))
    }

    fn from_polys(num: Poly, den: Poly) -> crate::Result<Self> {
        if den.first().map_or(true, |c| c.is_zero()) {
            return Err(Error::InvalidParams("series denominator has zero constant term".into()));
        }
        if num.is_empty() {
            return Ok(RationalSeries { num, den: vec![BigInt::one()] });
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = (poly_div_exact(&num, &g), poly_div_exact(&den, &g));
        if den[0].is_negative() {
            for c in num.iter_mut().chain(den.iter_mut()) {
                *c = -&*c;
            }
        }
        Ok(RationalSeries { num, den })
    }

    /// The zero series.
    pub fn zero() -> Self {
        RationalSeries { num: Vec::new(), den: vec![BigInt::one()] }
    }

    /// Coefficients `c_0..c_n` of the Taylor expansion at `t = 0`, exact.
    pub fn expand(&self, n: usize) -> Vec<Rational> {
        let d0 = Rational::from(self.den[0].clone());
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut v = if i < self.num.len() {
                Rational::from(self.num[i].clone())
            } else {
                Rational::zero()
            };
            for j in 1..self.den.len().min(i + 1) {
                v -= Rational::from(self.den[j].clone()) * &out[i - j];
            }
            out.push(v / &d0);
        }
        out
    }

    /// Sum of two series (used by the linearity property checks).
    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        let num = poly_add(&poly_mul(&self.num, &other.den), &poly_mul(&other.num, &self.den));
        let den = poly_mul(&self.den, &other.den);
        RationalSeries::from_polys(num, den).expect("denominators have nonzero constant terms")
    }

    /// Equality as rational functions, by cross-multiplication of the reduced
    /// fractions (exact and total).
    pub fn eq_as_rational_function(&self, other: &RationalSeries) -> bool {
        poly_mul(&self.num, &other.den) == poly_mul(&other.num, &self.den)
    }
}

impl std::fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |p: &Poly| -> String {
            if p.is_empty() {
                return "0".into();
            }
            let mut parts = Vec::new();
            for (i, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = match i {
                    0 => format!("{c}"),
                    1 if c.is_one() => "t".into(),
                    1 => format!("{c}*t"),
                    _ if c.is_one() => format!("t^{i}"),
                    _ => format!("{c}*t^{i}"),
                };
                parts.push(term);
            }
            parts.join(" + ").replace("+ -", "- ")
        };
        write!(f, "({}) / ({})", show(&self.num), show(&self.den))
    }
}

const DEN_SQ: [i64; 5] = [1, 0, -2, 0, 1]; // (1 - t^2)^2

const NUMERATORS: [&[i64]; 5] = [
    &[1, 4, 2],          // degree 0
    &[0, 4, 4, 4, 1],    // degree 1
    &[0, 0, 0, 4, 2],    // degree 2
    &[0, 0, 0, 0, 1],    // degree 3
    &[0, 0, 0, 0, 1],    // degree 4
];

/// Closed-form Poincaré series of the Poisson homology of a Jacobian structure
/// on `K[x0..x3]` given by two generic quadric Casimirs, for homological index
/// `i = 0..=4`.
pub fn poisson_reference_series(i: usize) -> RationalSeries {
    assert!(i <= 4, "homological index out of range");
    RationalSeries::new(NUMERATORS[i], &DEN_SQ).unwrap()
}

/// Closed-form Poincaré series of the Hochschild homology of the generic
/// Sklyanin algebra, `i = 0..=4`. Identical to the Poisson list, which is the
/// deformation-invariance statement this crate verifies at the table level.
pub fn hochschild_reference_series(i: usize) -> RationalSeries {
    assert!(i <= 4, "homological index out of range");
    RationalSeries::new(NUMERATORS[i], &DEN_SQ).unwrap()
}

/// Reference series for either side.
pub fn reference_series(side: Side, i: usize) -> RationalSeries {
    match side {
        Side::Poisson => poisson_reference_series(i),
        Side::Hochschild => hochschild_reference_series(i),
    }
}

/// Hilbert series `(Σ t^deg) / (1 - t^2)^2` of a free module over a polynomial
/// ring on two weight-2 generators, given the generator degrees.
pub fn generator_series(degrees: &[usize]) -> RationalSeries {
    let top = degrees.iter().copied().max().unwrap_or(0);
    let mut num = vec![0i64; top + 1];
    for &d in degrees {
        num[d] += 1;
    }
    RationalSeries::new(&num, &DEN_SQ).unwrap()
}

/// Generator degree lists for the five homology modules over the two-Casimir
/// polynomial ring (index = homological degree).
pub const GENERATOR_DEGREES: [&[usize]; 5] = [
    &[0, 1, 1, 1, 1, 2, 2],
    &[1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4],
    &[3, 3, 3, 3, 4, 4],
    &[4],
    &[4],
];

/// One cell of a table-vs-series comparison.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonCell {
    pub side: Side,
    pub i: usize,
    pub d: usize,
    pub dim: usize,
    pub expected: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Per-(i, d) comparison of a computed dimension table against the reference
/// series; the verdict is `pass` iff every cell matches.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub cells: Vec<ComparisonCell>,
    pub pass: bool,
}

impl ComparisonReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            if !c.matches {
                out.push_str(&format!(
                    "MISMATCH side={:?} i={} d={}: computed {} expected {}\n",
                    c.side, c.i, c.d, c.dim, c.expected
                ));
            }
        }
        out.push_str(if self.pass { "verdict: pass\n" } else { "verdict: FAIL\n" });
        out
    }
}

/// Compare a dimension table against the reference series up to weight `n`.
pub fn compare(table: &DimTable, n: usize) -> crate::Result<ComparisonReport> {
    if table.max_weight() < n {
        return Err(Error::TableDepth { requested: n, available: table.max_weight() });
    }
    let mut cells = Vec::new();
    let mut pass = true;
    for i in 0..=4 {
        let coeffs = reference_series(table.side(), i).expand(n);
        for (d, expected) in coeffs.iter().enumerate() {
            let dim = table.get(i, d);
            let matches = &Rational::from(BigInt::from(dim)) == expected;
            pass &= matches;
            cells.push(ComparisonCell {
                side: table.side(),
                i,
                d,
                dim,
                expected: expected.to_string(),
                matches,
            });
        }
    }
    Ok(ComparisonReport { cells, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn expand_basic() {
        let s = RationalSeries::new(&[1], &[1, 0, -2, 0, 1]).unwrap();
        assert_eq!(s.expand(6), ints(&[1, 0, 2, 0, 3, 0, 4]));
        let s = poisson_reference_series(0);
        assert_eq!(s.expand(6), ints(&[1, 4, 4, 8, 7, 12, 10]));
        let s = RationalSeries::new(&[0, 0, 0, 0, 1], &[1, 0, -2, 0, 1]).unwrap();
        assert_eq!(s.expand(8), ints(&[0, 0, 0, 0, 1, 0, 2, 0, 3]));
    }

    /// Polynomial long division oracle, written independently of `expand`.
    fn long_division(num: &[i64], den: &[i64], n: usize) -> Vec<Rational> {
        let mut rem: Vec<Rational> = num.iter().map(|&c| rat(c)).collect();
        rem.resize(n + den.len() + 2, Rational::zero());
        let mut out = Vec::new();
        for k in 0..=n {
            let c = rem[k].clone() / rat(den[0]);
            for (j, &dc) in den.iter().enumerate() {
                let v = &rem[k + j] - rat(dc) * &c;
                rem[k + j] = v;
            }
            out.push(c);
        }
        out
    }

    #[test]
    fn expand_matches_long_division_oracle() {
        for i in 0..=4 {
            let s = poisson_reference_series(i);
            let oracle = long_division(NUMERATORS[i], &DEN_SQ, 12);
            assert_eq!(s.expand(12), oracle);
        }
    }

    #[test]
    fn denominator_zero_constant_rejected() {
        assert!(RationalSeries::new(&[1], &[0, 1]).is_err());
    }

    #[test]
    fn reduction_to_lowest_terms() {
        // (1 - t^2) / (1 - t)^2  ==  (1 + t) / (1 - t)
        let a = RationalSeries::new(&[1, 0, -1], &[1, -2, 1]).unwrap();
        let b = RationalSeries::new(&[1, 1], &[1, -1]).unwrap();
        assert_eq!(a, b);
        assert!(a.eq_as_rational_function(&b));
    }

    #[test]
    fn generator_series_matches_reference() {
        for i in 0..=4 {
            let g = generator_series(GENERATOR_DEGREES[i]);
            assert!(
                g.eq_as_rational_function(&hochschild_reference_series(i)),
                "generator series mismatch at i={i}: {g}"
            );
        }
    }

    #[test]
    fn poisson_and_hochschild_reference_series_agree() {
        for i in 0..=4 {
            assert!(poisson_reference_series(i)
                .eq_as_rational_function(&hochschild_reference_series(i)));
        }
    }

    #[test]
    fn reference_coefficients_nonnegative_to_40() {
        for i in 0..=4 {
            for c in poisson_reference_series(i).expand(40) {
                assert!(c >= Rational::zero());
            }
        }
    }

    #[test]
    fn comparison_detects_injected_fault() {
        let mut table = DimTable::new(Side::Poisson, 2);
        for i in 0..=4usize {
            let coeffs = poisson_reference_series(i).expand(2);
            for (d, c) in coeffs.iter().enumerate() {
                use num_traits::ToPrimitive;
                table.set(i, d, c.to_integer().to_usize().unwrap());
            }
        }
        let report = compare(&table, 2).unwrap();
        assert!(report.pass);
        // perturb one dimension by +1: exactly that cell must fail
        let old = table.get(1, 2);
        table.set(1, 2, old + 1);
        let report = compare(&table, 2).unwrap();
        assert!(!report.pass);
        let bad: Vec<_> = report.cells.iter().filter(|c| !c.matches).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].i, bad[0].d), (1, 2));
        // not populated deep enough
        assert!(compare(&table, 9).is_err());
    }

    #[test]
    fn empty_table_compares_weight_zero_only() {
        let table = DimTable::new(Side::Poisson, 0);
        let report = compare(&table, 0).unwrap();
        assert!(report.cells.iter().all(|c| c.d == 0));
        // d=0 row: expected (1,0,0,0,0); empty table stores zeros, so i=0 fails
        assert!(!report.pass);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn expand_is_linear(a0 in -5i64..5, a1 in -5i64..5, b0 in -5i64..5, b1 in -5i64..5) {
            let s1 = RationalSeries::new(&[a0, a1], &[1, -1]).unwrap();
            let s2 = RationalSeries::new(&[b0, b1], &[1, 0, -1]).unwrap();
            let sum = s1.add(&s2);
            let e1 = s1.expand(10);
            let e2 = s2.expand(10);
            let es = sum.expand(10);
            for k in 0..=10 {
                prop_assert_eq!(&e1[k] + &e2[k], es[k].clone());
            }
        }
    }
}
