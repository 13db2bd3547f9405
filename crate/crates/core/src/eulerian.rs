//! Mixed Eulerian numbers and their matroidal generalization, by five independent evaluators.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, multinomial, to_integer, Rational};
use crate::basis::{expand_l_monomial, matrix_b, Composition, SparseMonomial};
use crate::chow::{divisor_l, ChowEngine, IntegrandFactor};
use crate::error::{Error, Result};
use crate::matroid::{size, Matroid};
use crate::poly::MultiPoly;

pub const CLASSICAL_MAX_N: usize = 9;
pub const VOLUME_MAX_N: usize = 5;

/// `∫ S_b^c` over the permutohedral variety of dimension `n`.
pub fn s_integral(n: usize, s: &SparseMonomial) -> Result<BigInt> {
    if s.degree() as usize != n {
        return Err(Error::params(format!("S-monomial of degree {} on a {n}-dimensional variety", s.degree())));
    }
    if s.b.last().is_some_and(|&b| b > n) {
        return Err(Error::params(format!("S-index {} exceeds {n}", s.b.last().unwrap())));
    }
    let k = s.len();
    let n1 = n as i64 + 1;
    let mut parts = Vec::with_capacity(k + 1);
    let mut prev = 0;
    for &b in &s.b {
        parts.push(b as i64 - prev);
        prev = b as i64;
    }
    parts.push(n1 - prev);
    let mut value = multinomial(&parts);
    let mut partial = 0i64;
    for i in 0..k {
        partial += i64::from(s.c[i]);
        let lower = partial - s.b[i] as i64;
        value *= binomial(i64::from(s.c[i]) - 1, lower);
        if i + 1 < k {
            value *= binomial(s.b[i + 1] as i64 - s.b[i] as i64 - 1, lower);
        }
    }
    if (n - k) % 2 == 1 {
        value = -value;
    }
    Ok(value)
}

fn nonnegative_integer(value: &Rational, what: &str) -> Result<BigInt> {
    let v = to_integer(value, what)?;
    if v.is_negative() {
        return Err(Error::Internal(format!("{what} evaluated to the negative number {v}")));
    }
    Ok(v)
}

/// `A(a_1, …, a_n)` via the expansion of `L^a` in `S`-monomials.
pub fn mixed_eulerian(a: &Composition) -> Result<BigInt> {
    let n = a.len();
    if n == 0 {
        return Err(Error::params("composition must have at least one entry"));
    }
    a.expect_shape(n, n as u32)?;
    let expansion = expand_l_monomial(n, a)?;
    let mut total = Rational::zero();
    for (exp, coeff) in expansion.terms() {
        let s = SparseMonomial::from_exponent(exp);
        total += coeff * Rational::from_integer(s_integral(n, &s)?);
    }
    nonnegative_integer(&total, &format!("A{a}"))
}

/// Number of permutations of `n` letters with exactly `k - 1` ascents.
pub fn eulerian_classical(n: usize, k: usize) -> Result<BigInt> {
    if n > CLASSICAL_MAX_N {
        return Err(Error::SizeLimit(format!("permutation enumeration is limited to n <= {CLASSICAL_MAX_N}")));
    }
    if n == 0 || k == 0 || k > n {
        return Ok(BigInt::zero());
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0u64;
    loop {
        if perm.windows(2).filter(|w| w[0] < w[1]).count() == k - 1 {
            count += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(BigInt::from(count))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `P = ∫(sum x_i L_i)^n` and `Q = ∫(sum x_i S_i)^n`.
pub fn volume_polynomials(n: usize) -> Result<(MultiPoly, MultiPoly)> {
    if n == 0 {
        return Err(Error::params("n must be positive"));
    }
    if n > VOLUME_MAX_N {
        return Err(Error::SizeLimit(format!("volume polynomials are limited to n <= {VOLUME_MAX_N}")));
    }
    let mut p = MultiPoly::zero(n);
    let mut q = MultiPoly::zero(n);
    for a in Composition::all(n, n as u32) {
        let parts: Vec<i64> = a.entries.iter().map(|&x| i64::from(x)).collect();
        let weight = multinomial(&parts);
        let s = SparseMonomial::from_exponent(&a.entries);
        q.add_term(a.entries.clone(), Rational::from_integer(&weight * s_integral(n, &s)?));
        p.add_term(a.entries.clone(), Rational::from_integer(weight * mixed_eulerian(&a)?));
    }
    Ok((p, q))
}

/// The five evaluators of matroidal mixed Eulerian numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Closed,
    RecursionFlat,
    RecursionLex,
    Chow,
    Divisorial,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::Closed, Algorithm::RecursionFlat, Algorithm::RecursionLex, Algorithm::Chow, Algorithm::Divisorial];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Closed => "closed",
            Algorithm::RecursionFlat => "recursion-flat",
            Algorithm::RecursionLex => "recursion-lex",
            Algorithm::Chow => "chow",
            Algorithm::Divisorial => "divisorial",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| Error::params(format!("unknown algorithm {s:?}")))
    }
}

/// Which positive entry the flat recursion decrements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    #[default]
    Central,
    First,
    Last,
}

impl PivotRule {
    fn choose(self, a: &[u32]) -> Option<usize> {
        let positive = (0..a.len()).filter(|&i| a[i] > 0);
        match self {
            PivotRule::First => positive.min(),
            PivotRule::Last => positive.max(),
            PivotRule::Central => {
                let mid2 = a.len() as i64 - 1;
                positive.min_by_key(|&i| ((2 * i as i64 - mid2).abs(), i))
            }
        }
    }
}

type Key = (Vec<u8>, Vec<u32>);

/// Memoizing evaluator shared by all matroidal algorithms.
#[derive(Debug, Default)]
pub struct EulerianEngine {
    pivot: PivotRule,
    z_filter: bool,
    flat_memo: HashMap<Key, BigInt>,
    lex_memo: HashMap<Key, BigInt>,
    gammas: HashMap<Vec<u8>, Vec<u64>>,
    chow: ChowEngine,
}

enum Shape {
    Zero,
    Evaluate,
}

/// Validates `(M, a)`; rank-0 and loopy matroids short-circuit to zero.
fn classify(matroid: &Matroid, a: &Composition) -> Result<Shape> {
    if matroid.rank() == 0 {
        return Ok(Shape::Zero);
    }
    a.expect_shape(matroid.num_elements() - 1, matroid.rank() as u32 - 1)?;
    if !matroid.is_loopless() {
        return Ok(Shape::Zero);
    }
    Ok(Shape::Evaluate)
}

impl EulerianEngine {
    pub fn new() -> Self {
        EulerianEngine { z_filter: true, ..Default::default() }
    }

    pub fn with_pivot(mut self, pivot: PivotRule) -> Self {
        self.pivot = pivot;
        self
    }

    /// With the filter off the flat recursion sums over every proper nonempty flat.
    pub fn with_z_filter(mut self, z_filter: bool) -> Self {
        self.z_filter = z_filter;
        self
    }

    pub fn matroidal(&mut self, algorithm: Algorithm, matroid: &Matroid, a: &Composition) -> Result<BigInt> {
        match algorithm {
            Algorithm::Closed => self.matroidal_closed(matroid, a),
            Algorithm::RecursionFlat => self.matroidal_recursion_flat(matroid, a),
            Algorithm::RecursionLex => self.matroidal_recursion_lex(matroid, a),
            Algorithm::Chow => self.matroidal_chow(matroid, a),
            Algorithm::Divisorial => self.matroidal_divisorial(matroid, a),
        }
    }

    fn gamma(&mut self, matroid: &Matroid, l: i64) -> Result<u64> {
        let r = matroid.rank() as i64;
        if l < 0 || l > r - 1 {
            return Ok(0);
        }
        if let Some(g) = self.gammas.get(matroid.rank_table()) {
            return Ok(g[l as usize]);
        }
        let g = (0..r).map(|i| matroid.gamma(i)).collect::<Result<Vec<_>>>()?;
        let v = g[l as usize];
        self.gammas.insert(matroid.rank_table().to_vec(), g);
        Ok(v)
    }

    /// Sum over `S`-monomials and flags of flats of products of `γ` values.
    pub fn matroidal_closed(&mut self, matroid: &Matroid, a: &Composition) -> Result<BigInt> {
        if let Shape::Zero = classify(matroid, a)? {
            return Ok(BigInt::zero());
        }
        let n = a.len();
        let r = matroid.rank() as i64 - 1;
        let expansion = if n == 0 { MultiPoly::one(0) } else { expand_l_monomial(n, a)? };
        let mut total = Rational::zero();
        for (exp, coeff) in expansion.terms() {
            let s = SparseMonomial::from_exponent(exp);
            let k = s.len();
            let sizes: Vec<usize> = (1..=k).map(|i| n + 1 - s.b[k - i]).collect();
            let mut flag_sum = BigInt::zero();
            for flag in matroid.flags_of_flats(&sizes) {
                let chain = flag.with_endpoints();
                let mut product = BigInt::one();
                let mut used = 0i64;
                for i in 1..=k {
                    let split = binomial(i64::from(s.c[k - i]) - 1, matroid.rank_of(chain[i]) as i64 - 1 - used);
                    if split.is_zero() {
                        product = BigInt::zero();
                        break;
                    }
                    product *= split;
                    used += i64::from(s.c[k - i]);
                    let upper = chain[i + 1];
                    let minor = matroid.minor(upper, chain[i])?;
                    let g = self.gamma(&minor, matroid.rank_of(upper) as i64 - 1 - used)?;
                    if g == 0 {
                        product = BigInt::zero();
                        break;
                    }
                    product *= g;
                }
                flag_sum += product;
            }
            if (r - k as i64) % 2 != 0 {
                flag_sum = -flag_sum;
            }
            total += coeff * Rational::from_integer(flag_sum);
        }
        nonnegative_integer(&total, &format!("closed A_M{a}"))
    }

    pub fn matroidal_recursion_flat(&mut self, matroid: &Matroid, a: &Composition) -> Result<BigInt> {
        if let Shape::Zero = classify(matroid, a)? {
            return Ok(BigInt::zero());
        }
        Ok(self.flat(matroid, &a.entries, None))
    }

    /// The flat recursion with the top-level pivot fixed to the 1-based index `j`.
    pub fn matroidal_recursion_flat_pivot(&mut self, matroid: &Matroid, a: &Composition, j: usize) -> Result<BigInt> {
        if let Shape::Zero = classify(matroid, a)? {
            return Ok(BigInt::zero());
        }
        if j == 0 || j > a.len() || a.get(j - 1) == 0 {
            return Err(Error::params(format!("pivot {j} is not a positive entry of {a}")));
        }
        Ok(self.flat(matroid, &a.entries, Some(j - 1)))
    }

    /// Lenient evaluation: zero unless the shape matches and the matroid is loopless.
    fn flat_lenient(&mut self, matroid: &Matroid, a: &[u32]) -> BigInt {
        if matroid.rank() == 0 || a.len() + 1 != matroid.num_elements() || a.iter().sum::<u32>() + 1 != matroid.rank() as u32 || !matroid.is_loopless() {
            return BigInt::zero();
        }
        self.flat(matroid, a, None)
    }

    fn flat(&mut self, matroid: &Matroid, a: &[u32], pivot: Option<usize>) -> BigInt {
        let Some(j) = pivot.or_else(|| self.pivot.choose(a)) else {
            return BigInt::one();
        };
        let key = (matroid.rank_table().to_vec(), a.to_vec());
        if pivot.is_none() {
            if let Some(v) = self.flat_memo.get(&key) {
                return v.clone();
            }
        }
        let n = a.len();
        let b = matrix_b(n);
        let mut reduced = a.to_vec();
        reduced[j] -= 1;
        let full = matroid.full();
        let mut total = Rational::zero();
        for f in 1..full {
            if !matroid.is_flat(f) {
                continue;
            }
            let k = size(f);
            let slot = n + 1 - k;
            let left = &reduced[..n - k];
            let right = &reduced[n + 1 - k..];
            if self.z_filter {
                let corank = matroid.rank() - matroid.rank_of(f);
                if reduced[slot - 1] != 0 || left.iter().sum::<u32>() as usize + 1 != corank {
                    continue;
                }
            }
            let outer = matroid.contraction(f).expect("proper flat");
            let inner = matroid.restriction(f).expect("nonempty flat");
            let lv = self.flat_lenient(&outer, left);
            if lv.is_zero() {
                continue;
            }
            let rv = self.flat_lenient(&inner, right);
            total += &b[j][slot - 1] * Rational::from_integer(lv * rv);
        }
        let value = total.to_integer();
        debug_assert!(total.is_integer());
        if pivot.is_none() {
            self.flat_memo.insert(key, value.clone());
        }
        value
    }

    pub fn matroidal_recursion_lex(&mut self, matroid: &Matroid, a: &Composition) -> Result<BigInt> {
        if let Shape::Zero = classify(matroid, a)? {
            return Ok(BigInt::zero());
        }
        let v = self.lex(matroid, &a.entries);
        if v.is_negative() {
            return Err(Error::Internal(format!("lex recursion gave {v} for A_M{a}")));
        }
        Ok(v)
    }

    fn lex(&mut self, matroid: &Matroid, a: &[u32]) -> BigInt {
        let Some(j) = (0..a.len()).rev().find(|&i| a[i] > 0).map(|i| i + 1) else {
            return BigInt::one();
        };
        if j == 1 {
            return BigInt::one();
        }
        let key = (matroid.rank_table().to_vec(), a.to_vec());
        if let Some(v) = self.lex_memo.get(&key) {
            return v.clone();
        }
        let n = a.len();
        let mut total = BigInt::zero();
        if j >= 3 {
            let mut first = a.to_vec();
            first[j - 3] += 1;
            first[j - 1] -= 1;
            total -= self.lex(matroid, &first);
        }
        let mut second = a.to_vec();
        second[j - 2] += 1;
        second[j - 1] -= 1;
        total += BigInt::from(2) * self.lex(matroid, &second);
        if a[j - 2] == 0 {
            let want_size = n + 2 - j;
            let want_rank: u32 = a[j - 2..].iter().sum();
            let full = matroid.full();
            for f in (1..full).filter(|&f| size(f) == want_size) {
                if matroid.rank_of(f) as u32 != want_rank || !matroid.is_flat(f) {
                    continue;
                }
                let outer = matroid.contraction(f).expect("proper flat");
                total -= self.lex(&outer, &a[..j - 2]);
            }
        }
        self.lex_memo.insert(key, total.clone());
        total
    }

    /// `∫ [X_M] L_1^{a_1}⋯L_{m-1}^{a_{m-1}}` by ray restriction.
    pub fn matroidal_chow(&mut self, matroid: &Matroid, a: &Composition) -> Result<BigInt> {
        if let Shape::Zero = classify(matroid, a)? {
            return Ok(BigInt::zero());
        }
        let m = matroid.num_elements();
        let mut factors = vec![IntegrandFactor::MatroidClass(matroid.clone())];
        for (i, &ai) in a.entries.iter().enumerate() {
            let l = divisor_l(m, i + 1)?;
            factors.extend(std::iter::repeat_n(IntegrandFactor::RayDivisor(l), ai as usize));
        }
        let v = self.chow.integral(m, &factors)?;
        nonnegative_integer(&v, &format!("chow A_M{a}"))
    }

    /// Like [`Self::matroidal_chow`], with the matroid class replaced by its line bundle factors.
    pub fn matroidal_divisorial(&mut self, matroid: &Matroid, a: &Composition) -> Result<BigInt> {
        if let Shape::Zero = classify(matroid, a)? {
            return Ok(BigInt::zero());
        }
        let v = self.chow.integral_pure_matroid(matroid, a)?;
        nonnegative_integer(&v, &format!("divisorial A_M{a}"))
    }
}

/// Every composition admissible for `M`: `m - 1` slots summing to `rank - 1`.
pub fn admissible_compositions(matroid: &Matroid) -> Vec<Composition> {
    if matroid.rank() == 0 {
        return Vec::new();
    }
    Composition::all(matroid.num_elements() - 1, matroid.rank() as u32 - 1)
}

pub fn matroidal_closed(matroid: &Matroid, a: &Composition) -> Result<BigInt> {
    EulerianEngine::new().matroidal_closed(matroid, a)
}

pub fn matroidal_recursion_flat(matroid: &Matroid, a: &Composition) -> Result<BigInt> {
    EulerianEngine::new().matroidal_recursion_flat(matroid, a)
}

pub fn matroidal_recursion_lex(matroid: &Matroid, a: &Composition) -> Result<BigInt> {
    EulerianEngine::new().matroidal_recursion_lex(matroid, a)
}

pub fn matroidal_chow(matroid: &Matroid, a: &Composition) -> Result<BigInt> {
    EulerianEngine::new().matroidal_chow(matroid, a)
}

pub fn matroidal_divisorial(matroid: &Matroid, a: &Composition) -> Result<BigInt> {
    EulerianEngine::new().matroidal_divisorial(matroid, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::apply_basis_change;
    use crate::chow::{divisor_s, integral};
    use crate::poly::from_int_terms;

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec())
    }

    fn sm(b: &[usize], c: &[u32]) -> SparseMonomial {
        SparseMonomial::new(b.to_vec(), c.to_vec()).unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn s_integral_examples() {
        assert_eq!(s_integral(1, &sm(&[1], &[1])).unwrap(), int(2));
        assert_eq!(s_integral(2, &sm(&[1, 2], &[1, 1])).unwrap(), int(6));
        assert_eq!(s_integral(2, &sm(&[1], &[2])).unwrap(), int(-3));
        assert_eq!(s_integral(2, &sm(&[2], &[2])).unwrap(), int(-3));
        assert!(matches!(s_integral(3, &sm(&[1], &[2])), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn s_integral_matches_chow_oracle() {
        for n in 1..=4usize {
            for a in Composition::all(n, n as u32) {
                let s = SparseMonomial::from_exponent(&a.entries);
                let mut factors = Vec::new();
                for (&b, &c) in s.b.iter().zip(&s.c) {
                    for _ in 0..c {
                        factors.push(IntegrandFactor::RayDivisor(divisor_s(n + 1, b).unwrap()));
                    }
                }
                let oracle = integral(n + 1, &factors).unwrap();
                assert_eq!(Rational::from_integer(s_integral(n, &s).unwrap()), oracle, "S^{a}");
            }
        }
    }

    #[test]
    fn mixed_eulerian_examples() {
        assert_eq!(mixed_eulerian(&comp(&[2, 0])).unwrap(), int(1));
        assert_eq!(mixed_eulerian(&comp(&[1, 1])).unwrap(), int(2));
        assert_eq!(mixed_eulerian(&comp(&[0, 2])).unwrap(), int(1));
        assert_eq!(mixed_eulerian(&comp(&[0, 3, 0])).unwrap(), int(4));
        assert_eq!(mixed_eulerian(&comp(&[1, 1, 1])).unwrap(), int(6));
        assert!(matches!(mixed_eulerian(&comp(&[1, 0])), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn classical_eulerian_numbers() {
        assert_eq!(eulerian_classical(3, 2).unwrap(), int(4));
        assert_eq!(eulerian_classical(4, 2).unwrap(), int(11));
        for n in 1..=7 {
            assert_eq!(eulerian_classical(n, 1).unwrap(), int(1));
            let total: BigInt = (1..=n).map(|k| eulerian_classical(n, k).unwrap()).sum();
            assert_eq!(total, crate::arith::factorial(n as u32));
        }
        assert!(matches!(eulerian_classical(10, 2), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn classical_identification_small() {
        for n in 1..=5 {
            for k in 1..=n {
                let a = Composition::concentrated(n, k, n as u32);
                assert_eq!(mixed_eulerian(&a).unwrap(), eulerian_classical(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn volume_polynomial_examples() {
        let (p, q) = volume_polynomials(2).unwrap();
        assert_eq!(p, from_int_terms(2, &[(&[2, 0], 1), (&[1, 1], 4), (&[0, 2], 1)]));
        assert_eq!(q, from_int_terms(2, &[(&[2, 0], -3), (&[1, 1], 12), (&[0, 2], -3)]));
        let (p, q) = volume_polynomials(1).unwrap();
        assert_eq!((p, q), (from_int_terms(1, &[(&[1], 1)]), from_int_terms(1, &[(&[1], 2)])));
        for n in 1..=4 {
            let (p, q) = volume_polynomials(n).unwrap();
            let mut e1 = vec![Rational::zero(); n];
            e1[0] = Rational::one();
            assert_eq!(p.eval(&e1), Rational::one());
            assert_eq!(apply_basis_change(n, &q).unwrap(), p);
        }
        assert!(matches!(volume_polynomials(6), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn matroidal_examples_for_every_algorithm() {
        let u33 = Matroid::uniform(3, 3).unwrap();
        let u23 = Matroid::uniform(2, 3).unwrap();
        let loopy = Matroid::from_bases(3, &[0b011]).unwrap();
        for alg in Algorithm::ALL {
            let mut e = EulerianEngine::new();
            assert_eq!(e.matroidal(alg, &u33, &comp(&[1, 1])).unwrap(), int(2), "{alg}");
            assert_eq!(e.matroidal(alg, &u33, &comp(&[2, 0])).unwrap(), int(1), "{alg}");
            assert_eq!(e.matroidal(alg, &u23, &comp(&[1, 0])).unwrap(), int(1), "{alg}");
            assert_eq!(e.matroidal(alg, &u23, &comp(&[0, 1])).unwrap(), int(2), "{alg}");
            assert_eq!(e.matroidal(alg, &loopy, &comp(&[1, 0])).unwrap(), int(0), "{alg}");
            assert!(matches!(e.matroidal(alg, &u23, &comp(&[1, 1])), Err(Error::InvalidParameters(_))), "{alg}");
        }
    }

    #[test]
    fn rank_one_and_rank_zero() {
        let u14 = Matroid::uniform(1, 4).unwrap();
        let u01 = Matroid::uniform(0, 1).unwrap();
        let u11 = Matroid::uniform(1, 1).unwrap();
        for alg in Algorithm::ALL {
            let mut e = EulerianEngine::new();
            assert_eq!(e.matroidal(alg, &u14, &comp(&[0, 0, 0])).unwrap(), int(1));
            assert_eq!(e.matroidal(alg, &u11, &comp(&[])).unwrap(), int(1));
            assert_eq!(e.matroidal(alg, &u01, &comp(&[])).unwrap(), int(0));
        }
    }

    #[test]
    fn uniform_boolean_matches_mixed_eulerian() {
        for m in 2..=5 {
            let boolean = Matroid::uniform(m, m).unwrap();
            let mut e = EulerianEngine::new();
            for a in admissible_compositions(&boolean) {
                let expected = mixed_eulerian(&a).unwrap();
                for alg in Algorithm::ALL {
                    assert_eq!(e.matroidal(alg, &boolean, &a).unwrap(), expected, "{alg} {a}");
                }
            }
        }
    }

    #[test]
    fn u24_agrees_across_algorithms() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        for a in admissible_compositions(&u24) {
            let closed = matroidal_closed(&u24, &a).unwrap();
            assert_eq!(matroidal_recursion_lex(&u24, &a).unwrap(), closed);
            assert_eq!(matroidal_recursion_flat(&u24, &a).unwrap(), closed);
        }
    }

    #[test]
    fn gamma_identification_small() {
        let samples = [Matroid::uniform(2, 4).unwrap(), Matroid::uniform(3, 5).unwrap(), Matroid::from_bases(4, &[0b0011, 0b0101, 0b1001, 0b0110, 0b1010]).unwrap()];
        for m in samples {
            let r = m.rank();
            for l in 0..r {
                let a = {
                    let mut v = vec![0; m.num_elements() - 1];
                    v[0] += l as u32;
                    *v.last_mut().unwrap() += (r - 1 - l) as u32;
                    Composition::new(v)
                };
                assert_eq!(matroidal_closed(&m, &a).unwrap(), BigInt::from(m.gamma(l as i64).unwrap()), "{m:?} l={l}");
            }
        }
    }

    #[test]
    fn pivots_and_filter_do_not_matter() {
        let m = Matroid::from_bases(5, &[0b00111, 0b01011, 0b10011, 0b01101, 0b10101, 0b01110, 0b10110, 0b11001, 0b11010]).unwrap();
        for a in admissible_compositions(&m) {
            let reference = matroidal_closed(&m, &a).unwrap();
            for rule in [PivotRule::Central, PivotRule::First, PivotRule::Last] {
                let mut e = EulerianEngine::new().with_pivot(rule);
                assert_eq!(e.matroidal_recursion_flat(&m, &a).unwrap(), reference);
                let mut unfiltered = EulerianEngine::new().with_pivot(rule).with_z_filter(false);
                assert_eq!(unfiltered.matroidal_recursion_flat(&m, &a).unwrap(), reference);
            }
            for j in (1..=a.len()).filter(|&j| a.get(j - 1) > 0) {
                assert_eq!(EulerianEngine::new().matroidal_recursion_flat_pivot(&m, &a, j).unwrap(), reference);
            }
        }
        let a = comp(&[2, 0, 0, 0]);
        assert!(EulerianEngine::new().matroidal_recursion_flat_pivot(&Matroid::uniform(3, 5).unwrap(), &a, 2).is_err());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for alg in Algorithm::ALL {
            assert_eq!(alg.name().parse::<Algorithm>().unwrap(), alg);
        }
        assert!("fast".parse::<Algorithm>().is_err());
    }

    mod properties {
        use super::*;
        use crate::matroid::strategy::{graphic, loopless_graphic, with_permutation};
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn evaluators_agree_and_are_nonnegative(m in graphic(5)) {
                let mut engine = EulerianEngine::new();
                for a in admissible_compositions(&m) {
                    let reference = engine.matroidal_closed(&m, &a).unwrap();
                    prop_assert!(!reference.is_negative());
                    for alg in Algorithm::ALL {
                        prop_assert_eq!(&engine.matroidal(alg, &m, &a).unwrap(), &reference, "{} {}", alg, a);
                    }
                }
            }

            #[test]
            fn pivot_choice_is_irrelevant(m in loopless_graphic(5)) {
                for a in admissible_compositions(&m) {
                    let reference = matroidal_closed(&m, &a).unwrap();
                    for j in (1..=a.len()).filter(|&j| a.get(j - 1) > 0) {
                        prop_assert_eq!(&EulerianEngine::new().matroidal_recursion_flat_pivot(&m, &a, j).unwrap(), &reference);
                    }
                    prop_assert_eq!(&EulerianEngine::new().with_z_filter(false).matroidal_recursion_flat(&m, &a).unwrap(), &reference);
                }
            }

            #[test]
            fn relabeling_preserves_values((m, perm) in with_permutation(graphic(5))) {
                let moved = m.relabel(&perm).unwrap();
                for a in admissible_compositions(&m) {
                    prop_assert_eq!(matroidal_closed(&m, &a).unwrap(), matroidal_closed(&moved, &a).unwrap());
                }
            }
        }
    }
}
