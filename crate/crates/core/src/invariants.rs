//! Classical matroid invariants recovered from matroidal mixed Eulerian numbers and intersection numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorial, to_integer, Rational};
use crate::basis::{expand_s_monomial, Composition, SparseMonomial};
use crate::chow::{divisor_s, ChowEngine, IntegrandFactor};
use crate::error::{Error, Result};
use crate::eulerian::{admissible_compositions, EulerianEngine};
use crate::matroid::{CatenaryData, Matroid};
use crate::poly::{from_int_terms, MultiPoly};

pub type MenVector = BTreeMap<Composition, BigInt>;

/// `A_M(a)` for every admissible `a`, cross-checked against the lexicographic recursion.
pub fn men_vector(matroid: &Matroid) -> Result<MenVector> {
    men_vector_with(&mut EulerianEngine::new(), matroid)
}

pub fn men_vector_with(engine: &mut EulerianEngine, matroid: &Matroid) -> Result<MenVector> {
    if matroid.rank() == 0 {
        return Err(Error::params("the vector is defined for matroids of positive rank"));
    }
    let mut out = BTreeMap::new();
    for a in admissible_compositions(matroid) {
        let closed = engine.matroidal_closed(matroid, &a)?;
        let lex = engine.matroidal_recursion_lex(matroid, &a)?;
        if closed != lex {
            return Err(Error::Internal(format!("A_M{a}: closed formula gives {closed}, recursion gives {lex}")));
        }
        out.insert(a, closed);
    }
    Ok(out)
}

/// Whether two matroids of the same size and rank share their G-invariant.
pub fn g_equivalent(m1: &Matroid, m2: &Matroid) -> Result<bool> {
    if m1.num_elements() != m2.num_elements() || m1.rank() != m2.rank() {
        return Err(Error::params(format!(
            "G-equivalence compares matroids of equal size and rank, got ({}, {}) and ({}, {})",
            m1.num_elements(),
            m1.rank(),
            m2.num_elements(),
            m2.rank()
        )));
    }
    Ok(m1.g_invariant()? == m2.g_invariant()?)
}

/// Positive sequences `(b_1, …, b_len)` with sum below `bound`.
fn positive_sequences(len: usize, bound: usize) -> Vec<Vec<usize>> {
    fn fill(prefix: &mut Vec<usize>, len: usize, left: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in 1..left {
            prefix.push(v);
            fill(prefix, len, left - v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(len), len, bound, &mut out);
    out
}

/// The `S`-indices `m - b_1, m - b_1 - b_2, …` in increasing order.
fn chain_monomial(m: usize, b: &[usize]) -> SparseMonomial {
    let mut indices: Vec<usize> = b.iter().scan(0, |acc, &x| {
        *acc += x;
        Some(m - *acc)
    }).collect();
    indices.reverse();
    let ones = vec![1; indices.len()];
    SparseMonomial::new(indices, ones).expect("partial sums are strictly increasing")
}

fn catenary_key(m: usize, b: &[usize]) -> Vec<usize> {
    let mut key = Vec::with_capacity(b.len() + 2);
    key.push(0);
    key.extend_from_slice(b);
    key.push(m - b.iter().sum::<usize>());
    key
}

fn require_loopless(matroid: &Matroid) -> Result<()> {
    if !matroid.is_loopless() {
        return Err(Error::params("this invariant is computed for loopless matroids only"));
    }
    Ok(())
}

fn count(value: &Rational, what: &str) -> Result<u64> {
    let v = to_integer(value, what)?;
    u64::try_from(v).map_err(|_| Error::Internal(format!("{what} is not a nonnegative machine integer")))
}

/// Catenary data from the integrals `∫ [X_M] S_{m-b_1} S_{m-b_1-b_2} ⋯`.
pub fn catenary_via_integrals(matroid: &Matroid) -> Result<CatenaryData> {
    require_loopless(matroid)?;
    let m = matroid.num_elements();
    let r = matroid.rank() - 1;
    let mut engine = ChowEngine::new();
    let mut out = CatenaryData::default();
    for b in positive_sequences(r, m) {
        let s = chain_monomial(m, &b);
        let mut factors = vec![IntegrandFactor::MatroidClass(matroid.clone())];
        for &i in &s.b {
            factors.push(IntegrandFactor::RayDivisor(divisor_s(m, i)?));
        }
        let v = count(&engine.integral(m, &factors)?, "catenary integral")?;
        if v > 0 {
            out.counts.insert(catenary_key(m, &b), v);
        }
    }
    Ok(out)
}

/// Catenary data from `sum_c D^c(b) A_M(c)`.
pub fn g_from_men(matroid: &Matroid) -> Result<CatenaryData> {
    require_loopless(matroid)?;
    let men = men_vector(matroid)?;
    let m = matroid.num_elements();
    let r = matroid.rank() - 1;
    let mut out = CatenaryData::default();
    for b in positive_sequences(r, m) {
        let s = chain_monomial(m, &b);
        let expansion = if s.is_empty() { MultiPoly::one(m - 1) } else { expand_s_monomial(m - 1, &s)? };
        let mut total = Rational::zero();
        for (exp, coeff) in expansion.terms() {
            let a = Composition::new(exp.clone());
            let value = men.get(&a).ok_or_else(|| Error::Internal(format!("missing A_M{a}")))?;
            total += coeff * Rational::from_integer(value.clone());
        }
        let v = count(&total, "catenary coefficient")?;
        if v > 0 {
            out.counts.insert(catenary_key(m, &b), v);
        }
    }
    Ok(out)
}

/// `sum_c coeff_c A_M(c)` for a polynomial in the `L` variables.
fn integrate(men: &MenVector, p: &MultiPoly) -> Result<Rational> {
    let mut total = Rational::zero();
    for (exp, coeff) in p.terms() {
        let a = Composition::new(exp.clone());
        let value = men.get(&a).ok_or_else(|| Error::Internal(format!("integrand monomial L^{a} has the wrong degree")))?;
        total += coeff * Rational::from_integer(value.clone());
    }
    Ok(total)
}

fn l_product(n: usize, indices: impl IntoIterator<Item = usize>) -> MultiPoly {
    let mut exp = vec![0u32; n];
    for i in indices {
        exp[i - 1] += 1;
    }
    MultiPoly::monomial(exp, Rational::one())
}

/// `(x - 1)^l y^e` as a polynomial in `(x, y)`.
fn xy_term(l: u32, e: u32) -> MultiPoly {
    let x_minus_one = from_int_terms(2, &[(&[1, 0], 1), (&[0, 0], -1)]);
    x_minus_one.pow(l).mul(&MultiPoly::monomial(vec![0, e], Rational::one()))
}

/// The Tutte polynomial assembled from intersection numbers of `[X_M]` with `S` and `L` divisors.
pub fn tutte_via_intersections(matroid: &Matroid) -> Result<MultiPoly> {
    require_loopless(matroid)?;
    if matroid.rank() == 0 {
        return Err(Error::params("the intersection formula needs positive rank"));
    }
    let men = men_vector(matroid)?;
    let n = matroid.num_elements() - 1;
    let r = matroid.rank() - 1;
    let mut out = xy_term(matroid.rank() as u32, 0);
    out.add_assign_poly(&top_term(&men, n, r)?);
    for i in 1..=n {
        let s = expand_s_monomial(n, &SparseMonomial::new(vec![n + 1 - i], vec![1])?)?;
        for l in 1..=r {
            let weight = Rational::new(BigInt::one(), factorial((r - l) as u32));
            let Some(top) = (i + l).checked_sub(1 + r) else { continue };
            for d in 0..=top {
                let integrand = s.mul(&l_product(n, std::iter::repeat_n(1, l - 1).chain((1..=r - l).map(|k| k + n + 1 - i + d))));
                let value = integrate(&men, &integrand)?;
                if value.is_zero() {
                    continue;
                }
                out.add_assign_poly(&xy_term(l as u32, (top - d) as u32).scale(&(value * &weight)));
            }
        }
    }
    if out.terms().any(|(_, c)| !c.is_integer()) {
        return Err(Error::Internal(format!("intersection formula produced non-integral coefficients: {}", out.display_with(&["x", "y"]))));
    }
    Ok(out)
}

/// `T_M(1, y) = (1/r!) sum_d y^{n-r-d} ∫ [X_M] L_{1+d} ⋯ L_{r+d}`.
fn top_term(men: &MenVector, n: usize, r: usize) -> Result<MultiPoly> {
    let weight = Rational::new(BigInt::one(), factorial(r as u32));
    let mut out = MultiPoly::zero(2);
    for d in 0..=n - r {
        let value = integrate(men, &l_product(n, (1..=r).map(|k| k + d)))?;
        out.add_assign_poly(&MultiPoly::monomial(vec![0, (n - r - d) as u32], value * &weight));
    }
    Ok(out)
}

/// `T_M(1, y)` from the top term alone.
pub fn tutte_at_x_one(matroid: &Matroid) -> Result<MultiPoly> {
    require_loopless(matroid)?;
    if matroid.rank() == 0 {
        return Err(Error::params("the intersection formula needs positive rank"));
    }
    let men = men_vector(matroid)?;
    top_term(&men, matroid.num_elements() - 1, matroid.rank() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec())
    }

    fn samples() -> Vec<Matroid> {
        vec![
            Matroid::uniform(1, 2).unwrap(),
            Matroid::uniform(2, 3).unwrap(),
            Matroid::uniform(3, 3).unwrap(),
            Matroid::uniform(2, 4).unwrap(),
            Matroid::uniform(3, 5).unwrap(),
            Matroid::from_bases(4, &[0b0011, 0b0101, 0b1001, 0b0110, 0b1010]).unwrap(),
            Matroid::graphic(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(),
        ]
    }

    #[test]
    fn men_vector_examples() {
        let u23 = men_vector(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert_eq!(u23, BTreeMap::from([(comp(&[0, 1]), BigInt::from(2)), (comp(&[1, 0]), BigInt::from(1))]));
        let u33 = men_vector(&Matroid::uniform(3, 3).unwrap()).unwrap();
        let expected = [(vec![0, 2], 1), (vec![1, 1], 2), (vec![2, 0], 1)];
        assert_eq!(u33, expected.into_iter().map(|(a, v)| (Composition::new(a), BigInt::from(v))).collect());
        let loopy = men_vector(&Matroid::from_bases(3, &[0b011]).unwrap()).unwrap();
        assert!(loopy.values().all(Zero::is_zero));
        assert!(men_vector(&Matroid::uniform(0, 2).unwrap()).is_err());
    }

    #[test]
    fn g_equivalence_examples() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let other = Matroid::from_bases(4, &[0b0011, 0b0101, 0b1001, 0b0110, 0b1010]).unwrap();
        assert!(g_equivalent(&u24, &u24.relabel(&[2, 0, 3, 1]).unwrap()).unwrap());
        assert!(!g_equivalent(&u24, &other).unwrap());
        assert_ne!(men_vector(&u24).unwrap(), men_vector(&other).unwrap());
        assert!(g_equivalent(&u24, &Matroid::uniform(3, 4).unwrap()).is_err());
    }

    #[test]
    fn catenary_examples() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        let via = catenary_via_integrals(&u23).unwrap();
        assert_eq!(via.counts.get(&vec![0, 1, 2]), Some(&3));
        assert_eq!(g_from_men(&u23).unwrap().counts.get(&vec![0, 1, 2]), Some(&3));
        let u33 = Matroid::uniform(3, 3).unwrap();
        assert_eq!(catenary_via_integrals(&u33).unwrap().counts.get(&vec![0, 1, 1, 1]), Some(&6));
        assert_eq!(g_from_men(&u33).unwrap().counts.get(&vec![0, 1, 1, 1]), Some(&6));
        let u13 = Matroid::uniform(1, 3).unwrap();
        assert_eq!(catenary_via_integrals(&u13).unwrap().counts, BTreeMap::from([(vec![0, 3], 1)]));
        assert!(catenary_via_integrals(&Matroid::from_bases(3, &[0b011]).unwrap()).is_err());
    }

    #[test]
    fn catenary_agrees_with_flag_counts() {
        for m in samples() {
            let expected = m.catenary();
            assert_eq!(catenary_via_integrals(&m).unwrap(), expected, "{m:?}");
            assert_eq!(g_from_men(&m).unwrap(), expected, "{m:?}");
        }
    }

    #[test]
    fn tutte_examples() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(tutte_via_intersections(&u23).unwrap(), from_int_terms(2, &[(&[2, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]));
        let u12 = Matroid::uniform(1, 2).unwrap();
        assert_eq!(tutte_via_intersections(&u12).unwrap(), from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
        let u33 = Matroid::uniform(3, 3).unwrap();
        assert_eq!(tutte_via_intersections(&u33).unwrap(), from_int_terms(2, &[(&[3, 0], 1)]));
    }

    #[test]
    fn tutte_agrees_with_rank_expansion() {
        for m in samples() {
            assert_eq!(tutte_via_intersections(&m).unwrap(), m.tutte(), "{m:?}");
            let at_one = m.tutte().substitute(&[MultiPoly::constant(1, Rational::one()), MultiPoly::variable(1, 0)]);
            let top = tutte_at_x_one(&m).unwrap().substitute(&[MultiPoly::zero(1), MultiPoly::variable(1, 0)]);
            assert_eq!(top, at_one, "{m:?}");
        }
    }

    #[test]
    fn positive_sequences_respect_bound() {
        assert_eq!(positive_sequences(2, 4), vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(positive_sequences(0, 3), vec![Vec::<usize>::new()]);
        assert_eq!(chain_monomial(5, &[1, 2]).b, vec![2, 4]);
    }

    mod properties {
        use super::*;
        use crate::matroid::strategy::loopless_graphic;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]

            #[test]
            fn intersection_formulas_match_combinatorics(m in loopless_graphic(5)) {
                prop_assert_eq!(tutte_via_intersections(&m).unwrap(), m.tutte());
                let expected = m.catenary();
                prop_assert_eq!(&catenary_via_integrals(&m).unwrap(), &expected);
                prop_assert_eq!(&g_from_men(&m).unwrap(), &expected);
            }

            #[test]
            fn top_term_is_tutte_at_x_one(m in loopless_graphic(5)) {
                let at_one = m.tutte().substitute(&[MultiPoly::constant(1, Rational::one()), MultiPoly::variable(1, 0)]);
                let top = tutte_at_x_one(&m).unwrap().substitute(&[MultiPoly::zero(1), MultiPoly::variable(1, 0)]);
                prop_assert_eq!(top, at_one);
            }
        }
    }
}
