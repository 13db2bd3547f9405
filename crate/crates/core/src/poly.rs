//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

/// Exponent vector of length equal to the polynomial's arity.
pub type Exponent = Vec<u32>;

/// A polynomial in `arity` variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, value: Rational) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity], value);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    /// The single variable `x_index` (0-based).
    pub fn variable(arity: usize, index: usize) -> Self {
        let mut exp = vec![0; arity];
        exp[index] = 1;
        let mut p = Self::zero(arity);
        p.add_term(exp, Rational::one());
        p
    }

    pub fn monomial(exp: Exponent, coeff: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, coeff);
        p
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            let mut exp = vec![0; coeffs.len()];
            exp[i] = 1;
            p.add_term(exp, c.clone());
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: Rational) {
        assert_eq!(exp.len(), self.arity, "exponent arity mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_poly(&mut self, other: &MultiPoly) {
        assert_eq!(self.arity, other.arity);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scale(&self, factor: &Rational) -> MultiPoly {
        if factor.is_zero() {
            return Self::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, other.arity);
        let mut out = Self::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = Self::one(self.arity);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Degree of the homogeneous polynomial, `None` if inhomogeneous or zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.arity);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Replaces every variable `x_i` by the polynomial `images[i]`.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.arity);
        let target = images.first().map_or(0, MultiPoly::arity);
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    term = term.mul(&img.pow(k));
                }
            }
            out.add_assign_poly(&term);
        }
        out
    }

    /// Univariate division by `(x - 1)`. Fails if the remainder is nonzero.
    pub fn div_by_x_minus_one(&self) -> Result<MultiPoly> {
        if self.arity != 1 {
            return Err(Error::params("division by (x-1) needs a univariate polynomial"));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let deg = self.terms.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
        let coeffs: Vec<Rational> = (0..=deg).map(|k| self.coeff(&[k as u32])).collect();
        // synthetic division from the top coefficient down
        let mut quotient = vec![Rational::zero(); deg];
        let mut carry = Rational::zero();
        for k in (1..=deg).rev() {
            carry = &coeffs[k] + &carry;
            quotient[k - 1] = carry.clone();
        }
        let remainder = &coeffs[0] + &carry;
        if !remainder.is_zero() {
            return Err(Error::Internal(format!("division by (q-1) left remainder {remainder}")));
        }
        let mut out = Self::zero(1);
        for (k, c) in quotient.into_iter().enumerate() {
            out.add_term(vec![k as u32], c);
        }
        Ok(out)
    }

    /// Polynomial in a single variable from ascending coefficients.
    pub fn from_univariate(coeffs: &[Rational]) -> MultiPoly {
        let mut out = Self::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            out.add_term(vec![k as u32], c.clone());
        }
        out
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<MultiPoly> {
        let mut out = Self::zero(json.arity);
        for t in &json.terms {
            if t.exp.len() != json.arity {
                return Err(Error::params("term exponent length differs from arity"));
            }
            let num = t.num.parse().map_err(|_| Error::params(format!("bad numerator {:?}", t.num)))?;
            let den: num_bigint::BigInt =
                t.den.parse().map_err(|_| Error::params(format!("bad denominator {:?}", t.den)))?;
            if den.is_zero() {
                return Err(Error::params("zero denominator"));
            }
            out.add_term(t.exp.clone(), Rational::new(num, den));
        }
        Ok(out)
    }

    /// Human-readable rendering with the given variable names.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // highest total degree first, then reverse lexicographic exponent order
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, (exp, c)) in terms.into_iter().enumerate() {
            let mono = monomial_name(exp, names);
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&crate::arith::rational_string(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&crate::arith::rational_string(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// Renders `x^2*y` style monomials; the empty string for the constant term.
pub fn monomial_name(exp: &[u32], names: &[&str]) -> String {
    exp.iter()
        .zip(names)
        .filter(|(k, _)| **k > 0)
        .map(|(&k, name)| if k == 1 { name.to_string() } else { format!("{name}^{k}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.arity).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub arity: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

/// Shorthand used by tests and callers building small integer polynomials.
pub fn from_int_terms(arity: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
    let mut p = MultiPoly::zero(arity);
    for (e, c) in terms {
        p.add_term(e.to_vec(), rat(*c));
    }
    p
}
