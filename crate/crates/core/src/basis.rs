//! The change of basis between the `L` and `S` divisor families and its action on polynomials.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat, ratio, Rational};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

pub type Matrix = Vec<Vec<Rational>>;

/// Exponent vector `(a_1, …, a_n)` of a monomial `x^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    pub entries: Vec<u32>,
}

impl Composition {
    pub fn new(entries: Vec<u32>) -> Self {
        Composition { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    /// Fails unless the composition has `len` slots summing to `degree`.
    pub fn expect_shape(&self, len: usize, degree: u32) -> Result<()> {
        if self.len() != len {
            return Err(Error::params(format!("composition {self} has {} entries, expected {len}", self.len())));
        }
        if self.degree() != degree {
            return Err(Error::params(format!("composition {self} has degree {}, expected {degree}", self.degree())));
        }
        Ok(())
    }

    /// Every composition with `len` slots and sum `degree`, in lexicographic order.
    pub fn all(len: usize, degree: u32) -> Vec<Composition> {
        fn fill(prefix: &mut Vec<u32>, slots: usize, left: u32, out: &mut Vec<Composition>) {
            if slots == 1 {
                prefix.push(left);
                out.push(Composition::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for v in 0..=left {
                prefix.push(v);
                fill(prefix, slots - 1, left - v, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if len == 0 {
            if degree == 0 {
                out.push(Composition::new(Vec::new()));
            }
            return out;
        }
        fill(&mut Vec::with_capacity(len), len, degree, &mut out);
        out
    }

    /// `e_k * value` in `len` slots (1-based `k`).
    pub fn concentrated(len: usize, k: usize, value: u32) -> Composition {
        let mut entries = vec![0; len];
        entries[k - 1] = value;
        Composition::new(entries)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses `"1,0,2"`; surrounding parentheses and spaces are allowed.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(Composition::new(Vec::new()));
        }
        body.split(',')
            .map(|part| part.trim().parse::<u32>().map_err(|_| Error::params(format!("bad composition entry {part:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Composition::new)
    }
}

/// The monomial `x_{b_1}^{c_1} ⋯ x_{b_k}^{c_k}` with `b` strictly increasing and 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseMonomial {
    pub b: Vec<usize>,
    pub c: Vec<u32>,
}

impl SparseMonomial {
    pub fn new(b: Vec<usize>, c: Vec<u32>) -> Result<Self> {
        if b.len() != c.len() {
            return Err(Error::params("b and c must have equal length"));
        }
        if b.first() == Some(&0) || b.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::params(format!("b = {b:?} must be strictly increasing and positive")));
        }
        if c.contains(&0) {
            return Err(Error::params(format!("c = {c:?} must be positive")));
        }
        Ok(SparseMonomial { b, c })
    }

    pub fn from_exponent(exp: &[u32]) -> Self {
        let (b, c) = exp.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i + 1, e)).unzip();
        SparseMonomial { b, c }
    }

    pub fn to_exponent(&self, n: usize) -> Vec<u32> {
        let mut exp = vec![0; n];
        for (&b, &c) in self.b.iter().zip(&self.c) {
            exp[b - 1] = c;
        }
        exp
    }

    pub fn degree(&self) -> u32 {
        self.c.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    fn check_arity(&self, n: usize) -> Result<()> {
        match self.b.last() {
            Some(&last) if last > n => Err(Error::params(format!("index {last} exceeds arity {n}"))),
            _ => Ok(()),
        }
    }
}

/// Tridiagonal matrix with `2` on the diagonal and `-1` beside it.
pub fn matrix_a(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => rat(2),
                    1 => rat(-1),
                    _ => Rational::zero(),
                })
                .collect()
        })
        .collect()
}

/// The inverse of [`matrix_a`]: entries `min(i,j)(n+1-max(i,j))/(n+1)`.
pub fn matrix_b(n: usize) -> Matrix {
    let d = n as i64 + 1;
    (1..=n as i64)
        .map(|i| (1..=n as i64).map(|j| ratio(i.min(j) * (d - i.max(j)), d)).collect())
        .collect()
}

pub fn mat_mul(x: &Matrix, y: &Matrix) -> Matrix {
    let inner = y.len();
    let cols = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &y[k][j]))
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

/// `L^a` written in the `S` variables; the coefficient of `S_b^c` is `C_b^c(a)`.
pub fn expand_l_monomial(n: usize, a: &Composition) -> Result<MultiPoly> {
    if a.len() != n {
        return Err(Error::params(format!("composition {a} has {} entries, expected {n}", a.len())));
    }
    let b = matrix_b(n);
    let mut out = MultiPoly::one(n);
    for (i, &ai) in a.entries.iter().enumerate() {
        if ai > 0 {
            out = out.mul(&MultiPoly::linear(&b[i]).pow(ai));
        }
    }
    Ok(out)
}

/// `S_i = -L_{i-1} + 2L_i - L_{i+1}` as a linear form in `n` variables.
fn s_in_l(n: usize, i: usize) -> MultiPoly {
    let mut coeffs = vec![Rational::zero(); n];
    coeffs[i - 1] = rat(2);
    if i >= 2 {
        coeffs[i - 2] = rat(-1);
    }
    if i < n {
        coeffs[i] = rat(-1);
    }
    MultiPoly::linear(&coeffs)
}

/// `S_b^c` written in the `L` variables; the coefficient of `L^c` is `D^c(b)`.
pub fn expand_s_monomial(n: usize, s: &SparseMonomial) -> Result<MultiPoly> {
    s.check_arity(n)?;
    let mut out = MultiPoly::one(n);
    for (&b, &c) in s.b.iter().zip(&s.c) {
        out = out.mul(&s_in_l(n, b).pow(c));
    }
    Ok(out)
}

/// Evaluates `Q` at `y_j = sum_i B_ij x_i`.
pub fn apply_basis_change(n: usize, q: &MultiPoly) -> Result<MultiPoly> {
    if q.arity() != n {
        return Err(Error::params(format!("polynomial has arity {}, expected {n}", q.arity())));
    }
    if q.is_zero() {
        return Ok(MultiPoly::zero(n));
    }
    if q.homogeneous_degree().is_none() {
        return Err(Error::params("basis change needs a homogeneous polynomial"));
    }
    let b = matrix_b(n);
    let images: Vec<MultiPoly> = (0..n).map(|j| MultiPoly::linear(&(0..n).map(|i| b[i][j].clone()).collect::<Vec<_>>())).collect();
    Ok(q.substitute(&images))
}
