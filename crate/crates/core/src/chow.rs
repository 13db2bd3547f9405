//! Intersection numbers on permutohedral varieties, computed by restricting to ray divisors.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::arith::{binomial, rat, rational_string, Rational};
use crate::basis::Composition;
use crate::error::{Error, Result};
use crate::matroid::{compress, full_set, size, Matroid, Subset, MAX_ELEMENTS};

/// A divisor `sum c_S x_S` over proper nonempty subsets of `{0, …, m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    ground_size: usize,
    coeffs: BTreeMap<Subset, Rational>,
}

impl Divisor {
    pub fn zero(ground_size: usize) -> Divisor {
        Divisor { ground_size, coeffs: BTreeMap::new() }
    }

    /// The ray class `x_S`.
    pub fn ray(ground_size: usize, s: Subset) -> Result<Divisor> {
        let mut d = Divisor::zero(ground_size);
        d.add(s, Rational::one())?;
        Ok(d)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn coeff(&self, s: Subset) -> Rational {
        self.coeffs.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.coeffs.iter().map(|(&s, c)| (s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    fn is_proper(&self, s: Subset) -> bool {
        s != 0 && s < full_set(self.ground_size) && s & !full_set(self.ground_size) == 0
    }

    pub fn add(&mut self, s: Subset, c: Rational) -> Result<()> {
        if !self.is_proper(s) {
            return Err(Error::params(format!("subset {s:#b} is not a proper nonempty subset of a {}-element set", self.ground_size)));
        }
        self.add_unchecked(s, c);
        Ok(())
    }

    fn add_unchecked(&mut self, s: Subset, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(s).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn add_divisor(&mut self, other: &Divisor, factor: &Rational) {
        assert_eq!(self.ground_size, other.ground_size);
        for (&s, c) in &other.coeffs {
            self.add_unchecked(s, c * factor);
        }
    }

    /// Applies `element i ↦ perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Divisor {
        let mut out = Divisor::zero(self.ground_size);
        for (&s, c) in &self.coeffs {
            let image = crate::matroid::elements(s).fold(0, |acc, e| acc | (1 << perm[e]));
            out.add_unchecked(image, c.clone());
        }
        out
    }

    /// The representative of the same class with `c_{{i}} = 0` for every `i < m-1`.
    pub fn normal_form(&self) -> Divisor {
        let m = self.ground_size;
        if m < 2 {
            return self.clone();
        }
        let mut shift = vec![Rational::zero(); m];
        for (i, u) in shift.iter_mut().enumerate().take(m - 1) {
            *u = -self.coeff(1 << i);
        }
        shift[m - 1] = -shift.iter().take(m - 1).fold(Rational::zero(), |acc, u| acc + u);
        let mut out = Divisor::zero(m);
        for s in 1..full_set(m) {
            let c = crate::matroid::elements(s).fold(self.coeff(s), |acc, a| acc + &shift[a]);
            out.add_unchecked(s, c);
        }
        out
    }

    /// Debug dump `{bitmask: rational}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> =
            self.coeffs.iter().map(|(s, c)| (s.to_string(), serde_json::Value::String(rational_string(c)))).collect();
        serde_json::Value::Object(map)
    }
}

/// The relation `sum_{S∋a} x_S - sum_{S∋b} x_S`, which is zero in the Chow ring.
pub fn relation(m: usize, a: usize, b: usize) -> Divisor {
    let mut d = Divisor::zero(m);
    for s in 1..full_set(m) {
        let c = i64::from(s >> a & 1 == 1) - i64::from(s >> b & 1 == 1);
        d.add_unchecked(s, rat(c));
    }
    d
}

fn check_index(m: usize, i: usize, upper: usize, what: &str) -> Result<()> {
    if m == 0 || m > MAX_ELEMENTS {
        return Err(Error::params(format!("ground size {m} out of range")));
    }
    if i < 1 || i > upper {
        return Err(Error::params(format!("{what} index {i} outside 1..={upper}")));
    }
    Ok(())
}

/// The nef divisor `L_i` with distinguished element `m-1`.
pub fn divisor_l(m: usize, i: usize) -> Result<Divisor> {
    check_index(m, i, m.saturating_sub(1), "L")?;
    let top = 1 << (m - 1);
    let k = (m - i) as i64;
    let mut d = Divisor::zero(m);
    for s in 1..full_set(m) {
        let mut c = k.min(size(s) as i64);
        if s & top != 0 {
            c -= k;
        }
        d.add_unchecked(s, rat(c));
    }
    Ok(d)
}

/// `S_i`: the sum of all rays `x_S` with `|S| = m - i`.
pub fn divisor_s(m: usize, i: usize) -> Result<Divisor> {
    check_index(m, i, m.saturating_sub(1), "S")?;
    let mut d = Divisor::zero(m);
    for s in (1..full_set(m)).filter(|&s| size(s) == m - i) {
        d.add_unchecked(s, Rational::one());
    }
    Ok(d)
}

/// The `i`-th line bundle factor of the class of `M`, with distinguished element `0`.
pub fn divisor_m_factor(matroid: &Matroid, i: usize) -> Result<Divisor> {
    let m = matroid.num_elements();
    check_index(m, i, matroid.corank(), "matroid factor")?;
    let mut d = Divisor::zero(m);
    for s in 1..full_set(m) {
        let big = matroid.nullity_of(s) >= i;
        let c = match (s & 1 == 1, big) {
            (false, true) => -1,
            (true, false) => 1,
            _ => 0,
        };
        d.add_unchecked(s, rat(c));
    }
    Ok(d)
}

/// Restriction of `D` to the two factors `X_F × X_{E∖F}` of the ray divisor `x_F`.
pub fn restrict(d: &Divisor, f: Subset) -> Result<(Divisor, Divisor)> {
    let m = d.ground_size;
    let full = full_set(m);
    if f == 0 || f & !full != 0 || f == full {
        return Err(Error::params(format!("restriction needs a proper nonempty subset, got {f:#b}")));
    }
    Ok(restrict_unchecked(d, f))
}

fn restrict_unchecked(d: &Divisor, f: Subset) -> (Divisor, Divisor) {
    let full = full_set(d.ground_size);
    let rest = full & !f;
    let a = f & f.wrapping_neg();
    let b = rest & rest.wrapping_neg();
    let cf = d.coeff(f);
    let mut inner = Divisor::zero(size(f));
    let mut outer = Divisor::zero(size(rest));
    for (&s, c) in &d.coeffs {
        if s & !f == 0 && s != f {
            inner.add_unchecked(compress(s, f), c.clone());
        } else if s & f == f && s != f {
            outer.add_unchecked(compress(s & rest, rest), c.clone());
        }
    }
    if !cf.is_zero() {
        for s in 1..full_set(size(f)) {
            if s & compress(a, f) != 0 {
                inner.add_unchecked(s, -cf.clone());
            }
        }
        for s in 1..full_set(size(rest)) {
            if s & compress(b, rest) == 0 {
                outer.add_unchecked(s, -cf.clone());
            }
        }
    }
    (inner, outer)
}

/// One factor of an integrand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegrandFactor {
    RayDivisor(Divisor),
    MatroidClass(Matroid),
}

type MemoKey = (Vec<u8>, Vec<(Divisor, u32)>);

/// Memoizing evaluator for integrals over permutohedral varieties.
#[derive(Debug)]
pub struct ChowEngine {
    memo: HashMap<MemoKey, Rational>,
    normalize: bool,
}

impl Default for ChowEngine {
    fn default() -> Self {
        ChowEngine::new()
    }
}

struct Term {
    key: Divisor,
    work: Divisor,
    mult: u32,
}

impl ChowEngine {
    pub fn new() -> Self {
        ChowEngine { memo: HashMap::new(), normalize: true }
    }

    /// With normalization off, divisors are used and memoized exactly as given.
    pub fn with_normalization(normalize: bool) -> Self {
        ChowEngine { memo: HashMap::new(), normalize }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn integral(&mut self, m: usize, factors: &[IntegrandFactor]) -> Result<Rational> {
        if m == 0 || m > MAX_ELEMENTS {
            return Err(Error::params(format!("ground size {m} out of range")));
        }
        let mut matroid = None;
        let mut divisors = Vec::new();
        for factor in factors {
            match factor {
                IntegrandFactor::RayDivisor(d) => {
                    if d.ground_size != m {
                        return Err(Error::params(format!("divisor on {} elements in a {m}-element integral", d.ground_size)));
                    }
                    divisors.push(d.clone());
                }
                IntegrandFactor::MatroidClass(mat) => {
                    if matroid.is_some() {
                        return Err(Error::params("at most one matroid class per integrand"));
                    }
                    if mat.num_elements() != m {
                        return Err(Error::params(format!("matroid on {} elements in a {m}-element integral", mat.num_elements())));
                    }
                    matroid = Some(mat.clone());
                }
            }
        }
        let matroid = match matroid {
            Some(mat) => mat,
            None => Matroid::uniform(m, m)?,
        };
        let degree = divisors.len() + matroid.corank();
        if degree != m - 1 {
            return Err(Error::params(format!("integrand has degree {degree}, expected {}", m - 1)));
        }
        if !matroid.is_loopless() {
            return Ok(Rational::zero());
        }
        let mut grouped: Vec<(Divisor, u32)> = Vec::new();
        for d in divisors {
            match grouped.iter_mut().find(|(g, _)| *g == d) {
                Some((_, k)) => *k += 1,
                None => grouped.push((d, 1)),
            }
        }
        Ok(self.eval(&matroid, grouped))
    }

    /// `∫ [M_1]⋯[M_corank] L_1^{a_1}⋯L_{m-1}^{a_{m-1}}`, using no matroid class.
    pub fn integral_pure_matroid(&mut self, matroid: &Matroid, a: &Composition) -> Result<Rational> {
        let m = matroid.num_elements();
        if matroid.rank() == 0 {
            return Ok(Rational::zero());
        }
        a.expect_shape(m - 1, matroid.rank() as u32 - 1)?;
        if !matroid.is_loopless() {
            return Ok(Rational::zero());
        }
        let mut factors = Vec::new();
        for i in 1..=matroid.corank() {
            factors.push(IntegrandFactor::RayDivisor(divisor_m_factor(matroid, i)?));
        }
        for (i, &ai) in a.entries.iter().enumerate() {
            let l = divisor_l(m, i + 1)?;
            factors.extend(std::iter::repeat_n(IntegrandFactor::RayDivisor(l), ai as usize));
        }
        self.integral(m, &factors)
    }

    fn eval(&mut self, matroid: &Matroid, divisors: Vec<(Divisor, u32)>) -> Rational {
        let mut terms: Vec<Term> = Vec::with_capacity(divisors.len());
        for (d, mult) in divisors {
            if mult == 0 {
                continue;
            }
            if d.is_zero() {
                return Rational::zero();
            }
            let key = if self.normalize { d.normal_form() } else { d.clone() };
            if let Some(t) = terms.iter_mut().find(|t| t.key == key) {
                t.mult += mult;
                continue;
            }
            let work = if self.normalize && flat_support(matroid, &key) < flat_support(matroid, &d) { key.clone() } else { d };
            terms.push(Term { key, work, mult });
        }
        if terms.is_empty() {
            return Rational::one();
        }
        terms.sort_by(|x, y| x.key.cmp(&y.key));
        let memo_key: MemoKey = (matroid.rank_table().to_vec(), terms.iter().map(|t| (t.key.clone(), t.mult)).collect());
        if let Some(v) = self.memo.get(&memo_key) {
            return v.clone();
        }
        let value = self.expand(matroid, &terms);
        self.memo.insert(memo_key, value.clone());
        value
    }

    fn expand(&mut self, matroid: &Matroid, terms: &[Term]) -> Rational {
        let pivot = (0..terms.len()).min_by_key(|&i| flat_support(matroid, &terms[i].work)).expect("nonempty");
        let rank = matroid.rank();
        let mut total = Rational::zero();
        for (&f, cf) in &terms[pivot].work.coeffs {
            if !matroid.is_flat(f) {
                continue;
            }
            let rf = matroid.rank_of(f);
            if rf == 0 || rf >= rank {
                continue;
            }
            let inner_budget = rf - 1;
            let restricted: Vec<(Divisor, Divisor, u32)> = terms
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let (inner, outer) = restrict_unchecked(&t.work, f);
                    (inner, outer, t.mult - u32::from(i == pivot))
                })
                .collect();
            let inner_matroid = matroid.restriction(f).expect("nonempty flat");
            let outer_matroid = matroid.contraction(f).expect("proper flat");
            let mut split = vec![0u32; restricted.len()];
            let mut acc = Rational::zero();
            self.splits(&restricted, 0, inner_budget as u32, &mut split, &mut |engine, split| {
                let mut weight = Rational::one();
                let mut left = Vec::new();
                let mut right = Vec::new();
                for ((inner, outer, mult), &k) in restricted.iter().zip(split.iter()) {
                    weight *= Rational::from_integer(binomial(i64::from(*mult), i64::from(k)));
                    left.push((inner.clone(), k));
                    right.push((outer.clone(), mult - k));
                }
                let l = engine.eval(&inner_matroid, left);
                if l.is_zero() {
                    return;
                }
                let r = engine.eval(&outer_matroid, right);
                acc += weight * l * r;
            });
            total += cf * acc;
        }
        total
    }

    fn splits(
        &mut self,
        restricted: &[(Divisor, Divisor, u32)],
        index: usize,
        left: u32,
        split: &mut Vec<u32>,
        visit: &mut dyn FnMut(&mut ChowEngine, &[u32]),
    ) {
        if index == restricted.len() {
            if left == 0 {
                visit(self, split);
            }
            return;
        }
        let (inner, outer, mult) = &restricted[index];
        let remaining: u32 = restricted[index + 1..].iter().map(|r| r.2).sum();
        let lo = left.saturating_sub(remaining);
        let hi = (*mult).min(left);
        for k in lo..=hi {
            if (k > 0 && inner.is_zero()) || (k < *mult && outer.is_zero()) {
                continue;
            }
            split[index] = k;
            self.splits(restricted, index + 1, left - k, split, visit);
        }
        split[index] = 0;
    }
}

fn flat_support(matroid: &Matroid, d: &Divisor) -> usize {
    d.coeffs.keys().filter(|&&s| matroid.is_flat(s)).count()
}

/// One-shot [`ChowEngine::integral`].
pub fn integral(m: usize, factors: &[IntegrandFactor]) -> Result<Rational> {
    ChowEngine::new().integral(m, factors)
}

/// One-shot [`ChowEngine::integral_pure_matroid`].
pub fn integral_pure_matroid(matroid: &Matroid, a: &Composition) -> Result<Rational> {
    ChowEngine::new().integral_pure_matroid(matroid, a)
}
