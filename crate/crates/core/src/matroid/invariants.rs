//! Classical invariants computed straight from the rank table.

use std::collections::BTreeMap;

use num_traits::Signed;

use super::{size, Matroid, Subset};
use crate::arith::{binomial, rat, Rational};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Multiplicities of rank-increment sequences over all orderings of the ground set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GInvariant {
    pub multiplicities: BTreeMap<Vec<u8>, u64>,
}

impl GInvariant {
    pub fn total(&self) -> u64 {
        self.multiplicities.values().sum()
    }
}

/// Counts of maximal rank-graded flag chains keyed by their size increments
/// `(b_0, b_1, …, b_{rank})`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CatenaryData {
    pub counts: BTreeMap<Vec<usize>, u64>,
}

impl CatenaryData {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Largest ground set accepted by [`Matroid::g_invariant`].
pub const G_INVARIANT_MAX_ELEMENTS: usize = 9;

impl Matroid {
    /// Tutte polynomial in `(x, y)` via the corank-nullity expansion.
    pub fn tutte(&self) -> MultiPoly {
        let r = self.rank();
        let m = self.num_elements();
        // counts[corank][nullity]
        let mut counts = vec![vec![0i64; m + 1]; r + 1];
        for s in 0..=self.full() {
            counts[self.corank_of(s)][self.nullity_of(s)] += 1;
        }
        let mut out = MultiPoly::zero(2);
        for (i, row) in counts.iter().enumerate() {
            for (j, &n) in row.iter().enumerate() {
                if n == 0 {
                    continue;
                }
                // n * (x-1)^i (y-1)^j
                for a in 0..=i {
                    for b in 0..=j {
                        let sign = if (i - a + j - b) % 2 == 0 { 1 } else { -1 };
                        let c = binomial(i as i64, a as i64) * binomial(j as i64, b as i64) * (sign * n);
                        out.add_term(vec![a as u32, b as u32], Rational::from_integer(c));
                    }
                }
            }
        }
        out
    }

    /// `(-1)^rank T(1-q, 0) / (q-1)`; the zero polynomial when the matroid has a loop.
    pub fn reduced_char_poly(&self) -> Result<MultiPoly> {
        if !self.is_loopless() {
            return Ok(MultiPoly::zero(1));
        }
        let one_minus_q = MultiPoly::from_univariate(&[rat(1), rat(-1)]);
        let zero = MultiPoly::zero(1);
        let mut value = self.tutte().substitute(&[one_minus_q, zero]);
        if self.rank() % 2 == 1 {
            value = value.scale(&rat(-1));
        }
        let chi = value.div_by_x_minus_one()?;
        let degree = chi.terms().map(|(e, _)| e[0] as usize).max();
        if degree != Some(self.rank().saturating_sub(1)) || chi.coeff(&[degree.unwrap_or(0) as u32]) != rat(1) {
            return Err(Error::Internal(format!("reduced characteristic polynomial {chi} is not monic of degree rank-1")));
        }
        Ok(chi)
    }

    /// `|[q^l] χ_M(q)|`, zero outside `0..rank` and for matroids with loops.
    pub fn gamma(&self, l: i64) -> Result<u64> {
        if l < 0 || l >= self.rank() as i64 || !self.is_loopless() {
            return Ok(0);
        }
        let c = self.reduced_char_poly()?.coeff(&[l as u32]);
        let c = c.abs().to_integer();
        u64::try_from(c).map_err(|_| Error::Internal("gamma value overflows u64".into()))
    }

    /// Derksen's G-invariant by enumerating every ordering of the ground set.
    pub fn g_invariant(&self) -> Result<GInvariant> {
        let m = self.num_elements();
        if m > G_INVARIANT_MAX_ELEMENTS {
            return Err(Error::SizeLimit(format!(
                "G-invariant enumerates m! orderings; {m} elements exceeds {G_INVARIANT_MAX_ELEMENTS}"
            )));
        }
        let mut out = GInvariant::default();
        let mut seq = Vec::with_capacity(m);
        self.g_walk(0, &mut seq, &mut out.multiplicities);
        Ok(out)
    }

    fn g_walk(&self, used: Subset, seq: &mut Vec<u8>, acc: &mut BTreeMap<Vec<u8>, u64>) {
        if seq.len() == self.num_elements() {
            *acc.entry(seq.clone()).or_insert(0) += 1;
            return;
        }
        let r = self.rank_of(used);
        for x in super::elements(self.full() & !used) {
            let next = used | (1 << x);
            seq.push((self.rank_of(next) - r) as u8);
            self.g_walk(next, seq, acc);
            seq.pop();
        }
    }

    /// Catenary data: chains `cl(∅) = F_0 ⊊ F_1 ⊊ … ⊊ F_rank = E` with `rank(F_i) = i`.
    pub fn catenary(&self) -> CatenaryData {
        let flats = self.flats();
        let mut by_rank: Vec<Vec<Subset>> = vec![Vec::new(); self.rank() + 1];
        for &f in &flats {
            by_rank[self.rank_of(f)].push(f);
        }
        let bottom = self.closure(0);
        let mut out = CatenaryData::default();
        let mut key = vec![size(bottom)];
        self.catenary_walk(&by_rank, bottom, &mut key, &mut out.counts);
        out
    }

    fn catenary_walk(&self, by_rank: &[Vec<Subset>], current: Subset, key: &mut Vec<usize>, acc: &mut BTreeMap<Vec<usize>, u64>) {
        let next_rank = key.len();
        if next_rank > self.rank() {
            *acc.entry(key.clone()).or_insert(0) += 1;
            return;
        }
        for &f in by_rank[next_rank].iter().filter(|&&f| f & current == current) {
            key.push(size(f) - size(current));
            self.catenary_walk(by_rank, f, key, acc);
            key.pop();
        }
    }

    /// Number of bases, i.e. `T(1,1)`.
    pub fn num_bases(&self) -> usize {
        self.bases().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::from_int_terms;
    use num_traits::Zero;

    fn poly_is_nonnegative_integral(p: &MultiPoly) -> bool {
        p.terms().all(|(_, c)| c.is_integer() && !c.is_negative() && !c.is_zero())
    }

    fn set(items: &[usize]) -> Subset {
        items.iter().fold(0, |acc, &i| acc | (1 << i))
    }

    /// Independent route: deletion-contraction on an explicit matroid.
    fn tutte_by_deletion_contraction(m: &Matroid) -> MultiPoly {
        let n = m.num_elements();
        if n == 1 {
            return if m.rank() == 1 { from_int_terms(2, &[(&[1, 0], 1)]) } else { from_int_terms(2, &[(&[0, 1], 1)]) };
        }
        let e = 1u32 << (n - 1);
        let rest = m.full() & !e;
        let is_loop = m.rank_of(e) == 0;
        let is_coloop = m.rank_of(rest) < m.rank();
        let x = from_int_terms(2, &[(&[1, 0], 1)]);
        let y = from_int_terms(2, &[(&[0, 1], 1)]);
        if is_coloop {
            x.mul(&tutte_by_deletion_contraction(&m.contraction(e).unwrap()))
        } else if is_loop {
            y.mul(&tutte_by_deletion_contraction(&m.restriction(rest).unwrap()))
        } else {
            let mut t = tutte_by_deletion_contraction(&m.restriction(rest).unwrap());
            t.add_assign_poly(&tutte_by_deletion_contraction(&m.contraction(e).unwrap()));
            t
        }
    }

    fn samples() -> Vec<Matroid> {
        vec![
            Matroid::uniform(1, 2).unwrap(),
            Matroid::uniform(2, 3).unwrap(),
            Matroid::uniform(2, 4).unwrap(),
            Matroid::uniform(3, 5).unwrap(),
            Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
            Matroid::from_bases(4, &[set(&[0, 1]), set(&[0, 2]), set(&[0, 3]), set(&[1, 2]), set(&[1, 3])]).unwrap(),
            Matroid::from_bases(3, &[set(&[0, 1])]).unwrap(),
        ]
    }

    #[test]
    fn tutte_examples() {
        let xy = |t: &[(&[u32], i64)]| from_int_terms(2, t);
        assert_eq!(Matroid::uniform(1, 2).unwrap().tutte(), xy(&[(&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!(Matroid::uniform(2, 3).unwrap().tutte(), xy(&[(&[2, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!(Matroid::uniform(2, 2).unwrap().tutte(), xy(&[(&[2, 0], 1)]));
    }

    #[test]
    fn tutte_evaluations_and_deletion_contraction() {
        for m in samples() {
            let t = m.tutte();
            assert_eq!(t.eval(&[rat(1), rat(1)]), rat(m.num_bases() as i64));
            assert_eq!(t.eval(&[rat(2), rat(2)]), rat(1 << m.num_elements()));
            assert_eq!(t, tutte_by_deletion_contraction(&m), "{m:?}");
            assert!(poly_is_nonnegative_integral(&t));
        }
    }

    #[test]
    fn characteristic_polynomials() {
        let q = |c: &[i64]| MultiPoly::from_univariate(&c.iter().map(|&v| rat(v)).collect::<Vec<_>>());
        assert_eq!(Matroid::uniform(2, 3).unwrap().reduced_char_poly().unwrap(), q(&[-2, 1]));
        assert_eq!(Matroid::uniform(3, 3).unwrap().reduced_char_poly().unwrap(), q(&[1, -2, 1]));
        assert_eq!(Matroid::uniform(1, 2).unwrap().reduced_char_poly().unwrap(), q(&[1]));
        assert!(Matroid::from_bases(3, &[set(&[0, 1])]).unwrap().reduced_char_poly().unwrap().is_zero());
    }

    #[test]
    fn gamma_values() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!((u23.gamma(0).unwrap(), u23.gamma(1).unwrap()), (2, 1));
        assert_eq!(u23.gamma(-1).unwrap(), 0);
        assert_eq!(u23.gamma(2).unwrap(), 0);
        let u44 = Matroid::uniform(4, 4).unwrap();
        for l in 0..4 {
            assert_eq!(u44.gamma(l).unwrap(), u64::try_from(binomial(3, l)).unwrap());
        }
        for m in samples().into_iter().filter(Matroid::is_loopless) {
            assert_eq!(m.gamma(m.rank() as i64 - 1).unwrap(), 1);
        }
        assert_eq!(Matroid::from_bases(3, &[set(&[0, 1])]).unwrap().gamma(0).unwrap(), 0);
    }

    #[test]
    fn g_invariant_examples() {
        let g = Matroid::uniform(1, 2).unwrap().g_invariant().unwrap();
        assert_eq!(g.multiplicities, BTreeMap::from([(vec![1, 0], 2)]));
        let g = Matroid::uniform(2, 3).unwrap().g_invariant().unwrap();
        assert_eq!(g.multiplicities, BTreeMap::from([(vec![1, 1, 0], 6)]));
        for m in samples() {
            let g = m.g_invariant().unwrap();
            assert_eq!(g.total(), (1..=m.num_elements() as u64).product::<u64>());
            let perm: Vec<usize> = (0..m.num_elements()).rev().collect();
            assert_eq!(m.relabel(&perm).unwrap().g_invariant().unwrap(), g);
        }
        assert!(matches!(Matroid::uniform(2, 10).unwrap().g_invariant(), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn catenary_examples() {
        let c = Matroid::uniform(2, 3).unwrap().catenary();
        assert_eq!(c.counts, BTreeMap::from([(vec![0, 1, 2], 3)]));
        let c = Matroid::uniform(3, 3).unwrap().catenary();
        assert_eq!(c.counts, BTreeMap::from([(vec![0, 1, 1, 1], 6)]));
        let looped = Matroid::from_bases(4, &[set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]).unwrap();
        let c = looped.catenary();
        assert!(c.counts.keys().all(|k| k[0] == 1));
        assert_eq!(c.total(), 3);
    }

    mod properties {
        use super::super::super::strategy::{graphic, loopless_graphic, with_permutation};
        use super::*;
        use crate::arith::rat;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn tutte_evaluations(m in graphic(7)) {
                let t = m.tutte();
                prop_assert_eq!(t.eval(&[rat(1), rat(1)]), rat(m.num_bases() as i64));
                prop_assert_eq!(t.eval(&[rat(2), rat(2)]), rat(1 << m.num_elements()));
            }

            #[test]
            fn deletion_contraction(m in graphic(7)) {
                for e in 0..m.num_elements() {
                    let single: Subset = 1 << e;
                    let is_loop = m.rank_of(single) == 0;
                    let is_coloop = m.rank_of(m.full() & !single) < m.rank();
                    if is_loop || is_coloop {
                        continue;
                    }
                    let mut sum = m.restriction(m.full() & !single).unwrap().tutte();
                    sum.add_assign_poly(&m.contraction(single).unwrap().tutte());
                    prop_assert_eq!(sum, m.tutte());
                }
            }

            #[test]
            fn reduced_char_poly_shape(m in loopless_graphic(7)) {
                let p = m.reduced_char_poly().unwrap();
                let top = p.terms().map(|(e, _)| e[0]).max().unwrap();
                prop_assert_eq!(top as usize, m.rank() - 1);
                prop_assert_eq!(m.gamma(m.rank() as i64 - 1).unwrap(), 1);
            }

            #[test]
            fn relabeling_preserves_g_and_catenary((m, perm) in with_permutation(graphic(6))) {
                let moved = m.relabel(&perm).unwrap();
                prop_assert_eq!(moved.g_invariant().unwrap(), m.g_invariant().unwrap());
                prop_assert_eq!(moved.catenary(), m.catenary());
                prop_assert_eq!(moved.tutte(), m.tutte());
            }

            #[test]
            fn catenary_total_counts_maximal_chains(m in graphic(6)) {
                fn chains(m: &Matroid, from: Subset) -> u64 {
                    if from == m.full() {
                        return 1;
                    }
                    m.flats()
                        .into_iter()
                        .filter(|&f| f & from == from && f != from && m.rank_of(f) == m.rank_of(from) + 1)
                        .map(|f| chains(m, f))
                        .sum()
                }
                prop_assert_eq!(m.catenary().total(), chains(&m, m.closure(0)));
            }
        }
    }
}
