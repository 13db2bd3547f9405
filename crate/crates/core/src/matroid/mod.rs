//! Matroids stored as a dense rank table over all subsets of the ground set.
//!
//! Subsets are bitmasks: element `i` of the ground set `{0, …, m-1}` is bit `i`.

use std::fmt;

use crate::error::{Error, Result};

mod invariants;
pub mod json;
#[cfg(test)]
pub(crate) mod strategy;

pub use invariants::{CatenaryData, GInvariant};

/// Ground-set bitmask.
pub type Subset = u32;

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 16;

pub(crate) fn full_set(m: usize) -> Subset {
    if m == 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

pub(crate) fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

/// Iterates over the elements of `s` in increasing order.
pub(crate) fn elements(s: Subset) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(i)
    })
}

/// Renumbers the elements of `s ⊆ within` so that the members of `within`
/// become `0, 1, …` in their natural order.
pub(crate) fn compress(s: Subset, within: Subset) -> Subset {
    let mut out = 0;
    for (pos, e) in elements(within).enumerate() {
        if s & (1 << e) != 0 {
            out |= 1 << pos;
        }
    }
    out
}

/// Inverse of [`compress`].
pub(crate) fn expand(s: Subset, within: Subset) -> Subset {
    let mut out = 0;
    for (pos, e) in elements(within).enumerate() {
        if s & (1 << pos) != 0 {
            out |= 1 << e;
        }
    }
    out
}

pub(crate) fn subset_string(s: Subset) -> String {
    let items: Vec<String> = elements(s).map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// A matroid on `{0, …, m-1}` with its complete rank function.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matroid {
    elements: usize,
    ranks: Vec<u8>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(m={}, rank={}, bases={:?})", self.elements, self.rank(), self.bases().iter().map(|b| subset_string(*b)).collect::<Vec<_>>())
    }
}

fn check_size(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::params("a matroid needs at least one element"));
    }
    if m > MAX_ELEMENTS {
        return Err(Error::SizeLimit(format!("{m} elements exceeds the limit of {MAX_ELEMENTS}")));
    }
    Ok(())
}

impl Matroid {
    /// The uniform matroid `U_{rank,elements}`.
    pub fn uniform(rank: usize, elements: usize) -> Result<Matroid> {
        check_size(elements)?;
        if rank > elements {
            return Err(Error::params(format!("rank {rank} exceeds {elements} elements")));
        }
        let ranks = (0..1u32 << elements).map(|s| size(s).min(rank) as u8).collect();
        Ok(Matroid { elements, ranks })
    }

    /// The matroid with the given set of bases; the exchange axiom is checked exhaustively.
    pub fn from_bases(elements: usize, bases: &[Subset]) -> Result<Matroid> {
        check_size(elements)?;
        let mut sorted: Vec<Subset> = bases.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let Some(&first) = sorted.first() else {
            return Err(Error::matroid("the set of bases is empty", None));
        };
        let full = full_set(elements);
        for &b in &sorted {
            if b & !full != 0 {
                return Err(Error::params(format!("basis {} uses elements outside the ground set", subset_string(b))));
            }
            if size(b) != size(first) {
                return Err(Error::matroid(
                    "bases have different cardinalities",
                    Some(format!("{} and {}", subset_string(first), subset_string(b))),
                ));
            }
        }
        let is_basis = |s: Subset| sorted.binary_search(&s).is_ok();
        for &b1 in &sorted {
            for &b2 in &sorted {
                for x in elements_of(b1 & !b2) {
                    let base = b1 & !(1 << x);
                    let exchanged = elements_of(b2 & !b1).any(|y| is_basis(base | (1 << y)));
                    if !exchanged {
                        return Err(Error::matroid(
                            "basis exchange axiom fails",
                            Some(format!("B1={}, B2={}, x={x}", subset_string(b1), subset_string(b2))),
                        ));
                    }
                }
            }
        }
        // independent sets are the down-closure of the bases
        let count = 1usize << elements;
        let mut independent = vec![false; count];
        for &b in &sorted {
            independent[b as usize] = true;
        }
        for s in (0..count).rev() {
            if independent[s] {
                continue;
            }
            independent[s] = (0..elements).any(|x| s & (1 << x) == 0 && independent[s | (1 << x)]);
        }
        let mut ranks = vec![0u8; count];
        for s in 1..count {
            ranks[s] = if independent[s] {
                (s as u32).count_ones() as u8
            } else {
                elements_of(s as Subset).map(|x| ranks[s & !(1 << x)]).max().unwrap_or(0)
            };
        }
        Ok(Matroid { elements, ranks })
    }

    /// The cycle matroid of a multigraph; self-loops become matroid loops.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
        if vertices == 0 || vertices > 8 {
            return Err(Error::params(format!("graphic matroids support 1..=8 vertices, got {vertices}")));
        }
        if edges.len() > MAX_ELEMENTS {
            return Err(Error::SizeLimit(format!("{} edges exceeds the limit of {MAX_ELEMENTS}", edges.len())));
        }
        check_size(edges.len())?;
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::params(format!("edge ({u},{v}) references a vertex outside 0..{vertices}")));
            }
        }
        let count = 1usize << edges.len();
        let mut ranks = vec![0u8; count];
        let mut parent = vec![0usize; vertices];
        for (s, rank) in ranks.iter_mut().enumerate() {
            for (i, p) in parent.iter_mut().enumerate() {
                *p = i;
            }
            let mut forest = 0u8;
            for e in elements_of(s as Subset) {
                let (u, v) = edges[e];
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    forest += 1;
                }
            }
            *rank = forest;
        }
        Ok(Matroid { elements: edges.len(), ranks })
    }

    /// Builds a matroid from an explicit rank table, validating every axiom.
    pub fn from_rank_table(elements: usize, ranks: Vec<u8>) -> Result<Matroid> {
        check_size(elements)?;
        if ranks.len() != 1 << elements {
            return Err(Error::matroid(
                format!("rank table has {} entries, expected {}", ranks.len(), 1usize << elements),
                None,
            ));
        }
        let m = Matroid { elements, ranks };
        m.validate()?;
        Ok(m)
    }

    /// Checks the rank axioms exhaustively.
    pub fn validate(&self) -> Result<()> {
        if self.ranks[0] != 0 {
            return Err(Error::matroid("rank of the empty set is not zero", Some("{}".into())));
        }
        let full = self.full();
        for s in 0..=full {
            let r = self.rank_of(s);
            for x in elements_of(full & !s) {
                let rx = self.rank_of(s | (1 << x));
                if rx < r || rx > r + 1 {
                    return Err(Error::matroid(
                        "rank does not increase by 0 or 1 when adding an element",
                        Some(format!("S={}, x={x}", subset_string(s))),
                    ));
                }
                // local submodularity together with unit increments implies submodularity
                for y in elements_of(full & !s & !(1 << x)) {
                    if y < x {
                        continue;
                    }
                    let ry = self.rank_of(s | (1 << y));
                    let rxy = self.rank_of(s | (1 << x) | (1 << y));
                    if rxy + r > rx + ry {
                        return Err(Error::matroid(
                            "rank function is not submodular",
                            Some(format!("S={}, x={x}, y={y}", subset_string(s))),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_elements(&self) -> usize {
        self.elements
    }

    pub fn full(&self) -> Subset {
        full_set(self.elements)
    }

    pub fn rank_of(&self, s: Subset) -> usize {
        self.ranks[s as usize] as usize
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.rank_of(self.full())
    }

    /// `rank(E) - rank(S)`.
    pub fn corank_of(&self, s: Subset) -> usize {
        self.rank() - self.rank_of(s)
    }

    /// `m - rank(E)`: the codimension of the matroid class.
    pub fn corank(&self) -> usize {
        self.elements - self.rank()
    }

    pub fn nullity_of(&self, s: Subset) -> usize {
        size(s) - self.rank_of(s)
    }

    pub fn rank_table(&self) -> &[u8] {
        &self.ranks
    }

    pub fn loops(&self) -> Subset {
        (0..self.elements).filter(|&x| self.rank_of(1 << x) == 0).fold(0, |acc, x| acc | (1 << x))
    }

    pub fn is_loopless(&self) -> bool {
        self.loops() == 0
    }

    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank_of(s);
        (0..self.elements).filter(|&x| self.rank_of(s | (1 << x)) == r).fold(s, |acc, x| acc | (1 << x))
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        let r = self.rank_of(s);
        elements_of(self.full() & !s).all(|x| self.rank_of(s | (1 << x)) > r)
    }

    pub fn bases(&self) -> Vec<Subset> {
        let r = self.rank();
        (0..=self.full()).filter(|&s| size(s) == r && self.rank_of(s) == r).collect()
    }

    /// The minor `(M | restrict_to) / contract`, relabeled to `0, 1, …` in natural order.
    pub fn minor(&self, restrict_to: Subset, contract: Subset) -> Result<Matroid> {
        let full = self.full();
        if restrict_to & !full != 0 || contract & !restrict_to != 0 {
            return Err(Error::params(format!(
                "minor needs contract ⊆ restrict_to ⊆ E, got contract={} restrict_to={}",
                subset_string(contract),
                subset_string(restrict_to)
            )));
        }
        let survivors = restrict_to & !contract;
        let elements = size(survivors);
        if elements == 0 {
            return Err(Error::params("minor with an empty ground set"));
        }
        let base = self.rank_of(contract);
        let ranks = (0..1u32 << elements)
            .map(|s| (self.rank_of(expand(s, survivors) | contract) - base) as u8)
            .collect();
        Ok(Matroid { elements, ranks })
    }

    pub fn restriction(&self, to: Subset) -> Result<Matroid> {
        self.minor(to, 0)
    }

    pub fn contraction(&self, of: Subset) -> Result<Matroid> {
        self.minor(self.full(), of)
    }

    /// Applies the relabeling `element i ↦ perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Matroid> {
        let m = self.elements;
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&p| p >= m || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::params("relabeling must be a permutation of the ground set"));
        }
        let mut ranks = vec![0u8; 1 << m];
        for s in 0..=self.full() {
            let image = elements_of(s).fold(0u32, |acc, e| acc | (1 << perm[e]));
            ranks[image as usize] = self.ranks[s as usize];
        }
        Ok(Matroid { elements: m, ranks })
    }

    /// All flats sorted by `(cardinality, bitmask)`.
    pub fn flats(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = (0..=self.full()).filter(|&s| self.is_flat(s)).collect();
        out.sort_by_key(|&s| (size(s), s));
        out
    }

    /// Flags `∅ ⊊ F_1 ⊊ … ⊊ F_k ⊊ E` of flats with `|F_i| = sizes[i]`.
    /// Empty when the matroid has a loop.
    pub fn flags_of_flats(&self, sizes: &[usize]) -> Vec<FlagOfFlats> {
        if !self.is_loopless() {
            return Vec::new();
        }
        if sizes.windows(2).any(|w| w[0] >= w[1]) || sizes.first().is_some_and(|&s| s == 0) || sizes.last().is_some_and(|&s| s >= self.elements) {
            return Vec::new();
        }
        let flats = self.flats();
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(sizes.len());
        self.extend_flags(&flats, sizes, 0, &mut chain, &mut out);
        out
    }

    fn extend_flags(&self, flats: &[Subset], sizes: &[usize], prev: Subset, chain: &mut Vec<Subset>, out: &mut Vec<FlagOfFlats>) {
        let Some(&want) = sizes.get(chain.len()) else {
            out.push(FlagOfFlats { ground: self.full(), flats: chain.clone() });
            return;
        };
        for &f in flats.iter().filter(|&&f| size(f) == want && f & prev == prev) {
            chain.push(f);
            self.extend_flags(flats, sizes, f, chain, out);
            chain.pop();
        }
    }
}

fn elements_of(s: Subset) -> impl Iterator<Item = usize> {
    elements(s)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Chain of proper nonempty flats between the implicit endpoints `∅` and `E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagOfFlats {
    ground: Subset,
    flats: Vec<Subset>,
}

impl FlagOfFlats {
    /// The interior flats `F_1, …, F_k`.
    pub fn interior(&self) -> &[Subset] {
        &self.flats
    }

    /// `F_0 = ∅, F_1, …, F_k, F_{k+1} = E`.
    pub fn with_endpoints(&self) -> Vec<Subset> {
        let mut all = Vec::with_capacity(self.flats.len() + 2);
        all.push(0);
        all.extend_from_slice(&self.flats);
        all.push(self.ground);
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[usize]) -> Subset {
        items.iter().fold(0, |acc, &i| acc | (1 << i))
    }

    fn k4() -> Matroid {
        Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn uniform_ranks() {
        assert_eq!(Matroid::uniform(2, 3).unwrap().rank_of(set(&[0, 1])), 2);
        let loops = Matroid::uniform(0, 2).unwrap();
        assert!((0..4).all(|s| loops.rank_of(s) == 0));
        assert_eq!(Matroid::uniform(3, 3).unwrap().rank_of(set(&[0, 1, 2])), 3);
        assert!(matches!(Matroid::uniform(4, 3), Err(Error::InvalidParameters(_))));
        assert!(matches!(Matroid::uniform(1, 17), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn bases_constructor() {
        let u23 = Matroid::from_bases(3, &[set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]).unwrap();
        assert_eq!(u23, Matroid::uniform(2, 3).unwrap());
        let with_loop = Matroid::from_bases(2, &[set(&[0])]).unwrap();
        assert_eq!(with_loop.rank_of(set(&[1])), 0);
        assert_eq!(with_loop.loops(), set(&[1]));
        let err = Matroid::from_bases(4, &[set(&[0, 1]), set(&[2, 3])]).unwrap_err();
        match err {
            Error::InvalidMatroid { witness: Some(w), .. } => assert!(w.contains("x=0"), "{w}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Matroid::from_bases(3, &[]), Err(Error::InvalidMatroid { .. })));
        assert!(matches!(Matroid::from_bases(3, &[set(&[0]), set(&[1, 2])]), Err(Error::InvalidMatroid { .. })));
    }

    #[test]
    fn graphic_constructor() {
        let k3 = Matroid::graphic(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.rank(), 2);
        let self_loop = Matroid::graphic(1, &[(0, 0)]).unwrap();
        assert_eq!(self_loop.rank_of(1), 0);
        // edges 0,1,3 form the triangle on vertices 0,1,2
        assert_eq!(k4().rank_of(set(&[0, 1, 3])), 2);
        assert!(matches!(Matroid::graphic(2, &[(0, 2)]), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn four_cycle_is_uniform() {
        let c4 = Matroid::graphic(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4, Matroid::uniform(3, 4).unwrap());
    }

    #[test]
    fn rank_table_validation() {
        let good = Matroid::uniform(2, 3).unwrap();
        assert!(Matroid::from_rank_table(3, good.rank_table().to_vec()).is_ok());
        let mut bad = good.rank_table().to_vec();
        bad[0b011] = 0; // rank drops from {0} to {0,1}
        assert!(matches!(Matroid::from_rank_table(3, bad), Err(Error::InvalidMatroid { .. })));
        let mut jump = vec![0u8; 4];
        jump[3] = 2;
        assert!(Matroid::from_rank_table(2, jump).is_err());
    }

    #[test]
    fn minors() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.minor(set(&[0, 1]), 0).unwrap(), Matroid::uniform(2, 2).unwrap());
        assert_eq!(u23.minor(u23.full(), set(&[0])).unwrap(), Matroid::uniform(1, 2).unwrap());
        assert!(u23.minor(set(&[0]), set(&[1])).is_err());
        let k = k4();
        let c = k.contraction(set(&[0])).unwrap();
        assert_eq!(c.num_elements(), 5);
        assert_eq!(c.rank(), k.rank() - 1);
        // oracle: recompute the contraction rank from the definition
        for s in 0..=c.full() {
            let lifted = expand(s, k.full() & !1) | 1;
            assert_eq!(c.rank_of(s), k.rank_of(lifted) - 1);
        }
    }

    #[test]
    fn flats_listing() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.flats(), vec![0, 1, 2, 4, 7]);
        assert_eq!(Matroid::uniform(3, 3).unwrap().flats().len(), 8);
        let looped = Matroid::from_bases(3, &[set(&[0, 1])]).unwrap();
        let flats = looped.flats();
        assert!(!flats.contains(&0));
        assert!(flats.iter().all(|f| f & set(&[2]) != 0));
    }

    #[test]
    fn flag_enumeration() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.flags_of_flats(&[1]).len(), 3);
        assert_eq!(Matroid::uniform(3, 3).unwrap().flags_of_flats(&[1, 2]).len(), 6);
        let looped = Matroid::from_bases(3, &[set(&[0, 1])]).unwrap();
        assert!(looped.flags_of_flats(&[1]).is_empty());
        assert_eq!(u23.flags_of_flats(&[]).len(), 1);
        let flag = &u23.flags_of_flats(&[1])[0];
        assert_eq!(flag.with_endpoints(), vec![0, 1, 7]);
    }

    #[test]
    fn relabel_round_trip() {
        let m = Matroid::from_bases(4, &[set(&[0, 1]), set(&[0, 2]), set(&[0, 3]), set(&[1, 2]), set(&[1, 3])]).unwrap();
        let perm = [2, 0, 3, 1];
        let inverse = [1, 3, 0, 2];
        assert_eq!(m.relabel(&perm).unwrap().relabel(&inverse).unwrap(), m);
        assert!(m.relabel(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn compress_expand_inverse() {
        let within = set(&[1, 3, 4, 6]);
        for s in 0..16u32 {
            assert_eq!(compress(expand(s, within), within), s);
        }
    }

    mod properties {
        use super::super::strategy::graphic;
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn constructed_matroids_satisfy_rank_axioms(m in graphic(7)) {
                prop_assert!(m.validate().is_ok());
                let rebuilt = Matroid::from_bases(m.num_elements(), &m.bases()).unwrap();
                prop_assert_eq!(rebuilt, m);
            }

            #[test]
            fn minors_are_matroids(m in graphic(6), keep in any::<u32>(), contract in any::<u32>()) {
                let keep = keep & m.full();
                let contract = contract & keep;
                prop_assume!(keep & !contract != 0);
                let minor = m.minor(keep, contract).unwrap();
                prop_assert!(minor.validate().is_ok());
                prop_assert_eq!(minor.num_elements(), size(keep & !contract));
                prop_assert_eq!(minor.rank(), m.rank_of(keep) - m.rank_of(contract));
            }

            #[test]
            fn flats_are_closed(m in graphic(6)) {
                for f in m.flats() {
                    prop_assert_eq!(m.closure(f), f);
                }
                prop_assert!(m.is_flat(m.full()));
            }
        }
    }
}
