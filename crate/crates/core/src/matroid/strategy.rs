//! Random matroids for property tests.

use proptest::prelude::*;

use super::Matroid;

/// Graphic matroids on up to five vertices with one to `max_edges` edges, loops and parallel edges allowed.
pub(crate) fn graphic(max_edges: usize) -> impl Strategy<Value = Matroid> {
    (1usize..=5).prop_flat_map(move |v| {
        prop::collection::vec((0..v, 0..v), 1..=max_edges).prop_map(move |edges| Matroid::graphic(v, &edges).expect("edges are in range"))
    })
}

/// Loopless graphic matroids of positive rank.
pub(crate) fn loopless_graphic(max_edges: usize) -> impl Strategy<Value = Matroid> {
    graphic(max_edges).prop_filter("loopless with positive rank", |m| m.is_loopless() && m.rank() >= 1)
}

/// A matroid from `inner` together with a uniformly shuffled relabeling of its ground set.
pub(crate) fn with_permutation(inner: impl Strategy<Value = Matroid>) -> impl Strategy<Value = (Matroid, Vec<usize>)> {
    inner.prop_flat_map(|m| {
        let identity: Vec<usize> = (0..m.num_elements()).collect();
        (Just(m), Just(identity).prop_shuffle())
    })
}
