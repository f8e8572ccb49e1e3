//! The graph-oracle contract.

use crate::key::VertexKey;

/// A simple connected graph presented through neighbor enumeration. Oracles
/// may describe infinite graphs; nothing about a vertex is known until it is
/// queried.
///
/// Contract (spot-checked by the test suite, not enforceable globally):
/// - symmetry: `u ∈ neighbors(v)` iff `v ∈ neighbors(u)`;
/// - simplicity: no self-loops, no duplicates in a neighbor list;
/// - finite positive degree everywhere;
/// - determinism: repeated calls return identical lists, sorted ascending;
/// - connectivity: every vertex is reachable from `origin()`.
///
/// Oracles are pure values and must tolerate concurrent queries.
pub trait GraphOracle: Sync {
    fn name(&self) -> String;

    fn contains(&self, v: VertexKey) -> bool;

    /// Appends the neighbors of `v` to `out` in ascending key order.
    /// `v` must be contained in the graph.
    fn neighbors_into(&self, v: VertexKey, out: &mut Vec<VertexKey>);

    fn neighbors(&self, v: VertexKey) -> Vec<VertexKey> {
        let mut out = Vec::new();
        self.neighbors_into(v, &mut out);
        out
    }

    fn degree(&self, v: VertexKey) -> usize {
        self.neighbors(v).len()
    }

    fn is_finite(&self) -> bool;

    /// A designated base point used as the default center for windows.
    fn origin(&self) -> VertexKey;
}

impl<T: GraphOracle + ?Sized> GraphOracle for &T {
    fn name(&self) -> String {
        (**self).name()
    }
    fn contains(&self, v: VertexKey) -> bool {
        (**self).contains(v)
    }
    fn neighbors_into(&self, v: VertexKey, out: &mut Vec<VertexKey>) {
        (**self).neighbors_into(v, out)
    }
    fn is_finite(&self) -> bool {
        (**self).is_finite()
    }
    fn origin(&self) -> VertexKey {
        (**self).origin()
    }
}

impl GraphOracle for Box<dyn GraphOracle> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn contains(&self, v: VertexKey) -> bool {
        (**self).contains(v)
    }
    fn neighbors_into(&self, v: VertexKey, out: &mut Vec<VertexKey>) {
        (**self).neighbors_into(v, out)
    }
    fn is_finite(&self) -> bool {
        (**self).is_finite()
    }
    fn origin(&self) -> VertexKey {
        (**self).origin()
    }
}
