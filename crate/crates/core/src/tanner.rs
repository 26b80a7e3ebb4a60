//! Tanner graphs and the metric machinery decoders need: balls, interiors
//! and connected components of node subsets.
//!
//! Nodes live in one index space: qubits are `0..n`, checks are `n..n + r`.

use crate::gf2::{BitMatrix, BitVector};

#[derive(Clone, Debug)]
pub struct TannerGraph {
    num_qubits: usize,
    num_checks: usize,
    /// Check indices (0-based, not node ids) adjacent to each qubit.
    qubit_checks: Vec<Vec<usize>>,
    /// Qubit indices adjacent to each check.
    check_qubits: Vec<Vec<usize>>,
    degree: usize,
}

impl TannerGraph {
    /// Tanner graph of a parity-check matrix: one check node per row, one
    /// qubit node per column, an edge wherever the entry is 1.
    pub fn new(h: &BitMatrix) -> Self {
        let n = h.num_cols();
        let mut qubit_checks = vec![Vec::new(); n];
        let check_qubits: Vec<Vec<usize>> = h.rows().iter().map(BitVector::support).collect();
        for (c, qs) in check_qubits.iter().enumerate() {
            for &q in qs {
                qubit_checks[q].push(c);
            }
        }
        let degree = qubit_checks
            .iter()
            .chain(check_qubits.iter())
            .map(Vec::len)
            .max()
            .unwrap_or(0);
        Self {
            num_qubits: n,
            num_checks: h.num_rows(),
            qubit_checks,
            check_qubits,
            degree,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_checks(&self) -> usize {
        self.num_checks
    }

    pub fn num_nodes(&self) -> usize {
        self.num_qubits + self.num_checks
    }

    /// Maximum node degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_edges(&self) -> usize {
        self.check_qubits.iter().map(Vec::len).sum()
    }

    #[inline]
    pub fn check_node(&self, check: usize) -> usize {
        self.num_qubits + check
    }

    #[inline]
    pub fn is_qubit(&self, node: usize) -> bool {
        node < self.num_qubits
    }

    pub fn checks_of(&self, qubit: usize) -> &[usize] {
        &self.qubit_checks[qubit]
    }

    pub fn qubits_of(&self, check: usize) -> &[usize] {
        &self.check_qubits[check]
    }

    pub fn max_check_weight(&self) -> usize {
        self.check_qubits.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_qubit_degree(&self) -> usize {
        self.qubit_checks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Neighbors of a node, as node ids.
    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.num_qubits;
        let (list, offset) = if node < n {
            (&self.qubit_checks[node], n)
        } else {
            (&self.check_qubits[node - n], 0)
        };
        list.iter().map(move |&v| v + offset)
    }

    pub fn empty_set(&self) -> NodeSet {
        NodeSet::empty(self.num_qubits, self.num_checks)
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet {
            num_qubits: self.num_qubits,
            members: BitVector::ones(self.num_nodes()),
        }
    }

    /// The check nodes flagged by a syndrome.
    pub fn syndrome_nodes(&self, syndrome: &BitVector) -> NodeSet {
        assert_eq!(syndrome.len(), self.num_checks, "syndrome length must equal the number of checks");
        let mut s = self.empty_set();
        for c in syndrome.iter_ones() {
            s.insert(self.check_node(c));
        }
        s
    }

    /// The qubit nodes in the support of an error.
    pub fn error_nodes(&self, error: &BitVector) -> NodeSet {
        assert_eq!(error.len(), self.num_qubits, "error length must equal the number of qubits");
        NodeSet::from_nodes(self.num_qubits, self.num_checks, error.iter_ones())
    }

    /// Graph distance from the nearest seed to every node (`None` if
    /// unreachable).
    pub fn distances(&self, seeds: &NodeSet) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.num_nodes()];
        let mut frontier: Vec<usize> = seeds.iter().collect();
        for &s in &frontier {
            dist[s] = Some(0);
        }
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for v in self.neighbors(u) {
                    if dist[v].is_none() {
                        dist[v] = Some(d);
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// All nodes at distance at most `radius` from `seeds`.
    pub fn ball(&self, seeds: &NodeSet, radius: usize) -> NodeSet {
        let mut out = seeds.clone();
        let mut frontier: Vec<usize> = seeds.iter().collect();
        for _ in 0..radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for v in self.neighbors(u) {
                    if !out.contains(v) {
                        out.insert(v);
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        out
    }

    /// Nodes of `subset` whose whole neighborhood lies in `subset`.
    pub fn interior(&self, subset: &NodeSet) -> NodeSet {
        let mut out = self.empty_set();
        for u in subset.iter() {
            if self.neighbors(u).all(|v| subset.contains(v)) {
                out.insert(u);
            }
        }
        out
    }

    /// Connected components of the subgraph induced by `subset`, ordered by
    /// their smallest node.
    pub fn connected_components(&self, subset: &NodeSet) -> Vec<NodeSet> {
        let members: Vec<usize> = subset.iter().collect();
        let mut dsu = DisjointSet::new(self.num_nodes());
        for &u in &members {
            for v in self.neighbors(u) {
                if subset.contains(v) {
                    dsu.union(u, v);
                }
            }
        }
        let mut slot = vec![usize::MAX; self.num_nodes()];
        let mut comps: Vec<NodeSet> = Vec::new();
        for &u in &members {
            let root = dsu.find(u);
            if slot[root] == usize::MAX {
                slot[root] = comps.len();
                comps.push(self.empty_set());
            }
            comps[slot[root]].insert(u);
        }
        comps
    }
}

/// A set of Tanner-graph nodes (qubits and checks).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NodeSet {
    num_qubits: usize,
    members: BitVector,
}

impl NodeSet {
    pub fn empty(num_qubits: usize, num_checks: usize) -> Self {
        Self {
            num_qubits,
            members: BitVector::zeros(num_qubits + num_checks),
        }
    }

    pub fn from_nodes<I: IntoIterator<Item = usize>>(num_qubits: usize, num_checks: usize, nodes: I) -> Self {
        Self {
            num_qubits,
            members: BitVector::from_support(num_qubits + num_checks, nodes),
        }
    }

    #[inline]
    pub fn contains(&self, node: usize) -> bool {
        self.members.get(node)
    }

    #[inline]
    pub fn insert(&mut self, node: usize) {
        self.members.set(node, true);
    }

    pub fn remove(&mut self, node: usize) {
        self.members.set(node, false);
    }

    pub fn len(&self) -> usize {
        self.members.weight()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_zero()
    }

    /// Node ids in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter_ones()
    }

    /// Qubit indices in the set.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.num_qubits;
        self.members.iter_ones().take_while(move |&u| u < n)
    }

    /// Check indices (not node ids) in the set.
    pub fn checks(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.num_qubits;
        self.members.iter_ones().skip_while(move |&u| u < n).map(move |u| u - n)
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.members
            .words()
            .iter()
            .zip(other.members.words())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        for u in other.iter() {
            self.insert(u);
        }
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.members.overlap(&other.members) == 0
    }

    pub fn members(&self) -> &BitVector {
        &self.members
    }
}

/// Union-find over `0..n` with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut u: usize) -> usize {
        while self.parent[u] != u {
            self.parent[u] = self.parent[self.parent[u]];
            u = self.parent[u];
        }
        u
    }

    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        ra
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{steane_code, toric_code};
    use proptest::prelude::*;

    fn steane_graph() -> TannerGraph {
        TannerGraph::new(steane_code().h_z())
    }

    #[test]
    fn build_examples() {
        let g = steane_graph();
        assert_eq!((g.num_qubits(), g.num_checks()), (7, 3));
        for c in 0..3 {
            assert_eq!(g.qubits_of(c).len(), 4);
        }
        assert_eq!(g.degree(), 4);
        assert_eq!(g.num_edges(), 12);
        for q in 0..7 {
            for &c in g.checks_of(q) {
                assert!(steane_code().h_z().get(c, q));
            }
        }

        let empty = TannerGraph::new(&BitMatrix::zeros(2, 3));
        assert_eq!(empty.num_edges(), 0);
        assert_eq!(empty.degree(), 0);

        let single = TannerGraph::new(&BitMatrix::identity(1));
        assert_eq!(single.num_edges(), 1);
        assert_eq!(single.neighbors(0).collect::<Vec<_>>(), vec![1]);
        assert_eq!(single.neighbors(1).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn ball_examples() {
        let g = steane_graph();
        assert!(g.ball(&g.empty_set(), 3).is_empty());

        let seeds = NodeSet::from_nodes(7, 3, [g.check_node(0), g.check_node(1)]);
        assert_eq!(g.ball(&seeds, 0), seeds);
        // Rows 0 and 1 of the Hamming matrix cover qubits {0,2,4,6} ∪ {1,2,5,6}.
        let expected = NodeSet::from_nodes(7, 3, [0, 1, 2, 4, 5, 6, 7, 8]);
        assert_eq!(g.ball(&seeds, 1), expected);
        // Qubit 3 only touches check 2, three hops from the seeds.
        let mut all_but_3 = g.all_nodes();
        all_but_3.remove(3);
        assert_eq!(g.ball(&seeds, 2), all_but_3);
        assert_eq!(g.ball(&seeds, 3), g.all_nodes());
    }

    #[test]
    fn component_examples() {
        let g = steane_graph();
        assert!(g.connected_components(&g.empty_set()).is_empty());

        let two_checks = NodeSet::from_nodes(7, 3, [7, 8]);
        assert_eq!(g.connected_components(&two_checks).len(), 2);

        let mut star = NodeSet::from_nodes(7, 3, [7]);
        for &q in g.qubits_of(0) {
            star.insert(q);
        }
        assert_eq!(g.connected_components(&star), vec![star.clone()]);

        // Ordered by smallest member.
        let s = NodeSet::from_nodes(7, 3, [3, 9, 0, 7]);
        let comps = g.connected_components(&s);
        assert_eq!(comps[0].iter().next(), Some(0));
        assert_eq!(comps.iter().map(NodeSet::len).sum::<usize>(), 4);
    }

    #[test]
    fn interior_examples() {
        let g = steane_graph();
        assert_eq!(g.interior(&g.all_nodes()), g.all_nodes());
        assert!(g.interior(&NodeSet::from_nodes(7, 3, [0])).is_empty());

        // Single error on qubit 2 (column 011 read top-down as 1,1,0) flags
        // checks 0 and 1. One growth step followed by the interior leaves the
        // two checks and qubits 0, 1, 2.
        let sigma = NodeSet::from_nodes(7, 3, [7, 8]);
        let grown = g.ball(&sigma, 1);
        assert_eq!(g.interior(&grown), NodeSet::from_nodes(7, 3, [0, 1, 2, 7, 8]));
    }

    #[test]
    fn node_set_partition() {
        let s = NodeSet::from_nodes(7, 3, [1, 5, 8, 9]);
        assert_eq!(s.qubits().collect::<Vec<_>>(), vec![1, 5]);
        assert_eq!(s.checks().collect::<Vec<_>>(), vec![1, 2]);
        let q = NodeSet::from_nodes(7, 3, [1]);
        assert_eq!(q.checks().count(), 0);
    }

    fn arb_subset(nodes: usize) -> impl Strategy<Value = Vec<bool>> {
        proptest::collection::vec(proptest::bool::weighted(0.2), nodes)
    }

    proptest! {
        #[test]
        fn ball_properties(bits in arb_subset(50), r in 1usize..5) {
            let tc = toric_code(2, 1, 5).unwrap();
            let g = TannerGraph::new(tc.code().h_z());
            let s = NodeSet::from_nodes(50, 25, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
            let small = g.ball(&s, r);
            let big = g.ball(&s, r + 1);
            prop_assert!(small.is_subset(&big));
            prop_assert_eq!(small, g.ball(&g.ball(&s, 1), r - 1));
        }

        #[test]
        fn components_partition_subset(bits in arb_subset(75)) {
            let tc = toric_code(2, 1, 5).unwrap();
            let g = TannerGraph::new(tc.code().h_z());
            let s = NodeSet::from_nodes(50, 25, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
            let comps = g.connected_components(&s);
            let mut union = g.empty_set();
            for (i, a) in comps.iter().enumerate() {
                for b in &comps[i + 1..] {
                    prop_assert!(a.is_disjoint(b));
                }
                union.union_with(a);
            }
            prop_assert_eq!(&union, &s);
            let firsts: Vec<_> = comps.iter().map(|c| c.iter().next().unwrap()).collect();
            prop_assert!(firsts.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(g.interior(&s).is_subset(&s));
        }
    }
}
