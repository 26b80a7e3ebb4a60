//! Union-Find decoder for CSS codes.
//!
//! Clusters start at the flagged Z checks and grow by one full Tanner-graph
//! layer per round, valid components included, until every connected
//! component is valid. A component is valid when its flagged checks can be
//! explained by an error supported on its interior qubits; each component
//! then contributes the canonical solution of that local GF(2) system.

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVector};
use crate::tanner::{NodeSet, TannerGraph};

/// The growing cluster set together with its component decomposition.
#[derive(Clone, Debug)]
pub struct ClusterState {
    e_set: NodeSet,
    components: Vec<NodeSet>,
    valid: Vec<bool>,
    rounds: usize,
    syndrome: BitVector,
}

impl ClusterState {
    /// `E` initialized to the flagged checks.
    pub fn new(graph: &TannerGraph, syndrome: &BitVector) -> Self {
        let e_set = graph.syndrome_nodes(syndrome);
        let mut state = Self {
            e_set,
            components: Vec::new(),
            valid: Vec::new(),
            rounds: 0,
            syndrome: syndrome.clone(),
        };
        state.refresh(graph);
        state
    }

    fn refresh(&mut self, graph: &TannerGraph) {
        self.components = graph.connected_components(&self.e_set);
        self.valid = self
            .components
            .iter()
            .map(|c| is_valid_component(graph, c, &self.syndrome))
            .collect();
    }

    pub fn e_set(&self) -> &NodeSet {
        &self.e_set
    }

    pub fn components(&self) -> &[NodeSet] {
        &self.components
    }

    pub fn valid_flags(&self) -> &[bool] {
        &self.valid
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn syndrome(&self) -> &BitVector {
        &self.syndrome
    }

    pub fn all_valid(&self) -> bool {
        self.valid.iter().all(|&v| v)
    }

    /// One growth step: `E ← B(E, 1)`, then components and validity are
    /// recomputed from scratch. Returns whether `E` changed.
    pub fn grow(&mut self, graph: &TannerGraph) -> bool {
        let next = graph.ball(&self.e_set, 1);
        let changed = next != self.e_set;
        self.e_set = next;
        self.rounds += 1;
        self.refresh(graph);
        changed
    }
}

/// Applies one growth step to `state`.
pub fn grow(mut state: ClusterState, graph: &TannerGraph) -> ClusterState {
    state.grow(graph);
    state
}

/// Local system of a component: rows are its checks, columns its interior
/// qubits, right-hand side the syndrome on its checks.
struct LocalSystem {
    qubits: Vec<usize>,
    matrix: BitMatrix,
    rhs: BitVector,
}

fn local_system(graph: &TannerGraph, comp: &NodeSet, syndrome: &BitVector) -> LocalSystem {
    let checks: Vec<usize> = comp.checks().collect();
    let qubits: Vec<usize> = comp
        .qubits()
        .filter(|&q| graph.checks_of(q).iter().all(|&c| comp.contains(graph.check_node(c))))
        .collect();
    let mut row_of = vec![usize::MAX; graph.num_checks()];
    for (r, &c) in checks.iter().enumerate() {
        row_of[c] = r;
    }
    let mut matrix = BitMatrix::zeros(checks.len(), qubits.len());
    for (col, &q) in qubits.iter().enumerate() {
        for &c in graph.checks_of(q) {
            matrix.set(row_of[c], col, true);
        }
    }
    let rhs = BitVector::from_bools(&checks.iter().map(|&c| syndrome.get(c)).collect::<Vec<_>>());
    LocalSystem { qubits, matrix, rhs }
}

fn solve_component(graph: &TannerGraph, comp: &NodeSet, syndrome: &BitVector) -> Option<BitVector> {
    let sys = local_system(graph, comp, syndrome);
    if sys.rhs.is_zero() {
        return Some(BitVector::zeros(graph.num_qubits()));
    }
    let local = gf2::solve(&sys.matrix, &sys.rhs).expect("right-hand side has one entry per row")?;
    Some(BitVector::from_support(
        graph.num_qubits(),
        local.iter_ones().map(|i| sys.qubits[i]),
    ))
}

/// Whether some error on the interior qubits of `comp` reproduces the
/// syndrome restricted to the checks of `comp`.
pub fn is_valid_component(graph: &TannerGraph, comp: &NodeSet, syndrome: &BitVector) -> bool {
    solve_component(graph, comp, syndrome).is_some()
}

/// Canonical valid correction inside `comp`.
///
/// # Panics
///
/// Panics if `comp` is not valid for `syndrome`.
pub fn component_correction(graph: &TannerGraph, comp: &NodeSet, syndrome: &BitVector) -> BitVector {
    solve_component(graph, comp, syndrome).expect("component_correction called on an invalid component")
}

/// Whole-set validity of an arbitrary node set `E`, without splitting it
/// into components.
pub fn is_valid_set(graph: &TannerGraph, set: &NodeSet, syndrome: &BitVector) -> bool {
    is_valid_component(graph, set, syndrome)
}

/// Result of a successful decode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UfCorrection {
    pub correction: BitVector,
    /// Number of growth steps applied.
    pub rounds: usize,
    /// The final grown set.
    pub cluster: NodeSet,
}

/// Union-Find decoder bound to one code; reusable across syndromes.
#[derive(Clone, Debug)]
pub struct UnionFindDecoder {
    graph: TannerGraph,
}

impl UnionFindDecoder {
    pub fn new(code: &CssCode) -> Self {
        Self {
            graph: TannerGraph::new(code.h_z()),
        }
    }

    pub fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    pub fn decode(&self, syndrome: &BitVector) -> Result<UfCorrection> {
        if syndrome.len() != self.graph.num_checks() {
            return Err(Error::DimensionMismatch {
                context: "syndrome length",
                expected: self.graph.num_checks(),
                found: syndrome.len(),
            });
        }
        let mut state = ClusterState::new(&self.graph, syndrome);
        while !state.all_valid() {
            if !state.grow(&self.graph) && !state.all_valid() {
                return Err(Error::InfeasibleSyndrome { rounds: state.rounds() });
            }
        }
        let mut correction = BitVector::zeros(self.graph.num_qubits());
        for comp in state.components() {
            correction ^= &component_correction(&self.graph, comp, syndrome);
        }
        Ok(UfCorrection {
            correction,
            rounds: state.rounds(),
            cluster: state.e_set,
        })
    }
}

pub fn decode_uf(code: &CssCode, syndrome: &BitVector) -> Result<BitVector> {
    UnionFindDecoder::new(code).decode(syndrome).map(|c| c.correction)
}
