//! Belief propagation on the Z-check Tanner graph.
//!
//! Messages are log-likelihood ratios. A check-to-qubit message is
//! `(−1)^[c ∈ σ] / 2 · atanh(∏ tanh(ℓ_{q'→c}))` over the other qubits of the
//! check, and a qubit-to-check message is the prior `log((1−p)/p)` plus the
//! incoming check messages from the other checks. Updates are synchronous:
//! every message of a round is computed from the previous round's values.
//!
//! The tuning-free variant runs 1, 2, 3, … rounds, reusing the message state,
//! and stops as soon as the residual syndrome `H_Z·x̃ ⊕ σ` vanishes
//! (converged) or fails to shrink (flagged).

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::uf::UnionFindDecoder;

/// Clamp applied to `∏ tanh` before `atanh`.
pub const PRODUCT_EPS: f64 = 1e-12;
/// Bound on the magnitude of every message.
pub const MAX_MESSAGE: f64 = 30.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BpStatus {
    Converged,
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpOutcome {
    pub estimate: BitVector,
    pub status: BpStatus,
    pub rounds_used: usize,
}

/// Edge-indexed Tanner graph. Edges are numbered check-major.
#[derive(Clone, Debug)]
struct EdgeGraph {
    num_qubits: usize,
    edge_qubit: Vec<usize>,
    /// Edge ids of each check.
    check_edges: Vec<Vec<usize>>,
    /// Edge ids of each qubit.
    qubit_edges: Vec<Vec<usize>>,
}

impl EdgeGraph {
    fn new(code: &CssCode) -> Self {
        let h = code.h_z();
        let mut edge_qubit = Vec::new();
        let mut check_edges = vec![Vec::new(); h.num_rows()];
        let mut qubit_edges = vec![Vec::new(); h.num_cols()];
        for (c, row) in h.rows().iter().enumerate() {
            for q in row.iter_ones() {
                let e = edge_qubit.len();
                edge_qubit.push(q);
                check_edges[c].push(e);
                qubit_edges[q].push(e);
            }
        }
        Self {
            num_qubits: h.num_cols(),
            edge_qubit,
            check_edges,
            qubit_edges,
        }
    }
}

/// Message state of a belief-propagation run.
#[derive(Clone, Debug)]
pub struct BpMessages {
    pub q_to_c: Vec<f64>,
    pub c_to_q: Vec<f64>,
    pub prior: f64,
}

/// `log((1−p)/p)`.
pub fn log_ratio(p: f64) -> f64 {
    ((1.0 - p) / p).ln()
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("BP error probability p = {p} must lie in (0, 0.5)")))
    }
}

/// Belief-propagation decoder bound to one code.
#[derive(Clone, Debug)]
pub struct BpDecoder {
    code: CssCode,
    edges: EdgeGraph,
}

impl BpDecoder {
    pub fn new(code: &CssCode) -> Self {
        Self {
            code: code.clone(),
            edges: EdgeGraph::new(code),
        }
    }

    fn check_syndrome(&self, syndrome: &BitVector) -> Result<()> {
        if syndrome.len() != self.code.num_z_checks() {
            return Err(Error::DimensionMismatch {
                context: "syndrome length",
                expected: self.code.num_z_checks(),
                found: syndrome.len(),
            });
        }
        Ok(())
    }

    fn init(&self, p: f64) -> BpMessages {
        let prior = log_ratio(p);
        let m = self.edges.edge_qubit.len();
        BpMessages {
            q_to_c: vec![prior.clamp(-MAX_MESSAGE, MAX_MESSAGE); m],
            c_to_q: vec![0.0; m],
            prior,
        }
    }

    /// Recomputes every check-to-qubit message from the current
    /// qubit-to-check messages.
    fn update_checks(&self, msgs: &mut BpMessages, syndrome: &BitVector) {
        for (c, edges) in self.edges.check_edges.iter().enumerate() {
            let sign = if syndrome.get(c) { -0.5 } else { 0.5 };
            for &e in edges {
                let b: f64 = edges
                    .iter()
                    .filter(|&&other| other != e)
                    .map(|&other| msgs.q_to_c[other].tanh())
                    .product();
                let b = b.clamp(-1.0 + PRODUCT_EPS, 1.0 - PRODUCT_EPS);
                msgs.c_to_q[e] = (sign * b.atanh()).clamp(-MAX_MESSAGE, MAX_MESSAGE);
            }
        }
    }

    /// One full round: check messages, then qubit messages.
    fn round(&self, msgs: &mut BpMessages, syndrome: &BitVector) {
        self.update_checks(msgs, syndrome);
        for edges in &self.edges.qubit_edges {
            let total: f64 = edges.iter().map(|&e| msgs.c_to_q[e]).sum();
            for &e in edges {
                msgs.q_to_c[e] = (msgs.prior + total - msgs.c_to_q[e]).clamp(-MAX_MESSAGE, MAX_MESSAGE);
            }
        }
    }

    /// Final round: posterior `ℓ_qb` per qubit and the hard decision
    /// `ℓ_qb < 0`. Leaves the qubit-to-check messages untouched.
    fn decide(&self, msgs: &mut BpMessages, syndrome: &BitVector) -> (BitVector, Vec<f64>) {
        self.update_checks(msgs, syndrome);
        let posteriors: Vec<f64> = self
            .edges
            .qubit_edges
            .iter()
            .map(|edges| msgs.prior + edges.iter().map(|&e| msgs.c_to_q[e]).sum::<f64>())
            .collect();
        let estimate = BitVector::from_support(
            self.edges.num_qubits,
            posteriors.iter().enumerate().filter(|(_, &l)| l < 0.0).map(|(q, _)| q),
        );
        (estimate, posteriors)
    }

    /// Runs exactly `rounds` rounds (`rounds − 1` full rounds plus the
    /// decision round) and returns the hard decision.
    pub fn decode_rounds(&self, syndrome: &BitVector, p: f64, rounds: usize) -> Result<BitVector> {
        Ok(self.posteriors(syndrome, p, rounds)?.0)
    }

    /// Like [`decode_rounds`](Self::decode_rounds) but also returns the
    /// per-qubit posterior log-ratios.
    pub fn posteriors(&self, syndrome: &BitVector, p: f64, rounds: usize) -> Result<(BitVector, Vec<f64>)> {
        check_probability(p)?;
        self.check_syndrome(syndrome)?;
        if rounds == 0 {
            return Err(Error::InvalidParameter("BP needs at least one round".into()));
        }
        let mut msgs = self.init(p);
        for _ in 1..rounds {
            self.round(&mut msgs, syndrome);
        }
        Ok(self.decide(&mut msgs, syndrome))
    }

    /// Tuning-free BP. `trace`, when given, receives `x̃^(R)` for every round
    /// tried.
    pub fn decode_tuning_free_traced(
        &self,
        syndrome: &BitVector,
        p: f64,
        mut trace: Option<&mut Vec<BitVector>>,
    ) -> Result<BpOutcome> {
        check_probability(p)?;
        self.check_syndrome(syndrome)?;
        let mut msgs = self.init(p);
        // x̃^(0) is empty, so σ_res^(0) = σ.
        let mut previous = syndrome.weight();
        let mut rounds = 1;
        loop {
            let (estimate, _) = self.decide(&mut msgs, syndrome);
            if let Some(t) = trace.as_deref_mut() {
                t.push(estimate.clone());
            }
            let mut residual = self.code.syndrome(&estimate)?;
            residual ^= syndrome;
            let weight = residual.weight();
            if weight == 0 {
                return Ok(BpOutcome {
                    estimate,
                    status: BpStatus::Converged,
                    rounds_used: rounds,
                });
            }
            if weight >= previous {
                return Ok(BpOutcome {
                    estimate,
                    status: BpStatus::Flagged,
                    rounds_used: rounds,
                });
            }
            previous = weight;
            self.round(&mut msgs, syndrome);
            rounds += 1;
        }
    }

    pub fn decode_tuning_free(&self, syndrome: &BitVector, p: f64) -> Result<BpOutcome> {
        self.decode_tuning_free_traced(syndrome, p, None)
    }
}

pub fn bp_rounds(code: &CssCode, syndrome: &BitVector, p: f64, rounds: usize) -> Result<BitVector> {
    BpDecoder::new(code).decode_rounds(syndrome, p, rounds)
}

pub fn bp_tuning_free(code: &CssCode, syndrome: &BitVector, p: f64) -> Result<BpOutcome> {
    BpDecoder::new(code).decode_tuning_free(syndrome, p)
}

/// Which stage produced a [`BpUfDecoder`] correction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BpUfStage {
    BeliefPropagation,
    UnionFind,
}

/// Tuning-free BP, falling back to Union-Find on flagged outcomes.
#[derive(Clone, Debug)]
pub struct BpUfDecoder {
    bp: BpDecoder,
    uf: UnionFindDecoder,
}

impl BpUfDecoder {
    pub fn new(code: &CssCode) -> Self {
        Self {
            bp: BpDecoder::new(code),
            uf: UnionFindDecoder::new(code),
        }
    }

    pub fn decode(&self, syndrome: &BitVector, p: f64) -> Result<(BitVector, BpUfStage)> {
        let outcome = self.bp.decode_tuning_free(syndrome, p)?;
        match outcome.status {
            BpStatus::Converged => Ok((outcome.estimate, BpUfStage::BeliefPropagation)),
            BpStatus::Flagged => Ok((self.uf.decode(syndrome)?.correction, BpUfStage::UnionFind)),
        }
    }
}

pub fn bp_then_uf(code: &CssCode, syndrome: &BitVector, p: f64) -> Result<BitVector> {
    BpUfDecoder::new(code).decode(syndrome, p).map(|(x, _)| x)
}
