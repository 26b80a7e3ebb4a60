//! Ground-truth oracles: covering radii, minimum-weight errors, logical
//! bases, residual classification and soundness scans.
//!
//! Exhaustive searches take an explicit candidate budget and refuse to run
//! when the enumeration would exceed it.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use crate::code::CssCode;
use crate::constructions::ToricCode;
use crate::error::{Error, Result};
use crate::gf2::{self, BitVector, Echelon};
use crate::tanner::TannerGraph;

/// Default cap on the number of candidate errors an exhaustive scan may visit.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// `Σ_{w ≤ w_max} C(n, w)`, saturating.
pub fn enumeration_size(n: usize, w_max: usize) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for w in 0..=w_max.min(n) {
        total = total.saturating_add(term);
        term = term.saturating_mul((n - w) as u128) / (w as u128 + 1);
    }
    total
}

fn check_budget(n: usize, w_max: usize, budget: u128) -> Result<()> {
    let required = enumeration_size(n, w_max);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Visits every weight-`w` support in lexicographic order together with its
/// syndrome.
fn for_each_of_weight<F>(columns: &[BitVector], r: usize, w: usize, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize], &BitVector) -> ControlFlow<()>,
{
    fn rec<F>(
        columns: &[BitVector],
        start: usize,
        left: usize,
        support: &mut Vec<usize>,
        acc: &BitVector,
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &BitVector) -> ControlFlow<()>,
    {
        if left == 0 {
            return f(support, acc);
        }
        for q in start..=columns.len() - left {
            support.push(q);
            let next = acc ^ &columns[q];
            rec(columns, q + 1, left - 1, support, &next, f)?;
            support.pop();
        }
        ControlFlow::Continue(())
    }
    if w > columns.len() {
        return ControlFlow::Continue(());
    }
    rec(columns, 0, w, &mut Vec::with_capacity(w), &BitVector::zeros(r), f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisSource {
    Computed,
    ToricExplicit,
}

/// Representatives of the logical Z operators: elements of `Ker H_X`
/// independent modulo the row space of `H_Z`.
#[derive(Clone, Debug)]
pub struct LogicalBasis {
    pub z_basis: Vec<BitVector>,
    pub source: BasisSource,
}

impl LogicalBasis {
    /// Kernel of `H_X`, then a greedy pass keeping vectors that are new
    /// modulo the row space of `H_Z`.
    pub fn compute(code: &CssCode) -> Self {
        let k = code.num_logical();
        let mut span = Echelon::new(code.h_z());
        let mut z_basis = Vec::with_capacity(k);
        for v in gf2::kernel_basis(code.h_x()) {
            if z_basis.len() == k {
                break;
            }
            if span.insert(&v) {
                z_basis.push(v);
            }
        }
        Self {
            z_basis,
            source: BasisSource::Computed,
        }
    }

    /// The explicit sheets `ℓ_Z(0, I)` of a toric code, one per direction set.
    pub fn toric(tc: &ToricCode) -> Self {
        let origin = vec![0; tc.dim()];
        Self {
            z_basis: tc
                .direction_sets()
                .iter()
                .map(|dirs| tc.logical_z(&origin, dirs).expect("direction sets come from the code"))
                .collect(),
            source: BasisSource::ToricExplicit,
        }
    }

    pub fn len(&self) -> usize {
        self.z_basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z_basis.is_empty()
    }
}

pub fn logical_z_basis(code: &CssCode) -> LogicalBasis {
    LogicalBasis::compute(code)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualClass {
    /// A stabilizer.
    Trivial,
    /// A non-trivial logical operator.
    Logical,
}

/// Classifies a zero-syndrome residual by its parities against the logical
/// Z basis: trivial iff it is orthogonal to every basis vector.
pub fn classify_residual(code: &CssCode, basis: &LogicalBasis, residual: &BitVector) -> Result<ResidualClass> {
    if !code.syndrome(residual)?.is_zero() {
        return Err(Error::NonzeroSyndrome);
    }
    Ok(if basis.z_basis.iter().any(|z| z.dot(residual)) {
        ResidualClass::Logical
    } else {
        ResidualClass::Trivial
    })
}

/// Same classification via row-space membership in `H_X`.
pub fn classify_residual_by_row_space(code: &CssCode, residual: &BitVector) -> Result<ResidualClass> {
    if !code.syndrome(residual)?.is_zero() {
        return Err(Error::NonzeroSyndrome);
    }
    Ok(if gf2::in_row_space(code.h_x(), residual)? {
        ResidualClass::Trivial
    } else {
        ResidualClass::Logical
    })
}

/// Covering-radius and exhaustive-search oracles over one code.
#[derive(Clone, Debug)]
pub struct Analyzer<'a> {
    code: &'a CssCode,
    graph: TannerGraph,
    columns: Vec<BitVector>,
}

impl<'a> Analyzer<'a> {
    pub fn new(code: &'a CssCode) -> Self {
        let h = code.h_z();
        Self {
            code,
            graph: TannerGraph::new(h),
            columns: (0..h.num_cols()).map(|q| h.column(q)).collect(),
        }
    }

    pub fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    fn check_error(&self, x: &BitVector) -> Result<()> {
        if x.len() != self.code.n() {
            return Err(Error::DimensionMismatch {
                context: "error length",
                expected: self.code.n(),
                found: x.len(),
            });
        }
        Ok(())
    }

    fn check_syndrome(&self, s: &BitVector) -> Result<()> {
        if s.len() != self.code.num_z_checks() {
            return Err(Error::DimensionMismatch {
                context: "syndrome length",
                expected: self.code.num_z_checks(),
                found: s.len(),
            });
        }
        Ok(())
    }

    fn syndrome_distances(&self, syndrome: &BitVector) -> Vec<Option<usize>> {
        self.graph.distances(&self.graph.syndrome_nodes(syndrome))
    }

    /// Smallest `r` with `x ⊆ B(σ(x), r)`; 0 for a zero syndrome. `None`
    /// when part of `x` cannot be reached from its syndrome at all.
    pub fn covering_radius_of_error(&self, x: &BitVector) -> Result<Option<usize>> {
        self.check_error(x)?;
        let syndrome = self.code.syndrome(x)?;
        if syndrome.is_zero() {
            return Ok(Some(0));
        }
        let dist = self.syndrome_distances(&syndrome);
        Ok(x.iter_ones().try_fold(0, |acc, q| dist[q].map(|d| acc.max(d))))
    }

    /// Exact minimum covering radius over every error with syndrome `σ`:
    /// the smallest `r` for which `σ` is a combination of the columns of the
    /// qubits in `B(σ, r)`. `None` if `σ` is not realizable.
    pub fn syndrome_covering_radius(&self, syndrome: &BitVector) -> Result<Option<usize>> {
        self.check_syndrome(syndrome)?;
        if syndrome.is_zero() {
            return Ok(Some(0));
        }
        let dist = self.syndrome_distances(syndrome);
        let mut layers: Vec<(usize, usize)> = (0..self.code.n())
            .filter_map(|q| dist[q].map(|d| (d, q)))
            .collect();
        layers.sort_unstable();
        let mut span = Echelon::new(&gf2::BitMatrix::zeros(0, self.code.num_z_checks()));
        let mut i = 0;
        while i < layers.len() {
            let radius = layers[i].0;
            while i < layers.len() && layers[i].0 == radius {
                span.insert(&self.columns[layers[i].1]);
                i += 1;
            }
            if span.contains(syndrome) {
                return Ok(Some(radius));
            }
        }
        Ok(None)
    }

    /// Brute-force minimum covering radius over errors `y` with `σ(y) = σ`
    /// and `|y| ≤ w_max`. `None` if no such error exists within the weight
    /// cap.
    pub fn covering_radius_of_syndrome(&self, syndrome: &BitVector, w_max: usize, budget: u128) -> Result<Option<usize>> {
        self.check_syndrome(syndrome)?;
        check_budget(self.code.n(), w_max, budget)?;
        if syndrome.is_zero() {
            return Ok(Some(0));
        }
        // Every candidate shares the syndrome σ, so ρ_cov(y) is the largest
        // distance from σ over the support of y.
        let dist = self.syndrome_distances(syndrome);
        let mut best: Option<usize> = None;
        for w in 1..=w_max {
            let _ = for_each_of_weight(&self.columns, self.code.num_z_checks(), w, &mut |support, s| {
                if s == syndrome {
                    if let Some(r) = support.iter().try_fold(0, |acc, &q| dist[q].map(|d| acc.max(d))) {
                        best = Some(best.map_or(r, |b| b.min(r)));
                    }
                }
                ControlFlow::Continue(())
            });
        }
        Ok(best)
    }

    /// Minimum-weight error with syndrome `σ` and weight at most `w_max`;
    /// ties go to the lexicographically smallest support.
    pub fn reduced_error(&self, syndrome: &BitVector, w_max: usize, budget: u128) -> Result<Option<BitVector>> {
        self.check_syndrome(syndrome)?;
        check_budget(self.code.n(), w_max, budget)?;
        let n = self.code.n();
        for w in 0..=w_max {
            let mut found = None;
            let _ = for_each_of_weight(&self.columns, self.code.num_z_checks(), w, &mut |support, s| {
                if s == syndrome {
                    found = Some(BitVector::from_support(n, support.iter().copied()));
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Minimum of `|σ(x)| / |x|` over reduced errors with `1 ≤ |x| ≤ w_max`.
    pub fn soundness_scan(&self, w_max: usize, budget: u128) -> Result<SoundnessReport> {
        if w_max == 0 {
            return Err(Error::InvalidParameter("soundness scan needs w_max >= 1".into()));
        }
        check_budget(self.code.n(), w_max, budget)?;
        let r = self.code.num_z_checks();
        let mut seen: HashSet<BitVector> = HashSet::new();
        seen.insert(BitVector::zeros(r));
        let mut strata = Vec::with_capacity(w_max);
        for w in 1..=w_max {
            let mut fresh: HashSet<BitVector> = HashSet::new();
            let mut count = 0usize;
            let mut min_syndrome_weight: Option<usize> = None;
            let _ = for_each_of_weight(&self.columns, r, w, &mut |_, s| {
                if !seen.contains(s) {
                    count += 1;
                    let sw = s.weight();
                    min_syndrome_weight = Some(min_syndrome_weight.map_or(sw, |m| m.min(sw)));
                    fresh.insert(s.clone());
                }
                ControlFlow::Continue(())
            });
            seen.extend(fresh);
            strata.push(SoundnessStratum {
                weight: w,
                reduced_errors: count,
                min_ratio: min_syndrome_weight.map(|m| m as f64 / w as f64),
            });
        }
        let min_ratio = strata
            .iter()
            .filter_map(|s| s.min_ratio)
            .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.min(x))));
        Ok(SoundnessReport { strata, min_ratio })
    }

    /// For each weight `1..=w_max`: the number of errors, the largest
    /// covering radius of an error and the largest covering radius of the
    /// resulting syndromes. Errors with zero syndrome are only counted, in
    /// `undetectable`. `None` radii mean unbounded.
    pub fn radius_scan(&self, w_max: usize, budget: u128) -> Result<Vec<RadiusStratum>> {
        check_budget(self.code.n(), w_max, budget)?;
        let r = self.code.num_z_checks();
        let mut syndrome_radius: HashMap<BitVector, Option<usize>> = HashMap::new();
        let mut out = Vec::with_capacity(w_max);
        for w in 1..=w_max {
            let mut stratum = RadiusStratum {
                weight: w,
                errors: 0,
                undetectable: 0,
                max_error_radius: Some(0),
                max_syndrome_radius: Some(0),
            };
            let mut failure = None;
            let _ = for_each_of_weight(&self.columns, r, w, &mut |support, s| {
                stratum.errors += 1;
                if s.is_zero() {
                    stratum.undetectable += 1;
                    return ControlFlow::Continue(());
                }
                let x = BitVector::from_support(self.code.n(), support.iter().copied());
                let rho = match self.covering_radius_of_error(&x) {
                    Ok(v) => v,
                    Err(e) => {
                        failure = Some(e);
                        return ControlFlow::Break(());
                    }
                };
                let rho_bar = match syndrome_radius.get(s) {
                    Some(v) => *v,
                    None => {
                        let v = self.syndrome_covering_radius(s).expect("syndrome has the right length");
                        syndrome_radius.insert(s.clone(), v);
                        v
                    }
                };
                stratum.max_error_radius = max_radius(stratum.max_error_radius, rho);
                stratum.max_syndrome_radius = max_radius(stratum.max_syndrome_radius, rho_bar);
                ControlFlow::Continue(())
            });
            if let Some(e) = failure {
                return Err(e);
            }
            out.push(stratum);
        }
        Ok(out)
    }
}

fn max_radius(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    Some(a?.max(b?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SoundnessStratum {
    pub weight: usize,
    pub reduced_errors: usize,
    pub min_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SoundnessReport {
    pub strata: Vec<SoundnessStratum>,
    /// Largest `α` such that every scanned reduced error satisfies
    /// `|σ(x)| ≥ α·|x|`.
    pub min_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusStratum {
    pub weight: usize,
    pub errors: usize,
    pub undetectable: usize,
    pub max_error_radius: Option<usize>,
    pub max_syndrome_radius: Option<usize>,
}

pub fn covering_radius_of_error(code: &CssCode, x: &BitVector) -> Result<Option<usize>> {
    Analyzer::new(code).covering_radius_of_error(x)
}

pub fn covering_radius_of_syndrome(code: &CssCode, syndrome: &BitVector, w_max: usize, budget: u128) -> Result<Option<usize>> {
    Analyzer::new(code).covering_radius_of_syndrome(syndrome, w_max, budget)
}

pub fn reduced_error(code: &CssCode, syndrome: &BitVector, w_max: usize, budget: u128) -> Result<Option<BitVector>> {
    Analyzer::new(code).reduced_error(syndrome, w_max, budget)
}

pub fn soundness_scan(code: &CssCode, w_max: usize, budget: u128) -> Result<SoundnessReport> {
    Analyzer::new(code).soundness_scan(w_max, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{steane_code, toric_code};
    use crate::gf2::BitMatrix;
    use proptest::prelude::*;

    /// Horizontal edge from vertex (row, col) on TC(2,1): direction set {1}.
    fn h_edge(tc: &ToricCode, row: usize, col: usize) -> usize {
        tc.qubit_index(&[row, col], &[1]).unwrap()
    }

    fn straight_path(tc: &ToricCode, len: usize) -> BitVector {
        BitVector::from_support(tc.code().n(), (0..len).map(|c| h_edge(tc, 0, c)))
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumeration_size(50, 2), 1 + 50 + 1225);
        assert_eq!(enumeration_size(3, 10), 8);
        assert!(enumeration_size(10_000, 30) > DEFAULT_BUDGET);
    }

    #[test]
    fn error_radius_examples() {
        let tc = toric_code(2, 1, 5).unwrap();
        let an = Analyzer::new(tc.code());
        let logical = tc.logical_x(&[0, 0], &[1]).unwrap();
        assert_eq!(an.covering_radius_of_error(&logical).unwrap(), Some(0));
        for q in 0..50 {
            assert_eq!(an.covering_radius_of_error(&BitVector::unit(50, q)).unwrap(), Some(1));
        }
        assert_eq!(an.covering_radius_of_error(&straight_path(&tc, 3)).unwrap(), Some(3));
    }

    #[test]
    fn syndrome_radius_examples() {
        let tc = toric_code(2, 1, 5).unwrap();
        let an = Analyzer::new(tc.code());
        assert_eq!(an.covering_radius_of_syndrome(&BitVector::zeros(25), 2, DEFAULT_BUDGET).unwrap(), Some(0));
        let single = tc.code().syndrome(&BitVector::unit(50, 7)).unwrap();
        assert_eq!(an.covering_radius_of_syndrome(&single, 2, DEFAULT_BUDGET).unwrap(), Some(1));
        // Two vertices two steps apart: the two-edge path touches both.
        let two = tc.code().syndrome(&straight_path(&tc, 2)).unwrap();
        assert_eq!(two.weight(), 2);
        assert_eq!(an.covering_radius_of_syndrome(&two, 2, DEFAULT_BUDGET).unwrap(), Some(1));
        assert_eq!(an.syndrome_covering_radius(&two).unwrap(), Some(1));
        // Endpoints three apart one way are two apart around the torus.
        let three = tc.code().syndrome(&straight_path(&tc, 3)).unwrap();
        assert_eq!(an.covering_radius_of_syndrome(&three, 3, DEFAULT_BUDGET).unwrap(), Some(1));
        assert_eq!(an.syndrome_covering_radius(&three).unwrap(), Some(1));
        assert_eq!(an.covering_radius_of_syndrome(&three, 1, DEFAULT_BUDGET).unwrap(), None);
    }

    #[test]
    fn unrealizable_syndrome_has_no_radius() {
        let tc = toric_code(2, 1, 3).unwrap();
        let an = Analyzer::new(tc.code());
        assert_eq!(an.syndrome_covering_radius(&BitVector::unit(9, 0)).unwrap(), None);
    }

    #[test]
    fn budget_refusal() {
        let tc = toric_code(3, 2, 3).unwrap();
        let an = Analyzer::new(tc.code());
        let err = an.reduced_error(&BitVector::zeros(81), 6, 1000).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: enumeration_size(81, 6),
                budget: 1000
            }
        );
        assert!(an.soundness_scan(4, 10).is_err());
        assert!(an.radius_scan(3, 10).is_err());
    }

    #[test]
    fn reduced_error_examples() {
        let steane = steane_code();
        let an = Analyzer::new(&steane);
        assert_eq!(an.reduced_error(&BitVector::zeros(3), 3, DEFAULT_BUDGET).unwrap(), Some(BitVector::zeros(7)));
        assert_eq!(
            an.reduced_error(&BitVector::ones(3), 3, DEFAULT_BUDGET).unwrap(),
            Some(BitVector::unit(7, 6))
        );

        let tc = toric_code(2, 1, 3).unwrap();
        let an = Analyzer::new(tc.code());
        let q = h_edge(&tc, 1, 1);
        let s = tc.code().syndrome(&BitVector::unit(18, q)).unwrap();
        assert_eq!(an.reduced_error(&s, 2, DEFAULT_BUDGET).unwrap(), Some(BitVector::unit(18, q)));
    }

    #[test]
    fn logical_basis_examples() {
        let steane = steane_code();
        let b = logical_z_basis(&steane);
        assert_eq!(b.len(), 1);
        assert!(steane.h_x().mul_vec(&b.z_basis[0]).unwrap().is_zero());
        assert!(!gf2::in_row_space(steane.h_z(), &b.z_basis[0]).unwrap());

        let tc = toric_code(2, 1, 3).unwrap();
        let b = logical_z_basis(tc.code());
        assert_eq!(b.source, BasisSource::Computed);
        let xs = [tc.logical_x(&[0, 0], &[0]).unwrap(), tc.logical_x(&[0, 0], &[1]).unwrap()];
        let pairing = BitMatrix::from_rows(
            2,
            xs.iter()
                .map(|x| BitVector::from_bools(&b.z_basis.iter().map(|z| x.dot(z)).collect::<Vec<_>>()))
                .collect(),
        );
        assert_eq!(gf2::rank(&pairing), 2);

        let trivial = CssCode::new("k0", BitMatrix::identity(4), BitMatrix::zeros(0, 4)).unwrap();
        assert!(logical_z_basis(&trivial).is_empty());
    }

    #[test]
    fn classification_examples() {
        let tc = toric_code(3, 1, 3).unwrap();
        let code = tc.code();
        for basis in [LogicalBasis::compute(code), LogicalBasis::toric(&tc)] {
            assert_eq!(classify_residual(code, &basis, &BitVector::zeros(81)).unwrap(), ResidualClass::Trivial);
            for row in code.h_x().rows().iter().take(10) {
                assert_eq!(classify_residual(code, &basis, row).unwrap(), ResidualClass::Trivial);
            }
            for dirs in tc.direction_sets() {
                let lx = tc.logical_x(&[1, 2, 0], &dirs).unwrap();
                assert_eq!(classify_residual(code, &basis, &lx).unwrap(), ResidualClass::Logical);
            }
            assert_eq!(
                classify_residual(code, &basis, &BitVector::unit(81, 0)).unwrap_err(),
                Error::NonzeroSyndrome
            );
        }
    }

    #[test]
    fn soundness_examples() {
        let tc = toric_code(2, 1, 5).unwrap();
        let an = Analyzer::new(tc.code());
        let one = an.soundness_scan(1, DEFAULT_BUDGET).unwrap();
        assert_eq!(one.min_ratio, Some(2.0));
        assert_eq!(one.strata[0].reduced_errors, 50);

        let three = an.soundness_scan(3, DEFAULT_BUDGET).unwrap();
        assert_eq!(three.min_ratio, Some(2.0 / 3.0));
        let path = straight_path(&tc, 3);
        let s = tc.code().syndrome(&path).unwrap();
        assert_eq!(s.weight(), 2);
        assert_eq!(an.reduced_error(&s, 3, DEFAULT_BUDGET).unwrap().map(|e| e.weight()), Some(2));

        assert!(matches!(an.soundness_scan(0, DEFAULT_BUDGET), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn radius_scan_single_qubits() {
        let steane = steane_code();
        let rows = Analyzer::new(&steane).radius_scan(1, DEFAULT_BUDGET).unwrap();
        assert_eq!(rows[0].errors, 7);
        assert_eq!(rows[0].max_error_radius, Some(1));
        assert_eq!(rows[0].max_syndrome_radius, Some(1));
    }

    #[test]
    fn radius_scan_toric() {
        let tc = toric_code(2, 1, 5).unwrap();
        let rows = Analyzer::new(tc.code()).radius_scan(4, DEFAULT_BUDGET).unwrap();
        let summary: Vec<_> = rows
            .iter()
            .map(|r| (r.weight, r.errors, r.undetectable, r.max_error_radius, r.max_syndrome_radius))
            .collect();
        // Weight 3: vertices three apart (an L-shaped path) force the middle
        // edge three hops out. Weight 4: the 25 plaquettes have no syndrome.
        assert_eq!(
            summary,
            vec![
                (1, 50, 0, Some(1), Some(1)),
                (2, 1225, 0, Some(1), Some(1)),
                (3, 19600, 0, Some(3), Some(3)),
                (4, 230300, 25, Some(3), Some(3)),
            ]
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn syndrome_radius_is_at_most_error_radius(support in proptest::collection::btree_set(0usize..50, 0..5)) {
            let tc = toric_code(2, 1, 5).unwrap();
            let an = Analyzer::new(tc.code());
            let x = BitVector::from_support(50, support);
            let s = tc.code().syndrome(&x).unwrap();
            // A plaquette has zero syndrome and no finite error radius.
            prop_assume!(x.is_zero() || !s.is_zero());
            let exact = an.syndrome_covering_radius(&s).unwrap().unwrap();
            let rho = an.covering_radius_of_error(&x).unwrap().unwrap();
            prop_assert!(exact <= rho);
            let brute = an.covering_radius_of_syndrome(&s, x.weight().min(3), DEFAULT_BUDGET).unwrap();
            if let Some(b) = brute {
                prop_assert!(exact <= b);
            }
        }

        #[test]
        fn classifiers_agree(coeffs in proptest::collection::vec(any::<bool>(), 34)) {
            let tc = toric_code(2, 1, 4).unwrap();
            let code = tc.code();
            let basis = LogicalBasis::compute(code);
            // Random element of Ker H_Z: combination of kernel vectors.
            let ker = gf2::kernel_basis(code.h_z());
            let mut v = BitVector::zeros(code.n());
            for (k, &c) in ker.iter().zip(&coeffs) {
                if c { v ^= k; }
            }
            prop_assert_eq!(
                classify_residual(code, &basis, &v).unwrap(),
                classify_residual_by_row_space(code, &v).unwrap()
            );
        }
    }
}
