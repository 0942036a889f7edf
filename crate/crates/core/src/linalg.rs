//! Sparse exact linear algebra: incremental row echelon form over the
//! rationals with tracking of how each basis vector combines the inputs.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::ring::Coeff;

pub type SparseVec<K> = BTreeMap<K, Coeff>;

struct Pivot<K> {
    vector: SparseVec<K>,
    combination: SparseVec<usize>,
}

/// Span of a growing list of sparse vectors keyed by `K`.
pub struct SpanSolver<K: Ord + Clone> {
    pivots: BTreeMap<K, Pivot<K>>,
    inputs: usize,
}

impl<K: Ord + Clone> Default for SpanSolver<K> {
    fn default() -> Self {
        Self {
            pivots: BTreeMap::new(),
            inputs: 0,
        }
    }
}

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Coeff, x: &SparseVec<K>) {
    for (k, v) in x {
        let entry = y.entry(k.clone()).or_insert_with(Coeff::zero);
        *entry += a * v;
        if entry.is_zero() {
            y.remove(k);
        }
    }
}

impl<K: Ord + Clone> SpanSolver<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of vectors pushed so far; the next one gets this index.
    pub fn len(&self) -> usize {
        self.inputs
    }

    pub fn is_empty(&self) -> bool {
        self.inputs == 0
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the pivots. Returns the remainder and the
    /// combination of inputs that was subtracted.
    fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut used = SparseVec::new();
        let mut bound: Option<K> = None;
        loop {
            let lead = match &bound {
                None => v.keys().next_back().cloned(),
                Some(b) => v.range(..b.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(lead) = lead else { break };
            if let Some(p) = self.pivots.get(&lead) {
                let factor = -(&v[&lead] / &p.vector[&lead]);
                axpy(&mut v, &factor, &p.vector);
                axpy(&mut used, &-factor.clone(), &p.combination);
            }
            bound = Some(lead);
        }
        (v, used)
    }

    /// Adds a vector. Returns true when it increased the rank.
    pub fn push(&mut self, v: SparseVec<K>) -> bool {
        let index = self.inputs;
        self.inputs += 1;
        let (rest, used) = self.reduce(v);
        let Some(lead) = rest.keys().next_back().cloned() else {
            return false;
        };
        let mut combination = SparseVec::new();
        combination.insert(index, Coeff::from_integer(1.into()));
        axpy(&mut combination, &-Coeff::from_integer(1.into()), &used);
        self.pivots.insert(
            lead,
            Pivot {
                vector: rest,
                combination,
            },
        );
        true
    }

    /// Coefficients expressing `target` in terms of the pushed vectors, or
    /// `None` when it is outside their span.
    pub fn solve(&self, target: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let (rest, used) = self.reduce(target.clone());
        if rest.is_empty() {
            Some(used)
        } else {
            None
        }
    }

    pub fn contains(&self, target: &SparseVec<K>) -> bool {
        self.reduce(target.clone()).0.is_empty()
    }
}

/// A basis of `{c : sum_j c_j v_j = 0}` for the given vectors.
pub fn kernel_basis<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut solver = SpanSolver::new();
    let mut out = Vec::new();
    for (j, v) in vectors.iter().enumerate() {
        if let Some(c) = solver.solve(v) {
            let mut rel = SparseVec::new();
            rel.insert(j, Coeff::from_integer(1.into()));
            axpy(&mut rel, &-Coeff::from_integer(1.into()), &c);
            out.push(rel);
        }
        solver.push(v.clone());
    }
    out
}
