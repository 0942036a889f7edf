//! Agreement of the engine with the brute-force oracles on random
//! monomial-mode instances.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harness::{generate_instance, RingKind};
use crate::ideal::{Bounds, Ideal};
use crate::monoideal;
use crate::monomial::Monomial;
use crate::oracle::{
    brute_assassins, brute_colon_monomials, brute_minimal_primes, brute_radical_monomials,
    brute_saturation_monomials, element_witness_assassins, QuotientRewriter,
};
use crate::spectrum::{assassins, default_witness_degree, PrimeSet};

/// Largest quotient, in basis monomials, handed to the element oracle.
const ELEMENT_ORACLE_BASIS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub instance: usize,
    pub operation: String,
    pub module: String,
}

#[derive(Clone, Debug, Default)]
pub struct CrossCheckReport {
    pub instances: usize,
    /// Comparisons made, by operation.
    pub comparisons: std::collections::BTreeMap<String, usize>,
    pub disagreements: Vec<Disagreement>,
}

impl CrossCheckReport {
    pub fn total(&self) -> usize {
        self.comparisons.values().sum()
    }
}

fn engine_members(i: &Ideal, degree: u32) -> BTreeSet<Monomial> {
    let full = i.full_basis().expect("monomial mode");
    Monomial::all_up_to(i.ring().num_vars(), degree)
        .into_iter()
        .filter(|m| monoideal::contains(&full, m))
        .collect()
}

/// `R/b` has at most [`ELEMENT_ORACLE_BASIS`] basis monomials.
fn small_quotient(b: &Ideal) -> Result<bool> {
    let q = QuotientRewriter::new(b)?;
    let mut count = 0;
    for m in Monomial::all_up_to(b.ring().num_vars(), ELEMENT_ORACLE_BASIS as u32) {
        if !q.contains(&m)? {
            count += 1;
        }
    }
    Ok(count <= ELEMENT_ORACLE_BASIS)
}

/// Compares colon, saturation, radical, minimal primes and assassins of one
/// module against the oracles on monomials of degree at most `degree`.
fn compare(a: &Ideal, a2: &Ideal, b: &Ideal, artinian: bool, degree: u32) -> Result<Vec<(&'static str, bool)>> {
    let bounds = Bounds::default();
    let mut out = Vec::new();
    for f in a.require_monomial("cross check")? {
        let d = degree.saturating_sub(f.degree());
        let fe = b.ring().normal_form(f)?;
        let engine = engine_members(&b.colon(&fe, &bounds)?, d);
        out.push(("colon", engine == brute_colon_monomials(b, f, d)?));
    }
    for j in [a, a2] {
        let sat = b.saturation(j, &bounds)?;
        let engine = engine_members(&sat.ideal, degree);
        let oracle = brute_saturation_monomials(b, j, degree, 2 * degree)?;
        out.push(("saturation", sat.stabilized && engine == oracle));
    }
    let engine = engine_members(&b.radical()?, degree);
    out.push(("radical", engine == brute_radical_monomials(b, degree, degree)?));
    let oracle = brute_minimal_primes(b)?;
    let engine = match b.minimal_primes() {
        Ok(ps) => Some(ps.into_iter().collect::<PrimeSet>()),
        Err(Error::UnitIdeal) => None,
        Err(e) => return Err(e),
    };
    out.push(("minimal_primes", engine == oracle));
    let asm = assassins(b, None, None)?;
    let box_degree = asm.witness_degree - 2;
    let (ass, assf) = brute_assassins(b, box_degree, box_degree.max(1))?;
    out.push(("assassin", asm.complete && asm.ass == ass));
    out.push(("weak_assassin", asm.complete && asm.assf == assf));
    if artinian && small_quotient(b)? {
        let (ass, assf) = element_witness_assassins(b, u32::MAX)?;
        out.push(("element_assassin", asm.ass == ass && asm.assf == assf));
    }
    Ok(out)
}

/// Runs the comparison on the first `instances` harness instances (from
/// `seed`) having a module whose witness box has degree at most `degree`.
pub fn oracle_equivalence(seed: u64, instances: usize, degree: u32) -> Result<CrossCheckReport> {
    let mut picked = Vec::new();
    let mut index = 0;
    while picked.len() < instances {
        let inst = generate_instance(seed, index)?;
        index += 1;
        for k in [0, 2] {
            if default_witness_degree(&inst.modules[k], None)? <= degree + 2 {
                picked.push((inst.clone(), k));
                break;
            }
        }
    }
    let results = picked
        .par_iter()
        .map(|(inst, k)| {
            let b = &inst.modules[*k];
            let r = compare(&inst.a, &inst.a2, b, inst.kind == RingKind::Artinian, degree)?;
            Ok((inst.index, b.to_string(), r))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = CrossCheckReport {
        instances: picked.len(),
        ..Default::default()
    };
    for (instance, module, r) in results {
        for (op, ok) in r {
            *report.comparisons.entry(op.to_string()).or_default() += 1;
            if !ok {
                report.disagreements.push(Disagreement {
                    instance,
                    operation: op.to_string(),
                    module: module.clone(),
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_agrees() {
        let r = oracle_equivalence(3, 10, 4).unwrap();
        assert_eq!(r.instances, 10);
        assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
        assert!(r.comparisons["radical"] == 10);
    }
}
