//! Brute-force reference implementations used to validate the optimized
//! ideal and assassin algorithms. They work from definitions: exhaustive
//! multiplier enumeration with exact elimination, rewriting in the quotient
//! by an ideal, and enumeration of variable subsets.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::element::Element;
use crate::error::Result;
use crate::ideal::Ideal;
use crate::linalg::{kernel_basis, SparseVec};
use crate::monomial::{Monomial, VarSet};
use crate::ring::{Coeff, RewriteRule, Ring, RingPresentation};
use crate::spectrum::{MonomialPrime, PrimeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes,
    NoUpToBound,
}

/// Row echelon form keyed by the smallest monomial of each row, kept
/// separate from the solver used by the engine.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<Monomial, BTreeMap<Monomial, Coeff>>,
}

impl Echelon {
    fn reduce(&self, mut v: BTreeMap<Monomial, Coeff>) -> BTreeMap<Monomial, Coeff> {
        let mut cursor: Option<Monomial> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next().cloned(),
                Some(c) => v
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .next()
                    .map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                let c = v[&k].clone();
                for (m, d) in row {
                    let e = v.entry(m.clone()).or_insert_with(Coeff::zero);
                    *e -= &c * d;
                    if e.is_zero() {
                        v.remove(m);
                    }
                }
            }
            cursor = Some(k);
        }
        v
    }

    fn insert(&mut self, v: BTreeMap<Monomial, Coeff>) {
        let v = self.reduce(v);
        let Some((pivot, c)) = v.iter().next().map(|(m, c)| (m.clone(), c.clone())) else {
            return;
        };
        let row = v.into_iter().map(|(m, d)| (m, d / &c)).collect();
        self.rows.insert(pivot, row);
    }
}

/// `f ∈ I`, searching all multiplier monomials of degree at most `bound`
/// in every variable, normal or not.
pub fn brute_force_membership(f: &Element, ideal: &Ideal, bound: u32) -> Result<OracleAnswer> {
    f.ring().ensure_same(ideal.ring())?;
    if f.is_zero() {
        return Ok(OracleAnswer::Yes);
    }
    let span = OracleSpan::new(ideal, bound)?;
    Ok(if span.contains(f) {
        OracleAnswer::Yes
    } else {
        OracleAnswer::NoUpToBound
    })
}

/// The span of all products `u * g` with `g` a generator and `u` any
/// monomial of degree at most the bound.
pub struct OracleSpan {
    echelon: Echelon,
}

impl OracleSpan {
    pub fn new(ideal: &Ideal, bound: u32) -> Result<Self> {
        let ring = ideal.ring();
        let mut echelon = Echelon::default();
        for u in Monomial::all_up_to(ring.num_vars(), bound) {
            let ue = Element::monomial(ring, &u)?;
            for g in ideal.generators() {
                let p = ue.mul(g)?;
                if !p.is_zero() {
                    echelon.insert(p.terms().clone());
                }
            }
        }
        Ok(OracleSpan { echelon })
    }

    pub fn contains(&self, f: &Element) -> bool {
        self.echelon.reduce(f.terms().clone()).is_empty()
    }
}

/// Quotient ring `R / I` for an ideal generated by monomials, presented by
/// adding a zero rule for every generator. A monomial lies in `I` iff its
/// normal form there vanishes.
pub struct QuotientRewriter {
    /// `None` for the unit ideal.
    ring: Option<RingPresentation>,
}

impl QuotientRewriter {
    pub fn new(ideal: &Ideal) -> Result<Self> {
        let base = ideal.ring();
        let monos = ideal
            .generator_monomials()
            .expect("quotient rewriting needs monomial generators");
        if monos.iter().any(Monomial::is_one) {
            return Ok(QuotientRewriter { ring: None });
        }
        let mut rules: Vec<RewriteRule> = base.rules().to_vec();
        for m in monos {
            if !rules.iter().any(|r| r.lhs == m) {
                rules.push(RewriteRule::to_zero(m));
            }
        }
        Ok(QuotientRewriter {
            ring: Some(RingPresentation::new(base.num_vars(), rules)?),
        })
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        match &self.ring {
            None => Ok(true),
            Some(r) => Ok(r.reduce(Coeff::from_integer(1.into()), m.clone())?.is_none()),
        }
    }
}

/// Variable sets whose ideal contains the relations and the generators of
/// `b`.
fn primes_over(b: &Ideal) -> Vec<VarSet> {
    let ring = b.ring();
    let mut gens = b.generator_monomials().expect("monomial generators");
    gens.extend(ring.zero_lhs().cloned());
    (0u64..(1u64 << ring.num_vars()))
        .map(VarSet)
        .filter(|&p| gens.iter().all(|g| in_prime(g, p)))
        .collect()
}

/// Monomials `g` of degree at most `degree` with `g f ∈ I`.
pub fn brute_colon_monomials(ideal: &Ideal, f: &Monomial, degree: u32) -> Result<BTreeSet<Monomial>> {
    let span = OracleSpan::new(ideal, degree + f.degree())?;
    let ring = ideal.ring();
    let mut out = BTreeSet::new();
    for g in Monomial::all_up_to(ring.num_vars(), degree) {
        let p = Element::monomial(ring, &g.mul(f))?;
        if p.is_zero() || span.contains(&p) {
            out.insert(g);
        }
    }
    Ok(out)
}

/// All products of `n` generators (with repetition).
fn generator_products(gens: &[Monomial], n: u32) -> Vec<Monomial> {
    let mut out = vec![(0usize, Monomial::one())];
    for _ in 0..n {
        let mut next = Vec::new();
        for (start, m) in &out {
            for (i, g) in gens.iter().enumerate().skip(*start) {
                next.push((i, m.mul(g)));
            }
        }
        out = next;
    }
    out.into_iter().map(|(_, m)| m).collect()
}

/// Monomials `m` of degree at most `degree` with `J^n m ⊆ I` for some
/// `n ≤ n_max`.
pub fn brute_saturation_monomials(
    ideal: &Ideal,
    j: &Ideal,
    degree: u32,
    n_max: u32,
) -> Result<BTreeSet<Monomial>> {
    let q = QuotientRewriter::new(ideal)?;
    let jg = j.generator_monomials().expect("monomial generators");
    let products: Vec<Vec<Monomial>> = (0..=n_max).map(|n| generator_products(&jg, n)).collect();
    let mut out = BTreeSet::new();
    for m in Monomial::all_up_to(ideal.ring().num_vars(), degree) {
        let mut hit = false;
        for ps in &products {
            let mut all = true;
            for p in ps {
                if !q.contains(&p.mul(&m))? {
                    all = false;
                    break;
                }
            }
            if all {
                hit = true;
                break;
            }
        }
        if hit {
            out.insert(m);
        }
    }
    Ok(out)
}

/// Monomials of degree at most `degree` some power `f^k`, `k ≤ k_max`, of
/// which lies in `I`.
pub fn brute_radical_monomials(ideal: &Ideal, degree: u32, k_max: u32) -> Result<BTreeSet<Monomial>> {
    let q = QuotientRewriter::new(ideal)?;
    let mut out = BTreeSet::new();
    for m in Monomial::all_up_to(ideal.ring().num_vars(), degree) {
        for k in 1..=k_max {
            if q.contains(&m.pow(k))? {
                out.insert(m);
                break;
            }
        }
    }
    Ok(out)
}

/// `m ∈ ⟨P⟩` for the ideal generated by the variables in `P`.
fn in_prime(m: &Monomial, p: VarSet) -> bool {
    m.support().meets(p)
}

/// Minimal variable subsets `P` such that `⟨P⟩` contains the generators and
/// the relations, by enumerating all subsets.
pub fn brute_minimal_primes(ideal: &Ideal) -> Result<Option<PrimeSet>> {
    let ring = ideal.ring();
    let n = ring.num_vars();
    let mut gens = ideal.generator_monomials().expect("monomial generators");
    if gens.iter().any(Monomial::is_one) {
        return Ok(None);
    }
    gens.extend(ring.zero_lhs().cloned());
    let contains_all = |p: VarSet| gens.iter().all(|g| in_prime(g, p));
    let mut out = PrimeSet::new();
    for mask in 0u64..(1u64 << n) {
        let p = VarSet(mask);
        if !contains_all(p) {
            continue;
        }
        let minimal = p.iter().all(|v| !contains_all(VarSet(mask & !(1u64 << v))));
        if minimal {
            out.insert(MonomialPrime::new(p));
        }
    }
    Ok(Some(out))
}

/// Assassin and weak assassin of `R/b` from monomial witnesses up to
/// `witness_degree`, comparing each annihilator with every monomial prime on
/// all monomials up to `compare_degree`.
pub fn brute_assassins(b: &Ideal, witness_degree: u32, compare_degree: u32) -> Result<(PrimeSet, PrimeSet)> {
    let ring = b.ring();
    let n = ring.num_vars();
    let q = QuotientRewriter::new(b)?;
    let probes = Monomial::all_up_to(n, compare_degree);
    let candidates = primes_over(b);
    let mut ass = PrimeSet::new();
    let mut assf = PrimeSet::new();
    for w in Monomial::all_up_to(n, witness_degree) {
        if q.contains(&w)? {
            continue;
        }
        let mut ann = Vec::with_capacity(probes.len());
        for u in &probes {
            ann.push(q.contains(&u.mul(&w))?);
        }
        let equal = |p: VarSet| probes.iter().zip(&ann).all(|(u, &a)| a == in_prime(u, p));
        let above = |p: VarSet| probes.iter().zip(&ann).all(|(u, &a)| !a || in_prime(u, p));
        for &p in &candidates {
            if equal(p) {
                ass.insert(MonomialPrime::new(p));
            }
            if above(p) && p.iter().all(|v| !above(VarSet(p.0 & !(1u64 << v)))) {
                assf.insert(MonomialPrime::new(p));
            }
        }
    }
    Ok((ass, assf))
}

/// Assassin and weak assassin of `R/b` over all elements whose coefficients
/// are 0 or 1 on the standard monomials of degree at most `degree` outside
/// `b`. Requires `R/b` to be finite dimensional.
pub fn element_witness_assassins(b: &Ideal, degree: u32) -> Result<(PrimeSet, PrimeSet)> {
    let ring = b.ring();
    let n = ring.num_vars();
    let q = QuotientRewriter::new(b)?;
    // monomial basis of R/b
    let mut basis = Vec::new();
    let mut d = 0;
    loop {
        let layer: Vec<Monomial> = Monomial::all_up_to(n, d)
            .into_iter()
            .filter(|m| m.degree() == d)
            .collect();
        let mut any = false;
        for m in layer {
            if !q.contains(&m)? {
                basis.push(m);
                any = true;
            }
        }
        if !any {
            break;
        }
        d += 1;
    }
    let support: Vec<&Monomial> = basis.iter().filter(|m| m.degree() <= degree).collect();
    assert!(support.len() <= 16, "too many witness monomials for element enumeration");
    let candidates = primes_over(b);
    let prime_dim = |p: VarSet| basis.iter().filter(|m| in_prime(m, p)).count();
    let reduce = |e: &Element| -> Result<SparseVec<Monomial>> {
        let mut v = SparseVec::new();
        for (m, c) in e.terms() {
            if !q.contains(m)? {
                v.insert(m.clone(), c.clone());
            }
        }
        Ok(v)
    };
    let mut ass = PrimeSet::new();
    let mut assf = PrimeSet::new();
    for mask in 1u32..(1u32 << support.len()) {
        let terms = (0..support.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| (Coeff::from_integer(1.into()), support[i].clone()));
        let x = Element::from_terms(ring, terms)?;
        let images = basis
            .iter()
            .map(|u| reduce(&x.mul_monomial(u)?))
            .collect::<Result<Vec<_>>>()?;
        // annihilator of x in R/b as combinations of basis monomials
        let kernel: Vec<BTreeMap<Monomial, Coeff>> = kernel_basis(&images)
            .into_iter()
            .map(|c| c.into_iter().map(|(j, a)| (basis[j].clone(), a)).collect())
            .collect();
        let inside = |p: VarSet| kernel.iter().all(|v| v.keys().all(|m| in_prime(m, p)));
        for &p in &candidates {
            if inside(p) && kernel.len() == prime_dim(p) {
                ass.insert(MonomialPrime::new(p));
            }
            let smaller = |v: u32| VarSet(p.0 & !(1u64 << v));
            if inside(p) && p.iter().all(|v| !(candidates.contains(&smaller(v)) && inside(smaller(v)))) {
                assf.insert(MonomialPrime::new(p));
            }
        }
    }
    Ok((ass, assf))
}

/// Normal forms reached from `m` along every rewriting path, for checking
/// confluence on samples.
pub fn exhaustive_normal_forms(ring: &Ring, m: &Monomial) -> BTreeSet<String> {
    crate::ring::all_normal_forms(ring, m)
}
