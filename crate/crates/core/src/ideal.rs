//! Ideals given by finite generator lists, with colon, saturation, radical
//! and minimal-prime computations.
//!
//! An ideal is *monomial-spanned* when its generators are monomials and the
//! ring is monomial-closed. Its elements are then exactly the combinations
//! of standard monomials divisible by a generator, which makes membership,
//! sums, products and intersections exact. Monomial mode is the special
//! case where every rule rewrites to zero.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{SpanSolver, SparseVec};
use crate::monoideal;
use crate::monomial::{Monomial, VarSet};
use crate::ring::{Coeff, Ring};
use crate::spectrum::MonomialPrime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Monomial,
    General,
}

/// Three-valued answer for questions that are only semi-decidable in
/// general mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            _ => Verdict::Unknown,
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Search limits for the bounded algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Degree of multiplier monomials in general-mode searches.
    pub multiplier_degree: u32,
    /// Maximal number of colon steps in a saturation chain.
    pub saturation_cap: u32,
    /// Witness degree for assassins; `None` picks the complete default.
    pub witness_degree: Option<u32>,
}

pub const DEFAULT_SATURATION_CAP: u32 = 64;

impl Default for Bounds {
    fn default() -> Self {
        Self {
            multiplier_degree: 3,
            saturation_cap: DEFAULT_SATURATION_CAP,
            witness_degree: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MembershipAnswer {
    pub verdict: Verdict,
    /// One multiplier per generator with `f = sum h_k g_k`.
    pub certificate: Option<Vec<Element>>,
    pub search_bound: u32,
}

#[derive(Clone, Debug)]
pub struct Saturation {
    pub ideal: Ideal,
    pub stabilized: bool,
    /// Number of strict increases in the chain.
    pub steps: u32,
}

#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Element>,
    mode: Mode,
    /// Reduced monomial generators when the ideal is monomial-spanned.
    monos: Option<Vec<Monomial>>,
    /// False for results of bounded searches, which may be too small.
    exact: bool,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Element>) -> Result<Ideal> {
        for g in &gens {
            ring.ensure_same(g.ring())?;
        }
        let mut gens: Vec<Element> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.monic())
            .collect();
        if gens.iter().any(Element::is_unit_constant) {
            gens = vec![Element::one(ring)];
        }
        if ring.is_monomial_closed() && gens.iter().all(|g| g.as_monomial().is_some()) {
            let monos = gens.iter().map(|g| g.as_monomial().unwrap().clone()).collect();
            return Ok(Self::from_standard_monomials(ring, monos));
        }
        gens.sort_by(|a, b| a.terms().cmp(b.terms()));
        gens.dedup();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            mode: Mode::General,
            monos: None,
            exact: true,
        })
    }

    /// Ideal generated by the normal forms of the given monomials.
    pub fn from_monomials(ring: &Ring, monos: &[Monomial]) -> Result<Ideal> {
        let gens = monos
            .iter()
            .map(|m| ring.normal_form(m))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    /// Assumes a monomial-closed ring and standard, nonzero monomials.
    fn from_standard_monomials(ring: &Ring, monos: Vec<Monomial>) -> Ideal {
        let monos = monoideal::reduce(monos);
        let gens = monos
            .iter()
            .map(|m| Element::from_normal_terms(ring, [(m.clone(), Coeff::one())]))
            .collect();
        Ideal {
            ring: ring.clone(),
            gens,
            mode: if ring.is_monomial() {
                Mode::Monomial
            } else {
                Mode::General
            },
            monos: Some(monos),
            exact: true,
        }
    }

    /// Builds from a monomial ideal of the polynomial ring that contains
    /// the zero relations; drops the relations themselves.
    fn from_full_basis(ring: &Ring, full: Vec<Monomial>) -> Ideal {
        let visible = full.into_iter().filter(|m| ring.is_standard(m)).collect();
        Self::from_standard_monomials(ring, visible)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Self::from_standard_monomials_any(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Self::from_standard_monomials_any(ring, vec![Monomial::one()])
    }

    fn from_standard_monomials_any(ring: &Ring, monos: Vec<Monomial>) -> Ideal {
        if ring.is_monomial_closed() {
            Self::from_standard_monomials(ring, monos)
        } else {
            Ideal {
                ring: ring.clone(),
                gens: monos
                    .into_iter()
                    .map(|m| Element::from_normal_terms(ring, [(m, Coeff::one())]))
                    .collect(),
                mode: Mode::General,
                monos: None,
                exact: true,
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Element] {
        &self.gens
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    fn inexact(mut self) -> Ideal {
        self.exact = false;
        self
    }

    pub fn is_monomial_spanned(&self) -> bool {
        self.monos.is_some()
    }

    /// Reduced monomial generators of a monomial-spanned ideal.
    pub fn monomial_generators(&self) -> Option<&[Monomial]> {
        self.monos.as_deref()
    }

    /// Generators as monomials, when every generator is a single term.
    pub fn generator_monomials(&self) -> Option<Vec<Monomial>> {
        self.gens.iter().map(|g| g.as_monomial().cloned()).collect()
    }

    pub fn require_monomial(&self, op: &'static str) -> Result<&[Monomial]> {
        match (&self.monos, self.mode) {
            (Some(m), Mode::Monomial) => Ok(m),
            _ => Err(Error::NotMonomialMode { op }),
        }
    }

    /// Generators together with the zero relations, reduced: the monomial
    /// ideal of the polynomial ring whose image this ideal is.
    pub fn full_basis(&self) -> Option<Vec<Monomial>> {
        let monos = self.monos.as_ref()?;
        let mut all = monos.clone();
        all.extend(self.ring.zero_lhs().cloned());
        Some(monoideal::reduce(all))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when 1 is a generator. Exact for monomial-spanned ideals.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Element::is_unit_constant)
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        self.ring.ensure_same(&other.ring)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens)?.with_exactness(self.exact && other.exact))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if self.mode == Mode::Monomial && other.mode == Mode::Monomial {
            let mut full = monoideal::product(&self.full_basis().unwrap(), &other.full_basis().unwrap());
            full.extend(self.ring.zero_lhs().cloned());
            let out = Self::from_full_basis(&self.ring, monoideal::reduce(full));
            return Ok(out.with_exactness(self.exact && other.exact));
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ok(Ideal::new(&self.ring, gens)?.with_exactness(self.exact && other.exact))
    }

    pub fn power(&self, n: u32) -> Result<Ideal> {
        let mut out = Ideal::unit(&self.ring);
        for _ in 0..n {
            out = out.product(self)?;
        }
        Ok(out)
    }

    fn with_exactness(mut self, exact: bool) -> Ideal {
        self.exact = exact;
        self
    }

    /// Membership of `f`. Exact for monomial-spanned ideals; otherwise a
    /// search over multiplier monomials of degree up to the bound that
    /// answers `Yes` with a verified certificate or `Unknown`.
    pub fn membership(&self, f: &Element, multiplier_degree_bound: u32) -> Result<MembershipAnswer> {
        self.ring.ensure_same(f.ring())?;
        if let Some(monos) = &self.monos {
            return self.span_membership(monos, f, multiplier_degree_bound);
        }
        self.search_membership(f, multiplier_degree_bound)
    }

    fn span_membership(&self, monos: &[Monomial], f: &Element, bound: u32) -> Result<MembershipAnswer> {
        let mut cert: Vec<BTreeMap<Monomial, Coeff>> = vec![BTreeMap::new(); monos.len()];
        for (m, c) in f.terms() {
            match monos.iter().position(|g| g.divides(m)) {
                None => {
                    return Ok(MembershipAnswer {
                        verdict: Verdict::No,
                        certificate: None,
                        search_bound: bound,
                    })
                }
                Some(k) => {
                    let q = m.checked_div(&monos[k]).expect("divisor");
                    *cert[k].entry(q).or_insert_with(Coeff::zero) += c;
                }
            }
        }
        let certificate = cert
            .into_iter()
            .map(|t| Element::from_terms(&self.ring, t.into_iter().map(|(m, c)| (c, m))))
            .collect::<Result<Vec<_>>>()?;
        self.checked_yes(f, certificate, bound)
    }

    fn checked_yes(&self, f: &Element, certificate: Vec<Element>, bound: u32) -> Result<MembershipAnswer> {
        let mut total = Element::zero(&self.ring);
        for (h, g) in certificate.iter().zip(&self.gens) {
            total = total.add(&h.mul(g)?)?;
        }
        assert_eq!(&total, f, "membership certificate does not reproduce the element");
        Ok(MembershipAnswer {
            verdict: Verdict::Yes,
            certificate: Some(certificate),
            search_bound: bound,
        })
    }

    fn search_membership(&self, f: &Element, bound: u32) -> Result<MembershipAnswer> {
        if f.is_zero() {
            let certificate = vec![Element::zero(&self.ring); self.gens.len()];
            return self.checked_yes(f, certificate, bound);
        }
        let target: SparseVec<Monomial> = f.terms().clone();
        let mut solver = SpanSolver::new();
        let mut columns: Vec<(usize, Monomial)> = Vec::new();
        let mut multipliers = standard_monomials_by_degree(&self.ring, bound);
        for d in 0..=bound {
            for u in multipliers.remove(&d).unwrap_or_default() {
                for (k, g) in self.gens.iter().enumerate() {
                    let p = g.mul_monomial(&u)?;
                    columns.push((k, u.clone()));
                    solver.push(p.terms().clone());
                }
            }
            if let Some(sol) = solver.solve(&target) {
                let mut cert: Vec<BTreeMap<Monomial, Coeff>> = vec![BTreeMap::new(); self.gens.len()];
                for (j, c) in sol {
                    let (k, u) = &columns[j];
                    *cert[*k].entry(u.clone()).or_insert_with(Coeff::zero) += c;
                }
                let certificate = cert
                    .into_iter()
                    .map(|t| Element::from_terms(&self.ring, t.into_iter().map(|(m, c)| (c, m))))
                    .collect::<Result<Vec<_>>>()?;
                return self.checked_yes(f, certificate, d);
            }
        }
        Ok(MembershipAnswer {
            verdict: Verdict::Unknown,
            certificate: None,
            search_bound: bound,
        })
    }

    /// `other ⊆ self`, checked generator by generator.
    pub fn includes(&self, other: &Ideal, multiplier_degree_bound: u32) -> Result<Verdict> {
        self.same_ring(other)?;
        let mut v = Verdict::Yes;
        for g in &other.gens {
            v = v.and(self.membership(g, multiplier_degree_bound)?.verdict);
            if v == Verdict::No {
                break;
            }
        }
        Ok(v)
    }

    /// Equality: reduced bases for monomial-spanned ideals, mutual
    /// inclusion otherwise.
    pub fn equals(&self, other: &Ideal, multiplier_degree_bound: u32) -> Result<Verdict> {
        self.same_ring(other)?;
        if let (Some(a), Some(b)) = (&self.monos, &other.monos) {
            return Ok(Verdict::from_bool(a == b));
        }
        Ok(self
            .includes(other, multiplier_degree_bound)?
            .and(other.includes(self, multiplier_degree_bound)?))
    }

    /// `(self : f)`. Exact for a monomial `f` when the ideal is in monomial
    /// mode, or monomial-spanned and `f` avoids the variables of the rules.
    /// Otherwise the result is the ideal generated by the standard monomials
    /// `u` of degree up to the bound with `u f` provably in the ideal, and is
    /// flagged inexact.
    pub fn colon(&self, f: &Element, bounds: &Bounds) -> Result<Ideal> {
        self.ring.ensure_same(f.ring())?;
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if let (Some(full), Some(m)) = (self.full_basis(), f.as_monomial()) {
            let exact_here = self.mode == Mode::Monomial
                || !m.support().meets(self.ring.rule_variables());
            if exact_here {
                let q = monoideal::colon(&full, m);
                return Ok(Ideal::from_full_basis(&self.ring, q).with_exactness(self.exact));
            }
        }
        self.search_colon(std::slice::from_ref(f), bounds)
    }

    fn search_colon(&self, fs: &[Element], bounds: &Bounds) -> Result<Ideal> {
        let mut found = Vec::new();
        for (_, us) in standard_monomials_by_degree(&self.ring, bounds.multiplier_degree) {
            for u in us {
                let mut ok = true;
                for f in fs {
                    let p = f.mul_monomial(&u)?;
                    if !self.membership(&p, bounds.multiplier_degree)?.verdict.is_yes() {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    found.push(self.ring.normal_form(&u)?);
                }
            }
        }
        let mut gens = self.gens.clone();
        gens.extend(found);
        Ok(Ideal::new(&self.ring, gens)?.inexact())
    }

    /// `(self : J)`, the intersection of the colons by the generators of `J`.
    pub fn colon_ideal(&self, j: &Ideal, bounds: &Bounds) -> Result<Ideal> {
        self.same_ring(j)?;
        if let (Some(full), Some(jm)) = (self.full_basis(), j.monomial_generators()) {
            let exact_here = self.mode == Mode::Monomial
                || jm
                    .iter()
                    .all(|m| !m.support().meets(self.ring.rule_variables()));
            if exact_here {
                let mut acc: Option<Vec<Monomial>> = None;
                for m in jm {
                    let q = monoideal::colon(&full, m);
                    acc = Some(match acc {
                        None => q,
                        Some(a) => monoideal::intersect(&a, &q),
                    });
                }
                let full = acc.unwrap_or_else(|| vec![Monomial::one()]);
                return Ok(Ideal::from_full_basis(&self.ring, full)
                    .with_exactness(self.exact && j.exact));
            }
        }
        if j.gens.is_empty() {
            return Ok(Ideal::unit(&self.ring));
        }
        self.search_colon(&j.gens, bounds)
    }

    /// Intersection. Requires both ideals to be monomial-spanned.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        match (self.full_basis(), other.full_basis()) {
            (Some(a), Some(b)) => Ok(Ideal::from_full_basis(&self.ring, monoideal::intersect(&a, &b))
                .with_exactness(self.exact && other.exact)),
            _ => Err(Error::NotMonomialMode { op: "intersection" }),
        }
    }

    /// The chain `I ⊆ (I:J) ⊆ ((I:J):J) ⊆ ...` up to stabilization or the
    /// cap.
    pub fn saturation(&self, j: &Ideal, bounds: &Bounds) -> Result<Saturation> {
        let mut current = self.clone();
        let mut steps = 0;
        for _ in 0..bounds.saturation_cap {
            let next = current.colon_ideal(j, bounds)?;
            if next.equals(&current, bounds.multiplier_degree)? == Verdict::Yes {
                return Ok(Saturation {
                    ideal: current,
                    stabilized: true,
                    steps,
                });
            }
            current = next;
            steps += 1;
        }
        Ok(Saturation {
            ideal: current,
            stabilized: false,
            steps,
        })
    }

    pub fn radical(&self) -> Result<Ideal> {
        self.require_monomial("radical")?;
        let full = self.full_basis().expect("monomial mode");
        Ok(Ideal::from_full_basis(&self.ring, monoideal::radical(&full)))
    }

    /// Minimal primes of the ideal, as sets of variables. In a ring with
    /// relations these contain the relations, so they are primes of the
    /// quotient.
    pub fn minimal_primes(&self) -> Result<Vec<MonomialPrime>> {
        self.require_monomial("minimal primes")?;
        let full = self.full_basis().expect("monomial mode");
        let primes = monoideal::minimal_primes(&full).ok_or(Error::UnitIdeal)?;
        let mut out: Vec<MonomialPrime> = primes.into_iter().map(MonomialPrime::new).collect();
        out.sort();
        Ok(out)
    }

    /// Supports of the generators; an ideal lies in a monomial prime `P`
    /// when each support meets `P`.
    pub fn generator_supports(&self) -> Result<Vec<VarSet>> {
        let monos = self.require_monomial("variety")?;
        Ok(monos.iter().map(Monomial::support).collect())
    }
}

/// Standard monomials of degree at most `bound`, grouped by degree.
fn standard_monomials_by_degree(ring: &Ring, bound: u32) -> BTreeMap<u32, Vec<Monomial>> {
    let mut out: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for m in Monomial::all_up_to(ring.num_vars(), bound) {
        if ring.is_standard(&m) {
            out.entry(m.degree()).or_default().push(m);
        }
    }
    out
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

impl Eq for Ideal {}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "ideal(0)");
        }
        write!(f, "ideal(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RewriteRule;
    use num_bigint::BigInt;

    fn q(n: i64) -> Coeff {
        Coeff::from_integer(BigInt::from(n))
    }

    fn m(p: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(p.iter().copied())
    }

    fn poly(n: u32) -> Ring {
        Ring::polynomial(n).unwrap()
    }

    fn nil(n: u32) -> Ring {
        Ring::with_rules(
            n,
            (0..n)
                .map(|i| RewriteRule::to_zero(Monomial::var_pow(i, 2)))
                .collect(),
        )
        .unwrap()
    }

    fn idem_c(n: u32) -> Ring {
        Ring::with_rules(
            n + 1,
            (1..=n)
                .map(|i| RewriteRule::to_term(Monomial::var_pow(i, 2), q(1), Monomial::var(i)))
                .collect(),
        )
        .unwrap()
    }

    fn id(r: &Ring, gens: &[&[(u32, u32)]]) -> Ideal {
        Ideal::from_monomials(r, &gens.iter().map(|g| m(g)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn membership_monomial() {
        let r = poly(2);
        let i = id(&r, &[&[(0, 1)]]);
        let f = r.normal_form(&m(&[(0, 1), (1, 1)])).unwrap();
        let a = i.membership(&f, 4).unwrap();
        assert_eq!(a.verdict, Verdict::Yes);
        assert!(a.certificate.is_some());
        let j = id(&r, &[&[(0, 1), (1, 1)]]);
        assert_eq!(j.membership(&r.var(1).unwrap(), 4).unwrap().verdict, Verdict::No);
    }

    #[test]
    fn membership_idem_c() {
        let r = idem_c(4);
        let b = Ideal::from_monomials(
            &r,
            &(1..=4).map(|i| m(&[(0, i), (i, 1)])).collect::<Vec<_>>(),
        )
        .unwrap();
        let f = r.normal_form(&m(&[(0, 3), (3, 1)])).unwrap();
        assert_eq!(b.membership(&f, 2).unwrap().verdict, Verdict::Yes);
    }

    #[test]
    fn sums_products_powers() {
        let r = poly(2);
        let i = id(&r, &[&[(0, 1)]]);
        assert_eq!(i.sum(&Ideal::zero(&r)).unwrap(), i);
        let p = i.product(&id(&r, &[&[(1, 1)]])).unwrap();
        assert_eq!(p.to_string(), "ideal(X0*X1)");
        let n = nil(2);
        let a = id(&n, &[&[(0, 1)], &[(1, 1)]]);
        assert_eq!(a.power(2).unwrap().to_string(), "ideal(X0*X1)");
        assert_eq!(a.power(0).unwrap().to_string(), "ideal(1)");
        assert_eq!(a.power(3).unwrap().to_string(), "ideal(0)");
    }

    #[test]
    fn colon_examples() {
        let r = poly(2);
        let i = id(&r, &[&[(0, 2), (1, 1)]]);
        let b = Bounds::default();
        let c = i.colon(&r.var(0).unwrap(), &b).unwrap();
        assert_eq!(c.to_string(), "ideal(X0*X1)");
        assert_eq!(i.colon(&Element::one(&r), &b).unwrap(), i);
        let j = id(&r, &[&[(0, 1), (1, 1)]]);
        let a = id(&r, &[&[(0, 1)], &[(1, 1)]]);
        assert_eq!(j.colon_ideal(&a, &b).unwrap(), j);
        assert_eq!(j.colon_ideal(&Ideal::unit(&r), &b).unwrap(), j);
    }

    #[test]
    fn colon_in_idem_c_lies_in_a() {
        let r = idem_c(4);
        let bideal = Ideal::from_monomials(
            &r,
            &(1..=4).map(|i| m(&[(0, i), (i, 1)])).collect::<Vec<_>>(),
        )
        .unwrap();
        let a = Ideal::from_monomials(&r, &(1..=4).map(Monomial::var).collect::<Vec<_>>()).unwrap();
        let c = bideal.colon(&r.var(0).unwrap(), &Bounds::default()).unwrap();
        assert!(c.is_exact());
        assert_eq!(a.includes(&c, 2).unwrap(), Verdict::Yes);
    }

    #[test]
    fn saturation_examples() {
        let r = poly(2);
        let i = id(&r, &[&[(0, 2), (1, 1)]]);
        let s = i.saturation(&id(&r, &[&[(0, 1)]]), &Bounds::default()).unwrap();
        assert_eq!(s.ideal.to_string(), "ideal(X1)");
        assert!(s.stabilized);
        assert_eq!(s.steps, 2);
        let s = i.saturation(&Ideal::unit(&r), &Bounds::default()).unwrap();
        assert_eq!(s.ideal, i);
        assert_eq!(s.steps, 0);
        let n = nil(4);
        let a = Ideal::from_monomials(&n, &(0..4).map(Monomial::var).collect::<Vec<_>>()).unwrap();
        let s = Ideal::zero(&n).saturation(&a, &Bounds::default()).unwrap();
        assert!(s.ideal.is_unit());
    }

    #[test]
    fn radical_examples() {
        let r = poly(3);
        assert_eq!(id(&r, &[&[(0, 2)]]).radical().unwrap().to_string(), "ideal(X0)");
        let i = id(&r, &[&[(0, 2), (1, 1)], &[(2, 3)]]);
        assert_eq!(i.radical().unwrap().to_string(), "ideal(X2, X0*X1)");
        assert!(Ideal::unit(&r).radical().unwrap().is_unit());
    }

    #[test]
    fn minimal_prime_examples() {
        let r = poly(3);
        let i = id(&r, &[&[(0, 1), (1, 1)], &[(0, 1), (2, 1)]]);
        let p: Vec<String> = i.minimal_primes().unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(p, vec!["prime(X0)", "prime(X1, X2)"]);
        let z: Vec<String> = Ideal::zero(&r).minimal_primes().unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(z, vec!["prime()"]);
        assert_eq!(Ideal::unit(&r).minimal_primes().unwrap_err(), Error::UnitIdeal);
    }

    #[test]
    fn general_mode_membership_search() {
        // X_i^2 -> X_{i+1}: X1 = X0 * X0 lies in <X0>
        let r = Ring::with_rules(
            3,
            (0..2)
                .map(|i| RewriteRule::to_term(Monomial::var_pow(i, 2), q(1), Monomial::var(i + 1)))
                .collect(),
        )
        .unwrap();
        let i = Ideal::new(&r, vec![r.var(0).unwrap()]).unwrap();
        assert_eq!(i.mode(), Mode::General);
        let ans = i.membership(&r.var(1).unwrap(), 2).unwrap();
        assert_eq!(ans.verdict, Verdict::Yes);
        assert_eq!(ans.search_bound, 1);
        let ans = i.membership(&r.var(2).unwrap(), 0).unwrap();
        assert_eq!(ans.verdict, Verdict::Unknown);
    }

    #[test]
    fn general_mode_colon_flagged() {
        let r = Ring::with_rules(
            2,
            vec![RewriteRule::to_term(Monomial::var_pow(0, 2), q(1), Monomial::var(1))],
        )
        .unwrap();
        let i = Ideal::new(&r, vec![r.var(1).unwrap()]).unwrap();
        let c = i.colon(&r.var(0).unwrap(), &Bounds::default()).unwrap();
        assert!(!c.is_exact());
        assert_eq!(c.membership(&r.var(0).unwrap(), 2).unwrap().verdict, Verdict::Yes);
    }

    #[test]
    fn not_monomial_mode_errors() {
        let r = idem_c(2);
        let i = Ideal::from_monomials(&r, &[Monomial::var(1)]).unwrap();
        assert_eq!(
            i.radical().unwrap_err(),
            Error::NotMonomialMode { op: "radical" }
        );
    }
}
