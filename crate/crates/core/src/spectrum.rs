//! Monomial primes, varieties, and assassins of cyclic modules `R/b` and of
//! their submodules `c/b`, computed from monomial witnesses.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, Mode};
use crate::monoideal;
use crate::monomial::{Monomial, VarSet};

/// The ideal generated by a set of variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MonomialPrime(VarSet);

impl MonomialPrime {
    pub fn new(vars: VarSet) -> Self {
        MonomialPrime(vars)
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(vars: I) -> Self {
        MonomialPrime(vars.into_iter().collect())
    }

    pub fn vars(&self) -> VarSet {
        self.0
    }

    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().collect()
    }

    pub fn contains_var(&self, v: u32) -> bool {
        self.0.contains(v)
    }

    /// Generators as monomials.
    pub fn generators(&self) -> Vec<Monomial> {
        self.0.iter().map(Monomial::var).collect()
    }
}

/// Lexicographic on the sorted index lists.
impl Ord for MonomialPrime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl PartialOrd for MonomialPrime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "prime(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "X{v}")?;
        }
        write!(f, ")")
    }
}

pub type PrimeSet = BTreeSet<MonomialPrime>;

/// `{prime(X0), prime(X0, X1)}`.
pub fn show_primes(s: &PrimeSet) -> String {
    let items: Vec<String> = s.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// `a ⊆ p`: every generator of `a` has a variable in `p`.
pub fn in_variety(p: &MonomialPrime, a: &Ideal) -> Result<bool> {
    Ok(a.generator_supports()?.iter().all(|s| s.meets(p.0)))
}

/// Precomputed membership test for `var(a)`.
#[derive(Clone, Debug)]
pub struct Variety {
    supports: Vec<VarSet>,
}

impl Variety {
    pub fn of(a: &Ideal) -> Result<Self> {
        Ok(Variety {
            supports: a.generator_supports()?,
        })
    }

    pub fn contains(&self, p: &MonomialPrime) -> bool {
        self.supports.iter().all(|s| s.meets(p.0))
    }

    pub fn intersect(&self, s: &PrimeSet) -> PrimeSet {
        s.iter().filter(|p| self.contains(p)).copied().collect()
    }

    pub fn difference(&self, s: &PrimeSet) -> PrimeSet {
        s.iter().filter(|p| !self.contains(p)).copied().collect()
    }
}

pub fn set_intersect_variety(s: &PrimeSet, a: &Ideal) -> Result<PrimeSet> {
    Ok(Variety::of(a)?.intersect(s))
}

pub fn set_difference_variety(s: &PrimeSet, a: &Ideal) -> Result<PrimeSet> {
    Ok(Variety::of(a)?.difference(s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assassins {
    pub ass: PrimeSet,
    pub assf: PrimeSet,
    /// Every witness class was enumerated.
    pub complete: bool,
    pub witness_degree: u32,
    pub witnesses: usize,
}

/// Monomial of the polynomial ring whose divisors represent every witness
/// class: the colon `(B : m)` and membership of `m` depend only on the
/// exponents of `m` capped at those of this monomial.
fn witness_box(b: &[Monomial], c: Option<&[Monomial]>) -> Monomial {
    let l = monoideal::lcm_all(b);
    match c {
        None => l,
        Some(c) => l.lcm(&monoideal::lcm_all(c)),
    }
}

/// Witness degree used when none is requested: the degree of the witness
/// box plus 2.
pub fn default_witness_degree(b: &Ideal, within: Option<&Ideal>) -> Result<u32> {
    let fb = full(b)?;
    let fc = within.map(full).transpose()?;
    Ok(witness_box(&fb, fc.as_deref()).degree() + 2)
}

fn full(i: &Ideal) -> Result<Vec<Monomial>> {
    if i.mode() != Mode::Monomial {
        return Err(Error::NotMonomialMode { op: "assassin" });
    }
    Ok(i.full_basis().expect("monomial mode"))
}

/// Assassin and weak assassin of `c/b` (or of `R/b` when `within` is
/// `None`) from the monomial witnesses `m ∈ c \ b` of degree at most the
/// bound.
pub fn assassins(b: &Ideal, within: Option<&Ideal>, witness_degree: Option<u32>) -> Result<Assassins> {
    if let Some(c) = within {
        b.ring().ensure_same(c.ring())?;
    }
    let fb = full(b)?;
    let fc = within.map(full).transpose()?;
    let boxm = witness_box(&fb, fc.as_deref());
    let bound = match witness_degree {
        Some(d) => d,
        None => boxm.degree() + 2,
    };
    let mut ass = PrimeSet::new();
    let mut assf = PrimeSet::new();
    let mut witnesses = 0;
    for m in Monomial::divisors_up_to(&boxm, bound) {
        if monoideal::contains(&fb, &m) {
            continue;
        }
        if let Some(c) = &fc {
            if !monoideal::contains(c, &m) {
                continue;
            }
        }
        witnesses += 1;
        let j = monoideal::colon(&fb, &m);
        if monoideal::is_prime(&j) {
            ass.insert(MonomialPrime(monoideal::prime_support(&j)));
        }
        for p in monoideal::minimal_primes(&j).expect("witness outside b") {
            assf.insert(MonomialPrime(p));
        }
    }
    Ok(Assassins {
        ass,
        assf,
        complete: bound >= boxm.degree(),
        witness_degree: bound,
        witnesses,
    })
}

pub fn assassin_cyclic(b: &Ideal, witness_degree: Option<u32>) -> Result<(PrimeSet, bool)> {
    let a = assassins(b, None, witness_degree)?;
    Ok((a.ass, a.complete))
}

pub fn weak_assassin_cyclic(b: &Ideal, witness_degree: Option<u32>) -> Result<(PrimeSet, bool)> {
    let a = assassins(b, None, witness_degree)?;
    Ok((a.assf, a.complete))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RewriteRule, Ring};

    fn m(p: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(p.iter().copied())
    }

    fn id(r: &Ring, gens: &[&[(u32, u32)]]) -> Ideal {
        Ideal::from_monomials(r, &gens.iter().map(|g| m(g)).collect::<Vec<_>>()).unwrap()
    }

    fn set(s: &[&[u32]]) -> PrimeSet {
        s.iter()
            .map(|v| MonomialPrime::from_indices(v.iter().copied()))
            .collect()
    }

    #[test]
    fn variety_membership() {
        let r = Ring::polynomial(2).unwrap();
        let p0 = MonomialPrime::from_indices([0]);
        let p1 = MonomialPrime::from_indices([1]);
        assert!(in_variety(&p0, &id(&r, &[&[(0, 1), (1, 1)]])).unwrap());
        assert!(in_variety(&MonomialPrime::from_indices([]), &Ideal::zero(&r)).unwrap());
        assert!(!in_variety(&p1, &id(&r, &[&[(0, 1)]])).unwrap());
        let a = id(&r, &[&[(0, 1), (1, 1)]]);
        let s = set(&[&[0], &[1]]);
        assert_eq!(set_intersect_variety(&s, &a).unwrap(), s);
        let a0 = id(&r, &[&[(0, 1)]]);
        assert_eq!(set_intersect_variety(&set(&[&[0]]), &a0).unwrap(), set(&[&[0]]));
        assert!(set_difference_variety(&set(&[&[0]]), &a0).unwrap().is_empty());
        assert!(set_difference_variety(&PrimeSet::new(), &a0).unwrap().is_empty());
    }

    #[test]
    fn embedded_prime_example() {
        let r = Ring::polynomial(2).unwrap();
        let b = id(&r, &[&[(0, 2)], &[(0, 1), (1, 1)]]);
        let a = assassins(&b, None, None).unwrap();
        assert!(a.complete);
        assert_eq!(a.ass, set(&[&[0], &[0, 1]]));
        assert_eq!(a.assf, set(&[&[0], &[0, 1]]));
    }

    #[test]
    fn prime_quotient_and_zero_module() {
        let r = Ring::polynomial(2).unwrap();
        let p = id(&r, &[&[(0, 1)]]);
        assert_eq!(assassin_cyclic(&p, None).unwrap().0, set(&[&[0]]));
        assert!(assassin_cyclic(&Ideal::unit(&r), None).unwrap().0.is_empty());
        assert!(weak_assassin_cyclic(&Ideal::unit(&r), None).unwrap().0.is_empty());
        let r1 = Ring::polynomial(1).unwrap();
        assert_eq!(weak_assassin_cyclic(&Ideal::zero(&r1), None).unwrap().0, set(&[&[]]));
    }

    #[test]
    fn zero_prime_excluded_with_relations() {
        let r = Ring::with_rules(1, vec![RewriteRule::to_zero(Monomial::var_pow(0, 2))]).unwrap();
        let a = assassins(&Ideal::zero(&r), None, None).unwrap();
        assert_eq!(a.ass, set(&[&[0]]));
    }

    #[test]
    fn submodule_witnesses() {
        let r = Ring::polynomial(2).unwrap();
        let b = id(&r, &[&[(0, 2)], &[(0, 1), (1, 1)]]);
        let c = id(&r, &[&[(0, 1)]]);
        let a = assassins(&b, Some(&c), None).unwrap();
        assert_eq!(a.ass, set(&[&[0, 1]]));
    }

    #[test]
    fn printing_sorted() {
        let s = set(&[&[1], &[0, 1], &[0]]);
        assert_eq!(show_primes(&s), "{prime(X0), prime(X0, X1), prime(X1)}");
    }
}
