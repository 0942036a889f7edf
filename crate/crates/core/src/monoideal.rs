//! Monomial ideals of the polynomial ring, as reduced lists of monomial
//! generators. These are the exact algorithms behind monomial-mode ideals:
//! a monomial-mode ideal of a quotient ring is represented by the monomial
//! ideal generated by its generators together with the relations.

use crate::monomial::{Monomial, VarSet};

/// Minimal generators, sorted. A list containing 1 reduces to `[1]`.
pub fn reduce(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

pub fn contains(basis: &[Monomial], m: &Monomial) -> bool {
    basis.iter().any(|g| g.divides(m))
}

/// `basis` generates a monomial ideal containing every generator of `other`.
pub fn includes(basis: &[Monomial], other: &[Monomial]) -> bool {
    other.iter().all(|m| contains(basis, m))
}

pub fn is_unit(basis: &[Monomial]) -> bool {
    basis.iter().any(Monomial::is_one)
}

/// `(I : f)` for a monomial `f`.
pub fn colon(basis: &[Monomial], f: &Monomial) -> Vec<Monomial> {
    reduce(basis.iter().map(|g| g.saturating_div(f)).collect())
}

pub fn intersect(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.lcm(y));
        }
    }
    reduce(out)
}

pub fn product(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul(y));
        }
    }
    reduce(out)
}

pub fn radical(basis: &[Monomial]) -> Vec<Monomial> {
    reduce(basis.iter().map(Monomial::squarefree_part).collect())
}

/// The ideal is prime: proper and generated by variables.
pub fn is_prime(basis: &[Monomial]) -> bool {
    basis.iter().all(|g| g.degree() == 1)
}

/// The variables generating a prime basis.
pub fn prime_support(basis: &[Monomial]) -> VarSet {
    basis.iter().map(|g| g.pairs()[0].0).collect()
}

/// Inclusion-minimal variable sets meeting every edge, sorted by mask.
/// Returns an empty list when some edge is empty.
pub fn minimal_transversals(edges: &[VarSet]) -> Vec<VarSet> {
    let mut edges: Vec<VarSet> = edges.to_vec();
    edges.sort_by_key(|e| (e.len(), e.0));
    edges.dedup();
    let mut current = vec![VarSet::empty()];
    for e in edges {
        if e.is_empty() {
            return Vec::new();
        }
        let mut next: Vec<VarSet> = Vec::new();
        for t in &current {
            if t.meets(e) {
                next.push(*t);
            } else {
                for v in e.iter() {
                    let mut u = *t;
                    u.insert(v);
                    next.push(u);
                }
            }
        }
        current = minimize(next);
    }
    current.sort_by_key(|t| t.0);
    current
}

fn minimize(mut sets: Vec<VarSet>) -> Vec<VarSet> {
    sets.sort_by_key(|s| (s.len(), s.0));
    sets.dedup();
    let mut kept: Vec<VarSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

/// Minimal primes of a monomial ideal: minimal transversals of the
/// generator supports. `None` for the unit ideal.
pub fn minimal_primes(basis: &[Monomial]) -> Option<Vec<VarSet>> {
    if is_unit(basis) {
        return None;
    }
    let edges: Vec<VarSet> = basis.iter().map(Monomial::support).collect();
    Some(minimal_transversals(&edges))
}

/// Least common multiple of all generators.
pub fn lcm_all<'a, I: IntoIterator<Item = &'a Monomial>>(gens: I) -> Monomial {
    gens.into_iter().fold(Monomial::one(), |acc, g| acc.lcm(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(p: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(p.iter().copied())
    }

    fn vs(v: &[u32]) -> VarSet {
        v.iter().copied().collect()
    }

    #[test]
    fn reduce_drops_multiples() {
        let r = reduce(vec![m(&[(0, 2)]), m(&[(0, 1)]), m(&[(1, 1), (0, 3)])]);
        assert_eq!(r, vec![m(&[(0, 1)])]);
        assert_eq!(reduce(vec![m(&[(0, 1)]), Monomial::one()]), vec![Monomial::one()]);
    }

    #[test]
    fn colon_example() {
        let c = colon(&[m(&[(0, 2), (1, 1)])], &Monomial::var(0));
        assert_eq!(c, vec![m(&[(0, 1), (1, 1)])]);
    }

    #[test]
    fn radical_example() {
        let r = radical(&[m(&[(0, 2), (1, 1)]), m(&[(2, 3)])]);
        assert_eq!(r, vec![Monomial::var(2), m(&[(0, 1), (1, 1)])]);
    }

    #[test]
    fn transversals() {
        let t = minimal_primes(&[m(&[(0, 1), (1, 1)]), m(&[(0, 1), (2, 1)])]).unwrap();
        assert_eq!(t, vec![vs(&[0]), vs(&[1, 2])]);
        assert_eq!(minimal_primes(&[]).unwrap(), vec![VarSet::empty()]);
        assert_eq!(minimal_primes(&[m(&[(0, 2)])]).unwrap(), vec![vs(&[0])]);
        assert!(minimal_primes(&[Monomial::one()]).is_none());
    }

    fn brute_transversals(edges: &[VarSet], n: u32) -> Vec<VarSet> {
        let hits = |s: VarSet| edges.iter().all(|e| e.meets(s));
        let mut out: Vec<VarSet> = (0u64..(1 << n))
            .map(VarSet)
            .filter(|&s| hits(s))
            .filter(|&s| s.iter().all(|v| !hits(VarSet(s.0 & !(1 << v)))))
            .collect();
        out.sort_by_key(|t| t.0);
        out
    }

    proptest! {
        #[test]
        fn transversals_match_subset_enumeration(raw in proptest::collection::vec(1u64..64, 0..6)) {
            let edges: Vec<VarSet> = raw.into_iter().map(VarSet).collect();
            prop_assert_eq!(minimal_transversals(&edges), brute_transversals(&edges, 6));
        }

        #[test]
        fn intersection_membership(
            a in proptest::collection::vec(proptest::collection::vec(0u32..3, 3), 1..4),
            b in proptest::collection::vec(proptest::collection::vec(0u32..3, 3), 1..4),
            probe in proptest::collection::vec(0u32..5, 3),
        ) {
            let a = reduce(a.iter().map(|d| Monomial::from_dense(d)).collect());
            let b = reduce(b.iter().map(|d| Monomial::from_dense(d)).collect());
            let p = Monomial::from_dense(&probe);
            let i = intersect(&a, &b);
            prop_assert_eq!(contains(&i, &p), contains(&a, &p) && contains(&b, &p));
        }
    }
}
