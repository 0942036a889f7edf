//! Exponent vectors over indexed variables.
//!
//! A [`Monomial`] stores only its nonzero exponents, sorted by variable
//! index. Monomials are ordered graded-lexicographically: first by total
//! degree, then by the sorted `(variable, exponent)` list. That order is used
//! for canonical printing and as the key order of every map in the crate.

use std::cmp::Ordering;
use std::fmt;

/// Largest number of variables a ring may declare. Variable sets are kept
/// as 64-bit masks.
pub const MAX_VARS: u32 = 64;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    /// The unit monomial `1`.
    pub fn one() -> Self {
        Self { exps: Vec::new() }
    }

    pub fn var(index: u32) -> Self {
        Self::var_pow(index, 1)
    }

    pub fn var_pow(index: u32, exp: u32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Self {
                exps: vec![(index, exp)],
            }
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs; repeated
    /// variables are multiplied together and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut exps: Vec<(u32, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Self { exps: merged }
    }

    /// Builds a monomial from a dense exponent vector indexed by variable.
    pub fn from_dense(dense: &[u32]) -> Self {
        Self {
            exps: dense
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (v as u32, e))
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: u32) -> u32 {
        match self.exps.binary_search_by_key(&var, |&(v, _)| v) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        self.exps.last().map(|&(v, _)| v)
    }

    pub fn support(&self) -> VarSet {
        VarSet::from_iter(self.exps.iter().map(|&(v, _)| v))
    }

    /// Single variable with exponent one.
    pub fn as_variable(&self) -> Option<u32> {
        match self.exps.as_slice() {
            [(v, 1)] => Some(*v),
            _ => None,
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e == 1)
    }

    /// Product of the variables in the support.
    pub fn squarefree_part(&self) -> Monomial {
        Self {
            exps: self.exps.iter().map(|&(v, _)| (v, 1)).collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    pub fn pow(&self, n: u32) -> Monomial {
        if n == 0 {
            return Self::one();
        }
        Self {
            exps: self.exps.iter().map(|&(v, e)| (v, e * n)).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge(other, u32::min)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        let mut it = other.exps.iter().peekable();
        'outer: for &(v, e) in &self.exps {
            while let Some(&&(ov, oe)) = it.peek() {
                match ov.cmp(&v) {
                    Ordering::Less => {
                        it.next();
                    }
                    Ordering::Equal => {
                        if oe < e {
                            return false;
                        }
                        it.next();
                        continue 'outer;
                    }
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(self.saturating_div(other))
    }

    /// Exponentwise `max(0, a - b)`, i.e. `self / gcd(self, other)`.
    pub fn saturating_div(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .filter_map(|&(v, e)| {
                let d = e.saturating_sub(other.exponent(v));
                (d > 0).then_some((v, d))
            })
            .collect();
        Self { exps }
    }

    fn merge(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, e) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, f(a[i - 1].1, 0))
            } else if i == a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, f(0, b[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, f(a[i - 1].1, b[j - 1].1))
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        Self { exps: out }
    }

    /// All monomials dividing `bound` (exponentwise below it) of total degree
    /// at most `max_degree`, in graded order.
    pub fn divisors_up_to(bound: &Monomial, max_degree: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        for &(v, e) in &bound.exps {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for m in &out {
                let d = m.degree();
                for k in 0..=e {
                    if d + k > max_degree {
                        break;
                    }
                    next.push(m.mul(&Monomial::var_pow(v, k)));
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Every monomial in variables `0..num_vars` of total degree at most
    /// `max_degree`, in graded order.
    pub fn all_up_to(num_vars: u32, max_degree: u32) -> Vec<Monomial> {
        let bound = Monomial::from_pairs((0..num_vars).map(|v| (v, max_degree)));
        Self::divisors_up_to(&bound, max_degree)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "X{v}")?;
            } else {
                write!(f, "X{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A set of variable indices below [`MAX_VARS`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(pub u64);

impl VarSet {
    pub fn empty() -> Self {
        VarSet(0)
    }

    pub fn insert(&mut self, v: u32) {
        debug_assert!(v < MAX_VARS);
        self.0 |= 1u64 << v;
    }

    pub fn contains(self, v: u32) -> bool {
        v < MAX_VARS && self.0 & (1u64 << v) != 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn meets(self, other: VarSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        (0..MAX_VARS).filter(move |&v| self.contains(v))
    }
}

impl FromIterator<u32> for VarSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut s = VarSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn unit_and_degree() {
        assert!(Monomial::one().is_one());
        assert_eq!(Monomial::one().degree(), 0);
        assert_eq!(m(&[(0, 2), (3, 1)]).degree(), 3);
        assert_eq!(m(&[(1, 0)]), Monomial::one());
    }

    #[test]
    fn from_pairs_merges_repeats() {
        assert_eq!(m(&[(1, 1), (0, 1), (1, 2)]), m(&[(0, 1), (1, 3)]));
    }

    #[test]
    fn divisibility_and_quotients() {
        let a = m(&[(0, 2), (1, 1)]);
        let b = m(&[(0, 1)]);
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.checked_div(&b), Some(m(&[(0, 1), (1, 1)])));
        assert_eq!(b.checked_div(&a), None);
        assert_eq!(a.saturating_div(&m(&[(0, 3), (2, 1)])), m(&[(1, 1)]));
        assert!(Monomial::one().divides(&a));
        assert!(!m(&[(2, 1)]).divides(&a));
    }

    #[test]
    fn lcm_gcd() {
        let a = m(&[(0, 2), (1, 1)]);
        let b = m(&[(0, 1), (2, 3)]);
        assert_eq!(a.lcm(&b), m(&[(0, 2), (1, 1), (2, 3)]));
        assert_eq!(a.gcd(&b), m(&[(0, 1)]));
    }

    #[test]
    fn graded_order() {
        let x0 = Monomial::var(0);
        let x1 = Monomial::var(1);
        let x0x1 = x0.mul(&x1);
        let x2cube = Monomial::var_pow(2, 3);
        assert!(x0 < x1);
        assert!(x1 < x0x1);
        assert!(x0x1 < x2cube);
        assert!(Monomial::one() < x0);
    }

    #[test]
    fn printing() {
        assert_eq!(Monomial::one().to_string(), "1");
        assert_eq!(m(&[(0, 1), (2, 3)]).to_string(), "X0*X2^3");
    }

    #[test]
    fn enumeration_counts() {
        // C(n + d, d) monomials of degree <= d in n variables
        assert_eq!(Monomial::all_up_to(4, 6).len(), 210);
        assert_eq!(Monomial::all_up_to(2, 3).len(), 10);
        let divs = Monomial::divisors_up_to(&m(&[(0, 2), (1, 1)]), 10);
        assert_eq!(divs.len(), 6);
        assert_eq!(Monomial::divisors_up_to(&m(&[(0, 2), (1, 1)]), 1).len(), 3);
    }

    #[test]
    fn varset_ops() {
        let s: VarSet = [0, 3].into_iter().collect();
        assert!(s.contains(3));
        assert!(!s.contains(1));
        assert_eq!(s.len(), 2);
        assert!(VarSet::from_iter([3]).is_subset(s));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3]);
    }
}
