//! Ring elements: normal-form linear combinations of monomials with exact
//! rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::monomial::Monomial;
use crate::ring::{Coeff, Ring};

#[derive(Clone, Debug)]
pub struct Element {
    ring: Ring,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Element {
    pub fn zero(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Coeff::one())
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        Self::from_normal_terms(ring, [(Monomial::one(), c)])
    }

    /// Builds an element from terms already in normal form. Zero
    /// coefficients are dropped and repeated monomials are summed.
    pub(crate) fn from_normal_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut e = Self::zero(ring);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    /// Normal form of `m`.
    pub fn monomial(ring: &Ring, m: &Monomial) -> Result<Self> {
        ring.normal_form(m)
    }

    /// Normal form of `sum c * m` over arbitrary (not necessarily normal)
    /// monomials.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Coeff, Monomial)>,
    {
        let mut e = Self::zero(ring);
        for (c, m) in terms {
            if let Some((c, m)) = ring.reduce(c, m)? {
                e.add_term(m, c);
            }
        }
        Ok(e)
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.single_term()
            .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.single_term().is_some_and(|(m, _)| m.is_one())
    }

    pub fn single_term(&self) -> Option<(&Monomial, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The monomial of a single-term element, ignoring its coefficient.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        self.single_term().map(|(m, _)| m)
    }

    /// Largest monomial with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.ring.ensure_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Coeff::one())
    }

    pub fn scale(&self, c: &Coeff) -> Element {
        if c.is_zero() {
            return Element::zero(&self.ring);
        }
        Element {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d * c))
                .collect(),
        }
    }

    /// Multiplies by a monomial and renormalizes.
    pub fn mul_monomial(&self, m: &Monomial) -> Result<Element> {
        let mut out = Element::zero(&self.ring);
        for (t, c) in &self.terms {
            if let Some((c, t)) = self.ring.reduce(c.clone(), t.mul(m))? {
                out.add_term(t, c);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.ring.ensure_same(&other.ring)?;
        let mut out = Element::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((c, m)) = self.ring.reduce(c1 * c2, m1.mul(m2))? {
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Element> {
        let mut out = Element::one(&self.ring);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Element {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Re-reduces every term. The identity on elements built through this
    /// API.
    pub fn renormalize(&self) -> Result<Element> {
        Element::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, c)| (c.clone(), m.clone())),
        )
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}
