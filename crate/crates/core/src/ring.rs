//! Ring presentations: finitely many variables modulo a degree-decreasing
//! monomial rewrite system, together with normal forms and a critical-pair
//! confluence check.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, VarSet, MAX_VARS};

pub type Coeff = BigRational;

/// Right-hand side of a rewrite rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rhs {
    Zero,
    Term(Coeff, Monomial),
}

/// `lhs -> rhs` with `deg(rhs) < deg(lhs)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub lhs: Monomial,
    pub rhs: Rhs,
}

impl RewriteRule {
    pub fn to_zero(lhs: Monomial) -> Self {
        Self { lhs, rhs: Rhs::Zero }
    }

    pub fn to_term(lhs: Monomial, coeff: Coeff, rhs: Monomial) -> Self {
        if coeff.is_zero() {
            return Self::to_zero(lhs);
        }
        Self {
            lhs,
            rhs: Rhs::Term(coeff, rhs),
        }
    }

    fn validate(&self, num_vars: u32) -> Result<()> {
        let bad = |reason: &str| Error::InvalidRule {
            rule: self.to_string(),
            reason: reason.to_string(),
        };
        if self.lhs.is_one() {
            return Err(bad("left-hand side must not be 1"));
        }
        let mut vars: Vec<u32> = self.lhs.pairs().iter().map(|&(v, _)| v).collect();
        if let Rhs::Term(c, m) = &self.rhs {
            if c.is_zero() {
                return Err(bad("zero coefficient; use `-> 0`"));
            }
            if m.degree() >= self.lhs.degree() {
                return Err(bad("rule must strictly decrease degree"));
            }
            vars.extend(m.pairs().iter().map(|&(v, _)| v));
        }
        if let Some(&v) = vars.iter().find(|&&v| v >= num_vars) {
            return Err(Error::VariableOutOfRange { index: v, num_vars });
        }
        Ok(())
    }

    /// Rewrites `coeff * m` with this rule, assuming `lhs | m`.
    fn apply(&self, coeff: &Coeff, m: &Monomial) -> Option<(Coeff, Monomial)> {
        let q = m.checked_div(&self.lhs)?;
        match &self.rhs {
            Rhs::Zero => None,
            Rhs::Term(c, r) => Some((coeff * c, r.mul(&q))),
        }
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rhs {
            Rhs::Zero => write!(f, "{} -> 0", self.lhs),
            Rhs::Term(c, m) if c.is_one() => write!(f, "{} -> {}", self.lhs, m),
            Rhs::Term(c, m) => write!(f, "{} -> {}*{}", self.lhs, c, m),
        }
    }
}

/// A monomial with a nonzero coefficient, or zero.
pub type ScaledMonomial = Option<(Coeff, Monomial)>;

/// `K[X_0..X_{n-1}]` modulo a degree-decreasing monomial rewrite system.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    num_vars: u32,
    rules: Vec<RewriteRule>,
    confluence_checked_to: u32,
}

impl RingPresentation {
    /// Validates and stores the rules. Identical duplicate rules are merged;
    /// two different right-hand sides for the same left-hand side are
    /// rejected.
    pub fn new(num_vars: u32, rules: Vec<RewriteRule>) -> Result<Self> {
        if num_vars > MAX_VARS {
            return Err(Error::TooManyVariables {
                requested: num_vars,
                max: MAX_VARS,
            });
        }
        let mut kept: Vec<RewriteRule> = Vec::with_capacity(rules.len());
        for rule in rules {
            rule.validate(num_vars)?;
            match kept.iter().find(|r| r.lhs == rule.lhs) {
                Some(r) if r.rhs == rule.rhs => {}
                Some(r) => {
                    return Err(Error::InvalidRule {
                        rule: rule.to_string(),
                        reason: format!("left-hand side already rewritten by {r}"),
                    })
                }
                None => kept.push(rule),
            }
        }
        // leftmost-innermost: lowest variable index first, then lowest degree
        kept.sort_by(|a, b| {
            let key = |r: &RewriteRule| (r.lhs.pairs()[0].0, r.lhs.degree());
            key(a).cmp(&key(b)).then_with(|| a.lhs.cmp(&b.lhs))
        });
        let confluence_checked_to = if kept.is_empty() { u32::MAX } else { 0 };
        Ok(Self {
            num_vars,
            rules: kept,
            confluence_checked_to,
        })
    }

    /// The polynomial ring in `num_vars` variables.
    pub fn polynomial(num_vars: u32) -> Result<Self> {
        Self::new(num_vars, Vec::new())
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn confluence_checked_to(&self) -> u32 {
        self.confluence_checked_to
    }

    /// All rules rewrite to zero: the ring is a monomial quotient.
    pub fn is_monomial(&self) -> bool {
        self.rules.iter().all(|r| r.rhs == Rhs::Zero)
    }

    /// Every rule is `m -> 0` or `x^e -> x^(e-1)`. In such rings products of
    /// standard monomials are zero or a standard monomial that every factor
    /// divides, so ideals generated by monomials are spanned by the standard
    /// monomials divisible by a generator.
    pub fn is_monomial_closed(&self) -> bool {
        self.rules.iter().all(|r| match &r.rhs {
            Rhs::Zero => true,
            Rhs::Term(c, m) => {
                c.is_one()
                    && matches!(r.lhs.pairs(), [(v, e)] if *e >= 2 && *m == Monomial::var_pow(*v, e - 1))
            }
        })
    }

    /// Variables occurring in some rule.
    pub fn rule_variables(&self) -> VarSet {
        let mut s = VarSet::empty();
        for r in &self.rules {
            s = s.union(r.lhs.support());
            if let Rhs::Term(_, m) = &r.rhs {
                s = s.union(m.support());
            }
        }
        s
    }

    /// Left-hand sides of the rules that rewrite to zero.
    pub fn zero_lhs(&self) -> impl Iterator<Item = &Monomial> {
        self.rules
            .iter()
            .filter(|r| r.rhs == Rhs::Zero)
            .map(|r| &r.lhs)
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        match m.max_var() {
            Some(v) if v >= self.num_vars => Err(Error::VariableOutOfRange {
                index: v,
                num_vars: self.num_vars,
            }),
            _ => Ok(()),
        }
    }

    /// True when no rule applies to `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.rules.iter().any(|r| r.lhs.divides(m))
    }

    /// Normal form of `coeff * m` under the deterministic strategy, with the
    /// lazy divergence check whenever `m` lies above the certified degree.
    pub fn reduce(&self, coeff: Coeff, m: Monomial) -> Result<ScaledMonomial> {
        self.check_monomial(&m)?;
        let deg = m.degree();
        let first = self.reduce_with(coeff.clone(), m.clone(), Strategy::First);
        if deg > self.confluence_checked_to && deg >= 2 {
            let last = self.reduce_with(coeff, m.clone(), Strategy::Last);
            if first != last {
                return Err(Error::NonConfluent {
                    monomial: m.to_string(),
                    left: show_scaled(&first),
                    right: show_scaled(&last),
                });
            }
        }
        Ok(first)
    }

    fn reduce_with(&self, mut coeff: Coeff, mut m: Monomial, strategy: Strategy) -> ScaledMonomial {
        loop {
            let rule = match strategy {
                Strategy::First => self.rules.iter().find(|r| r.lhs.divides(&m)),
                Strategy::Last => self.rules.iter().rev().find(|r| r.lhs.divides(&m)),
            };
            match rule {
                None => return Some((coeff, m)),
                Some(r) => match r.apply(&coeff, &m) {
                    None => return None,
                    Some((c, next)) => {
                        coeff = c;
                        m = next;
                    }
                },
            }
        }
    }

    /// Every one-step reduct of `coeff * m`.
    pub fn one_step_reducts(&self, coeff: &Coeff, m: &Monomial) -> Vec<ScaledMonomial> {
        self.rules
            .iter()
            .filter(|r| r.lhs.divides(m))
            .map(|r| r.apply(coeff, m))
            .collect()
    }

    fn reachable(&self, start: ScaledMonomial) -> HashSet<ScaledMonomial> {
        let mut seen = HashSet::new();
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            if !seen.insert(t.clone()) {
                continue;
            }
            if let Some((c, m)) = &t {
                stack.extend(self.one_step_reducts(c, m));
            }
        }
        seen
    }
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.rules == other.rules
    }
}

impl Eq for RingPresentation {}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K[X0..X{}]", self.num_vars.saturating_sub(1))?;
        if !self.rules.is_empty() {
            write!(f, " / {{")?;
            for (i, r) in self.rules.iter().enumerate() {
                if i > 0 {
                    write!(f, "; ")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Strategy {
    First,
    Last,
}

fn show_scaled(t: &ScaledMonomial) -> String {
    match t {
        None => "0".into(),
        Some((c, m)) if c.is_one() => m.to_string(),
        Some((c, m)) => format!("{c}*{m}"),
    }
}

/// Shared handle to a ring presentation. Two handles are equal when they
/// point to the same presentation or to structurally equal ones.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingPresentation>);

impl Ring {
    pub fn new(presentation: RingPresentation) -> Self {
        Ring(Arc::new(presentation))
    }

    pub fn polynomial(num_vars: u32) -> Result<Self> {
        Ok(Ring::new(RingPresentation::polynomial(num_vars)?))
    }

    pub fn with_rules(num_vars: u32, rules: Vec<RewriteRule>) -> Result<Self> {
        Ok(Ring::new(RingPresentation::new(num_vars, rules)?))
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.0
    }

    /// Normal form of a monomial as an element.
    pub fn normal_form(&self, m: &Monomial) -> Result<Element> {
        let t = self.reduce(Coeff::one(), m.clone())?;
        Ok(match t {
            None => Element::zero(self),
            Some((c, m)) => Element::from_normal_terms(self, [(m, c)]),
        })
    }

    pub fn var(&self, index: u32) -> Result<Element> {
        self.normal_form(&Monomial::var(index))
    }

    pub fn same(&self, other: &Ring) -> bool {
        self == other
    }

    pub fn ensure_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Runs the critical-pair check and, when every checked pair joins,
    /// returns a handle whose presentation records the certified degree.
    pub fn certify(&self, degree_bound: u32) -> Result<(Ring, ConfluenceReport)> {
        let report = check_local_confluence(self, degree_bound);
        if let Some(bad) = report.pairs.iter().find(|p| !p.joinable) {
            return Err(Error::NonConfluent {
                monomial: bad.overlap.to_string(),
                left: show_scaled(&bad.left),
                right: show_scaled(&bad.right),
            });
        }
        let mut p = self.presentation().clone();
        p.confluence_checked_to = if report.skipped == 0 {
            u32::MAX
        } else {
            degree_bound
        };
        Ok((Ring::new(p), report))
    }
}

impl Deref for Ring {
    type Target = RingPresentation;
    fn deref(&self) -> &RingPresentation {
        &self.0
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub first_rule: usize,
    pub second_rule: usize,
    /// Least common multiple of the two left-hand sides.
    pub overlap: Monomial,
    pub left: ScaledMonomial,
    pub right: ScaledMonomial,
    pub joinable: bool,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub degree_bound: u32,
    pub pairs: Vec<CriticalPair>,
    /// Pairs whose overlap lies above the degree bound.
    pub skipped: usize,
}

impl ConfluenceReport {
    pub fn all_joinable(&self) -> bool {
        self.pairs.iter().all(|p| p.joinable)
    }

    pub fn non_joinable(&self) -> usize {
        self.pairs.iter().filter(|p| !p.joinable).count()
    }
}

/// Enumerates the critical pairs of all rule pairs whose left-hand sides
/// have an overlap (least common multiple) of degree at most
/// `degree_bound` and decides joinability by exhaustive search of the
/// reducts. Pairs above the bound are counted in `skipped`.
pub fn check_local_confluence(ring: &RingPresentation, degree_bound: u32) -> ConfluenceReport {
    let rules = ring.rules();
    let mut pairs = Vec::new();
    let mut skipped = 0;
    for i in 0..rules.len() {
        for j in (i + 1)..rules.len() {
            let overlap = rules[i].lhs.lcm(&rules[j].lhs);
            if overlap.degree() > degree_bound {
                skipped += 1;
                continue;
            }
            let one = Coeff::one();
            let left = rules[i].apply(&one, &overlap);
            let right = rules[j].apply(&one, &overlap);
            let joinable = left == right || {
                let a = ring.reachable(left.clone());
                let b = ring.reachable(right.clone());
                a.iter().any(|t| b.contains(t))
            };
            pairs.push(CriticalPair {
                first_rule: i,
                second_rule: j,
                overlap,
                left,
                right,
                joinable,
            });
        }
    }
    ConfluenceReport {
        degree_bound,
        pairs,
        skipped,
    }
}

/// All normal forms reachable from `m` by any sequence of rule
/// applications. Exponential in general; intended for small oracles.
pub fn all_normal_forms(ring: &RingPresentation, m: &Monomial) -> BTreeSet<String> {
    ring.reachable(Some((Coeff::one(), m.clone())))
        .into_iter()
        .filter(|t| match t {
            None => true,
            Some((_, m)) => ring.is_standard(m),
        })
        .map(|t| show_scaled(&t))
        .collect()
}
