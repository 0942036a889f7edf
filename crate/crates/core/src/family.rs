//! Truncations of indexed families at concrete levels, and queries whose
//! values are tracked across a schedule of levels.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monoideal;
use crate::monomial::Monomial;
use crate::pattern::{Env, FamilySpec, PowerCache, Scope, LEVEL_PARAMETER};
use crate::ring::{check_local_confluence, ConfluenceReport, Ring};

/// Degree up to which critical pairs are checked at instantiation.
pub const CONFLUENCE_DEGREE: u32 = 8;
/// Largest number of variables a level may have.
pub const MAX_LEVEL_VARS: u32 = 16;

/// A family truncated at level `N`: variables `X_0..X_N`.
#[derive(Debug)]
pub struct Level {
    pub level: u32,
    pub ring: Ring,
    pub ideals: BTreeMap<String, Ideal>,
    pub confluence: ConfluenceReport,
    powers: RefCell<PowerCache>,
}

impl Level {
    pub fn ideal(&self, name: &str) -> Result<&Ideal> {
        self.ideals
            .get(name)
            .ok_or_else(|| Error::Pattern(format!("family has no ideal `{name}`")))
    }

    /// `name^n`, cached.
    pub fn power(&self, name: &str, n: u32) -> Result<Ideal> {
        let base = self.ideal(name)?;
        self.powers.borrow_mut().power(name, base, n)
    }

    pub fn num_vars(&self) -> u32 {
        self.ring.num_vars()
    }

    pub fn monomial(&self, m: &Monomial) -> Result<Element> {
        self.ring.normal_form(m)
    }
}

/// Certifies `raw` over every critical pair, whatever its degree.
pub fn certify_all_pairs(raw: &Ring) -> Result<Ring> {
    let rules = raw.presentation().rules();
    let max_overlap = rules
        .iter()
        .flat_map(|a| rules.iter().map(move |b| a.lhs.lcm(&b.lhs).degree()))
        .max()
        .unwrap_or(0);
    Ok(raw.certify(max_overlap.max(CONFLUENCE_DEGREE))?.0)
}

/// Expands every template at level `n`, checks local confluence up to
/// [`CONFLUENCE_DEGREE`], and certifies the ring over all critical pairs.
pub fn instantiate(spec: &FamilySpec, n: u32) -> Result<Level> {
    let env: Env = [(LEVEL_PARAMETER.to_string(), i64::from(n))].into_iter().collect();
    let num_vars = spec.ring.num_vars(&env)?;
    if num_vars > MAX_LEVEL_VARS {
        return Err(Error::TooManyVariables {
            requested: num_vars,
            max: MAX_LEVEL_VARS,
        });
    }
    let raw = spec.ring.instantiate(&env)?;
    let confluence = check_local_confluence(raw.presentation(), CONFLUENCE_DEGREE);
    let ring = certify_all_pairs(&raw)?;
    let mut ideals = BTreeMap::new();
    let mut powers = PowerCache::default();
    for d in &spec.ideals {
        let mut scope = Scope {
            ring: &ring,
            var: &spec.ring.var,
            ideals: &ideals,
            powers: &mut powers,
        };
        let ideal = scope.instantiate_ideal(&d.body, &env)?;
        ideals.insert(d.name.clone(), ideal);
    }
    Ok(Level {
        level: n,
        ring,
        ideals,
        confluence,
        powers: RefCell::new(powers),
    })
}

/// Strictly increasing levels; stability is judged on the last `window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    levels: Vec<u32>,
    window: usize,
}

pub const DEFAULT_LEVELS: (u32, u32) = (4, 10);
pub const DEFAULT_WINDOW: usize = 3;

impl Schedule {
    pub fn new(levels: Vec<u32>, window: usize) -> Result<Self> {
        if window < 2 {
            return Err(Error::InvalidSchedule(format!("window {window} is smaller than 2")));
        }
        if levels.is_empty() {
            return Err(Error::InvalidSchedule("no levels".into()));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSchedule("levels must be strictly increasing".into()));
        }
        if window > levels.len() {
            return Err(Error::InvalidSchedule(format!(
                "window {window} exceeds the {} scheduled levels",
                levels.len()
            )));
        }
        Ok(Schedule { levels, window })
    }

    /// Levels `lo..=hi`.
    pub fn range(lo: u32, hi: u32, window: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidSchedule(format!("empty range {lo}..{hi}")));
        }
        Self::new((lo..=hi).collect(), window)
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn window(&self) -> usize {
        self.window
    }
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule::range(DEFAULT_LEVELS.0, DEFAULT_LEVELS.1, DEFAULT_WINDOW).expect("valid default")
    }
}

/// True iff the last `window` values agree.
pub fn is_stable<T: PartialEq>(values: &[T], window: usize) -> bool {
    values.len() >= window && values[values.len() - window..].windows(2).all(|w| w[0] == w[1])
}

/// Evaluates `f` on every scheduled level, in parallel, in level order.
pub fn map_levels<T, F>(spec: &FamilySpec, schedule: &Schedule, f: F) -> Result<Vec<(u32, T)>>
where
    T: Send,
    F: Fn(&Level) -> Result<T> + Sync,
{
    schedule
        .levels
        .par_iter()
        .map(|&n| {
            let level = instantiate(spec, n)?;
            Ok((n, f(&level)?))
        })
        .collect()
}

/// A closed question evaluated at every level of a schedule.
pub struct StabilizationQuery<'a, T> {
    pub family: &'a FamilySpec,
    pub schedule: Schedule,
    pub query: &'a (dyn Fn(&Level) -> Result<T> + Sync),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilized<T> {
    /// Value at the last level.
    pub value: T,
    pub evidence: Vec<(u32, T)>,
    pub stable: bool,
}

pub fn stable_query<T>(q: &StabilizationQuery<'_, T>) -> Result<Stabilized<T>>
where
    T: Clone + PartialEq + Send,
{
    let evidence = map_levels(q.family, &q.schedule, q.query)?;
    let values: Vec<&T> = evidence.iter().map(|(_, v)| v).collect();
    let stable = is_stable(&values, q.schedule.window);
    let value = evidence.last().expect("nonempty schedule").1.clone();
    Ok(Stabilized {
        value,
        evidence,
        stable,
    })
}

/// Whether `f * a^n ⊆ target`, for monomial-mode ideals, by tracking the
/// products of `f` with generators that stay outside `target`.
pub fn power_multiple_contained(a: &Ideal, f: &Monomial, n: u32, target: &Ideal) -> Result<bool> {
    a.ring().ensure_same(target.ring())?;
    let gens = a.require_monomial("power containment")?.to_vec();
    target.require_monomial("power containment")?;
    let full = target.full_basis().expect("monomial mode");
    let mut outside: BTreeSet<Monomial> = BTreeSet::new();
    if !monoideal::contains(&full, f) {
        outside.insert(f.clone());
    }
    for _ in 0..n {
        if outside.is_empty() {
            break;
        }
        let mut next = BTreeSet::new();
        for m in &outside {
            for g in &gens {
                let p = m.mul(g);
                if !monoideal::contains(&full, &p) {
                    next.insert(p);
                }
            }
        }
        outside = next;
    }
    Ok(outside.is_empty())
}
