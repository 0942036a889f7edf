//! Shipped example families with windowed claims: finite statements
//! checked at every level of a schedule, whose values must hold and be
//! stable across the final window.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::family::{is_stable, map_levels, power_multiple_contained, Level, Schedule, CONFLUENCE_DEGREE};
use crate::ideal::{Bounds, Ideal, Verdict};
use crate::monoideal;
use crate::monomial::Monomial;
use crate::pattern::FamilySpec;
use crate::report::ReportNode;

/// A finite statement about one level.
#[derive(Clone, Copy)]
pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    pub check: fn(&Level) -> Result<bool>,
}

#[derive(Clone)]
pub struct Example {
    pub tag: &'static str,
    pub summary: &'static str,
    /// Family body in template syntax.
    pub source: &'static str,
    pub claims: Vec<Claim>,
}

impl Example {
    pub fn family(&self) -> FamilySpec {
        FamilySpec::parse(self.tag, self.source).expect("shipped family parses")
    }
}

fn x(i: u32) -> Monomial {
    Monomial::var(i)
}

fn top(l: &Level) -> u32 {
    l.num_vars() - 1
}

fn member(i: &Ideal, m: &Monomial) -> Result<bool> {
    let f = i.ring().normal_form(m)?;
    Ok(i.membership(&f, 0)?.verdict.is_yes())
}

fn squarefree(vars: impl IntoIterator<Item = u32>) -> Monomial {
    Monomial::from_pairs(vars.into_iter().map(|v| (v, 1)))
}

/// `x_i * x_i = x_i` and `x_i * (1 - x_i) = 0` for the given indices.
fn idempotent_vars(l: &Level, from: u32) -> Result<bool> {
    let one = Element::one(&l.ring);
    for i in from..=top(l) {
        let xi = l.ring.var(i)?;
        if xi.mul(&xi)? != xi || !xi.mul(&one.sub(&xi)?)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ideal_is_idempotent(l: &Level) -> Result<bool> {
    let a = l.ideal("a")?;
    Ok(a.product(a)?.equals(a, 0)? == Verdict::Yes)
}

// idem50A

fn idem_a_generators(l: &Level) -> Result<bool> {
    idempotent_vars(l, 0)
}

// idem50B

fn idem_b_squares(l: &Level) -> Result<bool> {
    let n = top(l);
    for i in 0..n {
        if l.monomial(&Monomial::var_pow(i, 2))?.as_monomial() != Some(&x(i + 1)) {
            return Ok(false);
        }
        if i + 2 <= n && l.monomial(&Monomial::var_pow(i, 4))?.as_monomial() != Some(&x(i + 2)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn idem_b_square_contains(l: &Level) -> Result<bool> {
    let a2 = l.power("a", 2)?;
    for i in 1..=top(l) {
        if !member(&a2, &x(i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

// idem50C

fn idem_c_colon_in_a(l: &Level) -> Result<bool> {
    let b = l.ideal("b")?;
    let a = l.ideal("a")?;
    let j = b.colon(&l.ring.var(0)?, &Bounds::default())?;
    Ok(j.is_exact() && a.includes(&j, 0)? == Verdict::Yes)
}

/// For `p + 1 <= N` and every standard monomial `g` in `X_0..X_p` with
/// `X_0`-degree at most `p`: `g` outside `b` implies `g * X_{p+1}` outside
/// `b`, and multiplication by `X_{p+1}` is injective on these monomials, so
/// no cancellation can occur.
fn idem_c_annihilator(l: &Level) -> Result<bool> {
    let b = l.ideal("b")?;
    let full = b.full_basis().ok_or(Error::NotMonomialMode { op: "claim" })?;
    let n = top(l);
    for p in 0..n {
        let fresh = x(p + 1);
        let mut images = std::collections::BTreeSet::new();
        let mut count = 0usize;
        for e0 in 0..=p {
            for mask in 0u32..(1 << p) {
                let g = Monomial::var_pow(0, e0).mul(&squarefree((1..=p).filter(|v| mask >> (v - 1) & 1 == 1)));
                if monoideal::contains(&full, &g) {
                    continue;
                }
                let image = l.monomial(&g.mul(&fresh))?;
                let Some(m) = image.as_monomial() else {
                    return Ok(false);
                };
                if monoideal::contains(&full, m) {
                    return Ok(false);
                }
                images.insert(m.clone());
                count += 1;
            }
        }
        if images.len() != count {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(b : X_0) ⊆ a`, every `X_i` with `i >= 1` satisfies `X_i (1 - X_i) = 0`
/// and `1 - X_i` lies outside `a`: a prime inside `a` must then contain every
/// `X_i`, so `a` is minimal over `(b : X_0)`.
fn idem_c_minimal(l: &Level) -> Result<bool> {
    if !idem_c_colon_in_a(l)? || !idempotent_vars(l, 1)? {
        return Ok(false);
    }
    let a = l.ideal("a")?;
    let one = Element::one(&l.ring);
    for i in 1..=top(l) {
        let f = one.sub(&l.ring.var(i)?)?;
        if a.membership(&f, 0)?.verdict != Verdict::No {
            return Ok(false);
        }
    }
    Ok(true)
}

// nil40A

/// `X_1 ... X_n` lies in `a^n` and is nonzero for `1 <= n <= N - 1`.
fn nil_a_ring_probe(l: &Level) -> Result<bool> {
    let n = top(l);
    for k in 1..n {
        let probe = squarefree(1..=k);
        if l.monomial(&probe)?.is_zero() || !member(&l.power("a", k)?, &probe)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X_i * a^i ⊆ b` for `i <= N - 2`.
fn nil_a_quotient_torsion(l: &Level) -> Result<bool> {
    let (a, b) = (l.ideal("a")?, l.ideal("b")?);
    for i in 0..=top(l).saturating_sub(2) {
        if !power_multiple_contained(a, &x(i), i, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X_n ... X_{2n-1}` lies in `a^n` but not in `b` for `2n - 1 <= N`.
fn nil_a_quotient_probe(l: &Level) -> Result<bool> {
    let b = l.ideal("b")?;
    for k in 1..=top(l).div_ceil(2) {
        let probe = squarefree(k..=2 * k - 1);
        if !member(&l.power("a", k)?, &probe)? || member(b, &probe)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X_0 ... X_N` is a nonzero normal form at level `N`.
fn nil_a_not_nilpotent(l: &Level) -> Result<bool> {
    Ok(!l.monomial(&squarefree(0..=top(l)))?.is_zero())
}

// nil40B / nil40C

fn generators_killed(l: &Level, bound: fn(u32) -> u32) -> Result<bool> {
    let a = l.ideal("a")?;
    let zero = Ideal::zero(&l.ring);
    for i in 0..=top(l) {
        if !power_multiple_contained(a, &x(i), bound(i), &zero)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn nil_b_generators(l: &Level) -> Result<bool> {
    generators_killed(l, |i| i)
}

/// `X_n^n` is a nonzero element of `a^n` for `1 <= n <= N - 1`.
fn nil_b_probe(l: &Level) -> Result<bool> {
    for k in 1..top(l) {
        let probe = Monomial::var_pow(k, k);
        if l.monomial(&probe)?.is_zero() || !member(&l.power("a", k)?, &probe)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn nil_c_generators(l: &Level) -> Result<bool> {
    generators_killed(l, |i| i + 1)
}

/// `X_{n-1} ... X_{2n-2}` is a nonzero element of `a^n` for `2n - 2 <= N`.
fn nil_c_probe(l: &Level) -> Result<bool> {
    for k in 1..=top(l) / 2 + 1 {
        let probe = squarefree(k - 1..=2 * k - 2);
        if l.monomial(&probe)?.is_zero() || !member(&l.power("a", k)?, &probe)? {
            return Ok(false);
        }
    }
    Ok(true)
}

// nil40D

fn standard_up_to_degree_3(l: &Level) -> Vec<Monomial> {
    Monomial::all_up_to(l.num_vars(), 3)
        .into_iter()
        .filter(|m| l.ring.is_standard(m))
        .collect()
}

/// For `1 <= n <= k <= N` and standard `g` of degree at most 3 in variables
/// below `k`: `X_k^n * g` is nonzero.
fn nil_d_ring_probe(l: &Level) -> Result<bool> {
    let gs = standard_up_to_degree_3(l);
    for k in 1..=top(l) {
        for n in 1..=k {
            let p = Monomial::var_pow(k, n);
            for g in gs.iter().filter(|g| g.max_var().is_none_or(|v| v < k)) {
                if l.monomial(&p.mul(g))?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// For `1 <= n <= k <= N` and standard `g` of degree at most 3:
/// `X_k^n * g = 0` iff `X_k^(k+1-n)` divides `g`.
fn nil_d_divisibility(l: &Level) -> Result<bool> {
    let gs = standard_up_to_degree_3(l);
    for k in 1..=top(l) {
        for n in 1..=k {
            let p = Monomial::var_pow(k, n);
            let d = Monomial::var_pow(k, k + 1 - n);
            for g in &gs {
                if l.monomial(&p.mul(g))?.is_zero() != d.divides(g) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `X_i * a^i ⊆ b` for `1 <= i <= N`.
fn nil_d_quotient_torsion(l: &Level) -> Result<bool> {
    let (a, b) = (l.ideal("a")?, l.ideal("b")?);
    for i in 1..=top(l) {
        if !power_multiple_contained(a, &x(i), i, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X_N^n`, a product of `n` generators, is nonzero and outside `b` for
/// `1 <= n <= N`.
fn nil_d_quotient_probe(l: &Level) -> Result<bool> {
    let b = l.ideal("b")?;
    let n = top(l);
    for k in 1..=n {
        let probe = Monomial::var_pow(n, k);
        if l.monomial(&probe)?.is_zero() || member(b, &probe)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn registry() -> Vec<Example> {
    vec![
        Example {
            tag: "idem50A",
            summary: "idempotent generators X_i^2 = X_i on every variable",
            source: "ring vars X[0..N] rules { X[i]^2 -> X[i] for i in 0..N }\n\
                     ideal a = < X[i] for i in 0..N >",
            claims: vec![
                Claim {
                    id: "idempotent_generators",
                    description: "every X_i satisfies X_i^2 = X_i and X_i(1 - X_i) = 0",
                    check: idem_a_generators,
                },
                Claim {
                    id: "idempotent_ideal",
                    description: "a^2 = a",
                    check: ideal_is_idempotent,
                },
            ],
        },
        Example {
            tag: "idem50B",
            summary: "square-root chain X_i^2 = X_{i+1} on indices 0..N",
            source: "ring vars X[0..N] rules { X[i]^2 -> X[i + 1] for i in 0..N - 1 }\n\
                     ideal a = < X[i] for i in 0..N >",
            claims: vec![
                Claim {
                    id: "square_rewrites",
                    description: "X_i^2 rewrites to X_{i+1} and X_i^4 to X_{i+2}",
                    check: idem_b_squares,
                },
                Claim {
                    id: "generators_in_square",
                    description: "X_i lies in a^2 for 1 <= i <= N",
                    check: idem_b_square_contains,
                },
            ],
        },
        Example {
            tag: "idem50C",
            summary: "idempotents X_i (i >= 1) with b generated by X_0^i X_i",
            source: "ring vars X[0..N] rules { X[i]^2 -> X[i] for i in 1..N }\n\
                     ideal a = < X[i] for i in 1..N >\n\
                     ideal b = < X[0]^i*X[i] for i in 1..N >",
            claims: vec![
                Claim {
                    id: "colon_by_x0_inside_a",
                    description: "(b : X_0) is computed exactly and is contained in a",
                    check: idem_c_colon_in_a,
                },
                Claim {
                    id: "annihilator_of_a_trivial_windowed",
                    description: "for p + 1 <= N, multiplication by X_{p+1} maps monomials of X_0-degree <= p \
                                  outside b injectively outside b, so only elements of b are killed by a into b",
                    check: idem_c_annihilator,
                },
                Claim {
                    id: "a_minimal_over_colon",
                    description: "(b : X_0) is inside a, X_i(1 - X_i) = 0 and 1 - X_i is outside a for i >= 1",
                    check: idem_c_minimal,
                },
                Claim {
                    id: "idempotent_ideal",
                    description: "a^2 = a",
                    check: ideal_is_idempotent,
                },
            ],
        },
        Example {
            tag: "nil40A",
            summary: "square-zero variables with b = sum of X_i a^i",
            source: "ring vars X[0..N] rules { X[i]^2 -> 0 for i in 0..N }\n\
                     ideal a = < X[i] for i in 0..N >\n\
                     ideal b = < X[i]*a^i for i in 0..N >",
            claims: vec![
                Claim {
                    id: "ring_torsion_vanishes_probe",
                    description: "for n <= N - 1 the probe X_1...X_n is a nonzero element of a^n, so 1 is not killed by a^n",
                    check: nil_a_ring_probe,
                },
                Claim {
                    id: "quotient_torsion_contains_a",
                    description: "X_i a^i is contained in b for i <= N - 2",
                    check: nil_a_quotient_torsion,
                },
                Claim {
                    id: "quotient_torsion_excludes_one_probe",
                    description: "for 2n - 1 <= N the probe X_n...X_{2n-1} lies in a^n but not in b",
                    check: nil_a_quotient_probe,
                },
                Claim {
                    id: "not_nilpotent_windowed",
                    description: "X_0...X_N is nonzero at level N",
                    check: nil_a_not_nilpotent,
                },
            ],
        },
        Example {
            tag: "nil40B",
            summary: "X_i X_j = 0 for i != j and X_i^(i+1) = 0",
            source: "ring vars X[0..N] rules { X[i]*X[j] -> 0 for i, j in 0..N if i < j; X[i]^(i + 1) -> 0 for i in 0..N }\n\
                     ideal a = < X[i] for i in 0..N >",
            claims: vec![
                Claim {
                    id: "generators_are_torsion",
                    description: "X_i a^i = 0 for every i",
                    check: nil_b_generators,
                },
                Claim {
                    id: "one_not_torsion_probe",
                    description: "for n <= N - 1 the probe X_n^n is a nonzero element of a^n",
                    check: nil_b_probe,
                },
            ],
        },
        Example {
            tag: "nil40C",
            summary: "X_i^2 = 0 and X_i X_j = 0 for 2i < j",
            source: "ring vars X[0..N] rules { X[i]^2 -> 0 for i in 0..N; X[i]*X[j] -> 0 for i, j in 0..N if 2*i < j }\n\
                     ideal a = < X[i] for i in 0..N >",
            claims: vec![
                Claim {
                    id: "generators_are_torsion",
                    description: "X_i a^(i+1) = 0 for every i",
                    check: nil_c_generators,
                },
                Claim {
                    id: "one_not_torsion_probe",
                    description: "for 2n - 2 <= N the probe X_{n-1}...X_{2n-2} is a nonzero element of a^n",
                    check: nil_c_probe,
                },
            ],
        },
        Example {
            tag: "nil40D",
            summary: "X_i^(i+1) = 0 with b generated by X_i X_j for i != j",
            source: "ring vars X[0..N] rules { X[i]^(i + 1) -> 0 for i in 0..N }\n\
                     ideal a = < X[i] for i in 0..N >\n\
                     ideal b = < X[i]*X[j] for i, j in 0..N if i != j >",
            claims: vec![
                Claim {
                    id: "ring_torsion_vanishes_probe",
                    description: "X_k^n g is nonzero for n <= k and standard g of degree <= 3 in variables below k",
                    check: nil_d_ring_probe,
                },
                Claim {
                    id: "annihilation_forces_divisibility",
                    description: "for n <= k and standard g of degree <= 3, X_k^n g = 0 iff X_k^(k+1-n) divides g",
                    check: nil_d_divisibility,
                },
                Claim {
                    id: "quotient_torsion_contains_a",
                    description: "X_i a^i is contained in b for 1 <= i <= N",
                    check: nil_d_quotient_torsion,
                },
                Claim {
                    id: "quotient_torsion_excludes_one_probe",
                    description: "X_N^n is nonzero and outside b for n <= N",
                    check: nil_d_quotient_probe,
                },
            ],
        },
    ]
}

pub fn tags() -> Vec<&'static str> {
    registry().iter().map(|e| e.tag).collect()
}

pub fn example(tag: &str) -> Result<Example> {
    registry()
        .into_iter()
        .find(|e| e.tag == tag)
        .ok_or_else(|| Error::UnknownTag(tag.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelConfluence {
    pub level: u32,
    pub checked_pairs: usize,
    pub non_joinable: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub id: String,
    pub description: String,
    pub evidence: Vec<(u32, bool)>,
    pub stable: bool,
}

impl ClaimReport {
    pub fn pass(&self) -> bool {
        self.stable && self.evidence.iter().all(|(_, v)| *v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleReport {
    pub tag: String,
    pub summary: String,
    pub family: Vec<String>,
    pub schedule: Schedule,
    pub confluence: Vec<LevelConfluence>,
    pub claims: Vec<ClaimReport>,
}

impl ExampleReport {
    pub fn confluent(&self) -> bool {
        self.confluence.iter().all(|c| c.non_joinable == 0)
    }

    pub fn pass(&self) -> bool {
        self.confluent() && self.claims.iter().all(ClaimReport::pass)
    }

    pub fn to_report(&self) -> ReportNode {
        let confluence = self
            .confluence
            .iter()
            .map(|c| {
                ReportNode::map()
                    .with("level", c.level)
                    .with("checked_pairs", c.checked_pairs)
                    .with("non_joinable", c.non_joinable)
                    .with("above_degree_bound", c.skipped)
            })
            .collect::<Vec<_>>();
        let claims = self
            .claims
            .iter()
            .map(|c| {
                let evidence: Vec<String> = c
                    .evidence
                    .iter()
                    .map(|(n, v)| format!("{n}:{}", if *v { "true" } else { "false" }))
                    .collect();
                ReportNode::map()
                    .with("id", c.id.as_str())
                    .with("description", c.description.as_str())
                    .with("evidence", evidence.join(" "))
                    .with("stable", c.stable)
                    .with("status", if c.pass() { "PASS" } else { "FAIL" })
            })
            .collect::<Vec<_>>();
        ReportNode::map()
            .with("tag", self.tag.as_str())
            .with("summary", self.summary.as_str())
            .with("family", ReportNode::list(self.family.iter().map(String::as_str)))
            .with(
                "levels",
                ReportNode::list(self.schedule.levels().iter().copied()),
            )
            .with("window", self.schedule.window())
            .with("confluence_degree", CONFLUENCE_DEGREE)
            .with("confluence", confluence)
            .with("claims", claims)
            .with("status", if self.pass() { "PASS" } else { "FAIL" })
    }
}

/// Runs the claims of `example` on `spec` (normally the example's own
/// family) at every scheduled level.
pub fn replicate_family(example: &Example, spec: &FamilySpec, schedule: &Schedule) -> Result<ExampleReport> {
    let per_level = map_levels(spec, schedule, |l| {
        let values = example
            .claims
            .iter()
            .map(|c| (c.check)(l))
            .collect::<Result<Vec<bool>>>()?;
        let conf = LevelConfluence {
            level: l.level,
            checked_pairs: l.confluence.pairs.len(),
            non_joinable: l.confluence.non_joinable(),
            skipped: l.confluence.skipped,
        };
        Ok((conf, values))
    })?;
    let claims = example
        .claims
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let evidence: Vec<(u32, bool)> = per_level.iter().map(|(n, (_, v))| (*n, v[k])).collect();
            let values: Vec<bool> = evidence.iter().map(|(_, v)| *v).collect();
            ClaimReport {
                id: c.id.to_string(),
                description: c.description.to_string(),
                stable: is_stable(&values, schedule.window()),
                evidence,
            }
        })
        .collect();
    Ok(ExampleReport {
        tag: example.tag.to_string(),
        summary: example.summary.to_string(),
        family: spec.body_lines(),
        schedule: schedule.clone(),
        confluence: per_level.into_iter().map(|(_, (c, _))| c).collect(),
        claims,
    })
}

pub fn replicate_example(tag: &str, schedule: &Schedule) -> Result<ExampleReport> {
    let ex = example(tag)?;
    replicate_family(&ex, &ex.family(), schedule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::instantiate;

    #[test]
    fn unknown_tag() {
        assert!(matches!(
            replicate_example("nil40E", &Schedule::default()),
            Err(Error::UnknownTag(_))
        ));
    }

    #[test]
    fn families_parse_and_print() {
        for ex in registry() {
            let spec = ex.family();
            let printed = spec.body_lines().join("\n");
            assert_eq!(FamilySpec::parse(ex.tag, &printed).unwrap(), spec, "{}", ex.tag);
        }
    }

    #[test]
    fn idem50c_level_two() {
        let l = instantiate(&example("idem50C").unwrap().family(), 2).unwrap();
        assert_eq!(l.ring.rules().len(), 2);
        assert_eq!(l.ideal("b").unwrap().to_string(), "ideal(X0*X1, X0^2*X2)");
    }

    #[test]
    fn nil40a_level_three() {
        let l = instantiate(&example("nil40A").unwrap().family(), 3).unwrap();
        assert_eq!(l.num_vars(), 4);
        assert_eq!(l.ideal("a").unwrap().generators().len(), 4);
        assert_eq!(l.ideal("b").unwrap().to_string(), "ideal(X0, X1*X2, X1*X3)");
    }

    #[test]
    fn every_family_at_level_zero() {
        for ex in registry() {
            let l = instantiate(&ex.family(), 0).unwrap();
            assert_eq!(l.num_vars(), 1);
            assert_eq!(l.confluence.non_joinable(), 0);
        }
    }
}
