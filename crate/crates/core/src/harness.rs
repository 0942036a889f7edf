//! Seeded random instances and the per-instance property checks relating
//! torsion, assassins and the fairness verdicts.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::ideal::{Bounds, Ideal};
use crate::monomial::Monomial;
use crate::report::ReportNode;
use crate::ring::{RewriteRule, Ring};
use crate::spectrum::{assassins, show_primes, PrimeSet, Variety};
use crate::torsion::{
    evaluate, gamma_large_cyclic, gamma_small_cyclic, is_bounded_small_torsion, torsion, FairnessReport,
    ModuleAssassins,
};

pub const DEFAULT_INSTANCES: usize = 500;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Polynomial,
    /// Every variable has a nilpotency relation.
    Artinian,
    /// Some variables have relations.
    Partial,
}

impl RingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RingKind::Polynomial => "polynomial",
            RingKind::Artinian => "artinian",
            RingKind::Partial => "partial",
        }
    }
}

/// One random test case: a ring, two ideals `a`, `a2` and a list of modules
/// `R/b`. The second module contains the first.
#[derive(Clone, Debug)]
pub struct Instance {
    pub index: usize,
    pub kind: RingKind,
    pub ring: Ring,
    pub a: Ideal,
    pub a2: Ideal,
    pub modules: Vec<Ideal>,
}

fn random_monomial(rng: &mut ChaCha8Rng, n: u32, max_degree: u32) -> Monomial {
    let d = rng.gen_range(1..=max_degree);
    Monomial::from_pairs((0..d).map(|_| (rng.gen_range(0..n), 1)))
}

fn random_ideal(rng: &mut ChaCha8Rng, ring: &Ring, min: usize, max: usize) -> Result<Ideal> {
    let k = rng.gen_range(min..=max);
    let gens: Vec<Monomial> = (0..k)
        .map(|_| random_monomial(rng, ring.num_vars(), 4))
        .collect();
    Ideal::from_monomials(ring, &gens)
}

/// Deterministic in `(seed, index)`.
pub fn generate_instance(seed: u64, index: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let n = rng.gen_range(1..=4u32);
    let kind = match rng.gen_range(0..10) {
        0..=2 => RingKind::Polynomial,
        3..=6 => RingKind::Artinian,
        _ => RingKind::Partial,
    };
    let mut rules = Vec::new();
    if kind != RingKind::Polynomial {
        for i in 0..n {
            if kind == RingKind::Artinian || rng.gen_bool(0.5) {
                rules.push(RewriteRule::to_zero(Monomial::var_pow(i, rng.gen_range(2..=4))));
            }
        }
        for _ in 0..rng.gen_range(0..=2) {
            let m = random_monomial(&mut rng, n, 4);
            if m.degree() >= 2 && !rules.iter().any(|r: &RewriteRule| r.lhs == m) {
                rules.push(RewriteRule::to_zero(m));
            }
        }
    }
    let ring = Ring::with_rules(n, rules)?;
    let a = if rng.gen_range(0..20) == 0 {
        Ideal::unit(&ring)
    } else {
        random_ideal(&mut rng, &ring, 1, 3)?
    };
    let a2 = random_ideal(&mut rng, &ring, 1, 2)?;
    let b = random_ideal(&mut rng, &ring, 0, 4)?;
    let c = b.sum(&random_ideal(&mut rng, &ring, 1, 2)?)?;
    let b3 = random_ideal(&mut rng, &ring, 0, 3)?;
    Ok(Instance {
        index,
        kind,
        ring,
        a,
        a2,
        modules: vec![b, c, b3],
    })
}

/// DSL text reproducing one `(a, b)` pair.
pub fn reproduction_script(ring: &Ring, a: &Ideal, b: &Ideal) -> String {
    let mut s = format!("ring R = vars X[0..{}]", ring.num_vars() - 1);
    if !ring.rules().is_empty() {
        let rules: Vec<String> = ring.rules().iter().map(|r| r.to_string()).collect();
        s.push_str(&format!(" rules {{ {} }}", rules.join("; ")));
    }
    s.push('\n');
    for (name, i) in [("a", a), ("b", b)] {
        let gens: Vec<String> = i.generators().iter().map(|g| g.to_string()).collect();
        let body = if gens.is_empty() { "0".to_string() } else { gens.join(", ") };
        s.push_str(&format!("ideal {name} = < {body} >\n"));
    }
    s.push_str("check fairness(a; b)\n");
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub instance: usize,
    pub property: String,
    pub detail: String,
    pub script: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceOutcome {
    pub checks: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
}

struct Checker<'a> {
    inst: &'a Instance,
    out: InstanceOutcome,
}

impl Checker<'_> {
    fn check(&mut self, property: &str, ok: bool, a: &Ideal, b: &Ideal, detail: impl FnOnce() -> String) {
        *self.out.checks.entry(property.to_string()).or_insert(0) += 1;
        if !ok {
            self.out.violations.push(Violation {
                instance: self.inst.index,
                property: property.to_string(),
                detail: detail(),
                script: reproduction_script(&self.inst.ring, a, b),
            });
        }
    }
}

fn subset(a: &PrimeSet, b: &PrimeSet) -> bool {
    a.is_subset(b)
}

fn pair(l: &PrimeSet, r: &PrimeSet) -> String {
    format!("{} vs {}", show_primes(l), show_primes(r))
}

/// Runs every property on one instance.
pub fn check_instance(inst: &Instance, bounds: &Bounds) -> Result<InstanceOutcome> {
    let mut ck = Checker {
        inst,
        out: InstanceOutcome::default(),
    };
    let mut centred_ok = BTreeMap::new();
    let sum = inst.a.sum(&inst.a2)?;
    for (name, a) in [("a", &inst.a), ("a2", &inst.a2), ("a+a2", &sum)] {
        let mut all_ok = true;
        for b in &inst.modules {
            let rep = fairness_data(a, b, bounds)?;
            all_ok &= rep.centred_witness_ok && rep.half_centred_witness_ok;
            if name == "a" {
                module_properties(&mut ck, a, b, &rep, bounds)?;
            }
        }
        centred_ok.insert(name, all_ok);
    }
    if centred_ok["a"] && centred_ok["a2"] {
        ck.check("centredness_closed_under_sums", centred_ok["a+a2"], &sum, &inst.modules[0], || {
            "centredness witnesses fail for a + a2".into()
        });
    }
    sequence_properties(&mut ck, &inst.modules[0], &inst.modules[1], bounds)?;
    Ok(ck.out)
}

fn fairness_data(a: &Ideal, b: &Ideal, bounds: &Bounds) -> Result<FairnessReport> {
    let t = torsion(b, a, bounds)?;
    let asm = ModuleAssassins::compute(b, &t, bounds.witness_degree)?;
    evaluate(a, b, t, asm)
}

fn module_properties(ck: &mut Checker, a: &Ideal, b: &Ideal, rep: &FairnessReport, bounds: &Bounds) -> Result<()> {
    let v = Variety::of(a)?;
    let asm = &rep.assassins;
    let t = &rep.torsion;
    let (ass, assf) = (&asm.module.ass, &asm.module.assf);
    let ass_in = v.intersect(ass);
    let assf_in = v.intersect(assf);
    let ass_out = v.difference(ass);
    let assf_out = v.difference(assf);
    let g = &t.gamma_small;
    let gb = &t.gamma_large;

    ck.check("complete", rep.complete, a, b, || "incomplete computation".into());
    let chain = g.includes(b, 0)?.is_yes() && gb.includes(g, 0)?.is_yes();
    ck.check("subfunctor_chain", chain, a, b, || format!("b={b} g={g} gbar={gb}"));
    for (label, x) in [
        ("module", &asm.module),
        ("small_torsion", &asm.small_torsion),
        ("small_quotient", &asm.small_quotient),
        ("large_torsion", &asm.large_torsion),
        ("large_quotient", &asm.large_quotient),
    ] {
        ck.check("ass_equals_assf_noetherian", x.ass == x.assf, a, b, || {
            format!("{label}: {}", pair(&x.ass, &x.assf))
        });
    }

    // small torsion
    ck.check("small_torsion_ass", asm.small_torsion.ass == ass_in, a, b, || {
        pair(&asm.small_torsion.ass, &ass_in)
    });
    ck.check("small_torsion_assf_inclusion", subset(&asm.small_torsion.assf, &assf_in), a, b, || {
        pair(&asm.small_torsion.assf, &assf_in)
    });
    ck.check("small_quotient_ass_inclusion", subset(&ass_out, &asm.small_quotient.ass), a, b, || {
        pair(&ass_out, &asm.small_quotient.ass)
    });
    ck.check("small_quotient_assf_inclusion", subset(&assf_out, &asm.small_quotient.assf), a, b, || {
        pair(&assf_out, &asm.small_quotient.assf)
    });

    // large torsion
    let lt = &asm.large_torsion;
    ck.check("large_torsion_ass", lt.ass == ass_in && lt.ass == asm.small_torsion.ass, a, b, || {
        pair(&lt.ass, &ass_in)
    });
    ck.check("large_torsion_assf_inclusion", subset(&lt.assf, &assf_in), a, b, || pair(&lt.assf, &assf_in));
    ck.check("large_quotient_ass_inclusion", subset(&ass_out, &asm.large_quotient.ass), a, b, || {
        pair(&ass_out, &asm.large_quotient.ass)
    });
    ck.check("large_quotient_assf_inclusion", subset(&assf_out, &asm.large_quotient.assf), a, b, || {
        pair(&assf_out, &asm.large_quotient.assf)
    });

    // vanishing and full-torsion chains
    let large_zero = gb == b;
    let small_zero = g == b;
    let vanishing = (!assf_in.is_empty() || large_zero) && (!large_zero || small_zero) && (!small_zero || ass_in.is_empty());
    ck.check("vanishing_chain", vanishing, a, b, || {
        format!("assf∩var={} gbar=b:{large_zero} g=b:{small_zero} ass∩var={}", show_primes(&assf_in), show_primes(&ass_in))
    });
    let assf_within = assf_in == *assf;
    let full = (!g.is_unit() || assf_within) && (assf_within == gb.is_unit());
    ck.check("full_torsion_chain", full, a, b, || {
        format!("g unit:{} assf⊆var:{assf_within} gbar unit:{}", g.is_unit(), gb.is_unit())
    });
    ck.check("large_vanishing_criterion", large_zero == assf_in.is_empty(), a, b, || {
        format!("gbar=b:{large_zero} assf∩var={}", show_primes(&assf_in))
    });

    // implications between verdicts
    let imp = (!rep.weakly_fair.holds || rep.weakly_quasifair.holds)
        && (!rep.weakly_large_fair.holds || rep.weakly_large_quasifair.holds)
        && (!rep.weakly_quasifair.holds || rep.weakly_large_quasifair.holds);
    ck.check("fairness_implications", imp, a, b, || "verdict implication fails".into());
    let lq = v.intersect(&asm.large_quotient.ass);
    ck.check("large_quotient_avoids_variety", lq.is_empty(), a, b, || show_primes(&lq));

    // bounded torsion criteria
    let n_max = 16;
    if is_bounded_small_torsion(b, a, g, n_max, bounds)?.is_some() {
        let q_ass = v.intersect(&asm.small_quotient.ass);
        let q_assf = v.intersect(&asm.small_quotient.assf);
        let ok = (!q_ass.is_empty() || rep.fair.holds)
            && (!q_assf.is_empty() || (rep.fair.holds && rep.weakly_fair.holds));
        ck.check("bounded_small_torsion_criterion", ok, a, b, || "bounded small torsion but not fair".into());
    }
    if is_bounded_small_torsion(b, a, gb, n_max, bounds)?.is_some() {
        let q_assf = v.intersect(&asm.large_quotient.assf);
        let ok = rep.large_fair.holds && (!q_assf.is_empty() || rep.weakly_large_fair.holds);
        ck.check("bounded_large_torsion_criterion", ok, a, b, || "bounded large torsion but not large fair".into());
    }

    // noetherian rings: everything fair
    let all = rep.all_verdicts() && rep.centred_witness_ok && rep.half_centred_witness_ok && t.functors_agree;
    ck.check("noetherian_all_fair", all, a, b, || {
        let bad: Vec<&str> = rep.verdicts().iter().filter(|(_, c)| !c.holds).map(|(n, _)| *n).collect();
        format!(
            "failing: {:?} centred:{} half_centred:{} agree:{}",
            bad, rep.centred_witness_ok, rep.half_centred_witness_ok, t.functors_agree
        )
    });

    // radicality
    let (again_large, _) = gamma_large_cyclic(gb, a, bounds)?;
    ck.check("large_torsion_radical", again_large == *gb, a, b, || format!("gbar={gb} again={again_large}"));
    let again_small = gamma_small_cyclic(g, a, bounds)?.ideal;
    ck.check("small_torsion_radical", again_small == *g, a, b, || format!("g={g} again={again_small}"));

    // quasifairness descends from ideals between a and its radical
    if !a.is_unit() && !a.is_zero() {
        let rad = a.radical()?;
        let mut between = vec![rad.clone()];
        let mut missing = Vec::new();
        for x in rad.generators() {
            if !a.membership(x, 0)?.verdict.is_yes() {
                missing.push(x.clone());
            }
        }
        if let Some(extra) = missing.into_iter().next() {
            between.push(a.sum(&Ideal::new(a.ring(), vec![extra])?)?);
        }
        for bp in between {
            let tp = torsion(b, &bp, bounds)?;
            let sub = assassins(b, Some(&tp.gamma_small), bounds.witness_degree)?;
            let vp = Variety::of(&bp)?;
            if sub.assf == vp.intersect(assf) {
                ck.check("quasifair_descends", rep.weakly_quasifair.holds, a, b, || {
                    format!("weakly quasifair for {bp} but not for a")
                });
            }
        }
    }
    Ok(())
}

/// Inclusions for `0 -> c/b -> R/b -> R/c -> 0` and the annihilator
/// criterion for `M = R/b`, `N = c/b`.
fn sequence_properties(ck: &mut Checker, b: &Ideal, c: &Ideal, bounds: &Bounds) -> Result<()> {
    let l = assassins(b, Some(c), bounds.witness_degree)?;
    let m = assassins(b, None, bounds.witness_degree)?;
    let n = assassins(c, None, bounds.witness_degree)?;
    let ass_ok = subset(&l.ass, &m.ass) && subset(&m.ass, &l.ass.union(&n.ass).copied().collect());
    let assf_ok = subset(&l.assf, &m.assf) && subset(&m.assf, &l.assf.union(&n.assf).copied().collect());
    ck.check("exact_sequence_inclusions", ass_ok && assf_ok, c, b, || {
        format!("L={} M={} N={}", show_primes(&l.ass), show_primes(&m.ass), show_primes(&n.ass))
    });
    let ann = b.colon_ideal(c, bounds)?;
    let v = Variety::of(&ann)?;
    let ok = subset(&v.difference(&n.ass), &m.ass) && subset(&v.difference(&n.assf), &m.assf);
    ck.check("annihilator_quotient_inclusion", ok, c, b, || {
        format!("ann={ann} quotient={} module={}", show_primes(&n.ass), show_primes(&m.ass))
    });
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessReport {
    pub instances: usize,
    pub seed: u64,
    pub kinds: BTreeMap<&'static str, usize>,
    pub checks: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
    pub errors: Vec<(usize, String)>,
}

impl HarnessReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.errors.is_empty()
    }

    pub fn violations_of(&self, property: &str) -> usize {
        self.violations.iter().filter(|v| v.property == property).count()
    }

    pub fn to_report(&self) -> ReportNode {
        let mut checks = ReportNode::map();
        for (k, v) in &self.checks {
            checks.insert(k, *v);
        }
        let mut kinds = ReportNode::map();
        for (k, v) in &self.kinds {
            kinds.insert(k, *v);
        }
        let violations = self
            .violations
            .iter()
            .map(|v| {
                ReportNode::map()
                    .with("instance", v.instance)
                    .with("property", v.property.as_str())
                    .with("detail", v.detail.as_str())
                    .with("script", v.script.as_str())
            })
            .collect::<Vec<_>>();
        let errors = self
            .errors
            .iter()
            .map(|(i, e)| ReportNode::map().with("instance", *i).with("error", e.as_str()))
            .collect::<Vec<_>>();
        ReportNode::map()
            .with("instances", self.instances)
            .with("seed", self.seed as i64)
            .with("ring_kinds", kinds)
            .with("checks", checks)
            .with("violation_count", self.violations.len())
            .with("violations", violations)
            .with("errors", errors)
            .with(
                "verdict",
                if self.is_clean() {
                    "no counterexample in corpus"
                } else {
                    "violations found"
                },
            )
    }
}

/// Generates `instances` instances from `seed` and checks them in
/// parallel. The result does not depend on the thread count.
pub fn proposition_harness(instances: usize, seed: u64, bounds: &Bounds) -> HarnessReport {
    let outcomes: Vec<(usize, Option<RingKind>, Result<InstanceOutcome>)> = (0..instances)
        .into_par_iter()
        .map(|i| match generate_instance(seed, i) {
            Ok(inst) => (i, Some(inst.kind), check_instance(&inst, bounds)),
            Err(e) => (i, None, Err(e)),
        })
        .collect();
    let mut report = HarnessReport {
        instances,
        seed,
        kinds: BTreeMap::new(),
        checks: BTreeMap::new(),
        violations: Vec::new(),
        errors: Vec::new(),
    };
    for (i, kind, outcome) in outcomes {
        if let Some(k) = kind {
            *report.kinds.entry(k.as_str()).or_insert(0) += 1;
        }
        match outcome {
            Ok(o) => {
                for (k, v) in o.checks {
                    *report.checks.entry(k).or_insert(0) += v;
                }
                report.violations.extend(o.violations);
            }
            Err(e) => report.errors.push((i, e.to_string())),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let a = generate_instance(7, 3).unwrap();
        let b = generate_instance(7, 3).unwrap();
        assert_eq!(a.ring, b.ring);
        assert_eq!(a.a, b.a);
        assert_eq!(a.modules, b.modules);
    }

    #[test]
    fn empty_corpus() {
        let r = proposition_harness(0, 1, &Bounds::default());
        assert_eq!(r.instances, 0);
        assert!(r.is_clean());
        assert!(r.checks.is_empty());
    }

    #[test]
    fn single_trivial_instance() {
        let ring = Ring::polynomial(1).unwrap();
        let x = Ideal::from_monomials(&ring, &[Monomial::var(0)]).unwrap();
        let inst = Instance {
            index: 0,
            kind: RingKind::Polynomial,
            ring,
            a: x.clone(),
            a2: x.clone(),
            modules: vec![x.clone(), x.clone(), x],
        };
        let out = check_instance(&inst, &Bounds::default()).unwrap();
        assert!(out.violations.is_empty(), "{:?}", out.violations);
    }

    #[test]
    fn small_run_clean() {
        let r = proposition_harness(40, 42, &Bounds::default());
        assert!(r.is_clean(), "{:#?}", r.violations.first().or(None));
    }
}
