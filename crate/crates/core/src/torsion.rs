//! Small and large torsion of cyclic modules `R/b`, bounded torsion, the
//! six fairness verdicts and the centredness witnesses.
//!
//! Torsion submodules of `R/b` are represented by ideals: `Γ_a(R/b) = g/b`
//! with `g = (b : a^∞)`, and `Γ̄_a(R/b) = ḡ/b` with `ḡ` the intersection of
//! the saturations of `b` by the individual generators of `a`.

use crate::error::Result;
use crate::ideal::{Bounds, Ideal, Saturation, Verdict};
use crate::report::ReportNode;
use crate::spectrum::{assassins, show_primes, Assassins, PrimeSet, Variety};

/// `g` with `Γ_a(R/b) = g/b`.
pub fn gamma_small_cyclic(b: &Ideal, a: &Ideal, bounds: &Bounds) -> Result<Saturation> {
    b.ring().ensure_same(a.ring())?;
    b.saturation(a, bounds)
}

/// `ḡ` with `Γ̄_a(R/b) = ḡ/b`, and whether every saturation stabilized.
pub fn gamma_large_cyclic(b: &Ideal, a: &Ideal, bounds: &Bounds) -> Result<(Ideal, bool)> {
    b.ring().ensure_same(a.ring())?;
    let mut acc = Ideal::unit(b.ring());
    let mut stabilized = true;
    for g in a.generators() {
        let principal = Ideal::new(b.ring(), vec![g.clone()])?;
        let s = b.saturation(&principal, bounds)?;
        stabilized &= s.stabilized;
        acc = acc.intersect(&s.ideal)?;
    }
    Ok((acc, stabilized))
}

#[derive(Clone, Debug)]
pub struct TorsionResult {
    pub gamma_small: Ideal,
    pub gamma_large: Ideal,
    pub small_stabilized: bool,
    pub large_stabilized: bool,
    pub functors_agree: bool,
}

pub fn torsion(b: &Ideal, a: &Ideal, bounds: &Bounds) -> Result<TorsionResult> {
    let small = gamma_small_cyclic(b, a, bounds)?;
    let (large, large_stabilized) = gamma_large_cyclic(b, a, bounds)?;
    let functors_agree = small.ideal.equals(&large, bounds.multiplier_degree)? == Verdict::Yes;
    Ok(TorsionResult {
        gamma_small: small.ideal,
        gamma_large: large,
        small_stabilized: small.stabilized,
        large_stabilized,
        functors_agree,
    })
}

/// Smallest `n ≤ n_max` with `a^n g ⊆ b`.
pub fn is_bounded_small_torsion(b: &Ideal, a: &Ideal, g: &Ideal, n_max: u32, bounds: &Bounds) -> Result<Option<u32>> {
    let mut power_times_g = g.clone();
    for n in 0..=n_max {
        if n > 0 {
            power_times_g = a.product(&power_times_g)?;
        }
        if b.includes(&power_times_g, bounds.multiplier_degree)? == Verdict::Yes {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// One set comparison `left == right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub holds: bool,
    pub left: PrimeSet,
    pub right: PrimeSet,
}

impl Comparison {
    fn new(left: PrimeSet, right: PrimeSet) -> Self {
        Comparison {
            holds: left == right,
            left,
            right,
        }
    }

    fn report(&self) -> ReportNode {
        ReportNode::map()
            .with("holds", self.holds)
            .with("left", show_primes(&self.left))
            .with("right", show_primes(&self.right))
    }
}

/// Assassins of the five modules attached to `(a, b)`.
#[derive(Clone, Debug)]
pub struct ModuleAssassins {
    /// `M = R/b`.
    pub module: Assassins,
    /// `Γ_a(M) = g/b`.
    pub small_torsion: Assassins,
    /// `M/Γ_a(M) = R/g`.
    pub small_quotient: Assassins,
    /// `Γ̄_a(M) = ḡ/b`.
    pub large_torsion: Assassins,
    /// `M/Γ̄_a(M) = R/ḡ`.
    pub large_quotient: Assassins,
}

impl ModuleAssassins {
    pub fn compute(b: &Ideal, t: &TorsionResult, witness_degree: Option<u32>) -> Result<Self> {
        Ok(ModuleAssassins {
            module: assassins(b, None, witness_degree)?,
            small_torsion: assassins(b, Some(&t.gamma_small), witness_degree)?,
            small_quotient: assassins(&t.gamma_small, None, witness_degree)?,
            large_torsion: assassins(b, Some(&t.gamma_large), witness_degree)?,
            large_quotient: assassins(&t.gamma_large, None, witness_degree)?,
        })
    }

    pub fn complete(&self) -> bool {
        [
            &self.module,
            &self.small_torsion,
            &self.small_quotient,
            &self.large_torsion,
            &self.large_quotient,
        ]
        .iter()
        .all(|a| a.complete)
    }
}

#[derive(Clone, Debug)]
pub struct FairnessReport {
    pub a: Ideal,
    pub b: Ideal,
    pub torsion: TorsionResult,
    pub assassins: ModuleAssassins,
    pub weakly_quasifair: Comparison,
    pub fair: Comparison,
    pub weakly_fair: Comparison,
    pub weakly_large_quasifair: Comparison,
    pub large_fair: Comparison,
    pub weakly_large_fair: Comparison,
    /// `g = b ⇒ ass^f(M) ∩ var(a) = ∅`.
    pub centred_witness_ok: bool,
    /// `ass^f(M) ⊆ var(a) ⇒ g = R`.
    pub half_centred_witness_ok: bool,
    pub complete: bool,
}

impl FairnessReport {
    pub fn all_verdicts(&self) -> bool {
        self.verdicts().iter().all(|(_, c)| c.holds)
    }

    pub fn verdicts(&self) -> [(&'static str, &Comparison); 6] {
        [
            ("fair", &self.fair),
            ("large_fair", &self.large_fair),
            ("weakly_fair", &self.weakly_fair),
            ("weakly_large_fair", &self.weakly_large_fair),
            ("weakly_large_quasifair", &self.weakly_large_quasifair),
            ("weakly_quasifair", &self.weakly_quasifair),
        ]
    }

    pub fn to_report(&self) -> ReportNode {
        let mut verdicts = ReportNode::map();
        for (name, c) in self.verdicts() {
            verdicts.insert(name, c.report());
        }
        ReportNode::map()
            .with("a", self.a.to_string())
            .with("b", self.b.to_string())
            .with("gamma", self.torsion.gamma_small.to_string())
            .with("gammabar", self.torsion.gamma_large.to_string())
            .with("functors_agree", self.torsion.functors_agree)
            .with("ass", show_primes(&self.assassins.module.ass))
            .with("assf", show_primes(&self.assassins.module.assf))
            .with("verdicts", verdicts)
            .with("centred_witness_ok", self.centred_witness_ok)
            .with("half_centred_witness_ok", self.half_centred_witness_ok)
            .with("complete", self.complete)
    }
}

/// Computes the torsion ideals, the assassins of the attached modules and
/// all six fairness comparisons for `M = R/b`.
pub fn fairness_report(a: &Ideal, b: &Ideal, bounds: &Bounds) -> Result<FairnessReport> {
    let t = torsion(b, a, bounds)?;
    let asm = ModuleAssassins::compute(b, &t, bounds.witness_degree)?;
    evaluate(a, b, t, asm)
}

/// The six comparisons and two witnesses from precomputed data.
pub fn evaluate(a: &Ideal, b: &Ideal, t: TorsionResult, asm: ModuleAssassins) -> Result<FairnessReport> {
    a.ring().ensure_same(b.ring())?;
    let var = Variety::of(a)?;
    let m = &asm.module;
    let assf_in = var.intersect(&m.assf);
    let ass_out = var.difference(&m.ass);
    let assf_out = var.difference(&m.assf);
    let stabilized = t.small_stabilized && t.large_stabilized;
    let torsion_free = t.gamma_small == *b;
    let everything = t.gamma_small.is_unit();
    let assf_within = assf_in == m.assf;
    let complete = asm.complete() && stabilized && b.is_exact() && t.gamma_small.is_exact();
    Ok(FairnessReport {
        a: a.clone(),
        b: b.clone(),
        weakly_quasifair: Comparison::new(asm.small_torsion.assf.clone(), assf_in.clone()),
        fair: Comparison::new(asm.small_quotient.ass.clone(), ass_out.clone()),
        weakly_fair: Comparison::new(asm.small_quotient.assf.clone(), assf_out.clone()),
        weakly_large_quasifair: Comparison::new(asm.large_torsion.assf.clone(), assf_in.clone()),
        large_fair: Comparison::new(asm.large_quotient.ass.clone(), ass_out),
        weakly_large_fair: Comparison::new(asm.large_quotient.assf.clone(), assf_out),
        centred_witness_ok: !torsion_free || assf_in.is_empty(),
        half_centred_witness_ok: !assf_within || everything,
        complete,
        torsion: t,
        assassins: asm,
    })
}

/// Outcome of the radicality checks for one module `R/b`.
#[derive(Clone, Debug)]
pub struct RadicalProbeEntry {
    pub b: Ideal,
    /// `Γ̄_a(R/ḡ) = 0`.
    pub large_radical: bool,
    /// `Γ_a(R/g) = 0`.
    pub small_radical: bool,
}

/// Checks `Γ̄_a(M/Γ̄_a(M)) = 0` and `Γ_a(M/Γ_a(M)) = 0` for each `M = R/b`.
pub fn radical_probe(a: &Ideal, corpus: &[Ideal], bounds: &Bounds) -> Result<Vec<RadicalProbeEntry>> {
    corpus
        .iter()
        .map(|b| {
            let t = torsion(b, a, bounds)?;
            let (again_large, _) = gamma_large_cyclic(&t.gamma_large, a, bounds)?;
            let again_small = gamma_small_cyclic(&t.gamma_small, a, bounds)?;
            Ok(RadicalProbeEntry {
                b: b.clone(),
                large_radical: again_large == t.gamma_large,
                small_radical: again_small.ideal == t.gamma_small,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::ring::{RewriteRule, Ring};

    fn m(p: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(p.iter().copied())
    }

    fn id(r: &Ring, gens: &[&[(u32, u32)]]) -> Ideal {
        Ideal::from_monomials(r, &gens.iter().map(|g| m(g)).collect::<Vec<_>>()).unwrap()
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

    #[test]
    fn small_torsion_examples() {
        let r = Ring::polynomial(2).unwrap();
        let bnd = Bounds::default();
        let b = id(&r, &[&[(0, 2), (1, 1)]]);
        let a = id(&r, &[&[(0, 1)]]);
        assert_eq!(gamma_small_cyclic(&b, &a, &bnd).unwrap().ideal.to_string(), "ideal(X1)");
        assert_eq!(gamma_small_cyclic(&b, &Ideal::unit(&r), &bnd).unwrap().ideal, b);
        let n = nil(4);
        let an = Ideal::from_monomials(&n, &(0..4).map(Monomial::var).collect::<Vec<_>>()).unwrap();
        assert!(gamma_small_cyclic(&Ideal::zero(&n), &an, &bnd).unwrap().ideal.is_unit());
        assert!(gamma_large_cyclic(&Ideal::zero(&n), &an, &bnd).unwrap().0.is_unit());
    }

    #[test]
    fn large_torsion_examples() {
        let r = Ring::polynomial(2).unwrap();
        let bnd = Bounds::default();
        let b = id(&r, &[&[(0, 2), (1, 1)]]);
        let a = id(&r, &[&[(0, 1)]]);
        let (l, _) = gamma_large_cyclic(&b, &a, &bnd).unwrap();
        assert_eq!(l, gamma_small_cyclic(&b, &a, &bnd).unwrap().ideal);
        let b2 = id(&r, &[&[(0, 1), (1, 1)]]);
        let a2 = id(&r, &[&[(0, 1)], &[(1, 1)]]);
        assert_eq!(gamma_large_cyclic(&b2, &a2, &bnd).unwrap().0, b2);
    }

    #[test]
    fn bounded_torsion() {
        let r = Ring::polynomial(2).unwrap();
        let bnd = Bounds::default();
        let b = id(&r, &[&[(0, 2), (1, 1)]]);
        let a = id(&r, &[&[(0, 1)]]);
        let g = id(&r, &[&[(1, 1)]]);
        assert_eq!(is_bounded_small_torsion(&b, &a, &g, 5, &bnd).unwrap(), Some(2));
        assert_eq!(is_bounded_small_torsion(&b, &a, &b, 5, &bnd).unwrap(), Some(0));
    }

    #[test]
    fn noetherian_instance_is_fair() {
        let r = Ring::polynomial(3).unwrap();
        let b = id(&r, &[&[(0, 2)], &[(0, 1), (1, 1)], &[(2, 3)]]);
        let a = id(&r, &[&[(0, 1)], &[(2, 1)]]);
        let rep = fairness_report(&a, &b, &Bounds::default()).unwrap();
        assert!(rep.all_verdicts());
        assert!(rep.centred_witness_ok && rep.half_centred_witness_ok);
        assert!(rep.torsion.functors_agree);
        assert!(rep.complete);
    }

    #[test]
    fn unit_and_containing_a() {
        let r = Ring::polynomial(2).unwrap();
        let b = id(&r, &[&[(0, 2), (1, 1)]]);
        let rep = fairness_report(&Ideal::unit(&r), &b, &Bounds::default()).unwrap();
        assert!(rep.all_verdicts());
        assert_eq!(rep.torsion.gamma_small, b);
        let a = id(&r, &[&[(0, 2)]]);
        let b2 = id(&r, &[&[(0, 1)]]);
        let rep = fairness_report(&a, &b2, &Bounds::default()).unwrap();
        assert!(rep.all_verdicts());
        assert!(rep.torsion.gamma_small.is_unit());
    }

    #[test]
    fn radicality() {
        let r = Ring::polynomial(2).unwrap();
        let a = id(&r, &[&[(0, 1)]]);
        let corpus = vec![id(&r, &[&[(0, 2), (1, 1)]]), Ideal::zero(&r), Ideal::unit(&r)];
        for e in radical_probe(&a, &corpus, &Bounds::default()).unwrap() {
            assert!(e.large_radical && e.small_radical);
        }
    }
}
