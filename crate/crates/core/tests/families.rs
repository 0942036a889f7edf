use torsionlab_core::family::{
    instantiate, map_levels, power_multiple_contained, stable_query, Level, Schedule, StabilizationQuery,
};
use torsionlab_core::oracle::QuotientRewriter;
use torsionlab_core::pattern::FamilySpec;
use torsionlab_core::registry::{example, replicate_example, replicate_family, tags};
use torsionlab_core::{Bounds, Error, Monomial, Verdict};

fn spec(tag: &str) -> FamilySpec {
    example(tag).unwrap().family()
}

fn failing_claims(tag: &str, source: &str) -> Vec<String> {
    let ex = example(tag).unwrap();
    let mutated = FamilySpec::parse(tag, source).unwrap();
    let report = replicate_family(&ex, &mutated, &Schedule::default()).unwrap();
    report.claims.iter().filter(|c| !c.pass()).map(|c| c.id.clone()).collect()
}

#[test]
fn every_example_replicates() {
    for tag in tags() {
        let report = replicate_example(tag, &Schedule::default()).unwrap();
        assert!(report.confluent(), "{tag}");
        for c in &report.claims {
            assert!(c.pass(), "{tag} {}: {:?}", c.id, c.evidence);
            assert!(c.stable);
            assert_eq!(c.evidence.len(), 7);
        }
        assert!(report.pass());
    }
}

#[test]
fn idem50c_short_schedule() {
    let report = replicate_example("idem50C", &Schedule::range(3, 8, 3).unwrap()).unwrap();
    assert!(report.pass());
}

#[test]
fn replication_is_deterministic() {
    let s = Schedule::default();
    let a = replicate_example("nil40A", &s).unwrap().to_report().render_json();
    let b = replicate_example("nil40A", &s).unwrap().to_report().render_json();
    assert_eq!(a, b);
}

#[test]
fn unknown_tag_and_bad_schedule() {
    assert!(matches!(example("nil40E"), Err(Error::UnknownTag(_))));
    assert!(Schedule::range(4, 10, 8).is_err());
    assert!(Schedule::range(5, 4, 2).is_err());
}

#[test]
fn nil40d_unit_not_in_colon_by_square() {
    let f = spec("nil40D");
    let q = |l: &Level| {
        let a2 = l.power("a", 2)?;
        let c = l.ideal("b")?.colon_ideal(&a2, &Bounds::default())?;
        Ok(c.is_unit())
    };
    let r = stable_query(&StabilizationQuery {
        family: &f,
        schedule: Schedule::range(4, 8, 3).unwrap(),
        query: &q,
    })
    .unwrap();
    assert!(!r.value);
    assert!(r.stable);
}

#[test]
fn idem50c_colon_generators_in_a() {
    let f = spec("idem50C");
    let q = |l: &Level| {
        let x0 = l.monomial(&Monomial::var(0))?;
        let c = l.ideal("b")?.colon(&x0, &Bounds::default())?;
        Ok(c.is_exact() && l.ideal("a")?.includes(&c, 3)? == Verdict::Yes)
    };
    let r = stable_query(&StabilizationQuery {
        family: &f,
        schedule: Schedule::range(3, 7, 3).unwrap(),
        query: &q,
    })
    .unwrap();
    assert!(r.value && r.stable);
    assert!(r.evidence.iter().all(|(_, v)| *v));
}

#[test]
fn mutated_families_fail() {
    let failing = failing_claims(
        "nil40A",
        "ring vars X[0..N] rules { X[i]^2 -> 0 for i in 0..N }\n\
         ideal a = < X[i] for i in 0..N >\n\
         ideal b = < X[i]*a^(i + 1) for i in 0..N >",
    );
    assert!(failing.contains(&"quotient_torsion_contains_a".to_string()), "{failing:?}");

    let failing = failing_claims(
        "nil40B",
        "ring vars X[0..N] rules { X[i]*X[j] -> 0 for i, j in 0..N if i < j; X[i]^(i + 2) -> 0 for i in 0..N }\n\
         ideal a = < X[i] for i in 0..N >",
    );
    assert_eq!(failing, vec!["generators_are_torsion".to_string()]);

    let failing = failing_claims(
        "idem50A",
        "ring vars X[0..N] rules { X[i]^2 -> 0 for i in 0..N }\nideal a = < X[i] for i in 0..N >",
    );
    assert_eq!(failing.len(), 2);
}

#[test]
fn power_containment_matches_rewriting_oracle() {
    let f = spec("nil40A");
    let schedule = Schedule::range(3, 6, 2).unwrap();
    let checks = map_levels(&f, &schedule, |l| {
        let (a, b) = (l.ideal("a")?, l.ideal("b")?);
        let q = QuotientRewriter::new(b)?;
        let mut agree = true;
        for i in 0..l.num_vars() {
            for k in 0..=i + 1 {
                let engine = power_multiple_contained(a, &Monomial::var(i), k, b)?;
                let mut oracle = true;
                for m in Monomial::all_up_to(l.num_vars(), k) {
                    if m.degree() == k && !q.contains(&m.mul(&Monomial::var(i)))? {
                        oracle = false;
                        break;
                    }
                }
                agree &= engine == oracle;
            }
        }
        Ok(agree)
    })
    .unwrap();
    assert!(checks.iter().all(|(_, ok)| *ok), "{checks:?}");
}

#[test]
fn instantiated_ideals_match_hand_expansion() {
    let l = instantiate(&spec("nil40D"), 2).unwrap();
    assert_eq!(l.ideal("b").unwrap().to_string(), "ideal(X1*X2)");
    let l = instantiate(&spec("idem50C"), 3).unwrap();
    assert_eq!(l.ideal("b").unwrap().to_string(), "ideal(X0*X1, X0^2*X2, X0^3*X3)");
}
