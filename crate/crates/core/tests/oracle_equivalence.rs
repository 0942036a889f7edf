use torsionlab_core::crosscheck::oracle_equivalence;

#[test]
fn oracle_equivalence_on_small_instances() {
    let r = oracle_equivalence(0x0dac1e, 120, 6).unwrap();
    assert_eq!(r.instances, 120);
    assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
    for op in ["colon", "radical", "minimal_primes", "assassin", "weak_assassin"] {
        assert!(r.comparisons[op] >= 120, "{op}");
    }
    assert_eq!(r.comparisons["saturation"], 240);
    assert!(r.comparisons["element_assassin"] >= 10);
}
