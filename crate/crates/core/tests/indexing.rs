use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use itertools::Itertools;
use proptest::prelude::*;

use toperad::group::{FiniteGroup, GroupRef, FIXTURE_NAMES};
use toperad::gset::equivariant_maps;
use toperad::indexing::*;
use toperad::operad::{check_operad_axioms, is_unital};
use toperad::span::{BaseCategory, BaseVariant};
use toperad::{GMap, GSet};

fn group(name: &str) -> GroupRef {
    FiniteGroup::fixture(name).unwrap()
}

fn golden_counts() -> BTreeMap<String, usize> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/golden/indexing_counts.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Every pair `(K, H)` with `K < H`.
fn proper_pairs(g: &GroupRef) -> Vec<Pair> {
    let lat = g.lattice();
    (0..lat.len()).cartesian_product(0..lat.len()).filter(|&(k, h)| k != h && lat.is_below(k, h)).collect()
}

/// Id of the unique subgroup of the given order.
fn of_order(g: &GroupRef, order: usize) -> usize {
    let lat = g.lattice();
    (0..lat.len()).filter(|&i| lat.subgroup(i).order() == order).exactly_one().ok().unwrap()
}

/// Maps from orbits to orbits, one source per class.
fn orbit_maps(g: &GroupRef) -> Vec<GMap> {
    let orbits: Vec<GSet> = (0..g.lattice().num_classes()).map(|c| GSet::orbit_of_class(g, c)).collect();
    let mut out = Vec::new();
    for a in &orbits {
        for b in &orbits {
            out.extend(equivariant_maps(a, b).into_iter().map(|m| GMap::new(a.clone(), b.clone(), m).unwrap()));
        }
    }
    out
}

#[test]
fn counts_match_the_golden_file_and_both_enumerators_agree() {
    let golden = golden_counts();
    assert_eq!(golden.len(), FIXTURE_NAMES.len());
    for name in FIXTURE_NAMES {
        let g = group(name);
        let by_closure = enumerate_indexing_systems(&g);
        let by_filter = enumerate_by_filter(&g);
        assert_eq!(by_closure, by_filter, "{name}");
        assert_eq!(by_closure.len(), golden[name], "{name}");
    }
    assert_eq!((golden["trivial"], golden["C2"], golden["C4"]), (1, 2, 5));
}

#[test]
fn enumeration_is_sorted_and_free_of_repeats() {
    for name in ["C4", "S3", "C2xC2"] {
        let systems = enumerate_indexing_systems(&group(name));
        assert!(systems.windows(2).all(|w| (w[0].len(), w[0].pairs()) < (w[1].len(), w[1].pairs())));
        assert_eq!(systems.first().unwrap(), &IndexingSystem::minimal(group(name)));
        assert_eq!(systems.last().unwrap(), &IndexingSystem::full(group(name)));
    }
}

#[test]
fn pair_check_agrees_with_the_concrete_orbit_check() {
    // Concrete maps only see conjugation-closed pair sets, so run over unions of classes.
    for name in ["C2", "C4", "S3", "C2xC2", "C6"] {
        let g = group(name);
        let classes = pair_classes(&g);
        let mut valid = 0;
        for mask in 0u32..1 << classes.len() {
            let c = IndexingSystem::candidate(g.clone(), classes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).flat_map(|(_, p)| p.clone()));
            let by_pairs = is_indexing_system(&c).valid;
            let concrete = check_orbit_subcategory(&g, |f| c.admits_orbit_map(f)).is_none();
            assert_eq!(by_pairs, concrete, "{name}: {c}");
            valid += usize::from(by_pairs);
        }
        assert_eq!(valid, golden_counts()[name], "{name}");
    }
}

#[test]
fn failures_name_the_broken_axiom() {
    let c4 = group("C4");
    let (e, c2, top) = (of_order(&c4, 1), of_order(&c4, 2), of_order(&c4, 4));
    let missing_restriction = IndexingSystem::candidate(c4.clone(), [(e, top)]);
    assert_eq!(is_indexing_system(&missing_restriction).violation.unwrap().axiom, BASE_CHANGE);
    let missing_composite = IndexingSystem::candidate(c4.clone(), [(e, c2), (c2, top)]);
    assert_eq!(is_indexing_system(&missing_composite).violation.unwrap().axiom, COMPOSITION);
    assert!(IndexingSystem::new(c4.clone(), [(e, top)]).is_err());
    assert!(IndexingSystem::new(c4, [(e, c2)]).is_ok());

    let s3 = group("S3");
    let lat = s3.lattice();
    let (e, two) = (of_order(&s3, 1), (0..lat.len()).find(|&i| lat.subgroup(i).order() == 2).unwrap());
    let one_conjugate = IndexingSystem::candidate(s3, [(e, two)]);
    assert_eq!(is_indexing_system(&one_conjugate).violation.unwrap().axiom, CONJUGATION);
}

#[test]
fn closure_of_one_transfer_in_s3() {
    // e → H for one H of order 2 forces the conjugates and nothing else.
    let g = group("S3");
    let lat = g.lattice();
    let e = of_order(&g, 1);
    let twos: Vec<usize> = (0..lat.len()).filter(|&i| lat.subgroup(i).order() == 2).collect();
    let sys = generate_closure(&g, [(e, twos[0])]);
    let expected: Vec<Pair> = twos.iter().map(|&h| (e, h)).sorted().collect();
    assert_eq!(sys.transfers(), expected);
    assert!(is_indexing_system(&sys).valid);

    // e → G in S3 forces e → every subgroup.
    let top = of_order(&g, 6);
    let sys = generate_closure(&g, [(e, top)]);
    assert_eq!(sys.transfers(), (0..lat.len()).filter(|&h| h != e).map(|h| (e, h)).sorted().collect::<Vec<_>>());
}

#[test]
fn lattice_operations() {
    for name in ["C4", "S3", "C2xC2"] {
        let systems = enumerate_indexing_systems(&group(name));
        for a in &systems {
            for b in &systems {
                let (m, j) = (a.meet(b), a.join(b));
                assert!(is_indexing_system(&m).valid && is_indexing_system(&j).valid);
                assert!(m.is_subsystem_of(a) && m.is_subsystem_of(b));
                assert!(a.is_subsystem_of(&j) && b.is_subsystem_of(&j));
                for c in &systems {
                    if c.is_subsystem_of(a) && c.is_subsystem_of(b) {
                        assert!(c.is_subsystem_of(&m));
                    }
                    if a.is_subsystem_of(c) && b.is_subsystem_of(c) {
                        assert!(j.is_subsystem_of(c));
                    }
                }
            }
        }
        let h = hasse(&systems);
        let covered: usize = (0..systems.len()).filter(|&j| h.iter().any(|&(_, t)| t == j)).count();
        assert_eq!(covered, systems.len() - 1, "{name}: every system but the least covers something");
    }
}

#[test]
fn dictionary_roundtrips() {
    for name in ["C2", "C4", "S3"] {
        let g = group(name);
        let maps = orbit_maps(&g);
        for sys in enumerate_indexing_systems(&g) {
            let bh = sys.to_blumberg_hill();
            assert!(bh.violations().is_empty(), "{name} {sys}: {:?}", bh.violations());
            assert_eq!(IndexingSystem::from_blumberg_hill(&bh).unwrap(), sys);
            let bar = sys.to_bar_closure();
            assert_eq!(bar.recover(), sys);
            assert!(bar.check(3).is_none(), "{name} {sys}");
            for f in &maps {
                assert_eq!(bar.contains(f), bh.admits_map(f), "{name} {sys}: {:?}", f.map());
                assert_eq!(bar.contains(f), sys.admits_orbit_map(f));
            }
        }
    }
}

#[test]
fn families_respect_the_order_of_systems() {
    for name in ["C4", "S3"] {
        let systems = enumerate_indexing_systems(&group(name));
        let families: Vec<BHFamily> = systems.iter().map(IndexingSystem::to_blumberg_hill).collect();
        for (i, a) in systems.iter().enumerate() {
            for (j, b) in systems.iter().enumerate() {
                assert_eq!(a.is_subsystem_of(b), families[i].is_subfamily_of(&families[j]));
            }
        }
    }
}

#[test]
fn each_family_condition_has_a_caught_counterexample() {
    for c in 1..=6u8 {
        let fam = BHFamily::counterexample(c).unwrap();
        let found: Vec<u8> = fam.violations().iter().map(|v| v.0).collect();
        assert!(found.contains(&c), "condition {c}: found {found:?}");
        assert!(!found.contains(&0), "condition {c}: trivial sets should be present");
        assert!(fam.validate().is_err());
        assert!(IndexingSystem::from_blumberg_hill(&fam).is_err());
    }
    assert!(BHFamily::counterexample(7).is_err());
}

#[test]
fn commutative_suboperads_correspond_to_systems() {
    // Free orbits must fit in the base for every transfer to show up.
    for name in ["C2", "C4"] {
        let g = group(name);
        let n = g.order();
        let base = Arc::new(BaseCategory::new(g.clone(), BaseVariant::Small, n));
        let systems = enumerate_indexing_systems(&g);
        let ops: Vec<_> = systems.iter().map(|s| com_operad(s, base.clone()).unwrap()).collect();
        for (s, op) in systems.iter().zip(&ops) {
            let r = check_operad_axioms(op);
            assert!(r.passed, "{name} {s}: {:?}", r.violations);
            assert!(is_unital(op));
            assert_eq!(&recover_indexing(op).unwrap(), s);
        }
        for (i, a) in systems.iter().enumerate() {
            for (j, b) in systems.iter().enumerate() {
                let key = |k: usize| ops[k].morphisms().iter().map(|m| (m.src, m.dst, m.base)).collect::<std::collections::HashSet<_>>();
                let (ka, kb) = (key(i), key(j));
                assert_eq!(i == j, ka == kb, "{name}: distinct systems give distinct operads");
                assert_eq!(a.is_subsystem_of(b), ka.is_subset(&kb));
            }
        }
    }
}

#[test]
fn invalid_systems_are_refused_by_the_operad_constructors() {
    let g = group("C4");
    let raw = IndexingSystem::candidate(g.clone(), [(of_order(&g, 1), of_order(&g, 4))]);
    let base = Arc::new(BaseCategory::new(g, BaseVariant::Small, 2));
    assert!(com_operad(&raw, base).is_err());
    assert!(colored_from_indexing(&raw).is_err());
}

#[test]
fn indexing_json_roundtrip() {
    for name in ["C4", "S3"] {
        for sys in enumerate_indexing_systems(&group(name)) {
            let text = serde_json::to_string(&sys.to_json()).unwrap();
            let back = IndexingSystem::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, sys);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn closure_is_least_among_systems(gi in 0usize..8, mask in any::<u32>()) {
        let g = group(FIXTURE_NAMES[gi]);
        let pairs = proper_pairs(&g);
        let seed: Vec<Pair> = pairs.iter().enumerate().filter(|(i, _)| mask >> (i % 32) & 1 == 1).map(|(_, &p)| p).collect();
        let sys = generate_closure(&g, seed.iter().copied());
        prop_assert!(is_indexing_system(&sys).valid);
        prop_assert!(seed.iter().all(|&(k, h)| sys.admits(k, h)));
        prop_assert_eq!(generate_closure(&g, sys.pairs().iter().copied()), sys.clone());
        for other in enumerate_indexing_systems(&g) {
            if seed.iter().all(|&(k, h)| other.admits(k, h)) {
                prop_assert!(sys.is_subsystem_of(&other));
            }
        }
    }
}
