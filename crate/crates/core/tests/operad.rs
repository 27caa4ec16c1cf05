mod common;

use std::sync::Arc;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toperad::group::{FiniteGroup, GroupRef};
use toperad::indexing::{com_operad, enumerate_indexing_systems, IndexingSystem};
use toperad::operad::{
    check_cocartesian_criterion, check_operad_axioms, e0_operad, envelope, full_com, is_operad_morphism, is_unital, mul_set,
    triv_inert, triv_operad, DiscreteTOperad, EnvTargets, OperadFunctor, OperadJson, TCategory,
};
use toperad::span::{BaseCategory, BaseVariant};

fn group(name: &str) -> GroupRef {
    FiniteGroup::fixture(name).unwrap()
}

fn base(name: &str, n: usize) -> Arc<BaseCategory> {
    Arc::new(BaseCategory::new(group(name), BaseVariant::Small, n))
}

/// Objects `[U → V]` with `|U| ≤ arity · |V|`: lifts along base changes of
/// orbits stay inside, which envelopes over orbit targets need.
fn arity_base(name: &str, arity: usize) -> Arc<BaseCategory> {
    Arc::new(BaseCategory::with_arity(group(name), arity))
}

/// `(a, b, position)` for every active morphism with identity base map.
fn fiberwise_active(base: &BaseCategory) -> Vec<(usize, usize, usize)> {
    base.all_morphisms()
        .into_iter()
        .filter(|(_, _, m)| m.is_active() && m.is_fiberwise())
        .map(|(a, b, m)| (a, b, base.position(a, b, m).unwrap()))
        .collect()
}

#[test]
fn com_passes_and_seeded_mutations_fail_with_their_axiom() {
    let com = full_com(base("C2", 3));
    assert!(check_operad_axioms(&com).passed);

    let flagged: Vec<usize> = (0..com.morphism_count()).filter(|&f| com.is_flagged(f) && !com.identities().contains(&f)).collect();
    let unflagged = com.without_flag(flagged[flagged.len() / 2]);
    let r = check_operad_axioms(&unflagged);
    assert!(r.fails("cocartesian-lift"), "{:?}", r.failed_axioms());

    let x = com.fiber(base("C2", 3).orbit_objects()[0])[0];
    let doubled = com.with_duplicated_object(x);
    let r = check_operad_axioms(&doubled);
    assert_eq!(r.failed_axioms(), vec!["segal"]);
    assert!(!r.passed && !r.violations.is_empty());
}

#[test]
fn standard_operads_pass_on_several_groups() {
    for (name, n) in [("C2", 3), ("C3", 3), ("C4", 2), ("S3", 3)] {
        let b = base(name, n);
        for op in [full_com(b.clone()), triv_inert(b.clone()), e0_operad(b.clone())] {
            let r = check_operad_axioms(&op);
            assert!(r.passed, "{name} {}: {:?}", op.name(), r.violations);
        }
    }
}

#[test]
fn inert_edges_compose_and_cancel_in_passing_instances() {
    let b = base("C2", 3);
    for op in [full_com(b.clone()), e0_operad(b.clone()), triv_inert(b.clone())] {
        for f in 0..op.morphism_count() {
            for &g in op.out(op.morphism(f).dst) {
                let h = op.compose(f, g).unwrap();
                if op.is_flagged(f) && op.is_flagged(g) {
                    assert!(op.is_flagged(h));
                }
                if op.is_flagged(f) && op.is_flagged(h) {
                    assert!(op.is_flagged(g), "{}: right cancellation at {f}, {g}", op.name());
                }
            }
        }
    }
}

#[test]
fn mul_sets_of_com_are_singletons_and_of_triv_empty_off_isomorphisms() {
    let b = base("C2", 3);
    let com = full_com(b.clone());
    let triv = triv_inert(b.clone());
    for (a, t, pos) in fiberwise_active(&b) {
        let m = mul_set(&com, a, t, pos, com.fiber(a)[0], com.fiber(t)[0]).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.product_size(), 1);
        let iso = b.hom(a, t)[pos].is_inert();
        let m = mul_set(&triv, a, t, pos, triv.fiber(a)[0], triv.fiber(t)[0]).unwrap();
        assert_eq!(m.len(), usize::from(iso));
    }
}

#[test]
fn mul_sets_of_com_i_follow_the_indexing_system() {
    for name in ["C2", "C4"] {
        let b = base(name, 4);
        let g = b.group().clone();
        for sys in enumerate_indexing_systems(&g) {
            let op = com_operad(&sys, b.clone()).unwrap();
            for (a, t, pos) in fiberwise_active(&b) {
                let (s, _, fwd) = b.hom(a, t)[pos].apex_gset();
                let admitted = s.orbits().iter().all(|o| {
                    let (orbit, inc) = s.sub_gset(o);
                    let image = fwd.target().orbits().into_iter().find(|p| p.contains(&fwd.apply(o[0]))).unwrap();
                    let (target, tinc) = fwd.target().sub_gset(&image);
                    let map = (0..orbit.size()).map(|i| image.iter().position(|&y| y == fwd.apply(inc.apply(i))).unwrap()).collect();
                    let _ = tinc;
                    sys.admits_orbit_map(&toperad::GMap::new(orbit, target, map).unwrap())
                });
                let m = mul_set(&op, a, t, pos, op.fiber(a)[0], op.fiber(t)[0]).unwrap();
                assert_eq!(m.len(), usize::from(admitted), "{name} {sys}");
                assert_eq!(m.product_size(), m.len());
            }
        }
    }
}

#[test]
fn mul_set_rejects_mismatched_input() {
    let b = base("C2", 3);
    let com = full_com(b.clone());
    let (a, t, pos) = b.all_morphisms().into_iter().find(|(_, _, m)| !m.is_active()).map(|(a, t, m)| (a, t, b.position(a, t, m).unwrap())).unwrap();
    assert!(mul_set(&com, a, t, pos, com.fiber(a)[0], com.fiber(t)[0]).is_err());
    let (a, t, pos) = fiberwise_active(&b)[0];
    assert!(mul_set(&com, a, t, pos, com.fiber(t)[0], com.fiber(a)[0]).is_err() || a == t);
    assert!(mul_set(&com, a, t, 10_000, com.fiber(a)[0], com.fiber(t)[0]).is_err());
}

#[test]
fn operad_morphisms() {
    let b = base("C2", 3);
    let com = full_com(b.clone());
    assert!(is_operad_morphism(&com, &com, &OperadFunctor::identity(&com)).unwrap());

    for name in ["C2", "C4"] {
        let b = base(name, 3);
        let g = b.group().clone();
        let top = com_operad(&IndexingSystem::full(g.clone()), b.clone()).unwrap();
        let bottom = com_operad(&IndexingSystem::minimal(g.clone()), b.clone()).unwrap();
        for sys in enumerate_indexing_systems(&g) {
            let mid = com_operad(&sys, b.clone()).unwrap();
            for (s, t) in [(&bottom, &mid), (&mid, &top)] {
                let f = OperadFunctor::inclusion(s, t).unwrap();
                assert!(is_operad_morphism(s, t, &f).unwrap(), "{name} {sys}");
            }
        }
    }

    // The identity functor into a copy where an inert edge lost its flag.
    let f = (0..com.morphism_count()).find(|&f| com.is_flagged(f) && !com.identities().contains(&f)).unwrap();
    let target = com.without_flag(f);
    assert!(!is_operad_morphism(&com, &target, &OperadFunctor::identity(&com)).unwrap());

    // Not a functor: everything sent to identities.
    let mut collapse = OperadFunctor::identity(&com);
    for (i, m) in com.morphisms().iter().enumerate() {
        collapse.morphisms[i] = com.identity(m.src);
    }
    assert!(is_operad_morphism(&com, &com, &collapse).is_err());
}

#[test]
fn unitality() {
    let b = base("C2", 3);
    assert!(is_unital(&full_com(b.clone())));
    assert!(!is_unital(&triv_inert(b.clone())));
    assert!(is_unital(&e0_operad(b.clone())));
    for sys in enumerate_indexing_systems(b.group()) {
        assert!(is_unital(&com_operad(&sys, b.clone()).unwrap()));
    }
}

#[test]
fn triv_of_a_random_poset_has_product_fibers() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["C2", "C3", "S3"] {
        let b = base(name, 3);
        for _ in 0..5 {
            let cat = Arc::new(TCategory::random_poset(b.group(), 5, &mut rng));
            let op = triv_operad(b.clone(), cat.clone());
            let obj = cat.object_gset();
            let fixed = |u: &toperad::GSet, p: usize| (0..obj.size()).filter(|&c| u.group().elements().all(|e| u.act(e, p) != p || obj.act(e, c) == c)).count();
            for a in 0..b.len() {
                let u = b.object(a).u();
                let expected: usize = u.orbits().iter().map(|o| fixed(u, o[0])).product();
                assert_eq!(op.fiber(a).len(), expected);
            }
            let r = check_operad_axioms(&op);
            assert!(r.passed, "{name}: {:?}", r.violations);
            assert!(!is_unital(&op) || b.orbit_objects().iter().all(|&c| op.fiber(c).is_empty()));
        }
    }
}

#[test]
fn triv_of_the_terminal_category_is_the_inert_subcategory() {
    let b = base("C3", 3);
    let op = triv_operad(b.clone(), Arc::new(TCategory::constant(b.group().clone(), toperad::category::FiniteCategory::terminal())));
    let inert = triv_inert(b.clone());
    assert_eq!(op.object_count(), inert.object_count());
    assert_eq!(op.morphism_count(), inert.morphism_count());
}

/// Objects of Triv whose `U`-orbits all have types in `allowed`.
fn restricted_triv(triv: &DiscreteTOperad, allowed: &[usize]) -> Result<DiscreteTOperad, toperad::Error> {
    let b = triv.base();
    let ok = |x: usize| b.object(triv.object(x).base).u().orbit_types().iter().all(|t| allowed.contains(&t.class));
    let keep: Vec<usize> = (0..triv.morphism_count()).filter(|&f| ok(triv.morphism(f).src) && ok(triv.morphism(f).dst)).collect();
    triv.restrict(&keep)
}

#[test]
fn suboperads_of_triv_from_sieves() {
    // Over C2 the orbit category has two objects with C2/e → C2/C2; its sieves
    // are ∅, {C2/e} and both. The set {C2/C2} alone is not one.
    let b = base("C2", 3);
    let triv = triv_inert(b.clone());
    let lat = b.group().lattice();
    let free = lat.class_of(lat.id_of(&b.group().trivial_subgroup()));
    let classes: Vec<usize> = (0..lat.num_classes()).collect();
    let mut passing = Vec::new();
    for subset in classes.iter().copied().powerset() {
        let sub = restricted_triv(&triv, &subset).unwrap();
        if check_operad_axioms(&sub).passed {
            passing.push(subset);
        }
    }
    let sieves = classes.iter().copied().powerset().filter(|s| s.is_empty() || s.contains(&free)).collect::<Vec<_>>();
    assert_eq!(passing, sieves);
    assert_eq!(passing.len(), 3);
}

#[test]
fn restrict_rejects_sets_that_are_not_closed() {
    let com = full_com(base("C2", 2));
    let non_id = (0..com.morphism_count()).find(|&f| !com.identities().contains(&f)).unwrap();
    assert!(com.restrict(&[non_id]).is_err());
    let m = com.morphism(non_id);
    let keep = vec![non_id, com.identity(m.src), com.identity(m.dst)];
    let composites: Vec<usize> = com.out(m.dst).iter().copied().filter(|&g| g != com.identity(m.dst)).collect();
    if let Some(&g) = composites.first() {
        let mut more = keep.clone();
        more.push(g);
        more.push(com.identity(com.morphism(g).dst));
        if com.compose(non_id, g).is_some_and(|h| !more.contains(&h)) {
            assert!(com.restrict(&more).is_err());
        }
    }
    let inert: Vec<usize> = (0..com.morphism_count()).filter(|&f| com.is_flagged(f)).collect();
    let sub = com.restrict(&inert).unwrap();
    assert!(check_operad_axioms(&sub).passed);
    assert_eq!(sub.morphism_count(), triv_inert(base("C2", 2)).morphism_count());
}

#[test]
fn envelopes_are_cocartesian() {
    for (name, arity) in [("C2", 3), ("C3", 2)] {
        let b = arity_base(name, arity);
        for op in [triv_inert(b.clone()), full_com(b.clone()), e0_operad(b.clone())] {
            let env = envelope(&Arc::new(op), EnvTargets::Orbits);
            assert!(check_operad_axioms(&env).passed, "{name} {}", env.name());
            let r = check_cocartesian_criterion(&env);
            assert!(r.passed, "{name} {}: {:?}", env.name(), r.violations);
        }
    }
}

#[test]
fn cocartesian_criterion_agrees_with_the_full_suite() {
    let b = arity_base("C2", 2);
    let triv_env = envelope(&Arc::new(triv_inert(b.clone())), EnvTargets::Orbits);
    let com_env = envelope(&Arc::new(full_com(b.clone())), EnvTargets::Orbits);
    let mut instances = vec![full_com(b.clone()), triv_env.clone(), com_env.clone()];
    for op in [full_com(b.clone()), triv_env, com_env] {
        let flagged: Vec<usize> = (0..op.morphism_count()).filter(|&f| op.is_flagged(f) && !op.identities().contains(&f)).collect();
        for &f in flagged.iter().step_by(flagged.len() / 3 + 1) {
            instances.push(op.without_flag(f));
        }
        for x in (0..op.object_count()).step_by(op.object_count() / 3 + 1) {
            instances.push(op.with_duplicated_object(x));
        }
    }
    for op in &instances {
        let full = check_operad_axioms(op).passed;
        let simple = check_cocartesian_criterion(op).passed;
        assert_eq!(full, simple, "{}", op.name());
    }
    assert!(instances.iter().any(|op| !check_operad_axioms(op).passed));
}

#[test]
fn operad_json_roundtrip() {
    let b = arity_base("C2", 2);
    let env = envelope(&Arc::new(triv_inert(b.clone())), EnvTargets::Orbits);
    for op in [full_com(b.clone()), e0_operad(b.clone()), env.clone(), full_com(b.clone()).with_duplicated_object(2)] {
        let text = serde_json::to_string(&op.to_json()).unwrap();
        let j: OperadJson = serde_json::from_str(&text).unwrap();
        let back = DiscreteTOperad::from_json_over(&j, op.base().clone()).unwrap();
        assert_eq!(back.objects(), op.objects());
        assert_eq!(back.morphisms(), op.morphisms());
        assert_eq!(back.identities(), op.identities());
        for f in 0..op.morphism_count() {
            for &g in op.out(op.morphism(f).dst) {
                assert_eq!(back.compose(f, g), op.compose(f, g));
            }
        }
        assert_eq!(check_operad_axioms(&back).passed, check_operad_axioms(&op).passed);
    }
    let com = full_com(base("C2", 3));
    let back = DiscreteTOperad::from_json_str(&serde_json::to_string(&com.to_json()).unwrap()).unwrap();
    assert_eq!(back.morphism_count(), com.morphism_count());
}
