use std::collections::BTreeSet;
use std::sync::Arc;

use toperad::category::{orbit_category, verify_atomic_category, verify_atomic_orbital, FiniteCategory};
use toperad::equivariant::*;
use toperad::group::{FiniteGroup, GroupRef, Subgroup, FIXTURE_NAMES};
use toperad::span::burnside_hom_set;
use toperad::span::BurnsideSpan;
use toperad::{GMap, GSet};

fn group(name: &str) -> GroupRef {
    FiniteGroup::fixture(name).unwrap()
}

/// `|X^L|` for every subgroup class `L`, by direct count.
fn marks(g: &GroupRef, x: &GSet) -> Vec<usize> {
    let lat = g.lattice();
    (0..lat.num_classes())
        .map(|c| {
            let l = lat.subgroup(lat.class_rep(c));
            (0..x.size()).filter(|&p| l.elements().iter().all(|&h| x.act(h, p) == p)).count()
        })
        .collect()
}

/// Coefficients of `x` in the orbit basis, peeled off from the largest
/// subgroups down using the table of marks.
fn decompose_by_marks(g: &GroupRef, x: &GSet) -> Vec<usize> {
    let lat = g.lattice();
    let r = lat.num_classes();
    let basis: Vec<Vec<usize>> = (0..r).map(|c| marks(g, &GSet::orbit_of_class(g, c))).collect();
    let mut rest: Vec<i64> = marks(g, x).into_iter().map(|m| m as i64).collect();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(lat.subgroup(lat.class_rep(c)).order()));
    let mut coeff = vec![0; r];
    for c in order {
        let k = rest[c] / basis[c][c] as i64;
        assert_eq!(rest[c], k * basis[c][c] as i64);
        coeff[c] = k as usize;
        for (l, m) in rest.iter_mut().enumerate() {
            *m -= k * basis[c][l] as i64;
        }
    }
    assert!(rest.iter().all(|&m| m == 0));
    coeff
}

fn product_gset(a: &GSet, b: &GSet) -> GSet {
    let g = a.group().clone();
    let rows = g.elements().map(|e| (0..a.size() * b.size()).map(|p| a.act(e, p / b.size()) * b.size() + b.act(e, p % b.size())).collect()).collect();
    GSet::new(g, rows).unwrap()
}

fn class_of_order(g: &GroupRef, order: usize) -> usize {
    let lat = g.lattice();
    (0..lat.num_classes()).find(|&c| lat.subgroup(lat.class_rep(c)).order() == order).unwrap()
}

#[test]
fn burnside_routes_agree_with_the_table_of_marks() {
    for name in ["C2", "C3", "C4", "C2xC2", "S3"] {
        let g = group(name);
        let spans = burnside_table_by(&g, BurnsideRoute::Spans);
        assert_eq!(spans, burnside_table_by(&g, BurnsideRoute::ProductOrbits), "{name}");
        assert_eq!(spans, burnside_table_by(&g, BurnsideRoute::DoubleCosets), "{name}");
        assert_eq!(spans, burnside_table(&g));
        let r = spans.rank();
        for i in 0..r {
            for j in 0..r {
                let x = product_gset(&GSet::orbit_of_class(&g, i), &GSet::orbit_of_class(&g, j));
                assert_eq!(spans.products[i][j], decompose_by_marks(&g, &x), "{name} {i}·{j}");
            }
        }
    }
}

#[test]
fn burnside_laws_hold() {
    for name in FIXTURE_NAMES {
        let t = burnside_table(&group(name));
        assert!(t.law_failures().is_empty(), "{name}: {:?}", t.law_failures());
    }
}

#[test]
fn known_products() {
    let c2 = group("C2");
    let t = burnside_table(&c2);
    let free = class_of_order(&c2, 1);
    let mut two_free = vec![0; t.rank()];
    two_free[free] = 2;
    assert_eq!(t.products[free][free], two_free);

    let s3 = group("S3");
    let t = burnside_table(&s3);
    let (e, h) = (class_of_order(&s3, 1), class_of_order(&s3, 2));
    let mut expected = vec![0; t.rank()];
    expected[e] = 1;
    expected[h] = 1;
    assert_eq!(t.products[h][h], expected);
    assert_eq!(t.format_element(&expected), format!("[{}] + [{}]", t.basis[e], t.basis[h]));
}

#[test]
fn a_corrupted_table_breaks_a_law() {
    let mut t = burnside_table(&group("C4"));
    t.products[0][1][0] += 1;
    assert!(!t.law_failures().is_empty());
}

#[test]
fn endomorphisms_of_the_point_are_g_sets() {
    for (name, bound) in [("C2", 4), ("C3", 3), ("S3", 3)] {
        let g = group(name);
        let pt = GSet::point(g.clone());
        let homs = burnside_hom_set(&pt, &pt, bound);
        assert_eq!(homs.len(), GSet::all_up_to_iso(&g, bound).len(), "{name}");
    }
}

#[test]
fn span_composition_is_unital_and_associative_on_orbit_spans() {
    for name in ["C2", "C4", "S3"] {
        let g = group(name);
        let spans: Vec<BurnsideSpan> = (0..g.lattice().num_classes())
            .map(|c| {
                let o = GSet::orbit_of_class(&g, c);
                BurnsideSpan::new(&GMap::to_point(&o), &GMap::to_point(&o)).unwrap()
            })
            .collect();
        let id = BurnsideSpan::identity(&GSet::point(g.clone()));
        for a in &spans {
            assert_eq!(id.then(a).unwrap().apex_orbit_types(), a.apex_orbit_types());
            assert_eq!(a.then(&id).unwrap().apex_orbit_types(), a.apex_orbit_types());
            for b in &spans {
                for c in &spans {
                    let left = a.then(b).unwrap().then(c).unwrap();
                    let right = a.then(&b.then(c).unwrap()).unwrap();
                    assert_eq!(left.apex_orbit_types(), right.apex_orbit_types());
                }
            }
        }
    }
}

/// Conjugacy classes of subgroups of `G × Σn` meeting `1 × Σn` trivially.
fn graph_classes_by_brute_force(g: &GroupRef, n: usize) -> BTreeSet<usize> {
    let prod = FiniteGroup::direct_product(g, &FiniteGroup::symmetric(n));
    let fact = prod.order() / g.order();
    let lat = prod.lattice();
    (0..lat.len())
        .filter(|&s| lat.subgroup(s).elements().iter().all(|&z| z / fact != g.identity() || z == prod.identity()))
        .map(|s| lat.class_of(s))
        .collect()
}

#[test]
fn graph_subgroups_match_a_search_of_the_product() {
    for name in ["C2", "C3", "C4", "S3"] {
        let g = group(name);
        for n in 0..=3 {
            let found = graph_subgroups(&g, n);
            let prod = FiniteGroup::direct_product(&g, &FiniteGroup::symmetric(n));
            let lat = prod.lattice();
            let classes: BTreeSet<usize> =
                found.iter().map(|x| lat.class_of(lat.id_of(&Subgroup::new(&prod, x.graph(&g)).unwrap()))).collect();
            assert_eq!(classes.len(), found.len(), "{name} n={n}: two listed graphs are conjugate");
            assert_eq!(classes, graph_classes_by_brute_force(&g, n), "{name} n={n}");
        }
    }
}

#[test]
fn graph_subgroups_of_c2() {
    let g = group("C2");
    let counts: Vec<usize> = (0..=3).map(|n| graph_subgroups(&g, n).len()).collect();
    assert_eq!(counts, vec![2, 2, 3, 3]);
}

#[test]
fn graph_subgroups_count_h_sets() {
    for name in ["C2", "C4", "S3"] {
        let g = group(name);
        let lat = g.lattice();
        for n in 0..=3 {
            let found = graph_subgroups(&g, n);
            for c in 0..lat.num_classes() {
                let (hg, _) = g.subgroup_as_group(lat.subgroup(lat.class_rep(c)), "H");
                let h_sets = GSet::all_up_to_iso(&Arc::new(hg), n).into_iter().filter(|u| u.size() == n).count();
                assert_eq!(found.iter().filter(|x| x.class == c).count(), h_sets, "{name} class {c} n={n}");
            }
            for x in &found {
                let f = x.fibered(&g);
                assert_eq!(f.source().size(), n * f.target().size());
                assert!(f.target().is_transitive());
            }
        }
    }
}

#[test]
fn envelope_of_triv_matches_graph_subgroups() {
    for name in ["C2", "C3"] {
        let g = group(name);
        let report = envelope_triv_correspondence(&g, 3);
        assert!(report.passed(), "{name}: {report:?}");
        assert!(report.hom_pairs > 0);
    }
    let g = group("C2");
    let report = envelope_triv_correspondence(&g, 3);
    let top = class_of_order(&g, 2);
    let cell = report.cells.iter().find(|c| c.class == top && c.n == 2).unwrap();
    assert_eq!((cell.envelope, cell.graph, cell.h_sets), (2, 2, 2));
}

#[test]
fn fixture_orbit_categories_are_atomic_orbital() {
    for g in FiniteGroup::fixtures() {
        let r = verify_atomic_orbital(&g);
        assert!(r.passed && r.witness.is_none(), "{}: {:?}", g.name(), r.witness);
        assert!(r.pullbacks_checked > 0);
        let cat = orbit_category(&g);
        assert!(verify_atomic_category(g.name(), &cat).passed);
        assert!(cat.nontrivial_retract().is_none());
    }
}

#[test]
fn split_epi_example_is_not_atomic() {
    let cat = FiniteCategory::split_epi_example();
    let r = verify_atomic_category("split-epi", &cat);
    assert!(!r.passed);
    assert!(r.witness.is_some());
    let (s, p) = cat.nontrivial_retract().unwrap();
    let (a, b) = cat.morphism(s);
    assert_ne!(a, b);
    assert_eq!(cat.compose(s, p), Some(cat.identity(a)));
    assert!(!cat.is_iso(s));
}
