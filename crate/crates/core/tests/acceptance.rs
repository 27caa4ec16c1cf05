//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.
//! Bounds are pinned here so the whole run stays well under a minute.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toperad::category::{verify_atomic_category, verify_atomic_orbital, FiniteCategory};
use toperad::colored::{check_colored_axioms, load_theory, operadic_nerve, ColoredJson, ColoredTheory, ThinTheory};
use toperad::equivariant::{burnside_table_by, envelope_triv_correspondence, BurnsideRoute};
use toperad::group::{FiniteGroup, GroupRef};
use toperad::gset::equivariant_maps;
use toperad::indexing::{
    com_operad, enumerate_by_filter, enumerate_indexing_systems, recover_indexing, BHFamily, IndexingSystem,
};
use toperad::operad::{
    check_cocartesian_criterion, check_operad_axioms, e0_operad, envelope, full_com, is_unital, triv_inert, triv_operad,
    DiscreteTOperad, EnvTargets, TCategory,
};
use toperad::span::{ArrowObject, BaseCategory, BaseVariant, SpanMorphism};
use toperad::{GMap, GSet};

/// Largest `|U|` in the nerve comparison.
const NERVE_BOUND: usize = 4;
/// Factorizations are checked on `uFin_{C2,*}` with `|U| ≤` this.
const FACTOR_BOUND: usize = 3;
/// Arity bound for the envelope comparison.
const ENVELOPE_ARITY: usize = 3;
/// Randomized categories for the Triv fiber count, and their seed.
const RANDOM_POSETS: usize = 20;
const POSET_SEED: u64 = 2024;
const POSET_MAX_POINTS: usize = 5;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn group(name: &str) -> GroupRef {
    FiniteGroup::fixture(name).unwrap()
}

fn small(g: &GroupRef, n: usize) -> Arc<BaseCategory> {
    Arc::new(BaseCategory::new(g.clone(), BaseVariant::Small, n))
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn colored_fixture(name: &str) -> Arc<dyn ColoredTheory> {
    let j: ColoredJson = serde_json::from_str(&std::fs::read_to_string(fixtures_dir().join(name)).unwrap()).unwrap();
    load_theory(&j).unwrap()
}

fn orbit_maps(g: &GroupRef) -> Vec<GMap> {
    let orbits = common::orbits(g);
    let mut out = Vec::new();
    for a in &orbits {
        for b in &orbits {
            out.extend(equivariant_maps(a, b).into_iter().map(|m| GMap::new(a.clone(), b.clone(), m).unwrap()));
        }
    }
    out
}

fn morphism_key(op: &DiscreteTOperad) -> HashSet<(usize, usize, usize)> {
    op.morphisms().iter().map(|m| (op.object(m.src).base, op.object(m.dst).base, m.base)).collect()
}

fn indexing_counts() -> Outcome {
    let golden: BTreeMap<String, usize> =
        serde_json::from_str(&std::fs::read_to_string(fixtures_dir().join("golden/indexing_counts.json")).unwrap()).unwrap();
    let mut counts = Vec::new();
    for (name, exact) in [("trivial", Some(1)), ("C2", Some(2)), ("C4", Some(5)), ("S3", None), ("C2xC2", None)] {
        let g = group(name);
        let closure = enumerate_indexing_systems(&g);
        let filter = enumerate_by_filter(&g);
        ensure!(closure == filter, "{name}: the two enumerators disagree");
        if let Some(n) = exact {
            ensure!(closure.len() == n, "{name}: {} systems, expected {n}", closure.len());
        }
        ensure!(closure.len() == golden[name], "{name}: {} systems, golden file has {}", closure.len(), golden[name]);
        counts.push(format!("{name}={}", closure.len()));
    }
    Ok(counts.join(" "))
}

fn dictionary_roundtrips() -> Outcome {
    let mut systems = 0;
    for name in ["C2", "C4", "S3"] {
        let g = group(name);
        let maps = orbit_maps(&g);
        for sys in enumerate_indexing_systems(&g) {
            let bh = sys.to_blumberg_hill();
            ensure!(bh.violations().is_empty(), "{name} {sys}: family violates {:?}", bh.violations());
            ensure!(IndexingSystem::from_blumberg_hill(&bh).as_ref() == Ok(&sys), "{name} {sys}: family roundtrip");
            let bar = sys.to_bar_closure();
            ensure!(bar.recover() == sys, "{name} {sys}: closure roundtrip");
            ensure!(bar.check(3).is_none(), "{name} {sys}: closure fails its own check");
            for f in &maps {
                ensure!(bar.contains(f) == bh.admits_map(f), "{name} {sys}: presentations disagree on {:?}", f.map());
            }
            systems += 1;
        }
    }
    for c in 1..=6u8 {
        let fam = BHFamily::counterexample(c).map_err(|e| e.to_string())?;
        let found: Vec<u8> = fam.violations().iter().map(|v| v.0).collect();
        ensure!(found.contains(&c), "counterexample for condition {c} reports {found:?}");
        ensure!(IndexingSystem::from_blumberg_hill(&fam).is_err(), "counterexample for condition {c} accepted");
    }
    Ok(format!("{systems} systems roundtrip; conditions 1-6 caught"))
}

fn commutative_suboperads() -> Outcome {
    let mut total = 0;
    for name in ["C2", "C4"] {
        let g = group(name);
        let base = small(&g, g.order());
        let systems = enumerate_indexing_systems(&g);
        let mut keys = Vec::new();
        for sys in &systems {
            let op = com_operad(sys, base.clone()).map_err(|e| e.to_string())?;
            let r = check_operad_axioms(&op);
            ensure!(r.passed, "{name} {sys}: {:?}", r.failed_axioms());
            ensure!(is_unital(&op), "{name} {sys}: not unital");
            ensure!(recover_indexing(&op).as_ref() == Ok(sys), "{name} {sys}: recovery differs");
            keys.push(morphism_key(&op));
        }
        for (i, a) in systems.iter().enumerate() {
            for (j, b) in systems.iter().enumerate() {
                ensure!((keys[i] == keys[j]) == (i == j), "{name}: {a} and {b} give the same operad");
                ensure!(a.is_subsystem_of(b) == keys[i].is_subset(&keys[j]), "{name}: order not preserved for {a}, {b}");
            }
        }
        let com = full_com(base.clone());
        ensure!(check_operad_axioms(&com).passed && is_unital(&com), "{name}: Com fails");
        total += systems.len();
    }
    Ok(format!("{total} suboperads over C2, C4"))
}

fn operadic_nerve_theorem() -> Outcome {
    let mut homs = 0;
    for name in ["C2", "C4"] {
        let g = group(name);
        let base = small(&g, NERVE_BOUND);
        let nerve = operadic_nerve(Arc::new(ThinTheory::commutative(g.clone())), base.clone()).map_err(|e| e.to_string())?;
        ensure!(nerve.object_count() == base.len(), "{name}: {} objects, base has {}", nerve.object_count(), base.len());
        for x in 0..nerve.object_count() {
            for y in 0..nerve.object_count() {
                let (a, c) = (nerve.object(x).base, nerve.object(y).base);
                let expected = common::hom_count(base.object(a), base.object(c));
                ensure!(nerve.hom(x, y).len() == expected, "{name}: hom {a} → {c} has {}, expected {expected}", nerve.hom(x, y).len());
                homs += 1;
            }
        }
    }
    let base = small(&group("C2"), 3);
    for name in ["colored_com_c2.json", "colored_triv_c2.json", "colored_two_colors_c2.json", "colored_bool.json"] {
        let theory = colored_fixture(name);
        ensure!(check_colored_axioms(theory.as_ref()).passed, "{name} fails the colored axioms");
        let op = operadic_nerve(theory, base.clone()).map_err(|e| e.to_string())?.materialize();
        let r = check_operad_axioms(&op);
        ensure!(r.passed, "nerve of {name}: {:?}", r.failed_axioms());
    }
    for (name, axiom) in
        [("colored_no_unit.json", "unit"), ("colored_no_fold3.json", "composition"), ("colored_no_free_fold.json", "base-change")]
    {
        let report = check_colored_axioms(colored_fixture(name).as_ref());
        let failed = report.failed_axioms();
        ensure!(failed == vec![axiom], "{name}: failed {failed:?}, expected [{axiom}]");
    }
    Ok(format!("{homs} hom-sets match; 4 nerves pass; 3 mutations caught"))
}

fn factorization_system() -> Outcome {
    let g = group("C2");
    let search = BaseCategory::new(g.clone(), BaseVariant::Small, FACTOR_BOUND * g.order());
    let (checked, failures) = common::factorization_failures(&search, FACTOR_BOUND);
    let total = small(&g, FACTOR_BOUND).morphism_count();
    ensure!(checked == total, "checked {checked} of {total} morphisms");
    ensure!(failures.is_empty(), "{} morphisms without a unique factorization, first {:?}", failures.len(), failures[0]);
    let bounded = small(&g, FACTOR_BOUND);
    let right = common::right_cancellation_failures(&bounded);
    ensure!(right.is_empty(), "inert right cancellation fails at {:?}", right[0]);

    let pt = GSet::point(g.clone());
    let empty = GSet::empty(g.clone());
    let a = Arc::new(ArrowObject::new(&GMap::identity(&pt)));
    let b = Arc::new(ArrowObject::new(&GMap::new(empty.clone(), pt, vec![]).unwrap()));
    let c = Arc::new(ArrowObject::new(&GMap::identity(&empty)));
    let f = SpanMorphism::new(a, b.clone(), vec![0], vec![], vec![]).map_err(|e| e.to_string())?;
    let h = SpanMorphism::new(b, c, vec![], vec![], vec![]).map_err(|e| e.to_string())?;
    let gf = f.then(&h).map_err(|e| e.to_string())?;
    ensure!(h.is_active() && gf.is_active() && !f.is_active(), "the left-cancellation witness does not have the expected classes");
    Ok(format!("{checked} morphisms factor uniquely; right cancellation exhaustive; witness [*=*]→[∅→*]→[∅→∅]"))
}

fn burnside_tables() -> Outcome {
    for name in ["C2", "C4", "S3"] {
        let g = group(name);
        let spans = burnside_table_by(&g, BurnsideRoute::Spans);
        for route in [BurnsideRoute::ProductOrbits, BurnsideRoute::DoubleCosets] {
            let other = burnside_table_by(&g, route);
            ensure!(other == spans, "{name}: {route:?} differs from span composition");
        }
        let laws = spans.law_failures();
        ensure!(laws.is_empty(), "{name}: {}", laws[0]);
    }
    Ok("three routes agree on C2, C4, S3; laws hold".into())
}

fn envelope_of_triv() -> Outcome {
    let g = group("C2");
    let report = envelope_triv_correspondence(&g, ENVELOPE_ARITY);
    ensure!(report.passed(), "correspondence fails: {:?}", report);
    let lat = g.lattice();
    let top = lat.class_of(lat.id_of(&g.whole()));
    let cell = report.cells.iter().find(|c| c.class == top && c.n == 2).ok_or("no cell for (C2, 2)")?;
    ensure!((cell.envelope, cell.graph, cell.h_sets) == (2, 2, 2), "cell (C2, 2) is {cell:?}");
    let base = Arc::new(BaseCategory::with_arity(g, ENVELOPE_ARITY));
    let env = envelope(&Arc::new(triv_inert(base)), EnvTargets::Orbits);
    let r = check_cocartesian_criterion(&env);
    ensure!(r.passed, "envelope fails the cocartesian criterion: {:?}", r.violations);
    ensure!(check_operad_axioms(&env).passed, "envelope fails the operad axioms");
    Ok(format!("{} cells agree, (C2, 2) = 2 = 2 = 2; {} hom pairs; lifts cocartesian", report.cells.len(), report.hom_pairs))
}

fn unitality() -> Outcome {
    for name in ["C2", "C4"] {
        let g = group(name);
        let base = small(&g, 3);
        ensure!(is_unital(&full_com(base.clone())), "{name}: Com not unital");
        ensure!(!is_unital(&triv_inert(base.clone())), "{name}: Triv unital");
        ensure!(is_unital(&e0_operad(base.clone())), "{name}: E0 not unital");
        for sys in enumerate_indexing_systems(&g) {
            ensure!(is_unital(&com_operad(&sys, base.clone()).unwrap()), "{name}: Com_{sys} not unital");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(POSET_SEED);
    let bases: Vec<Arc<BaseCategory>> = ["C2", "C3", "S3"].iter().map(|n| small(&group(n), 3)).collect();
    for i in 0..RANDOM_POSETS {
        let base = &bases[i % bases.len()];
        let cat = Arc::new(TCategory::random_poset(base.group(), POSET_MAX_POINTS, &mut rng));
        let op = triv_operad(base.clone(), cat.clone());
        let obj = cat.object_gset();
        // Objects of C over an orbit with stabilizer K are the K-fixed objects.
        let fixed = |u: &GSet, p: usize| {
            (0..obj.size()).filter(|&c| u.group().elements().all(|e| u.act(e, p) != p || obj.act(e, c) == c)).count()
        };
        for a in 0..base.len() {
            let u = base.object(a).u();
            let expected: usize = u.orbits().iter().map(|o| fixed(u, o[0])).product();
            ensure!(op.fiber(a).len() == expected, "poset {i}: fiber over {a} has {}, expected {expected}", op.fiber(a).len());
        }
    }
    Ok(format!("Com, E0, Com_I unital; Triv not; {RANDOM_POSETS} random posets"))
}

fn atomic_orbital() -> Outcome {
    for g in FiniteGroup::fixtures() {
        let r = verify_atomic_orbital(&g);
        ensure!(r.passed, "{}: {:?}", g.name(), r.witness);
    }
    let r = verify_atomic_category("split-epi", &FiniteCategory::split_epi_example());
    ensure!(!r.passed, "split epi example passes");
    let witness = r.witness.ok_or("split epi example fails without a witness")?;
    Ok(format!("8 fixture groups pass; split epi: {witness}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("indexing-system counts", indexing_counts),
        ("dictionary roundtrips", dictionary_roundtrips),
        ("commutative suboperads", commutative_suboperads),
        ("operadic nerve", operadic_nerve_theorem),
        ("factorization system", factorization_system),
        ("burnside tables", burnside_tables),
        ("envelope of Triv", envelope_of_triv),
        ("unitality", unitality),
        ("atomic orbital", atomic_orbital),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
