use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use toperad::category::verify_atomic_orbital;
use toperad::colored::{check_colored_axioms_with, load_theory, operadic_nerve, ColoredCheckOptions, ColoredJson};
use toperad::equivariant::{burnside_table, class_label, envelope_triv_correspondence, graph_subgroups};
use toperad::group::{FiniteGroup, GroupRef};
use toperad::gset::{pullback, GMapJson, GSetJson};
use toperad::indexing::{
    enumerate_indexing_systems, generate_closure, hasse, is_indexing_system, subgroup_label, IndexingJson, IndexingSystem,
};
use toperad::operad::{
    check_cocartesian_criterion, check_operad_axioms_with, envelope, is_unital, mul_set, triv_inert, AxiomReport, CheckOptions,
    DiscreteTOperad, EnvTargets, OperadJson,
};
use toperad::span::{burnside_hom_set, hom_set, ArrowJson, ArrowObject, BaseCategory, BaseVariant, SpanJson, SpanMorphism};
use toperad::{GMap, GSet};

use crate::{Failure, Format, Opts, Outcome};

type Res = Result<Outcome, Failure>;

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn group(o: &Opts) -> Result<GroupRef, Failure> {
    let name = o.group.as_deref().ok_or_else(|| Failure::Input("--group is required".into()))?;
    Ok(FiniteGroup::fixture(name)?)
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Renders text or JSON; DOT only where a command supplies it.
fn emit<T: Serialize>(o: &Opts, value: &T, text: impl FnOnce() -> String, passed: bool) -> Res {
    let output = match o.format {
        Format::Text => text(),
        Format::Json => pretty(value),
        Format::Dot => return Err(Failure::Input("--format dot is not available for this command".into())),
    };
    Ok(Outcome { output, passed })
}

fn report_text(r: &AxiomReport) -> String {
    let mut s = format!("{}: {} (|U| ≤ {})\n", r.subject, if r.passed { "pass" } else { "FAIL" }, r.max_size);
    for (axiom, n) in &r.counts {
        let _ = writeln!(s, "  {axiom}: {n} violation(s)");
    }
    for v in &r.violations {
        let _ = writeln!(s, "  [{}] {}", v.axiom, v.witness);
    }
    s
}

pub fn groups_list(o: &Opts) -> Res {
    let groups = FiniteGroup::fixtures();
    let rows: Vec<_> = groups
        .iter()
        .map(|g| json!({"name": g.name(), "order": g.order(), "subgroups": g.lattice().len(), "classes": g.lattice().num_classes()}))
        .collect();
    emit(
        o,
        &rows,
        || {
            let mut s = String::new();
            for g in &groups {
                let _ = writeln!(s, "{:<8} order {:>2}  subgroups {:>2}  classes {:>2}", g.name(), g.order(), g.lattice().len(), g.lattice().num_classes());
            }
            s
        },
        true,
    )
}

pub fn groups_show(o: &Opts) -> Res {
    let g = group(o)?;
    let lat = g.lattice();
    let n = lat.len();
    let covers: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && lat.is_below(a, b) && !(0..n).any(|c| c != a && c != b && lat.is_below(a, c) && lat.is_below(c, b)))
        .collect();
    if o.format == Format::Dot {
        let mut s = format!("digraph \"{}\" {{\n  rankdir=BT;\n", g.name());
        for id in 0..n {
            let _ = writeln!(s, "  s{id} [label=\"{} ({})\"];", subgroup_label(&g, id), lat.subgroup(id).order());
        }
        for (a, b) in &covers {
            let _ = writeln!(s, "  s{a} -> s{b};");
        }
        s.push_str("}\n");
        return Ok(Outcome { output: s, passed: true });
    }
    let atomic = verify_atomic_orbital(&g);
    let subgroups: Vec<_> = (0..n)
        .map(|id| {
            let h = lat.subgroup(id);
            json!({"id": id, "label": subgroup_label(&g, id), "order": h.order(), "class": lat.class_of(id), "elements": h.elements()})
        })
        .collect();
    let value = json!({"name": g.name(), "order": g.order(), "abelian": g.is_abelian(), "subgroups": subgroups, "covers": covers, "atomic_orbital": atomic});
    emit(
        o,
        &value,
        || {
            let mut s = format!("{}: order {}, {}abelian\n", g.name(), g.order(), if g.is_abelian() { "" } else { "non-" });
            for id in 0..n {
                let h = lat.subgroup(id);
                let _ = writeln!(s, "  {:<4} order {:>2}  class {:>2}  {:?}", subgroup_label(&g, id), h.order(), lat.class_of(id), h.elements());
            }
            let _ = writeln!(s, "covers: {covers:?}");
            let _ = writeln!(
                s,
                "atomic-orbital: {} ({} pullbacks, {} morphisms scanned){}",
                if atomic.passed { "pass" } else { "FAIL" },
                atomic.pullbacks_checked,
                atomic.retract_scanned,
                atomic.witness.as_deref().map(|w| format!(": {w}")).unwrap_or_default()
            );
            s
        },
        atomic.passed,
    )
}

fn load_gset(j: &GSetJson) -> Result<GSet, Failure> {
    Ok(GSet::from_json(j, FiniteGroup::fixture(&j.group)?)?)
}

fn load_gmap(j: &GMapJson) -> Result<GMap, Failure> {
    Ok(GMap::from_json(j, FiniteGroup::fixture(&j.source.group)?)?)
}

pub fn gset_orbits(o: &Opts, file: &Path) -> Res {
    let x = load_gset(&read(file)?)?;
    let g = x.group().clone();
    let orbits: Vec<_> = x
        .orbit_decomposition()
        .into_iter()
        .map(|p| json!({"points": p.points, "stabilizer": x.stabilizer_id(p.basepoint), "class": p.class, "type": class_label(&g, p.class)}))
        .collect();
    let value = json!({"group": g.name(), "size": x.size(), "orbits": orbits});
    emit(
        o,
        &value,
        || {
            let mut s = format!("{} points, {} orbits\n", x.size(), orbits.len());
            for p in x.orbit_decomposition() {
                let _ = writeln!(s, "  {} {:?}", class_label(&g, p.class), p.points);
            }
            s
        },
        true,
    )
}

pub fn gset_pullback(o: &Opts, f: &Path, g: &Path) -> Res {
    let f = load_gmap(&read(f)?)?;
    let g = load_gmap(&read(g)?)?;
    let (p, p1, p2) = pullback(&f, &g)?;
    let value = json!({"apex": p.to_json(), "p1": p1.map(), "p2": p2.map()});
    emit(
        o,
        &value,
        || {
            let grp = p.group();
            let types: Vec<String> = p.orbit_types().iter().map(|t| format!("{}×{}", t.multiplicity, class_label(grp, t.class))).collect();
            format!("pullback: {} points [{}]\n  p1 {:?}\n  p2 {:?}\n", p.size(), types.join(", "), p1.map(), p2.map())
        },
        true,
    )
}

fn class_name(m: &SpanMorphism) -> &'static str {
    match (m.is_inert(), m.is_active()) {
        (true, true) => "inert+active",
        (true, false) => "inert",
        (false, true) => "active",
        (false, false) => "mixed",
    }
}

fn span_line(m: &SpanMorphism) -> String {
    format!("{:<12} k={:?} S={:?} m={:?}", class_name(m), m.base_map(), m.apex(), m.forward())
}

fn load_arrow(j: &ArrowJson) -> Result<Arc<ArrowObject>, Failure> {
    Ok(Arc::new(ArrowObject::from_json(j, FiniteGroup::fixture(&j.u.group)?)?))
}

fn load_span(j: &SpanJson) -> Result<SpanMorphism, Failure> {
    Ok(SpanMorphism::from_json(j, FiniteGroup::fixture(&j.source.u.group)?)?)
}

pub fn span_hom(o: &Opts, source: Option<&Path>, target: Option<&Path>) -> Res {
    let (Some(source), Some(target)) = (source, target) else {
        if source.is_some() {
            return Err(Failure::Input("span hom takes two arrow files or none".into()));
        }
        return base_graph(o);
    };
    let a = load_arrow(&read(source)?)?;
    let b = load_arrow(&read(target)?)?;
    let homs = hom_set(&a, &b);
    let spans: Vec<SpanJson> = homs.iter().map(SpanMorphism::to_json).collect();
    emit(
        o,
        &spans,
        || {
            let mut s = format!("{} morphisms\n", homs.len());
            for m in &homs {
                let _ = writeln!(s, "  {}", span_line(m));
            }
            s
        },
        true,
    )
}

fn base_graph(o: &Opts) -> Res {
    let g = group(o)?;
    let base = BaseCategory::new(g, BaseVariant::Small, o.max_size);
    if o.format == Format::Dot {
        return Ok(Outcome { output: base.to_dot(), passed: true });
    }
    let mut by_class = std::collections::BTreeMap::<&str, usize>::new();
    for (_, _, m) in base.all_morphisms() {
        *by_class.entry(class_name(m)).or_default() += 1;
    }
    let value = json!({"group": base.group().name(), "max_size": o.max_size, "objects": base.len(), "morphisms": base.morphism_count(), "classes": by_class});
    emit(
        o,
        &value,
        || {
            let mut s = format!("{:?}: {} morphisms\n", base, base.morphism_count());
            for (c, n) in &by_class {
                let _ = writeln!(s, "  {c}: {n}");
            }
            s
        },
        true,
    )
}

pub fn span_compose(o: &Opts, first: &Path, second: &Path) -> Res {
    let f = load_span(&read(first)?)?;
    let g = load_span(&read(second)?)?;
    let h = f.then(&g)?;
    emit(o, &h.to_json(), || format!("{}\n", span_line(&h)), true)
}

pub fn span_factorize(o: &Opts, file: &Path) -> Res {
    let f = load_span(&read(file)?)?;
    let (inert, active) = f.factorize();
    let recomposes = inert.then(&active).is_ok_and(|c| c == f);
    let ok = inert.is_inert() && active.is_active() && recomposes;
    let value = json!({"inert": inert.to_json(), "active": active.to_json(), "recomposes": recomposes});
    emit(o, &value, || format!("inert  {}\nactive {}\nrecomposes: {recomposes}\n", span_line(&inert), span_line(&active)), ok)
}

fn check_options(o: &Opts) -> CheckOptions {
    CheckOptions { seed: o.seed, ..CheckOptions::default() }
}

pub fn operad_check(o: &Opts, file: &Path) -> Res {
    let j: OperadJson = read(file)?;
    let op = DiscreteTOperad::from_json(&j)?;
    let r = check_operad_axioms_with(&op, &check_options(o));
    let passed = r.passed;
    emit(o, &r, || report_text(&r), passed)
}

fn small_base(o: &Opts) -> Result<Arc<BaseCategory>, Failure> {
    Ok(Arc::new(BaseCategory::new(group(o)?, BaseVariant::Small, o.max_size)))
}

pub fn operad_triv(o: &Opts) -> Res {
    let op = triv_inert(small_base(o)?);
    let r = check_operad_axioms_with(&op, &check_options(o));
    let unital = is_unital(&op);
    let value = json!({"summary": op.summary(), "unital": unital, "report": r});
    emit(o, &value, || format!("{:?}\nunital: {unital}\n{}", op, report_text(&r)), r.passed)
}

pub fn operad_envelope(o: &Opts) -> Res {
    let g = group(o)?;
    let base = Arc::new(BaseCategory::with_arity(g.clone(), o.max_n));
    let env = envelope(&Arc::new(triv_inert(base)), EnvTargets::Orbits);
    let cocart = check_cocartesian_criterion(&env);
    let corr = envelope_triv_correspondence(&g, o.max_n);
    let passed = cocart.passed && corr.passed();
    let value = json!({"summary": env.summary(), "cocartesian": cocart, "correspondence": corr});
    emit(
        o,
        &value,
        || {
            let mut s = format!("{env:?}\n{}", report_text(&cocart));
            let _ = writeln!(s, "orbit  n  envelope  graph  H-sets");
            for c in &corr.cells {
                let _ = writeln!(s, "{:<6} {}  {:>8}  {:>5}  {:>6}", class_label(&g, c.class), c.n, c.envelope, c.graph, c.h_sets);
            }
            let _ = writeln!(s, "hom-sets compared: {}, mismatches: {}", corr.hom_pairs, corr.hom_mismatches.len());
            for m in &corr.hom_mismatches {
                let _ = writeln!(s, "  {m}");
            }
            let _ = writeln!(s, "correspondence: {}", if corr.passed() { "pass" } else { "FAIL" });
            s
        },
        passed,
    )
}

pub fn operad_mulset(o: &Opts, file: &Path, [a, b, alpha, x, y]: [usize; 5]) -> Res {
    let j: OperadJson = read(file)?;
    let op = DiscreteTOperad::from_json(&j)?;
    let m = mul_set(&op, a, b, alpha, x, y)?;
    let passed = m.len() == m.product_size();
    emit(
        o,
        &m,
        || {
            let mut s = format!("Mul over ({a}, {b}, {alpha}) from {x} to {y}: {} element(s), product of factors {}\n", m.len(), m.product_size());
            for (e, d) in m.elements.iter().zip(&m.decomposition) {
                let _ = writeln!(s, "  {e} ↦ {d:?}");
            }
            s
        },
        passed,
    )
}

pub fn colored_check(o: &Opts, file: &Path) -> Res {
    let t = load_theory(&read::<ColoredJson>(file)?)?;
    let opts = ColoredCheckOptions { max_size: o.max_size, seed: o.seed, ..ColoredCheckOptions::default() };
    let r = check_colored_axioms_with(t.as_ref(), &opts);
    let passed = r.passed;
    emit(o, &r, || report_text(&r), passed)
}

pub fn colored_nerve(o: &Opts, file: &Path) -> Res {
    let t = load_theory(&read::<ColoredJson>(file)?)?;
    let base = Arc::new(BaseCategory::new(t.colors().group().clone(), BaseVariant::Small, o.max_size));
    let op = operadic_nerve(t, base)?.materialize();
    let r = check_operad_axioms_with(&op, &check_options(o));
    let value = json!({"summary": op.summary(), "report": r});
    emit(o, &value, || format!("{op:?}\n{}", report_text(&r)), r.passed)
}

fn load_system(file: &Path) -> Result<IndexingSystem, Failure> {
    Ok(IndexingSystem::from_json(&read::<IndexingJson>(file)?)?)
}

pub fn indexing_check(o: &Opts, file: &Path) -> Res {
    let c = is_indexing_system(&load_system(file)?);
    let valid = c.valid;
    emit(
        o,
        &c,
        || match &c.violation {
            None => "valid indexing system\n".to_string(),
            Some(v) => format!("invalid: [{}] {}\n", v.axiom, v.witness),
        },
        valid,
    )
}

pub fn indexing_closure(o: &Opts, file: &Path) -> Res {
    let seed = load_system(file)?;
    let closed = generate_closure(seed.group(), seed.pairs().iter().copied());
    emit(o, &closed.to_json(), || format!("{closed}\n"), true)
}

pub fn indexing_enumerate(o: &Opts) -> Res {
    let g = group(o)?;
    let systems = enumerate_indexing_systems(&g);
    let edges = hasse(&systems);
    if o.format == Format::Dot {
        let mut s = format!("digraph \"indexing {}\" {{\n  rankdir=BT;\n", g.name());
        for (i, sys) in systems.iter().enumerate() {
            let _ = writeln!(s, "  i{i} [label=\"{sys}\"];");
        }
        for (a, b) in &edges {
            let _ = writeln!(s, "  i{a} -> i{b};");
        }
        s.push_str("}\n");
        return Ok(Outcome { output: s, passed: true });
    }
    let listed: Vec<_> = systems.iter().enumerate().map(|(i, s)| json!({"index": i, "label": s.to_string(), "pairs": s.transfers()})).collect();
    let value = json!({"group": g.name(), "count": systems.len(), "systems": listed, "hasse": edges});
    emit(
        o,
        &value,
        || {
            let mut s = format!("{} indexing systems over {}\n", systems.len(), g.name());
            for (i, sys) in systems.iter().enumerate() {
                let _ = writeln!(s, "  {i:>3} {sys}");
            }
            let _ = writeln!(s, "hasse: {edges:?}");
            s
        },
        true,
    )
}

pub fn indexing_dict(o: &Opts) -> Res {
    let g = group(o)?;
    let lat = g.lattice();
    let mut rows = Vec::new();
    let mut all_ok = true;
    for sys in enumerate_indexing_systems(&g) {
        let bh = sys.to_blumberg_hill();
        let bh_ok = bh.validate().is_ok() && IndexingSystem::from_blumberg_hill(&bh).is_ok_and(|s| s == sys);
        let bar_ok = sys.to_bar_closure().recover() == sys;
        all_ok &= bh_ok && bar_ok;
        let admissible: Vec<_> = (0..lat.len())
            .map(|h| {
                let orbits: Vec<String> =
                    bh.orbit_content(h).iter().map(|&k| format!("{}/{}", subgroup_label(&g, h), subgroup_label(&g, k))).collect();
                json!({"subgroup": subgroup_label(&g, h), "admissible": orbits, "sets": bh.members(h).len()})
            })
            .collect();
        rows.push(json!({"system": sys.to_string(), "pairs": sys.transfers(), "admissible_sets": admissible, "bh_roundtrip": bh_ok, "bar_roundtrip": bar_ok}));
    }
    emit(
        o,
        &rows,
        || {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(s, "{}  bh {}  bar {}", r["system"].as_str().unwrap_or(""), ok(&r["bh_roundtrip"]), ok(&r["bar_roundtrip"]));
                for a in r["admissible_sets"].as_array().into_iter().flatten() {
                    let _ = writeln!(s, "  {}: {}", a["subgroup"].as_str().unwrap_or(""), a["admissible"]);
                }
            }
            s
        },
        all_ok,
    )
}

fn ok(v: &serde_json::Value) -> &'static str {
    if v.as_bool() == Some(true) {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn burnside(o: &Opts) -> Res {
    let g = group(o)?;
    let table = burnside_table(&g);
    let failures = table.law_failures();
    let orbits: Vec<GSet> = (0..g.lattice().num_classes()).map(|c| GSet::orbit_of_class(&g, c)).collect();
    let homs: Option<Vec<Vec<usize>>> =
        o.bound_apex.map(|bound| orbits.iter().map(|u| orbits.iter().map(|x| burnside_hom_set(u, x, bound).len()).collect()).collect());
    let value = json!({"table": table, "law_failures": failures, "hom_counts": homs, "bound_apex": o.bound_apex});
    emit(
        o,
        &value,
        || {
            let mut s = table.to_text();
            for f in &failures {
                let _ = writeln!(s, "law failure: {f}");
            }
            if let (Some(h), Some(b)) = (&homs, o.bound_apex) {
                let _ = writeln!(s, "spans between orbits with |Z| ≤ {b}:");
                for (i, row) in h.iter().enumerate() {
                    let _ = writeln!(s, "  {:<6} {row:?}", table.basis[i]);
                }
            }
            s
        },
        failures.is_empty(),
    )
}

pub fn graphsub(o: &Opts) -> Res {
    let g = group(o)?;
    let classes: Vec<_> = (0..=o.max_n).flat_map(|n| graph_subgroups(&g, n)).collect();
    emit(
        o,
        &classes,
        || {
            let mut s = String::new();
            for n in 0..=o.max_n {
                let here: Vec<_> = classes.iter().filter(|c| c.n == n).collect();
                let _ = writeln!(s, "n = {n}: {} classes", here.len());
                for c in here {
                    let _ = writeln!(s, "  H = {:<4} φ = {:?}", subgroup_label(&g, c.subgroup), c.phi);
                }
            }
            s
        },
        true,
    )
}
