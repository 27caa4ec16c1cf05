//! The axiom checker: functoriality, cocartesian lifts of inert morphisms,
//! the Segal condition on fibers, and the multimorphism decomposition.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::DiscreteTOperad;
use crate::span::characteristic_morphism;

pub const FUNCTORIALITY: &str = "functoriality";
pub const COCARTESIAN: &str = "cocartesian-lift";
pub const SEGAL: &str = "segal";
pub const DECOMPOSITION: &str = "decomposition-3prime";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: String,
}

impl Violation {
    pub(crate) fn new(axiom: &str, witness: String) -> Self {
        Violation { axiom: axiom.to_string(), witness }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub subject: String,
    pub passed: bool,
    /// The bound on `|U|` of the base the checks ran over.
    pub max_size: usize,
    /// Sorted; at most `witnesses_per_axiom` per axiom.
    pub violations: Vec<Violation>,
    /// Number of violations found per axiom, before truncation.
    pub counts: BTreeMap<String, usize>,
}

impl AxiomReport {
    pub(crate) fn from_violations(subject: &str, max_size: usize, mut all: Vec<Violation>, keep: usize) -> Self {
        all.sort();
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        let mut violations = Vec::new();
        for v in all {
            let c = counts.entry(v.axiom.clone()).or_default();
            *c += 1;
            if *c <= keep {
                violations.push(v);
            }
        }
        AxiomReport { subject: subject.to_string(), passed: violations.is_empty(), max_size, violations, counts }
    }

    pub fn failed_axioms(&self) -> Vec<&str> {
        self.counts.keys().map(String::as_str).collect()
    }

    pub fn fails(&self, axiom: &str) -> bool {
        self.counts.contains_key(axiom)
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    /// Check associativity on every composable triple when there are at most
    /// this many; otherwise sample.
    pub associativity_cap: usize,
    pub associativity_samples: usize,
    pub seed: u64,
    pub witnesses_per_axiom: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { associativity_cap: 2_000_000, associativity_samples: 200_000, seed: 0, witnesses_per_axiom: 20 }
    }
}

pub fn check_operad_axioms(op: &DiscreteTOperad) -> AxiomReport {
    check_operad_axioms_with(op, &CheckOptions::default())
}

/// Runs functoriality first; the remaining axioms presuppose it and are only
/// checked when it holds.
pub fn check_operad_axioms_with(op: &DiscreteTOperad, opts: &CheckOptions) -> AxiomReport {
    let mut all = check_functoriality(op, opts);
    if all.is_empty() {
        all.extend(check_inert_lifts(op));
        all.extend(check_segal(op));
        all.extend(check_decomposition(op));
    }
    AxiomReport::from_violations(op.name(), op.base().max_size(), all, opts.witnesses_per_axiom)
}

/// The criterion for cocartesian fibrations: every base morphism out of every
/// object has a cocartesian lift, flags sit exactly on the cocartesian edges
/// over inert morphisms, and the Segal condition holds.
pub fn check_cocartesian_criterion(op: &DiscreteTOperad) -> AxiomReport {
    let opts = CheckOptions::default();
    let mut all = check_functoriality(op, &opts);
    if all.is_empty() {
        all.extend(check_all_lifts(op));
        all.extend(check_flags_match_cocartesian(op));
        all.extend(check_segal(op));
    }
    AxiomReport::from_violations(op.name(), op.base().max_size(), all, opts.witnesses_per_axiom)
}

fn check_functoriality(op: &DiscreteTOperad, opts: &CheckOptions) -> Vec<Violation> {
    let n = op.morphism_count();
    let base = op.base();
    let mut out: Vec<Violation> = (0..n)
        .into_par_iter()
        .flat_map_iter(|f| {
            let mut v = Vec::new();
            let m = op.morphism(f);
            if op.compose(op.identity(m.src), f) != Some(f) || op.compose(f, op.identity(m.dst)) != Some(f) {
                v.push(Violation::new(FUNCTORIALITY, format!("unit law fails at morphism {f}")));
            }
            let (a, b) = op.base_endpoints(f);
            for &g in op.out(m.dst) {
                let c = op.object(op.morphism(g).dst).base;
                match op.compose(f, g) {
                    None => v.push(Violation::new(FUNCTORIALITY, format!("no composite of {f} then {g}"))),
                    Some(h) => {
                        let mh = op.morphism(h);
                        if mh.src != m.src || mh.dst != op.morphism(g).dst {
                            v.push(Violation::new(FUNCTORIALITY, format!("composite of {f} then {g} has wrong endpoints")));
                        } else if mh.base != base.compose(a, b, c, m.base, op.morphism(g).base) {
                            v.push(Violation::new(
                                FUNCTORIALITY,
                                format!("composite of {f} then {g} is not over the composite base morphism"),
                            ));
                        }
                    }
                }
            }
            v
        })
        .collect();
    if !out.is_empty() {
        return out;
    }
    let triples: usize = (0..n)
        .map(|f| op.out(op.morphism(f).dst).iter().map(|&g| op.out(op.morphism(g).dst).len()).sum::<usize>())
        .sum();
    let assoc = |f: usize, g: usize, h: usize| -> Option<Violation> {
        let fg = op.compose(f, g)?;
        let gh = op.compose(g, h)?;
        (op.compose(fg, h) != op.compose(f, gh))
            .then(|| Violation::new(FUNCTORIALITY, format!("associativity fails at ({f}, {g}, {h})")))
    };
    if triples <= opts.associativity_cap {
        out.par_extend((0..n).into_par_iter().flat_map_iter(|f| {
            let mut v = Vec::new();
            for &g in op.out(op.morphism(f).dst) {
                for &h in op.out(op.morphism(g).dst) {
                    v.extend(assoc(f, g, h));
                }
            }
            v
        }));
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.associativity_samples {
            let f = rng.gen_range(0..n);
            let gs = op.out(op.morphism(f).dst);
            let g = gs[rng.gen_range(0..gs.len())];
            let hs = op.out(op.morphism(g).dst);
            let h = hs[rng.gen_range(0..hs.len())];
            out.extend(assoc(f, g, h));
        }
    }
    out
}

/// Flagged edges out of `x` over the base morphism `pos: base(x) → b`.
pub(crate) fn flagged_lifts(op: &DiscreteTOperad, x: usize, b: usize, pos: usize) -> Vec<usize> {
    op.out(x)
        .iter()
        .copied()
        .filter(|&f| {
            let m = op.morphism(f);
            m.inert && m.base == pos && op.object(m.dst).base == b
        })
        .collect()
}

/// `None` if `e` has the unique filler property, otherwise a description of
/// the failure: for every `t: x → z` and every base `ψ'` with `ψ' ∘ ψ = p(t)`
/// there must be exactly one `h: y → z` over `ψ'` with `h ∘ e = t`.
pub(crate) fn cocartesian_failure(op: &DiscreteTOperad, e: usize) -> Option<String> {
    let me = op.morphism(e);
    let (x, y) = (me.src, me.dst);
    let (a, b) = op.base_endpoints(e);
    let base = op.base();
    for z in 0..op.object_count() {
        let c = op.object(z).base;
        let through = op.hom(x, z);
        let from_y = op.hom(y, z);
        if through.is_empty() && from_y.is_empty() {
            continue;
        }
        let mut fact: HashMap<usize, Vec<usize>> = HashMap::new();
        for j in 0..base.hom(b, c).len() {
            fact.entry(base.compose(a, b, c, me.base, j)).or_default().push(j);
        }
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for &h in from_y {
            let t = op.compose(e, h)?;
            *count.entry((t, op.morphism(h).base)).or_default() += 1;
        }
        for &t in through {
            for &j in fact.get(&op.morphism(t).base).map(Vec::as_slice).unwrap_or(&[]) {
                let k = count.get(&(t, j)).copied().unwrap_or(0);
                if k != 1 {
                    return Some(format!("edge {e}: {k} fillers for morphism {t} over base position {j} into object {z}"));
                }
            }
        }
    }
    None
}

fn invertible(op: &DiscreteTOperad, f: usize) -> bool {
    let m = op.morphism(f);
    op.hom(m.dst, m.src)
        .iter()
        .any(|&g| op.compose(f, g) == Some(op.identity(m.src)) && op.compose(g, f) == Some(op.identity(m.dst)))
}

fn check_inert_lifts(op: &DiscreteTOperad) -> Vec<Violation> {
    let base = op.base();
    let mut out: Vec<Violation> = (0..op.morphism_count())
        .into_par_iter()
        .filter_map(|f| {
            (op.is_flagged(f) && !op.base_morphism(f).is_inert())
                .then(|| Violation::new(COCARTESIAN, format!("flagged edge {f} lies over a non-inert base morphism")))
        })
        .collect();
    out.par_extend((0..op.object_count()).into_par_iter().flat_map_iter(|x| {
        let a = op.object(x).base;
        let mut v = Vec::new();
        for b in 0..base.len() {
            for (pos, psi) in base.hom(a, b).iter().enumerate() {
                if psi.is_inert() && flagged_lifts(op, x, b, pos).is_empty() {
                    v.push(Violation::new(
                        COCARTESIAN,
                        format!("object {x}: no flagged lift of inert base morphism {a}->{b}#{pos}"),
                    ));
                }
            }
        }
        v
    }));
    out.par_extend((0..op.morphism_count()).into_par_iter().filter_map(|e| {
        if !op.is_flagged(e) {
            return None;
        }
        cocartesian_failure(op, e).map(|w| Violation::new(COCARTESIAN, format!("flagged edge is not cocartesian: {w}")))
    }));
    out.extend(check_flags_match_cocartesian(op));
    out
}

/// Cocartesian edges over inert base morphisms must carry the flag.
fn check_flags_match_cocartesian(op: &DiscreteTOperad) -> Vec<Violation> {
    (0..op.morphism_count())
        .into_par_iter()
        .filter_map(|e| {
            (!op.is_flagged(e) && op.base_morphism(e).is_inert() && cocartesian_failure(op, e).is_none()).then(|| {
                Violation::new(COCARTESIAN, format!("edge {e} is cocartesian over an inert base morphism but not flagged"))
            })
        })
        .collect()
}

fn check_all_lifts(op: &DiscreteTOperad) -> Vec<Violation> {
    let base = op.base();
    (0..op.object_count())
        .into_par_iter()
        .flat_map_iter(|x| {
            let a = op.object(x).base;
            let mut v = Vec::new();
            for b in 0..base.len() {
                for pos in 0..base.hom(a, b).len() {
                    let lifted = op.out(x).iter().any(|&e| {
                        let m = op.morphism(e);
                        m.base == pos && op.object(m.dst).base == b && cocartesian_failure(op, e).is_none()
                    });
                    if !lifted {
                        v.push(Violation::new(COCARTESIAN, format!("object {x}: no cocartesian lift of {a}->{b}#{pos}")));
                    }
                }
            }
            for &e in op.out(x) {
                if op.is_flagged(e) && (!op.base_morphism(e).is_inert() || cocartesian_failure(op, e).is_some()) {
                    v.push(Violation::new(COCARTESIAN, format!("flagged edge {e} is not a cocartesian lift of an inert")));
                }
            }
            v
        })
        .collect()
}

/// Characteristic morphisms of every orbit of `a`, as (target, position).
pub(crate) fn characteristic_positions(op: &DiscreteTOperad, a: usize) -> Option<Vec<(usize, usize)>> {
    let base = op.base();
    let obj = base.object(a);
    obj.orbits()
        .iter()
        .map(|w| {
            let chi = characteristic_morphism(obj, w).ok()?;
            let c = base.find(chi.target())?;
            Some((c, base.position(a, c, &chi)?))
        })
        .collect()
}

/// The unique target of flagged lifts of `x` along `(b, pos)`, if there is one.
pub(crate) fn lift_target(op: &DiscreteTOperad, x: usize, b: usize, pos: usize) -> Result<usize, usize> {
    let mut targets: Vec<usize> = flagged_lifts(op, x, b, pos).iter().map(|&f| op.morphism(f).dst).collect();
    targets.sort_unstable();
    targets.dedup();
    if targets.len() == 1 {
        Ok(targets[0])
    } else {
        Err(targets.len())
    }
}

fn check_segal(op: &DiscreteTOperad) -> Vec<Violation> {
    let base = op.base();
    (0..base.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut v = Vec::new();
            let id_a = base.identity_position(a);
            let fiber = op.fiber(a);
            for (i, &x) in fiber.iter().enumerate() {
                for &x2 in &fiber[i + 1..] {
                    if op.hom_over(x, x2, id_a).any(|u| invertible(op, u)) {
                        v.push(Violation::new(SEGAL, format!("fiber over {a} is not skeletal: objects {x} and {x2} are isomorphic")));
                    }
                }
            }
            let Some(chis) = characteristic_positions(op, a) else {
                return v;
            };
            let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
            for &x in fiber {
                let mut tuple = Vec::with_capacity(chis.len());
                for &(c, pos) in &chis {
                    match lift_target(op, x, c, pos) {
                        Ok(t) => tuple.push(t),
                        Err(0) => break,
                        Err(k) => {
                            v.push(Violation::new(SEGAL, format!("object {x}: flagged lifts along {a}->{c}#{pos} reach {k} objects")));
                            break;
                        }
                    }
                }
                if tuple.len() != chis.len() {
                    continue;
                }
                if let Some(prev) = seen.insert(tuple, x) {
                    v.push(Violation::new(SEGAL, format!("objects {prev} and {x} over {a} have the same orbit components")));
                }
            }
            let expected: usize = chis.iter().map(|&(c, _)| op.fiber(c).len()).product();
            if seen.len() < expected && v.is_empty() {
                v.push(Violation::new(
                    SEGAL,
                    format!("fiber over {a} has {} objects, product of orbit fibers has {expected}", fiber.len()),
                ));
            }
            v
        })
        .collect()
}

/// For a fiberwise active `α: a → b` and an orbit `W` of the target, the
/// positions of `ρ': a → mid` (inert) and `α_W: mid → c_W` (fiberwise active)
/// factoring `χ_W ∘ α`, plus `χ_W` itself.
#[derive(Debug, Clone, Copy)]
pub(crate) struct OrbitFactor {
    pub mid: usize,
    pub rho: usize,
    pub c: usize,
    pub chi: usize,
    pub alpha_w: usize,
}

pub(crate) fn orbit_factors(op: &DiscreteTOperad, a: usize, b: usize, alpha: usize) -> Option<Vec<OrbitFactor>> {
    let base = op.base();
    let chis = characteristic_positions(op, b)?;
    chis.into_iter()
        .map(|(c, chi)| {
            let comp = &base.hom(a, c)[base.compose(a, b, c, alpha, chi)];
            let (rho, act) = comp.factorize_fiberwise()?;
            let mid = base.find(rho.target())?;
            Some(OrbitFactor { mid, rho: base.position(a, mid, &rho)?, c, chi, alpha_w: base.position(mid, c, &act)? })
        })
        .collect()
}

/// The components `(h_W)_W` of `h: x → y` over a fiberwise active morphism,
/// given the lifts `e_x: x → x_W` and `e_y: y → y_W`. `Err` describes a
/// missing or non-unique component.
pub(crate) fn components(
    op: &DiscreteTOperad,
    h: usize,
    factors: &[OrbitFactor],
    lifts: &[(usize, usize)],
) -> Result<Vec<usize>, String> {
    let mut out = Vec::with_capacity(factors.len());
    for (fw, &(ex, ey)) in factors.iter().zip(lifts) {
        let t = op.compose(h, ey).ok_or("missing composite")?;
        let (xw, yw) = (op.morphism(ex).dst, op.morphism(ey).dst);
        let found: Vec<usize> = op.hom_over(xw, yw, fw.alpha_w).filter(|&hw| op.compose(ex, hw) == Some(t)).collect();
        if found.len() != 1 {
            return Err(format!("{} components over orbit target {}", found.len(), fw.c));
        }
        out.push(found[0]);
    }
    Ok(out)
}

fn check_decomposition(op: &DiscreteTOperad) -> Vec<Violation> {
    let base = op.base();
    let n = base.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    pairs
        .into_par_iter()
        .flat_map_iter(|(a, b)| {
            let mut v = Vec::new();
            if op.fiber(a).is_empty() || op.fiber(b).is_empty() {
                return v;
            }
            for (alpha, m) in base.hom(a, b).iter().enumerate() {
                if !(m.is_fiberwise() && m.is_active()) {
                    continue;
                }
                let Some(factors) = orbit_factors(op, a, b, alpha) else { continue };
                for &x in op.fiber(a) {
                    let ex: Option<Vec<usize>> =
                        factors.iter().map(|f| flagged_lifts(op, x, f.mid, f.rho).first().copied()).collect();
                    let Some(ex) = ex else { continue };
                    for &y in op.fiber(b) {
                        let ey: Option<Vec<usize>> =
                            factors.iter().map(|f| flagged_lifts(op, y, f.c, f.chi).first().copied()).collect();
                        let Some(ey) = ey else { continue };
                        let lifts: Vec<(usize, usize)> = ex.iter().copied().zip(ey.iter().copied()).collect();
                        let expected: usize = factors
                            .iter()
                            .zip(&lifts)
                            .map(|(f, &(e1, e2))| op.hom_over(op.morphism(e1).dst, op.morphism(e2).dst, f.alpha_w).count())
                            .product();
                        let mut seen = HashSet::new();
                        let mut ok = true;
                        for h in op.hom_over(x, y, alpha) {
                            match components(op, h, &factors, &lifts) {
                                Ok(t) => {
                                    if !seen.insert(t) {
                                        v.push(Violation::new(
                                            DECOMPOSITION,
                                            format!("{x}->{y} over {a}->{b}#{alpha}: two morphisms share components"),
                                        ));
                                        ok = false;
                                    }
                                }
                                Err(w) => {
                                    v.push(Violation::new(DECOMPOSITION, format!("{x}->{y} over {a}->{b}#{alpha}: morphism {h} has {w}")));
                                    ok = false;
                                }
                            }
                        }
                        if ok && seen.len() != expected {
                            v.push(Violation::new(
                                DECOMPOSITION,
                                format!("{x}->{y} over {a}->{b}#{alpha}: {} morphisms, product of components has {expected}", seen.len()),
                            ));
                        }
                    }
                }
            }
            v
        })
        .collect()
}
