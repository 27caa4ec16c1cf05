//! Exhaustive checks of the colored-operad axioms over G-sets of bounded size.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    base_change_total, mul_elements, product_count, sections, unit_along_iso, ColoredTheory, Square, Stacked,
    ASSOCIATIVITY, BASE_CHANGE, COMPOSITION, PRODUCT, UNIT,
};
use crate::equivariant::class_label;
use crate::gset::{equivariant_maps, pullback, GMap, GSet};
use crate::operad::{AxiomReport, Violation};

#[derive(Debug, Clone)]
pub struct ColoredCheckOptions {
    /// Bound on the size of every G-set in the checked diagrams.
    pub max_size: usize,
    /// Element tuples checked per diagram; more are sampled down to this.
    pub element_cap: usize,
    pub seed: u64,
    pub witnesses_per_axiom: usize,
}

impl Default for ColoredCheckOptions {
    fn default() -> Self {
        ColoredCheckOptions { max_size: 3, element_cap: 64, seed: 0, witnesses_per_axiom: 20 }
    }
}

pub fn check_colored_axioms(theory: &dyn ColoredTheory) -> AxiomReport {
    check_colored_axioms_with(theory, &ColoredCheckOptions::default())
}

pub fn check_colored_axioms_with(theory: &dyn ColoredTheory, opts: &ColoredCheckOptions) -> AxiomReport {
    let group = theory.colors().group().clone();
    let cx = Ctx {
        t: theory,
        orbits: (0..group.lattice().num_classes()).map(|c| GSet::orbit_of_class(&group, c)).collect(),
        sets: GSet::all_up_to_iso(&group, opts.max_size),
        opts,
    };
    let mut all = Vec::new();
    all.extend(cx.units());
    all.extend(cx.products());
    all.extend(cx.associativity());
    all.extend(cx.base_changes());
    all.extend(cx.composition_naturality());
    AxiomReport::from_violations(&theory.name(), opts.max_size, all, opts.witnesses_per_axiom)
}

struct Ctx<'a> {
    t: &'a dyn ColoredTheory,
    orbits: Vec<GSet>,
    sets: Vec<GSet>,
    opts: &'a ColoredCheckOptions,
}

fn maps(u: &GSet, v: &GSet) -> Vec<GMap> {
    equivariant_maps(u, v).into_iter().map(|m| GMap::new(u.clone(), v.clone(), m).expect("equivariant")).collect()
}

fn pull(x: &[usize], along: &GMap) -> Vec<usize> {
    along.map().iter().map(|&p| x[p]).collect()
}

/// Orbit types as `2×G/e + G/G`, or `∅`.
fn types(u: &GSet) -> String {
    let g = u.group();
    let parts: Vec<String> = u
        .orbit_types()
        .iter()
        .map(|t| match t.multiplicity {
            1 => class_label(g, t.class),
            m => format!("{m}×{}", class_label(g, t.class)),
        })
        .collect();
    if parts.is_empty() {
        "∅".into()
    } else {
        parts.join(" + ")
    }
}

fn show(f: &GMap) -> String {
    format!("{:?} on {}", f.map(), types(f.source()))
}

/// Index tuples into lists of the given sizes: all of them, or `cap` samples.
fn choose(sizes: &[usize], cap: usize, seed: u64) -> Vec<Vec<usize>> {
    let total = sizes.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n)).unwrap_or(usize::MAX);
    if total <= cap {
        return sizes.iter().map(|&n| 0..n).multi_cartesian_product().collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cap).map(|_| sizes.iter().map(|&n| rng.gen_range(0..n)).collect()).collect()
}

impl Ctx<'_> {
    fn seed(&self, salt: usize) -> u64 {
        self.opts.seed ^ (salt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }

    fn units(&self) -> Vec<Violation> {
        let t = self.t;
        let mut out = Vec::new();
        for w in &self.orbits {
            let id = GMap::identity(w);
            for y in sections(t, w) {
                if t.unit(w, &y) >= t.mul_count(&id, &y, &y) {
                    out.push(Violation::new(UNIT, format!("unit at {} color {y:?} is not an element", types(w))));
                }
            }
            for w2 in &self.orbits {
                for k in maps(w2, w) {
                    let (_, p1, p2) = pullback(&id, &k).expect("same target");
                    for y in sections(t, w) {
                        let lhs = t.base_change(Square { f: &id, k: &k, f_pb: &p2, k_pb: &p1 }, &y, &y, t.unit(w, &y));
                        let rhs = unit_along_iso(t, &p2, &pull(&y, &k));
                        if lhs.is_none() || lhs != rhs {
                            out.push(Violation::new(UNIT, format!("unit at color {y:?} not preserved by base change along {}", show(&k))));
                        }
                    }
                }
            }
        }
        let found: Vec<Vec<Violation>> = self
            .sets
            .par_iter()
            .enumerate()
            .map(|(si, u)| {
                let mut out = Vec::new();
                let id_u = GMap::identity(u);
                for (wi, w) in self.orbits.iter().enumerate() {
                    let id_w = GMap::identity(w);
                    for f in maps(u, w) {
                        for x in sections(t, u) {
                            let units: Vec<usize> = super::pieces(&id_u).iter().map(|p| t.unit(p.map.target(), &p.push(&x))).collect();
                            for y in sections(t, w) {
                                let n = t.mul_count(&f, &x, &y);
                                for a in choose(&[n], self.opts.element_cap, self.seed(si * 31 + wi)) {
                                    let a = a[0];
                                    if t.compose(&id_u, &f, &x, &x, &y, &units, a) != Some(a) {
                                        out.push(Violation::new(UNIT, format!("element {a} of f={} changed by a unit on the source", show(&f))));
                                    }
                                    if t.compose(&f, &id_w, &x, &y, &y, &[a], t.unit(w, &y)) != Some(a) {
                                        out.push(Violation::new(UNIT, format!("element {a} of f={} changed by the unit of the target", show(&f))));
                                    }
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        out.extend(found.into_iter().flatten());
        out
    }

    fn products(&self) -> Vec<Violation> {
        let t = self.t;
        let found: Vec<Vec<Violation>> = self
            .sets
            .par_iter()
            .map(|u| {
                let mut out = Vec::new();
                for v in self.sets.iter().filter(|v| v.orbits().len() >= 2) {
                    for f in maps(u, v) {
                        for x in sections(t, u) {
                            for y in sections(t, v) {
                                let (total, prod) = (t.mul_count_total(&f, &x, &y), product_count(t, &f, &x, &y));
                                if total != prod {
                                    out.push(Violation::new(
                                        PRODUCT,
                                        format!("f={} colors {x:?} {y:?}: {total} elements, product over orbits {prod}", show(&f)),
                                    ));
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        found.into_iter().flatten().collect()
    }

    /// Chains `U → V → W' → W` with `W` an orbit.
    fn associativity(&self) -> Vec<Violation> {
        let t = self.t;
        let mut tops = Vec::new();
        for w in &self.orbits {
            for w1 in &self.sets {
                for h in maps(w1, w) {
                    tops.push(h);
                }
            }
        }
        let found: Vec<Vec<Violation>> = tops
            .par_iter()
            .enumerate()
            .map(|(ti, h)| {
                let mut out = Vec::new();
                let (w1, w) = (h.source(), h.target());
                for v in &self.sets {
                    for g in maps(v, w1) {
                        let hg = g.then(h).expect("composable");
                        for u in &self.sets {
                            for f in maps(u, v) {
                                let gf = f.then(&g).expect("composable");
                                for (x, y, z, c) in iproduct(t, u, v, w1, w) {
                                    self.assoc_instance(&f, &g, h, &gf, &hg, [&x, &y, &z, &c], ti, &mut out);
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        found.into_iter().flatten().collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn assoc_instance(
        &self,
        f: &GMap,
        g: &GMap,
        h: &GMap,
        gf: &GMap,
        hg: &GMap,
        [x, y, z, c]: [&Vec<usize>; 4],
        salt: usize,
        out: &mut Vec<Violation>,
    ) {
        let t = self.t;
        let ea = mul_elements(t, f, x, y);
        let eb = mul_elements(t, g, y, z);
        let nc = t.mul_count(h, z, c);
        let triple = || format!("f={}, g={}, h={}", show(f), show(g), show(h));
        let fg = Stacked::new(f, g);
        let n = t.mul_count(&gf.then(h).expect("composable"), x, c);
        for idx in choose(&[ea.len(), eb.len(), nc], self.opts.element_cap, self.seed(salt)) {
            let (a, b, e) = (&ea[idx[0]], &eb[idx[1]], idx[2]);
            let Some(ab) = fg.compose(t, x, y, z, a, b) else {
                out.push(Violation::new(COMPOSITION, format!("no composite of {a:?}, {b:?} for {}", triple())));
                continue;
            };
            let Some(be) = t.compose(g, h, y, z, c, b, e) else {
                out.push(Violation::new(COMPOSITION, format!("no composite of {b:?}, {e} for {}", triple())));
                continue;
            };
            let left = t.compose(gf, h, x, z, c, &ab, e);
            let right = t.compose(f, hg, x, y, c, a, be);
            match (left, right) {
                (Some(l), Some(r)) if l == r && l < n => {}
                (Some(l), Some(r)) if l < n && r < n => out.push(Violation::new(
                    ASSOCIATIVITY,
                    format!("{}; elements {a:?}, {b:?}, {e}: (h∘g)∘f gives {r}, h∘(g∘f) gives {l}", triple()),
                )),
                _ => out.push(Violation::new(COMPOSITION, format!("composite out of range for {}", triple()))),
            }
        }
    }

    /// Pullback squares of `f: U → W` along orbit maps, their identities, their
    /// pastings, and the interaction with units.
    fn base_changes(&self) -> Vec<Violation> {
        let t = self.t;
        let found: Vec<Vec<Violation>> = self
            .sets
            .par_iter()
            .enumerate()
            .map(|(si, u)| {
                let mut out = Vec::new();
                let id_u = GMap::identity(u);
                for w in &self.orbits {
                    let id_w = GMap::identity(w);
                    for f in maps(u, w) {
                        for x in sections(t, u) {
                            for y in sections(t, w) {
                                let n = t.mul_count(&f, &x, &y);
                                for a in choose(&[n], self.opts.element_cap, self.seed(si)) {
                                    let a = a[0];
                                    if t.base_change(Square { f: &f, k: &id_w, f_pb: &f, k_pb: &id_u }, &x, &y, a) != Some(a) {
                                        out.push(Violation::new(BASE_CHANGE, format!("identity square moves element {a} of f={}", show(&f))));
                                    }
                                    self.squares_from(&f, &x, &y, a, &mut out);
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        found.into_iter().flatten().collect()
    }

    fn squares_from(&self, f: &GMap, x: &[usize], y: &[usize], a: usize, out: &mut Vec<Violation>) {
        let t = self.t;
        let w = f.target();
        for w2 in &self.orbits {
            for k in maps(w2, w) {
                let (_, p1, p2) = pullback(f, &k).expect("same target");
                let (x2, y2) = (pull(x, &p1), pull(y, &k));
                let b = t.base_change(Square { f, k: &k, f_pb: &p2, k_pb: &p1 }, x, y, a);
                let Some(b) = b.filter(|&b| b < t.mul_count(&p2, &x2, &y2)) else {
                    out.push(Violation::new(BASE_CHANGE, format!("element {a} of f={} has no base change along {}", show(f), show(&k))));
                    continue;
                };
                for w3 in &self.orbits {
                    for k2 in maps(w3, w2) {
                        let (_, q1, q2) = pullback(&p2, &k2).expect("same target");
                        let kk = k2.then(&k).expect("composable");
                        let qp = q1.then(&p1).expect("composable");
                        let twice = t.base_change(Square { f: &p2, k: &k2, f_pb: &q2, k_pb: &q1 }, &x2, &y2, b);
                        let once = t.base_change(Square { f, k: &kk, f_pb: &q2, k_pb: &qp }, x, y, a);
                        if twice != once {
                            out.push(Violation::new(
                                BASE_CHANGE,
                                format!("pasted squares disagree for f={} along {} then {}", show(f), show(&k), show(&k2)),
                            ));
                        }
                    }
                }
            }
        }
    }

    /// Base change of a composite equals the composite of base changes.
    fn composition_naturality(&self) -> Vec<Violation> {
        let t = self.t;
        let mut tops = Vec::new();
        for w in &self.orbits {
            for v in &self.sets {
                for g in maps(v, w) {
                    tops.push(g);
                }
            }
        }
        let found: Vec<Vec<Violation>> = tops
            .par_iter()
            .enumerate()
            .map(|(ti, g)| {
                let mut out = Vec::new();
                let (v, w) = (g.source(), g.target());
                for u in &self.sets {
                    for f in maps(u, v) {
                        let gf = f.then(g).expect("composable");
                        let fg = Stacked::new(&f, g);
                        for w2 in &self.orbits {
                            for k in maps(w2, w) {
                                let (_, g1, g2) = pullback(g, &k).expect("same target");
                                let (_, f1, f2) = pullback(&f, &g1).expect("same target");
                                let f2g2 = f2.then(&g2).expect("composable");
                                for x in sections(t, u) {
                                    for y in sections(t, v) {
                                        for z in sections(t, w) {
                                            let ea = mul_elements(t, &f, &x, &y);
                                            let nb = t.mul_count(g, &y, &z);
                                            for idx in choose(&[ea.len(), nb], self.opts.element_cap, self.seed(ti)) {
                                                let (a, b) = (&ea[idx[0]], idx[1]);
                                                let Some(ab) = fg.compose(t, &x, &y, &z, a, &[b]) else { continue };
                                                let lhs = t.base_change(Square { f: &gf, k: &k, f_pb: &f2g2, k_pb: &f1 }, &x, &z, ab[0]);
                                                let a2 = base_change_total(t, Square { f: &f, k: &g1, f_pb: &f2, k_pb: &f1 }, &x, &y, a);
                                                let b2 = t.base_change(Square { f: g, k: &k, f_pb: &g2, k_pb: &g1 }, &y, &z, b);
                                                let rhs = match (a2, b2) {
                                                    (Some(a2), Some(b2)) => t.compose(&f2, &g2, &pull(&x, &f1), &pull(&y, &g1), &pull(&z, &k), &a2, b2),
                                                    _ => None,
                                                };
                                                if lhs != rhs {
                                                    out.push(Violation::new(
                                                        BASE_CHANGE,
                                                        format!("composite of f={}, g={} not natural along {}", show(&f), show(g), show(&k)),
                                                    ));
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        found.into_iter().flatten().collect()
    }
}

type Colors = Vec<usize>;

fn iproduct(t: &dyn ColoredTheory, u: &GSet, v: &GSet, w1: &GSet, w: &GSet) -> Vec<(Colors, Colors, Colors, Colors)> {
    let (su, sv, s1, sw) = (sections(t, u), sections(t, v), sections(t, w1), sections(t, w));
    let mut out = Vec::new();
    for x in &su {
        for y in &sv {
            for z in &s1 {
                for c in &sw {
                    out.push((x.clone(), y.clone(), z.clone(), c.clone()));
                }
            }
        }
    }
    out
}
