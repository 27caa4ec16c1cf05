//! The operadic nerve. Objects over `[U → V]` are colors over `U`; morphisms
//! over a span `U ← S → X` are the elements of `Mul^{S → X}(x|_S, x')`.
//! Edges over inert spans are flagged when every component is a transported
//! unit.

use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use super::{base_change_total, compose_total, pieces, sections, unit_along_iso, ColoredTheory, Square};
use crate::error::Result;
use crate::gset::GMap;
use crate::operad::{Composition, DiscreteTOperad, OperadMorphism, OperadObject, Payload, PayloadLaw};
use crate::span::{BaseCategory, SpanMorphism};

fn pull(x: &[usize], along: &GMap) -> Vec<usize> {
    along.map().iter().map(|&p| x[p]).collect()
}

fn label(x: &[u32]) -> Vec<usize> {
    x.iter().map(|&c| c as usize).collect()
}

/// `|Mul^{S → X}(x|_S, x')|` for a base span.
pub fn mul_over_span(theory: &dyn ColoredTheory, psi: &SpanMorphism, x: &[usize], x2: &[usize]) -> usize {
    let (_, back, fwd) = psi.apex_gset();
    theory.mul_count_total(&fwd, &pull(x, &back), x2)
}

/// Fails when some identity is missing, which happens only for theories whose
/// units are not elements.
pub fn operadic_nerve(theory: Arc<dyn ColoredTheory>, base: Arc<BaseCategory>) -> Result<DiscreteTOperad> {
    let n = base.len();
    let mut objects = Vec::new();
    let mut start = vec![0; n + 1];
    for a in 0..n {
        for x in sections(theory.as_ref(), base.object(a).u()) {
            objects.push(OperadObject { base: a, label: x.iter().map(|&c| c as u32).collect() });
        }
        start[a + 1] = objects.len();
    }
    let fiber = |a: usize| start[a]..start[a + 1];
    let thin = theory.is_thin();
    let rows: Vec<Vec<OperadMorphism>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut row = Vec::new();
            for b in 0..n {
                for (pos, psi) in base.hom(a, b).iter().enumerate() {
                    let (_, back, fwd) = psi.apex_gset();
                    let pcs = pieces(&fwd);
                    for x in fiber(a) {
                        let xs = pull(&label(&objects[x].label), &back);
                        for y in fiber(b) {
                            let ys = label(&objects[y].label);
                            let counts: Vec<usize> = pcs.iter().map(|p| theory.mul_count(&p.map, &p.pull(&xs), &p.push(&ys))).collect();
                            if counts.contains(&0) {
                                continue;
                            }
                            if thin {
                                let payload = vec![0; pcs.len()];
                                row.push(OperadMorphism { src: x, dst: y, base: pos, inert: psi.is_inert(), payload });
                                continue;
                            }
                            let flag: Option<Vec<usize>> = if psi.is_inert() {
                                pcs.iter().map(|p| unit_along_iso(theory.as_ref(), &p.map, &p.push(&ys))).collect()
                            } else {
                                None
                            };
                            for tuple in counts.iter().map(|&c| 0..c).multi_cartesian_product() {
                                let inert = flag.as_ref().is_some_and(|u| *u == tuple);
                                let payload = tuple.iter().map(|&e| e as u32).collect();
                                row.push(OperadMorphism { src: x, dst: y, base: pos, inert, payload });
                            }
                        }
                    }
                }
            }
            row
        })
        .collect();
    let morphisms: Vec<OperadMorphism> = rows.into_iter().flatten().collect();
    let identities = (0..objects.len())
        .map(|x| {
            let a = objects[x].base;
            let id = base.identity_position(a);
            let (_, _, fwd) = base.hom(a, a)[id].apex_gset();
            let xs = label(&objects[x].label);
            let payload: Payload = pieces(&fwd)
                .iter()
                .map(|p| unit_along_iso(theory.as_ref(), &p.map, &p.push(&xs)).map_or(u32::MAX, |e| e as u32))
                .collect();
            morphisms
                .iter()
                .position(|m| m.src == x && m.dst == x && m.base == id && m.payload == payload)
                .unwrap_or(usize::MAX)
        })
        .collect::<Vec<_>>();
    let orbit_counts = (0..n).map(|a| base.object(a).u().orbits().len()).collect();
    let law = Composition::Law(Arc::new(NerveLaw { theory: theory.clone(), orbit_counts }));
    DiscreteTOperad::new(format!("N({})", theory.name()), base, objects, morphisms, identities, law)
}

struct NerveLaw {
    theory: Arc<dyn ColoredTheory>,
    orbit_counts: Vec<usize>,
}

impl PayloadLaw for NerveLaw {
    fn compose(&self, op: &DiscreteTOperad, f: usize, g: usize) -> Option<Payload> {
        let (mf, mg) = (op.morphism(f), op.morphism(g));
        let c = op.object(mg.dst).base;
        if self.theory.is_thin() {
            return Some(vec![0; self.orbit_counts[c]]);
        }
        let t = self.theory.as_ref();
        let (p1, p2) = (op.base_morphism(f), op.base_morphism(g));
        let (a, b) = op.base_endpoints(f);
        let comp = &op.base().hom(a, c)[op.base().compose(a, b, c, mf.base, mg.base)];
        let (s1, i1, m1) = p1.apex_gset();
        let (s2, i2, m2) = p2.apex_gset();
        let (s, i, _) = comp.apex_gset();
        let k2 = p2.base_map();
        let mut pr1 = Vec::with_capacity(s.size());
        let mut pr2 = Vec::with_capacity(s.size());
        for &(u, tt) in comp.apex() {
            let j1 = p1.apex().binary_search(&(u, k2[tt])).ok()?;
            pr1.push(j1);
            pr2.push(p2.apex().binary_search(&(p1.forward()[j1], tt)).ok()?);
        }
        let pr1 = GMap::from_parts(s.clone(), s1, pr1);
        let pr2 = GMap::from_parts(s, s2, pr2);
        let (x, xm, xz) = (label(&op.object(mf.src).label), label(&op.object(mf.dst).label), label(&op.object(mg.dst).label));
        let mu1 = label(&mf.payload);
        let mu2 = label(&mg.payload);
        let nu = base_change_total(t, Square { f: &m1, k: &i2, f_pb: &pr2, k_pb: &pr1 }, &pull(&x, &i1), &xm, &mu1)?;
        let out = compose_total(t, &pr2, &m2, &pull(&x, &i), &pull(&xm, &i2), &xz, &nu, &mu2)?;
        Some(out.into_iter().map(|e| e as u32).collect())
    }
}
