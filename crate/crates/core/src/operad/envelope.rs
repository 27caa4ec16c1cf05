//! The monoidal envelope. Objects are pairs `(c, α)` with `α: p(c) → b`
//! active with identity base map; a morphism `(c, α) → (c', α')` over
//! `β: b → b'` is a morphism `h: c → c'` with `β ∘ α = α' ∘ p(h)`. An edge is
//! flagged when `h` is flagged and `β` is inert. Pairs related by an
//! isomorphism over the identity of `b` are identified.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{Composition, DiscreteTOperad, OperadMorphism, OperadObject, Payload, PayloadLaw};
use crate::gset::{GMap, GSet};
use crate::span::{ArrowObject, BaseCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvTargets {
    /// Orbit objects `[W = W]` as targets, every `α` allowed. Closed under
    /// lifts when the operad's base bounds the arity `|U| / |V|`.
    Orbits,
    /// Every target `[X → V]` for which `[m·X → V]` is in the operad's base,
    /// with fibers of `α` of size at most `m`.
    Fibers(usize),
}

/// Labels of envelope objects are `[c, a, α]`; payloads are `[h]`.
pub fn envelope(op: &Arc<DiscreteTOperad>, targets: EnvTargets) -> DiscreteTOperad {
    let obase = op.base().clone();
    let chosen: Vec<usize> = match targets {
        EnvTargets::Orbits => obase.orbit_objects(),
        EnvTargets::Fibers(m) => (0..obase.len())
            .filter(|&b| {
                let o = obase.object(b);
                let mut widened = GSet::empty(obase.group().clone());
                for _ in 0..m {
                    widened = widened.coproduct(o.u());
                }
                let f = (0..m).flat_map(|_| o.f().iter().copied()).collect();
                let arrow = ArrowObject::canonical(&GMap::new(widened, o.v().clone(), f).expect("over V")).0;
                obase.find(&arrow).is_some()
            })
            .collect(),
    };
    let max_fiber = match targets {
        EnvTargets::Orbits => usize::MAX,
        EnvTargets::Fibers(m) => m,
    };
    let objs = chosen.iter().map(|&i| obase.object(i).clone()).collect();
    let ebase = Arc::new(BaseCategory::with_objects(obase.group().clone(), obase.variant(), obase.max_size(), objs));
    let to_obase = chosen;

    // Candidate pairs, then classes under fiberwise isomorphisms.
    let mut cands: Vec<(usize, usize, usize, usize)> = Vec::new(); // (eb, c, a, alpha)
    let mut cand_index: HashMap<(usize, usize, usize), usize> = HashMap::new(); // (c, b_op, alpha)
    for (eb, &b) in to_obase.iter().enumerate() {
        for c in 0..op.object_count() {
            let a = op.object(c).base;
            for (alpha, m) in obase.hom(a, b).iter().enumerate() {
                if m.is_fiberwise() && m.is_active() && max_fiber_size(m.forward(), obase.object(b).u().size()) <= max_fiber {
                    cand_index.insert((c, b, alpha), cands.len());
                    cands.push((eb, c, a, alpha));
                }
            }
        }
    }
    let mut parent: Vec<usize> = (0..cands.len()).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let links: Vec<(usize, usize)> = (0..cands.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (eb, c, a, alpha) = cands[i];
            let b = to_obase[eb];
            let mut v = Vec::new();
            for &h in op.out(c) {
                let psi = op.base_morphism(h);
                if !(psi.is_fiberwise() && psi.is_inert() && psi.is_active()) {
                    continue;
                }
                let c2 = op.morphism(h).dst;
                let a2 = op.object(c2).base;
                let Some(inv) = op.hom(c2, c).iter().copied().find(|&g| {
                    op.compose(h, g) == Some(op.identity(c)) && op.compose(g, h) == Some(op.identity(c2))
                }) else {
                    continue;
                };
                let alpha2 = obase.compose(a2, a, b, op.morphism(inv).base, alpha);
                if let Some(&j) = cand_index.get(&(c2, b, alpha2)) {
                    v.push((i, j));
                }
            }
            v
        })
        .collect();
    for (i, j) in links {
        let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
        if ri != rj {
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let reps: Vec<usize> = (0..cands.len()).filter(|&i| root(&mut parent, i) == i).collect();
    let objects: Vec<OperadObject> = reps
        .iter()
        .map(|&i| {
            let (eb, c, a, alpha) = cands[i];
            OperadObject { base: eb, label: vec![c as u32, a as u32, alpha as u32] }
        })
        .collect();
    let mut by_c: Vec<Vec<usize>> = vec![Vec::new(); op.object_count()];
    for (k, &i) in reps.iter().enumerate() {
        by_c[cands[i].1].push(k);
    }

    // Envelope-base positions translated to positions in the operad's base.
    let pos_map: Vec<Vec<Vec<usize>>> = (0..ebase.len())
        .map(|eb| {
            (0..ebase.len())
                .map(|eb2| {
                    let (b, b2) = (to_obase[eb], to_obase[eb2]);
                    ebase.hom(eb, eb2).iter().map(|m| obase.position(b, b2, m).expect("same morphism")).collect()
                })
                .collect()
        })
        .collect();

    let rows: Vec<Vec<OperadMorphism>> = (0..objects.len())
        .into_par_iter()
        .map(|s| {
            let (eb, c, a, alpha) = cands[reps[s]];
            let b = to_obase[eb];
            let mut row = Vec::new();
            for &h in op.out(c) {
                let c2 = op.morphism(h).dst;
                let a2 = op.object(c2).base;
                for &t in &by_c[c2] {
                    let (eb2, _, _, alpha2) = cands[reps[t]];
                    let b2 = to_obase[eb2];
                    let right = obase.compose(a, a2, b2, op.morphism(h).base, alpha2);
                    for (beta, &beta_o) in pos_map[eb][eb2].iter().enumerate() {
                        if obase.compose(a, b, b2, alpha, beta_o) == right {
                            let inert = op.is_flagged(h) && ebase.hom(eb, eb2)[beta].is_inert();
                            row.push(OperadMorphism { src: s, dst: t, base: beta, inert, payload: vec![h as u32] });
                        }
                    }
                }
            }
            row
        })
        .collect();
    let morphisms: Vec<OperadMorphism> = rows.into_iter().flatten().collect();
    let mut lookup: HashMap<(usize, usize, usize, u32), usize> = HashMap::new();
    for (i, m) in morphisms.iter().enumerate() {
        lookup.insert((m.src, m.dst, m.base, m.payload[0]), i);
    }
    let identities = (0..objects.len())
        .map(|s| {
            let (eb, c, _, _) = cands[reps[s]];
            lookup[&(s, s, ebase.identity_position(eb), op.identity(c) as u32)]
        })
        .collect();
    let law = Composition::Law(Arc::new(EnvelopeLaw { inner: op.clone() }));
    DiscreteTOperad::new(format!("Env({})", op.name()), ebase, objects, morphisms, identities, law)
        .expect("envelope data is well formed")
}

struct EnvelopeLaw {
    inner: Arc<DiscreteTOperad>,
}

impl PayloadLaw for EnvelopeLaw {
    fn compose(&self, op: &DiscreteTOperad, f: usize, g: usize) -> Option<Payload> {
        let h = self.inner.compose(op.morphism(f).payload[0] as usize, op.morphism(g).payload[0] as usize)?;
        Some(vec![h as u32])
    }
}

fn max_fiber_size(map: &[usize], target: usize) -> usize {
    let mut count = vec![0; target];
    for &x in map {
        count[x] += 1;
    }
    count.into_iter().max().unwrap_or(0)
}
