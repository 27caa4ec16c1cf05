//! Constructors: wide subcategories of the base (Com and its suboperads) and
//! the trivial operad of a T-category.

use std::sync::Arc;

use rayon::prelude::*;

use super::{Composition, DiscreteTOperad, OperadMorphism, OperadObject, Payload, PayloadLaw, TCategory, ThinLaw};
use crate::span::{BaseCategory, SpanMorphism};

/// One object per base object and the base morphisms satisfying `keep`;
/// flags on the inert ones.
pub fn wide_sub_of_base(
    name: impl Into<String>,
    base: Arc<BaseCategory>,
    keep: impl Fn(&SpanMorphism) -> bool + Sync,
) -> DiscreteTOperad {
    let n = base.len();
    let objects = (0..n).map(|a| OperadObject { base: a, label: Vec::new() }).collect();
    let rows: Vec<Vec<OperadMorphism>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut row = Vec::new();
            for b in 0..n {
                for (pos, m) in base.hom(a, b).iter().enumerate() {
                    if keep(m) {
                        row.push(OperadMorphism { src: a, dst: b, base: pos, inert: m.is_inert(), payload: Vec::new() });
                    }
                }
            }
            row
        })
        .collect();
    let morphisms: Vec<OperadMorphism> = rows.into_iter().flatten().collect();
    let identities = (0..n)
        .map(|a| {
            let id = base.identity_position(a);
            morphisms.iter().position(|m| m.src == a && m.dst == a && m.base == id).expect("identities are kept")
        })
        .collect();
    DiscreteTOperad::new(name, base, objects, morphisms, identities, Composition::Law(Arc::new(ThinLaw)))
        .expect("wide subcategory data is well formed")
}

/// The base itself: the commutative operad.
pub fn full_com(base: Arc<BaseCategory>) -> DiscreteTOperad {
    wide_sub_of_base("Com", base, |_| true)
}

/// Inert morphisms only: the trivial operad.
pub fn triv_inert(base: Arc<BaseCategory>) -> DiscreteTOperad {
    wide_sub_of_base("Triv", base, SpanMorphism::is_inert)
}

/// Forward leg injective, i.e. a summand inclusion.
pub fn e0_operad(base: Arc<BaseCategory>) -> DiscreteTOperad {
    wide_sub_of_base("E0", base, |m| {
        let mut seen = vec![false; m.target().u().size()];
        m.forward().iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    })
}

/// Morphisms whose forward leg sends each apex orbit along an admitted orbit
/// map: `admits(K, H)` for the stabilizer ids of an apex point and its image.
pub fn com_operad_from(
    name: impl Into<String>,
    base: Arc<BaseCategory>,
    admits: impl Fn(usize, usize) -> bool + Sync,
) -> DiscreteTOperad {
    wide_sub_of_base(name, base, |m| forward_leg_admitted(m, &admits))
}

pub(crate) fn forward_leg_admitted(m: &SpanMorphism, admits: &impl Fn(usize, usize) -> bool) -> bool {
    if m.apex().is_empty() {
        return true;
    }
    let (s, _, fwd) = m.apex_gset();
    let x = m.target().u();
    s.orbits().iter().all(|o| admits(s.stabilizer_id(o[0]), x.stabilizer_id(fwd.apply(o[0]))))
}

/// The trivial operad of a T-category: objects over `[U → V]` are objects of
/// `C` over `U`; morphisms lie over inert base morphisms and are morphisms of
/// `C` over the apex. Payloads list one component per apex point.
pub fn triv_operad(base: Arc<BaseCategory>, cat: Arc<TCategory>) -> DiscreteTOperad {
    let n = base.len();
    let mut objects = Vec::new();
    let mut fiber_start = vec![0; n + 1];
    for a in 0..n {
        for x in cat.object_sections(base.object(a).u()) {
            objects.push(OperadObject { base: a, label: x.iter().map(|&v| v as u32).collect() });
        }
        fiber_start[a + 1] = objects.len();
    }
    let fiber = |a: usize| fiber_start[a]..fiber_start[a + 1];
    let rows: Vec<Vec<OperadMorphism>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut row = Vec::new();
            for b in 0..n {
                for (pos, psi) in base.hom(a, b).iter().enumerate() {
                    if !psi.is_inert() {
                        continue;
                    }
                    let (s, back, fwd) = psi.apex_gset();
                    for x in fiber(a) {
                        for y in fiber(b) {
                            let xs: Vec<usize> = (0..s.size()).map(|p| objects[x].label[back.apply(p)] as usize).collect();
                            let ys: Vec<usize> = (0..s.size()).map(|p| objects[y].label[fwd.apply(p)] as usize).collect();
                            for phi in cat.morphism_sections(&s, &xs, &ys) {
                                let inert = phi.iter().all(|&f| cat.is_iso(f));
                                let payload: Payload = phi.iter().map(|&f| f as u32).collect();
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
            let payload: Payload = objects[x].label.iter().map(|&o| cat.identity(o as usize) as u32).collect();
            let payload = base.hom(a, a)[id].apex().iter().map(|&(u, _)| payload[u]).collect::<Payload>();
            morphisms
                .iter()
                .position(|m| m.src == x && m.dst == x && m.base == id && m.payload == payload)
                .expect("identity components present")
        })
        .collect();
    DiscreteTOperad::new("Triv(C)", base, objects, morphisms, identities, Composition::Law(Arc::new(TrivLaw { cat })))
        .expect("trivial operad data is well formed")
}

struct TrivLaw {
    cat: Arc<TCategory>,
}

impl PayloadLaw for TrivLaw {
    fn compose(&self, op: &DiscreteTOperad, f: usize, g: usize) -> Option<Payload> {
        let (mf, mg) = (op.morphism(f), op.morphism(g));
        let (p1, p2) = (op.base_morphism(f), op.base_morphism(g));
        let (a, b) = op.base_endpoints(f);
        let c = op.object(mg.dst).base;
        let pos = op.base().compose(a, b, c, mf.base, mg.base);
        let comp = &op.base().hom(a, c)[pos];
        let k2 = p2.base_map();
        comp.apex()
            .iter()
            .map(|&(u, t)| {
                let s1 = p1.apex().binary_search(&(u, k2[t])).ok()?;
                let s2 = p2.apex().binary_search(&(p1.forward()[s1], t)).ok()?;
                Some(self.cat.compose(mf.payload[s1] as usize, mg.payload[s2] as usize) as u32)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::FiniteCategory;
    use crate::group::FiniteGroup;
    use crate::span::BaseVariant;

    #[test]
    fn terminal_triv_matches_inert_wide_subcategory() {
        let g = FiniteGroup::fixture("C2").unwrap();
        let base = Arc::new(BaseCategory::new(g.clone(), BaseVariant::Small, 3));
        let t = triv_operad(base.clone(), Arc::new(TCategory::constant(g, FiniteCategory::terminal())));
        let w = triv_inert(base);
        assert_eq!(t.object_count(), w.object_count());
        assert_eq!(t.morphism_count(), w.morphism_count());
    }
}
