//! Spans `U ← Z → X` of finite G-sets up to isomorphism of the apex.

use std::fmt;

use crate::canonical::canonical_colored;
use crate::error::{Error, Result};
use crate::gset::{equivariant_maps, pullback, GMap, GSet, OrbitType};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BurnsideSpan {
    source: GSet,
    target: GSet,
    apex: GSet,
    back: Vec<usize>,
    fwd: Vec<usize>,
}

impl fmt::Debug for BurnsideSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} <- {:?} -> {}]", self.source.size(), self.apex.orbit_types(), self.target.size())
    }
}

impl BurnsideSpan {
    /// The span with legs `back: Z → U` and `fwd: Z → X`, apex relabeled canonically.
    pub fn new(back: &GMap, fwd: &GMap) -> Result<Self> {
        if back.source() != fwd.source() {
            return Err(Error::Mismatch("span legs with different apexes".into()));
        }
        let z = back.source();
        let nx = fwd.target().size();
        let colors: Vec<usize> = (0..z.size()).map(|i| back.apply(i) * nx + fwd.apply(i)).collect();
        let c = canonical_colored(z, &colors);
        let apex = z.relabel(&c.perm);
        let mut b = vec![0; z.size()];
        let mut f = vec![0; z.size()];
        for i in 0..z.size() {
            b[c.perm[i]] = back.apply(i);
            f[c.perm[i]] = fwd.apply(i);
        }
        Ok(BurnsideSpan { source: back.target().clone(), target: fwd.target().clone(), apex, back: b, fwd: f })
    }

    pub fn identity(u: &GSet) -> Self {
        Self::new(&GMap::identity(u), &GMap::identity(u)).expect("identity span")
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }
    pub fn target(&self) -> &GSet {
        &self.target
    }
    pub fn apex(&self) -> &GSet {
        &self.apex
    }
    pub fn back(&self) -> GMap {
        GMap::from_parts(self.apex.clone(), self.source.clone(), self.back.clone())
    }
    pub fn fwd(&self) -> GMap {
        GMap::from_parts(self.apex.clone(), self.target.clone(), self.fwd.clone())
    }
    pub fn apex_orbit_types(&self) -> Vec<OrbitType> {
        self.apex.orbit_types()
    }

    /// `other ∘ self`, with apex the pullback of the middle legs.
    pub fn then(&self, other: &BurnsideSpan) -> Result<BurnsideSpan> {
        if self.target != other.source {
            return Err(Error::Mismatch("composite of spans with different middle objects".into()));
        }
        let (_, p1, p2) = pullback(&self.fwd(), &other.back())?;
        BurnsideSpan::new(&p1.then(&self.back())?, &p2.then(&other.fwd())?)
    }
}

/// All spans `u ← Z → x` with `|Z| ≤ bound`, up to isomorphism, sorted.
pub fn burnside_hom_set(u: &GSet, x: &GSet, bound: usize) -> Vec<BurnsideSpan> {
    let prod = u.product(x);
    let mut out: Vec<BurnsideSpan> = Vec::new();
    for z in GSet::all_up_to_iso(u.group(), bound) {
        for m in equivariant_maps(&z, &prod) {
            let back = GMap::from_parts(z.clone(), u.clone(), m.iter().map(|&p| p / x.size()).collect());
            let fwd = GMap::from_parts(z.clone(), x.clone(), m.iter().map(|&p| p % x.size()).collect());
            let s = BurnsideSpan::new(&back, &fwd).expect("legs share the apex");
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out.sort_by(|a, b| (a.apex.size(), &a.back, &a.fwd).cmp(&(b.apex.size(), &b.back, &b.fwd)).then_with(|| a.apex.orbit_types().cmp(&b.apex.orbit_types())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn free_orbit_squares_to_two_copies() {
        let g = FiniteGroup::fixture("C2").unwrap();
        let free = GSet::coset_space(g.clone(), &g.trivial_subgroup());
        let s = BurnsideSpan::new(&GMap::to_point(&free), &GMap::to_point(&free)).unwrap();
        let sq = s.then(&s).unwrap();
        assert_eq!(sq.apex().size(), 4);
        assert_eq!(sq.apex_orbit_types(), vec![OrbitType { class: 0, multiplicity: 2 }]);
        let id = BurnsideSpan::identity(&GSet::point(g));
        assert_eq!(s.then(&id).unwrap(), s);
    }

    #[test]
    fn bounded_hom_set_between_points() {
        let g = FiniteGroup::fixture("C2").unwrap();
        let pt = GSet::point(g.clone());
        // apexes of size ≤ 2 over * × *: ∅, *, *+*, C2/e
        assert_eq!(burnside_hom_set(&pt, &pt, 2).len(), 4);
    }
}
