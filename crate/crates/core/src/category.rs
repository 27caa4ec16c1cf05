//! Finite categories given by explicit composition tables, and the
//! atomic/orbital verification for orbit categories.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupRef;
use crate::gset::{equivariant_maps, pullback, GMap, GSet};

/// A finite category. Morphism `h = g ∘ f` is recorded as `composite(f, g) = h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: usize,
    morphisms: Vec<(usize, usize)>,
    identities: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
}

pub struct FiniteCategoryBuilder {
    objects: usize,
    morphisms: Vec<(usize, usize)>,
    identities: Vec<Option<usize>>,
    comp: HashMap<(usize, usize), usize>,
}

impl FiniteCategoryBuilder {
    pub fn add_morphism(&mut self, src: usize, dst: usize) -> usize {
        self.morphisms.push((src, dst));
        self.morphisms.len() - 1
    }
    pub fn set_identity(&mut self, object: usize, morphism: usize) {
        self.identities[object] = Some(morphism);
    }
    /// `g ∘ f = h`.
    pub fn set_composite(&mut self, f: usize, g: usize, h: usize) {
        self.comp.insert((f, g), h);
    }

    /// Checks identities, totality of composition on composable pairs, unit
    /// laws and associativity.
    pub fn build(self) -> Result<FiniteCategory> {
        let identities = self
            .identities
            .iter()
            .enumerate()
            .map(|(o, i)| i.ok_or_else(|| Error::Malformed(format!("object {o} has no identity"))))
            .collect::<Result<Vec<_>>>()?;
        let cat = FiniteCategory { objects: self.objects, morphisms: self.morphisms, identities, comp: self.comp };
        for (o, &i) in cat.identities.iter().enumerate() {
            if cat.morphisms[i] != (o, o) {
                return Err(Error::Malformed(format!("identity of {o} is not an endomorphism of {o}")));
            }
        }
        let n = cat.morphisms.len();
        for f in 0..n {
            for g in 0..n {
                if cat.morphisms[f].1 != cat.morphisms[g].0 {
                    continue;
                }
                match cat.comp.get(&(f, g)) {
                    Some(&h) if cat.morphisms[h] == (cat.morphisms[f].0, cat.morphisms[g].1) => {}
                    _ => return Err(Error::Malformed(format!("composite of {f} then {g} missing or mistyped"))),
                }
            }
            let (s, t) = cat.morphisms[f];
            if cat.comp[&(cat.identities[s], f)] != f || cat.comp[&(f, cat.identities[t])] != f {
                return Err(Error::Malformed(format!("unit law fails at {f}")));
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(&fg) = cat.comp.get(&(f, g)) else { continue };
                for h in 0..n {
                    let Some(&gh) = cat.comp.get(&(g, h)) else { continue };
                    if cat.comp[&(fg, h)] != cat.comp[&(f, gh)] {
                        return Err(Error::Malformed(format!("associativity fails at ({f},{g},{h})")));
                    }
                }
            }
        }
        Ok(cat)
    }
}

impl FiniteCategory {
    pub fn builder(objects: usize) -> FiniteCategoryBuilder {
        FiniteCategoryBuilder { objects, morphisms: Vec::new(), identities: vec![None; objects], comp: HashMap::new() }
    }

    /// One object, one morphism.
    pub fn terminal() -> Self {
        let mut b = Self::builder(1);
        let id = b.add_morphism(0, 0);
        b.set_identity(0, id);
        b.set_composite(id, id, id);
        b.build().expect("terminal category")
    }

    /// A discrete category on `n` objects.
    pub fn discrete(n: usize) -> Self {
        let mut b = Self::builder(n);
        for o in 0..n {
            let id = b.add_morphism(o, o);
            b.set_identity(o, id);
            b.set_composite(id, id, id);
        }
        b.build().expect("discrete category")
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }
    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }
    pub fn morphism(&self, f: usize) -> (usize, usize) {
        self.morphisms[f]
    }
    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }
    /// `g ∘ f`, if composable.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.comp.get(&(f, g)).copied()
    }
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f] == (a, b)).collect()
    }
    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].0] == f
    }

    pub fn is_iso(&self, f: usize) -> bool {
        let (s, t) = self.morphisms[f];
        self.hom(t, s).into_iter().any(|g| {
            self.comp[&(f, g)] == self.identities[s] && self.comp[&(g, f)] == self.identities[t]
        })
    }

    /// Some `(s, r)` with `r ∘ s = id` and `s` not an isomorphism.
    pub fn nontrivial_retract(&self) -> Option<(usize, usize)> {
        for s in 0..self.morphisms.len() {
            let (a, b) = self.morphisms[s];
            for r in self.hom(b, a) {
                if self.comp[&(s, r)] == self.identities[a] && !self.is_iso(s) {
                    return Some((s, r));
                }
            }
        }
        None
    }

    /// Objects `0 → 1 ⇄ ...`: a split epi `r: 1 → 0` with section `s: 0 → 1`
    /// whose composite `s ∘ r` is a non-identity idempotent, plus an object 2
    /// with a map into 0. Every map with a left inverse should be an iso in an
    /// atomic category; `s` is not.
    pub fn split_epi_example() -> Self {
        let mut b = Self::builder(3);
        let ids: Vec<usize> = (0..3).map(|o| b.add_morphism(o, o)).collect();
        for (o, &i) in ids.iter().enumerate() {
            b.set_identity(o, i);
        }
        let s = b.add_morphism(0, 1);
        let r = b.add_morphism(1, 0);
        let e = b.add_morphism(1, 1);
        let x = b.add_morphism(2, 0);
        let sx = b.add_morphism(2, 1);
        let all = [ids[0], ids[1], ids[2], s, r, e, x, sx];
        let cat_morphisms = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)];
        let table = [
            (s, r, ids[0]),
            (r, s, e),
            (e, e, e),
            (s, e, s),
            (e, r, r),
            (x, s, sx),
            (sx, r, x),
            (sx, e, sx),
        ];
        for &(f, g, h) in &table {
            b.set_composite(f, g, h);
        }
        for (i, &f) in all.iter().enumerate() {
            let (src, dst) = cat_morphisms[i];
            b.set_composite(ids[src], f, f);
            b.set_composite(f, ids[dst], f);
        }
        b.build().expect("split epi example is a category")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AtomicReport {
    pub name: String,
    pub passed: bool,
    /// Number of orbit cospans whose pullback was checked against the universal property.
    pub pullbacks_checked: usize,
    /// Number of morphisms scanned for nontrivial retractions.
    pub retract_scanned: usize,
    pub witness: Option<String>,
}

/// Checks that every pullback of orbits is a G-set satisfying the universal
/// property against orbit test objects, and that the orbit category has no
/// nontrivial retracts.
pub fn verify_atomic_orbital(group: &GroupRef) -> AtomicReport {
    let lat = group.lattice();
    let orbits: Vec<GSet> = (0..lat.num_classes()).map(|c| GSet::orbit_of_class(group, c)).collect();
    let mut checked = 0;
    let mut witness = None;
    'outer: for c in &orbits {
        for a in &orbits {
            for b in &orbits {
                for fa in equivariant_maps(a, c) {
                    for fb in equivariant_maps(b, c) {
                        let f = GMap::from_parts(a.clone(), c.clone(), fa.clone());
                        let g = GMap::from_parts(b.clone(), c.clone(), fb.clone());
                        let (p, p1, p2) = pullback(&f, &g).expect("common target");
                        checked += 1;
                        for t in &orbits {
                            let cones = equivariant_maps(t, a)
                                .into_iter()
                                .flat_map(|x| equivariant_maps(t, b).into_iter().map(move |y| (x.clone(), y)))
                                .filter(|(x, y)| (0..t.size()).all(|i| fa[x[i]] == fb[y[i]]))
                                .count();
                            let maps = equivariant_maps(t, &p);
                            let distinct: std::collections::HashSet<(Vec<usize>, Vec<usize>)> = maps
                                .iter()
                                .map(|m| (m.iter().map(|&q| p1.apply(q)).collect(), m.iter().map(|&q| p2.apply(q)).collect()))
                                .collect();
                            if cones != maps.len() || distinct.len() != maps.len() {
                                witness = Some(format!("pullback over an orbit of size {} fails the universal property", c.size()));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    let cat = orbit_category(group);
    let retract = cat.nontrivial_retract();
    if witness.is_none() {
        witness = retract.map(|(s, r)| format!("morphism {s} has left inverse {r} but is not invertible"));
    }
    AtomicReport {
        name: group.name().to_string(),
        passed: witness.is_none(),
        pullbacks_checked: checked,
        retract_scanned: cat.morphism_count(),
        witness,
    }
}

/// Retract check for an arbitrary finite category.
pub fn verify_atomic_category(name: &str, cat: &FiniteCategory) -> AtomicReport {
    let retract = cat.nontrivial_retract();
    AtomicReport {
        name: name.to_string(),
        passed: retract.is_none(),
        pullbacks_checked: 0,
        retract_scanned: cat.morphism_count(),
        witness: retract.map(|(s, r)| format!("morphism {s} has left inverse {r} but is not invertible")),
    }
}

/// The orbit category on class representatives `G/H`, built from equivariant maps.
pub fn orbit_category(group: &GroupRef) -> FiniteCategory {
    let lat = group.lattice();
    let orbits: Vec<GSet> = (0..lat.num_classes()).map(|c| GSet::orbit_of_class(group, c)).collect();
    let mut b = FiniteCategory::builder(orbits.len());
    let mut ids: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    for (i, x) in orbits.iter().enumerate() {
        for (j, y) in orbits.iter().enumerate() {
            for m in equivariant_maps(x, y) {
                let id = b.add_morphism(i, j);
                ids.insert((i, j, m), id);
            }
        }
    }
    for (i, x) in orbits.iter().enumerate() {
        b.set_identity(i, ids[&(i, i, (0..x.size()).collect())]);
    }
    let entries: Vec<_> = ids.iter().map(|(k, &v)| (k.clone(), v)).collect();
    for ((i, j, f), fi) in &entries {
        for ((j2, k, g), gi) in &entries {
            if j == j2 {
                let h: Vec<usize> = f.iter().map(|&y| g[y]).collect();
                b.set_composite(*fi, *gi, ids[&(*i, *k, h)]);
            }
        }
    }
    b.build().expect("orbit category")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{weyl_group, FiniteGroup};

    #[test]
    fn split_epi_example_fails() {
        let cat = FiniteCategory::split_epi_example();
        let r = verify_atomic_category("split-epi", &cat);
        assert!(!r.passed);
        assert!(r.witness.is_some());
    }

    #[test]
    fn fixtures_are_atomic_orbital() {
        for g in FiniteGroup::fixtures() {
            let r = verify_atomic_orbital(&g);
            assert!(r.passed, "{}: {:?}", g.name(), r.witness);
        }
    }

    #[test]
    fn orbit_endomorphisms_are_the_weyl_group() {
        for g in FiniteGroup::fixtures() {
            let cat = orbit_category(&g);
            let lat = g.lattice();
            for c in 0..lat.num_classes() {
                let h = lat.subgroup(lat.class_rep(c));
                assert_eq!(cat.hom(c, c).len(), weyl_group(&g, h).order());
            }
        }
    }
}
