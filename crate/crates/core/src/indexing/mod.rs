//! Indexing systems over the orbit category `O_G`.
//!
//! A system is stored as the set of admitted pairs `(K, H)` of subgroup ids
//! with `K ≤ H`, each standing for the projection `G/K → G/H`. Every orbit map
//! is an isomorphism followed by such a projection, so the pairs determine the
//! admitted morphisms. Identity pairs `(H, H)` are always stored.

mod bar;
mod bh;
mod operads;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::gset::{equivariant_maps, pullback, GMap, GSet};
use crate::operad::Violation;

pub use bar::BarClosure;
pub use bh::{BHFamily, Members};
pub use operads::{colored_from_indexing, com_operad, recover_indexing};

pub const ISOMORPHISMS: &str = "isomorphisms";
pub const CONJUGATION: &str = "conjugation";
pub const COMPOSITION: &str = "composition";
pub const BASE_CHANGE: &str = "base-change";
pub const NOT_ORBIT_MAP: &str = "not-an-orbit-map";

pub type Pair = (usize, usize);

#[derive(Clone, PartialEq, Eq)]
pub struct IndexingSystem {
    group: GroupRef,
    pairs: BTreeSet<Pair>,
}

impl fmt::Debug for IndexingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexingSystem({}, {self})", self.group.name())
    }
}

impl fmt::Display for IndexingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.transfers();
        if t.is_empty() {
            return write!(f, "{{isos}}");
        }
        let names: Vec<String> = t.iter().map(|&(k, h)| format!("{}→{}", subgroup_label(&self.group, k), subgroup_label(&self.group, h))).collect();
        write!(f, "{{isos, {}}}", names.join(", "))
    }
}

/// `e`, `G`, or `H<id>`.
pub fn subgroup_label(group: &GroupRef, id: usize) -> String {
    let s = group.lattice().subgroup(id);
    if s.order() == 1 {
        "e".into()
    } else if s.order() == group.order() {
        "G".into()
    } else {
        format!("H{id}")
    }
}

/// A candidate system as JSON. Identity pairs may be omitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexingJson {
    pub group: String,
    pub pairs: Vec<Pair>,
}

impl IndexingSystem {
    pub fn to_json(&self) -> IndexingJson {
        IndexingJson { group: self.group.name().to_string(), pairs: self.transfers() }
    }

    /// Reads a candidate, unchecked apart from subgroup ids being in range.
    pub fn from_json(j: &IndexingJson) -> Result<Self> {
        let group = FiniteGroup::fixture(&j.group)?;
        let n = group.lattice().len();
        if let Some(p) = j.pairs.iter().find(|&&(k, h)| k >= n || h >= n) {
            return Err(Error::InvalidIndexing(format!("pair {p:?} names a missing subgroup ({n} subgroups)")));
        }
        Ok(Self::candidate(group, j.pairs.iter().copied()))
    }

    /// A candidate relation, unchecked. Identity pairs are added.
    pub fn candidate(group: GroupRef, pairs: impl IntoIterator<Item = Pair>) -> Self {
        let n = group.lattice().len();
        let pairs = pairs.into_iter().chain((0..n).map(|h| (h, h))).collect();
        IndexingSystem { group, pairs }
    }

    /// A checked system.
    pub fn new(group: GroupRef, pairs: impl IntoIterator<Item = Pair>) -> Result<Self> {
        let c = Self::candidate(group, pairs);
        match is_indexing_system(&c).violation {
            None => Ok(c),
            Some(v) => Err(Error::InvalidIndexing(format!("{}: {}", v.axiom, v.witness))),
        }
    }

    /// Isomorphisms only.
    pub fn minimal(group: GroupRef) -> Self {
        Self::candidate(group, [])
    }

    /// Every orbit map.
    pub fn full(group: GroupRef) -> Self {
        let lat = group.lattice();
        let n = lat.len();
        let pairs: Vec<Pair> = (0..n).cartesian_product(0..n).filter(|&(k, h)| lat.is_below(k, h)).collect();
        Self::candidate(group, pairs)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn pairs(&self) -> &BTreeSet<Pair> {
        &self.pairs
    }

    /// Admitted pairs with `K ≠ H`, sorted.
    pub fn transfers(&self) -> Vec<Pair> {
        self.pairs.iter().copied().filter(|(k, h)| k != h).collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn admits(&self, k: usize, h: usize) -> bool {
        self.pairs.contains(&(k, h))
    }

    /// Whether the orbit map `f` is admitted, read off the stabilizers of
    /// every source point and its image.
    pub fn admits_orbit_map(&self, f: &GMap) -> bool {
        (0..f.source().size()).all(|u| self.admits(f.source().stabilizer_id(u), f.target().stabilizer_id(f.apply(u))))
    }

    pub fn is_subsystem_of(&self, other: &IndexingSystem) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// Intersection.
    pub fn meet(&self, other: &IndexingSystem) -> IndexingSystem {
        IndexingSystem { group: self.group.clone(), pairs: self.pairs.intersection(&other.pairs).copied().collect() }
    }

    /// Closure of the union.
    pub fn join(&self, other: &IndexingSystem) -> IndexingSystem {
        generate_closure(&self.group, self.pairs.union(&other.pairs).copied())
    }
}

/// Conjugation and intersection tables on subgroup ids.
struct Tables {
    conj: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    below: Vec<Vec<bool>>,
}

impl Tables {
    fn new(group: &GroupRef) -> Self {
        let lat = group.lattice();
        let n = lat.len();
        let conj = group.elements().map(|g| (0..n).map(|s| lat.id_of(&group.conjugate_subgroup(g, lat.subgroup(s)))).collect()).collect();
        let meet = (0..n).map(|a| (0..n).map(|b| lat.id_of(&group.intersect(lat.subgroup(a), lat.subgroup(b)))).collect()).collect();
        let below = (0..n).map(|a| (0..n).map(|b| lat.is_below(a, b)).collect()).collect();
        Tables { conj, meet, below }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexingCheck {
    pub valid: bool,
    pub violation: Option<Violation>,
}

/// Checks a candidate exhaustively: pairs are subgroup inclusions, closed
/// under conjugation, contain the isomorphisms, and are closed under
/// composition and under base change along every orbit map.
pub fn is_indexing_system(c: &IndexingSystem) -> IndexingCheck {
    let violation = first_violation(c);
    IndexingCheck { valid: violation.is_none(), violation }
}

fn first_violation(c: &IndexingSystem) -> Option<Violation> {
    let g = &c.group;
    let t = Tables::new(g);
    let n = t.below.len();
    let l = |id: usize| subgroup_label(g, id);
    if let Some(&(k, h)) = c.pairs.iter().find(|&&(k, h)| k >= n || h >= n || !t.below[k][h]) {
        return Some(Violation::new(NOT_ORBIT_MAP, format!("({k}, {h}) is not a subgroup inclusion")));
    }
    for &(k, h) in &c.pairs {
        for x in g.elements() {
            let p = (t.conj[x][k], t.conj[x][h]);
            if !c.pairs.contains(&p) {
                return Some(Violation::new(
                    CONJUGATION,
                    format!("{}→{} admitted but its conjugate {}→{} is not", l(k), l(h), l(p.0), l(p.1)),
                ));
            }
        }
    }
    if let Some(h) = (0..n).find(|&h| !c.pairs.contains(&(h, h))) {
        return Some(Violation::new(ISOMORPHISMS, format!("identity of G/{} missing", l(h))));
    }
    for &(k, h) in &c.pairs {
        for &(h2, j) in c.pairs.range((h, 0)..(h + 1, 0)) {
            debug_assert_eq!(h2, h);
            if !c.pairs.contains(&(k, j)) {
                return Some(Violation::new(
                    COMPOSITION,
                    format!("{}→{} and {}→{} admitted, composite {}→{} not", l(k), l(h), l(h), l(j), l(k), l(j)),
                ));
            }
        }
    }
    for &(k, h) in &c.pairs {
        for m in (0..n).filter(|&m| t.below[m][h]) {
            for x in g.lattice().subgroup(h).elements() {
                let r = t.meet[m][t.conj[*x][k]];
                if !c.pairs.contains(&(r, m)) {
                    return Some(Violation::new(
                        BASE_CHANGE,
                        format!(
                            "{}→{} admitted; its base change along {} ≤ {} has the orbit {}→{}, not admitted",
                            l(k),
                            l(h),
                            l(m),
                            l(h),
                            l(r),
                            l(m)
                        ),
                    ));
                }
            }
        }
    }
    None
}

/// The least system containing `seed`: saturate under conjugation,
/// composition and restriction to subgroups.
pub fn generate_closure(group: &GroupRef, seed: impl IntoIterator<Item = Pair>) -> IndexingSystem {
    let t = Tables::new(group);
    let n = t.below.len();
    let mut pairs: BTreeSet<Pair> = seed.into_iter().filter(|&(k, h)| k < n && h < n && t.below[k][h]).collect();
    pairs.extend((0..n).map(|h| (h, h)));
    loop {
        let mut add: Vec<Pair> = Vec::new();
        for &(k, h) in &pairs {
            for x in group.elements() {
                add.push((t.conj[x][k], t.conj[x][h]));
            }
            for &(_, j) in pairs.range((h, 0)..(h + 1, 0)) {
                add.push((k, j));
            }
            for m in (0..n).filter(|&m| t.below[m][h]) {
                add.push((t.meet[m][k], m));
            }
        }
        let before = pairs.len();
        pairs.extend(add);
        if pairs.len() == before {
            break;
        }
    }
    IndexingSystem { group: group.clone(), pairs }
}

fn sort_systems(v: &mut [IndexingSystem]) {
    v.sort_by(|a, b| (a.len(), &a.pairs).cmp(&(b.len(), &b.pairs)));
}

/// Every indexing system over `group`, sorted by size then pairs. Built by
/// repeatedly closing a known system with one more pair class.
pub fn enumerate_indexing_systems(group: &GroupRef) -> Vec<IndexingSystem> {
    let classes = pair_classes(group);
    let start = generate_closure(group, []);
    let mut seen: HashSet<BTreeSet<Pair>> = HashSet::from([start.pairs.clone()]);
    let mut out = vec![start.clone()];
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let next: Vec<IndexingSystem> = frontier
            .par_iter()
            .flat_map_iter(|s| {
                classes
                    .iter()
                    .filter(|cl| !s.pairs.contains(&cl[0]))
                    .map(|cl| generate_closure(group, s.pairs.iter().copied().chain(cl.iter().copied())))
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier = Vec::new();
        for s in next {
            if seen.insert(s.pairs.clone()) {
                out.push(s.clone());
                frontier.push(s);
            }
        }
    }
    sort_systems(&mut out);
    out
}

/// Conjugation classes of the pairs `(K, H)` with `K < H`, each sorted.
pub fn pair_classes(group: &GroupRef) -> Vec<Vec<Pair>> {
    let t = Tables::new(group);
    let n = t.below.len();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (k, h) in (0..n).cartesian_product(0..n).filter(|&(k, h)| k != h && t.below[k][h]) {
        if seen.contains(&(k, h)) {
            continue;
        }
        let class: BTreeSet<Pair> = group.elements().map(|x| (t.conj[x][k], t.conj[x][h])).collect();
        seen.extend(class.iter().copied());
        out.push(class.into_iter().collect());
    }
    out
}

/// Reference enumeration: every union of pair classes that passes
/// [`is_indexing_system`].
pub fn enumerate_by_filter(group: &GroupRef) -> Vec<IndexingSystem> {
    let classes = pair_classes(group);
    assert!(classes.len() < 28, "too many pair classes to filter");
    let mut out: Vec<IndexingSystem> = (0u32..1 << classes.len())
        .into_par_iter()
        .filter_map(|mask| {
            let pairs = classes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).flat_map(|(_, c)| c.iter().copied());
            let c = IndexingSystem::candidate(group.clone(), pairs);
            is_indexing_system(&c).valid.then_some(c)
        })
        .collect();
    sort_systems(&mut out);
    out
}

/// Covering relations `(i, j)`: `systems[i] ⊂ systems[j]` with nothing between.
pub fn hasse(systems: &[IndexingSystem]) -> Vec<(usize, usize)> {
    let n = systems.len();
    let lt = |i: usize, j: usize| i != j && systems[i].is_subsystem_of(&systems[j]) && systems[i] != systems[j];
    (0..n)
        .cartesian_product(0..n)
        .filter(|&(i, j)| lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)))
        .collect()
}

/// Checks a predicate on concrete maps between orbits as a subcategory of
/// `O_G`: it holds on every isomorphism, is closed under composition, and is
/// closed under base change along every orbit map, orbit by orbit of the
/// pullback. Runs over all maps between the class representative orbits.
pub fn check_orbit_subcategory(group: &GroupRef, admits: impl Fn(&GMap) -> bool + Sync) -> Option<Violation> {
    let orbits: Vec<GSet> = (0..group.lattice().num_classes()).map(|c| GSet::orbit_of_class(group, c)).collect();
    let r = orbits.len();
    let maps: Vec<Vec<Vec<GMap>>> = (0..r)
        .map(|a| {
            (0..r)
                .map(|b| {
                    equivariant_maps(&orbits[a], &orbits[b])
                        .into_iter()
                        .map(|m| GMap::new(orbits[a].clone(), orbits[b].clone(), m).expect("equivariant"))
                        .collect()
                })
                .collect()
        })
        .collect();
    let show = |f: &GMap| format!("G/{} → G/{} by {:?}", f.source().size(), f.target().size(), f.map());
    for row in &maps {
        for f in row.iter().flatten() {
            if f.is_iso() && !admits(f) {
                return Some(Violation::new(ISOMORPHISMS, show(f)));
            }
        }
    }
    let found: Vec<Violation> = (0..r)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            for b in 0..r {
                for f in maps[a][b].iter().filter(|f| admits(f)) {
                    for c in 0..r {
                        for g in maps[b][c].iter().filter(|g| admits(g)) {
                            let gf = f.then(g).expect("composable");
                            if !admits(&gf) {
                                out.push(Violation::new(COMPOSITION, format!("{} then {}", show(f), show(g))));
                            }
                        }
                    }
                    for c in 0..r {
                        for k in &maps[c][b] {
                            let (p, _, p2) = pullback(f, k).expect("common target");
                            for o in p.orbits() {
                                let (sub, inc) = p.sub_gset(&o);
                                let piece = GMap::new(sub, k.source().clone(), o.iter().map(|&x| p2.apply(x)).collect())
                                    .expect("restriction of an equivariant map");
                                debug_assert_eq!(inc.target().size(), p.size());
                                if !admits(&piece) {
                                    out.push(Violation::new(BASE_CHANGE, format!("{} along {}", show(f), show(k))));
                                }
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    found.into_iter().min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn g(name: &str) -> GroupRef {
        FiniteGroup::fixture(name).unwrap()
    }

    fn id_of_order(grp: &GroupRef, n: usize) -> usize {
        let lat = grp.lattice();
        (0..lat.len()).find(|&i| lat.subgroup(i).order() == n).unwrap()
    }

    #[test]
    fn c4_examples() {
        let c4 = g("C4");
        let (e, c2, top) = (id_of_order(&c4, 1), id_of_order(&c4, 2), id_of_order(&c4, 4));
        assert!(is_indexing_system(&IndexingSystem::full(c4.clone())).valid);
        assert!(is_indexing_system(&IndexingSystem::minimal(c4.clone())).valid);
        let bad = is_indexing_system(&IndexingSystem::candidate(c4.clone(), [(e, top)]));
        assert!(!bad.valid);
        assert_eq!(bad.violation.unwrap().axiom, BASE_CHANGE);
        let cl = generate_closure(&c4, [(e, top)]);
        assert_eq!(cl.transfers(), {
            let mut v = vec![(e, c2), (e, top)];
            v.sort();
            v
        });
        let a = IndexingSystem::new(c4.clone(), [(e, c2)]).unwrap();
        let b = IndexingSystem::new(c4.clone(), [(c2, top)]).unwrap();
        assert!(a.join(&b).admits(e, top));
        assert_eq!(enumerate_indexing_systems(&c4).len(), 5);
    }

    #[test]
    fn closure_of_nothing_is_minimal() {
        for grp in FiniteGroup::fixtures() {
            assert_eq!(generate_closure(&grp, []), IndexingSystem::minimal(grp.clone()));
            let full = IndexingSystem::full(grp.clone());
            assert_eq!(generate_closure(&grp, full.pairs().iter().copied()), full);
        }
    }
}
