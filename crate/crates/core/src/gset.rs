//! Finite G-sets and equivariant maps.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupRef, Subgroup};

/// A finite set with a left action, stored as `action[g * size + x] = g·x`.
#[derive(Clone)]
pub struct GSet {
    group: GroupRef,
    size: usize,
    action: Vec<usize>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet({}, size {}, {:?})", self.group.name(), self.size, self.orbit_types())
    }
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
            && self.size == other.size
            && self.action == other.action
    }
}
impl Eq for GSet {}

impl Hash for GSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.action.hash(state);
    }
}

/// Orbit type of a G-set: a conjugacy class of stabilizers and how often it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitType {
    pub class: usize,
    pub multiplicity: usize,
}

/// One orbit of a G-set, relabeled as a transitive G-set of its own.
#[derive(Debug, Clone)]
pub struct OrbitPiece {
    /// Points of the parent, listed in the order used by `gset`.
    pub points: Vec<usize>,
    pub gset: GSet,
    /// The least point of the orbit in the parent.
    pub basepoint: usize,
    pub stabilizer: Subgroup,
    pub class: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GSetJson {
    pub group: String,
    pub size: usize,
    pub action: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GMapJson {
    pub source: GSetJson,
    pub target: GSetJson,
    pub map: Vec<usize>,
}

impl GSet {
    /// Checks that each row is a permutation, the identity acts trivially and
    /// `g·(h·x) = (gh)·x`.
    pub fn new(group: GroupRef, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidGSet(format!("{} rows for a group of order {}", action.len(), group.order())));
        }
        let size = action[0].len();
        let mut flat = Vec::with_capacity(size * group.order());
        for (g, row) in action.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidGSet(format!("row {g} has length {}", row.len())));
            }
            let mut seen = vec![false; size];
            for &x in row {
                if x >= size || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGSet(format!("row {g} is not a permutation")));
                }
            }
            flat.extend_from_slice(row);
        }
        let s = GSet { group, size, action: flat };
        if (0..size).any(|x| s.act(s.group.identity(), x) != x) {
            return Err(Error::InvalidGSet("identity acts nontrivially".into()));
        }
        for g in s.group.elements() {
            for h in s.group.elements() {
                let gh = s.group.mul(g, h);
                if (0..size).any(|x| s.act(g, s.act(h, x)) != s.act(gh, x)) {
                    return Err(Error::InvalidGSet(format!("not an action at ({g},{h})")));
                }
            }
        }
        Ok(s)
    }

    pub(crate) fn from_flat(group: GroupRef, size: usize, action: Vec<usize>) -> Self {
        debug_assert_eq!(action.len(), size * group.order());
        GSet { group, size, action }
    }

    pub fn from_json(j: &GSetJson, group: GroupRef) -> Result<Self> {
        if j.group != group.name() {
            return Err(Error::InvalidGSet(format!("G-set is over {} not {}", j.group, group.name())));
        }
        if j.action.first().is_some_and(|r| r.len() != j.size) {
            return Err(Error::InvalidGSet("size does not match the action rows".into()));
        }
        Self::new(group, j.action.clone())
    }

    pub fn to_json(&self) -> GSetJson {
        GSetJson {
            group: self.group.name().to_string(),
            size: self.size,
            action: self.group.elements().map(|g| self.row(g).to_vec()).collect(),
        }
    }

    pub fn empty(group: GroupRef) -> Self {
        GSet { group, size: 0, action: Vec::new() }
    }

    /// `n` fixed points.
    pub fn trivial(group: GroupRef, n: usize) -> Self {
        let action = group.elements().flat_map(|_| 0..n).collect();
        GSet { group, size: n, action }
    }

    pub fn point(group: GroupRef) -> Self {
        Self::trivial(group, 1)
    }

    /// `G/H`, with points the left cosets listed by least element.
    pub fn coset_space(group: GroupRef, h: &Subgroup) -> Self {
        let cosets = group.left_cosets(h);
        let mut coset_of = vec![0; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = i;
            }
        }
        let size = cosets.len();
        let mut action = Vec::with_capacity(size * group.order());
        for g in group.elements() {
            for c in &cosets {
                action.push(coset_of[group.mul(g, c[0])]);
            }
        }
        GSet { group, size, action }
    }

    /// The orbit `G/H` for the representative `H` of a conjugacy class.
    pub fn orbit_of_class(group: &GroupRef, class: usize) -> Self {
        let lat = group.lattice();
        let h = lat.subgroup(lat.class_rep(class)).clone();
        Self::coset_space(group.clone(), &h)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }
    pub fn size(&self) -> usize {
        self.size
    }
    pub fn is_empty(&self) -> bool {
        self.size == 0
    }
    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }
    pub fn row(&self, g: usize) -> &[usize] {
        &self.action[g * self.size..(g + 1) * self.size]
    }

    /// Orbit label of every point; orbits numbered by least point.
    pub fn orbit_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.size];
        let mut next = 0;
        for x in 0..self.size {
            if label[x] != usize::MAX {
                continue;
            }
            for g in self.group.elements() {
                label[self.act(g, x)] = next;
            }
            next += 1;
        }
        label
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let labels = self.orbit_labels();
        let n = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); n];
        for (x, &l) in labels.iter().enumerate() {
            out[l].push(x);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.size > 0 && self.orbits().len() == 1
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let e = self.group.elements().filter(|&g| self.act(g, x) == x).collect();
        Subgroup::new(&self.group, e).expect("stabilizers are subgroups")
    }

    /// Lattice id of the stabilizer of `x`.
    pub fn stabilizer_id(&self, x: usize) -> usize {
        self.group.lattice().id_of(&self.stabilizer(x))
    }

    /// Some `g` with `g·x = y`, the least such index.
    pub fn transporter(&self, x: usize, y: usize) -> Option<usize> {
        self.group.elements().find(|&g| self.act(g, x) == y)
    }

    pub fn orbit_decomposition(&self) -> Vec<OrbitPiece> {
        self.orbits()
            .into_iter()
            .map(|points| {
                let (gset, _) = self.sub_gset(&points);
                let basepoint = points[0];
                let stabilizer = self.stabilizer(basepoint);
                let lat = self.group.lattice();
                let class = lat.class_of(lat.id_of(&stabilizer));
                OrbitPiece { points, gset, basepoint, stabilizer, class }
            })
            .collect()
    }

    /// Multiset of orbit types, sorted by class.
    pub fn orbit_types(&self) -> Vec<OrbitType> {
        let lat = self.group.lattice();
        let mut counts = vec![0; lat.num_classes()];
        for o in self.orbits() {
            counts[lat.class_of(self.stabilizer_id(o[0]))] += 1;
        }
        counts
            .into_iter()
            .enumerate()
            .filter(|(_, m)| *m > 0)
            .map(|(class, multiplicity)| OrbitType { class, multiplicity })
            .collect()
    }

    /// The G-set on `points` (which must be a union of orbits), numbered in the
    /// given order, with its inclusion into `self`.
    pub fn sub_gset(&self, points: &[usize]) -> (GSet, GMap) {
        let pos: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut action = Vec::with_capacity(points.len() * self.group.order());
        for g in self.group.elements() {
            for &x in points {
                action.push(pos[&self.act(g, x)]);
            }
        }
        let sub = GSet::from_flat(self.group.clone(), points.len(), action);
        let inc = GMap::from_parts(sub.clone(), self.clone(), points.to_vec());
        (sub, inc)
    }

    /// Whether `points` is closed under the action.
    pub fn is_union_of_orbits(&self, points: &[usize]) -> bool {
        let mut inside = vec![false; self.size];
        for &x in points {
            inside[x] = true;
        }
        points.iter().all(|&x| self.group.elements().all(|g| inside[self.act(g, x)]))
    }

    /// `a ⊔ b`, with `b` shifted after `a`.
    pub fn coproduct(&self, other: &GSet) -> GSet {
        let n = self.size + other.size;
        let mut action = Vec::with_capacity(n * self.group.order());
        for g in self.group.elements() {
            action.extend_from_slice(self.row(g));
            action.extend(other.row(g).iter().map(|&y| y + self.size));
        }
        GSet::from_flat(self.group.clone(), n, action)
    }

    pub fn coproduct_all(group: &GroupRef, parts: &[GSet]) -> GSet {
        parts.iter().fold(GSet::empty(group.clone()), |acc, p| acc.coproduct(p))
    }

    /// `a × b` with `(x, y)` at `x * |b| + y`.
    pub fn product(&self, other: &GSet) -> GSet {
        let n = self.size * other.size;
        let mut action = Vec::with_capacity(n * self.group.order());
        for g in self.group.elements() {
            for x in 0..self.size {
                for y in 0..other.size {
                    action.push(self.act(g, x) * other.size + other.act(g, y));
                }
            }
        }
        GSet::from_flat(self.group.clone(), n, action)
    }

    /// Relabel points: new point `perm[x]` is old point `x`.
    pub fn relabel(&self, perm: &[usize]) -> GSet {
        let mut action = vec![0; self.action.len()];
        for g in self.group.elements() {
            for x in 0..self.size {
                action[g * self.size + perm[x]] = perm[self.act(g, x)];
            }
        }
        GSet::from_flat(self.group.clone(), self.size, action)
    }

    /// The underlying `H`-set, where `h_group` is `H` as a standalone group and
    /// `embedding[i]` is the ambient element for its element `i`.
    pub fn restrict(&self, h_group: GroupRef, embedding: &[usize]) -> GSet {
        let mut action = Vec::with_capacity(self.size * h_group.order());
        for &g in embedding {
            action.extend_from_slice(self.row(g));
        }
        GSet::from_flat(h_group, self.size, action)
    }

    /// `G ×_H X` for an `H`-set `x` over `h_group` embedded via `embedding`.
    /// Point `(c, p)` is `t_c ×_H p` at `c * |X| + p`, with `t_c` the least
    /// element of the `c`-th left coset of `H`.
    pub fn induce(group: GroupRef, embedding: &[usize], x: &GSet) -> GSet {
        let h = Subgroup::new(&group, embedding.to_vec()).expect("embedding image is a subgroup");
        let pos: HashMap<usize, usize> = embedding.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let cosets = group.left_cosets(&h);
        let mut coset_of = vec![0; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &y in c {
                coset_of[y] = i;
            }
        }
        let n = cosets.len() * x.size;
        let mut action = Vec::with_capacity(n * group.order());
        for g in group.elements() {
            for coset in &cosets {
                let gt = group.mul(g, coset[0]);
                let c2 = coset_of[gt];
                let hh = group.mul(group.inv(cosets[c2][0]), gt);
                let hi = pos[&hh];
                for p in 0..x.size {
                    action.push(c2 * x.size + x.act(hi, p));
                }
            }
        }
        GSet::from_flat(group, n, action)
    }

    /// Every G-set up to isomorphism with at most `max_size` points, as
    /// coproducts of class representative orbits in nondecreasing class order.
    pub fn all_up_to_iso(group: &GroupRef, max_size: usize) -> Vec<GSet> {
        let lat = group.lattice();
        let orbits: Vec<GSet> = (0..lat.num_classes()).map(|c| GSet::orbit_of_class(group, c)).collect();
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
        while let Some((classes, size)) = stack.pop() {
            let parts: Vec<GSet> = classes.iter().map(|&c| orbits[c].clone()).collect();
            out.push(GSet::coproduct_all(group, &parts));
            let start = classes.last().copied().unwrap_or(0);
            for (c, orbit) in orbits.iter().enumerate().skip(start) {
                if size + orbit.size() <= max_size {
                    let mut next = classes.clone();
                    next.push(c);
                    stack.push((next, size + orbit.size()));
                }
            }
        }
        out.sort_by_key(|s| (s.size(), s.orbit_types()));
        out
    }
}

/// An equivariant map between G-sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GMap {
    source: GSet,
    target: GSet,
    map: Vec<usize>,
}

impl fmt::Debug for GMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GMap({} -> {}, {:?})", self.source.size, self.target.size, self.map)
    }
}

impl GMap {
    pub fn new(source: GSet, target: GSet, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
            return Err(Error::InvalidGSet("map has the wrong shape".into()));
        }
        for g in source.group().elements() {
            for x in 0..source.size() {
                if map[source.act(g, x)] != target.act(g, map[x]) {
                    return Err(Error::NotEquivariant(format!("at element {g}, point {x}")));
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub(crate) fn from_parts(source: GSet, target: GSet, map: Vec<usize>) -> Self {
        debug_assert!(GMap::new(source.clone(), target.clone(), map.clone()).is_ok());
        Self { source, target, map }
    }

    pub fn from_json(j: &GMapJson, group: GroupRef) -> Result<Self> {
        let s = GSet::from_json(&j.source, group.clone())?;
        let t = GSet::from_json(&j.target, group)?;
        Self::new(s, t, j.map.clone())
    }

    pub fn to_json(&self) -> GMapJson {
        GMapJson { source: self.source.to_json(), target: self.target.to_json(), map: self.map.clone() }
    }

    pub fn identity(x: &GSet) -> Self {
        Self { source: x.clone(), target: x.clone(), map: (0..x.size()).collect() }
    }

    /// The unique map to the one-point G-set.
    pub fn to_point(x: &GSet) -> Self {
        Self { source: x.clone(), target: GSet::point(x.group().clone()), map: vec![0; x.size()] }
    }

    /// `∇: x ⊔ x → x`.
    pub fn fold(x: &GSet) -> Self {
        let map = (0..x.size()).chain(0..x.size()).collect();
        Self { source: x.coproduct(x), target: x.clone(), map }
    }

    /// `f ⊔ g: a ⊔ c → b ⊔ d`.
    pub fn coproduct(&self, other: &GMap) -> Self {
        let map = self.map.iter().copied().chain(other.map.iter().map(|&y| y + self.target.size())).collect();
        Self { source: self.source.coproduct(&other.source), target: self.target.coproduct(&other.target), map }
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }
    pub fn target(&self) -> &GSet {
        &self.target
    }
    pub fn map(&self) -> &[usize] {
        &self.map
    }
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GMap) -> Result<GMap> {
        if self.target != other.source {
            return Err(Error::Mismatch("composite of maps with different middle objects".into()));
        }
        Ok(Self {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&y| other.map[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_iso(&self) -> bool {
        self.source.size() == self.target.size() && self.is_injective()
    }

    /// Injective with image a union of orbits.
    pub fn is_summand_inclusion(&self) -> bool {
        self.is_injective() && self.target.is_union_of_orbits(&self.map)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GMap> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Self { source: self.target.clone(), target: self.source.clone(), map: inv })
    }

    /// Points of the source lying over `y`.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.source.size()).filter(|&x| self.map[x] == y).collect()
    }

    /// Restriction of the map to the preimage of an orbit-closed set of target
    /// points, numbered in increasing order on both sides.
    pub fn restrict_to(&self, target_points: &[usize]) -> GMap {
        let mut tp = target_points.to_vec();
        tp.sort_unstable();
        let (t, _) = self.target.sub_gset(&tp);
        let pos: HashMap<usize, usize> = tp.iter().enumerate().map(|(i, &y)| (y, i)).collect();
        let sp: Vec<usize> = (0..self.source.size()).filter(|&x| pos.contains_key(&self.map[x])).collect();
        let (s, _) = self.source.sub_gset(&sp);
        let map = sp.iter().map(|&x| pos[&self.map[x]]).collect();
        GMap { source: s, target: t, map }
    }
}

/// `{(x, y) : f(x) = g(y)}` in row-major order, with the two projections.
pub fn pullback(f: &GMap, g: &GMap) -> Result<(GSet, GMap, GMap)> {
    if f.target() != g.target() {
        return Err(Error::Mismatch("pullback of maps with different targets".into()));
    }
    let (a, b) = (f.source(), g.source());
    let pairs: Vec<(usize, usize)> =
        (0..a.size()).cartesian_product(0..b.size()).filter(|&(x, y)| f.apply(x) == g.apply(y)).collect();
    let pos: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let group = a.group().clone();
    let mut action = Vec::with_capacity(pairs.len() * group.order());
    for h in group.elements() {
        for &(x, y) in &pairs {
            action.push(pos[&(a.act(h, x), b.act(h, y))]);
        }
    }
    let p = GSet::from_flat(group, pairs.len(), action);
    let p1 = GMap::from_parts(p.clone(), a.clone(), pairs.iter().map(|q| q.0).collect());
    let p2 = GMap::from_parts(p.clone(), b.clone(), pairs.iter().map(|q| q.1).collect());
    Ok((p, p1, p2))
}

/// All equivariant maps `u → x`, lexicographically ordered by image vector.
pub fn equivariant_maps(u: &GSet, x: &GSet) -> Vec<Vec<usize>> {
    equivariant_maps_over(u, x, |_, _| true)
}

/// Equivariant maps `u → x` whose basepoint images pass `allowed(point, image)`.
/// `allowed` must be invariant under the action for the result to be complete.
pub fn equivariant_maps_over(u: &GSet, x: &GSet, allowed: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let group = u.group();
    let orbits = u.orbits();
    let mut per_orbit: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for o in &orbits {
        let b = o[0];
        let stab = u.stabilizer(b);
        let mut options = Vec::new();
        for t in 0..x.size() {
            if !allowed(b, t) || !stab.elements().iter().all(|&s| x.act(s, t) == t) {
                continue;
            }
            let mut assignment = Vec::with_capacity(o.len());
            let mut done = vec![false; u.size()];
            for g in group.elements() {
                let p = u.act(g, b);
                if !std::mem::replace(&mut done[p], true) {
                    assignment.push((p, x.act(g, t)));
                }
            }
            options.push(assignment);
        }
        if options.is_empty() {
            return Vec::new();
        }
        per_orbit.push(options);
    }
    let mut out: Vec<Vec<usize>> = per_orbit
        .iter()
        .map(|opts| opts.iter())
        .multi_cartesian_product()
        .map(|choice| {
            let mut m = vec![0; u.size()];
            for assignment in choice {
                for &(p, t) in assignment {
                    m[p] = t;
                }
            }
            m
        })
        .collect();
    if orbits.is_empty() {
        out = vec![Vec::new()];
    }
    out.sort();
    out
}

/// The underlying `H`-set of `x`, with `H` renumbered as in `subgroup_as_group`.
pub fn restrict_to_subgroup(x: &GSet, h: &Subgroup) -> GSet {
    let (hg, emb) = x.group().subgroup_as_group(h, "H");
    x.restrict(Arc::new(hg), &emb)
}

/// `G/K` induced from the `H`-set `H/K`, for `K ≤ H ≤ G`.
pub fn induced_coset(group: &GroupRef, h: &Subgroup, k: &Subgroup) -> GSet {
    let (hg, emb) = group.subgroup_as_group(h, "H");
    let hg = Arc::new(hg);
    let pos: HashMap<usize, usize> = emb.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let k_in_h = Subgroup::new(&hg, k.elements().iter().map(|x| pos[x]).collect()).expect("K ≤ H");
    GSet::induce(group.clone(), &emb, &GSet::coset_space(hg, &k_in_h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn g(name: &str) -> GroupRef {
        FiniteGroup::fixture(name).unwrap()
    }

    fn sub_of_order(grp: &GroupRef, n: usize) -> Subgroup {
        grp.lattice().subgroups().iter().find(|s| s.order() == n).unwrap().clone()
    }

    #[test]
    fn orbit_examples() {
        let c4 = g("C4");
        let reg = GSet::coset_space(c4.clone(), &c4.trivial_subgroup());
        let d = reg.orbit_decomposition();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].stabilizer.order(), 1);
        let c2 = g("C2");
        let t = GSet::trivial(c2.clone(), 3);
        assert_eq!(t.orbits().len(), 3);
        assert!(t.orbit_decomposition().iter().all(|p| p.stabilizer.order() == 2));
        let swaps = GSet::new(c2, vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]]).unwrap();
        assert_eq!(swaps.orbit_types(), vec![OrbitType { class: 0, multiplicity: 2 }]);
    }

    #[test]
    fn pullback_examples() {
        let c2 = g("C2");
        let free = GSet::coset_space(c2.clone(), &c2.trivial_subgroup());
        let f = GMap::to_point(&free);
        let (p, _, _) = pullback(&f, &f).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.orbit_types(), vec![OrbitType { class: 0, multiplicity: 2 }]);

        let s3 = g("S3");
        let t = sub_of_order(&s3, 2);
        let o = GSet::coset_space(s3.clone(), &t);
        let f = GMap::to_point(&o);
        let (p, _, _) = pullback(&f, &f).unwrap();
        let lat = s3.lattice();
        let c_e = lat.class_of(lat.id_of(&s3.trivial_subgroup()));
        let c_t = lat.class_of(lat.id_of(&t));
        let mut expect = vec![OrbitType { class: c_e, multiplicity: 1 }, OrbitType { class: c_t, multiplicity: 1 }];
        expect.sort();
        assert_eq!(p.orbit_types(), expect);

        let (q, p1, _) = pullback(&f, &GMap::identity(f.target())).unwrap();
        assert_eq!(q.size(), o.size());
        assert!(p1.is_iso());
    }

    #[test]
    fn summand_inclusion_examples() {
        let c2 = g("C2");
        let free = GSet::coset_space(c2.clone(), &c2.trivial_subgroup());
        let pt = GSet::point(c2.clone());
        let (_, inc) = free.coproduct(&pt).sub_gset(&[0, 1]);
        assert!(inc.is_summand_inclusion());
        assert!(!GMap::fold(&free).is_summand_inclusion());
        let prod = free.product(&free);
        let diag = GMap::new(free.clone(), prod.clone(), vec![0, 3]).unwrap();
        assert!(diag.is_summand_inclusion());
        assert_eq!(prod.orbits().len(), 2);
    }

    #[test]
    fn induce_restrict_examples() {
        let c2 = g("C2");
        let e = Arc::new(FiniteGroup::trivial());
        let ind = GSet::induce(c2.clone(), &[0], &GSet::point(e.clone()));
        assert_eq!(ind.size(), 2);
        assert!(ind.is_transitive());
        assert_eq!(ind.stabilizer(0).order(), 1);
        assert!(GSet::induce(c2.clone(), &[0], &GSet::empty(e)).is_empty());

        let c4 = g("C4");
        let reg = GSet::coset_space(c4.clone(), &c4.trivial_subgroup());
        let r = restrict_to_subgroup(&reg, &sub_of_order(&c4, 2));
        assert_eq!(r.orbits().len(), 2);
        assert!(r.orbit_decomposition().iter().all(|p| p.stabilizer.order() == 1));
    }

    #[test]
    fn induced_coset_has_the_right_orbit_type() {
        for grp in FiniteGroup::fixtures() {
            let lat = grp.lattice();
            for h in lat.subgroups() {
                for k in lat.subgroups().iter().filter(|k| k.is_subgroup_of(h)) {
                    let x = induced_coset(&grp, h, k);
                    assert_eq!(x.size(), grp.order() / k.order());
                    let types = x.orbit_types();
                    assert_eq!(types.len(), 1);
                    assert_eq!(types[0].class, lat.class_of(lat.id_of(k)));
                }
            }
        }
    }

    #[test]
    fn hom_counts_between_orbits() {
        let c2 = g("C2");
        let free = GSet::coset_space(c2.clone(), &c2.trivial_subgroup());
        let pt = GSet::point(c2.clone());
        assert_eq!(equivariant_maps(&free, &free).len(), 2);
        assert_eq!(equivariant_maps(&pt, &free).len(), 0);
        assert_eq!(equivariant_maps(&free, &pt).len(), 1);
        assert_eq!(equivariant_maps(&GSet::empty(c2.clone()), &free).len(), 1);
    }

    #[test]
    fn all_up_to_iso_counts() {
        let c2 = g("C2");
        // sizes 0..=3: 1, 1, 2, 2
        assert_eq!(GSet::all_up_to_iso(&c2, 3).len(), 6);
        assert_eq!(GSet::all_up_to_iso(&g("trivial"), 4).len(), 5);
    }

    #[test]
    fn action_validation() {
        let c2 = g("C2");
        assert!(GSet::new(c2.clone(), vec![vec![0, 1], vec![0, 0]]).is_err());
        assert!(GSet::new(c2.clone(), vec![vec![1, 0], vec![0, 1]]).is_err());
        let x = GSet::trivial(c2.clone(), 2);
        assert!(GMap::new(GSet::coset_space(c2.clone(), &c2.trivial_subgroup()), x, vec![0, 1]).is_err());
    }
}
