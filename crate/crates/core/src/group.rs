//! Finite groups given by multiplication tables, their subgroup lattices,
//! Weyl groups and homomorphism enumeration.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type GroupRef = Arc<FiniteGroup>;

/// The names of the bundled group fixtures, in their canonical listing order.
pub const FIXTURE_NAMES: [&str; 8] = ["trivial", "C2", "C3", "C4", "C2xC2", "C6", "S3", "Q8"];

fn fixture_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "trivial" => include_str!("../fixtures/groups/trivial.json"),
        "C2" => include_str!("../fixtures/groups/C2.json"),
        "C3" => include_str!("../fixtures/groups/C3.json"),
        "C4" => include_str!("../fixtures/groups/C4.json"),
        "C2xC2" => include_str!("../fixtures/groups/C2xC2.json"),
        "C6" => include_str!("../fixtures/groups/C6.json"),
        "S3" => include_str!("../fixtures/groups/S3.json"),
        "Q8" => include_str!("../fixtures/groups/Q8.json"),
        _ => return None,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub order: usize,
    pub identity: usize,
    pub mult: Vec<Vec<usize>>,
}

/// A finite group stored as a full multiplication table.
pub struct FiniteGroup {
    name: String,
    order: usize,
    identity: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    lattice: OnceLock<SubgroupLattice>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.mult == other.mult
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates the table (closure, associativity, identity, inverses).
    pub fn from_table(name: impl Into<String>, identity: usize, mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if identity >= n {
            return Err(Error::InvalidGroup(format!("identity {identity} out of range")));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidGroup(format!("entry {x} in row {i} out of range")));
                }
            }
            flat.extend_from_slice(row);
        }
        let m = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            if m(identity, a) != a || m(a, identity) != a {
                return Err(Error::InvalidGroup(format!("{identity} is not a two-sided identity at {a}")));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| m(a, b) == identity) {
                Some(b) if m(b, a) == identity => inv[a] = b,
                _ => return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Self { name: name.into(), order: n, identity, mult: flat, inv, lattice: OnceLock::new() })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: GroupJson = serde_json::from_str(text)?;
        if j.order != j.mult.len() {
            return Err(Error::InvalidGroup(format!("order {} but {} rows", j.order, j.mult.len())));
        }
        Self::from_table(j.name, j.identity, j.mult)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            name: self.name.clone(),
            order: self.order,
            identity: self.identity,
            mult: (0..self.order).map(|a| self.mult[a * self.order..(a + 1) * self.order].to_vec()).collect(),
        }
    }

    /// Loads one of the bundled fixtures by exact name.
    pub fn fixture(name: &str) -> Result<GroupRef> {
        let src = fixture_source(name).ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
        Ok(Arc::new(Self::from_json(src)?))
    }

    pub fn fixtures() -> Vec<GroupRef> {
        FIXTURE_NAMES.iter().map(|n| Self::fixture(n).expect("bundled fixture")).collect()
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let name = if n == 1 { "trivial".to_string() } else { format!("C{n}") };
        Self::from_table(name, 0, mult).expect("cyclic table")
    }

    /// The symmetric group on `n` letters. Elements are the permutations in
    /// lexicographic order and `(p*q)(x) = p(q(x))`.
    pub fn symmetric(n: usize) -> Self {
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let index: HashMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mult = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                        index[&pq]
                    })
                    .collect()
            })
            .collect();
        Self::from_table(format!("Sigma{n}"), 0, mult).expect("symmetric table")
    }

    /// The permutation of `{0..n}` represented by an element of `symmetric(n)`.
    pub fn symmetric_perm(n: usize, elem: usize) -> Vec<usize> {
        (0..n).permutations(n).nth(elem).expect("element of the symmetric group")
    }

    /// `a × b` with element `(x, y)` stored at `x * |b| + y`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let mult = (0..na * nb)
            .map(|i| (0..na * nb).map(|j| a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb)).collect())
            .collect();
        Self::from_table(format!("{}x{}", a.name, b.name), a.identity * nb + b.identity, mult)
            .expect("product table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv[g])
    }
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        generators_of(self, &(0..self.order).collect::<Vec<_>>())
    }

    /// The subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_mask(&seen)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![self.identity] }
    }

    /// `g H g⁻¹`.
    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> Subgroup {
        let mut e: Vec<usize> = h.elements.iter().map(|&x| self.conj(g, x)).collect();
        e.sort_unstable();
        Subgroup { elements: e }
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup { elements: a.elements.iter().copied().filter(|&x| b.contains(x)).collect() }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let e = (0..self.order).filter(|&g| h.elements.iter().all(|&x| h.contains(self.conj(g, x)))).collect();
        Subgroup { elements: e }
    }

    /// Left cosets `gH`, each sorted, listed by least element.
    pub fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = h.elements.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            out.push(c);
        }
        out
    }

    /// Double cosets `HgK`, each sorted, listed by least element.
    pub fn double_cosets(&self, h: &Subgroup, k: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut c: BTreeSet<usize> = BTreeSet::new();
            for &x in &h.elements {
                for &y in &k.elements {
                    c.insert(self.mul(self.mul(x, g), y));
                }
            }
            for &x in &c {
                seen[x] = true;
            }
            out.push(c.into_iter().collect());
        }
        out
    }

    /// `H` as a standalone group together with the embedding into `self`.
    /// Elements of the result are numbered by their position in `h.elements()`.
    pub fn subgroup_as_group(&self, h: &Subgroup, name: impl Into<String>) -> (FiniteGroup, Vec<usize>) {
        let pos: HashMap<usize, usize> = h.elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mult = h.elements.iter().map(|&a| h.elements.iter().map(|&b| pos[&self.mul(a, b)]).collect()).collect();
        let g = FiniteGroup::from_table(name, pos[&self.identity], mult).expect("subgroup table");
        (g, h.elements.clone())
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        self.lattice.get_or_init(|| SubgroupLattice::compute(self))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn generators_of(g: &FiniteGroup, elems: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = g.trivial_subgroup();
    for &x in elems {
        if !current.contains(x) {
            gens.push(x);
            current = g.generated(&gens);
        }
    }
    gens
}

/// A subgroup, as the sorted list of its element indices in the ambient group.
/// Subgroups are always interpreted relative to the group they were built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Checks closure, identity and inverses inside `g`.
    pub fn new(g: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let s = Subgroup { elements };
        if !s.contains(g.identity()) {
            return Err(Error::InvalidGroup("subgroup lacks the identity".into()));
        }
        for &a in &s.elements {
            if a >= g.order() || !s.contains(g.inv(a)) {
                return Err(Error::InvalidGroup(format!("subgroup not closed under inverse at {a}")));
            }
            for &b in &s.elements {
                if !s.contains(g.mul(a, b)) {
                    return Err(Error::InvalidGroup(format!("subgroup not closed at ({a},{b})")));
                }
            }
        }
        Ok(s)
    }

    fn from_mask(mask: &[bool]) -> Self {
        Subgroup { elements: mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}

/// All subgroups of a group with conjugacy classes and containment.
///
/// Classes are ordered by subgroup order, then by their representative, the
/// lexicographically least element list in the class. Subgroups are ordered by
/// class, then by element list, so the first member of a class is its representative.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    index: HashMap<Subgroup, usize>,
    below: Vec<Vec<bool>>,
}

impl SubgroupLattice {
    fn compute(g: &FiniteGroup) -> Self {
        let mut found: BTreeSet<Subgroup> = BTreeSet::new();
        let cyclic: BTreeSet<Subgroup> = (0..g.order()).map(|x| g.generated(&[x])).collect();
        found.extend(cyclic.iter().cloned());
        let mut frontier: Vec<Subgroup> = found.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for c in &cyclic {
                    if c.is_subgroup_of(a) {
                        continue;
                    }
                    let mut gens = a.elements.clone();
                    gens.extend_from_slice(&c.elements);
                    let j = g.generated(&generators_of(g, &gens));
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        Self::from_subgroups(g, found.into_iter().collect())
    }

    fn from_subgroups(g: &FiniteGroup, all: Vec<Subgroup>) -> Self {
        // Orbits under conjugation; representative = least element list.
        let mut assigned: HashMap<Subgroup, usize> = HashMap::new();
        let mut raw_classes: Vec<Vec<Subgroup>> = Vec::new();
        for s in &all {
            if assigned.contains_key(s) {
                continue;
            }
            let members: BTreeSet<Subgroup> = (0..g.order()).map(|x| g.conjugate_subgroup(x, s)).collect();
            for m in &members {
                assigned.insert(m.clone(), raw_classes.len());
            }
            raw_classes.push(members.into_iter().collect());
        }
        raw_classes.sort_by(|a, b| (a[0].order(), &a[0].elements).cmp(&(b[0].order(), &b[0].elements)));
        let mut subgroups = Vec::new();
        let mut class_of = Vec::new();
        let mut classes = Vec::new();
        for (c, members) in raw_classes.into_iter().enumerate() {
            let mut ids = Vec::new();
            for m in members {
                ids.push(subgroups.len());
                subgroups.push(m);
                class_of.push(c);
            }
            classes.push(ids);
        }
        let index = subgroups.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let below = subgroups.iter().map(|a| subgroups.iter().map(|b| a.is_subgroup_of(b)).collect()).collect();
        SubgroupLattice { subgroups, class_of, classes, index, below }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }
    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }
    pub fn subgroup(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }
    pub fn id_of(&self, s: &Subgroup) -> usize {
        self.index[s]
    }
    pub fn try_id_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }
    pub fn class_of(&self, id: usize) -> usize {
        self.class_of[id]
    }
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }
    pub fn class_members(&self, class: usize) -> &[usize] {
        &self.classes[class]
    }
    /// The subgroup id of the class representative.
    pub fn class_rep(&self, class: usize) -> usize {
        self.classes[class][0]
    }
    /// `a ≤ b` as subgroups.
    pub fn is_below(&self, a: usize, b: usize) -> bool {
        self.below[a][b]
    }
    /// Whether some conjugate of a member of class `k` lies in the representative of class `h`.
    pub fn is_subconjugate(&self, k: usize, h: usize) -> bool {
        let rep = self.class_rep(h);
        self.classes[k].iter().any(|&m| self.below[m][rep])
    }
    /// `(subgroup, class id)` pairs.
    pub fn entries(&self) -> Vec<(Subgroup, usize)> {
        self.subgroups.iter().cloned().zip(self.class_of.iter().copied()).collect()
    }
}

/// `N_G(H)/H`. Elements are the cosets of `H` in the normalizer, listed by least element.
pub fn weyl_group(g: &FiniteGroup, h: &Subgroup) -> FiniteGroup {
    let n = g.normalizer(h);
    let cosets = g.left_cosets(h).into_iter().filter(|c| n.contains(c[0])).collect::<Vec<_>>();
    let mut coset_of: HashMap<usize, usize> = HashMap::new();
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            coset_of.insert(x, i);
        }
    }
    let mult = cosets.iter().map(|a| cosets.iter().map(|b| coset_of[&g.mul(a[0], b[0])]).collect()).collect();
    FiniteGroup::from_table(format!("W({})", g.name()), coset_of[&g.identity()], mult).expect("Weyl table")
}

/// A homomorphism given by the image of every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source: GroupRef,
    pub target: GroupRef,
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: GroupRef, target: GroupRef, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.order() || image.iter().any(|&x| x >= target.order()) {
            return Err(Error::InvalidGroup("image has the wrong shape".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(Error::InvalidGroup(format!("not a homomorphism at ({a},{b})")));
                }
            }
        }
        Ok(Self { source, target, image })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `k φ(-) k⁻¹`.
    pub fn conjugated(&self, k: usize) -> GroupHom {
        let image = self.image.iter().map(|&x| self.target.conj(k, x)).collect();
        GroupHom { source: self.source.clone(), target: self.target.clone(), image }
    }

    pub fn kernel(&self) -> Subgroup {
        let e = self.source.elements().filter(|&x| self.image[x] == self.target.identity()).collect();
        Subgroup { elements: e }
    }
}

/// All homomorphisms `H → K`, or one per `K`-conjugacy orbit when `up_to_conjugacy`
/// is set (the member with the lexicographically least image vector).
pub fn enumerate_homs(h: &GroupRef, k: &GroupRef, up_to_conjugacy: bool) -> Vec<GroupHom> {
    let gens = h.generators();
    // Each element of H as a word in the generators, found by BFS.
    let mut word: Vec<Option<(usize, usize)>> = vec![None; h.order()];
    let mut seen = vec![false; h.order()];
    seen[h.identity()] = true;
    let mut order = vec![h.identity()];
    let mut qi = 0;
    while qi < order.len() {
        let x = order[qi];
        qi += 1;
        for (gi, &gen) in gens.iter().enumerate() {
            let y = h.mul(x, gen);
            if !seen[y] {
                seen[y] = true;
                word[y] = Some((x, gi));
                order.push(y);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let choices = gens.iter().map(|_| 0..k.order()).multi_cartesian_product();
    let mut candidates: Vec<Vec<usize>> = if gens.is_empty() { vec![vec![]] } else { choices.collect() };
    candidates.retain(|c| c.iter().zip(&gens).all(|(&img, &gen)| k.element_order(img) <= h.element_order(gen)));
    for imgs in candidates {
        let mut image = vec![usize::MAX; h.order()];
        image[h.identity()] = k.identity();
        for &x in &order[1..] {
            let (prev, gi) = word[x].expect("reached by BFS");
            image[x] = k.mul(image[prev], imgs[gi]);
        }
        let ok = h.elements().all(|a| h.elements().all(|b| image[h.mul(a, b)] == k.mul(image[a], image[b])));
        if ok {
            out.push(image);
        }
    }
    if up_to_conjugacy {
        let mut reps: BTreeSet<Vec<usize>> = BTreeSet::new();
        for img in &out {
            let least = k
                .elements()
                .map(|c| img.iter().map(|&x| k.conj(c, x)).collect::<Vec<_>>())
                .min()
                .expect("nonempty group");
            reps.insert(least);
        }
        out = reps.into_iter().collect();
    } else {
        out.sort();
    }
    out.into_iter().map(|image| GroupHom { source: h.clone(), target: k.clone(), image }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: every subset closed under multiplication and containing e.
    fn closed_subsets(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
        let n = g.order();
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            if mask & (1 << g.identity()) == 0 {
                continue;
            }
            let inside = |x: usize| mask & (1 << x) != 0;
            let closed = (0..n).filter(|&a| inside(a)).all(|a| (0..n).filter(|&b| inside(b)).all(|b| inside(g.mul(a, b))));
            if closed {
                out.insert((0..n).filter(|&a| inside(a)).collect());
            }
        }
        out
    }

    #[test]
    fn lattice_matches_subset_oracle_on_fixtures() {
        for g in FiniteGroup::fixtures() {
            let lat = g.lattice();
            let ours: BTreeSet<Vec<usize>> = lat.subgroups().iter().map(|s| s.elements().to_vec()).collect();
            assert_eq!(ours, closed_subsets(&g), "{}", g.name());
            assert_eq!(ours.len(), lat.len());
        }
    }

    #[test]
    fn lattice_counts() {
        let counts: Vec<(usize, usize)> = FiniteGroup::fixtures()
            .iter()
            .map(|g| (g.lattice().len(), g.lattice().num_classes()))
            .collect();
        // trivial, C2, C3, C4, C2xC2, C6, S3, Q8
        assert_eq!(counts, vec![(1, 1), (2, 2), (2, 2), (3, 3), (5, 5), (4, 4), (6, 4), (6, 6)]);
    }

    #[test]
    fn class_representative_is_least_member() {
        for g in FiniteGroup::fixtures() {
            let lat = g.lattice();
            for c in 0..lat.num_classes() {
                let rep = lat.subgroup(lat.class_rep(c));
                assert!(lat.class_members(c).iter().all(|&m| lat.subgroup(m) >= rep));
            }
        }
    }

    #[test]
    fn symmetric_three_is_the_s3_fixture() {
        let s3 = FiniteGroup::fixture("S3").unwrap();
        assert_eq!(&FiniteGroup::symmetric(3), s3.as_ref());
    }

    #[test]
    fn weyl_examples() {
        let c2 = FiniteGroup::fixture("C2").unwrap();
        assert_eq!(weyl_group(&c2, &c2.trivial_subgroup()).order(), 2);
        assert_eq!(weyl_group(&c2, &c2.whole()).order(), 1);
        let s3 = FiniteGroup::fixture("S3").unwrap();
        let t = s3.lattice().subgroups().iter().find(|s| s.order() == 2).unwrap().clone();
        assert_eq!(s3.normalizer(&t), t);
        assert_eq!(weyl_group(&s3, &t).order(), 1);
        assert_eq!(weyl_group(&s3, &s3.trivial_subgroup()).order(), 6);
    }

    #[test]
    fn hom_enumeration_examples() {
        let e = Arc::new(FiniteGroup::trivial());
        let c2 = FiniteGroup::fixture("C2").unwrap();
        let s2 = Arc::new(FiniteGroup::symmetric(2));
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        assert_eq!(enumerate_homs(&e, &s3, false).len(), 1);
        assert_eq!(enumerate_homs(&c2, &s2, true).len(), 2);
        assert_eq!(enumerate_homs(&c2, &s3, true).len(), 2);
        assert_eq!(enumerate_homs(&c2, &s3, false).len(), 4);
        let q8 = FiniteGroup::fixture("Q8").unwrap();
        // Q8 → Q8: 24 automorphisms plus the maps through quotients.
        let all = enumerate_homs(&q8, &q8, false);
        assert!(all.iter().filter(|h| h.kernel().order() == 1).count() == 24);
    }

    #[test]
    fn conjugating_a_hom_stays_in_its_class() {
        let c2 = FiniteGroup::fixture("C2").unwrap();
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let reps = enumerate_homs(&c2, &s3, true);
        for phi in enumerate_homs(&c2, &s3, false) {
            for k in s3.elements() {
                let psi = phi.conjugated(k);
                let least = s3.elements().map(|c| psi.conjugated(c).image).min().unwrap();
                assert!(reps.iter().any(|r| r.image == least));
            }
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table("x", 0, vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table("x", 0, vec![vec![0, 1], vec![1]]).is_err());
        assert!(FiniteGroup::fixture("D4").is_err());
    }
}
