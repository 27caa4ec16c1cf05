//! Families `{I(H)}` of finite `H`-sets, one per subgroup.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use itertools::Itertools;

use super::{generate_closure, IndexingSystem};
use crate::error::{Error, Result};
use crate::group::{GroupRef, Subgroup};
use crate::gset::{GMap, GSet};

/// The members of one `I(H)`.
#[derive(Debug, Clone)]
pub enum Members {
    /// Every `H`-set whose orbits are all `H/K` for `K` (a subgroup id of `G`)
    /// in the set. Closed under isomorphism, subsets and coproducts.
    Orbits(BTreeSet<usize>),
    /// Exactly the listed `H`-sets, compared as labeled actions.
    Explicit(Vec<GSet>),
}

/// One `I(H)` per subgroup id `H`. `H`-sets live over `local_group(H)`, whose
/// element `i` is the `i`-th element of `H` in increasing order.
#[derive(Debug, Clone)]
pub struct BHFamily {
    group: GroupRef,
    bound: usize,
    members: Vec<Members>,
    local: Vec<(GroupRef, Vec<usize>)>,
    keys: Vec<Option<HashSet<Vec<usize>>>>,
}

fn key(u: &GSet) -> Vec<usize> {
    let mut k = vec![u.size()];
    for g in u.group().elements() {
        k.extend_from_slice(u.row(g));
    }
    k
}

impl BHFamily {
    /// A family in orbit form; `orbits[H]` lists the admissible `H/K` by the
    /// subgroup id of `K`. Closure conditions are checked up to `bound` points.
    pub fn from_orbits(group: GroupRef, bound: usize, orbits: Vec<BTreeSet<usize>>) -> Result<Self> {
        let lat = group.lattice();
        if orbits.len() != lat.len() {
            return Err(Error::InvalidIndexing(format!("{} entries for {} subgroups", orbits.len(), lat.len())));
        }
        for (h, set) in orbits.iter().enumerate() {
            if let Some(k) = set.iter().find(|&&k| k >= lat.len() || !lat.is_below(k, h)) {
                return Err(Error::InvalidIndexing(format!("subgroup {k} is not below {h}")));
            }
        }
        let local = lat
            .subgroups()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let (hg, emb) = group.subgroup_as_group(s, format!("H{i}"));
                (Arc::new(hg), emb)
            })
            .collect();
        let n = orbits.len();
        Ok(BHFamily { group, bound, members: orbits.into_iter().map(Members::Orbits).collect(), local, keys: vec![None; n] })
    }

    /// Replaces `I(H)` by an explicit list of `H`-sets over `local_group(h)`.
    pub fn with_explicit(mut self, h: usize, sets: Vec<GSet>) -> Result<Self> {
        let order = self.local[h].0.order();
        if sets.iter().any(|u| u.group().order() != order) {
            return Err(Error::InvalidIndexing(format!("members of I({h}) must be sets over a group of order {order}")));
        }
        self.keys[h] = Some(sets.iter().map(key).collect());
        self.members[h] = Members::Explicit(sets);
        Ok(self)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }
    pub fn bound(&self) -> usize {
        self.bound
    }
    pub fn members_of(&self, h: usize) -> &Members {
        &self.members[h]
    }
    pub fn local_group(&self, h: usize) -> &GroupRef {
        &self.local[h].0
    }

    /// `K ≤ H` as a subgroup of `local_group(h)`.
    fn local_subgroup(&self, h: usize, k: usize) -> Subgroup {
        let emb = &self.local[h].1;
        let ks = self.group.lattice().subgroup(k);
        let elems = ks.elements().iter().map(|x| emb.binary_search(x).expect("K ≤ H")).collect();
        Subgroup::new(&self.local[h].0, elems).expect("image of a subgroup")
    }

    /// The subgroup id in `G` of a subgroup of `local_group(h)`.
    fn global_id(&self, h: usize, s: &Subgroup) -> usize {
        let emb = &self.local[h].1;
        let elems = s.elements().iter().map(|&i| emb[i]).collect();
        self.group.lattice().id_of(&Subgroup::new(&self.group, elems).expect("image of a subgroup"))
    }

    /// `H/K` with the labeling of [`GSet::coset_space`].
    pub fn coset(&self, h: usize, k: usize) -> GSet {
        GSet::coset_space(self.local[h].0.clone(), &self.local_subgroup(h, k))
    }

    pub fn contains(&self, h: usize, u: &GSet) -> bool {
        match &self.members[h] {
            Members::Orbits(set) => u.orbits().iter().all(|o| set.contains(&self.global_id(h, &u.stabilizer(o[0])))),
            Members::Explicit(_) => self.keys[h].as_ref().expect("keys of explicit members").contains(&key(u)),
        }
    }

    /// Members with at most `bound` points: up to isomorphism in orbit form,
    /// as listed in explicit form.
    pub fn members(&self, h: usize) -> Vec<GSet> {
        match &self.members[h] {
            Members::Orbits(_) => GSet::all_up_to_iso(&self.local[h].0, self.bound).into_iter().filter(|u| self.contains(h, u)).collect(),
            Members::Explicit(v) => v.iter().filter(|u| u.size() <= self.bound).cloned().collect(),
        }
    }

    /// `{K : H/K ∈ I(H)}`.
    pub fn orbit_content(&self, h: usize) -> BTreeSet<usize> {
        let lat = self.group.lattice();
        (0..lat.len()).filter(|&k| lat.is_below(k, h) && self.contains(h, &self.coset(h, k))).collect()
    }

    /// Whether every orbit content of `self` lies in that of `other`.
    pub fn is_subfamily_of(&self, other: &BHFamily) -> bool {
        (0..self.members.len()).all(|h| self.orbit_content(h).is_subset(&other.orbit_content(h)))
    }

    /// Whether `f` lies in the subcategory of `G`-sets the family generates:
    /// for each orbit of the target, the fiber over its least point is in
    /// `I(H)` for `H` the stabilizer of that point.
    pub fn admits_map(&self, f: &GMap) -> bool {
        f.target().orbits().iter().all(|o| {
            let w = o[0];
            let h = f.target().stabilizer_id(w);
            let fiber = f.fiber(w);
            let (lg, emb) = &self.local[h];
            let rows = emb
                .iter()
                .map(|&g| fiber.iter().map(|&p| fiber.binary_search(&f.source().act(g, p)).expect("stabilizer preserves fiber")).collect())
                .collect();
            self.contains(h, &GSet::new(lg.clone(), rows).expect("fiber action"))
        })
    }

    /// The first violation of each condition, as `(condition, witness)`.
    /// Condition 0 asks for all trivial `H`-sets; conditions 1 to 6 are
    /// closure under isomorphism, restriction, conjugation, subsets,
    /// coproducts and induction.
    pub fn violations(&self) -> Vec<(u8, String)> {
        let lat = self.group.lattice();
        let n = lat.len();
        let members: Vec<Vec<GSet>> = (0..n).map(|h| self.members(h)).collect();
        let mut found: Vec<Option<String>> = vec![None; 7];
        let mut note = |c: usize, w: String| {
            if found[c].is_none() {
                found[c] = Some(w);
            }
        };
        let show = |u: &GSet| format!("{:?}", (0..u.group().order()).map(|g| u.row(g).to_vec()).collect::<Vec<_>>());
        for h in 0..n {
            let lg = &self.local[h].0;
            for m in 0..=self.bound {
                if !self.contains(h, &GSet::trivial(lg.clone(), m)) {
                    note(0, format!("I({h}) lacks the trivial set of size {m}"));
                }
            }
            for u in &members[h] {
                let s = u.size();
                if s >= 2 {
                    let swap: Vec<usize> = (0..s).map(|x| if x < 2 { 1 - x } else { x }).collect();
                    let cycle: Vec<usize> = (0..s).map(|x| (x + 1) % s).collect();
                    for perm in [swap, cycle] {
                        if !self.contains(h, &u.relabel(&perm)) {
                            note(1, format!("I({h}) has {} but not its relabeling by {perm:?}", show(u)));
                        }
                    }
                }
                for k in (0..n).filter(|&k| k != h && lat.is_below(k, h)) {
                    let emb: Vec<usize> = self.local_subgroup(h, k).elements().to_vec();
                    let r = u.restrict(self.local[k].0.clone(), &emb);
                    if !self.contains(k, &r) {
                        note(2, format!("restriction of {} from {h} to {k} missing", show(u)));
                    }
                }
                for x in self.group.elements() {
                    let hs = lat.subgroup(h);
                    let h2 = lat.id_of(&self.group.conjugate_subgroup(x, hs));
                    let xi = self.group.inv(x);
                    let rows = self.local[h2]
                        .1
                        .iter()
                        .map(|&y| {
                            let back = self.group.mul(self.group.mul(xi, y), x);
                            u.row(self.local[h].1.binary_search(&back).expect("conjugate lies in H")).to_vec()
                        })
                        .collect();
                    let conj = GSet::new(self.local[h2].0.clone(), rows).expect("conjugate action");
                    if !self.contains(h2, &conj) {
                        note(3, format!("conjugate of {} from {h} to {h2} by {x} missing", show(u)));
                    }
                }
                let orbits = u.orbits();
                for i in 0..orbits.len() {
                    let rest: Vec<usize> = orbits.iter().enumerate().filter(|&(j, _)| j != i).flat_map(|(_, o)| o.iter().copied()).sorted().collect();
                    if !self.contains(h, &u.sub_gset(&rest).0) {
                        note(4, format!("I({h}) has {} but not the subset {rest:?}", show(u)));
                    }
                }
                let partners: Vec<&GSet> = match &self.members[h] {
                    Members::Orbits(_) => members[h].iter().filter(|v| v.is_transitive()).collect(),
                    Members::Explicit(_) => members[h].iter().collect(),
                };
                for v in partners.into_iter().filter(|v| s + v.size() <= self.bound) {
                    if !self.contains(h, &u.coproduct(v)) {
                        note(5, format!("I({h}) has {} and {} but not their coproduct", show(u), show(v)));
                    }
                }
            }
            for k in (0..n).filter(|&k| k != h && lat.is_below(k, h)) {
                if !self.contains(h, &self.coset(h, k)) {
                    continue;
                }
                let emb: Vec<usize> = self.local_subgroup(h, k).elements().to_vec();
                let index = lat.subgroup(h).order() / lat.subgroup(k).order();
                for u in members[k].iter().filter(|u| u.size() * index <= self.bound) {
                    if !self.contains(h, &GSet::induce(self.local[h].0.clone(), &emb, u)) {
                        note(6, format!("H{h}/H{k} ∈ I({h}) and {} ∈ I({k}) but its induction is missing", show(u)));
                    }
                }
            }
        }
        found.into_iter().enumerate().filter_map(|(c, w)| w.map(|w| (c as u8, w))).collect()
    }

    pub fn validate(&self) -> Result<()> {
        match self.violations().into_iter().next() {
            None => Ok(()),
            Some((c, w)) => Err(Error::InvalidIndexing(format!("condition ({c}): {w}"))),
        }
    }

    /// A family over a fixture group violating `condition` (1 to 6).
    pub fn counterexample(condition: u8) -> Result<Self> {
        use crate::group::FiniteGroup;
        let ids = |g: &GroupRef, order: usize| -> Vec<usize> {
            let lat = g.lattice();
            (0..lat.len()).filter(|&i| lat.subgroup(i).order() == order).collect()
        };
        let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<usize>>();
        match condition {
            1 | 4 | 5 => {
                let g = FiniteGroup::fixture("C2")?;
                let (e, top) = (ids(&g, 1)[0], ids(&g, 2)[0]);
                let mut orbits = vec![BTreeSet::new(); 2];
                orbits[e] = set(&[e]);
                let bound = if condition == 1 { 3 } else { 4 };
                let fam = BHFamily::from_orbits(g, bound, orbits)?;
                let lg = fam.local_group(top).clone();
                let free = GSet::coset_space(lg.clone(), &lg.trivial_subgroup());
                let pt = GSet::point(lg.clone());
                let mut sets: Vec<GSet> = (0..=bound).map(|m| GSet::trivial(lg.clone(), m)).collect();
                match condition {
                    1 => {
                        sets.push(free.clone());
                        sets.push(free.coproduct(&pt));
                        sets.push(pt.coproduct(&free));
                    }
                    4 => {
                        sets.extend(all_labelings(&free.coproduct(&pt)));
                        sets.extend(all_labelings(&free.coproduct(&pt).coproduct(&pt)));
                    }
                    _ => {
                        sets.extend(all_labelings(&free));
                        sets.extend(all_labelings(&free.coproduct(&free)));
                    }
                }
                fam.with_explicit(top, sets)
            }
            2 | 6 => {
                let g = FiniteGroup::fixture("C4")?;
                let (e, c2, top) = (ids(&g, 1)[0], ids(&g, 2)[0], ids(&g, 4)[0]);
                let mut orbits = vec![BTreeSet::new(); 3];
                orbits[e] = set(&[e]);
                if condition == 2 {
                    orbits[c2] = set(&[c2]);
                    orbits[top] = set(&[top, e]);
                } else {
                    orbits[c2] = set(&[c2, e]);
                    orbits[top] = set(&[top, c2]);
                }
                let bound = 2 * g.order();
                BHFamily::from_orbits(g, bound, orbits)
            }
            3 => {
                let g = FiniteGroup::fixture("S3")?;
                let lat = g.lattice();
                let e = ids(&g, 1)[0];
                let twos = ids(&g, 2);
                let orbits = (0..lat.len()).map(|h| if h == twos[0] { set(&[h, e]) } else { set(&[h]) }).collect();
                let bound = 2 * g.order();
                BHFamily::from_orbits(g, bound, orbits)
            }
            c => Err(Error::InvalidIndexing(format!("no counterexample for condition {c}"))),
        }
    }
}

/// Every relabeling of `u`, without repeats.
pub fn all_labelings(u: &GSet) -> Vec<GSet> {
    let mut seen = HashSet::new();
    (0..u.size()).permutations(u.size()).map(|p| u.relabel(&p)).filter(|v| seen.insert(key(v))).collect()
}

impl IndexingSystem {
    /// The family with `I(H)` generated by the orbits `H/K` for admitted
    /// `(K, H)`, checked up to `2·|G|` points.
    pub fn to_blumberg_hill(&self) -> BHFamily {
        let n = self.group.lattice().len();
        let orbits = (0..n).map(|h| (0..n).filter(|&k| self.admits(k, h)).collect()).collect();
        BHFamily::from_orbits(self.group.clone(), 2 * self.group.order(), orbits).expect("admitted pairs are inclusions")
    }

    /// Validates the family and reads off `(K, H)` with `H/K ∈ I(H)`.
    pub fn from_blumberg_hill(f: &BHFamily) -> Result<IndexingSystem> {
        f.validate()?;
        let n = f.group.lattice().len();
        let pairs: BTreeSet<(usize, usize)> = (0..n).flat_map(|h| f.orbit_content(h).into_iter().map(move |k| (k, h))).collect();
        let sys = generate_closure(&f.group, pairs.iter().copied());
        if sys.pairs() != &pairs {
            return Err(Error::InvalidIndexing("orbit content is not closed".into()));
        }
        Ok(sys)
    }
}
