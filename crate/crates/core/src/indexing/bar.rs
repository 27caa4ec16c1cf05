//! The coproduct completion `Ī ⊂ F_G` of an indexing system.

use super::{IndexingSystem, Pair, BASE_CHANGE, COMPOSITION, ISOMORPHISMS};
use crate::gset::{equivariant_maps, pullback, GMap, GSet};
use crate::operad::Violation;

pub const FOLD: &str = "fold";
pub const COPRODUCT: &str = "coproduct";

/// Maps of finite G-sets that send every orbit of the source along an
/// admitted orbit map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarClosure {
    system: IndexingSystem,
}

impl BarClosure {
    pub fn system(&self) -> &IndexingSystem {
        &self.system
    }

    pub fn contains(&self, f: &GMap) -> bool {
        self.system.admits_orbit_map(f)
    }

    /// `Ī` restricted to maps between orbits, as admitted pairs: the pairs
    /// `(K, H)` whose projection `G/K → G/H` lies in `Ī`.
    pub fn recover(&self) -> IndexingSystem {
        let g = self.system.group();
        let lat = g.lattice();
        let n = lat.len();
        let mut pairs: Vec<Pair> = Vec::new();
        for h in 0..n {
            let gh = GSet::coset_space(g.clone(), lat.subgroup(h));
            let h_cosets = g.left_cosets(lat.subgroup(h));
            for k in (0..n).filter(|&k| lat.is_below(k, h)) {
                let gk = GSet::coset_space(g.clone(), lat.subgroup(k));
                let map = g
                    .left_cosets(lat.subgroup(k))
                    .iter()
                    .map(|c| h_cosets.iter().position(|d| d.contains(&c[0])).expect("cosets cover G"))
                    .collect();
                let proj = GMap::new(gk, gh.clone(), map).expect("projection is equivariant");
                if self.contains(&proj) {
                    pairs.push((k, h));
                }
            }
        }
        IndexingSystem::candidate(g.clone(), pairs)
    }

    /// Checks the closure properties over all maps between G-sets with at
    /// most `max_size` points: isomorphisms and fold maps are in, and the
    /// maps in are closed under composition, base change and coproducts.
    pub fn check(&self, max_size: usize) -> Option<Violation> {
        let g = self.system.group();
        let objects = GSet::all_up_to_iso(g, max_size);
        let maps: Vec<Vec<Vec<GMap>>> = objects
            .iter()
            .map(|a| {
                objects
                    .iter()
                    .map(|b| equivariant_maps(a, b).into_iter().map(|m| GMap::new(a.clone(), b.clone(), m).expect("equivariant")).collect())
                    .collect()
            })
            .collect();
        let show = |f: &GMap| format!("{:?} on {} → {} points", f.map(), f.source().size(), f.target().size());
        let all = || maps.iter().flatten().flatten();
        if let Some(f) = all().find(|f| f.is_iso() && !self.contains(f)) {
            return Some(Violation::new(ISOMORPHISMS, show(f)));
        }
        for x in objects.iter().filter(|x| 2 * x.size() <= max_size) {
            let fold = GMap::fold(x);
            if !self.contains(&fold) {
                return Some(Violation::new(FOLD, show(&fold)));
            }
        }
        let n = objects.len();
        for a in 0..n {
            for b in 0..n {
                for f in maps[a][b].iter().filter(|f| self.contains(f)) {
                    for c in 0..n {
                        for g2 in maps[b][c].iter().filter(|g2| self.contains(g2)) {
                            if !self.contains(&f.then(g2).expect("composable")) {
                                return Some(Violation::new(COMPOSITION, format!("{} then {}", show(f), show(g2))));
                            }
                        }
                        for k in &maps[c][b] {
                            let (_, _, p2) = pullback(f, k).expect("common target");
                            if !self.contains(&p2) {
                                return Some(Violation::new(BASE_CHANGE, format!("{} along {}", show(f), show(k))));
                            }
                        }
                    }
                    for f2 in all().filter(|f2| f2.source().size() + f.source().size() <= max_size && self.contains(f2)) {
                        if f2.target().size() + f.target().size() <= max_size && !self.contains(&f.coproduct(f2)) {
                            return Some(Violation::new(COPRODUCT, format!("{} and {}", show(f), show(f2))));
                        }
                    }
                }
            }
        }
        None
    }
}

impl IndexingSystem {
    pub fn to_bar_closure(&self) -> BarClosure {
        BarClosure { system: self.clone() }
    }
}
