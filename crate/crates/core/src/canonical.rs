//! Canonical forms for (colored) G-sets and for maps `U → V`.
//!
//! Each orbit is encoded from every candidate basepoint by numbering points in
//! the order `g·b` first reaches them (`g` in index order), recording colors and
//! the relabeled action table; the least encoding wins and orbits are sorted.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::gset::{GMap, GSet};

/// A canonical key and the relabeling `perm[old] = new` realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub key: Vec<usize>,
    pub perm: Vec<usize>,
}

impl Canonical {
    pub fn hash64(&self) -> u64 {
        hash_key(&self.key)
    }
}

pub fn hash_key(key: &[usize]) -> u64 {
    let mut h = DefaultHasher::new();
    key.hash(&mut h);
    h.finish()
}

/// Points of the orbit of `b` in first-reach order.
fn reach_order(x: &GSet, b: usize) -> Vec<usize> {
    let mut seen = vec![false; x.size()];
    let mut order = Vec::new();
    for g in x.group().elements() {
        let p = x.act(g, b);
        if !std::mem::replace(&mut seen[p], true) {
            order.push(p);
        }
    }
    order
}

/// Encoding of one orbit read from basepoint `b`, and the points in label order.
fn encode_orbit(x: &GSet, b: usize, colors: &[usize], label: &mut [usize]) -> (Vec<usize>, Vec<usize>) {
    let pts = reach_order(x, b);
    for (i, &p) in pts.iter().enumerate() {
        label[p] = i;
    }
    let mut enc = Vec::with_capacity(1 + pts.len() * (1 + x.group().order()));
    enc.push(pts.len());
    enc.extend(pts.iter().map(|&p| colors[p]));
    for g in x.group().elements() {
        enc.extend(pts.iter().map(|&p| label[x.act(g, p)]));
    }
    (enc, pts)
}

/// Least encoding of the orbit `points` over all basepoints.
fn best_orbit(x: &GSet, points: &[usize], colors: &[usize], label: &mut [usize]) -> (Vec<usize>, Vec<usize>) {
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for &b in points {
        let cand = encode_orbit(x, b, colors, label);
        if best.as_ref().is_none_or(|cur| cand.0 < cur.0) {
            best = Some(cand);
        }
    }
    best.expect("orbits are nonempty")
}

/// Canonical form of a G-set whose points carry colors. Two colored G-sets get
/// equal keys iff there is a color-preserving equivariant bijection.
pub fn canonical_colored(x: &GSet, colors: &[usize]) -> Canonical {
    assert_eq!(colors.len(), x.size());
    let mut label = vec![0; x.size()];
    let mut encs: Vec<(Vec<usize>, Vec<usize>)> =
        x.orbits().iter().map(|o| best_orbit(x, o, colors, &mut label)).collect();
    encs.sort_by(|a, b| a.0.cmp(&b.0));
    let mut key = vec![encs.len()];
    let mut perm = vec![0; x.size()];
    let mut next = 0;
    for (enc, pts) in encs {
        key.extend(enc);
        for p in pts {
            perm[p] = next;
            next += 1;
        }
    }
    Canonical { key, perm }
}

pub fn canonical_gset(x: &GSet) -> Canonical {
    canonical_colored(x, &vec![0; x.size()])
}

/// Canonical form of `f: U → V` up to isomorphisms of both `U` and `V`
/// commuting with `f`, with optional point colors on either side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalArrow {
    pub key: Vec<usize>,
    pub perm_u: Vec<usize>,
    pub perm_v: Vec<usize>,
}

pub fn canonical_arrow(f: &GMap, u_colors: Option<&[usize]>, v_colors: Option<&[usize]>) -> CanonicalArrow {
    let u = f.source();
    let v = f.target();
    let zeros_u = vec![0; u.size()];
    let zeros_v = vec![0; v.size()];
    let uc = u_colors.unwrap_or(&zeros_u);
    let vc = v_colors.unwrap_or(&zeros_v);
    let mut vlabel = vec![0; v.size()];

    struct Comp {
        enc: Vec<usize>,
        v_pts: Vec<usize>,
        u_pts: Vec<usize>,
    }
    let mut comps: Vec<Comp> = Vec::new();
    for orbit in v.orbits() {
        let u_pts: Vec<usize> = (0..u.size()).filter(|&x| vlabel_contains(&orbit, f.apply(x))).collect();
        let (u_sub, _) = u.sub_gset(&u_pts);
        let mut best: Option<Comp> = None;
        for &b in &orbit {
            let (mut enc, v_pts) = encode_orbit(v, b, vc, &mut vlabel);
            let combined: Vec<usize> =
                u_pts.iter().map(|&x| vlabel[f.apply(x)] + orbit.len() * uc[x]).collect();
            let cu = canonical_colored(&u_sub, &combined);
            enc.extend_from_slice(&cu.key);
            let mut ordered = vec![0; u_pts.len()];
            for (i, &x) in u_pts.iter().enumerate() {
                ordered[cu.perm[i]] = x;
            }
            if best.as_ref().is_none_or(|cur| enc < cur.enc) {
                best = Some(Comp { enc, v_pts, u_pts: ordered });
            }
        }
        comps.push(best.expect("orbits are nonempty"));
    }
    comps.sort_by(|a, b| a.enc.cmp(&b.enc));
    let mut key = vec![comps.len()];
    let mut perm_u = vec![0; u.size()];
    let mut perm_v = vec![0; v.size()];
    let (mut nu, mut nv) = (0, 0);
    for c in comps {
        key.push(c.enc.len());
        key.extend(c.enc);
        for p in c.v_pts {
            perm_v[p] = nv;
            nv += 1;
        }
        for p in c.u_pts {
            perm_u[p] = nu;
            nu += 1;
        }
    }
    CanonicalArrow { key, perm_u, perm_v }
}

fn vlabel_contains(sorted: &[usize], x: usize) -> bool {
    sorted.binary_search(&x).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, GroupRef};
    use crate::gset::equivariant_maps;
    use itertools::Itertools;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(name: &str) -> GroupRef {
        FiniteGroup::fixture(name).unwrap()
    }

    /// Brute-force isomorphism test over all bijections.
    fn isomorphic(a: &GSet, b: &GSet, ca: &[usize], cb: &[usize]) -> bool {
        if a.size() != b.size() {
            return false;
        }
        (0..b.size()).permutations(a.size()).any(|p| {
            (0..a.size()).all(|x| ca[x] == cb[p[x]])
                && a.group().elements().all(|h| (0..a.size()).all(|x| p[a.act(h, x)] == b.act(h, p[x])))
        })
    }

    fn random_relabel(x: &GSet, rng: &mut ChaCha8Rng) -> (GSet, Vec<usize>) {
        let mut perm: Vec<usize> = (0..x.size()).collect();
        perm.shuffle(rng);
        (x.relabel(&perm), perm)
    }

    #[test]
    fn relabelings_share_a_key() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c4 = g("C4");
        let reg = GSet::coset_space(c4.clone(), &c4.trivial_subgroup());
        let (r2, _) = random_relabel(&reg, &mut rng);
        assert_eq!(canonical_gset(&reg).key, canonical_gset(&r2).key);

        let s3 = g("S3");
        let t = s3.lattice().subgroups().iter().find(|s| s.order() == 2).unwrap().clone();
        let x = GSet::coset_space(s3.clone(), &t).coproduct(&GSet::coset_space(s3.clone(), &s3.trivial_subgroup()));
        for _ in 0..5 {
            let (y, _) = random_relabel(&x, &mut rng);
            let c = canonical_gset(&y);
            assert_eq!(c.key, canonical_gset(&x).key);
            assert_eq!(y.relabel(&c.perm), x.relabel(&canonical_gset(&x).perm));
        }
    }

    #[test]
    fn distinct_types_distinct_keys() {
        let c2 = g("C2");
        let free = GSet::coset_space(c2.clone(), &c2.trivial_subgroup());
        let two = GSet::trivial(c2, 2);
        assert_ne!(canonical_gset(&free).hash64(), canonical_gset(&two).hash64());
    }

    #[test]
    fn keys_agree_with_brute_force_iso() {
        for name in ["C2", "C3", "S3", "C2xC2"] {
            let grp = g(name);
            let sets = GSet::all_up_to_iso(&grp, 4);
            for (i, a) in sets.iter().enumerate() {
                for b in &sets[i..] {
                    let za = vec![0; a.size()];
                    let zb = vec![0; b.size()];
                    let same = canonical_gset(a).key == canonical_gset(b).key;
                    assert_eq!(same, isomorphic(a, b, &za, &zb), "{name}");
                }
            }
        }
    }

    #[test]
    fn colored_keys_agree_with_brute_force_iso() {
        let c2 = g("C2");
        let free = GSet::coset_space(c2.clone(), &c2.trivial_subgroup());
        let x = free.coproduct(&GSet::point(c2.clone())).coproduct(&free);
        let colorings: Vec<Vec<usize>> = equivariant_maps(&x, &GSet::trivial(c2.clone(), 2));
        for a in &colorings {
            for b in &colorings {
                let same = canonical_colored(&x, a).key == canonical_colored(&x, b).key;
                assert_eq!(same, isomorphic(&x, &x, a, b));
            }
        }
    }

    #[test]
    fn arrow_form_is_invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c2 = g("C2");
        let free = GSet::coset_space(c2.clone(), &c2.trivial_subgroup());
        let u = free.coproduct(&GSet::point(c2.clone())).coproduct(&free);
        let v = free.coproduct(&GSet::point(c2.clone()));
        for m in equivariant_maps(&u, &v) {
            let f = GMap::new(u.clone(), v.clone(), m.clone()).unwrap();
            let c = canonical_arrow(&f, None, None);
            let (u2, pu) = random_relabel(&u, &mut rng);
            let (v2, pv) = random_relabel(&v, &mut rng);
            let mut m2 = vec![0; u.size()];
            for x in 0..u.size() {
                m2[pu[x]] = pv[m[x]];
            }
            let f2 = GMap::new(u2, v2, m2).unwrap();
            assert_eq!(canonical_arrow(&f2, None, None).key, c.key);
        }
    }
}
