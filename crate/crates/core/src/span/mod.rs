//! Span categories over finite G-sets.
//!
//! [`BaseCategory`] is the category of pointed finite G-sets over orbits (or
//! over arbitrary G-sets in the big variant), with objects `[U → V]` kept in
//! canonical form. A morphism `[U → V] → [X → Y]` is a triple `(k, S, m)`:
//! a map `k: Y → V`, a G-stable subset `S ⊆ U ×_V Y` and a map `m: S → X`
//! over `Y`. This triple is the isomorphism class of the corresponding span,
//! so morphism equality is literal equality.

mod burnside;

pub use burnside::{burnside_hom_set, BurnsideSpan};

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_arrow, canonical_colored, hash_key};
use crate::category::FiniteCategory;
use crate::error::{Error, Result};
use crate::group::GroupRef;
use crate::gset::{equivariant_maps, equivariant_maps_over, pullback, GMap, GSet, GSetJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseVariant {
    /// `V` is a single orbit.
    Small,
    /// `V` is any finite G-set.
    Big,
}

/// An object `[f: U → V]`.
#[derive(Clone)]
pub struct ArrowObject {
    u: GSet,
    v: GSet,
    f: Vec<usize>,
    key: Vec<usize>,
    hash: u64,
}

impl fmt::Debug for ArrowObject {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "[{:?} -> {:?} by {:?}]", self.u, self.v, self.f)
    }
}

impl PartialEq for ArrowObject {
    fn eq(&self, other: &Self) -> bool {
        self.hash == other.hash && self.f == other.f && self.u == other.u && self.v == other.v
    }
}
impl Eq for ArrowObject {}
impl Hash for ArrowObject {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.hash.hash(state);
    }
}

/// An isomorphism of arrow objects given by relabelings `perm[old] = new`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowIso {
    pub perm_u: Vec<usize>,
    pub perm_v: Vec<usize>,
}

impl ArrowIso {
    pub fn inverse(&self) -> ArrowIso {
        ArrowIso { perm_u: invert(&self.perm_u), perm_v: invert(&self.perm_v) }
    }
}

pub(crate) fn invert(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowJson {
    pub u: GSetJson,
    pub v: GSetJson,
    pub f: Vec<usize>,
}

impl ArrowObject {
    /// Wraps a map as an object, without relabeling.
    pub fn new(f: &GMap) -> Self {
        let key = canonical_arrow(f, None, None).key;
        let hash = hash_key(&key);
        ArrowObject { u: f.source().clone(), v: f.target().clone(), f: f.map().to_vec(), key, hash }
    }

    /// The canonical representative of the isomorphism class of `f`, and an
    /// isomorphism from `f` to it.
    pub fn canonical(f: &GMap) -> (ArrowObject, ArrowIso) {
        let c = canonical_arrow(f, None, None);
        let u = f.source().relabel(&c.perm_u);
        let v = f.target().relabel(&c.perm_v);
        let mut fm = vec![0; u.size()];
        for (x, &y) in f.map().iter().enumerate() {
            fm[c.perm_u[x]] = c.perm_v[y];
        }
        let hash = hash_key(&c.key);
        (ArrowObject { u, v, f: fm, key: c.key, hash }, ArrowIso { perm_u: c.perm_u, perm_v: c.perm_v })
    }

    pub fn from_json(j: &ArrowJson, group: GroupRef) -> Result<Self> {
        let u = GSet::from_json(&j.u, group.clone())?;
        let v = GSet::from_json(&j.v, group)?;
        Ok(Self::new(&GMap::new(u, v, j.f.clone())?))
    }

    pub fn to_json(&self) -> ArrowJson {
        ArrowJson { u: self.u.to_json(), v: self.v.to_json(), f: self.f.clone() }
    }

    pub fn u(&self) -> &GSet {
        &self.u
    }
    pub fn v(&self) -> &GSet {
        &self.v
    }
    pub fn f(&self) -> &[usize] {
        &self.f
    }
    pub fn map(&self) -> GMap {
        GMap::from_parts(self.u.clone(), self.v.clone(), self.f.clone())
    }
    pub fn group(&self) -> &GroupRef {
        self.u.group()
    }
    /// Isomorphism-invariant key.
    pub fn key(&self) -> &[usize] {
        &self.key
    }
    pub fn key_hash(&self) -> u64 {
        self.hash
    }
    pub fn is_canonical(&self) -> bool {
        ArrowObject::canonical(&self.map()).0 == *self
    }
    pub fn is_orbit_based(&self) -> bool {
        self.v.is_transitive()
    }
    /// The orbits of `U`, by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        self.u.orbits()
    }
}

/// Inert/active classification of a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorphismClass {
    pub inert: bool,
    pub active: bool,
    pub fiberwise: bool,
}

/// A morphism `(k, S, m): [U → V] → [X → Y]`.
#[derive(Clone)]
pub struct SpanMorphism {
    source: Arc<ArrowObject>,
    target: Arc<ArrowObject>,
    k: Vec<usize>,
    apex: Vec<(usize, usize)>,
    m: Vec<usize>,
}

impl fmt::Debug for SpanMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Span(k={:?}, S={:?}, m={:?})", self.k, self.apex, self.m)
    }
}

impl PartialEq for SpanMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.apex == other.apex
            && self.m == other.m
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}
impl Eq for SpanMorphism {}
impl Hash for SpanMorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.source.hash.hash(state);
        self.target.hash.hash(state);
        self.k.hash(state);
        self.apex.hash(state);
        self.m.hash(state);
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpanLegs {
    /// `Y → V`.
    pub base: Vec<usize>,
    /// Apex points as `(u, y)` pairs.
    pub back: Vec<(usize, usize)>,
    /// `Z → X`.
    pub fwd: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpanJson {
    pub source: ArrowJson,
    pub target: ArrowJson,
    pub z: GSetJson,
    pub legs: SpanLegs,
}

impl SpanMorphism {
    /// Validates the data: `k` equivariant, `S` a G-stable subset of the
    /// pullback, `m` equivariant and over `Y`.
    pub fn new(
        source: Arc<ArrowObject>,
        target: Arc<ArrowObject>,
        k: Vec<usize>,
        apex: Vec<(usize, usize)>,
        m: Vec<usize>,
    ) -> Result<Self> {
        let (a, b) = (&source, &target);
        GMap::new(b.v.clone(), a.v.clone(), k.clone()).map_err(|e| Error::Mismatch(format!("base map: {e}")))?;
        if m.len() != apex.len() {
            return Err(Error::Mismatch("apex and forward map differ in size".into()));
        }
        let mut sorted = apex.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != apex.len() {
            return Err(Error::Mismatch("repeated apex point".into()));
        }
        let pos: HashMap<(usize, usize), usize> = apex.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let grp = a.group().clone();
        for (i, &(u, y)) in apex.iter().enumerate() {
            if u >= a.u.size() || y >= b.v.size() || a.f[u] != k[y] {
                return Err(Error::Mismatch(format!("apex point {i} is not in the pullback")));
            }
            if m[i] >= b.u.size() || b.f[m[i]] != y {
                return Err(Error::Mismatch(format!("forward map is not over the base at {i}")));
            }
            for g in grp.elements() {
                match pos.get(&(a.u.act(g, u), b.v.act(g, y))) {
                    Some(&j) if m[j] == b.u.act(g, m[i]) => {}
                    Some(_) => return Err(Error::NotEquivariant("forward map".into())),
                    None => return Err(Error::Mismatch("apex is not G-stable".into())),
                }
            }
        }
        Ok(Self::normalized(source, target, k, apex, m))
    }

    /// Sorts the apex; no validation.
    pub(crate) fn normalized(
        source: Arc<ArrowObject>,
        target: Arc<ArrowObject>,
        k: Vec<usize>,
        apex: Vec<(usize, usize)>,
        m: Vec<usize>,
    ) -> Self {
        let mut pairs: Vec<((usize, usize), usize)> = apex.into_iter().zip(m).collect();
        pairs.sort_unstable();
        let (apex, m) = pairs.into_iter().unzip();
        SpanMorphism { source, target, k, apex, m }
    }

    pub fn identity(a: &Arc<ArrowObject>) -> Self {
        let apex = (0..a.u.size()).map(|u| (u, a.f[u])).collect();
        SpanMorphism { source: a.clone(), target: a.clone(), k: (0..a.v.size()).collect(), apex, m: (0..a.u.size()).collect() }
    }

    pub fn source(&self) -> &Arc<ArrowObject> {
        &self.source
    }
    pub fn target(&self) -> &Arc<ArrowObject> {
        &self.target
    }
    /// `k: Y → V`.
    pub fn base_map(&self) -> &[usize] {
        &self.k
    }
    pub fn apex(&self) -> &[(usize, usize)] {
        &self.apex
    }
    /// `m: S → X`, indexed like `apex`.
    pub fn forward(&self) -> &[usize] {
        &self.m
    }

    /// Number of points of `U ×_V Y`.
    pub fn pullback_size(&self) -> usize {
        let a = &self.source;
        let mut over = vec![0usize; a.v.size()];
        for &x in &a.f {
            over[x] += 1;
        }
        self.k.iter().map(|&v| over[v]).sum()
    }

    pub fn is_inert(&self) -> bool {
        self.apex.len() == self.target.u.size() && {
            let mut hit = vec![false; self.target.u.size()];
            self.m.iter().all(|&x| !std::mem::replace(&mut hit[x], true))
        }
    }

    pub fn is_active(&self) -> bool {
        self.apex.len() == self.pullback_size()
    }

    /// The base component is an identity.
    pub fn is_fiberwise(&self) -> bool {
        self.source.v == self.target.v && self.k.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// The base map `k` is a bijection.
    pub fn base_is_iso(&self) -> bool {
        self.k.len() == self.source.v.size() && self.k.iter().all_unique()
    }

    pub fn class(&self) -> MorphismClass {
        MorphismClass { inert: self.is_inert(), active: self.is_active(), fiberwise: self.is_fiberwise() }
    }

    pub fn is_identity(&self) -> bool {
        *self == SpanMorphism::identity(&self.source)
    }

    /// The apex as a G-set, with its legs to `U` and to `X`.
    pub fn apex_gset(&self) -> (GSet, GMap, GMap) {
        let a = &self.source;
        let b = &self.target;
        let pos: HashMap<(usize, usize), usize> = self.apex.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let grp = a.group().clone();
        let mut action = Vec::with_capacity(self.apex.len() * grp.order());
        for g in grp.elements() {
            for &(u, y) in &self.apex {
                action.push(pos[&(a.u.act(g, u), b.v.act(g, y))]);
            }
        }
        let s = GSet::from_flat(grp, self.apex.len(), action);
        let back = GMap::from_parts(s.clone(), a.u.clone(), self.apex.iter().map(|p| p.0).collect());
        let fwd = GMap::from_parts(s.clone(), b.u.clone(), self.m.clone());
        (s, back, fwd)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SpanMorphism) -> Result<SpanMorphism> {
        if !(Arc::ptr_eq(&self.target, &other.source) || self.target == other.source) {
            return Err(Error::Mismatch("composite of spans with different middle objects".into()));
        }
        Ok(self.then_unchecked(other))
    }

    pub(crate) fn then_unchecked(&self, other: &SpanMorphism) -> SpanMorphism {
        let c = &other.target;
        let pos1: HashMap<(usize, usize), usize> = self.apex.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let pos2: HashMap<(usize, usize), usize> = other.apex.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let k: Vec<usize> = other.k.iter().map(|&y| self.k[y]).collect();
        let mut apex = Vec::new();
        let mut m = Vec::new();
        for t in 0..c.v.size() {
            let y = other.k[t];
            for u in 0..self.source.u.size() {
                if self.source.f[u] != k[t] {
                    continue;
                }
                if let Some(&i1) = pos1.get(&(u, y)) {
                    if let Some(&i2) = pos2.get(&(self.m[i1], t)) {
                        apex.push((u, t));
                        m.push(other.m[i2]);
                    }
                }
            }
        }
        SpanMorphism::normalized(self.source.clone(), other.target.clone(), k, apex, m)
    }

    /// `τ ∘ self ∘ σ⁻¹` for isos `σ: source → new_source`, `τ: target → new_target`.
    pub fn transport(
        &self,
        sigma: &ArrowIso,
        new_source: Arc<ArrowObject>,
        tau: &ArrowIso,
        new_target: Arc<ArrowObject>,
    ) -> SpanMorphism {
        let tau_v_inv = invert(&tau.perm_v);
        let k = tau_v_inv.iter().map(|&y| sigma.perm_v[self.k[y]]).collect();
        let apex = self.apex.iter().map(|&(u, y)| (sigma.perm_u[u], tau.perm_v[y])).collect();
        let m = self.m.iter().map(|&x| tau.perm_u[x]).collect();
        SpanMorphism::normalized(new_source, new_target, k, apex, m)
    }

    /// The inert–active factorization, through a canonical middle object.
    pub fn factorize(&self) -> (SpanMorphism, SpanMorphism) {
        let (s, _, _) = self.apex_gset();
        let y = self.target.v.clone();
        let ys: Vec<usize> = self.apex.iter().map(|p| p.1).collect();
        let c0 = Arc::new(ArrowObject::new(&GMap::from_parts(s, y, ys)));
        let inert0 = SpanMorphism::normalized(
            self.source.clone(),
            c0.clone(),
            self.k.clone(),
            self.apex.clone(),
            (0..self.apex.len()).collect(),
        );
        let active0 = SpanMorphism::normalized(
            c0.clone(),
            self.target.clone(),
            (0..self.target.v.size()).collect(),
            self.apex.iter().enumerate().map(|(i, p)| (i, p.1)).collect(),
            self.m.clone(),
        );
        let (c, sigma) = ArrowObject::canonical(&c0.map());
        let c = Arc::new(c);
        let id_src = identity_iso(&self.source);
        let id_tgt = identity_iso(&self.target);
        (
            inert0.transport(&id_src, self.source.clone(), &sigma, c.clone()),
            active0.transport(&sigma, c, &id_tgt, self.target.clone()),
        )
    }

    /// Factorization whose active part has identity base map. The middle object
    /// is the canonical form of `[S → Y]` relabeled by an isomorphism over `Y`;
    /// `None` if the canonical form is not reachable by such an isomorphism.
    pub fn factorize_fiberwise(&self) -> Option<(SpanMorphism, SpanMorphism)> {
        let (inert, active) = self.factorize();
        if active.is_fiberwise() {
            return Some((inert, active));
        }
        let c = active.source.clone();
        if c.v != self.target.v {
            return None;
        }
        // Find an iso [S → Y] ≅ c over the identity of Y.
        let (s, _, _) = self.apex_gset();
        let ys: Vec<usize> = self.apex.iter().map(|p| p.1).collect();
        let cs = canonical_colored(&s, &ys);
        let cc = canonical_colored(&c.u, &c.f);
        if cs.key != cc.key {
            return None;
        }
        let cc_inv = invert(&cc.perm);
        let perm_u: Vec<usize> = cs.perm.iter().map(|&i| cc_inv[i]).collect();
        let sigma = ArrowIso { perm_u, perm_v: (0..c.v.size()).collect() };
        let inert0 = SpanMorphism::normalized(
            self.source.clone(),
            c.clone(),
            self.k.clone(),
            self.apex.iter().map(|&(u, y)| (u, y)).collect(),
            (0..self.apex.len()).map(|i| sigma.perm_u[i]).collect(),
        );
        let active0 = SpanMorphism::normalized(
            c.clone(),
            self.target.clone(),
            (0..c.v.size()).collect(),
            (0..self.apex.len()).map(|i| (sigma.perm_u[i], self.apex[i].1)).collect(),
            self.m.clone(),
        );
        Some((inert0, active0))
    }

    pub fn to_json(&self) -> SpanJson {
        let (z, _, _) = self.apex_gset();
        SpanJson {
            source: self.source.to_json(),
            target: self.target.to_json(),
            z: z.to_json(),
            legs: SpanLegs { base: self.k.clone(), back: self.apex.clone(), fwd: self.m.clone() },
        }
    }

    pub fn from_json(j: &SpanJson, group: GroupRef) -> Result<Self> {
        let s = Arc::new(ArrowObject::from_json(&j.source, group.clone())?);
        let t = Arc::new(ArrowObject::from_json(&j.target, group)?);
        if j.z.size != j.legs.back.len() {
            return Err(Error::Mismatch("apex size disagrees with its legs".into()));
        }
        SpanMorphism::new(s, t, j.legs.base.clone(), j.legs.back.clone(), j.legs.fwd.clone())
    }
}

fn identity_iso(a: &ArrowObject) -> ArrowIso {
    ArrowIso { perm_u: (0..a.u.size()).collect(), perm_v: (0..a.v.size()).collect() }
}

/// All morphisms `a → b`, in a fixed order.
pub fn hom_set(a: &Arc<ArrowObject>, b: &Arc<ArrowObject>) -> Vec<SpanMorphism> {
    let mut out = Vec::new();
    for k in equivariant_maps(&b.v, &a.v) {
        let kmap = GMap::from_parts(b.v.clone(), a.v.clone(), k.clone());
        let (p, p_u, p_y) = pullback(&a.map(), &kmap).expect("common target");
        let orbits = p.orbits();
        for mask in 0u64..(1u64 << orbits.len()) {
            let pts: Vec<usize> =
                orbits.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).flat_map(|(_, o)| o.clone()).sorted().collect();
            let (s, _) = p.sub_gset(&pts);
            let ys: Vec<usize> = pts.iter().map(|&q| p_y.apply(q)).collect();
            let apex: Vec<(usize, usize)> = pts.iter().map(|&q| (p_u.apply(q), p_y.apply(q))).collect();
            for m in equivariant_maps_over(&s, &b.u, |i, x| b.f[x] == ys[i]) {
                out.push(SpanMorphism::normalized(a.clone(), b.clone(), k.clone(), apex.clone(), m));
            }
        }
    }
    out
}

/// The inert morphism from `a` onto the summand `W` (an orbit of `U`), landing
/// in the canonical object `[W = W]`.
pub fn characteristic_morphism(a: &Arc<ArrowObject>, w: &[usize]) -> Result<SpanMorphism> {
    let mut pts = w.to_vec();
    pts.sort_unstable();
    if pts.is_empty() || !a.u.orbits().contains(&pts) {
        return Err(Error::NotAnOrbit(format!("{w:?} is not an orbit of U")));
    }
    let (wset, _) = a.u.sub_gset(&pts);
    let (c, iso) = ArrowObject::canonical(&GMap::identity(&wset));
    // ι: c → W ⊆ U
    let inv = invert(&iso.perm_u);
    let iota: Vec<usize> = inv.iter().map(|&i| pts[i]).collect();
    let k: Vec<usize> = invert(&iso.perm_v).iter().map(|&i| a.f[pts[i]]).collect();
    let apex: Vec<(usize, usize)> = (0..iota.len()).map(|wc| (iota[wc], wc)).collect();
    let m: Vec<usize> = (0..iota.len()).collect();
    Ok(SpanMorphism::normalized(a.clone(), Arc::new(c), k, apex, m))
}

/// The image of a map `α: U → X` of G-sets over `V`, as an active morphism
/// `[U → V] → [X → V]`. Endpoints are the given arrows, not canonicalized.
pub fn pointing(alpha: &GMap, x_over: &GMap) -> Result<SpanMorphism> {
    if alpha.target() != x_over.source() {
        return Err(Error::Mismatch("α does not land in the domain of the structure map".into()));
    }
    let u_over = alpha.then(x_over)?;
    let a = Arc::new(ArrowObject::new(&u_over));
    let b = Arc::new(ArrowObject::new(x_over));
    let v = x_over.target().size();
    let apex = (0..alpha.source().size()).map(|u| (u, u_over.apply(u))).collect();
    Ok(SpanMorphism::normalized(a, b, (0..v).collect(), apex, alpha.map().to_vec()))
}

/// Transport a morphism between arbitrary objects to canonical endpoints.
pub fn canonicalize(m: &SpanMorphism) -> SpanMorphism {
    let (s, sigma) = ArrowObject::canonical(&m.source.map());
    let (t, tau) = ArrowObject::canonical(&m.target.map());
    m.transport(&sigma, Arc::new(s), &tau, Arc::new(t))
}

/// Bounded skeleton of pointed finite G-sets: canonical objects `[U → V]` with
/// `|U| ≤ max_size` (and `|V| ≤ max_size` in the big variant), with every hom-set
/// enumerated up front.
pub struct BaseCategory {
    group: GroupRef,
    variant: BaseVariant,
    max_size: usize,
    objects: Vec<Arc<ArrowObject>>,
    index: HashMap<Vec<usize>, usize>,
    homs: Vec<Vec<Arc<Vec<SpanMorphism>>>>,
    hom_index: Vec<Vec<HashMap<SpanMorphism, usize>>>,
    comp: Vec<OnceLock<Vec<u32>>>,
}

impl fmt::Debug for BaseCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseCategory({}, {:?}, |U| ≤ {}, {} objects)", self.group.name(), self.variant, self.max_size, self.objects.len())
    }
}

impl BaseCategory {
    /// Objects with `|U| ≤ max_size` (and `|V| ≤ max_size` in the big variant).
    pub fn new(group: GroupRef, variant: BaseVariant, max_size: usize) -> Self {
        let objects = enumerate_objects(&group, variant, max_size, |_, _| true);
        Self::with_objects(group, variant, max_size, objects)
    }

    /// Small-base objects whose fibers have at most `arity` points, i.e.
    /// `|U| ≤ arity · |V|`. The recorded size bound is the largest `|U|`.
    pub fn with_arity(group: GroupRef, arity: usize) -> Self {
        let max_size = arity * group.order();
        let objects = enumerate_objects(&group, BaseVariant::Small, max_size, |u, v| u <= arity * v);
        let max_u = objects.iter().map(|o| o.u.size()).max().unwrap_or(0);
        Self::with_objects(group, BaseVariant::Small, max_u, objects)
    }

    /// A base restricted to the given canonical objects (a full subcategory).
    pub fn with_objects(group: GroupRef, variant: BaseVariant, max_size: usize, objects: Vec<Arc<ArrowObject>>) -> Self {
        let index = objects.iter().enumerate().map(|(i, o)| (o.key.clone(), i)).collect();
        let homs: Vec<Vec<Arc<Vec<SpanMorphism>>>> = objects
            .par_iter()
            .map(|a| objects.iter().map(|b| Arc::new(hom_set(a, b))).collect())
            .collect();
        let hom_index = homs
            .iter()
            .map(|row| row.iter().map(|h| h.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()).collect())
            .collect();
        let n = objects.len();
        let comp = (0..n * n * n).map(|_| OnceLock::new()).collect();
        BaseCategory { group, variant, max_size, objects, index, homs, hom_index, comp }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }
    pub fn variant(&self) -> BaseVariant {
        self.variant
    }
    pub fn max_size(&self) -> usize {
        self.max_size
    }
    pub fn objects(&self) -> &[Arc<ArrowObject>] {
        &self.objects
    }
    pub fn object(&self, i: usize) -> &Arc<ArrowObject> {
        &self.objects[i]
    }
    pub fn len(&self) -> usize {
        self.objects.len()
    }
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
    /// Index of a canonical object (looked up by its key).
    pub fn find(&self, a: &ArrowObject) -> Option<usize> {
        self.index.get(&a.key).copied()
    }
    pub fn hom(&self, a: usize, b: usize) -> &Arc<Vec<SpanMorphism>> {
        &self.homs[a][b]
    }
    /// Position of `m` in its hom-set.
    pub fn position(&self, a: usize, b: usize, m: &SpanMorphism) -> Option<usize> {
        self.hom_index[a][b].get(m).copied()
    }
    /// Position in `hom(a, c)` of `hom(b, c)[j] ∘ hom(a, b)[i]`. Tables are
    /// built per triple on first use.
    pub fn compose(&self, a: usize, b: usize, c: usize, i: usize, j: usize) -> usize {
        let n = self.objects.len();
        let table = self.comp[(a * n + b) * n + c].get_or_init(|| {
            let first = &self.homs[a][b];
            let second = &self.homs[b][c];
            let mut t = Vec::with_capacity(first.len() * second.len());
            for f in first.iter() {
                for g in second.iter() {
                    let h = f.then_unchecked(g);
                    t.push(self.hom_index[a][c][&h] as u32);
                }
            }
            t
        });
        table[i * self.homs[b][c].len() + j] as usize
    }

    /// Position of the identity of `a` in `hom(a, a)`.
    pub fn identity_position(&self, a: usize) -> usize {
        self.hom_index[a][a][&self.identity(a)]
    }

    pub fn identity(&self, a: usize) -> SpanMorphism {
        SpanMorphism::identity(&self.objects[a])
    }
    /// Index of the object of `m`'s source, target.
    pub fn endpoints(&self, m: &SpanMorphism) -> Option<(usize, usize)> {
        Some((self.find(&m.source)?, self.find(&m.target)?))
    }

    /// Objects lying over the canonical orbit `V` (same `V` data).
    pub fn fiber_objects(&self, v: &GSet) -> Vec<usize> {
        (0..self.objects.len()).filter(|&i| &self.objects[i].v == v).collect()
    }

    /// Objects of the form `[W = W]` for an orbit `W`.
    pub fn orbit_objects(&self) -> Vec<usize> {
        (0..self.objects.len())
            .filter(|&i| {
                let o = &self.objects[i];
                o.u.is_transitive() && o.u == o.v && o.f.iter().enumerate().all(|(x, &y)| x == y)
            })
            .collect()
    }

    /// Total number of morphisms.
    pub fn morphism_count(&self) -> usize {
        self.homs.iter().flatten().map(|h| h.len()).sum()
    }

    /// Every morphism with endpoint indices, in `(source, target, position)` order.
    pub fn all_morphisms(&self) -> Vec<(usize, usize, &SpanMorphism)> {
        let mut out = Vec::new();
        for a in 0..self.objects.len() {
            for b in 0..self.objects.len() {
                for m in self.homs[a][b].iter() {
                    out.push((a, b, m));
                }
            }
        }
        out
    }

    /// DOT rendering of the hom-graph: one edge per morphism labeled by class.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph base {\n");
        for (i, o) in self.objects.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"|U|={} |V|={}\"];\n", o.u.size(), o.v.size()));
        }
        for (a, b, m) in self.all_morphisms() {
            let label = match (m.is_inert(), m.is_active()) {
                (true, true) => "inert+active",
                (true, false) => "inert",
                (false, true) => "active",
                (false, false) => "mixed",
            };
            s.push_str(&format!("  n{a} -> n{b} [label=\"{label}\"];\n"));
        }
        s.push_str("}\n");
        s
    }

    /// The full subcategory on `[W = W]` objects whose morphisms are the
    /// inert+active ones, i.e. the orbit category presented inside the base.
    // The group's lazily built lattice is the only interior mutability and is not hashed.
    #[allow(clippy::mutable_key_type)]
    pub fn orbit_category(&self) -> FiniteCategory {
        let obs = self.orbit_objects();
        let mut cat = FiniteCategory::builder(obs.len());
        let mut ids = HashMap::new();
        for (i, &a) in obs.iter().enumerate() {
            for (j, &b) in obs.iter().enumerate() {
                for m in self.homs[a][b].iter().filter(|m| m.is_inert() && m.is_active()) {
                    let id = cat.add_morphism(i, j);
                    ids.insert(m.clone(), id);
                }
            }
        }
        for (i, &a) in obs.iter().enumerate() {
            cat.set_identity(i, ids[&self.identity(a)]);
        }
        let entries: Vec<(SpanMorphism, usize)> = ids.iter().map(|(m, &i)| (m.clone(), i)).collect();
        for (f, fi) in &entries {
            for (g, gi) in &entries {
                if f.target == g.source {
                    cat.set_composite(*fi, *gi, ids[&f.then_unchecked(g)]);
                }
            }
        }
        cat.build().expect("orbit hom-sets compose")
    }
}

fn enumerate_objects(
    group: &GroupRef,
    variant: BaseVariant,
    max_size: usize,
    keep: impl Fn(usize, usize) -> bool,
) -> Vec<Arc<ArrowObject>> {
    let lat = group.lattice();
    let bases: Vec<GSet> = match variant {
        BaseVariant::Small => (0..lat.num_classes())
            .map(|c| {
                let o = GSet::orbit_of_class(group, c);
                ArrowObject::canonical(&GMap::identity(&o)).0.v.clone()
            })
            .collect(),
        BaseVariant::Big => GSet::all_up_to_iso(group, max_size),
    };
    let sources = GSet::all_up_to_iso(group, max_size);
    let mut found: HashMap<Vec<usize>, Arc<ArrowObject>> = HashMap::new();
    for v in &bases {
        for u in sources.iter().filter(|u| keep(u.size(), v.size())) {
            for f in equivariant_maps(u, v) {
                let (c, _) = ArrowObject::canonical(&GMap::from_parts(u.clone(), v.clone(), f));
                found.entry(c.key.clone()).or_insert_with(|| Arc::new(c));
            }
        }
    }
    let mut out: Vec<Arc<ArrowObject>> = found.into_values().collect();
    out.sort_by(|a, b| (a.v.size(), a.u.size(), &a.key).cmp(&(b.v.size(), b.u.size(), &b.key)));
    out
}

/// For every canonical orbit `V`, object `[U → V]` within the bound and
/// automorphism `k` of `V`, the pullback of the object along `k` is isomorphic
/// to it over the identity of `V`. Returns the failures.
pub fn verify_weyl_lifting(base: &BaseCategory) -> Vec<(usize, Vec<usize>)> {
    let mut failures = Vec::new();
    for (i, a) in base.objects.iter().enumerate() {
        if !a.v.is_transitive() {
            continue;
        }
        for k in equivariant_maps(&a.v, &a.v) {
            let kmap = GMap::from_parts(a.v.clone(), a.v.clone(), k.clone());
            let (p, _, p_v) = pullback(&a.map(), &kmap).expect("common target");
            let pulled = canonical_colored(&p, p_v.map());
            let own = canonical_colored(&a.u, &a.f);
            if pulled.key != own.key {
                failures.push((i, k));
            }
        }
    }
    failures
}

/// Number of pointed equivariant maps `U_+ → X_+` over the orbit `V`, counted
/// directly as partial maps `U ⇀ X` over `V` with G-stable domain.
pub fn pointed_map_count(u: &GMap, x: &GMap) -> usize {
    let su = u.source();
    let orbits = su.orbits();
    let mut total = 0;
    for mask in 0u64..(1u64 << orbits.len()) {
        let pts: Vec<usize> =
            orbits.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).flat_map(|(_, o)| o.clone()).sorted().collect();
        let (s, inc) = su.sub_gset(&pts);
        let over: Vec<usize> = (0..s.size()).map(|i| u.apply(inc.apply(i))).collect();
        total += equivariant_maps_over(&s, x.source(), |i, t| x.apply(t) == over[i]).len();
    }
    total
}
