//! Discrete T-operads: finite categories lying over a bounded base of pointed
//! finite G-sets, with a flag on each inert edge.
//!
//! A morphism is identified by its endpoints, its base morphism (a position in
//! the base hom-set) and an opaque payload. Composition is either a stored
//! table or a [`PayloadLaw`] computing the composite payload on demand.

pub mod check;
pub mod construct;
pub mod envelope;
pub mod json;
pub mod mul;
pub mod tcat;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::span::{BaseCategory, SpanMorphism};

pub use check::{check_cocartesian_criterion, check_operad_axioms, check_operad_axioms_with, AxiomReport, CheckOptions, Violation};
pub use construct::{com_operad_from, e0_operad, full_com, triv_inert, triv_operad, wide_sub_of_base};
pub use envelope::{envelope, EnvTargets};
pub use json::OperadJson;
pub use mul::{base_change_mul, is_operad_morphism, is_unital, mul_set, mul_set_for_map, MulSet, OperadFunctor};
pub use tcat::TCategory;

pub type Payload = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperadObject {
    /// Index of the base object.
    pub base: usize,
    #[serde(default)]
    pub label: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperadMorphism {
    pub src: usize,
    pub dst: usize,
    /// Position in the base hom-set between the endpoints' base objects.
    pub base: usize,
    pub inert: bool,
    #[serde(default)]
    pub payload: Payload,
}

/// Computes the payload of `g ∘ f` (`f` first). Returning `None` means the
/// composite is undefined, which the checker reports as non-functorial.
pub trait PayloadLaw: Send + Sync {
    fn compose(&self, op: &DiscreteTOperad, f: usize, g: usize) -> Option<Payload>;
}

/// Composite payloads are empty: at most one morphism over each base morphism.
pub struct ThinLaw;

impl PayloadLaw for ThinLaw {
    fn compose(&self, _: &DiscreteTOperad, _: usize, _: usize) -> Option<Payload> {
        Some(Vec::new())
    }
}

#[derive(Clone)]
pub enum Composition {
    /// `(f, g) ↦ g ∘ f` for every composable pair that has a composite.
    Table(Arc<HashMap<(usize, usize), usize>>),
    Law(Arc<dyn PayloadLaw>),
}

#[derive(Clone)]
pub struct DiscreteTOperad {
    name: String,
    base: Arc<BaseCategory>,
    objects: Vec<OperadObject>,
    morphisms: Vec<OperadMorphism>,
    identities: Vec<usize>,
    law: Composition,
    fibers: Vec<Vec<usize>>,
    out: Vec<Vec<usize>>,
    homs: HashMap<(usize, usize), Vec<usize>>,
    lookup: HashMap<(usize, usize, usize, Payload), usize>,
}

impl fmt::Debug for DiscreteTOperad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiscreteTOperad({}, {} objects, {} morphisms)", self.name, self.objects.len(), self.morphisms.len())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OperadSummary {
    pub name: String,
    pub group: String,
    pub max_size: usize,
    pub objects: usize,
    pub morphisms: usize,
    pub flagged: usize,
}

impl DiscreteTOperad {
    /// Validates indices, the uniqueness of `(src, dst, base, payload)` and the
    /// identities. Composition is not examined here.
    pub fn new(
        name: impl Into<String>,
        base: Arc<BaseCategory>,
        objects: Vec<OperadObject>,
        morphisms: Vec<OperadMorphism>,
        identities: Vec<usize>,
        law: Composition,
    ) -> Result<Self> {
        let mut fibers = vec![Vec::new(); base.len()];
        for (i, o) in objects.iter().enumerate() {
            if o.base >= base.len() {
                return Err(Error::Malformed(format!("object {i} lies over missing base object {}", o.base)));
            }
            fibers[o.base].push(i);
        }
        let mut out = vec![Vec::new(); objects.len()];
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut lookup = HashMap::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            if m.src >= objects.len() || m.dst >= objects.len() {
                return Err(Error::Malformed(format!("morphism {i} has an endpoint out of range")));
            }
            let (a, b) = (objects[m.src].base, objects[m.dst].base);
            if m.base >= base.hom(a, b).len() {
                return Err(Error::Malformed(format!("morphism {i} has no base morphism at position {}", m.base)));
            }
            if lookup.insert((m.src, m.dst, m.base, m.payload.clone()), i).is_some() {
                return Err(Error::Malformed(format!("morphism {i} repeats an earlier one")));
            }
            out[m.src].push(i);
            homs.entry((m.src, m.dst)).or_default().push(i);
        }
        if identities.len() != objects.len() {
            return Err(Error::Malformed("one identity per object required".into()));
        }
        for (x, &i) in identities.iter().enumerate() {
            let m = morphisms.get(i).ok_or_else(|| Error::Malformed(format!("identity of {x} out of range")))?;
            let a = objects[x].base;
            if m.src != x || m.dst != x || m.base != base.identity_position(a) {
                return Err(Error::Malformed(format!("identity of object {x} is not an endomorphism over the identity")));
            }
        }
        Ok(DiscreteTOperad { name: name.into(), base, objects, morphisms, identities, law, fibers, out, homs, lookup })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn base(&self) -> &Arc<BaseCategory> {
        &self.base
    }
    pub fn objects(&self) -> &[OperadObject] {
        &self.objects
    }
    pub fn object(&self, x: usize) -> &OperadObject {
        &self.objects[x]
    }
    pub fn morphisms(&self) -> &[OperadMorphism] {
        &self.morphisms
    }
    pub fn morphism(&self, f: usize) -> &OperadMorphism {
        &self.morphisms[f]
    }
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }
    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }
    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }
    pub fn identities(&self) -> &[usize] {
        &self.identities
    }
    pub fn law(&self) -> &Composition {
        &self.law
    }
    /// Objects over base object `a`.
    pub fn fiber(&self, a: usize) -> &[usize] {
        &self.fibers[a]
    }
    /// Morphisms out of `x`.
    pub fn out(&self, x: usize) -> &[usize] {
        &self.out[x]
    }
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.homs.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }
    /// Morphisms `x → y` over the base morphism at position `pos`.
    pub fn hom_over(&self, x: usize, y: usize, pos: usize) -> impl Iterator<Item = usize> + '_ {
        self.hom(x, y).iter().copied().filter(move |&f| self.morphisms[f].base == pos)
    }
    pub fn find(&self, src: usize, dst: usize, base: usize, payload: &[u32]) -> Option<usize> {
        self.lookup.get(&(src, dst, base, payload.to_vec())).copied()
    }
    /// Base objects of the endpoints of `f`.
    pub fn base_endpoints(&self, f: usize) -> (usize, usize) {
        let m = &self.morphisms[f];
        (self.objects[m.src].base, self.objects[m.dst].base)
    }
    pub fn base_morphism(&self, f: usize) -> &SpanMorphism {
        let (a, b) = self.base_endpoints(f);
        &self.base.hom(a, b)[self.morphisms[f].base]
    }
    pub fn is_flagged(&self, f: usize) -> bool {
        self.morphisms[f].inert
    }

    /// `g ∘ f`, if `f` ends where `g` starts and the composite exists.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        let (mf, mg) = (&self.morphisms[f], &self.morphisms[g]);
        if mf.dst != mg.src {
            return None;
        }
        match &self.law {
            Composition::Table(t) => t.get(&(f, g)).copied(),
            Composition::Law(law) => {
                let a = self.objects[mf.src].base;
                let b = self.objects[mf.dst].base;
                let c = self.objects[mg.dst].base;
                let pos = self.base.compose(a, b, c, mf.base, mg.base);
                let payload = law.compose(self, f, g)?;
                self.lookup.get(&(mf.src, mg.dst, pos, payload)).copied()
            }
        }
    }

    /// The same operad with its composition stored as a table.
    pub fn materialize(&self) -> DiscreteTOperad {
        let table: HashMap<(usize, usize), usize> = (0..self.morphisms.len())
            .into_par_iter()
            .flat_map_iter(|f| {
                let y = self.morphisms[f].dst;
                self.out[y].iter().filter_map(move |&g| self.compose(f, g).map(|h| ((f, g), h)))
            })
            .collect();
        let mut op = self.clone();
        op.law = Composition::Table(Arc::new(table));
        op
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// A copy with the inert flag of `f` cleared.
    pub fn without_flag(&self, f: usize) -> DiscreteTOperad {
        let mut op = self.clone();
        op.morphisms[f].inert = false;
        op.name = format!("{} without flag {f}", self.name);
        op
    }

    /// A copy in which object `x` appears twice: every morphism touching `x`
    /// is repeated for each choice of copy at each end.
    pub fn with_duplicated_object(&self, x: usize) -> DiscreteTOperad {
        let dup = self.objects.len();
        let mut objects = self.objects.clone();
        let mut copy = self.objects[x].clone();
        copy.label.push(u32::MAX);
        objects.push(copy);
        let swap = |o: usize, use_dup: bool| if o == x && use_dup { dup } else { o };
        let mut morphisms = Vec::new();
        let mut origin = Vec::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            for s in [false, true] {
                for t in [false, true] {
                    if (s && m.src != x) || (t && m.dst != x) {
                        continue;
                    }
                    morphisms.push(OperadMorphism { src: swap(m.src, s), dst: swap(m.dst, t), ..m.clone() });
                    origin.push(i);
                }
            }
        }
        let plain: HashMap<usize, usize> = (0..morphisms.len())
            .filter(|&i| {
                let o = &self.morphisms[origin[i]];
                morphisms[i].src == o.src && morphisms[i].dst == o.dst
            })
            .map(|i| (origin[i], i))
            .collect();
        let mut identities: Vec<usize> = self.identities.iter().map(|i| plain[i]).collect();
        let id_x = self.identities[x];
        identities.push(
            (0..morphisms.len()).find(|&i| origin[i] == id_x && morphisms[i].src == dup && morphisms[i].dst == dup).expect("copied identity"),
        );
        let law = Composition::Law(Arc::new(DuplicateLaw { inner: Arc::new(self.clone()), origin }));
        DiscreteTOperad::new(format!("{} with object {x} doubled", self.name), self.base.clone(), objects, morphisms, identities, law)
            .expect("duplication preserves well-formedness")
    }

    /// Restriction to a set of morphisms closed under composition and
    /// containing the identities of its endpoints.
    pub fn restrict(&self, keep: &[usize]) -> Result<DiscreteTOperad> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut in_keep = vec![false; self.morphisms.len()];
        for &f in &keep {
            *in_keep.get_mut(f).ok_or_else(|| Error::Malformed(format!("morphism {f} out of range")))? = true;
        }
        let mut objs: Vec<usize> = keep.iter().flat_map(|&f| [self.morphisms[f].src, self.morphisms[f].dst]).collect();
        objs.sort_unstable();
        objs.dedup();
        for &x in &objs {
            if !in_keep[self.identities[x]] {
                return Err(Error::NotClosed(format!("identity of object {x} is missing")));
            }
        }
        for &f in &keep {
            let y = self.morphisms[f].dst;
            for &g in &self.out[y] {
                if in_keep[g] && !self.compose(f, g).is_some_and(|h| in_keep[h]) {
                    return Err(Error::NotClosed(format!("composite of {f} then {g} leaves the subset")));
                }
            }
        }
        let new_obj: HashMap<usize, usize> = objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let new_mor: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let objects = objs.iter().map(|&x| self.objects[x].clone()).collect();
        let morphisms = keep
            .iter()
            .map(|&f| {
                let m = &self.morphisms[f];
                OperadMorphism { src: new_obj[&m.src], dst: new_obj[&m.dst], ..m.clone() }
            })
            .collect();
        let identities = objs.iter().map(|&x| new_mor[&self.identities[x]]).collect();
        let table: HashMap<(usize, usize), usize> = keep
            .iter()
            .flat_map(|&f| {
                let y = self.morphisms[f].dst;
                self.out[y].iter().filter(|&&g| in_keep[g]).map(move |&g| (f, g))
            })
            .map(|(f, g)| ((new_mor[&f], new_mor[&g]), new_mor[&self.compose(f, g).expect("closed")]))
            .collect();
        DiscreteTOperad::new(
            format!("sub({})", self.name),
            self.base.clone(),
            objects,
            morphisms,
            identities,
            Composition::Table(Arc::new(table)),
        )
    }

    pub fn summary(&self) -> OperadSummary {
        OperadSummary {
            name: self.name.clone(),
            group: self.base.group().name().to_string(),
            max_size: self.base.max_size(),
            objects: self.objects.len(),
            morphisms: self.morphisms.len(),
            flagged: self.morphisms.iter().filter(|m| m.inert).count(),
        }
    }
}

struct DuplicateLaw {
    inner: Arc<DiscreteTOperad>,
    origin: Vec<usize>,
}

impl PayloadLaw for DuplicateLaw {
    fn compose(&self, _: &DiscreteTOperad, f: usize, g: usize) -> Option<Payload> {
        let h = self.inner.compose(self.origin[f], self.origin[g])?;
        Some(self.inner.morphism(h).payload.clone())
    }
}
