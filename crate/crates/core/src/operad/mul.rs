//! Multimorphism sets, unitality and morphisms of operads.

use serde::Serialize;

use super::check::{components, flagged_lifts, lift_target, orbit_factors};
use super::DiscreteTOperad;
use crate::error::{Error, Result};
use crate::gset::{GMap, GSet};
use crate::span::{canonicalize, pointing, ArrowObject};

/// `Mul^α(x, y)`: the morphisms `x → y` over a fiberwise active `α`, with
/// their components over the orbits of the target.
#[derive(Debug, Clone, Serialize)]
pub struct MulSet {
    /// `(source base object, target base object, position)`.
    pub alpha: (usize, usize, usize),
    pub x: usize,
    pub y: usize,
    pub elements: Vec<usize>,
    /// Per orbit `W` of the target: `(x_W, y_W, Hom^{α_W}(x_W, y_W))`.
    pub factors: Vec<(usize, usize, Vec<usize>)>,
    /// The component tuple of each element, in `elements` order.
    pub decomposition: Vec<Vec<usize>>,
}

impl MulSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    /// Size of the product of the orbit factors.
    pub fn product_size(&self) -> usize {
        self.factors.iter().map(|f| f.2.len()).product()
    }
}

pub fn mul_set(op: &DiscreteTOperad, a: usize, b: usize, alpha: usize, x: usize, y: usize) -> Result<MulSet> {
    let base = op.base();
    let m = base
        .hom(a, b)
        .get(alpha)
        .ok_or_else(|| Error::Mismatch(format!("no base morphism {a}->{b}#{alpha}")))?;
    if !(m.is_fiberwise() && m.is_active()) {
        return Err(Error::Mismatch("α must be active with identity base map".into()));
    }
    if op.object(x).base != a || op.object(y).base != b {
        return Err(Error::Mismatch(format!("objects {x}, {y} do not lie over {a}, {b}")));
    }
    let factors = orbit_factors(op, a, b, alpha).ok_or_else(|| Error::Mismatch("orbit factorization leaves the bounded base".into()))?;
    let mut lifts = Vec::new();
    let mut fac = Vec::new();
    for f in &factors {
        let ex = *flagged_lifts(op, x, f.mid, f.rho).first().ok_or_else(|| Error::Mismatch(format!("object {x} has no inert lift")))?;
        let ey = *flagged_lifts(op, y, f.c, f.chi).first().ok_or_else(|| Error::Mismatch(format!("object {y} has no inert lift")))?;
        let (xw, yw) = (op.morphism(ex).dst, op.morphism(ey).dst);
        fac.push((xw, yw, op.hom_over(xw, yw, f.alpha_w).collect()));
        lifts.push((ex, ey));
    }
    let elements: Vec<usize> = op.hom_over(x, y, alpha).collect();
    let decomposition = elements
        .iter()
        .map(|&h| components(op, h, &factors, &lifts).map_err(Error::Mismatch))
        .collect::<Result<Vec<_>>>()?;
    Ok(MulSet { alpha: (a, b, alpha), x, y, elements, factors: fac, decomposition })
}

/// `Mul` for a map `α: U → X` of G-sets over `X → V`, with `x`, `y` objects
/// over the canonical forms of `[U → V]` and `[X → V]`.
pub fn mul_set_for_map(op: &DiscreteTOperad, alpha: &GMap, over: &GMap, x: usize, y: usize) -> Result<MulSet> {
    let m = canonicalize(&pointing(alpha, over)?);
    let base = op.base();
    let (a, b) = base.endpoints(&m).ok_or_else(|| Error::Mismatch("α is outside the bounded base".into()))?;
    let pos = base.position(a, b, &m).expect("canonical morphism is enumerated");
    mul_set(op, a, b, pos, x, y)
}

/// Base change of `h: x → y` (over a fiberwise active `α: a → b`) along an
/// inert `ρ: b → b'` at position `rho`: the unique `h'` with
/// `h' ∘ e_x = e_y ∘ h`, where `e_x`, `e_y` are flagged lifts.
pub fn base_change_mul(op: &DiscreteTOperad, h: usize, b2: usize, rho: usize) -> Result<usize> {
    let base = op.base();
    let (a, b) = op.base_endpoints(h);
    let mh = op.morphism(h);
    if !base.hom(b, b2).get(rho).is_some_and(|m| m.is_inert()) {
        return Err(Error::Mismatch("base change needs an inert morphism out of the target".into()));
    }
    let comp = &base.hom(a, b2)[base.compose(a, b, b2, mh.base, rho)];
    let (r2, act) = comp.factorize_fiberwise().ok_or_else(|| Error::Mismatch("no fiberwise factorization".into()))?;
    let mid = base.find(r2.target()).ok_or_else(|| Error::Mismatch("factorization leaves the bounded base".into()))?;
    let (rpos, apos) = (base.position(a, mid, &r2).expect("enumerated"), base.position(mid, b2, &act).expect("enumerated"));
    let ex = *flagged_lifts(op, mh.src, mid, rpos).first().ok_or_else(|| Error::Mismatch("missing inert lift".into()))?;
    let ey = *flagged_lifts(op, mh.dst, b2, rho).first().ok_or_else(|| Error::Mismatch("missing inert lift".into()))?;
    let t = op.compose(h, ey).ok_or_else(|| Error::Mismatch("missing composite".into()))?;
    let (x2, y2) = (op.morphism(ex).dst, op.morphism(ey).dst);
    let found: Vec<usize> = op.hom_over(x2, y2, apos).filter(|&g| op.compose(ex, g) == Some(t)).collect();
    match found.as_slice() {
        [g] => Ok(*g),
        _ => Err(Error::Mismatch(format!("{} candidates for the base change", found.len()))),
    }
}

/// For every orbit `V` in the base and every object `x` over `[V = V]`, the
/// morphisms from the object over `[∅ → V]` to `x` over the active map form a
/// singleton.
pub fn is_unital(op: &DiscreteTOperad) -> bool {
    let base = op.base();
    for c in base.orbit_objects() {
        let v = base.object(c).v().clone();
        let empty = ArrowObject::canonical(&GMap::new(GSet::empty(v.group().clone()), v.clone(), vec![]).expect("empty map")).0;
        let Some(e) = base.find(&empty) else { return false };
        let Some(pos) = base.hom(e, c).iter().position(|m| m.is_fiberwise()) else { return false };
        let &[u] = op.fiber(e) else { return false };
        if op.fiber(c).iter().any(|&x| op.hom_over(u, x, pos).count() != 1) {
            return false;
        }
    }
    true
}

/// Object and morphism maps of a functor between operads over the same base.
#[derive(Debug, Clone, Serialize)]
pub struct OperadFunctor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl OperadFunctor {
    pub fn identity(op: &DiscreteTOperad) -> Self {
        OperadFunctor { objects: (0..op.object_count()).collect(), morphisms: (0..op.morphism_count()).collect() }
    }

    /// The inclusion of `sub` into `sup` matching objects by `(base, label)`
    /// and morphisms by `(base, payload)`.
    pub fn inclusion(sub: &DiscreteTOperad, sup: &DiscreteTOperad) -> Result<Self> {
        let index: std::collections::HashMap<&super::OperadObject, usize> =
            sup.objects().iter().enumerate().map(|(i, o)| (o, i)).collect();
        let objects = sub
            .objects()
            .iter()
            .map(|o| index.get(o).copied().ok_or_else(|| Error::Mismatch(format!("object {o:?} missing"))))
            .collect::<Result<Vec<_>>>()?;
        let morphisms = sub
            .morphisms()
            .iter()
            .enumerate()
            .map(|(i, m)| {
                sup.find(objects[m.src], objects[m.dst], m.base, &m.payload)
                    .ok_or_else(|| Error::Mismatch(format!("morphism {i} missing")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OperadFunctor { objects, morphisms })
    }
}

/// `Err` if `f` is not a functor or moves objects off their base objects;
/// otherwise whether it is over the base on morphisms and keeps inert flags.
pub fn is_operad_morphism(src: &DiscreteTOperad, dst: &DiscreteTOperad, f: &OperadFunctor) -> Result<bool> {
    if f.objects.len() != src.object_count() || f.morphisms.len() != src.morphism_count() {
        return Err(Error::Mismatch("functor data has the wrong length".into()));
    }
    if f.objects.iter().any(|&y| y >= dst.object_count()) || f.morphisms.iter().any(|&g| g >= dst.morphism_count()) {
        return Err(Error::Mismatch("functor data out of range".into()));
    }
    for (x, &y) in f.objects.iter().enumerate() {
        if src.object(x).base != dst.object(y).base {
            return Err(Error::Mismatch(format!("object {x} is sent off its base object")));
        }
        if f.morphisms[src.identity(x)] != dst.identity(y) {
            return Err(Error::Mismatch(format!("identity of {x} is not preserved")));
        }
    }
    for (i, m) in src.morphisms().iter().enumerate() {
        let g = dst.morphism(f.morphisms[i]);
        if g.src != f.objects[m.src] || g.dst != f.objects[m.dst] {
            return Err(Error::Mismatch(format!("morphism {i} is sent between the wrong objects")));
        }
        for &j in src.out(m.dst) {
            let h = src.compose(i, j).ok_or_else(|| Error::Malformed(format!("source has no composite of {i}, {j}")))?;
            if dst.compose(f.morphisms[i], f.morphisms[j]) != Some(f.morphisms[h]) {
                return Err(Error::Mismatch(format!("composite of {i}, {j} is not preserved")));
            }
        }
    }
    let over_base = src.morphisms().iter().enumerate().all(|(i, m)| dst.morphism(f.morphisms[i]).base == m.base);
    let inert = src.morphisms().iter().enumerate().all(|(i, m)| !m.inert || dst.morphism(f.morphisms[i]).inert);
    Ok(over_base && inert)
}

/// Targets of the flagged lifts along the characteristic morphisms of `a`.
pub fn segal_components(op: &DiscreteTOperad, x: usize) -> Option<Vec<usize>> {
    let a = op.object(x).base;
    super::check::characteristic_positions(op, a)?
        .into_iter()
        .map(|(c, pos)| lift_target(op, x, c, pos).ok())
        .collect()
}
