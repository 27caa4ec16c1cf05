//! Colored operads with set-valued multimorphisms.
//!
//! Colors form a G-set `X`; a color over a finite G-set `U` is an equivariant
//! map `U → X`. A theory gives `Mul^f(x, y)` for maps `f: U → W` into an
//! orbit, as a count with elements numbered `0..count`; over an arbitrary
//! target the multimorphisms are tuples, one element per target orbit.

mod check;
mod json;
mod nerve;
mod theories;

use std::collections::HashMap;

use itertools::Itertools;

use crate::gset::{GMap, GSet};

pub use check::{check_colored_axioms, check_colored_axioms_with, ColoredCheckOptions};
pub use json::{load_theory, ColoredJson, EntryJson, ThinRule};
pub use nerve::{mul_over_span, operadic_nerve};
pub use theories::{LabeledTheory, ThinTheory};

pub const UNIT: &str = "unit";
pub const COMPOSITION: &str = "composition";
pub const ASSOCIATIVITY: &str = "associativity";
pub const PRODUCT: &str = "product";
pub const BASE_CHANGE: &str = "base-change";

/// A pullback square `f': U' → W'` of `f: U → W` along `k: W' → W`, with
/// `k': U' → U`. `W` and `W'` may be arbitrary where noted.
#[derive(Debug, Clone, Copy)]
pub struct Square<'a> {
    pub f: &'a GMap,
    pub k: &'a GMap,
    pub f_pb: &'a GMap,
    pub k_pb: &'a GMap,
}

pub trait ColoredTheory: Send + Sync {
    fn name(&self) -> String;
    fn colors(&self) -> &GSet;

    /// `|Mul^f(x, y)|` for `f: U → W` with `W` an orbit.
    fn mul_count(&self, f: &GMap, x: &[usize], y: &[usize]) -> usize;

    /// `|Mul^f(x, y)|` for any target. Tables may record values here that
    /// disagree with the product over orbits; the checker catches that.
    fn mul_count_total(&self, f: &GMap, x: &[usize], y: &[usize]) -> usize {
        product_count(self, f, x, y)
    }

    /// The unit in `Mul^{id}(y, y)` over an orbit `w`.
    fn unit(&self, w: &GSet, y: &[usize]) -> usize;

    /// `b ∘ a` for `f: U → V`, `g: V → W` with `W` an orbit; `a` has one
    /// element per orbit of `V`. `None` when the composite does not exist.
    #[allow(clippy::too_many_arguments)]
    fn compose(&self, f: &GMap, g: &GMap, x: &[usize], y: &[usize], z: &[usize], a: &[usize], b: usize) -> Option<usize>;

    /// Base change of `a ∈ Mul^f(x, y)` along an orbit square.
    fn base_change(&self, sq: Square<'_>, x: &[usize], y: &[usize], a: usize) -> Option<usize>;

    /// Every multimorphism set has at most one element.
    fn is_thin(&self) -> bool {
        false
    }
}

/// The restriction of a map to the preimage of one target orbit, with both
/// sides renumbered in increasing order.
#[derive(Debug, Clone)]
pub struct Piece {
    pub map: GMap,
    pub source_points: Vec<usize>,
    pub target_points: Vec<usize>,
    /// Index of the target orbit.
    pub orbit: usize,
}

impl Piece {
    /// Colors of the source restricted to the piece.
    pub fn pull(&self, x: &[usize]) -> Vec<usize> {
        self.source_points.iter().map(|&p| x[p]).collect()
    }
    pub fn push(&self, y: &[usize]) -> Vec<usize> {
        self.target_points.iter().map(|&p| y[p]).collect()
    }
    fn source_index(&self, p: usize) -> usize {
        self.source_points.binary_search(&p).expect("point lies in the piece")
    }
}

/// One piece per orbit of the target, in orbit order.
pub fn pieces(f: &GMap) -> Vec<Piece> {
    f.target()
        .orbits()
        .into_iter()
        .enumerate()
        .map(|(orbit, o)| {
            let map = f.restrict_to(&o);
            let source_points = (0..f.source().size()).filter(|&u| o.binary_search(&f.apply(u)).is_ok()).collect();
            Piece { map, source_points, target_points: o, orbit }
        })
        .collect()
}

/// `|Mul^f(x, y)|` as the product of the counts over the target's orbits.
pub fn product_count<T: ColoredTheory + ?Sized>(theory: &T, f: &GMap, x: &[usize], y: &[usize]) -> usize {
    pieces(f).iter().map(|p| theory.mul_count(&p.map, &p.pull(x), &p.push(y))).product()
}

/// All colors over `u`.
pub fn sections(theory: &dyn ColoredTheory, u: &GSet) -> Vec<Vec<usize>> {
    crate::gset::equivariant_maps(u, theory.colors())
}

/// All elements of `Mul^f(x, y)` for any target, as tuples over its orbits.
pub fn mul_elements(theory: &dyn ColoredTheory, f: &GMap, x: &[usize], y: &[usize]) -> Vec<Vec<usize>> {
    pieces(f)
        .iter()
        .map(|p| 0..theory.mul_count(&p.map, &p.pull(x), &p.push(y)))
        .multi_cartesian_product()
        .collect()
}

/// Per-orbit pieces of `g: V → W` with the matching pieces of `f: U → V`.
fn stacked(f: &GMap, g: &GMap) -> Vec<(Piece, GMap, Vec<usize>, Vec<usize>)> {
    let v_label = f.target().orbit_labels();
    pieces(g)
        .into_iter()
        .map(|pg| {
            let upts: Vec<usize> =
                (0..f.source().size()).filter(|&u| pg.source_points.binary_search(&f.apply(u)).is_ok()).collect();
            let (us, _) = f.source().sub_gset(&upts);
            let fmap = upts.iter().map(|&u| pg.source_index(f.apply(u))).collect();
            let f_piece = GMap::from_parts(us, pg.map.source().clone(), fmap);
            let v_orbits: Vec<usize> = pg.source_points.iter().map(|&v| v_label[v]).sorted().dedup().collect();
            (pg, f_piece, upts, v_orbits)
        })
        .collect()
}

/// `b ∘ a` for `f: U → V`, `g: V → W` with any `W`; `a` and `b` are tuples
/// over the orbits of `V` and `W`.
#[allow(clippy::too_many_arguments)]
pub fn compose_total(
    theory: &dyn ColoredTheory,
    f: &GMap,
    g: &GMap,
    x: &[usize],
    y: &[usize],
    z: &[usize],
    a: &[usize],
    b: &[usize],
) -> Option<Vec<usize>> {
    Stacked::new(f, g).compose(theory, x, y, z, a, b)
}

/// The per-orbit decomposition used by [`compose_total`], kept for reuse
/// across many elements of the same pair of maps.
pub(crate) struct Stacked(Vec<(Piece, GMap, Vec<usize>, Vec<usize>)>);

impl Stacked {
    pub(crate) fn new(f: &GMap, g: &GMap) -> Self {
        Stacked(stacked(f, g))
    }

    pub(crate) fn compose(&self, theory: &dyn ColoredTheory, x: &[usize], y: &[usize], z: &[usize], a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
        self.0
            .iter()
            .map(|(pg, fp, upts, vorbs)| {
                let xs: Vec<usize> = upts.iter().map(|&u| x[u]).collect();
                let a_sub: Vec<usize> = vorbs.iter().map(|&o| a[o]).collect();
                theory.compose(fp, &pg.map, &xs, &pg.pull(y), &pg.push(z), &a_sub, b[pg.orbit])
            })
            .collect()
    }
}

/// Base change of a tuple `a ∈ Mul^f(x, y)` along a pullback square whose
/// bottom `k: V' → V` has any source and target.
pub fn base_change_total(theory: &dyn ColoredTheory, sq: Square<'_>, x: &[usize], y: &[usize], a: &[usize]) -> Option<Vec<usize>> {
    let f_pieces = pieces(sq.f);
    let v_label = sq.f.target().orbit_labels();
    pieces(sq.f_pb)
        .iter()
        .map(|pp| {
            let w = v_label[sq.k.apply(pp.target_points[0])];
            let pf = &f_pieces[w];
            let kmap = pp.target_points.iter().map(|&t| pf.target_points.binary_search(&sq.k.apply(t)).expect("same orbit")).collect();
            let k = GMap::from_parts(pp.map.target().clone(), pf.map.target().clone(), kmap);
            let kpb = pp.source_points.iter().map(|&s| pf.source_index(sq.k_pb.apply(s))).collect();
            let k_pb = GMap::from_parts(pp.map.source().clone(), pf.map.source().clone(), kpb);
            theory.base_change(Square { f: &pf.map, k: &k, f_pb: &pp.map, k_pb: &k_pb }, &pf.pull(x), &pf.push(y), a[w])
        })
        .collect()
}

/// The component used for identities and inert edges over an isomorphism
/// `f: U → W` of orbits: the unit of `W` transported along `f`.
pub fn unit_along_iso(theory: &dyn ColoredTheory, f: &GMap, y: &[usize]) -> Option<usize> {
    let w = f.target();
    let id = GMap::identity(w);
    theory.base_change(Square { f: &id, k: &id, f_pb: f, k_pb: f }, y, y, theory.unit(w, y))
}

/// Canonical key of a colored arrow, used by table-driven theories.
pub(crate) fn colored_key(f: &GMap, x: &[usize], y: &[usize]) -> Vec<usize> {
    crate::canonical::canonical_arrow(f, Some(x), Some(y)).key
}

pub(crate) type CountTable = HashMap<Vec<usize>, usize>;
