//! Oracles shared by the integration targets. Each one recomputes its answer
//! from G-set data without going through the code path it checks.
#![allow(dead_code)]

use std::sync::Arc;

use itertools::Itertools;

use toperad::span::{ArrowObject, BaseCategory};
use toperad::GSet;

/// Every function `x → y` (as a vector) commuting with the action, by brute force.
pub fn brute_maps(x: &GSet, y: &GSet, ok: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let g = x.group();
    (0..x.size())
        .map(|_| 0..y.size())
        .multi_cartesian_product()
        .filter(|m| (0..x.size()).all(|i| ok(i, m[i])))
        .filter(|m| g.elements().all(|e| (0..x.size()).all(|i| m[x.act(e, i)] == y.act(e, m[i]))))
        .collect()
}

/// `|Hom(a, b)|` from the triple description: for each map `k: Y → V`, each
/// orbit `O` of `U ×_V Y` is either left out of `S` or sent to a point of `X`
/// over its `Y`-coordinate whose stabilizer contains that of `O`'s
/// representative. So the count is `Σ_k Π_O (1 + c_O)`.
pub fn hom_count(a: &ArrowObject, b: &ArrowObject) -> usize {
    let g = a.group();
    let stab = |fix: &dyn Fn(usize) -> bool| -> Vec<usize> { g.elements().filter(|&e| fix(e)).collect() };
    let mut total = 0;
    for k in brute_maps(b.v(), a.v(), |_, _| true) {
        let pairs: Vec<(usize, usize)> =
            (0..a.u().size()).cartesian_product(0..b.v().size()).filter(|&(u, y)| a.f()[u] == k[y]).collect();
        let mut seen = vec![false; pairs.len()];
        let mut product = 1;
        for i in 0..pairs.len() {
            if seen[i] {
                continue;
            }
            let (u, y) = pairs[i];
            for e in g.elements() {
                let j = pairs.iter().position(|&p| p == (a.u().act(e, u), b.v().act(e, y))).unwrap();
                seen[j] = true;
            }
            let s_stab = stab(&|e| a.u().act(e, u) == u && b.v().act(e, y) == y);
            let choices = (0..b.u().size()).filter(|&x| b.f()[x] == y && s_stab.iter().all(|&e| b.u().act(e, x) == x)).count();
            product *= 1 + choices;
        }
        total += product;
    }
    total
}

/// The isomorphisms `c → c` of the base, as positions.
pub fn automorphisms(base: &BaseCategory, c: usize) -> Vec<usize> {
    let id = base.identity_position(c);
    let n = base.hom(c, c).len();
    (0..n).filter(|&s| (0..n).any(|t| base.compose(c, c, c, s, t) == id && base.compose(c, c, c, t, s) == id)).collect()
}

/// For every morphism of the base, every factorization into an inert map
/// followed by an active map with invertible base component, found by search.
/// Returns the morphisms `(a, b, position)` whose factorizations are missing
/// or not related by an automorphism of the middle. Without the base
/// condition uniqueness fails: maps that are both inert and active include
/// every pure base change.
///
/// Only morphisms between objects with `|U| ≤ bound` are checked; middle
/// objects range over all of `base`, which must be large enough to contain
/// every apex (`|G| · bound` suffices).
pub fn factorization_failures(base: &BaseCategory, bound: usize) -> (usize, Vec<(usize, usize, usize)>) {
    let n = base.len();
    let ends: Vec<usize> = (0..n).filter(|&a| base.object(a).u().size() <= bound).collect();
    let mut autos: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    let mut checked = 0;
    let mut failures = Vec::new();
    for &a in &ends {
        for &b in &ends {
            let mut found: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); base.hom(a, b).len()];
            // The active factor has invertible base map, so the middle lies over a copy of Y.
            for c in (0..n).filter(|&c| base.object(c).v() == base.object(b).v()) {
                let inert: Vec<usize> = (0..base.hom(a, c).len()).filter(|&i| base.hom(a, c)[i].is_inert()).collect();
                if inert.is_empty() {
                    continue;
                }
                let active: Vec<usize> =
                    (0..base.hom(c, b).len()).filter(|&j| base.hom(c, b)[j].is_active() && base.hom(c, b)[j].base_is_iso()).collect();
                for &i in &inert {
                    for &j in &active {
                        found[base.compose(a, c, b, i, j)].push((c, i, j));
                    }
                }
            }
            for (p, fs) in found.iter().enumerate() {
                checked += 1;
                let Some(&(c0, i0, j0)) = fs.first() else {
                    failures.push((a, b, p));
                    continue;
                };
                let auts = autos.entry(c0).or_insert_with(|| automorphisms(base, c0));
                let related = fs.iter().all(|&(c, i, j)| {
                    c == c0 && auts.iter().any(|&s| base.compose(a, c, c, i0, s) == i && base.compose(c, c, b, s, j) == j0)
                });
                if !related {
                    failures.push((a, b, p));
                }
            }
        }
    }
    (checked, failures)
}

/// Composable pairs `(f, g)` as `(a, b, c, i, j)`, `f = hom(a, b)[i]`, `g = hom(b, c)[j]`.
pub fn composable(base: &BaseCategory) -> impl Iterator<Item = (usize, usize, usize, usize, usize)> + '_ {
    let n = base.len();
    (0..n).cartesian_product(0..n).cartesian_product(0..n).flat_map(move |((a, b), c)| {
        (0..base.hom(a, b).len()).cartesian_product(0..base.hom(b, c).len()).map(move |(i, j)| (a, b, c, i, j))
    })
}

/// Pairs with `f` inert and `g ∘ f` inert but `g` not inert.
pub fn right_cancellation_failures(base: &BaseCategory) -> Vec<(usize, usize, usize, usize, usize)> {
    composable(base)
        .filter(|&(a, b, c, i, j)| {
            base.hom(a, b)[i].is_inert() && base.hom(a, c)[base.compose(a, b, c, i, j)].is_inert() && !base.hom(b, c)[j].is_inert()
        })
        .collect()
}

/// Pairs with `g` and `g ∘ f` in the class but `f` not.
pub fn left_cancellation_failures(
    base: &BaseCategory,
    class: impl Fn(&toperad::span::SpanMorphism) -> bool,
) -> Vec<(usize, usize, usize, usize, usize)> {
    composable(base)
        .filter(|&(a, b, c, i, j)| {
            class(&base.hom(b, c)[j]) && class(&base.hom(a, c)[base.compose(a, b, c, i, j)]) && !class(&base.hom(a, b)[i])
        })
        .collect()
}

pub fn is_fiberwise_active(m: &toperad::span::SpanMorphism) -> bool {
    m.is_active() && m.is_fiberwise()
}

pub fn orbits(g: &toperad::GroupRef) -> Vec<GSet> {
    (0..g.lattice().num_classes()).map(|c| GSet::orbit_of_class(g, c)).collect()
}

pub fn arc<T>(t: T) -> Arc<T> {
    Arc::new(t)
}
