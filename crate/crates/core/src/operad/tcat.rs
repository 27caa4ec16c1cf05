//! Finite T-categories, presented as a finite category with a G-action. The
//! value at `G/H` is the `H`-fixed subcategory; restriction is inclusion of
//! fixed points and conjugation is the action.
//!
//! An object of `C` over a finite G-set `U` is an equivariant map `U → ob C`,
//! which is a product over the orbits of `U` of fixed objects.

use rand::Rng;

use crate::category::FiniteCategory;
use crate::error::{Error, Result};
use crate::group::{GroupRef, Subgroup};
use crate::gset::{equivariant_maps, equivariant_maps_over, GSet};

#[derive(Debug, Clone)]
pub struct TCategory {
    cat: FiniteCategory,
    objects: GSet,
    morphisms: GSet,
}

impl TCategory {
    /// `action_obj[g][x]`, `action_mor[g][f]`: the action must be by functors.
    pub fn new(group: GroupRef, cat: FiniteCategory, action_obj: Vec<Vec<usize>>, action_mor: Vec<Vec<usize>>) -> Result<Self> {
        let objects = GSet::new(group.clone(), action_obj)?;
        let morphisms = GSet::new(group.clone(), action_mor)?;
        if objects.size() != cat.object_count() || morphisms.size() != cat.morphism_count() {
            return Err(Error::Mismatch("action sizes differ from the category".into()));
        }
        for g in group.elements() {
            for f in 0..cat.morphism_count() {
                let (s, t) = cat.morphism(f);
                if cat.morphism(morphisms.act(g, f)) != (objects.act(g, s), objects.act(g, t)) {
                    return Err(Error::NotEquivariant(format!("element {g} moves the endpoints of {f} inconsistently")));
                }
            }
            for o in 0..cat.object_count() {
                if morphisms.act(g, cat.identity(o)) != cat.identity(objects.act(g, o)) {
                    return Err(Error::NotEquivariant(format!("element {g} does not preserve identities")));
                }
            }
            for f in 0..cat.morphism_count() {
                let t = cat.morphism(f).1;
                for o in 0..cat.object_count() {
                    for h in cat.hom(t, o) {
                        let c = cat.compose(f, h).expect("composable");
                        let gc = cat.compose(morphisms.act(g, f), morphisms.act(g, h)).expect("composable");
                        if morphisms.act(g, c) != gc {
                            return Err(Error::NotEquivariant(format!("element {g} does not preserve composition")));
                        }
                    }
                }
            }
        }
        Ok(TCategory { cat, objects, morphisms })
    }

    /// `C` with the trivial action: the constant T-category.
    pub fn constant(group: GroupRef, cat: FiniteCategory) -> Self {
        let triv = |n: usize| vec![(0..n).collect::<Vec<_>>(); group.order()];
        let (o, m) = (triv(cat.object_count()), triv(cat.morphism_count()));
        Self::new(group, cat, o, m).expect("trivial action")
    }

    /// The discrete T-category on a finite G-set.
    pub fn discrete(x: &GSet) -> Self {
        let cat = FiniteCategory::discrete(x.size());
        let act: Vec<Vec<usize>> = x.group().elements().map(|g| x.row(g).to_vec()).collect();
        Self::new(x.group().clone(), cat, act.clone(), act).expect("discrete action")
    }

    /// A G-poset on a random G-set with at most `max_points` points. Orbits get
    /// random levels; relations go strictly upward and are closed transitively,
    /// so the order is antisymmetric and every fixed-point category is skeletal.
    pub fn random_poset(group: &GroupRef, max_points: usize, rng: &mut impl Rng) -> Self {
        let lat = group.lattice();
        let mut pts = GSet::empty(group.clone());
        loop {
            let class = rng.gen_range(0..lat.num_classes());
            let orbit = GSet::orbit_of_class(group, class);
            if pts.size() + orbit.size() > max_points {
                break;
            }
            pts = pts.coproduct(&orbit);
            if rng.gen_bool(0.3) {
                break;
            }
        }
        let n = pts.size();
        let labels = pts.orbit_labels();
        let levels: Vec<usize> = (0..=labels.iter().copied().max().unwrap_or(0)).map(|_| rng.gen_range(0..3)).collect();
        let mut le = vec![vec![false; n]; n];
        for (x, row) in le.iter_mut().enumerate() {
            row[x] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if levels[labels[x]] < levels[labels[y]] && !le[x][y] && rng.gen_bool(0.5) {
                    for g in group.elements() {
                        le[pts.act(g, x)][pts.act(g, y)] = true;
                    }
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let mut b = FiniteCategory::builder(n);
        let mut id = vec![vec![usize::MAX; n]; n];
        for x in 0..n {
            for y in 0..n {
                if le[x][y] {
                    id[x][y] = b.add_morphism(x, y);
                }
            }
        }
        for x in 0..n {
            b.set_identity(x, id[x][x]);
            for y in 0..n {
                for z in 0..n {
                    if le[x][y] && le[y][z] {
                        b.set_composite(id[x][y], id[y][z], id[x][z]);
                    }
                }
            }
        }
        let cat = b.build().expect("poset category");
        let mut pairs = vec![(0, 0); cat.morphism_count()];
        for x in 0..n {
            for y in 0..n {
                if le[x][y] {
                    pairs[id[x][y]] = (x, y);
                }
            }
        }
        let act_obj: Vec<Vec<usize>> = group.elements().map(|g| pts.row(g).to_vec()).collect();
        let act_mor: Vec<Vec<usize>> = group
            .elements()
            .map(|g| pairs.iter().map(|&(x, y)| id[pts.act(g, x)][pts.act(g, y)]).collect())
            .collect();
        Self::new(group.clone(), cat, act_obj, act_mor).expect("G-invariant order")
    }

    pub fn group(&self) -> &GroupRef {
        self.objects.group()
    }
    pub fn underlying(&self) -> &FiniteCategory {
        &self.cat
    }
    pub fn object_gset(&self) -> &GSet {
        &self.objects
    }
    pub fn morphism_gset(&self) -> &GSet {
        &self.morphisms
    }

    /// Number of objects of the value at `G/H`.
    pub fn fixed_object_count(&self, h: &Subgroup) -> usize {
        (0..self.objects.size()).filter(|&x| h.elements().iter().all(|&g| self.objects.act(g, x) == x)).count()
    }

    /// Objects over `U`: equivariant maps `U → ob C`.
    pub fn object_sections(&self, u: &GSet) -> Vec<Vec<usize>> {
        equivariant_maps(u, &self.objects)
    }

    /// Morphisms over `S` from `x` to `y` (both sections over `S`).
    pub fn morphism_sections(&self, s: &GSet, x: &[usize], y: &[usize]) -> Vec<Vec<usize>> {
        equivariant_maps_over(s, &self.morphisms, |p, f| self.cat.morphism(f) == (x[p], y[p]))
    }

    pub fn compose(&self, f: usize, g: usize) -> usize {
        self.cat.compose(f, g).expect("composable components")
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.cat.is_iso(f)
    }

    pub fn identity(&self, x: usize) -> usize {
        self.cat.identity(x)
    }
}
