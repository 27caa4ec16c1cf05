//! Burnside multiplication tables, graph subgroups of `G × Σn`, and the
//! identification of the envelope of the trivial operad with them.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::canonical_arrow;
use crate::group::{enumerate_homs, FiniteGroup, GroupRef, Subgroup};
use crate::gset::{GMap, GSet};
use crate::indexing::subgroup_label;
use crate::operad::{envelope, triv_inert, EnvTargets};
use crate::span::{BaseCategory, BurnsideSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BurnsideRoute {
    /// `* ← G/H → *` composed with `* ← G/K → *` in the span category.
    Spans,
    /// Orbits of the product action on `G/H × G/K`.
    ProductOrbits,
    /// `Σ_{HgK} [G/(H ∩ gKg⁻¹)]`.
    DoubleCosets,
}

/// Products of basis orbits `[G/H]`, one per subgroup class, as coefficient
/// vectors over the classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BurnsideTable {
    pub group: String,
    pub basis: Vec<String>,
    pub products: Vec<Vec<Vec<usize>>>,
}

pub fn class_label(group: &GroupRef, class: usize) -> String {
    format!("G/{}", subgroup_label(group, group.lattice().class_rep(class)))
}

pub fn burnside_table(group: &GroupRef) -> BurnsideTable {
    burnside_table_by(group, BurnsideRoute::Spans)
}

pub fn burnside_table_by(group: &GroupRef, route: BurnsideRoute) -> BurnsideTable {
    let lat = group.lattice();
    let r = lat.num_classes();
    let orbit = |c: usize| GSet::orbit_of_class(group, c);
    let products = (0..r)
        .into_par_iter()
        .map(|i| {
            (0..r)
                .map(|j| {
                    let mut coeff = vec![0; r];
                    match route {
                        BurnsideRoute::Spans => {
                            let (a, b) = (orbit(i), orbit(j));
                            let s = BurnsideSpan::new(&GMap::to_point(&a), &GMap::to_point(&a)).expect("span");
                            let t = BurnsideSpan::new(&GMap::to_point(&b), &GMap::to_point(&b)).expect("span");
                            for o in s.then(&t).expect("composable").apex_orbit_types() {
                                coeff[o.class] += o.multiplicity;
                            }
                        }
                        BurnsideRoute::ProductOrbits => {
                            for o in orbit(i).product(&orbit(j)).orbit_types() {
                                coeff[o.class] += o.multiplicity;
                            }
                        }
                        BurnsideRoute::DoubleCosets => {
                            let (h, k) = (lat.subgroup(lat.class_rep(i)), lat.subgroup(lat.class_rep(j)));
                            for d in group.double_cosets(h, k) {
                                let meet = group.intersect(h, &group.conjugate_subgroup(d[0], k));
                                coeff[lat.class_of(lat.id_of(&meet))] += 1;
                            }
                        }
                    }
                    coeff
                })
                .collect()
        })
        .collect();
    BurnsideTable { group: group.name().to_string(), basis: (0..r).map(|c| class_label(group, c)).collect(), products }
}

impl BurnsideTable {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Product of two elements given by coefficient vectors.
    pub fn multiply(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let r = self.rank();
        let mut out = vec![0; r];
        for (i, j) in (0..r).cartesian_product(0..r) {
            if a[i] * b[j] == 0 {
                continue;
            }
            for (c, &x) in self.products[i][j].iter().enumerate() {
                out[c] += a[i] * b[j] * x;
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<usize> {
        (0..self.rank()).map(|c| usize::from(c == i)).collect()
    }

    /// Failures of commutativity, of `[G/G]` as the unit, and of
    /// associativity on basis triples.
    pub fn law_failures(&self) -> Vec<String> {
        let r = self.rank();
        let mut out = Vec::new();
        let unit = r - 1;
        for (i, j) in (0..r).cartesian_product(0..r) {
            if self.products[i][j] != self.products[j][i] {
                out.push(format!("{}·{} is not commutative", self.basis[i], self.basis[j]));
            }
        }
        for i in 0..r {
            if self.products[unit][i] != self.basis_vector(i) {
                out.push(format!("{} is not a unit on {}", self.basis[unit], self.basis[i]));
            }
        }
        for (i, j, k) in (0..r).cartesian_product(0..r).cartesian_product(0..r).map(|((i, j), k)| (i, j, k)) {
            let left = self.multiply(&self.products[i][j], &self.basis_vector(k));
            let right = self.multiply(&self.basis_vector(i), &self.products[j][k]);
            if left != right {
                out.push(format!("({}·{})·{} differs", self.basis[i], self.basis[j], self.basis[k]));
            }
        }
        out
    }

    pub fn format_element(&self, v: &[usize]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| if c == 1 { format!("[{}]", self.basis[i]) } else { format!("{c}[{}]", self.basis[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("Burnside ring of {}: basis {}\n", self.group, self.basis.iter().map(|b| format!("[{b}]")).join(", "));
        for (i, j) in (0..self.rank()).tuple_combinations::<(_, _)>().chain((0..self.rank()).map(|i| (i, i))).sorted() {
            let _ = writeln!(s, "[{}]·[{}] = {}", self.basis[i], self.basis[j], self.format_element(&self.products[i][j]));
        }
        s
    }
}

/// A class of graph subgroups `Γ_φ = {(h, φ(h))} ≤ G × Σn` for `φ: H → Σn`,
/// with `H` the representative of its class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSubgroupClass {
    pub n: usize,
    pub class: usize,
    /// Subgroup id of `H`.
    pub subgroup: usize,
    /// `φ(h)` as a permutation of `0..n`, for `h` in increasing order.
    pub phi: Vec<Vec<usize>>,
}

fn compose_perm(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// The least `σ φ σ⁻¹` over all `σ`.
fn min_conjugate(phi: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .permutations(n)
        .map(|s| {
            let si = invert_perm(&s);
            phi.iter().map(|p| compose_perm(&compose_perm(&s, p), &si)).collect::<Vec<_>>()
        })
        .min()
        .expect("Σn is nonempty")
}

impl GraphSubgroupClass {
    /// The `H`-set `{0..n}` with `h` acting by `φ(h)`, over `H` as a standalone group.
    pub fn h_set(&self, group: &GroupRef) -> GSet {
        let h = group.lattice().subgroup(self.subgroup);
        let (hg, _) = group.subgroup_as_group(h, "H");
        GSet::new(Arc::new(hg), self.phi.clone()).expect("φ is a homomorphism")
    }

    /// `G ×_H {0..n} → G/H`, the orbit `(G × Σn)/Γ_φ` modulo `Σn` with its fibers.
    pub fn fibered(&self, group: &GroupRef) -> GMap {
        let h = group.lattice().subgroup(self.subgroup);
        let x = GSet::induce(group.clone(), h.elements(), &self.h_set(group));
        let base = GSet::coset_space(group.clone(), h);
        let map = (0..x.size()).map(|p| p / self.n.max(1)).collect();
        GMap::new(x, base, map).expect("projection to cosets")
    }

    /// Elements of `Γ_φ` in `group × symmetric(n)`.
    pub fn graph(&self, group: &GroupRef) -> Vec<usize> {
        let perms: HashMap<Vec<usize>, usize> = (0..self.n).permutations(self.n).enumerate().map(|(i, p)| (p, i)).collect();
        let fact = perms.len();
        group.lattice().subgroup(self.subgroup).elements().iter().zip(&self.phi).map(|(&h, p)| h * fact + perms[p]).collect()
    }
}

/// One graph subgroup per `(G × Σn)`-conjugacy class.
pub fn graph_subgroups(group: &GroupRef, n: usize) -> Vec<GraphSubgroupClass> {
    let lat = group.lattice();
    let sym = Arc::new(FiniteGroup::symmetric(n));
    let mut out = Vec::new();
    for class in 0..lat.num_classes() {
        let hid = lat.class_rep(class);
        let h = lat.subgroup(hid);
        let (hg, emb) = group.subgroup_as_group(h, "H");
        let hg = Arc::new(hg);
        let normalizer = group.normalizer(h);
        let mut seen: BTreeMap<Vec<Vec<usize>>, ()> = BTreeMap::new();
        for hom in enumerate_homs(&hg, &sym, true) {
            let phi: Vec<Vec<usize>> = hg.elements().map(|x| FiniteGroup::symmetric_perm(n, hom.apply(x))).collect();
            // Twisting by the normalizer gives conjugate graphs.
            let canon = normalizer
                .elements()
                .iter()
                .map(|&g| {
                    let twisted: Vec<Vec<usize>> = emb
                        .iter()
                        .map(|&x| {
                            let y = group.mul(group.mul(group.inv(g), x), g);
                            phi[emb.binary_search(&y).expect("normalizer")].clone()
                        })
                        .collect();
                    min_conjugate(&twisted, n)
                })
                .min()
                .expect("normalizer contains the identity");
            if seen.insert(canon.clone(), ()).is_none() {
                out.push(GraphSubgroupClass { n, class, subgroup: hid, phi: canon });
            }
        }
    }
    out
}

/// Number of maps `(G × Σn)/Γ_a → (G × Σn)/Γ_b`.
fn orbit_hom_count(prod: &FiniteGroup, a: &[usize], b: &Subgroup) -> usize {
    let fixed = prod.elements().filter(|&z| a.iter().all(|&x| b.contains(prod.mul(prod.mul(prod.inv(z), x), z)))).count();
    fixed / b.order()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceCell {
    pub class: usize,
    pub n: usize,
    pub envelope: usize,
    pub graph: usize,
    pub h_sets: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceReport {
    pub group: String,
    pub bound: usize,
    pub cells: Vec<CorrespondenceCell>,
    /// Envelope objects with no graph subgroup of the same fibered shape.
    pub unmatched: Vec<usize>,
    pub hom_pairs: usize,
    pub hom_mismatches: Vec<String>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.unmatched.is_empty()
            && self.hom_mismatches.is_empty()
            && self.cells.iter().all(|c| c.envelope == c.graph && c.graph == c.h_sets)
    }
}

/// Compares the envelope of the trivial operad over orbit targets with graph
/// subgroups: counts per orbit and arity `n ≤ bound`, against iso classes of
/// `n`-element `H`-sets, and hom-set sizes against maps of `G × Σn`-orbits.
/// Homs are taken over base spans that are both inert and active, the ones
/// coming from maps of orbits.
pub fn envelope_triv_correspondence(group: &GroupRef, bound: usize) -> CorrespondenceReport {
    let lat = group.lattice();
    let base = Arc::new(BaseCategory::with_arity(group.clone(), bound));
    let triv = Arc::new(triv_inert(base.clone()));
    let env = envelope(&triv, EnvTargets::Orbits);
    let ebase = env.base().clone();

    let arrow_key = |f: &GMap| canonical_arrow(f, None, None).key;
    let mut graphs: HashMap<Vec<usize>, (usize, GraphSubgroupClass)> = HashMap::new();
    let mut cells = Vec::new();
    let classes: Vec<Vec<Vec<GraphSubgroupClass>>> = (0..=bound)
        .map(|n| {
            let all = graph_subgroups(group, n);
            (0..lat.num_classes()).map(|c| all.iter().filter(|x| x.class == c).cloned().collect()).collect()
        })
        .collect();
    for (n, per_class) in classes.iter().enumerate() {
        for x in per_class.iter().flatten() {
            graphs.insert(arrow_key(&x.fibered(group)), (n, x.clone()));
        }
    }

    // (class, arity, key) of every envelope object.
    let info: Vec<(usize, usize, Vec<usize>)> = (0..env.object_count())
        .map(|s| {
            let o = env.object(s);
            let (a, alpha) = (o.label[1] as usize, o.label[2] as usize);
            let w = ebase.object(o.base).u().clone();
            let b = base.find(ebase.object(o.base)).expect("orbit object of the base");
            let (_, _, fwd) = base.hom(a, b)[alpha].apex_gset();
            (lat.class_of(w.stabilizer_id(0)), fwd.source().size() / w.size(), arrow_key(&fwd))
        })
        .collect();
    for c in 0..lat.num_classes() {
        let (hg, _) = group.subgroup_as_group(lat.subgroup(lat.class_rep(c)), "H");
        let hg = Arc::new(hg);
        let h_sets = GSet::all_up_to_iso(&hg, bound);
        for n in 0..=bound {
            cells.push(CorrespondenceCell {
                class: c,
                n,
                envelope: info.iter().filter(|i| i.0 == c && i.1 == n).count(),
                graph: classes[n][c].len(),
                h_sets: h_sets.iter().filter(|u| u.size() == n).count(),
            });
        }
    }
    let unmatched: Vec<usize> = (0..info.len()).filter(|&s| !graphs.contains_key(&info[s].2)).collect();

    let prods: Vec<FiniteGroup> = (0..=bound).map(|n| FiniteGroup::direct_product(group, &FiniteGroup::symmetric(n))).collect();
    let pairs: Vec<(usize, usize)> =
        (0..info.len()).cartesian_product(0..info.len()).filter(|&(x, y)| info[x].1 == info[y].1 && unmatched.is_empty()).collect();
    let hom_mismatches: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(x, y)| {
            let (n, gx) = &graphs[&info[x].2];
            let (_, gy) = &graphs[&info[y].2];
            let prod = &prods[*n];
            let target = Subgroup::new(prod, gx.graph(group)).expect("graph subgroup");
            let expected = orbit_hom_count(prod, &gy.graph(group), &target);
            let got = env
                .hom(x, y)
                .iter()
                .filter(|&&f| {
                    let m = env.base_morphism(f);
                    m.is_inert() && m.is_active()
                })
                .count();
            (got != expected).then(|| format!("objects {x} → {y}: envelope has {got}, orbit maps {expected}"))
        })
        .collect();
    CorrespondenceReport { group: group.name().to_string(), bound, cells, unmatched, hom_pairs: pairs.len(), hom_mismatches }
}
