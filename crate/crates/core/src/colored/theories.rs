use std::sync::Arc;

use super::{colored_key, ColoredTheory, CountTable, Square};
use crate::error::{Error, Result};
use crate::group::GroupRef;
use crate::gset::{GMap, GSet};

type Rule = Arc<dyn Fn(&GMap, &[usize], &[usize]) -> bool + Send + Sync>;

/// A theory whose multimorphism sets are empty or singletons, given by a rule
/// on orbit-targeted maps and an optional table of explicit counts.
#[derive(Clone)]
pub struct ThinTheory {
    name: String,
    colors: GSet,
    rule: Rule,
    table: CountTable,
}

impl std::fmt::Debug for ThinTheory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ThinTheory({}, {} table entries)", self.name, self.table.len())
    }
}

impl ThinTheory {
    pub fn new(
        name: impl Into<String>,
        colors: GSet,
        rule: impl Fn(&GMap, &[usize], &[usize]) -> bool + Send + Sync + 'static,
    ) -> Self {
        ThinTheory { name: name.into(), colors, rule: Arc::new(rule), table: CountTable::new() }
    }

    /// One color, every multimorphism set a singleton.
    pub fn commutative(group: GroupRef) -> Self {
        Self::new("Com", GSet::point(group), |_, _, _| true)
    }

    /// One color, `Mul^f` a singleton exactly when `f` is an isomorphism.
    pub fn iso_only(group: GroupRef) -> Self {
        Self::new("Triv", GSet::point(group), |f, _, _| f.is_iso())
    }

    /// One color; `Mul^f` is a singleton when every orbit of the source maps
    /// along an admitted orbit map, `admits(K, H)` on stabilizer lattice ids.
    pub fn admitted(group: GroupRef, name: impl Into<String>, admits: impl Fn(usize, usize) -> bool + Send + Sync + 'static) -> Self {
        Self::new(name, GSet::point(group), move |f, _, _| {
            f.source().orbits().iter().all(|o| admits(f.source().stabilizer_id(o[0]), f.target().stabilizer_id(f.apply(o[0]))))
        })
    }

    /// Colors in `colors`; `Mul^f(x, y)` is a singleton when `x = y ∘ f`.
    pub fn colored_commutative(colors: GSet) -> Self {
        Self::new("ColCom", colors, |f, x, y| (0..f.source().size()).all(|u| x[u] == y[f.apply(u)]))
    }

    /// Records `|Mul^f(x, y)| = count` for `f` with any target, overriding the
    /// rule (orbit targets) or the product over orbits (other targets).
    pub fn with_entry(mut self, f: &GMap, x: &[usize], y: &[usize], count: usize) -> Result<Self> {
        if count > 1 {
            return Err(Error::Malformed(format!("thin table entry with {count} elements")));
        }
        if x.len() != f.source().size() || y.len() != f.target().size() {
            return Err(Error::Mismatch("colors do not match the map".into()));
        }
        self.table.insert(colored_key(f, x, y), count);
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    fn lookup(&self, f: &GMap, x: &[usize], y: &[usize]) -> Option<usize> {
        if self.table.is_empty() {
            return None;
        }
        self.table.get(&colored_key(f, x, y)).copied()
    }
}

impl ColoredTheory for ThinTheory {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn colors(&self) -> &GSet {
        &self.colors
    }
    fn mul_count(&self, f: &GMap, x: &[usize], y: &[usize]) -> usize {
        self.lookup(f, x, y).unwrap_or_else(|| usize::from((self.rule)(f, x, y)))
    }
    fn mul_count_total(&self, f: &GMap, x: &[usize], y: &[usize]) -> usize {
        self.lookup(f, x, y).unwrap_or_else(|| super::product_count(self, f, x, y))
    }
    fn unit(&self, _: &GSet, _: &[usize]) -> usize {
        0
    }
    fn compose(&self, f: &GMap, g: &GMap, x: &[usize], _: &[usize], z: &[usize], _: &[usize], _: usize) -> Option<usize> {
        let gf = f.then(g).ok()?;
        (self.mul_count(&gf, x, z) > 0).then_some(0)
    }
    fn base_change(&self, sq: Square<'_>, x: &[usize], y: &[usize], _: usize) -> Option<usize> {
        let x2: Vec<usize> = (0..sq.f_pb.source().size()).map(|u| x[sq.k_pb.apply(u)]).collect();
        let y2: Vec<usize> = (0..sq.k.source().size()).map(|w| y[sq.k.apply(w)]).collect();
        (self.mul_count(sq.f_pb, &x2, &y2) > 0).then_some(0)
    }
    fn is_thin(&self) -> bool {
        true
    }
}

/// One color; an element of `Mul^f` labels each orbit of the source by an
/// element of a finite unital magma `M`. Composition multiplies labels along
/// `f`, base change pulls them back. Associative exactly when `M` is.
#[derive(Debug, Clone)]
pub struct LabeledTheory {
    name: String,
    colors: GSet,
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl LabeledTheory {
    /// `table[a][b] = a * b` on `0..n`; `unit` is the unit element.
    pub fn new(group: GroupRef, name: impl Into<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&c| c >= n)) || unit >= n {
            return Err(Error::Malformed("labels need a square table on 0..n and a unit in range".into()));
        }
        Ok(LabeledTheory { name: name.into(), colors: GSet::point(group), table, unit })
    }

    /// Labels in `{0, 1}` under `or`: only the unit is invertible.
    pub fn boolean(group: GroupRef) -> Self {
        Self::new(group, "Bool", vec![vec![0, 1], vec![1, 1]], 0).expect("valid table")
    }

    /// Labels in `{0, …, cap}` under addition truncated at `cap`.
    pub fn truncated_sum(group: GroupRef, cap: usize) -> Self {
        let table = (0..=cap).map(|a| (0..=cap).map(|b| (a + b).min(cap)).collect()).collect();
        Self::new(group, format!("Sum≤{cap}"), table, 0).expect("valid table")
    }

    /// The same theory with `a * b` sent to `value`.
    pub fn with_table_entry(mut self, a: usize, b: usize, value: usize) -> Self {
        self.table[a][b] = value;
        self.name = format!("{}[{a}*{b}:={value}]", self.name);
        self
    }

    /// The same theory with a different unit element.
    pub fn with_unit(mut self, unit: usize) -> Self {
        self.unit = unit;
        self.name = format!("{}[unit:={unit}]", self.name);
        self
    }

    pub fn labels(&self) -> usize {
        self.table.len()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.labels();
        let t = &self.table;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
    }

    /// Label of every point of `u` under element `a`.
    fn decode(&self, u: &GSet, mut a: usize) -> Vec<usize> {
        let n = self.labels();
        let orbit_label = u.orbit_labels();
        let count = orbit_label.iter().copied().max().map_or(0, |m| m + 1);
        let per_orbit: Vec<usize> = (0..count)
            .map(|_| {
                let l = a % n;
                a /= n;
                l
            })
            .collect();
        orbit_label.iter().map(|&o| per_orbit[o]).collect()
    }

    fn encode(&self, u: &GSet, labels: &[usize]) -> usize {
        let n = self.labels();
        u.orbits().iter().rev().fold(0, |acc, o| acc * n + labels[o[0]])
    }
}

impl ColoredTheory for LabeledTheory {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn colors(&self) -> &GSet {
        &self.colors
    }
    fn mul_count(&self, f: &GMap, _: &[usize], _: &[usize]) -> usize {
        self.labels().pow(f.source().orbits().len() as u32)
    }
    fn unit(&self, _: &GSet, _: &[usize]) -> usize {
        self.unit
    }
    fn compose(&self, f: &GMap, g: &GMap, _: &[usize], _: &[usize], _: &[usize], a: &[usize], b: usize) -> Option<usize> {
        // Orbits of a piece's source keep the order of their least points in U,
        // so each orbit of U takes the next digit of the tuple entry over its image.
        let n = self.labels();
        let u_label = f.source().orbit_labels();
        let v_label = f.target().orbit_labels();
        let lb = self.decode(g.source(), b);
        let mut rest = a.to_vec();
        let mut out = 0;
        let mut weight = 1;
        let mut next = 0;
        for (x, &o) in u_label.iter().enumerate() {
            if o != next {
                continue;
            }
            next += 1;
            let y = f.apply(x);
            let slot = &mut rest[v_label[y]];
            let la = *slot % n;
            *slot /= n;
            out += self.table[la][lb[y]] * weight;
            weight *= n;
        }
        Some(out)
    }
    fn base_change(&self, sq: Square<'_>, _: &[usize], _: &[usize], a: usize) -> Option<usize> {
        let la = self.decode(sq.f.source(), a);
        let u2 = sq.f_pb.source();
        let labels: Vec<usize> = (0..u2.size()).map(|x| la[sq.k_pb.apply(x)]).collect();
        Some(self.encode(u2, &labels))
    }
}
