//! Colored instances as JSON: thin theories given by a rule plus explicit
//! entries, and one-colored labeled theories given by a magma table.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ColoredTheory, LabeledTheory, ThinTheory};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::gset::{GMap, GMapJson, GSet, GSetJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThinRule {
    /// Every multimorphism set over an orbit target is a singleton.
    All,
    /// Singletons exactly over isomorphisms.
    Iso,
    /// Singletons when the source colors are pulled back from the target.
    Colored,
    /// Singletons when each source orbit maps along a listed `(K, H)` pair.
    Admitted,
    /// Only explicit entries are nonempty.
    None,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub map: GMapJson,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ColoredJson {
    Thin {
        name: String,
        group: String,
        /// Defaults to a single color.
        #[serde(default)]
        colors: Option<GSetJson>,
        rule: ThinRule,
        #[serde(default)]
        pairs: Vec<(usize, usize)>,
        #[serde(default)]
        entries: Vec<EntryJson>,
    },
    Labeled {
        name: String,
        group: String,
        table: Vec<Vec<usize>>,
        unit: usize,
    },
}

pub fn load_theory(j: &ColoredJson) -> Result<Arc<dyn ColoredTheory>> {
    match j {
        ColoredJson::Thin { name, group, colors, rule, pairs, entries } => {
            let g = FiniteGroup::fixture(group)?;
            let colors = match colors {
                Some(c) => GSet::from_json(c, g.clone())?,
                None => GSet::point(g.clone()),
            };
            if *rule != ThinRule::Colored && colors.size() != 1 {
                return Err(Error::Malformed(format!("rule {rule:?} needs a single color")));
            }
            let mut t = match rule {
                ThinRule::All => ThinTheory::commutative(g.clone()),
                ThinRule::Iso => ThinTheory::iso_only(g.clone()),
                ThinRule::Colored => ThinTheory::colored_commutative(colors),
                ThinRule::Admitted => {
                    let n = g.lattice().len();
                    if let Some(p) = pairs.iter().find(|&&(k, h)| k >= n || h >= n) {
                        return Err(Error::InvalidIndexing(format!("pair {p:?} names a missing subgroup")));
                    }
                    let set: BTreeSet<(usize, usize)> = pairs.iter().copied().collect();
                    ThinTheory::admitted(g.clone(), name.clone(), move |k, h| k == h || set.contains(&(k, h)))
                }
                ThinRule::None => ThinTheory::new(name.clone(), colors, |_, _, _| false),
            }
            .with_name(name.clone());
            for e in entries {
                let f = GMap::from_json(&e.map, g.clone())?;
                t = t.with_entry(&f, &e.x, &e.y, e.count)?;
            }
            Ok(Arc::new(t))
        }
        ColoredJson::Labeled { name, group, table, unit } => {
            let g = FiniteGroup::fixture(group)?;
            Ok(Arc::new(LabeledTheory::new(g, name.clone(), table.clone(), *unit)?))
        }
    }
}
