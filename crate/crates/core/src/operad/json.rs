//! Operad instances as JSON.
//!
//! Base objects and base morphisms are referenced by index into the bounded
//! base named by `group`, `base_variant` and `max_size`. When `comp` is absent
//! the operad is read as thin: composites are looked up by base morphism with
//! empty payloads.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Composition, DiscreteTOperad, OperadMorphism, OperadObject, ThinLaw};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::span::{BaseCategory, BaseVariant};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperadJson {
    pub name: String,
    pub group: String,
    pub base_variant: BaseVariant,
    pub max_size: usize,
    pub objects: Vec<OperadObject>,
    pub morphisms: Vec<OperadMorphism>,
    /// Defaults to the first endomorphism over the base identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<Vec<usize>>,
    /// `[f, g, h]` with `h = g ∘ f`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comp: Option<Vec<[usize; 3]>>,
}

impl DiscreteTOperad {
    /// The composition table is written out unless every payload is empty and
    /// composition is computed by a law.
    pub fn to_json(&self) -> OperadJson {
        let thin = matches!(self.law, Composition::Law(_)) && self.morphisms.iter().all(|m| m.payload.is_empty());
        let comp = (!thin).then(|| {
            let mut t: Vec<[usize; 3]> = (0..self.morphisms.len())
                .flat_map(|f| self.out[self.morphisms[f].dst].iter().filter_map(move |&g| self.compose(f, g).map(|h| [f, g, h])))
                .collect();
            t.sort_unstable();
            t
        });
        OperadJson {
            name: self.name.clone(),
            group: self.base.group().name().to_string(),
            base_variant: self.base.variant(),
            max_size: self.base.max_size(),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: Some(self.identities.clone()),
            comp,
        }
    }

    /// Rebuilds the plain bounded base from the header. Instances over an
    /// arity-bounded or envelope base need [`Self::from_json_over`].
    pub fn from_json(j: &OperadJson) -> Result<Self> {
        let group = FiniteGroup::fixture(&j.group)?;
        let base = Arc::new(BaseCategory::new(group, j.base_variant, j.max_size));
        Self::from_json_over(j, base)
    }

    /// Reads `j` over an already built base, which must match its header.
    pub fn from_json_over(j: &OperadJson, base: Arc<BaseCategory>) -> Result<Self> {
        if base.group().name() != j.group || base.variant() != j.base_variant || base.max_size() != j.max_size {
            return Err(Error::Mismatch(format!("base {base:?} does not match the instance header")));
        }
        let identities = match &j.identities {
            Some(ids) => ids.clone(),
            None => (0..j.objects.len())
                .map(|x| {
                    let a = j.objects[x].base;
                    j.morphisms
                        .iter()
                        .position(|m| m.src == x && m.dst == x && a < base.len() && m.base == base.identity_position(a))
                        .ok_or_else(|| Error::Malformed(format!("object {x} has no identity")))
                })
                .collect::<Result<_>>()?,
        };
        let law = match &j.comp {
            None => Composition::Law(Arc::new(ThinLaw)),
            Some(rows) => {
                let n = j.morphisms.len();
                let mut table = HashMap::with_capacity(rows.len());
                for &[f, g, h] in rows {
                    if f >= n || g >= n || h >= n {
                        return Err(Error::Malformed(format!("composition entry {:?} out of range", [f, g, h])));
                    }
                    if table.insert((f, g), h).is_some() {
                        return Err(Error::Malformed(format!("composite of {f} then {g} given twice")));
                    }
                }
                Composition::Table(Arc::new(table))
            }
        };
        DiscreteTOperad::new(j.name.clone(), base, j.objects.clone(), j.morphisms.clone(), identities, law)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}
