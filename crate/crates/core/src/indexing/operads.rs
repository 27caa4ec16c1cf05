//! Indexing systems as commutative suboperads and as thin colored theories.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::{generate_closure, is_indexing_system, IndexingSystem};
use crate::colored::ThinTheory;
use crate::error::{Error, Result};
use crate::operad::{com_operad_from, DiscreteTOperad};
use crate::span::BaseCategory;

fn require_valid(sys: &IndexingSystem) -> Result<()> {
    match is_indexing_system(sys).violation {
        None => Ok(()),
        Some(v) => Err(Error::InvalidIndexing(format!("{}: {}", v.axiom, v.witness))),
    }
}

/// The wide suboperad of `Com` on morphisms whose forward leg lies in `Ī`.
pub fn com_operad(sys: &IndexingSystem, base: Arc<BaseCategory>) -> Result<DiscreteTOperad> {
    require_valid(sys)?;
    if base.group() != sys.group() {
        return Err(Error::Mismatch("base and indexing system over different groups".into()));
    }
    let pairs = sys.pairs().clone();
    Ok(com_operad_from(format!("Com_{sys}"), base, move |k, h| pairs.contains(&(k, h))))
}

/// The indexing system of a commutative suboperad: the stabilizer pairs of
/// forward legs that occur. Fails unless the operad is exactly the
/// suboperad of that system.
pub fn recover_indexing(op: &DiscreteTOperad) -> Result<IndexingSystem> {
    let base = op.base();
    if let Some(a) = (0..base.len()).find(|&a| op.fiber(a).len() != 1) {
        return Err(Error::InvalidIndexing(format!("base object {a} has {} objects over it", op.fiber(a).len())));
    }
    let mut pairs = BTreeSet::new();
    for f in 0..op.morphism_count() {
        let m = op.base_morphism(f);
        if m.apex().is_empty() {
            continue;
        }
        let (s, _, fwd) = m.apex_gset();
        let x = m.target().u();
        for o in s.orbits() {
            pairs.insert((s.stabilizer_id(o[0]), x.stabilizer_id(fwd.apply(o[0]))));
        }
    }
    let sys = generate_closure(base.group(), pairs.iter().copied());
    if sys.pairs() != &pairs {
        return Err(Error::InvalidIndexing(format!("forward legs are not closed: {} pairs, closure has {}", pairs.len(), sys.len())));
    }
    let expected = com_operad(&sys, base.clone())?;
    let key = |o: &DiscreteTOperad| -> HashSet<(usize, usize, usize)> { o.morphisms().iter().map(|m| (o.object(m.src).base, o.object(m.dst).base, m.base)).collect() };
    if op.morphism_count() != expected.morphism_count() || key(op) != key(&expected) {
        return Err(Error::InvalidIndexing(format!(
            "{} morphisms, the suboperad of {sys} has {}",
            op.morphism_count(),
            expected.morphism_count()
        )));
    }
    Ok(sys)
}

/// The one-colored thin theory admitting maps whose source orbits map along
/// admitted orbit maps.
pub fn colored_from_indexing(sys: &IndexingSystem) -> Result<ThinTheory> {
    require_valid(sys)?;
    let pairs = sys.pairs().clone();
    Ok(ThinTheory::admitted(sys.group().clone(), format!("Com_{sys}"), move |k, h| pairs.contains(&(k, h))))
}
