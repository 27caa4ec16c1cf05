//! Finite equivariant combinatorics: G-sets, span categories over them,
//! discrete models of operads over orbit categories, and indexing systems.

// Loops over parallel index tables read better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod canonical;
pub mod category;
pub mod colored;
pub mod equivariant;
pub mod error;
pub mod group;
pub mod gset;
pub mod indexing;
pub mod operad;
pub mod span;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom, GroupRef, Subgroup};
pub use gset::{GMap, GSet};
