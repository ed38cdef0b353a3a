//! Finite right Bol loops: Cayley tables, the index-2 extension, 3-nets,
//! cores and their restricted structure groups, and small catalogs.

pub mod catalog;
pub mod error;
pub mod extension;
pub mod fixtures;
pub mod loops;
pub mod nets;
pub mod perm;
pub mod quandle;
pub mod selftest;

pub use error::{Error, Result};
pub use loops::{Identity, Loop};
pub use perm::{PermGroup, Permutation};
