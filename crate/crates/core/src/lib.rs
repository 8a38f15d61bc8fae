//! Character tables of finite groups, irreducible products of characters and
//! the error-detecting quantum codes they induce.

pub mod chartab;
pub mod ctbl_io;
pub mod cyclotomic;
pub mod permgroup;
pub mod twist;
pub mod verifier;

pub use chartab::CharacterTable;
pub use cyclotomic::{Cyclotomic, Rational};
pub use permgroup::{PermGroup, Permutation};
