//! Automorphisms of `Z_n[x]` over `Z_n`: Gilmer's criterion, the group of
//! basic automorphisms and its conjugacy classes, and fixed subrings of
//! `Z_4[x]`.

pub mod basic;
pub mod endo;
pub mod error;
pub mod fixed;
pub mod gz4;
pub mod howell;
pub mod poly;
pub mod residues;
pub mod verify;

pub use basic::{BasicAut, ConjClass};
pub use endo::{Endo, GilmerForm, NotAutomorphism};
pub use error::{Error, Result};
pub use fixed::{CoeffModule, SubgroupSpec, Z4Ring};
pub use gz4::{GAut4, GSubgroup, Kind};
pub use poly::Poly;
pub use residues::{Modulus, Residue};
