//! Equivariant algebra for the cyclic group of prime order: exact linear algebra,
//! Mackey functors and box products, RO(C_p)-graded cohomology of a point,
//! free cellular modules, equivariant projective space, homological algebra over
//! group rings and finite EI-categories.

pub mod eicat;
pub mod error;
pub mod free;
pub mod homalg;
pub mod linalg;
pub mod mackey;
pub mod matrix;
pub mod module;
pub mod point;
pub mod projspace;
pub mod ring;
pub mod rog;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::Mat;
pub use module::{FGModule, HomSpace, ModuleMap};
pub use ring::GroundRing;
