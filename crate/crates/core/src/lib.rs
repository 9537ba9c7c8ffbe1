//! Complete reductions, elementary integration and creative telescoping
//! in towers of primitive and hyperexponential monomials.

pub mod elem;
pub mod elementary;
pub mod error;
pub mod basis;
pub mod laurent;
pub mod linalg;
pub mod logderiv;
mod modgcd;
mod zpoly;
pub mod hyperexp;
pub mod normalization;
pub mod prim;
pub mod reduction;
pub mod num;
pub mod residue;
pub mod syntax;
pub mod telescoping;
pub mod tower;

pub use elem::{Elem, Poly};
pub use error::{Error, Result};
pub use laurent::Laurent;
pub use num::Gq;
pub use tower::{Kind, Tower};
