//! Commutative-algebra engine over the rationals: polynomial rings, ideals and
//! submodules via Gröbner bases, free resolutions, Koszul complexes, chain-map
//! lifting, Fitting ideals, and a small session language driving all of it.

pub mod chainmap;
pub mod complexes;
pub mod error;
pub mod freemod;
pub mod groebner;
pub mod parser;
pub mod polyring;
pub mod residue;
pub mod session;

pub use error::{AlgebraError, Result};
pub use freemod::PolyMatrix;
pub use groebner::{Codim, Ideal};
pub use polyring::{Monomial, MonomialOrder, Polynomial, Rational, Ring};
