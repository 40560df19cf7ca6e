//! Exact multiple Euler numbers, generalized Euler numbers attached to Dirichlet
//! characters, the multiple Euler l-function at negative integers, and the multiple
//! p-adic l-function `l_{p,r}(s, χ)` with its derivative at `s = 0`.

pub mod arith;
pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod euler;
pub mod lfunction;
pub mod lvalues;
pub mod padic;
pub mod rational;
pub mod series;
pub mod verify;

pub use characters::{enumerate_characters, DirichletCharacter, UnitGroupStructure};
pub use cyclotomic::CycElem;
pub use error::{Error, Result};
pub use euler::{euler_number, euler_number_multi, euler_polynomial_multi, EulerTable};
pub use padic::{PadicContext, PadicNum};
pub use rational::Rational;
