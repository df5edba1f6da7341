//! Exact computer algebra for the three-point current algebra
//! `sl(2) (x) R` with `R = C[t, t^-1, u | u^2 = t^2 + 4t]`, its universal
//! central extension, and two free-field realizations on a Fock space.

pub mod current;
pub mod error;
pub mod fock;
pub mod kahler;
pub mod rational;
pub mod realization;
pub mod ring;
pub mod verify;

pub use current::{CurrentElem, Generator, Sl2Basis};
pub use error::{Error, Result};
pub use kahler::{CentralPair, OneForm};
pub use rational::Rational;
pub use ring::{Parity, RingBasis, RingElem, SFraction};
