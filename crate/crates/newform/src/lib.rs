//! Archimedean newform theory for `GL_n(R)` and `GL_n(C)`.
//!
//! The crate computes conductor exponents, newform K-types, oldform
//! dimensions, epsilon and L-factors, branching multiplicities and zonal
//! harmonics, and checks the Whittaker newform identities numerically for
//! `n <= 3`.

pub mod branching;
pub mod conventions;
pub mod error;
pub mod harmonics;
pub mod invariants;
pub mod repcore;
pub mod special;
pub mod whittaker;
pub mod zetaintegrals;

pub use error::{Error, Result};
pub use repcore::{Component, ComponentKind, GroupKind, HighestWeight, LocalField, Repr};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/representations.md")]
    pub mod representations {}
    #[doc = include_str!("../../../book/src/branching.md")]
    pub mod branching {}
    #[doc = include_str!("../../../book/src/harmonics.md")]
    pub mod harmonics {}
    #[doc = include_str!("../../../book/src/whittaker.md")]
    pub mod whittaker {}
    #[doc = include_str!("../../../book/src/zeta-integrals.md")]
    pub mod zeta_integrals {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
