//! Exact computations with symplectic tensors, free Lie algebras, labelled
//! trivalent trees and `Sp(2g)` representations, used to certify statements
//! about the second Johnson homomorphism and its bracket.

pub mod checks;
pub mod detect;
pub mod dsl;
pub mod error;
pub mod graded;
pub mod hl;
pub mod letter;
pub mod lie;
pub mod linalg;
pub mod quotient;
pub mod rep;
pub mod rational;
pub mod sp;
pub mod spaces;
pub mod tensor;
pub mod tree;
pub mod wedge;

pub use error::{Error, Result};
pub use lie::{lyndon_basis, omega0, LieElement, LieMonomial};
pub use quotient::{quotient_project, QuotientContext};
pub use letter::{Genus, Kind, Letter, Word};
pub use rational::{q, qf, Q};
pub use sp::{SpGenerator, Weight};
pub use tensor::Tensor;
pub use wedge::{project, MultiWedgeElement, WedgeShape};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/tensors.md")]
    mod tensors {}
    #[doc = include_str!("../../../book/src/free-lie.md")]
    mod free_lie {}
    #[doc = include_str!("../../../book/src/trees.md")]
    mod trees {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/detectors.md")]
    mod detectors {}
    #[doc = include_str!("../../../book/src/dsl.md")]
    mod dsl {}
    #[doc = include_str!("../../../book/src/checks.md")]
    mod checks {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
