//! Casimir-Lifshitz free energy between parallel mirrors across a screening
//! plasma: exact Matsubara engines, closed-form asymptotes, a theta-integral
//! cross-validation oracle, and femtometre-scale Yukawa-matching estimates.
//!
//! The guide under `book/` walks through the physics; its code blocks are
//! compiled and run as doc-tests of this crate (see the `book` module below),
//! so the narrative and the API cannot drift apart.

pub mod asymptotics;
pub mod dielectric;
pub mod error;
pub mod lifshitz;
pub mod nuclear;
pub mod quad;
pub mod specfun;
pub mod units;

pub use dielectric::{Epsilon, MediumModel, MirrorModel};
pub use error::{Error, Result};
pub use lifshitz::{EngineConfig, FreeEnergyBreakdown};
pub use units::{PhysicalConstants, ReducedPoint};

// The book chapters double as doc-tests: every fenced Rust block in them is
// compiled and executed by `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/reduced-variables.md")]
    mod reduced_variables {}
    #[doc = include_str!("../../../book/src/special-functions.md")]
    mod special_functions {}
    #[doc = include_str!("../../../book/src/free-energy.md")]
    mod free_energy {}
    #[doc = include_str!("../../../book/src/asymptotics.md")]
    mod asymptotics {}
    #[doc = include_str!("../../../book/src/nuclear.md")]
    mod nuclear {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
