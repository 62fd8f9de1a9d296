//! Bar codes, Jordan blocks and configurations of circle-valued and
//! real-valued maps, computed with exact arithmetic.

pub mod complex;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod invariants;
pub mod io;
pub mod measures;
pub mod pipeline;
pub mod quiver;
pub mod relation;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/configurations.md")]
    mod configurations {}
    #[doc = include_str!("../../../book/src/measures.md")]
    mod measures {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
