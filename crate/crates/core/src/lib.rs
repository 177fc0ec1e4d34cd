//! Calogero-Moser families, cellular characters and cells for small complex
//! reflection groups.

pub mod characters;
pub mod config;
pub mod cyclotomic;
pub mod dunkl;
pub mod error;
pub mod families;
pub mod gaudin;
pub mod groups;
pub mod info;
pub mod linalg_exact;
pub mod mpoly;
pub mod params;
pub mod poly;
pub mod reps;
pub mod series;
pub mod verify;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use groups::{GroupKind, ReflectionGroup};
pub use params::{ParamC, ParamK};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cyclotomics.md")]
    mod cyclotomics {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/parameters.md")]
    mod parameters {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/gaudin.md")]
    mod gaudin {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
