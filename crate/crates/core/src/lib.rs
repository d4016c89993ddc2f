pub mod error;
pub mod exactalg;
pub mod groups;
pub mod homology;
pub mod lattices;
pub mod phases;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/phases.md")]
    mod phases {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/dihedral.md")]
    mod dihedral {}
    #[doc = include_str!("../../../book/src/extinctions.md")]
    mod extinctions {}
    #[doc = include_str!("../../../book/src/products.md")]
    mod products {}
}
