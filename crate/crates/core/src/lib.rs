//! Shotgun assembly for Linial–Meshulam random simplicial complexes.
//!
//! A complex here has vertices `{1..n}`, every simplex of dimension below `d`,
//! and a chosen set of `d`-faces. The crate samples such complexes, cuts them
//! into anonymised 1-neighbourhoods of their `(d-1)`-simplices, and rebuilds
//! the complex by matching canonical forms of common-neighbour fingerprints.
//!
//! ```
//! use lm_shotgun::{reconstruct, sampler::{sample_lm, LmParams}};
//!
//! let params = LmParams::with_alpha(60, 1, 0.25, 7)?;
//! let x = sample_lm(&params);
//! let coll = reconstruct::extract_collection(&x, 99);
//! let (y, report) = reconstruct::reconstruct(&coll)?;
//! // No true face is ever lost; extra faces always show up in the report.
//! assert!(x.faces().iter().all(|f| y.faces().contains(f)));
//! assert_eq!(report.is_clean(), reconstruct::verify_exact(&x, &y)?);
//! # Ok::<(), lm_shotgun::Error>(())
//! ```

pub mod analysis;
pub mod complex;
pub mod error;
pub mod fragment;
pub mod iso;
pub mod ops;
pub mod reconstruct;
pub mod sampler;
pub mod simplex;

pub use complex::{Complex, FaceOracle};
pub use error::{Error, Result};
pub use fragment::Fragment;
pub use iso::{canonical_form, is_isomorphic, CanonicalForm};
pub use simplex::Simplex;

/// Version tag written into every serialised artifact.
pub const FORMAT_VERSION: u32 = 1;

/// The guide's chapters and the README, compiled so their snippets run as
/// doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/canonical-forms.md")]
    mod canonical_forms {}
    #[doc = include_str!("../../../book/src/reconstruction.md")]
    mod reconstruction {}
    #[doc = include_str!("../../../book/src/checks.md")]
    mod checks {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
