//! Exact Morse complexes with differential graded and A∞ coefficients.
//!
//! The crate assembles enriched Morse complexes `F ⊗ ℤCrit(f)` from finite
//! algebraic data (a truncated DGA, coefficient modules, twisting cocycles),
//! validates every structure equation, and computes homology, chain maps,
//! the DG Chas–Sullivan product and the filtration spectral sequence.
//!
//! ```
//! use dgmorse::catalog;
//! use dgmorse::ring::{Laurent, Rationals};
//!
//! let scene = catalog::circle_path(12);
//! let c = scene.complex("C").unwrap();
//! let h = c.complex.homology().unwrap();
//! let ring = Laurent::new(Rationals);
//! assert_eq!(h.degree(0).unwrap().describe(&ring), "Laurent/(-1 + t)");
//! ```

pub mod catalog;
pub mod cocycle;
pub mod complex;
pub mod dga;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod maps;
pub mod module;
pub mod product;
pub mod random;
pub mod report;
pub mod ring;
pub mod scene;
pub mod spectral;
pub mod words;

pub use error::{Error, Result};
