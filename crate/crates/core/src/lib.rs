//! Exact finite-dimensional p-adic Hilbert spaces, non-Archimedean
//! biorthogonal systems, and checkers for their uncertainty inequalities.
//!
//! All arithmetic is over ℚ with the p-adic absolute value kept symbolic as
//! a power of `p`, so every comparison is exact.
//!
//! ```
//! # fn main() -> Result<(), padic_gj::Error> {
//! use padic_gj::generator::random_onb_pair;
//! use padic_gj::uncertainty::check_uncertainty;
//! use padic_gj::{IndexSubset, PVector, Prime};
//!
//! let p = Prime::new(7)?;
//! let (tau, omega) = random_onb_pair(&p, 3, 42)?;
//! let m = IndexSubset::from_one_based(3, &[1])?;
//! let n = IndexSubset::empty(3);
//! let report = check_uncertainty(&tau, &omega, &m, &n, &PVector::unit(p, 3, 0))?;
//! assert!(report.holds);
//! # Ok(())
//! # }
//! ```

pub mod banach;
pub mod cli;
pub mod error;
pub mod generator;
pub mod instance;
pub mod linalg;
pub mod onb;
pub mod rational;
pub mod uncertainty;

pub use banach::BiorthogonalSystem;
pub use error::{Error, Violation};
pub use linalg::{PMatrix, PVector};
pub use onb::OrthonormalBasis;
pub use rational::{Prime, Rational, UltraNorm, Valuation};
pub use uncertainty::{IndexSubset, UncertaintyReport};
