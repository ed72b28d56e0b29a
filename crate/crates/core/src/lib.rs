//! Exact enumerative counts for nodal curves on K3 surfaces.
//!
//! - [`qseries`]: truncated integer power series and eta products
//!   `prod (1 - q^m)^k`, including the Yau-Zaslow and partition series.
//! - [`admissible`]: admissible and 1-admissible sequences, the Young-diagram
//!   diagonal bijection, and the 48-fold fixed-fiber count.
//! - [`chow`]: the graded ring `Q[x, theta]` on a symmetric product, Chern
//!   classes of the secant bundle, and the degeneracy-locus genus.
//! - [`bounds`]: the Severi-curve genus lower bound and its growth fit.
//! - [`verify`]: cross-checks between independent routes.

pub mod admissible;
pub mod bounds;
pub mod chow;
pub mod qseries;
pub mod verify;

pub use admissible::{AdmissibleError, AdmissibleSeq, Partition};
pub use bounds::{AsymptoticFit, BoundReport, BoundsError};
pub use chow::{BundleData, ChowError, GradedClass};
pub use qseries::{QSeries, QSeriesError};
