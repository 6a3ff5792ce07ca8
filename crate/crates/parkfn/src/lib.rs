//! Parking-function variants: simulation, exact counting, and brute-force
//! verification.
//!
//! A street has `n` spots and `n` cars arrive in order.  Each variant gives
//! car `i` some preference structure — a single favored spot, a set of
//! acceptable spots, an interval, or an ordered list — and a deterministic
//! rule for choosing among the free acceptable spots.  A preference family
//! *parks* when every car finds a spot, and the resulting assignment of cars
//! to spots is the *outcome* permutation.
//!
//! - [`permstat`]: permutation statistics the counting formulas consume.
//! - [`simulator`]: the deterministic parking processes.
//! - [`counting`]: closed-form totals and per-outcome counts.
//! - [`oracle`]: exhaustive enumeration for small `n`.
//! - [`verify`]: formula-versus-oracle check suites with JSON reports.

pub mod cli;
pub mod counting;
pub mod error;
pub mod oracle;
pub mod permstat;
pub mod simulator;
pub mod verify;

pub use counting::BigCount;
pub use error::{Error, Result};
pub use permstat::Permutation;
