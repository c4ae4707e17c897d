//! Thermodynamic entanglement witnesses for the free Bose gas in a
//! d-dimensional box.
//!
//! The crate computes the energy floor that every spatially separable state
//! of the gas must respect, the temperature below which a thermal state is
//! necessarily entangled, and compares both against Bose-Einstein
//! condensation. Every closed form is paired with an independent numerical
//! check in [`oracle`].
//!
//! ```
//! use thermowit::{constants, gas::GasSpec, witness};
//!
//! let sodium = constants::lookup_species("sodium-23").unwrap();
//! let spec = GasSpec::new(3, 1e-5, sodium.mass, 7e5).unwrap();
//! let estimate = witness::max_witnessed_partition(&spec, 2e-5).unwrap();
//! assert_eq!(estimate.nearest, 185);
//! ```

// `!(x > 0.0)` is how inputs reject NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod gas;
pub mod oracle;
pub mod special;
pub mod witness;

pub use error::{Error, Result};
