//! Independent numerical checks of the witness derivation.
//!
//! Nothing here reuses the closed forms in [`crate::witness`]: energies come
//! from eigen-solves of a finite-difference kinetic operator, separable
//! minima from brute-force search, and transition temperatures from root
//! finding on the internal energy.

mod crossing;
mod grid;
mod separable;
mod spectrum;
pub mod tridiag;

pub use crossing::{crossing_temperature, crossing_temperature_within, Crossings, SEARCH_BRACKET};
pub use grid::{DiscreteBox, MIN_POINTS};
pub use separable::{
    for_each_split, separable_minimum_bruteforce, witness_gap_demo, SeparableSearch, WitnessGap,
    DESK_SCALE_LIMIT,
};
pub use spectrum::{box_spectrum, subbox_ground_energy, SpectrumResult, RESIDUAL_TOLERANCE};
