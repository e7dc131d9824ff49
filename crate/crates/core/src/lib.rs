//! Two identical two-level atoms coupled to a two-mode thermal field through a
//! nondegenerate two-photon interaction.
//!
//! The crate computes the reduced two-atom density matrix in closed form, one
//! invariant three-level Fock block at a time, averages it over the thermal
//! photon statistics of both modes, and measures the resulting atom-atom
//! entanglement through the negativity of the partial transpose.
//!
//! Everything here is pure arithmetic and runs without `std`. The brute-force
//! cross-check, CSV output and command-line front end live in the `twophoton`
//! crate.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod dynamics;
pub mod error;
pub mod model;
pub mod negativity;
pub mod sum;
pub mod thermal;

pub use dynamics::{evolve, evolve_mixed, evolve_pure, fock_term, rabi, BlockFactors};
pub use error::Error;
pub use model::{validate, BasisState, Configuration, InitialAtomicState, ModelParams, TimeGrid, XState};
pub use negativity::{negativity_general, negativity_x, GeneralTwoQubitState, Subsystem};
pub use thermal::{choose_cutoff, mean_from_temperature, thermal_weight, FockCutoff, ModeCutoff, MomentOrder};

pub type Result<T, E = Error> = core::result::Result<T, E>;
