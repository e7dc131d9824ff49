//! Atom-atom entanglement induced by a two-mode thermal field: the
//! brute-force oracle, CSV sweeps, figure presets and the command-line front
//! end built on top of [`twophoton_core`].

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod oracle;
pub mod sweep;

pub use error::{Error, Result};
pub use sweep::{
    compute_sweep, run_figure, run_figure_on, run_oracle_compare, run_sweep, CompareReport, FigureCurve, Sweep,
    SweepRequest, SweepRow,
};
pub use twophoton_core;
