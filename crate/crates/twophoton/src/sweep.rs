//! Time sweeps, figure presets and the closed-form versus oracle comparison.
//!
//! Sweeps are written as CSV: `#`-prefixed provenance lines, the header
//! `gt,A,B,C,D,E,epsilon`, then one row per grid sample in grid order. Numbers
//! use the shortest decimal form that round-trips, so output is
//! byte-identical for identical requests.

use std::fmt;

use rayon::prelude::*;
use twophoton_core::{
    evolve, negativity_general, negativity_x, validate, BasisState, FockCutoff, InitialAtomicState, ModelParams,
    TimeGrid, XState,
};

use crate::error::{Error, Result};
use crate::oracle::{FockSpace, Propagator, HEADROOM, MAX_ORACLE_CUTOFF};

pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

/// Oracle truncation used when none is given.
pub const DEFAULT_ORACLE_CUTOFF: usize = 12;

/// Largest deviation `check` accepts between the two paths.
pub const CHECK_TOLERANCE: f64 = 1e-8;

pub const CSV_HEADER: &str = "gt,A,B,C,D,E,epsilon";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub initial: InitialAtomicState,
    pub params: ModelParams,
    pub grid: TimeGrid,
    pub tail_tol: f64,
    /// Closed form: highest retained Fock index per mode. Oracle: truncation
    /// of the joint space, with initial photon numbers up to `N − 2`.
    pub cutoff_override: Option<(usize, usize)>,
    pub oracle: bool,
}

impl SweepRequest {
    pub fn new(initial: InitialAtomicState, params: ModelParams, grid: TimeGrid) -> Self {
        Self {
            initial,
            params,
            grid,
            tail_tol: DEFAULT_TAIL_TOL,
            cutoff_override: None,
            oracle: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate(self.params, self.initial)?;
        if !(self.tail_tol > 0.0) {
            return Err(twophoton_core::Error::NonPositiveTolerance(self.tail_tol).into());
        }
        Ok(())
    }

    /// Fock cutoff of the closed-form sums.
    pub fn cutoff(&self) -> Result<FockCutoff> {
        Ok(match self.cutoff_override {
            Some((n1, n2)) => FockCutoff::fixed(&self.params, n1, n2),
            None => FockCutoff::for_params(&self.params, self.tail_tol)?,
        })
    }

    /// Truncation of the oracle space, and the matching closed-form cutoff
    /// over the same retained Fock set.
    pub fn oracle_cutoffs(&self) -> Result<(FockSpace, FockCutoff)> {
        let (n1, n2) = self.cutoff_override.unwrap_or((DEFAULT_ORACLE_CUTOFF, DEFAULT_ORACLE_CUTOFF));
        if n1 > MAX_ORACLE_CUTOFF || n2 > MAX_ORACLE_CUTOFF {
            return Err(Error::OracleCutoff { n1, n2 });
        }
        if n1 < HEADROOM || n2 < HEADROOM {
            return Err(Error::OracleTooSmall { n1, n2, headroom: HEADROOM });
        }
        let retained = FockCutoff::fixed(&self.params, n1 - HEADROOM, n2 - HEADROOM);
        Ok((FockSpace::new(n1, n2), retained))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub gt: f64,
    pub state: XState,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub request: SweepRequest,
    pub cutoff: FockCutoff,
    /// Set when the rows come from the oracle.
    pub oracle_space: Option<FockSpace>,
    pub rows: Vec<SweepRow>,
    /// Extra provenance lines, written after the standard ones.
    pub notes: Vec<String>,
}

pub fn compute_sweep(req: &SweepRequest) -> Result<Sweep> {
    req.validate()?;
    let times: Vec<f64> = req.grid.iter().collect();
    if req.oracle {
        let (space, cutoff) = req.oracle_cutoffs()?;
        let states = Propagator::new(space, req.params.g).thermal_reduce(req.initial, &req.params, &times);
        let rows = times
            .iter()
            .zip(states)
            .map(|(&gt, s)| SweepRow {
                gt,
                state: s.x_part(),
                epsilon: negativity_general(&s),
            })
            .collect();
        return Ok(Sweep {
            request: req.clone(),
            cutoff,
            oracle_space: Some(space),
            rows,
            notes: Vec::new(),
        });
    }
    let cutoff = req.cutoff()?;
    let rows = times
        .par_iter()
        .map(|&gt| {
            let state = evolve(req.initial, &req.params, gt, &cutoff);
            SweepRow {
                gt,
                state,
                epsilon: negativity_x(&state),
            }
        })
        .collect();
    Ok(Sweep {
        request: req.clone(),
        cutoff,
        oracle_space: None,
        rows,
        notes: Vec::new(),
    })
}

pub fn run_sweep(req: &SweepRequest) -> Result<String> {
    Ok(compute_sweep(req)?.to_csv())
}

/// Lower-case flag spelling of an initial state.
pub fn initial_label(initial: &InitialAtomicState) -> &'static str {
    match initial {
        InitialAtomicState::Pure(BasisState::Ee) => "ee",
        InitialAtomicState::Pure(BasisState::Eg) => "eg",
        InitialAtomicState::Pure(BasisState::Ge) => "ge",
        InitialAtomicState::Pure(BasisState::Gg) => "gg",
        InitialAtomicState::Mixed(_) => "mixed",
    }
}

impl Sweep {
    pub fn max_epsilon(&self) -> f64 {
        self.rows.iter().map(|r| r.epsilon).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        self.write_csv(&mut out).expect("writing to a String cannot fail");
        out
    }

    pub fn write_csv<W: fmt::Write>(&self, w: &mut W) -> fmt::Result {
        let req = &self.request;
        let lambda = match req.initial {
            InitialAtomicState::Mixed(l) => l.to_string(),
            InitialAtomicState::Pure(_) => "-".to_string(),
        };
        writeln!(
            w,
            "# initial={} lambda={} nbar1={} nbar2={} g={}",
            initial_label(&req.initial),
            lambda,
            req.params.nbar1,
            req.params.nbar2,
            req.params.g
        )?;
        match self.oracle_space {
            Some(s) => writeln!(w, "# path=oracle space_cutoff={},{} headroom={HEADROOM}", s.n_max1, s.n_max2)?,
            None => writeln!(w, "# path=closed-form tail_tol={}", req.tail_tol)?,
        }
        writeln!(
            w,
            "# fock_cutoff={},{} tail_bound={}",
            self.cutoff.n_max1, self.cutoff.n_max2, self.cutoff.tail_bound
        )?;
        writeln!(w, "# grid=[0,{}] steps={}", req.grid.t_max(), req.grid.steps())?;
        for note in &self.notes {
            writeln!(w, "# {note}")?;
        }
        writeln!(w, "{CSV_HEADER}")?;
        for r in &self.rows {
            let x = &r.state;
            writeln!(w, "{},{},{},{},{},{},{}", r.gt, x.a, x.b, x.c, x.d, x.e, r.epsilon)?;
        }
        Ok(())
    }
}

/// One curve of a figure preset.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureCurve {
    /// Suggested file name.
    pub name: String,
    pub sweep: Sweep,
}

pub const FIGURE_TMAX: f64 = 10.0;
pub const FIGURE_STEPS: usize = 1000;

/// The `(file name, initial state, params)` curves of a figure preset.
pub fn figure_curves(preset: u8) -> Result<Vec<(String, InitialAtomicState, ModelParams)>> {
    let intensities = [0.3, 1.0];
    Ok(match preset {
        1 | 2 => {
            let (tag, s) = if preset == 1 { ("eg", BasisState::Eg) } else { ("gg", BasisState::Gg) };
            intensities
                .iter()
                .map(|&n| (format!("fig{preset}_{tag}_nbar{n}.csv"), s.into(), ModelParams::symmetric(n)))
                .collect()
        }
        3 => [0.01, 0.05]
            .iter()
            .map(|&l| {
                (
                    format!("fig3_mixed_lambda{l}.csv"),
                    InitialAtomicState::Mixed(l),
                    ModelParams::symmetric(1.0),
                )
            })
            .collect(),
        other => return Err(Error::Usage(format!("unknown figure preset {other}; expected 1, 2 or 3"))),
    })
}

/// Curves of a figure preset on the given grid (the default is
/// `gt ∈ [0, 10]` with 1000 steps).
pub fn run_figure_on(preset: u8, grid: TimeGrid) -> Result<Vec<FigureCurve>> {
    figure_curves(preset)?
        .into_iter()
        .map(|(name, initial, params)| {
            let mut sweep = compute_sweep(&SweepRequest::new(initial, params, grid))?;
            sweep.notes.push(format!("figure preset {preset}"));
            Ok(FigureCurve { name, sweep })
        })
        .collect()
}

pub fn run_figure(preset: u8) -> Result<Vec<FigureCurve>> {
    let grid = TimeGrid::new(FIGURE_TMAX, FIGURE_STEPS).expect("default grid is valid");
    run_figure_on(preset, grid)
}

/// Largest deviations between the closed form and the oracle over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub space: FockSpace,
    pub cutoff: FockCutoff,
    pub samples: usize,
    /// Per element `A, B, C, D, E`.
    pub element_dev: [f64; 5],
    /// Largest oracle entry outside the X pattern.
    pub off_x: f64,
    pub epsilon_dev: f64,
    pub max_epsilon_closed: f64,
    pub max_epsilon_oracle: f64,
}

impl CompareReport {
    pub fn max_deviation(&self) -> f64 {
        self.element_dev
            .iter()
            .copied()
            .chain([self.off_x, self.epsilon_dev])
            .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_deviation() < CHECK_TOLERANCE
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "oracle space cutoff {},{}; retained Fock cutoff {},{}; {} samples",
            self.space.n_max1, self.space.n_max2, self.cutoff.n_max1, self.cutoff.n_max2, self.samples
        )?;
        for (name, d) in ["A", "B", "C", "D", "E"].iter().zip(self.element_dev) {
            writeln!(f, "max |d{name}|       = {d:.3e}")?;
        }
        writeln!(f, "max off-X        = {:.3e}", self.off_x)?;
        writeln!(f, "max |d epsilon|  = {:.3e}", self.epsilon_dev)?;
        writeln!(f, "max epsilon      = {:.6e} (closed form), {:.6e} (oracle)", self.max_epsilon_closed, self.max_epsilon_oracle)?;
        write!(
            f,
            "{}: max deviation {:.3e} (tolerance {CHECK_TOLERANCE:e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.max_deviation()
        )
    }
}

/// Runs both paths on the same retained Fock set.
pub fn run_oracle_compare(req: &SweepRequest) -> Result<CompareReport> {
    req.validate()?;
    let (space, cutoff) = req.oracle_cutoffs()?;
    let times: Vec<f64> = req.grid.iter().collect();
    let oracle = Propagator::new(space, req.params.g).thermal_reduce(req.initial, &req.params, &times);
    let mut report = CompareReport {
        space,
        cutoff,
        samples: times.len(),
        element_dev: [0.0; 5],
        off_x: 0.0,
        epsilon_dev: 0.0,
        max_epsilon_closed: 0.0,
        max_epsilon_oracle: 0.0,
    };
    for (&gt, o) in times.iter().zip(&oracle) {
        let closed = evolve(req.initial, &req.params, gt, &cutoff);
        for (dev, (c, x)) in report.element_dev.iter_mut().zip(closed.as_array().iter().zip(o.x_part().as_array())) {
            *dev = dev.max((c - x).abs());
        }
        report.off_x = report.off_x.max(o.off_x_magnitude());
        let (ec, eo) = (negativity_x(&closed), negativity_general(o));
        report.epsilon_dev = report.epsilon_dev.max((ec - eo).abs());
        report.max_epsilon_closed = report.max_epsilon_closed.max(ec);
        report.max_epsilon_oracle = report.max_epsilon_oracle.max(eo);
    }
    Ok(report)
}
