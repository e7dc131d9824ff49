//! Domain types shared by every other module.
//!
//! Atomic basis ordering is fixed throughout the crate: index 0 is |+,+⟩,
//! 1 is |+,−⟩, 2 is |−,+⟩ and 3 is |−,−⟩, where `+` is the excited state and
//! `−` the ground state of a single atom.

use core::ops::{Add, AddAssign, Mul};

use crate::{Error, Result};

/// Physical configuration of the atom-field system.
///
/// Time enters only through the dimensionless product `g·t`, so `g` is kept
/// for completeness and defaults to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Atom-field coupling constant.
    pub g: f64,
    /// Mean thermal photon number of mode 1.
    pub nbar1: f64,
    /// Mean thermal photon number of mode 2.
    pub nbar2: f64,
}

impl ModelParams {
    pub const fn new(g: f64, nbar1: f64, nbar2: f64) -> Self {
        Self { g, nbar1, nbar2 }
    }

    /// Unit coupling with both modes at the same mean photon number.
    pub const fn symmetric(nbar: f64) -> Self {
        Self::new(1.0, nbar, nbar)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.g.is_finite() {
            return Err(Error::invalid("g", "finite"));
        }
        if self.g <= 0.0 {
            return Err(Error::invalid("g", "> 0"));
        }
        for (field, v) in [("nbar1", self.nbar1), ("nbar2", self.nbar2)] {
            if !v.is_finite() {
                return Err(Error::invalid(field, "finite"));
            }
            if v < 0.0 {
                return Err(Error::invalid(field, "≥ 0"));
            }
        }
        Ok(())
    }

    /// Same parameters with the two modes relabelled.
    pub fn swap_modes(&self) -> Self {
        Self::new(self.g, self.nbar2, self.nbar1)
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        Self::symmetric(0.0)
    }
}

/// Product basis state of the two atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisState {
    /// |+,+⟩, both atoms excited.
    Ee,
    /// |+,−⟩, first atom excited.
    Eg,
    /// |−,+⟩, second atom excited.
    Ge,
    /// |−,−⟩, both atoms in the ground state.
    Gg,
}

impl BasisState {
    pub const ALL: [BasisState; 4] = [BasisState::Ee, BasisState::Eg, BasisState::Ge, BasisState::Gg];

    /// Position in the atomic basis `{|++⟩, |+−⟩, |−+⟩, |−−⟩}`.
    pub const fn index(self) -> usize {
        match self {
            BasisState::Ee => 0,
            BasisState::Eg => 1,
            BasisState::Ge => 2,
            BasisState::Gg => 3,
        }
    }

    /// Whether atom `which` (0 or 1) is excited.
    pub const fn excited(self, which: usize) -> bool {
        let bits = match self {
            BasisState::Ee => [true, true],
            BasisState::Eg => [true, false],
            BasisState::Ge => [false, true],
            BasisState::Gg => [false, false],
        };
        bits[which]
    }
}

/// Initial state of the atoms: one of the four product states, or both atoms
/// independently excited with probability `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialAtomicState {
    Pure(BasisState),
    Mixed(f64),
}

impl InitialAtomicState {
    pub fn validate(&self) -> Result<()> {
        match *self {
            InitialAtomicState::Pure(_) => Ok(()),
            InitialAtomicState::Mixed(lambda) if !lambda.is_finite() => Err(Error::invalid("lambda", "finite")),
            InitialAtomicState::Mixed(lambda) if !(0.0..=1.0).contains(&lambda) => {
                Err(Error::invalid("lambda", "in [0,1]"))
            }
            InitialAtomicState::Mixed(_) => Ok(()),
        }
    }

    /// Diagonal of the initial atomic density matrix. Every admissible
    /// initial state is diagonal in the product basis.
    pub fn populations(&self) -> [f64; 4] {
        match *self {
            InitialAtomicState::Pure(s) => {
                let mut p = [0.0; 4];
                p[s.index()] = 1.0;
                p
            }
            InitialAtomicState::Mixed(l) => [l * l, l * (1.0 - l), l * (1.0 - l), (1.0 - l) * (1.0 - l)],
        }
    }

    /// The initial atomic density matrix as an X-state.
    pub fn x_state(&self) -> XState {
        let [a, b, c, d] = self.populations();
        XState::new(a, b, c, d, 0.0)
    }
}

impl From<BasisState> for InitialAtomicState {
    fn from(s: BasisState) -> Self {
        InitialAtomicState::Pure(s)
    }
}

/// A validated `(params, initial)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Configuration {
    pub params: ModelParams,
    pub initial: InitialAtomicState,
}

/// Checks every parameter invariant and hands the configuration back
/// unchanged.
pub fn validate(params: ModelParams, initial: InitialAtomicState) -> Result<Configuration> {
    params.validate()?;
    initial.validate()?;
    Ok(Configuration { params, initial })
}

/// Reduced two-atom density matrix with the X shape produced by this model:
///
/// ```text
/// | a 0 0 0 |
/// | 0 b e 0 |
/// | 0 e c 0 |
/// | 0 0 0 d |
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct XState {
    /// Population of |+,+⟩.
    pub a: f64,
    /// Population of |+,−⟩.
    pub b: f64,
    /// Population of |−,+⟩.
    pub c: f64,
    /// Population of |−,−⟩.
    pub d: f64,
    /// Real coherence between |+,−⟩ and |−,+⟩.
    pub e: f64,
}

impl XState {
    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Self {
        Self { a, b, c, d, e }
    }

    pub fn projector(s: BasisState) -> Self {
        InitialAtomicState::Pure(s).x_state()
    }

    pub fn trace(&self) -> f64 {
        self.a + self.b + self.c + self.d
    }

    /// Exchanges the roles of the two atoms.
    pub fn swap_atoms(&self) -> Self {
        Self::new(self.a, self.c, self.b, self.d, self.e)
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    /// Largest element-wise absolute difference.
    pub fn max_abs_diff(&self, other: &XState) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .fold(0.0, |m, (x, y)| f64::max(m, (x - y).abs()))
    }
}

impl Add for XState {
    type Output = XState;
    fn add(self, o: XState) -> XState {
        XState::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, self.e + o.e)
    }
}

impl AddAssign for XState {
    fn add_assign(&mut self, o: XState) {
        *self = *self + o;
    }
}

impl Mul<XState> for f64 {
    type Output = XState;
    fn mul(self, x: XState) -> XState {
        XState::new(self * x.a, self * x.b, self * x.c, self * x.d, self * x.e)
    }
}

/// Uniform grid of dimensionless times `g·t`, both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t_max: f64, steps: usize) -> Result<Self> {
        if !t_max.is_finite() || t_max <= 0.0 {
            return Err(Error::invalid("tmax", "finite and > 0"));
        }
        if steps == 0 {
            return Err(Error::invalid("steps", "≥ 1"));
        }
        Ok(Self { t_max, steps })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Number of samples, `steps + 1`.
    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sample(&self, k: usize) -> f64 {
        if k == self.steps {
            self.t_max
        } else {
            self.t_max * k as f64 / self.steps as f64
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.len()).map(move |k| self.sample(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn accepts_valid_configuration() {
        let cfg = validate(ModelParams::symmetric(1.0), BasisState::Eg.into()).unwrap();
        assert_eq!(cfg.params, ModelParams::symmetric(1.0));
    }

    #[test]
    fn rejects_negative_nbar1() {
        let err = validate(ModelParams::new(1.0, -0.1, 1.0), BasisState::Gg.into()).unwrap_err();
        assert_eq!(err.to_string(), "nbar1 must be ≥ 0");
    }

    #[test]
    fn rejects_lambda_out_of_range() {
        let err = validate(ModelParams::symmetric(1.0), InitialAtomicState::Mixed(1.5)).unwrap_err();
        assert_eq!(err.to_string(), "lambda must be in [0,1]");
    }

    #[test]
    fn rejects_bad_coupling_and_non_finite() {
        let bad = [
            (ModelParams::new(0.0, 1.0, 1.0), "g"),
            (ModelParams::new(-1.0, 1.0, 1.0), "g"),
            (ModelParams::new(f64::NAN, 1.0, 1.0), "g"),
            (ModelParams::new(1.0, 1.0, f64::INFINITY), "nbar2"),
            (ModelParams::new(1.0, f64::NAN, 1.0), "nbar1"),
        ];
        for (p, field) in bad {
            match validate(p, BasisState::Ee.into()) {
                Err(Error::InvalidParameter { field: f, .. }) => assert_eq!(f, field),
                other => panic!("{p:?}: {other:?}"),
            }
        }
        assert!(validate(ModelParams::symmetric(1.0), InitialAtomicState::Mixed(f64::NAN)).is_err());
    }

    #[test]
    fn validation_is_idempotent() {
        let cfg = validate(ModelParams::new(2.0, 0.3, 1.0), InitialAtomicState::Mixed(0.05)).unwrap();
        assert_eq!(validate(cfg.params, cfg.initial).unwrap(), cfg);
    }

    #[test]
    fn mixed_populations_factorize() {
        let p = InitialAtomicState::Mixed(0.05).populations();
        let want = [0.0025, 0.0475, 0.0475, 0.9025];
        for (x, y) in p.iter().zip(want) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn grid_includes_both_endpoints() {
        let g = TimeGrid::new(10.0, 1000).unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g.sample(0), 0.0);
        assert_eq!(g.sample(1000), 10.0);
        assert_eq!(g.sample(500), 5.0);
        assert!(TimeGrid::new(0.0, 5).is_err());
        assert!(TimeGrid::new(1.0, 0).is_err());
    }
}
