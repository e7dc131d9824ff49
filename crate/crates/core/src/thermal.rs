//! Thermal photon statistics of a single cavity mode and the truncation of
//! the infinite Fock sums.

use alloc::vec::Vec;

use crate::model::ModelParams;
use crate::sum::CompensatedSum;
use crate::{Error, Result};

/// Largest Fock index `choose_cutoff` will consider before giving up.
pub const MAX_CUTOFF: usize = 1 << 22;

/// Bose-Einstein occupation probability `nbarⁿ / (1+nbar)ⁿ⁺¹`.
pub fn thermal_weight(nbar: f64, n: usize) -> f64 {
    if nbar == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let q = ratio(nbar);
    let qn = match i32::try_from(n) {
        Ok(k) => q.powi(k),
        Err(_) => q.powf(n as f64),
    };
    qn / (1.0 + nbar)
}

/// Common ratio `p_{n+1}/p_n` of the thermal distribution.
pub fn ratio(nbar: f64) -> f64 {
    nbar / (1.0 + nbar)
}

/// Mean photon number of a mode in equilibrium, given the dimensionless
/// ratio `x = ħω / k_B T`.
pub fn mean_from_temperature(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::NonPositiveRatio(x));
    }
    Ok(1.0 / x.exp_m1())
}

/// Power of `(n + 2)` weighting the tail that a cutoff must control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MomentOrder {
    Zero,
    One,
    /// Covers every summand family of the closed-form elements, whose
    /// prefactors grow at most like `n²` per mode.
    #[default]
    Two,
}

impl MomentOrder {
    pub const fn exponent(self) -> i32 {
        match self {
            MomentOrder::Zero => 0,
            MomentOrder::One => 1,
            MomentOrder::Two => 2,
        }
    }
}

/// Cutoff for a single mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCutoff {
    /// Highest retained Fock index.
    pub n_max: usize,
    /// Upper bound on `Σ_{n > n_max} p_n (n+2)^k`.
    pub tail: f64,
}

/// Smallest `N` whose weighted tail `Σ_{n>N} p_n (n+2)^k` is below `tol`.
pub fn choose_cutoff(nbar: f64, tol: f64, moment: MomentOrder) -> Result<ModeCutoff> {
    if !(tol > 0.0) {
        return Err(Error::NonPositiveTolerance(tol));
    }
    if nbar == 0.0 {
        return Ok(ModeCutoff { n_max: 0, tail: 0.0 });
    }
    if moment == MomentOrder::Zero {
        let q = ratio(nbar);
        let mut tail = q;
        for n_max in 0..MAX_CUTOFF {
            if tail < tol {
                return Ok(ModeCutoff { n_max, tail });
            }
            tail *= q;
        }
        return Err(Error::CutoffOverflow { limit: MAX_CUTOFF });
    }
    let tails = WeightedTails::new(nbar, moment, tol * 1e-6)?;
    (0..tails.len())
        .map(|n_max| ModeCutoff {
            n_max,
            tail: tails.tail_after(n_max),
        })
        .find(|c| c.tail < tol)
        .ok_or(Error::CutoffOverflow { limit: MAX_CUTOFF })
}

/// Upper bound on the weighted tail beyond a given cutoff.
pub fn tail_bound(nbar: f64, n_max: usize, moment: MomentOrder) -> f64 {
    if nbar == 0.0 {
        return 0.0;
    }
    if moment == MomentOrder::Zero {
        return ratio(nbar).powf(n_max as f64 + 1.0);
    }
    // Resolve the remainder well below the size of the tail being bounded.
    let scale = tail_scale(nbar, n_max);
    match WeightedTails::new(nbar, moment, scale * 1e-9) {
        Ok(t) if n_max < t.len() => t.tail_after(n_max),
        Ok(t) => t.remainder,
        Err(_) => f64::INFINITY,
    }
}

fn tail_scale(nbar: f64, n_max: usize) -> f64 {
    let s = thermal_weight(nbar, n_max + 1);
    if s > 0.0 {
        s
    } else {
        f64::MIN_POSITIVE
    }
}

/// Terms `p_n (n+2)^k` up to an index `M` past which a geometric majorant
/// bounds everything that remains.
struct WeightedTails {
    terms: Vec<f64>,
    /// Upper bound on `Σ_{n ≥ M} p_n (n+2)^k`, with `M = terms.len()`.
    remainder: f64,
}

impl WeightedTails {
    fn new(nbar: f64, moment: MomentOrder, resolution: f64) -> Result<Self> {
        let q = ratio(nbar);
        let k = moment.exponent();
        let weight = |n: usize| thermal_weight(nbar, n) * ((n + 2) as f64).powi(k);
        let mut terms = Vec::new();
        for n in 0..MAX_CUTOFF {
            let t = weight(n);
            terms.push(t);
            // t_{m+1}/t_m = q((m+3)/(m+2))^k decreases in m, so for every
            // m ≥ n it is at most rho.
            let rho = q * ((n + 3) as f64 / (n + 2) as f64).powi(k);
            if rho < 1.0 {
                let remainder = t * rho / (1.0 - rho);
                if remainder < resolution {
                    return Ok(Self { terms, remainder });
                }
            }
        }
        Err(Error::CutoffOverflow { limit: MAX_CUTOFF })
    }

    fn len(&self) -> usize {
        self.terms.len()
    }

    /// Bound on `Σ_{n > n_max} p_n (n+2)^k` for `n_max < len()`.
    fn tail_after(&self, n_max: usize) -> f64 {
        let mut s = CompensatedSum::new();
        s.add(self.remainder);
        for &t in self.terms[n_max + 1..].iter().rev() {
            s.add(t);
        }
        s.value()
    }
}

/// Pair of per-mode cutoffs for the double Fock sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockCutoff {
    pub n_max1: usize,
    pub n_max2: usize,
    /// Bound on the neglected thermal weight; the sum of the two per-mode
    /// tails.
    pub tail_bound: f64,
}

impl FockCutoff {
    /// Cutoffs whose combined second-moment tail is below `tol`.
    pub fn for_params(params: &ModelParams, tol: f64) -> Result<Self> {
        Self::with_moment(params, tol, MomentOrder::Two)
    }

    pub fn with_moment(params: &ModelParams, tol: f64, moment: MomentOrder) -> Result<Self> {
        let m1 = choose_cutoff(params.nbar1, tol / 2.0, moment)?;
        let m2 = choose_cutoff(params.nbar2, tol / 2.0, moment)?;
        Ok(Self {
            n_max1: m1.n_max,
            n_max2: m2.n_max,
            tail_bound: m1.tail + m2.tail,
        })
    }

    /// Explicit cutoffs; the tail bound is computed for the given
    /// parameters.
    pub fn fixed(params: &ModelParams, n_max1: usize, n_max2: usize) -> Self {
        Self {
            n_max1,
            n_max2,
            tail_bound: tail_bound(params.nbar1, n_max1, MomentOrder::Two)
                + tail_bound(params.nbar2, n_max2, MomentOrder::Two),
        }
    }

    /// Thermal probability mass of the retained `(n1, n2)` rectangle.
    pub fn retained_mass(&self, params: &ModelParams) -> f64 {
        let q1 = ratio(params.nbar1);
        let q2 = ratio(params.nbar2);
        (1.0 - q1.powf(self.n_max1 as f64 + 1.0)) * (1.0 - q2.powf(self.n_max2 as f64 + 1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_examples() {
        assert_eq!(thermal_weight(1.0, 0), 0.5);
        assert_eq!(thermal_weight(0.0, 3), 0.0);
        assert_eq!(thermal_weight(0.0, 0), 1.0);
        assert!((thermal_weight(0.3, 1) - 0.3 / 1.69).abs() < 1e-15);
        assert!((thermal_weight(0.3, 1) - 0.177514793).abs() < 1e-9);
    }

    #[test]
    fn vacuum_cutoff_is_zero() {
        for m in [MomentOrder::Zero, MomentOrder::One, MomentOrder::Two] {
            assert_eq!(choose_cutoff(0.0, 1e-12, m).unwrap(), ModeCutoff { n_max: 0, tail: 0.0 });
        }
    }

    #[test]
    fn geometric_tail_cutoff() {
        let c = choose_cutoff(1.0, 1e-6, MomentOrder::Zero).unwrap();
        assert_eq!(c.n_max, 19);
        assert_eq!(c.tail, 2f64.powi(-20));
    }

    #[test]
    fn rejects_non_positive_tolerance() {
        assert_eq!(choose_cutoff(1.0, 0.0, MomentOrder::Zero), Err(Error::NonPositiveTolerance(0.0)));
        assert!(choose_cutoff(1.0, -1.0, MomentOrder::Two).is_err());
        assert!(choose_cutoff(1.0, f64::NAN, MomentOrder::Two).is_err());
    }

    #[test]
    fn temperature_map() {
        assert!((mean_from_temperature(core::f64::consts::LN_2).unwrap() - 1.0).abs() < 1e-15);
        assert!(mean_from_temperature(100.0).unwrap() < 1e-40);
        assert!((mean_from_temperature((13.0f64 / 3.0).ln()).unwrap() - 0.3).abs() < 1e-14);
        assert!(mean_from_temperature(0.0).is_err());
        assert!(mean_from_temperature(-2.0).is_err());
    }

    #[test]
    fn fock_cutoff_tail_is_below_tolerance() {
        let p = ModelParams::new(1.0, 0.3, 1.0);
        let c = FockCutoff::for_params(&p, 1e-10).unwrap();
        assert!(c.tail_bound < 1e-10);
        assert!(c.n_max1 < c.n_max2);
        let f = FockCutoff::fixed(&p, c.n_max1, c.n_max2);
        assert!(f.tail_bound < 1e-10);
    }
}
