//! Closed-form evolution of the reduced atomic state.
//!
//! The interaction `g Σᵢ (a₁⁺a₂⁺Rᵢ⁻ + Rᵢ⁺a₁a₂)` splits the joint space into
//! small invariant blocks. For photon numbers `(m1, m2)` the symmetric atomic
//! state `|S⟩ = (|+−⟩+|−+⟩)/√2` couples to
//!
//! ```text
//! |++⟩|m1−1, m2−1⟩  with amplitude  g√2·√(m1·m2)
//! |−−⟩|m1+1, m2+1⟩  with amplitude  g√2·√((m1+1)(m2+1))
//! ```
//!
//! and nothing else, so the block is a three-level system oscillating at the
//! single frequency `Ω_{m1,m2} = g√(2[(m1+1)(m2+1) + m1·m2])`. The
//! antisymmetric state `(|+−⟩−|−+⟩)/√2` is dark. Every initial product state
//! with a definite Fock pair lives in exactly one such block (plus, for
//! `|+−⟩` and `|−+⟩`, the dark state), which yields the element sets below.
//!
//! Sums over the thermal Fock grid run in a fixed order (`n1` outer, `n2`
//! inner, both ascending) with compensated accumulation, so results are
//! reproducible bit for bit.

use crate::model::{BasisState, InitialAtomicState, ModelParams, XState};
use crate::sum::CompensatedSum;
use crate::thermal::{thermal_weight, FockCutoff};

/// Effective Rabi frequency `Ω_{n1,n2}` of the block containing `|S⟩|n1,n2⟩`.
pub fn rabi(n1: usize, n2: usize, g: f64) -> f64 {
    g * unit_rabi(n1, n2)
}

fn unit_rabi(n1: usize, n2: usize) -> f64 {
    let (n1, n2) = (n1 as f64, n2 as f64);
    (2.0 * ((n1 + 1.0) * (n2 + 1.0) + n1 * n2)).sqrt()
}

/// The block functions `Ω`, `S = (g/Ω) sin Ωt` and `C = (2g²/Ω²)(cos Ωt − 1)`
/// evaluated on `|n1, n2⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockFactors {
    pub omega: f64,
    pub s: f64,
    pub c: f64,
    /// `Ω·t`, the block phase.
    pub phase: f64,
}

impl BlockFactors {
    /// Factors at dimensionless time `gt`. Only `omega` depends on `g`.
    pub fn new(n1: usize, n2: usize, g: f64, gt: f64) -> Self {
        let w = unit_rabi(n1, n2);
        let phase = w * gt;
        let half = (0.5 * phase).sin();
        Self {
            omega: g * w,
            s: phase.sin() / w,
            // cos x − 1 = −2 sin²(x/2), without the cancellation near x = 0.
            c: -4.0 * half * half / (w * w),
            phase,
        }
    }
}

/// Reduced atomic state for the initial joint state `|atoms⟩ ⊗ |n1, n2⟩`,
/// before thermal weighting.
pub fn fock_term(initial: BasisState, n1: usize, n2: usize, gt: f64) -> XState {
    match initial {
        BasisState::Eg => one_excited(n1, n2, gt),
        BasisState::Ge => one_excited(n1, n2, gt).swap_atoms(),
        BasisState::Gg => both_ground(n1, n2, gt),
        BasisState::Ee => both_excited(n1, n2, gt),
    }
}

fn one_excited(n1: usize, n2: usize, gt: f64) -> XState {
    let f = BlockFactors::new(n1, n2, 1.0, gt);
    let s2 = f.s * f.s;
    let (cos_half, sin_half) = ((0.5 * f.phase).cos(), (0.5 * f.phase).sin());
    let sin_full = f.phase.sin();
    let (m1, m2) = (n1 as f64, n2 as f64);
    XState {
        a: m1 * m2 * s2,
        b: cos_half.powi(4),
        c: sin_half.powi(4),
        d: (m1 + 1.0) * (m2 + 1.0) * s2,
        e: -0.25 * sin_full * sin_full,
    }
}

fn both_ground(n1: usize, n2: usize, gt: f64) -> XState {
    // Without a photon in each mode nothing can be absorbed; skip before
    // touching the (n1−1, n2−1) block.
    if n1 == 0 || n2 == 0 {
        return XState::projector(BasisState::Gg);
    }
    let f = BlockFactors::new(n1 - 1, n2 - 1, 1.0, gt);
    let (m1, m2) = (n1 as f64, n2 as f64);
    let pair = m1 * m2;
    let sym = pair * f.s * f.s;
    XState {
        a: m1 * (m1 - 1.0) * m2 * (m2 - 1.0) * f.c * f.c,
        b: sym,
        c: sym,
        d: (pair * f.c + 1.0).powi(2),
        e: sym,
    }
}

fn both_excited(n1: usize, n2: usize, gt: f64) -> XState {
    let f = BlockFactors::new(n1 + 1, n2 + 1, 1.0, gt);
    let (m1, m2) = (n1 as f64, n2 as f64);
    let pair = (m1 + 1.0) * (m2 + 1.0);
    let sym = pair * f.s * f.s;
    XState {
        a: (pair * f.c + 1.0).powi(2),
        b: sym,
        c: sym,
        d: pair * (m1 + 2.0) * (m2 + 2.0) * f.c * f.c,
        e: sym,
    }
}

#[derive(Default)]
struct XAccumulator([CompensatedSum; 5]);

impl XAccumulator {
    fn add(&mut self, w: f64, x: XState) {
        for (acc, v) in self.0.iter_mut().zip(x.as_array()) {
            acc.add(w * v);
        }
    }

    fn finish(&self) -> XState {
        let [a, b, c, d, e] = self.0.each_ref().map(CompensatedSum::value);
        XState { a, b, c, d, e }
    }
}

/// Thermal average of [`fock_term`] over the retained Fock rectangle.
///
/// The result is not renormalized: its trace is the retained thermal mass.
pub fn evolve_pure(initial: BasisState, params: &ModelParams, gt: f64, cutoff: &FockCutoff) -> XState {
    let w1: alloc::vec::Vec<f64> = (0..=cutoff.n_max1).map(|n| thermal_weight(params.nbar1, n)).collect();
    let w2: alloc::vec::Vec<f64> = (0..=cutoff.n_max2).map(|n| thermal_weight(params.nbar2, n)).collect();
    let mut acc = XAccumulator::default();
    for (n1, &p1) in w1.iter().enumerate() {
        if p1 == 0.0 {
            continue;
        }
        for (n2, &p2) in w2.iter().enumerate() {
            let w = p1 * p2;
            if w == 0.0 {
                continue;
            }
            acc.add(w, fock_term(initial, n1, n2, gt));
        }
    }
    acc.finish()
}

/// Evolution of the product thermal mixture in which each atom is excited
/// with probability `lambda`.
pub fn evolve_mixed(lambda: f64, params: &ModelParams, gt: f64, cutoff: &FockCutoff) -> XState {
    let pops = InitialAtomicState::Mixed(lambda).populations();
    let mut acc = XAccumulator::default();
    for (s, w) in BasisState::ALL.into_iter().zip(pops) {
        if w != 0.0 {
            acc.add(w, evolve_pure(s, params, gt, cutoff));
        }
    }
    acc.finish()
}

pub fn evolve(initial: InitialAtomicState, params: &ModelParams, gt: f64, cutoff: &FockCutoff) -> XState {
    match initial {
        InitialAtomicState::Pure(s) => evolve_pure(s, params, gt, cutoff),
        InitialAtomicState::Mixed(lambda) => evolve_mixed(lambda, params, gt, cutoff),
    }
}
