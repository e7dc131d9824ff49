//! Brute-force reference: the full interaction Hamiltonian on a truncated
//! atom ⊗ atom ⊗ Fock ⊗ Fock space, exact propagation by dense
//! diagonalization, and the partial trace over both field modes.
//!
//! Nothing here uses the block structure the closed form relies on.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use twophoton_core::{BasisState, GeneralTwoQubitState, InitialAtomicState, ModelParams};

/// Extra Fock levels kept above every initial photon number. Two-photon
/// emission from |++⟩ raises each mode by at most two.
pub const HEADROOM: usize = 2;

/// Largest per-mode truncation the oracle will diagonalize.
pub const MAX_ORACLE_CUTOFF: usize = 14;

/// Truncated joint space. Flat index is
/// `atom·(N1+1)(N2+1) + n1·(N2+1) + n2` with `atom` the position in
/// `{|++⟩, |+−⟩, |−+⟩, |−−⟩}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    pub n_max1: usize,
    pub n_max2: usize,
}

impl FockSpace {
    pub const fn new(n_max1: usize, n_max2: usize) -> Self {
        Self { n_max1, n_max2 }
    }

    /// Number of field basis states.
    pub const fn field_dim(&self) -> usize {
        (self.n_max1 + 1) * (self.n_max2 + 1)
    }

    pub const fn dim(&self) -> usize {
        4 * self.field_dim()
    }

    pub const fn index(&self, atom: usize, n1: usize, n2: usize) -> usize {
        atom * self.field_dim() + n1 * (self.n_max2 + 1) + n2
    }

    /// Inverse of [`FockSpace::index`].
    pub const fn split(&self, k: usize) -> (usize, usize, usize) {
        let f = k % self.field_dim();
        (k / self.field_dim(), f / (self.n_max2 + 1), f % (self.n_max2 + 1))
    }
}

/// Lowering the first or second atom, as maps on the atomic basis index.
const LOWER: [[Option<usize>; 4]; 2] = [
    // R₁⁻: |++⟩ → |−+⟩, |+−⟩ → |−−⟩
    [Some(2), Some(3), None, None],
    // R₂⁻: |++⟩ → |+−⟩, |−+⟩ → |−−⟩
    [Some(1), None, Some(3), None],
];

/// `H/ħ = g Σᵢ (a₁⁺a₂⁺Rᵢ⁻ + Rᵢ⁺a₁a₂)` on the truncated space. Transitions
/// leaving the space are dropped. The matrix is real and exactly symmetric.
pub fn build_hamiltonian(n_max1: usize, n_max2: usize, g: f64) -> DMatrix<f64> {
    let space = FockSpace::new(n_max1, n_max2);
    let mut h = DMatrix::zeros(space.dim(), space.dim());
    for atom in 0..4 {
        for n1 in 0..n_max1 {
            for n2 in 0..n_max2 {
                let from = space.index(atom, n1, n2);
                let amp = g * (((n1 + 1) * (n2 + 1)) as f64).sqrt();
                for lower in &LOWER {
                    if let Some(to_atom) = lower[atom] {
                        let to = space.index(to_atom, n1 + 1, n2 + 1);
                        h[(to, from)] += amp;
                        h[(from, to)] += amp;
                    }
                }
            }
        }
    }
    h
}

/// State of the full truncated system.
#[derive(Debug, Clone, PartialEq)]
pub enum JointState {
    Pure { space: FockSpace, psi: DVector<Complex64> },
    Density { space: FockSpace, rho: DMatrix<Complex64> },
}

impl JointState {
    /// `|atoms⟩ ⊗ |n1, n2⟩`.
    pub fn basis(space: FockSpace, atoms: BasisState, n1: usize, n2: usize) -> Self {
        let mut psi = DVector::zeros(space.dim());
        psi[space.index(atoms.index(), n1, n2)] = Complex64::new(1.0, 0.0);
        JointState::Pure { space, psi }
    }

    /// Product of the initial atomic density matrix with the thermal field,
    /// restricted to `n ≤ N − HEADROOM` in each mode.
    pub fn thermal(space: FockSpace, initial: InitialAtomicState, params: &ModelParams) -> Self {
        let mut rho = DMatrix::zeros(space.dim(), space.dim());
        for (atom, pa, n1, n2, pf) in thermal_components(space, initial, params) {
            let k = space.index(atom, n1, n2);
            rho[(k, k)] = Complex64::new(pa * pf, 0.0);
        }
        JointState::Density { space, rho }
    }

    pub fn space(&self) -> FockSpace {
        match self {
            JointState::Pure { space, .. } | JointState::Density { space, .. } => *space,
        }
    }

    /// Squared norm of a vector, trace of a density operator.
    pub fn trace(&self) -> f64 {
        match self {
            JointState::Pure { psi, .. } => psi.norm_squared(),
            JointState::Density { rho, .. } => rho.diagonal().iter().map(|z| z.re).sum(),
        }
    }

    pub fn to_density(&self) -> DMatrix<Complex64> {
        match self {
            JointState::Pure { psi, .. } => psi * psi.adjoint(),
            JointState::Density { rho, .. } => rho.clone(),
        }
    }
}

/// Nonzero `(atom, atomic weight, n1, n2, thermal weight)` components of the
/// initial thermal product state that fit below the headroom.
fn thermal_components(
    space: FockSpace,
    initial: InitialAtomicState,
    params: &ModelParams,
) -> Vec<(usize, f64, usize, usize, f64)> {
    let pops = initial.populations();
    let (r1, r2) = retained(space);
    let mut out = Vec::new();
    for (atom, &pa) in pops.iter().enumerate() {
        if pa == 0.0 {
            continue;
        }
        for n1 in 0..=r1 {
            for n2 in 0..=r2 {
                let pf = thermal_weight(params.nbar1, n1) * thermal_weight(params.nbar2, n2);
                if pf != 0.0 {
                    out.push((atom, pa, n1, n2, pf));
                }
            }
        }
    }
    out
}

// Written out here rather than borrowed from the core crate so the oracle
// shares no numerics with the path it checks.
fn thermal_weight(nbar: f64, n: usize) -> f64 {
    if nbar == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    nbar.powi(n as i32) / (1.0 + nbar).powi(n as i32 + 1)
}

/// Highest initial Fock indices the oracle propagates in a given space.
pub fn retained(space: FockSpace) -> (usize, usize) {
    (space.n_max1.saturating_sub(HEADROOM), space.n_max2.saturating_sub(HEADROOM))
}

/// Eigendecomposition of a Hamiltonian, reused across time points.
#[derive(Debug, Clone)]
pub struct Propagator {
    space: FockSpace,
    energies: DVector<f64>,
    vectors: DMatrix<f64>,
}

impl Propagator {
    pub fn new(space: FockSpace, g: f64) -> Self {
        Self::from_hamiltonian(space, build_hamiltonian(space.n_max1, space.n_max2, g))
    }

    pub fn from_hamiltonian(space: FockSpace, h: DMatrix<f64>) -> Self {
        assert_eq!(h.nrows(), space.dim(), "Hamiltonian does not match the space");
        let eig = SymmetricEigen::new(h);
        Self {
            space,
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
        }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    fn phases(&self, t: f64) -> DVector<Complex64> {
        self.energies.map(|e| Complex64::new(0.0, -e * t).exp())
    }

    /// `exp(−iHt)` as a dense matrix.
    pub fn unitary(&self, t: f64) -> DMatrix<Complex64> {
        let v = self.vectors.map(|x| Complex64::new(x, 0.0));
        let mut vp = v.clone();
        for (mut col, ph) in vp.column_iter_mut().zip(self.phases(t).iter()) {
            col *= *ph;
        }
        vp * v.transpose()
    }

    /// `exp(−iHt)|ψ⟩` or `exp(−iHt) ρ exp(iHt)`.
    pub fn propagate(&self, state: &JointState, t: f64) -> JointState {
        assert_eq!(state.space(), self.space, "state does not match the space");
        match state {
            JointState::Pure { psi, .. } => {
                let v = self.vectors.map(|x| Complex64::new(x, 0.0));
                let coeffs = v.transpose() * psi;
                let evolved = coeffs.component_mul(&self.phases(t));
                JointState::Pure {
                    space: self.space,
                    psi: v * evolved,
                }
            }
            JointState::Density { rho, .. } => {
                let u = self.unitary(t);
                JointState::Density {
                    space: self.space,
                    rho: &u * rho * u.adjoint(),
                }
            }
        }
    }

    /// Thermally averaged reduced atomic state at each dimensionless time
    /// `gt`, with `g` taken from `params`.
    ///
    /// Every initial component `|atoms⟩|n1,n2⟩` with `n ≤ N − HEADROOM` is
    /// propagated as a vector and traced over the field; the pure-state
    /// contributions are summed with their thermal and atomic weights.
    pub fn thermal_reduce(
        &self,
        initial: InitialAtomicState,
        params: &ModelParams,
        gts: &[f64],
    ) -> Vec<GeneralTwoQubitState> {
        let comps = thermal_components(self.space, initial, params);
        let dim = self.space.dim();
        // Eigen-coefficients of each initial basis vector, scaled by the
        // square root of its weight.
        let mut coeffs = DMatrix::<f64>::zeros(dim, comps.len());
        for (col, &(atom, pa, n1, n2, pf)) in comps.iter().enumerate() {
            let k = self.space.index(atom, n1, n2);
            let scale = (pa * pf).sqrt();
            for j in 0..dim {
                coeffs[(j, col)] = scale * self.vectors[(k, j)];
            }
        }
        gts.par_iter()
            .map(|&gt| {
                let t = gt / params.g;
                let mut cos_c = coeffs.clone();
                let mut sin_c = coeffs.clone();
                for j in 0..dim {
                    let (s, c) = (self.energies[j] * t).sin_cos();
                    cos_c.row_mut(j).scale_mut(c);
                    sin_c.row_mut(j).scale_mut(-s);
                }
                let re = &self.vectors * cos_c;
                let im = &self.vectors * sin_c;
                reduce_split(self.space, &re, &im)
            })
            .collect()
    }
}

/// Partial trace of `Σ_k |ψ_k⟩⟨ψ_k|` with the `ψ_k` stored column-wise as
/// real and imaginary parts.
fn reduce_split(space: FockSpace, re: &DMatrix<f64>, im: &DMatrix<f64>) -> GeneralTwoQubitState {
    let f = space.field_dim();
    let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
    for a in 0..4 {
        for b in a..4 {
            let (ra, ia) = (re.rows(a * f, f), im.rows(a * f, f));
            let (rb, ib) = (re.rows(b * f, f), im.rows(b * f, f));
            let z = Complex64::new(ra.dot(&rb) + ia.dot(&ib), ia.dot(&rb) - ra.dot(&ib));
            rho[a][b] = z;
            rho[b][a] = z.conj();
        }
    }
    GeneralTwoQubitState::new(rho).expect("constructed Hermitian")
}

/// One-shot propagation: diagonalizes `h` and evolves `initial` to time `t`.
pub fn propagate(initial: &JointState, h: &DMatrix<f64>, t: f64) -> JointState {
    Propagator::from_hamiltonian(initial.space(), h.clone()).propagate(initial, t)
}

/// `Tr_F`: partial trace over both field modes.
pub fn reduce_atoms(state: &JointState) -> GeneralTwoQubitState {
    let space = state.space();
    let f = space.field_dim();
    let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
    for a in 0..4 {
        for b in a..4 {
            let z: Complex64 = match state {
                JointState::Pure { psi, .. } => (0..f).map(|k| psi[a * f + k] * psi[b * f + k].conj()).sum(),
                JointState::Density { rho: r, .. } => (0..f).map(|k| r[(a * f + k, b * f + k)]).sum(),
            };
            rho[a][b] = z;
        }
        rho[a][a].im = 0.0;
    }
    for a in 0..4 {
        for b in 0..a {
            rho[a][b] = rho[b][a].conj();
        }
    }
    GeneralTwoQubitState::new(rho).expect("partial trace of a Hermitian operator")
}

/// Thermally averaged reduced atomic state at a single time on the space
/// truncated at `(n_max1, n_max2)`.
pub fn thermal_reduce(
    initial: InitialAtomicState,
    params: &ModelParams,
    gt: f64,
    n_max1: usize,
    n_max2: usize,
) -> GeneralTwoQubitState {
    Propagator::new(FockSpace::new(n_max1, n_max2), params.g).thermal_reduce(initial, params, &[gt])[0]
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{PI, SQRT_2};

    use super::*;
    use twophoton_core::{negativity_general, XState};

    fn diag_operator(space: FockSpace, f: impl Fn(usize, usize, usize) -> f64) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_fn(space.dim(), |k, _| {
            let (a, n1, n2) = space.split(k);
            f(a, n1, n2)
        }))
    }

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    #[test]
    fn index_round_trip() {
        let s = FockSpace::new(3, 5);
        for k in 0..s.dim() {
            let (a, n1, n2) = s.split(k);
            assert_eq!(s.index(a, n1, n2), k);
        }
    }

    #[test]
    fn emission_matrix_element() {
        let s = FockSpace::new(3, 3);
        let h = build_hamiltonian(3, 3, 1.0);
        assert_eq!(h[(s.index(3, 1, 1), s.index(1, 0, 0))], 1.0);
        assert_eq!(h[(s.index(1, 0, 0), s.index(3, 1, 1))], 1.0);
        assert_eq!(h[(s.index(0, 0, 0), s.index(1, 1, 1))], 1.0);
        assert!((h[(s.index(2, 2, 3), s.index(0, 1, 2))] - 6f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hermitian_exactly() {
        let h = build_hamiltonian(4, 3, 0.7);
        assert_eq!(max_abs(&(&h - h.transpose())), 0.0);
    }

    #[test]
    fn ground_atoms_without_mode_two_photons_are_annihilated() {
        let s = FockSpace::new(5, 4);
        let h = build_hamiltonian(5, 4, 1.0);
        for n in 0..=5 {
            assert_eq!(h.column(s.index(3, n, 0)).amax(), 0.0);
        }
    }

    #[test]
    fn singlet_is_dark() {
        let s = FockSpace::new(4, 4);
        let h = build_hamiltonian(4, 4, 1.0);
        for n1 in 0..=4 {
            for n2 in 0..=4 {
                let mut v = DVector::zeros(s.dim());
                v[s.index(1, n1, n2)] = 1.0 / SQRT_2;
                v[s.index(2, n1, n2)] = -1.0 / SQRT_2;
                assert!((&h * v).amax() < 1e-15);
            }
        }
    }

    #[test]
    fn conserved_quantities_commute() {
        let s = FockSpace::new(5, 4);
        let h = build_hamiltonian(5, 4, 1.3);
        let excited = |a: usize| [2.0, 1.0, 1.0, 0.0][a];
        let diff = diag_operator(s, |_, n1, n2| n1 as f64 - n2 as f64);
        let total = diag_operator(s, |a, n1, n2| (n1 + n2) as f64 + 2.0 * excited(a));
        for q in [diff, total] {
            assert!(max_abs(&(&h * &q - &q * &h)) < 1e-12);
        }
    }

    #[test]
    fn identity_at_time_zero_and_unitarity() {
        let s = FockSpace::new(4, 4);
        let p = Propagator::new(s, 1.0);
        let psi = JointState::basis(s, BasisState::Eg, 1, 2);
        let same = p.propagate(&psi, 0.0);
        if let (JointState::Pure { psi: a, .. }, JointState::Pure { psi: b, .. }) = (&psi, &same) {
            assert!((a - b).norm() < 1e-13);
        }
        let rho = JointState::thermal(s, InitialAtomicState::Mixed(0.3), &ModelParams::symmetric(0.7));
        let tr = rho.trace();
        for t in [0.3, 1.7, 6.0] {
            assert!((p.propagate(&psi, t).trace() - 1.0).abs() < 1e-12);
            assert!((p.propagate(&rho, t).trace() - tr).abs() < 1e-12);
        }
    }

    #[test]
    fn vacuum_exchange_at_half_period() {
        let s = FockSpace::new(2, 2);
        let h = build_hamiltonian(2, 2, 1.0);
        let out = propagate(&JointState::basis(s, BasisState::Eg, 0, 0), &h, PI / SQRT_2);
        let x = reduce_atoms(&out).x_part();
        assert!(x.max_abs_diff(&XState::new(0.0, 0.0, 1.0, 0.0, 0.0)) < 1e-12, "{x:?}");
    }

    #[test]
    fn partial_trace_of_product() {
        let s = FockSpace::new(3, 2);
        let x = reduce_atoms(&JointState::basis(s, BasisState::Ge, 2, 1));
        assert_eq!(x.x_part(), XState::projector(BasisState::Ge));
        let rho = JointState::thermal(s, InitialAtomicState::Mixed(0.2), &ModelParams::symmetric(0.0));
        let r = reduce_atoms(&rho);
        assert!((r.trace() - rho.trace()).abs() < 1e-15);
        assert_eq!(r.x_part(), InitialAtomicState::Mixed(0.2).x_state());
    }

    #[test]
    fn photon_pair_absorption_makes_bell_state() {
        let s = FockSpace::new(3, 3);
        let h = build_hamiltonian(3, 3, 1.0);
        let out = propagate(&JointState::basis(s, BasisState::Gg, 1, 1), &h, PI / (2.0 * SQRT_2));
        let r = reduce_atoms(&out);
        assert!(r.x_part().max_abs_diff(&XState::new(0.0, 0.5, 0.5, 0.0, 0.5)) < 1e-12);
        assert!((negativity_general(&r) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn thermal_reduce_limits() {
        let vac = ModelParams::symmetric(0.0);
        let r = thermal_reduce(BasisState::Eg.into(), &vac, 1.1, 4, 4);
        let single = reduce_atoms(&propagate(
            &JointState::basis(FockSpace::new(4, 4), BasisState::Eg, 0, 0),
            &build_hamiltonian(4, 4, 1.0),
            1.1,
        ));
        assert!(r.x_part().max_abs_diff(&single.x_part()) < 1e-12);

        let p = ModelParams::symmetric(1.0);
        let init = InitialAtomicState::Mixed(0.4);
        let r0 = thermal_reduce(init, &p, 0.0, 5, 5);
        let mass = (1.0 - 0.5f64.powi(4)).powi(2);
        assert!(r0.x_part().max_abs_diff(&(mass * init.x_state())) < 1e-12);
    }

    #[test]
    fn batched_path_matches_density_propagation() {
        let s = FockSpace::new(5, 4);
        let p = ModelParams::new(0.8, 0.6, 1.2);
        let init = InitialAtomicState::Mixed(0.3);
        let prop = Propagator::new(s, p.g);
        let rho0 = JointState::thermal(s, init, &p);
        let gts = [0.4, 2.5];
        let fast = prop.thermal_reduce(init, &p, &gts);
        for (gt, f) in gts.iter().zip(&fast) {
            let slow = reduce_atoms(&prop.propagate(&rho0, gt / p.g));
            for i in 0..4 {
                for j in 0..4 {
                    assert!((slow.get(i, j) - f.get(i, j)).norm() < 1e-12);
                }
            }
        }
    }
}
