//! Peres-Horodecki entanglement measure `ε = −2 Σ μ⁻`, the sum running over
//! the negative eigenvalues of the partial transpose.

use num_complex::Complex64;

use crate::model::XState;
use crate::{Error, Result};

/// Eigenvalues closer to zero than this are eigensolver noise.
pub const EIGEN_ZERO: f64 = 1e-12;

/// Largest element-wise asymmetry `|ρ − ρ†|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-8;

/// Negativity of an X-shaped state.
///
/// Only the partial-transpose eigenvalue `½(D + A − √((D−A)² + 4E²))` can be
/// negative, and it is negative exactly when `E² > A·D`.
pub fn negativity_x(x: &XState) -> f64 {
    if x.e * x.e <= x.a * x.d {
        return 0.0;
    }
    let root = ((x.d - x.a).powi(2) + 4.0 * x.e * x.e).sqrt();
    (root - x.d - x.a).max(0.0)
}

/// Which atom's indices a partial transpose acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Arbitrary two-atom density matrix in the basis
/// `{|++⟩, |+−⟩, |−+⟩, |−−⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralTwoQubitState {
    rho: [[Complex64; 4]; 4],
}

impl GeneralTwoQubitState {
    pub fn new(rho: [[Complex64; 4]; 4]) -> Result<Self> {
        let asymmetry = max_asymmetry(&rho);
        if !(asymmetry <= HERMITIAN_TOL) {
            return Err(Error::NotHermitian { asymmetry });
        }
        Ok(Self { rho })
    }

    pub fn from_real(rho: [[f64; 4]; 4]) -> Result<Self> {
        Self::new(rho.map(|row| row.map(|v| Complex64::new(v, 0.0))))
    }

    pub fn from_x(x: &XState) -> Self {
        let mut rho = [[0.0; 4]; 4];
        rho[0][0] = x.a;
        rho[1][1] = x.b;
        rho[2][2] = x.c;
        rho[3][3] = x.d;
        rho[1][2] = x.e;
        rho[2][1] = x.e;
        Self::from_real(rho).expect("X-states are real symmetric")
    }

    pub fn matrix(&self) -> &[[Complex64; 4]; 4] {
        &self.rho
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.rho[i][j]
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.rho[i][i].re).sum()
    }

    /// The X-shaped part: diagonal plus the real `(|+−⟩, |−+⟩)` coherence.
    pub fn x_part(&self) -> XState {
        XState::new(self.rho[0][0].re, self.rho[1][1].re, self.rho[2][2].re, self.rho[3][3].re, self.rho[1][2].re)
    }

    /// Largest absolute value among entries an X-state must have zero,
    /// including the imaginary part of the coherence.
    pub fn off_x_magnitude(&self) -> f64 {
        let mut m = self.rho[1][2].im.abs();
        for i in 0..4 {
            for j in 0..4 {
                let inner = (i == 1 || i == 2) && (j == 1 || j == 2);
                if i != j && !inner {
                    m = m.max(self.rho[i][j].norm());
                }
            }
        }
        m
    }

    /// Partial transpose. For the second atom,
    /// `(ρ^{T₂})_{(a,b'),(a',b)} = ρ_{(a,b),(a',b')}`.
    pub fn partial_transpose(&self, which: Subsystem) -> [[Complex64; 4]; 4] {
        let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
        for a in 0..2 {
            for b in 0..2 {
                for a2 in 0..2 {
                    for b2 in 0..2 {
                        let (row, col) = match which {
                            Subsystem::Second => (2 * a + b2, 2 * a2 + b),
                            Subsystem::First => (2 * a2 + b, 2 * a + b2),
                        };
                        out[row][col] = self.rho[2 * a + b][2 * a2 + b2];
                    }
                }
            }
        }
        out
    }

    /// Eigenvalues of the partial transpose, ascending.
    pub fn partial_transpose_spectrum(&self, which: Subsystem) -> [f64; 4] {
        hermitian_eigenvalues(&self.partial_transpose(which))
    }
}

/// Negativity of a general state, transposing the second atom.
pub fn negativity_general(state: &GeneralTwoQubitState) -> f64 {
    negativity_from_spectrum(&state.partial_transpose_spectrum(Subsystem::Second))
}

pub fn negativity_from_spectrum(spectrum: &[f64]) -> f64 {
    let negative: f64 = spectrum.iter().filter(|&&mu| mu < -EIGEN_ZERO).sum();
    -2.0 * negative
}

fn max_asymmetry(m: &[[Complex64; 4]; 4]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in i..4 {
            let d = (m[i][j] - m[j][i].conj()).norm();
            if d.is_nan() {
                return f64::NAN;
            }
            worst = worst.max(d);
        }
    }
    worst
}

/// Eigenvalues of a 4×4 Hermitian matrix, ascending.
///
/// `H = X + iY` is embedded as the real symmetric matrix `[[X, −Y], [Y, X]]`,
/// whose spectrum is that of `H` with every eigenvalue doubled, and
/// diagonalized by cyclic Jacobi rotations.
pub fn hermitian_eigenvalues(h: &[[Complex64; 4]; 4]) -> [f64; 4] {
    let mut m = [[0.0f64; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            // Symmetrize so rounding asymmetry cannot leak into the spectrum.
            let z = 0.5 * (h[i][j] + h[j][i].conj());
            m[i][j] = z.re;
            m[i + 4][j + 4] = z.re;
            m[i][j + 4] = -z.im;
            m[i + 4][j] = z.im;
        }
    }
    let mut eig = jacobi_eigenvalues(m);
    eig.sort_by(f64::total_cmp);
    [0, 1, 2, 3].map(|k| 0.5 * (eig[2 * k] + eig[2 * k + 1]))
}

fn jacobi_eigenvalues<const N: usize>(mut a: [[f64; N]; N]) -> [f64; N] {
    let scale: f64 = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    if scale == 0.0 {
        return [0.0; N];
    }
    for _sweep in 0..64 {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * 1e-3 * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..N {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    core::array::from_fn(|i| a[i][i])
}
