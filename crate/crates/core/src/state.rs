//! Two-qubit Bell-diagonal and Werner states, and the small density-matrix
//! toolkit (spectra, entropies, partial traces, trace distance) built on top
//! of them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{self, CMatrix};
use crate::{Error, Result};

/// Tolerance on Bell-basis eigenvalues when deciding physicality.
pub const PHYSICAL_TOL: f64 = 1e-12;
/// Tolerance on Hermiticity and unit trace of a density matrix.
pub const MATRIX_TOL: f64 = 1e-12;
/// Tolerance on negative eigenvalues of a density matrix.
pub const EIGENVALUE_TOL: f64 = 1e-10;

/// The coefficients `(c₁, c₂, c₃)` of `¼(I⊗I + Σ cᵢ σᵢ⊗σᵢ)`.
///
/// Construction only enforces `cᵢ ∈ [-1, 1]`. Whether the triple describes a
/// positive operator is a separate question answered by
/// [`CorrelationTriple::is_physical`]; the closed-form measures are defined on
/// the whole cube, so non-physical triples are representable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTriple([f64; 3]);

impl CorrelationTriple {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let c = [c1, c2, c3];
        for (i, &v) in c.iter().enumerate() {
            if !(-1.0..=1.0).contains(&v) {
                return Err(Error::CoefficientOutOfRange {
                    index: i + 1,
                    value: v,
                });
            }
        }
        Ok(Self(c))
    }

    /// Builds a triple and additionally rejects non-physical ones.
    pub fn physical(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let c = Self::new(c1, c2, c3)?;
        c.ensure_physical()?;
        Ok(c)
    }

    pub fn zero() -> Self {
        Self([0.0; 3])
    }

    pub fn c1(&self) -> f64 {
        self.0[0]
    }

    pub fn c2(&self) -> f64 {
        self.0[1]
    }

    pub fn c3(&self) -> f64 {
        self.0[2]
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    /// Multiplies every coefficient by `factor`, clamping the result back
    /// into `[-1, 1]` to absorb rounding.
    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.map(|c| (c * factor).clamp(-1.0, 1.0)))
    }

    /// Componentwise scaling by `(f₁, f₂, f₃)`.
    pub fn scaled_by(&self, factors: [f64; 3]) -> Self {
        let mut out = self.0;
        for (c, f) in out.iter_mut().zip(factors) {
            *c = (*c * f).clamp(-1.0, 1.0);
        }
        Self(out)
    }

    pub fn is_physical(&self) -> bool {
        bell_eigenvalues(self)
            .iter()
            .all(|&l| l >= -PHYSICAL_TOL)
    }

    pub fn ensure_physical(&self) -> Result<()> {
        let min = bell_eigenvalues(self)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min >= -PHYSICAL_TOL {
            Ok(())
        } else {
            Err(Error::Unphysical {
                c1: self.0[0],
                c2: self.0[1],
                c3: self.0[2],
                eigenvalue: min,
            })
        }
    }
}

/// Eigenvalues of the Bell-diagonal operator in the Bell basis, in the order
/// `¼(1−c₁−c₂−c₃), ¼(1−c₁+c₂+c₃), ¼(1+c₁−c₂+c₃), ¼(1+c₁+c₂−c₃)`.
pub fn bell_eigenvalues(c: &CorrelationTriple) -> [f64; 4] {
    let [c1, c2, c3] = c.0;
    [
        0.25 * (1.0 - c1 - c2 - c3),
        0.25 * (1.0 - c1 + c2 + c3),
        0.25 * (1.0 + c1 - c2 + c3),
        0.25 * (1.0 + c1 + c2 - c3),
    ]
}

/// The 4×4 operator `¼(I⊗I + Σ cᵢ σᵢ⊗σᵢ)` without any positivity check.
pub fn bell_diagonal_operator(c: &CorrelationTriple) -> CMatrix {
    let mut m = linalg::identity(4);
    for k in 1..=3 {
        let s = linalg::pauli(k);
        m += linalg::kron(&s, &s) * Complex64::from(c.0[k - 1]);
    }
    m * Complex64::from(0.25)
}

/// Bell-diagonal density matrix; rejects non-physical triples.
pub fn bell_diagonal(c: &CorrelationTriple) -> Result<DensityMatrix> {
    c.ensure_physical()?;
    Ok(DensityMatrix::from_raw(bell_diagonal_operator(c)))
}

/// Which qubit of a two-qubit state to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// A validated density matrix of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: CMatrix) -> Result<Self> {
        let dim = m.nrows();
        if !m.is_square() || !(dim == 2 || dim == 4) {
            return Err(Error::InvalidDensityMatrix(format!(
                "shape {}x{} (expected 2x2 or 4x4)",
                m.nrows(),
                m.ncols()
            )));
        }
        let herm = linalg::max_abs_diff(&m, &m.adjoint());
        if herm > MATRIX_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = linalg::trace(&m);
        if (tr - Complex64::from(1.0)).norm() > MATRIX_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr} != 1")));
        }
        let min = linalg::hermitian_eigenvalues(&m)[0];
        if min < -EIGENVALUE_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(Self { m })
    }

    /// Wraps a matrix that is valid by construction.
    pub(crate) fn from_raw(m: CMatrix) -> Self {
        debug_assert!(m.is_square() && (m.nrows() == 2 || m.nrows() == 4));
        Self { m }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        assert!(dim == 2 || dim == 4);
        Self::from_raw(linalg::identity(dim) / Complex64::from(dim as f64))
    }

    /// Qubit state `½(I + r·σ)`; `|r| ≤ 1` is required.
    pub fn qubit_from_bloch(r: [f64; 3]) -> Result<Self> {
        let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1.0 + MATRIX_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "Bloch vector norm {norm} exceeds 1"
            )));
        }
        Ok(Self::from_raw(linalg::bloch_operator(r)))
    }

    /// Pure state `|ψ⟩⟨ψ|` for a (not necessarily normalised) vector `ψ`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidDensityMatrix("zero state vector".into()));
        }
        let n = psi.len();
        let m = CMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj() / (norm * norm));
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.m)
    }

    /// Bloch vector `(tr ρσ₁, tr ρσ₂, tr ρσ₃)` of a qubit state.
    pub fn bloch_vector(&self) -> [f64; 3] {
        assert_eq!(self.dim(), 2, "Bloch vector of a non-qubit state");
        let m = &self.m;
        [
            2.0 * m[(0, 1)].re,
            -2.0 * m[(0, 1)].im,
            m[(0, 0)].re - m[(1, 1)].re,
        ]
    }

    /// Tensor product `self ⊗ other`, only for two qubits.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        if self.dim() != 2 || other.dim() != 2 {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(Self::from_raw(linalg::kron(&self.m, &other.m)))
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &CMatrix) -> DensityMatrix {
        Self::from_raw(u * &self.m * u.adjoint())
    }
}

/// `−Σ λ log₂ λ` with eigenvalues clamped at zero.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .map(|&l| l.max(0.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum()
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s = entropy_of_spectrum(&rho.eigenvalues());
    s.clamp(0.0, (rho.dim() as f64).log2())
}

/// `S(ρ_A) + S(ρ_B) − S(ρ_AB)` of a Bell-diagonal state; both marginals are
/// maximally mixed so this is `2 − S(ρ_AB)`.
pub fn mutual_information(c: &CorrelationTriple) -> Result<f64> {
    let rho = bell_diagonal(c)?;
    Ok(2.0 - von_neumann_entropy(&rho))
}

/// Mutual information evaluated on the clamped Bell spectrum, defined for
/// any triple in the cube.
pub fn mutual_information_unchecked(c: &CorrelationTriple) -> f64 {
    2.0 - entropy_of_spectrum(&bell_eigenvalues(c))
}

/// Partial trace of a two-qubit state, keeping `keep`.
pub fn reduced_state(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 4,
        });
    }
    let m = rho.matrix();
    let out = CMatrix::from_fn(2, 2, |i, j| match keep {
        Subsystem::A => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
        Subsystem::B => m[(i, j)] + m[(2 + i, 2 + j)],
    });
    Ok(DensityMatrix::from_raw(out))
}

/// `½ Σ |eig(ρ − σ)|`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let diff = rho.matrix() - sigma.matrix();
    Ok(0.5 * linalg::hermitian_eigenvalues(&diff)
        .iter()
        .map(|l| l.abs())
        .sum::<f64>())
}

/// A Werner state `z|Ψ⁻⟩⟨Ψ⁻| + (1−z)/4 I`, equivalently parametrised by
/// `α` with `z = α/(2−α)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WernerParams {
    z: f64,
}

impl WernerParams {
    pub fn from_z(z: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&z) {
            return Err(Error::Domain {
                name: "z",
                value: z,
                domain: "[0, 1]",
            });
        }
        Ok(Self { z })
    }

    /// `α ∈ [-1, 1]`; negative `α` maps to `z ∈ [-1/3, 0)`, still a valid
    /// Bell-diagonal state.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&alpha) {
            return Err(Error::Domain {
                name: "alpha",
                value: alpha,
                domain: "[-1, 1]",
            });
        }
        Ok(Self {
            z: alpha / (2.0 - alpha),
        })
    }

    /// Recognises triples of the form `(−z, −z, −z)` with `z ∈ [-1/3, 1]`.
    pub fn from_triple(c: &CorrelationTriple) -> Option<Self> {
        let [a, b, d] = c.as_array();
        (a == b && b == d && (-1.0..=1.0 / 3.0).contains(&a)).then_some(Self { z: -a })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn alpha(&self) -> f64 {
        2.0 * self.z / (1.0 + self.z)
    }

    pub fn triple(&self) -> CorrelationTriple {
        let c = (-self.z).clamp(-1.0, 1.0);
        CorrelationTriple([c; 3])
    }

    /// The mixture of the singlet with white noise, built directly.
    pub fn density_matrix(&self) -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [
            Complex64::from(0.0),
            Complex64::from(h),
            Complex64::from(-h),
            Complex64::from(0.0),
        ];
        let singlet = CMatrix::from_fn(4, 4, |i, j| psi[i] * psi[j].conj());
        let m = singlet * Complex64::from(self.z)
            + linalg::identity(4) * Complex64::from((1.0 - self.z) / 4.0);
        DensityMatrix::from_raw(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn triple(a: f64, b: f64, c: f64) -> CorrelationTriple {
        CorrelationTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn zero_triple_is_maximally_mixed() {
        let rho = bell_diagonal(&CorrelationTriple::zero()).unwrap();
        let d = trace_distance(&rho, &DensityMatrix::maximally_mixed(4)).unwrap();
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-15);
        assert_eq!(bell_eigenvalues(&CorrelationTriple::zero()), [0.25; 4]);
    }

    #[test]
    fn all_minus_one_is_singlet() {
        let rho = bell_diagonal(&triple(-1.0, -1.0, -1.0)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = DensityMatrix::pure(&[
            Complex64::from(0.0),
            Complex64::from(h),
            Complex64::from(-h),
            Complex64::from(0.0),
        ])
        .unwrap();
        assert!(trace_distance(&rho, &singlet).unwrap() < 1e-14);
        assert_abs_diff_eq!(von_neumann_entropy(&rho), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn bell_eigenvalues_of_pure_bell_state() {
        assert_eq!(bell_eigenvalues(&triple(1.0, 1.0, -1.0)), [0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn bell_spectrum_matches_diagonalization() {
        // Oracle: numerical diagonalization of the explicitly built matrix.
        let c = triple(0.5, 0.3, 0.1);
        let mut numeric = bell_diagonal(&c).unwrap().eigenvalues();
        numeric.sort_by(f64::total_cmp);
        let mut closed = bell_eigenvalues(&c).to_vec();
        closed.sort_by(f64::total_cmp);
        for (a, b) in numeric.iter().zip(&closed) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
        // Frozen from the diagonalization above.
        for (a, b) in closed.iter().zip([0.025, 0.225, 0.325, 0.425]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn werner_spectrum() {
        let z = 0.6;
        let mut numeric = WernerParams::from_z(z).unwrap().density_matrix().eigenvalues();
        numeric.sort_by(f64::total_cmp);
        let expected = [(1.0 - z) / 4.0, (1.0 - z) / 4.0, (1.0 - z) / 4.0, (1.0 + 3.0 * z) / 4.0];
        for (a, b) in numeric.iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        let mut closed = bell_eigenvalues(&triple(-z, -z, -z)).to_vec();
        closed.sort_by(f64::total_cmp);
        for (a, b) in closed.iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn werner_forms_agree() {
        // Singlet-mixture form, Bell-diagonal form and the swap-operator form.
        for alpha in [-1.0, -0.3, 0.0, 0.5, 0.9, 1.0] {
            let w = WernerParams::from_alpha(alpha).unwrap();
            let via_bell = DensityMatrix::from_raw(bell_diagonal_operator(&w.triple()));
            let swap = CMatrix::from_fn(4, 4, |r, c| {
                let (i, k) = (r / 2, r % 2);
                let (j, l) = (c / 2, c % 2);
                Complex64::from(if i == l && k == j { 1.0 } else { 0.0 })
            });
            let via_swap = (linalg::identity(4) - swap * Complex64::from(alpha))
                / Complex64::from(2.0 * (2.0 - alpha));
            let via_swap = DensityMatrix::new(via_swap).unwrap();
            assert!(trace_distance(&w.density_matrix(), &via_bell).unwrap() < 1e-14);
            assert!(trace_distance(&via_swap, &via_bell).unwrap() < 1e-14);
        }
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(
            von_neumann_entropy(&DensityMatrix::maximally_mixed(2)),
            1.0,
            epsilon = 1e-15
        );
        let pure = DensityMatrix::qubit_from_bloch([0.0, 0.6, 0.8]).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&pure), 0.0, epsilon = 1e-12);

        let rho = bell_diagonal(&triple(0.5, 0.3, 0.1)).unwrap();
        let expected: f64 = [0.025f64, 0.225, 0.325, 0.425]
            .iter()
            .map(|l| -l * l.log2())
            .sum();
        assert_abs_diff_eq!(von_neumann_entropy(&rho), expected, epsilon = 1e-12);
    }

    #[test]
    fn mutual_information_examples() {
        assert_abs_diff_eq!(
            mutual_information(&CorrelationTriple::zero()).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            mutual_information(&triple(-1.0, -1.0, -1.0)).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        let z: f64 = 0.5;
        let a = (1.0 + 3.0 * z) / 4.0;
        let b = (1.0 - z) / 4.0;
        let expected = 2.0 + a * a.log2() + 3.0 * b * b.log2();
        assert_abs_diff_eq!(
            mutual_information(&triple(-z, -z, -z)).unwrap(),
            expected,
            epsilon = 1e-12
        );
    }

    #[test]
    fn rejects_unphysical() {
        let err = bell_diagonal(&triple(1.0, 1.0, 1.0)).unwrap_err();
        match err {
            Error::Unphysical { eigenvalue, .. } => assert_abs_diff_eq!(eigenvalue, -0.5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(CorrelationTriple::new(1.2, 0.0, 0.0).is_err());
        assert!(mutual_information(&triple(1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn reduced_states_of_product() {
        let a = DensityMatrix::qubit_from_bloch([0.1, -0.4, 0.3]).unwrap();
        let b = DensityMatrix::qubit_from_bloch([0.5, 0.2, -0.6]).unwrap();
        let ab = a.tensor(&b).unwrap();
        let ra = reduced_state(&ab, Subsystem::A).unwrap();
        let rb = reduced_state(&ab, Subsystem::B).unwrap();
        assert!(trace_distance(&ra, &a).unwrap() < 1e-15);
        assert!(trace_distance(&rb, &b).unwrap() < 1e-15);
    }

    #[test]
    fn reduced_states_of_bell_diagonal_are_maximally_mixed() {
        let rho = bell_diagonal(&triple(0.5, 0.3, 0.1)).unwrap();
        let half = DensityMatrix::maximally_mixed(2);
        for s in [Subsystem::A, Subsystem::B] {
            let r = reduced_state(&rho, s).unwrap();
            assert!(trace_distance(&r, &half).unwrap() < 1e-12);
        }
    }

    #[test]
    fn trace_distance_examples() {
        let zero = DensityMatrix::qubit_from_bloch([0.0, 0.0, 1.0]).unwrap();
        let one = DensityMatrix::qubit_from_bloch([0.0, 0.0, -1.0]).unwrap();
        let half = DensityMatrix::maximally_mixed(2);
        assert_abs_diff_eq!(trace_distance(&zero, &zero).unwrap(), 0.0);
        assert_abs_diff_eq!(trace_distance(&zero, &one).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(trace_distance(&half, &zero).unwrap(), 0.5, epsilon = 1e-15);
        assert!(matches!(
            trace_distance(&half, &DensityMatrix::maximally_mixed(4)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = linalg::identity(2);
        assert!(DensityMatrix::new(bad_trace).is_err());
        let non_herm = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::from(0.5),
                Complex64::from(0.1),
                Complex64::from(0.0),
                Complex64::from(0.5),
            ],
        );
        assert!(DensityMatrix::new(non_herm).is_err());
        assert!(DensityMatrix::new(linalg::identity(3) / Complex64::from(3.0)).is_err());
        assert!(DensityMatrix::qubit_from_bloch([1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn werner_alpha_round_trip() {
        for k in 0..=200 {
            let alpha = -1.0 + k as f64 * 0.01;
            let w = WernerParams::from_alpha(alpha).unwrap();
            assert_abs_diff_eq!(w.alpha(), alpha, epsilon = 1e-12);
        }
        assert!(WernerParams::from_z(1.5).is_err());
        assert!(WernerParams::from_alpha(-1.5).is_err());
    }
}
