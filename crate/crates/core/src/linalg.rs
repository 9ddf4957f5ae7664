//! Small dense complex matrices and the Pauli algebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Pauli matrix σ₁, σ₂ or σ₃ (`index` in 1..=3).
pub fn pauli(index: usize) -> CMatrix {
    match index {
        1 => CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        2 => CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        3 => CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        _ => panic!("Pauli index must be 1, 2 or 3, got {index}"),
    }
}

/// `½(I + r·σ)` for a real Bloch vector `r`.
pub fn bloch_operator(r: [f64; 3]) -> CMatrix {
    let mut m = identity(2);
    for (k, rk) in r.iter().enumerate() {
        m += pauli(k + 1) * Complex64::from(*rk);
    }
    m * Complex64::from(0.5)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn dagger(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Real eigenvalues of a Hermitian matrix, sorted ascending.
///
/// 2×2 matrices use the closed form `(tr ± |r|)/2` with `|r|` the Bloch-vector
/// norm of the traceless part; larger matrices go through a Hermitian
/// eigensolver.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Vec<f64> {
    assert!(a.is_square(), "eigenvalues of a non-square matrix");
    let mut values = if a.nrows() == 2 {
        let tr = (a[(0, 0)].re + a[(1, 1)].re) / 2.0;
        let dz = (a[(0, 0)].re - a[(1, 1)].re) / 2.0;
        let off = (a[(0, 1)] + a[(1, 0)].conj()) / 2.0;
        let r = (dz * dz + off.norm_sqr()).sqrt();
        vec![tr - r, tr + r]
    } else {
        let hermitian = (a + a.adjoint()) * Complex64::from(0.5);
        hermitian.symmetric_eigenvalues().iter().copied().collect()
    };
    values.sort_by(f64::total_cmp);
    values
}
