//! Plain-array reference computations used as oracles by the integration
//! suites. Nothing here goes through the crate's matrix helpers.

#![allow(dead_code)]

use num_complex::Complex64 as C;

pub type M2 = [[C; 2]; 2];
pub type M4 = [[C; 4]; 4];

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn pauli(k: usize) -> M2 {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match k {
        0 => [[l, o], [o, l]],
        1 => [[o, l], [l, o]],
        2 => [[o, -i], [i, o]],
        3 => [[l, o], [o, -l]],
        _ => unreachable!(),
    }
}

pub fn kron(a: &M2, b: &M2) -> M4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn mul4(a: &M4, b: &M4) -> M4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn dag4(a: &M4) -> M4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

/// `¼(I⊗I + Σ cₖ σₖ⊗σₖ)` assembled entry by entry.
pub fn bell_diagonal(cs: [f64; 3]) -> M4 {
    let mut out = kron(&pauli(0), &pauli(0));
    for (k, ck) in cs.iter().enumerate() {
        let s = kron(&pauli(k + 1), &pauli(k + 1));
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] += s[i][j] * ck;
            }
        }
    }
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v *= 0.25;
        }
    }
    out
}

pub fn trace4(a: &M4) -> C {
    (0..4).map(|i| a[i][i]).sum()
}

/// `tr_B` by explicit index summation: `(ρ_A)_{ij} = Σ_k ρ_{(i,k),(j,k)}`.
pub fn partial_trace_b(a: &M4) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] += a[2 * i + k][2 * j + k];
            }
        }
    }
    out
}

/// Bloch vector of a 2×2 Hermitian unit-trace matrix.
pub fn bloch(a: &M2) -> [f64; 3] {
    [
        2.0 * a[0][1].re,
        -2.0 * a[0][1].im,
        (a[0][0] - a[1][1]).re,
    ]
}

/// `½(I + r·σ)`.
pub fn bloch_op(r: [f64; 3]) -> M2 {
    let mut out = pauli(0);
    for k in 0..3 {
        let s = pauli(k + 1);
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] += s[i][j] * r[k];
            }
        }
    }
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v *= 0.5;
        }
    }
    out
}

pub fn scale2(a: &M2, s: f64) -> M2 {
    let mut out = *a;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v *= s;
        }
    }
    out
}

pub fn add2(a: &M2, b: &M2) -> M2 {
    let mut out = *a;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] += b[i][j];
        }
    }
    out
}

/// Measures B with each operator `K` and returns `(p, Bloch vector of A)`.
pub fn measure_b(rho: &M4, ops: &[M2]) -> Vec<(f64, [f64; 3])> {
    ops.iter()
        .map(|k| {
            let m = kron(&pauli(0), k);
            let post = mul4(&mul4(&m, rho), &dag4(&m));
            let p = trace4(&post).re;
            let a = partial_trace_b(&post);
            let r = bloch(&scale2(&a, 1.0 / p));
            (p, r)
        })
        .collect()
}

/// Trace distance between two qubit states given by Bloch vectors.
pub fn bloch_distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    0.5 * a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// `−Σ p log₂ p`.
pub fn shannon(ps: &[f64]) -> f64 {
    ps.iter().filter(|&&p| p > 0.0).map(|p| -p * p.log2()).sum()
}

/// Binary entropy by direct evaluation.
pub fn h2(p: f64) -> f64 {
    shannon(&[p, 1.0 - p])
}
