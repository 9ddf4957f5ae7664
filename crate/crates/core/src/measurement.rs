//! Local measurements on qubit B and the ensembles they prepare on qubit A.
//!
//! A von Neumann measurement on B is `{V Π_k V†}` with `V = tI + i y·σ`.
//! Everything about the measurement that matters for a Bell-diagonal input
//! enters through the unit vector `z` with `V Π₀ V† = ½(I + z·σ)`, so the
//! public surface works with [`MeasurementDirection`] and offers
//! [`direction_from_unitary`] for the reduction.
//!
//! Weak measurements use the two-outcome operators
//! `P(±x) = √((1∓tanh x)/2) Π₀ + √((1±tanh x)/2) Π₁`. Outcome index 0 is
//! always `P(+x)`, which for a Bell-diagonal state leaves A with the Bloch
//! vector `−tanh x · (c₁z₁, c₂z₂, c₃z₃)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{self, CMatrix};
use crate::state::{self, CorrelationTriple, DensityMatrix, Subsystem};
use crate::{Error, Result};

const UNIT_TOL: f64 = 1e-12;
const PROBABILITY_TOL: f64 = 1e-12;

/// `V = tI + i y·σ` with `t² + |y|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitaryParams {
    t: f64,
    y: [f64; 3],
}

impl UnitaryParams {
    pub fn new(t: f64, y1: f64, y2: f64, y3: f64) -> Result<Self> {
        let n = t * t + y1 * y1 + y2 * y2 + y3 * y3;
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::UnnormalizedUnitary(n));
        }
        Ok(Self { t, y: [y1, y2, y3] })
    }

    /// Normalises an arbitrary nonzero 4-vector onto the unit 3-sphere.
    pub fn normalized(t: f64, y1: f64, y2: f64, y3: f64) -> Result<Self> {
        let n = (t * t + y1 * y1 + y2 * y2 + y3 * y3).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::UnnormalizedUnitary(n * n));
        }
        Ok(Self {
            t: t / n,
            y: [y1 / n, y2 / n, y3 / n],
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn y(&self) -> [f64; 3] {
        self.y
    }

    /// The 2×2 unitary `tI + i(y₁σ₁ + y₂σ₂ + y₃σ₃)`.
    pub fn matrix(&self) -> CMatrix {
        let mut v = linalg::identity(2) * Complex64::from(self.t);
        for k in 0..3 {
            v += linalg::pauli(k + 1) * (linalg::I * self.y[k]);
        }
        v
    }
}

/// Unit vector `z` such that the measurement's first projector is `½(I + z·σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementDirection([f64; 3]);

impl MeasurementDirection {
    pub fn new(z1: f64, z2: f64, z3: f64) -> Result<Self> {
        let n = z1 * z1 + z2 * z2 + z3 * z3;
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::UnnormalizedDirection(n));
        }
        Ok(Self([z1, z2, z3]))
    }

    pub fn normalized(z1: f64, z2: f64, z3: f64) -> Result<Self> {
        let n = (z1 * z1 + z2 * z2 + z3 * z3).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::UnnormalizedDirection(n * n));
        }
        Ok(Self([z1 / n, z2 / n, z3 / n]))
    }

    /// Direction at polar angle `polar` from the z axis and azimuth `azimuth`.
    pub fn from_spherical(polar: f64, azimuth: f64) -> Self {
        let (sp, cp) = polar.sin_cos();
        let (sa, ca) = azimuth.sin_cos();
        Self([sp * ca, sp * sa, cp])
    }

    /// Polar and azimuthal angles of the direction.
    pub fn to_spherical(&self) -> (f64, f64) {
        let [x, y, z] = self.0;
        (z.clamp(-1.0, 1.0).acos(), y.atan2(x))
    }

    pub fn axis(index: usize) -> Self {
        let mut z = [0.0; 3];
        z[index - 1] = 1.0;
        Self(z)
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn neg(&self) -> Self {
        Self(self.0.map(|v| -v))
    }

    /// Angle to `other` in radians.
    pub fn angle_to(&self, other: &Self) -> f64 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        let dot = a1 * b1 + a2 * b2 + a3 * b3;
        let cross = [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1];
        let cross_norm = cross.iter().map(|v| v * v).sum::<f64>().sqrt();
        cross_norm.atan2(dot)
    }
}

/// `z₁ = 2(−t y₂ + y₁ y₃)`, `z₂ = 2(t y₁ + y₂ y₃)`, `z₃ = t² + y₃² − y₁² − y₂²`.
pub fn direction_from_unitary(u: &UnitaryParams) -> MeasurementDirection {
    let t = u.t;
    let [y1, y2, y3] = u.y;
    MeasurementDirection([
        2.0 * (-t * y2 + y1 * y3),
        2.0 * (t * y1 + y2 * y3),
        t * t + y3 * y3 - y1 * y1 - y2 * y2,
    ])
}

/// Weak-measurement strength `x > 0`; the operators depend on `tanh x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeakStrength(f64);

impl WeakStrength {
    pub fn new(x: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::Domain {
                name: "x",
                value: x,
                domain: "(0, inf)",
            });
        }
        Ok(Self(x))
    }

    pub fn x(&self) -> f64 {
        self.0
    }

    /// `tanh x`. Rounds to exactly 1 once `x` exceeds about 19.
    pub fn strength(&self) -> f64 {
        self.0.tanh()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    Projective,
    Weak,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub probability: f64,
    pub state: DensityMatrix,
}

/// Outcome probabilities and conditional qubit states of a measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredEnsemble {
    outcomes: Vec<Outcome>,
    kind: EnsembleKind,
}

impl MeasuredEnsemble {
    pub fn new(outcomes: Vec<Outcome>, kind: EnsembleKind) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::InvalidEnsemble("no outcomes".into()));
        }
        let mut total = 0.0;
        for o in &outcomes {
            if !(o.probability >= -PROBABILITY_TOL) {
                return Err(Error::InvalidEnsemble(format!(
                    "negative probability {}",
                    o.probability
                )));
            }
            if o.state.dim() != 2 {
                return Err(Error::InvalidEnsemble(format!(
                    "conditional state of dimension {}",
                    o.state.dim()
                )));
            }
            total += o.probability;
        }
        if (total - 1.0).abs() > PROBABILITY_TOL {
            return Err(Error::InvalidEnsemble(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self { outcomes, kind })
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn kind(&self) -> EnsembleKind {
        self.kind
    }

    /// `Σ pᵢ ρᵢ`.
    pub fn average_state(&self) -> DensityMatrix {
        let mut m = CMatrix::zeros(2, 2);
        for o in &self.outcomes {
            m += o.state.matrix() * Complex64::from(o.probability);
        }
        DensityMatrix::from_raw(m)
    }
}

/// Two equiprobable outcomes with Bloch vectors `r` and `−r`.
fn symmetric_pair(r: [f64; 3], kind: EnsembleKind) -> MeasuredEnsemble {
    let plus = DensityMatrix::from_raw(linalg::bloch_operator(r));
    let minus = DensityMatrix::from_raw(linalg::bloch_operator(r.map(|v| -v)));
    MeasuredEnsemble {
        outcomes: vec![
            Outcome {
                probability: 0.5,
                state: plus,
            },
            Outcome {
                probability: 0.5,
                state: minus,
            },
        ],
        kind,
    }
}

fn correlated_bloch(c: &CorrelationTriple, z: &MeasurementDirection, scale: f64) -> [f64; 3] {
    let c = c.as_array();
    let z = z.as_array();
    [scale * c[0] * z[0], scale * c[1] * z[1], scale * c[2] * z[2]]
}

/// Ensemble left on A by projecting B onto `½(I ± z·σ)`: both outcomes have
/// probability ½ and Bloch vectors `±(c₁z₁, c₂z₂, c₃z₃)`.
pub fn projective_ensemble(
    c: &CorrelationTriple,
    z: &MeasurementDirection,
) -> Result<MeasuredEnsemble> {
    c.ensure_physical()?;
    Ok(projective_ensemble_unchecked(c, z))
}

/// As [`projective_ensemble`] without the physicality check. The conditional
/// states are valid for every triple in the cube.
pub fn projective_ensemble_unchecked(
    c: &CorrelationTriple,
    z: &MeasurementDirection,
) -> MeasuredEnsemble {
    symmetric_pair(correlated_bloch(c, z, 1.0), EnsembleKind::Projective)
}

/// Ensemble left on A by the weak measurement `P(±x)` along `z`. Outcome 0
/// (`P(+x)`) carries the Bloch vector `−tanh x·(c₁z₁, c₂z₂, c₃z₃)`.
pub fn weak_ensemble(
    c: &CorrelationTriple,
    z: &MeasurementDirection,
    x: WeakStrength,
) -> Result<MeasuredEnsemble> {
    c.ensure_physical()?;
    Ok(weak_ensemble_unchecked(c, z, x))
}

pub fn weak_ensemble_unchecked(
    c: &CorrelationTriple,
    z: &MeasurementDirection,
    x: WeakStrength,
) -> MeasuredEnsemble {
    symmetric_pair(correlated_bloch(c, z, -x.strength()), EnsembleKind::Weak)
}

/// `[Π₀, Π₁] = [½(I + z·σ), ½(I − z·σ)]`.
pub fn projectors(z: &MeasurementDirection) -> [CMatrix; 2] {
    [
        linalg::bloch_operator(z.0),
        linalg::bloch_operator(z.0.map(|v| -v)),
    ]
}

/// `[P(+x), P(−x)]` along `z`.
pub fn weak_operators(x: WeakStrength, z: &MeasurementDirection) -> [CMatrix; 2] {
    let s = x.strength();
    let small = Complex64::from(((1.0 - s) / 2.0).sqrt());
    let large = Complex64::from(((1.0 + s) / 2.0).sqrt());
    let [p0, p1] = projectors(z);
    [
        &p0 * small + &p1 * large,
        &p0 * large + &p1 * small,
    ]
}

/// Applies `I ⊗ K` for each operator `K` acting on B and returns the
/// normalised conditional states of A with their probabilities.
///
/// A zero-probability outcome is assigned the maximally mixed state.
pub fn ensemble_from_operators(
    rho: &DensityMatrix,
    operators_on_b: &[CMatrix],
    kind: EnsembleKind,
) -> Result<MeasuredEnsemble> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 4,
        });
    }
    let id = linalg::identity(2);
    let mut outcomes = Vec::with_capacity(operators_on_b.len());
    for k in operators_on_b {
        let m = linalg::kron(&id, k);
        let post = &m * rho.matrix() * m.adjoint();
        let p = linalg::trace(&post).re;
        let state = if p > 0.0 {
            let post = DensityMatrix::from_raw(post / Complex64::from(p));
            state::reduced_state(&post, Subsystem::A)?
        } else {
            DensityMatrix::maximally_mixed(2)
        };
        outcomes.push(Outcome {
            probability: p,
            state,
        });
    }
    MeasuredEnsemble::new(outcomes, kind)
}

/// `Σ pᵢ S(ρᵢ)`.
pub fn conditional_entropy(e: &MeasuredEnsemble) -> f64 {
    e.outcomes
        .iter()
        .map(|o| o.probability * state::von_neumann_entropy(&o.state))
        .sum()
}

/// `S(Σ pᵢ ρᵢ) − Σ pᵢ S(ρᵢ)`.
pub fn holevo_of_ensemble(e: &MeasuredEnsemble) -> f64 {
    let chi = state::von_neumann_entropy(&e.average_state()) - conditional_entropy(e);
    chi.max(0.0)
}

/// Discrepancy between two ensembles after the best matching of outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsembleMismatch {
    pub max_trace_distance: f64,
    pub max_probability_error: f64,
    /// Whether the best matching swaps the two outcomes.
    pub swapped: bool,
}

/// Compares two ensembles with the same number of outcomes, up to outcome
/// order. Two-outcome ensembles try both pairings and keep the one with the
/// smaller total trace distance; larger ensembles are compared in order.
pub fn match_ensembles(a: &MeasuredEnsemble, b: &MeasuredEnsemble) -> Result<EnsembleMismatch> {
    let n = a.outcomes.len();
    if n != b.outcomes.len() {
        return Err(Error::DimensionMismatch {
            left: n,
            right: b.outcomes.len(),
        });
    }
    let score = |order: &[usize]| -> Result<(f64, f64, f64)> {
        let mut total = 0.0;
        let mut max_td = 0.0f64;
        let mut max_p = 0.0f64;
        for (i, &j) in order.iter().enumerate() {
            let td = state::trace_distance(&a.outcomes[i].state, &b.outcomes[j].state)?;
            total += td;
            max_td = max_td.max(td);
            max_p = max_p.max((a.outcomes[i].probability - b.outcomes[j].probability).abs());
        }
        Ok((total, max_td, max_p))
    };
    let identity: Vec<usize> = (0..n).collect();
    let (total, max_td, max_p) = score(&identity)?;
    let mut best = EnsembleMismatch {
        max_trace_distance: max_td,
        max_probability_error: max_p,
        swapped: false,
    };
    if n == 2 {
        let (swapped_total, td, p) = score(&[1, 0])?;
        if swapped_total < total {
            best = EnsembleMismatch {
                max_trace_distance: td,
                max_probability_error: p,
                swapped: true,
            };
        }
    }
    Ok(best)
}
