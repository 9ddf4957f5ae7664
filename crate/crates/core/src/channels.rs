//! Local decoherence channels acting on Bell-diagonal states.
//!
//! Each channel exists in two forms: an explicit Kraus set applied to the
//! 4×4 density matrix, and the induced map on the correlation triple. The
//! bit flip, phase flip, bit-phase flip and generalized amplitude damping
//! channels act identically on both qubits; single-qubit depolarizing noise
//! acts on one side only.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::correlations::{self, MeasureReport, Physicality};
use crate::linalg::{self, CMatrix, ONE, ZERO};
use crate::measurement::{self, EnsembleMismatch, MeasurementDirection, WeakStrength};
use crate::state::{self, CorrelationTriple, DensityMatrix};
use crate::{Error, Result};

/// Strength returned by [`weak_from_noise`] when `1 − 4p/3` rounds to 1.
pub const SATURATED_X: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    /// Bit flip.
    Bf,
    /// Phase flip.
    Pf,
    /// Bit-phase flip.
    Bpf,
    /// Generalized amplitude damping.
    Gad,
    /// Depolarizing noise on a single qubit.
    Depol1,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 5] = [Self::Bf, Self::Pf, Self::Bpf, Self::Gad, Self::Depol1];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Bf => "bf",
            Self::Pf => "pf",
            Self::Bpf => "bpf",
            Self::Gad => "gad",
            Self::Depol1 => "depol1",
        }
    }
}

/// Which qubit single-qubit depolarizing noise acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum NoiseSide {
    #[default]
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    kind: ChannelKind,
    p: f64,
    gamma: Option<f64>,
}

fn check_probability(name: &'static str, v: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(Error::Domain {
            name,
            value: v,
            domain: "[0, 1]",
        })
    }
}

impl ChannelSpec {
    /// A bit flip, phase flip, bit-phase flip or depolarizing channel.
    pub fn new(kind: ChannelKind, p: f64) -> Result<Self> {
        if kind == ChannelKind::Gad {
            return Err(Error::Domain {
                name: "gamma",
                value: f64::NAN,
                domain: "required for GAD; use ChannelSpec::gad",
            });
        }
        Ok(Self {
            kind,
            p: check_probability("p", p)?,
            gamma: None,
        })
    }

    pub fn gad(p: f64, gamma: f64) -> Result<Self> {
        Ok(Self {
            kind: ChannelKind::Gad,
            p: check_probability("p", p)?,
            gamma: Some(check_probability("gamma", gamma)?),
        })
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }
}

fn real(v: f64) -> Complex64 {
    Complex64::from(v)
}

/// Single-qubit Kraus operators of the channel.
pub fn kraus_set(spec: &ChannelSpec) -> Vec<CMatrix> {
    let p = spec.p;
    let flip = |k: usize| {
        vec![
            linalg::identity(2) * real((1.0 - p / 2.0).sqrt()),
            linalg::pauli(k) * real((p / 2.0).sqrt()),
        ]
    };
    match spec.kind {
        ChannelKind::Bf => flip(1),
        ChannelKind::Pf => flip(3),
        ChannelKind::Bpf => flip(2),
        ChannelKind::Gad => {
            let g = spec.gamma.expect("GAD spec carries gamma");
            let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
            let (d, s) = (real((1.0 - g).sqrt()), real(g.sqrt()));
            vec![
                CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, d]) * real(sp),
                CMatrix::from_row_slice(2, 2, &[ZERO, s, ZERO, ZERO]) * real(sp),
                CMatrix::from_row_slice(2, 2, &[d, ZERO, ZERO, ONE]) * real(sq),
                CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, s, ZERO]) * real(sq),
            ]
        }
        ChannelKind::Depol1 => {
            let w = real((p / 3.0).sqrt());
            vec![
                linalg::identity(2) * real((1.0 - p).sqrt()),
                linalg::pauli(1) * w,
                linalg::pauli(2) * w,
                linalg::pauli(3) * w,
            ]
        }
    }
}

/// `‖Σ E†E − I‖_max` of a Kraus set.
pub fn completeness_error(ops: &[CMatrix]) -> f64 {
    let mut sum = CMatrix::zeros(2, 2);
    for e in ops {
        sum += e.adjoint() * e;
    }
    linalg::max_abs_diff(&sum, &linalg::identity(2))
}

/// Applies the channel: `Σᵢⱼ (Eᵢ⊗Eⱼ) ρ (Eᵢ⊗Eⱼ)†` for the two-sided channels,
/// `Σᵢ (Dᵢ⊗I) ρ (Dᵢ⊗I)†` for depolarizing noise (on qubit A).
pub fn apply_two_sided(rho: &DensityMatrix, spec: &ChannelSpec) -> Result<DensityMatrix> {
    apply_channel(rho, spec, NoiseSide::A)
}

/// As [`apply_two_sided`], choosing the qubit for depolarizing noise. The
/// side is ignored for the two-sided channels.
pub fn apply_channel(
    rho: &DensityMatrix,
    spec: &ChannelSpec,
    side: NoiseSide,
) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 4,
        });
    }
    let ops = kraus_set(spec);
    let id = linalg::identity(2);
    let locals: Vec<CMatrix> = match spec.kind {
        ChannelKind::Depol1 => ops
            .iter()
            .map(|d| match side {
                NoiseSide::A => linalg::kron(d, &id),
                NoiseSide::B => linalg::kron(&id, d),
            })
            .collect(),
        _ => ops
            .iter()
            .flat_map(|a| ops.iter().map(move |b| linalg::kron(a, b)))
            .collect(),
    };
    let mut out = CMatrix::zeros(4, 4);
    for k in &locals {
        out += k * rho.matrix() * k.adjoint();
    }
    Ok(DensityMatrix::from_raw(out))
}

/// `cᵢ = tr(ρ σᵢ⊗σᵢ)`.
pub fn read_correlations(rho: &DensityMatrix) -> Result<[f64; 3]> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 4,
        });
    }
    Ok([1, 2, 3].map(|k| {
        let s = linalg::pauli(k);
        linalg::trace(&(rho.matrix() * linalg::kron(&s, &s))).re
    }))
}

/// Reads back the correlation triple of a two-qubit state.
pub fn correlation_readback(rho: &DensityMatrix) -> Result<CorrelationTriple> {
    let [a, b, c] = read_correlations(rho)?;
    CorrelationTriple::new(a.clamp(-1.0, 1.0), b.clamp(-1.0, 1.0), c.clamp(-1.0, 1.0))
}

/// Image of the correlation triple under the channel. GAD is only
/// Bell-diagonal-preserving at `p = 1/2` and is rejected otherwise.
pub fn transformed_c(c: &CorrelationTriple, spec: &ChannelSpec) -> Result<CorrelationTriple> {
    let q = (1.0 - spec.p) * (1.0 - spec.p);
    let factors = match spec.kind {
        ChannelKind::Bf => [1.0, q, q],
        ChannelKind::Pf => [q, q, 1.0],
        ChannelKind::Bpf => [q, 1.0, q],
        ChannelKind::Gad => {
            if spec.p != 0.5 {
                return Err(Error::GadRequiresHalf(spec.p));
            }
            let g = 1.0 - spec.gamma.expect("GAD spec carries gamma");
            [g, g, g * g]
        }
        ChannelKind::Depol1 => [1.0 - 4.0 * spec.p / 3.0; 3],
    };
    Ok(c.scaled_by(factors))
}

/// Full measure report of the state after the channel.
pub fn measures_under_channel(
    c: &CorrelationTriple,
    spec: &ChannelSpec,
    x: Option<WeakStrength>,
) -> Result<MeasureReport> {
    let out = transformed_c(c, spec)?;
    MeasureReport::compute(&out, x, Physicality::Enforce)
}

fn check_werner_gad(z: f64, gamma: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::Domain {
            name: "z",
            value: z,
            domain: "[0, 1]",
        });
    }
    check_probability("gamma", gamma)?;
    Ok(())
}

/// `((1−u)/2) log₂(1−u) + ((1+u)/2) log₂(1+u)`.
fn pair_holevo_log_form(u: f64) -> f64 {
    0.5 * (correlations::xlog2x(1.0 - u) + correlations::xlog2x(1.0 + u))
}

/// Maximal Holevo quantity of a Werner state after GAD (`p = 1/2`),
/// evaluated at `u = z(1−γ)`.
pub fn gad_maximal_holevo_werner(z: f64, gamma: f64) -> Result<f64> {
    check_werner_gad(z, gamma)?;
    Ok(pair_holevo_log_form(z * (1.0 - gamma)))
}

/// Weak maximal Holevo quantity of a Werner state after GAD (`p = 1/2`),
/// evaluated at `u = z(1−γ) tanh x`.
pub fn gad_weak_maximal_holevo_werner(z: f64, gamma: f64, x: WeakStrength) -> Result<f64> {
    check_werner_gad(z, gamma)?;
    Ok(pair_holevo_log_form(z * (1.0 - gamma) * x.strength()))
}

/// Weak-measurement strength equivalent to depolarizing noise of
/// probability `p` followed by a projective measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseStrength {
    pub x: WeakStrength,
    /// `1 − 4p/3` rounded to 1 and `x` was capped at [`SATURATED_X`].
    pub saturated: bool,
}

/// `x = artanh(1 − 4p/3)` for `p ∈ (0, 3/4)`.
pub fn weak_from_noise(p: f64) -> Result<NoiseStrength> {
    if !(p > 0.0 && p < 0.75) {
        return Err(Error::Domain {
            name: "p",
            value: p,
            domain: "(0, 3/4)",
        });
    }
    let s = 1.0 - 4.0 * p / 3.0;
    let x = s.atanh();
    if x.is_finite() && x <= SATURATED_X {
        Ok(NoiseStrength {
            x: WeakStrength::new(x)?,
            saturated: false,
        })
    } else {
        Ok(NoiseStrength {
            x: WeakStrength::new(SATURATED_X)?,
            saturated: true,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DepolarizingEquivalence {
    pub p: f64,
    pub x: f64,
    pub strength: f64,
    pub side: NoiseSide,
    #[serde(flatten)]
    pub mismatch: EnsembleMismatch,
}

/// Depolarizes one qubit of `bell_diagonal(c)` with probability `p`,
/// measures B projectively along `z`, and compares the resulting ensemble
/// with the weak measurement of strength `artanh(1 − 4p/3)` on the
/// undisturbed state.
pub fn depolarize_then_project_equivalence(
    c: &CorrelationTriple,
    z: &MeasurementDirection,
    p: f64,
    side: NoiseSide,
) -> Result<DepolarizingEquivalence> {
    let strength = weak_from_noise(p)?;
    let rho = state::bell_diagonal(c)?;
    let noisy = apply_channel(&rho, &ChannelSpec::new(ChannelKind::Depol1, p)?, side)?;
    let noisy_c = correlation_readback(&noisy)?;
    let projected = measurement::projective_ensemble(&noisy_c, z)?;
    let weak = measurement::weak_ensemble(c, z, strength.x)?;
    let mismatch = measurement::match_ensembles(&projected, &weak)?;
    Ok(DepolarizingEquivalence {
        p,
        x: strength.x.x(),
        strength: strength.x.strength(),
        side,
        mismatch,
    })
}
