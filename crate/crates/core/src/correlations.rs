//! Closed-form correlation measures of Bell-diagonal states.
//!
//! For a Bell-diagonal state every measurement on B leaves A with two
//! equiprobable qubit states whose Bloch vectors have length
//! `θ = |(c₁z₁, c₂z₂, c₃z₃)|`, scaled by `tanh x` for a weak measurement.
//! The average state is `I/2`, so the Holevo quantity is `1 − H₂((1+θ)/2)`,
//! which increases with `θ` and is maximised at `θ = C = maxᵢ |cᵢ|`.
//! All measures here are assembled from that observation.

use serde::Serialize;

use crate::measurement::WeakStrength;
use crate::state::{self, CorrelationTriple, WernerParams};
use crate::{Error, Result};

const DOMAIN_SLACK: f64 = 1e-12;

/// `H₂(p) = −p log₂ p − (1−p) log₂(1−p)`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&p) {
        return Err(Error::Domain {
            name: "p",
            value: p,
            domain: "[0, 1]",
        });
    }
    let p = p.clamp(0.0, 1.0);
    Ok(neg_xlog2x(p) + neg_xlog2x(1.0 - p))
}

/// `−x log₂ x` with the convention `0 log 0 = 0`.
fn neg_xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// `x log₂ x`, zero at zero.
pub(crate) fn xlog2x(x: f64) -> f64 {
    -neg_xlog2x(x)
}

/// Holevo quantity `1 − H₂((1+r)/2)` of the equiprobable pair `½(I ± r·σ)`
/// with `|r| = length ∈ [0, 1]`.
pub fn symmetric_pair_holevo(length: f64) -> f64 {
    let h = binary_entropy((1.0 + length.clamp(0.0, 1.0)) / 2.0)
        .expect("(1 + r)/2 lies in [1/2, 1]");
    1.0 - h
}

/// `C = max{|c₁|, |c₂|, |c₃|}`.
pub fn c_max(c: &CorrelationTriple) -> f64 {
    c.as_array().iter().fold(0.0, |m, v| f64::max(m, v.abs()))
}

/// Holevo quantity maximised over projective measurements on B.
pub fn maximal_holevo(c: &CorrelationTriple) -> f64 {
    symmetric_pair_holevo(c_max(c))
}

/// `S(ρ_A) − min Σ pᵢ S(ρ_{A|i})`. Evaluated from the marginal entropy
/// and the minimal conditional entropy; equal to [`maximal_holevo`].
pub fn classical_correlation(c: &CorrelationTriple) -> f64 {
    let marginal_entropy = 1.0;
    marginal_entropy - min_conditional_entropy(c_max(c))
}

/// `H₂((1+θ)/2)`, the conditional entropy reached at Bloch length `θ`.
fn min_conditional_entropy(theta: f64) -> f64 {
    binary_entropy((1.0 + theta.clamp(0.0, 1.0)) / 2.0).expect("(1 + θ)/2 lies in [1/2, 1]")
}

/// Holevo quantity maximised over weak measurements of strength `x`.
pub fn weak_maximal_holevo(c: &CorrelationTriple, x: WeakStrength) -> f64 {
    symmetric_pair_holevo(c_max(c) * x.strength())
}

/// Weak-measurement analogue of [`classical_correlation`]; equal to
/// [`weak_maximal_holevo`].
pub fn super_classical_correlation(c: &CorrelationTriple, x: WeakStrength) -> f64 {
    1.0 - min_conditional_entropy(c_max(c) * x.strength())
}

/// `I(ρ) − J_B(ρ)`.
pub fn discord_bell_diagonal(c: &CorrelationTriple) -> Result<f64> {
    Ok(state::mutual_information(c)? - classical_correlation(c))
}

/// `I(ρ) − J_B^w(ρ)`.
pub fn super_discord_bell_diagonal(c: &CorrelationTriple, x: WeakStrength) -> Result<f64> {
    Ok(state::mutual_information(c)? - super_classical_correlation(c, x))
}

/// Concurrence-like quantity `max(0, (2α−1)/(2−α))` of a Werner state.
pub fn werner_tau(w: &WernerParams) -> f64 {
    let a = w.alpha();
    ((2.0 * a - 1.0) / (2.0 - a)).max(0.0)
}

/// Entanglement of formation `h(½(1 + √(1 − τ²)))` of a Werner state.
pub fn eof_werner(w: &WernerParams) -> f64 {
    let tau = werner_tau(w).min(1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - tau * tau).sqrt())).expect("argument lies in [1/2, 1]")
}

/// Closed form of the discord of a Werner state, in the variable
/// `z`. Kept separate from [`discord_bell_diagonal`] so the two can be
/// checked against each other.
pub fn werner_discord_closed_form(z: f64) -> f64 {
    0.25 * xlog2x(1.0 - z) - 0.5 * xlog2x(1.0 + z)
        + 0.25 * xlog2x(1.0 + 3.0 * z)
}

/// Closed form of the super discord of a Werner state.
pub fn werner_super_discord_closed_form(z: f64, x: WeakStrength) -> f64 {
    let s = z * x.strength();
    let a = (1.0 - z) / 4.0;
    let b = (1.0 + 3.0 * z) / 4.0;
    3.0 * xlog2x(a) + xlog2x(b) + 1.0 - (xlog2x((1.0 - s) / 2.0) + xlog2x((1.0 + s) / 2.0))
}

/// Whether the physicality of the input triple is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Physicality {
    #[default]
    Enforce,
    AllowUnphysical,
}

/// Every correlation measure of one Bell-diagonal input.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub c: [f64; 3],
    pub x: Option<f64>,
    pub mutual_information: f64,
    pub maximal_holevo: f64,
    pub classical_correlation: f64,
    pub weak_maximal_holevo: Option<f64>,
    pub super_classical_correlation: Option<f64>,
    pub discord: f64,
    pub super_discord: Option<f64>,
    /// Present only for Werner triples `(−z, −z, −z)`.
    pub eof: Option<f64>,
}

impl MeasureReport {
    pub fn compute(
        c: &CorrelationTriple,
        x: Option<WeakStrength>,
        physicality: Physicality,
    ) -> Result<Self> {
        let mutual_information = match physicality {
            Physicality::Enforce => state::mutual_information(c)?,
            Physicality::AllowUnphysical => state::mutual_information_unchecked(c),
        };
        let maximal_holevo = maximal_holevo(c);
        let classical_correlation = classical_correlation(c);
        let weak = x.map(|x| (weak_maximal_holevo(c, x), super_classical_correlation(c, x)));
        let report = Self {
            c: c.as_array(),
            x: x.map(|x| x.x()),
            mutual_information,
            maximal_holevo,
            classical_correlation,
            weak_maximal_holevo: weak.map(|w| w.0),
            super_classical_correlation: weak.map(|w| w.1),
            discord: mutual_information - classical_correlation,
            super_discord: weak.map(|w| mutual_information - w.1),
            eof: WernerParams::from_triple(c).map(|w| eof_werner(&w)),
        };
        debug_assert!(report.invariant_violations().is_empty());
        Ok(report)
    }

    pub fn werner(w: &WernerParams, x: Option<WeakStrength>) -> Result<Self> {
        let mut report = Self::compute(&w.triple(), x, Physicality::Enforce)?;
        report.eof = Some(eof_werner(w));
        Ok(report)
    }

    /// Names of the report invariants that fail at 1e-12.
    pub fn invariant_violations(&self) -> Vec<&'static str> {
        let tol = 1e-12;
        let close = |a: f64, b: f64| (a - b).abs() <= tol;
        let mut out = Vec::new();
        if !close(self.classical_correlation, self.maximal_holevo) {
            out.push("classical_correlation = maximal_holevo");
        }
        if let (Some(a), Some(b)) = (self.super_classical_correlation, self.weak_maximal_holevo) {
            if !close(a, b) {
                out.push("super_classical_correlation = weak_maximal_holevo");
            }
        }
        if !close(self.discord, self.mutual_information - self.classical_correlation) {
            out.push("discord = mutual_information - classical_correlation");
        }
        if let (Some(d), Some(j)) = (self.super_discord, self.super_classical_correlation) {
            if !close(d, self.mutual_information - j) {
                out.push("super_discord = mutual_information - super_classical_correlation");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn triple(a: f64, b: f64, c: f64) -> CorrelationTriple {
        CorrelationTriple::new(a, b, c).unwrap()
    }

    fn werner(z: f64) -> CorrelationTriple {
        WernerParams::from_z(z).unwrap().triple()
    }

    fn wx(x: f64) -> WeakStrength {
        WeakStrength::new(x).unwrap()
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        let direct = -0.95 * 0.95f64.log2() - 0.05 * 0.05f64.log2();
        assert_abs_diff_eq!(binary_entropy(0.95).unwrap(), direct, epsilon = 1e-15);
        assert_abs_diff_eq!(binary_entropy(0.95).unwrap(), 0.28640, epsilon = 5e-6);
        assert_abs_diff_eq!(
            binary_entropy(0.95).unwrap(),
            1.0 - maximal_holevo(&triple(0.9, 0.0, 0.0)),
            epsilon = 1e-15
        );
        assert!(binary_entropy(1.1).is_err());
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
        assert_eq!(binary_entropy(1.0 + 1e-13).unwrap(), 0.0);
    }

    #[test]
    fn c_max_values() {
        assert_eq!(c_max(&triple(0.5, 0.3, 0.1)), 0.5);
        assert_eq!(c_max(&werner(0.7)), 0.7);
        assert_eq!(c_max(&CorrelationTriple::zero()), 0.0);
        assert_eq!(c_max(&triple(0.1, -0.8, 0.2)), 0.8);
    }

    #[test]
    fn maximal_holevo_values() {
        assert_eq!(maximal_holevo(&CorrelationTriple::zero()), 0.0);
        assert_eq!(maximal_holevo(&triple(1.0, 0.0, 0.0)), 1.0);
        assert_abs_diff_eq!(maximal_holevo(&triple(0.9, 0.0, 0.0)), 0.71360, epsilon = 5e-6);
        // Log form (1−C)/2 log(1−C) + (1+C)/2 log(1+C).
        let cc = 0.9f64;
        let log_form = (1.0 - cc) / 2.0 * (1.0 - cc).log2() + (1.0 + cc) / 2.0 * (1.0 + cc).log2();
        assert_abs_diff_eq!(maximal_holevo(&triple(cc, 0.0, 0.0)), log_form, epsilon = 1e-14);
    }

    #[test]
    fn classical_correlation_values() {
        assert_eq!(classical_correlation(&CorrelationTriple::zero()), 0.0);
        let expected = 0.25 * 0.5f64.log2() + 0.75 * 1.5f64.log2();
        assert_abs_diff_eq!(classical_correlation(&werner(0.5)), expected, epsilon = 1e-14);
        assert_abs_diff_eq!(classical_correlation(&werner(0.5)), 0.18872, epsilon = 5e-6);
        for c in [triple(0.5, 0.3, 0.1), werner(0.2), triple(-0.4, 0.6, 0.0)] {
            assert_abs_diff_eq!(classical_correlation(&c), maximal_holevo(&c), epsilon = 1e-15);
        }
    }

    #[test]
    fn weak_maximal_holevo_values() {
        let c = triple(0.5, 0.3, 0.1);
        assert_abs_diff_eq!(
            weak_maximal_holevo(&c, wx(20.0)),
            maximal_holevo(&c),
            epsilon = 1e-12
        );
        assert_eq!(weak_maximal_holevo(&CorrelationTriple::zero(), wx(0.7)), 0.0);

        let s = 0.5 * 0.25f64.tanh();
        assert_abs_diff_eq!(s, 0.12246, epsilon = 5e-6);
        let log_form = (1.0 - s) / 2.0 * (1.0 - s).log2() + (1.0 + s) / 2.0 * (1.0 + s).log2();
        let got = weak_maximal_holevo(&werner(0.5), wx(0.25));
        assert_abs_diff_eq!(got, log_form, epsilon = 1e-14);
        assert!(got < maximal_holevo(&werner(0.5)));

        let s = 0.5 * 1.0f64.tanh();
        let log_form = (1.0 - s) / 2.0 * (1.0 - s).log2() + (1.0 + s) / 2.0 * (1.0 + s).log2();
        assert_abs_diff_eq!(super_classical_correlation(&c, wx(1.0)), log_form, epsilon = 1e-14);
        assert_abs_diff_eq!(
            super_classical_correlation(&c, wx(20.0)),
            classical_correlation(&c),
            epsilon = 1e-15
        );
    }

    #[test]
    fn discord_values() {
        assert_abs_diff_eq!(
            discord_bell_diagonal(&CorrelationTriple::zero()).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            discord_bell_diagonal(&triple(-1.0, -1.0, -1.0)).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        for k in 0..=100 {
            let z = k as f64 / 100.0;
            assert_abs_diff_eq!(
                discord_bell_diagonal(&werner(z)).unwrap(),
                werner_discord_closed_form(z),
                epsilon = 1e-12
            );
            for x in [0.25, 1.0, 2.5] {
                assert_abs_diff_eq!(
                    super_discord_bell_diagonal(&werner(z), wx(x)).unwrap(),
                    werner_super_discord_closed_form(z, wx(x)),
                    epsilon = 1e-12
                );
            }
        }
        let c = triple(0.5, 0.3, 0.1);
        assert_abs_diff_eq!(
            super_discord_bell_diagonal(&c, wx(20.0)).unwrap(),
            discord_bell_diagonal(&c).unwrap(),
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            super_discord_bell_diagonal(&CorrelationTriple::zero(), wx(0.3)).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert!(discord_bell_diagonal(&triple(1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn eof_values() {
        for alpha in [-1.0, -0.2, 0.0, 0.3, 0.5] {
            assert_eq!(eof_werner(&WernerParams::from_alpha(alpha).unwrap()), 0.0);
        }
        assert_abs_diff_eq!(eof_werner(&WernerParams::from_z(1.0).unwrap()), 1.0, epsilon = 1e-12);

        let w = WernerParams::from_z(0.8).unwrap();
        assert_abs_diff_eq!(w.alpha(), 8.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(werner_tau(&w), 0.7, epsilon = 1e-14);
        assert_abs_diff_eq!(werner_tau(&w), (3.0 * 0.8 - 1.0) / 2.0, epsilon = 1e-14);
        let expected = binary_entropy(0.5 * (1.0 + 0.51f64.sqrt())).unwrap();
        assert_abs_diff_eq!(eof_werner(&w), expected, epsilon = 1e-14);
    }

    #[test]
    fn report_invariants_hold() {
        let r = MeasureReport::compute(&triple(0.5, 0.3, 0.1), Some(wx(1.0)), Physicality::Enforce)
            .unwrap();
        assert!(r.invariant_violations().is_empty());
        assert!(r.eof.is_none());

        let w = WernerParams::from_z(0.5).unwrap();
        let r = MeasureReport::werner(&w, Some(wx(1.0))).unwrap();
        assert!(r.eof.is_some());
        assert_abs_diff_eq!(r.classical_correlation, 0.18872, epsilon = 5e-6);

        let zero = MeasureReport::compute(&CorrelationTriple::zero(), None, Physicality::Enforce)
            .unwrap();
        assert_abs_diff_eq!(zero.mutual_information, 0.0, epsilon = 1e-12);
        assert_eq!(zero.maximal_holevo, 0.0);
        assert!(zero.super_discord.is_none());

        let bad = triple(1.0, 1.0, 1.0);
        assert!(MeasureReport::compute(&bad, None, Physicality::Enforce).is_err());
        let r = MeasureReport::compute(&bad, None, Physicality::AllowUnphysical).unwrap();
        assert_eq!(r.maximal_holevo, 1.0);
    }
}
