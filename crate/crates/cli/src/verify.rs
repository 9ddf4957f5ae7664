//! Self-verification suites run by `holevo verify`.
//!
//! Inputs are drawn sequentially from a seeded ChaCha stream before any
//! work is spread across threads, and results are reduced in input order,
//! so the report depends only on the flags.

use holevo_core::channels::{self, ChannelKind, ChannelSpec, NoiseSide};
use holevo_core::correlations::{self, c_max, symmetric_pair_holevo};
use holevo_core::linalg::{self, CMatrix};
use holevo_core::measurement::{self, MeasurementDirection, WeakStrength};
use holevo_core::optimizer::{self, MeasurementFamily, OptimizerConfig};
use holevo_core::sampling;
use holevo_core::state::{CorrelationTriple, WernerParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

const WEAK_XS: [f64; 3] = [0.25, 1.0, 2.5];
/// `tanh` of this rounds to 1 in double precision.
const STRONG_X: f64 = 25.0;
const CHANNEL_PS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
    pub grid_points: usize,
    /// Test hook: the oracle suite compares against `1.001·C` instead of `C`.
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub inputs: Value,
    pub expected: f64,
    pub got: f64,
}

impl Case {
    fn error(&self) -> f64 {
        (self.expected - self.got).abs()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub tolerance: f64,
    pub max_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FirstFailure {
    pub suite: &'static str,
    #[serde(flatten)]
    pub case: Case,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub grid_points: usize,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
    pub first_failure: Option<FirstFailure>,
}

struct Suite {
    name: &'static str,
    tolerance: f64,
    cases: Vec<Case>,
}

impl Suite {
    fn report(&self) -> SuiteReport {
        let max_error = self.cases.iter().map(Case::error).fold(0.0, f64::max);
        SuiteReport {
            name: self.name,
            passed: self.first_failure().is_none(),
            cases: self.cases.len(),
            tolerance: self.tolerance,
            max_error,
        }
    }

    fn first_failure(&self) -> Option<&Case> {
        // NaN counts as a failure.
        self.cases.iter().find(|c| !(c.error() < self.tolerance))
    }
}

fn wx(x: f64) -> WeakStrength {
    WeakStrength::new(x).expect("positive strength")
}

fn random_triples(rng: &mut ChaCha8Rng, n: usize) -> Vec<CorrelationTriple> {
    (0..n).map(|_| sampling::random_physical_triple(rng)).collect()
}

fn oracle_agreement(triples: &[CorrelationTriple], opts: &VerifyOptions) -> Suite {
    let fault = if opts.inject_fault { 1.001 } else { 1.0 };
    let mut families = vec![MeasurementFamily::Projective];
    families.extend(WEAK_XS.map(|x| MeasurementFamily::Weak(wx(x))));
    let jobs: Vec<(&CorrelationTriple, MeasurementFamily)> = triples
        .iter()
        .flat_map(|c| families.iter().map(move |&f| (c, f)))
        .collect();
    let cases = jobs
        .par_iter()
        .map(|&(c, family)| {
            let cfg = OptimizerConfig {
                grid_points: opts.grid_points,
                ..OptimizerConfig::default()
            }
            .with_family(family);
            let got = optimizer::maximize_holevo_numeric(c, &cfg)
                .map(|o| o.value)
                .unwrap_or(f64::NAN);
            let (strength, x) = match family {
                MeasurementFamily::Projective => (1.0, Value::Null),
                MeasurementFamily::Weak(x) => (x.strength(), json!(x.x())),
            };
            Case {
                inputs: json!({ "c": c.as_array(), "x": x }),
                expected: symmetric_pair_holevo(fault * c_max(c) * strength),
                got,
            }
        })
        .collect();
    Suite {
        name: "oracle_agreement",
        tolerance: 1e-6,
        cases,
    }
}

/// Moves the largest-magnitude coefficient onto `axis`. The physical region
/// is symmetric under coordinate permutations, so the result stays physical.
fn dominant_on(c: &CorrelationTriple, axis: usize) -> Option<CorrelationTriple> {
    let mut a = c.as_array();
    let top = (0..3)
        .max_by(|&i, &j| a[i].abs().total_cmp(&a[j].abs()))
        .expect("three coefficients");
    a.swap(top, axis);
    let strict = (0..3).filter(|&k| k != axis).all(|k| a[axis].abs() > a[k].abs());
    strict.then(|| CorrelationTriple::new(a[0], a[1], a[2]).expect("permutation of a valid triple"))
}

fn classical_quantities(c: &CorrelationTriple) -> [f64; 4] {
    let x = wx(1.0);
    [
        correlations::maximal_holevo(c),
        correlations::classical_correlation(c),
        correlations::weak_maximal_holevo(c, x),
        correlations::super_classical_correlation(c, x),
    ]
}

fn channel_invariance(triples: &[CorrelationTriple]) -> Suite {
    let names = [
        "maximal_holevo",
        "classical_correlation",
        "weak_maximal_holevo",
        "super_classical_correlation",
    ];
    let mut inputs = Vec::new();
    for (kind, axis) in [(ChannelKind::Bf, 0), (ChannelKind::Pf, 2), (ChannelKind::Bpf, 1)] {
        for c in triples.iter().filter_map(|c| dominant_on(c, axis)) {
            inputs.push((kind, c));
        }
        inputs.push((kind, WernerParams::from_z(0.5).expect("z in range").triple()));
    }
    let cases = inputs
        .iter()
        .flat_map(|&(kind, c)| {
            let base = classical_quantities(&c);
            CHANNEL_PS.iter().flat_map(move |&p| {
                let spec = ChannelSpec::new(kind, p).expect("p in range");
                let after = channels::transformed_c(&c, &spec)
                    .map(|t| classical_quantities(&t))
                    .unwrap_or([f64::NAN; 4]);
                (0..4).map(move |k| Case {
                    inputs: json!({
                        "channel": kind.name(),
                        "p": p,
                        "c": c.as_array(),
                        "quantity": names[k],
                    }),
                    expected: base[k],
                    got: after[k],
                })
            })
        })
        .collect();
    Suite {
        name: "channel_invariance",
        tolerance: 1e-12,
        cases,
    }
}

fn depolarizing_equivalence(
    triples: &[CorrelationTriple],
    directions: &[MeasurementDirection],
    ps: &[f64],
) -> Suite {
    let jobs: Vec<_> = triples
        .iter()
        .zip(directions)
        .zip(ps)
        .flat_map(|((c, z), &p)| [NoiseSide::A, NoiseSide::B].map(|side| (c, z, p, side)))
        .collect();
    let cases = jobs
        .par_iter()
        .map(|&(c, z, p, side)| {
            let got = channels::depolarize_then_project_equivalence(c, z, p, side)
                .map(|e| e.mismatch.max_trace_distance.max(e.mismatch.max_probability_error))
                .unwrap_or(f64::NAN);
            Case {
                inputs: json!({
                    "c": c.as_array(),
                    "z": z.as_array(),
                    "p": p,
                    "side": side,
                }),
                expected: 0.0,
                got,
            }
        })
        .collect();
    Suite {
        name: "depolarizing_equivalence",
        tolerance: 1e-10,
        cases,
    }
}

fn kraus_completeness() -> Suite {
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let mut cases = Vec::new();
    for &p in &grid {
        for kind in [ChannelKind::Bf, ChannelKind::Pf, ChannelKind::Bpf, ChannelKind::Depol1] {
            let spec = ChannelSpec::new(kind, p).expect("p in range");
            cases.push(Case {
                inputs: json!({ "channel": kind.name(), "p": p }),
                expected: 0.0,
                got: channels::completeness_error(&channels::kraus_set(&spec)),
            });
        }
        for &g in &grid {
            let spec = ChannelSpec::gad(p, g).expect("p and gamma in range");
            cases.push(Case {
                inputs: json!({ "channel": "gad", "p": p, "gamma": g }),
                expected: 0.0,
                got: channels::completeness_error(&channels::kraus_set(&spec)),
            });
        }
    }
    Suite {
        name: "kraus_completeness",
        tolerance: 1e-12,
        cases,
    }
}

fn weak_operator_properties(directions: &[MeasurementDirection], xs: &[f64]) -> Suite {
    let id = linalg::identity(2);
    let mut cases = Vec::new();
    for (z, &x) in directions.iter().zip(xs) {
        let [plus, minus] = measurement::weak_operators(wx(x), z);
        let [pi0, pi1] = measurement::projectors(z);
        let completeness: CMatrix = plus.adjoint() * &plus + minus.adjoint() * &minus;
        // P(+x)P(−x) = ½ sech x · I.
        let product = &plus * &minus;
        let sech = Complex64::from(0.5 / x.cosh());
        let hermitian = linalg::max_abs_diff(&plus, &plus.adjoint())
            .max(linalg::max_abs_diff(&minus, &minus.adjoint()));
        let checks = [
            ("completeness", linalg::max_abs_diff(&completeness, &id)),
            ("product", linalg::max_abs_diff(&product, &(&id * sech))),
            ("hermiticity", hermitian),
        ];
        for (property, got) in checks {
            cases.push(Case {
                inputs: json!({ "x": x, "z": z.as_array(), "property": property }),
                expected: 0.0,
                got,
            });
        }
        // Strong limit: the pair tends to the projectors, up to labels.
        let [sp, sm] = measurement::weak_operators(wx(STRONG_X), z);
        cases.push(Case {
            inputs: json!({ "x": STRONG_X, "z": z.as_array(), "property": "strong_limit" }),
            expected: 0.0,
            got: linalg::max_abs_diff(&sp, &pi1).max(linalg::max_abs_diff(&sm, &pi0)),
        });
    }
    Suite {
        name: "weak_operator_properties",
        tolerance: 1e-10,
        cases,
    }
}

pub fn run(opts: &VerifyOptions) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let triples = random_triples(&mut rng, opts.samples);
    let directions: Vec<_> = (0..opts.samples)
        .map(|_| sampling::random_direction(&mut rng))
        .collect();
    let ps: Vec<f64> = (0..opts.samples)
        .map(|_| rng.random_range(1e-3..0.749))
        .collect();
    let xs: Vec<f64> = (0..opts.samples)
        .map(|_| rng.random_range(0.01..5.0))
        .collect();

    let suites = [
        oracle_agreement(&triples, opts),
        channel_invariance(&triples),
        depolarizing_equivalence(&triples, &directions, &ps),
        kraus_completeness(),
        weak_operator_properties(&directions, &xs),
    ];
    let first_failure = suites.iter().find_map(|s| {
        s.first_failure().map(|case| FirstFailure {
            suite: s.name,
            case: case.clone(),
        })
    });
    VerifyReport {
        seed: opts.seed,
        samples: opts.samples,
        grid_points: opts.grid_points,
        passed: first_failure.is_none(),
        suites: suites.iter().map(Suite::report).collect(),
        first_failure,
    }
}
