//! Brute-force extremisation over measurement directions.
//!
//! The search evaluates the Holevo quantity (or the conditional entropy) of
//! the ensemble prepared by a measurement along every point of a Fibonacci
//! lattice on the unit sphere, then polishes the best few grid points with a
//! Nelder-Mead simplex in (polar, azimuth) coordinates. Nothing here uses
//! the closed forms in [`crate::correlations`]; it exists to check them.

use std::cmp::Ordering;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::measurement::{self, MeasuredEnsemble, MeasurementDirection, WeakStrength};
use crate::state::CorrelationTriple;
use crate::{Error, Result};

pub const MIN_GRID_POINTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementFamily {
    Projective,
    Weak(WeakStrength),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub grid_points: usize,
    pub refine_iters: usize,
    pub refine_tol: f64,
    /// Number of best grid points used as refinement starts.
    pub restarts: usize,
    pub family: MeasurementFamily,
    pub allow_unphysical: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_points: 20_000,
            refine_iters: 200,
            refine_tol: 1e-10,
            restarts: 5,
            family: MeasurementFamily::Projective,
            allow_unphysical: false,
        }
    }
}

impl OptimizerConfig {
    pub fn weak(x: WeakStrength) -> Self {
        Self {
            family: MeasurementFamily::Weak(x),
            ..Self::default()
        }
    }

    pub fn with_family(self, family: MeasurementFamily) -> Self {
        Self { family, ..self }
    }

    fn validate(&self) -> Result<()> {
        if self.grid_points < MIN_GRID_POINTS {
            return Err(Error::Domain {
                name: "grid_points",
                value: self.grid_points as f64,
                domain: "[1000, inf)",
            });
        }
        if !(self.refine_tol > 0.0) || self.restarts == 0 {
            return Err(Error::Domain {
                name: "refine_tol",
                value: self.refine_tol,
                domain: "(0, inf) with at least one restart",
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RefineStatus {
    Converged,
    /// The simplex did not shrink below `refine_tol` within `refine_iters`;
    /// the optimum still carries the best value seen.
    NotConverged,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Optimum {
    pub value: f64,
    pub direction: MeasurementDirection,
    pub theta_at_optimum: f64,
    pub status: RefineStatus,
}

impl Optimum {
    pub fn converged(&self) -> bool {
        self.status == RefineStatus::Converged
    }
}

/// `θ = |(c₁z₁, c₂z₂, c₃z₃)|`, the Bloch length of the projective
/// conditional states.
pub fn theta(c: &CorrelationTriple, z: &MeasurementDirection) -> f64 {
    c.as_array()
        .iter()
        .zip(z.as_array())
        .map(|(c, z)| (c * z) * (c * z))
        .sum::<f64>()
        .sqrt()
}

/// `n` near-uniform directions on a Fibonacci lattice, ordered by
/// decreasing `z₃`.
pub fn sphere_grid(n: usize) -> Vec<MeasurementDirection> {
    assert!(n >= 1, "sphere grid needs at least one point");
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * i as f64;
            MeasurementDirection::normalized(r * phi.cos(), r * phi.sin(), z)
                .expect("lattice points are nonzero")
        })
        .collect()
}

/// Orders candidates by value, breaking exact ties toward the
/// lexicographically largest `(z₃, z₂, z₁)`.
fn candidate_order(a: &(f64, MeasurementDirection), b: &(f64, MeasurementDirection)) -> Ordering {
    a.0.total_cmp(&b.0).then_with(|| {
        let [a1, a2, a3] = a.1.as_array();
        let [b1, b2, b3] = b.1.as_array();
        a3.total_cmp(&b3)
            .then(a2.total_cmp(&b2))
            .then(a1.total_cmp(&b1))
    })
}

#[derive(Clone, Copy)]
enum Objective {
    Holevo,
    ConditionalEntropy,
}

struct Problem {
    c: CorrelationTriple,
    family: MeasurementFamily,
    objective: Objective,
}

impl Problem {
    fn ensemble(&self, z: &MeasurementDirection) -> MeasuredEnsemble {
        match self.family {
            MeasurementFamily::Projective => measurement::projective_ensemble_unchecked(&self.c, z),
            MeasurementFamily::Weak(x) => measurement::weak_ensemble_unchecked(&self.c, z, x),
        }
    }

    fn value(&self, z: &MeasurementDirection) -> f64 {
        let e = self.ensemble(z);
        match self.objective {
            Objective::Holevo => measurement::holevo_of_ensemble(&e),
            Objective::ConditionalEntropy => measurement::conditional_entropy(&e),
        }
    }

    /// Score to maximise.
    fn score(&self, z: &MeasurementDirection) -> f64 {
        match self.objective {
            Objective::Holevo => self.value(z),
            Objective::ConditionalEntropy => -self.value(z),
        }
    }
}

/// Maximises the Holevo quantity of the ensemble prepared on A over all
/// measurement directions on B.
pub fn maximize_holevo_numeric(c: &CorrelationTriple, cfg: &OptimizerConfig) -> Result<Optimum> {
    optimize(c, cfg, Objective::Holevo)
}

/// Minimises the average conditional entropy of A over all measurement
/// directions on B.
pub fn minimize_conditional_entropy_numeric(
    c: &CorrelationTriple,
    cfg: &OptimizerConfig,
) -> Result<Optimum> {
    optimize(c, cfg, Objective::ConditionalEntropy)
}

fn optimize(c: &CorrelationTriple, cfg: &OptimizerConfig, objective: Objective) -> Result<Optimum> {
    cfg.validate()?;
    if !cfg.allow_unphysical {
        c.ensure_physical()?;
    }
    let problem = Problem {
        c: *c,
        family: cfg.family,
        objective,
    };

    let mut scored: Vec<(f64, MeasurementDirection)> = sphere_grid(cfg.grid_points)
        .into_par_iter()
        .map(|z| (problem.score(&z), z))
        .collect();
    scored.sort_by(|a, b| candidate_order(b, a));

    // Typical spacing between lattice neighbours.
    let step = (4.0 * PI / cfg.grid_points as f64).sqrt();
    let mut best = scored[0];
    let mut all_converged = true;
    for &(_, start) in scored.iter().take(cfg.restarts) {
        let refined = nelder_mead(&problem, start, step, cfg);
        all_converged &= refined.converged;
        let candidate = (refined.score, refined.direction);
        if candidate_order(&candidate, &best) == Ordering::Greater {
            best = candidate;
        }
    }

    let direction = best.1;
    Ok(Optimum {
        value: problem.value(&direction),
        direction,
        theta_at_optimum: theta(c, &direction),
        status: if all_converged {
            RefineStatus::Converged
        } else {
            RefineStatus::NotConverged
        },
    })
}

struct Refined {
    score: f64,
    direction: MeasurementDirection,
    converged: bool,
}

/// Nelder-Mead ascent on `(polar, azimuth)` starting at `start` with an
/// initial simplex of edge `step`.
fn nelder_mead(
    problem: &Problem,
    start: MeasurementDirection,
    step: f64,
    cfg: &OptimizerConfig,
) -> Refined {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let f = |p: [f64; 2]| -problem.score(&MeasurementDirection::from_spherical(p[0], p[1]));

    let (polar, azimuth) = start.to_spherical();
    let mut simplex = [
        [polar, azimuth],
        [polar + step, azimuth],
        [polar, azimuth + step],
    ];
    let mut values = simplex.map(f);
    let mut converged = false;

    for _ in 0..cfg.refine_iters {
        // Sort ascending: best (lowest) first.
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = idx.map(|i| simplex[i]);
        values = idx.map(|i| values[i]);

        if values[2] - values[0] <= cfg.refine_tol {
            converged = true;
            break;
        }

        let centroid = [
            (simplex[0][0] + simplex[1][0]) / 2.0,
            (simplex[0][1] + simplex[1][1]) / 2.0,
        ];
        let along = |t: f64| {
            [
                centroid[0] + t * (simplex[2][0] - centroid[0]),
                centroid[1] + t * (simplex[2][1] - centroid[1]),
            ]
        };

        let reflected = along(-REFLECT);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = along(-EXPAND);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let (contracted, fc) = if fr < values[2] {
                let p = along(-CONTRACT);
                (p, f(p))
            } else {
                let p = along(CONTRACT);
                (p, f(p))
            };
            if fc < values[2].min(fr) {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for k in 1..3 {
                    simplex[k] = [
                        simplex[0][0] + SHRINK * (simplex[k][0] - simplex[0][0]),
                        simplex[0][1] + SHRINK * (simplex[k][1] - simplex[0][1]),
                    ];
                    values[k] = f(simplex[k]);
                }
            }
        }
    }

    let best = (0..3)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .expect("simplex has three vertices");
    let p = simplex[best];
    Refined {
        score: -values[best],
        direction: MeasurementDirection::from_spherical(p[0], p[1]),
        converged,
    }
}
