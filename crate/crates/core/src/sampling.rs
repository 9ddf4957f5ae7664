//! Seeded random inputs for property suites and the verification command.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::measurement::{MeasurementDirection, UnitaryParams};
use crate::state::CorrelationTriple;

/// Uniform sample from the set of physical triples (the tetrahedron with
/// vertices at the four Bell states), by rejection from the cube.
pub fn random_physical_triple<R: Rng + ?Sized>(rng: &mut R) -> CorrelationTriple {
    loop {
        let c = [0; 3].map(|_| rng.random_range(-1.0..=1.0));
        let c = CorrelationTriple::new(c[0], c[1], c[2]).expect("sampled inside the cube");
        if c.is_physical() {
            return c;
        }
    }
}

/// Haar-random `V = tI + i y·σ`: a uniform point on the unit 3-sphere.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> UnitaryParams {
    loop {
        let g: [f64; 4] = [0; 4].map(|_| StandardNormal.sample(rng));
        if let Ok(u) = UnitaryParams::normalized(g[0], g[1], g[2], g[3]) {
            return u;
        }
    }
}

/// Uniform direction on the unit 2-sphere.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> MeasurementDirection {
    loop {
        let g: [f64; 3] = [0; 3].map(|_| StandardNormal.sample(rng));
        if let Ok(d) = MeasurementDirection::normalized(g[0], g[1], g[2]) {
            return d;
        }
    }
}
