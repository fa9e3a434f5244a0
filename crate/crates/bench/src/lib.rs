//! Shared inputs for the benchmarks.

use poincare_charges::{AlgebraElement, Bivector, Body, DustBlob, Event, MinkVector, PForm, Particle};

/// A fixed 2-form on Minkowski space with all components nonzero.
pub fn sample_two_form() -> PForm {
    PForm::from_independent(4, 2, |idx| 0.3 + idx[0] as f64 - 0.7 * idx[1] as f64)
}

pub fn sample_generator() -> AlgebraElement {
    AlgebraElement::from_raw(
        MinkVector::new(0.4, -1.2, 0.3, 0.9),
        Bivector::from_independent([0.8, -0.2, 0.5, 1.1, -0.6, 0.3]),
    )
}

/// Three moving blobs on a circle, orbiting the z-axis.
pub fn spinning_blobs() -> Body {
    let mut blobs = Vec::new();
    for k in 0..3 {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
        let (s, c) = phi.sin_cos();
        let blob = DustBlob::moving([-0.3 * s, 0.3 * c, 0.0], Event::new(0.0, 2.0 * c, 2.0 * s, 0.0), 0.8, 1.0)
            .expect("subluminal blob");
        blobs.push(blob);
    }
    Body::from_blobs(blobs)
}

pub fn particle_swarm(n: usize) -> Body {
    Body::from_particles(
        (0..n)
            .map(|i| {
                let x = i as f64 / n as f64;
                Particle::moving(1.0 + x, [0.5 * x, -0.2, 0.1], Event::new(0.0, x, 1.0 - x, 0.5))
                    .expect("subluminal particle")
            })
            .collect(),
    )
}
