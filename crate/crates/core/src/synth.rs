//! Deterministic generators for randomized audits: trigonometric fields,
//! events, and perturbed generating functions. Every generator takes the
//! caller's RNG so suites and tests stay reproducible under a single seed.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::base::{BaseDomain, ScalarField};
use crate::causality::MinkowskiEvent;
use crate::expr::bump;
use crate::genfun::{AuxGrid, GeneratingFunction, QuadraticForm, Sigma, SigmaFn};
use crate::vecn;
use crate::Result;

/// Trigonometric polynomial on the circle:
/// `a + Σ_k (b_k cos kθ + c_k sin kθ)`.
pub fn trig_field(
    domain: &Arc<BaseDomain>,
    constant: f64,
    cos_coeffs: Vec<f64>,
    sin_coeffs: Vec<f64>,
) -> Result<ScalarField> {
    ScalarField::from_fn(domain.clone(), move |q| {
        let theta = q[1].atan2(q[0]);
        let mut acc = constant;
        for (k, b) in cos_coeffs.iter().enumerate() {
            acc += b * ((k + 1) as f64 * theta).cos();
        }
        for (k, c) in sin_coeffs.iter().enumerate() {
            acc += c * ((k + 1) as f64 * theta).sin();
        }
        acc
    })
}

/// Random trigonometric field with harmonics up to `max_harmonic` and
/// coefficients of size `amplitude`.
pub fn random_trig_field(
    domain: &Arc<BaseDomain>,
    rng: &mut ChaCha8Rng,
    max_harmonic: usize,
    amplitude: f64,
) -> Result<ScalarField> {
    let constant = amplitude * rng.gen_range(-1.0..1.0);
    let cos_coeffs = (0..max_harmonic)
        .map(|_| amplitude * rng.gen_range(-1.0..1.0))
        .collect();
    let sin_coeffs = (0..max_harmonic)
        .map(|_| amplitude * rng.gen_range(-1.0..1.0))
        .collect();
    trig_field(domain, constant, cos_coeffs, sin_coeffs)
}

/// Random event with `t` and the components of `y` drawn uniformly from the
/// given ranges.
pub fn random_event(
    rng: &mut ChaCha8Rng,
    space_dim: usize,
    t_range: (f64, f64),
    y_range: (f64, f64),
) -> MinkowskiEvent {
    let t = rng.gen_range(t_range.0..t_range.1);
    let y = (0..space_dim)
        .map(|_| rng.gen_range(y_range.0..y_range.1))
        .collect();
    MinkowskiEvent { t, y }
}

/// Random unit vector from the rotation-invariant distribution.
pub fn random_unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        if vecn::norm(&v) > 1e-3 {
            return vecn::normalized(&v);
        }
    }
}

/// Random generating function: either the graph of a random trigonometric
/// field (no auxiliary variables) or such a graph dressed with one auxiliary
/// axis and a compactly supported bump perturbation.
pub fn random_genfun(
    domain: &Arc<BaseDomain>,
    rng: &mut ChaCha8Rng,
    aux_points: usize,
) -> Result<GeneratingFunction> {
    let field = random_trig_field(domain, rng, 3, 1.0)?;
    match rng.gen_range(0..3u32) {
        0 => Ok(GeneratingFunction::graph(field)),
        1 => GeneratingFunction::graph(field).stabilize(if rng.gen_bool(0.5) { 1.0 } else { -1.0 }),
        _ => {
            // one auxiliary axis, σ = a · bump(ξ/R) · (c₀ + c₁ q₁ + c₂ q₂)
            let support = 1.0;
            let a = 0.5 * rng.gen_range(-1.0..1.0);
            let c0 = rng.gen_range(-1.0..1.0);
            let c1 = rng.gen_range(-1.0..1.0);
            let c2 = rng.gen_range(-1.0..1.0);
            let sigma: SigmaFn = Arc::new(move |q: &[f64], xi: &[f64]| {
                a * bump(xi[0] / support) * (c0 + c1 * q[0] + c2 * q[1])
            });
            let coeff = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let q_form = if coeff > 0.0 {
                QuadraticForm::new(vec![1.0], vec![])?
            } else {
                QuadraticForm::new(vec![], vec![-1.0])?
            };
            GeneratingFunction::new(
                domain.clone(),
                q_form,
                Sigma::Analytic(sigma),
                support,
                AuxGrid::new(aux_points, 1.5 * support)?,
            )
        }
    }
}
