//! The hodograph transform between 1-jets of the sphere and cooriented
//! contact elements of Euclidean space, plus the wavefront dictionary.
//!
//! A contact element of `ℝⁿ` is a point with a unit conormal; the space of
//! all of them is the spherical cotangent bundle `ST*ℝⁿ`, realized here as
//! `ℝⁿ × Sⁿ⁻¹` through the Euclidean metric. The transform used throughout
//! is
//!
//! ```text
//! (q, p, u) ∈ J¹(Sⁿ⁻¹)  ↦  (u·q + p, q) ∈ ST*ℝⁿ
//! ```
//!
//! which takes the zero section onto the fibre over the origin. It preserves
//! the contact forms on the nose: with `|q| = 1` and `p ⊥ q`,
//! `⟨q, d(uq + p)⟩ = du + u⟨q,dq⟩ + ⟨q,dp⟩ = du − p·dq`, using
//! `⟨q,dq⟩ = 0` and `d⟨p,q⟩ = 0`. [`contact_form_check`] verifies this
//! identity by finite differences along constrained random curves.
//!
//! Under this dictionary the graph Legendrian of the potential
//! `f(q) = ⟨y,q⟩ + t` is exactly the lift of the sphere of radius `|t|`
//! around `y`, cooriented outwards for `t > 0` and inwards for `t < 0`; the
//! radius-zero case is the full fibre over `y`.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::base::{BaseDomain, ScalarField};
use crate::vecn;
use crate::{tol, Error, Result};

/// A cooriented contact element: base point plus unit conormal.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactElement {
    pub point: Vec<f64>,
    pub conormal: Vec<f64>,
}

impl ContactElement {
    pub fn new(point: Vec<f64>, conormal: Vec<f64>) -> Result<ContactElement> {
        if point.len() != conormal.len() {
            return Err(Error::InvalidInput(
                "contact element point and conormal dimensions differ".into(),
            ));
        }
        if point.iter().chain(&conormal).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("contact element".into()));
        }
        if (vecn::norm(&conormal) - 1.0).abs() > tol::UNIT_NORM {
            return Err(Error::InvalidInput(format!(
                "conormal has norm {}",
                vecn::norm(&conormal)
            )));
        }
        Ok(ContactElement { point, conormal })
    }
}

/// A point of the 1-jet space of the sphere: `(q, p, u)` with `|q| = 1` and
/// `p` tangent at `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct JetPoint {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub u: f64,
}

impl JetPoint {
    pub fn new(q: Vec<f64>, p: Vec<f64>, u: f64) -> Result<JetPoint> {
        if q.len() != p.len() {
            return Err(Error::InvalidInput(
                "jet point q and p dimensions differ".into(),
            ));
        }
        if !u.is_finite() || q.iter().chain(&p).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("jet point".into()));
        }
        if (vecn::norm(&q) - 1.0).abs() > tol::UNIT_NORM {
            return Err(Error::InvalidInput(format!("|q| = {} ≠ 1", vecn::norm(&q))));
        }
        if vecn::dot(&p, &q).abs() > tol::ORTHOGONALITY {
            return Err(Error::InvalidInput(format!(
                "p is not tangent: ⟨p,q⟩ = {:e}",
                vecn::dot(&p, &q)
            )));
        }
        Ok(JetPoint { q, p, u })
    }
}

/// Forward hodograph: `(q, p, u) ↦ (u·q + p, q)`.
pub fn hodograph_forward(j: &JetPoint) -> Result<ContactElement> {
    let point = vecn::add(&vecn::scale(&j.q, j.u), &j.p);
    ContactElement::new(point, j.q.clone())
}

/// Inverse hodograph: `q = ν`, `u = ⟨x, ν⟩`, `p = x − u·ν`.
pub fn hodograph_inverse(c: &ContactElement) -> Result<JetPoint> {
    let u = vecn::dot(&c.point, &c.conormal);
    let p = vecn::sub(&c.point, &vecn::scale(&c.conormal, u));
    JetPoint::new(c.conormal.clone(), p, u)
}

/// Result of the contact-form pullback audit.
#[derive(Debug, Clone, Serialize)]
pub struct FormCheckReport {
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Check that the pullback of the canonical form `⟨ν, dx⟩` along the forward
/// hodograph equals `du − p·dq`, at `sample_count` random jet points and
/// constrained random tangent directions, by central differences.
pub fn contact_form_check(sample_count: usize, seed: u64) -> Result<FormCheckReport> {
    if sample_count == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1e-5;
    let mut max_dev: f64 = 0.0;
    for k in 0..sample_count {
        let dim = 2 + (k % 3); // mix of S¹, S², S³ ambient dimensions
        let j = random_jet_point(&mut rng, dim);
        // constrained curve through j: q(s) = normalize(q + s a) with a ⊥ q,
        // p(s) = tangential part of p + s b, u(s) = u + s c
        let a = vecn::project_tangent(&gaussian(&mut rng, dim), &j.q);
        let b = gaussian(&mut rng, dim);
        let c: f64 = rng.sample(StandardNormal);

        let at = |s: f64| -> (Vec<f64>, Vec<f64>, f64) {
            let q = vecn::normalized(&vecn::add(&j.q, &vecn::scale(&a, s)));
            let p = vecn::project_tangent(&vecn::add(&j.p, &vecn::scale(&b, s)), &q);
            (q, p, j.u + s * c)
        };

        let (qp, pp, up) = at(h);
        let (qm, pm, um) = at(-h);
        let xp = vecn::add(&vecn::scale(&qp, up), &pp);
        let xm = vecn::add(&vecn::scale(&qm, um), &pm);

        let x_dot = vecn::scale(&vecn::sub(&xp, &xm), 0.5 / h);
        let q_dot = vecn::scale(&vecn::sub(&qp, &qm), 0.5 / h);
        let u_dot = (up - um) / (2.0 * h);

        let pullback = vecn::dot(&j.q, &x_dot);
        let jet_form = u_dot - vecn::dot(&j.p, &q_dot);
        max_dev = max_dev.max((pullback - jet_form).abs());
    }
    Ok(FormCheckReport {
        samples: sample_count,
        max_deviation: max_dev,
        tolerance: tol::CONTACT_FORM,
        passed: max_dev < tol::CONTACT_FORM,
    })
}

fn gaussian(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.sample(StandardNormal)).collect()
}

/// Random jet point with unit `q`, tangent `p`, bounded `u`.
pub fn random_jet_point(rng: &mut ChaCha8Rng, dim: usize) -> JetPoint {
    loop {
        let raw = gaussian(rng, dim);
        if vecn::norm(&raw) < 1e-3 {
            continue;
        }
        let q = vecn::normalized(&raw);
        let p = vecn::project_tangent(&gaussian(rng, dim), &q);
        let u: f64 = rng.sample(StandardNormal);
        if let Ok(j) = JetPoint::new(q, p, 2.0 * u) {
            return j;
        }
    }
}

/// Coorientation of a wavefront sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coorientation {
    Inward,
    Outward,
}

/// A sphere in `ℝⁿ` with a coorientation; radius zero stands for the full
/// fibre of contact elements over the centre (the coorientation is ignored
/// there).
#[derive(Debug, Clone)]
pub struct CoorientedSphere {
    pub center: Vec<f64>,
    pub radius: f64,
    pub coorientation: Coorientation,
}

impl CoorientedSphere {
    pub fn new(
        center: Vec<f64>,
        radius: f64,
        coorientation: Coorientation,
    ) -> Result<CoorientedSphere> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::InvalidInput("sphere radius must be ≥ 0".into()));
        }
        if center.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("sphere centre".into()));
        }
        Ok(CoorientedSphere {
            center,
            radius,
            coorientation,
        })
    }

    fn check_signed_radius(&self, t: f64) -> Result<()> {
        if (t.abs() - self.radius).abs() > tol::UNIT_NORM {
            return Err(Error::InvalidInput(format!(
                "|t| = {} does not match the radius {}",
                t.abs(),
                self.radius
            )));
        }
        if self.radius > 0.0 {
            let expected = if t < 0.0 {
                Coorientation::Inward
            } else {
                Coorientation::Outward
            };
            if self.coorientation != expected {
                return Err(Error::InvalidInput(format!(
                    "sign of t = {t} does not match the {:?} coorientation",
                    self.coorientation
                )));
            }
        }
        Ok(())
    }
}

/// Potential of the graph Legendrian matching the lifted sphere:
/// `f(q) = ⟨y, q⟩ + t` sampled on the given sphere domain.
pub fn sphere_to_graph(
    s: &CoorientedSphere,
    t: f64,
    domain: &Arc<BaseDomain>,
) -> Result<ScalarField> {
    s.check_signed_radius(t)?;
    if domain.ambient_dim() != s.center.len() {
        return Err(Error::DomainMismatch(format!(
            "sphere centre in ℝ{} vs domain in ℝ{}",
            s.center.len(),
            domain.ambient_dim()
        )));
    }
    let y = s.center.clone();
    ScalarField::from_fn(domain.clone(), move |q| vecn::dot(&y, q) + t)
}

/// Sampled Legendrian lift of the cooriented sphere: `{(y + t·q, q)}`.
pub fn lift_sphere(
    s: &CoorientedSphere,
    t: f64,
    domain: &Arc<BaseDomain>,
) -> Result<Vec<ContactElement>> {
    s.check_signed_radius(t)?;
    domain
        .samples()
        .iter()
        .map(|q| {
            let point = vecn::add(&s.center, &vecn::scale(q, t));
            ContactElement::new(point, q.clone())
        })
        .collect()
}

/// Exact jet cloud of the linear-plus-constant potential `⟨y,·⟩ + t`.
pub fn linear_potential_jets(y: &[f64], t: f64, domain: &Arc<BaseDomain>) -> Result<Vec<JetPoint>> {
    domain
        .samples()
        .iter()
        .map(|q| {
            let u = vecn::dot(y, q) + t;
            let p = vecn::project_tangent(y, q);
            JetPoint::new(q.clone(), p, u)
        })
        .collect()
}

/// Verify the wavefront dictionary pointwise: the forward hodograph of the
/// graph of `⟨y,·⟩ + t` must equal the lift of the sphere `S(y, |t|)`.
/// Returns the maximal pointwise deviation.
pub fn wavefront_dictionary_check(
    s: &CoorientedSphere,
    t: f64,
    domain: &Arc<BaseDomain>,
) -> Result<f64> {
    let jets = linear_potential_jets(&s.center, t, domain)?;
    let lift = lift_sphere(s, t, domain)?;
    let mut max_dev: f64 = 0.0;
    for (j, l) in jets.iter().zip(&lift) {
        let image = hodograph_forward(j)?;
        let dp = vecn::norm(&vecn::sub(&image.point, &l.point));
        let dn = vecn::norm(&vecn::sub(&image.conormal, &l.conormal));
        max_dev = max_dev.max(dp).max(dn);
    }
    Ok(max_dev)
}
