//! Flat Minkowski spacetime `ℝ^{1,n}` with signature `(+,−,…,−)`.
//!
//! The module provides the causal order in its exact flat-space form
//! (`x ≪ z` iff `Δt > |Δy|`, straight timelike segments suffice), the
//! Alexandrov interval machinery, and the sky dictionary: with the Cauchy
//! surface `{0}×ℝⁿ` fixed, the sky of an event `(t, y)` — the Legendrian
//! sphere of null geodesics through it — corresponds to the graph Legendrian
//! of the potential
//!
//! ```text
//! f(q) = ⟨y, q⟩ + t       on Sⁿ⁻¹,
//! ```
//!
//! the lift of the sphere of radius `|t|` around `y`, cooriented by the sign
//! of `t`. Its minimax invariants are `c± = t ± |y|` in closed form; the
//! grid-minimax path through the generating-function scan is kept as a
//! consistency oracle.
//!
//! Positivity of the sky isotopy along a curve is decided by the pairing of
//! the curve velocity with null directions: for velocity `(dt, dy)` and a
//! null direction `(1, v)`, `A(v) = dt − ⟨v, dy⟩`; the minimum over `v` has
//! the same sign as the metric classification (`dt − |dy|` in closed form).
//! The grid minimum is polished by an angle-halving ascent towards the
//! optimal direction, mirroring the bracket-then-polish treatment of
//! fibre-critical points.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::base::{BaseDomain, ScalarField};
use crate::genfun::{GeneratingFunction, MinimaxPair};
use crate::order::{self, GraphLegendrian, IntervalSpec};
use crate::vecn;
use crate::{tol, Error, Result};

/// An event `(t, y)` of `ℝ^{1,n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiEvent {
    pub t: f64,
    pub y: Vec<f64>,
}

impl MinkowskiEvent {
    pub fn new(t: f64, y: Vec<f64>) -> Result<MinkowskiEvent> {
        if !t.is_finite() || y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("event coordinates".into()));
        }
        Ok(MinkowskiEvent { t, y })
    }

    pub fn space_dim(&self) -> usize {
        self.y.len()
    }
}

/// A velocity `(dt, dy)` at an event.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VelocityVector {
    pub dt: f64,
    pub dy: Vec<f64>,
}

/// Causal type of a velocity; the null boundary is resolved within
/// [`tol::NULL_BOUNDARY`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalClass {
    FutureTimelike,
    FutureCausalNull,
    Spacelike,
    PastCausal,
    PastTimelike,
    Zero,
}

/// Classify by the Minkowski square `dt² − |dy|²` and the sign of `dt`.
pub fn classify_vector(v: &VelocityVector) -> CausalClass {
    let space = vecn::norm(&v.dy);
    if v.dt == 0.0 && space == 0.0 {
        return CausalClass::Zero;
    }
    if (v.dt.abs() - space).abs() <= tol::NULL_BOUNDARY {
        return if v.dt > 0.0 {
            CausalClass::FutureCausalNull
        } else {
            CausalClass::PastCausal
        };
    }
    if v.dt.abs() > space {
        if v.dt > 0.0 {
            CausalClass::FutureTimelike
        } else {
            CausalClass::PastTimelike
        }
    } else {
        CausalClass::Spacelike
    }
}

/// Chronology `x ≪ z`: a future-directed timelike curve from `x` to `z`
/// exists, i.e. `Δt > |Δy|` in flat space.
pub fn chronology(x: &MinkowskiEvent, z: &MinkowskiEvent) -> bool {
    let dt = z.t - x.t;
    dt > vecn::norm(&vecn::sub(&z.y, &x.y))
}

/// Causality `x ≤ z`: equality or a future-directed causal curve,
/// i.e. `x = z` or `Δt ≥ |Δy|` with `Δt > 0`.
pub fn causal(x: &MinkowskiEvent, z: &MinkowskiEvent) -> bool {
    if x == z {
        return true;
    }
    let dt = z.t - x.t;
    dt > 0.0 && dt >= vecn::norm(&vecn::sub(&z.y, &x.y))
}

/// Membership in the Alexandrov interval `(a, b) = I⁺(a) ∩ I⁻(b)`.
pub fn alexandrov_contains(a: &MinkowskiEvent, b: &MinkowskiEvent, z: &MinkowskiEvent) -> bool {
    chronology(a, z) && chronology(z, b)
}

/// Report of the Alexandrov-basis probe around an event.
#[derive(Debug, Clone, Serialize)]
pub struct AlexandrovProbe {
    pub epsilon: f64,
    pub samples_in_interval: usize,
    pub max_euclidean_distance: f64,
    pub contained_in_ball: bool,
}

/// Sample the interval between `(t−ε, y)` and `(t+ε, y)` with `ε = δ/2` and
/// verify every member lies within Euclidean distance `δ` of the event —
/// the Alexandrov topology refines to the manifold topology around `x`.
pub fn alexandrov_basis_probe(
    x: &MinkowskiEvent,
    delta: f64,
    samples: usize,
    seed: u64,
) -> Result<AlexandrovProbe> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidInput("probe radius must be positive".into()));
    }
    let epsilon = delta / 2.0;
    let a = MinkowskiEvent::new(x.t - epsilon, x.y.clone())?;
    let b = MinkowskiEvent::new(x.t + epsilon, x.y.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = x.space_dim();
    let mut hits = 0;
    let mut max_dist: f64 = 0.0;
    while hits < samples {
        let t = x.t + rng.gen_range(-epsilon..epsilon);
        let y: Vec<f64> =
            x.y.iter()
                .map(|c| c + rng.gen_range(-epsilon..epsilon))
                .collect();
        let z = MinkowskiEvent { t, y };
        if alexandrov_contains(&a, &b, &z) {
            hits += 1;
            let mut d2 = (z.t - x.t) * (z.t - x.t);
            for k in 0..n {
                d2 += (z.y[k] - x.y[k]) * (z.y[k] - x.y[k]);
            }
            max_dist = max_dist.max(d2.sqrt());
        }
    }
    Ok(AlexandrovProbe {
        epsilon,
        samples_in_interval: hits,
        max_euclidean_distance: max_dist,
        contained_in_ball: max_dist < delta,
    })
}

/// The sky of an event: its potential on the null-direction sphere, the
/// closed-form invariants `t ± |y|`, and the grid-minimax pair kept as a
/// consistency record.
#[derive(Debug, Clone)]
pub struct SkyDescriptor {
    pub event: MinkowskiEvent,
    pub potential: ScalarField,
    /// Closed form `(t − |y|, t + |y|)`; this is what the audits serve.
    pub closed_pair: (f64, f64),
    /// The same invariants through the generating-function scan.
    pub invariants_pair: MinimaxPair,
}

impl SkyDescriptor {
    pub fn c_minus(&self) -> f64 {
        self.closed_pair.0
    }

    pub fn c_plus(&self) -> f64 {
        self.closed_pair.1
    }
}

/// Build the sky of `x` over the given null-direction sphere domain.
///
/// Errors with a cross-check diagnostic if the grid-minimax invariants leave
/// the [`tol::SKY_CROSS_CHECK`] tube around the closed form.
pub fn sky(x: &MinkowskiEvent, domain: &Arc<BaseDomain>) -> Result<SkyDescriptor> {
    if domain.ambient_dim() != x.space_dim() {
        return Err(Error::DomainMismatch(format!(
            "event in ℝ^(1+{}) vs sphere in ℝ{}",
            x.space_dim(),
            domain.ambient_dim()
        )));
    }
    let y = x.y.clone();
    let t = x.t;
    let potential = ScalarField::from_fn(domain.clone(), move |q| vecn::dot(&y, q) + t)?;
    let speed = vecn::norm(&x.y);
    let closed_pair = (x.t - speed, x.t + speed);
    let invariants_pair = GeneratingFunction::graph(potential.clone()).invariants()?;
    let dev = (invariants_pair.c_minus - closed_pair.0)
        .abs()
        .max((invariants_pair.c_plus - closed_pair.1).abs());
    if dev > tol::SKY_CROSS_CHECK {
        return Err(Error::CrossCheck(format!(
            "sky invariants: closed form ({}, {}) vs grid ({}, {})",
            closed_pair.0, closed_pair.1, invariants_pair.c_minus, invariants_pair.c_plus
        )));
    }
    Ok(SkyDescriptor {
        event: x.clone(),
        potential,
        closed_pair,
        invariants_pair,
    })
}

/// Outcome of the order audit for one pair of events.
#[derive(Debug, Clone, Serialize)]
pub struct SkyOrderReport {
    pub chronological: bool,
    pub pointwise_strict: bool,
    pub c_minus_increases: bool,
    pub c_plus_increases: bool,
    /// The empirical converse: pointwise strict order forces chronology.
    pub converse_holds: Option<bool>,
}

/// Audit the compatibility of chronology with the order on skies.
///
/// For `x ≪ z` the potentials must be strictly ordered pointwise and both
/// invariants must strictly increase; any failure is a theorem violation.
/// For non-chronological pairs there is no claim, but the empirical converse
/// is recorded: if the potentials are strictly ordered pointwise, chronology
/// should hold as well.
pub fn sky_order_audit(
    x: &MinkowskiEvent,
    z: &MinkowskiEvent,
    domain: &Arc<BaseDomain>,
) -> Result<SkyOrderReport> {
    let sx = sky(x, domain)?;
    let sz = sky(z, domain)?;
    let strict = order::pointwise_lt(&sx.potential, &sz.potential)?.holds;
    let c_minus_up = sx.c_minus() < sz.c_minus();
    let c_plus_up = sx.c_plus() < sz.c_plus();
    let chronological = chronology(x, z);
    if chronological && !(strict && c_minus_up && c_plus_up) {
        return Err(Error::TheoremViolation(format!(
            "x ≪ z but sky order fails: strict = {strict}, c₋ up = {c_minus_up}, c₊ up = {c_plus_up}"
        )));
    }
    let converse_holds = if !chronological && strict {
        Some(chronological) // recorded as false: the converse failed here
    } else if strict {
        Some(true)
    } else {
        None
    };
    Ok(SkyOrderReport {
        chronological,
        pointwise_strict: strict,
        c_minus_increases: c_minus_up,
        c_plus_increases: c_plus_up,
        converse_holds,
    })
}

/// A sampled curve in spacetime.
#[derive(Debug, Clone)]
pub struct SampledCurve {
    pub params: Vec<f64>,
    pub events: Vec<MinkowskiEvent>,
}

impl SampledCurve {
    pub fn new(params: Vec<f64>, events: Vec<MinkowskiEvent>) -> Result<SampledCurve> {
        if params.len() < 2 || params.len() != events.len() {
            return Err(Error::InvalidInput(
                "a curve needs at least two parametrized events".into(),
            ));
        }
        let increasing =
            |w: &[f64]| matches!(w[1].partial_cmp(&w[0]), Some(std::cmp::Ordering::Greater));
        if !params.windows(2).all(increasing) {
            return Err(Error::InvalidInput(
                "curve parameters must strictly increase".into(),
            ));
        }
        let n = events[0].space_dim();
        if events.iter().any(|e| e.space_dim() != n) {
            return Err(Error::DomainMismatch(
                "curve events of mixed dimension".into(),
            ));
        }
        Ok(SampledCurve { params, events })
    }

    /// Forward difference-quotient velocities, one per parameter interval.
    pub fn velocities(&self) -> Vec<VelocityVector> {
        self.params
            .windows(2)
            .zip(self.events.windows(2))
            .map(|(ps, es)| {
                let ds = ps[1] - ps[0];
                VelocityVector {
                    dt: (es[1].t - es[0].t) / ds,
                    dy: es[1]
                        .y
                        .iter()
                        .zip(&es[0].y)
                        .map(|(b, a)| (b - a) / ds)
                        .collect(),
                }
            })
            .collect()
    }
}

/// Classification of the sky isotopy along a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveClass {
    Positive,
    Nonnegative,
    Neither,
}

/// Per-velocity audit data.
#[derive(Debug, Clone, Serialize)]
pub struct VelocityAudit {
    pub velocity: VelocityVector,
    /// Minimum of `A(v) = dt − ⟨v, dy⟩` over the null-direction grid.
    pub grid_min: f64,
    /// The grid minimum polished towards the true optimal direction.
    pub refined_min: f64,
    /// Closed form `dt − |dy|`.
    pub closed_min: f64,
    pub class: CausalClass,
}

/// Full report of [`curve_positivity`].
#[derive(Debug, Clone, Serialize)]
pub struct CurveReport {
    pub class: CurveClass,
    pub per_velocity: Vec<VelocityAudit>,
}

/// Minimum of `A(v) = dt − ⟨v, dy⟩` over the sampled null directions,
/// polished: starting from the best grid direction, repeatedly bisect the
/// angle towards `dy` (the sum of two unit vectors halves the angle), which
/// converges to the true minimizer `v = dy/|dy|` without using it.
fn min_null_pairing(v: &VelocityVector, domain: &Arc<BaseDomain>) -> (f64, f64) {
    let speed = vecn::norm(&v.dy);
    if speed == 0.0 {
        return (v.dt, v.dt);
    }
    let mut best = f64::INFINITY;
    let mut best_dir: &[f64] = domain.sample(0);
    for q in domain.samples() {
        let a = v.dt - vecn::dot(q, &v.dy);
        if a < best {
            best = a;
            best_dir = q;
        }
    }
    let grid_min = best;
    let mut dir = best_dir.to_vec();
    let mut refined = grid_min;
    for _ in 0..64 {
        let towards = vecn::normalized(&vecn::add(&dir, &vecn::scale(&v.dy, 1.0 / speed)));
        let a = v.dt - vecn::dot(&towards, &v.dy);
        if (refined - a).abs() <= f64::EPSILON * (1.0 + a.abs()) {
            refined = refined.min(a);
            break;
        }
        if a < refined {
            refined = a;
            dir = towards;
        } else {
            break;
        }
    }
    (grid_min, refined)
}

/// Classify a curve by pairing its velocities with sampled null directions.
///
/// A velocity is positive when every pairing is positive, causal when none
/// is negative (within [`tol::NULL_BOUNDARY`]); the curve classification is
/// the weakest velocity verdict. Each refined grid minimum is cross-checked
/// against the metric classification of the velocity; disagreement is a
/// numerics bug and errors out.
pub fn curve_positivity(curve: &SampledCurve, domain: &Arc<BaseDomain>) -> Result<CurveReport> {
    let n = curve.events[0].space_dim();
    if domain.ambient_dim() != n {
        return Err(Error::DomainMismatch(format!(
            "curve in ℝ^(1+{n}) vs null sphere in ℝ{}",
            domain.ambient_dim()
        )));
    }
    let mut per_velocity = Vec::new();
    let mut all_timelike = true;
    let mut all_causal = true;
    for v in curve.velocities() {
        let (grid_min, refined_min) = min_null_pairing(&v, domain);
        let closed_min = v.dt - vecn::norm(&v.dy);
        let class = classify_vector(&v);
        let sign_positive = refined_min > tol::NULL_BOUNDARY;
        let sign_zero = refined_min.abs() <= tol::NULL_BOUNDARY;
        let consistent = match class {
            CausalClass::FutureTimelike => sign_positive,
            CausalClass::FutureCausalNull => sign_zero,
            CausalClass::Zero => sign_zero,
            _ => refined_min < -tol::NULL_BOUNDARY,
        };
        if !consistent {
            return Err(Error::CrossCheck(format!(
                "null-pairing minimum {refined_min:e} disagrees with metric class {class:?} \
                 (closed form {closed_min:e})"
            )));
        }
        match class {
            CausalClass::FutureTimelike => {}
            CausalClass::FutureCausalNull | CausalClass::Zero => all_timelike = false,
            _ => {
                all_timelike = false;
                all_causal = false;
            }
        }
        per_velocity.push(VelocityAudit {
            velocity: v,
            grid_min,
            refined_min,
            closed_min,
            class,
        });
    }
    let class = if all_timelike {
        CurveClass::Positive
    } else if all_causal {
        CurveClass::Nonnegative
    } else {
        CurveClass::Neither
    };
    Ok(CurveReport {
        class,
        per_velocity,
    })
}

/// One row of an escape audit.
#[derive(Debug, Clone, Serialize)]
pub struct EscapeRow {
    pub index: usize,
    pub c_minus: f64,
    pub c_plus: f64,
    pub abs_sum: f64,
    pub in_interval: bool,
}

/// Report of [`escape_audit`].
#[derive(Debug, Clone, Serialize)]
pub struct EscapeReport {
    pub rows: Vec<EscapeRow>,
    /// Index after which interval membership never recovers.
    pub first_permanent_exit: Option<usize>,
    /// Whether `|c₊| + |c₋|` strictly increases along the sequence.
    pub abs_sum_strictly_increasing: bool,
}

/// Track a sequence of events against a fixed probe interval: membership of
/// each sky in `(sky(a), sky(b))` and the growth of `|c₊| + |c₋|`. The probe
/// events must be chronologically ordered so the interval is well formed.
pub fn escape_audit(
    sequence: &[MinkowskiEvent],
    probe_a: &MinkowskiEvent,
    probe_b: &MinkowskiEvent,
    domain: &Arc<BaseDomain>,
) -> Result<EscapeReport> {
    if sequence.is_empty() {
        return Err(Error::InvalidInput("empty escape sequence".into()));
    }
    if !chronology(probe_a, probe_b) {
        return Err(Error::InvalidInput(
            "probe events are not chronologically ordered".into(),
        ));
    }
    let sky_a = sky(probe_a, domain)?;
    let sky_b = sky(probe_b, domain)?;
    let probe = IntervalSpec::new(
        GraphLegendrian::new(sky_a.potential),
        GraphLegendrian::new(sky_b.potential),
    )?;
    let mut rows = Vec::with_capacity(sequence.len());
    for (index, x) in sequence.iter().enumerate() {
        let s = sky(x, domain)?;
        let in_interval = probe.contains(&GraphLegendrian::new(s.potential.clone()))?;
        rows.push(EscapeRow {
            index,
            c_minus: s.c_minus(),
            c_plus: s.c_plus(),
            abs_sum: s.c_minus().abs() + s.c_plus().abs(),
            in_interval,
        });
    }
    let first_permanent_exit = match rows.iter().rposition(|r| r.in_interval) {
        None => Some(0),
        Some(last_inside) if last_inside + 1 < rows.len() => Some(last_inside + 1),
        Some(_) => None,
    };
    let abs_sum_strictly_increasing = rows.windows(2).all(|w| w[1].abs_sum > w[0].abs_sum);
    Ok(EscapeReport {
        rows,
        first_permanent_exit,
        abs_sum_strictly_increasing,
    })
}
