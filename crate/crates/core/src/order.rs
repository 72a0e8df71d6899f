//! Orders on graph Legendrians, interval membership, separation witnesses,
//! isotopy positivity, and the circle toy model.
//!
//! For graphs the relations reduce to pointwise tests on potentials: `Λ^f ≼
//! Λ^g` holds exactly when `f ≤ g` at every sample, and the operational
//! reading of `Λ^f ⋘ Λ^g` is strict pointwise inequality — the linear
//! interpolation `f_t = (1−t)f + tg` is then a positive isotopy. Fields
//! within sup-distance `1e−12` on the grid are treated as the same
//! Legendrian: the non-strict relation holds both ways, the strict one
//! neither.
//!
//! An interval `(a, b)` is the set of graphs strictly between its endpoints;
//! around any `z` the Reeb shifts give the basic intervals
//! `(τ_{−ε} z, τ_{ε} z)`, and membership of `f` in the basic interval around
//! `g` is exactly the uniform bound `sup|f − g| < ε`.

use serde::Serialize;

use crate::base::ScalarField;
use crate::genfun::GeneratingFunction;
use crate::{tol, Error, Result};

/// The graph Legendrian `Λ^f` of a potential `f`.
#[derive(Debug, Clone)]
pub struct GraphLegendrian {
    pub field: ScalarField,
}

impl GraphLegendrian {
    pub fn new(field: ScalarField) -> GraphLegendrian {
        GraphLegendrian { field }
    }

    /// Reeb shift `τ_r` acting on the potential.
    pub fn shifted(&self, r: f64) -> GraphLegendrian {
        GraphLegendrian::new(self.field.shifted(r))
    }
}

impl From<ScalarField> for GraphLegendrian {
    fn from(field: ScalarField) -> Self {
        GraphLegendrian::new(field)
    }
}

/// Outcome of an order query, with the first violating sample if any.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrderVerdict {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

/// `f ≤ g` at every sample. Equal-up-to-tolerance fields compare as equal.
pub fn pointwise_leq(f: &ScalarField, g: &ScalarField) -> Result<OrderVerdict> {
    f.check_same_domain(g)?;
    if f.equals(g) {
        return Ok(OrderVerdict {
            holds: true,
            first_violation: None,
        });
    }
    for (i, (a, b)) in f.values().iter().zip(g.values()).enumerate() {
        if a > b {
            return Ok(OrderVerdict {
                holds: false,
                first_violation: Some(i),
            });
        }
    }
    Ok(OrderVerdict {
        holds: true,
        first_violation: None,
    })
}

/// `f < g` at every sample. Equal-up-to-tolerance fields are never strictly
/// related (the constant isotopy is non-negative, not positive).
pub fn pointwise_lt(f: &ScalarField, g: &ScalarField) -> Result<OrderVerdict> {
    f.check_same_domain(g)?;
    if f.equals(g) {
        return Ok(OrderVerdict {
            holds: false,
            first_violation: Some(0),
        });
    }
    for (i, (a, b)) in f.values().iter().zip(g.values()).enumerate() {
        if a >= b {
            return Ok(OrderVerdict {
                holds: false,
                first_violation: Some(i),
            });
        }
    }
    Ok(OrderVerdict {
        holds: true,
        first_violation: None,
    })
}

/// `a ≼ b`: a non-negative isotopy from `a` to `b` exists.
pub fn leq(a: &GraphLegendrian, b: &GraphLegendrian) -> Result<bool> {
    Ok(pointwise_leq(&a.field, &b.field)?.holds)
}

/// `a ⋘ b`: a positive isotopy from `a` to `b` exists.
pub fn lt_strict(a: &GraphLegendrian, b: &GraphLegendrian) -> Result<bool> {
    Ok(pointwise_lt(&a.field, &b.field)?.holds)
}

/// An interval `(lower, upper)` in the isotopy class of graphs; nonempty and
/// well-formed only when `lower ⋘ upper`.
#[derive(Debug, Clone)]
pub struct IntervalSpec {
    pub lower: GraphLegendrian,
    pub upper: GraphLegendrian,
}

impl IntervalSpec {
    pub fn new(lower: GraphLegendrian, upper: GraphLegendrian) -> Result<IntervalSpec> {
        if !lt_strict(&lower, &upper)? {
            return Err(Error::InvalidInput(
                "interval endpoints are not strictly ordered".into(),
            ));
        }
        Ok(IntervalSpec { lower, upper })
    }

    /// The basic interval `(τ_{−ε} z, τ_{ε} z)` around a graph.
    pub fn around(z: &GraphLegendrian, epsilon: f64) -> Result<IntervalSpec> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidInput(
                "interval radius must be positive".into(),
            ));
        }
        IntervalSpec::new(z.shifted(-epsilon), z.shifted(epsilon))
    }

    pub fn contains(&self, z: &GraphLegendrian) -> Result<bool> {
        Ok(lt_strict(&self.lower, z)? && lt_strict(z, &self.upper)?)
    }

    /// Distance from `z` to the nearest endpoint, pointwise: positive iff the
    /// interval contains a sup-norm ball around `z`.
    pub fn slack(&self, z: &GraphLegendrian) -> Result<f64> {
        let lo = z.field.zip_with(&self.lower.field, |a, b| a - b)?;
        let hi = self.upper.field.zip_with(&z.field, |a, b| a - b)?;
        Ok(lo
            .values()
            .iter()
            .chain(hi.values())
            .copied()
            .fold(f64::INFINITY, f64::min))
    }
}

/// Separating pair of intervals around two distinct graphs.
#[derive(Debug, Clone)]
pub struct SeparationWitness {
    pub epsilon: f64,
    pub sup_gap: f64,
    pub around_a: IntervalSpec,
    pub around_b: IntervalSpec,
}

/// Disjoint interval neighbourhoods of two distinct graph Legendrians:
/// `ε = sup|f − g| / 3` and the basic intervals of radius `ε`. Any `z` in
/// both intervals would satisfy `sup|z−f| ≤ ε` and `sup|z−g| ≤ ε`, forcing
/// `sup|f−g| ≤ 2ε < 3ε` — impossible. Returns `None` for equal fields.
pub fn separation_witness(
    a: &GraphLegendrian,
    b: &GraphLegendrian,
) -> Result<Option<SeparationWitness>> {
    let gap = a.field.sup_diff(&b.field)?;
    if gap <= tol::FIELD_EQ {
        return Ok(None);
    }
    let epsilon = gap / 3.0;
    let witness = SeparationWitness {
        epsilon,
        sup_gap: gap,
        around_a: IntervalSpec::around(a, epsilon)?,
        around_b: IntervalSpec::around(b, epsilon)?,
    };
    // verify the sup-norm criterion numerically
    if gap < 2.0 * epsilon {
        return Err(Error::TheoremViolation(
            "separation radii exceed half the gap".into(),
        ));
    }
    Ok(Some(witness))
}

/// Classification of an isotopy of graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsotopyClass {
    Positive,
    Nonnegative,
    Neither,
}

/// A path of graph potentials on a fixed domain.
#[derive(Debug, Clone)]
pub struct IsotopyPath {
    times: Vec<f64>,
    frames: Vec<ScalarField>,
}

impl IsotopyPath {
    pub fn new(times: Vec<f64>, frames: Vec<ScalarField>) -> Result<IsotopyPath> {
        if times.len() < 2 {
            return Err(Error::InvalidInput(
                "an isotopy needs at least two frames".into(),
            ));
        }
        if times.len() != frames.len() {
            return Err(Error::InvalidInput(format!(
                "{} time samples for {} frames",
                times.len(),
                frames.len()
            )));
        }
        let increasing =
            |w: &[f64]| matches!(w[1].partial_cmp(&w[0]), Some(std::cmp::Ordering::Greater));
        if !times.windows(2).all(increasing) {
            return Err(Error::InvalidInput(
                "time samples must strictly increase".into(),
            ));
        }
        if times.iter().any(|t| !(0.0..=1.0).contains(t)) {
            return Err(Error::InvalidInput(
                "time samples must lie in [0, 1]".into(),
            ));
        }
        for f in &frames[1..] {
            frames[0].check_same_domain(f)?;
        }
        Ok(IsotopyPath { times, frames })
    }

    /// Sample an isotopy from a closure of time.
    pub fn from_fn(times: Vec<f64>, frame_at: impl Fn(f64) -> ScalarField) -> Result<IsotopyPath> {
        let frames = times.iter().map(|&t| frame_at(t)).collect();
        IsotopyPath::new(times, frames)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn frames(&self) -> &[ScalarField] {
        &self.frames
    }

    /// Per-interval, per-sample forward difference quotients — the discrete
    /// stand-in for the contact Hamiltonian of the path.
    pub fn hamiltonian_samples(&self) -> Vec<Vec<f64>> {
        self.times
            .windows(2)
            .zip(self.frames.windows(2))
            .map(|(ts, fs)| {
                let dt = ts[1] - ts[0];
                fs[0]
                    .values()
                    .iter()
                    .zip(fs[1].values())
                    .map(|(a, b)| (b - a) / dt)
                    .collect()
            })
            .collect()
    }

    /// Positive iff every quotient is `> 0`, non-negative iff `≥ 0`.
    pub fn classify(&self) -> IsotopyClass {
        let mut positive = true;
        for quotients in self.hamiltonian_samples() {
            for q in quotients {
                if q < 0.0 {
                    return IsotopyClass::Neither;
                }
                if q == 0.0 {
                    positive = false;
                }
            }
        }
        if positive {
            IsotopyClass::Positive
        } else {
            IsotopyClass::Nonnegative
        }
    }
}

/// Invariant sequences along an isotopy, with monotonicity verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub class: IsotopyClass,
    pub c_minus: Vec<f64>,
    pub c_plus: Vec<f64>,
    pub nondecreasing: bool,
    pub strictly_increasing: bool,
    /// First adjacent pair of times violating monotonicity, if any.
    pub violation: Option<(f64, f64)>,
}

/// Compute `c₋, c₊` for every frame and audit monotonicity: non-decreasing
/// along non-negative paths, strictly increasing (up to `strict_tol`) along
/// positive ones. The path must classify as non-negative or positive.
pub fn monotonicity_audit(path: &IsotopyPath, strict_tol: f64) -> Result<MonotonicityReport> {
    let class = path.classify();
    if class == IsotopyClass::Neither {
        return Err(Error::InvalidInput(
            "monotonicity audit requires a non-negative path".into(),
        ));
    }
    let mut c_minus = Vec::with_capacity(path.frames().len());
    let mut c_plus = Vec::with_capacity(path.frames().len());
    for frame in path.frames() {
        let pair = GeneratingFunction::graph(frame.clone()).invariants()?;
        c_minus.push(pair.c_minus);
        c_plus.push(pair.c_plus);
    }
    let mut nondecreasing = true;
    let mut strictly_increasing = true;
    let mut violation = None;
    for k in 0..c_minus.len() - 1 {
        let down = c_minus[k + 1] < c_minus[k] || c_plus[k + 1] < c_plus[k];
        if down {
            nondecreasing = false;
            if violation.is_none() {
                violation = Some((path.times()[k], path.times()[k + 1]));
            }
        }
        if c_minus[k + 1] <= c_minus[k] + strict_tol || c_plus[k + 1] <= c_plus[k] + strict_tol {
            strictly_increasing = false;
        }
    }
    Ok(MonotonicityReport {
        class,
        c_minus,
        c_plus,
        nondecreasing,
        strictly_increasing,
        violation,
    })
}

/// A point of the circle `ℝ/ℤ`, normalized to `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CyclicPoint {
    pub angle: f64,
}

impl CyclicPoint {
    pub fn new(angle: f64) -> Result<CyclicPoint> {
        if !angle.is_finite() {
            return Err(Error::NonFinite("cyclic point".into()));
        }
        Ok(CyclicPoint {
            angle: angle.rem_euclid(1.0),
        })
    }
}

/// On the circle every positive path may wrap around, so any point reaches
/// any other (and itself, via a full loop).
pub fn circle_reaches(_from: CyclicPoint, _to: CyclicPoint) -> bool {
    true
}

/// Membership in a cyclic interval `(a, b)`: positive paths wrap, so every
/// nondegenerate interval contains every point.
pub fn circle_interval_contains(a: CyclicPoint, b: CyclicPoint, z: CyclicPoint) -> bool {
    circle_reaches(a, z) && circle_reaches(z, b)
}

/// One pair in the circle demonstration.
#[derive(Debug, Clone, Serialize)]
pub struct CirclePairVerdict {
    pub first: f64,
    pub second: f64,
    /// On the circle the candidate intervals always share points.
    pub s1_separated: bool,
    /// A point witnessing the failure (the second point itself lies in every
    /// interval around the first).
    pub s1_common_witness: f64,
    /// On the line the two intervals below are disjoint.
    pub line_separated: bool,
    pub line_interval_first: (f64, f64),
    pub line_interval_second: (f64, f64),
}

/// Verdicts for all pairs of the input points.
#[derive(Debug, Clone, Serialize)]
pub struct CircleDemoReport {
    pub pairs: Vec<CirclePairVerdict>,
    pub s1_all_nonseparated: bool,
    pub line_all_separated: bool,
}

/// Compare the interval topology of the cyclic order on the circle with the
/// one of the linear order on its universal cover: on the circle no two
/// points can be separated (every nondegenerate interval contains every
/// point); on the line, symmetric intervals of radius a third of the gap
/// separate any two distinct lifts.
pub fn circle_demo(points: &[CyclicPoint]) -> Result<CircleDemoReport> {
    let mut distinct: Vec<f64> = Vec::new();
    for p in points {
        if !distinct.iter().any(|d| (d - p.angle).abs() < 1e-15) {
            distinct.push(p.angle);
        }
    }
    if distinct.len() < 2 {
        return Err(Error::InvalidInput(
            "circle demo needs at least two distinct points".into(),
        ));
    }
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (x, y) = (points[i], points[j]);
            if (x.angle - y.angle).abs() < 1e-15 {
                continue;
            }
            // circle: any interval around x contains y
            let delta = 0.25 * (y.angle - x.angle).abs();
            let a = CyclicPoint::new(x.angle - delta)?;
            let b = CyclicPoint::new(x.angle + delta)?;
            let y_in_interval_around_x = circle_interval_contains(a, b, y);

            // line: lifts in [0,1), symmetric intervals of radius gap/3
            let (lo, hi) = if x.angle < y.angle {
                (x.angle, y.angle)
            } else {
                (y.angle, x.angle)
            };
            let gap = hi - lo;
            let r = gap / 3.0;
            let ix = (x.angle - r, x.angle + r);
            let iy = (y.angle - r, y.angle + r);
            let disjoint = ix.1 <= iy.0 || iy.1 <= ix.0;

            pairs.push(CirclePairVerdict {
                first: x.angle,
                second: y.angle,
                s1_separated: !y_in_interval_around_x,
                s1_common_witness: y.angle,
                line_separated: disjoint,
                line_interval_first: ix,
                line_interval_second: iy,
            });
        }
    }
    let s1_all_nonseparated = pairs.iter().all(|p| !p.s1_separated);
    let line_all_separated = pairs.iter().all(|p| p.line_separated);
    Ok(CircleDemoReport {
        pairs,
        s1_all_nonseparated,
        line_all_separated,
    })
}
