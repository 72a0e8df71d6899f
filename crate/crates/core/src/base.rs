//! Discretized base manifolds and sampled scalar fields.
//!
//! The base of every computation is a closed manifold sampled by unit vectors
//! in the ambient Euclidean space: the circle with a uniform angular grid, the
//! 2-sphere with a deterministic Fibonacci lattice, and higher spheres with an
//! offset product angular grid. A [`ScalarField`] is one real value per
//! sample; it doubles as the potential `f` of the graph Legendrian `Λ^f`
//! (the graph of the 1-jet of `f`).
//!
//! Fields constructed from a closed form keep their evaluator, which makes
//! tangential gradients accurate far beyond grid resolution; fields built
//! from raw samples fall back to neighbour differences on the circle.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::expr::CompiledExpr;
use crate::vecn;
use crate::{tol, Error, Result};

/// Which sphere the samples discretize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    /// `S¹ ⊂ ℝ²`, uniform angular grid.
    Circle,
    /// `S^dim ⊂ ℝ^{dim+1}`.
    Sphere { dim: usize },
}

/// A sampled base manifold: ordered unit vectors in `ℝⁿ`.
#[derive(Debug)]
pub struct BaseDomain {
    kind: DomainKind,
    resolution: usize,
    samples: Vec<Vec<f64>>,
}

impl BaseDomain {
    /// Uniform angular grid on the circle: sample `i` sits at angle `2πi/n`.
    pub fn circle(resolution: usize) -> Result<Arc<BaseDomain>> {
        let samples = (0..resolution)
            .map(|i| {
                let theta = 2.0 * PI * i as f64 / resolution as f64;
                vec![theta.cos(), theta.sin()]
            })
            .collect();
        Self::build(DomainKind::Circle, resolution, samples)
    }

    /// Deterministic quasi-uniform Fibonacci lattice on `S² ⊂ ℝ³`.
    pub fn sphere2(resolution: usize) -> Result<Arc<BaseDomain>> {
        let golden_angle = PI * (3.0 - 5.0_f64.sqrt());
        let samples = (0..resolution)
            .map(|i| {
                let z = 1.0 - (2.0 * i as f64 + 1.0) / resolution as f64;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let phi = golden_angle * i as f64;
                vecn::normalized(&[r * phi.cos(), r * phi.sin(), z])
            })
            .collect();
        Self::build(DomainKind::Sphere { dim: 2 }, resolution, samples)
    }

    /// Sphere `S^dim`. The circle and `S²` get their dedicated grids; higher
    /// spheres use an offset product angular grid (half-step offsets keep the
    /// samples away from the poles and pairwise distinct). The realized
    /// resolution is the closest per-axis power, so it may differ from the
    /// request.
    pub fn sphere(dim: usize, resolution: usize) -> Result<Arc<BaseDomain>> {
        match dim {
            0 => Err(Error::InvalidInput("sphere dimension must be ≥ 1".into())),
            1 => Self::circle(resolution),
            2 => Self::sphere2(resolution),
            _ => {
                let per_axis = (resolution as f64).powf(1.0 / dim as f64).round().max(2.0) as usize;
                let total = per_axis.pow(dim as u32);
                let mut samples = Vec::with_capacity(total);
                let mut idx = vec![0usize; dim];
                loop {
                    // angles: θ₁..θ_{dim-1} polar in (0,π), θ_dim azimuthal in (0,2π)
                    let mut point = Vec::with_capacity(dim + 1);
                    let mut sin_prod = 1.0;
                    for (axis, &k) in idx.iter().enumerate() {
                        let frac = (k as f64 + 0.5) / per_axis as f64;
                        let angle = if axis + 1 == dim {
                            2.0 * PI * frac
                        } else {
                            PI * frac
                        };
                        point.push(sin_prod * angle.cos());
                        sin_prod *= angle.sin();
                    }
                    point.push(sin_prod);
                    samples.push(vecn::normalized(&point));
                    // odometer
                    let mut axis = dim;
                    loop {
                        if axis == 0 {
                            break;
                        }
                        axis -= 1;
                        idx[axis] += 1;
                        if idx[axis] < per_axis {
                            break;
                        }
                        idx[axis] = 0;
                        if axis == 0 {
                            axis = usize::MAX;
                            break;
                        }
                    }
                    if axis == usize::MAX {
                        break;
                    }
                }
                Self::build(DomainKind::Sphere { dim }, total, samples)
            }
        }
    }

    fn build(
        kind: DomainKind,
        resolution: usize,
        samples: Vec<Vec<f64>>,
    ) -> Result<Arc<BaseDomain>> {
        if resolution < 8 {
            return Err(Error::InvalidInput(format!(
                "resolution {resolution} is below the minimum of 8"
            )));
        }
        if samples.len() != resolution {
            return Err(Error::InvalidInput(format!(
                "expected {resolution} samples, got {}",
                samples.len()
            )));
        }
        for (i, s) in samples.iter().enumerate() {
            if (vecn::norm(s) - 1.0).abs() > tol::UNIT_NORM {
                return Err(Error::InvalidInput(format!(
                    "sample {i} has norm {} ≠ 1",
                    vecn::norm(s)
                )));
            }
        }
        // pairwise distinctness via a lexicographic sort
        let mut order: Vec<usize> = (0..samples.len()).collect();
        order.sort_by(|&a, &b| {
            samples[a]
                .partial_cmp(&samples[b])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        for w in order.windows(2) {
            if samples[w[0]] == samples[w[1]] {
                return Err(Error::InvalidInput(format!(
                    "samples {} and {} coincide",
                    w[0], w[1]
                )));
            }
        }
        Ok(Arc::new(BaseDomain {
            kind,
            resolution,
            samples,
        }))
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Dimension of the ambient Euclidean space the samples live in.
    pub fn ambient_dim(&self) -> usize {
        self.samples[0].len()
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    pub fn sample(&self, i: usize) -> &[f64] {
        &self.samples[i]
    }

    /// Angle of sample `i` for circle domains.
    pub fn circle_angle(&self, i: usize) -> Option<f64> {
        match self.kind {
            DomainKind::Circle => Some(2.0 * PI * i as f64 / self.resolution as f64),
            _ => None,
        }
    }

    /// Representative spacing of the grid: the exact angular step on the
    /// circle, the mean lattice spacing `√(4π/n)` on `S²`.
    pub fn grid_step(&self) -> f64 {
        match self.kind {
            DomainKind::Circle => 2.0 * PI / self.resolution as f64,
            DomainKind::Sphere { .. } => (4.0 * PI / self.resolution as f64).sqrt(),
        }
    }

    /// Index of the sample closest to `q` (angular distance).
    pub fn nearest_sample(&self, q: &[f64]) -> usize {
        match self.kind {
            DomainKind::Circle => {
                let theta = q[1].atan2(q[0]).rem_euclid(2.0 * PI);
                let i = (theta / (2.0 * PI) * self.resolution as f64).round() as usize;
                i % self.resolution
            }
            DomainKind::Sphere { .. } => {
                let mut best = 0;
                let mut best_dot = f64::NEG_INFINITY;
                for (i, s) in self.samples.iter().enumerate() {
                    let d = vecn::dot(s, q);
                    if d > best_dot {
                        best_dot = d;
                        best = i;
                    }
                }
                best
            }
        }
    }

    /// Structural identity: same kind and resolution.
    pub fn same_grid(&self, other: &BaseDomain) -> bool {
        self.kind == other.kind && self.resolution == other.resolution
    }
}

/// Closed-form evaluator attached to a field: unit vector in, value out.
pub type FieldFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A real-valued function sampled on a [`BaseDomain`].
#[derive(Clone)]
pub struct ScalarField {
    domain: Arc<BaseDomain>,
    values: Vec<f64>,
    analytic: Option<FieldFn>,
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField")
            .field("kind", &self.domain.kind())
            .field("resolution", &self.domain.resolution())
            .field("analytic", &self.analytic.is_some())
            .finish()
    }
}

impl ScalarField {
    /// Field from raw per-sample values.
    pub fn from_values(domain: Arc<BaseDomain>, values: Vec<f64>) -> Result<ScalarField> {
        if values.len() != domain.resolution() {
            return Err(Error::InvalidInput(format!(
                "field has {} values for {} samples",
                values.len(),
                domain.resolution()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("field value at sample {bad}")));
        }
        Ok(ScalarField {
            domain,
            values,
            analytic: None,
        })
    }

    /// Field sampled from a closure; the closure is kept for off-grid
    /// evaluation and accurate gradients.
    pub fn from_fn(
        domain: Arc<BaseDomain>,
        f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Result<ScalarField> {
        let f: FieldFn = Arc::new(f);
        let values: Vec<f64> = domain.samples().iter().map(|q| f(q)).collect();
        let mut field = Self::from_values(domain, values)?;
        field.analytic = Some(f);
        Ok(field)
    }

    /// Field from an expression string. Circle fields may use `theta` and the
    /// components `q1, q2`; sphere fields use `q1..qn`.
    pub fn from_expr(domain: Arc<BaseDomain>, src: &str) -> Result<ScalarField> {
        let n = domain.ambient_dim();
        let mut names: Vec<String> = Vec::new();
        let circle = matches!(domain.kind(), DomainKind::Circle);
        if circle {
            names.push("theta".into());
        }
        for k in 1..=n {
            names.push(format!("q{k}"));
        }
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let compiled = CompiledExpr::parse(src, &name_refs)?;
        let eval = move |q: &[f64]| {
            let mut vars = Vec::with_capacity(q.len() + 1);
            if circle {
                vars.push(q[1].atan2(q[0]).rem_euclid(2.0 * PI));
            }
            vars.extend_from_slice(q);
            compiled.eval(&vars)
        };
        Self::from_fn(domain, eval)
    }

    pub fn domain(&self) -> &Arc<BaseDomain> {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn analytic(&self) -> Option<&FieldFn> {
        self.analytic.as_ref()
    }

    /// Evaluate at an arbitrary unit vector: the closed form when available,
    /// otherwise the nearest sample.
    pub fn eval(&self, q: &[f64]) -> f64 {
        match &self.analytic {
            Some(f) => f(q),
            None => self.values[self.domain.nearest_sample(q)],
        }
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The field shifted by a constant (the Reeb shift `τ_r` on potentials).
    pub fn shifted(&self, r: f64) -> ScalarField {
        let values = self.values.iter().map(|v| v + r).collect();
        let analytic = self.analytic.clone().map(|f| {
            let g: FieldFn = Arc::new(move |q: &[f64]| f(q) + r);
            g
        });
        ScalarField {
            domain: self.domain.clone(),
            values,
            analytic,
        }
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_with(
        &self,
        other: &ScalarField,
        op: impl Fn(f64, f64) -> f64,
    ) -> Result<ScalarField> {
        self.check_same_domain(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| op(*a, *b))
            .collect();
        ScalarField::from_values(self.domain.clone(), values)
    }

    pub fn check_same_domain(&self, other: &ScalarField) -> Result<()> {
        if !self.domain.same_grid(&other.domain) {
            return Err(Error::DomainMismatch(format!(
                "{:?}@{} vs {:?}@{}",
                self.domain.kind(),
                self.domain.resolution(),
                other.domain.kind(),
                other.domain.resolution()
            )));
        }
        Ok(())
    }

    /// Sup-norm distance on the grid.
    pub fn sup_diff(&self, other: &ScalarField) -> Result<f64> {
        self.check_same_domain(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Discretized equality: sup-norm distance at most [`tol::FIELD_EQ`].
    pub fn equals(&self, other: &ScalarField) -> bool {
        matches!(self.sup_diff(other), Ok(d) if d <= tol::FIELD_EQ)
    }

    /// Tangential gradient at sample `i`, as an ambient vector orthogonal to
    /// the sample. Closed-form fields use small-step central differences
    /// along geodesics; sampled circle fields use neighbour differences;
    /// sampled sphere fields have no usable stencil.
    pub fn tangential_gradient(&self, i: usize) -> Result<Vec<f64>> {
        let q = self.domain.sample(i);
        if let Some(f) = &self.analytic {
            // step chosen for central differences in f64: h ~ cbrt(eps)
            let h = f64::EPSILON.cbrt();
            let basis = vecn::tangent_basis(q);
            let mut grad = vec![0.0; q.len()];
            for e in &basis {
                let plus = vecn::normalized(&vecn::add(q, &vecn::scale(e, h)));
                let minus = vecn::normalized(&vecn::sub(q, &vecn::scale(e, h)));
                let d = (f(&plus) - f(&minus)) / (2.0 * h);
                for (g, ei) in grad.iter_mut().zip(e) {
                    *g += d * ei;
                }
            }
            return Ok(grad);
        }
        match self.domain.kind() {
            DomainKind::Circle => {
                let n = self.domain.resolution();
                let step = self.domain.grid_step();
                let df = (self.values[(i + 1) % n] - self.values[(i + n - 1) % n]) / (2.0 * step);
                let theta = self.domain.circle_angle(i).unwrap();
                Ok(vec![-theta.sin() * df, theta.cos() * df])
            }
            DomainKind::Sphere { .. } => Err(Error::GradientUnavailable(
                "sphere field was built from raw samples; attach a closed form".into(),
            )),
        }
    }
}
