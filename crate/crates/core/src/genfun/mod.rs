//! Generating functions quadratic at infinity and their minimax invariants.
//!
//! A generating function here is `S(q,ξ) = Q(ξ) + σ(q,ξ) + r` over a sampled
//! base manifold and a boxed auxiliary grid, where `Q` is a nondegenerate
//! diagonal quadratic form on `ℝᴺ = V₊ × V₋`, the perturbation `σ` vanishes
//! for `|ξ|` beyond a declared support radius, and the additive constant `r`
//! is kept symbolically so Reeb shifts are exact rather than re-scanned.
//!
//! The two invariants are nested min–max values over the grid:
//!
//! ```text
//! c₊ = min over v₊  of  max over (q, v₋)  of  S(q, v₊, v₋)
//! c₋ = min over (q, v₊)  of  max over v₋  of  S(q, v₊, v₋)
//! ```
//!
//! For the graph of a potential `f` (no auxiliary variables) these collapse
//! to `c₋ = min f`, `c₊ = max f`, exactly at grid level. The auxiliary box
//! has half-width `1.5 ×` the support radius; beyond the support `S = Q + r`
//! is radially monotone on each axis, so an inner maximum attained on the box
//! boundary where `σ ≠ 0` is reported as a sizing error instead of being
//! silently truncated.

mod critical;
mod minimax;

pub use critical::{
    fiber_critical_points, legendrian_of_genfun, CriticalPoint, CriticalSet, Degeneracy,
    LegendrianPointCloud,
};
pub use minimax::{c_invariants, GridWitness, MinimaxMethod, MinimaxPair};

use std::sync::Arc;

use crate::base::{BaseDomain, ScalarField};
use crate::expr::CompiledExpr;
use crate::vecn;
use crate::{tol, Error, Result};

/// Default number of auxiliary nodes per axis; odd so that `ξ = 0` is a node
/// and unperturbed cases are exact.
pub const DEFAULT_AUX_POINTS: usize = 257;
/// The auxiliary box half-width must be at least this multiple of the
/// support radius.
pub const BOX_MARGIN: f64 = 1.5;

/// Diagonal quadratic form, positive on the first `dim_plus` axes and
/// negative on the remaining `dim_minus`.
#[derive(Debug, Clone)]
pub struct QuadraticForm {
    diag: Vec<f64>,
    dim_plus: usize,
    dim_minus: usize,
}

impl QuadraticForm {
    /// Build from the positive diagonal entries of `V₊` and the negative
    /// entries of `V₋`.
    pub fn new(plus: Vec<f64>, minus: Vec<f64>) -> Result<QuadraticForm> {
        if plus.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
            return Err(Error::InvalidInput(
                "V₊ diagonal entries must be strictly positive".into(),
            ));
        }
        if minus.iter().any(|d| !(d.is_finite() && *d < 0.0)) {
            return Err(Error::InvalidInput(
                "V₋ diagonal entries must be strictly negative".into(),
            ));
        }
        let dim_plus = plus.len();
        let dim_minus = minus.len();
        let mut diag = plus;
        diag.extend(minus);
        Ok(QuadraticForm {
            diag,
            dim_plus,
            dim_minus,
        })
    }

    /// The trivial form on `ℝ⁰` (graph case).
    pub fn trivial() -> QuadraticForm {
        QuadraticForm {
            diag: Vec::new(),
            dim_plus: 0,
            dim_minus: 0,
        }
    }

    pub fn dim_plus(&self) -> usize {
        self.dim_plus
    }

    pub fn dim_minus(&self) -> usize {
        self.dim_minus
    }

    pub fn total_dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn eval(&self, xi: &[f64]) -> f64 {
        debug_assert_eq!(xi.len(), self.diag.len());
        self.diag.iter().zip(xi).map(|(d, x)| d * x * x).sum()
    }

    /// Gradient `∂Q/∂ξᵢ = 2 dᵢ ξᵢ`.
    pub fn grad_component(&self, axis: usize, xi: &[f64]) -> f64 {
        2.0 * self.diag[axis] * xi[axis]
    }
}

/// Uniform auxiliary grid, identical on every axis.
#[derive(Debug, Clone, Copy)]
pub struct AuxGrid {
    points_per_axis: usize,
    half_width: f64,
}

impl AuxGrid {
    pub fn new(points_per_axis: usize, half_width: f64) -> Result<AuxGrid> {
        if points_per_axis < 3 || points_per_axis.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "auxiliary grid needs an odd number of nodes ≥ 3 so ξ=0 is a node, got {points_per_axis}"
            )));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidInput(
                "auxiliary half-width must be positive".into(),
            ));
        }
        Ok(AuxGrid {
            points_per_axis,
            half_width,
        })
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Node coordinate for index `k` on any axis.
    pub fn node(&self, k: usize) -> f64 {
        let m = (self.points_per_axis - 1) as f64;
        -self.half_width + 2.0 * self.half_width * k as f64 / m
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points_per_axis - 1) as f64
    }

    pub fn is_boundary(&self, k: usize) -> bool {
        k == 0 || k + 1 == self.points_per_axis
    }
}

/// Closed-form perturbation: `(q, ξ) ↦ σ(q, ξ)`.
pub type SigmaFn = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;

/// Perturbation values sampled on base × auxiliary grid, base-major with the
/// auxiliary multi-index flattened lexicographically (axis 0 slowest).
#[derive(Debug, Clone)]
pub struct GridSigma {
    pub axes: usize,
    pub grid: AuxGrid,
    pub values: Vec<f64>,
}

impl GridSigma {
    fn aux_total(&self) -> usize {
        self.grid.points_per_axis().pow(self.axes as u32)
    }

    /// Multilinear interpolation in ξ at a fixed base sample.
    fn interpolate(&self, base_index: usize, xi: &[f64]) -> f64 {
        let pts = self.grid.points_per_axis();
        let spacing = self.grid.spacing();
        let mut cells = Vec::with_capacity(self.axes);
        for &x in xi.iter().take(self.axes) {
            let t = (x + self.grid.half_width()) / spacing;
            if t < 0.0 || t > (pts - 1) as f64 {
                return 0.0; // outside the box: beyond the support
            }
            let k = (t.floor() as usize).min(pts - 2);
            cells.push((k, t - k as f64));
        }
        let base_off = base_index * self.aux_total();
        let mut acc = 0.0;
        for corner in 0..(1usize << self.axes) {
            let mut weight = 1.0;
            let mut flat = 0usize;
            for (a, (k, frac)) in cells.iter().enumerate() {
                let hi = (corner >> a) & 1 == 1;
                weight *= if hi { *frac } else { 1.0 - *frac };
                flat = flat * pts + k + usize::from(hi);
            }
            acc += weight * self.values[base_off + flat];
        }
        acc
    }
}

/// The perturbation term of a generating function.
#[derive(Clone)]
pub enum Sigma {
    /// `σ ≡ 0`: the zero section.
    Zero,
    /// `σ(q,ξ) = f(q)`: a graph potential, constant in the auxiliary
    /// variables (the stabilized form `S = f(q) + Q(ξ)`).
    Graph(ScalarField),
    /// Closed-form perturbation.
    Analytic(SigmaFn),
    /// Sampled perturbation.
    Grid(GridSigma),
}

impl std::fmt::Debug for Sigma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sigma::Zero => write!(f, "Sigma::Zero"),
            Sigma::Graph(field) => f.debug_tuple("Sigma::Graph").field(field).finish(),
            Sigma::Analytic(_) => write!(f, "Sigma::Analytic(..)"),
            Sigma::Grid(g) => f
                .debug_struct("Sigma::Grid")
                .field("axes", &g.axes)
                .field("values", &g.values.len())
                .finish(),
        }
    }
}

impl Sigma {
    /// Does σ depend on the auxiliary variables at all?
    fn xi_dependent(&self) -> bool {
        matches!(self, Sigma::Analytic(_) | Sigma::Grid(_))
    }
}

/// A generating function quadratic at infinity over a sampled base.
#[derive(Debug, Clone)]
pub struct GeneratingFunction {
    base: Arc<BaseDomain>,
    q_form: QuadraticForm,
    sigma: Sigma,
    shift: f64,
    support_radius: f64,
    aux: AuxGrid,
}

impl GeneratingFunction {
    pub fn new(
        base: Arc<BaseDomain>,
        q_form: QuadraticForm,
        sigma: Sigma,
        support_radius: f64,
        aux: AuxGrid,
    ) -> Result<GeneratingFunction> {
        if !(support_radius.is_finite() && support_radius > 0.0) {
            return Err(Error::InvalidInput(
                "support radius must be positive".into(),
            ));
        }
        if q_form.total_dim() > 0 && aux.half_width() < BOX_MARGIN * support_radius {
            return Err(Error::InvalidInput(format!(
                "auxiliary half-width {} is below {BOX_MARGIN} × support radius {}",
                aux.half_width(),
                support_radius
            )));
        }
        if let Sigma::Graph(field) = &sigma {
            if !field.domain().same_grid(&base) {
                return Err(Error::DomainMismatch(
                    "graph potential lives on a different base grid".into(),
                ));
            }
        }
        if let Sigma::Grid(g) = &sigma {
            if g.axes != q_form.total_dim() {
                return Err(Error::InvalidInput(format!(
                    "grid sigma has {} axes, quadratic form has {}",
                    g.axes,
                    q_form.total_dim()
                )));
            }
            if g.values.len() != base.resolution() * g.aux_total() {
                return Err(Error::InvalidInput(format!(
                    "grid sigma has {} values, expected {}",
                    g.values.len(),
                    base.resolution() * g.aux_total()
                )));
            }
        }
        let gf = GeneratingFunction {
            base,
            q_form,
            sigma,
            shift: 0.0,
            support_radius,
            aux,
        };
        gf.check_compact_support()?;
        Ok(gf)
    }

    /// Constructor without the margin and support validation. The minimax
    /// scan's boundary diagnostic guards exactly the configurations this can
    /// produce; only tests build such functions.
    #[doc(hidden)]
    pub fn new_unchecked(
        base: Arc<BaseDomain>,
        q_form: QuadraticForm,
        sigma: Sigma,
        support_radius: f64,
        aux: AuxGrid,
    ) -> GeneratingFunction {
        GeneratingFunction {
            base,
            q_form,
            sigma,
            shift: 0.0,
            support_radius,
            aux,
        }
    }

    /// The graph construction for a potential `f`: no auxiliary variables,
    /// `S(q) = f(q)`.
    pub fn graph(field: ScalarField) -> GeneratingFunction {
        let base = field.domain().clone();
        GeneratingFunction {
            base,
            q_form: QuadraticForm::trivial(),
            sigma: Sigma::Graph(field),
            shift: 0.0,
            support_radius: 1.0,
            aux: AuxGrid::new(DEFAULT_AUX_POINTS, BOX_MARGIN).unwrap(),
        }
    }

    /// Closed-form perturbation given as an expression in `theta` (circle),
    /// `q1..qn` and `xi1..xiN`.
    pub fn with_expr_sigma(
        base: Arc<BaseDomain>,
        q_form: QuadraticForm,
        sigma_src: &str,
        support_radius: f64,
        aux: AuxGrid,
    ) -> Result<GeneratingFunction> {
        let n = base.ambient_dim();
        let n_aux = q_form.total_dim();
        let circle = matches!(base.kind(), crate::base::DomainKind::Circle);
        let mut names: Vec<String> = Vec::new();
        if circle {
            names.push("theta".into());
        }
        for k in 1..=n {
            names.push(format!("q{k}"));
        }
        for k in 1..=n_aux {
            names.push(format!("xi{k}"));
        }
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let compiled = CompiledExpr::parse(sigma_src, &refs)?;
        let f: SigmaFn = Arc::new(move |q: &[f64], xi: &[f64]| {
            let mut vars = Vec::with_capacity(1 + q.len() + xi.len());
            if circle {
                vars.push(q[1].atan2(q[0]).rem_euclid(2.0 * std::f64::consts::PI));
            }
            vars.extend_from_slice(q);
            vars.extend_from_slice(xi);
            compiled.eval(&vars)
        });
        Self::new(base, q_form, Sigma::Analytic(f), support_radius, aux)
    }

    /// Sample-check that σ vanishes outside the declared support. Constant-
    /// in-ξ perturbations (graphs and their stabilizations) are exempt: they
    /// are quadratic at infinity in the stabilized sense.
    fn check_compact_support(&self) -> Result<()> {
        let n_aux = self.q_form.total_dim();
        if n_aux == 0 || !self.sigma.xi_dependent() {
            return Ok(());
        }
        let radii = [
            self.support_radius * (1.0 + 1e-9),
            self.support_radius * 1.1,
            self.support_radius * BOX_MARGIN,
        ];
        let res = self.base.resolution();
        let probes = [0, res / 3, res / 2, 2 * res / 3, res - 1];
        // deterministic direction set: axes plus a fixed scrambled family
        let mut directions: Vec<Vec<f64>> = Vec::new();
        for a in 0..n_aux {
            let mut e = vec![0.0; n_aux];
            e[a] = 1.0;
            directions.push(e.clone());
            e[a] = -1.0;
            directions.push(e);
        }
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..8 {
            let mut v = Vec::with_capacity(n_aux);
            for _ in 0..n_aux {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                v.push(((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0);
            }
            if vecn::norm(&v) > 1e-6 {
                directions.push(vecn::normalized(&v));
            }
        }
        for &qi in &probes {
            let q = self.base.sample(qi);
            for dir in &directions {
                for &r in &radii {
                    let xi = vecn::scale(dir, r / vecn::norm(dir));
                    let raw = self.sigma_raw(Some(qi), q, &xi);
                    if raw.abs() > tol::SUPPORT {
                        return Err(Error::InvalidInput(format!(
                            "sigma = {raw:e} at |ξ| = {r} outside the declared support radius {}",
                            self.support_radius
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<BaseDomain> {
        &self.base
    }

    pub fn q_form(&self) -> &QuadraticForm {
        &self.q_form
    }

    pub fn sigma(&self) -> &Sigma {
        &self.sigma
    }

    pub fn aux(&self) -> &AuxGrid {
        &self.aux
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// σ without the hard support clamp (used by the support check itself).
    fn sigma_raw(&self, base_index: Option<usize>, q: &[f64], xi: &[f64]) -> f64 {
        match &self.sigma {
            Sigma::Zero => 0.0,
            Sigma::Graph(field) => match base_index {
                Some(i) => field.value(i),
                None => field.eval(q),
            },
            Sigma::Analytic(f) => f(q, xi),
            Sigma::Grid(g) => {
                let i = base_index.unwrap_or_else(|| self.base.nearest_sample(q));
                g.interpolate(i, xi)
            }
        }
    }

    /// σ(q, ξ) with the support clamp: ξ-dependent perturbations are exactly
    /// zero beyond the support radius.
    pub(crate) fn sigma_value(&self, base_index: Option<usize>, q: &[f64], xi: &[f64]) -> f64 {
        if self.sigma.xi_dependent()
            && vecn::norm_sq(xi) > self.support_radius * self.support_radius
        {
            return 0.0;
        }
        self.sigma_raw(base_index, q, xi)
    }

    /// `S` without the additive constant; all scans run on this.
    pub(crate) fn core_value(&self, base_index: Option<usize>, q: &[f64], xi: &[f64]) -> f64 {
        self.q_form.eval(xi) + self.sigma_value(base_index, q, xi)
    }

    /// Evaluate `S(q, ξ) = Q(ξ) + σ(q,ξ) + shift`. Outside the support
    /// radius this is exactly `Q(ξ) + shift`.
    pub fn evaluate(&self, q: &[f64], xi: &[f64]) -> Result<f64> {
        if q.iter().chain(xi).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(
                "evaluate called with non-finite input".into(),
            ));
        }
        if q.len() != self.base.ambient_dim() || xi.len() != self.q_form.total_dim() {
            return Err(Error::InvalidInput(format!(
                "evaluate expects q in ℝ{} and ξ in ℝ{}",
                self.base.ambient_dim(),
                self.q_form.total_dim()
            )));
        }
        Ok(self.core_value(None, q, xi) + self.shift)
    }

    /// Evaluate at a base sample and auxiliary grid multi-index.
    pub fn evaluate_at_nodes(&self, base_index: usize, node_index: &[usize]) -> f64 {
        let xi: Vec<f64> = node_index.iter().map(|&k| self.aux.node(k)).collect();
        self.core_value(Some(base_index), self.base.sample(base_index), &xi) + self.shift
    }

    /// The generating function of the Reeb-shifted Legendrian: `S + r`. The
    /// constant is tracked symbolically, so invariants shift exactly.
    pub fn reeb_shift(&self, r: f64) -> GeneratingFunction {
        let mut out = self.clone();
        out.shift += r;
        out
    }

    /// Add one auxiliary variable with a pure quadratic `coefficient · η²`.
    /// The perturbation is unchanged; invariants must be unchanged too.
    pub fn stabilize(&self, coefficient: f64) -> Result<GeneratingFunction> {
        if !(coefficient.is_finite() && coefficient != 0.0) {
            return Err(Error::InvalidInput(
                "stabilization coefficient must be nonzero".into(),
            ));
        }
        let old_n = self.q_form.total_dim();
        let mut plus: Vec<f64> = self.q_form.diag[..self.q_form.dim_plus].to_vec();
        let mut minus: Vec<f64> = self.q_form.diag[self.q_form.dim_plus..].to_vec();
        if coefficient > 0.0 {
            plus.push(coefficient);
        } else {
            minus.push(coefficient);
        }
        let q_form = QuadraticForm::new(plus, minus)?;
        let sigma = match &self.sigma {
            Sigma::Zero => Sigma::Zero,
            Sigma::Graph(f) => Sigma::Graph(f.clone()),
            Sigma::Grid(g) => Sigma::Grid(g.clone()),
            Sigma::Analytic(f) => {
                let f = f.clone();
                // the old σ never sees the new axis
                let wrapped: SigmaFn = Arc::new(move |q: &[f64], xi: &[f64]| f(q, &xi[..old_n]));
                Sigma::Analytic(wrapped)
            }
        };
        Ok(GeneratingFunction {
            base: self.base.clone(),
            q_form,
            sigma,
            shift: self.shift,
            support_radius: self.support_radius,
            aux: self.aux,
        })
    }

    /// Grid-exact invariants for the trivial auxiliary case: per-sample
    /// values of `σ + shift`.
    pub(crate) fn graph_values(&self) -> Option<Vec<f64>> {
        if self.q_form.total_dim() != 0 {
            return None;
        }
        let vals = match &self.sigma {
            Sigma::Zero => vec![0.0; self.base.resolution()],
            Sigma::Graph(f) => f.values().to_vec(),
            Sigma::Analytic(f) => self.base.samples().iter().map(|q| f(q, &[])).collect(),
            Sigma::Grid(g) => (0..self.base.resolution()).map(|i| g.values[i]).collect(),
        };
        Some(vals)
    }

    /// Compute the minimax invariants. See [`c_invariants`].
    pub fn invariants(&self) -> Result<MinimaxPair> {
        c_invariants(self)
    }

    /// The constant-graph criterion: if `c₊` and `c₋` agree within `tol`,
    /// the generated Legendrian must be the constant graph `{(q, 0, c)}`
    /// with `c` the common value. Returns `c` when the invariants coincide
    /// and the jet cloud confirms the tube; reports a theorem violation if
    /// the invariants coincide but the cloud does not collapse.
    pub fn detect_constant_graph(&self, tol: f64) -> Result<Option<f64>> {
        let pair = self.invariants()?;
        if (pair.c_plus - pair.c_minus).abs() > tol {
            return Ok(None);
        }
        let c = 0.5 * (pair.c_plus + pair.c_minus);
        let cloud = legendrian_of_genfun(self)?;
        for pt in &cloud.points {
            let p_norm = vecn::norm(&pt.p);
            if (pt.u - c).abs() > tol || p_norm > tol {
                return Err(Error::TheoremViolation(format!(
                    "invariants coincide at {c} but the jet cloud leaves the tube: |u - c| = {:e}, |p| = {:e}",
                    (pt.u - c).abs(),
                    p_norm
                )));
            }
        }
        Ok(Some(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_field(res: usize, src: &str) -> ScalarField {
        ScalarField::from_expr(BaseDomain::circle(res).unwrap(), src).unwrap()
    }

    #[test]
    fn quadratic_form_signs_validated() {
        assert!(QuadraticForm::new(vec![1.0], vec![-1.0]).is_ok());
        assert!(QuadraticForm::new(vec![0.0], vec![]).is_err());
        assert!(QuadraticForm::new(vec![-1.0], vec![]).is_err());
        assert!(QuadraticForm::new(vec![], vec![1.0]).is_err());
    }

    #[test]
    fn aux_grid_has_zero_node() {
        let g = AuxGrid::new(257, 1.5).unwrap();
        assert_eq!(g.node(128), 0.0);
        assert_eq!(g.node(0), -1.5);
        assert_eq!(g.node(256), 1.5);
        assert!(AuxGrid::new(256, 1.5).is_err());
    }

    #[test]
    fn evaluate_pure_quadratic() {
        // S = +ξ², σ ≡ 0: value 4 at ξ = 2 for any q
        let base = BaseDomain::circle(16).unwrap();
        let gf = GeneratingFunction::new(
            base.clone(),
            QuadraticForm::new(vec![1.0], vec![]).unwrap(),
            Sigma::Zero,
            1.0,
            AuxGrid::new(9, 3.0).unwrap(),
        )
        .unwrap();
        let q = base.sample(3).to_vec();
        assert_eq!(gf.evaluate(&q, &[2.0]).unwrap(), 4.0);

        // S = −ξ²: value −9 at ξ = 3
        let gf = GeneratingFunction::new(
            base.clone(),
            QuadraticForm::new(vec![], vec![-1.0]).unwrap(),
            Sigma::Zero,
            1.0,
            AuxGrid::new(9, 3.0).unwrap(),
        )
        .unwrap();
        assert_eq!(gf.evaluate(&q, &[3.0]).unwrap(), -9.0);
    }

    #[test]
    fn sigma_clamped_outside_support_exactly() {
        let base = BaseDomain::circle(16).unwrap();
        let gf = GeneratingFunction::with_expr_sigma(
            base.clone(),
            QuadraticForm::new(vec![1.0], vec![]).unwrap(),
            "0.3*bump(xi1/1.0)*(1+q1)",
            1.0,
            AuxGrid::new(65, 1.5).unwrap(),
        )
        .unwrap();
        let q = base.sample(0).to_vec();
        // |ξ| > support radius: exactly Q(ξ)
        assert_eq!(gf.evaluate(&q, &[1.2]).unwrap(), 1.2 * 1.2);
        // inside the support the bump contributes
        assert!(gf.evaluate(&q, &[0.0]).unwrap() > 0.0);
    }

    #[test]
    fn support_violation_detected() {
        let base = BaseDomain::circle(16).unwrap();
        let r = GeneratingFunction::with_expr_sigma(
            base,
            QuadraticForm::new(vec![1.0], vec![]).unwrap(),
            "q1 + 0*xi1", // does not vanish for large ξ
            1.0,
            AuxGrid::new(65, 1.5).unwrap(),
        );
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn box_margin_enforced() {
        let base = BaseDomain::circle(16).unwrap();
        let r = GeneratingFunction::new(
            base,
            QuadraticForm::new(vec![1.0], vec![]).unwrap(),
            Sigma::Zero,
            1.0,
            AuxGrid::new(65, 1.2).unwrap(), // below 1.5 × support
        );
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn reeb_shift_is_symbolic() {
        let gf = GeneratingFunction::graph(circle_field(64, "cos(theta)"));
        let shifted = gf.reeb_shift(5.0);
        assert_eq!(shifted.shift(), 5.0);
        let again = shifted.reeb_shift(-5.0);
        assert_eq!(again.shift(), 0.0);
    }

    #[test]
    fn stabilize_extends_the_form() {
        let gf = GeneratingFunction::graph(circle_field(64, "cos(theta)"));
        let up = gf.stabilize(1.0).unwrap();
        assert_eq!(up.q_form().dim_plus(), 1);
        assert_eq!(up.q_form().dim_minus(), 0);
        let down = up.stabilize(-1.0).unwrap();
        assert_eq!(down.q_form().total_dim(), 2);
        assert_eq!(down.q_form().dim_minus(), 1);
    }

    #[test]
    fn grid_sigma_interpolates_and_vanishes_outside() {
        let base = BaseDomain::circle(8).unwrap();
        let grid = AuxGrid::new(5, 1.5).unwrap(); // nodes −1.5, −0.75, 0, 0.75, 1.5
                                                  // σ(q, ξ) peaked at ξ=0, zero at outer nodes; support radius 1
        let mut values = vec![0.0; 8 * 5];
        for b in 0..8 {
            values[b * 5 + 2] = 1.0;
        }
        let sigma = Sigma::Grid(GridSigma {
            axes: 1,
            grid,
            values,
        });
        let gf = GeneratingFunction::new(
            base.clone(),
            QuadraticForm::new(vec![1.0], vec![]).unwrap(),
            sigma,
            1.0,
            grid,
        )
        .unwrap();
        let q = base.sample(0).to_vec();
        assert_eq!(gf.evaluate(&q, &[0.0]).unwrap(), 1.0);
        // halfway to the next node: linear interpolation
        let v = gf.evaluate(&q, &[0.375]).unwrap();
        assert!((v - (0.5 + 0.375 * 0.375)).abs() < 1e-12);
    }
}
