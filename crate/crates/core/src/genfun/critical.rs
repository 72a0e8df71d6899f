//! Fibre-critical points of a generating function and the Legendrian cloud
//! they cut out.
//!
//! A point `(q, ξ)` with `d_ξ S(q, ξ) = 0` maps to the jet
//! `(q, d_q S(q,ξ), S(q,ξ))`; running over all such points recovers the
//! Legendrian generated by `S`. Perturbations that do not depend on `ξ`
//! (graphs and stabilizations) have `ξ = 0` as the unique fibre-critical
//! point, exactly. One-dimensional fibres are scanned for sign changes of
//! the derivative and polished with a safeguarded Newton/bisection hybrid;
//! higher-dimensional fibres seed a damped Newton iteration at grid nodes
//! where the gradient is locally smallest. Non-isolated zero loci are
//! reported as degeneracies, never averaged away.

use crate::hodograph::JetPoint;
use crate::vecn;
use crate::{tol, Error, Result};

use super::{GeneratingFunction, Sigma};

/// A fibre-critical point localized on the grid and polished.
#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub base_index: usize,
    pub xi: Vec<f64>,
}

/// A non-isolated piece of the critical locus.
#[derive(Debug, Clone)]
pub struct Degeneracy {
    pub base_index: usize,
    pub description: String,
}

/// All fibre-critical points, with degeneracy diagnostics kept separate.
#[derive(Debug, Clone, Default)]
pub struct CriticalSet {
    pub points: Vec<CriticalPoint>,
    pub degeneracies: Vec<Degeneracy>,
}

/// Sampled Legendrian: jet-space points `(q, p, u)` with provenance.
#[derive(Debug, Clone)]
pub struct LegendrianPointCloud {
    pub points: Vec<JetPoint>,
    pub source: String,
}

impl LegendrianPointCloud {
    pub fn new(points: Vec<JetPoint>, source: impl Into<String>) -> Result<LegendrianPointCloud> {
        if points.is_empty() {
            return Err(Error::InvalidInput("empty Legendrian point cloud".into()));
        }
        Ok(LegendrianPointCloud {
            points,
            source: source.into(),
        })
    }
}

/// Scan a one-dimensional function for roots: bracket sign changes between
/// consecutive nodes and polish each bracket. Runs of nodes where `|g|` is
/// below `plateau_tol` are returned separately as plateaus `(lo, hi)`.
pub(crate) fn scan_roots_1d(
    g: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    nodes: usize,
    plateau_tol: f64,
) -> (Vec<f64>, Vec<(f64, f64)>) {
    let step = (hi - lo) / (nodes - 1) as f64;
    let xs: Vec<f64> = (0..nodes).map(|k| lo + step * k as f64).collect();
    let gs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();

    let mut roots = Vec::new();
    let mut plateaus = Vec::new();
    let mut k = 0;
    while k < nodes {
        if gs[k].abs() <= plateau_tol {
            let start = k;
            while k + 1 < nodes && gs[k + 1].abs() <= plateau_tol {
                k += 1;
            }
            if k > start {
                plateaus.push((xs[start], xs[k]));
            } else {
                roots.push(xs[start]);
            }
            k += 1;
            continue;
        }
        if k + 1 < nodes && gs[k + 1].abs() > plateau_tol && gs[k].signum() != gs[k + 1].signum() {
            roots.push(polish_root(g, xs[k], xs[k + 1], gs[k]));
        }
        k += 1;
    }
    (roots, plateaus)
}

/// Safeguarded Newton/bisection on a bracket with a sign change.
fn polish_root(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut g_lo: f64) -> f64 {
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        if hi - lo <= tol::CRITICAL_POINT {
            break;
        }
        let gx = g(x);
        if gx == 0.0 {
            return x;
        }
        if gx.signum() == g_lo.signum() {
            lo = x;
            g_lo = gx;
        } else {
            hi = x;
        }
        let h = ((hi - lo) * 1e-3).max(1e-9);
        let d = (g(x + h) - g(x - h)) / (2.0 * h);
        let newton = x - gx / d;
        x = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    x
}

/// Gradient of `S` in the fibre directions at fixed base sample.
fn fiber_gradient(gf: &GeneratingFunction, qi: usize, xi: &[f64], out: &mut [f64]) {
    let q = gf.base().sample(qi);
    let n = xi.len();
    let h = f64::EPSILON.cbrt();
    let mut probe = xi.to_vec();
    for a in 0..n {
        let grad_q = gf.q_form().grad_component(a, xi);
        // σ contribution by central differences; exact zero for ξ-independent σ
        let grad_sigma = match gf.sigma() {
            Sigma::Zero | Sigma::Graph(_) => 0.0,
            _ => {
                probe[a] = xi[a] + h;
                let up = gf.sigma_value(Some(qi), q, &probe);
                probe[a] = xi[a] - h;
                let down = gf.sigma_value(Some(qi), q, &probe);
                probe[a] = xi[a];
                (up - down) / (2.0 * h)
            }
        };
        out[a] = grad_q + grad_sigma;
    }
}

/// Locate all fibre-critical points of `gf`, per base sample.
///
/// Constant-in-ξ perturbations yield exactly `ξ = 0` at every sample. For
/// ξ-dependent perturbations the auxiliary axis is scanned at four times the
/// grid density so sign changes are resolved before polishing.
#[allow(clippy::needless_range_loop)] // flat node index doubles as the decomposed multi-index
pub fn fiber_critical_points(gf: &GeneratingFunction) -> Result<CriticalSet> {
    let n = gf.q_form().total_dim();
    let res = gf.base().resolution();
    let mut set = CriticalSet::default();

    if n == 0 || !matches!(gf.sigma(), Sigma::Analytic(_) | Sigma::Grid(_)) {
        // d_ξS = dQ vanishes only at the origin (or the fibre is trivial)
        for qi in 0..res {
            set.points.push(CriticalPoint {
                base_index: qi,
                xi: vec![0.0; n],
            });
        }
        return Ok(set);
    }

    let aux = *gf.aux();
    let hw = aux.half_width();
    if n == 1 {
        let scan_nodes = 4 * aux.points_per_axis();
        for qi in 0..res {
            let g = |x: f64| {
                let xi = [x];
                let mut out = [0.0];
                fiber_gradient(gf, qi, &xi, &mut out);
                out[0]
            };
            let (roots, plateaus) = scan_roots_1d(&g, -hw, hw, scan_nodes, tol::CRITICAL_POINT);
            for r in roots {
                set.points.push(CriticalPoint {
                    base_index: qi,
                    xi: vec![r],
                });
            }
            for (lo, hi) in plateaus {
                set.degeneracies.push(Degeneracy {
                    base_index: qi,
                    description: format!("d_ξS vanishes on [{lo}, {hi}]"),
                });
            }
        }
        return Ok(set);
    }

    // n ≥ 2: damped Newton from nodes where |∇_ξ S|² is locally minimal
    let pts = aux.points_per_axis();
    let total = pts.pow(n as u32);
    let mut grad = vec![0.0; n];
    for qi in 0..res {
        let mut norms = vec![0.0; total];
        let mut xi = vec![0.0; n];
        for flat in 0..total {
            let mut rem = flat;
            for a in (0..n).rev() {
                xi[a] = aux.node(rem % pts);
                rem /= pts;
            }
            fiber_gradient(gf, qi, &xi, &mut grad);
            norms[flat] = vecn::norm_sq(&grad);
        }
        let mut found: Vec<Vec<f64>> = Vec::new();
        'nodes: for flat in 0..total {
            // local minimum against axis neighbours
            let mut rem = flat;
            let mut idx = vec![0usize; n];
            for a in (0..n).rev() {
                idx[a] = rem % pts;
                rem /= pts;
            }
            let mut stride = 1;
            for a in (0..n).rev() {
                if idx[a] > 0 && norms[flat - stride] < norms[flat] {
                    continue 'nodes;
                }
                if idx[a] + 1 < pts && norms[flat + stride] < norms[flat] {
                    continue 'nodes;
                }
                stride *= pts;
            }
            for (a, &k) in idx.iter().enumerate() {
                xi[a] = aux.node(k);
            }
            match newton_polish(gf, qi, &xi, hw) {
                NewtonOutcome::Root(root) => {
                    if !found.iter().any(|r| {
                        r.iter()
                            .zip(&root)
                            .map(|(a, b)| (a - b) * (a - b))
                            .sum::<f64>()
                            .sqrt()
                            < 1e-8
                    }) {
                        found.push(root);
                    }
                }
                NewtonOutcome::Singular => {
                    set.degeneracies.push(Degeneracy {
                        base_index: qi,
                        description: format!("singular fibre Hessian near ξ = {xi:?}"),
                    });
                }
                NewtonOutcome::NoConvergence => {}
            }
        }
        for root in found {
            set.points.push(CriticalPoint {
                base_index: qi,
                xi: root,
            });
        }
    }
    Ok(set)
}

enum NewtonOutcome {
    Root(Vec<f64>),
    Singular,
    NoConvergence,
}

fn newton_polish(gf: &GeneratingFunction, qi: usize, start: &[f64], hw: f64) -> NewtonOutcome {
    let n = start.len();
    let mut x = start.to_vec();
    let mut g = vec![0.0; n];
    let mut g_new = vec![0.0; n];
    let h = 1e-6;
    for _ in 0..60 {
        fiber_gradient(gf, qi, &x, &mut g);
        let gn = vecn::norm(&g);
        if gn <= tol::CRITICAL_POINT {
            return NewtonOutcome::Root(x);
        }
        // finite-difference Jacobian of the gradient
        let mut jac = vec![0.0; n * n];
        let mut probe = x.clone();
        for col in 0..n {
            probe[col] = x[col] + h;
            fiber_gradient(gf, qi, &probe, &mut g_new);
            for row in 0..n {
                jac[row * n + col] = (g_new[row] - g[row]) / h;
            }
            probe[col] = x[col];
        }
        let Some(step) = solve_dense(&mut jac, &g, n) else {
            return NewtonOutcome::Singular;
        };
        // damping: halve until the residual decreases
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..8 {
            let cand: Vec<f64> = x.iter().zip(&step).map(|(xi, s)| xi - lambda * s).collect();
            if cand.iter().any(|c| c.abs() > hw * 1.01) {
                lambda *= 0.5;
                continue;
            }
            fiber_gradient(gf, qi, &cand, &mut g_new);
            if vecn::norm(&g_new) < gn {
                x = cand;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return NewtonOutcome::NoConvergence;
        }
    }
    NewtonOutcome::NoConvergence
}

/// Gaussian elimination with partial pivoting; `None` on a numerically
/// singular matrix.
fn solve_dense(a: &mut [f64], b: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut x = b.to_vec();
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if a[row * n + col].abs() > a[pivot * n + col].abs() {
                pivot = row;
            }
        }
        if a[pivot * n + col].abs() < 1e-14 {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            x.swap(col, pivot);
        }
        let inv = 1.0 / a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] * inv;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
            x[row] -= factor * x[col];
        }
    }
    for col in (0..n).rev() {
        x[col] /= a[col * n + col];
        for row in 0..col {
            x[row] -= a[row * n + col] * x[col];
        }
    }
    Some(x)
}

/// Tangential base derivative `d_q S(·, ξ)` at a sample, as an ambient vector
/// orthogonal to the sample.
fn base_gradient(gf: &GeneratingFunction, qi: usize, xi: &[f64]) -> Result<Vec<f64>> {
    let base = gf.base();
    let q = base.sample(qi);
    match gf.sigma() {
        Sigma::Zero => Ok(vec![0.0; base.ambient_dim()]),
        Sigma::Graph(field) => field.tangential_gradient(qi),
        Sigma::Analytic(f) => {
            let h = f64::EPSILON.cbrt();
            let basis = vecn::tangent_basis(q);
            let mut grad = vec![0.0; q.len()];
            for e in &basis {
                let plus = vecn::normalized(&vecn::add(q, &vecn::scale(e, h)));
                let minus = vecn::normalized(&vecn::sub(q, &vecn::scale(e, h)));
                let d = (f(&plus, xi) - f(&minus, xi)) / (2.0 * h);
                for (g, ei) in grad.iter_mut().zip(e) {
                    *g += d * ei;
                }
            }
            Ok(grad)
        }
        Sigma::Grid(g) => match base.kind() {
            crate::base::DomainKind::Circle => {
                let n = base.resolution();
                let step = base.grid_step();
                let up = g.interpolate((qi + 1) % n, xi);
                let down = g.interpolate((qi + n - 1) % n, xi);
                let df = (up - down) / (2.0 * step);
                let theta = base.circle_angle(qi).unwrap();
                Ok(vec![-theta.sin() * df, theta.cos() * df])
            }
            _ => Err(Error::GradientUnavailable(
                "sampled σ on a sphere base has no tangential stencil".into(),
            )),
        },
    }
}

/// Map the fibre-critical set to the generated Legendrian.
///
/// Each critical `(q, ξ)` becomes the jet `(q, d_q S(q,ξ), S(q,ξ))`. A
/// degenerate critical locus is propagated as an error: the cloud would not
/// be a manifold.
pub fn legendrian_of_genfun(gf: &GeneratingFunction) -> Result<LegendrianPointCloud> {
    let set = fiber_critical_points(gf)?;
    if !set.degeneracies.is_empty() {
        let d = &set.degeneracies[0];
        return Err(Error::DegenerateRoots(format!(
            "{} degeneracies; first at base sample {}: {}",
            set.degeneracies.len(),
            d.base_index,
            d.description
        )));
    }
    let base = gf.base();
    let mut points = Vec::with_capacity(set.points.len());
    for cp in &set.points {
        let q = base.sample(cp.base_index).to_vec();
        let u = gf.core_value(Some(cp.base_index), &q, &cp.xi) + gf.shift();
        let p = base_gradient(gf, cp.base_index, &cp.xi)?;
        points.push(JetPoint::new(q, p, u)?);
    }
    let source = format!(
        "fibre-critical points of S over {:?} ({} aux dims, {} points)",
        base.kind(),
        gf.q_form().total_dim(),
        points.len()
    );
    LegendrianPointCloud::new(points, source)
}
