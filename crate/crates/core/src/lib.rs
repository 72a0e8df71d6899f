//! Numerical workbench for minimax invariants and causal orders.
//!
//! The crate computes, on discretized domains, the two distinguished critical
//! values `c₋ ≤ c₊` selected by nested min–max from a generating function
//! `S(q,ξ) = Q(ξ) + σ(q,ξ)` that is quadratic at infinity, and builds the
//! geometric dictionary around them:
//!
//! * [`genfun`] — generating functions, fibre-critical points, the minimax
//!   pair `(c₋, c₊)` and its algebraic laws (shift equivariance,
//!   stabilization invariance, the constant-graph criterion).
//! * [`order`] — the relations `≼` (non-negative isotopy) and `⋘` (positive
//!   isotopy) on graph Legendrians, interval membership, separation
//!   witnesses, and the cyclic-order toy model on the circle.
//! * [`hodograph`] — the contactomorphism between 1-jets of the sphere and
//!   cooriented contact elements of Euclidean space, with the wavefront
//!   dictionary for cooriented spheres.
//! * [`causality`] — flat Minkowski spacetime: chronology/causality,
//!   Alexandrov intervals, skies of events as graph Legendrians, positivity
//!   of curves, and escape-to-infinity audits.
//!
//! Everything is a pure function of immutable inputs; randomized audits take
//! explicit seeds so runs are reproducible bit for bit.

pub mod base;
pub mod causality;
pub mod expr;
pub mod genfun;
pub mod hodograph;
pub mod order;
pub mod synth;

pub use base::{BaseDomain, DomainKind, ScalarField};
pub use genfun::{GeneratingFunction, MinimaxMethod, MinimaxPair, QuadraticForm};

/// Tolerances used across the crate. Values are pinned here so tests and the
/// command-line suites agree on them.
pub mod tol {
    /// Slack for unit-norm checks on sphere samples and conormals.
    pub const UNIT_NORM: f64 = 1e-12;
    /// Slack for tangency checks `⟨p, q⟩ = 0`.
    pub const ORTHOGONALITY: f64 = 1e-9;
    /// Two sampled fields are treated as the same Legendrian below this
    /// sup-norm distance.
    pub const FIELD_EQ: f64 = 1e-12;
    /// Target width for polished fibre-critical roots.
    pub const CRITICAL_POINT: f64 = 1e-10;
    /// Tolerance for derivative comparisons (jet clouds against closed
    /// forms).
    pub const GRADIENT: f64 = 1e-6;
    /// Maximal allowed deviation in the contact-form pullback identity.
    pub const CONTACT_FORM: f64 = 1e-6;
    /// Width of the null boundary when classifying Minkowski vectors.
    pub const NULL_BOUNDARY: f64 = 1e-12;
    /// Agreement required between closed-form sky invariants and the grid
    /// minimax path.
    pub const SKY_CROSS_CHECK: f64 = 1e-2;
    /// How close to zero the perturbation must be outside its declared
    /// support.
    pub const SUPPORT: f64 = 1e-12;
    /// Re-evaluating a recorded witness must reproduce the invariant to this
    /// accuracy.
    pub const WITNESS: f64 = 1e-12;
}

/// Errors reported by the computational modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    /// An inner maximum of the minimax scan was attained on the auxiliary box
    /// boundary where the perturbation does not vanish; the box cannot
    /// certify the true maximum.
    #[error(
        "auxiliary box too small: inner max attained on the boundary at base sample {base_index} \
         with sigma = {sigma_value:e}"
    )]
    BoxTooSmall { base_index: usize, sigma_value: f64 },
    /// The fibre derivative has a non-isolated zero locus; the generating
    /// function does not cut out a Legendrian cleanly.
    #[error("degenerate fibre-critical locus: {0}")]
    DegenerateRoots(String),
    /// A statement that holds as a theorem failed numerically; this signals a
    /// bug in the computation, not in the mathematics.
    #[error("theorem violated numerically ({0}); this indicates a numerics bug")]
    TheoremViolation(String),
    #[error("cross-check mismatch: {0}")]
    CrossCheck(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("tangential gradient unavailable: {0}")]
    GradientUnavailable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Small dense-vector helpers shared by the geometry modules.
pub(crate) mod vecn {
    pub fn dot(a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    pub fn norm_sq(a: &[f64]) -> f64 {
        dot(a, a)
    }

    pub fn norm(a: &[f64]) -> f64 {
        norm_sq(a).sqrt()
    }

    pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
        a.iter().map(|x| x * s).collect()
    }

    pub fn normalized(a: &[f64]) -> Vec<f64> {
        let n = norm(a);
        scale(a, 1.0 / n)
    }

    /// Component of `v` orthogonal to the unit vector `q`.
    pub fn project_tangent(v: &[f64], q: &[f64]) -> Vec<f64> {
        let c = dot(v, q);
        v.iter().zip(q).map(|(x, y)| x - c * y).collect()
    }

    /// Orthonormal basis of the tangent space of the unit sphere at `q`.
    pub fn tangent_basis(q: &[f64]) -> Vec<Vec<f64>> {
        let n = q.len();
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
        for k in 0..n {
            let mut e = vec![0.0; n];
            e[k] = 1.0;
            let mut v = project_tangent(&e, q);
            for b in &basis {
                let c = dot(&v, b);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= c * bi;
                }
            }
            let len = norm(&v);
            if len > 1e-8 {
                basis.push(scale(&v, 1.0 / len));
            }
            if basis.len() == n - 1 {
                break;
            }
        }
        debug_assert_eq!(basis.len(), n - 1);
        basis
    }
}
