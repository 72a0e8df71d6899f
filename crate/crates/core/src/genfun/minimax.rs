//! The nested min–max scan that selects the invariants `c₋ ≤ c₊`.
//!
//! Both invariants come out of one sweep. For every node `v₊` of the
//! positive-definite grid the scan forms, per base sample `q`, the inner
//! maximum over the negative grid `M(q, v₊) = max over v₋ of S`; then
//!
//! * `c₋` is the minimum of `M` over all `(q, v₊)`,
//! * `c₊` is the minimum over `v₊` of `max over q of M(q, v₊)`,
//!
//! which makes `c₋ ≤ c₊` structural. Ties are resolved towards the first
//! grid index in lexicographic order; ties never change the value, only the
//! recorded witness. The additive constant of the generating function is
//! added once at the end, so shifted functions have exactly shifted
//! invariants.

use serde::{Deserialize, Serialize};

use crate::{tol, Error, Result};

use super::{GeneratingFunction, Sigma};

/// How a [`MinimaxPair`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimaxMethod {
    /// Trivial auxiliary space: `c₋ = min f`, `c₊ = max f` per sample.
    ClosedFormGraph,
    /// Full nested scan over base × auxiliary grids.
    GridMinimax,
}

/// Grid coordinates attaining an invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridWitness {
    pub base_index: usize,
    pub plus_index: Vec<usize>,
    pub minus_index: Vec<usize>,
}

impl GridWitness {
    /// Reconstruct the auxiliary point of this witness.
    pub fn xi(&self, gf: &GeneratingFunction) -> Vec<f64> {
        self.plus_index
            .iter()
            .chain(&self.minus_index)
            .map(|&k| gf.aux().node(k))
            .collect()
    }

    /// Re-evaluate `S` at the witness.
    pub fn reevaluate(&self, gf: &GeneratingFunction) -> f64 {
        let nodes: Vec<usize> = self
            .plus_index
            .iter()
            .chain(&self.minus_index)
            .copied()
            .collect();
        gf.evaluate_at_nodes(self.base_index, &nodes)
    }
}

/// The invariant pair `(c₋, c₊)` with witnesses.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinimaxPair {
    pub c_minus: f64,
    pub c_plus: f64,
    pub witness_minus: GridWitness,
    pub witness_plus: GridWitness,
    pub method: MinimaxMethod,
}

impl MinimaxPair {
    /// Both witnesses must reproduce their invariant on re-evaluation.
    pub fn verify_witnesses(&self, gf: &GeneratingFunction) -> Result<()> {
        let wm = self.witness_minus.reevaluate(gf);
        let wp = self.witness_plus.reevaluate(gf);
        if (wm - self.c_minus).abs() > tol::WITNESS || (wp - self.c_plus).abs() > tol::WITNESS {
            return Err(Error::CrossCheck(format!(
                "witnesses reproduce ({wm}, {wp}) instead of ({}, {})",
                self.c_minus, self.c_plus
            )));
        }
        Ok(())
    }
}

/// Lexicographic odometer over `axes` indices in `0..size`; yields the empty
/// index once when `axes = 0`.
struct MultiIndex {
    idx: Vec<usize>,
    size: usize,
    done: bool,
}

impl MultiIndex {
    fn new(axes: usize, size: usize) -> MultiIndex {
        MultiIndex {
            idx: vec![0; axes],
            size,
            done: false,
        }
    }

    fn current(&self) -> &[usize] {
        &self.idx
    }

    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let mut axis = self.idx.len();
        while axis > 0 {
            axis -= 1;
            self.idx[axis] += 1;
            if self.idx[axis] < self.size {
                return true;
            }
            self.idx[axis] = 0;
        }
        self.done = true;
        false
    }
}

/// Flatten a multi-index lexicographically for tie comparisons.
fn flat(idx: &[usize], size: usize) -> usize {
    idx.iter().fold(0, |acc, &k| acc * size + k)
}

/// Compute the minimax invariants of a generating function.
///
/// Errors with [`Error::BoxTooSmall`] if an inner maximum over `V₋` lands on
/// the auxiliary box boundary at a point where the perturbation does not
/// vanish; in that situation the grid cannot certify the true maximum.
pub fn c_invariants(gf: &GeneratingFunction) -> Result<MinimaxPair> {
    if let Some(values) = gf.graph_values() {
        // trivial auxiliary space: exact per-sample extrema
        let mut min_i = 0;
        let mut max_i = 0;
        for (i, v) in values.iter().enumerate() {
            if *v < values[min_i] {
                min_i = i;
            }
            if *v > values[max_i] {
                max_i = i;
            }
        }
        let pair = MinimaxPair {
            c_minus: values[min_i] + gf.shift(),
            c_plus: values[max_i] + gf.shift(),
            witness_minus: GridWitness {
                base_index: min_i,
                plus_index: vec![],
                minus_index: vec![],
            },
            witness_plus: GridWitness {
                base_index: max_i,
                plus_index: vec![],
                minus_index: vec![],
            },
            method: MinimaxMethod::ClosedFormGraph,
        };
        debug_assert!(pair.c_minus <= pair.c_plus);
        return Ok(pair);
    }

    let q_form = gf.q_form();
    let aux = *gf.aux();
    let pts = aux.points_per_axis();
    let p_axes = q_form.dim_plus();
    let m_axes = q_form.dim_minus();
    let base = gf.base();
    let sigma_is_zero = matches!(gf.sigma(), Sigma::Zero);

    let mut xi = vec![0.0; p_axes + m_axes];

    let mut best_plus: Option<(f64, GridWitness)> = None;
    // (value, key = (base, plus_flat), witness); key orders ties as (q, v₊)
    let mut best_minus: Option<(f64, (usize, usize), GridWitness)> = None;

    let mut plus_iter = MultiIndex::new(p_axes, pts);
    loop {
        let p_idx = plus_iter.current().to_vec();
        for (axis, &k) in p_idx.iter().enumerate() {
            xi[axis] = aux.node(k);
        }
        let p_flat = flat(&p_idx, pts);

        // inner max over (q, v₋), tracking per-q maxima for c₋
        let mut outer_max: Option<(f64, GridWitness)> = None;
        for qi in 0..base.resolution() {
            let q = base.sample(qi);
            let mut q_max = f64::NEG_INFINITY;
            let mut q_arg: Vec<usize> = Vec::new();
            let mut minus_iter = MultiIndex::new(m_axes, pts);
            loop {
                let m_idx = minus_iter.current();
                for (axis, &k) in m_idx.iter().enumerate() {
                    xi[p_axes + axis] = aux.node(k);
                }
                let s = gf.core_value(Some(qi), q, &xi);
                if s > q_max {
                    q_max = s;
                    q_arg = m_idx.to_vec();
                }
                if !minus_iter.advance() {
                    break;
                }
            }
            // box-sufficiency: an inner max on the boundary with live σ means
            // the box truncated the true maximum
            if m_axes > 0 && !sigma_is_zero && q_arg.iter().any(|&k| aux.is_boundary(k)) {
                for (axis, &k) in q_arg.iter().enumerate() {
                    xi[p_axes + axis] = aux.node(k);
                }
                let sigma_value = gf.sigma_value(Some(qi), q, &xi);
                if sigma_value.abs() > tol::SUPPORT {
                    return Err(Error::BoxTooSmall {
                        base_index: qi,
                        sigma_value,
                    });
                }
            }

            let witness = GridWitness {
                base_index: qi,
                plus_index: p_idx.clone(),
                minus_index: q_arg.clone(),
            };

            // c₋ candidate at (q, v₊); ties resolve to lexicographically
            // smallest (q, v₊)
            let key = (qi, p_flat);
            let replace = match &best_minus {
                None => true,
                Some((v, k, _)) => q_max < *v || (q_max == *v && key < *k),
            };
            if replace {
                best_minus = Some((q_max, key, witness.clone()));
            }

            // running max over q for this v₊ (first index wins ties)
            if outer_max.as_ref().is_none_or(|(v, _)| q_max > *v) {
                outer_max = Some((q_max, witness));
            }
        }

        let (outer_value, outer_witness) = outer_max.expect("base resolution ≥ 8");
        // c₊ candidate at v₊ (first v₊ wins ties)
        if best_plus.as_ref().is_none_or(|(v, _)| outer_value < *v) {
            best_plus = Some((outer_value, outer_witness));
        }

        if !plus_iter.advance() {
            break;
        }
    }

    let (minus_value, _, witness_minus) = best_minus.expect("nonempty scan");
    let (plus_value, witness_plus) = best_plus.expect("nonempty scan");
    let pair = MinimaxPair {
        c_minus: minus_value + gf.shift(),
        c_plus: plus_value + gf.shift(),
        witness_minus,
        witness_plus,
        method: MinimaxMethod::GridMinimax,
    };
    if pair.c_minus > pair.c_plus {
        return Err(Error::TheoremViolation(format!(
            "c₋ = {} exceeds c₊ = {}",
            pair.c_minus, pair.c_plus
        )));
    }
    Ok(pair)
}
