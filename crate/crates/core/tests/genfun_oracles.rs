//! Independent oracles for the minimax machinery: brute-force extrema,
//! dense sign scans for critical points, and refinement cross-checks.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lab_core::base::{BaseDomain, ScalarField};
use lab_core::genfun::{
    fiber_critical_points, AuxGrid, GeneratingFunction, MinimaxMethod, QuadraticForm,
};
use lab_core::synth;

/// Brute-force oracle: extrema of the sampled values.
fn brute_extrema(values: &[f64]) -> (f64, f64) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (min, max)
}

#[test]
fn graph_invariants_equal_brute_force_extrema() {
    let domain = BaseDomain::circle(1024).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..25 {
        let field = synth::random_trig_field(&domain, &mut rng, 3, 2.0).unwrap();
        let (min, max) = brute_extrema(field.values());
        let pair = GeneratingFunction::graph(field).invariants().unwrap();
        assert_eq!(pair.c_minus, min);
        assert_eq!(pair.c_plus, max);
        assert_eq!(pair.method, MinimaxMethod::ClosedFormGraph);
    }
}

#[test]
fn cosine_family_matches_closed_form() {
    // f = a + b cos θ has extrema a ± |b|; the 1024-point grid contains both
    // extremal angles, so agreement is far better than the 1e−3 demand.
    let domain = BaseDomain::circle(1024).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let a = rng.gen_range(-5.0..5.0);
        let b = rng.gen_range(-5.0..5.0);
        let field = synth::trig_field(&domain, a, vec![b], vec![]).unwrap();
        let pair = GeneratingFunction::graph(field).invariants().unwrap();
        assert!((pair.c_minus - (a - b.abs())).abs() < 1e-3);
        assert!((pair.c_plus - (a + b.abs())).abs() < 1e-3);
    }
}

#[test]
fn stabilization_preserves_invariants_through_two_axes() {
    let domain = BaseDomain::circle(128).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..8 {
        let field = synth::random_trig_field(&domain, &mut rng, 2, 1.5).unwrap();
        let base_pair = GeneratingFunction::graph(field.clone())
            .invariants()
            .unwrap();
        let graph = GeneratingFunction::graph(field);
        for signs in [[1.0, -1.0], [-1.0, 1.0], [1.0, 1.0], [-1.0, -1.0]] {
            let mut gf = graph.clone();
            for s in signs {
                gf = gf.stabilize(s).unwrap();
            }
            // shrink the auxiliary grid: N = 2 scans at full resolution are
            // pointless for a ξ-independent σ
            let gf = GeneratingFunction::new_unchecked(
                gf.base().clone(),
                gf.q_form().clone(),
                gf.sigma().clone(),
                gf.support_radius(),
                AuxGrid::new(33, 1.5).unwrap(),
            );
            let pair = gf.invariants().unwrap();
            assert!(
                (pair.c_minus - base_pair.c_minus).abs() < 1e-2,
                "signs {signs:?}"
            );
            assert!((pair.c_plus - base_pair.c_plus).abs() < 1e-2);
            pair.verify_witnesses(&gf).unwrap();
        }
    }
}

#[test]
fn reeb_shift_drops_invariants_by_exactly_the_shift() {
    let domain = BaseDomain::circle(128).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..10 {
        let gf = synth::random_genfun(&domain, &mut rng, 65).unwrap();
        let before = gf.invariants().unwrap();
        let after = gf.reeb_shift(-2.5).invariants().unwrap();
        assert!((after.c_minus - (before.c_minus - 2.5)).abs() < 1e-12);
        assert!((after.c_plus - (before.c_plus - 2.5)).abs() < 1e-12);
    }
}

#[test]
fn witnesses_reproduce_the_invariants() {
    let domain = BaseDomain::circle(128).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for _ in 0..10 {
        let gf = synth::random_genfun(&domain, &mut rng, 65).unwrap();
        let pair = gf.invariants().unwrap();
        pair.verify_witnesses(&gf).unwrap();
        assert!(pair.c_minus <= pair.c_plus);
    }
}

/// Independent minimax oracle: direct nested loops through the public
/// `evaluate` interface, structured nothing like the library scan.
fn oracle_minimax(gf: &GeneratingFunction) -> (f64, f64) {
    let aux = *gf.aux();
    let pts = aux.points_per_axis();
    let p_axes = gf.q_form().dim_plus();
    let m_axes = gf.q_form().dim_minus();
    let plus_total = pts.pow(p_axes as u32);
    let minus_total = pts.pow(m_axes as u32);
    let decode = |mut flat: usize, axes: usize| -> Vec<f64> {
        let mut out = vec![0.0; axes];
        for a in (0..axes).rev() {
            out[a] = aux.node(flat % pts);
            flat /= pts;
        }
        out
    };
    let value = |q: &[f64], vp: &[f64], vm: &[f64]| {
        let mut xi = vp.to_vec();
        xi.extend_from_slice(vm);
        gf.evaluate(q, &xi).unwrap()
    };

    let mut c_plus = f64::INFINITY;
    let mut c_minus = f64::INFINITY;
    for pf in 0..plus_total {
        let vp = decode(pf, p_axes);
        let mut inner_max = f64::NEG_INFINITY;
        for q in gf.base().samples() {
            let mut fibre_max = f64::NEG_INFINITY;
            for mf in 0..minus_total {
                let vm = decode(mf, m_axes);
                fibre_max = fibre_max.max(value(q, &vp, &vm));
            }
            inner_max = inner_max.max(fibre_max);
            c_minus = c_minus.min(fibre_max);
        }
        c_plus = c_plus.min(inner_max);
    }
    (c_minus, c_plus)
}

#[test]
fn scan_agrees_with_brute_force_oracle() {
    let domain = BaseDomain::circle(16).unwrap();
    // one auxiliary axis, σ a bump dressed with base dependence
    let gf = GeneratingFunction::with_expr_sigma(
        domain.clone(),
        QuadraticForm::new(vec![], vec![-1.0]).unwrap(),
        "0.7*bump(xi1)*(0.3 + q1 - 0.5*q2)",
        1.0,
        AuxGrid::new(9, 1.5).unwrap(),
    )
    .unwrap();
    let pair = gf.invariants().unwrap();
    let (om, op) = oracle_minimax(&gf);
    assert!(
        (pair.c_minus - om).abs() < 1e-12,
        "{} vs {om}",
        pair.c_minus
    );
    assert!((pair.c_plus - op).abs() < 1e-12);

    // two auxiliary axes of mixed signature
    let gf = GeneratingFunction::with_expr_sigma(
        domain,
        QuadraticForm::new(vec![0.5], vec![-2.0]).unwrap(),
        "0.4*bump(sqrt(xi1^2+xi2^2))*(1 + q2)",
        1.0,
        AuxGrid::new(9, 1.5).unwrap(),
    )
    .unwrap();
    let pair = gf.invariants().unwrap();
    let (om, op) = oracle_minimax(&gf);
    assert!((pair.c_minus - om).abs() < 1e-12);
    assert!((pair.c_plus - op).abs() < 1e-12);
    assert!(pair.c_minus <= pair.c_plus);

    // and with a nonzero shift
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for _ in 0..6 {
        let gf = synth::random_genfun(&BaseDomain::circle(16).unwrap(), &mut rng, 9).unwrap();
        let shifted = gf.reeb_shift(rng.gen_range(-3.0..3.0));
        let pair = shifted.invariants().unwrap();
        let (om, op) = oracle_minimax(&shifted);
        assert!((pair.c_minus - om).abs() < 1e-12);
        assert!((pair.c_plus - op).abs() < 1e-12);
    }
}

/// Dense sign-change oracle on the fibre derivative of `S`, evaluated
/// through the public interface only.
fn oracle_root_count(gf: &GeneratingFunction, q: &[f64], half_width: f64, nodes: usize) -> usize {
    let h = 1e-7;
    let g = |x: f64| {
        (gf.evaluate(q, &[x + h]).unwrap() - gf.evaluate(q, &[x - h]).unwrap()) / (2.0 * h)
    };
    let step = 2.0 * half_width / (nodes - 1) as f64;
    let mut count = 0;
    let mut prev = g(-half_width);
    for k in 1..nodes {
        let x = -half_width + step * k as f64;
        let val = g(x);
        if prev.signum() != val.signum() && prev != 0.0 && val != 0.0 {
            count += 1;
        }
        prev = val;
    }
    count
}

#[test]
fn critical_point_count_matches_dense_sign_scan() {
    // S = ξ² + 2·bump(ξ): a strong radial perturbation splits the critical
    // locus into three points per fibre (ξ = 0 and a symmetric pair).
    let base = BaseDomain::circle(16).unwrap();
    let gf = GeneratingFunction::with_expr_sigma(
        base.clone(),
        QuadraticForm::new(vec![1.0], vec![]).unwrap(),
        "2*bump(xi1)",
        1.0,
        AuxGrid::new(257, 1.5).unwrap(),
    )
    .unwrap();
    let set = fiber_critical_points(&gf).unwrap();
    assert!(set.degeneracies.is_empty());
    let per_fibre: Vec<usize> = (0..16)
        .map(|qi| set.points.iter().filter(|p| p.base_index == qi).count())
        .collect();
    // oracle at 10× the scan density
    let q = base.sample(0).to_vec();
    let oracle = oracle_root_count(&gf, &q, 1.5, 10 * 4 * 257);
    assert_eq!(oracle, 3);
    assert!(per_fibre.iter().all(|&c| c == oracle));
}

#[test]
fn cubic_derivative_roots_match_oracle() {
    // S = −ξ³ + q₁·ξ dressed with a wide bump so it is honestly compactly
    // supported; inside |ξ| ≤ 0.6 the bump is exactly... not constant, so
    // instead check root positions against the same dense FD oracle rather
    // than against the idealized cubic.
    let base = BaseDomain::circle(16).unwrap();
    let gf = GeneratingFunction::with_expr_sigma(
        base.clone(),
        QuadraticForm::new(vec![], vec![-1.0]).unwrap(),
        "bump(xi1/2)*(q1*xi1 - xi1^3 + xi1^2)",
        2.0,
        AuxGrid::new(257, 3.0).unwrap(),
    )
    .unwrap();
    let set = fiber_critical_points(&gf).unwrap();
    assert!(set.degeneracies.is_empty());
    for qi in [0usize, 4, 8, 12] {
        let q = base.sample(qi).to_vec();
        let ours = set.points.iter().filter(|p| p.base_index == qi).count();
        let oracle = oracle_root_count(&gf, &q, 3.0, 10 * 4 * 257);
        assert_eq!(ours, oracle, "fibre over sample {qi}");
    }
}

#[test]
fn detect_constant_graph_on_examples() {
    let domain = BaseDomain::circle(256).unwrap();
    let three = ScalarField::from_expr(domain.clone(), "3").unwrap();
    let c = GeneratingFunction::graph(three)
        .detect_constant_graph(1e-9)
        .unwrap();
    assert_eq!(c, Some(3.0));

    let cos = ScalarField::from_expr(domain.clone(), "cos(theta)").unwrap();
    let none = GeneratingFunction::graph(cos)
        .detect_constant_graph(1e-9)
        .unwrap();
    assert_eq!(none, None);
}

#[test]
fn perturbed_zero_section_verdict_is_refinement_stable() {
    // a small bump on the zero section: the perturbed Legendrian is not a
    // constant graph, so either the invariants split or the criterion
    // (consistently) degenerates; the verdict must agree across a 4× finer
    // auxiliary grid and base
    let verdict = |res: usize, aux: usize| {
        let base = BaseDomain::circle(res).unwrap();
        let gf = GeneratingFunction::with_expr_sigma(
            base,
            QuadraticForm::new(vec![1.0], vec![]).unwrap(),
            "0.2*bump(xi1)*(1+q1)",
            1.0,
            AuxGrid::new(aux, 1.5).unwrap(),
        )
        .unwrap();
        gf.detect_constant_graph(1e-6).unwrap()
    };
    let coarse = verdict(128, 65);
    let fine = verdict(512, 257);
    match (coarse, fine) {
        (None, None) => {}
        (Some(a), Some(b)) => assert!((a - b).abs() < 1e-6),
        other => panic!("refinement changed the verdict: {other:?}"),
    }
}

#[test]
fn aux_grid_with_nontrivial_negative_space() {
    // S(q, ξ) = f(q) − ξ² must reproduce the N = 0 pair: the inner max over
    // V₋ sits at the ξ = 0 node
    let domain: Arc<BaseDomain> = BaseDomain::circle(256).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(83);
    for _ in 0..5 {
        let field = synth::random_trig_field(&domain, &mut rng, 3, 1.0).unwrap();
        let base_pair = GeneratingFunction::graph(field.clone())
            .invariants()
            .unwrap();
        let st = GeneratingFunction::graph(field).stabilize(-1.0).unwrap();
        let pair = st.invariants().unwrap();
        assert!((pair.c_minus - base_pair.c_minus).abs() < 1e-2);
        assert!((pair.c_plus - base_pair.c_plus).abs() < 1e-2);
    }
}
