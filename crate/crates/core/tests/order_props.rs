//! Property tests for the order structure on graph Legendrians.

use std::sync::Arc;

use proptest::prelude::*;

use lab_core::base::{BaseDomain, ScalarField};
use lab_core::order::{
    leq, lt_strict, pointwise_leq, pointwise_lt, separation_witness, GraphLegendrian, IntervalSpec,
};
use lab_core::synth;

const RES: usize = 64;

fn domain() -> Arc<BaseDomain> {
    BaseDomain::circle(RES).unwrap()
}

/// Strategy: a trigonometric field described by (constant, cos, sin) coeffs.
fn field_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0..2.0f64, 5)
}

fn make_field(domain: &Arc<BaseDomain>, coeffs: &[f64]) -> ScalarField {
    synth::trig_field(
        domain,
        coeffs[0],
        vec![coeffs[1], coeffs[2]],
        vec![coeffs[3], coeffs[4]],
    )
    .unwrap()
}

/// Strictly positive field built from bounded coefficients.
fn make_positive_field(domain: &Arc<BaseDomain>, coeffs: &[f64], floor: f64) -> ScalarField {
    let amp = coeffs[1].abs() + coeffs[2].abs() + coeffs[3].abs() + coeffs[4].abs();
    let f = make_field(domain, coeffs);
    f.shifted(amp - coeffs[0] + floor)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leq_reflexive_lt_irreflexive(coeffs in field_strategy()) {
        let d = domain();
        let a = GraphLegendrian::new(make_field(&d, &coeffs));
        prop_assert!(leq(&a, &a).unwrap());
        prop_assert!(!lt_strict(&a, &a).unwrap());
    }

    #[test]
    fn transitivity_along_constructed_chains(
        coeffs in field_strategy(),
        step1 in field_strategy(),
        step2 in field_strategy(),
    ) {
        let d = domain();
        let a = GraphLegendrian::new(make_field(&d, &coeffs));
        // b = a + nonneg, c = b + nonneg: the chain must compose
        let up1 = make_positive_field(&d, &step1, 0.0);
        let up2 = make_positive_field(&d, &step2, 0.0);
        let b = GraphLegendrian::new(a.field.zip_with(&up1, |x, y| x + y).unwrap());
        let c = GraphLegendrian::new(b.field.zip_with(&up2, |x, y| x + y).unwrap());
        prop_assert!(leq(&a, &b).unwrap());
        prop_assert!(leq(&b, &c).unwrap());
        prop_assert!(leq(&a, &c).unwrap());

        // strictly positive steps give the strict relation
        let sb = GraphLegendrian::new(a.field.zip_with(&up1, |x, y| x + y + 1e-3).unwrap());
        let sc = GraphLegendrian::new(sb.field.zip_with(&up2, |x, y| x + y + 1e-3).unwrap());
        prop_assert!(lt_strict(&a, &sb).unwrap());
        prop_assert!(lt_strict(&sb, &sc).unwrap());
        prop_assert!(lt_strict(&a, &sc).unwrap());
    }

    #[test]
    fn antisymmetry_at_grid_level(coeffs in field_strategy(), other in field_strategy()) {
        let d = domain();
        let a = GraphLegendrian::new(make_field(&d, &coeffs));
        let b = GraphLegendrian::new(make_field(&d, &other));
        if leq(&a, &b).unwrap() && leq(&b, &a).unwrap() {
            prop_assert!(a.field.equals(&b.field));
        }
        // and always for the literal same field
        prop_assert!(leq(&a, &a.clone()).unwrap() && a.field.equals(&a.field));
    }

    #[test]
    fn uniform_topology_equivalence(
        coeffs in field_strategy(),
        other in field_strategy(),
        lambda in 0.05..2.0f64,
    ) {
        let d = domain();
        let f = make_field(&d, &coeffs);
        let g = make_field(&d, &other);
        let sup = f.sup_diff(&g).unwrap();
        prop_assume!(sup > 1e-9);
        let epsilon = lambda * sup;
        let interval = IntervalSpec::around(&GraphLegendrian::new(g.clone()), epsilon).unwrap();
        let inside = interval.contains(&GraphLegendrian::new(f.clone())).unwrap();
        prop_assert_eq!(inside, sup < epsilon, "sup = {}, ε = {}", sup, epsilon);
    }

    #[test]
    fn interval_basis_property(
        coeffs in field_strategy(),
        probe in field_strategy(),
        shrink in 0.1..0.9f64,
    ) {
        let d = domain();
        let z = GraphLegendrian::new(make_field(&d, &coeffs));
        // two intervals around z of different radii
        let i1 = IntervalSpec::around(&z, 0.7).unwrap();
        let i2 = IntervalSpec::new(z.shifted(-0.4), z.shifted(0.9)).unwrap();
        prop_assert!(i1.contains(&z).unwrap() && i2.contains(&z).unwrap());
        let delta = i1.slack(&z).unwrap().min(i2.slack(&z).unwrap());
        prop_assert!(delta > 0.0);
        // anything within sup-distance < δ of z lies in both intervals
        let g = make_field(&d, &probe);
        let sup = g.max_value().abs().max(g.min_value().abs()).max(1e-9);
        let scale = shrink * delta / sup;
        let w = GraphLegendrian::new(
            z.field.zip_with(&g, |a, b| a + scale * b).unwrap(),
        );
        prop_assert!(i1.contains(&w).unwrap());
        prop_assert!(i2.contains(&w).unwrap());
    }

    #[test]
    fn separation_witnesses_are_disjoint(
        coeffs in field_strategy(),
        other in field_strategy(),
        probe in field_strategy(),
    ) {
        let d = domain();
        let a = GraphLegendrian::new(make_field(&d, &coeffs));
        let b = GraphLegendrian::new(make_field(&d, &other));
        match separation_witness(&a, &b).unwrap() {
            None => prop_assert!(a.field.equals(&b.field)),
            Some(w) => {
                prop_assert!((3.0 * w.epsilon - w.sup_gap).abs() < 1e-12);
                prop_assert!(w.around_a.contains(&a).unwrap());
                prop_assert!(w.around_b.contains(&b).unwrap());
                // no probe field may land in both intervals
                let z = GraphLegendrian::new(make_field(&d, &probe));
                let both = w.around_a.contains(&z).unwrap() && w.around_b.contains(&z).unwrap();
                prop_assert!(!both);
            }
        }
    }

    #[test]
    fn order_verdicts_locate_first_violation(
        coeffs in field_strategy(),
        bump_at in 0usize..RES,
    ) {
        let d = domain();
        let f = make_field(&d, &coeffs);
        let mut values = f.values().to_vec();
        values[bump_at] -= 1.0;
        let g = ScalarField::from_values(d, values).unwrap();
        let v = pointwise_leq(&f, &g).unwrap();
        prop_assert!(!v.holds);
        prop_assert_eq!(v.first_violation, Some(bump_at));
        let vs = pointwise_lt(&f, &g).unwrap();
        prop_assert!(!vs.holds);
    }
}
