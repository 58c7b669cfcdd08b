use std::sync::Arc;

use choicelens::axioms::{
    check_alpha_cf, check_alpha_cf_naive, check_alpha_gamma_delta, check_weak_warp,
    check_weak_warp_naive,
};
use choicelens::classify::{
    audit_necessary_conditions, classify_all, verify_explanation, Analysis, ModelId,
};
use choicelens::consideration::{
    gamma_min, gamma_order, minimal_switch_within, psi_min, psi_min_star, SwitchIndex,
};
use choicelens::domain::{invert_permutation, ChoiceFunction, GroundSet, Menu};
use choicelens::oracle::{census, census_serial, function_at, total_functions, CensusSource};
use choicelens::parse::parse_dataset;
use choicelens::relations::{linear_extension, max_correspondence, BinaryRelation, LinearOrder};
use choicelens::revealed::{relation_p, relation_r, relation_r_naive};
use proptest::prelude::*;

fn ground(n: usize) -> Arc<GroundSet> {
    GroundSet::standard(n).unwrap()
}

/// A uniformly chosen function on `n ≤ 4` items, by mixed-radix code.
fn choice(n: usize) -> impl Strategy<Value = ChoiceFunction> {
    let total = total_functions(n) as u64;
    (0..total).prop_map(move |i| function_at(&ground(n), i))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn relation(n: usize) -> impl Strategy<Value = BinaryRelation> {
    proptest::collection::vec((0..n, 0..n), 0..2 * n * n).prop_map(move |pairs| {
        BinaryRelation::from_pairs(ground(n), pairs.into_iter().filter(|(a, b)| a != b))
    })
}

fn verdicts(c: &ChoiceFunction) -> Vec<bool> {
    let a = Analysis::new(c);
    ModelId::standard_list(c.n())
        .into_iter()
        .map(|m| a.decide(m).unwrap().holds)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn verdicts_are_invariant_under_relabeling(c in choice(4), sigma in permutation(4)) {
        let image = c.apply_isomorphism(&sigma).unwrap();
        prop_assert_eq!(verdicts(&c), verdicts(&image));
        prop_assert_eq!(c.canonical_form(), image.canonical_form());
        let back = image.apply_isomorphism(&invert_permutation(&sigma)).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn explanations_reverify(c in choice(4)) {
        let report = classify_all(&c);
        prop_assert!(report.containment_violations.is_empty());
        for row in &report.rows {
            if let Some(e) = &row.explanation {
                prop_assert!(verify_explanation(&c, e).holds, "{}", row.model);
                if row.model != ModelId::Ccla && row.model != ModelId::Lr {
                    prop_assert!(audit_necessary_conditions(&c, e).holds, "{}", row.model);
                }
            } else if row.verdict.holds {
                prop_assert!(row.elicitation_error.is_some());
            } else {
                prop_assert!(row.verdict.counterexample.is_some());
            }
        }
    }

    #[test]
    fn fast_scans_match_literal_scans(c in choice(4)) {
        prop_assert_eq!(check_alpha_cf(&c).holds, check_alpha_cf_naive(&c).holds);
        prop_assert_eq!(check_weak_warp(&c).holds, check_weak_warp_naive(&c).holds);
        prop_assert_eq!(relation_r(&c), relation_r_naive(&c));
    }

    #[test]
    fn minimal_filters_are_nested(c in choice(4)) {
        let gm = gamma_min(&c);
        let star = psi_min_star(&c);
        prop_assert!(gm.is_pointwise_subset(&star));
        prop_assert!(psi_min(&c).is_pointwise_subset(&star));
        if let Ok(order) = linear_extension(&relation_p(&c)) {
            prop_assert!(gm.is_pointwise_subset(&gamma_order(&c, &order)));
        }
    }

    #[test]
    fn alpha_violations_contain_a_switch(c in choice(4)) {
        let g = c.ground();
        let sw = SwitchIndex::new(&c);
        for b in g.menus() {
            for a in b.submenus() {
                let target = c.choice(b);
                if a != b && a.contains(target) && c.choice(a) != target {
                    let s = minimal_switch_within(&c, a, b).unwrap();
                    prop_assert!(sw.is_switch(s.menu, s.removed));
                    prop_assert!(a.is_subset(s.smaller()) && s.menu.is_subset(b));
                }
            }
        }
    }

    #[test]
    fn extensions_contain_the_relation(rel in relation(5)) {
        match linear_extension(&rel) {
            Ok(order) => {
                prop_assert!(order.contains_relation(&rel));
                prop_assert!(rel.is_asymmetric());
            }
            Err(_) => prop_assert!(rel.extension_obstacle().is_some()),
        }
    }

    #[test]
    fn partial_order_maxima_satisfy_sen(rel in relation(4)) {
        if rel.is_asymmetric() && rel.is_transitive() {
            let gamma = max_correspondence(&rel).unwrap();
            prop_assert!(check_alpha_gamma_delta(&gamma).all_hold());
        }
    }

    #[test]
    fn datasets_round_trip(c in choice(4)) {
        prop_assert_eq!(parse_dataset(&c.to_cf_string()).unwrap(), c);
    }

    #[test]
    fn rational_functions_are_everywhere(order in permutation(4)) {
        let order = LinearOrder::new(order).unwrap();
        let c = ChoiceFunction::rational(ground(4), &order).unwrap();
        prop_assert!(verdicts(&c).into_iter().all(|v| v));
        prop_assert!(SwitchIndex::new(&c).is_empty());
    }
}

#[test]
fn parallel_census_matches_serial() {
    let models = [
        ModelId::Alpha,
        ModelId::Cla,
        ModelId::Cmla,
        ModelId::Csla,
        ModelId::Lr,
    ];
    let par = census(4, &models, false, CensusSource::Exhaustive).unwrap();
    let ser = census_serial(4, &models, false, CensusSource::Exhaustive).unwrap();
    assert_eq!(par, ser);
    let source = CensusSource::Sample {
        count: 2000,
        seed: 3,
    };
    assert_eq!(
        census(5, &models, true, source).unwrap(),
        census_serial(5, &models, true, source).unwrap()
    );
}

#[test]
fn sampled_alpha_frequency_matches_exact_count() {
    let source = CensusSource::Sample {
        count: 10_000,
        seed: 7,
    };
    let rows = census(3, &[ModelId::Alpha], false, source).unwrap();
    let p: f64 = 6.0 / 24.0;
    let sd = (10_000.0 * p * (1.0 - p)).sqrt();
    let dev = (rows[0].count as f64 - 10_000.0 * p).abs();
    assert!(dev <= 3.0 * sd, "count {} deviates by {dev}", rows[0].count);
}

#[test]
fn sen_characterization_at_three_items() {
    use choicelens::domain::ChoiceCorrespondence;
    use choicelens::relations::strict_partial_orders;
    let g = ground(3);
    let orders = strict_partial_orders(&g);
    assert_eq!(orders.len(), 19);
    let maxima: Vec<ChoiceCorrespondence> = orders
        .iter()
        .map(|p| max_correspondence(p).unwrap())
        .collect();
    let menus: Vec<Menu> = g.menus().collect();
    let mut count = 0;
    let mut digits = vec![0usize; menus.len()];
    let options: Vec<Vec<Menu>> = menus.iter().map(|m| m.submenus().collect()).collect();
    loop {
        let gamma = ChoiceCorrespondence::from_fn(Arc::clone(&g), |m| {
            let i = menus.iter().position(|x| *x == m).unwrap();
            options[i][digits[i]]
        })
        .unwrap();
        if check_alpha_gamma_delta(&gamma).all_hold() {
            count += 1;
            assert!(maxima.contains(&gamma));
        }
        let mut pos = 0;
        while pos < digits.len() {
            digits[pos] += 1;
            if digits[pos] < options[pos].len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == digits.len() {
            break;
        }
    }
    assert_eq!(count, 19);
}
