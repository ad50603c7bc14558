use angdecomp::combinatorics::{format_rational, kappa, parse_rational, rational};
use angdecomp::decomposition::{
    all_components, component, component_via_product, component_via_recursion,
};
use angdecomp::oracle::{legendre, project_numeric};
use angdecomp::render::DecomposeReport;
use angdecomp::tensor::{
    combo_contract_vector, combo_multiply_sym, combo_trace, evaluate_combo, evaluate_x,
    x_term_count, SymTensor, XCombo,
};
use angdecomp::Rational;
use proptest::prelude::*;

fn unit_vector() -> impl Strategy<Value = [f64; 3]> {
    (-1.0f64..=1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(c, phi)| {
        let s = (1.0 - c * c).sqrt();
        [s * phi.cos(), s * phi.sin(), c]
    })
}

fn rank_and_ell(max: u32) -> impl Strategy<Value = (u32, u32)> {
    (0..=max).prop_flat_map(|rank| {
        (Just(rank), 0..=rank / 2).prop_map(|(rank, half)| (rank, rank - 2 * half))
    })
}

fn x_combo(max_rank: u32) -> impl Strategy<Value = XCombo> {
    (0..=max_rank).prop_flat_map(|rank| {
        prop::collection::vec((-20i64..=20, 1i64..=12), (rank / 2 + 1) as usize).prop_map(
            move |cs| {
                XCombo::from_terms(
                    rank,
                    cs.into_iter()
                        .enumerate()
                        .map(|(i, (p, q))| (rank - 2 * i as u32, rational(p, q))),
                )
                .unwrap()
            },
        )
    })
}

fn relative_diff(a: &SymTensor<f64>, b: &SymTensor<f64>) -> f64 {
    a.max_abs_diff(b) / b.max_abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructions_agree((rank, ell) in rank_and_ell(14)) {
        let closed = component(rank, ell);
        prop_assert_eq!(&closed, &component_via_recursion(rank, ell));
        prop_assert_eq!(&closed, &component_via_product(rank, ell));
    }

    #[test]
    fn components_sum_to_monomial_at_any_direction(rank in 0u32..=9, u in unit_vector()) {
        let monomial = evaluate_x(rank, rank, &u).unwrap();
        let sum = all_components(rank)
            .iter()
            .fold(SymTensor::zeros(rank), |acc, (_, c)| &acc + &evaluate_combo(c, &u).unwrap());
        prop_assert!(relative_diff(&sum, &monomial) < 1e-12);
    }

    #[test]
    fn projector_matches_closed_form((rank, ell) in rank_and_ell(7), u in unit_vector()) {
        let numeric = project_numeric(rank, ell, &u).unwrap();
        let exact = evaluate_combo(&component(rank, ell), &u).unwrap();
        prop_assert!(numeric.max_abs_diff(&exact) <= 1e-10 * exact.max_abs().max(1e-300));
    }

    #[test]
    fn contraction_commutes_with_evaluation(c in x_combo(9), u in unit_vector()) {
        prop_assume!(c.rank() >= 1);
        let direct = evaluate_combo(&c, &u).unwrap().contract_vector(&u).unwrap();
        let symbolic = evaluate_combo(&combo_contract_vector(&c).unwrap(), &u).unwrap();
        prop_assert!(relative_diff(&direct, &symbolic) < 1e-12);
    }

    #[test]
    fn trace_commutes_with_evaluation(c in x_combo(9), u in unit_vector()) {
        prop_assume!(c.rank() >= 2);
        let direct = evaluate_combo(&c, &u).unwrap().trace().unwrap();
        let symbolic = evaluate_combo(&combo_trace(&c).unwrap(), &u).unwrap();
        prop_assert!(relative_diff(&direct, &symbolic) < 1e-12);
    }

    #[test]
    fn symmetrized_product_is_commutative(a in x_combo(5), b in x_combo(5)) {
        prop_assert_eq!(combo_multiply_sym(&a, &b), combo_multiply_sym(&b, &a));
    }

    #[test]
    fn symmetrized_product_is_associative(a in x_combo(3), b in x_combo(3), c in x_combo(3)) {
        let left = combo_multiply_sym(&combo_multiply_sym(&a, &b), &c);
        let right = combo_multiply_sym(&a, &combo_multiply_sym(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn kappa_is_a_term_count_ratio((l_rank, l) in rank_and_ell(8), (n_rank, n) in rank_and_ell(8)) {
        let k = kappa(l_rank, l, n_rank, n).unwrap();
        let total = l_rank + n_rank;
        let shuffles = angdecomp::combinatorics::binomial(u64::from(total), u64::from(l_rank));
        let lhs = shuffles * x_term_count(l_rank, l).unwrap() * x_term_count(n_rank, n).unwrap();
        prop_assert_eq!(k * Rational::from_integer(x_term_count(total, l + n).unwrap()), Rational::from_integer(lhs));
    }

    #[test]
    fn legendre_is_bounded_on_the_interval(ell in 0u32..40, x in -1.0f64..=1.0) {
        prop_assert!(legendre(ell, &x).abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn exact_legendre_matches_float(ell in 0u32..20, p in -50i64..=50) {
        let x = rational(p, 50);
        let exact = legendre(ell, &x);
        let float = legendre(ell, &(p as f64 / 50.0));
        let exact_f = num_traits::ToPrimitive::to_f64(&exact).unwrap();
        prop_assert!((exact_f - float).abs() < 1e-12);
    }

    #[test]
    fn fraction_text_round_trips(p in any::<i64>(), q in 1i64..=i64::MAX) {
        let r = rational(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn report_json_round_trips(rank in 0u32..=16, pick in any::<bool>(), half in 0u32..=8) {
        let ell = (pick && half * 2 <= rank).then(|| rank - 2 * half);
        let report = DecomposeReport::new(rank, ell).unwrap();
        let json = report.to_json();
        let parsed = DecomposeReport::from_json(&json).unwrap();
        prop_assert_eq!(parsed.to_json(), json);
        prop_assert_eq!(parsed, report);
    }

    #[test]
    fn report_decoder_never_panics(text in "\\PC{0,200}") {
        let _ = DecomposeReport::from_json(&text);
    }

    #[test]
    fn report_decoder_survives_mutated_input(rank in 0u32..=6, at in any::<prop::sample::Index>(), byte in any::<u8>()) {
        let mut bytes = DecomposeReport::new(rank, None).unwrap().to_json().into_bytes();
        let i = at.index(bytes.len());
        bytes[i] = byte;
        if let Ok(text) = std::str::from_utf8(&bytes) {
            if let Ok(report) = DecomposeReport::from_json(text) {
                prop_assert_eq!(DecomposeReport::from_json(&report.to_json()).unwrap(), report);
            }
        }
    }

    #[test]
    fn rational_parser_never_panics(text in "\\PC{0,40}") {
        let _ = parse_rational(&text);
    }
}
