use proptest::prelude::*;
use qadhm_cli::expr::parse;
use qadhm_cli::main_with_args;
use qadhm_core::{GaussRational, QLaurent};
use qadhm_quantum::qspacetime::monomials_of_degree;
use qadhm_quantum::{Chart, NcPoly, QPoly};

fn poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(
        (0u32..=3, any::<prop::sample::Index>(), prop::collection::vec((-3i32..=3, -4i64..=4), 1..3)),
        0..4,
    )
    .prop_map(|v| {
        NcPoly::from_terms(
            Chart::I,
            v.into_iter().map(|(d, i, c)| {
                let ms = monomials_of_degree(d);
                let coef = QLaurent::from_terms(c.into_iter().map(|(e, k)| (e, GaussRational::from_int(k))));
                ((0, ms[i.index(ms.len())]), coef)
            }),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_normal_forms_parse_back(f in poly()) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn sums_and_products_follow_the_algebra(f in poly(), g in poly()) {
        let (a, b) = (f.to_string(), g.to_string());
        prop_assert_eq!(parse(&format!("({a}) * ({b})")).unwrap(), f.mul(&g));
        prop_assert_eq!(parse(&format!("({a}) - ({b})")).unwrap(), f.sub(&g));
    }
}

#[test]
fn normalize_reports_are_deterministic() {
    let run = || main_with_args(["adhmq", "q", "normalize", "x22*x21*x12*x11 + q^-3*det"]);
    let (c1, o1) = run();
    let (c2, o2) = run();
    assert_eq!((c1, &o1), (c2, &o2));
    assert_eq!(c1, 0);
}
