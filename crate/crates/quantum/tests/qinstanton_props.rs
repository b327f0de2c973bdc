use proptest::prelude::*;
use qadhm_core::adhm::{
    basic_real_datum, c_stable_solution, complex_residuals, embed_real, gm, is_stable, non_c_stable_solution,
    rank_one_solution, rng, sample_datum_r2, ComplexAdhmDatum,
};
use qadhm_core::{GaussRational, QLaurent};
use qadhm_quantum::qcalculus::{Calculus, Duality, PChoice};
use qadhm_quantum::qinstanton::{
    beta_p_alpha_q, beta_surjective_truncated, build_q_ops, curvature_asd, curvature_words, evaluation_grid,
    projection_truncated, verify_ids, xi_leading, ProjError,
};
use qadhm_quantum::qspacetime::monomials_of_degree;
use qadhm_quantum::{Chart, NcPoly, QPoly};

fn g(a: i64) -> GaussRational {
    GaussRational::from_int(a)
}

fn perturb(d: &ComplexAdhmDatum, which: usize, amount: i64) -> ComplexAdhmDatum {
    let mut e = d.clone();
    let m = match which % 4 {
        0 => &mut e.b11,
        1 => &mut e.b22,
        2 => &mut e.i1,
        _ => &mut e.j2,
    };
    m[(0, 0)] = &m[(0, 0)] + &g(amount);
    e
}

fn poly_strategy(chart: Chart) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0u32..=1, any::<prop::sample::Index>(), -3i64..=3), 0..3).prop_map(move |v| {
        NcPoly::from_terms(
            chart,
            v.into_iter().map(|(d, i, c)| {
                let ms = monomials_of_degree(d);
                ((0, ms[i.index(ms.len())]), QLaurent::from_int(c))
            }),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn monad_identities_track_adhm_residuals(seed in 0u64..500, which in 0usize..4, amount in prop_oneof![Just(0i64), 1i64..3]) {
        let d = perturb(&c_stable_solution(&mut rng(seed), 2, 1).unwrap(), which, amount);
        let is_solution = complex_residuals(&d).iter().all(|m| m.is_zero());
        for chart in [Chart::I, Chart::J] {
            let rep = verify_ids(&d, chart);
            prop_assert!(rep.equals_residuals);
            prop_assert_eq!(rep.holds, is_solution);
        }
    }

    #[test]
    fn pencil_relation(seed in 0u64..500, a in 0usize..12, b in 0usize..12) {
        let d = c_stable_solution(&mut rng(seed), 2, 1).unwrap();
        let grid = evaluation_grid();
        let (_, rep) = beta_p_alpha_q(&d, &grid[a], &grid[b]);
        prop_assert!(rep.holds);
        prop_assert_eq!(rep.is_zero, rep.determinant == g(0));
    }

    #[test]
    fn surjective_exactly_where_pencil_is_stable(seed in 0u64..500, k in 0usize..12) {
        let d = c_stable_solution(&mut rng(seed), 2, 1).unwrap();
        let p = &evaluation_grid()[k];
        let rep = beta_surjective_truncated(&d, p, 2);
        let (b1, b2, it, _) = d.eval_at(&p.0, &p.1);
        prop_assert_eq!(rep.stable_at_p, is_stable(&b1, &b2, &it).holds);
        prop_assert!(rep.stable_at_p && rep.surjective);
    }

    #[test]
    fn certificate_at_the_bad_point(seed in 0u64..500) {
        let (d, lambda) = non_c_stable_solution(&mut rng(seed), 2);
        prop_assert!(complex_residuals(&d).iter().all(|m| m.is_zero()));
        let rep = beta_surjective_truncated(&d, &(-lambda, g(1)), 2);
        prop_assert!(!rep.stable_at_p && !rep.surjective);
        let cert = rep.certificate.expect("certificate");
        prop_assert!(cert.character_respects_relations && cert.kills_image);
    }

    #[test]
    fn truncated_projection_lands_in_kernel(psi in prop::collection::vec(poly_strategy(Chart::I), 4)) {
        let d = embed_real(&basic_real_datum()).unwrap();
        let rep = projection_truncated(&d, &psi, 1).unwrap();
        prop_assert!(rep.kernel_within_truncation);
        prop_assert!(rep.idempotent_within_truncation);
        prop_assert!(rep.first_residual_degree.map_or(true, |k| k > 3));
    }
}

#[test]
fn zero_b_datum_gives_det_plus_ij() {
    let mut d = ComplexAdhmDatum::zero(1, 1);
    d.i1 = gm(&[&[2]]);
    d.j2 = gm(&[&[3]]);
    let rep = xi_leading(&d);
    assert!(rep.leading_is_det);
    assert_eq!(rep.zero_b_formula, Some(true));
    assert_eq!(rep.max_degree, Some(2));
    // β1 α2 entry by hand: det(x) + 6
    let o = build_q_ops(&d, Chart::I);
    let xi = o.beta1.mul(&o.alpha2);
    let expect = qadhm_quantum::qspacetime::det_x().add(&NcPoly::constant(Chart::I, QLaurent::from_int(6)));
    assert_eq!(*xi.get(0, 0), expect);
}

#[test]
fn fixed_data_satisfy_the_monad_identities() {
    let mut r = rng(3);
    for d in [sample_datum_r2(), embed_real(&basic_real_datum()).unwrap(), rank_one_solution(&mut r)] {
        for chart in [Chart::I, Chart::J] {
            assert!(verify_ids(&d, chart).holds);
        }
        assert!(xi_leading(&d).leading_is_det);
    }
}

#[test]
fn surjectivity_on_the_grid_for_larger_data() {
    let d = c_stable_solution(&mut rng(11), 2, 2).unwrap();
    for p in evaluation_grid() {
        let rep = beta_surjective_truncated(&d, &p, 3);
        assert!(rep.stable_at_p && rep.surjective, "{p:?}");
        assert_eq!(rep.krylov_dim, 2);
    }
}

#[test]
fn projection_rejects_non_solutions_and_bad_shapes() {
    let d = embed_real(&basic_real_datum()).unwrap();
    let bad = perturb(&d, 2, 1);
    let psi = vec![NcPoly::zero(Chart::I); 4];
    assert!(matches!(projection_truncated(&bad, &psi, 1), Err(ProjError::NotASolution)));
    assert!(matches!(projection_truncated(&d, &psi[..3], 1), Err(ProjError::Shape(3, 4))));
    let z = ComplexAdhmDatum::zero(1, 1);
    assert!(matches!(projection_truncated(&z, &psi[..3], 1), Err(ProjError::SingularXi0)));
}

#[test]
fn curvature_words_before_relations() {
    let d = ComplexAdhmDatum::zero(1, 1);
    let w = curvature_words(&d, Chart::I);
    // (dᾱ ∧ dβ̄)_{11} = dα1_1 ∧ -dβ2_1 + ... : dx11∧dx22 - dx12∧dx21 before reordering
    assert_eq!(w.len(), 3);
    assert!(w[2].iter().all(|f| f.is_zero()));
    assert!(!w[0][0].is_zero());
}

#[test]
fn curvature_is_not_asd_in_one_block() {
    let d = c_stable_solution(&mut rng(5), 2, 2).unwrap();
    for p in PChoice::BOTH {
        let calc = Calculus::new(p).unwrap();
        let rep = curvature_asd(&d, &calc);
        assert!(rep.block_scalar);
        assert!(rep.classical_matches_negated && rep.classical_all_asd);
        assert!(!rep.matches_expected);
        assert_eq!(rep.matches_negated, vec![vec![false, true], vec![true, true]]);
        assert_eq!(rep.classes[0][0], Duality::Mixed);
        assert_eq!(rep.classes[0][1], Duality::Asd);
        assert_eq!(rep.classes[1][0], Duality::Asd);
        assert_eq!(rep.classes[1][1], Duality::Asd);
        assert!(!rep.all_asd);
    }
}
