use proptest::prelude::*;
use qadhm_core::exactcore::{qbrace, qint, GaussRational, Matrix, Pencil, QLaurent, QRat};
use qadhm_core::GaussMatrix;

fn gauss() -> impl Strategy<Value = GaussRational> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5).prop_map(|(a, b, c, d)| GaussRational::from_parts(a, b, c, d))
}

fn laurent() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-3i32..=3, gauss()), 0..4).prop_map(QLaurent::from_terms)
}

fn qrat() -> impl Strategy<Value = QRat> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { QRat::from(n) } else { QRat::new(n, d) })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = GaussMatrix> {
    prop::collection::vec(gauss(), rows * cols).prop_map(move |v| Matrix::from_vec(rows, cols, v).unwrap())
}

fn low_rank() -> impl Strategy<Value = GaussMatrix> {
    (1usize..=4, 1usize..=4, 1usize..=3)
        .prop_flat_map(|(m, n, k)| (matrix(m, k), matrix(k, n)).prop_map(|(a, b)| a.mul(&b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_field_axioms(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if a != GaussRational::from_int(0) {
            prop_assert_eq!(&a * &a.inv(), GaussRational::from_int(1));
        }
    }

    #[test]
    fn qrat_field_axioms(a in qrat(), b in qrat(), c in qrat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !num_traits::Zero::is_zero(&a) {
            prop_assert_eq!(&a * &a.inv(), <QRat as num_traits::One>::one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn rank_of_transpose(m in low_rank()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_is_annihilated(m in low_rank()) {
        let ker = m.kernel();
        prop_assert_eq!(ker.len(), m.cols() - m.rank());
        for v in ker {
            prop_assert!(m.mul(&Matrix::column(v)).is_zero());
        }
    }

    #[test]
    fn pencil_evaluation_is_naive_sum(
        a in matrix(2, 3), b in matrix(2, 3), c in matrix(2, 3),
        x in gauss(), y in gauss()
    ) {
        let p = Pencil::new(vec!["z".into(), "w".into()], vec![a.clone(), b.clone()], c.clone()).unwrap();
        let naive = Matrix::from_fn(2, 3, |i, j| &(&(&a[(i, j)] * &x) + &(&b[(i, j)] * &y)) + &c[(i, j)]);
        prop_assert_eq!(p.evaluate(&[x, y]).unwrap(), naive);
    }
}

#[test]
fn brace_is_shifted_quantum_integer() {
    for n in 1..=12 {
        assert_eq!(qbrace(n), qint(n).shift(n as i32 - 1), "n = {n}");
    }
}

#[test]
fn det_of_product() {
    let a =
        Matrix::from_fn(3, 3, |i, j| GaussRational::from_parts((i * 3 + j) as i64 - 4, 1, (i + 2 * j) as i64 % 3, 2));
    let b = Matrix::from_fn(3, 3, |i, j| GaussRational::from_int(if i == j { 2 } else { (i as i64) - (j as i64) }));
    assert_eq!(a.mul(&b).det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
}
