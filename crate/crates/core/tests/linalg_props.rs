mod common;

use common::*;
use num_bigint::Sign as BigSign;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use psc_stab::linalg::{
    congruent_diagonalize, congruent_diagonalize_with_order, det_sign, int_det, mod2_kernel_dim, rat_kernel_dim,
};
use psc_stab::RatMatrix;

fn oracle_sign(m: &[Vec<i64>]) -> BigSign {
    cofactor_det(m).sign()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_matches_cofactor_expansion(m in square_matrix(6, 6)) {
        prop_assert_eq!(int_det(&int_matrix(&m)).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn congruence_diagonalizes_exactly(m in nondegenerate_symmetric(6, 4)) {
        let q = int_matrix(&m).to_rational();
        let cd = congruent_diagonalize(&q).unwrap();
        let lhs = cd.p.transpose().mul_mat(&q).mul_mat(&cd.p);
        prop_assert_eq!(lhs, RatMatrix::diagonal(&cd.d));
        prop_assert!(cd.d.iter().all(|x| !x.is_zero()));
        // Positive entries come first.
        let k = cd.positive_count();
        prop_assert!(cd.d[..k].iter().all(|x| x.is_positive()));
        prop_assert_eq!((cd.positive_count(), cd.negative_count()), descartes_signature(&m));
    }

    #[test]
    fn reduction_mod_two_only_grows_kernel(m in square_matrix(7, 5)) {
        let im = int_matrix(&m);
        prop_assert!(rat_kernel_dim(&im.to_rational()) <= mod2_kernel_dim(&im.reduce_mod2()));
    }

    #[test]
    fn det_sign_is_multiplicative(
        (a, b, da, db) in (1usize..=5).prop_flat_map(|n| (
            prop::collection::vec(prop::collection::vec(-5i64..=5, n), n),
            prop::collection::vec(prop::collection::vec(-5i64..=5, n), n),
            1i64..=7,
            1i64..=7,
        ))
    ) {
        // Genuinely rational inputs: scale each matrix by 1/da, 1/db.
        let scale = |m: &[Vec<i64>], d: i64| {
            int_matrix(m).to_rational().map(|x| x / BigRational::from_integer(d.into()))
        };
        let (ra, rb) = (scale(&a, da), scale(&b, db));
        let sa = det_sign(&ra).unwrap();
        let sb = det_sign(&rb).unwrap();
        prop_assert_eq!(sa, oracle_sign(&a));
        prop_assert_eq!(det_sign(&ra.mul_mat(&rb)).unwrap(), sa * sb);
    }

    #[test]
    fn sylvester_stable_under_pivot_order(
        (m, order) in nondegenerate_symmetric(6, 4)
            .prop_flat_map(|m| { let n = m.len(); (Just(m), Just((0..n).collect::<Vec<_>>()).prop_shuffle()) })
    ) {
        let q = int_matrix(&m).to_rational();
        let a = congruent_diagonalize(&q).unwrap();
        let b = congruent_diagonalize_with_order(&q, &order).unwrap();
        prop_assert_eq!((a.positive_count(), a.negative_count()), (b.positive_count(), b.negative_count()));
        let lhs = b.p.transpose().mul_mat(&q).mul_mat(&b.p);
        prop_assert_eq!(lhs, RatMatrix::diagonal(&b.d));
    }
}

#[test]
fn bigint_products_do_not_overflow() {
    // det of 30·I_12 needs 59 bits.
    let m: Vec<Vec<i64>> = (0..12).map(|i| (0..12).map(|j| if i == j { 30 } else { 0 }).collect()).collect();
    let d = int_det(&int_matrix(&m)).unwrap();
    assert_eq!(d, num_bigint::BigInt::from(30).pow(12));
}
