//! Independent oracles for the integration tests. Nothing here calls the
//! elimination or diagonalization code under test.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use psc_stab::IntMatrix;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
        let term = BigInt::from(m[0][j]) * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Coefficients `c_0..c_n` of `det(xI − A)`, lowest degree first, by
/// Faddeev–LeVerrier. Every intermediate is integral for integral `A`.
pub fn char_poly(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    let a: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mul = |x: &Vec<Vec<BigInt>>, y: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).filter(|&k| !x[i][k].is_zero()).fold(BigInt::zero(), |s, k| s + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = mul(&a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mul(&a, &m);
        let trace = (0..n).fold(BigInt::zero(), |s, i| s + &am[i][i]);
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    coeffs
}

fn sign_changes(coeffs: impl Iterator<Item = BigInt>) -> usize {
    let signs: Vec<bool> = coeffs.filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `(p, q)` of a nondegenerate symmetric integer matrix via Descartes' rule,
/// exact here because the characteristic polynomial is real-rooted.
pub fn descartes_signature(a: &[Vec<i64>]) -> (usize, usize) {
    let c = char_poly(a);
    let pos = sign_changes(c.iter().cloned());
    let neg = sign_changes(c.iter().enumerate().map(|(k, x)| if k % 2 == 1 { -x.clone() } else { x.clone() }));
    (pos, neg)
}

pub fn to_i64_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).expect("small entry")).collect()).collect()
}

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64_rows(&refs).unwrap()
}

pub fn square_matrix(max_n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(-bound..=bound, n), n))
}

pub fn symmetric_matrix(max_n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    square_matrix(max_n, bound).prop_map(|m| {
        let n = m.len();
        (0..n).map(|i| (0..n).map(|j| if i <= j { m[i][j] } else { m[j][i] }).collect()).collect()
    })
}

pub fn nondegenerate_symmetric(max_n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    symmetric_matrix(max_n, bound).prop_filter("degenerate", |m| !cofactor_det(m).is_zero())
}

/// A unimodular matrix as a product of elementary shears and sign flips.
pub fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    let op = (0..n, 0..n, -2i64..=2, any::<bool>());
    prop::collection::vec(op, 0..12).prop_map(move |ops| {
        let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, k, flip) in ops {
            if i != j {
                for row in u.iter_mut() {
                    row[j] += k * row[i];
                }
            }
            if flip {
                for row in u.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
        u
    })
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}
