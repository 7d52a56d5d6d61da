use eqlines::exactlin::{
    is_psd_integer, nullity, psd_check, rat, rational_inverse, RationalMatrix,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn symmetric_strategy(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = (usize, Vec<i64>)> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(lo..=hi, n * (n + 1) / 2).prop_map(move |upper| {
            let mut e = vec![0i64; n * n];
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    e[i * n + j] = upper[k];
                    e[j * n + i] = upper[k];
                    k += 1;
                }
            }
            (n, e)
        })
    })
}

/// Low-rank PSD matrices `X X^T` exercise the singular branch far more often
/// than uniform sampling does.
fn gram_strategy() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (1usize..=6, 1usize..=4).prop_flat_map(|(n, r)| {
        proptest::collection::vec(-3i64..=3, n * r).prop_map(move |x| {
            let mut e = vec![0i64; n * n];
            for i in 0..n {
                for j in 0..n {
                    e[i * n + j] = (0..r).map(|k| x[i * r + k] * x[j * r + k]).sum();
                }
            }
            (n, e)
        })
    })
}

fn all_principal_minors_nonnegative(m: &RationalMatrix) -> bool {
    let n = m.n_rows();
    (1u32..1 << n).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        !m.principal_submatrix(&idx)
            .determinant()
            .unwrap()
            .is_negative()
    })
}

fn grid_finds_negative(n: usize, e: &[i64]) -> bool {
    // integer points of a small box, enough to catch most indefinite forms
    let range = [-2i64, -1, 0, 1, 2];
    let total = range.len().pow(n as u32);
    (0..total.min(20_000)).any(|mut code| {
        let x: Vec<i64> = (0..n)
            .map(|_| {
                let v = range[code % range.len()];
                code /= range.len();
                v
            })
            .collect();
        let q: i64 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| x[i] * e[i * n + j] * x[j])
            .sum();
        q < 0
    })
}

fn check((n, e): (usize, Vec<i64>)) -> Result<(), TestCaseError> {
    let m = RationalMatrix::from_i64(n, n, &e);
    let r = psd_check(&m).unwrap();
    prop_assert!(r.validates(&m));
    prop_assert_eq!(r.is_psd(), all_principal_minors_nonnegative(&m));
    prop_assert_eq!(r.is_psd(), is_psd_integer(n, &e));
    if grid_finds_negative(n, &e) {
        prop_assert!(!r.is_psd());
    }
    match &r {
        eqlines::PsdResult::Psd(c) => prop_assert_eq!(c.recompose(), m.clone()),
        eqlines::PsdResult::NotPsd(w) => prop_assert!(m.quadratic_form(&w.vector).is_negative()),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn verdict_matches_minor_oracle(case in symmetric_strategy(6, -9, 9)) {
        check(case)?;
    }

    #[test]
    fn verdict_on_gram_matrices(case in gram_strategy()) {
        check(case)?;
    }

    #[test]
    fn kernel_vectors_annihilate((n, e) in gram_strategy()) {
        let m = RationalMatrix::from_i64(n, n, &e);
        let k = nullity(&m);
        prop_assert_eq!(k.rank + k.nullity, n);
        for v in &k.basis {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        match rational_inverse(&m) {
            Ok(inv) => {
                prop_assert_eq!(k.nullity, 0);
                prop_assert_eq!(m.mul(&inv), RationalMatrix::identity(n));
            }
            Err(_) => prop_assert!(k.nullity > 0),
        }
    }

    #[test]
    fn shift_by_large_diagonal_is_psd((n, e) in symmetric_strategy(6, -9, 9)) {
        let m = RationalMatrix::from_i64(n, n, &e).shift_diagonal(&rat(9 * n as i64));
        prop_assert!(psd_check(&m).unwrap().is_psd());
    }
}
