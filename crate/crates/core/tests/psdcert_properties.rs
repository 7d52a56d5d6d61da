use eqlines::exactlin::{psd_check, rat, rational_inverse, RationalMatrix};
use eqlines::psdcert::constants::{c_matrices, universe_m2, C_PRODUCTS_9};
use eqlines::psdcert::{
    assemble_q, delta, q22_block, search_max_multiplicity, MatrixMultiset, SearchOptions,
    SearchStatus, TwoRowMatrix,
};
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

fn two_row(cols: usize, vals: &'static [i64]) -> impl Strategy<Value = TwoRowMatrix> {
    proptest::collection::vec(proptest::sample::select(vals), 2 * cols)
        .prop_map(move |v| TwoRowMatrix::new(&v[..cols], &v[cols..]))
}

fn sym(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(lo..=hi, n * n).prop_map(move |v| {
        RationalMatrix::from_fn(n, n, |i, j| {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            rat(v[a * n + b] + if i == j { 2 * hi } else { 0 })
        })
    })
}

fn multiset(cols: usize) -> impl Strategy<Value = MatrixMultiset> {
    proptest::collection::vec((two_row(cols, &[-3, -1, 0, 2]), 1u32..3), 0..4)
        .prop_map(MatrixMultiset::from_counts)
}

/// Brute-force `Δ` from the assembled matrix: `Q11 - Q21^T Q22^{-1} Q21`.
fn schur_oracle(q11: &RationalMatrix, a: &MatrixMultiset) -> RationalMatrix {
    let qa = assemble_q(q11, a).unwrap();
    if a.total() == 0 {
        return q11.clone();
    }
    let inv = rational_inverse(&qa.q22).unwrap();
    q11.sub(&qa.q21.transpose().mul(&inv).mul(&qa.q21))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn delta_is_the_schur_complement(q11 in sym(3, -4, 4), a in multiset(3)) {
        let d = delta(&q11, &a).unwrap();
        prop_assert_eq!(&d, &schur_oracle(&q11, &a));
        let q = assemble_q(&q11, &a).unwrap().q;
        prop_assert_eq!(psd_check(&q).unwrap().is_psd(), psd_check(&d).unwrap().is_psd());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn delta_is_invariant_under_row_swap(q11 in sym(4, -3, 3), a in multiset(4)) {
        prop_assert_eq!(delta(&q11, &a).unwrap(), delta(&q11, &a.bar()).unwrap());
    }

    #[test]
    fn dropping_copies_preserves_psd(q11 in sym(3, -2, 6), a in multiset(3), drop in 0usize..8) {
        let full = delta(&q11, &a).unwrap();
        if psd_check(&full).unwrap().is_psd() && a.total() > 0 {
            let items: Vec<(TwoRowMatrix, u32)> = a.iter().map(|(m, c)| (m.clone(), c)).collect();
            let k = drop % items.len();
            let smaller = MatrixMultiset::from_counts(
                items.iter().enumerate().map(|(i, (m, c))| (m.clone(), if i == k { c - 1 } else { *c })),
            );
            prop_assert!(psd_check(&delta(&q11, &smaller).unwrap()).unwrap().is_psd());
        }
    }

    #[test]
    fn search_matches_brute_force(q11 in sym(2, -3, 9)) {
        let u = universe_m2();
        let out = search_max_multiplicity(&q11, &u, &SearchOptions { cap: 3, parallel: false, ..Default::default() });
        // every multiset of at most three elements, checked on the assembled matrix
        let n = u.elements.len();
        let mut best: Option<usize> = None;
        let mut feasible: Vec<BTreeSet<Vec<(usize, u32)>>> = vec![BTreeSet::new(); 4];
        for i in 0..=n {
            for j in i..=n {
                for k in j..=n {
                    let mut a = MatrixMultiset::new();
                    for &e in &[i, j, k] {
                        if e < n {
                            a.add(u.elements[e].clone(), 1);
                        }
                    }
                    if psd_check(&assemble_q(&q11, &a).unwrap().q).unwrap().is_psd() {
                        best = best.max(Some(a.total()));
                        let mut orbits = BTreeMap::new();
                        for (m, c) in a.iter() {
                            *orbits.entry(u.orbit_index(u.index_of(m).unwrap())).or_insert(0) += c;
                        }
                        feasible[a.total()].insert(orbits.into_iter().collect());
                    }
                }
            }
        }
        prop_assert_eq!(out.max_feasible, best);
        match best {
            Some(3) => prop_assert_eq!(out.status, SearchStatus::InconclusiveAtCap { cap: 3 }),
            b => prop_assert_eq!(out.status, SearchStatus::Exact { max: b }),
        }
        prop_assert_eq!(out.feasible_by_size, feasible.iter().map(|s| s.len() as u64).collect::<Vec<_>>());
    }
}

#[test]
fn c_products_match_their_displays() {
    let inv = rational_inverse(&q22_block()).unwrap();
    for (c, shown) in c_matrices().iter().zip(C_PRODUCTS_9.iter()) {
        let a = c.to_rational();
        let got = a.transpose().mul(&inv).mul(&a).scale(&rat(9));
        let want = RationalMatrix::from_fn(4, 4, |i, j| rat(shown[i][j]));
        assert_eq!(got, want, "{c}");
    }
}

#[test]
fn budget_exhaustion_is_reported() {
    let out = search_max_multiplicity(
        &RationalMatrix::from_rows(&[vec![60, 0], vec![0, 60]]),
        &universe_m2(),
        &SearchOptions {
            cap: 6,
            node_budget: Some(5),
            parallel: false,
            ..Default::default()
        },
    );
    assert!(matches!(out.status, SearchStatus::BudgetExhausted { .. }));
    assert!(!out.is_conclusive());
}
