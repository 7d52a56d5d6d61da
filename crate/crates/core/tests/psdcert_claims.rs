use eqlines::exactlin::{psd_check, rat, Rational};
use eqlines::psdcert::claims::{
    staged_size9, verify_fixed_not_psd, verify_key_theorem, verify_m9_theorem, verify_sum8,
    verify_sum_bound, verify_support_lemma, FIXED_NOT_PSD, SUM6_PAIRS,
};
use eqlines::psdcert::constants::{b21_coverage, b_matrix, script_m, universe_m222, Variant};
use eqlines::psdcert::{
    delta, search_max_multiplicity, MatrixMultiset, SearchOptions, SearchStatus, TwoRowMatrix,
};

#[test]
fn m9_bound_is_sharp_and_supported_on_script_m() {
    let r = verify_m9_theorem(None);
    assert_eq!(r.search.status, SearchStatus::Exact { max: Some(9) });
    assert!(r.supports_in_script_m);
    assert_eq!(r.search.feasible_by_size[10], 0);
    // the witness really is PSD at size 9
    let w = r.search.witness_at_max.as_ref().unwrap();
    assert_eq!(w.total(), 9);
    let d = delta(&eqlines::psdcert::q22_block(), w).unwrap();
    assert!(psd_check(&d).unwrap().is_psd());
    assert!(r.holds);
}

#[test]
fn three_m_matrices_sum_to_nine() {
    let gens = [([2, -1], [-1, 2]), ([2, -1], [-1, -1]), ([-1, 2], [-1, -1])];
    let m = script_m();
    let a = MatrixMultiset::from_counts(gens.iter().map(|(t, b)| (TwoRowMatrix::new(t, b), 3)));
    assert!(a.support().all(|x| m.contains(x)));
    assert_eq!(a.total(), 9);
    assert!(
        psd_check(&delta(&eqlines::psdcert::q22_block(), &a).unwrap())
            .unwrap()
            .is_psd()
    );
}

#[test]
fn listed_b_blocks_are_not_psd() {
    for (x, i) in FIXED_NOT_PSD {
        let r = verify_fixed_not_psd(x, i);
        assert!(r.listed);
        let w = r.result.witness().expect("negative direction");
        assert!(w.validates(&b_matrix(x, i)));
    }
    // the remaining blocks are PSD, so they need the searches
    for x in Variant::ALL {
        for i in 1..=7 {
            if !FIXED_NOT_PSD.contains(&(x, i)) {
                assert!(verify_fixed_not_psd(x, i).result.is_psd(), "{x:?} {i}");
            }
        }
    }
}

#[test]
fn size_six_bounds() {
    for (x, i) in SUM6_PAIRS {
        let r = verify_sum_bound(x, i, 6, None);
        assert!(r.holds, "{x:?} {i}: {:?}", r.search.status);
        assert_eq!(r.search.feasible_by_size[7], 0);
    }
}

#[test]
fn size_eight_bound_for_b5() {
    for x in Variant::ALL {
        let r = verify_sum8(x, None);
        assert!(r.holds);
        assert_eq!(r.feasible_at_9, 0);
        assert_eq!(r.search.max_feasible, Some(8));
    }
}

#[test]
fn support_restriction_for_b2() {
    for x in Variant::ALL {
        let r = verify_support_lemma(x, None);
        assert!(r.holds);
        assert!(r.search.is_conclusive());
    }
}

#[test]
fn staged_search_agrees_with_full_universe_at_small_sizes() {
    // the restricted universe is a subset, so its counts can never exceed the full ones
    let x = Variant::II;
    let staged = staged_size9(x, 5, None);
    let full = search_max_multiplicity(
        &b_matrix(x, 5),
        &universe_m222(),
        &SearchOptions::with_cap(3),
    );
    for d in 0..=3 {
        assert!(staged.feasible_by_size[d] <= full.feasible_by_size[d]);
    }
}

#[test]
fn every_b21_pattern_is_covered() {
    let cov = b21_coverage();
    assert_eq!(cov.len(), 16);
    assert!(cov.iter().all(|(_, hit)| hit.is_some()));
}

#[test]
fn key_theorem_both_variants() {
    for x in Variant::ALL {
        let r = verify_key_theorem(x, None);
        assert!(r.holds, "{x:?}");
        assert_eq!(r.cases.len(), 7);
        assert_eq!(r.m_x_search.feasible_by_size[9], 0);
        assert!(r.candidates.iter().all(|c| !c.z_block_psd));
        for c in &r.candidates {
            assert_eq!(c.counts.iter().sum::<u32>(), 9);
        }
    }
    // with C_1..C_5 every composition already fails on the {z_2, y_1} minor
    let r = verify_key_theorem(Variant::I, None);
    assert_eq!(r.compositions, 715);
    assert_eq!(r.negative_z2y1_minor, 715);
    assert!(r.candidates.is_empty());
}

#[test]
fn variant_two_candidates_have_negative_determinant_z_blocks() {
    let r = verify_key_theorem(Variant::II, None);
    assert!(!r.candidates.is_empty());
    for c in &r.candidates {
        assert_eq!(c.z_block[0][0], "0");
        let off: Rational = c.z_block[0][1].parse().unwrap();
        assert!(off != rat(0));
    }
}
