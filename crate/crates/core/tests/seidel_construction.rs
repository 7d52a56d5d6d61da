use eqlines::exactlin::{nullity, rat};
use eqlines::seidel::design::{golay_codewords, qr_shifts, GOLAY_GENERATOR};
use eqlines::seidel::{
    line_dimension, mclaughlin_graph, smallest_eig_at_least, steiner_4_7_23, witt_two_graph_276,
    SeidelMatrix,
};

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn generator_spans_the_qr_code() {
    // reduce every cyclic shift against the committed generator
    let reduce = |mut w: u32| {
        for g in GOLAY_GENERATOR {
            let top = 31 - g.leading_zeros();
            if w >> top & 1 == 1 {
                w ^= g;
            }
        }
        w
    };
    assert!(qr_shifts().into_iter().all(|w| reduce(w) == 0));
    let words = golay_codewords();
    assert_eq!(words.len(), 4096);
    words.windows(2).for_each(|w| assert!(w[0] < w[1]));
    assert_eq!(
        words
            .iter()
            .filter(|w| w.count_ones() > 0)
            .map(|w| w.count_ones())
            .min(),
        Some(7)
    );
}

#[test]
fn weight_enumerator() {
    let mut counts = [0usize; 24];
    for w in golay_codewords() {
        counts[w.count_ones() as usize] += 1;
    }
    // perfect code: balls of radius 3 tile F_2^23
    let ball: u64 = (0..=3).map(|r| binom(23, r)).sum();
    assert_eq!(ball * 4096, 1 << 23);
    assert_eq!(counts[7], 253);
    assert_eq!(counts[8], 506);
    assert_eq!(counts[0] + counts[23], 2);
}

#[test]
fn steiner_design_identities() {
    let sys = steiner_4_7_23();
    assert_eq!(sys.blocks().len(), 253);
    assert!(sys.is_steiner_4());
    // λ_t = C(23-t, 4-t) / C(7-t, 4-t)
    let lam = |t: u64| binom(23 - t, 4 - t) / binom(7 - t, 4 - t);
    for x in 0..23u8 {
        assert_eq!(sys.blocks_through(&[x]) as u64, lam(1));
        assert_eq!(lam(1), 77);
    }
    for x in 0..23u8 {
        for y in x + 1..23 {
            assert_eq!(sys.blocks_through(&[x, y]) as u64, lam(2));
        }
    }
    assert_eq!(lam(2), 21);
    for x in 0..23u8 {
        for y in x + 1..23 {
            for z in y + 1..23 {
                assert_eq!(sys.blocks_through(&[x, y, z]), 5);
            }
        }
    }
    assert_eq!(sys.blocks_through(&[]), 253);
}

#[test]
fn mclaughlin_is_strongly_regular() {
    let g = mclaughlin_graph();
    assert_eq!(g.order(), 275);
    for v in 0..275 {
        assert_eq!(g.degree(v), 112, "vertex {v}");
    }
    for a in 0..275 {
        for b in a + 1..275 {
            let common = g.neighbor_set(a).intersection_count(g.neighbor_set(b));
            let want = if g.has_edge(a, b) { 30 } else { 56 };
            assert_eq!(common, want, "pair ({a},{b})");
        }
    }
    for a in 0..22 {
        for b in 0..22 {
            assert!(!g.has_edge(a, b));
        }
    }
}

#[test]
fn witt_two_graph_spectrum() {
    let s = witt_two_graph_276();
    assert_eq!(s.order(), 276);
    assert!(smallest_eig_at_least(&s, &rat(-5)).is_psd());
    assert_eq!(nullity(&s.gram()).nullity, 253);
    assert_eq!(line_dimension(&s).unwrap(), 23);
    let text = s.to_text();
    assert_eq!(SeidelMatrix::parse(&text).unwrap(), s);
}
