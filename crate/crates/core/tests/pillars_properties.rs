use eqlines::exactlin::{is_psd_integer, rational_inverse};
use eqlines::pillars::ade::{white_labels, AdeError};
use eqlines::pillars::{
    bar_gram_unchecked, bound_ledger_evaluate, check_tables, classify_ade,
    extract_independent_part, pillar_decomposition, AdeFamily, BoundCase, PillarDecomposition,
    PillarError,
};
use eqlines::seidel::{Graph, SeidelMatrix};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Graph built from Figure-style labels `1..=k` and 1-based edges.
fn labeled(k: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(
        k,
        &edges
            .iter()
            .map(|&(a, b)| (a - 1, b - 1))
            .collect::<Vec<_>>(),
    )
}

fn path_edges(k: usize) -> Vec<(usize, usize)> {
    (1..k).map(|i| (i, i + 1)).collect()
}

/// Every Smith graph up to the given index, with its expected tag.
fn family_members(max_t: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for t in 1..=max_t {
        out.push((format!("A{t}"), labeled(t, &path_edges(t))));
    }
    for t in 2..=max_t {
        let mut e = path_edges(t + 1);
        e.push((t + 1, 1));
        out.push((format!("~A{t}"), labeled(t + 1, &e)));
    }
    for t in 4..=max_t {
        let mut e = path_edges(t - 1);
        e.push((2, t));
        out.push((format!("D{t}"), labeled(t, &e)));
    }
    for t in 4..=max_t {
        let mut e = path_edges(t - 1);
        e.push((2, t));
        e.push((t - 2, t + 1));
        out.push((format!("~D{t}"), labeled(t + 1, &e)));
    }
    let e = |k: usize, extra: &[(usize, usize)]| {
        let mut v = path_edges(k);
        v.extend_from_slice(extra);
        v
    };
    out.push(("E6".into(), labeled(6, &e(5, &[(3, 6)]))));
    out.push(("E7".into(), labeled(7, &e(6, &[(4, 7)]))));
    out.push(("E8".into(), labeled(8, &e(7, &[(3, 8)]))));
    out.push(("~E6".into(), labeled(7, &e(5, &[(3, 6), (6, 7)]))));
    out.push(("~E7".into(), labeled(8, &e(7, &[(4, 8)]))));
    out.push(("~E8".into(), labeled(9, &e(8, &[(3, 9)]))));
    out
}

fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

#[test]
fn families_classify_and_extract() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, g) in family_members(30) {
        for copy in 0..3 {
            let h = if copy == 0 {
                g.clone()
            } else {
                shuffled(&g, &mut rng)
            };
            let c = classify_ade(&h).unwrap();
            assert_eq!(c.to_string(), name);
            let mut lab = c.labeling.clone();
            lab.sort_unstable();
            assert_eq!(
                lab,
                (0..h.order()).collect::<Vec<_>>(),
                "{name} labeling is a bijection"
            );
            match extract_independent_part(&h) {
                Ok(e) => {
                    let sub = h.induced(&e.vertices);
                    assert!(sub.components().iter().all(|c| c.len() <= 2), "{name}");
                    assert_eq!(
                        sub.components().iter().filter(|c| c.len() == 1).count(),
                        e.n
                    );
                    assert_eq!(
                        sub.components().iter().filter(|c| c.len() == 2).count(),
                        e.m
                    );
                    assert!(
                        e.bound_holds(h.order()),
                        "{name}: {} > 4·{}/3 + 3·{}",
                        h.order(),
                        e.n,
                        e.m
                    );
                }
                Err(AdeError::Excluded(_)) => {
                    assert!(
                        matches!(c.family, AdeFamily::AffineA | AdeFamily::AffineD),
                        "{name}"
                    );
                }
                Err(err) => panic!("{name}: {err}"),
            }
        }
    }
}

#[test]
fn d_series_follows_three_case_rule() {
    for t in 4..=30usize {
        let mut e = path_edges(t - 1);
        e.push((2, t));
        let g = labeled(t, &e);
        let c = classify_ade(&g).unwrap();
        if t > 4 {
            // D4 has the three leaves interchangeable
            assert_eq!(
                c.labeling,
                (0..t).collect::<Vec<_>>(),
                "D{t} labeled as drawn"
            );
        }
        let x = extract_independent_part(&g).unwrap();
        let m = t / 3;
        let expect = match t % 3 {
            0 => (0, m),
            1 => (3, m - 1),
            _ => (2, m),
        };
        assert_eq!((x.n, x.m), expect, "D{t}");
        assert_eq!(
            x.removed,
            white_labels(&c).iter().map(|k| k - 1).collect::<Vec<_>>()
        );
    }
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.1..0.6);
    let mut g = Graph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v);
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p * 0.4) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

#[test]
fn classification_agrees_with_psd() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=9);
        let g = random_connected(&mut rng, n);
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            m[i * n + i] = 2;
            for j in g.neighbors(i) {
                m[i * n + j] = -1;
            }
        }
        let tag = classify_ade(&g).unwrap();
        assert_eq!(
            tag.family == AdeFamily::NotLaplace2,
            !is_psd_integer(n, &m),
            "{:?}",
            g.edges()
        );
    }
}

/// K_5 on `0..5` plus vertices with random base neighborhoods of size 1 or 2.
fn planted(rng: &mut ChaCha8Rng, extra: usize, any_mask: bool) -> Graph {
    let mut g = Graph::complete(5);
    for _ in 0..extra {
        let v = g.add_vertex();
        let mask: u32 = if any_mask {
            rng.gen_range(0..31)
        } else {
            let a = rng.gen_range(0..5);
            let b = rng.gen_range(0..5);
            (1 << a) | (1 << b)
        };
        for b in 0..5 {
            if mask >> b & 1 == 1 {
                g.add_edge(v, b);
            }
        }
    }
    for a in 5..g.order() {
        for b in a + 1..g.order() {
            if rng.gen_bool(0.4) {
                g.add_edge(a, b);
            }
        }
    }
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm[5..].shuffle(rng);
    g.relabel(&perm)
}

#[test]
fn decomposition_partitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let extra = rng.gen_range(0..12);
        let g = planted(&mut rng, extra, true);
        let base = [0, 1, 2, 3, 4];
        let d = pillar_decomposition(&g, &base).unwrap();
        let mut all: Vec<usize> = d.nonempty_cells().flat_map(|(_, v)| v.to_vec()).collect();
        all.sort_unstable();
        assert_eq!(all, (5..g.order()).collect::<Vec<_>>());
        for (mask, cell) in d.nonempty_cells() {
            for &x in cell {
                let nb: Vec<usize> = base.iter().copied().filter(|&b| g.has_edge(x, b)).collect();
                assert_eq!(PillarDecomposition::mask(&nb), mask);
            }
        }
    }
}

#[test]
fn bar_gram_matches_schur_complement_and_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let base = [0, 1, 2, 3, 4];
    for _ in 0..200 {
        let extra = rng.gen_range(1..10);
        let g = planted(&mut rng, extra, false);
        let bg = bar_gram_unchecked(&g, &base).unwrap();
        let hat = SeidelMatrix::from_graph(&g).gram();
        let rest: Vec<usize> = (5..g.order()).collect();
        let p = hat.submatrix(&base, &rest);
        let direct = hat.principal_submatrix(&rest).sub(
            &p.transpose()
                .mul(&rational_inverse(&hat.principal_submatrix(&base)).unwrap())
                .mul(&p),
        );
        assert_eq!(bg.gram, direct);
        let d = pillar_decomposition(&g, &base).unwrap();
        match check_tables(&g, &d, &bg) {
            Ok(()) => {}
            Err(PillarError::AdjacentInFiveOne { x, y }) => {
                assert_eq!(d.cell_of(x), d.cell_of(y));
                assert_eq!(d.cell_of(x).unwrap().count_ones(), 1);
            }
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn singleton_case_never_exceeds_276() {
    for k in 2..=5 {
        let b = bound_ledger_evaluate(&BoundCase::AllEdgesSingletons { k }).unwrap();
        assert_eq!(b, 275 + k - k * (k - 1) / 2);
        assert!(b <= 276);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extension_keeps_eigenvalue_bound(seed in any::<u64>()) {
        // subgraphs of (5,2) pillars beside a K_5 which happen to satisfy the bound
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let extra = rng.gen_range(0..5);
        let mut g = Graph::complete(5);
        for _ in 0..extra {
            let v = g.add_vertex();
            let a = rng.gen_range(0..5);
            let b = (a + rng.gen_range(1..5)) % 5;
            g.add_edge(v, a);
            g.add_edge(v, b);
        }
        for a in 5..g.order() {
            for b in a + 1..g.order() {
                if rng.gen_bool(0.3) {
                    g.add_edge(a, b);
                }
            }
        }
        match eqlines::pillars::extend_base_5_to_6(&g, &[0, 1, 2, 3, 4]) {
            Ok(e) => {
                prop_assert!(e.psd.is_psd());
                prop_assert!(e.nullity > 0);
                prop_assert!(e.graph.is_clique(&[0, 1, 2, 3, 4, e.b6]));
                for x in 5..g.order() {
                    prop_assert!(e.graph.has_edge(x, e.b6));
                }
            }
            Err(PillarError::NotPsd(_)) => {}
            Err(err) => prop_assert!(false, "{}", err),
        }
    }
}
