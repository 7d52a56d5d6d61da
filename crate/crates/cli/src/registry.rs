//! The built-in claim list. Each entry runs one toolkit operation and turns
//! its report into a status plus a replayable payload.

use eqlines::exactlin::{rat, rational_inverse, PsdResult, RationalMatrix};
use eqlines::lattice::{
    embedding_obstruction, isometry, lattice_from_seidel, strong_maximality_check, GramLattice,
    IsometryOptions, IsometryOutcome, LatticeError, Maximality, Obstruction,
};
use eqlines::pillars::ade::AdeError;
use eqlines::pillars::fiveone::verify_51_pillar_bound;
use eqlines::pillars::{
    admissible_affine, bound_ledger_evaluate, classify_ade, extract_independent_part,
    pillar_decomposition, AdeFamily, BoundCase, LEDGER,
};
use eqlines::psdcert::claims::{verify_sum8, FIXED_NOT_PSD, SUM6_PAIRS};
use eqlines::psdcert::constants::{c_matrices, C_PRODUCTS_9};
use eqlines::psdcert::{
    b_matrix, q22_block, verify_fixed_not_psd, verify_key_theorem, verify_m9_theorem,
    verify_sum_bound, verify_support_lemma, SearchOutcome, SearchStatus, Variant,
};
use eqlines::seidel::{
    golay_codewords, line_dimension, max_clique, mclaughlin_graph, steiner_4_7_23,
    witt_two_graph_276, Graph, SeidelMatrix,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::Status;

/// What a claim hands back before timing and versioning are attached.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub summary: String,
    pub payload: Value,
}

impl Outcome {
    fn decided(holds: bool, summary: impl Into<String>, payload: Value) -> Self {
        let status = if holds {
            Status::Verified
        } else {
            Status::Refuted
        };
        Outcome {
            status,
            summary: summary.into(),
            payload,
        }
    }

    pub fn inconclusive(reason: impl Into<String>, payload: Value) -> Self {
        Outcome {
            status: Status::Inconclusive,
            summary: reason.into(),
            payload,
        }
    }

    /// Budget aborts are reported without node counts, which depend on scheduling.
    fn budget(budget: Option<u64>) -> Self {
        Outcome::inconclusive(
            "node budget exhausted",
            json!({ "reason": "node budget exhausted", "node_budget": budget }),
        )
    }
}

/// Inputs a claim may read.
pub struct Ctx<'a> {
    pub node_budget: Option<u64>,
    /// `data[i - 1]` is `S_i`; the runner only calls a claim when its files are present.
    pub data: &'a [Option<SeidelMatrix>; 4],
}

impl Ctx<'_> {
    fn seidel(&self, i: usize) -> &SeidelMatrix {
        self.data[i - 1]
            .as_ref()
            .expect("runner checks required data")
    }
}

pub struct Claim {
    pub id: String,
    /// Indices `i` of the `S_i` files the claim reads.
    pub data: Vec<usize>,
    pub run: Box<dyn Fn(&Ctx) -> Outcome + Send + Sync>,
}

fn claim(
    id: &str,
    data: Vec<usize>,
    run: impl Fn(&Ctx) -> Outcome + Send + Sync + 'static,
) -> Claim {
    Claim {
        id: id.to_string(),
        data,
        run: Box::new(run),
    }
}

pub fn registry() -> Vec<Claim> {
    let mut v = vec![
        claim("thm-m9", vec![], thm_m9),
        claim("lem-fixed-notpsd", vec![], |_| lem_fixed_notpsd()),
        claim("lem-sum6", vec![], lem_sum6),
        claim("lem-sum8", vec![], lem_sum8),
        claim("lem-support", vec![], lem_support),
        claim("thm-key", vec![], thm_key),
        claim("ade-suite", vec![], |_| ade_suite(30)),
        claim("lem-51-sum", vec![], |_| lem_51_sum()),
        claim("ledger-all", vec![], |_| ledger_all()),
        claim("construction-chain", vec![], |_| construction_chain()),
        claim("lattice-min-norm-W", vec![], lattice_min_norm_w),
        claim("lattice-min-norm-G", vec![1], lattice_min_norm_g),
    ];
    for i in 1..=4 {
        for j in i + 1..=4 {
            v.push(claim(
                &format!("prop-isometry-L{i}-L{j}"),
                vec![i, j],
                move |c| prop_isometry(c, i, j),
            ));
        }
    }
    v.push(claim("prop-base6", vec![1], prop_base6));
    for i in 1..=4 {
        v.push(claim(
            &format!("prop-strong-maximality-S{i}"),
            vec![i],
            move |c| prop_strong_maximality(c, i),
        ));
    }
    v
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn show(m: Option<usize>) -> String {
    m.map_or("none".into(), |m| m.to_string())
}

fn exhausted(s: &SearchOutcome) -> bool {
    matches!(s.status, SearchStatus::BudgetExhausted { .. })
}

fn thm_m9(c: &Ctx) -> Outcome {
    let r = verify_m9_theorem(c.node_budget);
    if exhausted(&r.search) {
        return Outcome::budget(c.node_budget);
    }
    let summary = format!(
        "max m = {}, size-9 supports inside the three-matrix set: {}",
        show(r.search.max_feasible),
        r.supports_in_script_m
    );
    Outcome::decided(r.holds, summary, to_value(&r))
}

fn lem_fixed_notpsd() -> Outcome {
    let reports: Vec<_> = FIXED_NOT_PSD
        .iter()
        .map(|&(x, i)| verify_fixed_not_psd(x, i))
        .collect();
    let ok = reports.iter().all(|r| match &r.result {
        PsdResult::NotPsd(w) => w.validates(&b_matrix(r.variant, r.i)),
        PsdResult::Psd(_) => false,
    });
    Outcome::decided(
        ok,
        "B(I,6), B(I,7), B(II,7) not PSD, witnesses validated",
        to_value(&reports),
    )
}

fn lem_sum6(c: &Ctx) -> Outcome {
    let reports: Vec<_> = SUM6_PAIRS
        .iter()
        .map(|&(x, i)| verify_sum_bound(x, i, 6, c.node_budget))
        .collect();
    if reports.iter().any(|r| exhausted(&r.search)) {
        return Outcome::budget(c.node_budget);
    }
    let ok = reports.iter().all(|r| r.holds);
    let maxima: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{}{}:{}",
                r.variant.label(),
                r.i,
                show(r.search.max_feasible)
            )
        })
        .collect();
    Outcome::decided(
        ok,
        format!("maxima {}", maxima.join(" ")),
        to_value(&reports),
    )
}

fn lem_sum8(c: &Ctx) -> Outcome {
    let reports: Vec<_> = Variant::ALL
        .iter()
        .map(|&x| verify_sum8(x, c.node_budget))
        .collect();
    if reports.iter().any(|r| exhausted(&r.search)) {
        return Outcome::budget(c.node_budget);
    }
    let ok = reports.iter().all(|r| r.holds);
    let maxima: Vec<String> = reports
        .iter()
        .map(|r| format!("{}5:{}", r.variant.label(), show(r.search.max_feasible)))
        .collect();
    Outcome::decided(
        ok,
        format!("no size-9 multiset for i = 5 ({})", maxima.join(" ")),
        to_value(&reports),
    )
}

/// `9 C^T (9I - 3J)^{-1} C` against the displayed integer matrices.
fn c_product_mismatches() -> Vec<usize> {
    let inv = rational_inverse(&q22_block()).expect("9I - 3J is invertible");
    c_matrices()
        .iter()
        .zip(C_PRODUCTS_9.iter())
        .enumerate()
        .filter(|(_, (c, shown))| {
            let a = c.to_rational();
            let got = a.transpose().mul(&inv).mul(&a).scale(&rat(9));
            got != RationalMatrix::from_fn(4, 4, |i, j| rat(shown[i][j]))
        })
        .map(|(k, _)| k + 1)
        .collect()
}

fn lem_support(c: &Ctx) -> Outcome {
    let reports: Vec<_> = Variant::ALL
        .iter()
        .map(|&x| verify_support_lemma(x, c.node_budget))
        .collect();
    if reports.iter().any(|r| exhausted(&r.search)) {
        return Outcome::budget(c.node_budget);
    }
    let mismatches = c_product_mismatches();
    let ok = reports.iter().all(|r| r.holds) && mismatches.is_empty();
    let vacuous = reports.iter().all(|r| r.vacuous);
    let summary = format!(
        "size-9 supports inside M_X{}; C-product displays match: {}",
        if vacuous {
            " (no size-9 multiset is feasible)"
        } else {
            ""
        },
        mismatches.is_empty()
    );
    Outcome::decided(
        ok,
        summary,
        json!({ "variants": reports, "c_product_mismatches": mismatches }),
    )
}

fn thm_key(c: &Ctx) -> Outcome {
    let reports: Vec<_> = Variant::ALL
        .iter()
        .map(|&x| verify_key_theorem(x, c.node_budget))
        .collect();
    if reports.iter().any(|r| !r.conclusive) {
        return Outcome::budget(c.node_budget);
    }
    let ok = reports.iter().all(|r| r.holds);
    Outcome::decided(
        ok,
        "no size-9 configuration at i = 2 for either variant",
        to_value(&reports),
    )
}

fn path_edges(k: usize) -> Vec<(usize, usize)> {
    (1..k).map(|i| (i - 1, i)).collect()
}

/// Connected graphs with largest eigenvalue at most 2, with their expected
/// names, for every index up to `max_t`.
pub fn smith_family(max_t: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let with = |k: usize, extra: &[(usize, usize)]| {
        let mut e = path_edges(k);
        e.extend(extra.iter().map(|&(a, b)| (a - 1, b - 1)));
        e
    };
    for t in 1..=max_t {
        out.push((format!("A{t}"), Graph::from_edges(t, &path_edges(t))));
    }
    for t in 2..=max_t {
        out.push((
            format!("~A{t}"),
            Graph::from_edges(t + 1, &with(t + 1, &[(t + 1, 1)])),
        ));
    }
    for t in 4..=max_t {
        out.push((
            format!("D{t}"),
            Graph::from_edges(t, &with(t - 1, &[(2, t)])),
        ));
        out.push((
            format!("~D{t}"),
            Graph::from_edges(t + 1, &with(t - 1, &[(2, t), (t - 2, t + 1)])),
        ));
    }
    out.push(("E6".into(), Graph::from_edges(6, &with(5, &[(3, 6)]))));
    out.push(("E7".into(), Graph::from_edges(7, &with(6, &[(4, 7)]))));
    out.push(("E8".into(), Graph::from_edges(8, &with(7, &[(3, 8)]))));
    out.push((
        "~E6".into(),
        Graph::from_edges(7, &with(5, &[(3, 6), (6, 7)])),
    ));
    out.push(("~E7".into(), Graph::from_edges(8, &with(7, &[(4, 8)]))));
    out.push(("~E8".into(), Graph::from_edges(9, &with(8, &[(3, 9)]))));
    out
}

#[derive(Serialize)]
struct AdeFailure {
    graph: String,
    problem: String,
}

pub fn ade_suite(max_t: usize) -> Outcome {
    let family = smith_family(max_t);
    let mut failures = Vec::new();
    let (mut extracted, mut excluded) = (0usize, 0usize);
    for (name, g) in &family {
        let mut fail = |problem: String| {
            failures.push(AdeFailure {
                graph: name.clone(),
                problem,
            })
        };
        let c = match classify_ade(g) {
            Ok(c) => c,
            Err(e) => {
                fail(e.to_string());
                continue;
            }
        };
        if c.to_string() != *name {
            fail(format!("classified as {c}"));
        }
        let mut lab = c.labeling.clone();
        lab.sort_unstable();
        if lab != (0..g.order()).collect::<Vec<_>>() {
            fail("labeling is not a bijection".into());
        }
        // ~A_t needs t + 1 ≡ 0 and ~D_t needs t + 1 ≡ 2 (mod 3)
        let expected_admissible = match (c.family, c.t) {
            (AdeFamily::AffineA, Some(t)) => Some((t + 1) % 3 == 0),
            (AdeFamily::AffineD, Some(t)) => Some((t + 1) % 3 == 2),
            _ => None,
        };
        if let Some(want) = expected_admissible {
            if admissible_affine(&c) != Ok(want) {
                fail(format!("admissibility should be {want}"));
            }
        }
        match extract_independent_part(g) {
            Ok(e) => {
                extracted += 1;
                if expected_admissible == Some(false) {
                    fail("excluded graph was extracted".into());
                }
                let comps = g.induced(&e.vertices).components();
                let singles = comps.iter().filter(|k| k.len() == 1).count();
                let pairs = comps.iter().filter(|k| k.len() == 2).count();
                if singles + pairs != comps.len() || singles != e.n || pairs != e.m {
                    fail(format!("induced part is not {}K1 + {}K2", e.n, e.m));
                }
                if !e.bound_holds(g.order()) {
                    fail(format!(
                        "|V| = {} exceeds 4·{}/3 + 3·{}",
                        g.order(),
                        e.n,
                        e.m
                    ));
                }
            }
            Err(AdeError::Excluded(_)) if expected_admissible == Some(false) => excluded += 1,
            Err(err) => fail(err.to_string()),
        }
    }
    let summary = format!(
        "{} graphs: {extracted} extracted, {excluded} excluded by congruence, {} failures",
        family.len(),
        failures.len()
    );
    let payload = json!({ "max_t": max_t, "graphs": family.len(), "extracted": extracted, "excluded": excluded, "failures": failures });
    Outcome::decided(failures.is_empty(), summary, payload)
}

fn lem_51_sum() -> Outcome {
    let r = verify_51_pillar_bound();
    let summary = format!(
        "{} graphs, all not PSD: {}, every size-6 tuple dominates a bad tuple: {}",
        r.total_graphs(),
        r.all_not_psd(),
        r.covered()
    );
    Outcome::decided(r.holds() && r.total_graphs() == 777, summary, to_value(&r))
}

fn ledger_all() -> Outcome {
    let quoted = [
        (BoundCase::NoEdges, 262),
        (BoundCase::OneHasEdges, 226),
        (BoundCase::SomeEdgeless, 271),
        (BoundCase::AllEdgesLargeFiveOne, 276),
    ];
    let mut ok = true;
    let mut cases = Vec::new();
    for (case, want) in quoted {
        let got = bound_ledger_evaluate(&case).ok();
        ok &= got == Some(want);
        cases.push(json!({ "case": case.name(), "value": got, "quoted": want }));
    }
    let singletons: Vec<u64> = (1..=5)
        .filter_map(|k| bound_ledger_evaluate(&BoundCase::AllEdgesSingletons { k }).ok())
        .collect();
    let closed: Vec<u64> = (1..=5u64).map(|k| 275 + k - k * (k - 1) / 2).collect();
    ok &= singletons == closed && singletons.iter().all(|&b| b <= 276);
    let lin_yu: Vec<(u64, Option<u64>)> = (18..=23)
        .map(|d| {
            (
                d,
                bound_ledger_evaluate(&BoundCase::AtMostOneFiveTwo { dimension: d }).ok(),
            )
        })
        .collect();
    ok &= lin_yu.iter().all(|&(d, b)| b == Some((4 * d + 36) / 3));
    ok &= LEDGER.derived_restricted_order_cap() == LEDGER.restricted_order_cap.value;
    let summary = format!(
        "262, 226, 271, 276; singleton cases {singletons:?}, max {}",
        singletons.iter().max().unwrap_or(&0)
    );
    Outcome::decided(
        ok,
        summary,
        json!({ "cases": cases, "singletons": singletons, "at_most_one_52": lin_yu, "restricted_order_cap": LEDGER.derived_restricted_order_cap(), "ledger": LEDGER }),
    )
}

fn construction_chain() -> Outcome {
    let weight7 = golay_codewords()
        .iter()
        .filter(|w| w.count_ones() == 7)
        .count();
    let sys = steiner_4_7_23();
    let steiner = sys.blocks().len() == 253
        && sys.is_steiner_4()
        && (0..23u8).all(|x| sys.blocks_through(&[x]) == 77);
    let g = mclaughlin_graph();
    let n = g.order();
    let regular = (0..n).all(|v| g.degree(v) == 112);
    let srg = regular
        && (0..n).all(|a| {
            (a + 1..n).all(|b| {
                g.neighbor_set(a).intersection_count(g.neighbor_set(b))
                    == if g.has_edge(a, b) { 30 } else { 56 }
            })
        });
    let w = witt_two_graph_276();
    // line_dimension refuses matrices with λ_min < -5
    let rank = line_dimension(&w).ok();
    let ok = weight7 == 253 && steiner && n == 275 && srg && w.order() == 276 && rank == Some(23);
    let summary = format!("Golay weight-7 {weight7}; S(4,7,23) {steiner}; McLaughlin SRG(275,112,30,56) {srg}; 276 lines of rank {}", show(rank));
    Outcome::decided(
        ok,
        summary,
        json!({ "golay_weight_7": weight7, "steiner_4_7_23": steiner, "mclaughlin_order": n, "mclaughlin_srg": srg, "witt_order": w.order(), "witt_rank": rank, "lambda_min_at_least_minus_5": rank.is_some() }),
    )
}

fn lattice_or_budget<T>(r: Result<T, LatticeError>, budget: Option<u64>) -> Result<T, Outcome> {
    match r {
        Ok(x) => Ok(x),
        Err(LatticeError::Budget { .. }) => Err(Outcome::budget(budget)),
        Err(e) => Err(Outcome::decided(
            false,
            e.to_string(),
            json!({ "error": e.to_string() }),
        )),
    }
}

fn lattice_min_norm_w(c: &Ctx) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let l = lattice_or_budget(lattice_from_seidel(&witt_two_graph_276()), c.node_budget)?;
        let m = lattice_or_budget(l.min_norm(c.node_budget), c.node_budget)?;
        let summary = format!(
            "rank {}, minimum norm {} ({} pairs), enumeration completed at {}",
            l.rank(),
            m.norm,
            m.pairs,
            m.bound_completed
        );
        Ok(Outcome::decided(
            m.norm == 5 && l.rank() == 23,
            summary,
            json!({ "rank": l.rank(), "determinant": l.determinant().to_string(), "min_norm": m }),
        ))
    };
    run().unwrap_or_else(|o| o)
}

/// `f_44 - f_48 - f_49 + f_51 - f_52 + f_53`, 1-based.
pub const SHORT_COMBINATION: [(usize, i64); 6] =
    [(44, 1), (48, -1), (49, -1), (51, 1), (52, -1), (53, 1)];

fn lattice_min_norm_g(c: &Ctx) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let lg = lattice_or_budget(lattice_from_seidel(c.seidel(1)), c.node_budget)?;
        let coeffs: Vec<(usize, i64)> =
            SHORT_COMBINATION.iter().map(|&(g, a)| (g - 1, a)).collect();
        let explicit = lg.generator_combination_norm(&coeffs);
        let lw = lattice_or_budget(lattice_from_seidel(&witt_two_graph_276()), c.node_budget)?;
        let obs = lattice_or_budget(
            embedding_obstruction(&lg, &lw, c.node_budget),
            c.node_budget,
        )?;
        let (min_g, min_w) = match obs {
            Obstruction::Obstructed { sub_min, super_min }
            | Obstruction::NoObstructionFound { sub_min, super_min } => (sub_min, super_min),
        };
        let holds = explicit == 4 && min_g <= 4 && matches!(obs, Obstruction::Obstructed { .. });
        let summary = format!("explicit combination has norm {explicit}; min_norm(L_G) = {min_g} < min_norm(L_W) = {min_w}");
        Ok(Outcome::decided(
            holds,
            summary,
            json!({ "combination": SHORT_COMBINATION, "combination_norm": explicit, "rank": lg.rank(), "min_norm_g": min_g, "min_norm_w": min_w, "obstruction": obs }),
        ))
    };
    run().unwrap_or_else(|o| o)
}

fn prop_isometry(c: &Ctx, i: usize, j: usize) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let li = lattice_or_budget(lattice_from_seidel(c.seidel(i)), c.node_budget)?;
        let lj = lattice_or_budget(lattice_from_seidel(c.seidel(j)), c.node_budget)?;
        let opts = IsometryOptions {
            enumeration_budget: c.node_budget,
            search_budget: c.node_budget,
            ..Default::default()
        };
        let out = lattice_or_budget(isometry(&li, &lj, &opts), c.node_budget)?;
        Ok(match &out {
            IsometryOutcome::Certificate(cert) => {
                let ok = cert.verify(li.basis_gram(), lj.basis_gram());
                Outcome::decided(
                    ok,
                    format!(
                        "certificate T with T^T G_{i} T = G_{j} (rank {})",
                        li.rank()
                    ),
                    json!({ "gram_left": li.basis_gram(), "gram_right": lj.basis_gram(), "outcome": out }),
                )
            }
            IsometryOutcome::NotIsometric(m) => Outcome::decided(
                false,
                format!("not isometric: {m:?}"),
                json!({ "outcome": out }),
            ),
            IsometryOutcome::Inconclusive { .. } => Outcome::budget(c.node_budget),
        })
    };
    run().unwrap_or_else(|o| o)
}

/// The base `{9, 13, 16, 17, 18, 28}` and edges `{1, 54}`, `{5, 8}` of the graph of `S_1`, 1-based.
pub const BASE6: [usize; 6] = [9, 13, 16, 17, 18, 28];
pub const PILLAR_EDGES: [(usize, usize); 2] = [(1, 54), (5, 8)];

fn prop_base6(c: &Ctx) -> Outcome {
    let g = c.seidel(1).to_graph();
    let clique = max_clique(&g);
    let base: Vec<usize> = BASE6.iter().map(|v| v - 1).collect();
    let is_clique = g.is_clique(&base);
    let edges: Vec<(usize, usize)> = PILLAR_EDGES.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    let are_edges = edges.iter().all(|&(a, b)| g.has_edge(a, b));
    let cells: Vec<[Option<u32>; 2]> = match pillar_decomposition(&g, &base) {
        Ok(d) => edges
            .iter()
            .map(|&(a, b)| [d.cell_of(a), d.cell_of(b)])
            .collect(),
        Err(_) => vec![],
    };
    let same_pillar = cells.len() == 2 && cells.iter().all(|[a, b]| a.is_some() && a == b);
    let distinct = same_pillar && cells[0][0] != cells[1][0];
    let holds = clique.size() == 6 && is_clique && are_edges && distinct;
    let summary = format!("clique number {}; base is a clique: {is_clique}; edges lie in distinct pillars: {distinct}", clique.size());
    let masks: Vec<Option<u32>> = cells.iter().map(|c| c[0]).collect();
    Outcome::decided(
        holds,
        summary,
        json!({ "clique_number": clique.size(), "least_maximum_clique": clique.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(), "base": BASE6, "base_is_clique": is_clique, "edges": PILLAR_EDGES, "edges_present": are_edges, "pillar_masks": masks }),
    )
}

fn prop_strong_maximality(c: &Ctx, i: usize) -> Outcome {
    let l: GramLattice = match lattice_or_budget(lattice_from_seidel(c.seidel(i)), c.node_budget) {
        Ok(l) => l,
        Err(o) => return o,
    };
    let r = strong_maximality_check(&l, &rat(5), c.node_budget);
    match &r.verdict {
        Maximality::Inconclusive { .. } => Outcome::budget(c.node_budget),
        Maximality::StronglyMaximal => Outcome::decided(
            true,
            format!(
                "StronglyMaximal: {} dual vectors of norm ≤ 5 checked ({} rejected by parity)",
                r.dual_vectors, r.parity_rejected
            ),
            to_value(&r),
        ),
        Maximality::Witness(w) => Outcome::decided(
            false,
            format!("extension vector of norm {}", w.norm),
            to_value(&r),
        ),
    }
}
