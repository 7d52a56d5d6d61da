//! The concrete multiset claims: the bound `m ≤ 9`, the fixed non-PSD blocks,
//! the size bounds 6 and 8, the support restriction, and `m ≤ 8`.

use serde::Serialize;

use super::constants::{self, b_entries, b_matrix, m_prime, m_x, script_m, Variant};
use super::search::{search_max_multiplicity, SearchOptions, SearchOutcome, SearchStatus};
use super::{delta, q22_block, MatrixMultiset, TwoRowMatrix};
use crate::exactlin::{psd_check, rat, PsdResult, RationalMatrix};

#[derive(Clone, Debug, Serialize)]
pub struct M9Report {
    pub search: SearchOutcome,
    /// Every matrix used at size 9 lies in `𝓜`.
    pub supports_in_script_m: bool,
    pub holds: bool,
}

/// `Q(9I_2 - 3J_2; a)` PSD over `M_2({-1,2})` forces `m ≤ 9`, with equality
/// only on `𝓜`.
pub fn verify_m9_theorem(node_budget: Option<u64>) -> M9Report {
    let opts = SearchOptions {
        node_budget,
        ..SearchOptions::with_cap(10)
    };
    let search = search_max_multiplicity(&q22_block(), &constants::universe_m2(), &opts);
    let m = script_m();
    let supports_in_script_m = search.supports_at_max.iter().all(|a| m.contains(a));
    let holds = search.status == SearchStatus::Exact { max: Some(9) } && supports_in_script_m;
    M9Report {
        search,
        supports_in_script_m,
        holds,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedReport {
    pub variant: Variant,
    pub i: usize,
    pub result: PsdResult,
    /// Whether `(X, i)` is one of `(I,6)`, `(I,7)`, `(II,7)`.
    pub listed: bool,
}

pub const FIXED_NOT_PSD: [(Variant, usize); 3] =
    [(Variant::I, 6), (Variant::I, 7), (Variant::II, 7)];

/// Verdict for `Q(B(X, i); 0) = B(X, i)`.
pub fn verify_fixed_not_psd(x: Variant, i: usize) -> FixedReport {
    let result = psd_check(&b_matrix(x, i)).expect("B(X,i) is symmetric");
    FixedReport {
        variant: x,
        i,
        result,
        listed: FIXED_NOT_PSD.contains(&(x, i)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SumBoundReport {
    pub variant: Variant,
    pub i: usize,
    pub claimed_max: usize,
    pub search: SearchOutcome,
    pub holds: bool,
}

/// Pairs whose multiset size is bounded by 6.
pub const SUM6_PAIRS: [(Variant, usize); 7] = [
    (Variant::I, 1),
    (Variant::I, 3),
    (Variant::I, 4),
    (Variant::II, 1),
    (Variant::II, 3),
    (Variant::II, 4),
    (Variant::II, 6),
];

/// Size bound for `Q(B(X, i); a)` over `M_{2,2,2}({-3,0},{-1,2})`, searched to
/// `claimed_max + 1`.
pub fn verify_sum_bound(
    x: Variant,
    i: usize,
    claimed_max: usize,
    node_budget: Option<u64>,
) -> SumBoundReport {
    let opts = SearchOptions {
        node_budget,
        ..SearchOptions::with_cap(claimed_max + 1)
    };
    let search = search_max_multiplicity(&b_matrix(x, i), &constants::universe_m222(), &opts);
    let holds = matches!(search.status, SearchStatus::Exact { max } if max.is_none_or(|m| m <= claimed_max));
    SumBoundReport {
        variant: x,
        i,
        claimed_max,
        search,
        holds,
    }
}

/// Size-9 search for `Q(B(X, i); a)` over the matrices whose right half lies in
/// `𝓜`; by the `m ≤ 9` theorem applied to the `y`-rows, no other matrix can
/// occur at size 9.
pub fn staged_size9(x: Variant, i: usize, node_budget: Option<u64>) -> SearchOutcome {
    let opts = SearchOptions {
        node_budget,
        ..SearchOptions::with_cap(9)
    };
    search_max_multiplicity(
        &b_matrix(x, i),
        &constants::universe_m222_restricted(),
        &opts,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct StagedBoundReport {
    pub variant: Variant,
    pub i: usize,
    pub search: SearchOutcome,
    pub feasible_at_9: u64,
    pub holds: bool,
}

/// `Q(B(X,5); a)` PSD implies `m ≤ 8`.
pub fn verify_sum8(x: Variant, node_budget: Option<u64>) -> StagedBoundReport {
    let search = staged_size9(x, 5, node_budget);
    let feasible_at_9 = search.feasible_by_size[9];
    let holds = search.is_conclusive() && feasible_at_9 == 0;
    StagedBoundReport {
        variant: x,
        i: 5,
        search,
        feasible_at_9,
        holds,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub variant: Variant,
    pub search: SearchOutcome,
    pub feasible_at_9: u64,
    /// Feasible size-9 multisets exist and all of them avoid matrices outside `𝓜_X`.
    pub supports_in_m_x: bool,
    /// No size-9 multiset is feasible, so the support restriction holds vacuously.
    pub vacuous: bool,
    pub holds: bool,
}

/// Size-9 feasible multisets for `Q(B(X,2); a)` are supported on `𝓜_X`.
pub fn verify_support_lemma(x: Variant, node_budget: Option<u64>) -> SupportReport {
    let search = staged_size9(x, 2, node_budget);
    let feasible_at_9 = search.feasible_by_size[9];
    let allowed = m_x(x);
    let inside = search.supports_at_max.iter().all(|a| allowed.contains(a));
    let vacuous = feasible_at_9 == 0;
    let supports_in_m_x = !vacuous && search.max_feasible == Some(9) && inside;
    let holds = search.is_conclusive() && (vacuous || supports_in_m_x);
    SupportReport {
        variant: x,
        search,
        feasible_at_9,
        supports_in_m_x,
        vacuous,
        holds,
    }
}

/// `(a(C_1), …, a(C_8))` with `Δ` restricted to `{z_1,z_2} × {y_1,y_2}` zero.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateTuple {
    pub counts: [u32; 8],
    /// `Δ` on rows/columns `{z_1, z_2}`, as strings.
    pub z_block: [[String; 2]; 2],
    pub z_block_psd: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KeyCase {
    pub i: usize,
    pub method: String,
    /// Every search behind the case finished within the node budget.
    pub conclusive: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KeyTheoremReport {
    pub variant: Variant,
    pub cases: Vec<KeyCase>,
    /// Every `B_21 ∈ M_2({-2,1})` is carried onto one of the seven by swapping `y`'s or `z`'s.
    pub b21_covered: bool,
    /// Size-9 search over `𝓜_X` for `i = 2`.
    pub m_x_search: SearchOutcome,
    /// Compositions of 9 over `C_1..C_8` (or `C_1..C_5`) whose off-diagonal block vanishes.
    pub candidates: Vec<CandidateTuple>,
    /// Compositions of 9 whose `{z_2, y_1}` minor is negative.
    pub negative_z2y1_minor: u64,
    pub compositions: u64,
    /// Every search finished within the node budget.
    pub conclusive: bool,
    pub holds: bool,
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=rest {
            prefix.push(v);
            rec(rest - v, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

fn composition_delta(x: Variant, counts: &[u32]) -> RationalMatrix {
    let c = m_prime(x);
    let a = MatrixMultiset::from_counts(c.iter().cloned().zip(counts.iter().copied()));
    delta(&b_matrix(x, 2), &a).expect("4-column matrices")
}

/// `m ≤ 8` for a matching (5,2) pillar beside an edge and two (5,1) vertices.
pub fn verify_key_theorem(x: Variant, node_budget: Option<u64>) -> KeyTheoremReport {
    let opts = SearchOptions {
        node_budget,
        support_filter: Some(m_x(x)),
        ..SearchOptions::with_cap(9)
    };
    let m_x_search = search_max_multiplicity(&b_matrix(x, 2), &constants::universe_m222(), &opts);
    let m_x_empty = m_x_search.is_conclusive() && m_x_search.feasible_by_size[9] == 0;

    let mut cases = Vec::new();
    for i in 1..=7 {
        let case = if FIXED_NOT_PSD.contains(&(x, i)) {
            let r = verify_fixed_not_psd(x, i);
            KeyCase {
                i,
                method: "B(X,i) itself is not PSD".into(),
                conclusive: true,
                holds: !r.result.is_psd(),
            }
        } else if SUM6_PAIRS.contains(&(x, i)) {
            let r = verify_sum_bound(x, i, 6, node_budget);
            KeyCase {
                i,
                method: "exhaustive search: size at most 6".into(),
                conclusive: r.search.is_conclusive(),
                holds: r.holds,
            }
        } else if i == 5 {
            let r = verify_sum8(x, node_budget);
            KeyCase {
                i,
                method: "exhaustive size-9 search: size at most 8".into(),
                conclusive: r.search.is_conclusive(),
                holds: r.holds,
            }
        } else {
            let s = verify_support_lemma(x, node_budget);
            KeyCase {
                i,
                method: "size-9 support restriction to 𝓜_X, then size-9 search over 𝓜_X".into(),
                conclusive: s.search.is_conclusive() && m_x_search.is_conclusive(),
                holds: s.holds && m_x_empty,
            }
        };
        cases.push(case);
    }

    let parts = m_prime(x).len();
    let all = compositions(9, parts);
    let mut candidates = Vec::new();
    let mut negative_z2y1_minor = 0;
    for counts in &all {
        let d = composition_delta(x, counts);
        let minor = d.get(1, 1) * d.get(2, 2) - d.get(1, 2) * d.get(1, 2);
        if minor < rat(0) {
            negative_z2y1_minor += 1;
        }
        let off_zero = (0..2).all(|r| (2..4).all(|s| *d.get(r, s) == rat(0)));
        if off_zero {
            let mut full = [0u32; 8];
            full[..parts].copy_from_slice(counts);
            let block = d.principal_submatrix(&[0, 1]);
            candidates.push(CandidateTuple {
                counts: full,
                z_block: [
                    [d.get(0, 0).to_string(), d.get(0, 1).to_string()],
                    [d.get(1, 0).to_string(), d.get(1, 1).to_string()],
                ],
                z_block_psd: psd_check(&block).expect("symmetric").is_psd(),
            });
        }
    }
    let conclusive = m_x_search.is_conclusive() && cases.iter().all(|c| c.conclusive);
    let b21_covered = constants::b21_coverage()
        .iter()
        .all(|(_, hit)| hit.is_some());
    let holds = b21_covered
        && cases.iter().all(|c| c.holds)
        && m_x_empty
        && candidates.iter().all(|c| !c.z_block_psd);
    KeyTheoremReport {
        variant: x,
        cases,
        b21_covered,
        m_x_search,
        candidates,
        negative_z2y1_minor,
        compositions: all.len() as u64,
        conclusive,
        holds,
    }
}

/// `C_k^T (9I_2 - 3J_2)^{-1} C_k` scaled by 9.
pub fn c_product_9(c: &TwoRowMatrix) -> Vec<i64> {
    c.reduced_form_27().into_iter().map(|v| v / 3).collect()
}

/// `B(X, i)` entries, exposed for reports.
pub fn b_rows(x: Variant, i: usize) -> Vec<i64> {
    b_entries(x, i)
}
