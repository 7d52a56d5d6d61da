//! Isometry testing by backtracking over vectors of matching norm.

use num_bigint::BigInt;
use serde::Serialize;

use super::{congruent, GramLattice, LatticeError, ShortVector};
use crate::exactlin::rat;

/// `T` with `Tᵀ G₁ T = G₂`: column `k` gives the image of the `k`-th basis
/// vector of the second lattice in coordinates of the first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryCertificate {
    pub t: Vec<Vec<i64>>,
}

impl IsometryCertificate {
    /// Checks `Tᵀ G₁ T = G₂` exactly.
    pub fn verify(&self, g1: &[Vec<i64>], g2: &[Vec<i64>]) -> bool {
        if self.t.len() != g1.len() || g1.len() != g2.len() {
            return false;
        }
        let big = |m: &[Vec<i64>]| -> Vec<Vec<BigInt>> {
            m.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect()
        };
        congruent(&big(g1), &big(&self.t)) == big(g2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "invariant", rename_all = "kebab-case")]
pub enum InvariantMismatch {
    Rank {
        left: usize,
        right: usize,
    },
    Determinant {
        left: String,
        right: String,
    },
    /// Vector counts (both signs) differ at `norm`.
    Theta {
        norm: i64,
        left: usize,
        right: usize,
    },
    /// The complete backtracking search found no Gram-preserving basis image.
    NoGramPreservingMap {
        nodes: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IsometryOutcome {
    Certificate(IsometryCertificate),
    NotIsometric(InvariantMismatch),
    Inconclusive { nodes: u64 },
}

#[derive(Clone, Debug, Default)]
pub struct IsometryOptions {
    /// Theta prefixes are compared up to this norm; defaults to the largest
    /// diagonal entry of either basis Gram.
    pub theta_bound: Option<i64>,
    pub enumeration_budget: Option<u64>,
    pub search_budget: Option<u64>,
}

fn theta(list: &[ShortVector], bound: i64) -> Vec<usize> {
    let mut c = vec![0usize; bound as usize + 1];
    for v in list {
        c[v.norm.to_integer().try_into().unwrap_or(0usize)] += 2;
    }
    c
}

struct Search<'a> {
    g2: &'a [Vec<i64>],
    order: Vec<usize>,
    // candidates[k]: vectors of L1 with norm G2[k][k], both signs, with G1 v precomputed
    candidates: Vec<Vec<(Vec<i64>, Vec<i64>)>>,
    budget: Option<u64>,
    nodes: u64,
}

impl Search<'_> {
    fn go(&mut self, depth: usize, chosen: &mut Vec<usize>) -> Option<bool> {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return None;
        }
        if depth == self.order.len() {
            return Some(true);
        }
        let k = self.order[depth];
        for c in 0..self.candidates[k].len() {
            let ok = (0..depth).all(|d| {
                let j = self.order[d];
                let (v, _) = &self.candidates[k][c];
                let (_, gw) = &self.candidates[j][chosen[d]];
                v.iter().zip(gw).map(|(a, b)| a * b).sum::<i64>() == self.g2[k][j]
            });
            if !ok {
                continue;
            }
            chosen.push(c);
            match self.go(depth + 1, chosen) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            chosen.pop();
        }
        Some(false)
    }
}

/// Decides whether two lattices are isometric, certifying either answer.
pub fn isometry(
    l1: &GramLattice,
    l2: &GramLattice,
    opts: &IsometryOptions,
) -> Result<IsometryOutcome, LatticeError> {
    if l1.rank() != l2.rank() {
        return Ok(IsometryOutcome::NotIsometric(InvariantMismatch::Rank {
            left: l1.rank(),
            right: l2.rank(),
        }));
    }
    let (d1, d2) = (l1.determinant(), l2.determinant());
    if d1 != d2 {
        return Ok(IsometryOutcome::NotIsometric(
            InvariantMismatch::Determinant {
                left: d1.to_string(),
                right: d2.to_string(),
            },
        ));
    }
    let r = l1.rank();
    let (g1, g2) = (l1.basis_gram(), l2.basis_gram());
    let diag_max = (0..r).map(|i| g1[i][i].max(g2[i][i])).max().unwrap_or(0);
    let bound = opts.theta_bound.unwrap_or(diag_max).max(diag_max);
    let s1 = l1.short_vectors(&rat(bound), opts.enumeration_budget)?;
    let s2 = l2.short_vectors(&rat(bound), opts.enumeration_budget)?;
    let (t1, t2) = (theta(&s1.vectors, bound), theta(&s2.vectors, bound));
    if let Some(norm) = (0..t1.len()).find(|&k| t1[k] != t2[k]) {
        return Ok(IsometryOutcome::NotIsometric(InvariantMismatch::Theta {
            norm: norm as i64,
            left: t1[norm],
            right: t2[norm],
        }));
    }
    if r == 0 {
        return Ok(IsometryOutcome::Certificate(IsometryCertificate {
            t: Vec::new(),
        }));
    }

    let with_image = |v: &[i64]| -> (Vec<i64>, Vec<i64>) {
        let gv = (0..r)
            .map(|i| (0..r).map(|j| g1[i][j] * v[j]).sum())
            .collect();
        (v.to_vec(), gv)
    };
    let candidates: Vec<Vec<(Vec<i64>, Vec<i64>)>> = (0..r)
        .map(|k| {
            let norm = rat(g2[k][k]);
            s1.vectors
                .iter()
                .filter(|v| v.norm == norm)
                .flat_map(|v| {
                    let neg: Vec<i64> = v.coords.iter().map(|x| -x).collect();
                    [with_image(&v.coords), with_image(&neg)]
                })
                .collect()
        })
        .collect();
    // smallest norm classes first
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&k| (candidates[k].len(), k));
    let mut search = Search {
        g2,
        order,
        candidates,
        budget: opts.search_budget,
        nodes: 0,
    };
    let mut chosen = Vec::with_capacity(r);
    match search.go(0, &mut chosen) {
        None => Ok(IsometryOutcome::Inconclusive {
            nodes: search.nodes,
        }),
        Some(false) => Ok(IsometryOutcome::NotIsometric(
            InvariantMismatch::NoGramPreservingMap {
                nodes: search.nodes,
            },
        )),
        Some(true) => {
            let mut t = vec![vec![0i64; r]; r];
            for (d, &k) in search.order.iter().enumerate() {
                let (v, _) = &search.candidates[k][chosen[d]];
                for i in 0..r {
                    t[i][k] = v[i];
                }
            }
            let cert = IsometryCertificate { t };
            assert!(
                cert.verify(g1, g2),
                "backtracking only accepts Gram-preserving images"
            );
            Ok(IsometryOutcome::Certificate(cert))
        }
    }
}
