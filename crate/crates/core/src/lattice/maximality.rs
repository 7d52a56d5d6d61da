//! Dual vectors that would extend a line system.
//!
//! A vector `u` of the dual lattice with `(u, f_i) = ±1` for every generator
//! and norm at most 5 would be one more line at the same angle. The check
//! enumerates the dual lattice and tests each vector against all generators.

use num_bigint::BigInt;
use serde::Serialize;

use super::{reduce, visit_gram, GramLattice, Reduction};
use crate::exactlin::{serialize_rational, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaximalityWitness {
    /// Coordinates in the dual basis.
    pub dual_coords: Vec<i64>,
    #[serde(serialize_with = "serialize_rational")]
    pub norm: Rational,
    /// `(u, f_i)` for every generator.
    pub inner_products: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Maximality {
    StronglyMaximal,
    Witness(MaximalityWitness),
    Inconclusive { nodes: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximalityReport {
    pub verdict: Maximality,
    #[serde(serialize_with = "serialize_rational")]
    pub bound: Rational,
    /// Dual vectors of norm at most `bound`, one per `±` pair.
    pub dual_vectors: usize,
    /// Dual vectors discarded because some inner product is even.
    pub parity_rejected: usize,
    pub nodes: u64,
}

/// Searches the dual lattice for a vector of norm at most `bound` with all
/// generator inner products in `{1, -1}`.
pub fn strong_maximality_check(
    l: &GramLattice,
    bound: &Rational,
    node_budget: Option<u64>,
) -> MaximalityReport {
    let r = l.rank();
    let dual = l.dual_basis_gram();
    let e = dual.common_denominator();
    let scaled: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (dual.get(i, j) * Rational::from_integer(e.clone())).to_integer())
                .collect()
        })
        .collect();
    let red = reduce(&scaled, Reduction::Lll);
    let t: Vec<Vec<i64>> = red
        .transform
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| i64::try_from(x).expect("unimodular transform is small"))
                .collect()
        })
        .collect();
    let parity: Vec<u128> = (0..l.generators()).map(|g| mask(l.gen_coords(g))).collect();

    let visit = |acc: &mut Scan, v: &[i64], n: &BigInt| {
        acc.seen += 1;
        let c: Vec<i64> = (0..r)
            .map(|i| (0..r).map(|j| t[i][j] * v[j]).sum())
            .collect();
        let cm = mask(&c);
        if parity
            .iter()
            .any(|&m| (m & cm).count_ones().is_multiple_of(2))
        {
            acc.parity_rejected += 1;
            return;
        }
        let ips: Vec<i64> = (0..l.generators())
            .map(|g| l.gen_coords(g).iter().zip(&c).map(|(a, b)| a * b).sum())
            .collect();
        if ips.iter().all(|x| x.abs() == 1) {
            let w = MaximalityWitness {
                dual_coords: c,
                norm: Rational::new(n.clone(), e.clone()),
                inner_products: ips,
            };
            if acc
                .witness
                .as_ref()
                .is_none_or(|old| (&w.norm, &w.dual_coords) < (&old.norm, &old.dual_coords))
            {
                acc.witness = Some(w);
            }
        }
    };
    let (parts, nodes) = match visit_gram(
        &red.gram,
        bound,
        &e,
        node_budget,
        true,
        &Scan::default,
        &visit,
    ) {
        Ok(res) => res,
        Err(b) => {
            return MaximalityReport {
                verdict: Maximality::Inconclusive { nodes: b.nodes },
                bound: bound.clone(),
                dual_vectors: 0,
                parity_rejected: 0,
                nodes: b.nodes,
            };
        }
    };
    let mut total = Scan::default();
    for p in parts {
        total.seen += p.seen;
        total.parity_rejected += p.parity_rejected;
        if let Some(w) = p.witness {
            if total
                .witness
                .as_ref()
                .is_none_or(|old| (&w.norm, &w.dual_coords) < (&old.norm, &old.dual_coords))
            {
                total.witness = Some(w);
            }
        }
    }
    let verdict = match total.witness {
        Some(w) => Maximality::Witness(w),
        None => Maximality::StronglyMaximal,
    };
    MaximalityReport {
        verdict,
        bound: bound.clone(),
        dual_vectors: total.seen,
        parity_rejected: total.parity_rejected,
        nodes,
    }
}

#[derive(Default)]
struct Scan {
    seen: usize,
    parity_rejected: usize,
    witness: Option<MaximalityWitness>,
}

fn mask(v: &[i64]) -> u128 {
    assert!(v.len() <= 128, "parity masks cover rank at most 128");
    v.iter()
        .enumerate()
        .filter(|(_, x)| *x % 2 != 0)
        .fold(0, |m, (i, _)| m | 1 << i)
}
