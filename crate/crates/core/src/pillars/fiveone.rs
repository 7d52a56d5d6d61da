//! Exhaustive check that five or more (5,1)-pillar vertices force a Seidel
//! eigenvalue below -5.

use rayon::prelude::*;
use serde::Serialize;

use crate::exactlin::{self, NegativeWitness, PsdResult};
use crate::seidel::{Graph, SeidelMatrix};

/// Order tuples of the (5,1) pillars shown to be impossible.
pub const BAD_TUPLES: [[usize; 5]; 4] = [
    [4, 0, 0, 0, 0],
    [3, 1, 0, 0, 0],
    [2, 2, 1, 0, 0],
    [2, 1, 1, 1, 0],
];

#[derive(Clone, Debug, Serialize)]
pub struct PatternWitness {
    pub pattern: u64,
    pub witness: Option<NegativeWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TupleReport {
    pub tuple: [usize; 5],
    pub cross_pairs: usize,
    pub graphs: usize,
    pub not_psd: usize,
    /// One entry per cross-adjacency pattern, in pattern order.
    pub witnesses: Vec<PatternWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverEntry {
    pub tuple: [usize; 5],
    pub dominates: Option<[usize; 5]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiveOneReport {
    pub tuples: Vec<TupleReport>,
    pub covering: Vec<CoverEntry>,
}

impl FiveOneReport {
    pub fn total_graphs(&self) -> usize {
        self.tuples.iter().map(|t| t.graphs).sum()
    }

    pub fn all_not_psd(&self) -> bool {
        self.tuples.iter().all(|t| t.not_psd == t.graphs)
    }

    pub fn covered(&self) -> bool {
        self.covering.iter().all(|c| c.dominates.is_some())
    }

    pub fn holds(&self) -> bool {
        self.all_not_psd() && self.covered()
    }
}

/// K_5 on `0..5` plus `tuple[i]` pendant vertices at base vertex `i`; the
/// cross pairs (between different pillars) are returned in lexicographic order.
pub fn fiveone_skeleton(tuple: &[usize; 5]) -> (Graph, Vec<(usize, usize)>) {
    let mut g = Graph::complete(5);
    let mut owner = Vec::new();
    for (i, &k) in tuple.iter().enumerate() {
        for _ in 0..k {
            let v = g.add_vertex();
            g.add_edge(v, i);
            owner.push((v, i));
        }
    }
    let mut cross = Vec::new();
    for (a, &(x, i)) in owner.iter().enumerate() {
        for &(y, j) in &owner[a + 1..] {
            if i != j {
                cross.push((x, y));
            }
        }
    }
    (g, cross)
}

fn check_pattern(base: &Graph, cross: &[(usize, usize)], pattern: u64) -> PatternWitness {
    let mut g = base.clone();
    for (bit, &(x, y)) in cross.iter().enumerate() {
        if pattern >> bit & 1 == 1 {
            g.add_edge(x, y);
        }
    }
    let gram = SeidelMatrix::from_graph(&g).gram();
    let witness = match exactlin::psd_check(&gram).expect("symmetric") {
        PsdResult::NotPsd(w) => Some(w),
        PsdResult::Psd(_) => None,
    };
    PatternWitness { pattern, witness }
}

pub fn check_tuple(tuple: &[usize; 5]) -> TupleReport {
    let (g, cross) = fiveone_skeleton(tuple);
    let witnesses: Vec<PatternWitness> = (0..1u64 << cross.len())
        .into_par_iter()
        .map(|p| check_pattern(&g, &cross, p))
        .collect();
    TupleReport {
        tuple: *tuple,
        cross_pairs: cross.len(),
        graphs: witnesses.len(),
        not_psd: witnesses.iter().filter(|w| w.witness.is_some()).count(),
        witnesses,
    }
}

/// Non-increasing 5-tuples of non-negative integers summing to `total`.
pub fn sorted_tuples(total: usize) -> Vec<[usize; 5]> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<[usize; 5]>) {
        if prefix.len() == 5 {
            if rest == 0 {
                out.push([prefix[0], prefix[1], prefix[2], prefix[3], prefix[4]]);
            }
            return;
        }
        for v in (0..=rest.min(max)).rev() {
            prefix.push(v);
            rec(rest - v, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

pub fn dominates(a: &[usize; 5], b: &[usize; 5]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Runs the four tuple families and the covering argument for total order 6.
pub fn verify_51_pillar_bound() -> FiveOneReport {
    let tuples = BAD_TUPLES.iter().map(check_tuple).collect();
    let covering = sorted_tuples(6)
        .into_iter()
        .map(|t| CoverEntry {
            tuple: t,
            dominates: BAD_TUPLES.iter().find(|b| dominates(&t, b)).copied(),
        })
        .collect();
    FiveOneReport { tuples, covering }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_pair_counts() {
        assert_eq!(fiveone_skeleton(&[4, 0, 0, 0, 0]).1.len(), 0);
        assert_eq!(fiveone_skeleton(&[3, 1, 0, 0, 0]).1.len(), 3);
        assert_eq!(fiveone_skeleton(&[2, 2, 1, 0, 0]).1.len(), 8);
        assert_eq!(fiveone_skeleton(&[2, 1, 1, 1, 0]).1.len(), 9);
    }

    #[test]
    fn partitions_of_six() {
        let t = sorted_tuples(6);
        assert_eq!(t.len(), 10);
        assert!(t.contains(&[2, 2, 2, 0, 0]));
        assert!(dominates(&[2, 2, 2, 0, 0], &[2, 2, 1, 0, 0]));
    }

    #[test]
    fn single_tuple_is_not_psd() {
        let r = check_tuple(&[4, 0, 0, 0, 0]);
        assert_eq!((r.graphs, r.not_psd), (1, 1));
    }
}
