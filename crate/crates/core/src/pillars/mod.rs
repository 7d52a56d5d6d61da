//! The pillar method with respect to a base clique.
//!
//! For a base clique `B` and `U ⊆ B`, the pillar `P_{B,U}` is the set of
//! vertices `x ∉ B` with `N(x) ∩ B = U`. Writing `x̂` for vectors with
//! `(x̂, ŷ) = (S + 5I)_{xy}` and `x̄` for the projection of `x̂` onto the
//! orthogonal complement of the base span, the Gram matrix of the `x̄` is the
//! Schur complement of the base block in `S + 5I`.

pub mod ade;
pub mod fiveone;
pub mod ledger;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{self, rat, ratio, NegativeWitness, PsdResult, Rational, RationalMatrix};
use crate::seidel::{Graph, SeidelMatrix};

pub use ade::{
    admissible_affine, classify_ade, extract_independent_part, AdeClass, AdeFamily, Extraction,
};
pub use fiveone::{verify_51_pillar_bound, FiveOneReport};
pub use ledger::{bound_ledger_evaluate, BoundCase, BoundLedger, LEDGER};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PillarError {
    #[error("base is not a clique: vertices {0} and {1} are not adjacent")]
    NotClique(usize, usize),
    #[error("base vertex {0} is out of range or repeated")]
    BadBase(usize),
    #[error("base must have {expected} vertices, got {got}")]
    BaseSize { expected: usize, got: usize },
    #[error("smallest Seidel eigenvalue is below -5")]
    NotPsd(NegativeWitness),
    #[error("pillar with |U| = {size} is nonempty (vertex {vertex}); only (5,1) and (5,2) pillars are allowed")]
    IrregularCell { vertex: usize, size: usize },
    #[error("vertex {vertex} lies in a {kind} pillar; the base extension needs every pillar vertex in a (5,2) pillar")]
    ExtensionRefused { vertex: usize, kind: String },
    #[error("scaled bar inner product of {x} and {y} is {got}, but table cell {cell:?} requires {expected}")]
    TableViolation {
        x: usize,
        y: usize,
        cell: TableCell,
        expected: String,
        got: Rational,
    },
    #[error("vertices {x} and {y} of one (5,1) pillar are adjacent, which no table cell allows")]
    AdjacentInFiveOne { x: usize, y: usize },
}

/// Partition of the non-base vertices by their neighborhood in the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PillarDecomposition {
    base: Vec<usize>,
    /// Cell keyed by bitmask over base positions.
    cells: BTreeMap<u32, Vec<usize>>,
    #[serde(skip)]
    cell_of: Vec<Option<u32>>,
}

impl PillarDecomposition {
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    /// Mask of base positions, e.g. `{b_1, b_3}` ↦ `0b101`.
    pub fn mask(positions: &[usize]) -> u32 {
        positions.iter().fold(0, |m, &p| m | (1 << p))
    }

    pub fn cell(&self, mask: u32) -> &[usize] {
        self.cells.get(&mask).map_or(&[], Vec::as_slice)
    }

    pub fn cell_of(&self, v: usize) -> Option<u32> {
        self.cell_of.get(v).copied().flatten()
    }

    /// Nonempty cells in increasing mask order.
    pub fn nonempty_cells(&self) -> impl Iterator<Item = (u32, &[usize])> {
        self.cells
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&m, v)| (m, v.as_slice()))
    }

    /// `(|B|, |U|)` for the cell with the given mask.
    pub fn cell_type(&self, mask: u32) -> (usize, usize) {
        (self.base.len(), mask.count_ones() as usize)
    }

    /// Base positions of a mask, ascending.
    pub fn positions(mask: u32) -> Vec<usize> {
        (0..32).filter(|&i| mask >> i & 1 == 1).collect()
    }

    /// First vertex lying in a nonempty cell with `|U| ∉ {1, 2}`.
    pub fn first_irregular(&self) -> Option<(usize, usize)> {
        self.nonempty_cells()
            .find(|(m, _)| !matches!(m.count_ones(), 1 | 2))
            .map(|(m, v)| (v[0], m.count_ones() as usize))
    }

    pub fn is_regular(&self) -> bool {
        self.first_irregular().is_none()
    }

    pub fn non_base(&self) -> Vec<usize> {
        (0..self.cell_of.len())
            .filter(|&v| self.cell_of[v].is_some())
            .collect()
    }
}

fn check_base(h: &Graph, base: &[usize]) -> Result<(), PillarError> {
    let mut seen = vec![false; h.order()];
    for &b in base {
        if b >= h.order() || std::mem::replace(&mut seen[b], true) {
            return Err(PillarError::BadBase(b));
        }
    }
    if let Some((a, b)) = h.first_non_edge(base) {
        return Err(PillarError::NotClique(a, b));
    }
    Ok(())
}

pub fn pillar_decomposition(h: &Graph, base: &[usize]) -> Result<PillarDecomposition, PillarError> {
    check_base(h, base)?;
    let n = h.order();
    let mut cell_of = vec![None; n];
    let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (v, slot) in cell_of.iter_mut().enumerate() {
        if base.contains(&v) {
            continue;
        }
        let mask = base
            .iter()
            .enumerate()
            .filter(|(_, &b)| h.has_edge(v, b))
            .fold(0u32, |m, (i, _)| m | (1 << i));
        *slot = Some(mask);
        cells.entry(mask).or_default().push(v);
    }
    Ok(PillarDecomposition {
        base: base.to_vec(),
        cells,
        cell_of,
    })
}

/// Entries of the inner-product tables for a 5-clique base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableCell {
    /// `x = y` in a (5,2) pillar.
    SelfFiveTwo,
    /// `z = w` in a (5,1) pillar.
    SelfFiveOne,
    /// distinct vertices of one (5,2) pillar.
    SameFiveTwo,
    /// distinct vertices of one (5,1) pillar.
    SameFiveOne,
    /// (5,2) pillars over disjoint pairs.
    DisjointFiveTwo,
    /// (5,2) pillars over pairs sharing one base vertex.
    MeetingFiveTwo,
    /// `x ∈ P_{ij}`, `z ∈ P_i`.
    FiveTwoOverFiveOne,
    /// `y ∈ P_{kl}`, `z ∈ P_i` with `i ∉ {k, l}`.
    FiveTwoBesideFiveOne,
    /// (5,1) pillars over distinct base vertices.
    DistinctFiveOne,
}

impl TableCell {
    pub fn classify(u: u32, v: u32, same_vertex: bool) -> TableCell {
        use TableCell::*;
        let (a, b) = (u.count_ones(), v.count_ones());
        match (a, b) {
            _ if same_vertex => {
                if a == 2 {
                    SelfFiveTwo
                } else {
                    SelfFiveOne
                }
            }
            (2, 2) if u == v => SameFiveTwo,
            (2, 2) if u & v == 0 => DisjointFiveTwo,
            (2, 2) => MeetingFiveTwo,
            (1, 1) if u == v => SameFiveOne,
            (1, 1) => DistinctFiveOne,
            _ if u & v != 0 => FiveTwoOverFiveOne,
            _ => FiveTwoBesideFiveOne,
        }
    }

    /// Expected value of `(3/2)(x̄, ȳ)` on the `S + 5I` scale, i.e. of
    /// `(15/2)(x̄, ȳ)` for unit vectors; `None` where the table has no entry.
    pub fn expected(self, adjacent: bool) -> Option<i64> {
        use TableCell::*;
        let (adj, non) = match self {
            SelfFiveTwo => return Some(6),
            SelfFiveOne => return Some(4),
            SameFiveTwo => (-3, 0),
            SameFiveOne => return if adjacent { None } else { Some(-2) },
            DisjointFiveTwo => (-1, 2),
            MeetingFiveTwo => (-2, 1),
            FiveTwoOverFiveOne => (-3, 0),
            FiveTwoBesideFiveOne => (-2, 1),
            DistinctFiveOne => (-4, -1),
        };
        Some(if adjacent { adj } else { non })
    }
}

/// Gram matrix of the projected vectors `x̄`, `x ∉ B`, on the `S + 5I` scale.
#[derive(Clone, Debug, PartialEq)]
pub struct BarGram {
    /// Non-base vertices; row `k` of [`BarGram::gram`] belongs to `vertices[k]`.
    pub vertices: Vec<usize>,
    pub gram: RationalMatrix,
    /// `S + 5I` of the whole graph.
    pub hat_gram: RationalMatrix,
}

impl BarGram {
    /// Table scale: `(3/2)·(x̄, ȳ)`, equal to `(15/2)·(x̄, ȳ)` after
    /// normalizing the line vectors to unit length.
    pub fn scaled(&self, i: usize, j: usize) -> Rational {
        self.gram.get(i, j) * ratio(3, 2)
    }
}

/// Schur complement of the base block in `S + 5I`, using the closed form of
/// the inverse of `6I - J` for a clique base of size at most 5.
pub fn bar_gram_unchecked(h: &Graph, base: &[usize]) -> Result<BarGram, PillarError> {
    check_base(h, base)?;
    let k = base.len() as i64;
    if k > 5 {
        return Err(PillarError::BaseSize {
            expected: 5,
            got: base.len(),
        });
    }
    let hat = SeidelMatrix::from_graph(h).gram();
    let rest: Vec<usize> = (0..h.order()).filter(|v| !base.contains(v)).collect();
    // (6I - J)^{-1} = (I + J/(6-k)) / 6
    let g: Vec<Vec<i64>> = rest
        .iter()
        .map(|&x| {
            base.iter()
                .map(|&b| if h.has_edge(x, b) { -1 } else { 1 })
                .collect()
        })
        .collect();
    let sums: Vec<i64> = g.iter().map(|r| r.iter().sum()).collect();
    let gram = RationalMatrix::from_fn(rest.len(), rest.len(), |i, j| {
        let dot: i64 = g[i].iter().zip(&g[j]).map(|(a, b)| a * b).sum();
        let proj = (rat(dot) + ratio(sums[i] * sums[j], 6 - k)) / rat(6);
        hat.get(rest[i], rest[j]) - proj
    });
    Ok(BarGram {
        vertices: rest,
        gram,
        hat_gram: hat,
    })
}

/// Bar Gram for a 5-clique base, validated against the inner-product tables.
pub fn bar_gram(h: &Graph, base: &[usize]) -> Result<BarGram, PillarError> {
    if base.len() != 5 {
        return Err(PillarError::BaseSize {
            expected: 5,
            got: base.len(),
        });
    }
    let dec = pillar_decomposition(h, base)?;
    if let Some((vertex, size)) = dec.first_irregular() {
        return Err(PillarError::IrregularCell { vertex, size });
    }
    let bg = bar_gram_unchecked(h, base)?;
    if let PsdResult::NotPsd(w) = exactlin::psd_check(&bg.hat_gram).expect("symmetric") {
        return Err(PillarError::NotPsd(w));
    }
    check_tables(h, &dec, &bg)?;
    Ok(bg)
}

/// Compares every scaled bar inner product with its table entry.
pub fn check_tables(h: &Graph, dec: &PillarDecomposition, bg: &BarGram) -> Result<(), PillarError> {
    for (i, &x) in bg.vertices.iter().enumerate() {
        for (j, &y) in bg.vertices.iter().enumerate().skip(i) {
            let (u, v) = (
                dec.cell_of(x).expect("non-base"),
                dec.cell_of(y).expect("non-base"),
            );
            let cell = TableCell::classify(u, v, x == y);
            let adjacent = x != y && h.has_edge(x, y);
            let got = bg.scaled(i, j);
            match cell.expected(adjacent) {
                None => return Err(PillarError::AdjacentInFiveOne { x, y }),
                Some(e) if got != rat(e) => {
                    return Err(PillarError::TableViolation {
                        x,
                        y,
                        cell,
                        expected: e.to_string(),
                        got,
                    });
                }
                Some(_) => {}
            }
        }
    }
    Ok(())
}

/// Result of adjoining `b̂_6 = -(b̂_1 + … + b̂_5)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseExtension {
    pub graph: Graph,
    pub b6: usize,
    /// Certificate that `S(G) + 5I` is PSD.
    pub psd: PsdResult,
    /// `nullity(S(G) + 5I) > 0`, so the smallest Seidel eigenvalue is exactly -5.
    pub nullity: usize,
}

pub fn extend_base_5_to_6(h: &Graph, base: &[usize]) -> Result<BaseExtension, PillarError> {
    if base.len() != 5 {
        return Err(PillarError::BaseSize {
            expected: 5,
            got: base.len(),
        });
    }
    let dec = pillar_decomposition(h, base)?;
    if let Some((vertex, size)) = dec
        .nonempty_cells()
        .find(|(m, _)| m.count_ones() != 2)
        .map(|(m, v)| (v[0], m.count_ones()))
    {
        return Err(PillarError::ExtensionRefused {
            vertex,
            kind: format!("(5,{size})"),
        });
    }
    let hat = SeidelMatrix::from_graph(h).gram();
    if let PsdResult::NotPsd(w) = exactlin::psd_check(&hat).expect("symmetric") {
        return Err(PillarError::NotPsd(w));
    }
    let mut g = h.clone();
    let b6 = g.add_vertex();
    for y in 0..h.order() {
        // (b̂_6, ŷ) = -Σ_b (b̂, ŷ); a Seidel entry of -1 means adjacency
        let ip: Rational = -base
            .iter()
            .map(|&b| hat.get(b, y).clone())
            .fold(Rational::zero(), |a, c| a + c);
        if ip == rat(-1) {
            g.add_edge(b6, y);
        } else if ip != rat(1) {
            return Err(PillarError::ExtensionRefused {
                vertex: y,
                kind: format!("inner product {ip} with the new vertex"),
            });
        }
    }
    let ext = SeidelMatrix::from_graph(&g).gram();
    let psd = exactlin::psd_check(&ext).expect("symmetric");
    let nullity = exactlin::nullity(&ext).nullity;
    Ok(BaseExtension {
        graph: g,
        b6,
        psd,
        nullity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5_plus(attach: &[&[usize]]) -> Graph {
        let mut g = Graph::complete(5);
        for nbrs in attach {
            let v = g.add_vertex();
            for &b in *nbrs {
                g.add_edge(v, b);
            }
        }
        g
    }

    #[test]
    fn k5_has_empty_cells() {
        let d = pillar_decomposition(&Graph::complete(5), &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(d.nonempty_cells().count(), 0);
    }

    #[test]
    fn single_five_two_vertex() {
        let g = k5_plus(&[&[0, 1]]);
        let d = pillar_decomposition(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(d.cell(0b11), &[5]);
        assert_eq!(d.nonempty_cells().count(), 1);
        assert_eq!(d.cell_type(0b11), (5, 2));
        let bg = bar_gram(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(bg.scaled(0, 0), rat(6));
    }

    #[test]
    fn non_clique_base_is_named() {
        let g = Graph::path(3);
        assert_eq!(
            pillar_decomposition(&g, &[0, 2]).unwrap_err(),
            PillarError::NotClique(0, 2)
        );
    }

    #[test]
    fn five_one_pairs() {
        // two non-adjacent vertices on b_1
        let g = k5_plus(&[&[0], &[0]]);
        let bg = bar_gram(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(bg.scaled(0, 1), rat(-2));
        assert_eq!(bg.scaled(0, 0), rat(4));
        // adjacent vertices on b_1 and b_2
        let mut g = k5_plus(&[&[0], &[1]]);
        g.add_edge(5, 6);
        let bg = bar_gram(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(bg.scaled(0, 1), rat(-4));
    }

    #[test]
    fn extension_of_k5_is_k6() {
        let e = extend_base_5_to_6(&Graph::complete(5), &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(e.graph, Graph::complete(6));
        assert!(e.psd.is_psd());
        assert_eq!(e.nullity, 1);
    }

    #[test]
    fn extension_with_one_pillar_vertex() {
        let g = k5_plus(&[&[0, 1]]);
        let e = extend_base_5_to_6(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(e.graph.order(), 7);
        assert!(e.graph.has_edge(5, 6));
        assert!(e.graph.is_clique(&[0, 1, 2, 3, 4, 6]));
        assert!(e.psd.is_psd() && e.nullity > 0);
    }

    #[test]
    fn extension_refuses_five_one_cell() {
        let g = k5_plus(&[&[0]]);
        assert!(matches!(
            extend_base_5_to_6(&g, &[0, 1, 2, 3, 4]),
            Err(PillarError::ExtensionRefused { vertex: 5, .. })
        ));
    }
}
